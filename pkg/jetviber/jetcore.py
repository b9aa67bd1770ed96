# -*- coding: utf-8 -*-
# encoding: utf-8
"""
Graded differential polynomials on the jet space of one scalar unknown.

The ring every other module computes in. A :py:class:`DiffPoly` is a finite
sum of terms ``coeff * even_part * odd_part`` where

    * ``coeff`` is an exact :py:class:`fractions.Fraction`,
    * ``even_part`` is a product of powers of even atoms (independent
      variables ``x``, constants ``a``, function symbols ``pd(h, ...)`` and
      jet variables ``u[...]``),
    * ``odd_part`` is an ordered product of distinct odd jet variables
      ``p[...]``.

Odd atoms anticommute, hence ``p[x]*p[x] == 0`` and every odd part is kept
sorted by the canonical atom order with the permutation sign absorbed into
the coefficient.

Example:

    >>> from jetviber.jetcore import MultiIndex, Atom, DiffPoly
    >>> px = DiffPoly.from_atom(Atom.p(MultiIndex("x")))
    >>> (px * px).is_zero()
    True

"""

# jetviber - jet-space calculus for variational bivectors
# Copyright (C) 2024 the jetviber developers
#     The MIT License (MIT), see LICENSE.txt

from collections import Counter, namedtuple
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb


class JetviberError(Exception):
    """Root of all errors raised by jetviber."""


class ParityError(JetviberError):
    """An odd object appeared where an even one is required or vice versa."""


INDEP = 0
CONST = 1
FUNC = 2
JET_U = 3
JET_P = 4
TAG = 5

KIND_NAMES = {
    INDEP: "IndepVar",
    CONST: "Const",
    FUNC: "FunDeriv",
    JET_U: "JetU",
    JET_P: "JetP",
    TAG: "Tag",
}


class MultiIndex(object):
    """
    Multiset of independent variable names.

    Arguments:
        variables (iterable or str): variable names, repetitions allowed.
            A plain string is read as a single variable name.

    Example:

        >>> MultiIndex(["y", "x", "x"]).exponents
        {'x': 2, 'y': 1}
    """

    __slots__ = ("_vars",)

    def __init__(self, variables=()):
        if isinstance(variables, str):
            variables = (variables,)
        self._vars = tuple(sorted(variables))

    @classmethod
    def from_exponents(cls, exponents):
        """Build from a mapping ``{variable: count}``."""
        return cls(v for v, n in exponents.items() for _ in range(n))

    @property
    def exponents(self):
        return dict(Counter(self._vars))

    @property
    def order(self):
        return len(self._vars)

    @property
    def variables(self):
        return self._vars

    def sort_key(self):
        return (len(self._vars), self._vars)

    def __iter__(self):
        return iter(self._vars)

    def __len__(self):
        return len(self._vars)

    def __add__(self, other):
        if isinstance(other, str):
            other = MultiIndex(other)
        return MultiIndex(self._vars + other._vars)

    def __sub__(self, other):
        rest = Counter(self._vars)
        rest.subtract(Counter(other._vars))
        if any(n < 0 for n in rest.values()):
            raise ValueError("{0} is not contained in {1}".format(other, self))
        return MultiIndex.from_exponents(rest)

    def contains(self, other):
        """True if ``other`` is a sub-multiset of this index."""
        mine = Counter(self._vars)
        return all(mine[v] >= n for v, n in Counter(other._vars).items())

    def sub_indices(self):
        """
        Yield all sub-multisets ``rho`` with their Leibniz weight.

        Returns:
            generator of (MultiIndex, int): ``rho`` and the product of
            binomial coefficients ``C(sigma, rho)``.
        """
        exps = sorted(self.exponents.items())
        ranges = [range(n + 1) for _, n in exps]
        for choice in product(*ranges):
            weight = 1
            for (_, n), k in zip(exps, choice):
                weight *= comb(n, k)
            yield (
                MultiIndex.from_exponents({v: k for (v, _), k in zip(exps, choice)}),
                weight,
            )

    def __eq__(self, other):
        return isinstance(other, MultiIndex) and self._vars == other._vars

    def __hash__(self):
        return hash(self._vars)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return "[{0}]".format(",".join(self._vars))


class Atom(object):
    """
    Generator of the graded ring.

    Atoms are compared by ``(kind, name, index)``; for function symbols the
    index is the sorted tuple of argument positions that were differentiated
    (1-based) and ``args`` records the declared arguments so that total and
    partial derivatives can apply the chain rule without a session context.

    Canonical order: IndepVar < Const < FunDeriv < JetU < JetP, then the
    name, then ``(|sigma|, lex sigma)``.
    """

    __slots__ = ("kind", "name", "index", "args", "_key", "_ident", "_hash")

    def __init__(self, kind, name, index=(), args=()):
        self.kind = kind
        self.name = name
        self.index = index
        self.args = tuple(args)
        if kind in (JET_U, JET_P, TAG):
            order_key = index.sort_key()
        else:
            order_key = (len(index), tuple(index))
        self._key = (kind, name, order_key)
        # symbols of the same name in different sessions must not collide in caches
        self._ident = (self._key, self.args)
        self._hash = hash(self._ident)

    def __reduce__(self):
        return (Atom, (self.kind, self.name, self.index, self.args))

    @classmethod
    def indep(cls, name):
        return cls(INDEP, name)

    @classmethod
    def const(cls, name):
        return cls(CONST, name)

    @classmethod
    def u(cls, sigma=()):
        if not isinstance(sigma, MultiIndex):
            sigma = MultiIndex(sigma)
        return cls(JET_U, "u", sigma)

    @classmethod
    def p(cls, sigma=()):
        if not isinstance(sigma, MultiIndex):
            sigma = MultiIndex(sigma)
        return cls(JET_P, "p", sigma)

    @classmethod
    def tag(cls, tau=()):
        if not isinstance(tau, MultiIndex):
            tau = MultiIndex(tau)
        return cls(TAG, "F", tau)

    @classmethod
    def fun(cls, name, partials, args):
        return cls(FUNC, name, tuple(sorted(partials)), args)

    @property
    def parity(self):
        return 1 if self.kind == JET_P else 0

    @property
    def order(self):
        """Jet order ``|sigma|`` for jet atoms, 0 otherwise."""
        if self.kind in (JET_U, JET_P, TAG):
            return self.index.order
        return 0

    def sort_key(self):
        return self._key

    def with_partial(self, position):
        """FunDeriv with one more derivative by the argument ``position``."""
        return Atom.fun(self.name, self.index + (position,), self.args)

    def shifted(self, var):
        """Jet atom ``u_{sigma+i}`` / ``p_{sigma+i}`` / tag ``F_{tau+i}``."""
        return Atom(self.kind, self.name, self.index + var)

    def __eq__(self, other):
        return isinstance(other, Atom) and self._ident == other._ident

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self._key < other._key

    def __repr__(self):
        if self.kind in (JET_U, JET_P, TAG):
            return "{0}{1!r}".format(self.name, self.index)
        if self.kind == FUNC and self.index:
            return "pd({0},{1})".format(self.name, ",".join(map(str, self.index)))
        return self.name


class FunctionSymbolDecl(object):
    """
    Declaration of an opaque function symbol, e.g. ``h(x, u[x])``.

    Arguments:
        name (str): symbol name
        args (list of Atom): IndepVar or JetU atoms, pairwise distinct
    """

    def __init__(self, name, args):
        args = tuple(args)
        if len(set(args)) != len(args):
            raise JetviberError(
                "Arguments of function {0} are not pairwise distinct".format(name)
            )
        for arg in args:
            if arg.kind not in (INDEP, JET_U):
                raise JetviberError(
                    "Function {0}: argument {1!r} is neither an independent "
                    "nor a jet variable".format(name, arg)
                )
        self.name = name
        self.args = args

    def atom(self, partials=()):
        return Atom.fun(self.name, partials, self.args)

    def __repr__(self):
        return "{0}({1})".format(self.name, ", ".join(map(repr, self.args)))


Term = namedtuple("Term", ["coeff", "even", "odd"])
"""Raw term: ``coeff``, even factors (atoms or ``(atom, power)`` pairs), odd atoms in product order."""


def _sort_odd(atoms):
    """
    Sort odd atoms, tracking the permutation sign.

    Returns:
        (int, tuple): sign and sorted tuple; sign 0 if an atom repeats.
    """
    atoms = list(atoms)
    sign = 1
    for i in range(1, len(atoms)):
        j = i
        while j > 0 and atoms[j] < atoms[j - 1]:
            atoms[j], atoms[j - 1] = atoms[j - 1], atoms[j]
            sign = -sign
            j -= 1
    for a, b in zip(atoms, atoms[1:]):
        if a == b:
            return 0, None
    return sign, tuple(atoms)


def _even_key(powers):
    return tuple(sorted(((a, n) for a, n in powers.items() if n), key=lambda t: t[0]._key))


def _merge_even(e1, e2):
    if not e1:
        return e2
    if not e2:
        return e1
    powers = Counter(dict(e1))
    for atom, n in e2:
        powers[atom] += n
    return _even_key(powers)


class DiffPoly(object):
    """
    Immutable graded-commutative differential polynomial.

    Terms are stored as a mapping ``(even, odd) -> Fraction`` where ``even`` is
    a sorted tuple of ``(atom, power)`` pairs and ``odd`` a sorted tuple of
    distinct odd atoms.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        self._terms = {}
        self._hash = None
        if terms:
            for key, coeff in terms.items():
                if coeff:
                    self._terms[key] = Fraction(coeff)

    @classmethod
    def _raw(cls, terms):
        poly = cls.__new__(cls)
        poly._terms = terms
        poly._hash = None
        return poly

    @classmethod
    def constant(cls, value):
        value = Fraction(value)
        return cls._raw({((), ()): value} if value else {})

    @classmethod
    def from_atom(cls, atom, power=1):
        if atom.parity:
            if power > 1:
                return cls._raw({})
            return cls._raw({((), (atom,)): Fraction(1)})
        return cls._raw({(((atom, power),), ()): Fraction(1)})

    def terms(self):
        """Iterate ``(even, odd, coeff)`` in canonical print order."""
        for key in sorted(self._terms, key=_term_sort_key):
            yield key[0], key[1], self._terms[key]

    def items(self):
        return self._terms.items()

    def coefficient(self, even=(), odd=()):
        return self._terms.get((even, odd), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    @property
    def p_degree(self):
        """Maximal number of odd atoms in a term (0 for the zero polynomial)."""
        return max((len(odd) for _, odd in self._terms), default=0)

    def p_degrees(self):
        return {len(odd) for _, odd in self._terms}

    def is_even(self):
        return all(len(odd) % 2 == 0 for _, odd in self._terms)

    def parity(self):
        """Parity of a p-homogeneous polynomial (0 for zero)."""
        degrees = self.p_degrees()
        if len({d % 2 for d in degrees}) > 1:
            raise ParityError("Polynomial is not p-homogeneous")
        return degrees.pop() % 2 if degrees else 0

    def atoms(self):
        """All atoms occurring in the polynomial."""
        found = set()
        for even, odd in self._terms:
            found.update(a for a, _ in even)
            found.update(odd)
        return found

    def jet_order(self, kind=JET_P):
        return max((a.order for a in self.atoms() if a.kind == kind), default=-1)

    def __add__(self, other):
        other = _coerce(other)
        terms = dict(self._terms)
        for key, coeff in other._terms.items():
            value = terms.get(key, 0) + coeff
            if value:
                terms[key] = value
            else:
                terms.pop(key, None)
        return DiffPoly._raw(terms)

    __radd__ = __add__

    def __neg__(self):
        return DiffPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def scale(self, factor):
        factor = Fraction(factor)
        if not factor:
            return DiffPoly._raw({})
        return DiffPoly._raw({k: c * factor for k, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        terms = {}
        for (e1, o1), c1 in self._terms.items():
            for (e2, o2), c2 in other._terms.items():
                if o1 and o2:
                    sign, odd = _sort_odd(o1 + o2)
                    if not sign:
                        continue
                else:
                    sign, odd = 1, o1 or o2
                key = (_merge_even(e1, e2), odd)
                value = terms.get(key, 0) + sign * c1 * c2
                if value:
                    terms[key] = value
                else:
                    terms.pop(key, None)
        return DiffPoly._raw(terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return _coerce(other) * self

    def __truediv__(self, other):
        return self.scale(Fraction(1) / Fraction(other))

    def __pow__(self, exponent):
        result = DiffPoly.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = DiffPoly.constant(other)
        if not isinstance(other, DiffPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        from .lang import print_canonical

        return print_canonical(self)

    def __reduce__(self):
        return (DiffPoly, (dict(self._terms),))


def _coerce(value):
    if isinstance(value, DiffPoly):
        return value
    return DiffPoly.constant(value)


def _term_sort_key(key):
    even, odd = key
    return (
        -len(odd),
        tuple(a._key for a in odd),
        tuple((a._key, n) for a, n in even),
    )


ZERO = DiffPoly()
ONE = DiffPoly.constant(1)


def _term_poly(coeff, even, odd):
    return DiffPoly._raw({(even, odd): Fraction(coeff)} if coeff else {})


def normalize(raw_terms):
    """
    Bring a list of raw terms into canonical form.

    Arguments:
        raw_terms (iterable of Term): terms whose even part is a list of atoms
            or ``(atom, power)`` pairs and whose odd part lists p-atoms in
            product order.

    Returns:
        DiffPoly: canonical polynomial; repeated odd atoms annihilate a term
        and the sign of the sorting permutation goes into the coefficient.
    """
    terms = {}
    for raw in raw_terms:
        coeff = Fraction(raw.coeff)
        powers = Counter()
        odd = list(raw.odd)
        for factor in raw.even:
            atom, n = factor if isinstance(factor, tuple) else (factor, 1)
            if atom.parity:
                odd.extend([atom] * n)
            else:
                powers[atom] += n
        sign, odd = _sort_odd(odd)
        if not sign or not coeff:
            continue
        key = (_even_key(powers), odd)
        value = terms.get(key, 0) + sign * coeff
        if value:
            terms[key] = value
        else:
            terms.pop(key, None)
    return DiffPoly._raw(terms)


def _drop_power(even, index):
    atom, n = even[index]
    if n == 1:
        return even[:index] + even[index + 1 :]
    return even[:index] + ((atom, n - 1),) + even[index + 1 :]


def _even_derivation(poly, atom_derivative):
    """
    Apply an even derivation acting on even atoms only.

    ``atom_derivative(atom)`` returns the DiffPoly image of an even atom.
    """
    result = {}
    for (even, odd), coeff in poly.items():
        for index, (atom, n) in enumerate(even):
            image = atom_derivative(atom)
            if image.is_zero():
                continue
            rest = _term_poly(coeff * n, _drop_power(even, index), odd)
            _accumulate(result, image * rest)
    return DiffPoly._raw(result)


def _accumulate(target, poly):
    for key, coeff in poly.items():
        value = target.get(key, 0) + coeff
        if value:
            target[key] = value
        else:
            target.pop(key, None)


def _atom_partial(atom, by):
    if atom == by:
        return ONE
    if atom.kind == FUNC and by in atom.args:
        return DiffPoly.from_atom(atom.with_partial(atom.args.index(by) + 1))
    return ZERO


def partial_derivative(e, a):
    """
    Partial derivative of ``e`` by the atom ``a``.

    For an odd atom this is the LEFT derivative: the term is reordered so
    that ``a`` stands first, which costs ``(-1)^k`` where ``k`` is the number
    of odd atoms preceding ``a``. Function symbols are hit only through their
    declared arguments (``d h(x,u_x) / d u_x = pd(h,2)``).

    Arguments:
        e (DiffPoly): expression
        a (Atom): any atom except a FunDeriv

    Returns:
        DiffPoly
    """
    if a.kind == FUNC:
        raise JetviberError("Cannot differentiate by the function symbol {0!r}".format(a))
    if a.parity:
        result = {}
        for (even, odd), coeff in e.items():
            if a not in odd:
                continue
            k = odd.index(a)
            key = (even, odd[:k] + odd[k + 1 :])
            result[key] = result.get(key, 0) + (-coeff if k % 2 else coeff)
        return DiffPoly({k: c for k, c in result.items() if c})
    return _even_derivation(e, lambda atom: _atom_partial(atom, a))


@lru_cache(maxsize=None)
def _atom_total_derivative(atom, var):
    if atom.kind == INDEP:
        return ONE if atom.name == var else ZERO
    if atom.kind == CONST:
        return ZERO
    if atom.kind in (JET_U, TAG):
        return DiffPoly.from_atom(atom.shifted(var))
    if atom.kind == FUNC:
        result = ZERO
        for position, arg in enumerate(atom.args, start=1):
            inner = _atom_total_derivative(arg, var)
            if inner:
                result = result + DiffPoly.from_atom(atom.with_partial(position)) * inner
        return result
    raise ParityError("Odd atoms are handled by total_derivative directly")


def total_derivative(e, var):
    """
    Total derivative ``D_var`` as an even derivation of the graded ring.

    ``D_i u_sigma = u_{sigma+i}``, ``D_i p_sigma = p_{sigma+i}``,
    ``D_i x^j = delta_ij`` and the chain rule over the declared arguments of
    function symbols.
    """
    result = {}
    _accumulate(result, _even_derivation(e, lambda atom: _atom_total_derivative(atom, var)))
    for (even, odd), coeff in e.items():
        for k, atom in enumerate(odd):
            sign, new_odd = _sort_odd(odd[:k] + (atom.shifted(var),) + odd[k + 1 :])
            if not sign:
                continue
            key = (even, new_odd)
            value = result.get(key, 0) + sign * coeff
            if value:
                result[key] = value
            else:
                result.pop(key, None)
    return DiffPoly._raw(result)


def total_derivative_multi(e, sigma):
    """Composed total derivative ``D_sigma``; order independent."""
    for var in sigma:
        if e.is_zero():
            break
        e = total_derivative(e, var)
    return e


def _check_binding_parity(atom, image):
    if atom.parity:
        if image.p_degrees() - {1}:
            raise ParityError(
                "Odd atom {0!r} must be bound to a p-linear expression".format(atom)
            )
    elif not image.is_even():
        raise ParityError("Even atom {0!r} bound to an odd expression".format(atom))


def _function_image(atom, replacement):
    image = replacement
    for position in atom.index:
        image = partial_derivative(image, atom.args[position - 1])
    return image


def substitute(e, bindings):
    """
    Simultaneous substitution.

    Arguments:
        e (DiffPoly): expression
        bindings (dict): keys are atoms or symbol names (str) of function and
            constant symbols; values are DiffPolys. Binding a function symbol
            replaces every ``pd(f, ...)`` by the matching partial derivative of
            the replacement with respect to the declared arguments.

    Returns:
        DiffPoly
    """
    if not bindings:
        return e
    cache = {}

    def image(atom):
        if atom in cache:
            return cache[atom]
        if atom in bindings:
            value = _coerce(bindings[atom])
            _check_binding_parity(atom, value)
        elif atom.kind in (FUNC, CONST) and atom.name in bindings:
            value = _coerce(bindings[atom.name])
            _check_binding_parity(atom, value)
            if atom.kind == FUNC:
                value = _function_image(atom, value)
        else:
            value = None
        cache[atom] = value
        return value

    result = {}
    for (even, odd), coeff in e.items():
        if all(image(a) is None for a, _ in even) and all(image(a) is None for a in odd):
            _accumulate(result, {(even, odd): coeff})
            continue
        kept = []
        poly = DiffPoly.constant(coeff)
        for atom, n in even:
            value = image(atom)
            if value is None:
                kept.append((atom, n))
            else:
                poly = poly * value ** n
        if kept:
            poly = poly * _term_poly(1, tuple(kept), ())
        for atom in odd:
            value = image(atom)
            poly = poly * (DiffPoly.from_atom(atom) if value is None else value)
        _accumulate(result, poly)
    return DiffPoly._raw(result)


def grade_filter(e, max_p_order, complement=False):
    """
    Keep the terms whose odd atoms all have ``|sigma| <= max_p_order``.

    With ``complement=True`` keep the other terms instead.
    """
    result = {}
    for (even, odd), coeff in e.items():
        low = all(a.order <= max_p_order for a in odd)
        if low != complement:
            result[(even, odd)] = coeff
    return DiffPoly._raw(result)


def rename_indep(e, mapping):
    """
    Rename independent variables (and optionally function symbols).

    Arguments:
        e (DiffPoly): expression
        mapping (dict): ``{old_name: new_name}``; names of independent
            variables and of function symbols may both appear.

    Used for the discrete symmetries ``x -> y -> z -> x`` of an equation.
    """

    @lru_cache(maxsize=None)
    def rename(atom):
        if atom.kind == INDEP:
            return Atom.indep(mapping.get(atom.name, atom.name))
        if atom.kind in (JET_U, JET_P, TAG):
            index = MultiIndex(mapping.get(v, v) for v in atom.index)
            return Atom(atom.kind, atom.name, index)
        if atom.kind == FUNC:
            return Atom.fun(
                mapping.get(atom.name, atom.name),
                atom.index,
                [rename(arg) for arg in atom.args],
            )
        return atom

    raw = []
    for (even, odd), coeff in e.items():
        raw.append(Term(coeff, [(rename(a), n) for a, n in even], [rename(a) for a in odd]))
    return normalize(raw)
