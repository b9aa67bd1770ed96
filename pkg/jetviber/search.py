# -*- coding: utf-8 -*-
"""
Ansatz-based search for bivectors.

An :py:class:`Ansatz` fixes the p-slots ``p_sigma`` and a monomial basis for
their coefficients. Conditions (2) and (3) are linear in the operator, so
every unknown contributes independently: its contribution is the reduced
linear residual and the tag-free defect residual of the single operator
``monomial * p_sigma``. Collecting the coefficients of these contributions
term by term gives the homogeneous :py:class:`DeterminingSystem`.

Example:

    >>> from jetviber import lang, search
    >>> session = lang.load_session("wave")
    >>> ansatz = search.build_ansatz(session.equation, degree=0)
    >>> system = search.determining_system(ansatz, session.equation)
    >>> len(search.basis_report(search.nullspace(system), ansatz, session.equation))
    3

"""

# jetviber - jet-space calculus for variational bivectors
# Copyright (C) 2024 the jetviber developers
#     The MIT License (MIT), see LICENSE.txt

from collections import Counter
from fractions import Fraction
from itertools import combinations_with_replacement
from multiprocessing import Pool

from .equations import SHELL_TSTAR, split_on_F
from .jetcore import (
    INDEP,
    JET_U,
    Atom,
    DiffPoly,
    JetviberError,
    MultiIndex,
    _even_key,
)
from .operators import op_apply
from .schouten import Bivector, check_bivector, operator_defect
from .utils import nullspace as _linalg

CONDITION_LINEAR = "2"
CONDITION_DEFECT = "3"
CONDITION_NONLINEAR = "3*"


class VerificationError(JetviberError):
    """A nullspace vector failed the direct bivector check."""

    def __init__(self, bivector, check):
        self.bivector = bivector
        self.check = check
        super().__init__(
            "Search produced {0!r} which fails condition ({1})".format(
                bivector, check.condition
            )
        )


def _multi_indices(variables, max_order):
    indices = []
    for order in range(max_order + 1):
        for combo in combinations_with_replacement(sorted(variables), order):
            indices.append(MultiIndex(combo))
    return indices


def _monomials(coeff_vars, degree):
    monomials = []
    for d in range(degree + 1):
        for combo in combinations_with_replacement(coeff_vars, d):
            key = _even_key(Counter(combo))
            if key not in monomials:
                monomials.append(key)
    return monomials


class Ansatz(object):
    """
    p-slots, coefficient monomials and one unknown per (slot, monomial).

    Arguments:
        slots (list of MultiIndex): ``sigma`` of the slots ``p_sigma``
        monomials (list of tuple): even parts ``((atom, power), ...)``
        coeff_vars (list of Atom): variables the monomials are built from
    """

    def __init__(self, slots, monomials, coeff_vars=()):
        if not slots:
            raise JetviberError("Ansatz without p-slots")
        self.slots = list(slots)
        self.monomials = list(monomials)
        self.coeff_vars = list(coeff_vars)
        self.unknowns = [(s, m) for s in self.slots for m in self.monomials]
        self._columns = {u: i for i, u in enumerate(self.unknowns)}

    def __len__(self):
        return len(self.unknowns)

    def column(self, slot, monomial):
        return self._columns.get((slot, monomial))

    def term(self, column):
        """``monomial * p_sigma`` of one unknown."""
        slot, monomial = self.unknowns[column]
        return DiffPoly._raw({(monomial, (Atom.p(slot),)): Fraction(1)})

    def bivector(self, vector, name):
        H_u = DiffPoly()
        for column, value in enumerate(vector):
            if value:
                H_u = H_u + self.term(column).scale(value)
        return Bivector(name, H_u)

    def coefficient_vector(self, H, eq):
        """
        Coordinates of ``H`` (reduced on ``T*E``) in this ansatz.

        Returns:
            list or None: ``None`` if ``H`` uses a slot or a monomial the
            ansatz does not have
        """
        vector = [0] * len(self.unknowns)
        for (even, odd), coeff in eq.reduce(H.H_u, SHELL_TSTAR).items():
            if len(odd) != 1:
                return None
            column = self.column(odd[0].index, even)
            if column is None:
                return None
            vector[column] = coeff
        return vector

    def __repr__(self):
        return "Ansatz({0} slots x {1} monomials)".format(
            len(self.slots), len(self.monomials)
        )


def build_ansatz(eq, max_jet_order=None, coeff_vars=(), degree=0, indep=None):
    """
    Polynomial ansatz for bivectors of ``eq``.

    Arguments:
        eq (EquationModel): the equation

    Keyword Arguments:
        max_jet_order (int): highest slot order, defaults to the equation order
        coeff_vars (list of Atom): IndepVar / JetU atoms for the monomials
        degree (int): total degree bound of the coefficient monomials
        indep (list of str): independent variables; taken from the
            equation's atoms if omitted

    Returns:
        Ansatz
    """
    if degree < 0:
        raise JetviberError("Coefficient degree must be non-negative")
    if max_jet_order is None:
        max_jet_order = eq.order
    for var in coeff_vars:
        if var.kind not in (INDEP, JET_U):
            raise JetviberError("Coefficient variable {0!r} is not a jet coordinate".format(var))
        if var.kind == JET_U and eq.is_reducible(var, SHELL_TSTAR):
            raise JetviberError("Coefficient variable {0!r} is reducible".format(var))
    if indep is None:
        indep = {v for a in eq.F.atoms() if a.kind == JET_U for v in a.index}
        indep.update(v for v in eq.lead.index)
    slots = [
        sigma
        for sigma in _multi_indices(indep, max_jet_order)
        if not sigma.contains(eq.lead.index)
    ]
    return Ansatz(slots, _monomials(list(coeff_vars), degree), coeff_vars)


def _contribution(job):
    ansatz, eq, column = job
    H = Bivector("c{0}".format(column), ansatz.term(column))
    linear = eq.reduce(op_apply(eq.ell, H.H_u), SHELL_TSTAR)
    residual, _, nonlinear = split_on_F(operator_defect(H, eq), eq)
    return column, {
        CONDITION_LINEAR: linear,
        CONDITION_DEFECT: residual,
        CONDITION_NONLINEAR: nonlinear,
    }


class DeterminingSystem(object):
    """
    Sparse homogeneous linear system in the unknowns of an ansatz.

    Attributes:
        rows (list of dict): ``{column: Fraction}``
        provenance (list of tuple): ``(condition, term)`` for each row
        n_cols (int): number of unknowns
    """

    def __init__(self, ansatz):
        self.ansatz = ansatz
        self.n_cols = len(ansatz)
        self.rows = []
        self.provenance = []
        self._row_of = {}

    def add(self, condition, term, column, value):
        key = (condition, term)
        if key not in self._row_of:
            self._row_of[key] = len(self.rows)
            self.rows.append({})
            self.provenance.append(key)
        row = self.rows[self._row_of[key]]
        row[column] = row.get(column, 0) + value

    def rank(self):
        return _linalg.rank(self.rows)

    def __len__(self):
        return len(self.rows)

    def __repr__(self):
        return "DeterminingSystem({0} rows x {1} unknowns)".format(len(self.rows), self.n_cols)


def determining_system(ansatz, eq, workers=1):
    """
    Linear system expressing conditions (2) and (3) on the ansatz unknowns.

    Keyword Arguments:
        workers (int): processes computing the per-unknown contributions;
            rows are merged in column order either way
    """
    jobs = [(ansatz, eq, column) for column in range(len(ansatz))]
    if workers > 1 and len(jobs) > 1:
        with Pool(workers) as pool:
            contributions = pool.map(_contribution, jobs)
    else:
        contributions = [_contribution(job) for job in jobs]
    system = DeterminingSystem(ansatz)
    for column, parts in sorted(contributions, key=lambda c: c[0]):
        for condition in (CONDITION_LINEAR, CONDITION_DEFECT, CONDITION_NONLINEAR):
            for term, value in parts[condition].items():
                system.add(condition, term, column, value)
    return system


def nullspace(system):
    """Normalized integer basis of the solution space of ``system``."""
    return _linalg.nullspace(system.rows, system.n_cols)


def basis_report(vectors, ansatz, eq, prefix="S"):
    """
    Turn nullspace vectors into bivectors and check each one directly.

    Raises:
        VerificationError: a vector does not give a bivector

    Returns:
        list of Bivector
    """
    bivectors = []
    for number, vector in enumerate(vectors, start=1):
        H = ansatz.bivector(vector, "{0}{1}".format(prefix, number))
        check = check_bivector(H, eq)
        if not check.ok:
            raise VerificationError(H, check)
        bivectors.append(H)
    return bivectors


def span_contains(vectors, target):
    """True if ``target`` lies in the rational span of ``vectors``."""
    if target is None:
        return False
    return _linalg.rank(list(vectors) + [target]) == _linalg.rank(vectors)


def search(eq, max_jet_order=None, coeff_vars=(), degree=0, workers=1):
    """
    Run a whole search.

    Returns:
        tuple: ``(ansatz, vectors, bivectors)``
    """
    ansatz = build_ansatz(eq, max_jet_order, coeff_vars, degree)
    vectors = nullspace(determining_system(ansatz, eq, workers=workers))
    return ansatz, vectors, basis_report(vectors, ansatz, eq)


__all__ = [
    "Ansatz",
    "DeterminingSystem",
    "VerificationError",
    "build_ansatz",
    "determining_system",
    "nullspace",
    "basis_report",
    "span_contains",
    "search",
]
