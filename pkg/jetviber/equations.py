# -*- coding: utf-8 -*-
"""
Scalar equations ``F = 0`` with a solved leading derivative.

The class :py:class:`EquationModel` induces the normal-form reduction on the
equation ``E`` (u-jets only) and on its cotangent covering ``T*E`` (u- and
p-jets, the latter through ``l_E(p) = 0``). Restriction to ``E`` is
computed as rewriting ``u_{lead+tau} -> D_tau(rhs)`` until no jet of the
leading family is left.

Example:

    >>> from jetviber import lang
    >>> session = lang.parse_session(
    ...     "indep x y; equation u[x,x] + u[y,y] = 0 solve u[x,x];"
    ... )
    >>> eq = session.equation
    >>> eq.reduce(lang.parse_expression("u[x,x,x,x]", session))
    u[y,y,y,y]

"""

# jetviber - jet-space calculus for variational bivectors
# Copyright (C) 2024 the jetviber developers
#     The MIT License (MIT), see LICENSE.txt

import warnings

from .jetcore import (
    FUNC,
    JET_P,
    JET_U,
    TAG,
    ZERO,
    Atom,
    DiffPoly,
    JetviberError,
    partial_derivative,
    substitute,
    total_derivative_multi,
)
from .operators import EVEN_SLOT, ODD_SLOT, BiDiffOp, CDiffOp, op_adjoint, op_apply

SHELL_E = "E"
SHELL_TSTAR = "T*E"
_TAGGED = "tagged"


class LeadError(JetviberError):
    """The leading derivative cannot be solved for or reduction does not terminate."""


class NonVanishing(JetviberError):
    """An expression expected to vanish on the equation does not."""

    def __init__(self, residual):
        self.residual = residual
        super().__init__("Residual does not vanish on the equation: {0!r}".format(residual))


class NonlinearInF(JetviberError):
    """Decomposition requested for an expression nonlinear in ``F`` and its derivatives."""

    def __init__(self, part):
        self.part = part
        super().__init__("Expression is not linear in the F-family: {0!r}".format(part))


def _u_atoms(e):
    """JetU atoms of ``e`` including those hidden as arguments of function symbols."""
    found = set()
    for atom in e.atoms():
        if atom.kind == JET_U:
            found.add(atom)
        elif atom.kind == FUNC:
            found.update(a for a in atom.args if a.kind == JET_U)
    return found


def linearize(F, arg="u"):
    """
    Linearization ``l_F = sum_sigma (dF/du_sigma) D_sigma``.

    Arguments:
        F (DiffPoly): even, p-free expression
        arg (str): ``"u"`` for the even slot, ``"p"`` for the odd slot

    Returns:
        CDiffOp
    """
    slot = ODD_SLOT if arg == "p" else EVEN_SLOT
    summands = {}
    for atom in _u_atoms(F):
        coeff = partial_derivative(F, atom)
        if coeff:
            summands[atom.index] = coeff
    return CDiffOp(summands, slot)


def _is_rational(e):
    return all(not even and not odd for (even, odd), _ in e.items())


def _constant_value(e):
    return e.coefficient((), ())


class EquationModel(object):
    """
    Equation ``F = 0`` solved for a leading derivative ``u_lead``.

    Arguments:
        F (DiffPoly): even, p-free left-hand side

    Keyword Arguments:
        lead (Atom, optional): the JetU atom to solve for; if omitted the
            lex-greatest derivative entering linearly with a rational
            coefficient is used
        adjoint_covering (bool): build ``T*E`` from ``l_E^*(p) = 0`` instead
            of ``l_E(p) = 0``. Defaults to False.
        name (str, optional): label used in reports
    """

    def __init__(self, F, lead=None, adjoint_covering=False, name=None):
        if not F.is_even() or F.p_degree:
            raise LeadError("The equation must be even and free of p")
        self.F = F
        self.name = name
        self.adjoint_covering = adjoint_covering
        if lead is None:
            lead = self._select_lead(F)
            warnings.warn(
                "No leading derivative declared, solving for {0!r}".format(lead),
                UserWarning,
            )
        self.lead = lead
        self.lead_coeff, self.rhs = self._solve(F, lead)
        self.order = max(a.order for a in _u_atoms(F))
        self.ell = linearize(F, "p")
        self.ell_covering = op_adjoint(self.ell) if adjoint_covering else self.ell
        self.p_lead = Atom.p(lead.index)
        self.p_relation = op_apply(self.ell_covering, DiffPoly.from_atom(Atom.p()))
        p_coeff = self.p_relation.coefficient((), (self.p_lead,))
        rest = self.p_relation - DiffPoly.from_atom(self.p_lead).scale(p_coeff)
        if not p_coeff or any(self.in_lead_family(a) for a in rest.atoms()):
            raise LeadError(
                "Cannot solve the covering relation {0!r} for {1!r}".format(
                    self.p_relation, self.p_lead
                )
            )
        self.p_rhs = rest.scale(-1 / p_coeff)
        self._normal_forms = {}
        self._pending = set()

    @staticmethod
    def _solve(F, lead):
        coeff = partial_derivative(F, lead)
        if not coeff or not _is_rational(coeff):
            raise LeadError(
                "Leading derivative {0!r} does not enter linearly with a rational "
                "coefficient".format(lead)
            )
        c = _constant_value(coeff)
        rest = F - DiffPoly.from_atom(lead).scale(c)
        if any(a.index.contains(lead.index) for a in _u_atoms(rest)):
            raise LeadError(
                "After solving for {0!r} the equation still contains derivatives "
                "of it".format(lead)
            )
        return c, rest.scale(-1 / c)

    @classmethod
    def _select_lead(cls, F):
        candidates = []
        for atom in _u_atoms(F):
            try:
                cls._solve(F, atom)
            except LeadError:
                continue
            candidates.append(atom)
        if not candidates:
            raise LeadError("No derivative of the equation can serve as a lead")
        return max(candidates)

    def in_lead_family(self, atom):
        return atom.kind in (JET_U, JET_P) and atom.index.contains(self.lead.index)

    def is_reducible(self, atom, shell):
        if atom.kind == JET_U:
            return atom.index.contains(self.lead.index)
        if atom.kind == JET_P and shell == SHELL_TSTAR:
            return atom.index.contains(self.lead.index)
        return False

    def _normal_form(self, atom, mode):
        key = (mode, atom)
        if key in self._normal_forms:
            return self._normal_forms[key]
        if key in self._pending:
            raise LeadError("Reduction of {0!r} does not terminate".format(atom))
        self._pending.add(key)
        try:
            tau = atom.index - self.lead.index
            if atom.kind == JET_U:
                value = self.rewrite(total_derivative_multi(self.rhs, tau), mode)
                if mode == _TAGGED:
                    tag = DiffPoly.from_atom(Atom.tag(tau)).scale(1 / self.lead_coeff)
                    value = tag + value
            else:
                value = self.rewrite(total_derivative_multi(self.p_rhs, tau), mode)
        finally:
            self._pending.discard(key)
        self._normal_forms[key] = value
        return value

    def rewrite(self, e, mode):
        """Replace every reducible atom of ``e`` by its normal form under ``mode``."""
        shell = SHELL_TSTAR if mode == SHELL_TSTAR else SHELL_E
        reducible = [a for a in e.atoms() if self.is_reducible(a, shell)]
        if not reducible:
            return e
        return substitute(e, {a: self._normal_form(a, mode) for a in reducible})

    def reduce(self, e, shell=SHELL_E):
        """Normal form of ``e`` on ``E`` or on ``T*E``."""
        return self.rewrite(e, shell)

    def tagged(self, e):
        """
        Express ``e`` through normal-form jets and tags ``F[tau] = D_tau(F)``.

        The representation is unique, so ``e`` vanishes on ``E`` exactly when
        its tag-free part is zero.
        """
        return self.rewrite(e, _TAGGED)

    def instantiate(self, bindings):
        """Equation with symbols replaced, e.g. ``{"a": 2}``."""
        return EquationModel(
            substitute(self.F, bindings),
            lead=self.lead,
            adjoint_covering=self.adjoint_covering,
            name=self.name,
        )

    def __repr__(self):
        return "EquationModel({0!r} = 0 solve {1!r})".format(self.F, self.lead)


def reduce(e, eq, shell=SHELL_E):
    """Normal form of ``e`` modulo ``E`` (``shell="E"``) or ``T*E`` (``shell="T*E"``)."""
    return eq.reduce(e, shell)


def vanishes_on_shell(e, eq, shell=SHELL_E):
    return eq.reduce(e, shell).is_zero()


def split_on_F(e, eq):
    """
    Split ``e`` after tagging.

    Returns:
        tuple: ``(residual, components, nonlinear)`` where ``residual`` is the
        tag-free part, ``components`` maps ``tau`` to the coefficient of
        ``F[tau]`` and ``nonlinear`` collects terms of tag degree >= 2.
    """
    residual = {}
    nonlinear = {}
    components = {}
    for (even, odd), coeff in eq.tagged(e).items():
        tags = [(i, a, n) for i, (a, n) in enumerate(even) if a.kind == TAG]
        if not tags:
            residual[(even, odd)] = coeff
        elif len(tags) > 1 or tags[0][2] > 1:
            nonlinear[(even, odd)] = coeff
        else:
            index, atom, _ = tags[0]
            rest = even[:index] + even[index + 1 :]
            part = DiffPoly._raw({(rest, odd): coeff})
            components[atom.index] = components.get(atom.index, ZERO) + part
    return DiffPoly._raw(residual), components, DiffPoly._raw(nonlinear)


def decompose_on_F(e, eq):
    """
    Write ``e`` as ``sum_tau A_tau * D_tau(F)``.

    Raises:
        NonVanishing: ``e`` does not vanish on the equation
        NonlinearInF: ``e`` contains products of derivatives of ``F``

    Returns:
        BiDiffOp: ``nabla`` with ``nabla(F, .) = e``
    """
    residual, components, nonlinear = split_on_F(e, eq)
    if residual:
        raise NonVanishing(residual)
    if nonlinear:
        raise NonlinearInF(nonlinear)
    return BiDiffOp(components)


__all__ = [
    "EquationModel",
    "LeadError",
    "NonVanishing",
    "NonlinearInF",
    "SHELL_E",
    "SHELL_TSTAR",
    "linearize",
    "reduce",
    "vanishes_on_shell",
    "split_on_F",
    "decompose_on_F",
]
