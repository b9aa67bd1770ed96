# -*- coding: utf-8 -*-
"""
Variational bivectors, their generating sections and Schouten brackets.

A bivector ``H`` on ``E = {F = 0}`` is an operator in total derivatives with

    * ``l_E(H_u) = 0`` on ``T*E`` (condition 2) and
    * ``l_F(H(p)) - H^*(l_F^*(p)) = nabla(F, p)`` for some bi-differential
      ``nabla`` (condition 3, checked with ``p`` free).

The generating section is ``phi(H) = (H_u, H_p)`` with
``H_p = -1/2 nabla^{*1}(p, p)`` restricted to ``T*E`` and the bracket is

    ``[[H, H']] = Ev_phi(H)(H'_u) + Ev_phi(H')(H_u)``

reduced on ``T*E``. Poissonicity means this reduced representative is the
zero polynomial.
"""

# jetviber - jet-space calculus for variational bivectors
# Copyright (C) 2024 the jetviber developers
#     The MIT License (MIT), see LICENSE.txt

from collections import namedtuple
from fractions import Fraction
from functools import lru_cache

from .equations import SHELL_TSTAR, _u_atoms, split_on_F
from .jetcore import (
    JET_P,
    ZERO,
    Atom,
    DiffPoly,
    JetviberError,
    partial_derivative,
    substitute,
    total_derivative_multi,
)
from .operators import (
    BiDiffOp,
    apply_to_p,
    biop_adjoint_first,
    op_adjoint,
    op_apply,
    op_from_p_linear,
)

P = DiffPoly.from_atom(Atom.p())

CONDITION_LINEAR = "2"
CONDITION_SELF_ADJOINT = "3"


class BivectorViolation(JetviberError):
    """Raised when an operation needs a bivector but conditions (2)-(3) fail."""

    def __init__(self, check):
        self.check = check
        super().__init__(
            "{0} violates condition ({1}); residual {2!r}".format(
                check.name, check.condition, check.residual
            )
        )


class Bivector(object):
    """
    C-differential operator on the p-slot together with ``H_u = H(p)``.

    Arguments:
        name (str): label
        H_u (DiffPoly): p-linear expression ``sum h_sigma p_sigma``

    Keyword Arguments:
        op (CDiffOp, optional): give the operator instead of ``H_u``
    """

    def __init__(self, name, H_u=None, op=None):
        self.name = name
        if op is None:
            op = op_from_p_linear(H_u)
        else:
            H_u = apply_to_p(op)
        self.op = op
        self.H_u = H_u

    @property
    def jet_order(self):
        return self.op.order

    def scale(self, factor, name=None):
        return Bivector(name or self.name, self.H_u.scale(factor))

    def __add__(self, other):
        return Bivector("{0}+{1}".format(self.name, other.name), self.H_u + other.H_u)

    @classmethod
    def combine(cls, pairs, name="combination"):
        """Rational linear combination ``sum c_i B_i`` of ``[(c_i, B_i), ...]``."""
        H_u = ZERO
        for coeff, bivector in pairs:
            H_u = H_u + bivector.H_u.scale(coeff)
        return cls(name, H_u)

    def instantiate(self, bindings):
        return Bivector(self.name, substitute(self.H_u, bindings))

    def __eq__(self, other):
        return isinstance(other, Bivector) and self.H_u == other.H_u

    def __hash__(self):
        return hash(self.H_u)

    def __repr__(self):
        return "Bivector({0}: {1!r})".format(self.name, self.H_u)


GeneratingSection = namedtuple("GeneratingSection", ["phi_u", "phi_p"])


class BivectorCheck(object):
    """
    Outcome of :py:func:`check_bivector`.

    Attributes:
        ok (bool): both conditions hold
        nabla (BiDiffOp): decomposition of the operator defect (if ok)
        condition (str): ``"2"`` or ``"3"`` for the first failed condition
        residual (DiffPoly): what is left over for the failed condition
    """

    def __init__(self, name, ok, nabla=None, condition=None, residual=None):
        self.name = name
        self.ok = ok
        self.nabla = nabla
        self.condition = condition
        self.residual = residual

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "BivectorCheck({0}: ok)".format(self.name)
        return "BivectorCheck({0}: condition ({1}) fails, residual {2!r})".format(
            self.name, self.condition, self.residual
        )


def operator_defect(H, eq):
    """
    ``Theta(p) = l_F(H(p)) - H^*(l_F^*(p))`` on the ambient jet space, ``p`` free.

    Uses ``l_F^*`` whatever the covering relation of ``eq`` is.
    """
    return op_apply(eq.ell, H.H_u) - op_apply(
        op_adjoint(H.op), op_apply(op_adjoint(eq.ell), P)
    )


def check_bivector(H, eq):
    """
    Verify conditions (2) and (3) for ``H`` on ``eq``.

    Returns:
        BivectorCheck: violations are reported as values, never raised
    """
    linear = eq.reduce(op_apply(eq.ell, H.H_u), SHELL_TSTAR)
    if linear:
        return BivectorCheck(H.name, False, condition=CONDITION_LINEAR, residual=linear)
    residual, components, nonlinear = split_on_F(operator_defect(H, eq), eq)
    if residual:
        return BivectorCheck(
            H.name, False, condition=CONDITION_SELF_ADJOINT, residual=residual
        )
    if nonlinear:
        return BivectorCheck(
            H.name, False, condition=CONDITION_SELF_ADJOINT, residual=nonlinear
        )
    return BivectorCheck(H.name, True, nabla=BiDiffOp(components))


@lru_cache(maxsize=4096)
def _section(H_u, eq):
    H = Bivector("H", H_u)
    check = check_bivector(H, eq)
    if not check.ok:
        raise BivectorViolation(check)
    doubled = biop_adjoint_first(check.nabla).evaluate(P)
    return GeneratingSection(H_u, eq.reduce(doubled.scale(Fraction(-1, 2)), SHELL_TSTAR))


def generating_section(H, eq):
    """
    ``phi(H) = (H_u, H_p)`` with ``H_p = -1/2 nabla^{*1}(p, p)`` on ``T*E``.

    Raises:
        BivectorViolation: ``H`` is not a bivector on ``eq``
    """
    try:
        return _section(H.H_u, eq)
    except BivectorViolation as violation:
        violation.check.name = H.name
        raise


def _section_derivatives(phi_component):
    cache = {}

    def derivative(sigma):
        if sigma not in cache:
            cache[sigma] = total_derivative_multi(phi_component, sigma)
        return cache[sigma]

    return derivative


def evolutionary_apply(phi, e):
    """
    ``Ev_phi(e) = sum D_sigma(phi_u) de/du_sigma + sum D_sigma(phi_p) de/dp_sigma``.

    Derivatives by ``p_sigma`` are left derivatives; the section factor
    stands on the left.
    """
    result = ZERO
    if phi.phi_u:
        d_u = _section_derivatives(phi.phi_u)
        for atom in sorted(_u_atoms(e)):
            part = partial_derivative(e, atom)
            if part:
                result = result + d_u(atom.index) * part
    if phi.phi_p:
        d_p = _section_derivatives(phi.phi_p)
        for atom in sorted(a for a in e.atoms() if a.kind == JET_P):
            part = partial_derivative(e, atom)
            if part:
                result = result + d_p(atom.index) * part
    return result


def schouten_bracket(H, H2, eq):
    """
    ``[[H, H2]] = Ev_phi(H)(H2_u) + Ev_phi(H2)(H_u)`` reduced on ``T*E``.

    Raises:
        BivectorViolation: one of the arguments is not a bivector
    """
    phi = generating_section(H, eq)
    phi2 = generating_section(H2, eq)
    bracket = evolutionary_apply(phi, H2.H_u) + evolutionary_apply(phi2, H.H_u)
    return eq.reduce(bracket, SHELL_TSTAR)


def is_poisson(H, eq):
    """
    Returns:
        tuple: ``(bool, DiffPoly)`` the decision and the reduced ``[[H, H]]``
    """
    bracket = schouten_bracket(H, H, eq)
    return bracket.is_zero(), bracket


def are_compatible(H, H2, eq):
    return schouten_bracket(H, H2, eq).is_zero()


def is_cotangent_symmetry(phi, eq):
    """``Ev_phi`` preserves ``F = 0`` and ``l(p) = 0`` modulo ``T*E``."""
    for relation in (eq.F, eq.p_relation):
        if eq.reduce(evolutionary_apply(phi, relation), SHELL_TSTAR):
            return False
    return True


__all__ = [
    "Bivector",
    "BivectorCheck",
    "BivectorViolation",
    "GeneratingSection",
    "check_bivector",
    "generating_section",
    "evolutionary_apply",
    "schouten_bracket",
    "is_poisson",
    "are_compatible",
    "is_cotangent_symmetry",
    "operator_defect",
]
