# -*- coding: utf-8 -*-
"""
C-differential operators (operators in total derivatives).

A :py:class:`CDiffOp` is a finite sum ``sum_sigma a_sigma D_sigma`` with
:py:class:`~jetviber.jetcore.DiffPoly` coefficients acting on either the even
u-slot or the odd p-slot. A :py:class:`BiDiffOp` keeps the first slot
explicit and the second slot already evaluated at ``p``:
``nabla(q, p) = sum_tau D_tau(q) * A_tau(p)``.

Adjoint convention: ``(a D_sigma)^* = (-1)^|sigma| D_sigma o a``.
"""

# jetviber - jet-space calculus for variational bivectors
# Copyright (C) 2024 the jetviber developers
#     The MIT License (MIT), see LICENSE.txt

from .jetcore import (
    ONE,
    ZERO,
    Atom,
    DiffPoly,
    MultiIndex,
    ParityError,
    total_derivative_multi,
)

EVEN_SLOT = 0
ODD_SLOT = 1


def _check_slot(q, slot_parity):
    if q.is_zero():
        return
    if q.parity() != slot_parity:
        raise ParityError(
            "Operator with {0} slot applied to an expression of the other parity".format(
                "odd" if slot_parity else "even"
            )
        )


class CDiffOp(object):
    """
    One-slot operator in total derivatives.

    Arguments:
        summands (dict): ``{MultiIndex: DiffPoly}`` coefficients
        slot_parity (int): 0 for the u-slot, 1 for the p-slot
    """

    def __init__(self, summands=None, slot_parity=ODD_SLOT):
        self.slot_parity = slot_parity
        self.summands = {}
        for sigma, coeff in (summands or {}).items():
            if not isinstance(coeff, DiffPoly):
                coeff = DiffPoly.constant(coeff)
            if coeff:
                self.summands[sigma] = coeff

    @classmethod
    def identity(cls, slot_parity=ODD_SLOT):
        return cls({MultiIndex(): ONE}, slot_parity)

    @classmethod
    def total(cls, sigma, slot_parity=ODD_SLOT):
        """The bare composed total derivative ``D_sigma``."""
        if not isinstance(sigma, MultiIndex):
            sigma = MultiIndex(sigma)
        return cls({sigma: ONE}, slot_parity)

    @classmethod
    def multiplication(cls, a, slot_parity=ODD_SLOT):
        return cls({MultiIndex(): a}, slot_parity)

    def coefficient(self, sigma):
        if not isinstance(sigma, MultiIndex):
            sigma = MultiIndex(sigma)
        return self.summands.get(sigma, ZERO)

    @property
    def order(self):
        return max((sigma.order for sigma in self.summands), default=-1)

    def is_zero(self):
        return not self.summands

    def __add__(self, other):
        summands = dict(self.summands)
        for sigma, coeff in other.summands.items():
            summands[sigma] = summands.get(sigma, ZERO) + coeff
        return CDiffOp(summands, self.slot_parity)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        return CDiffOp(
            {s: c.scale(factor) for s, c in self.summands.items()}, self.slot_parity
        )

    def __eq__(self, other):
        if not isinstance(other, CDiffOp):
            return NotImplemented
        return self.summands == other.summands

    def __hash__(self):
        return hash(frozenset(self.summands.items()))

    def __repr__(self):
        if not self.summands:
            return "0"
        parts = []
        for sigma in sorted(self.summands):
            coeff = self.summands[sigma]
            if sigma.order == 0:
                parts.append("({0!r})".format(coeff))
            else:
                parts.append("({0!r})*D{1!r}".format(coeff, sigma))
        return " + ".join(parts)

    def apply(self, q):
        return op_apply(self, q)

    def compose(self, other):
        return op_compose(self, other)

    def adjoint(self):
        return op_adjoint(self)


def op_apply(op, q):
    """
    Apply ``op`` to ``q``: ``sum_sigma a_sigma * D_sigma(q)``.

    Raises:
        ParityError: the parity of ``q`` does not match the slot
    """
    _check_slot(q, op.slot_parity)
    result = ZERO
    for sigma, coeff in op.summands.items():
        result = result + coeff * total_derivative_multi(q, sigma)
    return result


def op_compose(first, second):
    """
    Composition ``first o second`` via the multi-index Leibniz rule.

    ``(a D_sigma) o (b D_tau) = sum_{rho <= sigma} C(sigma, rho) a D_rho(b) D_{sigma-rho+tau}``
    """
    summands = {}
    for sigma, a in first.summands.items():
        for rho, weight in sigma.sub_indices():
            rest = sigma - rho
            for tau, b in second.summands.items():
                derived = total_derivative_multi(b, rho)
                if derived.is_zero():
                    continue
                target = rest + tau
                summands[target] = summands.get(target, ZERO) + (a * derived).scale(weight)
    return CDiffOp(summands, second.slot_parity)


def op_adjoint(op):
    """
    Formal adjoint ``(a D_sigma)^* = (-1)^|sigma| D_sigma o a``.

    Raises:
        ParityError: a coefficient is odd; use :py:func:`biop_adjoint_first`
    """
    summands = {}
    for sigma, a in op.summands.items():
        if not a.is_even():
            raise ParityError("One-slot adjoint of an operator with odd coefficients")
        sign = -1 if sigma.order % 2 else 1
        for rho, weight in sigma.sub_indices():
            derived = total_derivative_multi(a, rho)
            if derived.is_zero():
                continue
            target = sigma - rho
            summands[target] = summands.get(target, ZERO) + derived.scale(sign * weight)
    return CDiffOp(summands, op.slot_parity)


def op_from_p_linear(e):
    """
    Read a p-linear expression ``sum h_sigma p_sigma`` as ``sum h_sigma D_sigma``.

    Raises:
        ParityError: some term does not contain exactly one odd atom
    """
    summands = {}
    for (even, odd), coeff in e.items():
        if len(odd) != 1:
            raise ParityError("Expression is not linear in p: {0!r}".format(e))
        sigma = odd[0].index
        part = DiffPoly._raw({(even, ()): coeff})
        summands[sigma] = summands.get(sigma, ZERO) + part
    return CDiffOp(summands, ODD_SLOT)


class BiDiffOp(object):
    """
    Bi-differential operator ``nabla(q, p) = sum_tau D_tau(q) * A_tau(p)``.

    The second slot is stored applied: ``A_tau`` is the DiffPoly ``A_tau(p)``.

    Arguments:
        summands (dict): ``{MultiIndex tau: DiffPoly A_tau}``
    """

    def __init__(self, summands=None):
        self.summands = {t: a for t, a in (summands or {}).items() if a}

    def component(self, tau):
        if not isinstance(tau, MultiIndex):
            tau = MultiIndex(tau)
        return self.summands.get(tau, ZERO)

    def is_zero(self):
        return not self.summands

    def evaluate(self, q):
        """``sum_tau D_tau(q) * A_tau``, the first-slot argument on the left."""
        result = ZERO
        for tau, a in self.summands.items():
            result = result + total_derivative_multi(q, tau) * a
        return result

    def adjoint_first(self):
        return biop_adjoint_first(self)

    def __eq__(self, other):
        if not isinstance(other, BiDiffOp):
            return NotImplemented
        return self.summands == other.summands

    def __hash__(self):
        return hash(frozenset(self.summands.items()))

    def __repr__(self):
        if not self.summands:
            return "0"
        return " + ".join(
            "D{0!r}(.)*({1!r})".format(tau, self.summands[tau]) for tau in sorted(self.summands)
        )


def biop_adjoint_first(nabla):
    """
    Adjoint of ``nabla`` with respect to its first argument.

    ``nabla^{*1}(q, p) = sum_tau (-1)^|tau| D_tau(A_tau(p) * q)``, expanded
    back into the form ``sum_rho D_rho(q) * B_rho(p)``. The odd coefficients
    ``A_tau(p)`` are parameters; ``q`` is never moved past them.
    """
    summands = {}
    for tau, a in nabla.summands.items():
        sign = -1 if tau.order % 2 else 1
        for rho, weight in tau.sub_indices():
            derived = total_derivative_multi(a, rho)
            if derived.is_zero():
                continue
            target = tau - rho
            summands[target] = summands.get(target, ZERO) + derived.scale(sign * weight)
    return BiDiffOp(summands)


def apply_to_p(op):
    """``H_u = H(p)`` for an operator on the p-slot."""
    return op_apply(op, DiffPoly.from_atom(Atom.p()))


__all__ = [
    "CDiffOp",
    "BiDiffOp",
    "op_apply",
    "op_compose",
    "op_adjoint",
    "op_from_p_linear",
    "biop_adjoint_first",
    "apply_to_p",
    "EVEN_SLOT",
    "ODD_SLOT",
]
