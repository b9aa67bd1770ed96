#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Part of jetviber test cases
"""
import os
import sys

sys.path.append(os.path.abspath("."))
import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

import jetviber.lang as lang
from jetviber.equations import EquationModel, split_on_F
from jetviber.jetcore import ZERO, total_derivative_multi
from jetviber.operators import CDiffOp, op_adjoint
from jetviber.schouten import (
    Bivector,
    BivectorViolation,
    are_compatible,
    check_bivector,
    evolutionary_apply,
    generating_section,
    is_cotangent_symmetry,
    is_poisson,
    operator_defect,
    schouten_bracket,
)
import test_file_paths

EVEN_TEXTS = ["x", "u[]", "u[x]", "u[x,x]", "h1", "pd(h1,2)"]
ODD_TEXTS = ["p[]", "p[x]", "p[y]", "p[x,x]"]


@st.composite
def homogeneous_texts(draw, n_odd):
    """Wave-session expressions whose terms carry exactly ``n_odd`` odd atoms."""
    terms = []
    for _ in range(draw(st.integers(1, 2))):
        factors = [str(draw(st.integers(1, 3)))]
        factors += draw(st.lists(st.sampled_from(EVEN_TEXTS), max_size=2))
        factors += draw(
            st.lists(st.sampled_from(ODD_TEXTS), min_size=n_odd, max_size=n_odd, unique=True)
        )
        terms.append("*".join(factors))
    return " - ".join(terms)


class WaveBivectorTest(unittest.TestCase):
    def setUp(self):
        self.session = lang.load_session("wave")
        self.eq = self.session.equation

    def parse(self, text):
        return lang.parse_expression(text, self.session)

    def test_shipped_bivectors_pass(self):
        for name in ("B0", "B1", "B2"):
            check = check_bivector(self.session.bivector(name), self.eq)
            self.assertTrue(check.ok, msg=repr(check))

    def test_first_order_operator_fails_condition_three(self):
        check = check_bivector(self.session.bivector("Px"), self.eq)
        self.assertFalse(check)
        self.assertEqual(check.condition, "3")
        self.assertEqual(check.residual, self.parse("2*p[x,x,y]"))

    def test_operator_defect(self):
        defect = operator_defect(self.session.bivector("Px"), self.eq)
        self.assertEqual(defect, self.parse("2*p[x,x,y]"))

    def test_nabla_of_B1(self):
        check = check_bivector(self.session.bivector("B1"), self.eq)
        self.assertEqual(check.nabla.component(["x", "x"]), self.parse("1/2*pd(h1,2)*p[x]"))

    def test_generating_section(self):
        phi = generating_section(self.session.bivector("B1"), self.eq)
        self.assertEqual(phi.phi_u, self.session.bivector("B1").H_u)
        self.assertEqual(phi.phi_p, self.parse("1/2*pd(h1,2)*p[x]*p[x,x]"))
        self.assertTrue(generating_section(self.session.bivector("B0"), self.eq).phi_p.is_zero())

    def test_section_of_nonbivector_raises(self):
        with self.assertRaises(BivectorViolation) as context:
            generating_section(self.session.bivector("Px"), self.eq)
        self.assertEqual(context.exception.check.name, "Px")
        self.assertEqual(context.exception.check.condition, "3")

    def test_cotangent_symmetry(self):
        phi = generating_section(self.session.bivector("B1"), self.eq)
        self.assertTrue(is_cotangent_symmetry(phi, self.eq))

    def test_evolutionary_apply_on_u_jets(self):
        phi = generating_section(self.session.bivector("B0"), self.eq)
        self.assertEqual(evolutionary_apply(phi, self.parse("u[x]^2")), self.parse("2*u[x]*p[x]"))

    @given(st.sampled_from(["B0", "B1", "B2"]), st.data())
    @settings(max_examples=20, deadline=None)
    def test_evolutionary_apply_is_odd_derivation(self, name, data):
        phi = generating_section(self.session.bivector(name), self.eq)
        m = data.draw(st.integers(0, 2))
        a = self.parse(data.draw(homogeneous_texts(m)))
        b = self.parse(data.draw(homogeneous_texts(data.draw(st.integers(0, 2)))))
        sign = -1 if m % 2 else 1
        self.assertEqual(
            evolutionary_apply(phi, a * b),
            evolutionary_apply(phi, a) * b + (a * evolutionary_apply(phi, b)).scale(sign),
        )


class WaveBracketTest(unittest.TestCase):
    def setUp(self):
        self.session = lang.load_session("wave")

    def test_bracket_for_h_equal_ux(self):
        instance = self.session.instance("hu")
        B1 = instance.bivectors["B1"]
        expected = lang.parse_expression(
            "- u[x,x,x]*p[x]*p[x,x] - 2*u[x,x]*p[x]*p[x,x,x] - u[x]*p[x,x]*p[x,x,x]",
            self.session,
        )
        self.assertEqual(schouten_bracket(B1, B1, instance.equation), expected)
        ok, bracket = is_poisson(B1, instance.equation)
        self.assertFalse(ok)
        self.assertEqual(bracket, expected)

    def test_poisson_pencil_for_h_equal_x(self):
        instance = self.session.instance("hx")
        eq = instance.equation
        bivectors = [instance.bivectors[name] for name in ("B0", "B1", "B2")]
        for H in bivectors:
            self.assertTrue(is_poisson(H, eq)[0], msg=H.name)
        for H in bivectors:
            for H2 in bivectors:
                self.assertTrue(are_compatible(H, H2, eq), msg="{0} {1}".format(H.name, H2.name))

    def test_bracket_rejects_nonbivector(self):
        with self.assertRaises(BivectorViolation):
            schouten_bracket(
                self.session.bivector("Px"), self.session.bivector("B0"), self.session.equation
            )

    @given(
        st.sampled_from(["B0", "B1", "B2"]),
        st.sampled_from(["B0", "B1", "B2"]),
        st.sampled_from(["B0", "B1", "B2"]),
        st.integers(-3, 3),
        st.integers(-3, 3),
    )
    @settings(max_examples=15, deadline=None)
    def test_bracket_is_symmetric_and_bilinear(self, first, second, third, a, b):
        eq = self.session.equation
        H1, H2, H3 = (self.session.bivector(n) for n in (first, second, third))
        self.assertEqual(schouten_bracket(H1, H3, eq), schouten_bracket(H3, H1, eq))
        combined = Bivector.combine([(a, H1), (b, H2)])
        self.assertEqual(
            schouten_bracket(combined, H3, eq),
            schouten_bracket(H1, H3, eq).scale(a) + schouten_bracket(H2, H3, eq).scale(b),
        )


class BivectorAlgebraTest(unittest.TestCase):
    def setUp(self):
        self.session = lang.parse_session(test_file_paths.WAVE_HEADER)

    def parse(self, text):
        return lang.parse_expression(text, self.session)

    def test_combination(self):
        B0 = Bivector("B0", self.parse("p[]"))
        B2 = Bivector("B2", self.parse("p[y,y]"))
        combined = Bivector.combine([(2, B0), (-1, B2)])
        self.assertEqual(combined.H_u, self.parse("2*p[] - p[y,y]"))
        self.assertEqual((B0 + B2).name, "B0+B2")
        self.assertEqual(B2.scale(3).H_u, self.parse("3*p[y,y]"))
        self.assertEqual(B2.jet_order, 2)

    def test_operator_and_expression_agree(self):
        op = CDiffOp.multiplication(self.parse("h1")).compose(CDiffOp.total(["x", "x"]))
        self.assertEqual(Bivector("B", op=op), Bivector("B", self.parse("h1*p[x,x]")))

    def test_instantiate(self):
        B = Bivector("B", self.parse("h1*p[x,x]"))
        self.assertEqual(B.instantiate({"h1": self.parse("x")}).H_u, self.parse("x*p[x,x]"))


class ThirdOrderEquationTest(unittest.TestCase):
    def setUp(self):
        self.session = lang.load_session("uxyz")
        self.eq = self.session.equation

    def parse(self, text):
        return lang.parse_expression(text, self.session)

    def test_linearization_is_skew_adjoint(self):
        self.assertEqual(op_adjoint(self.eq.ell), self.eq.ell.scale(-1))

    def test_shipped_bivectors_pass(self):
        for name in ("B1", "B2", "B3", "B4"):
            check = check_bivector(self.session.bivector(name), self.eq)
            self.assertTrue(check.ok, msg=repr(check))

    def test_defect_of_B1_vanishes(self):
        self.assertTrue(operator_defect(self.session.bivector("B1"), self.eq).is_zero())

    def test_defect_of_B3_factors_through_F(self):
        defect = operator_defect(self.session.bivector("B3"), self.eq)
        residual, components, nonlinear = split_on_F(defect, self.eq)
        self.assertTrue(residual.is_zero())
        self.assertTrue(nonlinear.is_zero())
        self.assertEqual(
            generating_section(self.session.bivector("B3"), self.eq).phi_p,
            self.parse("1/2*pd(g,3)*p[x,x,y]*p[x,y]"),
        )


class HeatEquationTest(unittest.TestCase):
    def setUp(self):
        self.session = lang.parse_session("indep t x; equation u[t] = u[x,x] solve u[t];")
        self.eq = self.session.equation

    def parse(self, text):
        return lang.parse_expression(text, self.session)

    def test_identity_operator_fails_condition_three(self):
        check = check_bivector(Bivector("P", self.parse("p[]")), self.eq)
        self.assertEqual(check.condition, "3")
        self.assertEqual(check.residual, self.parse("2*p[t]"))

    def test_defect_ignores_covering_choice(self):
        adjoint = EquationModel(self.eq.F, lead=self.eq.lead, adjoint_covering=True)
        H = Bivector("Px", self.parse("p[x]"))
        self.assertEqual(operator_defect(H, self.eq), operator_defect(H, adjoint))
        self.assertEqual(operator_defect(H, self.eq), self.parse("-2*p[x,x,x]"))


class DefectReconstructionTest(unittest.TestCase):
    def test_nabla_rebuilds_the_defect(self):
        for name in ("wave", "uxyz", "laplace2d"):
            session = lang.load_session(name)
            eq = session.equation
            for H in session.bivectors.values():
                check = check_bivector(H, eq)
                if not check.ok:
                    continue
                rebuilt = ZERO
                for tau, a in check.nabla.summands.items():
                    rebuilt = rebuilt + a * total_derivative_multi(eq.F, tau)
                self.assertEqual(rebuilt, operator_defect(H, eq), msg="{0} {1}".format(name, H.name))


if __name__ == "__main__":
    unittest.main(verbosity=3)
