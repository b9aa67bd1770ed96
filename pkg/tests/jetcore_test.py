#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Part of jetviber test cases
"""
import os
import sys

sys.path.append(os.path.abspath("."))
import unittest
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

import jetviber.lang as lang
from jetviber.jetcore import (
    Atom,
    FunctionSymbolDecl,
    JetviberError,
    MultiIndex,
    Term,
    grade_filter,
    normalize,
    partial_derivative,
    rename_indep,
    substitute,
    total_derivative,
    total_derivative_multi,
)
import test_file_paths

EVEN_ATOMS = [
    Atom.indep("x"),
    Atom.indep("y"),
    Atom.u(),
    Atom.u(["x"]),
    Atom.u(["y"]),
    Atom.u(["x", "x"]),
    FunctionSymbolDecl("h", [Atom.indep("x"), Atom.u(["x"])]).atom([2]),
]
ODD_ATOMS = [Atom.p(), Atom.p(["x"]), Atom.p(["y"]), Atom.p(["x", "y"])]


@st.composite
def polys(draw, max_odd=2):
    raw = []
    for _ in range(draw(st.integers(0, 3))):
        coeff = draw(st.integers(-3, 3))
        even = draw(st.lists(st.sampled_from(EVEN_ATOMS), max_size=3))
        odd = draw(st.lists(st.sampled_from(ODD_ATOMS), max_size=max_odd, unique=True))
        raw.append(Term(coeff, even, odd))
    return normalize(raw)


@st.composite
def homogeneous(draw, n_odd):
    """Polynomials whose terms all carry exactly ``n_odd`` odd atoms."""
    raw = []
    for _ in range(draw(st.integers(0, 3))):
        coeff = draw(st.integers(-3, 3))
        even = draw(st.lists(st.sampled_from(EVEN_ATOMS), max_size=3))
        odd = draw(
            st.lists(st.sampled_from(ODD_ATOMS), min_size=n_odd, max_size=n_odd, unique=True)
        )
        raw.append(Term(coeff, even, odd))
    return normalize(raw)


class MultiIndexTest(unittest.TestCase):
    def test_sorted_storage(self):
        self.assertEqual(MultiIndex(["y", "x", "x"]).variables, ("x", "x", "y"))
        self.assertEqual(MultiIndex(["y", "x", "x"]).exponents, {"x": 2, "y": 1})
        self.assertEqual(MultiIndex("x") + "y", MultiIndex(["y", "x"]))

    def test_contains_and_difference(self):
        sigma = MultiIndex(["x", "x", "y"])
        self.assertTrue(sigma.contains(MultiIndex(["x", "y"])))
        self.assertFalse(sigma.contains(MultiIndex(["y", "y"])))
        self.assertEqual(sigma - MultiIndex("x"), MultiIndex(["x", "y"]))
        with self.assertRaises(ValueError):
            sigma - MultiIndex("z")

    def test_sub_indices_weights(self):
        parts = list(MultiIndex(["x", "x", "y"]).sub_indices())
        self.assertEqual(len(parts), 6)
        self.assertEqual(sum(weight for _, weight in parts), 8)

    def test_order(self):
        self.assertLess(MultiIndex("y"), MultiIndex(["x", "x"]))
        self.assertEqual(MultiIndex().order, 0)


class AtomTest(unittest.TestCase):
    def test_canonical_kind_order(self):
        atoms = [Atom.p(), Atom.u(), Atom.indep("x"), Atom.const("a")]
        self.assertEqual(
            sorted(atoms), [Atom.indep("x"), Atom.const("a"), Atom.u(), Atom.p()]
        )

    def test_function_symbols_with_other_arguments_differ(self):
        first = FunctionSymbolDecl("h", [Atom.indep("x")]).atom()
        second = FunctionSymbolDecl("h", [Atom.indep("y")]).atom()
        self.assertNotEqual(first, second)
        self.assertEqual(repr(first.with_partial(1)), "pd(h,1)")

    def test_declaration_rejects_repeated_arguments(self):
        with self.assertRaises(JetviberError):
            FunctionSymbolDecl("h", [Atom.indep("x"), Atom.indep("x")])


class DiffPolyTest(unittest.TestCase):
    def setUp(self):
        self.session = lang.parse_session(test_file_paths.WAVE_HEADER)

    def parse(self, text):
        return lang.parse_expression(text, self.session)

    def test_odd_atoms_anticommute(self):
        px, py = self.parse("p[x]"), self.parse("p[y]")
        self.assertEqual(px * py, -(py * px))
        self.assertTrue((px * px).is_zero())

    def test_fraction_coefficients(self):
        e = self.parse("1/2*x + 1/2*x")
        self.assertEqual(e, self.parse("x"))
        self.assertEqual(self.parse("2/4*u[]").coefficient(((Atom.u(), 1),), ()), Fraction(1, 2))

    def test_p_degree(self):
        e = self.parse("u[x]*p[x]*p[y] + p[]")
        self.assertEqual(e.p_degree, 2)
        self.assertEqual(e.p_degrees(), {1, 2})
        self.assertFalse(e.is_even())

    def test_total_derivative_of_jets(self):
        self.assertEqual(
            total_derivative(self.parse("u[x]*p[y]"), "x"),
            self.parse("u[x,x]*p[y] + u[x]*p[x,y]"),
        )
        self.assertEqual(total_derivative(self.parse("x^2*y"), "x"), self.parse("2*x*y"))

    def test_total_derivative_chain_rule(self):
        self.assertEqual(
            total_derivative(self.parse("h1"), "x"),
            self.parse("pd(h1,1) + pd(h1,2)*u[x,x]"),
        )
        self.assertEqual(total_derivative(self.parse("h1"), "y"), self.parse("pd(h1,2)*u[x,y]"))

    def test_left_derivative_by_odd_atom(self):
        e = self.parse("p[x]*p[y]")
        self.assertEqual(partial_derivative(e, Atom.p(["x"])), self.parse("p[y]"))
        self.assertEqual(partial_derivative(e, Atom.p(["y"])), self.parse("-p[x]"))

    def test_partial_derivative_through_function_arguments(self):
        e = self.parse("u[x]*h1")
        self.assertEqual(
            partial_derivative(e, Atom.u(["x"])), self.parse("h1 + u[x]*pd(h1,2)")
        )

    def test_substitute_function_symbol(self):
        e = self.parse("pd(h1,2)*p[x] + h1*p[x,x]")
        self.assertEqual(
            substitute(e, {"h1": self.parse("x*u[x]")}),
            self.parse("x*p[x] + x*u[x]*p[x,x]"),
        )

    def test_grade_filter(self):
        e = self.parse("p[x]*p[x,x] + u[]*p[x]*p[y]")
        self.assertEqual(grade_filter(e, 1), self.parse("u[]*p[x]*p[y]"))
        self.assertEqual(grade_filter(e, 1, complement=True), self.parse("p[x]*p[x,x]"))

    def test_rename_indep(self):
        e = self.parse("x*u[x,x]*p[y]")
        self.assertEqual(
            rename_indep(e, {"x": "y", "y": "x"}), self.parse("y*u[y,y]*p[x]")
        )

    @given(polys(), polys(), polys())
    @settings(max_examples=40, deadline=None)
    def test_ring_axioms(self, a, b, c):
        self.assertEqual((a * b) * c, a * (b * c))
        self.assertEqual(a * (b + c), a * b + a * c)
        self.assertTrue((a - a).is_zero())

    @given(polys())
    @settings(max_examples=40, deadline=None)
    def test_total_derivatives_commute(self, a):
        self.assertEqual(
            total_derivative(total_derivative(a, "x"), "y"),
            total_derivative(total_derivative(a, "y"), "x"),
        )
        self.assertEqual(
            total_derivative_multi(a, MultiIndex(["x", "y"])),
            total_derivative(total_derivative(a, "x"), "y"),
        )

    @given(polys(max_odd=1), polys(max_odd=1))
    @settings(max_examples=40, deadline=None)
    def test_leibniz_rule(self, a, b):
        self.assertEqual(
            total_derivative(a * b, "x"),
            total_derivative(a, "x") * b + a * total_derivative(b, "x"),
        )

    @given(st.integers(0, 2), st.integers(0, 2), st.data())
    @settings(max_examples=40, deadline=None)
    def test_graded_commutativity(self, m, n, data):
        a = data.draw(homogeneous(m))
        b = data.draw(homogeneous(n))
        sign = -1 if (m * n) % 2 else 1
        self.assertEqual(a * b, (b * a).scale(sign))

    @given(st.integers(0, 2), st.data(), st.sampled_from(ODD_ATOMS))
    @settings(max_examples=40, deadline=None)
    def test_left_derivative_is_graded_leibniz(self, m, data, atom):
        a = data.draw(homogeneous(m))
        b = data.draw(polys())
        sign = -1 if m % 2 else 1
        self.assertEqual(
            partial_derivative(a * b, atom),
            partial_derivative(a, atom) * b + (a * partial_derivative(b, atom)).scale(sign),
        )


if __name__ == "__main__":
    unittest.main(verbosity=3)
