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
from jetviber.jetcore import Atom, DiffPoly, MultiIndex
import test_file_paths

FRAGMENTS = [
    "x", "y", "u[]", "u[x]", "u[y,y]", "h1", "pd(h1,2)", "p[]", "p[x]", "p[x,x]",
    "2", "1/3", "x^2",
]


class TokenizerTest(unittest.TestCase):
    def test_error_position(self):
        with self.assertRaises(lang.SessionError) as context:
            lang.parse_session("indep x;\nequation u[x] $ = 0;")
        self.assertEqual(context.exception.line, 2)
        self.assertEqual(context.exception.column, 15)

    def test_broken_file(self):
        with self.assertRaises(lang.SessionError) as context:
            lang.load_session(test_file_paths.paths[1])
        self.assertEqual((context.exception.line, context.exception.column), (3, 19))

    def test_comments_and_strings(self):
        tokens = lang.tokenize('suspect B1 "a # b"; # comment')
        self.assertEqual([t.kind for t in tokens], ["NAME", "NAME", "STRING", "OP", "EOF"])


class SessionTest(unittest.TestCase):
    def test_wave_header(self):
        session = lang.parse_session(test_file_paths.WAVE_HEADER)
        self.assertEqual(session.indep, ["x", "y"])
        self.assertEqual(list(session.functions), ["h1"])
        self.assertEqual(session.equation.lead, Atom.u(["x", "y"]))

    def test_string_file(self):
        session = lang.load_session(test_file_paths.paths[0])
        self.assertEqual(session.name, "string")
        self.assertEqual(list(session.bivectors), ["K0", "K1", "K2"])
        self.assertEqual(session.suspects, {"K1": "odd order operator"})
        self.assertEqual([d.kind for d in session.directives], ["catalog", "bivector", "nonbivector"])
        self.assertEqual(session.directives[0].args, ("K0", "K1", 1))
        self.assertEqual(session.directives[1].block, "one")
        self.assertEqual(
            session.instance("one").bivectors["K2"].H_u, DiffPoly.from_atom(Atom.p())
        )

    def test_shipped_sessions(self):
        self.assertEqual(
            lang.shipped_sessions(), ["laplace2d", "laplace3d", "poincare", "uxyz", "wave"]
        )
        for name in lang.shipped_sessions():
            session = lang.load_session(name)
            self.assertEqual(session.name, name)
            self.assertTrue(session.bivectors)
            self.assertTrue(session.directives)

    def test_missing_file(self):
        with self.assertRaises(OSError):
            lang.load_session("no_such_session")

    def test_total_derivative_is_expanded(self):
        session = lang.load_session("wave")
        expected = lang.parse_expression(
            "1/2*pd(h1,1)*p[x] + 1/2*pd(h1,2)*u[x,x]*p[x] + h1*p[x,x]", session
        )
        self.assertEqual(session.bivector("B1").H_u, expected)

    def test_declaration_errors(self):
        broken = [
            "indep x x; equation u[x] = 0;",
            "indep x; constant x; equation u[x] = 0;",
            "indep u; equation u[] = 0;",
            "indep x; equation u[x] = 0; equation u[x,x] = 0;",
            "indep x; equation u[x] = y;",
            "indep x; equation u[x] = 0 solve u[x]; instantiate x = 1;",
            "indep x; function h(z); equation u[x] = 0;",
            "indep x; equation u[x] = 0 solve u[x]; bivector B = u[x];",
            "indep x; bivector B = p[x];",
            "indep x; equation u[x] = 1/0;",
        ]
        for text in broken:
            with self.assertRaises(lang.SessionError, msg=text):
                lang.parse_session(text)


class ExpressionTest(unittest.TestCase):
    def setUp(self):
        self.session = lang.parse_session(test_file_paths.WAVE_HEADER)

    def test_bindings(self):
        bindings = lang.parse_bindings("h1 = u[x], h1 = x", self.session)
        self.assertEqual(list(bindings), ["h1"])
        self.assertEqual(bindings["h1"], lang.parse_expression("x", self.session))
        with self.assertRaises(lang.SessionError):
            lang.parse_bindings("x = 1", self.session)

    def test_variables(self):
        self.assertEqual(
            lang.parse_variables("x, u[x], u[y,y]", self.session),
            [Atom.indep("x"), Atom.u("x"), Atom.u(MultiIndex(["y", "y"]))],
        )
        with self.assertRaises(lang.SessionError):
            lang.parse_variables("z", self.session)

    def test_canonical_print(self):
        e = lang.parse_expression("p[x]*u[x] - 1/2*p[] - 3", self.session)
        self.assertEqual(lang.print_canonical(e), "- 1/2*p[] + u[x]*p[x] - 3")
        self.assertEqual(repr(lang.parse_expression("0*x", self.session)), "0")
        self.assertEqual(
            lang.print_canonical(lang.parse_expression("-x^2*pd(h1,2)", self.session)),
            "- x^2*pd(h1,2)",
        )

    @given(st.lists(st.lists(st.sampled_from(FRAGMENTS), min_size=1, max_size=3), max_size=4))
    @settings(max_examples=50, deadline=None)
    def test_printed_form_parses_back(self, products):
        session = lang.parse_session(test_file_paths.WAVE_HEADER)
        text = " - ".join("*".join(factors) for factors in products) or "0"
        e = lang.parse_expression(text, session)
        self.assertEqual(lang.parse_expression(lang.print_canonical(e), session), e)


if __name__ == "__main__":
    unittest.main(verbosity=3)
