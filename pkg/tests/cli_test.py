#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Part of jetviber test cases
"""
import os
import sys

sys.path.append(os.path.abspath("."))
import io
import json
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout

import jetviber.lang as lang
from jetviber.cli import cmd_verify, main, resolve_instance
from jetviber.report import EXIT_FAIL, EXIT_INPUT, EXIT_OK, WARN
import test_file_paths


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


class CliTest(unittest.TestCase):
    def test_verify_passes(self):
        code, out, _ = run_cli("verify", "wave", "B0", "B2")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.startswith("# verify (wave)"))
        self.assertIn("summary: 2 PASS, 0 FAIL, 0 WARN, 0 ERROR", out)

    def test_verify_expression_fails(self):
        code, out, _ = run_cli("verify", "wave", "p[x]")
        self.assertEqual(code, EXIT_FAIL)
        self.assertIn("condition: 3", out)
        self.assertIn("residual: 2*p[x,x,y]", out)

    def test_json_output(self):
        code, out, _ = run_cli("verify", "wave", "B1", "--format", "json")
        self.assertEqual(code, EXIT_OK)
        data = json.loads(out)
        self.assertEqual(data["items"][0]["payload"]["H_p"], "1/2*pd(h1,2)*p[x]*p[x,x]")

    def test_input_errors(self):
        code, _, err = run_cli("verify", "no_such_session", "B0")
        self.assertEqual(code, EXIT_INPUT)
        self.assertIn("jetviber:", err)
        code, _, err = run_cli("verify", test_file_paths.paths[1])
        self.assertEqual(code, EXIT_INPUT)
        self.assertIn("line 3, column 19", err)
        code, _, _ = run_cli("verify", "wave", "p[z]")
        self.assertEqual(code, EXIT_INPUT)

    def test_invalid_arguments_are_input_errors(self):
        for argv in (
            ("verify", "wave", "u[x]"),
            ("search", "wave", "--coeff-vars", "u[x,y]"),
            ("search", "wave", "--coeff-degree", "-1"),
        ):
            code, _, err = run_cli(*argv)
            self.assertEqual(code, EXIT_INPUT, msg=" ".join(argv))
            self.assertTrue(err.startswith("jetviber:"), msg=err)

    def test_undecodable_session_file(self):
        with tempfile.TemporaryDirectory() as folder:
            path = os.path.join(folder, "latin.jet")
            with open(path, "wb") as session_file:
                session_file.write(b"indep x y;\n# \xff\n")
            code, _, err = run_cli("verify", path)
        self.assertEqual(code, EXIT_INPUT)
        self.assertTrue(err.startswith("jetviber:"))

    def test_schouten(self):
        code, out, _ = run_cli("schouten", "wave", "B1", "B1", "--instantiate", "hu")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("PASS  schouten   [[B1,B1]]", out)
        self.assertIn("bracket: ", out)
        self.assertIn("u[x,x,x]*p[x]*p[x,x]", out)
        code, out, _ = run_cli(
            "schouten", "wave", "B1", "B1", "--instantiate", "hu", "--poisson"
        )
        self.assertEqual(code, EXIT_FAIL)
        self.assertEqual(out.count("FAIL  poisson"), 1)
        code, _, _ = run_cli(
            "schouten", "wave", "B0", "B1", "--instantiate", "h1=x", "--poisson"
        )
        self.assertEqual(code, EXIT_OK)

    def test_schouten_instantiates_expressions(self):
        expression = "D[x](h1)/2*p[x] + h1*p[x,x]"
        code, out, _ = run_cli(
            "schouten", "wave", expression, expression, "--instantiate", "h1=x", "--poisson"
        )
        self.assertEqual(code, EXIT_OK)
        self.assertIn("bracket: 0", out)
        code, _, _ = run_cli(
            "schouten", "wave", expression, expression, "--instantiate", "hu", "--poisson"
        )
        self.assertEqual(code, EXIT_FAIL)

    def test_schouten_truncated(self):
        code, out, _ = run_cli(
            "schouten", "wave", "B1", "B1", "--instantiate", "hu", "--truncate", "2"
        )
        self.assertEqual(code, EXIT_OK)
        self.assertIn("order > 2: - 2*u[x,x]*p[x]*p[x,x,x] - u[x]*p[x,x]*p[x,x,x]", out)

    def test_search(self):
        code, out, _ = run_cli("search", "wave")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.count("PASS  basis"), 3)

    def test_suspect_becomes_warning(self):
        session = lang.load_session(test_file_paths.paths[0])
        report = cmd_verify(session, ["K0", "K1"])
        self.assertEqual([item.status for item in report.items][1], WARN)
        self.assertEqual(report.exit_code, EXIT_OK)

    def test_resolve_instance(self):
        session = lang.load_session("wave")
        by_block = resolve_instance(session, "hx")
        by_binding = resolve_instance(session, "h1 = x")
        self.assertEqual(by_block.bivectors["B1"], by_binding.bivectors["B1"])
        self.assertIs(resolve_instance(session).equation, session.equation)


if __name__ == "__main__":
    unittest.main(verbosity=3)
