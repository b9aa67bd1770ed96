#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Command line interface.

usage:

    jetviber verify SESSION NAME [NAME ...]
    jetviber schouten SESSION H H2 [--poisson] [--truncate K]
    jetviber search SESSION [--max-jet-order N] [--coeff-vars x,y,u[x]]
    jetviber fixtures [--only NAME ...]

Example::

    $ jetviber verify wave B1 "p[x]"
    # verify (wave)
    PASS  verify     B1 [3 ms]
          H_p: 1/2*pd(h1,2)*p[x]*p[x,x]
    FAIL  verify     p[x] [1 ms]
          condition: 3
          residual: 2*p[x,x,y]
    summary: 1 PASS, 1 FAIL, 0 WARN, 0 ERROR

Exit codes: 0 everything passed, 1 a mathematical check failed, 2 the input
could not be read or parsed, 3 a self-check or the program itself failed.
"""

# jetviber - jet-space calculus for variational bivectors
# Copyright (C) 2024 the jetviber developers
#     The MIT License (MIT), see LICENSE.txt

import argparse
import sys
import traceback

from . import lang
from .fixtures import cmd_fixtures
from .jetcore import JetviberError, grade_filter
from .regex_patterns import INSTANTIATE_BLOCK_PATTERN
from .report import EXIT_INPUT, EXIT_INTERNAL, FAIL, WARN, Report
from .schouten import (
    Bivector,
    BivectorViolation,
    check_bivector,
    generating_section,
    is_poisson,
    schouten_bracket,
)
from .search import (
    VerificationError,
    basis_report,
    build_ansatz,
    determining_system,
    nullspace,
    span_contains,
)


def resolve_bindings(session, instantiate=None):
    """
    The symbol bindings selected by ``--instantiate``.

    Returns:
        dict: symbol -> DiffPoly, empty without ``--instantiate``
    """
    if not instantiate:
        return {}
    if INSTANTIATE_BLOCK_PATTERN.match(instantiate) and instantiate in session.instantiations:
        return session.bindings(instantiate)
    return lang.parse_bindings(instantiate, session)


def resolve_instance(session, instantiate=None):
    """
    The session view selected by ``--instantiate``.

    Arguments:
        session (Session): parsed session
        instantiate (str): a block name or ``sym=expr[,sym=expr]``
    """
    if not instantiate:
        return session.instance()
    if INSTANTIATE_BLOCK_PATTERN.match(instantiate) and instantiate in session.instantiations:
        return session.instance(instantiate)
    return session.apply(resolve_bindings(session, instantiate))


def _bivector_or_expression(session, instance, text, bindings=None):
    if text in instance.bivectors:
        return instance.bivectors[text]
    H = Bivector(text, lang.parse_expression(text, session))
    return H.instantiate(bindings) if bindings else H



def cmd_verify(session, names, instantiate=None):
    """
    Check conditions (2) and (3) and report the section of every bivector.

    ``names`` are bivector names or ad hoc expressions such as ``p[x]``.
    """
    report = Report("verify", session=session.name)
    instance = resolve_instance(session, instantiate)
    bindings = resolve_bindings(session, instantiate)
    eq = instance.equation
    for text in names or list(instance.bivectors):
        H = _bivector_or_expression(session, instance, text, bindings)
        with report.timed(text) as item:
            check = check_bivector(H, eq)
            if not check.ok:
                item.status = FAIL
                item.payload["condition"] = check.condition
                item.payload["residual"] = check.residual
                reason = session.suspects.get(text)
                if reason is not None:
                    item.status = WARN
                    item.message = reason
                continue
            item.payload["H_p"] = generating_section(H, eq).phi_p
    return report


def cmd_schouten(session, first, second, instantiate=None, poisson=False, truncate=None):
    """
    Schouten bracket of two bivectors, optionally restricted to high orders.

    The bracket item carries the result; only ``poisson`` items fail on a
    nonzero ``[[H,H]]``.
    """
    report = Report("schouten", session=session.name)
    instance = resolve_instance(session, instantiate)
    bindings = resolve_bindings(session, instantiate)
    eq = instance.equation
    H = _bivector_or_expression(session, instance, first, bindings)
    H2 = _bivector_or_expression(session, instance, second, bindings)
    with report.timed("[[{0},{1}]]".format(first, second)) as item:
        try:
            bracket = schouten_bracket(H, H2, eq)
        except BivectorViolation as violation:
            item.status = FAIL
            item.message = str(violation)
            return report
        if truncate is not None:
            item.payload["order > {0}".format(truncate)] = grade_filter(
                bracket, truncate, complement=True
            )
        else:
            item.payload["bracket"] = bracket
    if poisson:
        for H_i in (H, H2) if H != H2 else (H,):
            with report.timed(H_i.name, task="poisson") as item:
                if H == H2:
                    ok, self_bracket = bracket.is_zero(), bracket
                else:
                    ok, self_bracket = is_poisson(H_i, eq)
                if not ok:
                    item.status = FAIL
                    item.payload["[[H,H]]"] = self_bracket
    return report


def cmd_search(
    session,
    max_jet_order=None,
    coeff_vars=None,
    coeff_degree=0,
    contains=None,
    instantiate=None,
    workers=1,
):
    """
    Solve the determining system and verify every basis element.

    Keyword Arguments:
        contains (Session): bivectors to locate in the computed span

    Raises:
        VerificationError: a basis vector is not a bivector
    """
    report = Report("search", session=session.name)
    instance = resolve_instance(session, instantiate)
    eq = instance.equation
    variables = lang.parse_variables(coeff_vars, session) if coeff_vars else []
    with report.timed("determining system") as item:
        ansatz = build_ansatz(
            eq,
            max_jet_order=max_jet_order,
            coeff_vars=variables,
            degree=coeff_degree,
            indep=session.indep,
        )
        system = determining_system(ansatz, eq, workers=workers)
        item.payload["unknowns"] = len(ansatz)
        item.payload["rows"] = len(system)
        item.payload["rank"] = system.rank()
    vectors = nullspace(system)
    for H in basis_report(vectors, ansatz, eq):
        report.add("basis", H.name, payload={"H_u": H.H_u})
    if contains is not None:
        targets = resolve_instance(contains, instantiate).bivectors
        for name, H in targets.items():
            with report.timed("{0} in span".format(name), task="contains") as item:
                vector = ansatz.coefficient_vector(H, eq)
                if vector is None:
                    item.status = FAIL
                    item.message = "outside the ansatz"
                elif not span_contains(vectors, vector):
                    item.status = FAIL
                if item.status == FAIL and name in contains.suspects:
                    item.status = WARN
                    item.message = contains.suspects[name]
    return report


def _add_common(parser):
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--workers", type=int, default=1, help="process pool size")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="jetviber",
        description="Variational bivectors and Schouten brackets on PDE jet spaces",
    )
    commands = parser.add_subparsers(dest="command")
    commands.required = True

    verify = commands.add_parser("verify", help="check bivector conditions")
    verify.add_argument("session", help="shipped session name or path to a .jet file")
    verify.add_argument("names", nargs="*", help="bivector names or expressions in p")
    verify.add_argument("--expr", action="append", default=[], help="ad hoc bivector")
    verify.add_argument("--instantiate", help="block name or sym=expr[,sym=expr]")
    _add_common(verify)

    schouten = commands.add_parser("schouten", help="Schouten bracket of two bivectors")
    schouten.add_argument("session")
    schouten.add_argument("first")
    schouten.add_argument("second")
    schouten.add_argument("--poisson", action="store_true", help="also check [[H,H]]")
    schouten.add_argument("--truncate", type=int, help="only terms with p of order > K")
    schouten.add_argument("--instantiate")
    _add_common(schouten)

    search = commands.add_parser("search", help="find all bivectors of an ansatz")
    search.add_argument("session")
    search.add_argument("--max-jet-order", type=int)
    search.add_argument("--coeff-vars", help="comma separated, e.g. x,y,u[x]")
    search.add_argument("--coeff-degree", type=int, default=0)
    search.add_argument("--contains", help="session whose bivectors must lie in the span")
    search.add_argument("--instantiate")
    _add_common(search)

    fixtures = commands.add_parser("fixtures", help="run the shipped session checks")
    fixtures.add_argument("--only", nargs="+", help="restrict to these sessions")
    _add_common(fixtures)
    return parser


def run(args):
    if args.command == "fixtures":
        return cmd_fixtures(only=args.only, workers=args.workers)
    session = lang.load_session(args.session)
    if args.command == "verify":
        return cmd_verify(session, args.names + args.expr, args.instantiate)
    if args.command == "schouten":
        return cmd_schouten(
            session,
            args.first,
            args.second,
            instantiate=args.instantiate,
            poisson=args.poisson,
            truncate=args.truncate,
        )
    contains = lang.load_session(args.contains) if args.contains else None
    return cmd_search(
        session,
        max_jet_order=args.max_jet_order,
        coeff_vars=args.coeff_vars,
        coeff_degree=args.coeff_degree,
        contains=contains,
        instantiate=args.instantiate,
        workers=args.workers,
    )


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        report = run(args)
    except VerificationError as err:
        print("jetviber: self-check failed: {0}".format(err), file=sys.stderr)
        return EXIT_INTERNAL
    except (JetviberError, OSError, UnicodeDecodeError) as err:
        print("jetviber: {0}".format(err), file=sys.stderr)
        return EXIT_INPUT
    except Exception:
        traceback.print_exc()
        return EXIT_INTERNAL
    print(report.render(args.format))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
