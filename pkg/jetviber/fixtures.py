# -*- coding: utf-8 -*-
"""
Evaluation of the ``expect`` directives stored in session files.

Every directive kind has a handler that appends items to a
:py:class:`~jetviber.report.Report`. Catalog sweeps and determining systems
can be computed by a process pool; the items are always appended in file
order.
"""

# jetviber - jet-space calculus for variational bivectors
# Copyright (C) 2024 the jetviber developers
#     The MIT License (MIT), see LICENSE.txt

import time
import warnings
from collections import OrderedDict
from itertools import combinations, combinations_with_replacement
from multiprocessing import Pool

from . import lang
from .equations import SHELL_TSTAR
from .jetcore import (
    Atom,
    DiffPoly,
    JetviberError,
    MultiIndex,
    grade_filter,
    rename_indep,
    substitute,
)
from .operators import biop_adjoint_first, op_adjoint, op_apply
from .report import ERROR, FAIL, PASS, WARN, Report, ReportItem
from .schouten import (
    P,
    Bivector,
    BivectorViolation,
    check_bivector,
    generating_section,
    is_cotangent_symmetry,
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
from .utils import samples

HANDLERS = OrderedDict()


def handler(kind):
    def register(func):
        HANDLERS[kind] = func
        return func

    return register


def _status(ok):
    return PASS if ok else FAIL


def _label(text, directive):
    if directive.block:
        return "{0} under {1}".format(text, directive.block)
    return text


class _Context(object):
    """Session, instantiated view and settings shared by the handlers."""

    def __init__(self, session, directive, report, workers):
        self.session = session
        self.directive = directive
        self.report = report
        self.workers = workers
        self.instance = session.instance(directive.block)
        self.eq = self.instance.equation
        self.task = "{0}:{1}".format(session.name, directive.kind)

    def bivector(self, name):
        if name not in self.instance.bivectors:
            raise lang.SessionError(
                "Unknown bivector {0}".format(name), self.directive.line, 1
            )
        return self.instance.bivectors[name]

    def value(self, name):
        if name in self.instance.expressions:
            return self.instance.expressions[name]
        return self.bivector(name).H_u

    def expected(self):
        expr = self.directive.expr
        if expr is None:
            raise lang.SessionError(
                "Directive {0} needs '= expression'".format(self.directive.kind),
                self.directive.line,
                1,
            )
        if self.directive.block:
            expr = substitute(expr, self.session.bindings(self.directive.block))
        return expr

    def names(self):
        return [a for a in self.directive.args if isinstance(a, str)]

    def numbers(self):
        return [a for a in self.directive.args if isinstance(a, int)]

    def item(self, text):
        return self.report.timed(_label(text, self.directive), task=self.task)

    def soften(self, item, name):
        """A failed comparison against a ``suspect`` value is reported as WARN."""
        reason = self.session.suspects.get(name)
        if item.status != FAIL or reason is None:
            return
        item.status = WARN
        item.message = reason
        warnings.warn(
            "Suspected value {0} of {1} differs: {2}".format(name, self.session.name, reason),
            UserWarning,
        )


def _compare(item, computed, expected, key="computed"):
    item.payload[key] = computed
    if computed != expected:
        item.status = FAIL
        item.payload["expected"] = expected
        item.payload["difference"] = computed - expected


@handler("bivector")
def _bivector(ctx):
    for name in ctx.names():
        with ctx.item(name) as item:
            check = check_bivector(ctx.bivector(name), ctx.eq)
            item.status = _status(check.ok)
            if not check.ok:
                item.payload["condition"] = check.condition
                item.payload["residual"] = check.residual


@handler("nonbivector")
def _nonbivector(ctx):
    condition = ctx.numbers()
    for name in ctx.names():
        with ctx.item(name) as item:
            check = check_bivector(ctx.bivector(name), ctx.eq)
            ok = not check.ok
            if ok and condition:
                ok = check.condition == str(condition[0])
            item.status = _status(ok)
            item.payload["condition"] = check.condition
            item.payload["residual"] = check.residual


@handler("section")
def _section(ctx):
    expected = ctx.expected()
    for name in ctx.names():
        with ctx.item(name) as item:
            phi = generating_section(ctx.bivector(name), ctx.eq)
            _compare(item, phi.phi_p, expected, "H_p")


@handler("adjoint")
def _adjoint(ctx):
    name = ctx.names()[0]
    with ctx.item(name) as item:
        H = ctx.bivector(name)
        _compare(item, op_apply(op_adjoint(H.op), P), ctx.expected(), "adjoint")


def _nabla(ctx, H):
    check = check_bivector(H, ctx.eq)
    if not check.ok:
        raise BivectorViolation(check)
    return check.nabla


@handler("nabla")
def _nabla_component(ctx):
    """``expect nabla H x y = A;`` or ``expect nabla H x y NAME;`` for a named value."""
    name, rest = ctx.names()[0], ctx.names()[1:]
    tau = MultiIndex([v for v in rest if v in ctx.session.indep])
    labels = [v for v in rest if v not in ctx.session.indep]
    with ctx.item("{0} D{1!r}(F)".format(name, tau)) as item:
        nabla = _nabla(ctx, ctx.bivector(name))
        expected = ctx.value(labels[0]) if labels else ctx.expected()
        _compare(item, nabla.component(tau), expected, "A")
        if labels:
            ctx.soften(item, labels[0])


@handler("nablapp")
def _nabla_pp(ctx):
    name = ctx.names()[0]
    with ctx.item(name) as item:
        nabla = _nabla(ctx, ctx.bivector(name))
        value = ctx.eq.reduce(biop_adjoint_first(nabla).evaluate(P), SHELL_TSTAR)
        _compare(item, value, ctx.expected(), "nabla*1(p,p)")


def _pair_label(first, second):
    return "[[{0},{1}]]".format(first, second)


@handler("bracket")
def _bracket(ctx):
    first, second = ctx.names()[:2]
    with ctx.item(_pair_label(first, second)) as item:
        value = schouten_bracket(ctx.bivector(first), ctx.bivector(second), ctx.eq)
        _compare(item, value, ctx.expected(), "bracket")


@handler("truncated")
def _truncated(ctx):
    first, second = ctx.names()[:2]
    cutoff = ctx.numbers()[0]
    with ctx.item("{0} above order {1}".format(_pair_label(first, second), cutoff)) as item:
        value = schouten_bracket(ctx.bivector(first), ctx.bivector(second), ctx.eq)
        _compare(item, grade_filter(value, cutoff, complement=True), ctx.expected(), "bracket")


@handler("contains")
def _contains(ctx):
    first, second = ctx.names()[:2]
    with ctx.item(_pair_label(first, second)) as item:
        value = schouten_bracket(ctx.bivector(first), ctx.bivector(second), ctx.eq)
        expected = ctx.expected()
        missing = {
            key: coeff
            for key, coeff in expected.items()
            if value.coefficient(*key) != coeff
        }
        item.payload["terms"] = len(value)
        if missing:
            item.status = FAIL
            item.payload["missing"] = DiffPoly._raw(missing)


def _poisson_items(ctx, want):
    for name in ctx.names():
        with ctx.item(name) as item:
            poisson, bracket = is_poisson(ctx.bivector(name), ctx.eq)
            item.status = _status(poisson == want)
            if not poisson:
                item.payload["[[H,H]]"] = bracket


@handler("poisson")
def _poisson(ctx):
    _poisson_items(ctx, True)


@handler("nonpoisson")
def _nonpoisson(ctx):
    _poisson_items(ctx, False)


@handler("compatible")
def _compatible(ctx):
    for first, second in combinations(ctx.names(), 2):
        with ctx.item(_pair_label(first, second)) as item:
            value = schouten_bracket(ctx.bivector(first), ctx.bivector(second), ctx.eq)
            item.status = _status(value.is_zero())
            if value:
                item.payload["bracket"] = value


@handler("incompatible")
def _incompatible(ctx):
    for first, second in combinations_with_replacement(ctx.names(), 2):
        with ctx.item(_pair_label(first, second)) as item:
            value = schouten_bracket(ctx.bivector(first), ctx.bivector(second), ctx.eq)
            item.status = _status(not value.is_zero())
            item.payload["terms"] = len(value)


@handler("equal")
def _equal(ctx):
    names = ctx.names()
    if len(names) > 1:
        label = "{0} = {1}".format(names[0], names[1])
        expected = ctx.value(names[1])
    else:
        label = names[0]
        expected = ctx.expected()
    with ctx.item(label) as item:
        _compare(item, ctx.value(names[0]), expected, "value")


@handler("zero")
def _zero(ctx):
    for name in ctx.names():
        with ctx.item(name) as item:
            value = ctx.eq.reduce(ctx.value(name), SHELL_TSTAR)
            item.status = _status(value.is_zero())
            if value:
                item.payload["value"] = value


@handler("symmetry")
def _symmetry(ctx):
    for name in ctx.names():
        with ctx.item(name) as item:
            phi = generating_section(ctx.bivector(name), ctx.eq)
            item.status = _status(is_cotangent_symmetry(phi, ctx.eq))


def _cyclic_maps(indep):
    shifted = indep[1:] + indep[:1]
    first = dict(zip(indep, shifted))
    second = {v: first[first[v]] for v in indep}
    return [first, second]


@handler("transposed")
def _transposed(ctx):
    for name in ctx.names():
        H = ctx.bivector(name)
        for mapping in _cyclic_maps(ctx.session.indep):
            image = "".join(mapping[v] for v in ctx.session.indep)
            with ctx.item("{0}({1})".format(name, image)) as item:
                moved = Bivector(name, rename_indep(H.H_u, mapping))
                check = check_bivector(moved, ctx.eq)
                item.status = _status(check.ok)
                item.payload["H_u"] = moved.H_u
                if not check.ok:
                    item.payload["residual"] = check.residual


def _catalog_entry(job):
    name, H, eq, reason, task = job
    start = time.perf_counter()
    payload = OrderedDict()
    try:
        check = check_bivector(H, eq)
        if check.ok:
            ok, bracket = is_poisson(H, eq)
            if not ok:
                payload["[[H,H]]"] = bracket
        else:
            ok = False
            payload["condition"] = check.condition
            payload["residual"] = check.residual
    except JetviberError as err:
        ok = False
        payload["error"] = str(err)
    if ok:
        status = PASS
    else:
        status = WARN if reason is not None else FAIL
    millis = (time.perf_counter() - start) * 1000
    return ReportItem(task, name, status, payload, millis, reason)


@handler("catalog")
def _catalog(ctx):
    names = ctx.names() or list(ctx.instance.bivectors)
    jobs = [
        (name, ctx.bivector(name), ctx.eq, ctx.session.suspects.get(name), ctx.task)
        for name in names
    ]
    if ctx.workers > 1 and len(jobs) > 1:
        with Pool(ctx.workers) as pool:
            items = pool.map(_catalog_entry, jobs)
    else:
        items = [_catalog_entry(job) for job in jobs]
    for item in items:
        if item.status == WARN:
            warnings.warn(
                "Suspected entry {0} of {1} fails: {2}".format(
                    item.item, ctx.session.name, item.message
                ),
                UserWarning,
            )
    ctx.report.extend(items)
    threshold = ctx.numbers()
    if threshold:
        passed = sum(1 for item in items if item.status == PASS)
        ctx.report.add(
            ctx.task,
            _label("at least {0} of {1}".format(threshold[0], len(items)), ctx.directive),
            _status(passed >= threshold[0]),
            {"passed": passed},
        )


def _search_setup(ctx):
    coeff_vars = []
    targets = []
    for arg in ctx.directive.args:
        if isinstance(arg, Atom):
            coeff_vars.append(arg)
        elif isinstance(arg, str) and arg in ctx.session.indep:
            coeff_vars.append(Atom.indep(arg))
        elif isinstance(arg, str):
            targets.append(arg)
    numbers = ctx.numbers()
    degree = numbers[0] if numbers else 0
    extra = numbers[1] if len(numbers) > 1 else None
    return coeff_vars, degree, extra, targets


def _run_search(ctx, coeff_vars, degree, max_jet_order=None):
    ansatz = build_ansatz(
        ctx.eq,
        max_jet_order=max_jet_order,
        coeff_vars=coeff_vars,
        degree=degree,
        indep=ctx.session.indep,
    )
    system = determining_system(ansatz, ctx.eq, workers=ctx.workers)
    vectors = nullspace(system)
    return ansatz, system, vectors


@handler("span")
def _span(ctx):
    coeff_vars, degree, max_jet_order, targets = _search_setup(ctx)
    with ctx.item("search degree {0}".format(degree)) as item:
        ansatz, system, vectors = _run_search(ctx, coeff_vars, degree, max_jet_order)
        item.payload["unknowns"] = len(ansatz)
        item.payload["rows"] = len(system)
        item.payload["dimension"] = len(vectors)
        try:
            basis_report(vectors, ansatz, ctx.eq)
        except VerificationError as err:
            item.status = ERROR
            item.message = str(err)
            return
    if targets:
        candidates = [
            (name, Bivector(name, ctx.value(name))) for name in targets
        ]
    else:
        candidates = [
            (name, H)
            for name, H in ctx.instance.bivectors.items()
            if check_bivector(H, ctx.eq).ok
        ]
    for name, H in candidates:
        with ctx.item("{0} in span".format(name)) as item:
            vector = ansatz.coefficient_vector(H, ctx.eq)
            item.status = _status(span_contains(vectors, vector))
            if vector is None:
                item.message = "outside the ansatz"


@handler("appendix_a")
def _appendix_a(ctx):
    coeff_vars, degree, count, _ = _search_setup(ctx)
    count = count or 10
    with ctx.item("{0} random bivectors, degree {1}".format(count, degree)) as item:
        ansatz, _, vectors = _run_search(ctx, coeff_vars, degree)
        instances = samples.random_instances(vectors, count)
        bivectors = [
            ansatz.bivector(v, "R{0}".format(i)) for i, v in enumerate(instances, start=1)
        ]
        failures = []
        for H in bivectors:
            phi = generating_section(H, ctx.eq)
            if phi.phi_p:
                failures.append((H.name, "H_p", phi.phi_p))
        for H, H2 in combinations_with_replacement(bivectors, 2):
            bracket = schouten_bracket(H, H2, ctx.eq)
            if bracket:
                failures.append((_pair_label(H.name, H2.name), "bracket", bracket))
        item.payload["dimension"] = len(vectors)
        item.payload["instances"] = len(bivectors)
        item.payload["brackets"] = len(bivectors) * (len(bivectors) + 1) // 2
        item.status = _status(not failures)
        for label, key, value in failures[:3]:
            item.payload["{0} {1}".format(label, key)] = value


def run_directive(session, directive, report, workers=1):
    """
    Evaluate one directive into ``report``.

    Mathematical failures become FAIL items, other jetviber errors inside a
    computation become FAIL items with the error text and anything else an
    ERROR item. Session errors are raised.
    """
    func = HANDLERS.get(directive.kind)
    if func is None:
        raise lang.SessionError(
            "Unknown directive kind {0}".format(directive.kind), directive.line, 1
        )
    ctx = _Context(session, directive, report, workers)
    before = len(report.items)
    try:
        func(ctx)
    except lang.SessionError:
        raise
    except JetviberError as err:
        _mark_last(report, before, ctx, FAIL, err)
    except Exception as err:
        _mark_last(report, before, ctx, ERROR, err)


def _mark_last(report, before, ctx, status, err):
    message = "{0}: {1}".format(type(err).__name__, err)
    if len(report.items) > before:
        item = report.items[-1]
        item.status = status
        item.message = message
    else:
        label = _label("line {0}".format(ctx.directive.line), ctx.directive)
        report.add(ctx.task, label, status, message=message)


def run_session(session, report=None, workers=1):
    """Evaluate all directives of ``session``."""
    if report is None:
        report = Report("fixtures", session=session.name)
    for directive in session.directives:
        run_directive(session, directive, report, workers=workers)
    return report


def cmd_fixtures(only=None, workers=1):
    """
    Run the directives of the shipped sessions.

    Keyword Arguments:
        only (list of str): restrict to these session names
        workers (int): process pool size for catalogs and searches

    Returns:
        Report
    """
    report = Report("fixtures")
    for name in lang.shipped_sessions():
        if only and name not in only:
            continue
        run_session(lang.load_session(name), report, workers=workers)
    return report


__all__ = ["HANDLERS", "run_directive", "run_session", "cmd_fixtures"]
