# -*- coding: utf-8 -*-
"""
Task reports with per-item status, canonical payloads and timing.

Example:

    >>> report = Report("verify", session="wave")
    >>> with report.timed("B0") as item:
    ...     item.payload["H_p"] = "0"
    >>> report.exit_code
    0

"""

# jetviber - jet-space calculus for variational bivectors
# Copyright (C) 2024 the jetviber developers
#     The MIT License (MIT), see LICENSE.txt

import json
import time
from collections import OrderedDict
from contextlib import contextmanager

PASS = "PASS"
FAIL = "FAIL"
WARN = "WARN"
ERROR = "ERROR"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


class ReportItem(object):
    """
    One line of a report.

    Attributes:
        task (str): command or directive kind
        item (str): what was checked, e.g. ``"B1"`` or ``"[[B1,B2]]"``
        status (str): PASS, FAIL, WARN or ERROR
        payload (OrderedDict): canonical expressions and other values
        millis (float): wall clock time
        message (str): human readable note
    """

    def __init__(self, task, item, status=PASS, payload=None, millis=0.0, message=None):
        self.task = task
        self.item = item
        self.status = status
        self.payload = OrderedDict(payload or ())
        self.millis = millis
        self.message = message

    def to_dict(self):
        return OrderedDict(
            [
                ("task", self.task),
                ("item", self.item),
                ("status", self.status),
                ("payload", OrderedDict((k, str(v)) for k, v in self.payload.items())),
                ("millis", round(self.millis, 1)),
                ("message", self.message),
            ]
        )

    def __repr__(self):
        return "ReportItem({0} {1}: {2})".format(self.task, self.item, self.status)


class Report(object):
    """
    Ordered collection of report items.

    Arguments:
        command (str): ``verify``, ``schouten``, ``search`` or ``fixtures``

    Keyword Arguments:
        session (str): session name shown in the header
    """

    def __init__(self, command, session=None):
        self.command = command
        self.session = session
        self.items = []

    def add(self, task, item, status=PASS, payload=None, millis=0.0, message=None):
        entry = ReportItem(task, item, status, payload, millis, message)
        self.items.append(entry)
        return entry

    def extend(self, items):
        self.items.extend(items)

    @contextmanager
    def timed(self, item, task=None):
        """Add an item and fill in its ``millis`` when the block ends."""
        entry = self.add(task or self.command, item)
        start = time.perf_counter()
        try:
            yield entry
        finally:
            entry.millis = (time.perf_counter() - start) * 1000

    def count(self, status):
        return sum(1 for item in self.items if item.status == status)

    @property
    def exit_code(self):
        if self.count(ERROR):
            return EXIT_INTERNAL
        if self.count(FAIL):
            return EXIT_FAIL
        return EXIT_OK

    def summary(self):
        return OrderedDict((s, self.count(s)) for s in (PASS, FAIL, WARN, ERROR))

    def to_dict(self):
        return OrderedDict(
            [
                ("command", self.command),
                ("session", self.session),
                ("items", [item.to_dict() for item in self.items]),
                ("summary", self.summary()),
                ("exit_code", self.exit_code),
            ]
        )

    def render_json(self):
        return json.dumps(self.to_dict(), indent=2)

    def render_text(self):
        lines = []
        header = self.command
        if self.session:
            header += " ({0})".format(self.session)
        lines.append("# " + header)
        warnings = []
        for item in self.items:
            if item.status == WARN:
                warnings.append(item)
                continue
            lines.extend(_item_lines(item))
        if warnings:
            lines.append("# suspected entries")
            for item in warnings:
                lines.extend(_item_lines(item))
        lines.append(
            "summary: "
            + ", ".join("{1} {0}".format(s, n) for s, n in self.summary().items())
        )
        return "\n".join(lines)

    def render(self, fmt="text"):
        if fmt == "json":
            return self.render_json()
        return self.render_text()


def _item_lines(item):
    lines = [
        "{0:<5} {1:<10} {2} [{3:.0f} ms]".format(item.status, item.task, item.item, item.millis)
    ]
    if item.message:
        lines.append("      " + item.message)
    for key, value in item.payload.items():
        lines.append("      {0}: {1}".format(key, value))
    return lines


__all__ = [
    "Report",
    "ReportItem",
    "PASS",
    "FAIL",
    "WARN",
    "ERROR",
    "EXIT_OK",
    "EXIT_FAIL",
    "EXIT_INPUT",
    "EXIT_INTERNAL",
]
