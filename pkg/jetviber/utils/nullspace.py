#!/usr/bin/env python
"""
Fraction-free elimination on sparse rational rows.

Rows are mappings ``{column: value}`` (or plain sequences); values may be
ints or :py:class:`fractions.Fraction`. Each row is scaled to a primitive
integer row first and all further elimination stays in the integers:
``row <- a * row - b * pivot`` followed by division by the content.

Example:

    >>> nullspace([[1, 2], [2, 4]], 2)
    [(2, -1)]

"""

# jetviber - jet-space calculus for variational bivectors
# Copyright (C) 2024 the jetviber developers
#     The MIT License (MIT), see LICENSE.txt

from fractions import Fraction
from math import gcd, lcm


def _as_mapping(row):
    if isinstance(row, dict):
        return row
    return {c: v for c, v in enumerate(row) if v}


def _primitive(row):
    """Divide an integer row by the gcd of its entries."""
    content = gcd(*row.values()) if row else 1
    if content in (0, 1):
        return row
    return {c: v // content for c, v in row.items()}


def integer_row(row):
    """Clear denominators of a rational row and make it primitive."""
    row = {c: Fraction(v) for c, v in _as_mapping(row).items() if v}
    if not row:
        return {}
    scale = lcm(*(v.denominator for v in row.values()))
    return _primitive({c: int(v * scale) for c, v in row.items()})


def row_echelon(rows):
    """
    Incremental echelon form.

    Arguments:
        rows (iterable): sparse or dense rational rows

    Returns:
        dict: ``{pivot_column: primitive integer row}``; every row only has
        entries in columns ``>=`` its pivot column.
    """
    echelon = {}
    for row in rows:
        row = integer_row(row)
        while row:
            col = min(row)
            pivot = echelon.get(col)
            if pivot is None:
                echelon[col] = row
                break
            a, b = pivot[col], row[col]
            combined = {c: a * v for c, v in row.items()}
            for c, v in pivot.items():
                value = combined.get(c, 0) - b * v
                if value:
                    combined[c] = value
                else:
                    combined.pop(c, None)
            row = _primitive(combined)
    return echelon


def rank(rows):
    return len(row_echelon(rows))


def normalize_vector(vector):
    """Scale to integers with content 1 and the first nonzero entry positive."""
    values = [Fraction(v) for v in vector]
    nonzero = [v for v in values if v]
    if not nonzero:
        return tuple(0 for _ in values)
    scale = lcm(*(v.denominator for v in nonzero))
    ints = [int(v * scale) for v in values]
    content = gcd(*ints)
    if nonzero[0] < 0:
        content = -content
    return tuple(v // content for v in ints)


def nullspace(rows, n_cols):
    """
    Basis of ``{x : row . x = 0 for all rows}``.

    Arguments:
        rows (iterable): sparse or dense rational rows
        n_cols (int): number of unknowns

    Returns:
        list of tuple: one normalized integer vector per free column, in
        increasing order of the free column
    """
    echelon = row_echelon(rows)
    pivots = sorted(echelon, reverse=True)
    basis = []
    for free in range(n_cols):
        if free in echelon:
            continue
        solution = {free: Fraction(1)}
        for col in pivots:
            row = echelon[col]
            total = sum(
                (v * solution[c] for c, v in row.items() if c != col and c in solution),
                Fraction(0),
            )
            if total:
                solution[col] = -total / row[col]
        basis.append(normalize_vector(solution.get(c, 0) for c in range(n_cols)))
    return basis


__all__ = ["integer_row", "row_echelon", "rank", "normalize_vector", "nullspace"]
