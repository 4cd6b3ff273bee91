"""Sparse Gaussian elimination over Q.

Rows are dicts ``{column: Fraction}``; columns are integers and the
pivot of a row is its smallest column, so callers control pivot
preference by how they number columns.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

Row = dict[int, Fraction]


class Echelon:
    """Incrementally maintained semi-echelon basis of a row space."""

    def __init__(self):
        self.pivots: dict[int, Row] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Mapping[int, Fraction]) -> Row:
        row = {c: v for c, v in row.items() if v}
        while row:
            lead = min(row)
            prow = self.pivots.get(lead)
            if prow is None:
                return row
            factor = row[lead]
            for c, v in prow.items():
                nv = row.get(c, 0) - factor * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        return row

    def add(self, row: Mapping[int, Fraction]) -> bool:
        """Insert ``row``; returns False when it is already in the span."""
        row = self.reduce(row)
        if not row:
            return False
        lead = min(row)
        inv = 1 / row[lead]
        self.pivots[lead] = {c: v * inv for c, v in row.items()}
        return True

    def contains(self, row: Mapping[int, Fraction]) -> bool:
        return not self.reduce(row)


def rank(matrix: Sequence[Sequence]) -> int:
    ech = Echelon()
    for r in matrix:
        ech.add({j: Fraction(v) for j, v in enumerate(r) if v})
    return len(ech)


def determinant(matrix: Sequence[Sequence]):
    """Determinant by cofactor expansion; entries may be any ring elements."""
    n = len(matrix)
    if n == 0:
        return 1
    if any(len(r) != n for r in matrix):
        raise ValueError("determinant of a non-square matrix")
    if n == 1:
        return matrix[0][0]
    if n == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        term = matrix[0][j] * determinant(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def solve(
    rows: Iterable[Mapping[int, Fraction]], rhs: Sequence[Fraction], ncols: int
) -> tuple[Optional[list[Fraction]], bool, Optional[int]]:
    """Solve ``A x = b`` exactly.

    Returns ``(x, unique, bad_row)``. ``x`` is the basic solution with
    every free variable set to zero, or ``None`` when the system is
    inconsistent, in which case ``bad_row`` indexes the first equation
    that cannot be met.
    """
    aug = ncols  # right-hand side lives in an extra column
    ech = Echelon()
    for i, (row, b) in enumerate(zip(rows, rhs)):
        full = dict(row)
        if b:
            full[aug] = Fraction(b)
        red = ech.reduce(full)
        if not red:
            continue
        if min(red) == aug:
            return None, False, i
        ech.add(red)
    # back substitution: process pivots from the right
    x = [Fraction(0)] * ncols
    for lead in sorted(ech.pivots, reverse=True):
        prow = ech.pivots[lead]
        value = prow.get(aug, Fraction(0))
        for c, v in prow.items():
            if c != lead and c != aug:
                value -= v * x[c]
        x[lead] = value
    return x, len(ech) == ncols, None
