"""Integer matrices and Smith normal form.

Finitely generated abelian groups enter through relation matrices; the
invariant factors of the relation matrix are the torsion coefficients.  Only
the factors and the rank are needed downstream, so the unimodular transforms
are applied in place and thrown away.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class IntMatrix:
    """Plain integer matrix; shape plus arbitrary-precision entries."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: Iterable[Iterable[int]]) -> None:
        self.data = [list(map(int, row)) for row in rows]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        if any(len(r) != self.cols for r in self.data):
            raise ValueError("ragged rows")

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntMatrix):
            return self.data == other.data
        return NotImplemented

    def __repr__(self) -> str:
        return f"IntMatrix({self.data!r})"


def smith_normal_form(
    m: IntMatrix | Sequence[Sequence[int]],
) -> tuple[list[int], int]:
    """Invariant factors and rank of an integer matrix.

    Returns ``(factors, rank)`` with factors d_1 | d_2 | ... | d_rank, each
    positive.  Classic elementary row/column reduction; the pivot at each
    stage is the entry of smallest nonzero absolute value, which keeps the
    intermediate numbers small for the matrix sizes that occur here.
    """
    if isinstance(m, IntMatrix):
        a = [row[:] for row in m.data]
    else:
        a = [list(map(int, row)) for row in m]
    rows = len(a)
    cols = len(a[0]) if a else 0

    factors: list[int] = []
    t = 0
    while True:
        # locate the smallest nonzero entry in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = a[i][j]
                if v != 0 and (best is None or abs(v) < abs(best[2])):
                    best = (i, j, v)
        if best is None:
            break
        bi, bj, _ = best
        a[t], a[bi] = a[bi], a[t]
        for row in a:
            row[t], row[bj] = row[bj], row[t]

        # clear row t and column t; a failed exact division leaves a smaller
        # remainder behind, so re-run the sweep until both are clean
        while True:
            pivot = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    q = a[i][t] // pivot
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t] != 0:
                        a[t], a[i] = a[i], a[t]
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    q = a[t][j] // pivot
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                    if a[t][j] != 0:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
                        break
            if not dirty:
                break

        # pivot must divide the rest of the block for the divisibility
        # chain; if some entry resists, fold its row into row t and redo
        pivot = a[t][t]
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % pivot != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            a[t] = [x + y for x, y in zip(a[t], a[offender])]
            continue

        factors.append(abs(pivot))
        t += 1
        if t == rows or t == cols:
            break

    return factors, len(factors)


def snf_rank(m: IntMatrix | Sequence[Sequence[int]]) -> int:
    return smith_normal_form(m)[1]
