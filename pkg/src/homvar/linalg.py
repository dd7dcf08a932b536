"""Exact sparse linear algebra over any Python field type.

Rows are dicts ``column -> value``. Works with ``Fraction`` and with
``CplxRat``; nothing here ever touches a float.
"""
from __future__ import annotations

from typing import Hashable, Iterable, Sequence


class Echelon:
    """Incrementally maintained reduced row echelon form.

    Pivot rows are kept fully reduced against each other, so inserting a
    row costs one pass over the pivots plus one back-substitution sweep.
    Column keys must be mutually comparable (pivots are chosen as the
    smallest surviving key, which makes the final basis canonical).
    """

    def __init__(self) -> None:
        self.pivots: dict[Hashable, dict] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        row = {c: v for c, v in row.items() if v != 0}
        for c in [c for c in row if c in self.pivots]:
            f = row.get(c)
            if not f:
                continue
            for cc, vv in self.pivots[c].items():
                nv = row.get(cc, 0) - f * vv
                if nv == 0:
                    row.pop(cc, None)
                else:
                    row[cc] = nv
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; return True if it increased the rank."""
        row = self.reduce(row)
        if not row:
            return False
        p = min(row)
        inv = 1 / row[p] if not isinstance(row[p], int) else _frac_inv(row[p])
        row = {c: v * inv for c, v in row.items()}
        for q, prow in self.pivots.items():
            f = prow.get(p)
            if f:
                for cc, vv in row.items():
                    nv = prow.get(cc, 0) - f * vv
                    if nv == 0:
                        prow.pop(cc, None)
                    else:
                        prow[cc] = nv
        self.pivots[p] = row
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def rows(self) -> list[dict]:
        return [self.pivots[p] for p in sorted(self.pivots)]


def _frac_inv(n: int):
    from fractions import Fraction
    return Fraction(1, n)


def rref(rows: Iterable[dict]) -> list[dict]:
    e = Echelon()
    for r in rows:
        e.add(r)
    return e.rows()


def rank(rows: Iterable[dict]) -> int:
    e = Echelon()
    for r in rows:
        e.add(r)
    return len(e)


def nullspace(rows: Iterable[dict], columns: Sequence[Hashable]) -> list[dict]:
    """Basis of {x : row . x = 0 for every row}, one vector per free column."""
    e = Echelon()
    for r in rows:
        e.add(r)
    basis = []
    for f in columns:
        if f in e.pivots:
            continue
        vec = {f: 1}
        for p, prow in e.pivots.items():
            v = prow.get(f)
            if v:
                vec[p] = -v
        basis.append(vec)
    return basis


def dense_rows(matrix: Sequence[Sequence]) -> list[dict]:
    return [{j: v for j, v in enumerate(r) if v != 0} for r in matrix]


def matrix_rank(matrix: Sequence[Sequence]) -> int:
    return rank(dense_rows(matrix))


def kernel(matrix: Sequence[Sequence], ncols: int) -> list[list]:
    """Kernel basis of a dense matrix as dense column vectors."""
    basis = nullspace(dense_rows(matrix), range(ncols))
    return [[v.get(j, 0) for j in range(ncols)] for v in basis]


def span_equal(a: Iterable[dict], b: Iterable[dict]) -> bool:
    ra, rb = rref(a), rref(b)
    norm = lambda rows: [sorted(r.items()) for r in rows]
    return norm(ra) == norm(rb)


def span_contains(big: Iterable[dict], small: Iterable[dict]) -> bool:
    e = Echelon()
    for r in big:
        e.add(r)
    return all(e.contains(r) for r in small)
