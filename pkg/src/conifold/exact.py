"""Exact integer linear algebra: fraction-free (Bareiss) elimination."""
from __future__ import annotations

from typing import Sequence


def _bareiss(rows: list[list[int]]) -> tuple[int, int]:
    """Run fraction-free elimination in place.

    Returns ``(rank, signed_last_pivot)``. For a square full-rank matrix the
    second value is the determinant.
    """
    if not rows:
        return 0, 1
    m, n = len(rows), len(rows[0])
    rank = 0
    prev = 1
    sign = 1
    for col in range(n):
        if rank == m:
            break
        pivot = next((r for r in range(rank, m) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        if pivot != rank:
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            sign = -sign
        p = rows[rank][col]
        for r in range(rank + 1, m):
            a = rows[r][col]
            row_r, row_p = rows[r], rows[rank]
            for c in range(col + 1, n):
                # exact division is guaranteed by Sylvester's identity
                row_r[c] = (p * row_r[c] - a * row_p[c]) // prev
            row_r[col] = 0
        prev = p
        rank += 1
    return rank, sign * prev


def integer_rank(matrix: Sequence[Sequence[int]]) -> int:
    rows = [list(map(int, r)) for r in matrix]
    return _bareiss(rows)[0]


def integer_determinant(matrix: Sequence[Sequence[int]]) -> int:
    rows = [list(map(int, r)) for r in matrix]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    rank, last = _bareiss(rows)
    return last if rank == n else 0


def affine_dimension(points: Sequence[Sequence[int]]) -> int:
    """Dimension of the affine hull of a finite set of integer points."""
    if not points:
        return -1
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    return integer_rank(diffs) if diffs else 0
