"""Exact linear algebra over the rationals, deterministic throughout.

Forward elimination runs fraction-free over the integers in the
selected kernel (compiled or pure-Python); rational back-substitution,
reduced echelon normalization and nullspace extraction happen here.
Rows may be given with int or Fraction entries; each row is scaled to
integers first, which changes neither rank, nullspace nor solvability.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from . import _kernels

KERNEL = _kernels.IMPLEMENTATION


def integerize_row(row: list) -> list[int]:
    """Scale one row by the lcm of its denominators to integer entries."""
    denoms = [v.denominator for v in row if isinstance(v, Fraction)]
    if not denoms:
        return [int(v) for v in row]
    m = lcm(*denoms)
    return [int(v * m) for v in row]


def row_echelon(rows: list[list], ncols: int) -> tuple[list[list[int]], list[int]]:
    return _kernels.row_echelon([integerize_row(r) for r in rows], ncols)


def rank(rows: list[list], ncols: int) -> int:
    return len(row_echelon(rows, ncols)[1])


def _back_substitute(
    ech: list[list[int]], pivots: list[int], v: list[Fraction], ncols: int
) -> None:
    """Fill pivot coordinates of v so every echelon row pairs to zero."""
    for i in reversed(range(len(pivots))):
        c = pivots[i]
        row = ech[i]
        s = sum(row[j] * v[j] for j in range(c + 1, ncols) if v[j])
        v[c] = Fraction(-s, row[c])


def nullspace(rows: list[list], ncols: int) -> list[list[Fraction]]:
    """Canonical rational nullspace basis (reduced row echelon rows)."""
    ech, pivots = row_echelon(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for fc in range(ncols):
        if fc in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        _back_substitute(ech, pivots, v, ncols)
        basis.append(v)
    return rref(basis, ncols)


def solve(rows: list[list], rhs: list, ncols: int) -> list[Fraction] | None:
    """One exact solution of rows * v = rhs (free coordinates 0), or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ech, pivots = row_echelon(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    v = [Fraction(0)] * (ncols + 1)
    v[ncols] = Fraction(-1)
    _back_substitute(ech, pivots, v, ncols + 1)
    return v[:ncols]


def rref(rows: list[list], ncols: int) -> list[list[Fraction]]:
    """Reduced row echelon form over the rationals; zero rows dropped."""
    mat = [[Fraction(v) for v in r] for r in rows]
    piv = 0
    pivots = []
    for col in range(ncols):
        sel = next((i for i in range(piv, len(mat)) if mat[i][col]), None)
        if sel is None:
            continue
        mat[piv], mat[sel] = mat[sel], mat[piv]
        prow = mat[piv]
        inv = 1 / prow[col]
        mat[piv] = prow = [v * inv for v in prow]
        for i in range(len(mat)):
            if i != piv and mat[i][col]:
                c = mat[i][col]
                mat[i] = [a - c * b for a, b in zip(mat[i], prow)]
        pivots.append(col)
        piv += 1
    return mat[:piv]


def primitive(vec: list[Fraction]) -> list[int]:
    """Integer vector proportional to vec with content 1, first entry > 0."""
    m = lcm(*(v.denominator for v in vec)) if vec else 1
    ints = [int(v * m) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g:
        ints = [v // g for v in ints]
        lead = next(v for v in ints if v)
        if lead < 0:
            ints = [-v for v in ints]
    return ints
