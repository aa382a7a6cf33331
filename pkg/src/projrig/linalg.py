"""Exact and floating-point rank machinery.

Exact routines work on integer rows: each input row is scaled by the lcm of
its denominators, then eliminated fraction-free (``row <- p*row - f*pivot``
followed by division by the row content).  Rows are kept as ``{col: int}``
dicts so structural zeros are never touched.

Pivot choice: largest absolute entry in the current column (rows are already
primitive at that point), ties broken by the lowest original row index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ProjrigError

SparseRow = Dict[int, int]


def _to_sparse(row, ncols: int) -> SparseRow:
    items = row.items() if isinstance(row, dict) else enumerate(row)
    fr = {j: Fraction(v) for j, v in items if v}
    if any(j < 0 or j >= ncols for j in fr):
        raise IndexError("row entry outside the declared column range")
    if not fr:
        return {}
    den = lcm(*(v.denominator for v in fr.values()))
    return _primitive({j: int(v * den) for j, v in fr.items()})


def _primitive(row: SparseRow) -> SparseRow:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {j: v // g for j, v in row.items()}
    return row


@dataclass
class Echelon:
    """Row echelon form of an integer-scaled matrix.

    ``rows[i]`` has its pivot at ``pivots[i]`` and zeros in every earlier
    pivot column.  ``origin[i]`` is the input row it descends from.
    ``zero_rows`` lists input rows reduced to zero, with any residue they
    kept in the augmented column (``extra``) when a right-hand side is used.
    """

    rows: List[SparseRow]
    pivots: List[int]
    origin: List[int]
    ncols: int
    zero_rows: List[Tuple[int, SparseRow]]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def free_columns(self) -> List[int]:
        piv = set(self.pivots)
        return [c for c in range(self.ncols) if c not in piv]


def echelon(rows: Sequence, ncols: int, rhs: Optional[Sequence] = None) -> Echelon:
    """Fraction-free elimination; ``rhs`` is carried as column ``ncols``."""
    width = ncols + (1 if rhs is not None else 0)
    work: List[Tuple[int, SparseRow]] = []
    for i, r in enumerate(rows):
        if rhs is not None:
            r = dict(r.items() if isinstance(r, dict) else enumerate(r))
            if rhs[i]:
                r[ncols] = rhs[i]
        work.append((i, _to_sparse(r, width)))

    out_rows, pivots, origin = [], [], []
    for c in range(ncols):
        cand = [k for k, (_, r) in enumerate(work) if c in r]
        if not cand:
            continue
        best = max(cand, key=lambda k: (abs(work[k][1][c]), -work[k][0]))
        pidx, prow = work[best]
        p = prow[c]
        rest = []
        for k, (idx, r) in enumerate(work):
            if k == best:
                continue
            f = r.get(c)
            if f:
                g = gcd(p, f)
                a, b = p // g, f // g
                new = {j: a * v for j, v in r.items()}
                for j, v in prow.items():
                    nv = new.get(j, 0) - b * v
                    if nv:
                        new[j] = nv
                    else:
                        new.pop(j, None)
                r = _primitive(new)
            rest.append((idx, r))
        work = rest
        out_rows.append(prow)
        pivots.append(c)
        origin.append(pidx)
    return Echelon(out_rows, pivots, origin, ncols, work)


def rank(rows: Sequence, ncols: int) -> int:
    return echelon(rows, ncols).rank


def _canonical_int_vector(vec: Sequence[Fraction]) -> List[int]:
    den = lcm(*(Fraction(v).denominator for v in vec)) if vec else 1
    ints = [int(Fraction(v) * den) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    for v in ints:
        if v:
            if v < 0:
                ints = [-e for e in ints]
            break
    return ints


def _back_substitute(ech: Echelon, fixed: Dict[int, Fraction], rhs_col: Optional[int] = None) -> List[Fraction]:
    x: Dict[int, Fraction] = {k: Fraction(v) for k, v in fixed.items()}
    for row, pc in zip(reversed(ech.rows), reversed(ech.pivots)):
        s = Fraction(0)
        for j, v in row.items():
            if j == pc:
                continue
            if j == rhs_col:
                s -= v
            elif j in x:
                s += v * x[j]
        x[pc] = -s / row[pc]
    return [x.get(j, Fraction(0)) for j in range(ech.ncols)]


def kernel_from_echelon(ech: Echelon) -> List[List[int]]:
    """One basis vector per free column, in column order, each made primitive
    with its first nonzero entry positive."""
    basis = []
    for f in ech.free_columns():
        vec = _back_substitute(ech, {f: Fraction(1)})
        basis.append(_canonical_int_vector(vec))
    return basis


def kernel(rows: Sequence, ncols: int) -> List[List[int]]:
    return kernel_from_echelon(echelon(rows, ncols))


def transpose(rows: Sequence, ncols: int) -> List[List[Fraction]]:
    dense = [list(r) for r in rows]
    return [[dense[i][j] for i in range(len(dense))] for j in range(ncols)]


def cokernel(rows: Sequence, ncols: int) -> List[List[int]]:
    """Basis of row dependencies: vectors w with w^T M = 0."""
    if not rows:
        return []
    return kernel(transpose(rows, ncols), len(rows))


def solve(rows: Sequence, ncols: int, rhs: Sequence) -> Tuple[Optional[List[Fraction]], Optional[int]]:
    """Exact solution of ``M x = rhs``.

    Returns ``(x, None)`` with free variables set to zero when the system is
    consistent, otherwise ``(None, i)`` where ``i`` is the input row whose
    reduction left a nonzero right-hand side.
    """
    ech = echelon(rows, ncols, rhs=rhs)
    for idx, r in ech.zero_rows:
        if r.get(ncols):
            return None, idx
    return _back_substitute(ech, {}, rhs_col=ncols), None


def determinant(square: Sequence[Sequence]) -> Fraction:
    """Bareiss determinant of a small dense rational matrix."""
    n = len(square)
    if any(len(r) != n for r in square):
        raise ValueError("matrix is not square")
    if n == 0:
        return Fraction(1)
    den = lcm(*(Fraction(v).denominator for r in square for v in r))
    M = [[int(Fraction(v) * den) for v in r] for r in square]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return Fraction(0)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return Fraction(sign * M[n - 1][n - 1], den ** n)


def matvec(rows: Sequence, vec: Sequence) -> List[Fraction]:
    return [sum((Fraction(a) * b for a, b in zip(r, vec) if a), Fraction(0)) for r in rows]


def vecmat(vec: Sequence, rows: Sequence, ncols: int) -> List[Fraction]:
    out = [Fraction(0)] * ncols
    for w, r in zip(vec, rows):
        if w:
            for j, a in enumerate(r):
                if a:
                    out[j] += w * a
    return out


def to_float_array(rows: Sequence, ncols: int) -> np.ndarray:
    try:
        arr = np.array([[float(v) for v in r] for r in rows], dtype=float).reshape(len(rows), ncols)
    except OverflowError as exc:
        raise ProjrigError(f"matrix entry too large for double precision: {exc}") from None
    if not np.all(np.isfinite(arr)):
        raise ProjrigError("matrix entry too large for double precision")
    return arr


def numeric_rank(rows: Sequence, ncols: int, atol: Optional[float] = None) -> Tuple[int, List[float]]:
    """SVD rank.  Default threshold: max(m, n) * eps * largest singular value."""
    A = to_float_array(rows, ncols)
    if A.size == 0:
        return 0, []
    s = np.linalg.svd(A, compute_uv=False)
    if atol is None:
        atol = max(A.shape) * np.finfo(float).eps * (s[0] if s.size else 0.0)
    return int(np.sum(s > atol)), [float(v) for v in s]
