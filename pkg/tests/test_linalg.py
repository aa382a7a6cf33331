from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from projrig import linalg
from projrig.errors import ProjrigError


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.tuples(
                st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=m, max_size=m),
                st.just(n),
            )
        )
    )


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_matches_numpy_on_small_integers(mn):
    rows, n = mn
    assert linalg.rank(rows, n) == np.linalg.matrix_rank(np.array(rows, dtype=float))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_kernel_basis(mn):
    rows, n = mn
    ker = linalg.kernel(rows, n)
    assert len(ker) == n - linalg.rank(rows, n)
    for v in ker:
        assert not any(linalg.matvec(rows, v))
        first = next(x for x in v if x)
        assert first > 0
    if ker:
        assert linalg.rank(ker, n) == len(ker)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_cokernel_basis(mn):
    rows, n = mn
    cok = linalg.cokernel(rows, n)
    assert len(cok) == len(rows) - linalg.rank(rows, n)
    for w in cok:
        assert not any(linalg.vecmat(w, rows, n))


@settings(max_examples=100, deadline=None)
@given(matrices(), st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_solve_consistent_system(mn, xs):
    rows, n = mn
    x0 = xs[:n]
    b = linalg.matvec(rows, x0)
    x, bad = linalg.solve(rows, n, b)
    assert bad is None
    assert linalg.matvec(rows, x) == b


def test_solve_reports_inconsistent_row():
    rows = [[1, 0], [0, 1], [1, 1]]
    x, bad = linalg.solve(rows, 2, [1, 1, 3])
    assert x is None and bad in (0, 1, 2)
    x, bad = linalg.solve(rows, 2, [1, 1, 2])
    assert bad is None and x == [1, 1]


def test_rational_entries():
    rows = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]]
    assert linalg.rank(rows, 2) == 1
    assert linalg.kernel(rows, 2) == [[2, -3]]


@pytest.mark.parametrize("M,det", [
    ([[2]], 2),
    ([[1, 2], [3, 4]], -2),
    ([[0, 1], [1, 0]], -1),
    ([[2, 1, 0], [0, 1, 3], [1, 0, 1]], 5),
    ([[1, 2], [2, 4]], 0),
    ([[Fraction(1, 2), 0], [0, Fraction(2, 3)]], Fraction(1, 3)),
])
def test_determinant(M, det):
    assert linalg.determinant(M) == det


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_determinant_matches_numpy(M):
    assert abs(float(linalg.determinant(M)) - np.linalg.det(np.array(M, dtype=float))) < 1e-6


def test_echelon_is_deterministic():
    rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    a, b = linalg.echelon(rows, 3), linalg.echelon(rows, 3)
    assert (a.rows, a.pivots, a.origin) == (b.rows, b.pivots, b.origin)
    # rows are made primitive first, so rows 0 and 1 tie and the lower index wins
    assert a.origin[0] == 0
    assert linalg.echelon([[1, 1], [3, 1]], 2).origin[0] == 1


def test_numeric_rank_threshold():
    rows = [[1, 0], [0, 1e-20]]
    assert linalg.numeric_rank(rows, 2)[0] == 1
    assert linalg.numeric_rank(rows, 2, atol=1e-30)[0] == 2


def test_float_overflow_is_reported():
    with pytest.raises(ProjrigError):
        linalg.to_float_array([[10 ** 400]], 1)


def test_out_of_range_column():
    with pytest.raises(IndexError):
        linalg.rank([{5: 1}], 3)
