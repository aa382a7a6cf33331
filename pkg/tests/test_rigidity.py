from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from projrig import constructions as C, linalg
from projrig.errors import ChartError, StructureError
from projrig.geometry import Configuration, join, line, normalize_to_chart, point
from projrig.rigidity import (
    TRIVIAL_MOTION_NAMES,
    FlexVector,
    PinningSystem,
    StressVector,
    assemble,
    exact_rank,
    exact_rank_kernel_cokernel,
    is_flex,
    is_infinitesimally_rigid,
    is_self_stress,
    numeric_rank,
    pinned_nullity,
    trivial_motion_basis,
    trivial_span_dimension,
)


def two_points_one_line():
    p, q = point(1, 2), point(3, -1)
    return Configuration.build({"p": p, "q": q}, {"l": join(p, q)}, [("p", "l"), ("q", "l")])


def test_row_layout():
    cfg = two_points_one_line()
    M = assemble(cfg)
    assert M.shape == (2, 6)
    a, b = cfg.line_coords["l"].affine()
    # row (p, l): (a, b) under p's columns, (x_p, y_p) under l's
    assert M.rows[0] == [a, b, 0, 0, 1, 2]
    assert M.column_labels() == ["p.dx", "p.dy", "q.dx", "q.dy", "l.da", "l.db"]
    assert M.row_labels[0] == ("incidence", "p", "l")


def test_pin_rows_follow_incidences():
    cfg = two_points_one_line()
    M = assemble(cfg, PinningSystem({"q"}, {"l"}))
    assert [lab for lab in M.row_labels[2:]] == [("pin", "q", "x"), ("pin", "q", "y"), ("pin", "l", "a"), ("pin", "l", "b")]
    assert M.rows[2] == [0, 0, 1, 0, 0, 0]


def test_unknown_pin_rejected():
    with pytest.raises(StructureError):
        assemble(two_points_one_line(), PinningSystem({"zz"}))


def test_chart_error_names_entity():
    cfg = C.complete_quadrangle()
    with pytest.raises(ChartError) as exc:
        assemble(cfg)
    assert exc.value.entity in cfg.lines
    assert "normalize_to_chart" in str(exc.value)


def test_csv_export():
    text = assemble(two_points_one_line()).to_csv()
    head, first = text.splitlines()[:2]
    assert head == "row,p.dx,p.dy,q.dx,q.dy,l.da,l.db"
    assert first.startswith("p|l,")


def test_flex_and_stress_round_trip():
    M = assemble(C.pappus())
    res = exact_rank_kernel_cokernel(M)
    for v in res.kernel:
        assert M.to_vector(v) == [Fraction(x) for x in M.to_vector(M.to_flex(M.to_vector(v)))]
        assert not any(M.apply(v))
    w = res.cokernel[0]
    assert M.to_stress(M.stress_to_vector(w)).coefficients == w.coefficients
    assert not any(M.left_apply(w))


def test_trivial_motion_names():
    assert len(TRIVIAL_MOTION_NAMES) == 8


def test_printed_rotation_sign_fails():
    # line part (+1, 0) for the x rotation at infinity gives 2x on every row
    cfg = C.pappus()
    M = assemble(cfg)
    v = FlexVector({p: (-x * x, -x * y) for p, (x, y) in ((p, cfg.point_coords[p].affine()) for p in cfg.points)},
                   {l: (Fraction(1), Fraction(0)) for l in cfg.lines})
    residuals = M.apply(v)
    for (_, p, _l), r in zip(M.row_labels, residuals):
        assert r == 2 * cfg.point_coords[p].affine()[0]
    assert is_flex(cfg, trivial_motion_basis(cfg)[6])


coord = st.fractions(min_value=-9, max_value=9, max_denominator=5)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_trivial_motions_are_flexes(seed):
    cfg = C.random_configuration(seed, 6, 6, 12)
    M = assemble(cfg)
    for v in trivial_motion_basis(cfg):
        assert not any(M.apply(v))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(coord, coord), min_size=4, max_size=4, unique=True))
def test_trivial_span_is_eight_for_general_quadruple(xy):
    pts = {f"p{i}": point(x, y) for i, (x, y) in enumerate(xy)}
    cfg = Configuration.build(pts, {}, [])
    det_ok = all(
        linalg.determinant([list(pts[a].coords), list(pts[b].coords), list(pts[c].coords)]) != 0
        for a, b, c in [("p0", "p1", "p2"), ("p0", "p1", "p3"), ("p0", "p2", "p3"), ("p1", "p2", "p3")]
    )
    if det_ok:
        assert trivial_span_dimension(cfg) == 8


def test_collinear_points_lose_trivial_independence():
    cfg = Configuration.build({f"p{i}": point(i, 2 * i + 1) for i in range(5)}, {}, [])
    assert trivial_span_dimension(cfg) < 8


@pytest.mark.parametrize("factory", [C.complete_quadrangle, C.complete_quadrilateral])
def test_isostatic_basics(factory):
    cfg = normalize_to_chart(factory())
    assert is_infinitesimally_rigid(cfg)
    M = assemble(cfg)
    assert exact_rank(M) == numeric_rank(M)[0] == 12


def test_pinned_frame():
    cfg = normalize_to_chart(C.complete_quadrangle())
    pins = PinningSystem(set(cfg.points))
    assert pinned_nullity(cfg, pins) == 0
    assert is_infinitesimally_rigid(cfg, pins)
    assert pinned_nullity(cfg, PinningSystem(set(list(cfg.points)[:3]))) == 2


def test_self_stress_predicate():
    cfg = C.pappus()
    w = exact_rank_kernel_cokernel(assemble(cfg)).cokernel[0]
    assert is_self_stress(cfg, w)
    assert not is_self_stress(cfg, StressVector({cfg.incidences[0]: Fraction(1)}))


def test_line_at_infinity_is_not_chart_valid():
    cfg = Configuration.build({"p": point(1, 1)}, {"m": line(0, 0, 1), "n": line(1, -1, 0)}, [("p", "n")])
    assert cfg.chart_blockers() == ["n"]
