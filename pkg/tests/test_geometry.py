from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from projrig.errors import (
    ChartError,
    DegenerateJoinError,
    IncidenceError,
    KindMismatchError,
    StructureError,
)
from projrig.geometry import (
    Configuration,
    HomogeneousTriple,
    IncidenceStructure,
    apply_transform,
    canonical_coords,
    conic_determinant,
    conic_through,
    det3,
    dualize,
    format_rational,
    incident,
    inverse_transpose3,
    join,
    line,
    meet,
    normalize_to_chart,
    parse_rational,
    point,
    random_transform,
    residual,
    to_rational,
)

small = st.fractions(min_value=-20, max_value=20, max_denominator=9)


@pytest.mark.parametrize("text,value", [("3", 3), ("-3", -3), ("2/6", Fraction(1, 3)), ("-7/2", Fraction(-7, 2)), (" 0 ", 0)])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["", "1/0", "1/-2", "a", "1.5", "1/2/3", "3/+4"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


@given(small)
def test_format_parse_round_trip(q):
    assert parse_rational(format_rational(q)) == q


def test_floats_are_not_coordinates():
    with pytest.raises(TypeError):
        to_rational(0.5)
    with pytest.raises(TypeError):
        point(1.0, 2)


def test_zero_triple_rejected():
    with pytest.raises(ValueError):
        point(0, 0, 0)


def test_projective_equality_and_hash():
    p, q = point(1, 2, 3), point(-2, -4, -6)
    assert p == q and hash(p) == hash(q)
    assert not p.identical(q)
    assert point(1, 2) != line(1, 2)
    assert canonical_coords((Fraction(-1, 2), 1, 0)) == (1, -2, 0)


def test_triple_is_immutable():
    with pytest.raises(AttributeError):
        point(1, 2).x = 5


def test_join_meet_incidence():
    p, q = point(0, 0), point(1, 1)
    l = join(p, q)
    assert incident(p, l) and incident(q, l)
    m = line(1, 0, -1)  # x = 1
    assert meet(l, m) == point(1, 1)


def test_join_errors():
    with pytest.raises(DegenerateJoinError):
        join(point(1, 2), point(2, 4, 2))
    with pytest.raises(KindMismatchError):
        join(point(1, 2), line(1, 2))
    with pytest.raises(KindMismatchError):
        meet(point(1, 2), point(3, 4))


def test_parallel_lines_meet_at_infinity():
    x = meet(line(0, 1, -1), line(0, 1, -2))
    assert x.z == 0 and not x.chart_ok
    with pytest.raises(ZeroDivisionError):
        x.affine()


def test_structure_validation():
    with pytest.raises(StructureError):
        IncidenceStructure(("p", "p"), ("l",), ())
    with pytest.raises(StructureError):
        IncidenceStructure(("p",), ("l",), (("p", "m"),))
    with pytest.raises(StructureError):
        IncidenceStructure(("p",), ("l",), (("p", "l"), ("p", "l")))


def test_configuration_checks_incidence_exactly():
    with pytest.raises(IncidenceError) as exc:
        Configuration.build({"p": point(1, 1)}, {"l": line(1, 1, Fraction(-13, 7))}, [("p", "l")])
    assert exc.value.residual == Fraction(1, 7)
    assert "1/7" in str(exc.value)


def test_chart_blockers():
    cfg = Configuration.build({"p": point(1, 0, 0), "q": point(1, 1)}, {"l": line(1, -1, 0)}, [("q", "l")])
    assert cfg.chart_blockers() == ["p", "l"]
    assert not cfg.chart_valid


def test_dualize_is_involution():
    cfg = Configuration.build({"p": point(1, 2), "q": point(3, 5)},
                              {"l": join(point(1, 2), point(3, 5))}, [("p", "l"), ("q", "l")])
    d = dualize(cfg)
    assert set(d.points) == {"l"} and set(d.lines) == {"p", "q"}
    assert dualize(d).identical(cfg)


def test_inverse_transpose():
    A = [[2, 1, 0], [0, 1, 3], [1, 0, 1]]
    B = inverse_transpose3(A)
    # A^T B = I, i.e. (A x) . (B y) = x . y
    for i in range(3):
        for j in range(3):
            assert sum(Fraction(A[k][i]) * B[k][j] for k in range(3)) == (1 if i == j else 0)
    assert det3(A) == 5


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), small, small, small, small)
def test_transform_preserves_incidence(seed, x1, y1, x2, y2):
    p, q = point(x1, y1), point(x2, y2)
    if p == q:
        return
    l = join(p, q)
    cfg = Configuration.build({"p": p, "q": q}, {"l": l}, [("p", "l"), ("q", "l")])
    T = apply_transform(cfg, random_transform(random.Random(seed)))
    assert incident(T.point_coords["p"], T.line_coords["l"])


def test_normalize_to_chart_is_deterministic():
    cfg = Configuration.build({"p": point(1, 0, 0), "q": point(0, 0)}, {"l": line(0, 1, 0)},
                              [("p", "l"), ("q", "l")])
    a, b = normalize_to_chart(cfg, seed=4), normalize_to_chart(cfg, seed=4)
    assert a.chart_valid and a.identical(b)
    ok = Configuration.build({"p": point(1, 1)}, {}, [])
    assert normalize_to_chart(ok) is ok


def test_conic_through_and_determinant():
    hyperbola = [point(u, Fraction(1, u)) for u in (1, 2, 3, 5, Fraction(1, 2), -1)]
    conic = conic_through(hyperbola[:5])
    A, B, Cc, D, E, F = conic
    assert A == Cc == D == E == 0 and B == -F
    assert conic_determinant(hyperbola) == 0
    assert conic_determinant(hyperbola[:5] + [point(7, 7)]) != 0
    # three collinear points do not pin down a unique conic with two others
    assert conic_through([point(0, 0), point(1, 0), point(2, 0), point(3, 0), point(0, 1)]) is None


def test_residual_sign():
    assert residual(point(1, 1), line(1, 1, 1)) == 3
    assert isinstance(HomogeneousTriple(1, 2, 3).canonical().x, Fraction)


def test_chart_error_type():
    assert issubclass(ChartError, ValueError)
