"""Projective rigidity matrix, trivial motions and pinning.

The row of incidence ``(p, l)`` is the linearisation of ``a*x + b*y + 1 = 0``
in the affine chart: ``(x_p, y_p)`` under the columns of ``l`` and
``(a_l, b_l)`` under the columns of ``p``.  Columns list every point
(declared order) and then every line.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .errors import ChartError, StructureError
from .geometry import Configuration, format_rational

Pair = Tuple[Fraction, Fraction]

TRIVIAL_MOTION_NAMES = (
    "x-dilation",
    "y-dilation",
    "y-shear-of-points",
    "x-shear-of-points",
    "x-translation",
    "y-translation",
    "rotation-at-infinity-x",
    "rotation-at-infinity-y",
)


@dataclass(frozen=True)
class PinningSystem:
    points: FrozenSet[str] = frozenset()
    lines: FrozenSet[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "points", frozenset(self.points))
        object.__setattr__(self, "lines", frozenset(self.lines))

    def __bool__(self) -> bool:
        return bool(self.points or self.lines)


NO_PINS = PinningSystem()


@dataclass
class FlexVector:
    """Velocities ``(dx, dy)`` per point and ``(da, db)`` per line."""

    point_velocity: Dict[str, Pair]
    line_velocity: Dict[str, Pair]

    def is_zero(self) -> bool:
        return not any(any(v) for v in self.point_velocity.values()) and not any(
            any(v) for v in self.line_velocity.values()
        )

    def scaled(self, k) -> "FlexVector":
        k = Fraction(k)
        return FlexVector(
            {p: (k * v[0], k * v[1]) for p, v in self.point_velocity.items()},
            {l: (k * v[0], k * v[1]) for l, v in self.line_velocity.items()},
        )


@dataclass
class StressVector:
    """Coefficient per declared incidence; absent pairs are zero.

    ``pins`` carries coefficients on pin rows when the vector came from a
    pinned matrix.
    """

    coefficients: Dict[Tuple[str, str], Fraction]
    pins: Dict[Tuple[str, str], Fraction] = field(default_factory=dict)

    def __getitem__(self, pair) -> Fraction:
        return self.coefficients.get(tuple(pair), Fraction(0))

    def scaled(self, k) -> "StressVector":
        k = Fraction(k)
        return StressVector({i: k * w for i, w in self.coefficients.items()},
                            {i: k * w for i, w in self.pins.items()})

    def is_zero(self) -> bool:
        return not any(self.coefficients.values()) and not any(self.pins.values())


@dataclass
class RigidityMatrix:
    """Dense exact matrix plus the labels needed to read it.

    ``row_labels`` entries are ``("incidence", p, l)`` or
    ``("pin", id, coordinate)`` with coordinate in ``x, y, a, b``.
    """

    rows: List[List[Fraction]]
    row_labels: List[Tuple[str, str, str]]
    point_columns: Dict[str, Tuple[int, int]]
    line_columns: Dict[str, Tuple[int, int]]
    ncols: int

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.rows), self.ncols)

    @property
    def incidence_rows(self) -> List[int]:
        return [i for i, lab in enumerate(self.row_labels) if lab[0] == "incidence"]

    def column_labels(self) -> List[str]:
        labels = [""] * self.ncols
        for p, (cx, cy) in self.point_columns.items():
            labels[cx], labels[cy] = f"{p}.dx", f"{p}.dy"
        for l, (ca, cb) in self.line_columns.items():
            labels[ca], labels[cb] = f"{l}.da", f"{l}.db"
        return labels

    def to_vector(self, flex: FlexVector) -> List[Fraction]:
        vec = [Fraction(0)] * self.ncols
        for p, (cx, cy) in self.point_columns.items():
            vec[cx], vec[cy] = (Fraction(v) for v in flex.point_velocity.get(p, (0, 0)))
        for l, (ca, cb) in self.line_columns.items():
            vec[ca], vec[cb] = (Fraction(v) for v in flex.line_velocity.get(l, (0, 0)))
        return vec

    def to_flex(self, vec: Sequence) -> FlexVector:
        return FlexVector(
            {p: (Fraction(vec[cx]), Fraction(vec[cy])) for p, (cx, cy) in self.point_columns.items()},
            {l: (Fraction(vec[ca]), Fraction(vec[cb])) for l, (ca, cb) in self.line_columns.items()},
        )

    def to_stress(self, vec: Sequence) -> StressVector:
        inc, pins = {}, {}
        for lab, w in zip(self.row_labels, vec):
            if lab[0] == "incidence":
                inc[(lab[1], lab[2])] = Fraction(w)
            else:
                pins[(lab[1], lab[2])] = Fraction(w)
        return StressVector(inc, pins)

    def stress_to_vector(self, stress: StressVector) -> List[Fraction]:
        out = []
        for lab in self.row_labels:
            if lab[0] == "incidence":
                out.append(stress[(lab[1], lab[2])])
            else:
                out.append(stress.pins.get((lab[1], lab[2]), Fraction(0)))
        return out

    def apply(self, flex: FlexVector) -> List[Fraction]:
        return linalg.matvec(self.rows, self.to_vector(flex))

    def left_apply(self, stress: StressVector) -> List[Fraction]:
        return linalg.vecmat(self.stress_to_vector(stress), self.rows, self.ncols)

    def to_csv(self) -> str:
        """Exact CSV: header of column labels, one labelled row per matrix row."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["row"] + self.column_labels())
        for lab, row in zip(self.row_labels, self.rows):
            name = f"{lab[1]}|{lab[2]}" if lab[0] == "incidence" else f"pin:{lab[1]}.{lab[2]}"
            w.writerow([name] + [format_rational(v) for v in row])
        return buf.getvalue()


def normalized_point(config: Configuration, p: str) -> Pair:
    return config.point_coords[p].affine()


def normalized_line(config: Configuration, l: str) -> Pair:
    return config.line_coords[l].affine()


def require_chart(config: Configuration) -> None:
    bad = config.chart_blockers()
    if bad:
        ent = bad[0]
        what = "point at infinity" if ent in config.point_coords else "line through the origin"
        raise ChartError(
            f"configuration is not chart-valid: {ent!r} is a {what} (try normalize_to_chart)",
            entity=ent,
        )


def column_layout(config: Configuration):
    pcols = {p: (2 * i, 2 * i + 1) for i, p in enumerate(config.points)}
    base = 2 * len(config.points)
    lcols = {l: (base + 2 * i, base + 2 * i + 1) for i, l in enumerate(config.lines)}
    return pcols, lcols, base + 2 * len(config.lines)


def assemble(config: Configuration, pins: Optional[PinningSystem] = None) -> RigidityMatrix:
    require_chart(config)
    pins = pins or NO_PINS
    unknown = (set(pins.points) - set(config.points)) | (set(pins.lines) - set(config.lines))
    if unknown:
        raise StructureError(f"pinned ids not in configuration: {sorted(unknown)}")
    pcols, lcols, n = column_layout(config)
    pn = {p: normalized_point(config, p) for p in config.points}
    ln = {l: normalized_line(config, l) for l in config.lines}

    rows, labels = [], []
    for p, l in config.incidences:
        row = [Fraction(0)] * n
        (x, y), (a, b) = pn[p], ln[l]
        ca, cb = lcols[l]
        cx, cy = pcols[p]
        row[ca], row[cb] = x, y
        row[cx], row[cy] = a, b
        rows.append(row)
        labels.append(("incidence", p, l))
    for p in config.points:
        if p in pins.points:
            for coord, col in zip("xy", pcols[p]):
                row = [Fraction(0)] * n
                row[col] = Fraction(1)
                rows.append(row)
                labels.append(("pin", p, coord))
    for l in config.lines:
        if l in pins.lines:
            for coord, col in zip("ab", lcols[l]):
                row = [Fraction(0)] * n
                row[col] = Fraction(1)
                rows.append(row)
                labels.append(("pin", l, coord))
    return RigidityMatrix(rows, labels, pcols, lcols, n)


def trivial_motion_basis(config: Configuration) -> List[FlexVector]:
    """The eight infinitesimal projective motions, in TRIVIAL_MOTION_NAMES order.

    Rotations at infinity use line part (-1, 0) / (0, -1): that is the
    derivative of the inverse-transpose action and the sign that makes the
    vectors satisfy every incidence row.
    """
    require_chart(config)
    pn = {p: normalized_point(config, p) for p in config.points}
    ln = {l: normalized_line(config, l) for l in config.lines}
    zero, one = Fraction(0), Fraction(1)

    def motion(pf, lf):
        return FlexVector({p: pf(*xy) for p, xy in pn.items()}, {l: lf(*ab) for l, ab in ln.items()})

    return [
        motion(lambda x, y: (x, zero), lambda a, b: (-a, zero)),
        motion(lambda x, y: (zero, y), lambda a, b: (zero, -b)),
        motion(lambda x, y: (zero, x), lambda a, b: (-b, zero)),
        motion(lambda x, y: (y, zero), lambda a, b: (zero, -a)),
        motion(lambda x, y: (one, zero), lambda a, b: (a * a, a * b)),
        motion(lambda x, y: (zero, one), lambda a, b: (a * b, b * b)),
        motion(lambda x, y: (-x * x, -x * y), lambda a, b: (-one, zero)),
        motion(lambda x, y: (-x * y, -y * y), lambda a, b: (zero, -one)),
    ]


def trivial_span_dimension(config: Configuration) -> int:
    M = assemble(config)
    vecs = [M.to_vector(v) for v in trivial_motion_basis(config)]
    return linalg.rank(vecs, M.ncols)


@dataclass
class RankResult:
    rank: int
    kernel: List[FlexVector]
    cokernel: List[StressVector]

    @property
    def nullity(self) -> int:
        return len(self.kernel)

    @property
    def cokernel_dim(self) -> int:
        return len(self.cokernel)


def exact_rank_kernel_cokernel(M: RigidityMatrix) -> RankResult:
    ech = linalg.echelon(M.rows, M.ncols)
    ker = linalg.kernel_from_echelon(ech)
    coker = linalg.cokernel(M.rows, M.ncols)
    return RankResult(ech.rank, [M.to_flex(v) for v in ker], [M.to_stress(w) for w in coker])


def exact_rank(M: RigidityMatrix) -> int:
    return linalg.rank(M.rows, M.ncols)


def numeric_rank(M: RigidityMatrix, atol: Optional[float] = None) -> Tuple[int, List[float]]:
    return linalg.numeric_rank(M.rows, M.ncols, atol=atol)


def is_infinitesimally_rigid(config: Configuration, pins: Optional[PinningSystem] = None) -> bool:
    """Unpinned: nullity 8 with independent trivial motions.  Pinned: nullity 0."""
    M = assemble(config, pins)
    nullity = M.ncols - exact_rank(M)
    if pins:
        return nullity == 0
    return nullity == 8 and trivial_span_dimension(config) == 8


def pinned_nullity(config: Configuration, pins: PinningSystem) -> int:
    M = assemble(config, pins)
    return M.ncols - exact_rank(M)


def is_self_stress(config: Configuration, stress: StressVector) -> bool:
    M = assemble(config)
    return not any(M.left_apply(stress))


def is_flex(config: Configuration, flex: FlexVector, pins: Optional[PinningSystem] = None) -> bool:
    M = assemble(config, pins)
    return not any(M.apply(flex))
