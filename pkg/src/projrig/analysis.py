"""Classification built on the rigidity matrix.

Counting, independence of added incidences, the three-fold balance of
self-stresses, the second-order extension test and comparison of pinned
realizations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from . import linalg
from .errors import IncidenceError, NotInKernelError, PreconditionError
from .geometry import Configuration, HomogeneousTriple, _cross, format_rational, incident, residual
from .rigidity import (
    FlexVector,
    PinningSystem,
    RigidityMatrix,
    StressVector,
    assemble,
    exact_rank,
    numeric_rank,
    trivial_motion_basis,
)

EXACT = "exact"
NUMERIC = "numeric"
COUNTING = "counting"


@dataclass
class AnalysisReport:
    n_points: int
    n_lines: int
    n_incidences: int
    dof_budget: int
    rank: Optional[int]
    nullity: Optional[int]
    trivial_dim: Optional[int]
    nontrivial_flex_dim: Optional[int]
    stress_dim: Optional[int]
    independence: str
    rigidity: str
    arithmetic_mode: str
    pinned_nullity: Optional[int] = None

    @property
    def independent(self) -> bool:
        return self.independence == "independent"

    @property
    def isostatic(self) -> bool:
        return self.rigidity == "isostatic"

    def to_dict(self) -> Dict[str, object]:
        return {
            "counts": {"points": self.n_points, "lines": self.n_lines, "incidences": self.n_incidences},
            "dofBudget": self.dof_budget,
            "rank": self.rank,
            "nullity": self.nullity,
            "trivialDim": self.trivial_dim,
            "nontrivialFlexDim": self.nontrivial_flex_dim,
            "stressDim": self.stress_dim,
            "pinnedNullity": self.pinned_nullity,
            "labels": {"independence": self.independence, "rigidity": self.rigidity},
            "arithmeticMode": self.arithmetic_mode,
        }


def dof_budget(n_points: int, n_lines: int) -> int:
    return 2 * n_points + 2 * n_lines - 8


def count_check(n_points: int, n_lines: int, n_incidences: int) -> AnalysisReport:
    """Coordinate-free verdict: more incidences than the budget forces dependence."""
    budget = dof_budget(n_points, n_lines)
    return AnalysisReport(
        n_points, n_lines, n_incidences, budget,
        rank=None, nullity=None, trivial_dim=None, nontrivial_flex_dim=None, stress_dim=None,
        independence="dependent" if n_incidences > budget else "undetermined",
        rigidity="undetermined",
        arithmetic_mode=COUNTING,
    )


def _rank(M: RigidityMatrix, mode: str) -> int:
    if mode == NUMERIC:
        return numeric_rank(M)[0]
    return exact_rank(M)


def analyze(config: Configuration, pins: Optional[PinningSystem] = None, mode: str = EXACT) -> AnalysisReport:
    M = assemble(config)
    rk = _rank(M, mode)
    triv = [M.to_vector(v) for v in trivial_motion_basis(config)]
    if mode == NUMERIC:
        tdim = linalg.numeric_rank(triv, M.ncols)[0]
    else:
        tdim = linalg.rank(triv, M.ncols)
    nullity = M.ncols - rk
    nontrivial = nullity - tdim
    n_p, n_l, n_i = config.counts
    stress_dim = n_i - rk
    independence = "independent" if stress_dim == 0 else "dependent"
    if nontrivial > 0:
        rigidity = "flexible"
    else:
        rigidity = "isostatic" if stress_dim == 0 else "overbraced"
    pinned = None
    if pins:
        P = assemble(config, pins)
        pinned = P.ncols - _rank(P, mode)
    return AnalysisReport(n_p, n_l, n_i, dof_budget(n_p, n_l), rk, nullity, tdim, nontrivial,
                          stress_dim, independence, rigidity, mode, pinned)


def nontrivial_flex_basis(config: Configuration) -> List[FlexVector]:
    """Kernel vectors completing the trivial motions to a kernel basis."""
    M = assemble(config)
    span = [M.to_vector(v) for v in trivial_motion_basis(config)]
    r = linalg.rank(span, M.ncols)
    out = []
    for vec in linalg.kernel(M.rows, M.ncols):
        r2 = linalg.rank(span + [vec], M.ncols)
        if r2 > r:
            span.append(vec)
            r = r2
            out.append(M.to_flex(vec))
    return out


def detect_geometric_incidences(config: Configuration) -> Set[Tuple[str, str]]:
    """Every exactly incident point/line pair, declared or not."""
    return {
        (p, l)
        for p in config.points
        for l in config.lines
        if incident(config.point_coords[p], config.line_coords[l])
    }


def test_added_incidence(config: Configuration, p: str, l: str) -> str:
    """``"independent"`` iff recording ``(p, l)`` raises the rank by one."""
    if (p, l) in set(config.incidences):
        raise PreconditionError(f"({p}, {l}) is already a declared incidence")
    r = residual(config.point_coords[p], config.line_coords[l])
    if r != 0:
        raise IncidenceError(f"({p}, {l}) is not geometrically incident: residual {format_rational(r)}",
                             point=p, line=l, residual=r)
    before = exact_rank(assemble(config))
    after = exact_rank(assemble(config.with_incidences(list(config.incidences) + [(p, l)])))
    return "independent" if after == before + 1 else "dependent"


# prevent pytest from collecting the function above when imported into tests
test_added_incidence.__test__ = False


@dataclass
class BalanceEntry:
    combinatorial_sum: Fraction
    moment: Tuple[Fraction, Fraction, Fraction]

    @property
    def balanced(self) -> bool:
        return self.combinatorial_sum == 0 and not any(self.moment)


@dataclass
class BalanceReport:
    per_line: Dict[str, BalanceEntry]
    per_point: Dict[str, BalanceEntry]
    excluded_points: List[str] = field(default_factory=list)
    excluded_lines: List[str] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(e.balanced for e in self.per_line.values()) and all(
            e.balanced for e in self.per_point.values()
        )

    def to_dict(self) -> Dict[str, object]:
        def enc(e: BalanceEntry):
            return {"combinatorialSum": format_rational(e.combinatorial_sum),
                    "moment": [format_rational(v) for v in e.moment]}

        return {
            "overall": self.overall,
            "lines": {l: enc(e) for l, e in self.per_line.items()},
            "points": {p: enc(e) for p, e in self.per_point.items()},
            "excludedPoints": list(self.excluded_points),
            "excludedLines": list(self.excluded_lines),
        }


def _normalized(t: HomogeneousTriple) -> Tuple[Fraction, Fraction, Fraction]:
    if t.z != 0:
        return (t.x / t.z, t.y / t.z, Fraction(1))
    return t.coords


def verify_three_fold_balance(config: Configuration, stress: StressVector) -> BalanceReport:
    """Per line: sum of stresses over incident finite points and the moment
    ``sum w p x l``.  Per point: sum over incident lines missing the origin
    and the moment ``sum w l x p``.  Entities without an affine
    representative are left out of the combinatorial sums."""
    pn = {p: _normalized(t) for p, t in config.point_coords.items()}
    ln = {l: _normalized(t) for l, t in config.line_coords.items()}
    finite = {p for p, t in config.point_coords.items() if t.chart_ok}
    off_origin = {l for l, t in config.line_coords.items() if t.chart_ok}
    zero3 = (Fraction(0),) * 3

    per_line: Dict[str, BalanceEntry] = {}
    per_point: Dict[str, BalanceEntry] = {}
    for l in config.lines:
        s, m = Fraction(0), zero3
        for p in config.structure.points_on(l):
            w = stress[(p, l)]
            if p in finite:
                s += w
            c = _cross(pn[p], ln[l])
            m = tuple(a + w * b for a, b in zip(m, c))
        per_line[l] = BalanceEntry(s, m)
    for p in config.points:
        s, m = Fraction(0), zero3
        for l in config.structure.lines_through(p):
            w = stress[(p, l)]
            if l in off_origin:
                s += w
            c = _cross(ln[l], pn[p])
            m = tuple(a + w * b for a, b in zip(m, c))
        per_point[p] = BalanceEntry(s, m)
    return BalanceReport(
        per_line, per_point,
        excluded_points=[p for p in config.points if p not in finite],
        excluded_lines=[l for l in config.lines if l not in off_origin],
    )


EXTENDABLE = "extendable"
OBSTRUCTED = "obstructed"


@dataclass
class SecondOrderResult:
    flex: FlexVector
    outcome: str
    acceleration: Optional[FlexVector] = None
    certificate_row: Optional[int] = None
    certificate_label: Optional[Tuple[str, str, str]] = None

    @property
    def extendable(self) -> bool:
        return self.outcome == EXTENDABLE


def second_order_rhs(M: RigidityMatrix, v: FlexVector) -> List[Fraction]:
    """Per incidence row ``-2 (dp . dl)``; zero on pin rows."""
    out = []
    for lab in M.row_labels:
        if lab[0] == "incidence":
            dp = v.point_velocity.get(lab[1], (0, 0))
            dl = v.line_velocity.get(lab[2], (0, 0))
            out.append(-2 * (Fraction(dp[0]) * dl[0] + Fraction(dp[1]) * dl[1]))
        else:
            out.append(Fraction(0))
    return out


def second_order_extension_test(config: Configuration, pins: Optional[PinningSystem], v: FlexVector) -> SecondOrderResult:
    """Is there an acceleration ``a`` with ``M a = -2 (dp . dl)`` row by row?"""
    M = assemble(config, pins)
    if any(M.apply(v)):
        raise NotInKernelError("velocity is not an infinitesimal flex of the pinned matrix")
    rhs = second_order_rhs(M, v)
    sol, bad = linalg.solve(M.rows, M.ncols, rhs)
    if sol is None:
        return SecondOrderResult(v, OBSTRUCTED, certificate_row=bad, certificate_label=M.row_labels[bad])
    return SecondOrderResult(v, EXTENDABLE, acceleration=M.to_flex(sol))


SECOND_ORDER_RIGID = "second-order-rigid"
SECOND_ORDER_FLEXIBLE = "second-order-flexible"
UNDECIDED = "undecided"


def second_order_rigidity_verdict(config: Configuration, pins: Optional[PinningSystem]) -> str:
    """Decided only for pinned kernels of dimension at most one."""
    M = assemble(config, pins)
    ech = linalg.echelon(M.rows, M.ncols)
    ker = linalg.kernel_from_echelon(ech)
    if not ker:
        return SECOND_ORDER_RIGID
    if len(ker) > 1:
        return UNDECIDED
    res = second_order_extension_test(config, pins, M.to_flex(ker[0]))
    return SECOND_ORDER_FLEXIBLE if res.extendable else SECOND_ORDER_RIGID


EQUIVALENT = "projectively-equivalent"
DISTINCT = "distinct"


def _general_position_quadruple(config: Configuration, ids: Sequence[str]) -> Optional[Tuple[str, ...]]:
    for quad in itertools.combinations(sorted(ids), 4):
        ok = True
        for a, b, c in itertools.combinations(quad, 3):
            P = [config.point_coords[x] for x in (a, b, c)]
            if linalg.determinant([list(t.coords) for t in P]) == 0:
                ok = False
                break
        if ok:
            return quad
    return None


def compare_realizations(a: Configuration, b: Configuration, shared_pins: PinningSystem) -> str:
    """Two realizations sharing a pinned projective frame are projectively
    equivalent iff every element coincides."""
    if a.structure != b.structure:
        raise PreconditionError("realizations have different incidence structures")
    for p in shared_pins.points:
        if a.point_coords[p] != b.point_coords[p]:
            raise PreconditionError(f"pinned point {p!r} differs between realizations")
    for l in shared_pins.lines:
        if a.line_coords[l] != b.line_coords[l]:
            raise PreconditionError(f"pinned line {l!r} differs between realizations")
    if _general_position_quadruple(a, list(shared_pins.points)) is None:
        raise PreconditionError("pins must include four points in general position")
    same = all(a.point_coords[p] == b.point_coords[p] for p in a.points) and all(
        a.line_coords[l] == b.line_coords[l] for l in a.lines
    )
    return EQUIVALENT if same else DISTINCT
