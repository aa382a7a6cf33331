"""Deterministic generators for the named configurations.

Each generator returns a :class:`~projrig.geometry.Configuration` whose
declared incidences hold exactly.  Several of them (the quadrangle family,
the dyadic grid) contain ideal points or lines through the origin and must
go through :func:`~projrig.geometry.normalize_to_chart` before a rigidity
matrix can be formed.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DegenerateJoinError, PreconditionError, ResourceLimitError, StructureError
from .geometry import (
    LINE,
    POINT,
    Configuration,
    HomogeneousTriple,
    conic_through,
    dualize,
    incident,
    join,
    line,
    meet,
    point,
)
from .rigidity import PinningSystem

DEFAULT_MAX_GRID_LEVEL = 6
MAX_GRID_ENV = "PROJRIG_MAX_GRID_LEVEL"


class _Builder:
    """Ordered accumulator used by the constructive generators."""

    def __init__(self):
        self.points: Dict[str, HomogeneousTriple] = {}
        self.lines: Dict[str, HomogeneousTriple] = {}
        self.incidences: List[Tuple[str, str]] = []

    def add_point(self, pid, t, on=()):
        self.points[pid] = t
        self.incidences.extend((pid, l) for l in on)
        return pid

    def add_line(self, lid, t, through=()):
        self.lines[lid] = t
        self.incidences.extend((p, lid) for p in through)
        return lid

    def join(self, lid, p, q):
        return self.add_line(lid, join(self.points[p], self.points[q]), (p, q))

    def meet(self, pid, l, m):
        return self.add_point(pid, meet(self.lines[l], self.lines[m]), (l, m))

    def build(self) -> Configuration:
        return Configuration.build(self.points, self.lines, self.incidences)


def _incidences_by_check(points, lines):
    return [(p, l) for l in lines for p in points if incident(points[p], lines[l])]


def complete_quadrangle() -> Configuration:
    """Four points (+-1, +-1) and their six joining lines."""
    b = _Builder()
    for pid, (x, y) in zip("ABCD", [(1, 1), (-1, 1), (-1, -1), (1, -1)]):
        b.add_point(pid, point(x, y))
    for p, q in itertools.combinations("ABCD", 2):
        b.join(p + q, p, q)
    return b.build()


def complete_quadrilateral() -> Configuration:
    """Identity-polarity dual of :func:`complete_quadrangle`."""
    return dualize(complete_quadrangle())


def _regular_subsets(points: Dict[str, HomogeneousTriple], k: int) -> List[List[Tuple[str, ...]]]:
    """All families of collinear k-subsets in which every point lies on exactly k members."""
    ids = list(points)
    triples = []
    for combo in itertools.combinations(ids, k):
        try:
            l = join(points[combo[0]], points[combo[1]])
        except Exception:
            continue
        if all(incident(points[p], l) for p in combo[2:]):
            triples.append(combo)
    target = len(ids)
    solutions: List[List[Tuple[str, ...]]] = []
    degree = {p: 0 for p in ids}

    def search(start, chosen):
        if len(chosen) == target:
            if all(d == k for d in degree.values()):
                solutions.append(list(chosen))
            return
        for n in range(start, len(triples)):
            t = triples[n]
            if any(degree[p] >= k for p in t):
                continue
            for p in t:
                degree[p] += 1
            chosen.append(t)
            search(n + 1, chosen)
            chosen.pop()
            for p in t:
                degree[p] -= 1

    search(0, [])
    return solutions


def _from_regular_points(points: Dict[str, HomogeneousTriple]) -> Configuration:
    sols = _regular_subsets(points, 3)
    if len(sols) != 1:
        raise PreconditionError(f"expected a unique 3-regular line family, found {len(sols)}")
    b = _Builder()
    for p, t in points.items():
        b.add_point(p, t)
    for trip in sols[0]:
        b.add_line(".".join(trip), join(points[trip[0]], points[trip[1]]), trip)
    return b.build()


PAPPUS_REFERENCE_POINTS = {
    "A1": (-4, -1), "A2": (0, -1), "A3": (4, -1),
    "B1": (-4, 3), "B2": (0, 3), "B3": (4, 3),
    "C1": (-2, 1), "C2": (0, 1), "C3": (2, 1),
}


def _pappus_from(A: Sequence[HomogeneousTriple], B: Sequence[HomogeneousTriple]) -> Configuration:
    b = _Builder()
    for i, t in enumerate(A, 1):
        b.add_point(f"A{i}", t)
    for i, t in enumerate(B, 1):
        b.add_point(f"B{i}", t)
    cross = {}
    for i, j in itertools.permutations(range(1, 4), 2):
        cross[i, j] = join(b.points[f"A{i}"], b.points[f"B{j}"])
    b.add_point("C1", meet(cross[1, 2], cross[2, 1]))
    b.add_point("C2", meet(cross[1, 3], cross[3, 1]))
    b.add_point("C3", meet(cross[2, 3], cross[3, 2]))
    lines = {"A": join(A[0], A[1]), "B": join(B[0], B[1])}
    for (i, j), t in cross.items():
        lines[f"A{i}B{j}"] = t
    lines["C"] = join(b.points["C1"], b.points["C2"])
    return Configuration.build(b.points, lines, _incidences_by_check(b.points, lines))


def pappus(paper_coords: bool = True, seed: int = 0) -> Configuration:
    """Pappus (9_3).  With ``paper_coords`` the reference integer placement,
    otherwise a generic rational placement drawn from ``seed``."""
    if paper_coords:
        pts = {p: point(x, y) for p, (x, y) in PAPPUS_REFERENCE_POINTS.items()}
        return _from_regular_points(pts)
    rng = random.Random(seed)
    while True:
        la, lb = _rand_line(rng), _rand_line(rng)
        try:
            A = [_rand_point_on(rng, la) for _ in range(3)]
            B = [_rand_point_on(rng, lb) for _ in range(3)]
            cfg = _pappus_from(A, B)
        except Exception:
            continue
        if cfg.chart_valid and len(cfg.incidences) == 27 and len(set(cfg.point_coords.values())) == 9:
            return cfg


DESARGUES_REFERENCE_POINTS = {
    "o": (-3, 0),
    "a": (-3, 3), "b": (0, 3), "c": (-1, 4),
    "a'": (-3, 6), "b'": (1, 4), "c'": (0, 6),
    "d": (3, 3), "e": (3, 0), "f": (3, 6),
}


def desargues(paper_coords: bool = True, seed: int = 0) -> Configuration:
    """Desargues (10_3): centre ``o``, triangles ``abc`` / ``a'b'c'``, axis points ``d, e, f``."""
    if paper_coords:
        pts = {p: point(x, y) for p, (x, y) in DESARGUES_REFERENCE_POINTS.items()}
        return _from_regular_points(pts)
    rng = random.Random(seed)
    while True:
        try:
            cfg = _generic_desargues(rng)
        except Exception:
            continue
        if cfg.chart_valid and len(cfg.incidences) == 30:
            return cfg


def _generic_desargues(rng) -> Configuration:
    b = _Builder()
    b.add_point("o", _rand_point(rng))
    for v in "abc":
        b.add_point(v, _rand_point(rng))
        b.join("o" + v, "o", v)
        b.add_point(v + "'", _rand_point_on(rng, b.lines["o" + v]))
    for u, v in (("a", "b"), ("b", "c"), ("c", "a")):
        b.join(u + v, u, v)
        b.join(u + v + "'", u + "'", v + "'")
    b.meet("d", "ab", "ab'")
    b.meet("e", "bc", "bc'")
    b.meet("f", "ca", "ca'")
    b.join("axis", "d", "e")
    pts, lns = b.points, b.lines
    return Configuration.build(pts, lns, _incidences_by_check(pts, lns))


def pascal97() -> Configuration:
    """Nine points, seven lines: base line through a, b, c, two more lines
    through each, and the six meets 1..6 (which lie on a conic)."""
    b = _Builder()
    b.add_point("a", point(-2, -3))
    b.add_point("b", point(1, -3))
    b.add_point("c", point(3, -3))
    b.add_line("base", join(b.points["a"], b.points["b"]), ("a", "b", "c"))
    seconds = {
        "la1": ("a", (-2, 0)), "la2": ("a", (-1, 2)),
        "lb1": ("b", (0, 1)), "lb2": ("b", (0, 2)),
        "lc1": ("c", (-3, 2)), "lc2": ("c", (-3, 1)),
    }
    for lid, (p, (x, y)) in seconds.items():
        b.add_line(lid, join(b.points[p], point(x, y)), (p,))
    for pid, (l, m) in zip("123456", [("la1", "lb2"), ("lb2", "lc1"), ("lc1", "la2"),
                                      ("la2", "lb1"), ("lb1", "lc2"), ("lc2", "la1")]):
        b.meet(pid, l, m)
    return b.build()


PASCAL_HEXAGON = ("1", "2", "3", "4", "5", "6")


def _fresh_id(config: Configuration, prefix: str) -> str:
    taken = set(config.points) | set(config.lines)
    n = 0
    while f"{prefix}{n}" in taken:
        n += 1
    return f"{prefix}{n}"


def _require_ids(known, ids, kind: str) -> None:
    missing = [i for i in ids if i not in known]
    if missing:
        raise StructureError(f"unknown {kind} id(s): {', '.join(missing)}")


def zero_extension_add_line(config: Configuration, p: str, q: str, new_id: Optional[str] = None) -> Configuration:
    """Add the line through points ``p`` and ``q`` with its two incidences."""
    _require_ids(config.point_coords, (p, q), "point")
    t = join(config.point_coords[p], config.point_coords[q])
    for l, u in config.line_coords.items():
        if u == t:
            raise PreconditionError(f"join of {p} and {q} coincides with existing line {l!r}")
    lid = new_id or _fresh_id(config, "L")
    lines = dict(config.line_coords)
    lines[lid] = t
    return Configuration.build(config.point_coords, lines, list(config.incidences) + [(p, lid), (q, lid)])


def zero_extension_add_point(config: Configuration, l: str, m: str, new_id: Optional[str] = None) -> Configuration:
    """Add the meet of lines ``l`` and ``m`` with its two incidences."""
    _require_ids(config.line_coords, (l, m), "line")
    t = meet(config.line_coords[l], config.line_coords[m])
    for p, u in config.point_coords.items():
        if u == t:
            raise PreconditionError(f"meet of {l} and {m} coincides with existing point {p!r}")
    pid = new_id or _fresh_id(config, "P")
    points = dict(config.point_coords)
    points[pid] = t
    return Configuration.build(points, config.line_coords, list(config.incidences) + [(pid, l), (pid, m)])


def max_grid_level() -> int:
    return int(os.environ.get(MAX_GRID_ENV, DEFAULT_MAX_GRID_LEVEL))


def dyadic_grid(level: int, max_level: Optional[int] = None) -> Configuration:
    """Recursive isostatic grid containing every point (n/2^N, m/2^N) of the
    unit square as a configuration point or a crossing of two lines.

    Contains the ideal points p1..p4 and lines through the origin, so
    normalise before assembling a matrix.
    """
    limit = max_grid_level() if max_level is None else max_level
    if level < 0:
        raise ValueError("grid level must be non-negative")
    if level > limit:
        raise ResourceLimitError(f"grid level {level} exceeds maximum {limit}")

    b = _Builder()
    for pid, (x, y) in zip("abcd", [(0, 0), (0, 1), (1, 1), (1, 0)]):
        b.add_point(pid, point(x, y))
    for lid in ("ab", "ad", "bc", "cd"):
        b.join(lid, lid[0], lid[1])
    b.meet("p1", "ad", "bc")
    b.meet("p2", "ab", "cd")
    b.join("ac", "a", "c")
    b.join("bd", "b", "d")
    b.join("inf", "p1", "p2")
    b.meet("p3", "ac", "inf")
    b.meet("p4", "bd", "inf")
    b.join("ap4", "a", "p4")
    b.join("bp3", "b", "p3")
    b.join("cp4", "c", "p4")
    b.join("dp3", "d", "p3")
    b.meet("e", "ap4", "bp3")
    b.meet("f", "bp3", "cp4")
    b.join("h0", "e", "p1")
    b.join("v0", "f", "p2")

    horizontals = ["ad", "bc", "h0"]
    # (ear line, x-range) of the segments ae, eb, bf, fc
    ears = [("ap4", Fraction(-1, 2), Fraction(0)), ("bp3", Fraction(-1, 2), Fraction(0)),
            ("bp3", Fraction(0), Fraction(1, 2)), ("cp4", Fraction(1, 2), Fraction(1))]

    for n in range(1, level + 1):
        fresh = []
        for side in ("ab", "cd"):
            for h in horizontals:
                t = meet(b.lines[side], b.lines[h])
                if t not in b.points.values():
                    fresh.append(b.add_point(f"s{n}_{len(fresh)}", t, (side, h)))
        new_pts = []
        for q in fresh:
            for ideal in ("p3", "p4"):
                cand = join(b.points[q], b.points[ideal])
                if cand in b.lines.values():
                    continue
                hits = []
                for ear, lo, hi in ears:
                    m = meet(cand, b.lines[ear])
                    if m.z == 0:
                        continue
                    x, _ = m.affine()
                    if lo < x < hi and m not in b.points.values():
                        hits.append((ear, m))
                if not hits:
                    continue
                gid = b.add_line(f"g{n}_{len(b.lines)}", cand, (q, ideal))
                for ear, m in hits:
                    new_pts.append(b.add_point(f"m{n}_{len(b.points)}", m, (gid, ear)))
        for m in new_pts:
            x, _ = b.points[m].affine()
            if x < 0:
                horizontals.append(b.join(f"h{n}_{len(b.lines)}", m, "p1"))
            else:
                b.join(f"v{n}_{len(b.lines)}", m, "p2")
    return b.build()


def dyadic_points(level: int) -> List[Tuple[Fraction, Fraction]]:
    s = 2 ** level
    return [(Fraction(i, s), Fraction(j, s)) for i in range(s + 1) for j in range(s + 1)]


@dataclass
class Mechanism:
    """Output of :func:`conic_mechanism`.

    ``config`` is the primary realization (for ``miss`` mode, the mechanism
    without its final incidence).  ``realizations`` lists every realization of
    the full pinned configuration; ``intersections`` counts the real meets of
    line ``ox`` with the conic through ``a..e`` (from the sign of
    ``discriminant``).
    """

    mode: str
    config: Configuration
    pins: PinningSystem
    realizations: List[Configuration]
    conic: Tuple[Fraction, ...]
    discriminant: Fraction
    final_incidence: Tuple[str, str] = ("f", "ox")
    free_point: str = "t"
    notes: Dict[str, object] = field(default_factory=dict)

    @property
    def intersections(self) -> int:
        if self.discriminant > 0:
            return 2
        return 1 if self.discriminant == 0 else 0

    @property
    def realizable(self) -> bool:
        return bool(self.realizations)

    def released(self) -> Configuration:
        """The one-degree-of-freedom mechanism: final incidence dropped."""
        return self.config.with_incidences(i for i in self.config.incidences if i != self.final_incidence)

    def metadata(self) -> Dict[str, object]:
        return {
            "mode": self.mode,
            "pinned_points": sorted(self.pins.points),
            "pinned_lines": sorted(self.pins.lines),
            "final_incidence": list(self.final_incidence),
            "intersections": self.intersections,
            "realizable": self.realizable,
            "realization_count": len(self.realizations),
            "discriminant": str(self.discriminant),
        }


def _hyperbola_point(u) -> HomogeneousTriple:
    u = Fraction(u)
    return point(u, 1 / u)


def _tangent_to_hyperbola(u) -> HomogeneousTriple:
    # X + u^2 Y - 2u = 0 touches XY = 1 at (u, 1/u)
    u = Fraction(u)
    return line(1, u * u, -2 * u)


CONIC_PARAMS = {"a": Fraction(1, 2), "b": Fraction(1), "c": Fraction(2), "d": Fraction(3), "e": Fraction(5)}
TANGENT_PARAM = Fraction(4, 3)
SECANT_PARAMS = (Fraction(3, 2), Fraction(7, 2))


def _mechanism_realization(frame: Dict[str, HomogeneousTriple], f_target: Optional[HomogeneousTriple],
                           t_point: Optional[HomogeneousTriple], final: bool) -> Configuration:
    """Build the pinned mechanism either from a target conic point ``f`` or a
    chosen position of ``t`` on ``oy``."""
    b = _Builder()
    for pid in ("a", "b", "c", "d", "e", "o", "x", "y"):
        b.add_point(pid, frame[pid])
    for lid in ("ab", "de", "cd", "bc", "oy", "ox"):
        b.join(lid, lid[0], lid[1])
    b.meet("j", "ab", "de")
    P = b.points
    if t_point is None:
        i0 = meet(b.lines["cd"], join(P["a"], f_target))
        pascal_line = join(P["j"], i0)
        t_point = meet(b.lines["oy"], pascal_line)
    b.add_point("t", t_point, ("oy",))
    b.join("jt", "j", "t")
    b.meet("i", "cd", "jt")
    b.meet("k", "bc", "jt")
    b.join("ai", "a", "i")
    b.join("ek", "e", "k")
    b.meet("f", "ai", "ek")
    if final:
        b.incidences.append(("f", "ox"))
    return b.build()


def _line_conic_discriminant(conic, p: HomogeneousTriple, q: HomogeneousTriple) -> Fraction:
    A, B, C, D, E, F = conic

    def Q(u, v):
        # symmetric bilinear form of the conic
        return (A * u[0] * v[0] + C * u[1] * v[1] + F * u[2] * v[2]
                + B * (u[0] * v[1] + u[1] * v[0]) / 2
                + D * (u[0] * v[2] + u[2] * v[0]) / 2
                + E * (u[1] * v[2] + u[2] * v[1]) / 2)

    u, v = p.coords, q.coords
    return (2 * Q(u, v)) ** 2 - 4 * Q(u, u) * Q(v, v)


def conic_mechanism(mode: str = "tangent") -> Mechanism:
    """Pinned Pascal mechanism whose point ``f`` is forced onto the hyperbola
    ``XY = 1`` through the pinned points ``a..e``; the final incidence puts
    ``f`` on the pinned line ``ox``.

    ``tangent``: ox touches the conic, one realization, first-order flexible.
    ``secant``: ox cuts the conic twice, two realizations.
    ``miss``: ox misses the conic, no realization of the full configuration.
    """
    frame = {k: _hyperbola_point(u) for k, u in CONIC_PARAMS.items()}
    frame["y"] = point(Fraction(9, 2), Fraction(7, 2))
    if mode == "tangent":
        tl = _tangent_to_hyperbola(TANGENT_PARAM)
        targets = [_hyperbola_point(TANGENT_PARAM)]
        frame["o"] = _point_on_line_at_x(tl, Fraction(-2))
        frame["x"] = _point_on_line_at_x(tl, Fraction(6))
    elif mode == "secant":
        u1, u2 = SECANT_PARAMS
        targets = [_hyperbola_point(u1), _hyperbola_point(u2)]
        chord = join(targets[0], targets[1])
        frame["o"] = _point_on_line_at_x(chord, Fraction(-2))
        frame["x"] = _point_on_line_at_x(chord, Fraction(6))
    elif mode == "miss":
        targets = []
        frame["o"] = point(3, -2)
        frame["x"] = point(-2, 3)
    else:
        raise ValueError(f"unknown conic mechanism mode {mode!r}")
    pins = PinningSystem(points={"a", "b", "c", "d", "e", "o", "x", "y"})
    conic = conic_through([frame[k] for k in "abcde"])
    disc = _line_conic_discriminant(conic, frame["o"], frame["x"])
    realizations = [_mechanism_realization(frame, f, None, final=True) for f in targets]
    if realizations:
        primary = realizations[0]
    else:
        # any position of t on oy realizes the released mechanism
        t = meet(join(frame["o"], frame["y"]), line(2, 0, -7))
        primary = _mechanism_realization(frame, None, t, final=False)
    return Mechanism(mode, primary, pins, realizations, conic, disc)


def _point_on_line_at_x(l: HomogeneousTriple, x: Fraction) -> HomogeneousTriple:
    a, b, c = l.coords
    return point(x, -(a * x + c) / b)


def _rand_rational(rng: random.Random, spread: int = 9, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-spread * den, spread * den), rng.randint(1, den))


def _rand_point(rng: random.Random) -> HomogeneousTriple:
    return point(_rand_rational(rng), _rand_rational(rng))


def _rand_line(rng: random.Random) -> HomogeneousTriple:
    while True:
        a, b = _rand_rational(rng), _rand_rational(rng)
        if a or b:
            return line(a, b, 1)


def _rand_point_on(rng: random.Random, l: HomogeneousTriple) -> HomogeneousTriple:
    a, b, c = l.coords
    if b != 0:
        x = _rand_rational(rng)
        return point(x, -(a * x + c) / b)
    y = _rand_rational(rng)
    return point(-(b * y + c) / a, y)


def random_configuration(seed: int, n_points: int, n_lines: int, target_incidences: int) -> Configuration:
    """Chart-valid random configuration built from free entities and 0-extensions.

    Lines are joins of two earlier points while incidences remain to be
    placed; after that, points are meets of two lines.  An odd target gets
    one point placed on a single line.  Deterministic in ``seed``.
    """
    ext, half = divmod(target_incidences, 2)
    ext_lines = min(n_lines, ext)
    ext_points = ext - ext_lines
    free_points = n_points - ext_points - half
    if free_points < 0 or (ext_lines and free_points < 2) or (ext_points and n_lines < 2) or (half and n_lines < 1):
        raise PreconditionError(
            f"cannot place {target_incidences} incidences on {n_points} points and {n_lines} lines"
        )
    rng = random.Random(seed)
    for _ in range(1000):
        try:
            cfg = _random_attempt(rng, free_points, ext_lines, n_lines - ext_lines, ext_points, half)
        except Exception:
            continue
        if cfg.chart_valid:
            return cfg
    raise PreconditionError("random construction kept degenerating")


def _random_attempt(rng, free_points, ext_lines, free_lines, ext_points, half) -> Configuration:
    b = _Builder()
    for i in range(free_points):
        b.add_point(f"P{i}", _rand_point(rng))
    pids = list(b.points)
    for i in range(ext_lines):
        p, q = rng.sample(pids, 2)
        t = join(b.points[p], b.points[q])
        if t in b.lines.values():
            raise PreconditionError("repeated line")
        b.add_line(f"L{i}", t, (p, q))
    for i in range(free_lines):
        b.add_line(f"L{ext_lines + i}", _rand_line(rng))
    lids = list(b.lines)
    for i in range(ext_points):
        l, m = rng.sample(lids, 2)
        t = meet(b.lines[l], b.lines[m])
        if t in b.points.values():
            raise PreconditionError("repeated point")
        b.add_point(f"P{free_points + i}", t, (l, m))
    if half:
        l = rng.choice(lids)
        b.add_point(f"P{free_points + ext_points}", _rand_point_on(rng, b.lines[l]), (l,))
    return b.build()


def random_dependent_configuration(seed: int, extensions: Optional[int] = None) -> Configuration:
    """A generic Pappus or Desargues configuration (each carries a self-stress)
    grown by random 0-extensions.  0-extensions never remove a stress, so the
    result is always dependent.  Deterministic in ``seed``."""
    rng = random.Random(seed)
    cfg = pappus(False, seed) if seed % 2 == 0 else desargues(False, seed)
    k = rng.randint(0, 4) if extensions is None else extensions
    added = 0
    while added < k:
        try:
            if rng.random() < 0.5:
                p, q = rng.sample(list(cfg.points), 2)
                nxt = zero_extension_add_line(cfg, p, q)
            else:
                l, m = rng.sample(list(cfg.lines), 2)
                nxt = zero_extension_add_point(cfg, l, m)
        except (PreconditionError, DegenerateJoinError):
            continue
        if not nxt.chart_valid:
            continue
        cfg, added = nxt, added + 1
    return cfg


GENERATORS = ("quadrangle", "quadrilateral", "pappus", "desargues", "pascal97",
              "dyadic-grid", "conic-mechanism", "random")


def generate(name: str, *, level: int = 0, mode: str = "tangent", paper_coords: bool = True,
             seed: int = 0, n_points: int = 6, n_lines: int = 6, incidences: int = 12):
    """Dispatch by generator name; returns ``(config, pins, metadata)``."""
    pins, meta = PinningSystem(), {"generator": name}
    if name == "quadrangle":
        cfg = complete_quadrangle()
    elif name == "quadrilateral":
        cfg = complete_quadrilateral()
    elif name == "pappus":
        cfg = pappus(paper_coords, seed)
    elif name == "desargues":
        cfg = desargues(paper_coords, seed)
    elif name == "pascal97":
        cfg = pascal97()
    elif name == "dyadic-grid":
        cfg = dyadic_grid(level)
        meta["level"] = level
    elif name == "conic-mechanism":
        mech = conic_mechanism(mode)
        cfg, pins = mech.config, mech.pins
        meta.update(mech.metadata())
    elif name == "random":
        cfg = random_configuration(seed, n_points, n_lines, incidences)
        meta["seed"] = seed
    else:
        raise ValueError(f"unknown generator {name!r}; choose from {', '.join(GENERATORS)}")
    return cfg, pins, meta
