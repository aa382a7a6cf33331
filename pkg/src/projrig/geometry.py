"""Exact projective-plane primitives.

Points ``(x:y:z)`` and lines ``(a:b:c)`` are stored as triples of
:class:`fractions.Fraction`; a point lies on a line when ``a*x + b*y + c*z``
is exactly zero.  Nothing in this module touches floating point.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import (
    DegenerateJoinError,
    IncidenceError,
    KindMismatchError,
    NormalizationError,
    SingularTransformError,
    StructureError,
)

POINT = "point"
LINE = "line"

Rational = Fraction
Matrix3 = Sequence[Sequence[Fraction]]


def to_rational(value) -> Fraction:
    """Exact conversion; floats are rejected so nothing inexact sneaks in."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact coordinate")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"``, ``"-p"`` or ``"p/q"`` (q > 0) exactly."""
    s = text.strip()
    if not s:
        raise ValueError("empty rational string")
    num, sep, den = s.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational: {text!r}") from None
    if sep and (den.strip().startswith(("-", "+")) or d <= 0):
        raise ValueError(f"denominator must be a positive integer: {text!r}")
    return Fraction(n, d)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class HomogeneousTriple:
    """Homogeneous coordinates of a point or a line.

    Equality is projective: two triples of the same kind compare equal when
    one is a nonzero multiple of the other.
    """

    __slots__ = ("x", "y", "z", "kind")

    def __init__(self, x, y, z, kind: str = POINT):
        if kind not in (POINT, LINE):
            raise ValueError(f"kind must be {POINT!r} or {LINE!r}")
        xs = (to_rational(x), to_rational(y), to_rational(z))
        if not any(xs):
            raise ValueError("(0:0:0) is not a projective element")
        object.__setattr__(self, "x", xs[0])
        object.__setattr__(self, "y", xs[1])
        object.__setattr__(self, "z", xs[2])
        object.__setattr__(self, "kind", kind)

    def __setattr__(self, name, value):
        raise AttributeError("HomogeneousTriple is immutable")

    @property
    def coords(self) -> Tuple[Fraction, Fraction, Fraction]:
        return (self.x, self.y, self.z)

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self) -> str:
        body = ":".join(format_rational(c) for c in self.coords)
        return f"{self.kind}({body})"

    def canonical(self) -> "HomogeneousTriple":
        """Coprime integer representative with first nonzero entry positive."""
        return HomogeneousTriple(*canonical_coords(self.coords), kind=self.kind)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomogeneousTriple):
            return NotImplemented
        return self.kind == other.kind and not any(_cross(self.coords, other.coords))

    def __hash__(self) -> int:
        return hash((self.kind, canonical_coords(self.coords)))

    def identical(self, other: "HomogeneousTriple") -> bool:
        """Raw coordinate equality (not projective)."""
        return self.kind == other.kind and self.coords == other.coords

    @property
    def chart_ok(self) -> bool:
        """Finite point (z != 0) or line missing the origin (c != 0)."""
        return self.z != 0

    def affine(self) -> Tuple[Fraction, Fraction]:
        """Representative with last coordinate 1, as a pair."""
        if self.z == 0:
            raise ZeroDivisionError(f"{self!r} has no affine representative")
        return (self.x / self.z, self.y / self.z)

    def dual(self) -> "HomogeneousTriple":
        return HomogeneousTriple(*self.coords, kind=LINE if self.kind == POINT else POINT)


def point(x, y, z=1) -> HomogeneousTriple:
    return HomogeneousTriple(x, y, z, POINT)


def line(a, b, c=1) -> HomogeneousTriple:
    return HomogeneousTriple(a, b, c, LINE)


def canonical_coords(v: Sequence[Fraction]) -> Tuple[int, int, int]:
    den = lcm(*(Fraction(c).denominator for c in v))
    ints = [int(Fraction(c) * den) for c in v]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    for c in ints:
        if c:
            if c < 0:
                ints = [-e for e in ints]
            break
    return tuple(ints)


def _dot(u, v) -> Fraction:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def residual(p: HomogeneousTriple, l: HomogeneousTriple) -> Fraction:
    """Exact ``a*x + b*y + c*z`` for a point/line pair."""
    if p.kind != POINT or l.kind != LINE:
        raise KindMismatchError(f"expected (point, line), got ({p.kind}, {l.kind})")
    return _dot(p.coords, l.coords)


def incident(p: HomogeneousTriple, l: HomogeneousTriple) -> bool:
    return residual(p, l) == 0


def _span(u: HomogeneousTriple, v: HomogeneousTriple, kind: str) -> HomogeneousTriple:
    if u.kind != v.kind:
        raise KindMismatchError(f"cannot combine a {u.kind} with a {v.kind}")
    c = _cross(u.coords, v.coords)
    if not any(c):
        raise DegenerateJoinError(f"{u!r} and {v!r} are projectively equal")
    return HomogeneousTriple(*canonical_coords(c), kind=kind)


def join(p1: HomogeneousTriple, p2: HomogeneousTriple) -> HomogeneousTriple:
    """Line through two distinct points."""
    if p1.kind != POINT:
        raise KindMismatchError("join takes two points")
    return _span(p1, p2, LINE)


def meet(l1: HomogeneousTriple, l2: HomogeneousTriple) -> HomogeneousTriple:
    """Intersection point of two distinct lines."""
    if l1.kind != LINE:
        raise KindMismatchError("meet takes two lines")
    return _span(l1, l2, POINT)


@dataclass(frozen=True)
class IncidenceStructure:
    """Bipartite data (P, L, I); incidence order is the matrix row order."""

    points: Tuple[str, ...]
    lines: Tuple[str, ...]
    incidences: Tuple[Tuple[str, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "lines", tuple(self.lines))
        object.__setattr__(self, "incidences", tuple((p, l) for p, l in self.incidences))
        for name, ids in (("point", self.points), ("line", self.lines)):
            if len(set(ids)) != len(ids):
                raise StructureError(f"duplicate {name} identifiers")
        pset, lset = set(self.points), set(self.lines)
        seen = set()
        for p, l in self.incidences:
            if p not in pset:
                raise StructureError(f"incidence ({p}, {l}) references unknown point {p!r}")
            if l not in lset:
                raise StructureError(f"incidence ({p}, {l}) references unknown line {l!r}")
            if (p, l) in seen:
                raise StructureError(f"duplicate incidence ({p}, {l})")
            seen.add((p, l))

    @property
    def counts(self) -> Tuple[int, int, int]:
        return (len(self.points), len(self.lines), len(self.incidences))

    def lines_through(self, p: str) -> List[str]:
        return [l for q, l in self.incidences if q == p]

    def points_on(self, l: str) -> List[str]:
        return [p for p, m in self.incidences if m == l]

    def transpose(self) -> "IncidenceStructure":
        return IncidenceStructure(self.lines, self.points, tuple((l, p) for p, l in self.incidences))


@dataclass(frozen=True)
class Configuration:
    """An incidence structure together with exact coordinates.

    Every declared incidence is checked on construction.  Chart validity is
    only reported (see :attr:`chart_valid`), never enforced, so ideal points
    and lines through the origin are representable.
    """

    structure: IncidenceStructure
    point_coords: Mapping[str, HomogeneousTriple]
    line_coords: Mapping[str, HomogeneousTriple]
    def __post_init__(self):
        s = self.structure
        for kind, declared, given in (("point", s.points, self.point_coords),
                                      ("line", s.lines, self.line_coords)):
            if set(declared) != set(given):
                raise StructureError(
                    f"{kind} coordinates do not match declared ids "
                    f"(missing {sorted(set(declared) - set(given))}, "
                    f"extra {sorted(set(given) - set(declared))})"
                )
        object.__setattr__(self, "point_coords", {p: self.point_coords[p] for p in s.points})
        object.__setattr__(self, "line_coords", {l: self.line_coords[l] for l in s.lines})
        for pid, t in self.point_coords.items():
            if t.kind != POINT:
                raise KindMismatchError(f"point {pid!r} carries a line triple")
        for lid, t in self.line_coords.items():
            if t.kind != LINE:
                raise KindMismatchError(f"line {lid!r} carries a point triple")
        for p, l in s.incidences:
            r = residual(self.point_coords[p], self.line_coords[l])
            if r != 0:
                raise IncidenceError(
                    f"incidence ({p}, {l}) violated: residual {format_rational(r)}",
                    point=p, line=l, residual=r,
                )

    @classmethod
    def build(cls, points: Mapping[str, HomogeneousTriple], lines: Mapping[str, HomogeneousTriple],
              incidences: Iterable[Tuple[str, str]]) -> "Configuration":
        """Convenience constructor; declaration order follows the mappings."""
        s = IncidenceStructure(tuple(points), tuple(lines), tuple(incidences))
        return cls(s, dict(points), dict(lines))

    @property
    def points(self) -> Tuple[str, ...]:
        return self.structure.points

    @property
    def lines(self) -> Tuple[str, ...]:
        return self.structure.lines

    @property
    def incidences(self) -> Tuple[Tuple[str, str], ...]:
        return self.structure.incidences

    @property
    def counts(self) -> Tuple[int, int, int]:
        return self.structure.counts

    def chart_blockers(self) -> List[str]:
        """Ids of points at infinity and lines through the origin."""
        bad = [p for p in self.points if not self.point_coords[p].chart_ok]
        bad += [l for l in self.lines if not self.line_coords[l].chart_ok]
        return bad

    @property
    def chart_valid(self) -> bool:
        return not self.chart_blockers()

    def with_incidences(self, incidences: Iterable[Tuple[str, str]]) -> "Configuration":
        s = IncidenceStructure(self.points, self.lines, tuple(incidences))
        return Configuration(s, self.point_coords, self.line_coords)

    def with_coords(self, point_coords, line_coords) -> "Configuration":
        return Configuration(self.structure, point_coords, line_coords)

    def identical(self, other: "Configuration") -> bool:
        """Same ids, same incidence order and bit-identical coordinates."""
        return (
            self.structure == other.structure
            and all(self.point_coords[p].identical(other.point_coords[p]) for p in self.points)
            and all(self.line_coords[l].identical(other.line_coords[l]) for l in self.lines)
        )


def dualize(config: Configuration) -> Configuration:
    """Swap points and lines under the identity polarity.

    Identifiers are kept: point ``"A"`` becomes line ``"A"`` with the same
    triple, and every incidence ``(p, l)`` becomes ``(l, p)``.
    """
    return Configuration(
        config.structure.transpose(),
        {l: t.dual() for l, t in config.line_coords.items()},
        {p: t.dual() for p, t in config.point_coords.items()},
    )


def det3(A: Matrix3) -> Fraction:
    return (
        A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
        - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
        + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0])
    )


def inverse_transpose3(A: Matrix3) -> List[List[Fraction]]:
    """(A^-1)^T = cofactor matrix / det."""
    d = det3(A)
    if d == 0:
        raise SingularTransformError("transform matrix is singular")
    cof = [[Fraction(0)] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != i]
            c = [k for k in range(3) if k != j]
            minor = A[r[0]][c[0]] * A[r[1]][c[1]] - A[r[0]][c[1]] * A[r[1]][c[0]]
            cof[i][j] = Fraction((-1) ** (i + j) * minor) / d
    return cof


def _matvec(A, v):
    return tuple(A[i][0] * v[0] + A[i][1] * v[1] + A[i][2] * v[2] for i in range(3))


def _as_matrix(A) -> List[List[Fraction]]:
    M = [[to_rational(e) for e in row] for row in A]
    if len(M) != 3 or any(len(r) != 3 for r in M):
        raise ValueError("transform must be 3x3")
    return M


def apply_transform(config: Configuration, A) -> Configuration:
    """Map points by ``A`` and lines by the inverse transpose of ``A``."""
    M = _as_matrix(A)
    B = inverse_transpose3(M)
    pts = {p: HomogeneousTriple(*_matvec(M, t.coords), kind=POINT) for p, t in config.point_coords.items()}
    lns = {l: HomogeneousTriple(*_matvec(B, t.coords), kind=LINE) for l, t in config.line_coords.items()}
    return config.with_coords(pts, lns)


def _chart_failures(config: Configuration, M, B) -> List[str]:
    bad = []
    for p, t in config.point_coords.items():
        if M[2][0] * t.x + M[2][1] * t.y + M[2][2] * t.z == 0:
            bad.append(p)
    for l, t in config.line_coords.items():
        if B[2][0] * t.x + B[2][1] * t.y + B[2][2] * t.z == 0:
            bad.append(l)
    return bad


def random_transform(rng: random.Random, spread: int = 4) -> List[List[Fraction]]:
    """Invertible 3x3 integer matrix with entries in [-spread, spread]."""
    while True:
        A = [[Fraction(rng.randint(-spread, spread)) for _ in range(3)] for _ in range(3)]
        if det3(A) != 0:
            return A


def normalize_to_chart(config: Configuration, seed: int = 0, max_attempts: int = 64) -> Configuration:
    """Projectively equivalent chart-valid copy of ``config``.

    Deterministic in ``seed``.  Returns ``config`` itself when it is already
    chart-valid.
    """
    if config.chart_valid:
        return config
    rng = random.Random(seed)
    bad: List[str] = config.chart_blockers()
    for _ in range(max_attempts):
        A = random_transform(rng)
        B = inverse_transpose3(A)
        bad = _chart_failures(config, A, B)
        if not bad:
            return apply_transform(config, A)
    raise NormalizationError(
        f"no chart-valid transform found in {max_attempts} attempts; blocked by {bad}",
        blocking=bad,
    )


def conic_through(points: Sequence[HomogeneousTriple]) -> Optional[Tuple[Fraction, ...]]:
    """Coefficients (A, B, C, D, E, F) of A x^2 + B xy + C y^2 + D xz + E yz + F z^2
    through five points, or None if they do not determine a unique conic."""
    from .linalg import kernel

    rows = [_conic_row(p.coords) for p in points]
    ker = kernel(rows, 6)
    if len(ker) != 1:
        return None
    return tuple(Fraction(c) for c in ker[0])


def _conic_row(v):
    x, y, z = v
    return [x * x, x * y, y * y, x * z, y * z, z * z]


def conic_determinant(points: Sequence[HomogeneousTriple]) -> Fraction:
    """6x6 determinant that vanishes iff the six points lie on a common conic."""
    from .linalg import determinant

    if len(points) != 6:
        raise ValueError("need exactly six points")
    return determinant([_conic_row(p.coords) for p in points])
