"""Exact intersection tests for segments between integer lattice points.

Every decision is made in integer arithmetic (dot, cross and triple products
of small integer vectors); only the reported intersection point is built from
fractions.  Coordinates are bounded by ``COORD_LIMIT`` in absolute value.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

COORD_LIMIT = 2**15

Vec = Tuple[int, int, int]


class InvalidSegment(ValueError):
    pass


@dataclass(frozen=True)
class Segment:
    """Closed straight segment between two distinct lattice points."""

    a: Vec
    b: Vec

    def __post_init__(self) -> None:
        for p in (self.a, self.b):
            if len(p) != 3 or any(not isinstance(c, int) for c in p):
                raise InvalidSegment(f"endpoints must be integer triples, got {p!r}")
            if any(abs(c) > COORD_LIMIT for c in p):
                raise InvalidSegment(f"coordinate out of range (|c| <= {COORD_LIMIT}): {p!r}")
        if tuple(self.a) == tuple(self.b):
            raise InvalidSegment(f"zero-length segment at {tuple(self.a)}")

    def reversed(self) -> Segment:
        return Segment(self.b, self.a)

    def bbox(self) -> tuple[Vec, Vec]:
        lo = tuple(min(p, q) for p, q in zip(self.a, self.b))
        hi = tuple(max(p, q) for p, q in zip(self.a, self.b))
        return lo, hi  # type: ignore[return-value]


class IntersectionKind(enum.Enum):
    DISJOINT = "disjoint"
    POINT = "point"
    OVERLAP = "overlap"


@dataclass(frozen=True)
class Intersection:
    kind: IntersectionKind
    point: Optional[tuple[Fraction, Fraction, Fraction]] = None

    def __bool__(self) -> bool:
        return self.kind is not IntersectionKind.DISJOINT


DISJOINT = Intersection(IntersectionKind.DISJOINT)
OVERLAP = Intersection(IntersectionKind.OVERLAP)


def _sub(p: Vec, q: Vec) -> Vec:
    return (p[0] - q[0], p[1] - q[1], p[2] - q[2])


def _dot(u: Vec, v: Vec) -> int:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _cross(u: Vec, v: Vec) -> Vec:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _point_at(p: Vec, d: Vec, num: int, den: int) -> tuple[Fraction, Fraction, Fraction]:
    return tuple(Fraction(p[i] * den + d[i] * num, den) for i in range(3))  # type: ignore[return-value]


def _boxes_apart(s: Segment, t: Segment) -> bool:
    for i in range(3):
        if max(s.a[i], s.b[i]) < min(t.a[i], t.b[i]):
            return True
        if max(t.a[i], t.b[i]) < min(s.a[i], s.b[i]):
            return True
    return False


def classify_intersection(s: Segment, t: Segment) -> Intersection:
    """Classify how the closed segments ``s`` and ``t`` meet.

    Returns ``DISJOINT``, a single ``POINT`` (exact rational coordinates,
    endpoint contact included) or ``OVERLAP`` for collinear segments sharing
    more than one point.
    """
    if _boxes_apart(s, t):
        return DISJOINT
    p, q = s.a, t.a
    d = _sub(s.b, s.a)
    e = _sub(t.b, t.a)
    r = _sub(q, p)
    n = _cross(d, e)

    if n == (0, 0, 0):
        if _cross(r, d) != (0, 0, 0):
            return DISJOINT  # parallel, distinct lines
        # collinear: place t's endpoints on s's parameter axis, scaled by |d|^2
        dd = _dot(d, d)
        u0 = _dot(r, d)
        u1 = u0 + _dot(e, d)
        lo, hi = max(min(u0, u1), 0), min(max(u0, u1), dd)
        if lo > hi:
            return DISJOINT
        if lo == hi:
            return Intersection(IntersectionKind.POINT, _point_at(p, d, lo, dd))
        return OVERLAP

    if _dot(r, n) != 0:
        return DISJOINT  # skew
    # coplanar, non-parallel: p + s_num/nn * d == q + t_num/nn * e
    nn = _dot(n, n)
    s_num = _dot(_cross(r, e), n)
    t_num = _dot(_cross(r, d), n)
    if 0 <= s_num <= nn and 0 <= t_num <= nn:
        return Intersection(IntersectionKind.POINT, _point_at(p, d, s_num, nn))
    return DISJOINT


def segments_conflict(s: Segment, t: Segment, allowed_shared: Optional[Vec] = None) -> bool:
    """True when the segments share any point other than ``allowed_shared``.

    ``allowed_shared`` only excuses contact when it is an endpoint of both
    segments, which is how consecutive jumps of a path meet.
    """
    hit = classify_intersection(s, t)
    if hit.kind is IntersectionKind.DISJOINT:
        return False
    if hit.kind is IntersectionKind.OVERLAP:
        return True
    if allowed_shared is None:
        return True
    joint = tuple(allowed_shared)
    if joint not in (tuple(s.a), tuple(s.b)) or joint not in (tuple(t.a), tuple(t.b)):
        return True
    return hit.point != tuple(Fraction(c) for c in joint)
