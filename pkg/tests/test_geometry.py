import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from knightpath3d.geometry import (
    COORD_LIMIT,
    IntersectionKind as K,
    InvalidSegment,
    Segment,
    classify_intersection,
    segments_conflict,
)
from knightpath3d.lattice import Box, knight_offsets, symmetries
from oracles import rational_intersection


def seg(a, b):
    return Segment(tuple(a), tuple(b))


def test_planar_crossing_point():
    hit = classify_intersection(seg((0, 0, 0), (1, 2, 0)), seg((1, 0, 0), (0, 2, 0)))
    assert hit.kind is K.POINT
    assert hit.point == (F(1, 2), F(1), F(0))


def test_skew_segments_disjoint():
    # oracle: scalar triple product of d, e and the offset between starts
    d, e, r = (0, 1, 2), (1, 0, 2), (1, 1, 1)
    triple = (
        r[0] * (d[1] * e[2] - d[2] * e[1])
        + r[1] * (d[2] * e[0] - d[0] * e[2])
        + r[2] * (d[0] * e[1] - d[1] * e[0])
    )
    assert triple == 3
    hit = classify_intersection(seg((0, 0, 0), (0, 1, 2)), seg((1, 1, 1), (2, 1, 3)))
    assert hit.kind is K.DISJOINT


def test_collinear_overlap():
    assert classify_intersection(seg((0, 0, 0), (2, 4, 0)), seg((1, 2, 0), (3, 6, 0))).kind is K.OVERLAP


def test_collinear_touching_endpoint():
    hit = classify_intersection(seg((0, 0, 0), (1, 2, 0)), seg((1, 2, 0), (2, 4, 0)))
    assert hit.kind is K.POINT and hit.point == (1, 2, 0)


def test_zero_length_rejected():
    with pytest.raises(InvalidSegment):
        seg((1, 1, 1), (1, 1, 1))


def test_coordinate_bound_enforced():
    seg((COORD_LIMIT, 0, 0), (0, 0, 0))
    with pytest.raises(InvalidSegment):
        seg((COORD_LIMIT + 1, 0, 0), (0, 0, 0))


def test_conflict_examples():
    a = seg((0, 0, 0), (1, 2, 0))
    assert not segments_conflict(a, seg((1, 2, 0), (2, 0, 0)), (1, 2, 0))
    assert segments_conflict(a, seg((1, 0, 0), (0, 2, 0)))
    assert not segments_conflict(a, seg((0, 0, 1), (1, 2, 1)))


def test_allowed_shared_only_excuses_common_endpoint():
    a = seg((0, 0, 0), (1, 2, 0))
    b = seg((1, 2, 0), (2, 0, 0))
    assert segments_conflict(a, b)  # touching without permission
    assert segments_conflict(a, b, (0, 0, 0))  # not an endpoint of b
    # retracing overlaps, the joint does not excuse it
    assert segments_conflict(a, a.reversed(), (1, 2, 0))


def test_knight_segment_interiors_hold_no_lattice_point():
    from math import gcd

    for o in knight_offsets():
        g = 0
        for c in o:
            g = gcd(g, abs(c))
        assert g == 1
        s = seg((0, 0, 0), o)
        # every lattice point of the bounding box other than the endpoints is off the segment
        lo, hi = s.bbox()
        for x in range(lo[0], hi[0] + 1):
            for y in range(lo[1], hi[1] + 1):
                for z in range(lo[2], hi[2] + 1):
                    p = (x, y, z)
                    if p in ((0, 0, 0), tuple(o)):
                        continue
                    probe = classify_intersection(s, seg(p, (p[0] + 97, p[1] + 89, p[2] + 83)))
                    assert probe.kind is K.DISJOINT or probe.point != p


coords = st.tuples(*(st.integers(0, 8),) * 3)
seg_pairs = st.tuples(coords, coords, coords, coords).filter(lambda p: p[0] != p[1] and p[2] != p[3])


def _key(hit):
    return (hit.kind, hit.point)


@given(seg_pairs)
def test_symmetric_in_arguments_and_orientation(p):
    s, t = seg(p[0], p[1]), seg(p[2], p[3])
    base = _key(classify_intersection(s, t))
    assert _key(classify_intersection(t, s)) == base
    assert _key(classify_intersection(s.reversed(), t)) == base
    assert _key(classify_intersection(s, t.reversed())) == base


@given(seg_pairs, st.sampled_from(symmetries(Box(9, 9, 9))), st.tuples(*(st.integers(-5, 5),) * 3))
def test_kind_invariant_under_isometry(p, g, shift):
    s, t = seg(p[0], p[1]), seg(p[2], p[3])
    moved = [tuple(c + d for c, d in zip(g(q), shift)) for q in p]
    s2, t2 = seg(moved[0], moved[1]), seg(moved[2], moved[3])
    assert classify_intersection(s, t).kind is classify_intersection(s2, t2).kind


def _random_pairs(n, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        p = [tuple(rng.randint(0, 8) for _ in range(3)) for _ in range(4)]
        mode = len(out) % 4
        if mode == 1:  # shared endpoint
            p[2] = rng.choice((p[0], p[1]))
        elif mode == 2:  # same line
            d = tuple(rng.randint(-2, 2) for _ in range(3))
            p[1] = tuple(a + b for a, b in zip(p[0], d))
            p[2] = tuple(a + rng.randint(-2, 2) * b for a, b in zip(p[0], d))
            p[3] = tuple(a + rng.randint(-3, 3) * b for a, b in zip(p[0], d))
        elif mode == 3:  # same plane z = const
            z = p[0][2]
            p = [(q[0], q[1], z) for q in p]
        if p[0] != p[1] and p[2] != p[3]:
            out.append(p)
    return out


def test_matches_rational_oracle_on_mixed_pairs():
    for p in _random_pairs(4000, seed=7):
        hit = classify_intersection(seg(p[0], p[1]), seg(p[2], p[3]))
        assert (hit.kind.value, hit.point) == rational_intersection((p[0], p[1]), (p[2], p[3])), p
