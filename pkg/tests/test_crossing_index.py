import random
from itertools import product

import pytest

from knightpath3d.crossing_index import CrossingIndex, bucket_keys
from knightpath3d.geometry import Segment, segments_conflict
from knightpath3d.lattice import Box, knight_moves, knight_offsets
from oracles import naive_conflict


def seg(a, b):
    return Segment(tuple(a), tuple(b))


def test_ids_and_empty_queries():
    idx = CrossingIndex(Box(3, 3, 3))
    assert not idx.conflicts(seg((1, 0, 0), (0, 2, 0)))
    assert idx.insert(seg((0, 0, 0), (1, 2, 0))) == 0
    assert idx.insert(seg((1, 2, 0), (2, 0, 0))) == 1


def test_conflict_queries():
    idx = CrossingIndex(Box(3, 3, 3))
    idx.insert(seg((0, 0, 0), (1, 2, 0)))
    assert idx.conflicts(seg((1, 0, 0), (0, 2, 0)))
    assert not idx.conflicts(seg((1, 2, 0), (2, 0, 0)), allowed_shared=(1, 2, 0))


def test_out_of_box_insert_rejected():
    with pytest.raises(ValueError):
        CrossingIndex(Box(2, 2, 2)).insert(seg((0, 0, 0), (1, 2, 0)))


def test_remove_last_restores_state():
    idx = CrossingIndex(Box(3, 3, 3))
    a, b = seg((0, 0, 0), (1, 2, 0)), seg((1, 2, 0), (2, 0, 0))
    idx.insert(a)
    idx.remove_last()
    assert len(idx) == 0 and idx.bucket_snapshot() == {}
    idx.insert(a)
    snap = idx.bucket_snapshot()
    idx.insert(b)
    idx.remove_last()
    assert idx.segments == [a] and idx.bucket_snapshot() == snap
    with pytest.raises(IndexError):
        CrossingIndex(Box(3, 3, 3)).remove_last()


def test_knight_segments_use_at_most_six_buckets():
    box = Box(5, 5, 5)
    counts = set()
    for c in box.cells():
        for d in knight_moves(box, c):
            counts.add(len(bucket_keys(seg(c, d))))
    assert counts == {6}
    for o in knight_offsets():
        lo_hi = [(min(0, v), max(0, v)) for v in o]
        assert len(list(product(*(range(a, b + 1) for a, b in lo_hi)))) == 6


def test_every_segment_filed_under_its_whole_bbox():
    idx = CrossingIndex(Box(4, 4, 4))
    s = seg((0, 3, 1), (2, 2, 1))
    sid = idx.insert(s)
    snap = idx.bucket_snapshot()
    for key in product(range(0, 3), range(2, 4), range(1, 2)):
        assert sid in snap[key]


def _random_knight_segment(rng, box):
    cells = list(box.cells())
    while True:
        c = rng.choice(cells)
        moves = knight_moves(box, c)
        if moves:
            return seg(c, rng.choice(moves))


def test_stack_discipline_against_shadow_list():
    rng = random.Random(11)
    box = Box(4, 4, 4)
    for _ in range(100):
        idx, shadow = CrossingIndex(box), []
        for _ in range(rng.randint(1, 30)):
            if shadow and rng.random() < 0.4:
                idx.remove_last()
                shadow.pop()
            else:
                s = _random_knight_segment(rng, box)
                assert idx.insert(s) == len(shadow)
                shadow.append(s)
        assert idx.segments == shadow


def test_agrees_with_naive_scan_on_random_sequences():
    rng = random.Random(5)
    box = Box(4, 4, 4)
    queries = 0
    for _ in range(1000):
        idx, shadow = CrossingIndex(box), []
        for _ in range(rng.randint(1, 12)):
            if shadow and rng.random() < 0.3:
                idx.remove_last()
                shadow.pop()
            else:
                s = _random_knight_segment(rng, box)
                idx.insert(s)
                shadow.append(s)
        cand = _random_knight_segment(rng, box)
        allowed = rng.choice([None, cand.a])
        naive = any(naive_conflict((s.a, s.b), (cand.a, cand.b), allowed) for s in shadow)
        assert idx.conflicts(cand, allowed) == naive
        assert idx.conflicts(cand, allowed) == any(segments_conflict(s, cand, allowed) for s in shadow)
        queries += 1
    assert queries == 1000
