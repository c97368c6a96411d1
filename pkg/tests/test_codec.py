import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from knightpath3d.codec import (
    DocumentError,
    LayerParseError,
    SCHEMA,
    TourDocument,
    UnverifiedTourError,
    decode_document,
    encode_document,
    export_polyline,
    layer_label,
    parse_layers,
    read_tour,
    render_layers,
)
from knightpath3d.lattice import Box
from knightpath3d.search import SearchConfig, solve_heuristic
from knightpath3d.tour import Tour, ViolationKind, verify

CYCLE = Tour(Box(2, 2, 3), [(0, 0, 0), (1, 0, 2), (1, 1, 0), (0, 1, 2)], closed=True)


def _blocks(text):
    lines = text.splitlines()
    header, body = lines[0], [ln for ln in lines[1:] if ln]
    return header, body


def test_render_223_cycle():
    header, body = _blocks(render_layers(CYCLE))
    assert header == "box 2x2x3 closed"
    assert body == ["A", "0 .", ". 2", "B", ". .", ". .", "C", ". 1", "3 ."]


def test_render_single_cell():
    text = render_layers(Tour(Box(1, 1, 1), [(0, 0, 0)]))
    assert text == "box 1x1x1 open\nA\n0\n"


def test_render_rejects_invalid_tour():
    bad = Tour(Box(3, 3, 3), [(0, 0, 0), (1, 1, 1)])
    with pytest.raises(UnverifiedTourError):
        render_layers(bad)
    with pytest.raises(UnverifiedTourError):
        export_polyline(bad)


def test_layer_labels():
    assert [layer_label(i) for i in (0, 1, 25, 26, 27)] == ["A", "B", "Z", "AA", "AB"]


def _random_certified_tours(n):
    rng = random.Random(99)
    shapes = [(2, 3, 3), (3, 3, 3), (2, 4, 4), (3, 3, 4), (3, 4, 5), (4, 4, 4), (1, 5, 6)]
    tours = []
    for i in range(n):
        dims = list(rng.choice(shapes))
        rng.shuffle(dims)
        closed = i % 4 == 3
        r = solve_heuristic(Box(*dims), SearchConfig(seed=i, restarts=1, closed=closed))
        tours.append(r.best)
    return tours


def test_layer_round_trip_on_100_certified_tours():
    for tour in _random_certified_tours(100):
        assert verify(tour).ok
        text = render_layers(tour)
        nums = sorted(int(tok) for tok in text.split() if tok.isdigit())
        assert nums == list(range(len(tour.cells)))
        assert parse_layers(text) == tour


def test_parse_errors_name_the_entry():
    text = render_layers(CYCLE).replace(". 1", "2 1")
    with pytest.raises(LayerParseError) as err:
        parse_layers(text)
    assert err.value.kind == "RepeatedIndex" and err.value.entry == 2
    assert "RepeatedIndex(2)" in str(err.value)

    five = "box 1x2x3 open\nA\n5\n.\n\nB\n5\n.\n\nC\n.\n.\n"
    with pytest.raises(LayerParseError, match=r"RepeatedIndex\(5\)"):
        parse_layers(five)

    gap = render_layers(CYCLE).replace("3 .", "4 .")
    with pytest.raises(LayerParseError, match=r"MissingIndex\(3\)"):
        parse_layers(gap)

    short = "\n".join(render_layers(CYCLE).splitlines()[:-1])
    with pytest.raises(LayerParseError) as err:
        parse_layers(short)
    assert err.value.kind == "DimsMismatch"

    wide = render_layers(CYCLE).replace(". 2", ". 2 .")
    with pytest.raises(LayerParseError, match="DimsMismatch"):
        parse_layers(wide)
    for bad in ("", "tour 2x2x3 open", "box 2x2 open"):
        with pytest.raises(LayerParseError, match="BadHeader"):
            parse_layers(bad)


def test_parse_is_syntactic_only():
    text = "box 3x3x1 open\nA\n0 1 .\n. . .\n. . .\n"
    tour = parse_layers(text)
    assert tour.cells == ((0, 0, 0), (1, 0, 0))
    assert ViolationKind.NOT_KNIGHT_STEP in verify(tour).kinds()


def test_document_round_trip_and_metadata():
    meta = {"seed": 42, "mode": "heuristic", "generator": "python-random-mt19937", "elapsed": 1.5}
    text = encode_document(CYCLE, meta)
    doc = decode_document(text)
    assert doc.tour == CYCLE and doc.metadata == meta and doc.schema == SCHEMA
    assert encode_document(doc) == text
    assert json.loads(text)["metadata"] == meta


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(st.text(max_size=8), st.one_of(st.integers(), st.text(max_size=8), st.booleans()), max_size=4))
def test_metadata_survives_byte_for_byte(meta):
    text = encode_document(CYCLE, meta)
    again = encode_document(decode_document(text))
    assert again == text


def test_document_errors():
    good = json.loads(encode_document(CYCLE))
    for mutate in (
        lambda d: d.update(schema="knightpath3d.tour/99"),
        lambda d: d["cells"].__setitem__(0, [0, 0]),
        lambda d: d["cells"].__setitem__(0, [0, 0, "x"]),
        lambda d: d.update(box=[2, 2]),
        lambda d: d.update(box=[0, 2, 2]),
        lambda d: d.update(closed="yes"),
        lambda d: d.update(metadata=[1]),
    ):
        d = json.loads(json.dumps(good))
        mutate(d)
        with pytest.raises(DocumentError):
            decode_document(json.dumps(d))
    with pytest.raises(DocumentError):
        decode_document("not json")


def test_empty_closed_document_round_trip():
    t = Tour(Box(2, 2, 2), [], closed=True)
    assert decode_document(encode_document(t)).tour == t


def test_polyline_counts():
    opened = Tour(Box(3, 3, 3), [(0, 0, 0), (1, 2, 0), (2, 0, 0)])
    for tour in (opened, CYCLE):
        lines = export_polyline(tour).splitlines()
        verts = [ln for ln in lines if ln.startswith("v ")]
        edges = [ln for ln in lines if ln.startswith("l ")]
        assert len(verts) == len(tour.cells)
        assert len(edges) == tour.length
    assert export_polyline(CYCLE).splitlines()[-1] == "l 4 1"


def test_read_tour_detects_format():
    assert read_tour(encode_document(CYCLE)).tour == CYCLE
    assert read_tour(render_layers(CYCLE)).tour == CYCLE
    assert isinstance(read_tour(render_layers(CYCLE)), TourDocument)
