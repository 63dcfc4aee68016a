import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surflink.diagram import DiagramError, dump_sld, load_diagram, parse_diagram
from surflink.generators import classical, genus2_grid, random_diagram, weave
from surflink.invariants import compute_bracket

FIXTURES = {
    "weave22": lambda: weave(2, 2),
    "weave34": lambda: weave(3, 4),
    "trefoil": lambda: classical("trefoil"),
    "hopf": lambda: classical("hopf"),
    "genus2": lambda: genus2_grid(2, 1),
}


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_round_trip(name):
    d = FIXTURES[name]()
    e = parse_diagram(dump_sld(d))
    assert e.map.opposite == d.map.opposite
    assert e.over == d.over and e.forward == d.forward
    assert e.genus == d.genus and e.writhe == d.writhe
    assert dump_sld(e) == dump_sld(d)


def test_genus_and_counts():
    d = weave(2, 2)
    assert (d.c, d.genus, d.euler_characteristic) == (4, 1, 0)
    assert classical("trefoil").genus == 0
    assert genus2_grid(2, 1).genus == 2


def test_trefoil_sample_writhe():
    assert classical("trefoil").writhe == -3
    assert classical("trefoil").mirror().writhe == 3


def test_reverse_keeps_writhe():
    for name in ("trefoil", "figure8", "hopf"):
        d = classical(name)
        assert d.reverse().writhe == d.writhe


def test_partner_is_involution():
    d = weave(3, 4)
    for bit in (0, 1):
        for h in range(4 * d.c):
            p = d.partner(h, bit)
            assert p // 4 == h // 4 and p != h
            assert d.partner(p, bit) == h


def test_corner_labels_alternate_around_crossing():
    d = weave(2, 4)
    for v in range(d.c):
        labels = [d.corner_label(4 * v + i) for i in range(4)]
        assert labels.count("A") == 2 and labels[0] != labels[1]


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_relabel_invariance(seed):
    rng = random.Random(seed)
    d = random_diagram(seed % 50, rng.randint(5, 8), 1)
    order = list(range(d.c))
    rng.shuffle(order)
    shifts = [rng.randrange(4) for _ in range(d.c)]
    e = d.relabel(order, shifts)
    assert e.genus == d.genus and e.writhe == d.writhe
    assert compute_bracket(e).total == compute_bracket(d).total


def _doc():
    return json.loads(dump_sld(weave(2, 2)))


def test_rejects_unknown_version():
    doc = _doc()
    doc["version"] = "sld-2"
    with pytest.raises(DiagramError, match="version"):
        parse_diagram(doc)


def test_rejects_duplicate_ids():
    doc = _doc()
    doc["crossings"][1]["id"] = doc["crossings"][0]["id"]
    with pytest.raises(DiagramError, match=r"crossings\[1\]\.id"):
        parse_diagram(doc)
    doc = _doc()
    doc["crossings"][1]["rotation"][0] = doc["crossings"][0]["rotation"][0]
    with pytest.raises(DiagramError, match="duplicate half-edge"):
        parse_diagram(doc)


def test_rejects_bad_degree_and_over():
    doc = _doc()
    doc["crossings"][0]["rotation"] = doc["crossings"][0]["rotation"][:3]
    with pytest.raises(DiagramError, match="degree"):
        parse_diagram(doc)
    doc = _doc()
    rot = doc["crossings"][0]["rotation"]
    doc["crossings"][0]["over"] = [rot[0], rot[1]]
    with pytest.raises(DiagramError, match="opposite"):
        parse_diagram(doc)


def test_rejects_unpaired_and_unknown_fields():
    doc = _doc()
    doc["pairings"].pop()
    with pytest.raises(DiagramError, match="unpaired"):
        parse_diagram(doc)
    doc = _doc()
    doc["extra"] = 1
    with pytest.raises(DiagramError, match="unknown fields"):
        parse_diagram(doc)


def test_rejects_genus_mismatch():
    doc = _doc()
    doc["expected_genus"] = 0
    with pytest.raises(DiagramError, match="expected_genus"):
        parse_diagram(doc)


def test_json_error_has_line_and_column():
    with pytest.raises(DiagramError, match=r"line 2, column"):
        parse_diagram('{"version": "sld-1",\n  "crossings": [,]}')


def test_crossingless_unknot():
    d = parse_diagram({"version": "sld-1", "crossings": [], "pairings": [],
                       "orientations": [{"component": 0, "forward_half_edges": []}]})
    assert d.c == 0 and d.free_loops == 1 and d.genus == 0
    assert parse_diagram(dump_sld(d)).free_loops == 1


def test_load_from_path_and_stdin(tmp_path, monkeypatch):
    import io
    p = tmp_path / "w.sld"
    p.write_text(dump_sld(weave(2, 2)))
    assert load_diagram(str(p)).c == 4
    monkeypatch.setattr("sys.stdin", io.StringIO(p.read_text()))
    assert load_diagram("-").c == 4
