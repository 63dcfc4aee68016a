import random

import pytest

from surflink.diagram import dump_sld, parse_diagram
from surflink.generators import (CLASSICAL_NAMES, GeneratorError, classical, genus2_grid,
                                 parse_corpus, perturb, random_certified, random_diagram,
                                 random_map, random_planar_alternating, weave, PERTURBATIONS)


def test_weave_shapes():
    for p, q in [(2, 2), (2, 3), (3, 4), (4, 6)]:
        d = weave(p, q)
        assert d.c == p * q and d.genus == 1
        assert len(d.map.faces) == p * q
    with pytest.raises(GeneratorError):
        weave(3, 3)


def test_genus2_grids():
    assert genus2_grid(2, 1).c == 8
    assert genus2_grid(2, 2).c == 16
    assert genus2_grid(2, 2).genus == 2


def test_classical_catalogue():
    counts = {name: classical(name).c for name in CLASSICAL_NAMES}
    assert counts == {"trefoil": 3, "figure8": 4, "hopf": 2, "composite_trefoils": 6, "kink": 1}
    assert all(classical(n).genus == 0 for n in CLASSICAL_NAMES)
    with pytest.raises(GeneratorError):
        classical("unknot9")


def test_random_is_deterministic():
    a = random_diagram(7, 10, 2)
    b = random_diagram(7, 10, 2)
    assert dump_sld(a) == dump_sld(b)
    assert a.genus == 2
    assert [dump_sld(d) for _, d in random_certified(3)] == [dump_sld(d) for _, d in random_certified(3)]


def test_random_map_edges_and_genus():
    for seed in range(20):
        rng = random.Random(seed)
        g = rng.choice([0, 1, 2])
        m = random_map(rng, 12, g)
        assert m.edge_count == 12 and m.genus == g


def test_random_planar_alternating():
    for seed in range(20):
        d = random_planar_alternating(seed, 8)
        assert d.genus == 0 and 3 <= d.c <= 8


def test_random_certified_bounds():
    for name, d in random_certified(8):
        assert d.genus in (1, 2) and 6 <= d.c <= 16


@pytest.mark.parametrize("kind", PERTURBATIONS)
def test_perturbations_round_trip(kind):
    d = perturb(weave(2, 4), kind, seed=3)
    assert parse_diagram(dump_sld(d)).c == d.c
    with pytest.raises(GeneratorError):
        perturb(d, "nope")


def test_kink_adds_crossing():
    d = weave(2, 2)
    e = perturb(d, "add_kink")
    assert e.c == d.c + 1 and e.genus == d.genus


def test_parse_corpus():
    names = [n for n, _ in parse_corpus("weave:2..4x2..4")]
    assert len(names) == 8 and "weave(3,3)" not in names
    assert [n for n, _ in parse_corpus("genus2:minimal")] == ["genus2_grid(2,2)"]
    assert len(parse_corpus("classical:all")) == len(CLASSICAL_NAMES)
    assert len(parse_corpus("random:0..2:8:1")) == 3
    with pytest.raises(GeneratorError):
        parse_corpus("torus:3")
    with pytest.raises(GeneratorError):
        parse_corpus("weave:2xq")
