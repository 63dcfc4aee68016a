import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surflink.generators import classical, genus2_grid, random_certified, weave
from surflink.state_graphs import (build_state_graph, parallel_classes, reduced_edges,
                                   twist_partition, twist_regions)


def test_weave22_state_graph():
    d = weave(2, 2)
    g = build_state_graph(d, 0)
    assert g.vertex_count == 2 and g.edge_count == 4
    assert g.loops == ()
    assert parallel_classes(g).count == 4
    tw = twist_regions(d)
    assert (tw.e_prime_A, tw.e_prime_B, tw.t_F) == (4, 4, 4)
    assert tw.agrees


@pytest.mark.parametrize("p,q", [(2, 3), (3, 4), (4, 4)])
def test_weaves_have_no_bigons(p, q):
    d = weave(p, q)
    assert d.bigon_faces == ()
    assert twist_regions(d).t_F == d.c


def test_trefoil_is_one_twist_region():
    tw = twist_regions(classical("trefoil"))
    assert tw.t_F == 1
    assert sorted((tw.e_prime_A, tw.e_prime_B)) == [1, 3]
    assert tw.partition.to_json() == [[0, 1, 2]]


def test_reduced_edges_one_per_class():
    d = classical("trefoil")
    for bits in (0, 7):
        g = build_state_graph(d, bits)
        assert len(reduced_edges(g)) == parallel_classes(g).count


def test_state_graph_edges_join_circles_at_each_crossing():
    d = genus2_grid(2, 1)
    g = build_state_graph(d, 0)
    for v, (a, b) in enumerate(g.edges):
        assert 0 <= a < g.vertex_count and 0 <= b < g.vertex_count
        (x1, _), (x2, _) = g.arcs[v]
        assert x1 // 4 == v and x2 // 4 == v
    assert sum(len(f) for f in g.face_edges) == 2 * d.c


def test_mirror_swaps_e_primes():
    for d in (classical("trefoil"), classical("figure8"), weave(2, 4)):
        a, b = twist_regions(d), twist_regions(d.mirror())
        assert (a.e_prime_A, a.e_prime_B) == (b.e_prime_B, b.e_prime_A)
        assert a.t_F == b.t_F


def test_twist_cross_check_on_random_certified():
    for _, d in random_certified(10):
        assert twist_regions(d).agrees


@given(st.integers(0, 1000))
@settings(max_examples=20, deadline=None)
def test_t_F_is_relabeling_invariant(seed):
    rng = random.Random(seed)
    d = classical(rng.choice(["trefoil", "figure8", "composite_trefoils"]))
    order = list(range(d.c))
    rng.shuffle(order)
    e = d.relabel(order, [rng.randrange(4) for _ in range(d.c)])
    assert twist_regions(e).t_F == twist_regions(d).t_F
    assert twist_partition(e).count == twist_partition(d).count


def test_json_shapes():
    tw = twist_regions(weave(2, 2))
    j = tw.to_json()
    assert j["t_F"] == 4 and j["agrees"] is True
    g = build_state_graph(weave(2, 2), 0).to_json()
    assert g["vertices"] == 2 and len(g["edges"]) == 4
