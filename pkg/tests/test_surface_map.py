import pytest

from surflink.generators import weave, genus2_grid, map_from_rotation
from surflink.surface_map import (CombinatorialMap, CurveError, EdgePoint, EmbeddedCurve,
                                  MapError, classify_curve, homology_class,
                                  normalize_class)

from oracles import homology_oracle


def torus_one_vertex():
    # one vertex, two loops a, b with rotation a+ b+ a- b-
    return CombinatorialMap([1, 0, 3, 2], [[0, 2, 1, 3]])


def test_euler_characteristic_and_genus():
    m = torus_one_vertex()
    assert (m.vertex_count, m.edge_count, m.face_count) == (1, 2, 1)
    assert m.genus == 1
    planar = CombinatorialMap([1, 0, 3, 2], [[0, 1, 2, 3]])
    assert planar.genus == 0 and planar.face_count == 3


def test_faces_partition_darts():
    m = weave(2, 4).map
    seen = sorted(h for f in m.faces for h in f)
    assert seen == list(range(m.n))
    for i, f in enumerate(m.faces):
        assert all(m.face_of[h] == i for h in f)
        for h in f:
            assert m.face_step(h) in f


def test_invalid_maps():
    with pytest.raises(MapError):
        CombinatorialMap([0], [[0]])
    with pytest.raises(MapError):
        CombinatorialMap([1, 0, 3, 2], [[0, 1], [2, 3]])     # disconnected
    with pytest.raises(MapError):
        CombinatorialMap([1, 2, 0], [[0, 1, 2]])
    with pytest.raises(MapError):
        CombinatorialMap([1, 0], [[0]])


def test_homology_rank():
    assert weave(2, 2).map.homology_basis.rank == 2
    assert genus2_grid(2, 1).map.homology_basis.rank == 4


def test_loop_classes_on_one_vertex_torus():
    m = torus_one_vertex()
    hb = m.homology_basis
    a, b = hb.chain_class([0]), hb.chain_class([2])
    assert a != (0, 0) and b != (0, 0) and normalize_class(a) != normalize_class(b)
    assert hb.chain_class([0, 1]) == (0, 0)
    # face boundary is null
    assert hb.chain_class(m.faces[0]) == (0, 0)


def test_chain_class_agrees_with_oracle_on_faces_and_cycles():
    m = weave(2, 3).map
    hb = m.homology_basis
    for f in m.faces:
        assert hb.chain_class(f) == tuple([0] * hb.rank)
        assert homology_oracle(m, f)


def test_classify_nonseparating_and_separating():
    m = torus_one_vertex()
    # a curve crossing edge a once is dual to b: nonseparating
    cut = classify_curve(m, EmbeddedCurve((EdgePoint(0),)))
    assert not cut.separating and not cut.contractible
    assert cut.kind == "nonseparating"


def test_classify_small_disk_around_vertex():
    m = weave(2, 2).map
    # crossing the edge of h lands in the corner before h, so walk clockwise
    pts = []
    h = m.vertices[0][0]
    for _ in range(4):
        pts.append(EdgePoint(h))
        h = m.sigma_inv[h]
    cut = classify_curve(m, EmbeddedCurve(tuple(pts)))
    assert cut.separating and cut.contractible
    assert sorted(s.chi for s in cut.sides) == [-1, 1]
    disk = next(s for s in cut.sides if s.is_disk)
    assert disk.vertices == frozenset({0})


def test_inconsistent_curve_is_rejected():
    m = weave(2, 2).map
    h = m.vertices[0][0]
    with pytest.raises(CurveError):
        classify_curve(m, EmbeddedCurve((EdgePoint(h), EdgePoint(m.sigma[h]))))


def test_homology_class_of_transverse_curve():
    m = torus_one_vertex()
    c = EmbeddedCurve((EdgePoint(0),))
    cls = homology_class(m, c)
    assert cls != (0, 0)


def test_map_from_rotation_round_trip():
    m = map_from_rotation([[0, 5], [1, 2], [3, 4]])
    assert m.genus == 0 and m.face_count == 2
