import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surflink.generators import classical, genus2_grid, random_diagram, weave
from surflink.state_engine import (EMPTY_SIGNATURE, KauffmanState, StateCapError, check_cap,
                                   enumerate_states, gray, gray_blocks, resolve_state,
                                   single_change_delta, state_sum)

from oracles import homology_oracle

SMALL = [weave(2, 2), weave(2, 3), classical("trefoil"), classical("hopf"),
         genus2_grid(2, 1), random_diagram(3, 7, 1)]


def _key(s):
    return (s.state.bits, tuple(sorted((ci.darts, ci.contractible, ci.separating, ci.side_chis,
                                        ci.homology) for ci in s.circles)))


@pytest.mark.parametrize("d", SMALL, ids=lambda d: repr(d))
def test_gray_incremental_matches_scratch(d):
    seen = set()
    for s in enumerate_states(d):
        assert _key(s) == _key(resolve_state(d, s.state))
        seen.add(s.state.bits)
    assert len(seen) == 1 << d.c


def test_gray_code_properties():
    for i in range(1, 256):
        assert bin(gray(i) ^ gray(i - 1)).count("1") == 1
    blocks = gray_blocks(5, 2)
    assert blocks[0][0] == 0 and blocks[-1][1] == 32
    assert all(a[1] == b[0] for a, b in zip(blocks, blocks[1:]))


def test_state_cap():
    check_cap(28)
    with pytest.raises(StateCapError, match="exceeds state cap 28"):
        check_cap(29)
    with pytest.raises(StateCapError):
        state_sum(weave(2, 2), cap=3)


@pytest.mark.parametrize("d", [weave(2, 4), weave(3, 4), genus2_grid(2, 1)], ids=repr)
def test_partitioned_sums_equal_serial(d):
    base = state_sum(d, workers=1)
    for w in (2, 4, 8):
        assert state_sum(d, workers=w) == base
    assert state_sum(d, partitions=3) == base


@pytest.mark.parametrize("d", SMALL, ids=repr)
def test_kernel_matches_python_backend(d):
    assert state_sum(d, backend="kernel") == state_sum(d, backend="python")


def test_region_euler_characteristics_sum_to_surface():
    for d in SMALL:
        chi = d.euler_characteristic
        for s in enumerate_states(d):
            assert s.region_chi_total == chi


def test_contractible_circles_are_null_homologous():
    for d in (weave(2, 3), genus2_grid(2, 1)):
        for s in enumerate_states(d):
            for ci in s.circles:
                null = homology_oracle(d.map, ci.darts)
                if ci.contractible:
                    assert null
                if not null:
                    assert not ci.contractible and any(ci.homology)


def test_genus_one_contractible_iff_null():
    # on the torus a simple closed curve is contractible iff null-homologous
    d = random_diagram(28, 9, 1)
    for s in enumerate_states(d):
        for ci in s.circles:
            assert ci.contractible == homology_oracle(d.map, ci.darts)


def test_all_A_plus_all_B_circles_count_faces():
    for d in (weave(2, 2), weave(3, 4), genus2_grid(2, 1), classical("figure8")):
        sa = resolve_state(d, 0)
        sb = resolve_state(d, (1 << d.c) - 1)
        assert sa.circle_count + sb.circle_count == d.c + d.euler_characteristic


def test_weave22_one_flip_states():
    d = weave(2, 2)
    sa = resolve_state(d, 0)
    assert sa.contractible_count == 2 and not sa.noncontractible
    rec, nxt = single_change_delta(d, sa, 0)
    assert rec.kind == "merge" and rec.delta_t == -1
    assert rec.inverse().inverse() == rec
    back, again = single_change_delta(d, nxt, 0)
    assert back == rec.inverse()
    assert again.state == sa.state


def test_weave22_has_noncontractible_bucket():
    tally = state_sum(weave(2, 2))
    assert EMPTY_SIGNATURE in tally and len(tally) >= 2
    assert any(sig[0] == 2 for sig in tally)
    assert sum(n for cells in tally.values() for n in cells.values()) == 16


def test_crossingless_state_sum():
    from surflink.diagram import parse_diagram
    d = parse_diagram({"version": "sld-1", "crossings": [], "pairings": [],
                       "orientations": [{"component": 0, "forward_half_edges": []},
                                        {"component": 1, "forward_half_edges": []}]})
    assert state_sum(d) == {EMPTY_SIGNATURE: {(0, 2): 1}}


@given(st.integers(0, 2 ** 12 - 1), st.integers(0, 11))
@settings(max_examples=60, deadline=None)
def test_flip_then_flip_back(bits, v):
    d = weave(3, 4)
    s = KauffmanState(bits, d.c)
    assert s.flip(v).flip(v) == s
    prev = resolve_state(d, s)
    rec, nxt = single_change_delta(d, prev, v)
    rec2, back = single_change_delta(d, nxt, v)
    assert rec2 == rec.inverse()
    assert back.contractible_count == prev.contractible_count
    assert abs(rec.delta_t) <= 2
    assert {"merge": 1, "split": 1, "reroute": 0}[rec.kind] == abs(len(rec.before) - len(rec.after))
