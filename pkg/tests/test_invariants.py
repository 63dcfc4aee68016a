from fractions import Fraction

import pytest

from surflink.certify import certify
from surflink.generators import classical, genus2_grid, perturb, random_planar_alternating, weave
from surflink.invariants import (NEEDS_GENUS, NOT_VERIFIED, V8, analyze, coefficient_report,
                                 compute_bracket, compute_J, guts_and_volume, normalize_J)
from surflink.laurent import DELTA_A, LaurentPolynomial

from oracles import classical_bracket, pd_from_diagram


def test_trefoil_matches_oracle_times_delta():
    d = classical("trefoil")
    pd, _ = pd_from_diagram(d)
    assert compute_bracket(d).total == DELTA_A * LaurentPolynomial(classical_bracket(pd))


def test_trefoil_single_bucket_and_J():
    d = classical("trefoil")
    dec = compute_bracket(d)
    assert list(dec.by_signature) == [(0, (), ())]
    js = compute_J(dec)
    # J relates to the classical Jones polynomial by the factor -t^(1/2) - t^(-1/2)
    jones = LaurentPolynomial({-2: 1, -6: 1, -8: -1})      # in q = t^(1/2): t^-1 + t^-3 - t^-4
    assert js[(0, (), ())].invert_variable() == jones * LaurentPolynomial({1: -1, -1: -1})


def test_unknot_crossingless():
    from surflink.diagram import parse_diagram
    d = parse_diagram({"version": "sld-1", "crossings": [], "pairings": [],
                       "orientations": [{"component": 0, "forward_half_edges": []}]})
    assert compute_bracket(d).total == DELTA_A


def test_zero_writhe_J_is_substitution():
    d = classical("figure8")
    assert d.writhe == 0
    dec = compute_bracket(d)
    assert normalize_J(dec.total, 0) == dec.total.compress(2)


def test_weave22_coefficients_and_theorem():
    an = analyze(weave(2, 2), chi_M=0, chi_boundary_M=0)
    co, th = an.coefficients, an.theorems
    assert (abs(co.a_m), abs(co.a_m1), abs(co.b_n1), abs(co.b_n)) == (1, 2, 2, 1)
    assert (th.t_F, th.chi_F, th.e_prime_A, th.s_A_t) == (4, 0, 4, 2)
    assert all(c.status == "verified" for c in th.checks)
    assert len(an.decomposition.by_signature) >= 2
    g = an.guts
    assert g.guts_A == g.guts_B == -2
    assert abs(g.bound - 7.32772) < 1e-4
    assert g.conditional


def test_single_bucket_report_is_its_own():
    d = classical("figure8")
    js = compute_J(compute_bracket(d))
    (p,) = js.values()
    co = coefficient_report(js)
    assert co.m == Fraction(p.degree, 2) and co.n == Fraction(p.min_degree, 2)


def test_gating_messages():
    tre = analyze(classical("trefoil"))
    assert tre.theorems.check("thm33").status == NEEDS_GENUS
    flipped = analyze(perturb(weave(2, 4), "flip_one_crossing"))
    assert all(c.status == NOT_VERIFIED for c in flipped.theorems.checks)


@pytest.mark.parametrize("d", [weave(2, 3), weave(3, 4), genus2_grid(2, 1),
                               classical("trefoil"), random_planar_alternating(5)], ids=repr)
def test_mirror_symmetry(d):
    a, b = analyze(d), analyze(d.mirror())
    assert compute_bracket(d.mirror()).total == compute_bracket(d).total.invert_variable()
    ca, cb = a.coefficients, b.coefficients
    assert (ca.m, ca.n) == (-cb.n, -cb.m)
    assert (abs(ca.a_m1), abs(ca.b_n1)) == (abs(cb.b_n1), abs(cb.a_m1))
    ga = guts_and_volume(ca, 0, 0)
    gb = guts_and_volume(cb, 0, 0)
    assert (ga.guts_A, ga.guts_B) == (gb.guts_B, gb.guts_A)


def test_guts_and_volume_edge_cases():
    an = analyze(weave(2, 2))
    with pytest.raises(ValueError):
        guts_and_volume(None, 0, 0)
    g = guts_and_volume(an.coefficients, -2, 4)
    assert g.guts_A == -3 and g.bound == pytest.approx(2 * V8 - 2)


def test_zero_coefficients_give_zero_bound():
    from surflink.invariants import CoefficientReport
    co = CoefficientReport(Fraction(1), Fraction(0), 1, 0, 0, 1, {})
    assert guts_and_volume(co, 0, 0).bound == 0


def test_report_json_is_deterministic():
    import json
    a = json.dumps(analyze(weave(2, 4), workers=1).to_json(), sort_keys=True)
    b = json.dumps(analyze(weave(2, 4), workers=4).to_json(), sort_keys=True)
    assert a == b
    assert json.loads(a)["version"] == "report-1"


def test_cert_reused():
    d = weave(2, 2)
    cert = certify(d)
    assert analyze(d, cert=cert).certificate is cert
