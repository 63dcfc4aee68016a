"""Brackets, Jones-like polynomials, extreme coefficients and identity checks.

Brackets are polynomials in ``A``; a state contributes
``A^(a-b) * delta^|s|_t`` with ``delta = -A^2 - A^-2`` to the bucket of its
multicurve signature (noncontractible circles contribute no factor).  The
J-polynomials are stored in ``q = A^2``; the reported variable is ``t = q^2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .certify import DiagramCertificate, certify
from .diagram import LinkDiagram
from .laurent import DELTA_A, LaurentPolynomial, extract_coefficients, format_t_degree
from .state_engine import (DEFAULT_STATE_CAP, EMPTY_SIGNATURE, nonbigon_faces_merged_by,
                           resolve_state, state_sum)
from .state_graphs import twist_regions

REPORT_VERSION = "report-1"
V8 = 3.66386                    # printed precision
V8_PRECISE = 3.663862376708876  # volume of the regular ideal octahedron

NOT_VERIFIED = "hypotheses not verified"
NEEDS_GENUS = "not applicable: genus >= 1 required"
SIGNATURE_NOTE = "signature-keyed, possibly coarser than isotopy"


def signature_to_json(sig) -> dict:
    k, classes, seps = sig
    return {
        "noncontractible": k,
        "classes": [list(c) for c in classes],
        "separation": [{"separating": s, "side_chis": list(ch)} for s, ch in seps],
    }


def signature_label(sig) -> str:
    if sig == EMPTY_SIGNATURE:
        return "0"
    k, classes, seps = sig
    parts = []
    for c in classes:
        parts.append("(" + ",".join(map(str, c)) + ")")
    sep = ["sep" + str(tuple(ch)) if s else "nonsep" for s, ch in seps]
    return f"X[{k}: {' '.join(parts)}; {' '.join(sep)}]"


@dataclass(frozen=True)
class BracketDecomposition:
    by_signature: dict
    writhe: int
    crossings: int

    @property
    def total(self) -> LaurentPolynomial:
        out = LaurentPolynomial()
        for p in self.by_signature.values():
            out = out + p
        return out

    @property
    def empty(self) -> LaurentPolynomial:
        return self.by_signature.get(EMPTY_SIGNATURE, LaurentPolynomial())


def bracket_from_tally(tally: dict, c: int, writhe: int) -> BracketDecomposition:
    powers = [LaurentPolynomial.one()]
    out = {}
    for sig in sorted(tally):
        acc: dict[int, int] = {}
        for (b, nt), n in tally[sig].items():
            while len(powers) <= nt:
                powers.append(powers[-1] * DELTA_A)
            for e, coef in powers[nt].scale(c - 2 * b):
                acc[e] = acc.get(e, 0) + n * coef
        out[sig] = LaurentPolynomial(acc)
    return BracketDecomposition(out, writhe, c)


def compute_bracket(d: LinkDiagram, cap: int = DEFAULT_STATE_CAP, workers: int = 1,
                    backend: str = "kernel") -> BracketDecomposition:
    tally = state_sum(d, cap=cap, workers=workers, backend=backend)
    return bracket_from_tally(tally, d.c, d.writhe if d.c else 0)


def normalize_J(bracket: LaurentPolynomial, writhe: int) -> LaurentPolynomial:
    """``(-1)^w A^(-3w) <D>`` rewritten in ``q = A^2``."""
    sign = -1 if writhe % 2 else 1
    return bracket.scale(-3 * writhe, sign).compress(2)


def compute_J(decomp: BracketDecomposition) -> dict:
    return {sig: normalize_J(p, decomp.writhe) for sig, p in decomp.by_signature.items()}


@dataclass(frozen=True)
class CoefficientReport:
    m: Fraction
    n: Fraction
    a_m: int
    a_m1: int
    b_n1: int
    b_n: int
    per_bucket: dict

    def to_json(self) -> dict:
        return {
            "m": format_t_degree(self.m),
            "n": format_t_degree(self.n),
            "a_m": self.a_m,
            "a_{m-1}": self.a_m1,
            "b_{n+1}": self.b_n1,
            "b_n": self.b_n,
            "|a_m|": abs(self.a_m),
            "|a_{m-1}|": abs(self.a_m1),
            "|b_{n+1}|": abs(self.b_n1),
            "|b_n|": abs(self.b_n),
        }


def coefficient_report(js: dict) -> CoefficientReport:
    nonzero = {sig: p for sig, p in js.items() if p}
    if not nonzero:
        raise AssertionError("every bucket of the state sum vanished")
    m = Fraction(max(p.degree for p in nonzero.values()), 2)
    n = Fraction(min(p.min_degree for p in nonzero.values()), 2)
    totals = [0, 0, 0, 0]
    per = {}
    for sig, p in nonzero.items():
        co = extract_coefficients(p, m, n)
        per[sig] = co
        totals = [x + y for x, y in zip(totals, co)]
    return CoefficientReport(m, n, *totals, per_bucket=per)


@dataclass(frozen=True)
class Check:
    name: str
    statement: str
    lhs: int
    rhs: int
    status: str          # "verified", "failed", NOT_VERIFIED or NEEDS_GENUS

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    @property
    def gated(self) -> bool:
        return self.status not in ("verified", "failed")

    def to_json(self) -> dict:
        return {"statement": self.statement, "lhs": self.lhs, "rhs": self.rhs,
                "holds": self.holds, "status": self.status}

    def render(self) -> str:
        mark = "✓" if self.holds else "✗"
        tail = "" if self.status in ("verified", "failed") else f"  [{self.status}; observed {mark}]"
        if not tail:
            tail = f"  {mark}"
        return f"{self.name}: {self.statement}  ({self.lhs} vs {self.rhs}){tail}"


def _check(name, statement, lhs, rhs, gate):
    status = gate or ("verified" if lhs == rhs else "failed")
    return Check(name, statement, lhs, rhs, status)


@dataclass(frozen=True)
class TheoremReport:
    chi_F: int
    genus: int
    c: int
    e_prime_A: int
    e_prime_B: int
    s_A: int
    s_B: int
    s_A_t: int
    s_B_t: int
    nonbigon_B: int       # |s'_B|
    nonbigon_A: int       # the A-side mirror |s'_A|
    t_F: int
    checks: tuple
    hypotheses_failed: tuple

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def any_failed(self) -> bool:
        return any(c.status == "failed" for c in self.checks)

    @property
    def any_gated(self) -> bool:
        return any(c.gated for c in self.checks)

    def to_json(self) -> dict:
        return {
            "chi_F": self.chi_F,
            "genus": self.genus,
            "e'_A": self.e_prime_A,
            "e'_B": self.e_prime_B,
            "|s_A|": self.s_A,
            "|s_B|": self.s_B,
            "|s_A|_t": self.s_A_t,
            "|s_B|_t": self.s_B_t,
            "|s'_B|": self.nonbigon_B,
            "|s'_A|": self.nonbigon_A,
            "t_F": self.t_F,
            "hypotheses_failed": list(self.hypotheses_failed),
            "checks": {c.name: c.to_json() for c in self.checks},
        }


CHECK_GROUPS = {
    "lemma31": ("lemma31_A", "lemma31_B"),
    "lemma32": ("lemma32_A", "lemma32_B"),
    "thm33": ("thm33", "twist_cross_check"),
}


def verify_identities(d: LinkDiagram, cert: DiagramCertificate, coeffs: CoefficientReport) -> TheoremReport:
    tw = twist_regions(d)
    chi = d.euler_characteristic
    if d.c:
        sa = resolve_state(d, 0)
        sb = resolve_state(d, (1 << d.c) - 1)
        nb_B = nonbigon_faces_merged_by(d, 0)
        nb_A = nonbigon_faces_merged_by(d, 1)
    else:
        sa = sb = resolve_state(d, 0)
        nb_B = nb_A = 0
    am1, bn1 = abs(coeffs.a_m1), abs(coeffs.b_n1)
    failed = tuple(cert.failed_hypotheses())
    gate = NOT_VERIFIED if failed else (NEEDS_GENUS if d.genus < 1 else None)
    ea, eb = tw.e_prime_A, tw.e_prime_B
    checks = (
        _check("lemma31_A", "|a_m| = 1", abs(coeffs.a_m), 1, gate),
        _check("lemma31_B", "|b_n| = 1", abs(coeffs.b_n), 1, gate),
        _check("lemma32_A", "|a_{m-1}| = e'_A - |s_A|_t", am1, ea - sa.contractible_count, gate),
        _check("lemma32_B", "|b_{n+1}| = e'_B - |s_B|_t", bn1, eb - sb.contractible_count, gate),
        _check("thm33", "|a_{m-1}| + |b_{n+1}| = t_F - chi(F)", am1 + bn1, tw.t_F - chi, gate),
        _check("twist_cross_check", "t_F = e'_A + e'_B - c", tw.t_F, ea + eb - d.c, gate),
        _check("euler_char_A", "chi(F) - |s'_B| = -|a_{m-1}|", chi - nb_B, -am1, gate),
        _check("euler_char_B", "chi(F) - |s'_A| = -|b_{n+1}|", chi - nb_A, -bn1, gate),
    )
    return TheoremReport(chi, d.genus, d.c, ea, eb, sa.circle_count, sb.circle_count,
                         sa.contractible_count, sb.contractible_count, nb_B, nb_A,
                         tw.t_F, checks, failed)


@dataclass(frozen=True)
class GutsVolume:
    chi_M: Fraction
    chi_boundary_M: Fraction
    guts_A: Fraction
    guts_B: Fraction
    bound: float
    bound_precise: float
    conditional: bool

    def to_json(self) -> dict:
        def num(x):
            x = Fraction(x)
            return int(x) if x.denominator == 1 else float(x)
        return {
            "chi_M": num(self.chi_M),
            "chi_boundary_M": num(self.chi_boundary_M),
            "chi_guts_A": num(self.guts_A),
            "chi_guts_B": num(self.guts_B),
            "volume_lower_bound": round(self.bound, 10),
            "volume_lower_bound_precise_v8": round(self.bound_precise, 10),
            "v8": V8,
            "v8_precise": V8_PRECISE,
            "label": ("conditional on WGA + representativity hypotheses"
                      if self.conditional else "hypotheses certified"),
        }


def guts_and_volume(coeffs: CoefficientReport | None, chi_M, chi_boundary_M,
                    cert: DiagramCertificate | None = None) -> GutsVolume:
    if coeffs is None:
        raise ValueError("a coefficient report is required")
    chi_M = Fraction(chi_M)
    chi_dM = Fraction(chi_boundary_M)
    am1, bn1 = abs(coeffs.a_m1), abs(coeffs.b_n1)
    top = max(am1, bn1)
    certified = (cert is not None and cert.wga and cert.reduced.ok
                 and cert.twist_reduced_heuristic.ok and cert.proxy_certifies_r_above_4)
    return GutsVolume(
        chi_M, chi_dM,
        -am1 + chi_M / 2,
        -bn1 + chi_M / 2,
        V8 * top - float(chi_dM) / 2,
        V8_PRECISE * top - float(chi_dM) / 2,
        not certified,
    )


@dataclass
class Analysis:
    diagram: LinkDiagram
    certificate: DiagramCertificate
    decomposition: BracketDecomposition
    J: dict
    coefficients: CoefficientReport
    theorems: TheoremReport
    guts: GutsVolume | None = None

    def to_json(self) -> dict:
        d = self.diagram
        out = {
            "version": REPORT_VERSION,
            "diagram": {"crossings": d.c, "genus": d.genus, "chi_F": d.euler_characteristic,
                        "components": d.component_count, "writhe": d.writhe if d.c else 0},
            "certificate": self.certificate.to_json(),
            "bracket": {
                "grouping": SIGNATURE_NOTE,
                "buckets": [
                    {"signature": signature_to_json(sig),
                     "bracket_A": p.to_json(),
                     "J_t": self.J[sig].render_t()}
                    for sig, p in self.decomposition.by_signature.items()
                ],
                "total_A": self.decomposition.total.to_json(),
            },
            "coefficients": self.coefficients.to_json(),
            "theorems": self.theorems.to_json(),
        }
        if self.guts is not None:
            out["guts_and_volume"] = self.guts.to_json()
        return out


def analyze(d: LinkDiagram, *, cap: int = DEFAULT_STATE_CAP, workers: int = 1,
            chi_M=None, chi_boundary_M=None, backend: str = "kernel",
            cert: DiagramCertificate | None = None) -> Analysis:
    cert = cert or certify(d)
    dec = compute_bracket(d, cap=cap, workers=workers, backend=backend)
    js = compute_J(dec)
    co = coefficient_report(js)
    th = verify_identities(d, cert, co)
    gv = None
    if chi_M is not None and chi_boundary_M is not None:
        gv = guts_and_volume(co, chi_M, chi_boundary_M, cert)
    return Analysis(d, cert, dec, js, co, th, gv)
