"""Hypothesis checks for surface diagrams.

Curves used here are transverse curves in the sense of
:mod:`surflink.surface_map`: cyclic sequences of edge crossings and vertex
passages joined by chords through faces.  Every check is an exhaustive
enumeration over a finite family of such curves.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from .diagram import LinkDiagram
from .state_graphs import twist_partition
from .surface_map import (CurveError, EdgePoint, EmbeddedCurve, VertexPoint,
                          classify_curve)

DEFAULT_PROXY_BOUND = 5


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: object = None
    note: str = ""

    def to_json(self):
        out = {"ok": self.ok}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note:
            out["note"] = self.note
        return out


def is_alternating(d: LinkDiagram) -> bool:
    if d.c == 0:
        return True
    m = d.map
    return all(d.is_over(h) != d.is_over(m.opposite[h]) for h in m.edges)


def checkerboard_coloring(d: LinkDiagram) -> dict[int, str] | None:
    """Two-coloring of the faces, or ``None``.

    Faces are labelled "A" or "B"; A-faces are those bounded by the circles
    of the all-A state, i.e. the faces whose corners the A-smoothing hugs.
    On non-alternating inputs the label of face 0 fixes the alignment.
    """
    if d.c == 0:
        return {}
    m = d.map
    color = [-1] * m.face_count
    color[0] = 0
    queue = deque([0])
    while queue:
        f = queue.popleft()
        for h in m.faces[f]:
            g = m.face_of[m.opposite[h]]
            if color[g] == -1:
                color[g] = 1 - color[f]
                queue.append(g)
            elif color[g] == color[f]:
                return None
    label0 = d.corner_label(m.faces[0][0])
    other = "B" if label0 == "A" else "A"
    return {f: (label0 if c == 0 else other) for f, c in enumerate(color)}


def is_checkerboard_colorable(d: LinkDiagram) -> bool:
    return checkerboard_coloring(d) is not None


def _disk_sides(cut):
    return [s for s in cut.sides if s.is_disk]


def two_point_curves(d: LinkDiagram):
    """Simple closed curves meeting the diagram in exactly two edge points.

    The two points may lie on one edge (then both orders along the edge are
    tried); such curves encircle a crossing or cut off part of a face pair.
    """
    m = d.map
    seen = set()
    for g1 in range(m.n):
        f1, f2 = m.face_of[g1], m.face_of[m.opposite[g1]]
        for g2 in m.faces[f2]:
            if m.face_of[m.opposite[g2]] != f1:
                continue
            same = m.edge(g2) == m.edge(g1)
            for r1, r2 in (((0, 1), (1, 0)) if same else ((0, 0),)):
                pts = (EdgePoint(g1, r1), EdgePoint(g2, r2))
                rev = (EdgePoint(m.opposite[g2], r2), EdgePoint(m.opposite[g1], r1))
                key = min(pts, pts[::-1], rev, rev[::-1], key=repr)
                if key in seen:
                    continue
                seen.add(key)
                curve = EmbeddedCurve(pts)
                try:
                    cut = classify_curve(m, curve)
                except CurveError:
                    continue
                yield curve, cut


def is_weakly_prime(d: LinkDiagram) -> Verdict:
    """No disk meets the diagram twice except around a single arc.

    On positive genus every disk side must be free of crossings; on the
    sphere it suffices that one of the two sides is.
    """
    if d.c == 0:
        return Verdict(True)
    for curve, cut in two_point_curves(d):
        if not cut.separating:
            continue
        disks = _disk_sides(cut)
        if not disks:
            continue
        if d.genus > 0:
            bad = any(s.vertices for s in disks)
        else:
            bad = all(s.vertices for s in cut.sides)
        if bad:
            return Verdict(False, {"curve": curve.to_json(), "sides": [s.chi for s in cut.sides]})
    return Verdict(True)


@dataclass(frozen=True)
class NugatoryReport:
    crossing: int
    loop: EmbeddedCurve
    separating: bool
    removable: bool

    def to_json(self):
        return {"crossing": self.crossing, "separating": self.separating,
                "removable": self.removable, "loop": self.loop.to_json()}


def nugatory_loops(d: LinkDiagram) -> list[NugatoryReport]:
    """Loops meeting the diagram only at one crossing, classified."""
    out = []
    if d.c == 0:
        return out
    m = d.map
    for v in range(d.c):
        for i in (0, 1):
            a, b = 4 * v + i, 4 * v + i + 2
            if m.face_of[a] != m.face_of[b]:
                continue
            loop = EmbeddedCurve((VertexPoint(a, b),))
            cut = classify_curve(m, loop)
            out.append(NugatoryReport(v, loop, cut.separating, cut.contractible))
    return out


def find_removable_nugatory(d: LinkDiagram) -> Verdict:
    """``ok`` means reduced: no crossing has a disk-bounding nugatory loop."""
    loops = nugatory_loops(d)
    for rep in loops:
        if rep.removable:
            return Verdict(False, rep.to_json())
    nonsep = sorted({r.crossing for r in loops if not r.separating})
    note = f"loops through crossings {nonsep} are nonseparating" if nonsep else ""
    return Verdict(True, note=note)


def _walks(d: LinkDiagram, k: int):
    """Closed non-backtracking dual walks of length ``k`` (as dart lists)."""
    m = d.map
    path = []

    def rec(start_face, face):
        if len(path) == k:
            if face == start_face and (k == 1 or path[0] != m.opposite[path[-1]]):
                yield tuple(path)
            return
        for g in m.faces[face]:
            if path and g == m.opposite[path[-1]]:
                continue
            path.append(g)
            yield from rec(start_face, m.face_of[m.opposite[g]])
            path.pop()

    for f in range(m.face_count):
        for g in m.faces[f]:
            # fix the starting dart as the smallest in the walk up to rotation
            path.append(g)
            for w in rec(f, m.face_of[m.opposite[g]]):
                if min(w) == w[0]:
                    yield w
            path.pop()


def _rankings(m, walk):
    """All rank assignments making the walk's repeated edges distinct."""
    slots: dict[int, list[int]] = {}
    for i, g in enumerate(walk):
        slots.setdefault(m.edge(g), []).append(i)
    groups = list(slots.values())
    for perms in itertools.product(*(itertools.permutations(range(len(s))) for s in groups)):
        rank = [0] * len(walk)
        for s, p in zip(groups, perms):
            for i, r in zip(s, p):
                rank[i] = r
        yield rank


def representativity_proxy(d: LinkDiagram, bound: int = DEFAULT_PROXY_BOUND) -> int | None:
    """Fewest diagram crossings of a noncontractible simple closed curve.

    Returns ``None`` when no such curve meets the diagram fewer than
    ``bound`` times.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    if d.c == 0 or d.genus == 0:
        return None
    m = d.map
    for k in range(1, bound):
        for walk in _walks(d, k):
            for rank in _rankings(m, walk):
                curve = EmbeddedCurve(tuple(EdgePoint(g, r) for g, r in zip(walk, rank)))
                try:
                    cut = classify_curve(m, curve)
                except CurveError:
                    continue
                if not cut.contractible:
                    return k
    return None


def two_crossing_curves(d: LinkDiagram):
    """Simple closed curves through two crossings (via opposite corners)."""
    m = d.map
    seen = set()
    for a1 in range(m.n):
        b1 = 4 * (a1 // 4) + (a1 % 4 + 2) % 4
        for a2 in m.faces[m.face_of[b1]]:
            if a2 // 4 == a1 // 4:
                continue
            b2 = 4 * (a2 // 4) + (a2 % 4 + 2) % 4
            if m.face_of[b2] != m.face_of[a1]:
                continue
            key = min((a1, a2), (a2, a1), (b2, b1), (b1, b2))
            if key in seen:
                continue
            seen.add(key)
            curve = EmbeddedCurve((VertexPoint(a1, b1), VertexPoint(a2, b2)))
            try:
                cut = classify_curve(m, curve)
            except CurveError:
                continue
            yield curve, cut


def twist_reduced_heuristic(d: LinkDiagram) -> Verdict:
    """Every disk-bounding two-crossing curve stays inside one twist region."""
    if d.c == 0:
        return Verdict(True)
    region = twist_partition(d).class_of()
    for curve, cut in two_crossing_curves(d):
        if not cut.contractible:
            continue
        v1, v2 = curve.points[0].enter // 4, curve.points[1].enter // 4
        if region[v1] != region[v2]:
            return Verdict(False, {"crossings": [v1, v2], "curve": curve.to_json()})
    return Verdict(True)


@dataclass(frozen=True)
class DiagramCertificate:
    crossings: int
    genus: int
    alternating: bool
    checkerboard_colorable: bool
    coloring: dict | None
    weakly_prime: Verdict
    reduced: Verdict
    representativity_proxy: int | None
    proxy_bound: int
    twist_reduced_heuristic: Verdict

    @property
    def proxy_ok(self) -> bool:
        """Proxy at least 4 (``None`` means no curve below the bound)."""
        return self.representativity_proxy is None or self.representativity_proxy >= 4

    @property
    def proxy_certifies_r_above_4(self) -> bool:
        return self.representativity_proxy is None and self.proxy_bound >= 5 and self.genus > 0

    @property
    def wga(self) -> bool:
        return (self.alternating and self.weakly_prime.ok and self.crossings >= 1
                and self.checkerboard_colorable and self.proxy_ok)

    @property
    def coefficient_hypotheses(self) -> bool:
        """Hypotheses shared by the first and second coefficient statements."""
        return (self.crossings >= 1 and self.alternating and self.checkerboard_colorable
                and self.reduced.ok and self.twist_reduced_heuristic.ok)

    def failed_hypotheses(self) -> list[str]:
        out = []
        if self.crossings < 1:
            out.append("at least one crossing")
        if not self.alternating:
            out.append("alternating")
        if not self.checkerboard_colorable:
            out.append("checkerboard colorable")
        if not self.reduced.ok:
            out.append("reduced")
        if not self.twist_reduced_heuristic.ok:
            out.append("twist-reduced")
        return out

    def to_json(self) -> dict:
        proxy = self.representativity_proxy
        return {
            "crossings": self.crossings,
            "genus": self.genus,
            "alternating": self.alternating,
            "checkerboard_colorable": self.checkerboard_colorable,
            "weakly_prime": self.weakly_prime.to_json(),
            "reduced": self.reduced.to_json(),
            "representativity_proxy": proxy if proxy is not None else f">={self.proxy_bound}",
            "twist_reduced_heuristic": self.twist_reduced_heuristic.to_json(),
            "wga": self.wga,
        }


def certify(d: LinkDiagram, bound: int = DEFAULT_PROXY_BOUND) -> DiagramCertificate:
    coloring = checkerboard_coloring(d)
    return DiagramCertificate(
        crossings=d.c,
        genus=d.genus,
        alternating=is_alternating(d),
        checkerboard_colorable=coloring is not None,
        coloring=coloring,
        weakly_prime=is_weakly_prime(d),
        reduced=find_removable_nugatory(d),
        representativity_proxy=representativity_proxy(d, bound),
        proxy_bound=bound,
        twist_reduced_heuristic=twist_reduced_heuristic(d),
    )
