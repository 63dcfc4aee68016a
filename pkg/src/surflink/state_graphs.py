"""State graphs, parallel edge classes and twist regions.

The state graph of a state has one vertex per state circle and one edge per
crossing, drawn across the smoothing channel.  Circles together with these
edges cut ``F`` back into the faces of the diagram, so the faces of the
skeleton are the diagram faces: face ``f`` is bounded by the edges whose
channel corner lies in ``f`` and by circle arcs along its other corners.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import LinkDiagram
from .state_engine import KauffmanState, StateSummary, resolve_state
from .unionfind import UnionFind


@dataclass(frozen=True)
class StateGraph:
    bits: int
    vertex_count: int
    edges: tuple[tuple[int, int], ...]      # crossing v -> (circle, circle)
    arcs: tuple[tuple[tuple[int, int], tuple[int, int]], ...]   # the two smoothing arcs at v
    face_edges: tuple[tuple[int, ...], ...]  # diagram face -> crossings on its boundary

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def loops(self) -> tuple[int, ...]:
        return tuple(v for v, (a, b) in enumerate(self.edges) if a == b)

    def to_json(self) -> dict:
        return {
            "vertices": self.vertex_count,
            "edges": [list(e) for e in self.edges],
            "loops": list(self.loops),
        }


@dataclass(frozen=True)
class Partition:
    classes: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.classes)

    def class_of(self) -> dict[int, int]:
        return {x: i for i, cls in enumerate(self.classes) for x in cls}

    def to_json(self) -> list[list[int]]:
        return [list(c) for c in self.classes]


def _partition(n: int, pairs) -> Partition:
    uf = UnionFind(n)
    for a, b in pairs:
        uf.union(a, b)
    groups = sorted(tuple(sorted(g)) for g in uf.groups().values())
    return Partition(tuple(groups))


def build_state_graph(d: LinkDiagram, s: KauffmanState | int | StateSummary) -> StateGraph:
    if isinstance(s, StateSummary):
        summary = s
    else:
        summary = resolve_state(d, s)
    bits = summary.state.bits
    circle_of = {}
    for k, ci in enumerate(summary.circles):
        for h in ci.darts:
            circle_of[h] = k
            circle_of[d.map.opposite[h]] = k
    edges, arcs = [], []
    channel = set()
    for v in range(d.c):
        bit = (bits >> v) & 1
        s0 = d.over[v] + bit
        a1 = (4 * v + (s0 + 1) % 4, 4 * v + (s0 + 2) % 4)
        a2 = (4 * v + (s0 + 3) % 4, 4 * v + s0 % 4)
        edges.append((circle_of[a1[0]], circle_of[a2[0]]))
        arcs.append((a1, a2))
        channel.update(d.channel(v, bit))
    face_edges = tuple(tuple(h // 4 for h in f if h in channel) for f in d.map.faces)
    return StateGraph(bits, len(summary.circles), tuple(edges), tuple(arcs), face_edges)


def parallel_classes(g: StateGraph) -> Partition:
    """Transitive closure of cobounding a skeleton face with exactly two edges."""
    pairs = [(f[0], f[1]) for f in g.face_edges if len(f) == 2 and f[0] != f[1]]
    return _partition(g.edge_count, pairs)


def reduced_edges(g: StateGraph) -> tuple[tuple[int, int], ...]:
    """Edges of the reduced graph: one representative per parallel class."""
    return tuple(g.edges[cls[0]] for cls in parallel_classes(g).classes)


@dataclass(frozen=True)
class TwistRegions:
    partition: Partition
    e_prime_A: int
    e_prime_B: int
    c: int

    @property
    def t_F(self) -> int:
        return self.partition.count

    @property
    def cross_check(self) -> int:
        return self.e_prime_A + self.e_prime_B - self.c

    @property
    def agrees(self) -> bool:
        return self.t_F == self.cross_check

    def to_json(self) -> dict:
        return {
            "t_F": self.t_F,
            "regions": self.partition.to_json(),
            "e_prime_A": self.e_prime_A,
            "e_prime_B": self.e_prime_B,
            "e_prime_A_plus_e_prime_B_minus_c": self.cross_check,
            "agrees": self.agrees,
        }


def twist_partition(d: LinkDiagram) -> Partition:
    """Crossings chained together through bigon faces."""
    m = d.map
    if d.c == 0:
        return Partition(())
    pairs = [(m.vertex_of[m.faces[f][0]], m.vertex_of[m.faces[f][1]]) for f in d.bigon_faces]
    return _partition(d.c, pairs)


def twist_regions(d: LinkDiagram) -> TwistRegions:
    part = twist_partition(d)
    if d.c == 0:
        return TwistRegions(part, 0, 0, 0)
    ea = parallel_classes(build_state_graph(d, 0)).count
    eb = parallel_classes(build_state_graph(d, (1 << d.c) - 1)).count
    return TwistRegions(part, ea, eb, d.c)
