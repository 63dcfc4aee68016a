"""Combinatorial maps (rotation systems) on closed orientable surfaces.

Half-edges ("darts") are the integers ``0..n-1``.  ``opposite`` pairs the two
darts of an edge and each vertex lists its darts in counterclockwise order.
The surface is the one the rotation system induces, so every face is a disk.

Corner convention: the corner of dart ``h`` is the wedge between ``h`` and
the next dart counterclockwise, ``sigma(h)``.  It lies to the left of ``h``
when ``h`` is walked away from its vertex, and ``face_of[h]`` is the face
containing it.  Faces are the orbits of ``h -> sigma^-1(opposite(h))``.
"""

from __future__ import annotations

import bisect
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Union

from .unionfind import UnionFind


class MapError(ValueError):
    pass


class CurveError(ValueError):
    pass


class CombinatorialMap:
    def __init__(self, opposite: Sequence[int], vertices: Sequence[Sequence[int]]):
        n = len(opposite)
        if n == 0:
            raise MapError("a map needs at least one edge")
        opposite = tuple(int(x) for x in opposite)
        for h, o in enumerate(opposite):
            if not 0 <= o < n:
                raise MapError(f"opposite[{h}] = {o} is out of range")
            if o == h:
                raise MapError(f"dart {h} is paired with itself")
            if opposite[o] != h:
                raise MapError(f"opposite is not an involution at dart {h}")

        sigma = [-1] * n
        vertex_of = [-1] * n
        verts = []
        for v, cyc in enumerate(vertices):
            cyc = tuple(int(x) for x in cyc)
            if not cyc:
                raise MapError(f"vertex {v} has no darts")
            for i, h in enumerate(cyc):
                if not 0 <= h < n:
                    raise MapError(f"vertex {v} lists unknown dart {h}")
                if vertex_of[h] != -1:
                    raise MapError(f"dart {h} appears in more than one vertex cycle")
                vertex_of[h] = v
                sigma[h] = cyc[(i + 1) % len(cyc)]
            verts.append(cyc)
        missing = [h for h in range(n) if vertex_of[h] == -1]
        if missing:
            raise MapError(f"darts {missing} belong to no vertex")

        self.n = n
        self.opposite = opposite
        self.vertices = tuple(verts)
        self.sigma = tuple(sigma)
        sigma_inv = [0] * n
        for h, s in enumerate(sigma):
            sigma_inv[s] = h
        self.sigma_inv = tuple(sigma_inv)
        self.vertex_of = tuple(vertex_of)

        uf = UnionFind(len(verts))
        for h in range(n):
            uf.union(vertex_of[h], vertex_of[opposite[h]])
        if len(uf.groups()) != 1:
            raise MapError("the underlying graph is disconnected")

        self.faces, self.face_of, self.face_index = _trace(self)

    # -- counts ----------------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return self.n // 2

    @property
    def face_count(self) -> int:
        return len(self.faces)

    @property
    def euler_characteristic(self) -> int:
        return self.vertex_count - self.edge_count + self.face_count

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic) // 2

    def edge(self, h: int) -> int:
        """Canonical dart (the smaller one) of the edge through ``h``."""
        return min(h, self.opposite[h])

    @cached_property
    def edges(self) -> tuple[int, ...]:
        return tuple(h for h in range(self.n) if h < self.opposite[h])

    def face_step(self, h: int) -> int:
        return self.sigma_inv[self.opposite[h]]

    @cached_property
    def homology_basis(self) -> "HomologyBasis":
        return HomologyBasis(self)

    def __repr__(self):
        return (f"CombinatorialMap(V={self.vertex_count}, E={self.edge_count}, "
                f"F={self.face_count}, genus={self.genus})")


def _trace(m: CombinatorialMap):
    face_of = [-1] * m.n
    face_index = [-1] * m.n
    faces = []
    for start in range(m.n):
        if face_of[start] != -1:
            continue
        cyc = []
        h = start
        while face_of[h] == -1:
            face_of[h] = len(faces)
            face_index[h] = len(cyc)
            cyc.append(h)
            h = m.face_step(h)
        if h != start:
            raise MapError("face permutation is not a permutation")
        faces.append(tuple(cyc))
    return tuple(faces), tuple(face_of), tuple(face_index)


def trace_faces(m: CombinatorialMap) -> tuple[tuple[int, ...], ...]:
    """Face cycles of ``m``: orbits of ``h -> sigma^-1(opposite(h))``."""
    return m.faces


# -- curves ----------------------------------------------------------------

@dataclass(frozen=True)
class EdgePoint:
    """The curve crosses the edge of ``dart`` from ``face_of[dart]`` to the
    face on the other side.  ``rank`` orders several crossings of one edge,
    counted from the vertex of the edge's canonical dart."""
    dart: int
    rank: int = 0


@dataclass(frozen=True)
class VertexPoint:
    """The curve passes through a vertex, arriving through the corner of dart
    ``enter`` and leaving through the corner of dart ``exit``."""
    enter: int
    exit: int


CurvePoint = Union[EdgePoint, VertexPoint]


@dataclass(frozen=True)
class EmbeddedCurve:
    """Closed curve in general position: a cyclic sequence of points on the
    graph, joined by chords running through faces."""
    points: tuple[CurvePoint, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))

    @property
    def vertices_met(self) -> int:
        return sum(isinstance(p, VertexPoint) for p in self.points)

    @property
    def edges_met(self) -> int:
        return sum(isinstance(p, EdgePoint) for p in self.points)

    def to_json(self):
        out = []
        for p in self.points:
            if isinstance(p, EdgePoint):
                out.append({"edge_dart": p.dart, "rank": p.rank})
            else:
                out.append({"enter": p.enter, "exit": p.exit})
        return out


@dataclass(frozen=True)
class CutSide:
    chi: int
    vertices: frozenset
    segments: int

    @property
    def is_disk(self) -> bool:
        return self.chi == 1


@dataclass(frozen=True)
class CurveCut:
    """Result of cutting the surface along one simple closed curve."""
    sides: tuple[CutSide, ...]

    @property
    def separating(self) -> bool:
        return len(self.sides) == 2

    @property
    def side_chis(self) -> tuple[int, ...] | None:
        return tuple(sorted(s.chi for s in self.sides)) if self.separating else None

    @property
    def contractible(self) -> bool:
        return self.separating and any(s.is_disk for s in self.sides)

    @property
    def kind(self) -> str:
        if not self.separating:
            return "nonseparating"
        return f"separating{self.side_chis}"


@dataclass
class _Layout:
    """Port positions of a validated curve, per face."""
    chords: list            # (face, start_pos, end_pos)
    ports: dict             # face -> sorted positions
    partner: dict           # (face, pos) -> pos at the other end of its chord
    edge_ports: dict        # canonical dart -> number of ports on that edge
    curve_vertices: set


def _port_pos(m: CombinatorialMap, dart: int, rank: int, k: int):
    """Position of an edge port on the side of ``dart`` in ``face_of[dart]``."""
    along = rank if dart == m.edge(dart) else k - 1 - rank
    return (m.face_index[dart], 1 + along)


def _layout(m: CombinatorialMap, curve: EmbeddedCurve) -> _Layout:
    pts = curve.points
    if not pts:
        raise CurveError("a curve needs at least one point")
    ranks: dict[int, list[int]] = {}
    verts = set()
    for p in pts:
        if isinstance(p, EdgePoint):
            if not 0 <= p.dart < m.n:
                raise CurveError(f"unknown dart {p.dart}")
            ranks.setdefault(m.edge(p.dart), []).append(p.rank)
        elif isinstance(p, VertexPoint):
            if not (0 <= p.enter < m.n and 0 <= p.exit < m.n):
                raise CurveError("unknown corner dart")
            v = m.vertex_of[p.enter]
            if m.vertex_of[p.exit] != v:
                raise CurveError("enter and exit corners lie at different vertices")
            if p.enter == p.exit:
                raise CurveError("curve touches a vertex without passing through it")
            if v in verts:
                raise CurveError(f"curve passes vertex {v} twice")
            verts.add(v)
        else:
            raise CurveError(f"bad curve point {p!r}")
    for e, rs in ranks.items():
        if sorted(rs) != list(range(len(rs))):
            raise CurveError(f"crossing ranks on edge {e} must be 0..{len(rs) - 1}, got {rs}")
    counts = {e: len(rs) for e, rs in ranks.items()}

    def out_port(p):
        if isinstance(p, EdgePoint):
            o = m.opposite[p.dart]
            return m.face_of[o], _port_pos(m, o, p.rank, counts[m.edge(o)])
        return m.face_of[p.exit], (m.face_index[p.exit], 0)

    def in_port(p):
        if isinstance(p, EdgePoint):
            return m.face_of[p.dart], _port_pos(m, p.dart, p.rank, counts[m.edge(p.dart)])
        return m.face_of[p.enter], (m.face_index[p.enter], 0)

    chords = []
    partner = {}
    ports: dict[int, list] = {}
    for i, p in enumerate(pts):
        f, a = out_port(p)
        g, b = in_port(pts[(i + 1) % len(pts)])
        if f != g:
            raise CurveError(f"point {i} leaves into face {f} but point {i + 1} is entered from face {g}")
        for pos in (a, b):
            if (f, pos) in partner:
                raise CurveError("two chords share a port")
        partner[(f, a)] = b
        partner[(f, b)] = a
        ports.setdefault(f, []).extend((a, b))
        chords.append((f, a, b))
    for f in ports:
        ports[f].sort()

    # chords sharing a face must not interleave
    by_face: dict[int, list] = {}
    for f, a, b in chords:
        by_face.setdefault(f, []).append((a, b))
    for f, cs in by_face.items():
        if len(cs) < 2:
            continue
        idx = {pos: i for i, pos in enumerate(ports[f])}
        spans = [tuple(sorted((idx[a], idx[b]))) for a, b in cs]
        for i in range(len(spans)):
            x0, x1 = spans[i]
            for j in range(i + 1, len(spans)):
                y0, y1 = spans[j]
                if (x0 < y0 < x1) != (x0 < y1 < x1):
                    raise CurveError(f"curve is not simple: chords cross in face {f}")
    return _Layout(chords, ports, partner, counts, verts)


def validate_curve(m: CombinatorialMap, curve: EmbeddedCurve) -> None:
    """Raise :class:`CurveError` unless ``curve`` is a simple closed curve."""
    _layout(m, curve)


def classify_curve(m: CombinatorialMap, curve: EmbeddedCurve) -> CurveCut:
    """Cut ``m``'s surface along ``curve`` and report the pieces.

    Each face is split by its chords into polygonal pieces; pieces are glued
    back along uncut edge segments.  The Euler characteristic of a side counts
    its pieces, minus its open edge segments, plus its vertices off the curve.
    """
    lay = _layout(m, curve)

    # arcs of each face boundary between consecutive ports, grouped into pieces
    piece_base: dict[int, int] = {}
    total = 0
    arc_piece: dict[int, list[int]] = {}
    for f in range(m.face_count):
        ps = lay.ports.get(f)
        if not ps:
            piece_base[f] = total
            arc_piece[f] = [total]
            total += 1
            continue
        k = len(ps)
        where = {pos: i for i, pos in enumerate(ps)}
        label = [-1] * k
        for start in range(k):
            if label[start] != -1:
                continue
            i = start
            while label[i] == -1:
                label[i] = total
                nxt = ps[(i + 1) % k]
                i = where[lay.partner[(f, nxt)]]
            total += 1
        arc_piece[f] = label

    def locate(f, probe):
        ps = lay.ports.get(f)
        if not ps:
            return arc_piece[f][0]
        i = bisect.bisect_left(ps, probe) - 1
        return arc_piece[f][i % len(ps)]

    uf = UnionFind(total)
    seg_piece = []
    for h in m.edges:
        o = m.opposite[h]
        k = lay.edge_ports.get(h, 0)
        for s in range(k + 1):
            a = locate(m.face_of[h], (m.face_index[h], s + 0.5))
            b = locate(m.face_of[o], (m.face_index[o], k - s + 0.5))
            uf.union(a, b)
            seg_piece.append(a)
    vert_piece = {}
    for v, cyc in enumerate(m.vertices):
        if v in lay.curve_vertices:
            continue
        d = cyc[0]
        vert_piece[v] = locate(m.face_of[d], (m.face_index[d], 0))

    roots = {}
    for p in range(total):
        roots.setdefault(uf.find(p), len(roots))
    if len(roots) > 2:
        raise CurveError("cutting along one curve produced more than two pieces")
    chi = [0] * len(roots)
    segs = [0] * len(roots)
    verts = [set() for _ in roots]
    for p in range(total):
        chi[roots[uf.find(p)]] += 1
    for p in seg_piece:
        r = roots[uf.find(p)]
        chi[r] -= 1
        segs[r] += 1
    for v, p in vert_piece.items():
        r = roots[uf.find(p)]
        chi[r] += 1
        verts[r].add(v)
    if sum(chi) != m.euler_characteristic:
        raise AssertionError("Euler characteristic bookkeeping failed")
    return CurveCut(tuple(CutSide(chi[i], frozenset(verts[i]), segs[i]) for i in range(len(roots))))


# -- homology --------------------------------------------------------------

class HomologyBasis:
    """Integer coordinates on H_1 of the surface.

    A tree-cotree decomposition (breadth first, lowest index first) leaves
    ``2g`` edges; each closes up, through the dual tree, to a dual cycle.
    The coordinates of a closed edge-walk are its algebraic intersection
    numbers with these dual cycles.
    """

    def __init__(self, m: CombinatorialMap):
        self.map = m
        tree = set()
        seen = [False] * m.vertex_count
        seen[0] = True
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for h in sorted(m.vertices[v]):
                w = m.vertex_of[m.opposite[h]]
                if not seen[w]:
                    seen[w] = True
                    tree.add(m.edge(h))
                    queue.append(w)

        parent = [None] * m.face_count  # (parent face, dart crossed parent -> child)
        fseen = [False] * m.face_count
        fseen[0] = True
        cotree = set()
        queue = deque([0])
        while queue:
            f = queue.popleft()
            for h in sorted(m.faces[f]):
                e = m.edge(h)
                if e in tree or e in cotree:
                    continue
                g = m.face_of[m.opposite[h]]
                if not fseen[g]:
                    fseen[g] = True
                    cotree.add(e)
                    parent[g] = (f, h)
                    queue.append(g)

        self.tree = frozenset(tree)
        self.cotree = frozenset(cotree)
        self.generators = tuple(e for e in m.edges if e not in tree and e not in cotree)
        if len(self.generators) != 2 * m.genus:
            raise AssertionError("tree-cotree left the wrong number of edges")

        def sign(dart):
            return 1 if dart == m.edge(dart) else -1

        def path_to_root(f):
            out = []
            while parent[f] is not None:
                out.append(f)
                f = parent[f][0]
            out.append(f)
            return out

        weights = []
        for e in self.generators:
            w = {e: 1}
            start, end = m.face_of[m.opposite[e]], m.face_of[e]
            up = path_to_root(start)
            down = path_to_root(end)
            common = set(up) & set(down)
            # walk start -> lca (child to parent), then lca -> end (parent to child)
            for f in up:
                if f in common:
                    break
                pf, d = parent[f]
                x = m.opposite[d]
                w[m.edge(x)] = w.get(m.edge(x), 0) + sign(x)
            tail = []
            for f in down:
                if f in common:
                    break
                tail.append(f)
            for f in reversed(tail):
                pf, d = parent[f]
                w[m.edge(d)] = w.get(m.edge(d), 0) + sign(d)
            weights.append(w)
        self.rank = len(self.generators)
        # contribution of walking each dart away from its vertex
        self.dart_weights = tuple(
            tuple(w.get(m.edge(h), 0) * sign(h) for w in weights) for h in range(m.n)
        )

    def chain_class(self, darts) -> tuple[int, ...]:
        """Class of a closed walk given by the darts it leaves along."""
        vec = [0] * self.rank
        for h in darts:
            for i, x in enumerate(self.dart_weights[h]):
                vec[i] += x
        return tuple(vec)

    def half_chain_class(self, halves: dict[int, int]) -> tuple[int, ...]:
        """Class of a closed chain of half-edges (vertex-to-midpoint segments)."""
        m = self.map
        vec = [0] * self.rank
        for h in m.edges:
            z = halves.get(h, 0)
            if halves.get(m.opposite[h], 0) != -z:
                raise CurveError("chain is not closed at an edge midpoint")
            if z:
                for i, x in enumerate(self.dart_weights[h]):
                    vec[i] += z * x
        return tuple(vec)


def normalize_class(vec: Sequence[int]) -> tuple[int, ...]:
    """Fix the sign of an unoriented class: first nonzero entry positive."""
    for x in vec:
        if x:
            return tuple(vec) if x > 0 else tuple(-y for y in vec)
    return tuple(vec)


def homology_class(m: CombinatorialMap, curve: EmbeddedCurve) -> tuple[int, ...]:
    """Homology class of an oriented transverse curve.

    Every chord is pushed onto the face boundary (forward along the face
    cycle) and every crossing point slid to its edge midpoint or vertex, which
    turns the curve into a closed chain of half-edges.
    """
    lay = _layout(m, curve)
    halves: dict[int, int] = {}

    def bump(h, c):
        halves[h] = halves.get(h, 0) + c

    for f, a, b in lay.chords:
        cyc = m.faces[f]
        L = len(cyc)
        # token 2j is the corner of cyc[j], token 2j+1 the midpoint of its side
        ta = 2 * a[0] + (0 if a[1] == 0 else 1)
        tb = 2 * b[0] + (0 if b[1] == 0 else 1)
        steps = (tb - ta) % (2 * L)
        if steps == 0 and b < a:
            steps = 2 * L
        t = ta
        for _ in range(steps):
            j = t // 2
            if t % 2 == 0:
                bump(cyc[j], 1)
            else:
                bump(m.opposite[cyc[j]], -1)
            t = (t + 1) % (2 * L)
    return m.homology_basis.half_chain_class(halves)
