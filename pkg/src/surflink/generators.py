"""Deterministic diagram constructions for test corpora.

Most diagrams are medial graphs of maps (their Tait graphs): every edge of a
map ``G`` becomes a crossing and the strands run around the corners of
``G``.  Medials are always alternating and checkerboard colorable, live on
the same surface as ``G``, and the faces of the medial are the vertices and
faces of ``G``.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass

from .diagram import DiagramError, LinkDiagram, default_forward
from .surface_map import CombinatorialMap, MapError

CLASSICAL_NAMES = ("trefoil", "figure8", "hopf", "composite_trefoils", "kink")


class GeneratorError(ValueError):
    pass


def medial(g: CombinatorialMap) -> LinkDiagram:
    """Alternating diagram whose Tait graph is ``g``.

    Edge ``k`` of ``g`` (canonical dart ``h``) becomes crossing ``k`` with
    rotation ``(oh-, h+, h-, oh+)``, where ``d+``/``d-`` is the strand near
    the tail of ``d`` on its left/right.  The overstrand is ``(h+, oh+)``,
    which makes the faces around vertices of ``g`` the B-faces.
    """
    edges = g.edges
    index = {e: k for k, e in enumerate(edges)}

    def dart(d: int, plus: bool) -> int:
        k = index[g.edge(d)]
        if d == edges[k]:
            return 4 * k + (1 if plus else 2)
        return 4 * k + (3 if plus else 0)

    c = len(edges)
    opp = [0] * (4 * c)
    for d in range(g.n):
        a, b = dart(d, True), dart(g.sigma[d], False)
        opp[a], opp[b] = b, a
    return LinkDiagram(opp, [1] * c, default_forward(opp))


def map_from_rotation(rotation: list[list[int]]) -> CombinatorialMap:
    """Map from per-vertex dart lists, where dart ``2k`` and ``2k+1`` form edge ``k``."""
    n = sum(len(r) for r in rotation)
    return CombinatorialMap([h ^ 1 for h in range(n)], rotation)


def planar_map(vertex_count: int, edges: list[tuple[int, int]], *, pick: int = 0) -> CombinatorialMap:
    """A genus-0 embedding of a small graph, found by trying rotations.

    ``pick`` selects among the planar embeddings in search order.
    """
    inc: list[list[int]] = [[] for _ in range(vertex_count)]
    for k, (a, b) in enumerate(edges):
        inc[a].append(2 * k)
        inc[b].append(2 * k + 1)
    choices = [[list((r[0],) + p) for p in itertools.permutations(r[1:])] if r else [[]] for r in inc]
    found = 0
    for rot in itertools.product(*choices):
        m = map_from_rotation([list(r) for r in rot])
        if m.genus == 0:
            if found == pick:
                return m
            found += 1
    raise GeneratorError("graph has no (further) planar embedding")


def _classical_map(name: str) -> CombinatorialMap:
    if name == "trefoil":
        return planar_map(3, [(0, 1), (1, 2), (2, 0)])
    if name == "hopf":
        return planar_map(2, [(0, 1), (0, 1)])
    if name == "figure8":
        return planar_map(3, [(0, 1), (0, 1), (1, 2), (2, 0)])
    if name == "composite_trefoils":
        return planar_map(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
    if name == "kink":
        return planar_map(2, [(0, 1)])
    raise GeneratorError(f"unknown classical diagram {name!r}; choose from {', '.join(CLASSICAL_NAMES)}")


def classical(name: str) -> LinkDiagram:
    """Hand-picked planar diagrams.  The trefoil is left-handed (writhe -3)."""
    d = medial(_classical_map(name))
    if name == "trefoil":
        d = d.mirror()
    return d


def non_twist_reduced() -> LinkDiagram:
    """Planar 6-crossing diagram with two crossings cobounding a disk but
    lying in different twist regions (Tait graph: two parallel edges
    separated by two paths of length two)."""
    edges = [(0, 1), (0, 2), (2, 1), (0, 1), (0, 3), (3, 1)]
    m = planar_map(4, edges)
    # rotation at vertex 0 must interleave the direct edges with the paths
    for pick in range(24):
        m = planar_map(4, edges, pick=pick)
        at0 = [h // 2 for h in m.vertices[0]]
        pos = {k: i for i, k in enumerate(at0)}
        if abs(pos[0] - pos[3]) == 2:
            return medial(m)
    raise AssertionError("no interleaved embedding found")


def weave(p: int, q: int) -> LinkDiagram:
    """Alternating square-grid diagram with ``p*q`` crossings on the torus.

    Crossings are the points of ``Z^2`` modulo a lattice of index ``p*q``
    made of even vectors, so that alternation is well defined; this forces
    ``p*q`` to be even.  The rotation at each crossing is E, N, W, S.
    """
    if p < 2 or q < 2:
        raise GeneratorError("weave needs p, q >= 2")
    if p % 2 == 0:
        basis = ((p, 0), (q % 2, q))
    elif q % 2 == 0:
        basis = ((p, 1), (0, q))
    else:
        raise GeneratorError(f"weave({p},{q}): an alternating square grid needs an even crossing count")
    (a, b), (e, f) = basis

    def reduce(x, y):
        # coordinates in the lattice basis, then fractional part
        det = a * f - b * e
        s = (x * f - y * e) // det
        t = (a * y - b * x) // det
        return x - s * a - t * e, y - s * b - t * f

    points = []
    index = {}
    for x in range(-2 * (p + q), 2 * (p + q)):
        for y in range(-2 * (p + q), 2 * (p + q)):
            r = reduce(x, y)
            if r not in index:
                index[r] = len(points)
                points.append(r)
    points.sort(key=lambda r: (r[1], r[0]))
    index = {r: i for i, r in enumerate(points)}
    if len(points) != p * q:
        raise AssertionError("lattice reduction failed")
    c = p * q
    opp = [0] * (4 * c)
    over = [0] * c
    for (x, y), v in index.items():
        east = index[reduce(x + 1, y)]
        north = index[reduce(x, y + 1)]
        opp[4 * v + 0], opp[4 * east + 2] = 4 * east + 2, 4 * v + 0
        opp[4 * v + 1], opp[4 * north + 3] = 4 * north + 3, 4 * v + 1
        over[v] = (x + y) % 2
    fwd = [h % 4 in (0, 1) for h in range(4 * c)]
    return LinkDiagram(opp, over, fwd)


def origami_grid_map(p: int, q: int) -> CombinatorialMap:
    """Square grid of two ``p x q`` tori cut along a slit and cross-glued.

    Squares are ``(sheet, x, y)``; going up from the top of column 0 enters
    the other sheet, which branches the double cover at two points and gives
    a genus-2 surface.  The returned map is the grid graph of the squares.
    """
    squares = [(s, x, y) for s in (0, 1) for x in range(p) for y in range(q)]
    sid = {sq: i for i, sq in enumerate(squares)}

    def right(sq):
        s, x, y = sq
        return (s, (x + 1) % p, y)

    def up(sq):
        s, x, y = sq
        if y == q - 1 and x == 0:
            return (1 - s, 0, 0)
        return (s, x, (y + 1) % q)

    n_sq = len(squares)
    # square i has sides 4i+0 bottom, +1 right, +2 top, +3 left, walked
    # counterclockwise; the side dart leaves the corner at its start
    side_opp = [0] * (4 * n_sq)
    for sq, i in sid.items():
        j = sid[right(sq)]
        side_opp[4 * i + 1], side_opp[4 * j + 3] = 4 * j + 3, 4 * i + 1
        k = sid[up(sq)]
        side_opp[4 * i + 2], side_opp[4 * k + 0] = 4 * k + 0, 4 * i + 2
    # the grid graph is the dual-free description: faces are the squares,
    # so darts are square sides and the face permutation is "next side"
    phi = [4 * (h // 4) + (h % 4 + 1) % 4 for h in range(4 * n_sq)]
    # sigma^-1(opp h) = phi(h)  =>  sigma(phi(h)) = opp h ... solve sigma
    sigma = [0] * (4 * n_sq)
    for h in range(4 * n_sq):
        sigma[phi[h]] = side_opp[h]
    seen = [False] * (4 * n_sq)
    verts = []
    for h in range(4 * n_sq):
        if seen[h]:
            continue
        cyc = []
        x = h
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = sigma[x]
        verts.append(cyc)
    return CombinatorialMap(side_opp, verts)


def genus2_grid(p: int = 2, q: int = 1) -> LinkDiagram:
    """Genus-2 alternating diagram: the medial of the slit double grid."""
    if p < 2 or q < 1:
        raise GeneratorError("genus2_grid needs p >= 2 and q >= 1")
    d = medial(origami_grid_map(p, q))
    if d.genus != 2:
        raise AssertionError("slit grid is not genus 2")
    return d


GENUS2_MINIMAL = (2, 2)


# -- random Tait maps -----------------------------------------------------

def rotation_lists(m: CombinatorialMap) -> list[list[int]]:
    """Rotation of ``m`` relabelled so that edge ``k`` is darts ``2k, 2k+1``."""
    new = {}
    for k, e in enumerate(m.edges):
        new[e], new[m.opposite[e]] = 2 * k, 2 * k + 1
    return [[new[h] for h in cyc] for cyc in m.vertices]


def random_map(rng: random.Random, edges: int, genus: int,
               start: CombinatorialMap | None = None) -> CombinatorialMap:
    """Random bridgeless map with the given edge count and genus.

    Grown from a triangle (or from ``start``) by subdividing edges, adding
    chords between distinct vertices of one face, and adding handles (an
    edge between corners of two different faces raises the genus by one).
    """
    if start is None:
        if edges < max(3, 2 * genus + 3):
            raise GeneratorError("not enough edges for that genus")
        rot = [[0, 5], [1, 2], [3, 4]]      # triangle; edge k = darts (2k, 2k+1)
    else:
        rot = rotation_lists(start)
    n_edges = sum(len(r) for r in rot) // 2
    g = map_from_rotation(rot).genus
    if g > genus or n_edges > edges:
        raise GeneratorError("start map is already too large")

    def build():
        return map_from_rotation([list(r) for r in rot])

    for _ in range(100 * edges):
        if n_edges >= edges:
            break
        m = build()
        remaining = edges - n_edges
        x, y = 2 * n_edges, 2 * n_edges + 1
        handle = genus > g and (remaining <= 2 * (genus - g) or rng.random() < 0.3)
        if handle and m.face_count > 1:
            a = rng.randrange(m.n)
            b = rng.choice([b for b in range(m.n) if m.face_of[b] != m.face_of[a]])
        elif rng.random() < 0.4 and not handle:
            # subdivide the edge of dart h with a new degree-2 vertex
            h = rng.randrange(m.n)
            o = h ^ 1
            vo = m.vertex_of[o]
            rot[vo][rot[vo].index(o)] = y      # old far end now belongs to the new edge
            rot.append([o, x])
            # edge (h, o) now ends at the new vertex; new edge (x, y) continues
            n_edges += 1
            continue
        else:
            a = rng.randrange(m.n)
            face = m.faces[m.face_of[a]]
            same = [b for b in face if m.vertex_of[b] != m.vertex_of[a]]
            if not same:
                continue
            b = rng.choice(same)
        va, vb = m.vertex_of[a], m.vertex_of[b]
        rot[va].insert(rot[va].index(a) + 1, x)
        rot[vb].insert(rot[vb].index(b) + 1, y)
        n_edges += 1
        g = build().genus
    m = build()
    if m.genus != genus:
        raise GeneratorError("failed to reach the target genus")
    return m


def random_diagram(seed: int, edges: int, genus: int) -> LinkDiagram:
    return medial(random_map(random.Random(seed), edges, genus))


def random_planar_alternating(seed: int, max_c: int = 8) -> LinkDiagram:
    rng = random.Random(seed)
    c = rng.randint(3, max_c)
    return medial(random_map(rng, c, 0))


def random_certified(count: int, genera=(1, 2), max_c: int = 16, min_c: int = 6,
                     seed: int = 0, bound: int = 5) -> list[tuple[str, LinkDiagram]]:
    """Seeded random diagrams that pass the coefficient hypotheses.

    Candidates are medials of random maps, tried in seed order and kept
    when the certificate passes; the output is deterministic.
    """
    from .certify import certify
    out = []
    s = seed
    while len(out) < count:
        rng = random.Random(s)
        genus = genera[s % len(genera)]
        edges = rng.randint(max(min_c, 2 * genus + 3), max_c)
        d = medial(random_map(rng, edges, genus))
        if certify(d, bound).coefficient_hypotheses:
            out.append((f"random(seed={s},c={d.c},g={genus})", d))
        s += 1
        if s - seed > 200 * count:
            raise GeneratorError("too few random diagrams pass the certificate")
    return out


def random_grid_wga(count: int, max_c: int = 16, seed: int = 0,
                    bound: int = 5) -> list[tuple[str, LinkDiagram]]:
    """Seeded genus-1 diagrams with representativity proxy at least 4.

    Tait graphs are a 2x2 torus grid with random subdivisions and chords,
    kept when the full certificate (including the proxy) passes.
    """
    from .certify import certify
    grid = weave(2, 2).map
    out = []
    s = seed
    while len(out) < count:
        rng = random.Random(s)
        edges = rng.randint(9, max_c)
        d = medial(random_map(rng, edges, 1, start=grid))
        cert = certify(d, bound)
        if cert.coefficient_hypotheses and cert.wga:
            out.append((f"grid_wga(seed={s},c={d.c})", d))
        s += 1
        if s - seed > 500 * count:
            raise GeneratorError("too few grid diagrams pass the certificate")
    return out


# -- perturbations --------------------------------------------------------

PERTURBATIONS = ("flip_one_crossing", "add_kink", "desymmetrize_labels")


def perturb(d: LinkDiagram, kind: str, seed: int = 0) -> LinkDiagram:
    if kind == "flip_one_crossing":
        over = list(d.over)
        over[0] ^= 1
        return d._rebuild(over=over)
    if kind == "add_kink":
        return _add_kink(d)
    if kind == "desymmetrize_labels":
        rng = random.Random(seed)
        order = list(range(d.c))
        rng.shuffle(order)
        shifts = [rng.randrange(4) for _ in range(d.c)]
        return d.relabel(order, shifts)
    raise GeneratorError(f"unknown perturbation {kind!r}; choose from {', '.join(PERTURBATIONS)}")


def _add_kink(d: LinkDiagram) -> LinkDiagram:
    """Insert a Reidemeister-I curl on the edge of dart 0."""
    c = d.c
    opp = list(d.map.opposite)
    fwd = list(d.forward)
    h, oh = 0, opp[0]
    k = 4 * c
    opp += [0, 0, 0, 0]
    fwd += [False] * 4
    # k+0 joins h, k+3 joins oh, and k+1/k+2 form the curl
    opp[h], opp[k] = k, h
    opp[oh], opp[k + 3] = k + 3, oh
    opp[k + 1], opp[k + 2] = k + 2, k + 1
    if fwd[h]:
        fwd[k + 2] = fwd[k + 3] = True
    else:
        fwd[k + 0] = fwd[k + 1] = True
    over = list(d.over) + [0]
    return LinkDiagram(opp, over, fwd)


# -- corpus specs ---------------------------------------------------------

def _range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def parse_corpus(spec: str) -> list[tuple[str, LinkDiagram]]:
    """Expand a corpus spec such as ``weave:2..4x2..4,genus2:minimal``.

    Items: ``weave:PxQ`` (ranges ``a..b`` allowed; odd products are skipped),
    ``genus2:minimal`` or ``genus2:PxQ``, ``classical:NAME`` or
    ``classical:all``, ``random:SEED..SEED:EDGES:GENUS``.
    """
    out = []
    for item in filter(None, (s.strip() for s in spec.split(","))):
        kind, _, arg = item.partition(":")
        try:
            if kind == "weave":
                ps, qs = arg.split("x")
                for p in _range(ps):
                    for q in _range(qs):
                        if (p * q) % 2 == 0:
                            out.append((f"weave({p},{q})", weave(p, q)))
            elif kind == "genus2":
                p, q = GENUS2_MINIMAL if arg in ("", "minimal") else map(int, arg.split("x"))
                out.append((f"genus2_grid({p},{q})", genus2_grid(p, q)))
            elif kind == "classical":
                names = CLASSICAL_NAMES if arg == "all" else [arg]
                out.extend((n, classical(n)) for n in names)
            elif kind == "random":
                seeds, edges, genus = arg.split(":")
                for s in _range(seeds):
                    out.append((f"random({s},{edges},{genus})", random_diagram(s, int(edges), int(genus))))
            else:
                raise GeneratorError(f"unknown corpus item kind {kind!r}")
        except (ValueError, MapError, DiagramError) as exc:
            if isinstance(exc, GeneratorError):
                raise
            raise GeneratorError(f"bad corpus item {item!r}: {exc}") from exc
    return out
