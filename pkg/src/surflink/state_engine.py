"""Kauffman states of a surface diagram.

A state is an integer bitmask over the crossings, bit ``v`` set meaning the
B-smoothing at crossing ``v``.  A state circle is stored as the cyclic list
of darts it leaves crossings along (each circle runs parallel to the edges
of the diagram and turns at crossings along the smoothing arcs).

Contractibility is decided by region bookkeeping.  Cutting ``F`` along all
circles of a state leaves regions; each region is a union of diagram faces
joined through smoothing channels, with ``chi = #faces - #channels``.  Gluing
the regions back along the circles gives a graph whose edges are circles:
a circle separates ``F`` exactly when it is a bridge, each side's ``chi`` is
the sum over its regions, and a separating circle with a disk side
(``chi == 1``) is contractible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .diagram import LinkDiagram
from .surface_map import normalize_class
from .unionfind import UnionFind

DEFAULT_STATE_CAP = 28


class StateCapError(ValueError):
    pass


@dataclass(frozen=True)
class KauffmanState:
    bits: int
    c: int

    @property
    def b(self) -> int:
        return bin(self.bits).count("1")

    @property
    def a(self) -> int:
        return self.c - self.b

    def bit(self, v: int) -> int:
        return (self.bits >> v) & 1

    def flip(self, v: int) -> "KauffmanState":
        return KauffmanState(self.bits ^ (1 << v), self.c)


@dataclass(frozen=True)
class Region:
    faces: tuple[int, ...]
    channels: int

    @property
    def chi(self) -> int:
        return len(self.faces) - self.channels


@dataclass(frozen=True)
class CircleInfo:
    darts: tuple[int, ...]
    contractible: bool
    separating: bool
    side_chis: tuple[int, ...]          # sorted, empty when nonseparating
    homology: tuple[int, ...]           # sign-normalized

    @property
    def sep_key(self):
        return (self.separating, self.side_chis)


@dataclass(frozen=True)
class StateSummary:
    state: KauffmanState
    circles: tuple[CircleInfo, ...]
    regions: tuple[Region, ...]
    free_loops: int = 0
    nonbigon_B_count: int | None = None

    @property
    def circle_count(self) -> int:
        return len(self.circles) + self.free_loops

    @property
    def contractible_count(self) -> int:
        """``|s|_t``."""
        return sum(ci.contractible for ci in self.circles) + self.free_loops

    @property
    def noncontractible(self) -> tuple[CircleInfo, ...]:
        return tuple(ci for ci in self.circles if not ci.contractible)

    @property
    def multicurve_signature(self) -> tuple:
        nc = self.noncontractible
        return (
            len(nc),
            tuple(sorted(ci.homology for ci in nc)),
            tuple(sorted(ci.sep_key for ci in nc)),
        )

    @property
    def region_chi_total(self) -> int:
        return sum(r.chi for r in self.regions)


EMPTY_SIGNATURE = (0, (), ())


# -- circles ---------------------------------------------------------------

def _partners(d: LinkDiagram, bits: int) -> list[int]:
    return [d.partner(h, (bits >> (h // 4)) & 1) for h in range(4 * d.c)]


def _trace_from(d: LinkDiagram, partner: Sequence[int], start: int) -> list[int]:
    opp = d.map.opposite
    out = [start]
    h = partner[opp[start]]
    while h != start:
        out.append(h)
        h = partner[opp[h]]
    return out


def canonical_circle(d: LinkDiagram, darts: Sequence[int]) -> tuple[int, ...]:
    """Rotate/reverse a circle to start at its smallest dart (either direction)."""
    opp = d.map.opposite
    fwd = list(darts)
    rev = [opp[h] for h in reversed(fwd)]
    best = None
    for seq in (fwd, rev):
        i = seq.index(min(seq))
        cand = tuple(seq[i:] + seq[:i])
        if best is None or cand < best:
            best = cand
    return best


def trace_circles(d: LinkDiagram, bits: int) -> list[tuple[int, ...]]:
    """All state circles, canonical and sorted."""
    partner = _partners(d, bits)
    seen = [False] * (4 * d.c)
    out = []
    for h in range(4 * d.c):
        if seen[h]:
            continue
        cyc = _trace_from(d, partner, h)
        for x in cyc:
            seen[x] = seen[d.map.opposite[x]] = True
        out.append(canonical_circle(d, cyc))
    return sorted(out)


# -- regions and classification -------------------------------------------

def state_regions(d: LinkDiagram, bits: int) -> tuple[list[int], list[Region]]:
    """Region label of every face, and the regions themselves."""
    m = d.map
    uf = UnionFind(m.face_count)
    pairs = []
    for v in range(d.c):
        x, y = d.channel(v, (bits >> v) & 1)
        pairs.append((m.face_of[x], m.face_of[y]))
        uf.union(m.face_of[x], m.face_of[y])
    labels = uf.labels()
    faces: dict[int, list[int]] = {}
    chans: dict[int, int] = {}
    for f, r in enumerate(labels):
        faces.setdefault(r, []).append(f)
    for f, _ in pairs:
        chans[labels[f]] = chans.get(labels[f], 0) + 1
    regions = [Region(tuple(faces[r]), chans.get(r, 0)) for r in range(len(faces))]
    return labels, regions


def _bridges(n: int, edges: Sequence[tuple[int, int]], weight: Sequence[int]):
    """For each edge: ``None`` if not a bridge, else the weight on one side."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for k, (a, b) in enumerate(edges):
        adj[a].append((b, k))
        adj[b].append((a, k))
    disc = [-1] * n
    low = [0] * n
    sub = list(weight)
    out: list[int | None] = [None] * len(edges)
    t = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            u, pe, it = stack[-1]
            advanced = False
            for w, k in it:
                if k == pe:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, k, iter(adj[w])))
                    advanced = True
                    break
                low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[u])
                sub[p] += sub[u]
                if low[u] > disc[p]:
                    out[pe] = sub[u]
    return out


def summarize(d: LinkDiagram, bits: int, circles: Sequence[tuple[int, ...]]) -> StateSummary:
    """Classify the given circles of state ``bits``."""
    state = KauffmanState(bits, d.c)
    if d.c == 0:
        return StateSummary(state, (), (), d.free_loops)
    m = d.map
    labels, regions = state_regions(d, bits)
    chi_f = m.euler_characteristic
    ends = [(labels[m.face_of[cyc[0]]], labels[m.face_of[m.opposite[cyc[0]]]]) for cyc in circles]
    sides = _bridges(len(regions), ends, [r.chi for r in regions])
    basis = m.homology_basis if m.genus else None
    infos = []
    for cyc, side in zip(circles, sides):
        if side is None:
            sep, chis = False, ()
        else:
            sep, chis = True, tuple(sorted((side, chi_f - side)))
        contractible = sep and 1 in chis
        if contractible or basis is None:
            hom = (0,) * (2 * m.genus)
        else:
            hom = normalize_class(basis.chain_class(cyc))
        infos.append(CircleInfo(tuple(cyc), contractible, sep, chis, hom))
    nb = None
    if bits == 0:
        nb = nonbigon_faces_merged_by(d, 0)
    return StateSummary(state, tuple(infos), tuple(regions), 0, nb)


def nonbigon_faces_merged_by(d: LinkDiagram, bit: int) -> int:
    """Faces all of whose corners are channel corners of the all-``bit``
    smoothing, excluding bigons.  For bit 0 this is ``|s'_B|``."""
    m = d.map
    bigons = set(d.bigon_faces)
    chan = set()
    for v in range(d.c):
        chan.update(d.channel(v, bit))
    return sum(1 for i, f in enumerate(m.faces) if i not in bigons and all(h in chan for h in f))


def resolve_state(d: LinkDiagram, s: KauffmanState | int) -> StateSummary:
    """Summary of one state, computed from scratch."""
    bits = s.bits if isinstance(s, KauffmanState) else int(s)
    if d.c == 0:
        return summarize(d, 0, [])
    if not 0 <= bits < (1 << d.c):
        raise ValueError("state bitmask out of range")
    return summarize(d, bits, trace_circles(d, bits))


# -- enumeration -----------------------------------------------------------

def gray(i: int) -> int:
    return i ^ (i >> 1)


def check_cap(c: int, cap: int = DEFAULT_STATE_CAP) -> None:
    if c > cap:
        raise StateCapError(f"{c} crossings exceeds state cap {cap}")


def gray_blocks(c: int, k: int) -> list[tuple[int, int]]:
    """Split Gray-code positions ``0..2^c`` into ``2^k`` contiguous blocks."""
    total = 1 << c
    k = min(k, c)
    size = total >> k
    return [(i * size, (i + 1) * size) for i in range(1 << k)]


def enumerate_states(
    d: LinkDiagram,
    cap: int = DEFAULT_STATE_CAP,
    block: tuple[int, int] | None = None,
) -> Iterator[StateSummary]:
    """Visit states in Gray-code order, updating circles incrementally.

    Only the circles through the flipped crossing are retraced.  ``block``
    restricts the walk to Gray positions ``[start, stop)``.
    """
    check_cap(d.c, cap)
    if d.c == 0:
        yield summarize(d, 0, [])
        return
    opp = d.map.opposite
    start, stop = block if block is not None else (0, 1 << d.c)
    bits = gray(start)
    partner = _partners(d, bits)
    circle_of = [-1] * (4 * d.c)     # circle id of each dart's edge traversal
    circles: dict[int, list[int]] = {}
    next_id = 0

    def add_circle(h):
        nonlocal next_id
        cyc = _trace_from(d, partner, h)
        for x in cyc:
            circle_of[x] = circle_of[opp[x]] = next_id
        circles[next_id] = cyc
        next_id += 1

    for h in range(4 * d.c):
        if circle_of[h] == -1:
            add_circle(h)

    for pos in range(start, stop):
        if pos != start:
            v = ((pos & -pos).bit_length()) - 1
            bits ^= 1 << v
            darts = range(4 * v, 4 * v + 4)
            for h in darts:
                circles.pop(circle_of[h], None)
            for h in darts:
                partner[h] = d.partner(h, (bits >> v) & 1)
            for h in darts:
                circle_of[h] = -1
            for h in darts:
                if circle_of[h] == -1:
                    add_circle(h)
        yield summarize(d, bits, sorted(canonical_circle(d, cyc) for cyc in circles.values()))


@dataclass(frozen=True)
class ChangeRecord:
    crossing: int
    kind: str                       # "merge", "split" or "reroute"
    before: tuple[bool, ...]        # contractibility of circles through the crossing
    after: tuple[bool, ...]
    delta_t: int                    # change of |s|_t

    def inverse(self) -> "ChangeRecord":
        kind = {"merge": "split", "split": "merge"}.get(self.kind, self.kind)
        return ChangeRecord(self.crossing, kind, self.after, self.before, -self.delta_t)

    @property
    def case(self) -> str:
        def tag(xs):
            return "+".join("c" if x else "nc" for x in sorted(xs, reverse=True))
        return f"{self.kind}:{tag(self.before)}->{tag(self.after)}"


def _through(summary: StateSummary, v: int):
    return tuple(ci.contractible for ci in summary.circles if any(h // 4 == v for h in ci.darts))


def single_change_delta(d: LinkDiagram, prev: StateSummary, crossing: int) -> tuple[ChangeRecord, StateSummary]:
    """Flip one crossing of ``prev`` and classify what happened to its circles."""
    nxt = resolve_state(d, prev.state.flip(crossing))
    before, after = _through(prev, crossing), _through(nxt, crossing)
    if len(before) > len(after):
        kind = "merge"
    elif len(before) < len(after):
        kind = "split"
    else:
        kind = "reroute"
    rec = ChangeRecord(crossing, kind, tuple(sorted(before)), tuple(sorted(after)),
                       nxt.contractible_count - prev.contractible_count)
    return rec, nxt


def all_states(c: int):
    return itertools.product((0, 1), repeat=c)


# -- state sums ------------------------------------------------------------

Tally = dict  # signature -> {(b, |s|_t): count}


def _merge_into(total: Tally, part: Tally) -> Tally:
    for sig, cells in part.items():
        dst = total.setdefault(sig, {})
        for cell, n in cells.items():
            dst[cell] = dst.get(cell, 0) + n
    return total


def _python_block(d: LinkDiagram, block, cap) -> Tally:
    out: Tally = {}
    for s in enumerate_states(d, cap, block):
        cell = (s.state.b, s.contractible_count)
        sig = s.multicurve_signature
        cells = out.setdefault(sig, {})
        cells[cell] = cells.get(cell, 0) + 1
    return out


def _kernel_inputs(d: LinkDiagram):
    import numpy as np
    m = d.map
    rank = 2 * m.genus
    dw = np.zeros((m.n, max(rank, 1)), np.int64)
    if rank:
        dw[:, :rank] = np.array(m.homology_basis.dart_weights, dtype=np.int64)
    return (np.array(m.opposite, np.int64), np.array(d.over, np.int64),
            np.array(m.face_of, np.int64), m.face_count, dw, rank, m.euler_characteristic)


def _kernel_block(d: LinkDiagram, block, inputs, capacity=64) -> Tally:
    import numpy as np
    from . import _kernel
    opp, over, face_of, nfaces, dw, rank, chi_f = inputs
    c = d.c
    width = 1 + (2 * c + 4) * (rank + 3)
    while True:
        keys = np.zeros((capacity, width), np.int64)
        keylen = -np.ones(capacity, np.int64)
        counts = np.zeros((capacity, c + 1, 2 * c + 5), np.int64)
        status, _ = _kernel.run_block(opp, over, face_of, nfaces, dw, rank, chi_f,
                                      block[0], block[1], keys, keylen, counts)
        if status == _kernel.OK:
            break
        capacity *= 4
    out: Tally = {}
    rw = rank + 3
    for slot in np.nonzero(keylen >= 0)[0]:
        key = keys[slot, :keylen[slot]].tolist()
        k = key[0]
        rows = [tuple(key[1 + i * rw: 1 + (i + 1) * rw]) for i in range(k)]
        classes = tuple(sorted(tuple(r[:rank]) for r in rows))
        seps = tuple(sorted((bool(r[rank]), (r[rank + 1], r[rank + 2]) if r[rank] else ()) for r in rows))
        sig = (k, classes, seps)
        cells = {}
        for bb, nt in zip(*np.nonzero(counts[slot])):
            cells[(int(bb), int(nt))] = int(counts[slot, bb, nt])
        _merge_into(out, {sig: cells})
    return out


def state_sum(
    d: LinkDiagram,
    cap: int = DEFAULT_STATE_CAP,
    workers: int = 1,
    partitions: int | None = None,
    backend: str = "kernel",
) -> Tally:
    """Tally all states by multicurve signature, B-count and ``|s|_t``.

    The state space is cut into ``2^k`` contiguous Gray-code blocks
    (``partitions = k``, default enough blocks for ``workers``); blocks are
    processed by up to ``workers`` threads and merged by addition, so the
    result does not depend on either setting.
    """
    check_cap(d.c, cap)
    if d.c == 0:
        return {EMPTY_SIGNATURE: {(0, d.free_loops): 1}}
    if partitions is None:
        partitions = max(0, (workers - 1).bit_length())
    blocks = gray_blocks(d.c, partitions)
    if backend == "python":
        run = lambda blk: _python_block(d, blk, cap)
    elif backend == "kernel":
        inputs = _kernel_inputs(d)
        run = lambda blk: _kernel_block(d, blk, inputs)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    if workers <= 1 or len(blocks) == 1:
        parts = [run(blk) for blk in blocks]
    else:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, blocks))
    total: Tally = {}
    for p in parts:
        _merge_into(total, p)
    return total
