"""Link diagrams on closed orientable surfaces and the SLD file format.

A diagram with ``c`` crossings has ``4c`` darts; dart ``4*v + i`` is the
``i``-th half-edge counterclockwise around crossing ``v``.  ``over[v]`` picks
the overstrand: the opposite pair at positions ``(over[v], over[v] + 2)``.

Smoothing conventions.  Rotating the overstrand counterclockwise sweeps the
corners of the over darts; those are the corners an A-smoothing opens into a
channel, so the A-smoothing arcs hug the other two corners.  In the all-A
state every circle therefore bounds a face whose corners are the hugged ones;
those faces are called A-faces below, the remaining ones B-faces.
"""

from __future__ import annotations

import json
import sys
from functools import cached_property
from typing import Sequence

from .surface_map import CombinatorialMap, MapError

SLD_VERSION = "sld-1"


class DiagramError(ValueError):
    pass


class LinkDiagram:
    def __init__(
        self,
        opposite: Sequence[int],
        over: Sequence[int],
        forward: Sequence[bool],
        *,
        crossing_ids: Sequence[str] | None = None,
        half_edge_ids: Sequence[str] | None = None,
        component_labels: Sequence[int] | None = None,
        free_loops: int = 0,
    ):
        c = len(over)
        self.c = c
        self.over = tuple(int(o) for o in over)
        if any(o not in (0, 1) for o in self.over):
            raise DiagramError("over offsets must be 0 or 1")
        if len(opposite) != 4 * c:
            raise DiagramError(f"expected {4 * c} darts, got {len(opposite)}")
        self.free_loops = int(free_loops)
        self.crossing_ids = tuple(crossing_ids or (f"x{v}" for v in range(c)))
        self.half_edge_ids = tuple(half_edge_ids or (f"x{h // 4}:{h % 4}" for h in range(4 * c)))

        if c == 0:
            if self.free_loops < 1:
                raise DiagramError("a crossingless diagram needs at least one component")
            self.map = None
            self.forward = ()
            self.component_of = ()
            self.component_labels = tuple(component_labels or range(self.free_loops))
            return
        if self.free_loops:
            raise DiagramError("free loops are only supported in crossingless diagrams")
        try:
            self.map = CombinatorialMap(opposite, [tuple(range(4 * v, 4 * v + 4)) for v in range(c)])
        except MapError as exc:
            raise DiagramError(str(exc)) from exc

        fwd = tuple(bool(x) for x in forward)
        if len(fwd) != 4 * c:
            raise DiagramError("forward flags must cover every half-edge")
        for h in self.map.edges:
            if fwd[h] == fwd[self.map.opposite[h]]:
                raise DiagramError(
                    f"edge {self.half_edge_ids[h]}-{self.half_edge_ids[self.map.opposite[h]]} "
                    "needs exactly one forward half-edge")
        for h in range(4 * c):
            if fwd[h] and not fwd[self.strand_next(h)]:
                raise DiagramError(
                    f"orientation is inconsistent through crossing "
                    f"{self.crossing_ids[self.map.opposite[h] // 4]}")
        self.forward = fwd

        comp = [-1] * (4 * c)
        n = 0
        for start in range(4 * c):
            if not fwd[start] or comp[start] != -1:
                continue
            h = start
            while comp[h] == -1:
                comp[h] = comp[self.map.opposite[h]] = n
                h = self.strand_next(h)
            n += 1
        self.component_of = tuple(comp)
        self.component_labels = tuple(component_labels) if component_labels is not None else tuple(range(n))
        if len(self.component_labels) != n:
            raise DiagramError("component labels do not match the traced components")

    # -- structure -------------------------------------------------------

    def strand_next(self, h: int) -> int:
        """Dart leaving straight through the crossing reached along ``h``."""
        o = self.map.opposite[h]
        return 4 * (o // 4) + (o % 4 + 2) % 4

    @property
    def crossing_count(self) -> int:
        return self.c

    @property
    def component_count(self) -> int:
        return len(self.component_labels)

    @property
    def genus(self) -> int:
        return 0 if self.map is None else self.map.genus

    @property
    def euler_characteristic(self) -> int:
        return 2 if self.map is None else self.map.euler_characteristic

    def is_over(self, h: int) -> bool:
        return (h % 4 - self.over[h // 4]) % 2 == 0

    def partner(self, h: int, bit: int) -> int:
        """Dart joined to ``h`` by the smoothing arc (bit 0 = A, 1 = B)."""
        v, p = divmod(h, 4)
        s = self.over[v] + bit
        return 4 * v + (s + 3 - (p - s)) % 4

    def channel(self, v: int, bit: int) -> tuple[int, int]:
        """Corner darts at ``v`` joined into one region by the smoothing."""
        s = self.over[v] + bit
        return 4 * v + s % 4, 4 * v + (s + 2) % 4

    def corner_label(self, h: int) -> str:
        """'A' if the corner of ``h`` is hugged by an A-smoothing arc."""
        return "B" if self.is_over(h) else "A"

    def crossing_sign(self, v: int) -> int:
        base = 4 * v
        o = self.over[v]
        over_out = base + o if self.forward[base + o] else base + o + 2
        under_out = base + o + 1 if self.forward[base + o + 1] else base + (o + 3) % 4
        return 1 if self.map.sigma[over_out] == under_out else -1

    @cached_property
    def writhe(self) -> int:
        return sum(self.crossing_sign(v) for v in range(self.c))

    @cached_property
    def bigon_faces(self) -> tuple[int, ...]:
        """Faces of length two whose corners sit at distinct crossings."""
        if self.map is None:
            return ()
        m = self.map
        return tuple(i for i, f in enumerate(m.faces)
                     if len(f) == 2 and m.vertex_of[f[0]] != m.vertex_of[f[1]])

    # -- derived diagrams ------------------------------------------------

    def mirror(self) -> "LinkDiagram":
        """Switch every crossing."""
        return self._rebuild(over=[1 - o for o in self.over])

    def reverse(self) -> "LinkDiagram":
        """Reverse every component."""
        if self.c == 0:
            return self
        return self._rebuild(forward=[not f for f in self.forward])

    def _rebuild(self, **kw) -> "LinkDiagram":
        args = dict(
            opposite=self.map.opposite if self.map else (),
            over=self.over,
            forward=self.forward,
            crossing_ids=self.crossing_ids,
            half_edge_ids=self.half_edge_ids,
            component_labels=self.component_labels,
            free_loops=self.free_loops,
        )
        args.update(kw)
        opp = args.pop("opposite")
        over = args.pop("over")
        fwd = args.pop("forward")
        return LinkDiagram(opp, over, fwd, **args)

    def relabel(self, order: Sequence[int], shifts: Sequence[int], prefix: str = "y") -> "LinkDiagram":
        """Isomorphic copy: crossing ``order[k]`` becomes crossing ``k`` and
        its rotation is started ``shifts[k]`` places later."""
        c = self.c
        if sorted(order) != list(range(c)) or len(shifts) != c:
            raise DiagramError("bad relabeling")
        new_of = [0] * (4 * c)
        for k, v in enumerate(order):
            for i in range(4):
                new_of[4 * v + (i + shifts[k]) % 4] = 4 * k + i
        opp = [0] * (4 * c)
        fwd = [False] * (4 * c)
        for h in range(4 * c):
            opp[new_of[h]] = new_of[self.map.opposite[h]]
            fwd[new_of[h]] = self.forward[h]
        over = [(self.over[v] - shifts[k]) % 2 for k, v in enumerate(order)]
        return LinkDiagram(
            opp, over, fwd,
            crossing_ids=[f"{prefix}{k}" for k in range(c)],
            half_edge_ids=[f"{prefix}{h // 4}.{h % 4}" for h in range(4 * c)],
        )

    # -- serialization ---------------------------------------------------

    def to_sld(self) -> dict:
        ids = self.half_edge_ids
        doc: dict = {"version": SLD_VERSION, "crossings": [], "pairings": [], "orientations": []}
        for v in range(self.c):
            o = self.over[v]
            doc["crossings"].append({
                "id": self.crossing_ids[v],
                "rotation": [ids[4 * v + i] for i in range(4)],
                "over": [ids[4 * v + o], ids[4 * v + o + 2]],
            })
        if self.c:
            doc["pairings"] = [[ids[h], ids[self.map.opposite[h]]] for h in self.map.edges]
            for k, label in enumerate(self.component_labels):
                doc["orientations"].append({
                    "component": label,
                    "forward_half_edges": [ids[h] for h in range(4 * self.c)
                                           if self.forward[h] and self.component_of[h] == k],
                })
        else:
            doc["orientations"] = [{"component": label, "forward_half_edges": []}
                                   for label in self.component_labels]
        doc["expected_genus"] = self.genus
        return doc

    def __repr__(self):
        return f"LinkDiagram(c={self.c}, genus={self.genus}, components={self.component_count})"


# -- SLD parsing ------------------------------------------------------------

def _need(cond, where, msg):
    if not cond:
        raise DiagramError(f"{where}: {msg}")


def parse_diagram(doc) -> LinkDiagram:
    """Build a :class:`LinkDiagram` from an SLD document (``dict`` or JSON text)."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise DiagramError(f"line {exc.lineno}, column {exc.colno}: invalid JSON ({exc.msg})") from exc
    _need(isinstance(doc, dict), "document", "must be a JSON object")
    _need(doc.get("version") == SLD_VERSION, "version",
          f"unsupported version {doc.get('version')!r} (expected {SLD_VERSION!r})")
    unknown = set(doc) - {"version", "crossings", "pairings", "orientations", "expected_genus"}
    _need(not unknown, "document", f"unknown fields {sorted(unknown)}")
    crossings = doc.get("crossings")
    pairings = doc.get("pairings")
    orientations = doc.get("orientations")
    _need(isinstance(crossings, list), "crossings", "must be a list")
    _need(isinstance(pairings, list), "pairings", "must be a list")
    _need(isinstance(orientations, list), "orientations", "must be a list")
    expected = doc.get("expected_genus")
    _need(expected is None or (isinstance(expected, int) and expected >= 0),
          "expected_genus", "must be a non-negative integer")

    dart_of: dict[str, int] = {}
    crossing_ids = []
    over = []
    seen_ids = set()
    for v, x in enumerate(crossings):
        where = f"crossings[{v}]"
        _need(isinstance(x, dict), where, "must be an object")
        cid = x.get("id")
        _need(isinstance(cid, str), f"{where}.id", "must be a string")
        _need(cid not in seen_ids, f"{where}.id", f"duplicate crossing id {cid!r}")
        seen_ids.add(cid)
        rot = x.get("rotation")
        _need(isinstance(rot, list), f"{where}.rotation", "must be a list")
        _need(len(rot) == 4, f"{where}.rotation", f"vertex degree {len(rot)} != 4")
        for i, hid in enumerate(rot):
            _need(isinstance(hid, str), f"{where}.rotation[{i}]", "must be a string")
            _need(hid not in dart_of, f"{where}.rotation[{i}]", f"duplicate half-edge id {hid!r}")
            dart_of[hid] = 4 * v + i
        ov = x.get("over")
        _need(isinstance(ov, list) and len(ov) == 2, f"{where}.over", "must list two half-edge ids")
        pos = []
        for hid in ov:
            _need(hid in rot, f"{where}.over", f"{hid!r} is not at this crossing")
            pos.append(rot.index(hid))
        _need((pos[0] - pos[1]) % 4 == 2, f"{where}.over", "must name an opposite pair")
        over.append(min(pos) % 2)
        crossing_ids.append(cid)
    c = len(crossings)

    opposite = [-1] * (4 * c)
    for k, pair in enumerate(pairings):
        where = f"pairings[{k}]"
        _need(isinstance(pair, list) and len(pair) == 2, where, "must be a pair of half-edge ids")
        a, b = pair
        for hid in (a, b):
            _need(hid in dart_of, where, f"unknown half-edge id {hid!r}")
        ha, hb = dart_of[a], dart_of[b]
        _need(ha != hb, where, "a half-edge cannot be paired with itself")
        _need(opposite[ha] == -1 and opposite[hb] == -1, where, "half-edge paired twice")
        opposite[ha], opposite[hb] = hb, ha
    unpaired = [hid for hid, h in dart_of.items() if opposite[h] == -1]
    _need(not unpaired, "pairings", f"unpaired half-edges {unpaired}")

    labels = []
    if c == 0:
        _need(not pairings, "pairings", "must be empty without crossings")
        _need(len(orientations) >= 1, "orientations", "a crossingless diagram needs a component")
        for k, o in enumerate(orientations):
            _need(isinstance(o, dict) and isinstance(o.get("component"), int),
                  f"orientations[{k}].component", "must be an integer")
            _need(not o.get("forward_half_edges"), f"orientations[{k}].forward_half_edges",
                  "must be empty without crossings")
            labels.append(o["component"])
        _need(len(set(labels)) == len(labels), "orientations", "duplicate component ids")
        _need(expected in (None, 0), "expected_genus",
              f"declared genus {expected} but a crossingless diagram lives on the sphere")
        return LinkDiagram((), (), (), component_labels=labels, free_loops=len(labels))

    forward = [False] * (4 * c)
    entry_of = {}
    for k, o in enumerate(orientations):
        where = f"orientations[{k}]"
        _need(isinstance(o, dict), where, "must be an object")
        _need(isinstance(o.get("component"), int), f"{where}.component", "must be an integer")
        fw = o.get("forward_half_edges")
        _need(isinstance(fw, list), f"{where}.forward_half_edges", "must be a list")
        for hid in fw:
            _need(hid in dart_of, f"{where}.forward_half_edges", f"unknown half-edge id {hid!r}")
            h = dart_of[hid]
            _need(not forward[h], f"{where}.forward_half_edges", f"{hid!r} listed twice")
            forward[h] = True
            entry_of[h] = k
    try:
        d = LinkDiagram(opposite, over, forward, crossing_ids=crossing_ids,
                        half_edge_ids=sorted(dart_of, key=dart_of.get))
    except DiagramError as exc:
        raise DiagramError(f"orientations/pairings: {exc}") from exc

    # each traced component must be exactly one orientation entry
    comp_entry: dict[int, int] = {}
    for h, k in entry_of.items():
        comp = d.component_of[h]
        _need(comp_entry.setdefault(comp, k) == k, f"orientations[{k}]",
              "forward half-edges of one entry span several components or vice versa")
    _need(len(comp_entry) == len(set(comp_entry.values())) == len(orientations),
          "orientations", "entries must correspond one-to-one with link components")
    labels = [orientations[comp_entry[i]]["component"] for i in range(d.component_count)]
    _need(len(set(labels)) == len(labels), "orientations", "duplicate component ids")
    d.component_labels = tuple(labels)

    if expected is not None and expected != d.genus:
        raise DiagramError(f"expected_genus: declared {expected} but the rotation system has genus {d.genus}")
    return d


def dump_sld(d: LinkDiagram) -> str:
    return json.dumps(d.to_sld(), indent=2) + "\n"


def load_diagram(path: str) -> LinkDiagram:
    """Read an SLD document from ``path`` ("-" for standard input)."""
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return parse_diagram(text)


def serialize(d: LinkDiagram) -> dict:
    return d.to_sld()


def default_forward(opposite: Sequence[int]) -> list[bool]:
    """Orient every strand, starting each component at its smallest dart."""
    n = len(opposite)
    fwd: list[bool | None] = [None] * n
    for start in range(n):
        if fwd[start] is not None:
            continue
        h = start
        while fwd[h] is None:
            fwd[h] = True
            fwd[opposite[h]] = False
            o = opposite[h]
            h = 4 * (o // 4) + (o % 4 + 2) % 4
    return [bool(x) for x in fwd]
