"""Cross-dimension subgroup graph over the enumerated censuses.

Vertices are census entries for dimensions 2 through a chosen maximum;
an edge joins a group to the class of any one-coordinate reduction, so
every edge is backed by an explicit subgroup witness.  Exports are
deterministic byte-for-byte.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .constructions import ReductionChoice, list_reductions
from .core import GhwError
from .enumerate import LONG_MODE_DIM, Census, cached_census, enumerate_census


class UnknownVertex(GhwError):
    """Queried key is not a vertex of the graph."""


class Disconnected(GhwError):
    """No path between the queried vertices."""


@dataclass(frozen=True)
class Vertex:
    dim: int
    key: bytes
    name: str
    beta1: int

    @property
    def key_hex(self) -> str:
        return self.key.hex()


@dataclass(frozen=True)
class Edge:
    """Undirected edge, stored from the higher dimension downward.

    ``witness`` is the reduction choice sending the upper group onto a
    presentation of the lower class; ``normal`` records whether the
    witnessed subgroup is normal in the upper group, which holds exactly
    when every member of the chosen index-two subgroup fixes the deleted
    coordinate (otherwise conjugating by that coordinate's unit
    translation escapes).
    """

    upper: bytes
    lower: bytes
    witness: ReductionChoice
    normal: bool


# Fixed display names for the four classical low-dimensional classes.
# The two non-orientable dim-3 classes carry no distinguishing invariant
# here, so +a2 versus -a2 follows canonical key order.
_DIM2_NAME = "K"
_DIM3_NAMES = ("+a2", "-a2")
_DIM3_ORIENTED = "c22"


def _vertex_name(dim: int, index: int, beta1: int, orient: bool,
                 beta1_one_seen: int) -> str:
    if dim == 2:
        return _DIM2_NAME
    if dim == 3:
        if orient:
            return _DIM3_ORIENTED
        return _DIM3_NAMES[beta1_one_seen]
    return f"d{dim}.{index + 1}"


class GhwGraph:
    """Census vertices joined by reduction-witnessed edges."""

    def __init__(self, max_dim: int, censuses: dict[int, Census],
                 vertices: tuple[Vertex, ...], edges: tuple[Edge, ...]):
        self.max_dim = max_dim
        self.censuses = censuses
        self.vertices = vertices
        self.edges = edges
        self._by_key = {v.key: v for v in vertices}
        self._adj: dict[bytes, list[bytes]] = {v.key: [] for v in vertices}
        for e in edges:
            self._adj[e.upper].append(e.lower)
            self._adj[e.lower].append(e.upper)
        for nbrs in self._adj.values():
            nbrs.sort()

    @staticmethod
    def _key_of(vertex_or_key) -> bytes:
        if isinstance(vertex_or_key, Vertex):
            return vertex_or_key.key
        return vertex_or_key

    def vertex(self, key: bytes) -> Vertex:
        key = self._key_of(key)
        try:
            return self._by_key[key]
        except KeyError:
            raise UnknownVertex(f"no vertex with key {key.hex()}") from None

    def by_name(self, name: str) -> Vertex:
        for v in self.vertices:
            if v.name == name:
                return v
        raise UnknownVertex(f"no vertex named {name!r}")

    def neighbors(self, key: bytes) -> tuple[bytes, ...]:
        key = self._key_of(key)
        self.vertex(key)
        return tuple(self._adj[key])

    def degree_down(self, key: bytes) -> int:
        key = self._key_of(key)
        v = self.vertex(key)
        return sum(1 for k in self._adj[key] if self._by_key[k].dim < v.dim)

    def degree_up(self, key: bytes) -> int:
        key = self._key_of(key)
        v = self.vertex(key)
        return sum(1 for k in self._adj[key] if self._by_key[k].dim > v.dim)

    def distance(self, a: bytes, b: bytes) -> int:
        a, b = self._key_of(a), self._key_of(b)
        self.vertex(a)
        self.vertex(b)
        if a == b:
            return 0
        seen = {a: 0}
        queue = deque([a])
        while queue:
            cur = queue.popleft()
            for nxt in self._adj[cur]:
                if nxt in seen:
                    continue
                seen[nxt] = seen[cur] + 1
                if nxt == b:
                    return seen[nxt]
                queue.append(nxt)
        raise Disconnected(f"no path from {a.hex()} to {b.hex()}")

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        start = self.vertices[0].key
        seen = {start}
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            for nxt in self._adj[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return len(seen) == len(self.vertices)


def build_graph(max_dim: int, *, long_mode: bool = False,
                budget: Optional[float] = None) -> GhwGraph:
    """Assemble the graph for dimensions 2 through max_dim.

    For every entry of dimension d >= 3 each distinct reduction class
    contributes one edge, witnessed by the first choice (in scan order)
    that lands in the class.
    """
    if max_dim < 2:
        raise ValueError("max_dim must be at least 2")
    censuses: dict[int, Census] = {}
    for d in range(2, max_dim + 1):
        if d >= LONG_MODE_DIM:
            censuses[d] = enumerate_census(d, long_mode=long_mode,
                                           budget=budget)
        else:
            censuses[d] = cached_census(d)

    vertices = []
    for d in range(2, max_dim + 1):
        seen_open = 0
        for idx, entry in enumerate(censuses[d].entries):
            name = _vertex_name(d, idx, entry.beta1, entry.orientable,
                                seen_open)
            if d == 3 and not entry.orientable:
                seen_open += 1
            vertices.append(Vertex(d, entry.key, name, entry.beta1))

    edges = []
    for d in range(3, max_dim + 1):
        lower_keys = {e.key for e in censuses[d - 1].entries}
        for entry in censuses[d].entries:
            first_by_target: dict[bytes, ReductionChoice] = {}
            for choice in list_reductions(entry.presentation):
                if choice.key not in first_by_target:
                    first_by_target[choice.key] = choice
            assert first_by_target, "every vertex must reduce somewhere"
            for target_key in sorted(first_by_target):
                assert target_key in lower_keys, "reduction left the census"
                choice = first_by_target[target_key]
                edges.append(Edge(
                    upper=entry.key,
                    lower=target_key,
                    witness=choice,
                    normal=_witness_is_normal(entry, choice),
                ))

    return GhwGraph(max_dim, censuses, tuple(vertices), tuple(edges))


def _witness_is_normal(entry, choice: ReductionChoice) -> bool:
    """Whether the witnessed subgroup is normal in the upper group.

    Normal iff no member of the index-two subgroup flips the deleted
    coordinate; any flipping member conjugated by the unit translation
    of that coordinate gains a full step there and leaves the subgroup.
    """
    bit = 1 << (choice.coordinate - 1)
    for m in entry.presentation.elements:
        if (m & choice.functional).bit_count() % 2 == 0 and m & bit:
            return False
    return True


def dot_export(graph: GhwGraph) -> str:
    """Deterministic DOT rendering, one rank per dimension.

    Open circles mark vanishing first Betti number, filled bullets mark
    first Betti number one.
    """
    lines = [
        "graph ghw {",
        "  rankdir=BT;",
        "  node [shape=circle, fixedsize=true, width=0.25, fontsize=8];",
    ]
    for d in range(2, graph.max_dim + 1):
        members = [v for v in graph.vertices if v.dim == d]
        lines.append(f"  subgraph dim{d} {{")
        lines.append("    rank=same;")
        for v in members:
            style = ("style=filled, fillcolor=black, fontcolor=white"
                     if v.beta1 == 1 else "style=solid")
            lines.append(
                f'    "{v.name}" [{style}, tooltip="{v.key_hex}"];'
            )
        lines.append("  }")
    for e in sorted(graph.edges, key=lambda e: (e.upper, e.lower)):
        up = graph.vertex(e.upper).name
        down = graph.vertex(e.lower).name
        lines.append(f'  "{down}" -- "{up}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def edges_json(graph: GhwGraph) -> str:
    """JSON edge list with per-edge witnesses, deterministic order."""
    rows = []
    for e in sorted(graph.edges, key=lambda e: (e.upper, e.lower)):
        rows.append({
            "from": e.upper.hex(),
            "to": e.lower.hex(),
            "witness": {
                "functional": e.witness.functional,
                "coordinate": e.witness.coordinate,
                "normal": e.normal,
            },
        })
    return json.dumps(rows, indent=2) + "\n"
