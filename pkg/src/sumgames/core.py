"""Graph and arena data model, JSON/DOT serialization and prefix sums."""

from __future__ import annotations

import enum
import json
import os
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

INT_MIN = -(2**63)
INT_MAX = 2**63 - 1

DEFAULT_SIZE_CAP = 200_000


class SumGamesError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(SumGamesError, ValueError):
    pass


class UndeclaredVertex(ParseError):
    def __init__(self, vertex: str):
        super().__init__(f"edge references undeclared vertex {vertex!r}")
        self.vertex = vertex


class UnknownOwner(ParseError):
    def __init__(self, tag):
        super().__init__(f"unknown owner tag {tag!r} (expected 'Eve' or 'Adam')")
        self.tag = tag


class DeadEnd(ParseError):
    def __init__(self, vertex: str):
        super().__init__(f"DeadEnd({vertex!r}): arena vertex has no outgoing edge")
        self.vertex = vertex


class SizeCapExceeded(SumGamesError):
    pass


def size_cap() -> int:
    """Guard on fragment sizes and enumeration counts; SUMGAMES_SIZE_CAP overrides."""
    raw = os.environ.get("SUMGAMES_SIZE_CAP")
    if raw is None:
        return DEFAULT_SIZE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise SumGamesError(f"SUMGAMES_SIZE_CAP must be an integer, got {raw!r}") from None
    if cap <= 0:
        raise SumGamesError("SUMGAMES_SIZE_CAP must be positive")
    return cap


def checked_add(a: int, b: int) -> int:
    s = a + b
    if not INT_MIN <= s <= INT_MAX:
        raise OverflowError(f"integer overflow: {a} + {b} leaves the 64-bit range")
    return s


class Owner(enum.Enum):
    EVE = "Eve"
    ADAM = "Adam"

    @property
    def opponent(self) -> "Owner":
        return Owner.ADAM if self is Owner.EVE else Owner.EVE

    @classmethod
    def parse(cls, tag) -> "Owner":
        for o in cls:
            if tag == o.value:
                return o
        raise UnknownOwner(tag)


@dataclass(frozen=True)
class Edge:
    src: str
    weight: int
    dst: str

    def __str__(self) -> str:
        return f"{self.src} -[{self.weight}]-> {self.dst}"

    def to_json(self) -> dict:
        return {"from": self.src, "weight": self.weight, "to": self.dst}


@dataclass(frozen=True)
class LabeledGraph:
    """Finite directed graph with integer edge weights.

    Vertex and edge order is the declaration order and is what every
    algorithm iterates over; identifiers are never sorted.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    _out: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        seen = set()
        for v in self.vertices:
            if not isinstance(v, str):
                raise ParseError(f"vertex identifiers must be strings, got {v!r}")
            if v in seen:
                raise ParseError(f"duplicate vertex {v!r}")
            seen.add(v)
        deduped = []
        seen_edges = set()
        for e in self.edges:
            if e.src not in seen:
                raise UndeclaredVertex(e.src)
            if e.dst not in seen:
                raise UndeclaredVertex(e.dst)
            if isinstance(e.weight, bool) or not isinstance(e.weight, int):
                raise ParseError(f"edge weight must be an integer, got {e.weight!r}")
            if not INT_MIN <= e.weight <= INT_MAX:
                raise ParseError(f"edge weight {e.weight} outside the 64-bit range")
            if e not in seen_edges:
                seen_edges.add(e)
                deduped.append(e)
        object.__setattr__(self, "edges", tuple(deduped))
        out = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.src].append(e)
        object.__setattr__(self, "_out", {v: tuple(es) for v, es in out.items()})

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[tuple[str, int, str]]) -> "LabeledGraph":
        return cls(tuple(vertices), tuple(Edge(s, w, d) for s, w, d in edges))

    def out_edges(self, v: str) -> tuple[Edge, ...]:
        return self._out[v]

    def successors(self, v: str) -> list[str]:
        return list(dict.fromkeys(e.dst for e in self._out[v]))

    def edge_index(self, e: Edge) -> int:
        return self.edges.index(e)

    @property
    def max_abs_weight(self) -> int:
        return max((abs(e.weight) for e in self.edges), default=0)

    def restrict(self, keep: Iterable[str]) -> "LabeledGraph":
        keep = set(keep)
        return LabeledGraph(
            tuple(v for v in self.vertices if v in keep),
            tuple(e for e in self.edges if e.src in keep and e.dst in keep),
        )

    def reachable_from(self, sources: Iterable[str]) -> set[str]:
        seen = set(sources)
        stack = list(seen)
        while stack:
            v = stack.pop()
            for e in self._out[v]:
                if e.dst not in seen:
                    seen.add(e.dst)
                    stack.append(e.dst)
        return seen


@dataclass(frozen=True)
class Arena:
    graph: LabeledGraph
    owner: Mapping[str, Owner]

    def __post_init__(self):
        for v in self.graph.vertices:
            if v not in self.owner:
                raise ParseError(f"vertex {v!r} has no owner")
            if not isinstance(self.owner[v], Owner):
                raise UnknownOwner(self.owner[v])
            if not self.graph.out_edges(v):
                raise DeadEnd(v)
        extra = set(self.owner) - set(self.graph.vertices)
        if extra:
            raise UndeclaredVertex(sorted(extra)[0])
        object.__setattr__(self, "owner", dict(self.owner))

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.graph.vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self.graph.edges

    def out_edges(self, v: str) -> tuple[Edge, ...]:
        return self.graph.out_edges(v)

    def owned_by(self, player: Owner) -> list[str]:
        return [v for v in self.graph.vertices if self.owner[v] is player]

    def swapped(self) -> "Arena":
        """Same graph with Eve and Adam exchanged."""
        return Arena(self.graph, {v: o.opponent for v, o in self.owner.items()})

    def reweighted(self, fn) -> "Arena":
        """Arena with each weight w replaced by fn(w); edge order is preserved."""
        g = LabeledGraph(self.graph.vertices, tuple(Edge(e.src, fn(e.weight), e.dst) for e in self.graph.edges))
        if len(g.edges) != len(self.graph.edges):
            raise SumGamesError("reweighting must be injective on parallel edges")
        return Arena(g, self.owner)


# -- JSON -------------------------------------------------------------------


def _load(text) -> dict:
    if isinstance(text, (str, bytes)):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed JSON: {exc}") from None
    else:
        doc = text
    if not isinstance(doc, dict) or not isinstance(doc.get("vertices"), list) or not isinstance(doc.get("edges"), list):
        raise ParseError("document must be an object with 'vertices' and 'edges' lists")
    return doc


def parse_labeled_graph(text, mode: str = "graph") -> LabeledGraph | Arena:
    """Parse the JSON graph/arena document.

    ``mode="graph"`` ignores owner fields; ``mode="arena"`` requires them and
    enforces the arena invariants (total owner map, no dead ends).
    """
    if mode not in ("graph", "arena"):
        raise ValueError(f"mode must be 'graph' or 'arena', not {mode!r}")
    doc = _load(text)
    ids = []
    owners = {}
    for item in doc["vertices"]:
        if not isinstance(item, dict) or not isinstance(item.get("id"), str):
            raise ParseError(f"malformed vertex entry {item!r}")
        ids.append(item["id"])
        if mode == "arena":
            if "owner" not in item:
                raise ParseError(f"vertex {item['id']!r} lacks an owner")
            owners[item["id"]] = Owner.parse(item["owner"])
    edges = []
    for item in doc["edges"]:
        if not isinstance(item, dict) or not {"from", "to", "weight"} <= item.keys():
            raise ParseError(f"malformed edge entry {item!r}")
        edges.append(Edge(item["from"], item["weight"], item["to"]))
    graph = LabeledGraph(tuple(ids), tuple(edges))
    if mode == "graph":
        return graph
    return Arena(graph, owners)


def to_document(obj: LabeledGraph | Arena) -> dict:
    graph = obj.graph if isinstance(obj, Arena) else obj
    vertices = []
    for v in graph.vertices:
        entry = {"id": v}
        if isinstance(obj, Arena):
            entry["owner"] = obj.owner[v].value
        vertices.append(entry)
    return {"vertices": vertices, "edges": [{"from": e.src, "to": e.dst, "weight": e.weight} for e in graph.edges]}


def serialize(obj: LabeledGraph | Arena, indent: int | None = None) -> str:
    return json.dumps(to_document(obj), indent=indent)


# -- DOT --------------------------------------------------------------------

_BARE_ID = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def dot_id(v: str) -> str:
    return v if _BARE_ID.match(v) else json.dumps(v)


def to_dot(obj: LabeledGraph | Arena, highlight: Iterable[Edge] = (), name: str = "G") -> str:
    graph = obj.graph if isinstance(obj, Arena) else obj
    bold = set(highlight)
    lines = [f"digraph {name} {{"]
    for v in graph.vertices:
        if isinstance(obj, Arena):
            shape = "circle" if obj.owner[v] is Owner.EVE else "square"
            lines.append(f"  {dot_id(v)} [shape={shape}];")
        else:
            lines.append(f"  {dot_id(v)};")
    for e in graph.edges:
        extra = ", style=bold" if e in bold else ""
        lines.append(f'  {dot_id(e.src)} -> {dot_id(e.dst)} [label="{e.weight}"{extra}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- words ------------------------------------------------------------------


def prefix_sums(word: Sequence[int]) -> list[int]:
    """Cumulative sums ``out[k] = word[0] + ... + word[k]``; overflow raises."""
    out = []
    total = 0
    for w in word:
        total = checked_add(total, w)
        out.append(total)
    return out
