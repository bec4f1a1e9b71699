"""Embedding satisfying graphs into U.

``phi_paper`` executes the rank construction literally: n-values, tight
edges, the level-k DAGs of tight paths and their ranks.  ``verify_morphism``
checks any assignment edge by edge, and ``phi_fixpoint`` computes the least
assignment that is a morphism, as an independently verified fallback.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

from .core import Edge, LabeledGraph, SumGamesError
from .lifting import least_measure
from .objective import satisfies
from .universal import TOP, format_tuple, is_edge, lex_gt, parse_tuple


class NegativeCycleReachable(SumGamesError):
    pass


class NotSatisfying(SumGamesError):
    def __init__(self, witness=()):
        cyc = ", ".join(str(e) for e in witness)
        super().__init__(f"graph does not satisfy SumToInfinity; cycle of weight <= 0: {cyc}")
        self.witness = tuple(witness)


class TightCycle(SumGamesError):
    pass


class BoundExceeded(SumGamesError):
    def __init__(self, max_len: int, max_coord: int, unresolved):
        super().__init__(
            f"no morphism into the fragment (max_len={max_len}, max_coord={max_coord}); "
            f"unresolved vertices: {', '.join(unresolved)}"
        )
        self.max_len = max_len
        self.max_coord = max_coord
        self.unresolved = tuple(unresolved)


class _Bottom:
    def __repr__(self) -> str:
        return "BOTTOM"

    def __reduce__(self):
        return (_bottom, ())


def _bottom():
    return BOTTOM


BOTTOM = _Bottom()


# -- n-values ---------------------------------------------------------------


@dataclass(frozen=True)
class NMap:
    """n(v) = -(least weight of a non-empty path from v); BOTTOM for sinks."""

    values: dict
    negative: tuple[str, ...]

    @property
    def v0(self) -> str | None:
        return self.negative[0] if self.negative else None

    def __getitem__(self, v):
        return self.values[v]

    def to_json(self) -> dict:
        return {
            "n": {v: (None if n is BOTTOM else n) for v, n in self.values.items()},
            "v0": self.v0,
            "negative": list(self.negative),
        }


def compute_n(graph: LabeledGraph) -> NMap:
    verts = graph.vertices
    inf = float("inf")
    # best[v] = least weight of a path of length 1..k from v
    best = {v: inf for v in verts}
    for _ in range(len(verts)):
        nxt = {}
        for v in verts:
            m = inf
            for e in graph.out_edges(v):
                m = min(m, e.weight + min(0, best[e.dst]))
            nxt[v] = m
        best = nxt
    for v in verts:
        for e in graph.out_edges(v):
            if e.weight + min(0, best[e.dst]) < best[v]:
                raise NegativeCycleReachable(f"a cycle of negative weight is reachable from {v!r}")
    values = {v: (BOTTOM if best[v] == inf else -int(best[v])) for v in verts}
    negative = tuple(v for v in verts if values[v] is not BOTTOM and values[v] < 0)
    return NMap(values, negative)


def is_tight(e: Edge, nmap: NMap) -> bool:
    a, b = nmap[e.src], nmap[e.dst]
    return a is not BOTTOM and b is not BOTTOM and a + e.weight == b


def tight_edges(graph: LabeledGraph, nmap: NMap) -> list[Edge]:
    return [e for e in graph.edges if is_tight(e, nmap)]


# -- level-k DAGs -----------------------------------------------------------


@dataclass(frozen=True)
class TightDag:
    root: str
    level: int
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, int, str], ...]
    ranks: dict = field(compare=False)

    @property
    def rank(self) -> int:
        return max(self.ranks.values(), default=0)

    def successors(self, v: str) -> list[str]:
        return [b for a, _, b in self.edges if a == v]


def _tight_adjacency(graph: LabeledGraph, nmap: NMap) -> dict:
    adj = {v: [] for v in graph.vertices}
    for e in graph.edges:
        if is_tight(e, nmap):
            adj[e.src].append(e)
    return adj


def _check_tight_acyclic(graph: LabeledGraph, adj: dict) -> None:
    state = {}
    for root in graph.vertices:
        if root in state:
            continue
        stack = [(root, iter(adj[root]))]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            e = next(it, None)
            if e is None:
                state[v] = 2
                stack.pop()
            elif state.get(e.dst) == 1:
                raise TightCycle(f"tight cycle through {e.dst!r}; the graph has a cycle of weight 0")
            elif e.dst not in state:
                state[e.dst] = 1
                stack.append((e.dst, iter(adj[e.dst])))


def build_tvk(graph: LabeledGraph, nmap: NMap, v: str, k: int, _adj: dict | None = None) -> TightDag:
    """Vertices with n <= k tight-reachable from v, linked by tight paths whose
    inner vertices all have n > k; ranks by longest path (leaves are 0)."""
    adj = _adj if _adj is not None else _tight_adjacency(graph, nmap)
    if _adj is None:
        _check_tight_acyclic(graph, adj)

    reach = [v]
    seen = {v}
    for x in reach:
        for e in adj[x]:
            if e.dst not in seen:
                seen.add(e.dst)
                reach.append(e.dst)
    low = [x for x in reach if nmap[x] is not BOTTOM and nmap[x] <= k]

    dag_edges = []
    for a in low:
        found = {}
        stack = [(a, 0)]
        visited = set()
        while stack:
            x, acc = stack.pop()
            for e in adj[x]:
                y, w = e.dst, acc + e.weight
                if nmap[y] <= k:
                    found.setdefault(y, w)
                elif y not in visited:
                    visited.add(y)
                    stack.append((y, w))
        dag_edges.extend((a, w, b) for b, w in found.items())

    succ = {x: [b for a, _, b in dag_edges if a == x] for x in low}

    @lru_cache(maxsize=None)
    def rank(x):
        return 1 + max(rank(y) for y in succ[x]) if succ[x] else 0

    return TightDag(v, k, tuple(low), tuple(dag_edges), {x: rank(x) for x in low})


# -- morphisms --------------------------------------------------------------


@dataclass(frozen=True)
class EdgeCheck:
    edge: Edge
    holds: bool
    reason: str


@dataclass(frozen=True)
class Morphism:
    assignment: dict
    report: tuple[EdgeCheck, ...]
    method: str = "given"
    root: str | None = None
    rooted_vertices: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.report)

    @property
    def failures(self) -> list[Edge]:
        return [c.edge for c in self.report if not c.holds]

    def to_json(self) -> dict:
        doc = {
            "assignment": {v: format_tuple(u) for v, u in self.assignment.items()},
            "failures": [e.to_json() for e in self.failures],
            "method": self.method,
        }
        if self.root is not None:
            doc["v0"] = self.root
        return doc


def _explain(u, w: int, v) -> tuple[bool, str]:
    lhs = len(u) + w
    fu, fv = format_tuple(u), format_tuple(v)
    if lhs > len(v):
        return True, f"|{fu}|+{w} = {lhs} > {len(v)}"
    if lhs < len(v):
        return False, f"|{fu}|+{w} = {lhs} < {len(v)}"
    if lex_gt(u, v):
        return True, f"|{fu}|+{w} = {len(v)} and {fu} >lex {fv}"
    return False, f"|{fu}|+{w} = {len(v)} but not {fu} >lex {fv}"


def verify_morphism(graph: LabeledGraph, assignment: dict, method: str = "given") -> Morphism:
    missing = [v for v in graph.vertices if v not in assignment]
    if missing:
        raise SumGamesError(f"assignment is missing vertices: {', '.join(missing)}")
    report = []
    for e in graph.edges:
        u, v = assignment[e.src], assignment[e.dst]
        holds, why = _explain(u, e.weight, v)
        assert holds == is_edge(u, e.weight, v)
        report.append(EdgeCheck(e, holds, why))
    return Morphism(dict(assignment), tuple(report), method)


def _require_satisfying(graph: LabeledGraph) -> None:
    verdict = satisfies(graph)
    if not verdict.satisfies:
        raise NotSatisfying(verdict.witness)


def phi_paper(graph: LabeledGraph) -> Morphism:
    """phi(v) = (rk T_{v,0}, ..., rk T_{v,n(v)}); the empty tuple when n(v) < 0.

    The report is returned as is: edges that fail are part of the result.
    """
    _require_satisfying(graph)
    nmap = compute_n(graph)
    adj = _tight_adjacency(graph, nmap)
    _check_tight_acyclic(graph, adj)
    assignment = {}
    for v in graph.vertices:
        n = nmap[v]
        if n is BOTTOM or n < 0:
            assignment[v] = ()
        else:
            assignment[v] = tuple(build_tvk(graph, nmap, v, k, adj).rank for k in range(n + 1))
    checked = verify_morphism(graph, assignment, method="paper")
    root = nmap.v0
    rooted = tuple(v for v in graph.vertices if v in graph.reachable_from([root])) if root else ()
    return Morphism(checked.assignment, checked.report, "paper", root, rooted)


BOUNDARY = "boundary"
RANK_TIE = "rank-tie"


def failure_kind(graph: LabeledGraph, nmap: NMap, edge: Edge, assignment: dict) -> str | None:
    """Name the known gap of the literal construction behind a failing edge.

    ``BOUNDARY``: tight edge with n(v) = -1 and n(v') >= 0, so phi(v) = ()
    while phi(v') is nonempty of length w.

    ``RANK_TIE``: tight edge with n(v) >= 0 where T_{v',n(v)} is empty.  The
    empty graph and a single leaf both have rank 0, so phi(v) can end up a
    prefix of phi(v') and the strict lexicographic step does not hold.

    Returns None when the edge fits neither pattern.
    """
    a, b = nmap[edge.src], nmap[edge.dst]
    if a is BOTTOM or b is BOTTOM or not is_tight(edge, nmap):
        return None
    if a == -1 and b >= 0:
        return BOUNDARY
    u, v = assignment[edge.src], assignment[edge.dst]
    if a >= 0 and not build_tvk(graph, nmap, edge.dst, a).vertices and v[: len(u)] == u:
        return RANK_TIE
    return None


def default_bounds(graph: LabeledGraph) -> tuple[int, int]:
    n = len(graph.vertices)
    return 2 + max(n - 1, 0) * graph.max_abs_weight, n + 1


def phi_fixpoint(
    graph: LabeledGraph,
    max_len: int | None = None,
    max_coord: int | None = None,
    retries: int = 3,
) -> Morphism:
    """Least morphism into a fragment of U, found by ascending lifting.

    Bounds default to ``default_bounds`` and are doubled up to ``retries``
    times when some vertex has no image in the fragment.
    """
    _require_satisfying(graph)
    d_len, d_coord = default_bounds(graph)
    max_len = d_len if max_len is None else max_len
    max_coord = d_coord if max_coord is None else max_coord
    for attempt in range(retries + 1):
        mu = least_measure(graph, max_len, max_coord)
        unresolved = [v for v, u in mu.items() if u is TOP]
        if not unresolved:
            checked = verify_morphism(graph, mu, method="fixpoint")
            if not checked.ok:
                raise SumGamesError("fixpoint assignment failed verification: " + ", ".join(map(str, checked.failures)))
            return checked
        if attempt == retries:
            break
        max_len, max_coord = 2 * max_len, 2 * max_coord
    raise BoundExceeded(max_len, max_coord, unresolved)


def load_assignment(text) -> dict:
    doc = json.loads(text) if isinstance(text, (str, bytes)) else text
    raw = doc.get("assignment", doc) if isinstance(doc, dict) else None
    if not isinstance(raw, dict):
        raise SumGamesError("morphism document must map vertices to tuples under 'assignment'")
    return {v: parse_tuple(t) for v, t in raw.items()}
