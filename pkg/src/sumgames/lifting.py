"""Least progress measures valued in a fragment of U.

``least_measure`` computes the least assignment ``mu`` of fragment tuples
(or TOP) such that every vertex satisfies its local constraint:

* a *max* vertex needs ``mu(v) -w-> mu(v2)`` in U for every edge ``v -w-> v2``;
* a *min* vertex (Eve in a game) needs it for at least one edge.

Plain Kleene iteration is exact but can climb through every tuple of a
length before changing length (a weight-0 cycle forces one lexicographic
successor step per round).  Climbing is cut short by a jump that is sound
because U has no cycle of weight <= 0:

Pick a vertex set D and kept edges K inside D (any subset for min
vertices, a nonempty subset for max vertices) such that every cycle of
(D, K) has weight <= 0.  Let ``esc(v)`` be the least requirement of a min
vertex's non-kept edges.  Any L with

    L(v) <= min(esc(v), min_K least_source(w, L(v2)))   (min vertices)
    L(v) <= max_K least_source(w, L(v2))                (max vertices)

is below the least fixpoint on D: otherwise the vertices where it is not
would carry a cycle of (D, K) whose least-fixpoint values form a cycle of
U, which then has weight >= 1.  The largest such L is computed by
iterating downward from TOP.
"""

from __future__ import annotations

from typing import Iterable

from .core import Edge, LabeledGraph, SumGamesError
from .universal import TOP, least_source, least_source_weak, order_key

DEFAULT_MAX_SWEEPS = 200_000


class LiftingDiverged(SumGamesError):
    pass


def least_measure(
    graph: LabeledGraph,
    max_len: int,
    max_coord: int,
    min_vertices: Iterable[str] = (),
    *,
    weak: bool = False,
    accelerate: bool = True,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
) -> dict:
    least = least_source_weak if weak else least_source
    mins = frozenset(min_vertices)
    verts = graph.vertices
    out = {v: graph.out_edges(v) for v in verts}
    mu = {v: () for v in verts}

    for _ in range(max_sweeps):
        changed = False
        for v in verts:
            cur = mu[v]
            if cur is TOP or not out[v]:
                continue
            reqs = [least(e.weight, mu[e.dst], max_len, max_coord) for e in out[v]]
            best = (min if v in mins else max)(reqs, key=order_key)
            if order_key(best) > order_key(cur):
                mu[v] = best
                changed = True
        if not changed:
            return mu
        # the jump argument relies on U having no weight-0 cycle
        if accelerate and not weak:
            _jump(verts, out, mins, mu, max_len, max_coord, active_only=True)
            _jump(verts, out, mins, mu, max_len, max_coord, active_only=False)
    raise LiftingDiverged(f"lifting did not stabilise within {max_sweeps} sweeps")


def requirement(e: Edge, mu: dict, max_len: int, max_coord: int, weak: bool = False):
    least = least_source_weak if weak else least_source
    return least(e.weight, mu[e.dst], max_len, max_coord)


def _reach(nodes: set, kept: dict) -> dict:
    reach = {}
    for s in nodes:
        seen = set()
        stack = [s]
        while stack:
            x = stack.pop()
            for e in kept[x]:
                if e.dst not in seen:
                    seen.add(e.dst)
                    stack.append(e.dst)
        reach[s] = seen
    return reach


def _has_positive_cycle(nodes: set, edges: list) -> bool:
    # Bellman-Ford on negated weights from a virtual source
    dist = {v: 0 for v in nodes}
    for _ in range(len(nodes)):
        moved = False
        for e in edges:
            d = dist[e.src] - e.weight
            if d < dist[e.dst]:
                dist[e.dst] = d
                moved = True
        if not moved:
            return False
    return True


def _jump(verts, out, mins, mu, max_len, max_coord, active_only=False) -> bool:
    """Raise ``mu`` to the proven lower bound; True if anything moved.

    Min vertices keep either their currently cheapest edges (``active_only``)
    or every edge into the region.
    """
    live = [v for v in verts if mu[v] is not TOP and out[v]]
    if not live:
        return False
    req = {}
    for v in live:
        for e in out[v]:
            req[e] = least_source(e.weight, mu[e.dst], max_len, max_coord)

    region = set(live)
    while True:
        kept = {}
        for v in live:
            if v not in region:
                continue
            inside = [e for e in out[v] if e.dst in region]
            if v in mins and active_only:
                # the rest feed the escape value
                low = min(order_key(req[e]) for e in out[v])
                kept[v] = [e for e in inside if order_key(req[e]) == low]
            elif v in mins:
                kept[v] = inside
            elif inside:
                top = max((order_key(req[e]) for e in inside))
                kept[v] = [e for e in inside if order_key(req[e]) == top]
        dropped = region - kept.keys()
        region = set(kept)
        if dropped:
            continue
        reach = _reach(region, kept)
        bad = set()
        for v in region:
            if v in bad or v not in reach[v]:
                continue
            scc = {u for u in reach[v] if v in reach[u]}
            scc_edges = [e for u in scc for e in kept[u] if e.dst in scc]
            if _has_positive_cycle(scc, scc_edges):
                bad |= scc
        if not bad:
            break
        region -= bad
    if not region:
        return False

    order = [v for v in live if v in region]
    escape = {}
    for v in order:
        if v in mins:
            others = [req[e] for e in out[v] if e not in kept[v]]
            escape[v] = min(others, key=order_key) if others else TOP

    bound = {v: TOP for v in order}
    for _ in range(4 * len(order) + 4):
        changed = False
        for v in order:
            if v in mins:
                val = escape[v]
                for e in kept[v]:
                    cand = least_source(e.weight, bound[e.dst], max_len, max_coord)
                    if order_key(cand) < order_key(val):
                        val = cand
            else:
                val = max(
                    (least_source(e.weight, bound[e.dst], max_len, max_coord) for e in kept[v]),
                    key=order_key,
                )
            if order_key(val) < order_key(bound[v]):
                bound[v] = val
                changed = True
        if not changed:
            break
    else:
        # not yet a fixpoint, so not a proven lower bound
        return False

    moved = False
    for v in order:
        if order_key(bound[v]) > order_key(mu[v]):
            mu[v] = bound[v]
            moved = True
    return moved
