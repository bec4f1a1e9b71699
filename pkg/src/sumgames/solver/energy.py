"""Reduction to energy games and progress-measure lifting.

A cycle of at most |V| edges has weight >= 1 iff its weight under
``w -> |V|*w - 1`` is >= 0, so Eve's SumToInfinity region is her winning
region in the energy game with the rescaled weights.
"""

from __future__ import annotations

from ..core import Arena, Owner
from .certificate import PositionalStrategy

TOP = None


def rescale(arena: Arena, weaken: bool = False) -> Arena:
    n = len(arena.vertices)
    if weaken:
        return arena.reweighted(lambda w: n * w)
    return arena.reweighted(lambda w: n * w - 1)


def energy_measure(arena: Arena, player: Owner = Owner.EVE) -> dict:
    """Least energy progress measure for ``player`` (values in 0..M or None for TOP).

    ``player`` needs every cycle in her strategy graph to have weight >= 0.
    """
    bound = sum(-e.weight for e in arena.edges if e.weight < 0)
    verts = arena.vertices
    f = {v: 0 for v in verts}
    preds = {v: [] for v in verts}
    for e in arena.edges:
        preds[e.dst].append(e.src)

    def lift(v):
        vals = []
        for e in arena.out_edges(v):
            t = f[e.dst]
            if t is TOP:
                vals.append(None)
                continue
            need = max(0, t - e.weight)
            vals.append(need if need <= bound else None)
        key = lambda x: float("inf") if x is None else x
        return (min if arena.owner[v] is player else max)(vals, key=key)

    work = list(verts)
    queued = set(work)
    while work:
        v = work.pop(0)
        queued.discard(v)
        if f[v] is TOP:
            continue
        new = lift(v)
        if new is TOP or new > f[v]:
            f[v] = new
            for u in preds[v]:
                if u not in queued and f[u] is not TOP:
                    queued.add(u)
                    work.append(u)
    return f


def extract_strategy(arena: Arena, f: dict, player: Owner) -> PositionalStrategy:
    """Per owned vertex, the edge minimising the required credit; ties by edge order."""
    choice = {}
    for v in arena.owned_by(player):
        best, best_key = None, None
        for pos, e in enumerate(arena.out_edges(v)):
            t = f[e.dst]
            need = float("inf") if t is TOP else max(0, t - e.weight)
            key = (need, pos)
            if best_key is None or key < best_key:
                best, best_key = e, key
        choice[v] = best
    return PositionalStrategy(player, choice)


def solve_energy(arena: Arena, weaken: bool = False):
    scaled = rescale(arena, weaken)
    f = energy_measure(scaled, Owner.EVE)
    region = {v for v in arena.vertices if f[v] is not TOP}
    sigma = extract_strategy(scaled, f, Owner.EVE)
    # Adam wins iff every cycle he allows has weight <= 0, i.e. weight >= 0 after negation
    dual = arena.reweighted(lambda w: -w)
    g = energy_measure(dual, Owner.ADAM)
    dual_region = {v for v in arena.vertices if g[v] is not TOP}
    tau = extract_strategy(dual, g, Owner.ADAM)
    return region, _unscale(arena, scaled, sigma), dual_region, _unscale(arena, dual, tau)


def _unscale(arena: Arena, scaled: Arena, strategy: PositionalStrategy) -> PositionalStrategy:
    back = dict(zip(scaled.edges, arena.edges))
    return PositionalStrategy(strategy.player, {v: back[e] for v, e in strategy.choice.items()})
