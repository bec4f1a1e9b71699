"""Progress measures valued in U.

Eve's vertices take the least requirement over their edges and Adam's the
largest; the non-TOP vertices of the least measure form Eve's region.
Adam's strategy comes from the same lifting run on the dual game, which is
again a SumToInfinity game: Adam wins a cycle iff its weight is <= 0, iff
its weight under ``w -> (|V|+1)*(-w) + 1`` is >= 1.
"""

from __future__ import annotations

from ..core import Arena, Owner, SumGamesError
from ..lifting import least_measure, requirement
from ..morphism import default_bounds
from ..universal import TOP, order_key
from .certificate import PositionalStrategy

MAX_DOUBLINGS = 4


class BoundCeiling(SumGamesError):
    pass


def measure(arena: Arena, player: Owner, max_len: int, max_coord: int, weak: bool = False) -> dict:
    return least_measure(arena.graph, max_len, max_coord, arena.owned_by(player), weak=weak)


def stable_measure(arena: Arena, player: Owner, weak: bool = False):
    """Least measure at default bounds, doubled until the region stops changing."""
    max_len, max_coord = default_bounds(arena.graph)
    mu = measure(arena, player, max_len, max_coord, weak)
    if all(u is not TOP for u in mu.values()):
        return mu, (max_len, max_coord)
    for _ in range(MAX_DOUBLINGS):
        max_len, max_coord = 2 * max_len, 2 * max_coord
        bigger = measure(arena, player, max_len, max_coord, weak)
        if {v for v, u in bigger.items() if u is TOP} == {v for v, u in mu.items() if u is TOP}:
            return bigger, (max_len, max_coord)
        mu = bigger
    raise BoundCeiling(f"region still changing at max_len={max_len}, max_coord={max_coord}")


def extract_strategy(arena: Arena, mu: dict, player: Owner, bounds, weak: bool = False) -> PositionalStrategy:
    """Per owned vertex, the edge of least requirement; ties by edge order."""
    choice = {}
    for v in arena.owned_by(player):
        edges = arena.out_edges(v)
        reqs = [order_key(requirement(e, mu, *bounds, weak=weak)) for e in edges]
        best = min(range(len(edges)), key=lambda i: (reqs[i], i))
        choice[v] = edges[best]
    return PositionalStrategy(player, choice)


def dual_arena(arena: Arena) -> Arena:
    n = len(arena.vertices)
    return arena.swapped().reweighted(lambda w: (n + 1) * (-w) + 1)


def solve_umeasure(arena: Arena, weaken: bool = False):
    mu, bounds = stable_measure(arena, Owner.EVE, weak=weaken)
    region = {v for v in arena.vertices if mu[v] is not TOP}
    sigma = extract_strategy(arena, mu, Owner.EVE, bounds, weak=weaken)

    dual = dual_arena(arena)
    nu, dbounds = stable_measure(dual, Owner.EVE)
    dual_region = {v for v in arena.vertices if nu[v] is not TOP}
    tau_dual = extract_strategy(dual, nu, Owner.EVE, dbounds)
    back = dict(zip(dual.edges, arena.edges))
    tau = PositionalStrategy(Owner.ADAM, {v: back[e] for v, e in tau_dual.choice.items()})
    return region, sigma, dual_region, tau, mu

