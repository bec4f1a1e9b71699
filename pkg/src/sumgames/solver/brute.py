"""Brute force over positional strategies.

Every positional strategy of one player is enumerated at once as a batch of
weight matrices, and Floyd-Warshall on the batch finds, per strategy, the
vertices from which a bad closed walk is reachable.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..core import Arena, Owner, SumGamesError
from .certificate import PositionalStrategy

MAX_CHOOSERS = 8
MAX_DEGREE = 4


class GuardExceeded(SumGamesError):
    pass


def _guard(arena: Arena, player: Owner) -> None:
    owned = arena.owned_by(player)
    if len(owned) > MAX_CHOOSERS:
        raise GuardExceeded(f"brute force needs <= {MAX_CHOOSERS} {player.value} vertices, got {len(owned)}")
    for v in owned:
        if len(arena.out_edges(v)) > MAX_DEGREE:
            raise GuardExceeded(f"brute force needs out-degree <= {MAX_DEGREE}; {v!r} has {len(arena.out_edges(v))}")
    bound = len(arena.vertices) * (arena.graph.max_abs_weight + 1) * 2 ** (len(arena.vertices) + 1)
    if bound >= 2**52:
        raise GuardExceeded("weights too large for exact floating-point path sums")


def winning_sets(arena: Arena, player: Owner, weaken: bool = False):
    """Per positional strategy of ``player``, the vertices it wins from.

    Eve wins from v when no closed walk of weight <= 0 (< 0 if ``weaken``) is
    reachable; Adam wins when none of weight >= 1 is.  Returns the list of
    strategies (tuples of edges, one per owned vertex in declaration order)
    and a boolean matrix ``wins[s, v]``.
    """
    _guard(arena, player)
    verts = arena.vertices
    idx = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    sign = 1 if player is Owner.EVE else -1
    # bad closed walk: sum(sign * w) <= threshold
    threshold = (-1 if weaken else 0) if player is Owner.EVE else -1

    base = np.full((n, n), np.inf)
    for e in arena.edges:
        if arena.owner[e.src] is not player:
            i, j = idx[e.src], idx[e.dst]
            base[i, j] = min(base[i, j], sign * e.weight)

    owned = arena.owned_by(player)
    options = [arena.out_edges(v) for v in owned]
    strategies = list(itertools.product(*options))
    dist = np.broadcast_to(base, (len(strategies), n, n)).copy()
    for s, combo in enumerate(strategies):
        for e in combo:
            dist[s, idx[e.src], idx[e.dst]] = sign * e.weight

    for k in range(n):
        dist = np.minimum(dist, dist[:, :, k : k + 1] + dist[:, k : k + 1, :])

    bad = np.diagonal(dist, axis1=1, axis2=2) <= threshold  # (S, n)
    reach = np.isfinite(dist) | np.eye(n, dtype=bool)
    loses = (reach & bad[:, None, :]).any(axis=2)
    return strategies, ~loses


def solve_brute(arena: Arena, player: Owner = Owner.EVE, weaken: bool = False):
    """Region of ``player`` and one strategy winning on all of it (or None)."""
    strategies, wins = winning_sets(arena, player, weaken)
    region_mask = wins.any(axis=0)
    region = {v for v, m in zip(arena.vertices, region_mask) if m}
    covering = np.flatnonzero((wins | ~region_mask).all(axis=1))
    owned = arena.owned_by(player)
    if covering.size:
        combo = strategies[int(covering[0])]
        return region, PositionalStrategy(player, dict(zip(owned, combo))), True
    # no single strategy covers the region; report the widest one
    best = int(np.argmax(wins.sum(axis=1)))
    return region, PositionalStrategy(player, dict(zip(owned, strategies[best]))), False
