"""Positional strategies and the solver-independent certificate checker."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ..core import Arena, Edge, LabeledGraph, Owner, SumGamesError
from ..objective import nonpositive_cycle, positive_cycle


@dataclass(frozen=True)
class PositionalStrategy:
    player: Owner
    choice: dict  # vertex -> Edge

    def to_json(self, arena: Arena) -> dict:
        return {v: arena.graph.edge_index(e) for v, e in self.choice.items()}

    @classmethod
    def from_json(cls, arena: Arena, player: Owner, doc: dict) -> "PositionalStrategy":
        return cls(player, {v: arena.edges[int(i)] for v, i in doc.items()})

    @classmethod
    def first_edges(cls, arena: Arena, player: Owner) -> "PositionalStrategy":
        return cls(player, {v: arena.out_edges(v)[0] for v in arena.owned_by(player)})

    def chosen(self) -> set[Edge]:
        return set(self.choice.values())


@dataclass(frozen=True)
class CertificateVerdict:
    valid: bool
    witness: tuple[Edge, ...] | None = None

    def __bool__(self) -> bool:
        return self.valid

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "witness": None if self.witness is None else [e.to_json() for e in self.witness],
        }


def strategy_subgraph(arena: Arena, strategy: PositionalStrategy) -> LabeledGraph:
    """Arena graph where the strategy's player keeps only the chosen edge."""
    keep = []
    for e in arena.edges:
        if arena.owner[e.src] is strategy.player and strategy.choice[e.src] != e:
            continue
        keep.append(e)
    return LabeledGraph(arena.vertices, tuple(keep))


def _check_total(arena: Arena, strategy: PositionalStrategy) -> None:
    for v in arena.owned_by(strategy.player):
        e = strategy.choice.get(v)
        if e is None:
            raise SumGamesError(f"strategy for {strategy.player.value} has no move at {v!r}")
        if e not in arena.out_edges(v):
            raise SumGamesError(f"strategy move {e} is not an edge leaving {v!r}")


def verify_certificate(arena: Arena, strategy: PositionalStrategy, region: Iterable[str]) -> CertificateVerdict:
    """Check that ``strategy`` wins from every vertex of ``region``.

    Eve: no cycle of weight <= 0 is reachable from the region once her
    vertices are fixed.  Adam: no cycle of weight >= 1 is reachable once his
    vertices are fixed.
    """
    _check_total(arena, strategy)
    region = list(region)
    if not region:
        return CertificateVerdict(True)
    sub = strategy_subgraph(arena, strategy)
    if strategy.player is Owner.EVE:
        cycle = nonpositive_cycle(sub, region)
    else:
        cycle = positive_cycle(sub, region)
    return CertificateVerdict(cycle is None, cycle)
