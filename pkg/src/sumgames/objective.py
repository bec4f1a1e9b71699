"""The SumToInfinity objective on finite structures and the FinOcc reduction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .core import Edge, LabeledGraph, SumGamesError, prefix_sums


@dataclass(frozen=True)
class SatisfactionVerdict:
    satisfies: bool
    witness: tuple[Edge, ...] | None = None

    def __bool__(self) -> bool:
        return self.satisfies

    @property
    def witness_weight(self) -> int | None:
        return None if self.witness is None else sum(e.weight for e in self.witness)


def find_negative_cycle(
    graph: LabeledGraph,
    cost: Callable[[Edge], int],
    sources: Iterable[str] | None = None,
) -> tuple[Edge, ...] | None:
    """Return a cycle of negative total ``cost`` reachable from ``sources``, or None.

    Bellman-Ford from a virtual source attached to every start vertex, with a
    predecessor walk to extract the cycle.
    """
    if sources is None:
        live = set(graph.vertices)
    else:
        live = graph.reachable_from(sources)
    order = [v for v in graph.vertices if v in live]
    edges = [e for e in graph.edges if e.src in live]
    dist = {v: 0 for v in order}
    pred: dict[str, Edge] = {}
    last = None
    for _ in range(len(order)):
        last = None
        for e in edges:
            d = dist[e.src] + cost(e)
            if d < dist[e.dst]:
                dist[e.dst] = d
                pred[e.dst] = e
                last = e.dst
        if last is None:
            return None
    if last is None:
        return None
    v = last
    for _ in range(len(order)):
        v = pred[v].src
    cycle = []
    u = v
    while True:
        e = pred[u]
        cycle.append(e)
        u = e.src
        if u == v:
            break
    cycle.reverse()
    return tuple(cycle)


def nonpositive_cycle(graph: LabeledGraph, sources: Iterable[str] | None = None) -> tuple[Edge, ...] | None:
    """A reachable cycle of total weight <= 0, if any.

    A cycle has at most |V| edges, so weight <= 0 iff the cost |V|*w - 1
    sums to a negative number.
    """
    n = max(len(graph.vertices), 1)
    return find_negative_cycle(graph, lambda e: n * e.weight - 1, sources)


def positive_cycle(graph: LabeledGraph, sources: Iterable[str] | None = None) -> tuple[Edge, ...] | None:
    """A reachable cycle of total weight >= 1, if any."""
    return find_negative_cycle(graph, lambda e: -e.weight, sources)


def satisfies(graph: LabeledGraph) -> SatisfactionVerdict:
    """Every infinite path has prefix sums tending to +inf.

    On a finite graph this holds iff every cycle has weight >= 1; a
    violating cycle is returned as witness.
    """
    cycle = nonpositive_cycle(graph)
    if cycle is None:
        return SatisfactionVerdict(True)
    return SatisfactionVerdict(False, cycle)


def membership_up(prefix: Sequence[int], cycle: Sequence[int]) -> bool:
    """Membership of the ultimately periodic word ``prefix . cycle^omega``."""
    if len(cycle) == 0:
        raise SumGamesError("the repeated block of an ultimately periodic word must be nonempty")
    prefix_sums(prefix)  # overflow check only; the prefix never decides membership
    return prefix_sums(cycle)[-1] >= 1


def reduce_finocc(prefix: Sequence[int]) -> list[int]:
    """Difference word ``w_i = c_{i+1} - c_i`` of a sequence of naturals."""
    if len(prefix) < 1:
        raise SumGamesError("reduce_finocc needs at least one value")
    for c in prefix:
        if isinstance(c, bool) or not isinstance(c, int) or c < 0:
            raise SumGamesError(f"reduce_finocc expects natural numbers, got {c!r}")
    return [b - a for a, b in zip(prefix, prefix[1:])]
