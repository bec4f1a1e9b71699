"""The universal graph U on tuples of naturals and its finite fragments.

Vertices of U are finite tuples (Python ``tuple[int, ...]``).  A tuple ``u``
has an edge of weight ``w`` to ``u2`` iff ``len(u) + w >= len(u2)`` and,
in case of equality, ``u`` is lexicographically above ``u2``.  The order on
U compares lengths first and uses the lexicographic order only between
tuples of equal length.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable

from .core import Edge, LabeledGraph, SizeCapExceeded, SumGamesError, size_cap

OrdTuple = tuple  # tuple[int, ...]


class _Top:
    """Distinguished element above every tuple."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "TOP"

    def __reduce__(self):
        return (_Top, ())


TOP = _Top()


# -- orders -----------------------------------------------------------------


def lex_gt(u: OrdTuple, v: OrdTuple) -> bool:
    """``v`` is a proper prefix of ``u``, or ``u`` wins at the first difference."""
    for a, b in zip(u, v):
        if a != b:
            return a > b
    return len(u) > len(v)


def order_key(u) -> tuple:
    """Sort key realising the U order; TOP sorts above everything."""
    if u is TOP:
        return (float("inf"),)
    return (len(u), u)


def order_gt(u: OrdTuple, v: OrdTuple) -> bool:
    return len(u) > len(v) or (len(u) == len(v) and lex_gt(u, v))


def u_max(a, b):
    return a if order_key(a) >= order_key(b) else b


def u_min(a, b):
    return a if order_key(a) <= order_key(b) else b


def is_edge(u: OrdTuple, w: int, v: OrdTuple) -> bool:
    lhs = len(u) + w
    if lhs > len(v):
        return True
    return lhs == len(v) and lex_gt(u, v)


def is_edge_weak(u: OrdTuple, w: int, v: OrdTuple) -> bool:
    """Length-only relaxation (no strictness on ties); used for mutation runs."""
    return len(u) + w >= len(v)


# -- least sources ------------------------------------------------------------


def lex_successor(t: OrdTuple, max_coord: int) -> OrdTuple | None:
    """Least tuple of the same length strictly lex-above ``t`` with coords < max_coord."""
    for i in range(len(t) - 1, -1, -1):
        if t[i] + 1 < max_coord:
            return t[:i] + (t[i] + 1,) + (0,) * (len(t) - i - 1)
    return None


def least_source(w: int, target, max_len: int, max_coord: int):
    """Least tuple ``u`` (U order) of the fragment with an edge ``u -w-> target``.

    The set of such ``u`` is upward closed because U is monotone, so this
    value is a threshold.  Returns TOP when the fragment has none.
    """
    if target is TOP:
        return TOP
    n = len(target) - w
    if n < 0:
        return ()
    if max_coord == 0:
        # the fragment is just the empty tuple
        return TOP
    if n <= max_len:
        if n > len(target):
            return target + (0,) * (n - len(target))
        cand = lex_successor(target[:n], max_coord)
        if cand is not None:
            return cand
    if n + 1 <= max_len:
        return (0,) * (n + 1)
    return TOP


def least_source_weak(w: int, target, max_len: int, max_coord: int):
    if target is TOP:
        return TOP
    n = len(target) - w
    if n <= 0:
        return ()
    return (0,) * n if n <= max_len and max_coord > 0 else TOP


# -- text syntax --------------------------------------------------------------

_TUPLE_RE = re.compile(r"^\(\s*(\d+(\s*,\s*\d+)*)?\s*,?\s*\)$")


def parse_tuple(text: str) -> OrdTuple:
    if isinstance(text, (list, tuple)) and all(isinstance(x, int) and x >= 0 for x in text):
        return tuple(text)
    if not isinstance(text, str):
        raise SumGamesError(f"not a tuple of naturals: {text!r}")
    s = text.strip()
    if not _TUPLE_RE.match(s):
        raise SumGamesError(f"not a tuple of naturals: {text!r}")
    inner = s[1:-1].strip().rstrip(",")
    if not inner:
        return ()
    return tuple(int(x) for x in inner.split(","))


def format_tuple(u) -> str:
    if u is TOP:
        return "TOP"
    return "(" + ",".join(str(x) for x in u) + ")"


# -- fragments ----------------------------------------------------------------


def fragment_size(max_len: int, max_coord: int) -> int:
    return sum(max_coord**i for i in range(max_len + 1))


@dataclass(frozen=True)
class Fragment:
    max_len: int
    max_coord: int
    weight_set: tuple[int, ...]
    vertices: tuple[OrdTuple, ...]
    edges: frozenset  # of (u, w, v)
    _graph: LabeledGraph | None = field(default=None, compare=False, repr=False)

    @property
    def graph(self) -> LabeledGraph:
        if self._graph is None:
            g = LabeledGraph(
                tuple(format_tuple(u) for u in self.vertices),
                tuple(Edge(format_tuple(u), w, format_tuple(v)) for u, w, v in self.sorted_edges()),
            )
            object.__setattr__(self, "_graph", g)
        return self._graph

    def sorted_edges(self) -> list:
        pos = {u: i for i, u in enumerate(self.vertices)}
        return sorted(self.edges, key=lambda e: (pos[e[0]], e[1], pos[e[2]]))

    def without_edge(self, edge) -> "Fragment":
        return Fragment(self.max_len, self.max_coord, self.weight_set, self.vertices, self.edges - {edge})


def enumerate_tuples(max_len: int, max_coord: int) -> list[OrdTuple]:
    """All tuples of length <= max_len with coordinates < max_coord, in U order."""
    out = []
    for n in range(max_len + 1):
        out.extend(itertools.product(range(max_coord), repeat=n))
    return out


def build_fragment(max_len: int, max_coord: int, weight_set: Iterable[int], cap: int | None = None) -> Fragment:
    if max_len < 0 or max_coord < 0:
        raise SumGamesError("fragment bounds must be non-negative")
    weights = tuple(sorted(set(weight_set)))
    cap = size_cap() if cap is None else cap
    count = fragment_size(max_len, max_coord)
    if count > cap:
        raise SizeCapExceeded(f"fragment would have {count} vertices, cap is {cap}")
    verts = tuple(enumerate_tuples(max_len, max_coord))
    edges = frozenset((u, w, v) for u in verts for w in weights for v in verts if is_edge(u, w, v))
    return Fragment(max_len, max_coord, weights, verts, edges)


@dataclass(frozen=True)
class MonotonicityViolation:
    u: OrdTuple
    v: OrdTuple
    weight: int
    v2: OrdTuple
    u2: OrdTuple

    def __str__(self) -> str:
        return (
            f"{format_tuple(self.u)} >= {format_tuple(self.v)} -[{self.weight}]-> "
            f"{format_tuple(self.v2)} >= {format_tuple(self.u2)} but no edge "
            f"{format_tuple(self.u)} -[{self.weight}]-> {format_tuple(self.u2)}"
        )


def check_monotonicity(fragment: Fragment) -> MonotonicityViolation | None:
    """Exhaustive check of ``u >= v -w-> v2 >= u2  implies  u -w-> u2``.

    Returns None when the fragment is monotone, otherwise the first
    violating quintuple in (edge, u, u2) enumeration order.
    """
    verts = fragment.vertices
    pos = {u: i for i, u in enumerate(verts)}
    edges = fragment.edges
    for v, w, v2 in fragment.sorted_edges():
        for u in verts[pos[v]:]:
            for u2 in verts[: pos[v2] + 1]:
                if (u, w, u2) not in edges:
                    return MonotonicityViolation(u, v, w, v2, u2)
    return None
