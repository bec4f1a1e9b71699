import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import arenas
from sumgames.core import Owner, parse_labeled_graph
from sumgames.lifting import LiftingDiverged, least_measure, requirement
from sumgames.morphism import default_bounds
from sumgames.universal import TOP, order_key

# arenas on which plain iteration climbs for thousands of rounds
SLOW = [
    """{"vertices": [{"id": "v0", "owner": "Adam"}, {"id": "v1", "owner": "Eve"}, {"id": "v2", "owner": "Eve"},
        {"id": "v3", "owner": "Eve"}, {"id": "v4", "owner": "Eve"}, {"id": "v5", "owner": "Adam"}],
      "edges": [{"from": "v0", "to": "v4", "weight": -2}, {"from": "v1", "to": "v3", "weight": -2},
        {"from": "v1", "to": "v3", "weight": 3}, {"from": "v2", "to": "v5", "weight": -1},
        {"from": "v3", "to": "v3", "weight": 0}, {"from": "v3", "to": "v0", "weight": -2},
        {"from": "v4", "to": "v3", "weight": 0}, {"from": "v4", "to": "v5", "weight": -1},
        {"from": "v4", "to": "v2", "weight": -2}, {"from": "v5", "to": "v2", "weight": 2},
        {"from": "v5", "to": "v4", "weight": 3}]}""",
    """{"vertices": [{"id": "v0", "owner": "Eve"}, {"id": "v1", "owner": "Eve"}, {"id": "v2", "owner": "Adam"}],
      "edges": [{"from": "v0", "to": "v2", "weight": 0}, {"from": "v0", "to": "v0", "weight": 0},
        {"from": "v1", "to": "v0", "weight": 3}, {"from": "v2", "to": "v1", "weight": 1},
        {"from": "v2", "to": "v0", "weight": 0}, {"from": "v2", "to": "v0", "weight": 3}]}""",
]


def is_fixpoint(arena, mu, max_len, max_coord):
    eve = set(arena.owned_by(Owner.EVE))
    for v in arena.vertices:
        if mu[v] is TOP:
            continue
        reqs = [order_key(requirement(e, mu, max_len, max_coord)) for e in arena.out_edges(v)]
        need = min(reqs) if v in eve else max(reqs)
        if need > order_key(mu[v]):
            return False
    return True


@settings(max_examples=150, deadline=None)
@given(arenas(max_vertices=4, weights=st.integers(-2, 2)), st.integers(0, 3), st.integers(1, 3))
def test_accelerated_equals_plain(arena, max_len, max_coord):
    eve = arena.owned_by(Owner.EVE)
    fast = least_measure(arena.graph, max_len, max_coord, eve)
    plain = least_measure(arena.graph, max_len, max_coord, eve, accelerate=False)
    assert fast == plain


@settings(max_examples=100, deadline=None)
@given(arenas(max_vertices=5))
def test_result_is_a_fixpoint(arena):
    bounds = default_bounds(arena.graph)
    mu = least_measure(arena.graph, *bounds, arena.owned_by(Owner.EVE))
    assert is_fixpoint(arena, mu, *bounds)


@pytest.mark.parametrize("doc", SLOW)
def test_slow_climbs_are_cut_short(doc):
    arena = parse_labeled_graph(doc, "arena")
    bounds = default_bounds(arena.graph)
    eve = arena.owned_by(Owner.EVE)
    mu = least_measure(arena.graph, *bounds, eve, max_sweeps=20)
    assert is_fixpoint(arena, mu, *bounds)
    with pytest.raises(LiftingDiverged):
        least_measure(arena.graph, *bounds, eve, accelerate=False, max_sweeps=20)


def test_sinks_keep_empty_tuple():
    arena_graph = parse_labeled_graph('{"vertices":[{"id":"a"},{"id":"b"}],"edges":[{"from":"a","to":"b","weight":-3}]}')
    mu = least_measure(arena_graph, 4, 2, min_vertices=["b"])
    assert mu["b"] == ()
    assert mu["a"] == (0, 0, 0)


def test_zero_loop_goes_to_top():
    g = parse_labeled_graph('{"vertices":[{"id":"a"}],"edges":[{"from":"a","to":"a","weight":0}]}')
    assert least_measure(g, 3, 3)["a"] is TOP
