import random

from hypothesis import strategies as st

from sumgames.core import Arena, LabeledGraph, Owner


def make_arena(vertices, edges):
    """``vertices`` as (id, "Eve"|"Adam") pairs, ``edges`` as (src, w, dst)."""
    return Arena(LabeledGraph.build([v for v, _ in vertices], edges), {v: Owner(o) for v, o in vertices})


@st.composite
def graphs(draw, max_vertices=6, weights=st.integers(-3, 3), max_edges=12, sinks=True):
    n = draw(st.integers(1, max_vertices))
    names = [f"v{i}" for i in range(n)]
    edges = draw(
        st.lists(st.tuples(st.sampled_from(names), weights, st.sampled_from(names)), max_size=max_edges)
    )
    if not sinks:
        edges += [(v, draw(weights), draw(st.sampled_from(names))) for v in names]
    return LabeledGraph.build(names, edges)


@st.composite
def arenas(draw, max_vertices=5, weights=st.integers(-3, 3), max_out=3):
    n = draw(st.integers(1, max_vertices))
    names = [f"v{i}" for i in range(n)]
    edges = []
    for v in names:
        k = draw(st.integers(1, max_out))
        for _ in range(k):
            edges.append((v, draw(weights), draw(st.sampled_from(names))))
    owners = {v: draw(st.sampled_from(list(Owner))) for v in names}
    return Arena(LabeledGraph.build(names, edges), owners)


def random_arena(rng: random.Random, max_vertices=6, wmax=3, max_out=3) -> Arena:
    n = rng.randint(1, max_vertices)
    names = [f"v{i}" for i in range(n)]
    pairs = [(t, w) for t in names for w in range(-wmax, wmax + 1)]
    edges = [(v, w, t) for v in names for t, w in rng.sample(pairs, rng.randint(1, max_out))]
    return Arena(LabeledGraph.build(names, edges), {v: rng.choice(list(Owner)) for v in names})


def random_satisfying_graph(rng: random.Random, max_vertices=8, wmax=3, max_edges=14) -> LabeledGraph:
    """Random graph with every cycle of weight >= 1 (rejection sampling)."""
    from sumgames.objective import satisfies

    while True:
        n = rng.randint(1, max_vertices)
        names = [f"v{i}" for i in range(n)]
        m = rng.randint(0, max_edges)
        edges = [(rng.choice(names), rng.randint(-wmax, wmax), rng.choice(names)) for _ in range(m)]
        g = LabeledGraph.build(names, edges)
        if satisfies(g):
            return g
