"""Built-in worked example: the tree of the morphism illustration.

The displayed part of the infinite tree is kept; each row's trailing
``...`` is closed by a +1 self-loop on the row's last displayed vertex and
the chain of row heads stops at ``r4``.  The closure keeps every displayed
n-value.  Only the last coordinate of ``r4``'s tuple changes (4 instead of
the 5 contributed by the infinite continuation).
"""

from __future__ import annotations

from .core import Edge, LabeledGraph

# row i hangs off head r{i}: weights along the row, then a +1 loop
_ROWS = {
    1: [-1, 0, 1],
    2: [-1, -1, 0],
    3: [-1, -1, -1, 0],
    4: [-1, -1, -1, -1, 0],
}

EXPECTED_N = {
    "v0": -1,
    "r1": 1, "r1_1": 0, "r1_2": -1, "r1_3": -1,
    "r2": 2, "r2_1": 1, "r2_2": 0, "r2_3": -1,
    "r3": 3, "r3_1": 2, "r3_2": 1, "r3_3": 0, "r3_4": -1,
    "r4": 4, "r4_1": 3, "r4_2": 2, "r4_3": 1, "r4_4": 0, "r4_5": -1,
}  # fmt: skip

EXPECTED_PHI = {
    "v0": (),
    "r1": (0, 2), "r1_1": (0,), "r1_2": (), "r1_3": (),
    "r2": (0, 1, 3), "r2_1": (0, 1), "r2_2": (0,), "r2_3": (),
    "r3": (0, 1, 2, 4), "r3_1": (0, 1, 2), "r3_2": (0, 1), "r3_3": (0,), "r3_4": (),
    "r4": (0, 1, 2, 3, 4), "r4_1": (0, 1, 2, 3), "r4_2": (0, 1, 2), "r4_3": (0, 1), "r4_4": (0,), "r4_5": (),
}  # fmt: skip

# the one edge on which the literal construction is not a morphism
EXPECTED_FAILURES = (Edge("v0", 2, "r1"),)


def figure1_graph() -> LabeledGraph:
    vertices = ["v0"]
    edges = [("v0", 2, "r1")]
    for i, row in _ROWS.items():
        head = f"r{i}"
        vertices.append(head)
        if i < 4:
            edges.append((head, 1, f"r{i + 1}"))
        prev = head
        for j, w in enumerate(row, start=1):
            cur = f"r{i}_{j}"
            vertices.append(cur)
            edges.append((prev, w, cur))
            prev = cur
        edges.append((prev, 1, prev))
    return LabeledGraph.build(vertices, edges)
