"""Acceptance criteria, each at its stated size and time budget.

Every test prints one ``[criterion N] PASS|FAIL ...`` line.
"""

import dataclasses
import itertools
import json
import random
import time

import networkx as nx
import pytest

from conftest import random_satisfying_graph
from sumgames.cli import main
from sumgames.core import Edge, prefix_sums
from sumgames.harness import CampaignConfig, run_campaign
from sumgames.morphism import BOTTOM, BOUNDARY, compute_n, failure_kind, is_tight, phi_fixpoint, phi_paper, tight_edges
from sumgames.objective import reduce_finocc, satisfies
from sumgames.solver import METHODS
from sumgames.universal import build_fragment, check_monotonicity, enumerate_tuples, order_gt, parse_tuple

# values as displayed in the worked example
FIG_N = {
    "v0": -1,
    "r1": 1, "r1_1": 0, "r1_2": -1, "r1_3": -1,
    "r2": 2, "r2_1": 1, "r2_2": 0, "r2_3": -1,
    "r3": 3, "r3_1": 2, "r3_2": 1, "r3_3": 0, "r3_4": -1,
    "r4": 4, "r4_1": 3, "r4_2": 2, "r4_3": 1, "r4_4": 0, "r4_5": -1,
}  # fmt: skip
FIG_PHI = {
    "v0": "()",
    "r1": "(0,2)", "r1_1": "(0)", "r1_2": "()", "r1_3": "()",
    "r2": "(0,1,3)", "r2_1": "(0,1)", "r2_2": "(0)", "r2_3": "()",
    "r3": "(0,1,2,4)", "r3_1": "(0,1,2)", "r3_2": "(0,1)", "r3_3": "(0)", "r3_4": "()",
    # the displayed (0,1,2,3,5) becomes (0,1,2,3,4) once the tree is truncated
    "r4": "(0,1,2,3,4)", "r4_1": "(0,1,2,3)", "r4_2": "(0,1,2)", "r4_3": "(0,1)", "r4_4": "(0)", "r4_5": "()",
}  # fmt: skip

FAMILY_A = CampaignConfig(max_vertices=3, weight_set=(-1, 0, 1), max_out_degree=2, mode="exhaustive")
FAMILY_B = CampaignConfig(
    max_vertices=6, weight_set=tuple(range(-3, 4)), max_out_degree=3, mode="random", sample_count=10_000, seed=42
)


def report(capsys, number, ok, detail, elapsed):
    with capsys.disabled():
        print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'} ({elapsed:.1f}s) {detail}")


def cli_json(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def _write_fixture(capsys, path):
    _, doc = cli_json(capsys, "figure1")
    path.write_text(json.dumps(doc["graph"]))
    return str(path)


def test_criterion_1_figure_n_values(capsys, tmp_path):
    start = time.perf_counter()
    path = _write_fixture(capsys, tmp_path / "fig.json")
    code, doc = cli_json(capsys, "nvalues", path)
    elapsed = time.perf_counter() - start
    ok = code == 0 and doc["n"] == FIG_N and elapsed < 1
    report(capsys, 1, ok, f"{len(FIG_N)} vertices match", elapsed)
    assert ok


def test_criterion_2_figure_tuples(capsys, tmp_path):
    start = time.perf_counter()
    path = _write_fixture(capsys, tmp_path / "fig.json")
    _, doc = cli_json(capsys, "phi", path, "--method", "paper")
    elapsed = time.perf_counter() - start
    got = {v: parse_tuple(t) for v, t in doc["assignment"].items()}
    want = {v: parse_tuple(t) for v, t in FIG_PHI.items()}
    ok = got == want and elapsed < 1
    report(capsys, 2, ok, f"r4 -> {doc['assignment']['r4']}", elapsed)
    assert ok


def test_criterion_3_anomaly(capsys, tmp_path):
    start = time.perf_counter()
    path = _write_fixture(capsys, tmp_path / "fig.json")
    _, literal = cli_json(capsys, "phi", path, "--method", "paper")
    morph = tmp_path / "phi.json"
    morph.write_text(json.dumps(literal))
    code, checked = cli_json(capsys, "verify-morphism", path, str(morph))
    failing = [r for r in checked["report"] if not r["holds"]]
    fcode, fixpoint = cli_json(capsys, "phi", path, "--method", "fixpoint")
    fixed = tmp_path / "fix.json"
    fixed.write_text(json.dumps(fixpoint))
    vcode, verified = cli_json(capsys, "verify-morphism", path, str(fixed))
    elapsed = time.perf_counter() - start
    images = (literal["assignment"]["v0"], literal["assignment"]["r1"])
    ok = (
        code == 1
        and [r["edge"] for r in failing] == [{"from": "v0", "to": "r1", "weight": 2}]
        and images == ("()", "(0,2)")
        and fcode == vcode == 0
        and all(r["holds"] for r in verified["report"])
        and elapsed < 5
    )
    report(capsys, 3, ok, f"failing {[r['edge'] for r in failing]}, fixpoint verifies {vcode == 0}", elapsed)
    assert ok


def test_criterion_4_universal_structure(capsys):
    start = time.perf_counter()
    bad = []
    checked = 0
    for max_len, max_coord in itertools.product(range(4), repeat=2):
        frag = build_fragment(max_len, max_coord, range(-2, 3))
        checked += 1
        if check_monotonicity(frag) is not None:
            bad.append((max_len, max_coord, "monotonicity"))
        if not satisfies(frag.graph):
            bad.append((max_len, max_coord, "cycle"))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    report(capsys, 4, ok, f"{checked} fragments, counterexamples {bad}", elapsed)
    assert ok


def test_criterion_5_order(capsys):
    start = time.perf_counter()
    stated = order_gt((0, 0), (1,))
    ts = enumerate_tuples(3, 3)
    gt = {(u, v): order_gt(u, v) for u in ts for v in ts}
    irreflexive = not any(gt[u, u] for u in ts)
    total = all(gt[u, v] != gt[v, u] for u, v in itertools.combinations(ts, 2))
    transitive = all(not (gt[u, v] and gt[v, w]) or gt[u, w] for u, v, w in itertools.product(ts, repeat=3))
    elapsed = time.perf_counter() - start
    ok = stated and irreflexive and total and transitive and elapsed < 5
    report(capsys, 5, ok, f"{len(ts)} tuples, (0,0) > (1): {stated}", elapsed)
    assert ok


@pytest.fixture(scope="module")
def campaigns():
    out = {}
    for name, config in (("a", FAMILY_A), ("b", FAMILY_B)):
        start = time.perf_counter()
        summary = run_campaign(config)
        out[name] = (summary, time.perf_counter() - start)
    return out


def _disagreements(summary):
    return [e for e in summary.findings if any("differs from brute" in f for f in e["findings"])]


def test_criterion_6_solver_agreement(capsys, campaigns):
    lines = []
    ok = True
    for name, (summary, elapsed) in campaigns.items():
        bad = _disagreements(summary)
        ok &= not bad and elapsed < 600
        lines.append(f"({name}) {summary.processed} arenas, {len(bad)} disagreements, {elapsed:.0f}s")
    report(capsys, 6, ok, "; ".join(lines), sum(e for _, e in campaigns.values()))
    assert ok


def test_criterion_7_positional_certificates(capsys, campaigns):
    lines = []
    ok = True
    for name, (summary, elapsed) in campaigns.items():
        ok &= summary.ok and summary.certified == summary.processed and elapsed < 600
        lines.append(f"({name}) {summary.certified}/{summary.processed} certified, {len(summary.findings)} findings")
    report(capsys, 7, ok, "; ".join(lines), sum(e for _, e in campaigns.values()))
    assert ok


def test_criterion_8_mutation_sensitivity(capsys, tmp_path):
    start = time.perf_counter()
    found = {}
    for method in METHODS:
        config = dataclasses.replace(FAMILY_A, mutate=method, max_findings=1)
        summary = run_campaign(config, replay_dir=tmp_path / method)
        found[method] = len(summary.findings)
    elapsed = time.perf_counter() - start
    ok = all(found.values()) and elapsed < 600
    report(capsys, 8, ok, f"findings per weakened solver {found}", elapsed)
    assert ok


def test_criterion_9_reduction(capsys):
    start = time.perf_counter()
    rng = random.Random(9)
    exact = agree = True
    for _ in range(1000):
        c = [rng.randint(0, 50) for _ in range(rng.randint(1, 30))]
        sums = prefix_sums(reduce_finocc(c))
        exact &= len(sums) == len(c) - 1 and all(sums[j] == c[j + 1] - c[0] for j in range(len(sums)))
        k = rng.randint(1, len(c))
        d = c[:k] + [rng.randint(0, 50) for _ in range(len(c) - k)]
        agree &= reduce_finocc(c)[: k - 1] == reduce_finocc(d)[: k - 1]
    elapsed = time.perf_counter() - start
    ok = exact and agree and elapsed < 5
    report(capsys, 9, ok, f"prefix identity {exact}, k/k-1 agreement {agree}", elapsed)
    assert ok


@pytest.fixture(scope="module")
def satisfying_500():
    rng = random.Random(10)
    return [random_satisfying_graph(rng, max_vertices=8) for _ in range(500)]


def _construction_properties(graphs):
    acyclic = inequality = fixpoint = True
    failures = []
    for g in graphs:
        nmap = compute_n(g)
        d = nx.MultiDiGraph()
        d.add_nodes_from(g.vertices)
        d.add_edges_from((e.src, e.dst) for e in tight_edges(g, nmap))
        acyclic &= nx.is_directed_acyclic_graph(d)
        for e in g.edges:
            if nmap[e.src] is not BOTTOM and nmap[e.dst] is not BOTTOM:
                inequality &= nmap[e.src] + e.weight >= nmap[e.dst]
        m = phi_paper(g)
        failures.extend((g, nmap, e, m.assignment) for e in m.failures)
        fixpoint &= phi_fixpoint(g).ok
    return acyclic, inequality, fixpoint, failures


def _boundary_pattern(nmap, e: Edge) -> bool:
    return is_tight(e, nmap) and nmap[e.src] == -1


def test_criterion_10_other_properties(satisfying_500):
    """The parts of criterion 10 that hold; the boundary clause is checked below."""
    acyclic, inequality, fixpoint, failures = _construction_properties(satisfying_500)
    assert acyclic and inequality and fixpoint
    # every failure is one of the two characterized gaps
    assert all(failure_kind(*f) is not None for f in failures)


@pytest.mark.xfail(
    strict=True,
    reason="phi_paper also fails on tight edges with n(v) >= 0 where the two ranks tie at 0; see README",
)
def test_criterion_10_morphism_construction(capsys, satisfying_500):
    start = time.perf_counter()
    acyclic, inequality, fixpoint, failures = _construction_properties(satisfying_500)
    elapsed = time.perf_counter() - start
    outside = [f for f in failures if not _boundary_pattern(f[1], f[2])]
    kinds = {}
    for f in failures:
        kinds[failure_kind(*f)] = kinds.get(failure_kind(*f), 0) + 1
    graphs_hit = len({id(f[0]) for f in outside})
    ok = acyclic and inequality and fixpoint and not outside and elapsed < 120
    detail = (
        f"tight DAG {acyclic}, n-inequality {inequality}, fixpoint verifies {fixpoint}; "
        f"phi_paper failures by kind {kinds}; {len(outside)} outside the n(v) = -1 pattern on {graphs_hit} graphs"
    )
    report(capsys, 10, ok, detail, elapsed)
    assert ok
    assert kinds.get(BOUNDARY, 0) == len(failures)
