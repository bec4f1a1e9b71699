"""Certification campaigns over small arenas.

Every arena is solved by all three solvers.  It is certified when the
regions agree and one positional Eve strategy, resp. Adam strategy, passes
the independent certificate check on the whole Eve, resp. Adam, region.
Anything else is a finding, written out as arena JSON for replay.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .core import Arena, LabeledGraph, Owner, SumGamesError, parse_labeled_graph, serialize, size_cap
from .solver import METHODS, PositionalStrategy, solve

EVE_CERTIFIED = "EveCertified"
ADAM_CERTIFIED = "AdamCertified"


class CampaignCapExceeded(SumGamesError):
    pass


@dataclass(frozen=True)
class CampaignConfig:
    max_vertices: int = 3
    weight_set: tuple[int, ...] = (-1, 0, 1)
    max_out_degree: int = 2
    mode: str = "exhaustive"
    sample_count: int = 10_000
    seed: int = 42
    # bound on the number of arenas an exhaustive campaign may generate
    cap: int | None = None
    # name of a solver to run with the weakened cycle criterion
    mutate: str | None = None
    max_findings: int | None = None
    workers: int = 1
    symmetry_reduce: bool = True

    def __post_init__(self):
        if self.mode not in ("exhaustive", "random"):
            raise SumGamesError(f"mode must be 'exhaustive' or 'random', got {self.mode!r}")
        if self.max_vertices < 1 or self.max_out_degree < 1:
            raise SumGamesError("max_vertices and max_out_degree must be positive")
        if not self.weight_set:
            raise SumGamesError("weight_set is empty")
        if self.mutate is not None and self.mutate not in METHODS:
            raise SumGamesError(f"unknown solver {self.mutate!r} for mutation")
        object.__setattr__(self, "weight_set", tuple(sorted(set(self.weight_set))))

    @property
    def arena_cap(self) -> int:
        return size_cap() if self.cap is None else self.cap

    def to_json(self) -> dict:
        d = asdict(self)
        d["weight_set"] = list(self.weight_set)
        d.pop("workers")
        return d


@dataclass(frozen=True)
class CertReport:
    arena_id: str
    verdicts: dict
    eve_strategy: PositionalStrategy
    adam_strategy: PositionalStrategy
    agreement: dict
    findings: tuple[str, ...] = ()

    @property
    def certified(self) -> bool:
        return not self.findings

    def to_json(self, arena: Arena) -> dict:
        return {
            "arena_id": self.arena_id,
            "verdicts": dict(self.verdicts),
            "eve_strategy": self.eve_strategy.to_json(arena),
            "adam_strategy": self.adam_strategy.to_json(arena),
            "agreement": dict(self.agreement),
            "findings": list(self.findings),
        }


def arena_id(arena: Arena) -> str:
    return hashlib.sha256(serialize(arena).encode()).hexdigest()[:16]


def certify_arena(arena: Arena, mutate: str | None = None) -> CertReport:
    """Run every solver on ``arena`` and cross-check them.

    The verdicts and uniform strategies come from the brute-force solver,
    which searches for a single strategy covering the whole region.
    """
    solutions = {m: solve(arena, m, weaken=(m == mutate)) for m in METHODS}
    ref = solutions["brute"]
    findings = []
    agreement = {}
    for m, sol in solutions.items():
        agreement[m] = sol.eve_region == ref.eve_region
        if not agreement[m]:
            findings.append(f"{m}: Eve region {sorted(sol.eve_region)} differs from brute {sorted(ref.eve_region)}")
        if not sol.eve_certificate:
            findings.append(f"{m}: Eve certificate rejected, witness {_witness(sol.eve_certificate)}")
        if not sol.adam_certificate:
            findings.append(f"{m}: Adam certificate rejected, witness {_witness(sol.adam_certificate)}")
        findings.extend(f"{m}: {note}" for note in sol.notes)

    verdicts = {v: EVE_CERTIFIED if v in ref.eve_region else ADAM_CERTIFIED for v in arena.vertices}
    return CertReport(
        arena_id=arena_id(arena),
        verdicts=verdicts,
        eve_strategy=ref.eve_strategy,
        adam_strategy=ref.adam_strategy,
        agreement=agreement,
        findings=tuple(findings),
    )


def _witness(verdict) -> str:
    return "none" if verdict.witness is None else " ".join(str(e) for e in verdict.witness)


# generation


def _vertex_names(n: int) -> list[str]:
    return [f"v{i}" for i in range(n)]


def _make(owners, choices) -> Arena:
    names = _vertex_names(len(owners))
    edges = [(names[i], w, names[j]) for i, out in enumerate(choices) for j, w in out]
    graph = LabeledGraph.build(names, edges)
    return Arena(graph, {names[i]: Owner.EVE if o == 0 else Owner.ADAM for i, o in enumerate(owners)})


def _encode(owners, choices, perm) -> tuple:
    # arena with vertex i renamed perm[i], read back in the new order
    n = len(owners)
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(
        (owners[inv[k]], tuple(sorted((perm[j], w) for j, w in choices[inv[k]]))) for k in range(n)
    )


def _is_canonical(owners, choices, perms) -> bool:
    own = _encode(owners, choices, range(len(owners)))
    return all(_encode(owners, choices, p) >= own for p in perms)


def exhaustive_arenas(config: CampaignConfig):
    """All arenas of the family in a fixed construction order.

    Vertex sets are v0..v{n-1}; every vertex picks 1..max_out_degree distinct
    (successor, weight) pairs, so parallel edges with distinct weights occur.
    With ``symmetry_reduce`` only the representative of each vertex renaming
    class is kept: owners sorted Eve first, and the encoding minimal over all
    owner-preserving renamings.
    """
    cap = config.arena_cap
    count = 0
    for n in range(1, config.max_vertices + 1):
        pairs = [(j, w) for j in range(n) for w in config.weight_set]
        outs = [
            c for k in range(1, min(config.max_out_degree, len(pairs)) + 1) for c in itertools.combinations(pairs, k)
        ]
        for owners in itertools.product((0, 1), repeat=n):
            if config.symmetry_reduce and list(owners) != sorted(owners):
                continue
            perms = [
                p
                for p in itertools.permutations(range(n))
                if any(p[i] != i for i in range(n)) and all(owners[p[i]] == owners[i] for i in range(n))
            ]
            for choices in itertools.product(outs, repeat=n):
                if config.symmetry_reduce and perms and not _is_canonical(owners, choices, perms):
                    continue
                count += 1
                if count > cap:
                    raise CampaignCapExceeded(f"exhaustive family exceeds the cap of {cap} arenas")
                yield _make(owners, choices)


def random_arenas(config: CampaignConfig):
    rng = random.Random(config.seed)
    weights = list(config.weight_set)
    for _ in range(config.sample_count):
        n = rng.randint(1, config.max_vertices)
        pairs = [(j, w) for j in range(n) for w in weights]
        owners = tuple(rng.randint(0, 1) for _ in range(n))
        choices = tuple(
            tuple(rng.sample(pairs, rng.randint(1, min(config.max_out_degree, len(pairs))))) for _ in range(n)
        )
        yield _make(owners, choices)


def generate(config: CampaignConfig):
    return exhaustive_arenas(config) if config.mode == "exhaustive" else random_arenas(config)


# campaigns


@dataclass
class Summary:
    config: dict
    processed: int = 0
    certified: int = 0
    eve_vertices: int = 0
    adam_vertices: int = 0
    findings: list = field(default_factory=list)
    stopped_early: bool = False

    @property
    def ok(self) -> bool:
        return not self.findings and not self.stopped_early

    def to_json(self) -> dict:
        return {
            "config": self.config,
            "processed": self.processed,
            "certified": self.certified,
            "certified_fraction": self.certified / self.processed if self.processed else 1.0,
            "eve_vertices": self.eve_vertices,
            "adam_vertices": self.adam_vertices,
            "findings": self.findings,
            "stopped_early": self.stopped_early,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _certify_job(args):
    arena, mutate = args
    report = certify_arena(arena, mutate)
    return arena, report.arena_id, report.findings, report.verdicts


def _results(config: CampaignConfig, arenas):
    jobs = ((a, config.mutate) for a in arenas)
    if config.workers <= 1:
        yield from map(_certify_job, jobs)
        return
    with ProcessPoolExecutor(config.workers) as pool:
        # map keeps submission order, so the summary does not depend on scheduling
        yield from pool.map(_certify_job, jobs, chunksize=256)


def run_campaign(config: CampaignConfig, replay_dir: str | Path | None = None, progress=None) -> Summary:
    summary = Summary(config=config.to_json())
    out = Path(replay_dir) if replay_dir is not None else None
    for arena, aid, findings, verdicts in _results(config, generate(config)):
        summary.processed += 1
        eve = sum(1 for v in verdicts.values() if v == EVE_CERTIFIED)
        summary.eve_vertices += eve
        summary.adam_vertices += len(verdicts) - eve
        if not findings:
            summary.certified += 1
        else:
            entry = {"arena_id": aid, "findings": list(findings)}
            if out is not None:
                out.mkdir(parents=True, exist_ok=True)
                path = out / f"{aid}.json"
                path.write_text(serialize(arena, indent=2) + "\n")
                entry["file"] = path.name
            summary.findings.append(entry)
            if config.max_findings is not None and len(summary.findings) >= config.max_findings:
                summary.stopped_early = True
                break
        if progress is not None:
            progress(summary)
    return summary


def replay(path: str | Path, mutate: str | None = None) -> CertReport:
    arena = parse_labeled_graph(Path(path).read_text(), "arena")
    return certify_arena(arena, mutate)
