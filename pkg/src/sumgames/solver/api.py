from __future__ import annotations

from dataclasses import dataclass, field

from ..core import Arena, Owner, SumGamesError
from .brute import solve_brute
from .certificate import CertificateVerdict, PositionalStrategy, verify_certificate
from .energy import solve_energy
from .umeasure import solve_umeasure

METHODS = ("brute", "energy", "umeasure")


@dataclass(frozen=True)
class Solution:
    method: str
    eve_region: frozenset
    adam_region: frozenset
    eve_strategy: PositionalStrategy
    adam_strategy: PositionalStrategy
    eve_certificate: CertificateVerdict
    adam_certificate: CertificateVerdict
    # vertices where Adam's own analysis says he wins; equals adam_region under determinacy
    adam_dual_region: frozenset
    notes: tuple[str, ...] = ()
    measure: dict | None = field(default=None, compare=False, repr=False)

    @property
    def certified(self) -> bool:
        return bool(self.eve_certificate) and bool(self.adam_certificate) and not self.notes

    def to_json(self, arena: Arena) -> dict:
        order = arena.vertices
        return {
            "method": self.method,
            "eve_region": [v for v in order if v in self.eve_region],
            "adam_region": [v for v in order if v in self.adam_region],
            "eve_strategy": self.eve_strategy.to_json(arena),
            "adam_strategy": self.adam_strategy.to_json(arena),
            "certificates": {"eve": self.eve_certificate.to_json(), "adam": self.adam_certificate.to_json()},
            "notes": list(self.notes),
        }


def solve(arena: Arena, method: str = "brute", weaken: bool = False) -> Solution:
    """Winning regions and positional strategies for both players.

    ``weaken`` relaxes the method's cycle criterion from >= 1 to >= 0 on
    Eve's side; it exists only for mutation testing.
    """
    notes = []
    measure = None
    if method == "brute":
        region, sigma, uniform = solve_brute(arena, Owner.EVE, weaken)
        if not uniform:
            notes.append("no single positional Eve strategy wins on the whole Eve region")
        dual_region, tau, adam_uniform = solve_brute(arena, Owner.ADAM)
        if not adam_uniform:
            notes.append("no single positional Adam strategy wins on the whole Adam region")
    elif method == "energy":
        region, sigma, dual_region, tau = solve_energy(arena, weaken)
    elif method == "umeasure":
        region, sigma, dual_region, tau, measure = solve_umeasure(arena, weaken)
    else:
        raise SumGamesError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")

    region = frozenset(region)
    adam_region = frozenset(arena.vertices) - region
    if frozenset(dual_region) != adam_region:
        notes.append("Adam's region from the dual analysis is not the complement of Eve's region")
    return Solution(
        method=method,
        eve_region=region,
        adam_region=adam_region,
        eve_strategy=sigma,
        adam_strategy=tau,
        eve_certificate=verify_certificate(arena, sigma, region),
        adam_certificate=verify_certificate(arena, tau, adam_region),
        adam_dual_region=frozenset(dual_region),
        notes=tuple(notes),
        measure=measure,
    )
