from .api import METHODS, Solution, solve
from .brute import GuardExceeded
from .certificate import CertificateVerdict, PositionalStrategy, strategy_subgraph, verify_certificate
from .umeasure import BoundCeiling

__all__ = [
    "METHODS",
    "BoundCeiling",
    "CertificateVerdict",
    "GuardExceeded",
    "PositionalStrategy",
    "Solution",
    "solve",
    "strategy_subgraph",
    "verify_certificate",
]
