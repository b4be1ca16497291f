"""Word algebra, relator-pattern detection, and proof-script checking for
finitely presented groups."""

from . import words
from .engine import (
    INCONCLUSIVE,
    NONHYPERBOLIC,
    ProofScript,
    Verdict,
    detect_power_relator,
    verify_script,
)
from .presentation import (
    Presentation,
    abelian_invariants,
    abelianization,
    nontrivial_in_abelianization,
    smith_normal_form,
)
from .search import Derivation, search_trivial

__all__ = [
    "INCONCLUSIVE",
    "NONHYPERBOLIC",
    "Derivation",
    "Presentation",
    "ProofScript",
    "Verdict",
    "abelian_invariants",
    "abelianization",
    "detect_power_relator",
    "nontrivial_in_abelianization",
    "search_trivial",
    "smith_normal_form",
    "verify_script",
    "words",
]
