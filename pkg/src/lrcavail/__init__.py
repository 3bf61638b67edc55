"""Binary linear codes with availability: GF(2) algebra, constructions, repair-group
certificates, rate bounds and exhaustive search over exact-covering systems."""

from .availability import find_repair_groups, verify_availability
from .constructions import CoveringSystem, platonic, polyhedron_code, simplex_code
from .errors import GuardExceeded, LRCError
from .gf2 import BitMatrix, LinearCode, code_from_generator, code_from_parity, dual, weight_enumerator

__all__ = [
    "BitMatrix",
    "CoveringSystem",
    "GuardExceeded",
    "LRCError",
    "LinearCode",
    "code_from_generator",
    "code_from_parity",
    "dual",
    "find_repair_groups",
    "platonic",
    "polyhedron_code",
    "simplex_code",
    "verify_availability",
    "weight_enumerator",
]
