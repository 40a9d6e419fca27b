"""
Architectures
Checkerboard and tile-based qubit planes

- architecture: Location, Architecture, PrimitiveOp, conflicts
- tile_sequences: t-SWAP / t-CNOT patch step templates and their placement on a plane
"""

from lsmap.arch.architecture import (
    Architecture,
    Location,
    Patch,
    PrimitiveOp,
    conflicting_pairs,
    conflicts,
)
from lsmap.arch.tile_sequences import (
    TCNOT_SEQUENCES,
    TSWAP_SEQUENCES,
    PatchOp,
    PatchSequence,
    cnot_patch_sequence,
    resolve_sequence,
    swap_patch_sequence,
    tcnot_sequence,
    tswap_sequence,
)
from lsmap.timing import ArchKind

__all__ = [
    "ArchKind",
    "Architecture",
    "Location",
    "Patch",
    "PrimitiveOp",
    "conflicting_pairs",
    "conflicts",
    "TCNOT_SEQUENCES",
    "TSWAP_SEQUENCES",
    "PatchOp",
    "PatchSequence",
    "cnot_patch_sequence",
    "resolve_sequence",
    "swap_patch_sequence",
    "tcnot_sequence",
    "tswap_sequence",
]
