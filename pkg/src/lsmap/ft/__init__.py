"""
FT Expansion
From logical operations to physical surface-code cycles

- esm: the d=3 planar patch and its ESM round
- library: SC cycle templates per logical operation
- symbols: physical qubit blocks per patch and seam (q-symbol table)
- lattice: patches each surgery block prepares, merges and measures
- expand: expand, emit_physical_qasm, write_physical_qasm
"""

from lsmap.ft.esm import PATCH_QUBITS_D3, esm_round, patch_size, stabilizer_support
from lsmap.ft.expand import CycleSpan, PhysicalCircuit, emit_physical_qasm, expand, write_physical_qasm
from lsmap.ft.lattice import SeamCheck, SurgeryBlock, boundary, seam_checks, surgery_blocks
from lsmap.ft.library import LIBRARY, FTLibraryEntry, SCCycle, lookup, template
from lsmap.ft.symbols import PatchBlock, QSymbol, QSymbolTable, build_symbol_table

__all__ = [
    "PATCH_QUBITS_D3",
    "esm_round",
    "patch_size",
    "stabilizer_support",
    "CycleSpan",
    "PhysicalCircuit",
    "emit_physical_qasm",
    "expand",
    "write_physical_qasm",
    "SeamCheck",
    "SurgeryBlock",
    "boundary",
    "seam_checks",
    "surgery_blocks",
    "LIBRARY",
    "FTLibraryEntry",
    "SCCycle",
    "lookup",
    "template",
    "PatchBlock",
    "QSymbol",
    "QSymbolTable",
    "build_symbol_table",
]
