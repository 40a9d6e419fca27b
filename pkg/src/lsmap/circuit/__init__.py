"""
Circuit IR
Logical circuits, their QASM dialect and dependency graph

- ir: GateKind, Instruction, Circuit
- qasm: parse_qasm / emit_qasm for the line-oriented dialect
- qodg: build_qodg, true and name dependencies, commuting runs
- stats: characterize (gate mix, Rcg / Rcd / Rtsg)
- benchmarks: shipped Steane encoder and random circuit generators
"""

from lsmap.circuit.ir import Circuit, GateKind, Instruction, canonical_names
from lsmap.circuit.qasm import emit_qasm, parse_qasm, read_qasm, write_qasm
from lsmap.circuit.qodg import QODG, EdgeKind, build_qodg
from lsmap.circuit.stats import CircuitStats, characterize
from lsmap.circuit.benchmarks import random_circuit, random_clifford_t_circuit, steane_encoder

__all__ = [
    "Circuit",
    "GateKind",
    "Instruction",
    "canonical_names",
    "emit_qasm",
    "parse_qasm",
    "read_qasm",
    "write_qasm",
    "QODG",
    "EdgeKind",
    "build_qodg",
    "CircuitStats",
    "characterize",
    "random_circuit",
    "random_clifford_t_circuit",
    "steane_encoder",
]
