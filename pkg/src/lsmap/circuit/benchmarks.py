"""
Benchmarks
The shipped Steane [[7,1,3]] encoder and random circuit generators

Other benchmark circuits (RevLib, QLib) are read from user-supplied QASM
files; only the encoder is reconstructed here.
"""

from typing import Optional, Sequence

import numpy as np

from lsmap.circuit.ir import Circuit, GateKind, Instruction, canonical_names
from lsmap.circuit.qasm import parse_qasm

# Input state on q0; q1..q6 are fresh ancillas
STEANE_ENCODER_QASM = """\
# Steane [[7,1,3]] encoder, serial form
qubits 7
prepz q1
prepz q2
prepz q3
prepz q4
prepz q5
prepz q6
cnot q0,q1
cnot q0,q2
h q6
cnot q6,q1
cnot q6,q2
cnot q1,q3
cnot q0,q3
h q4
h q5
cnot q4,q0
cnot q4,q1
cnot q4,q3
cnot q5,q0
cnot q5,q2
cnot q5,q3
"""

SINGLE_QUBIT_KINDS = (GateKind.X, GateKind.Z, GateKind.H, GateKind.S, GateKind.T)
CLIFFORD_T_KINDS = (GateKind.H, GateKind.S, GateKind.SDAG, GateKind.T, GateKind.TDAG, GateKind.X, GateKind.Z)


def steane_encoder() -> Circuit:
    return parse_qasm(STEANE_ENCODER_QASM)


def random_circuit(
    n_qubits: int,
    n_gates: int,
    rng: np.random.Generator,
    cnot_ratio: float = 0.5,
    kinds: Sequence[GateKind] = SINGLE_QUBIT_KINDS,
    pool: Optional[Sequence[str]] = None,
) -> Circuit:
    """Serial random circuit.

    Args:
        n_qubits: Number of qubits (q0..q{n-1}).
        n_gates: Number of gates.
        rng: numpy Generator; the result depends only on its state.
        cnot_ratio: Probability that a gate is a CNOT (needs >= 2 qubits).
        kinds: Single-qubit kinds to draw from.
        pool: Optional subset of qubits the CNOTs are drawn from, to force
            commuting structure in small tests.

    Returns:
        Circuit with one gate per timestep.
    """
    qubits = canonical_names(n_qubits)
    cnot_pool = list(pool) if pool is not None else list(qubits)
    instructions = []
    for i in range(n_gates):
        if len(cnot_pool) >= 2 and rng.random() < cnot_ratio:
            a, b = rng.choice(len(cnot_pool), size=2, replace=False)
            instructions.append(Instruction(i, GateKind.CNOT, (cnot_pool[a], cnot_pool[b])))
        else:
            kind = kinds[int(rng.integers(len(kinds)))]
            q = qubits[int(rng.integers(n_qubits))]
            instructions.append(Instruction(i, kind, (q,)))
    return Circuit.from_instructions(qubits, instructions)


def random_clifford_t_circuit(n_qubits: int, n_gates: int, rng: np.random.Generator,
                              cnot_ratio: float = 0.4) -> Circuit:
    return random_circuit(n_qubits, n_gates, rng, cnot_ratio=cnot_ratio, kinds=CLIFFORD_T_KINDS)


# (qubits, gates) of the synthetic suite
RANDOM_SUITE = ((4, 16), (5, 24), (6, 30), (8, 40))
RANDOM_PER_SIZE = 3


def random_suite(rng: np.random.Generator, sizes: Sequence[tuple[int, int]] = RANDOM_SUITE,
                 per_size: int = RANDOM_PER_SIZE) -> dict[str, Circuit]:
    """Seeded random Clifford+T circuits keyed ``rand_<n>q_<g>g_<k>``."""
    return {
        f"rand_{n_qubits}q_{n_gates}g_{k}": random_clifford_t_circuit(n_qubits, n_gates, rng)
        for n_qubits, n_gates in sizes
        for k in range(per_size)
    }
