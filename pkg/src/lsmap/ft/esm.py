"""
Error Syndrome Measurement
The distance-3 planar patch and its pre-scheduled ESM round

The 17-qubit patch has data qubits D1..D9 on a 3x3 grid of vertices and
ancillas A1..A8 on the plaquettes between them. Coordinates below are
(row, col) on a doubled grid, so an ancilla touches exactly the data
qubits one step away diagonally. The raster order of these coordinates
fixes the local index of every qubit in a patch block.
"""

from functools import lru_cache

from lsmap.circuit.ir import Circuit, GateKind
from lsmap.circuit.qasm import parse_qasm
from lsmap.errors import ExpansionError

PLANAR_LAYOUT_D3 = {
    "A1": (0, 2),
    "D1": (1, 1), "D2": (1, 3), "D3": (1, 5),
    "A2": (2, 2), "A3": (2, 4), "A4": (2, 6),
    "D4": (3, 1), "D5": (3, 3), "D6": (3, 5),
    "A5": (4, 0), "A6": (4, 2), "A7": (4, 4),
    "D7": (5, 1), "D8": (5, 3), "D9": (5, 5),
    "A8": (6, 4),
}

PATCH_QUBITS_D3 = tuple(sorted(PLANAR_LAYOUT_D3, key=lambda q: PLANAR_LAYOUT_D3[q]))
DATA_QUBITS_D3 = tuple(q for q in PATCH_QUBITS_D3 if q[0] == "D")
ANCILLA_QUBITS_D3 = tuple(q for q in PATCH_QUBITS_D3 if q[0] == "A")
X_ANCILLAS_D3 = ("A2", "A4", "A5", "A7")
Z_ANCILLAS_D3 = ("A1", "A3", "A6", "A8")

# Data qubits each transversal target set covers
DATA_SETS_D3 = {
    "all": DATA_QUBITS_D3,
    "x_logical": ("D1", "D2", "D3"),
    "z_logical": ("D1", "D4", "D7"),
    "corner": ("D1",),
    "x_only": ("D2", "D3"),
    "z_only": ("D4", "D7"),
}

ESM_ROUND_D3 = """\
qubits {qubits}
{{ prepz A2 | prepz A7 | prepz A5 }}
{{ h A2 | h A7 | h A5 | prepz A1 | prepz A3 | prepz A6 }}
{{ cnot A2, D5 | cnot A7, D9 | cnot A5, D7 | cnot D2, A1 | cnot D6, A3 | cnot D8, A6 | prepz A8 | prepz A4 }}
{{ cnot A2, D2 | cnot A7, D6 | cnot A5, D4 | cnot D9, A8 | cnot D3, A3 | cnot D5, A6 | h A4 }}
{{ cnot A2, D4 | cnot A7, D8 | cnot A4, D6 | cnot D1, A1 | cnot D5, A3 | cnot D7, A6 | h A5 }}
{{ cnot A2, D1 | cnot A7, D5 | cnot A4, D3 | cnot D8, A8 | cnot D2, A3 | cnot D4, A6 | measure A1 | measure A5 }}
{{ h A2 | h A4 | h A7 | measure A3 | measure A6 | measure A8 }}
{{ measure A2 | measure A4 | measure A7 }}
"""


def patch_size(d: int) -> int:
    """Physical qubits of a distance-d planar patch: d^2 data plus d^2 - 1 ancillas."""
    return 2 * d * d - 1


@lru_cache(maxsize=None)
def _esm_d3() -> Circuit:
    parsed = parse_qasm(ESM_ROUND_D3.format(qubits=",".join(PATCH_QUBITS_D3)))
    # the parser canonicalises to q<index>; restore the patch-local names
    local = {f"q{i}": name for i, name in enumerate(PATCH_QUBITS_D3)}
    return Circuit(PATCH_QUBITS_D3, tuple(tuple(ins.renamed(local) for ins in step) for step in parsed.body))


def esm_round(d: int = 3) -> Circuit:
    """One full ESM round over the patch-local qubit names.

    Raises:
        ExpansionError: for any distance without a pre-scheduled round.
    """
    if d != 3:
        raise ExpansionError(f"No pre-scheduled ESM round for d={d}. Use d=3 for physical emission")
    return _esm_d3()


def are_adjacent(q1: str, q2: str) -> bool:
    (r1, c1), (r2, c2) = PLANAR_LAYOUT_D3[q1], PLANAR_LAYOUT_D3[q2]
    return abs(r1 - r2) == 1 and abs(c1 - c2) == 1


def stabilizer_support(round_: Circuit) -> dict[str, tuple[str, ...]]:
    """Data qubits each ancilla is entangled with, in CNOT order."""
    support: dict[str, list[str]] = {}
    for ins in round_.gates():
        if ins.kind is GateKind.CNOT:
            ancilla, data = sorted(ins.operands, key=lambda q: q[0])
            support.setdefault(ancilla, []).append(data)
    return {a: tuple(ds) for a, ds in support.items()}
