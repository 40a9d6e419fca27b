"""
Circuit Characterization
Gate mix and dependency ratios of a logical circuit
"""

from dataclasses import asdict, dataclass

from lsmap.circuit.ir import Circuit, GateKind
from lsmap.circuit.qodg import build_qodg


@dataclass(frozen=True)
class CircuitStats:
    """Counts and ratios describing one circuit.

    rcg is the CNOT share of all gates, rcd the share of QODG edges that
    are name dependencies, rtsg the share of S/T-family gates.
    """

    n_qubits: int
    n_gates: int
    n_cnots: int
    n_swaps: int
    depth: int
    rcg: float
    rcd: float
    rtsg: float

    def as_dict(self) -> dict:
        return asdict(self)


def characterize(c: Circuit) -> CircuitStats:
    counts = c.gate_counts()
    n_gates = sum(counts.values())
    n_cnots = counts[GateKind.CNOT]
    n_swaps = counts[GateKind.SWAP]
    if n_gates == 0:
        return CircuitStats(c.n_qubits, 0, 0, 0, c.depth, 0.0, 0.0, 0.0)

    g = build_qodg(c)
    n_edges = g.graph.number_of_edges()
    n_magic = sum(n for kind, n in counts.items() if kind.is_magic)
    return CircuitStats(
        n_qubits=c.n_qubits,
        n_gates=n_gates,
        n_cnots=n_cnots,
        n_swaps=n_swaps,
        depth=c.depth,
        rcg=n_cnots / n_gates,
        rcd=len(g.name_edges) / n_edges if n_edges else 0.0,
        rtsg=n_magic / n_gates,
    )
