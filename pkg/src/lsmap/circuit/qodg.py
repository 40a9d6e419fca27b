"""
Quantum Operation Dependency Graph
Per-qubit data dependencies, split into true and name dependencies

Nodes are instruction ids (Wait excluded), each carrying its Instruction
under the ``instr`` attribute. For every qubit, consecutive instructions
touching it are joined by an edge. An edge is a name dependency when
both ends are CNOTs and the shared qubit plays the same role in both
(control-control or target-target); such CNOTs commute and may run in
either order, just not at the same time. Every other edge is a true
dependency.
"""

from dataclasses import dataclass
from enum import Enum

import networkx as nx

from lsmap.circuit.ir import Circuit, GateKind, Instruction


class EdgeKind(str, Enum):
    TRUE = "true"
    NAME = "name"


def edge_kind(u: Instruction, v: Instruction) -> EdgeKind:
    if u.kind is not GateKind.CNOT or v.kind is not GateKind.CNOT:
        return EdgeKind.TRUE
    shared = set(u.operands) & set(v.operands)
    if shared and all(u.role(q) == v.role(q) for q in shared):
        return EdgeKind.NAME
    return EdgeKind.TRUE


@dataclass(frozen=True)
class QODG:
    """Dependency graph plus the per-qubit instruction sequences it was built from."""

    graph: nx.DiGraph
    sequences: dict[str, tuple[int, ...]]

    @property
    def nodes(self) -> list[int]:
        return list(self.graph.nodes)

    def instr(self, node: int) -> Instruction:
        return self.graph.nodes[node]["instr"]

    def edges_of(self, kind: EdgeKind) -> list[tuple[int, int]]:
        return [(u, v) for u, v, k in self.graph.edges(data="kind") if k is kind]

    @property
    def true_edges(self) -> list[tuple[int, int]]:
        return self.edges_of(EdgeKind.TRUE)

    @property
    def name_edges(self) -> list[tuple[int, int]]:
        return self.edges_of(EdgeKind.NAME)

    def runs(self, qubit: str) -> list[tuple[int, ...]]:
        """Maximal commuting runs on one qubit, in program order.

        A run is a maximal block of consecutive instructions on ``qubit``
        linked pairwise by name edges; a lone instruction is a run of one.
        """
        out: list[list[int]] = []
        for node in self.sequences.get(qubit, ()):
            if out and self.graph.edges[out[-1][-1], node]["kind"] is EdgeKind.NAME:
                out[-1].append(node)
            else:
                out.append([node])
        return [tuple(r) for r in out]

    def weighted(self, durations: dict[int, int]) -> nx.DiGraph:
        """Copy of the graph with edge weight T_u on every edge (u, v)."""
        g = self.graph.copy()
        for u, v in g.edges:
            g.edges[u, v]["weight"] = durations[u]
        return g


def build_qodg(c: Circuit) -> QODG:
    """Build the dependency graph of a circuit.

    Args:
        c: Circuit in program order; Wait instructions are skipped.

    Returns:
        QODG over the non-Wait instructions.
    """
    g = nx.DiGraph()
    last: dict[str, int] = {}
    sequences: dict[str, list[int]] = {q: [] for q in c.qubits}
    for ins in c.gates():
        g.add_node(ins.id, instr=ins)
        for q in ins.operands:
            sequences[q].append(ins.id)
            if q in last:
                prev = g.nodes[last[q]]["instr"]
                g.add_edge(prev.id, ins.id, kind=edge_kind(prev, ins))
            last[q] = ins.id
    return QODG(g, {q: tuple(s) for q, s in sequences.items()})
