"""
Circuit IR
Gate kinds, instructions and timestep-bundled circuits

A Circuit is an ordered list of timesteps; each timestep is a bundle of
instructions acting on pairwise distinct qubits. All objects are frozen
so they can be shared freely between the scheduler, router and
expander.
"""

from collections import Counter
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Iterator, Sequence

from lsmap.errors import CircuitError


class GateKind(str, Enum):
    """Logical gate kinds. Values are the QASM mnemonics."""

    I = "i"
    X = "x"
    Y = "y"
    Z = "z"
    H = "h"
    S = "s"
    SDAG = "sdag"
    T = "t"
    TDAG = "tdag"
    PREPZ = "prepz"
    PREPX = "prepx"
    MEASZ = "measz"
    MEASX = "measx"
    CNOT = "cnot"
    SWAP = "swap"
    WAIT = "qwait"

    @property
    def arity(self) -> int:
        if self in (GateKind.CNOT, GateKind.SWAP):
            return 2
        if self is GateKind.WAIT:
            return 0
        return 1

    @property
    def is_magic(self) -> bool:
        """S/T family, the gates that consume a magic state."""
        return self in (GateKind.S, GateKind.SDAG, GateKind.T, GateKind.TDAG)

    @property
    def is_two_qubit(self) -> bool:
        return self.arity == 2


@dataclass(frozen=True)
class Instruction:
    """One logical operation.

    ``cycles`` is only meaningful for Wait. ``inserted`` marks SWAPs added
    by the router.
    """

    id: int
    kind: GateKind
    operands: tuple[str, ...] = ()
    cycles: int = 0
    inserted: bool = False

    def __post_init__(self):
        object.__setattr__(self, "operands", tuple(self.operands))
        if len(self.operands) != self.kind.arity:
            raise CircuitError(
                f"{self.kind.value} takes {self.kind.arity} operand(s), got {len(self.operands)}"
            )
        if len(set(self.operands)) != len(self.operands):
            raise CircuitError(f"{self.kind.value} operands must be distinct: {self.operands}")
        if self.kind is GateKind.WAIT and self.cycles < 1:
            raise CircuitError(f"qwait needs a cycle count >= 1, got {self.cycles}")
        if self.inserted and self.kind is not GateKind.SWAP:
            raise CircuitError("Only SWAP instructions can carry the inserted flag")

    @property
    def control(self) -> str:
        return self.operands[0]

    @property
    def target(self) -> str:
        return self.operands[1]

    def role(self, qubit: str) -> str:
        """'c' or 't' for CNOT operands, 'q' for everything else."""
        if self.kind is GateKind.CNOT:
            return "c" if qubit == self.operands[0] else "t"
        return "q"

    def qasm(self) -> str:
        if self.kind is GateKind.WAIT:
            return f"qwait {self.cycles}"
        return f"{self.kind.value} {','.join(self.operands)}"

    def renamed(self, mapping: dict[str, str]) -> "Instruction":
        return replace(self, operands=tuple(mapping.get(q, q) for q in self.operands))


@dataclass(frozen=True)
class Circuit:
    """Qubit declaration plus an ordered list of parallel bundles."""

    qubits: tuple[str, ...]
    body: tuple[tuple[Instruction, ...], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(self.qubits))
        object.__setattr__(self, "body", tuple(tuple(step) for step in self.body))
        if len(set(self.qubits)) != len(self.qubits):
            raise CircuitError(f"Duplicate qubit declaration in {self.qubits}")
        declared = set(self.qubits)
        seen_ids: set[int] = set()
        for t, step in enumerate(self.body):
            if not step:
                raise CircuitError(f"Timestep {t} is empty")
            used: set[str] = set()
            for ins in step:
                if ins.id in seen_ids:
                    raise CircuitError(f"Duplicate instruction id {ins.id}")
                seen_ids.add(ins.id)
                if ins.kind is GateKind.WAIT and len(step) > 1:
                    raise CircuitError(f"qwait must be alone in its timestep (timestep {t})")
                for q in ins.operands:
                    if q not in declared:
                        raise CircuitError(f"Undeclared qubit {q} in timestep {t}")
                    if q in used:
                        raise CircuitError(f"Qubit {q} used twice in timestep {t}")
                    used.add(q)

    @classmethod
    def from_instructions(cls, qubits: Sequence[str], instructions: Iterable[Instruction]) -> "Circuit":
        """Serial circuit, one instruction per timestep."""
        return cls(tuple(qubits), tuple((ins,) for ins in instructions))

    @classmethod
    def build(cls, qubits: Sequence[str], steps: Iterable[Iterable[tuple]]) -> "Circuit":
        """Circuit from ``(kind, operands...)`` tuples with ids assigned in order.

        Each element of ``steps`` is either one tuple (a serial line) or a
        list of tuples (a bundle). Wait is written ``(GateKind.WAIT, n)``.
        """
        body = []
        next_id = 0
        for step in steps:
            items = [step] if isinstance(step, tuple) else list(step)
            bundle = []
            for kind, *args in items:
                kind = GateKind(kind)
                if kind is GateKind.WAIT:
                    bundle.append(Instruction(next_id, kind, (), cycles=int(args[0])))
                else:
                    bundle.append(Instruction(next_id, kind, tuple(args)))
                next_id += 1
            body.append(tuple(bundle))
        return cls(tuple(qubits), tuple(body))

    @property
    def n_qubits(self) -> int:
        return len(self.qubits)

    @property
    def depth(self) -> int:
        return len(self.body)

    def instructions(self) -> Iterator[Instruction]:
        for step in self.body:
            yield from step

    def gates(self) -> list[Instruction]:
        """All instructions except Wait, in program order."""
        return [ins for ins in self.instructions() if ins.kind is not GateKind.WAIT]

    @property
    def n_gates(self) -> int:
        return len(self.gates())

    def gate_counts(self) -> Counter:
        return Counter(ins.kind for ins in self.gates())

    def max_id(self) -> int:
        return max((ins.id for ins in self.instructions()), default=-1)

    def by_id(self) -> dict[int, Instruction]:
        return {ins.id: ins for ins in self.instructions()}

    def canonical(self) -> "Circuit":
        """Adjacent waits merged, ids renumbered 0..n-1 in program order."""
        body: list[list[Instruction]] = []
        next_id = 0
        for step in self.body:
            if step[0].kind is GateKind.WAIT and body and body[-1][0].kind is GateKind.WAIT:
                prev = body[-1][0]
                body[-1] = [replace(prev, cycles=prev.cycles + step[0].cycles)]
                continue
            bundle = []
            for ins in step:
                bundle.append(replace(ins, id=next_id))
                next_id += 1
            body.append(bundle)
        return Circuit(self.qubits, tuple(tuple(b) for b in body))

    def with_body(self, body: Iterable[Iterable[Instruction]]) -> "Circuit":
        return Circuit(self.qubits, tuple(tuple(step) for step in body))


def canonical_names(n: int) -> tuple[str, ...]:
    return tuple(f"q{i}" for i in range(n))
