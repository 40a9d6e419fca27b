"""
FT Library
Surface-code cycle templates for every logical operation

Each SC cycle is a transversal slot (bit-wise physical gates on the data
qubits of a patch) followed by one ESM round. A template lists the
cycles of one logical operation; its length always equals the timing
model's duration for that operation.

Surgery operations (CNOT, SWAP, S, T) carry no transversal gates of
their own; their cycles are tagged with the phase they belong to, d
cycles per phase, and the patches they prepare, merge and measure come
from lsmap.ft.lattice.
"""

from dataclasses import dataclass
from typing import Callable, Optional

from lsmap.circuit.ir import GateKind
from lsmap.errors import ExpansionError
from lsmap.timing import ArchKind, check_distance


@dataclass(frozen=True)
class SCCycle:
    """``transversal`` pairs a physical gate with the data set it covers."""

    transversal: tuple[tuple[GateKind, str], ...] = ()
    phase: str = "esm"


@dataclass(frozen=True)
class FTLibraryEntry:
    kind: GateKind
    arch: Optional[ArchKind]
    build: Callable[[int], tuple[SCCycle, ...]]

    def cycles(self, d: int) -> tuple[SCCycle, ...]:
        check_distance(d)
        return self.build(d)


def _single(*transversal: tuple[GateKind, str]) -> Callable[[int], tuple[SCCycle, ...]]:
    return lambda d: (SCCycle(tuple(transversal)),)


def _phases(*phases: tuple[str, int]) -> Callable[[int], tuple[SCCycle, ...]]:
    return lambda d: tuple(SCCycle(phase=label) for label, k in phases for _ in range(k * d))


def _hadamard(d: int) -> tuple[SCCycle, ...]:
    return (SCCycle(((GateKind.H, "all"),), "transversal h"),) + tuple(
        SCCycle(phase="rotate") for _ in range(4 * d - 1)
    )


def _magic(multiple: int) -> Callable[[int], tuple[SCCycle, ...]]:
    return _phases(("magic merge", 1), ("magic correction", multiple - 1))


_C_CNOT = (("merge zz", 1), ("merge xx", 1), ("split", 1))

LIBRARY: dict[tuple[GateKind, Optional[ArchKind]], FTLibraryEntry] = {}


def _register(kind: GateKind, build, arch: Optional[ArchKind] = None) -> None:
    LIBRARY[(kind, arch)] = FTLibraryEntry(kind, arch, build)


_register(GateKind.I, _single())
_register(GateKind.X, _single((GateKind.X, "x_logical")))
_register(GateKind.Z, _single((GateKind.Z, "z_logical")))
_register(GateKind.Y, _single((GateKind.Y, "corner"), (GateKind.X, "x_only"), (GateKind.Z, "z_only")))
_register(GateKind.PREPZ, _single((GateKind.PREPZ, "all")))
_register(GateKind.PREPX, _single((GateKind.PREPX, "all")))
_register(GateKind.MEASZ, _single((GateKind.MEASZ, "all")))
_register(GateKind.MEASX, _single((GateKind.MEASX, "all")))
_register(GateKind.H, _hadamard)
_register(GateKind.S, _magic(14))
_register(GateKind.SDAG, _magic(14))
_register(GateKind.T, _magic(17))
_register(GateKind.TDAG, _magic(17))
_register(GateKind.CNOT, _phases(*_C_CNOT), ArchKind.CHECKERBOARD)
_register(GateKind.SWAP, _phases(*(_C_CNOT * 3)), ArchKind.CHECKERBOARD)
_register(GateKind.CNOT, _phases(("move", 1), ("merge", 2), ("split", 1)), ArchKind.TILE)
_register(GateKind.SWAP, _phases(("merge", 2), ("split", 1)), ArchKind.TILE)


def lookup(kind: GateKind, arch: ArchKind) -> FTLibraryEntry:
    """Library entry for ``kind`` on ``arch``; two-qubit entries are per architecture."""
    entry = LIBRARY.get((kind, arch)) or LIBRARY.get((kind, None))
    if entry is None:
        raise ExpansionError(f"No FT library entry for {kind.value} on arch {arch.value}")
    return entry


def template(kind: GateKind, arch: ArchKind, d: int) -> tuple[SCCycle, ...]:
    return lookup(kind, arch).cycles(d)
