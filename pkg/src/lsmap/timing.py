"""
Timing Model
Logical operation durations in surface-code cycles

Every logical operation is priced in SC cycles as a function of the code
distance d. Single-qubit Paulis, preparation and measurement take one
cycle; H, S and T scale with d; CNOT and SWAP depend on the architecture:

    op            checkerboard   tile-based
    CNOT          3d             4d
    SWAP          9d             3d

Sdag/Tdag are priced like S/T. Wait carries its own cycle count and is
never looked up here.
"""

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

from lsmap.errors import TimingError

if TYPE_CHECKING:
    from lsmap.circuit.ir import GateKind


class ArchKind(str, Enum):
    """Qubit plane architecture. Values match the ``--arch`` flag."""

    CHECKERBOARD = "c"
    TILE = "t"

    @classmethod
    def parse(cls, value: "str | ArchKind") -> "ArchKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {"c": cls.CHECKERBOARD, "checkerboard": cls.CHECKERBOARD,
                   "t": cls.TILE, "tile": cls.TILE, "tile-based": cls.TILE}
        if key not in aliases:
            raise TimingError(f"Unknown architecture: {value}. Use 'c' or 't'")
        return aliases[key]


def check_distance(d: int) -> int:
    if not isinstance(d, int) or d < 3 or d % 2 == 0:
        raise TimingError(f"Code distance must be an odd integer >= 3, got {d!r}")
    return d


# Multiples of d; constant-cost kinds are listed in _UNIT_COST
_D_MULTIPLE = {
    "h": 4,
    "s": 14,
    "sdag": 14,
    "t": 17,
    "tdag": 17,
}
_TWO_QUBIT = {
    ("cnot", ArchKind.CHECKERBOARD): 3,
    ("cnot", ArchKind.TILE): 4,
    ("swap", ArchKind.CHECKERBOARD): 9,
    ("swap", ArchKind.TILE): 3,
}
_UNIT_COST = {"i", "x", "y", "z", "prepz", "prepx", "measz", "measx"}


def duration(kind: "GateKind", arch: ArchKind, d: int) -> int:
    """Duration of one logical operation in SC cycles.

    Args:
        kind: Gate kind; anything but Wait.
        arch: Architecture the operation runs on.
        d: Code distance, odd and >= 3.

    Returns:
        Number of SC cycles.
    """
    check_distance(d)
    name = getattr(kind, "value", kind)
    if name in _UNIT_COST:
        return 1
    if name in _D_MULTIPLE:
        return _D_MULTIPLE[name] * d
    if (name, arch) in _TWO_QUBIT:
        return _TWO_QUBIT[(name, arch)] * d
    raise TimingError(f"No duration for {name}. Wait instructions carry their own cycle count")


@dataclass(frozen=True)
class TimingModel:
    """Duration lookup bound to one code distance and architecture."""

    d: int
    arch: ArchKind

    def __post_init__(self):
        check_distance(self.d)
        object.__setattr__(self, "arch", ArchKind.parse(self.arch))

    def duration(self, kind: "GateKind") -> int:
        return duration(kind, self.arch, self.d)

    def of(self, instruction) -> int:
        """Duration of an instruction, honouring the cycle count of a Wait."""
        if instruction.kind.value == "qwait":
            return instruction.cycles
        return self.duration(instruction.kind)

    def surgery_cnot_serial(self) -> int:
        # merge, split and the final single-patch measurement, unparallelised
        return 4 * self.d + 1

    def corner_move(self) -> int:
        return 3 * self.d

    def table(self) -> dict[str, int]:
        """All durations for this d and architecture, keyed by gate mnemonic."""
        from lsmap.circuit.ir import GateKind

        return {k.value: self.duration(k) for k in GateKind if k is not GateKind.WAIT}
