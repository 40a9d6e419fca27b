"""
Tile Patch Sequences
Merge/measure step lists realising t-SWAP and t-CNOT between two tiles

Templates name patches ``<letter><tile>`` with tile 1 the anchor tile,
2 to its right, 4 below it and 5 diagonally below-right (numbering of a
three-wide plane). ``XX a b`` / ``ZZ a b`` are lattice-surgery joint
measurements between horizontally / vertically adjacent patches, ``X a``
and ``Z a`` single-patch measurements, ``prep Z a`` / ``prep X a``
initialisations in |0> / |+>.

``resolve_sequence`` maps a template onto two concrete tiles by
rotating it 180 degrees and/or transposing it. A transposition turns
horizontal merges into vertical ones, so it also exchanges X and Z.
"""

from dataclasses import dataclass
from typing import NamedTuple

from lsmap.arch.architecture import TILE_LETTERS, Architecture, Location
from lsmap.circuit.ir import GateKind
from lsmap.errors import ArchitectureError
from lsmap.timing import ArchKind

_TILE_OFFSET = {"1": (0, 0), "2": (0, 1), "4": (1, 0), "5": (1, 1)}


class PatchOp(NamedTuple):
    action: str
    pauli: str
    patches: tuple[str, ...]

    def __str__(self) -> str:
        head = f"prep {self.pauli}" if self.action == "prep" else self.pauli
        return f"{head} {' '.join(self.patches)}"


def op(text: str) -> PatchOp:
    """``"XX A1 B1"`` or ``"prep Z B1"`` to a PatchOp."""
    words = text.split()
    if words[0] == "prep":
        return PatchOp("prep", words[1], tuple(words[2:]))
    if len(words[0]) != len(words) - 1 or set(words[0]) - set("IXYZ"):
        raise ArchitectureError(f"Malformed patch operation: {text}")
    return PatchOp("measure", words[0], tuple(words[1:]))


def steps(*lines: tuple[str, ...]) -> tuple[tuple[PatchOp, ...], ...]:
    return tuple(tuple(op(text) for text in line) for line in lines)


@dataclass(frozen=True)
class PatchSequence:
    """Steps moving two logical qubits from ``inputs`` to ``outputs``.

    For a CNOT, inputs and outputs are (control, target).
    """

    name: str
    gate: GateKind
    inputs: tuple[str, str]
    outputs: tuple[str, str]
    steps: tuple[tuple[PatchOp, ...], ...]

    def patches(self) -> tuple[str, ...]:
        seen: dict[str, None] = dict.fromkeys(self.inputs)
        for step in self.steps:
            for o in step:
                seen.update(dict.fromkeys(o.patches))
        seen.update(dict.fromkeys(self.outputs))
        return tuple(seen)

    @property
    def n_steps(self) -> int:
        return len(self.steps)


# ============================================================================
# TEMPLATES
# ============================================================================

TSWAP_SEQUENCES = {
    "A1/D2": PatchSequence(
        "t-SWAP A1/D2", GateKind.SWAP, ("A1", "D2"), ("A2", "D1"),
        steps(
            ("prep Z B1", "prep Z A2", "prep Z C2", "prep Z D1", "XX A1 B1", "XX D2 C2"),
            ("XX B1 A2", "XX C2 D1", "Z D2", "Z A1"),
            ("Z B1", "Z C2"),
        ),
    ),
    "D1/A2": PatchSequence(
        "t-SWAP D1/A2", GateKind.SWAP, ("D1", "A2"), ("C2", "B1"),
        steps(
            ("prep Z C2", "prep Z B1", "XX D1 C2", "XX A2 B1"),
            ("Z D1", "Z A2"),
        ),
    ),
    "A1/A2": PatchSequence(
        "t-SWAP A1/A2", GateKind.SWAP, ("A1", "A2"), ("A2", "D1"),
        steps(
            ("prep Z B1", "prep X C2", "prep Z D1", "XX A1 B1", "ZZ A2 C2"),
            ("Z A1", "X A2", "XX C2 D1"),
            ("prep Z A2", "XX B1 A2", "Z C2"),
            ("Z B1",),
        ),
    ),
}

TCNOT_SEQUENCES = {
    "A1/D2": PatchSequence(
        "t-CNOT A1/D2", GateKind.CNOT, ("A1", "D2"), ("B1", "C2"),
        steps(
            ("prep Z B1", "prep Z C2", "prep Z D1", "XX A1 B1", "XX D2 C2"),
            ("Z A1", "Z D2", "XX D1 C2"),
            ("ZZ B1 D1",),
            ("X D1",),
        ),
    ),
    "A1/A2": PatchSequence(
        "t-CNOT A1/A2", GateKind.CNOT, ("A1", "A2"), ("B1", "C2"),
        steps(
            ("prep Z B1", "prep X C2", "prep Z D1", "XX A1 B1", "ZZ A2 C2"),
            ("Z A1", "X A2", "XX D1 C2"),
            ("ZZ B1 D1",),
            ("X D1",),
        ),
    ),
    "A1/A5": PatchSequence(
        "t-CNOT A1/A5", GateKind.CNOT, ("A1", "A5"), ("D1", "A5"),
        steps(
            ("prep X C1", "prep Z B4", "prep Z D1", "ZZ A1 C1", "XX B4 A5"),
            ("X A1", "XX C1 D1"),
            ("Z C1", "ZZ D1 B4"),
            ("X B4",),
        ),
    ),
}

DEFAULT_SWAP_CASE = "A1/D2"
DEFAULT_CNOT_CASE = {"adjacent": "A1/D2", "diagonal": "A1/A5"}


def _lookup(table: dict[str, PatchSequence], case: str, what: str) -> PatchSequence:
    if case not in table:
        raise ArchitectureError(f"Unknown {what} layout case: {case}. Use one of {sorted(table)}")
    return table[case]


def tswap_sequence(case: str) -> PatchSequence:
    return _lookup(TSWAP_SEQUENCES, case, "t-SWAP")


def tcnot_sequence(case: str) -> PatchSequence:
    return _lookup(TCNOT_SEQUENCES, case, "t-CNOT")


# ============================================================================
# RESOLUTION ONTO A PLANE
# ============================================================================

def _template_patch(name: str) -> tuple[int, int]:
    letter, tile = name[0], name[1:]
    if letter not in TILE_LETTERS or tile not in _TILE_OFFSET:
        raise ArchitectureError(f"Unknown template patch: {name}")
    tr, tc = _TILE_OFFSET[tile]
    i = TILE_LETTERS.index(letter)
    return 2 * tr + i // 2, 2 * tc + i % 2


def _template_delta(seq: PatchSequence) -> tuple[int, int]:
    (r1, c1), (r2, c2) = (_template_patch(p) for p in seq.inputs)
    return r2 // 2 - r1 // 2, c2 // 2 - c1 // 2


_DUAL = str.maketrans("XZ", "ZX")


def resolve_sequence(a: Architecture, seq: PatchSequence, l1: Location, l2: Location) -> PatchSequence:
    """Place a template on the tiles ``l1`` (first input) and ``l2``.

    Returns:
        The same sequence over the plane's patch names (``B4``, ``C7``, ...).
    """
    if a.kind is not ArchKind.TILE:
        raise ArchitectureError("Patch sequences only exist on the tile-based architecture")
    delta = (l2.row - l1.row, l2.col - l1.col)
    dr, dc = _template_delta(seq)
    transforms = [
        ((dr, dc), False, False),
        ((-dr, -dc), True, False),
        ((dc, dr), False, True),
        ((-dc, -dr), True, True),
    ]
    fitting = [(rot, tr) for d, rot, tr in transforms if d == delta]
    if not fitting:
        raise ArchitectureError(f"Template {seq.name} does not fit tiles {l1} and {l2}")
    rotate, transpose = fitting[0]
    height, width = 2 * (abs(dr) + 1), 2 * (abs(dc) + 1)
    origin = (min(l1.row, l2.row), min(l1.col, l2.col))
    footprint = a.footprint()

    def place(name: str) -> str:
        pr, pc = _template_patch(name)
        if rotate:
            pr, pc = height - 1 - pr, width - 1 - pc
        if transpose:
            pr, pc = pc, pr
        return footprint[(2 * origin[0] + pr, 2 * origin[1] + pc)]

    def pauli(word: str) -> str:
        return word.translate(_DUAL) if transpose else word

    new_steps = tuple(
        tuple(PatchOp(o.action, pauli(o.pauli), tuple(place(p) for p in o.patches)) for o in step)
        for step in seq.steps
    )
    return PatchSequence(
        name=f"{seq.name} on tiles {a.location_index(l1)},{a.location_index(l2)}",
        gate=seq.gate,
        inputs=(place(seq.inputs[0]), place(seq.inputs[1])),
        outputs=(place(seq.outputs[0]), place(seq.outputs[1])),
        steps=new_steps,
    )


def swap_patch_sequence(a: Architecture, l1: Location, l2: Location,
                        case: str = DEFAULT_SWAP_CASE) -> PatchSequence:
    """t-SWAP steps between two von Neumann neighbour tiles."""
    if not a.can_swap(l1, l2):
        raise ArchitectureError(f"Tiles {l1} and {l2} are not swap neighbours")
    return resolve_sequence(a, tswap_sequence(case), l1, l2)


def cnot_patch_sequence(a: Architecture, control: Location, target: Location,
                        case: str = "") -> PatchSequence:
    """t-CNOT steps; the default case depends on whether the tiles are diagonal."""
    if not a.are_neighbors(control, target):
        raise ArchitectureError(f"Tiles {control} and {target} are not neighbours")
    diagonal = control.row != target.row and control.col != target.col
    case = case or DEFAULT_CNOT_CASE["diagonal" if diagonal else "adjacent"]
    return resolve_sequence(a, tcnot_sequence(case), control, target)
