"""
Lattice-Surgery Blocks
Which patches a two-qubit or magic-state operation prepares, merges and
measures, d SC cycles at a time

A surgery operation is a list of blocks of d cycles each. At the start
of a block its preparations and single-patch measurements run in the
transversal slot; for the rest of the block every merge measures the
seam stabilizers between its two patches alongside the ESM rounds of
the live patches.

Checkerboard CNOT (ancilla |+>): merge ZZ(control, ancilla), merge
XX(ancilla, target), then measure Z on the ancilla. A c-SWAP is three
of these. Tile operations follow the resolved patch sequence, one step
per block. S and T merge the home patch with its magic patch, measure
the magic patch in X and spend the remaining blocks on the correction.

Seams: the patch on the left (top) exposes its right column (bottom
row) of data qubits, the other patch its left column (top row). Data
pair i is (left_i, right_i); the d + 1 seam ancillas measure weight-4
checks on pairs (i, i + 1) alternating between the merge basis and the
other basis, closed by weight-2 checks on the first and last pair.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from lsmap.arch.architecture import Architecture, Location
from lsmap.arch.tile_sequences import PatchSequence, cnot_patch_sequence, swap_patch_sequence
from lsmap.circuit.ir import GateKind, Instruction
from lsmap.errors import ExpansionError
from lsmap.ft.esm import DATA_QUBITS_D3, PLANAR_LAYOUT_D3
from lsmap.ft.symbols import HORIZONTAL, VERTICAL, QSymbolTable, seam_qubits
from lsmap.timing import ArchKind

# Transversal kinds for preparing / measuring a whole patch
PREP_KIND = {"Z": GateKind.PREPZ, "X": GateKind.PREPX}
MEASURE_KIND = {"Z": GateKind.MEASZ, "X": GateKind.MEASX}

_OTHER = {"X": "Z", "Z": "X"}


# ============================================================================
# SEAM GEOMETRY
# ============================================================================

@lru_cache(maxsize=None)
def boundary(side: str) -> tuple[str, ...]:
    """Data qubits on one side of the d=3 patch, ordered along the side."""
    coords = {q: PLANAR_LAYOUT_D3[q] for q in DATA_QUBITS_D3}
    rows = sorted({r for r, _ in coords.values()})
    cols = sorted({c for _, c in coords.values()})
    pick = {
        "top": (lambda rc: rc[0] == rows[0], 1),
        "bottom": (lambda rc: rc[0] == rows[-1], 1),
        "left": (lambda rc: rc[1] == cols[0], 0),
        "right": (lambda rc: rc[1] == cols[-1], 0),
    }
    if side not in pick:
        raise ExpansionError(f"Unknown patch side: {side}. Use top, bottom, left or right")
    keep, axis = pick[side]
    return tuple(sorted((q for q, rc in coords.items() if keep(rc)), key=lambda q: coords[q][axis]))


@dataclass(frozen=True)
class SeamCheck:
    """One seam stabilizer: its ancilla, basis and the data pairs it covers."""

    ancilla: str
    basis: str
    pairs: tuple[int, ...]


def seam_checks(d: int, basis: str) -> tuple[SeamCheck, ...]:
    """The d + 1 stabilizers of a merged boundary with ``d`` data pairs."""
    if basis not in _OTHER:
        raise ExpansionError(f"Seams merge in X or Z, got {basis}")
    names = seam_qubits(d)
    checks = [SeamCheck(names[0], _OTHER[basis], (0,))]
    last = basis
    for i in range(d - 1):
        last = basis if i % 2 == 0 else _OTHER[basis]
        checks.append(SeamCheck(names[i + 1], last, (i, i + 1)))
    checks.append(SeamCheck(names[d], _OTHER[last], (d - 1,)))
    return tuple(checks)


def seam_data(orientation: str) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Facing data qubits of the first and second patch of a seam."""
    if orientation == HORIZONTAL:
        return boundary("right"), boundary("left")
    if orientation == VERTICAL:
        return boundary("bottom"), boundary("top")
    raise ExpansionError(f"Unknown seam orientation: {orientation}")


# ============================================================================
# SURGERY BLOCKS
# ============================================================================

@dataclass(frozen=True)
class SurgeryBlock:
    """d cycles of one surgery operation.

    ``preps`` and ``measures`` are (patch, basis) pairs run at the start
    of the block, ``merges`` (patch, patch, basis) seams held open for the
    whole block, ``live`` the patches that carry ESM rounds meanwhile.
    ``inject`` puts a physical gate on the corner data qubit of a patch
    right after its preparation.
    """

    live: frozenset[str]
    preps: tuple[tuple[str, str], ...] = ()
    measures: tuple[tuple[str, str], ...] = ()
    merges: tuple[tuple[str, str, str], ...] = ()
    inject: Optional[tuple[str, GateKind]] = None
    patches: frozenset[str] = field(init=False)

    def __post_init__(self):
        touched = set(self.live)
        touched.update(p for p, _ in self.preps + self.measures)
        touched.update(p for m in self.merges for p in m[:2])
        object.__setattr__(self, "patches", frozenset(touched))


def _checkerboard_cnot(qs: QSymbolTable, control: Location, target: Location) -> list[SurgeryBlock]:
    a = qs.plane
    (patch,) = a.ancilla_for_cnot(control, target)
    ancilla = a.patch_name(patch)
    c, t = qs.home(control), qs.home(target)
    return [
        SurgeryBlock(frozenset({c, ancilla, t}), preps=((ancilla, "X"),), merges=((c, ancilla, "Z"),)),
        SurgeryBlock(frozenset({c, ancilla, t}), merges=((ancilla, t, "X"),)),
        SurgeryBlock(frozenset({c, t}), measures=((ancilla, "Z"),)),
    ]


def _sequence_blocks(seq: PatchSequence) -> list[SurgeryBlock]:
    live = set(seq.inputs)
    blocks = []
    for step in seq.steps:
        preps, measures, merges = [], [], []
        for o in step:
            if o.action == "prep":
                preps.extend((p, o.pauli) for p in o.patches)
            elif len(o.patches) == 1:
                measures.append((o.patches[0], o.pauli))
            elif len(o.patches) == 2 and len(set(o.pauli)) == 1:
                merges.append((o.patches[0], o.patches[1], o.pauli[0]))
            else:
                raise ExpansionError(f"No lattice-surgery block for '{o}' in {seq.name}")
        live.difference_update(p for p, _ in measures)
        live.update(p for p, _ in preps)
        live.update(p for m in merges for p in m[:2])
        blocks.append(SurgeryBlock(frozenset(live), tuple(preps), tuple(measures), tuple(merges)))
    return blocks


def _magic(qs: QSymbolTable, kind: GateKind, loc: Location, n_blocks: int) -> list[SurgeryBlock]:
    home, magic = qs.home(loc), qs.magic(loc)
    blocks = [
        SurgeryBlock(frozenset({home, magic}), preps=((magic, "X"),), merges=((home, magic, "Z"),),
                     inject=(magic, kind)),
        SurgeryBlock(frozenset({home}), measures=((magic, "X"),)),
    ]
    blocks += [SurgeryBlock(frozenset({home})) for _ in range(n_blocks - len(blocks))]
    return blocks


def surgery_blocks(qs: QSymbolTable, ins: Instruction, locs: tuple[Location, ...],
                   n_blocks: int) -> list[SurgeryBlock]:
    """Blocks of one CNOT, SWAP, S or T; empty for every other kind.

    Raises:
        ExpansionError: if the operation does not fill ``n_blocks`` blocks.
    """
    a: Architecture = qs.plane
    if a is None:
        raise ExpansionError("Symbol table carries no plane; build it with build_symbol_table")
    if ins.kind.is_magic:
        blocks = _magic(qs, ins.kind, locs[0], n_blocks)
    elif ins.kind is GateKind.CNOT and a.kind is ArchKind.CHECKERBOARD:
        blocks = _checkerboard_cnot(qs, *locs)
    elif ins.kind is GateKind.SWAP and a.kind is ArchKind.CHECKERBOARD:
        l1, l2 = locs
        blocks = _checkerboard_cnot(qs, l1, l2) + _checkerboard_cnot(qs, l2, l1) + _checkerboard_cnot(qs, l1, l2)
    elif ins.kind is GateKind.CNOT:
        blocks = _sequence_blocks(cnot_patch_sequence(a, *locs))
    elif ins.kind is GateKind.SWAP:
        blocks = _sequence_blocks(swap_patch_sequence(a, *locs))
    else:
        return []
    if len(blocks) != n_blocks:
        raise ExpansionError(f"{ins.qasm()} has {len(blocks)} surgery blocks, its template needs {n_blocks}")
    return blocks
