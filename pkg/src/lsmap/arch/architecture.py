"""
Qubit Plane Architectures
Checkerboard (c-arch) and tile-based (t-arch) surface-code layouts

A location is where one logical data qubit can live: a data patch in
the checkerboard, a 2x2 tile in the tile-based plane. Locations form an
R x C grid and are numbered 1..R*C row-major.

Checkerboard: location (r, c) is the physical patch (r, 2c + r % 2) of an
(R+1) x (2C+1) patch footprint; every other patch is an ancilla. Data
patches touch diagonally, so each location has up to four neighbours.
A CNOT between two neighbours borrows the ancilla patch of the upper
row that sits above the lower operand.

Tile-based: tile (r, c) owns the patches A=(2r, 2c), B=(2r, 2c+1),
C=(2r+1, 2c), D=(2r+1, 2c+1). Neighbours are the four von Neumann tiles
plus the (r-1, c-1) and (r+1, c+1) diagonals; SWAPs only run between
von Neumann neighbours.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, NamedTuple, Optional

import networkx as nx

from lsmap.circuit.ir import GateKind
from lsmap.errors import ArchitectureError
from lsmap.timing import ArchKind, TimingModel

logger = logging.getLogger(__name__)

Patch = tuple[int, int]
TILE_LETTERS = "ABCD"


class Location(NamedTuple):
    row: int
    col: int

    def __str__(self) -> str:
        return f"({self.row},{self.col})"


@dataclass(frozen=True)
class PrimitiveOp:
    """A two-qubit primitive placed in time, with the patches it holds."""

    kind: GateKind
    locs: tuple[Location, Location]
    ancilla: frozenset[Patch]
    data: frozenset[Patch]
    duration: int
    start: int = 0
    label: Optional[int] = field(default=None, compare=False)

    @property
    def end(self) -> int:
        return self.start + self.duration

    @property
    def reservations(self) -> frozenset[Patch]:
        return self.data | self.ancilla

    def at(self, start: int) -> "PrimitiveOp":
        return replace(self, start=start)


def conflicts(op1: PrimitiveOp, op2: PrimitiveOp) -> bool:
    """True when the two ops hold a common patch during overlapping intervals."""
    overlap = op1.start < op2.end and op2.start < op1.end
    return overlap and bool(op1.reservations & op2.reservations)


class Architecture:
    """Grid of locations with an occupancy map.

    Args:
        kind: Checkerboard or tile-based.
        rows: Number of location rows R.
        cols: Number of location columns C.
        occupancy: Optional initial qubit per location.
    """

    def __init__(self, kind: "ArchKind | str", rows: int, cols: int,
                 occupancy: Optional[Mapping[Location, Optional[str]]] = None):
        self.kind = ArchKind.parse(kind)
        if rows < 1 or cols < 1:
            raise ArchitectureError(f"Grid size must be positive, got {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self._occupancy: dict[Location, Optional[str]] = {l: None for l in self.locations()}
        self._where: dict[str, Location] = {}
        for loc, qubit in (occupancy or {}).items():
            self.place(qubit, Location(*loc))

    # ========================================================================
    # OCCUPANCY
    # ========================================================================

    @classmethod
    def with_placement(cls, kind: "ArchKind | str", rows: int, cols: int,
                       placement: Mapping[str, Location]) -> "Architecture":
        return cls(kind, rows, cols, {loc: q for q, loc in placement.items()})

    def place(self, qubit: Optional[str], loc: Location) -> None:
        self.check(loc)
        if qubit is None:
            return
        if self._occupancy[loc] is not None:
            raise ArchitectureError(f"Location {loc} already holds {self._occupancy[loc]}")
        if qubit in self._where:
            raise ArchitectureError(f"Qubit {qubit} is already placed at {self._where[qubit]}")
        self._occupancy[loc] = qubit
        self._where[qubit] = loc

    @property
    def occupancy(self) -> dict[Location, Optional[str]]:
        return dict(self._occupancy)

    def occupant(self, loc: Location) -> Optional[str]:
        self.check(loc)
        return self._occupancy[loc]

    def location_of(self, qubit: str) -> Location:
        try:
            return self._where[qubit]
        except KeyError:
            raise ArchitectureError(f"Qubit {qubit} is not placed") from None

    def placement(self) -> dict[str, Location]:
        return dict(self._where)

    def copy(self) -> "Architecture":
        return Architecture(self.kind, self.rows, self.cols, self._occupancy)

    def apply_swap(self, l1: Location, l2: Location) -> "Architecture":
        """New architecture with the contents of two swap-neighbours exchanged."""
        if not self.can_swap(l1, l2):
            raise ArchitectureError(f"Locations {l1} and {l2} are not swap neighbours")
        q1, q2 = self._occupancy[l1], self._occupancy[l2]
        if q1 is None and q2 is None:
            raise ArchitectureError(f"SWAP between two empty locations {l1} and {l2}")
        out = self.copy()
        out._occupancy[l1], out._occupancy[l2] = q2, q1
        for q, loc in ((q2, l1), (q1, l2)):
            if q is not None:
                out._where[q] = loc
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Architecture):
            return NotImplemented
        return (self.kind, self.rows, self.cols, self._occupancy) == (
            other.kind, other.rows, other.cols, other._occupancy)

    def __repr__(self) -> str:
        return f"Architecture({self.kind.value}, {self.rows}x{self.cols}, {len(self._where)} qubits)"

    # ========================================================================
    # GEOMETRY
    # ========================================================================

    def locations(self) -> list[Location]:
        return [Location(r, c) for r in range(self.rows) for c in range(self.cols)]

    @property
    def n_locations(self) -> int:
        return self.rows * self.cols

    def contains(self, loc: Location) -> bool:
        return 0 <= loc.row < self.rows and 0 <= loc.col < self.cols

    def check(self, loc: Location) -> None:
        if not self.contains(loc):
            raise ArchitectureError(f"Location {loc} is outside the {self.rows}x{self.cols} grid")

    def location_index(self, loc: Location) -> int:
        self.check(loc)
        return loc.row * self.cols + loc.col + 1

    def location_at(self, index: int) -> Location:
        if not 1 <= index <= self.n_locations:
            raise ArchitectureError(f"Location index {index} out of range 1..{self.n_locations}")
        return Location((index - 1) // self.cols, (index - 1) % self.cols)

    def _candidates(self, loc: Location) -> list[tuple[int, int]]:
        r, c = loc
        if self.kind is ArchKind.CHECKERBOARD:
            shift = -1 if r % 2 == 0 else 0
            return [(r + dr, c + shift + dc) for dr in (-1, 1) for dc in (0, 1)]
        return [(r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1), (r - 1, c - 1), (r + 1, c + 1)]

    def neighbors(self, loc: Location) -> set[Location]:
        """Locations a two-qubit gate with ``loc`` can run between."""
        self.check(loc)
        return {Location(r, c) for r, c in self._candidates(loc) if self.contains(Location(r, c))}

    def swap_neighbors(self, loc: Location) -> set[Location]:
        if self.kind is ArchKind.CHECKERBOARD:
            return self.neighbors(loc)
        return {n for n in self.neighbors(loc) if abs(n.row - loc.row) + abs(n.col - loc.col) == 1}

    def are_neighbors(self, l1: Location, l2: Location) -> bool:
        return l2 in self.neighbors(l1)

    def can_swap(self, l1: Location, l2: Location) -> bool:
        return l2 in self.swap_neighbors(l1)

    def swap_graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.locations())
        for loc in self.locations():
            g.add_edges_from((loc, n) for n in self.swap_neighbors(loc))
        return g

    def distance(self, l1: Location, l2: Location) -> int:
        """Manhattan distance on the location grid.

        The checkerboard grid is measured in its 45-degree rotated frame, in
        which diagonal data-patch neighbours are one step apart.
        """
        if self.kind is ArchKind.TILE:
            return abs(l1.row - l2.row) + abs(l1.col - l2.col)
        (r1, p1), (r2, p2) = self.data_patch(l1), self.data_patch(l2)
        du = abs((r1 + p1) - (r2 + p2)) // 2
        dv = abs((r1 - p1) - (r2 - p2)) // 2
        return du + dv

    # ========================================================================
    # PATCHES
    # ========================================================================

    def data_patch(self, loc: Location) -> Patch:
        """Checkerboard data patch, or the A patch of a tile."""
        self.check(loc)
        if self.kind is ArchKind.CHECKERBOARD:
            return loc.row, 2 * loc.col + loc.row % 2
        return 2 * loc.row, 2 * loc.col

    def tile_patch(self, loc: Location, letter: str) -> Patch:
        self.check(loc)
        if self.kind is not ArchKind.TILE:
            raise ArchitectureError("Tile patches only exist on the tile-based architecture")
        i = TILE_LETTERS.index(letter)
        return 2 * loc.row + i // 2, 2 * loc.col + i % 2

    def data_patches(self, loc: Location) -> frozenset[Patch]:
        """Patches a location occupies while a primitive runs on it."""
        if self.kind is ArchKind.CHECKERBOARD:
            return frozenset({self.data_patch(loc)})
        return frozenset(self.tile_patch(loc, letter) for letter in TILE_LETTERS)

    def footprint_shape(self) -> tuple[int, int]:
        if self.kind is ArchKind.CHECKERBOARD:
            return self.rows + 1, 2 * self.cols + 1
        return 2 * self.rows, 2 * self.cols

    def footprint(self) -> dict[Patch, str]:
        """Every patch of the plane with its name.

        Checkerboard patches are named ``D<location index>`` and ``A<k>``
        with ancillas counted row-major; tile patches are ``<letter><tile>``.
        """
        height, width = self.footprint_shape()
        if self.kind is ArchKind.TILE:
            return {
                (pr, pc): f"{TILE_LETTERS[(pr % 2) * 2 + pc % 2]}{self.location_index(Location(pr // 2, pc // 2))}"
                for pr in range(height) for pc in range(width)
            }
        data = {self.data_patch(l): f"D{self.location_index(l)}" for l in self.locations()}
        names: dict[Patch, str] = {}
        k = 0
        for pr in range(height):
            for pc in range(width):
                if (pr, pc) in data:
                    names[(pr, pc)] = data[(pr, pc)]
                else:
                    k += 1
                    names[(pr, pc)] = f"A{k}"
        return names

    def patch_name(self, patch: Patch) -> str:
        return self.footprint()[patch]

    def patch_at(self, name: str) -> Patch:
        for patch, label in self.footprint().items():
            if label == name:
                return patch
        raise ArchitectureError(f"No patch named {name} on this architecture")

    def qubit_efficiency(self) -> float:
        height, width = self.footprint_shape()
        return self.n_locations / (height * width)

    # ========================================================================
    # PRIMITIVES
    # ========================================================================

    def _pair(self, l1: Location, l2: Location, for_swap: bool = False) -> None:
        self.check(l1)
        self.check(l2)
        ok = self.can_swap(l1, l2) if for_swap else self.are_neighbors(l1, l2)
        if not ok:
            what = "swap neighbours" if for_swap else "neighbours"
            raise ArchitectureError(f"Locations {l1} and {l2} are not {what}")

    def ancilla_for_cnot(self, l1: Location, l2: Location) -> frozenset[Patch]:
        """Ancilla patches a CNOT between two neighbours reserves."""
        self._pair(l1, l2)
        if self.kind is ArchKind.CHECKERBOARD:
            upper, lower = sorted((l1, l2))
            return frozenset({(upper.row, self.data_patch(lower)[1])})
        patches = {self.tile_patch(l, letter) for l in (l1, l2) for letter in "BC"}
        if l1.row != l2.row and l1.col != l2.col:
            top, bottom = sorted((l1, l2))
            patches.add(self.tile_patch(Location(top.row, bottom.col), "C"))
            patches.add(self.tile_patch(Location(bottom.row, top.col), "B"))
        return frozenset(patches)

    def ancilla_for_swap(self, l1: Location, l2: Location) -> frozenset[Patch]:
        self._pair(l1, l2, for_swap=True)
        return self.ancilla_for_cnot(l1, l2)

    def primitive(self, kind: GateKind, l1: Location, l2: Location, t: TimingModel,
                  start: int = 0, label: Optional[int] = None) -> PrimitiveOp:
        """The CNOT or SWAP primitive between two locations, starting at ``start``."""
        if kind is GateKind.SWAP:
            ancilla = self.ancilla_for_swap(l1, l2)
        elif kind is GateKind.CNOT:
            ancilla = self.ancilla_for_cnot(l1, l2)
        else:
            raise ArchitectureError(f"No two-qubit primitive for {kind.value}")
        if t.arch is not self.kind:
            raise ArchitectureError(f"Timing model is for arch {t.arch.value}, plane is {self.kind.value}")
        return PrimitiveOp(
            kind=kind,
            locs=(l1, l2),
            ancilla=ancilla,
            data=self.data_patches(l1) | self.data_patches(l2),
            duration=t.duration(kind),
            start=start,
            label=label,
        )

    def conflicts(self, op1: PrimitiveOp, op2: PrimitiveOp) -> bool:
        return conflicts(op1, op2)


def conflicting_pairs(ops: Iterable[PrimitiveOp]) -> list[tuple[PrimitiveOp, PrimitiveOp]]:
    ops = sorted(ops, key=lambda op: (op.start, op.label if op.label is not None else -1))
    out = []
    for i, a in enumerate(ops):
        for b in ops[i + 1:]:
            if b.start >= a.end:
                break
            if conflicts(a, b):
                out.append((a, b))
    return out
