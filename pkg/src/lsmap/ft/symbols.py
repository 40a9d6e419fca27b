"""
Q-Symbol Table
Physical qubit blocks behind every patch of the plane

Every patch of the footprint gets a block of 2d^2 - 1 physical ids, and
every location a magic-state patch ``M<k>`` beside its home patch. The
gap between two touching patches (a seam) gets d + 1 ids for the
stabilizers measured while the two are merged.

Ids are handed out in this order: the home patch of every location
(row-major), the remaining footprint patches in raster order, the magic
patches, then the seams. Home block k therefore spans
k * (2d^2 - 1) .. (k + 1) * (2d^2 - 1) - 1, and at d=3 the ids inside a
patch block follow the raster order of the patch layout, so D5 of the
patch at location (0, 0) is always physical qubit 8.
"""

from dataclasses import dataclass, field
from typing import Mapping, Optional

from lsmap.arch.architecture import Architecture, Location
from lsmap.errors import ExpansionError
from lsmap.ft.esm import PATCH_QUBITS_D3, patch_size
from lsmap.placement.qap import Placement

HORIZONTAL = "horizontal"
VERTICAL = "vertical"


def seam_size(d: int) -> int:
    return d + 1


def seam_qubits(d: int) -> tuple[str, ...]:
    return tuple(f"S{k}" for k in range(1, seam_size(d) + 1))


@dataclass(frozen=True)
class PatchBlock:
    """Physical ids of one patch or seam.

    ``role`` is ``home``, ``ancilla``, ``magic`` or ``seam``. A seam knows
    the two patches it joins (left/top first) and how they touch.
    """

    name: str
    base: int
    size: int
    role: str
    orientation: Optional[str] = None
    between: tuple[str, ...] = ()

    @property
    def ids(self) -> range:
        return range(self.base, self.base + self.size)

    def physical(self, local: str) -> int:
        if self.role == "seam":
            names = seam_qubits(self.size - 1)
        elif self.size == len(PATCH_QUBITS_D3):
            names = PATCH_QUBITS_D3
        else:
            raise ExpansionError(f"Patch-local names only exist at d=3, block has {self.size} qubits")
        try:
            return self.base + names.index(local)
        except ValueError:
            raise ExpansionError(f"Unknown patch qubit: {local}. Use one of {names}") from None


@dataclass(frozen=True)
class QSymbol:
    """One location's home block and the logical qubit placed there, if any."""

    location: Location
    base: int
    size: int
    qubit: Optional[str] = None
    patch: str = ""

    @property
    def ids(self) -> range:
        return range(self.base, self.base + self.size)

    def physical(self, local: str) -> int:
        """Physical id of a patch-local name such as ``D5`` (d=3 blocks only)."""
        return PatchBlock(self.patch, self.base, self.size, "home").physical(local)


@dataclass(frozen=True)
class QSymbolTable:
    d: int
    by_location: Mapping[Location, QSymbol]
    blocks: Mapping[str, PatchBlock] = field(default_factory=dict)
    seams: Mapping[frozenset, PatchBlock] = field(default_factory=dict)
    plane: Optional[Architecture] = field(default=None, compare=False)

    def __getitem__(self, qubit: str) -> QSymbol:
        for symbol in self.by_location.values():
            if symbol.qubit == qubit:
                return symbol
        raise ExpansionError(f"Qubit {qubit} has no entry in the symbol table")

    def at(self, loc: Location) -> QSymbol:
        try:
            return self.by_location[Location(*loc)]
        except KeyError:
            raise ExpansionError(f"Location {loc} has no entry in the symbol table") from None

    @property
    def n_physical(self) -> int:
        return sum(b.size for b in self.blocks.values()) + sum(b.size for b in self.seams.values())

    def physical_name(self, loc: Location, local: str) -> str:
        return f"q{self.at(loc).physical(local)}"

    # ------------------------------------------------------------------
    # patches and seams
    # ------------------------------------------------------------------

    def block(self, name: str) -> PatchBlock:
        try:
            return self.blocks[name]
        except KeyError:
            raise ExpansionError(f"Patch {name} has no entry in the symbol table") from None

    def home(self, loc: Location) -> str:
        return self.at(loc).patch

    def magic(self, loc: Location) -> str:
        return f"M{self.plane.location_index(Location(*loc))}"

    def seam(self, p: str, q: str) -> PatchBlock:
        try:
            return self.seams[frozenset((p, q))]
        except KeyError:
            raise ExpansionError(f"Patches {p} and {q} do not touch; no seam to merge across") from None

    def patch_qubit(self, name: str, local: str) -> str:
        return f"q{self.block(name).physical(local)}"


def build_symbol_table(a: Architecture, p: Placement, d: int) -> QSymbolTable:
    """Assign every patch, magic patch and seam of ``a`` its physical ids."""
    size = patch_size(d)
    owner = {loc: q for q, loc in p.assign.items()}
    footprint = a.footprint()
    homes = [footprint[a.data_patch(loc)] for loc in a.locations()]

    blocks: dict[str, PatchBlock] = {}
    base = 0

    def add(name: str, role: str) -> None:
        nonlocal base
        blocks[name] = PatchBlock(name, base, size, role)
        base += size

    for name in homes:
        add(name, "home")
    for patch in sorted(footprint):
        if footprint[patch] not in blocks:
            add(footprint[patch], "ancilla")
    for loc in a.locations():
        add(f"M{a.location_index(loc)}", "magic")

    seams: dict[frozenset, PatchBlock] = {}
    width = seam_size(d)

    def join(left: str, right: str, orientation: str) -> None:
        nonlocal base
        name = f"{left}|{right}"
        seams[frozenset((left, right))] = PatchBlock(name, base, width, "seam", orientation, (left, right))
        base += width

    for (r, c) in sorted(footprint):
        if (r, c + 1) in footprint:
            join(footprint[(r, c)], footprint[(r, c + 1)], HORIZONTAL)
        if (r + 1, c) in footprint:
            join(footprint[(r, c)], footprint[(r + 1, c)], VERTICAL)
    for loc, home in zip(a.locations(), homes):
        join(home, f"M{a.location_index(loc)}", HORIZONTAL)

    table = {
        loc: QSymbol(loc, blocks[home].base, size, owner.get(loc), home)
        for loc, home in zip(a.locations(), homes)
    }
    return QSymbolTable(d, table, blocks, seams, a)
