"""
Stabilizer Tableau
Patch-level stabilizer states with symbolic measurement phases

Each lattice-surgery patch is one tableau qubit. A Tableau holds the
stabilizer generators of the patches that carry no logical information
plus a tracked X/Z pair per logical qubit. Pauli strings use the
binary (x, z) encoding with x = z = 1 meaning Y.

Signs are symbolic: a Phase is (-1)^(const + sum of outcome bits), so a
whole measurement sequence can be run once and the Pauli frame read off
algebraically, or re-run with every outcome forced to a concrete bit.
"""

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from lsmap.errors import SurgeryError

PAULI_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
BITS_PAULI = {bits: letter for letter, bits in PAULI_BITS.items()}


# ============================================================================
# PHASES AND PAULI STRINGS
# ============================================================================

@dataclass(frozen=True)
class Phase:
    """The sign (-1)^(const + sum(symbols)) with outcome bits as symbols."""

    const: int = 0
    symbols: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "const", self.const % 2)
        object.__setattr__(self, "symbols", frozenset(self.symbols))

    def __add__(self, other: "Phase") -> "Phase":
        return Phase(self.const + other.const, self.symbols ^ other.symbols)

    def flipped(self) -> "Phase":
        return Phase(self.const + 1, self.symbols)

    @property
    def is_constant(self) -> bool:
        return not self.symbols

    def evaluate(self, values: Mapping[str, int]) -> int:
        try:
            return (self.const + sum(values[s] for s in self.symbols)) % 2
        except KeyError as exc:
            raise SurgeryError(f"No value for outcome {exc.args[0]}") from None

    def __str__(self) -> str:
        terms = sorted(self.symbols, key=_symbol_key) + (["1"] if self.const else [])
        return "+" if not terms else f"(-1)^({'+'.join(terms)})"


def _symbol_key(name: str) -> tuple[str, int]:
    head = name.rstrip("0123456789")
    return head, int(name[len(head):] or 0)


def _g(x1: np.ndarray, z1: np.ndarray, x2: np.ndarray, z2: np.ndarray) -> int:
    """Exponent of i picked up by the product of two Pauli strings."""
    x1, z1, x2, z2 = (v.astype(np.int64) for v in (x1, z1, x2, z2))
    y = x1 * z1 * (z2 - x2)
    x = x1 * (1 - z1) * z2 * (2 * x2 - 1)
    z = (1 - x1) * z1 * x2 * (1 - 2 * z2)
    return int((y + x + z).sum())


@dataclass(frozen=True, eq=False)
class PauliString:
    """Signed Pauli operator over an ordered set of patches."""

    x: np.ndarray
    z: np.ndarray
    phase: Phase = field(default_factory=Phase)

    def __post_init__(self):
        object.__setattr__(self, "x", np.asarray(self.x, dtype=np.uint8) % 2)
        object.__setattr__(self, "z", np.asarray(self.z, dtype=np.uint8) % 2)
        if self.x.shape != self.z.shape:
            raise SurgeryError("x and z parts of a Pauli string differ in length")

    @classmethod
    def parse(cls, text: str) -> "PauliString":
        """``"+IXX"``, ``"-ZZI"`` or ``"XY"``."""
        sign, letters = (text[0], text[1:]) if text[:1] in "+-" else ("+", text)
        if not letters or set(letters) - set(PAULI_BITS):
            raise SurgeryError(f"Malformed Pauli string: {text}. Use letters I, X, Y, Z")
        x, z = zip(*(PAULI_BITS[ch] for ch in letters))
        return cls(np.array(x), np.array(z), Phase(1 if sign == "-" else 0))

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(np.zeros(n), np.zeros(n))

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def letters(self) -> str:
        return "".join(BITS_PAULI[(int(a), int(b))] for a, b in zip(self.x, self.z))

    @property
    def bits(self) -> np.ndarray:
        return np.concatenate([self.x, self.z])

    def support(self) -> list[int]:
        return [k for k in range(self.n) if self.x[k] or self.z[k]]

    @property
    def weight(self) -> int:
        return len(self.support())

    def commutes(self, other: "PauliString") -> bool:
        return int((self.x & other.z).sum() + (self.z & other.x).sum()) % 2 == 0

    def with_phase(self, phase: Phase) -> "PauliString":
        return PauliString(self.x, self.z, phase)

    def __mul__(self, other: "PauliString") -> "PauliString":
        if not self.commutes(other):
            raise SurgeryError(f"Product of anticommuting operators {self} and {other} is not Hermitian")
        exponent = _g(self.x, self.z, other.x, other.z) % 4
        return PauliString(
            self.x ^ other.x,
            self.z ^ other.z,
            self.phase + other.phase + Phase(exponent // 2),
        )

    def same_operator(self, other: "PauliString") -> bool:
        return np.array_equal(self.x, other.x) and np.array_equal(self.z, other.z)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliString):
            return NotImplemented
        return self.same_operator(other) and self.phase == other.phase

    def __hash__(self) -> int:
        return hash((self.letters, self.phase))

    def __str__(self) -> str:
        return f"{self.phase}{self.letters}"

    __repr__ = __str__


def _solve_gf2(columns: Sequence[np.ndarray], target: np.ndarray) -> Optional[np.ndarray]:
    """Coefficients c with sum(c_k * columns[k]) == target over GF(2), or None."""
    if not columns:
        return np.zeros(0, dtype=np.uint8) if not target.any() else None
    A = np.column_stack(columns).astype(np.uint8)
    m, k = A.shape
    M = np.concatenate([A, target.reshape(-1, 1).astype(np.uint8)], axis=1)
    pivots = []
    row = 0
    for col in range(k):
        hits = np.nonzero(M[row:, col])[0]
        if len(hits) == 0:
            continue
        p = row + hits[0]
        M[[row, p]] = M[[p, row]]
        for r in range(m):
            if r != row and M[r, col]:
                M[r] ^= M[row]
        pivots.append(col)
        row += 1
        if row == m:
            break
    if M[row:, k].any():
        return None
    coeffs = np.zeros(k, dtype=np.uint8)
    for r, col in enumerate(pivots):
        coeffs[col] = M[r, k]
    return coeffs


# ============================================================================
# TABLEAU
# ============================================================================

@dataclass(frozen=True)
class MeasurementOutcome:
    """Outcome bit of one measurement; ``deterministic`` when fixed by the state."""

    value: Phase
    deterministic: bool


Outcome = Union[int, str, None]


class Tableau:
    """Stabilizer generators plus tracked logical operators over named patches.

    Args:
        patches: Patch names, one tableau qubit each.
        inputs: Patches holding logical qubit 0, 1, ... The remaining
            patches start in |0>.
    """

    def __init__(self, patches: Sequence[str], inputs: Sequence[str] = ()):
        self.patches = tuple(patches)
        if len(set(self.patches)) != len(self.patches):
            raise SurgeryError(f"Duplicate patch names in {self.patches}")
        self.index = {p: k for k, p in enumerate(self.patches)}
        for p in inputs:
            self._col(p)
        self.stabilizers: list[PauliString] = [
            self.operator("Z", (p,)) for p in self.patches if p not in inputs
        ]
        self.logicals: dict[str, PauliString] = {}
        for j, p in enumerate(inputs):
            self.logicals[f"X{j}"] = self.operator("X", (p,))
            self.logicals[f"Z{j}"] = self.operator("Z", (p,))
        self.destroyed: set[int] = set()
        self._counter = 0

    def _col(self, patch: str) -> int:
        try:
            return self.index[patch]
        except KeyError:
            raise SurgeryError(f"Unknown patch: {patch}. Use one of {self.patches}") from None

    @property
    def n(self) -> int:
        return len(self.patches)

    def operator(self, letters: str, patches: Sequence[str], phase: Phase = Phase()) -> PauliString:
        """Pauli string with ``letters[k]`` on ``patches[k]`` and identity elsewhere."""
        if len(letters) != len(patches):
            raise SurgeryError(f"{letters} does not match patches {tuple(patches)}")
        x = np.zeros(self.n, dtype=np.uint8)
        z = np.zeros(self.n, dtype=np.uint8)
        for letter, p in zip(letters, patches):
            x[self._col(p)], z[self._col(p)] = PAULI_BITS[letter]
        return PauliString(x, z, phase)

    def copy(self) -> "Tableau":
        other = Tableau.__new__(Tableau)
        other.patches = self.patches
        other.index = self.index
        other.stabilizers = list(self.stabilizers)
        other.logicals = dict(self.logicals)
        other.destroyed = set(self.destroyed)
        other._counter = self._counter
        return other

    def _rows(self) -> Iterable[PauliString]:
        yield from self.stabilizers
        yield from self.logicals.values()

    def _map_rows(self, fn) -> None:
        self.stabilizers = [fn(s) for s in self.stabilizers]
        self.logicals = {name: fn(l) for name, l in self.logicals.items()}

    # ------------------------------------------------------------------
    # group membership
    # ------------------------------------------------------------------

    def _combine(self, coeffs: np.ndarray) -> PauliString:
        out = PauliString.identity(self.n)
        for c, s in zip(coeffs, self.stabilizers):
            if c:
                out = out * s
        return out

    def sign_in_group(self, op: PauliString) -> Optional[Phase]:
        """Sign p with (-1)^p * op in the stabilizer group, or None."""
        coeffs = _solve_gf2([s.bits for s in self.stabilizers], op.bits)
        if coeffs is None:
            return None
        return self._combine(coeffs).phase + op.phase

    def reduce(self, op: PauliString, keep: Sequence[str]) -> Optional[PauliString]:
        """Multiply ``op`` by stabilizers until it only acts on ``keep``.

        Returns None when no such representative exists.
        """
        drop = [k for k in range(self.n) if self.patches[k] not in set(keep)]
        mask = np.array(drop + [k + self.n for k in drop], dtype=np.int64)
        coeffs = _solve_gf2([s.bits[mask] for s in self.stabilizers], op.bits[mask])
        if coeffs is None:
            return None
        return op * self._combine(coeffs)

    # ------------------------------------------------------------------
    # measurement and reset
    # ------------------------------------------------------------------

    def _outcome_phase(self, outcome: Outcome) -> Phase:
        if isinstance(outcome, int):
            if outcome not in (0, 1):
                raise SurgeryError(f"Outcome must be 0 or 1, got {outcome}")
            return Phase(outcome)
        name = outcome or f"m{self._counter}"
        self._counter += 1
        return Phase(0, frozenset({name}))

    def measure(self, op: PauliString, outcome: Outcome = None) -> MeasurementOutcome:
        """Measure ``op`` in place.

        Args:
            op: Hermitian Pauli string over all patches.
            outcome: A bit forces a random outcome; a name labels it
                symbolically; None picks the next ``m<k>`` label.

        Returns:
            MeasurementOutcome. Deterministic outcomes ignore labels, and a
            forced bit that disagrees with one raises SurgeryError.
        """
        if op.n != self.n:
            raise SurgeryError(f"Operator {op} does not span the {self.n} patches")
        anti = [k for k, s in enumerate(self.stabilizers) if not s.commutes(op)]
        if anti:
            pivot = self.stabilizers[anti[0]]

            def fix(row: PauliString) -> PauliString:
                return row if row.commutes(op) else row * pivot

            result = self._outcome_phase(outcome)
            self.stabilizers = [fix(s) if k != anti[0] else s for k, s in enumerate(self.stabilizers)]
            self.logicals = {name: fix(l) for name, l in self.logicals.items()}
            self.stabilizers[anti[0]] = op.with_phase(op.phase + result)
            return MeasurementOutcome(result, False)

        hit = [name for name, l in self.logicals.items() if not l.commutes(op)]
        if hit:
            return self._measure_logical(op, hit, outcome)

        sign = self.sign_in_group(op)
        if sign is None:
            raise SurgeryError(f"Operator {op} is independent of a complete stabilizer state")
        if isinstance(outcome, int) and sign.is_constant and sign.const != outcome:
            raise SurgeryError(f"Measurement of {op} is deterministic with outcome {sign.const}, forced {outcome}")
        return MeasurementOutcome(sign, True)

    def _measure_logical(self, op: PauliString, hit: list[str], outcome: Outcome) -> MeasurementOutcome:
        pivot_name = hit[0]
        pivot = self.logicals[pivot_name]
        j = int(pivot_name[1:])
        self.destroyed.add(j)
        for name in (f"X{j}", f"Z{j}"):
            self.logicals.pop(name)
        self.logicals = {
            name: l if l.commutes(op) else l * pivot for name, l in self.logicals.items()
        }
        result = self._outcome_phase(outcome)
        self.stabilizers.append(op.with_phase(op.phase + result))
        return MeasurementOutcome(result, False)

    def reset(self, patch: str, basis: str = "Z") -> None:
        """Discard whatever ``patch`` holds and prepare it in |0> (Z) or |+> (X).

        A random Z outcome on the discarded state is taken as 0.
        """
        if basis not in ("Z", "X"):
            raise SurgeryError(f"Unknown preparation basis: {basis}. Use Z or X")
        z = self.operator("Z", (patch,))
        random = any(not r.commutes(z) for r in self._rows())
        self.measure(z, outcome=0 if random else None)
        k = next((i for i, s in enumerate(self.stabilizers) if s.same_operator(z)), None)
        if k is None:
            # Z already in the group as a product: make it a generator
            coeffs = _solve_gf2([s.bits for s in self.stabilizers], z.bits)
            k = int(np.flatnonzero(coeffs)[0])
            self.stabilizers[k] = self._combine(coeffs)
        row = self.stabilizers[k]
        col = self._col(patch)

        def clear(r: PauliString) -> PauliString:
            return r * row if r.z[col] else r

        self.stabilizers = [s if i == k else clear(s) for i, s in enumerate(self.stabilizers)]
        self.logicals = {name: clear(l) for name, l in self.logicals.items()}
        self.stabilizers[k] = self.operator(basis, (patch,))

    # ------------------------------------------------------------------
    # unitaries
    # ------------------------------------------------------------------

    def apply_pauli(self, op: PauliString) -> None:
        """Conjugate every row by ``op``: rows anticommuting with it change sign."""
        self._map_rows(lambda r: r if r.commutes(op) else r.with_phase(r.phase.flipped()))

    def h(self, patch: str) -> None:
        k = self._col(patch)

        def conj(r: PauliString) -> PauliString:
            x, z = r.x.copy(), r.z.copy()
            phase = r.phase.flipped() if x[k] and z[k] else r.phase
            x[k], z[k] = r.z[k], r.x[k]
            return PauliString(x, z, phase)

        self._map_rows(conj)

    def cnot(self, control: str, target: str) -> None:
        a, b = self._col(control), self._col(target)
        if a == b:
            raise SurgeryError(f"CNOT needs two distinct patches, got {control} twice")

        def conj(r: PauliString) -> PauliString:
            x, z = r.x.copy(), r.z.copy()
            flip = x[a] and z[b] and (x[b] ^ z[a] ^ 1)
            x[b] ^= x[a]
            z[a] ^= z[b]
            return PauliString(x, z, r.phase.flipped() if flip else r.phase)

        self._map_rows(conj)

    # ------------------------------------------------------------------
    # checks
    # ------------------------------------------------------------------

    def check_invariants(self) -> None:
        """Raise SurgeryError unless the tableau is a valid stabilizer state with logicals."""
        for s1, s2 in itertools.combinations(self.stabilizers, 2):
            if not s1.commutes(s2):
                raise SurgeryError(f"Stabilizers {s1} and {s2} anticommute")
        for name, l in self.logicals.items():
            for s in self.stabilizers:
                if not l.commutes(s):
                    raise SurgeryError(f"Logical {name}={l} anticommutes with stabilizer {s}")
        for (n1, l1), (n2, l2) in itertools.combinations(self.logicals.items(), 2):
            paired = n1[1:] == n2[1:]
            if l1.commutes(l2) == paired:
                raise SurgeryError(f"Logicals {n1} and {n2} break the X/Z pairing")
        rows = [r.bits for r in self._rows()]
        rank = len(rows) - _nullity(rows)
        if len(self.stabilizers) + len(self.logicals) // 2 != self.n or rank != len(rows):
            raise SurgeryError("Stabilizers and logicals are not an independent generating set")

    def equivalent(self, other: "Tableau") -> bool:
        """Same stabilizer group (signs included) and same logicals modulo it."""
        if self.patches != other.patches or len(self.stabilizers) != len(other.stabilizers):
            return False
        for s in other.stabilizers:
            sign = self.sign_in_group(s)
            if sign is None or sign != Phase():
                return False
        if self.logicals.keys() != other.logicals.keys():
            return False
        for name, l in self.logicals.items():
            quotient = l * other.logicals[name] if l.commutes(other.logicals[name]) else None
            if quotient is None:
                return False
            sign = self.sign_in_group(quotient)
            if sign is None or sign != Phase():
                return False
        return True


def _nullity(rows: list[np.ndarray]) -> int:
    if not rows:
        return 0
    M = np.array(rows, dtype=np.uint8)
    rank = 0
    for col in range(M.shape[1]):
        hits = np.nonzero(M[rank:, col])[0]
        if len(hits) == 0:
            continue
        p = rank + hits[0]
        M[[rank, p]] = M[[p, rank]]
        for r in range(M.shape[0]):
            if r != rank and M[r, col]:
                M[r] ^= M[rank]
        rank += 1
        if rank == M.shape[0]:
            break
    return M.shape[0] - rank


def measure(t: Tableau, op: PauliString, outcome: Outcome = None) -> tuple[Tableau, MeasurementOutcome]:
    """Non-mutating measurement: the updated copy and the outcome."""
    updated = t.copy()
    return updated, updated.measure(op, outcome)
