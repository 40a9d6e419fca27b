"""
Construction Verifier
Check lattice-surgery step lists against the gate they are meant to realise

A Construction is a list of patch operations (preparations, joint and
single-patch measurements, and a few Clifford gates) that should move k
logical qubits from input patches to output patches while applying an
ideal gate U. Verification runs it twice:

1. Symbolically, every random outcome labelled. Each tracked logical is
   reduced onto the output patches and must equal U P U^dagger up to a
   sign (-1)^phi, with phi a sum of outcome bits.
2. Once per outcome branch, every random outcome forced. The Pauli
   correction read off the symbolic signs is applied and each logical
   must then equal U P U^dagger with a plus sign.

The correction for branch b is the product over logical qubits j of
image(Z_j)^phi_Xj(b) * image(X_j)^phi_Zj(b); image(Z_j) flips only the
sign of image(X_j) and vice versa.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence

from lsmap.arch.tile_sequences import PatchOp, PatchSequence, op, tcnot_sequence, tswap_sequence
from lsmap.circuit.benchmarks import steane_encoder
from lsmap.circuit.ir import Circuit, GateKind
from lsmap.errors import ArchitectureError, SurgeryError
from lsmap.surgery.tableau import PauliString, Phase, Tableau

logger = logging.getLogger(__name__)

Correction = Callable[[Mapping[str, int]], str]

IDENTITY_1 = {"X0": "X", "Z0": "Z"}
IDENTITY_2 = {"X0": "XI", "Z0": "ZI", "X1": "IX", "Z1": "IZ"}
CNOT_MAP = {"X0": "XX", "Z0": "ZI", "X1": "IX", "Z1": "ZZ"}


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class Construction:
    """Patch operations plus the gate they should implement.

    ``expected`` maps each logical ("X0", "Z1", ...) to its image under the
    gate, written as Pauli letters over ``outputs``.
    """

    name: str
    patches: tuple[str, ...]
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    ops: tuple[PatchOp, ...]
    expected: Mapping[str, str] = field(default_factory=dict)

    @classmethod
    def from_lines(cls, name: str, inputs: Sequence[str], outputs: Sequence[str],
                   lines: Sequence[str], expected: Mapping[str, str]) -> "Construction":
        ops = tuple(op(line) for line in lines)
        return cls(name, _patches_of(inputs, ops, outputs), tuple(inputs), tuple(outputs), ops, dict(expected))

    @classmethod
    def from_sequence(cls, seq: PatchSequence) -> "Construction":
        """A tile sequence; SWAP outputs hold the input states in input order."""
        expected = CNOT_MAP if seq.gate is GateKind.CNOT else IDENTITY_2
        ops = tuple(o for step in seq.steps for o in step)
        return cls(seq.name, seq.patches(), seq.inputs, seq.outputs, ops, dict(expected))


def _patches_of(inputs: Sequence[str], ops: Sequence[PatchOp], outputs: Sequence[str]) -> tuple[str, ...]:
    seen = dict.fromkeys(inputs)
    for o in ops:
        seen.update(dict.fromkeys(o.patches))
    seen.update(dict.fromkeys(outputs))
    return tuple(seen)


# ============================================================================
# EXECUTION
# ============================================================================

def _apply(t: Tableau, o: PatchOp, outcome=None):
    if o.action == "prep":
        for p in o.patches:
            t.reset(p, o.pauli)
        return None
    if o.action == "gate":
        if o.pauli == "H":
            t.h(*o.patches)
        elif o.pauli == "CNOT":
            t.cnot(*o.patches)
        else:
            raise SurgeryError(f"Unknown gate in construction: {o.pauli}. Use H or CNOT")
        return None
    return t.measure(t.operator(o.pauli, o.patches), outcome)


def _unprepared_use(c: Construction) -> Optional[str]:
    live = set(c.inputs)
    for o in c.ops:
        if o.action == "prep":
            live.update(o.patches)
            continue
        stale = [p for p in o.patches if p not in live]
        if stale:
            return f"patch {stale[0]} used by '{o}' before preparation"
    return None


def _run(c: Construction, forced: Optional[Sequence[int]] = None) -> tuple[Tableau, list[int]]:
    """Execute ``c``; returns the tableau and the op indices with random outcomes."""
    t = Tableau(c.patches, c.inputs)
    random_ops: list[int] = []
    bits = iter(forced or ())
    for k, o in enumerate(c.ops):
        outcome = None
        if forced is not None and o.action == "measure" and _is_random(t, o):
            outcome = next(bits)
        result = _apply(t, o, outcome if forced is not None else f"m{k}")
        if result is not None and not result.deterministic:
            random_ops.append(k)
        t.check_invariants()
    return t, random_ops


def _is_random(t: Tableau, o: PatchOp) -> bool:
    observable = t.operator(o.pauli, o.patches)
    if any(not s.commutes(observable) for s in t.stabilizers):
        return True
    return any(not l.commutes(observable) for l in t.logicals.values())


def _images(c: Construction, t: Tableau) -> tuple[dict[str, PauliString], Optional[str]]:
    if t.destroyed:
        return {}, f"a measurement reveals logical qubit {min(t.destroyed)}"
    images = {}
    for name, row in t.logicals.items():
        reduced = t.reduce(row, c.outputs)
        if reduced is None:
            return {}, f"{name} still acts outside the output patches {c.outputs}"
        images[name] = reduced
    return images, None


def _default_correction(c: Construction, phases: Mapping[str, Phase]) -> Correction:
    def correction(branch: Mapping[str, int]) -> str:
        x = [0] * len(c.outputs)
        z = [0] * len(c.outputs)
        for name, phase in phases.items():
            if not phase.evaluate(branch):
                continue
            partner = ("Z" if name[0] == "X" else "X") + name[1:]
            for k, letter in enumerate(c.expected[partner]):
                if letter in "XY":
                    x[k] ^= 1
                if letter in "ZY":
                    z[k] ^= 1
        return "".join({(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}[(a, b)] for a, b in zip(x, z))

    return correction


def verify(c: Construction, correction: Optional[Correction] = None) -> CheckResult:
    """Check ``c`` over every outcome branch.

    Args:
        c: The construction.
        correction: Branch -> Pauli letters over the outputs. Defaults to
            the correction derived from the symbolic signs.

    Returns:
        CheckResult; ``detail`` names the first failing branch.
    """
    stale = _unprepared_use(c)
    if stale:
        return CheckResult(c.name, False, stale)
    try:
        symbolic, random_ops = _run(c)
    except SurgeryError as exc:
        return CheckResult(c.name, False, str(exc))
    images, problem = _images(c, symbolic)
    if problem:
        return CheckResult(c.name, False, problem)

    phases: dict[str, Phase] = {}
    for name, image in images.items():
        want = symbolic.operator(c.expected[name], c.outputs)
        if not image.same_operator(want):
            got = "".join(image.letters[symbolic.index[p]] for p in c.outputs)
            return CheckResult(c.name, False, f"{name} flows to {got}, expected {c.expected[name]}")
        phases[name] = image.phase
    correct = correction or _default_correction(c, phases)
    symbols = [f"m{k}" for k in random_ops]

    for bits in itertools.product((0, 1), repeat=len(random_ops)):
        branch = dict(zip(symbols, bits))
        try:
            concrete, _ = _run(c, bits)
        except SurgeryError as exc:
            return CheckResult(c.name, False, f"branch {bits}: {exc}")
        concrete_images, problem = _images(c, concrete)
        if problem:
            return CheckResult(c.name, False, f"branch {bits}: {problem}")
        frame = concrete.operator(correct(branch), c.outputs)
        for name, image in concrete_images.items():
            if not image.commutes(frame):
                image = image.with_phase(image.phase.flipped())
            if image.phase != Phase():
                return CheckResult(c.name, False, f"branch {bits}: {name} flows to -{c.expected[name]}")
    logger.debug("%s verified over %d branch(es)", c.name, 2 ** len(random_ops))
    return CheckResult(c.name, True, f"{2 ** len(random_ops)} branches")


# ============================================================================
# CONSTRUCTIONS
# ============================================================================

CNOT_VARIANTS = {
    "ancilla_zero": ("prep Z A", "XX A T", "ZZ C A", "X A"),
    "ancilla_plus": ("prep X A", "ZZ C A", "XX A T", "Z A"),
}

MOVES = {
    "horizontal": (("A",), ("B",), ("prep Z B", "XX A B", "Z A")),
    "vertical": (("A",), ("C",), ("prep X C", "ZZ A C", "X A")),
    "corner": (("A",), ("D",), ("prep Z B", "XX A B", "Z A", "prep X D", "ZZ B D", "X B")),
}


def cnot_construction(variant: str) -> Construction:
    if variant not in CNOT_VARIANTS:
        raise SurgeryError(f"Unknown CNOT variant: {variant}. Use one of {sorted(CNOT_VARIANTS)}")
    return Construction.from_lines(f"CNOT {variant}", ("C", "T"), ("C", "T"), CNOT_VARIANTS[variant], CNOT_MAP)


def move_construction(kind: str) -> Construction:
    if kind not in MOVES:
        raise SurgeryError(f"Unknown move: {kind}. Use one of {sorted(MOVES)}")
    inputs, outputs, lines = MOVES[kind]
    return Construction.from_lines(f"move {kind}", inputs, outputs, lines, IDENTITY_1)


def verify_cnot_construction(variant: str = "ancilla_zero") -> CheckResult:
    return verify(cnot_construction(variant))


def verify_move(kind: str) -> CheckResult:
    return verify(move_construction(kind))


def verify_tswap(case: str = "A1/D2") -> CheckResult:
    try:
        seq = tswap_sequence(case)
    except ArchitectureError as exc:
        raise SurgeryError(exc.message) from None
    return verify(Construction.from_sequence(seq))


def verify_tcnot(case: str = "A1/D2") -> CheckResult:
    try:
        seq = tcnot_sequence(case)
    except ArchitectureError as exc:
        raise SurgeryError(exc.message) from None
    return verify(Construction.from_sequence(seq))


def verify_identity() -> CheckResult:
    return verify(Construction("identity", ("P", "Q"), ("P", "Q"), ("P", "Q"), (), IDENTITY_2))


# ============================================================================
# STEANE ENCODER
# ============================================================================

def _circuit_ops(c: Circuit) -> tuple[PatchOp, ...]:
    ops = []
    for ins in c.gates():
        if ins.kind is GateKind.PREPZ:
            ops.append(PatchOp("prep", "Z", ins.operands))
        elif ins.kind is GateKind.PREPX:
            ops.append(PatchOp("prep", "X", ins.operands))
        elif ins.kind is GateKind.H:
            ops.append(PatchOp("gate", "H", ins.operands))
        elif ins.kind is GateKind.CNOT:
            ops.append(PatchOp("gate", "CNOT", ins.operands))
        else:
            raise SurgeryError(f"Cannot track {ins.kind.value} through the encoder check")
    return tuple(ops)


def _min_weight(t: Tableau, logicals: Sequence[PauliString]) -> int:
    best = t.n
    for coeffs in itertools.product((0, 1), repeat=len(t.stabilizers)):
        for l in logicals:
            rep = l
            for c, s in zip(coeffs, t.stabilizers):
                if c:
                    rep = rep * s
            best = min(best, rep.weight)
    return best


def verify_steane_encoder(c: Optional[Circuit] = None) -> CheckResult:
    """The encoder turns its first qubit into a distance-3 CSS code block on all qubits."""
    c = c or steane_encoder()
    name = "Steane encoder"
    construction = Construction(name, c.qubits, c.qubits[:1], c.qubits, _circuit_ops(c))
    stale = _unprepared_use(construction)
    if stale:
        return CheckResult(name, False, stale)
    t, _ = _run(construction)

    for s in t.stabilizers:
        if s.x.any() and s.z.any():
            return CheckResult(name, False, f"stabilizer {s} mixes X and Z")
        if s.phase != Phase():
            return CheckResult(name, False, f"stabilizer {s} has a negative sign")
    x_bar, z_bar = t.logicals["X0"], t.logicals["Z0"]
    if z_bar.x.any() or x_bar.z.any():
        return CheckResult(name, False, f"logicals {x_bar}, {z_bar} are not transversal X and Z")
    distance = _min_weight(t, [x_bar, z_bar, _y(x_bar, z_bar)])
    if distance != 3:
        return CheckResult(name, False, f"code distance {distance}, expected 3")
    return CheckResult(name, True, f"[[{t.n},1,{distance}]] with {len(t.stabilizers)} stabilizers")


def _y(x_bar: PauliString, z_bar: PauliString) -> PauliString:
    return PauliString(x_bar.x ^ z_bar.x, x_bar.z ^ z_bar.z)


# ============================================================================
# SUITE
# ============================================================================

def run_suite() -> list[CheckResult]:
    """Every shipped construction, in a fixed order."""
    results = [verify_cnot_construction(v) for v in CNOT_VARIANTS]
    results += [verify_move(kind) for kind in MOVES]
    results += [verify_tswap(case) for case in ("A1/D2", "D1/A2", "A1/A2")]
    results += [verify_tcnot(case) for case in ("A1/D2", "A1/A2", "A1/A5")]
    results.append(verify_identity())
    results.append(verify_steane_encoder())
    return results
