"""
QASM Dialect
Line-oriented parser and emitter built on pyparsing

Dialect:
    qubits N                     header (or ``qubits a,b,c``), optional, first line
    h q0                         one gate per line
    cnot q0,q1                   two-qubit gates take comma-separated operands
    { h q0 | cnot q1,q2 }        parallel bundle
    qwait 12                     idle cycles, always on its own line
    # ...                        comment; ``# swap inserted`` marks router SWAPs

Qubit names are canonicalised to ``q<index>`` in declaration order. Without
a header, names already of the form ``q<k>`` are kept and anything else is
numbered in order of first appearance.
"""

import re
from pathlib import Path
from typing import Optional

import pyparsing as pp

from lsmap.circuit.ir import Circuit, GateKind, Instruction, canonical_names
from lsmap.errors import QasmSyntaxError

GATE_ALIASES = {
    "cx": GateKind.CNOT,
    "sdg": GateKind.SDAG,
    "tdg": GateKind.TDAG,
    "measure": GateKind.MEASZ,
    "prep": GateKind.PREPZ,
    "id": GateKind.I,
}
INSERTED_MARK = "swap inserted"

_CANONICAL = re.compile(r"^q(\d+)$")
_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _build_grammar() -> pp.ParserElement:
    ident = pp.Word(pp.alphas + "_", pp.alphanums + "_")
    arg = pp.Word(pp.alphanums + "_")
    integer = pp.Word(pp.nums).set_parse_action(lambda t: int(t[0]))
    location = pp.Empty().set_parse_action(lambda s, loc, t: [loc])

    gate = pp.Group(
        location("loc") + ident("name") + pp.Group(pp.Opt(pp.DelimitedList(arg)))("args")
    )
    header = pp.Group(
        pp.Keyword("qubits").suppress()
        + (integer("count") | pp.Group(pp.DelimitedList(ident))("names"))
    )("header")
    bundle = pp.Group(
        pp.Suppress("{") + pp.DelimitedList(gate, delim="|") + pp.Suppress("}")
    )("bundle")
    return header | bundle | gate("serial")


LINE = _build_grammar()


def _resolve_kind(name: str, line: int, col: int) -> GateKind:
    key = name.lower()
    if key in GATE_ALIASES:
        return GATE_ALIASES[key]
    try:
        return GateKind(key)
    except ValueError:
        if key == "qubits":
            raise QasmSyntaxError("Malformed qubits header. Use 'qubits N' or 'qubits a,b,...'", line, col)
        known = ", ".join(k.value for k in GateKind)
        raise QasmSyntaxError(f"Unknown gate: {name}. Use one of {known}", line, col) from None


def _inserted_pairs(comment: str) -> Optional[set[tuple[str, ...]]]:
    """Operand pairs named after a ``# swap inserted`` mark; empty set means all."""
    text = comment.strip()
    if not text.lower().startswith(INSERTED_MARK):
        return None
    rest = text[len(INSERTED_MARK):].split()
    return {tuple(p.split(",")) for p in rest}


def parse_qasm(text: str) -> Circuit:
    """Parse dialect text into a canonical Circuit.

    Args:
        text: Program text.

    Returns:
        Circuit with qubits ``q0..q{n-1}``, ids numbered in program order.

    Raises:
        QasmSyntaxError: with the 1-based line and column of the problem.
    """
    declared: Optional[list[str]] = None
    raw_steps: list[list[tuple[GateKind, list[str], int, bool, int]]] = []
    first_use: dict[str, tuple[int, int]] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        code, _, comment = raw.partition("#")
        if not code.strip():
            continue
        try:
            result = LINE.parse_string(code, parse_all=True)
        except pp.ParseException as exc:
            raise QasmSyntaxError(f"Syntax error: {exc.msg}", lineno, exc.col) from None

        if "header" in result:
            header = result["header"]
            if declared is not None or raw_steps:
                raise QasmSyntaxError("qubits header must be the first statement", lineno, 1)
            if "count" in header:
                declared = list(canonical_names(header["count"]))
            else:
                declared = list(header["names"])
                if len(set(declared)) != len(declared):
                    raise QasmSyntaxError(f"Duplicate qubit in header: {declared}", lineno, 1)
            continue

        marks = _inserted_pairs(comment)
        gates = list(result["bundle"]) if "bundle" in result else [result["serial"]]
        step = []
        used: set[str] = set()
        for g in gates:
            col = g["loc"] + 1
            kind = _resolve_kind(g["name"], lineno, col)
            args = list(g["args"])
            if kind is GateKind.WAIT:
                if len(gates) > 1:
                    raise QasmSyntaxError("qwait cannot appear inside a bundle", lineno, col)
                if len(args) != 1 or not args[0].isdigit() or int(args[0]) < 1:
                    raise QasmSyntaxError("qwait takes one cycle count >= 1", lineno, col)
                step.append((kind, [], lineno, False, int(args[0])))
                continue
            if len(args) != kind.arity:
                raise QasmSyntaxError(
                    f"{kind.value} takes {kind.arity} operand(s), got {len(args)}", lineno, col
                )
            for q in args:
                if not _IDENT.match(q):
                    raise QasmSyntaxError(f"Invalid qubit name: {q}", lineno, col)
                if q in used:
                    raise QasmSyntaxError(f"Qubit {q} used twice in one timestep", lineno, col)
                used.add(q)
                first_use.setdefault(q, (lineno, col))
            inserted = (
                kind is GateKind.SWAP
                and marks is not None
                and (not marks or tuple(args) in marks or len(gates) == 1)
            )
            step.append((kind, args, lineno, inserted, 0))
        raw_steps.append(step)

    mapping = _qubit_mapping(declared, first_use)
    body = []
    next_id = 0
    for step in raw_steps:
        bundle = []
        for kind, args, lineno, inserted, cycles in step:
            bundle.append(
                Instruction(next_id, kind, tuple(mapping[q] for q in args), cycles=cycles, inserted=inserted)
            )
            next_id += 1
        body.append(tuple(bundle))
    return Circuit(canonical_names(len(set(mapping.values()))), tuple(body))


def _qubit_mapping(declared: Optional[list[str]], first_use: dict[str, tuple[int, int]]) -> dict[str, str]:
    if declared is not None:
        mapping = {name: f"q{i}" for i, name in enumerate(declared)}
        for q, (lineno, col) in first_use.items():
            if q not in mapping:
                raise QasmSyntaxError(f"Undeclared qubit: {q}", lineno, col)
        return mapping
    names = list(first_use)
    if names and all(_CANONICAL.match(q) for q in names):
        top = max(int(_CANONICAL.match(q).group(1)) for q in names)
        return {f"q{i}": f"q{i}" for i in range(top + 1)}
    return {name: f"q{i}" for i, name in enumerate(names)}


def emit_qasm(c: Circuit) -> str:
    """Write a Circuit in the dialect.

    Consecutive Wait timesteps collapse into one ``qwait`` line and router
    SWAPs carry the ``# swap inserted`` mark, so ``parse_qasm(emit_qasm(c))``
    equals ``c.canonical()`` for circuits over ``q<index>`` names.
    """
    if c.qubits == canonical_names(c.n_qubits):
        lines = [f"qubits {c.n_qubits}"]
    else:
        lines = [f"qubits {','.join(c.qubits)}"]

    pending_wait = 0
    for step in c.body:
        if step[0].kind is GateKind.WAIT:
            pending_wait += step[0].cycles
            continue
        if pending_wait:
            lines.append(f"qwait {pending_wait}")
            pending_wait = 0
        if len(step) == 1:
            ins = step[0]
            lines.append(ins.qasm() + (f"  # {INSERTED_MARK}" if ins.inserted else ""))
            continue
        text = "{ " + " | ".join(ins.qasm() for ins in step) + " }"
        inserted = [",".join(ins.operands) for ins in step if ins.inserted]
        if inserted:
            text += f"  # {INSERTED_MARK} " + " ".join(inserted)
        lines.append(text)
    if pending_wait:
        lines.append(f"qwait {pending_wait}")
    return "\n".join(lines) + "\n"


def read_qasm(path: "str | Path") -> Circuit:
    return parse_qasm(Path(path).read_text(encoding="utf-8"))


def write_qasm(c: Circuit, path: "str | Path") -> None:
    Path(path).write_text(emit_qasm(c), encoding="utf-8")
