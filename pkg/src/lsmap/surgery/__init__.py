"""
Surgery
Stabilizer-level checks of lattice-surgery constructions

- tableau: Phase, PauliString, Tableau, MeasurementOutcome, measure
- verify: Construction, verify, verify_cnot_construction, verify_move,
  verify_tswap, verify_tcnot, verify_identity, verify_steane_encoder,
  run_suite
"""

from lsmap.surgery.tableau import MeasurementOutcome, PauliString, Phase, Tableau, measure
from lsmap.surgery.verify import (
    CheckResult,
    Construction,
    cnot_construction,
    move_construction,
    run_suite,
    verify,
    verify_cnot_construction,
    verify_identity,
    verify_move,
    verify_steane_encoder,
    verify_tcnot,
    verify_tswap,
)

__all__ = [
    "MeasurementOutcome",
    "PauliString",
    "Phase",
    "Tableau",
    "measure",
    "CheckResult",
    "Construction",
    "cnot_construction",
    "move_construction",
    "run_suite",
    "verify",
    "verify_cnot_construction",
    "verify_identity",
    "verify_move",
    "verify_steane_encoder",
    "verify_tcnot",
    "verify_tswap",
]
