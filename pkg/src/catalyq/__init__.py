"""Catalytic gate-set lowering with exact dense verification.

A |+i> = (|0> + i|1>)/sqrt(2) catalyst lets circuits over real gate sets such
as {H, CCZ} implement imaginary gates (S, controlled-S, Rz) exactly, with the
catalyst returned intact. This package provides the circuit IR, the gadget
constructions, a rewrite-rule lowering pass, small-unitary synthesis, and a
dense simulator that certifies every identity up to global phase.
"""

from .gadgets import (
    AuxWire,
    FlipCheck,
    Gadget,
    PrepCheck,
    catalyst_flip_check,
    cs_gadget,
    induced_on_data,
    rz_gadget,
    s_gadget,
    s_via_prep,
    verify_one_prep,
)
from .ir import (
    FULL,
    HCCZ,
    HCS,
    PROFILES,
    REAL_O2_CCZ,
    Circuit,
    CircuitError,
    Gate,
    GateApp,
    GateKind,
    GateSetProfile,
    Violation,
    check_membership,
    gate_counts,
    parse_circuit,
    serialize_circuit,
)
from .lowering import (
    LEMMAS,
    CountReport,
    LoweredCircuit,
    LoweringCheck,
    LoweringError,
    check_lemmas,
    count_report,
    lower,
    verify_lowering,
)
from .sim import (
    KET_0,
    KET_1,
    KET_MINUS,
    KET_MINUS_I,
    KET_PLUS,
    KET_PLUS_I,
    CatalyticReport,
    apply_gate,
    basis_state,
    circuit_unitary,
    extract_catalytic,
    gate_matrix,
    phase_aligned_distance,
    product_state,
    run,
)
from .synth import (
    EulerXYX,
    SynthesisError,
    SynthesisResult,
    decompose_su2m,
    euler_xyx,
    format_matrix,
    haar_su,
    haar_unitary,
    parse_matrix,
    synthesize,
)

__version__ = "0.1.0"

__all__ = [
    "AuxWire",
    "CatalyticReport",
    "Circuit",
    "CircuitError",
    "CountReport",
    "EulerXYX",
    "FULL",
    "FlipCheck",
    "Gadget",
    "Gate",
    "GateApp",
    "GateKind",
    "GateSetProfile",
    "HCCZ",
    "HCS",
    "KET_0",
    "KET_1",
    "KET_MINUS",
    "KET_MINUS_I",
    "KET_PLUS",
    "KET_PLUS_I",
    "LEMMAS",
    "LoweredCircuit",
    "LoweringCheck",
    "LoweringError",
    "PROFILES",
    "PrepCheck",
    "REAL_O2_CCZ",
    "SynthesisError",
    "SynthesisResult",
    "Violation",
    "apply_gate",
    "basis_state",
    "catalyst_flip_check",
    "check_lemmas",
    "check_membership",
    "circuit_unitary",
    "count_report",
    "cs_gadget",
    "decompose_su2m",
    "euler_xyx",
    "extract_catalytic",
    "format_matrix",
    "gate_counts",
    "gate_matrix",
    "haar_su",
    "haar_unitary",
    "induced_on_data",
    "lower",
    "parse_circuit",
    "parse_matrix",
    "phase_aligned_distance",
    "product_state",
    "run",
    "rz_gadget",
    "s_gadget",
    "s_via_prep",
    "serialize_circuit",
    "synthesize",
    "verify_lowering",
    "verify_one_prep",
]
