"""Catalytic circuit gadgets.

Each builder returns a small circuit together with the operator it claims to
induce on its data wires when the catalyst wire is fed the |+i> state
(|0> + i|1>)/sqrt(2). The catalyst comes back exactly, so one copy can be
reused across any number of gadget instances.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ir import Circuit, ccz, cry, cz, h
from .ir import Gate, GateKind
from .sim import (
    KET_0,
    KET_1,
    KET_MINUS_I,
    KET_PLUS_I,
    CatalyticReport,
    basis_state,
    circuit_unitary,
    extract_catalytic,
    gate_matrix,
    project_wires,
    run,
)

_S = gate_matrix(GateKind(Gate.S))
_CS = gate_matrix(GateKind(Gate.CS))


@dataclass(frozen=True)
class AuxWire:
    """A work wire with declared computational-basis input and output bits."""

    qubit: int
    in_bit: int
    out_bit: int


@dataclass(frozen=True)
class Gadget:
    """A circuit claiming: catalyst preserved, ``claimed_induced`` on data.

    ``claimed_phase`` is the global phase of the induced operator relative to
    the plain named target (e.g. theta/2 relative to Rz(theta)). ``aux`` wires
    enter and leave in fixed basis states and are not part of the data
    register.
    """

    circuit: Circuit
    catalyst_qubit: int
    data_qubits: tuple[int, ...]
    claimed_induced: np.ndarray
    claimed_phase: float
    aux: tuple[AuxWire, ...] = ()


def rz_gadget(theta: float) -> Gadget:
    """Controlled-Ry(-2 theta) from data onto the catalyst.

    Induces exp(i theta / 2) Rz(theta) on the data qubit. The full two-qubit
    matrix is [[1,0,0,0],[0,cos,0,sin],[0,0,1,0],[0,-sin,0,cos]] with
    cos = cos(theta), sin = sin(theta): identity on data |0>, a y-rotation of
    the catalyst keyed to data |1>.
    """
    circuit = Circuit(2, (cry(-2.0 * theta, 1, 0),))
    induced = np.exp(0.5j * theta) * gate_matrix(GateKind(Gate.RZ, theta))
    return Gadget(
        circuit=circuit,
        catalyst_qubit=0,
        data_qubits=(1,),
        claimed_induced=induced,
        claimed_phase=theta / 2.0,
    )


def s_gadget() -> Gadget:
    """S on the data qubit from two H's and two CZ's touching the catalyst.

    The circuit unitary is identity on data |0> and i Y on the catalyst keyed
    to data |1>; since |+i> is the +1 eigenstate of Y the induced operator is
    exactly diag(1, i) with zero residual phase.
    """
    circuit = Circuit(2, (h(0), cz(1, 0), h(0), cz(1, 0)))
    return Gadget(
        circuit=circuit,
        catalyst_qubit=0,
        data_qubits=(1,),
        claimed_induced=_S.copy(),
        claimed_phase=0.0,
    )


def cs_gadget() -> Gadget:
    """Controlled-S on two data qubits from two H's and two CCZ's.

    Same structure as :func:`s_gadget` with the CZ's promoted to CCZ's, so the
    i Y kicks in only on data |11>. Uses no |0> ancilla.
    """
    circuit = Circuit(3, (h(0), ccz(1, 2, 0), h(0), ccz(1, 2, 0)))
    return Gadget(
        circuit=circuit,
        catalyst_qubit=0,
        data_qubits=(1, 2),
        claimed_induced=_CS.copy(),
        claimed_phase=0.0,
    )


def induced_on_data(g: Gadget, tol: float = 1e-12) -> tuple[np.ndarray, CatalyticReport]:
    """Extract the operator a gadget applies to its data register.

    Factors the circuit across the catalyst, then contracts any aux wires
    between their declared input and output basis states. The result acts on
    ``g.data_qubits`` (always ascending by construction).
    """
    u = circuit_unitary(g.circuit)
    report = extract_catalytic(u, g.catalyst_qubit, KET_PLUS_I, tol)
    if report.induced is None:
        return np.zeros((0, 0), dtype=complex), report
    if not g.aux:
        return report.induced, report
    # Wire w of the circuit sits at position rank(w) among non-catalyst wires.
    rest = [q for q in range(g.circuit.num_qubits) if q != g.catalyst_qubit]
    pos = {q: i for i, q in enumerate(rest)}
    ins = {pos[a.qubit]: (KET_0, KET_1)[a.in_bit] for a in g.aux}
    outs = {pos[a.qubit]: (KET_0, KET_1)[a.out_bit] for a in g.aux}
    block = project_wires(report.induced, len(rest), ins, outs)
    return block, report


@dataclass(frozen=True)
class PrepCheck:
    """Outcome of checking a |0>->|1> preparation circuit on one wire."""

    passes: bool
    max_error: float
    gate_set_ok: bool
    phase: float


def verify_one_prep(c: Circuit, target_qubit: int, tol: float = 1e-10) -> PrepCheck:
    """Check that ``c`` maps |0> on ``target_qubit`` to |1> and fixes the rest.

    All 2^(n-1) bystander basis states must ride along unchanged, up to one
    global phase shared by every input; the phase is aligned on the first
    basis state and reported so a strict caller can demand it be zero.
    ``gate_set_ok`` records whether the circuit stays inside {H, CCZ}.
    """
    from .ir import HCCZ, check_membership

    n = c.num_qubits
    if not 0 <= target_qubit < n:
        raise ValueError(f"target qubit {target_qubit} out of range")
    shift = n - 1 - target_qubit
    rest = [q for q in range(n) if q != target_qubit]
    phase = 0.0
    lam = 1.0 + 0.0j
    max_error = 0.0
    for k in range(1 << (n - 1)):
        # Scatter the bystander bits around the target wire.
        idx_in = 0
        for j, q in enumerate(rest):
            bit = (k >> (n - 2 - j)) & 1
            idx_in |= bit << (n - 1 - q)
        out = run(c, basis_state(n, idx_in))
        expected = basis_state(n, idx_in | (1 << shift))
        if k == 0:
            overlap = complex(np.vdot(expected, out))
            if abs(overlap) > 1e-12:
                lam = overlap / abs(overlap)
            phase = float(np.angle(lam))
        max_error = max(max_error, float(np.linalg.norm(out - lam * expected)))
    return PrepCheck(
        passes=max_error <= tol,
        max_error=max_error,
        gate_set_ok=not check_membership(c, HCCZ),
        phase=phase,
    )


def s_via_prep(prep: Circuit, target_qubit: int) -> Gadget:
    """S on a data qubit from a verified |1>-prep circuit plus the CS gadget.

    The prep's target wire becomes one control of the two CCZ's; the gadget
    adds 2 CCZ on top of the prep's own count. The prep's other wires are
    reused as catalyst and data (it acts as identity on them by the check),
    with fresh wires appended only if it has fewer than two bystanders.
    """
    check = verify_one_prep(prep, target_qubit)
    if not check.passes:
        raise ValueError(
            f"prep circuit fails |1>-prep verification (max error {check.max_error:.3e})"
        )
    bystanders = [q for q in range(prep.num_qubits) if q != target_qubit]
    pool = bystanders + [prep.num_qubits, prep.num_qubits + 1]
    cat, data = pool[0], pool[1]
    extras = bystanders[2:]
    n = max(prep.num_qubits, data + 1, cat + 1)
    gates = tuple(prep.gates) + (
        h(cat),
        ccz(target_qubit, data, cat),
        h(cat),
        ccz(target_qubit, data, cat),
    )
    induced = _S.copy()
    for _ in extras:
        induced = np.kron(induced, np.eye(2, dtype=complex))
    return Gadget(
        circuit=Circuit(n, gates),
        catalyst_qubit=cat,
        data_qubits=(data, *extras),
        claimed_induced=induced,
        claimed_phase=check.phase,
        aux=(AuxWire(target_qubit, 0, 1),),
    )


@dataclass(frozen=True)
class FlipCheck:
    """H sends |+i> to |-i> up to a phase; ``phase`` is that phase (pi/4)."""

    ok: bool
    phase: float


def catalyst_flip_check() -> FlipCheck:
    """Confirm |<-i| H |+i>| = 1 and report the quotiented phase."""
    out = gate_matrix(GateKind(Gate.H)) @ KET_PLUS_I
    overlap = complex(np.vdot(KET_MINUS_I, out))
    return FlipCheck(ok=abs(abs(overlap) - 1.0) <= 1e-13, phase=float(np.angle(overlap)))
