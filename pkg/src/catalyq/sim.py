"""Exact dense statevector simulation.

Bit convention, used everywhere: qubit 0 is the MOST significant bit of the
amplitude index, so ``|q0 q1 ... q_{n-1}>`` has index ``sum q_k 2^(n-1-k)``.
For multi-qubit gates the first operand is the most significant bit of the
gate's own index space; controlled gates list controls first.

Statevectors are 1-D complex ndarrays of length 2^n; unitaries are square
complex ndarrays. Dense unitaries are capped at 12 qubits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ir import Circuit, Gate, GateApp, GateKind

MAX_DENSE_QUBITS = 12

_SQ2 = 1.0 / math.sqrt(2.0)

_FIXED: dict[Gate, np.ndarray] = {
    Gate.H: np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex),
    Gate.X: np.array([[0, 1], [1, 0]], dtype=complex),
    Gate.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    Gate.Z: np.array([[1, 0], [0, -1]], dtype=complex),
    Gate.S: np.array([[1, 0], [0, 1j]], dtype=complex),
    Gate.SDG: np.array([[1, 0], [0, -1j]], dtype=complex),
    Gate.CZ: np.diag([1, 1, 1, -1]).astype(complex),
    Gate.CS: np.diag([1, 1, 1, 1j]).astype(complex),
    Gate.CCZ: np.diag([1, 1, 1, 1, 1, 1, 1, -1]).astype(complex),
}


def _rx(theta: float) -> np.ndarray:
    c, si = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * si], [-1j * si, c]], dtype=complex)


def _ry(theta: float) -> np.ndarray:
    c, si = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -si], [si, c]], dtype=complex)


def _rz(theta: float) -> np.ndarray:
    return np.array(
        [[np.exp(-0.5j * theta), 0], [0, np.exp(0.5j * theta)]], dtype=complex
    )


def gate_matrix(kind: GateKind) -> np.ndarray:
    """Dense matrix of a gate kind in its own operand-ordered basis."""
    if kind.gate in _FIXED:
        return _FIXED[kind.gate].copy()
    if kind.gate is Gate.RX:
        return _rx(kind.angle)
    if kind.gate is Gate.RY:
        return _ry(kind.angle)
    if kind.gate is Gate.RZ:
        return _rz(kind.angle)
    # CRY: control is the first operand.
    m = np.eye(4, dtype=complex)
    m[2:, 2:] = _ry(kind.angle)
    return m


def _num_qubits_of(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim <= 0 or (1 << n) != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


def _apply_tensor(psi: np.ndarray, mat: np.ndarray, axes: tuple[int, ...]) -> np.ndarray:
    """Contract ``mat`` into tensor ``psi`` along the given qubit axes.

    ``psi`` has shape [2]*n (+ optional trailing batch axes); ``mat`` is
    2^k x 2^k with axis order matching ``axes``.
    """
    k = len(axes)
    tensor = mat.reshape([2] * (2 * k))
    out = np.tensordot(tensor, psi, axes=(tuple(range(k, 2 * k)), axes))
    return np.moveaxis(out, tuple(range(k)), axes)


def apply_gate(state: np.ndarray, app: GateApp) -> np.ndarray:
    """Apply one gate to a statevector, returning a new statevector."""
    n = _num_qubits_of(state.shape[0])
    if max(app.qubits) >= n:
        raise ValueError(f"gate operand {max(app.qubits)} out of range for {n} qubits")
    psi = np.asarray(state, dtype=complex).reshape([2] * n)
    out = _apply_tensor(psi, gate_matrix(app.kind), app.qubits)
    return out.reshape(-1)


def run(c: Circuit, state: np.ndarray) -> np.ndarray:
    """Execute the circuit on an initial statevector."""
    if state.shape[0] != 1 << c.num_qubits:
        raise ValueError(
            f"state has dimension {state.shape[0]}, circuit needs {1 << c.num_qubits}"
        )
    psi = np.asarray(state, dtype=complex).reshape([2] * c.num_qubits)
    for app in c.gates:
        psi = _apply_tensor(psi, gate_matrix(app.kind), app.qubits)
    return psi.reshape(-1)


def circuit_unitary(c: Circuit) -> np.ndarray:
    """Dense unitary of the whole circuit (execution order, qubit 0 = MSB)."""
    if c.num_qubits > MAX_DENSE_QUBITS:
        raise ValueError(
            f"dense unitary capped at {MAX_DENSE_QUBITS} qubits, got {c.num_qubits}"
        )
    n = c.num_qubits
    dim = 1 << n
    # Columns are basis-state evolutions; the trailing axis is the batch.
    u = np.eye(dim, dtype=complex).reshape([2] * n + [dim])
    for app in c.gates:
        u = _apply_tensor(u, gate_matrix(app.kind), app.qubits)
    return u.reshape(dim, dim)


def phase_aligned_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Global-phase-invariant distance sqrt(max(0, 1 - |Tr(A^dag B)| / dim)).

    A pseudometric: zero iff A = e^{i phi} B for unitary inputs. Near zero the
    trace form cancels catastrophically (floor ~ sqrt(machine eps)), so once
    the overlap is large the equivalent form ||A - cB||_F / sqrt(2 dim) with
    c the aligning unit phase is used instead; it resolves distances down to
    machine precision.
    """
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise ValueError("phase_aligned_distance needs two equal square matrices")
    dim = a.shape[0]
    t = complex(np.trace(a.conj().T @ b))
    overlap = abs(t) / dim
    if overlap < 0.5:
        return math.sqrt(max(0.0, 1.0 - overlap))
    c = t.conjugate() / abs(t)
    return float(np.linalg.norm(a - c * b)) / math.sqrt(2.0 * dim)


# Single-qubit states by token, as used by circuit inputs.
KET_0 = np.array([1, 0], dtype=complex)
KET_1 = np.array([0, 1], dtype=complex)
KET_PLUS = np.array([_SQ2, _SQ2], dtype=complex)
KET_MINUS = np.array([_SQ2, -_SQ2], dtype=complex)
KET_PLUS_I = np.array([_SQ2, _SQ2 * 1j], dtype=complex)
KET_MINUS_I = np.array([_SQ2, -_SQ2 * 1j], dtype=complex)

STATE_TOKENS: dict[str, np.ndarray] = {
    "0": KET_0,
    "1": KET_1,
    "+": KET_PLUS,
    "-": KET_MINUS,
    "+i": KET_PLUS_I,
    "-i": KET_MINUS_I,
}


def basis_state(num_qubits: int, index: int) -> np.ndarray:
    if not 0 <= index < (1 << num_qubits):
        raise ValueError(f"basis index {index} out of range for {num_qubits} qubits")
    psi = np.zeros(1 << num_qubits, dtype=complex)
    psi[index] = 1.0
    return psi


def product_state(tokens: list[str]) -> np.ndarray:
    """Tensor product of per-qubit tokens ('0','1','+','-','+i','-i'), qubit 0 first."""
    psi = np.array([1.0], dtype=complex)
    for tok in tokens:
        if tok not in STATE_TOKENS:
            raise ValueError(f"unknown state token {tok!r}")
        psi = np.kron(psi, STATE_TOKENS[tok])
    return psi


def project_wires(
    op: np.ndarray,
    num_qubits: int,
    ins: dict[int, np.ndarray],
    outs: dict[int, np.ndarray],
) -> np.ndarray:
    """Sandwich ``op`` between fixed states on selected wires.

    Returns (tensor of <out_w| for w in outs) op (tensor of |in_w> for ins),
    an operator on the remaining wires in ascending index order. ``ins`` and
    ``outs`` must fix the same wires.
    """
    if set(ins) != set(outs):
        raise ValueError("ins and outs must fix the same wires")
    n = num_qubits
    t = np.asarray(op, dtype=complex).reshape([2] * (2 * n))
    # Contract highest axis indices first so earlier positions stay valid.
    for w in sorted(ins, reverse=True):
        t = np.tensordot(t, ins[w], axes=([n + w], [0]))
    for w in sorted(outs, reverse=True):
        t = np.tensordot(outs[w].conj(), t, axes=([0], [w]))
    keep = n - len(ins)
    return t.reshape(1 << keep, 1 << keep)


@dataclass(frozen=True)
class CatalyticReport:
    """Result of factoring a unitary across one designated catalyst wire."""

    is_catalytic: bool
    induced: np.ndarray | None
    residual_norm: float
    catalyst_overlap_deficit: float


def extract_catalytic(
    u: np.ndarray,
    catalyst_qubit: int,
    catalyst_state: np.ndarray,
    tol: float = 1e-12,
) -> CatalyticReport:
    """Test whether ``u`` acts as (catalyst kept intact) x (unitary on the rest).

    The candidate induced operator is V = <cat| u |cat>, the leakage block is
    R = <cat_perp| u |cat>. The factorization holds iff ||R||_F <= tol and
    ||V^dag V - I||_F <= tol; then u (|cat> tensor |psi>) = |cat> tensor V|psi>.
    """
    n = _num_qubits_of(u.shape[0])
    if n < 2:
        raise ValueError("need at least 2 qubits to factor out a catalyst")
    if not 0 <= catalyst_qubit < n:
        raise ValueError(f"catalyst qubit {catalyst_qubit} out of range")
    cat = np.asarray(catalyst_state, dtype=complex)
    if cat.shape != (2,) or abs(np.linalg.norm(cat) - 1.0) > 1e-12:
        raise ValueError("catalyst state must be a normalized single-qubit vector")
    cat_perp = np.array([-np.conj(cat[1]), np.conj(cat[0])], dtype=complex)

    v = project_wires(u, n, {catalyst_qubit: cat}, {catalyst_qubit: cat})
    r = project_wires(u, n, {catalyst_qubit: cat}, {catalyst_qubit: cat_perp})
    residual = float(np.linalg.norm(r))
    dim = v.shape[0]
    gram = v.conj().T @ v
    unitarity = float(np.linalg.norm(gram - np.eye(dim)))
    ok = residual <= tol and unitarity <= tol
    # <cat (x) V psi | u | cat (x) psi> = (V^dag V)[psi, psi] for basis psi.
    deficit = float(np.max(1.0 - np.abs(np.diag(gram))))
    return CatalyticReport(
        is_catalytic=ok,
        induced=v if ok else None,
        residual_norm=residual,
        catalyst_overlap_deficit=deficit,
    )
