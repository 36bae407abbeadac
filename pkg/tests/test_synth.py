"""Synthesis: Euler extraction, CZ-based decomposition, full pipeline."""

import math

import numpy as np
import pytest

from catalyq.ir import REAL_O2_CCZ, Gate, GateKind, check_membership, gate_counts
from catalyq.sim import circuit_unitary, gate_matrix, phase_aligned_distance
from catalyq.synth import (
    SynthesisError,
    decompose_su2m,
    euler_xyx,
    format_matrix,
    haar_su,
    haar_unitary,
    parse_matrix,
    synthesize,
)


def rx(t):
    return gate_matrix(GateKind(Gate.RX, t))


def ry(t):
    return gate_matrix(GateKind(Gate.RY, t))


def reconstruct(angles):
    return np.exp(1j * angles.phase) * rx(angles.alpha) @ ry(angles.beta) @ rx(angles.gamma)


# --- euler_xyx ---

def test_euler_identity_canonical_zeros():
    angles = euler_xyx(np.eye(2, dtype=complex))
    assert (angles.alpha, angles.beta, angles.gamma) == (0.0, 0.0, 0.0)
    assert abs(angles.phase) <= 1e-15


def test_euler_y_family_canonical():
    angles = euler_xyx(ry(1.3))
    assert angles.alpha == 0.0
    assert abs(angles.beta - 1.3) <= 1e-15
    assert angles.gamma == 0.0
    assert abs(angles.phase) <= 1e-15


def test_euler_x_family_values():
    for k in range(32):
        t = -2.0 * math.pi + 4.0 * math.pi * (k + 1) / 32.0  # spans (-2pi, 2pi]
        angles = euler_xyx(rx(t))
        assert angles.beta == 0.0
        assert angles.gamma == 0.0
        assert np.abs(reconstruct(angles) - rx(t)).max() <= 1e-12


def test_euler_hadamard_reconstruction():
    h_mat = gate_matrix(GateKind(Gate.H))
    angles = euler_xyx(h_mat)
    assert np.abs(reconstruct(angles) - h_mat).max() <= 1e-12


def test_euler_haar_reconstruction():
    for seed in range(100):
        u = haar_unitary(2, seed)
        angles = euler_xyx(u)
        for value in (angles.alpha, angles.beta, angles.gamma):
            assert -2.0 * math.pi < value <= 2.0 * math.pi
        assert np.abs(reconstruct(angles) - u).max() <= 1e-12


def test_euler_rejects_non_unitary():
    with pytest.raises(SynthesisError, match="not unitary"):
        euler_xyx(np.array([[1.0, 0.0], [0.0, 2.0]]))
    with pytest.raises(SynthesisError, match="2x2"):
        euler_xyx(np.eye(4, dtype=complex))


# --- decompose_su2m ---

def test_decompose_identity_m2():
    c = decompose_su2m(np.eye(4, dtype=complex))
    assert phase_aligned_distance(circuit_unitary(c), np.eye(4)) <= 1e-12
    assert gate_counts(c)[Gate.CZ] == 0


def test_decompose_cz_diagonal():
    target = np.diag([1.0, 1, 1, -1]).astype(complex)
    c = decompose_su2m(target)
    assert phase_aligned_distance(circuit_unitary(c), target) <= 1e-12
    assert gate_counts(c)[Gate.CZ] <= 2


def test_decompose_vocabulary_is_one_qubit_plus_cz():
    u = haar_su(8, 42)
    c = decompose_su2m(u)
    for app in c.gates:
        assert app.kind.gate.arity == 1 or app.kind.gate is Gate.CZ


def test_decompose_seeded_su8_bound():
    u = haar_su(8, 42)
    c = decompose_su2m(u)
    assert phase_aligned_distance(circuit_unitary(c), u) <= 1e-9
    # worst case for three qubits; the recursion never exceeds it
    assert gate_counts(c)[Gate.CZ] <= 42


@pytest.mark.parametrize("m", [1, 2, 3])
def test_decompose_random_seeds(m):
    for seed in range(5):
        u = haar_su(1 << m, 300 * m + seed)
        c = decompose_su2m(u)
        assert c.num_qubits == m
        assert phase_aligned_distance(circuit_unitary(c), u) <= 1e-9


def test_decompose_rejects_bad_dimensions():
    with pytest.raises(SynthesisError, match="2\\^m"):
        decompose_su2m(np.eye(16, dtype=complex))
    with pytest.raises(SynthesisError, match="2\\^m"):
        decompose_su2m(np.eye(3, dtype=complex))
    with pytest.raises(SynthesisError, match="not unitary"):
        decompose_su2m(np.ones((4, 4)))


# --- synthesize ---

def test_synthesize_s_gate_budget():
    res = synthesize(np.diag([1.0, 1j]))
    counts = res.lowered.counts
    assert counts[Gate.CCZ] == 2
    assert counts[Gate.X] == 1
    used = {g for g, n in counts.items() if n}
    assert used <= {Gate.H, Gate.X, Gate.CCZ}
    assert res.distance <= 1e-12


def test_synthesize_identity_passthrough():
    res = synthesize(np.eye(2, dtype=complex))
    assert res.distance <= 1e-12
    assert res.lowered.circuit.gates == ()


def test_synthesize_rx_via_conjugated_y_rotation():
    res = synthesize(rx(0.7))
    assert res.distance <= 1e-10
    assert check_membership(res.lowered.circuit, REAL_O2_CCZ) == []
    # The sandwich costs four S-gadget applications around one RY.
    assert res.lowered.s_gadget_instances == 4
    assert res.lowered.counts[Gate.RY] == 1


def test_synthesize_seeded_su4():
    res = synthesize(haar_su(4, 7))
    assert res.distance <= 1e-8
    assert res.catalyst_deficit <= 1e-9
    assert check_membership(res.lowered.circuit, REAL_O2_CCZ) == []
    assert res.lowered.circuit.num_qubits == 4


def test_synthesize_rejects_non_unitary():
    with pytest.raises(SynthesisError, match="not unitary"):
        synthesize(np.ones((2, 2)))


# --- haar sampling and the matrix file format ---

def test_haar_is_deterministic_per_seed():
    assert np.array_equal(haar_unitary(4, 5), haar_unitary(4, 5))
    assert not np.array_equal(haar_unitary(4, 5), haar_unitary(4, 6))


def test_haar_unitarity_and_su_projection():
    for seed in range(5):
        u = haar_unitary(8, seed)
        assert np.linalg.norm(u.conj().T @ u - np.eye(8)) <= 1e-12
        su = haar_su(8, seed)
        assert abs(np.linalg.det(su) - 1.0) <= 1e-11


def test_matrix_format_round_trip():
    u = haar_unitary(4, 3)
    again = parse_matrix(format_matrix(u))
    assert np.array_equal(again, u)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("4\n1,0", "dim <n>"),
        ("dim 2\n1,0 0,0", "rows"),
        ("dim 2\n1,0 0,0\n0,0", "entries"),
        ("dim 2\n1,0 0,0\n0,0 1", "re,im"),
        ("dim 2\n1,0 0,0\n0,0 a,b", "unparseable"),
        ("dim x\n", "bad dimension"),
    ],
)
def test_matrix_parse_errors(text, fragment):
    with pytest.raises(SynthesisError, match=fragment):
        parse_matrix(text)
