"""Acceptance suite: one test per headline claim, one printed verdict line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the verdict lines.
"""

import json
import math
import time

import numpy as np

from catalyq.gadgets import cs_gadget, rz_gadget, s_gadget, s_via_prep, verify_one_prep
from catalyq.ir import (
    HCCZ,
    REAL_O2_CCZ,
    Circuit,
    Gate,
    GateKind,
    ccz,
    check_membership,
    circuit_of,
    cs,
    cz,
    gate_counts,
    h,
    parse_circuit,
    s,
    serialize_circuit,
    x,
)
from catalyq.lowering import count_report, lower
from catalyq.sim import (
    KET_MINUS_I,
    KET_PLUS_I,
    circuit_unitary,
    extract_catalytic,
    gate_matrix,
)
from catalyq.synth import synthesize, haar_su

from conftest import random_circuit
from test_sim import oracle_unitary


def verdict(name: str, ok: bool, detail: str) -> None:
    print(f"criterion {name}: {'PASS' if ok else 'FAIL'} ({detail})")


S_MAT = np.diag([1.0, 1j])


def test_criterion_01_rz_gadget_identity_grid():
    start = time.perf_counter()
    worst = 0.0
    for k in range(128):
        theta = 2.0 * math.pi * k / 128.0
        g = rz_gadget(theta)
        u = circuit_unitary(g.circuit)
        induced = np.exp(1j * theta / 2.0) * np.diag(
            [np.exp(-1j * theta / 2.0), np.exp(1j * theta / 2.0)]
        )
        for b in range(2):
            psi = np.zeros(2, dtype=complex)
            psi[b] = 1.0
            lhs = u @ np.kron(KET_PLUS_I, psi)
            rhs = np.kron(KET_PLUS_I, induced @ psi)
            worst = max(worst, float(np.abs(lhs - rhs).max()))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-12 and elapsed < 1.0
    verdict("01 rz gadget identity grid", ok, f"max error {worst:.3e}, {elapsed:.3f}s")
    assert ok


def test_criterion_02_s_gadget_exact():
    start = time.perf_counter()
    circuit = circuit_of(2, h(0), cz(1, 0), h(0), cz(1, 0))
    u = circuit_unitary(circuit)
    p0 = np.diag([1.0, 0.0])
    p1 = np.diag([0.0, 1.0])
    iy = np.array([[0.0, 1.0], [-1.0, 0.0]])
    expected = np.kron(np.eye(2), p0) + np.kron(iy, p1)
    matrix_err = float(np.abs(u - expected).max())
    report = extract_catalytic(u, 0, KET_PLUS_I)
    induced_err = (
        float(np.abs(report.induced - S_MAT).max()) if report.induced is not None else math.inf
    )
    elapsed = time.perf_counter() - start
    ok = (
        matrix_err <= 1e-13
        and report.is_catalytic
        and induced_err <= 1e-13
        and elapsed < 0.1
    )
    verdict(
        "02 s gadget exact",
        ok,
        f"matrix error {matrix_err:.3e}, induced error {induced_err:.3e}, {elapsed:.3f}s",
    )
    assert ok


def test_criterion_03_cs_gadget_two_ccz():
    start = time.perf_counter()
    g = cs_gadget()
    member = check_membership(g.circuit, HCCZ) == []
    ccz_count = gate_counts(g.circuit)[Gate.CCZ]
    report = extract_catalytic(circuit_unitary(g.circuit), g.catalyst_qubit, KET_PLUS_I)
    cs_target = np.diag([1.0, 1, 1, 1j])
    induced_err = (
        float(np.abs(report.induced - cs_target).max()) if report.induced is not None else math.inf
    )
    elapsed = time.perf_counter() - start
    ok = (
        member
        and ccz_count == 2
        and report.is_catalytic
        and induced_err <= 1e-13
        and g.aux == ()
        and elapsed < 0.1
    )
    verdict(
        "03 cs gadget two ccz",
        ok,
        f"ccz {ccz_count}, induced error {induced_err:.3e}, ancillas {len(g.aux)}, {elapsed:.3f}s",
    )
    assert ok


def test_criterion_04_catalyst_restoration():
    gadgets = [rz_gadget(2.0 * math.pi * k / 128.0) for k in range(128)]
    gadgets += [s_gadget(), cs_gadget()]
    worst = 0.0
    for g in gadgets:
        u = circuit_unitary(g.circuit)
        data_dim = u.shape[0] // 2
        for b in range(data_dim):
            psi = np.zeros(data_dim, dtype=complex)
            psi[b] = 1.0
            out = (u @ np.kron(KET_PLUS_I, psi)).reshape(2, data_dim)
            overlap = float(np.linalg.norm(KET_PLUS_I.conj() @ out))
            worst = max(worst, abs(1.0 - overlap))
    ok = worst <= 1e-12
    verdict("04 catalyst restoration", ok, f"max overlap deficit {worst:.3e}")
    assert ok


def test_criterion_05_catalyst_flip():
    amp = complex(KET_MINUS_I.conj() @ (gate_matrix(GateKind(Gate.H)) @ KET_PLUS_I))
    mag_err = abs(abs(amp) - 1.0)
    phase_err = abs(np.angle(amp) - math.pi / 4.0)
    ok = mag_err <= 1e-13 and phase_err <= 1e-12
    verdict(
        "05 catalyst flip",
        ok,
        f"|amp|-1 = {mag_err:.3e}, phase error {phase_err:.3e}",
    )
    assert ok


def test_criterion_06_synthesis_pipeline():
    start = time.perf_counter()
    worst = 0.0
    ok = True
    for m in (1, 2, 3):
        for k in range(20):
            res = synthesize(haar_su(1 << m, 100 * m + k))
            worst = max(worst, res.distance)
            member = check_membership(res.lowered.circuit, REAL_O2_CCZ) == []
            catalysts = int(res.lowered.catalyst_qubit is not None)
            ok = ok and member and res.distance <= 1e-8
            ok = ok and catalysts <= 1 and len(res.lowered.ancilla_qubits) <= 1
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 60.0
    verdict(
        "06 synthesis pipeline",
        ok,
        f"60 targets, worst distance {worst:.3e}, {elapsed:.1f}s",
    )
    assert ok


GOLDEN_S_REPORT = """{
  "counts": {
    "H": 2,
    "X": 1,
    "Y": 0,
    "Z": 0,
    "S": 0,
    "SDG": 0,
    "RX": 0,
    "RY": 0,
    "RZ": 0,
    "CZ": 0,
    "CS": 0,
    "CRY": 0,
    "CCZ": 2
  },
  "catalyst": true,
  "ancilla": 1,
  "ccz_per_cs": null,
  "ccz_per_s": 2.0,
  "notes": [
    "controlled-S gadget: 2 CCZ per instance, no |0> ancilla (vs an 8-CCZ baseline construction: >= 75% fewer CCZ)",
    "S gadget: 2 CCZ per instance plus one shared X-prepped |1> ancilla",
    "reference, not measured here: S built on a verified k-CCZ |1>-prep circuit totals k+2 CCZ (k=12 gives 14, vs an 18-CCZ baseline)"
  ]
}"""


def test_criterion_07_gate_count_law():
    cs_low = lower(circuit_of(2, cs(0, 1)), HCCZ)
    s_low = lower(circuit_of(1, s(0)), REAL_O2_CCZ)
    cs_ok = cs_low.counts[Gate.CCZ] == 2
    s_ok = s_low.counts[Gate.CCZ] == 2 and s_low.counts[Gate.X] == 1
    report_once = count_report(s_low).to_json()
    report_twice = count_report(lower(circuit_of(1, s(0)), REAL_O2_CCZ)).to_json()
    stable = report_once == report_twice == GOLDEN_S_REPORT
    json.loads(report_once)

    # A deliberately wasteful |1> prep: X plus six self-cancelling CCZ pairs.
    prep_gates = [x(0)]
    for _ in range(6):
        prep_gates += [ccz(0, 1, 2), ccz(0, 1, 2)]
    prep = Circuit(3, tuple(prep_gates))
    k = gate_counts(prep)[Gate.CCZ]
    prep_passes = verify_one_prep(prep, 0).passes
    built = s_via_prep(prep, 0)
    total = gate_counts(built.circuit)[Gate.CCZ]
    cond_ok = prep_passes and k == 12 and total == k + 2

    ok = cs_ok and s_ok and stable and cond_ok
    verdict(
        "07 gate count law",
        ok,
        f"cs ccz 2: {cs_ok}, s ccz 2 + x 1: {s_ok}, report stable: {stable}, "
        f"prep k={k} total={total}",
    )
    assert ok


def test_criterion_08_kronecker_oracle():
    worst = 0.0
    for seed in range(20):
        rng = np.random.default_rng(7000 + seed)
        c = random_circuit(rng, 3, 30)
        diff = float(np.linalg.norm(circuit_unitary(c) - oracle_unitary(c)))
        worst = max(worst, diff)
    ok = worst <= 1e-12
    verdict("08 kronecker oracle", ok, f"20 circuits, worst frobenius {worst:.3e}")
    assert ok


def test_criterion_09_real_gate_sets_real_matrices():
    worst = 0.0
    for seed in range(10):
        rng = np.random.default_rng(7100 + seed)
        for profile in (HCCZ, REAL_O2_CCZ):
            c = random_circuit(rng, 4, 25, tags=profile.tags())
            assert check_membership(c, profile) == []
            worst = max(worst, float(np.abs(circuit_unitary(c).imag).max()))
    ok = worst <= 1e-13
    verdict("09 real gate sets real matrices", ok, f"max imag entry {worst:.3e}")
    assert ok


def test_criterion_10_serialize_round_trip():
    failures = 0
    for seed in range(100):
        rng = np.random.default_rng(7200 + seed)
        c = random_circuit(rng, int(rng.integers(1, 6)), int(rng.integers(0, 25)))
        text = serialize_circuit(c)
        if serialize_circuit(parse_circuit(text)) != text:
            failures += 1
    ok = failures == 0
    verdict("10 serialize round trip", ok, f"100 circuits, {failures} mismatches")
    assert ok
