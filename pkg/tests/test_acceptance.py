"""Acceptance gate: one test per exit criterion, at the stated tolerances."""
import time

import numpy as np

from qgloves import chirality, encoding, gloves, linalg, randomstates, tomography
from qgloves.cli import main
from qgloves.tomography import Frame, Verdict

SEED = 2026


def test_criterion_1_chi_spectrum(criterion):
    start = time.perf_counter()
    chi = chirality.build_chi().matrix
    w = linalg.hermitian_eig(chi).eigenvalues
    clusters = np.round(w)
    mult = tuple(int(np.sum(clusters == v)) for v in (-1, 0, 1))
    dev = float(np.max(np.abs(w - clusters)))
    tr = abs(np.trace(chi))
    tr2 = np.trace(chi @ chi).real
    elapsed = time.perf_counter() - start
    ok = mult == (2, 4, 2) and dev <= 1e-10 and tr <= 1e-12 and abs(tr2 - 4) <= 1e-10 and elapsed < 1
    criterion(1, "chi eigenvalues {-1,0,+1} with multiplicities (2,4,2)", ok,
              f"mult={mult} dev={dev:.1e} tr={tr:.1e} tr2={tr2:.12f} t={elapsed:.3f}s")


def test_criterion_2_protocol(criterion):
    rng = np.random.default_rng(SEED)
    start = time.perf_counter()
    rho_plus = chirality.rho_state("plus")
    p_same = chirality.measure_chi(rho_plus, Frame.identity()).p_plus
    p_mirror = chirality.measure_chi(rho_plus, Frame.mirror()).p_minus
    worst = 0.0
    for _ in range(20):
        f = randomstates.frame(rng)
        d = chirality.measure_chi(rho_plus, f)
        worst = max(worst, abs(1 - (d.p_plus if f.chirality == 1 else d.p_minus)))
    elapsed = time.perf_counter() - start
    ok = abs(p_same - 1) <= 1e-10 and abs(p_mirror - 1) <= 1e-10 and worst <= 1e-10 and elapsed < 1
    criterion(2, "rho_plus measured as +1 iff Bob shares the chirality", ok,
              f"p_plus={p_same:.12f} p_minus(mirror)={p_mirror:.12f} worst={worst:.1e} t={elapsed:.3f}s")


def test_criterion_3_round_trip(criterion, singlet):
    ident = Frame.identity()
    rho = tomography.reconstruct(tomography.measure_correlations(singlet, ident, ident))
    dist = np.linalg.norm(rho - singlet)
    w = linalg.hermitian_eig(rho).eigenvalues
    ok = dist <= 1e-10 and w[0] >= -1e-10
    criterion(3, "matched-frame reconstruction is the singlet projector", ok,
              f"frobenius={dist:.1e} min_eig={w[0]:.1e}")


def test_criterion_4_mirrored_negativity(criterion, singlet):
    rho = tomography.reconstruct(
        tomography.measure_correlations(singlet, Frame.identity(), Frame.mirror())
    )
    w_min = linalg.hermitian_eig(rho).eigenvalues[0]
    sy = linalg.kron(np.eye(2), linalg.pauli("y"))
    dev = linalg.max_abs_diff(rho, sy @ linalg.partial_transpose(singlet, "B") @ sy)
    ok = abs(w_min + 0.5) <= 1e-9 and dev <= 1e-10
    criterion(4, "mirrored reconstruction has eigenvalue -1/2 and is a conjugated PT", ok,
              f"min_eig={w_min:.12f} dev={dev:.1e}")


def test_criterion_5_peres(criterion):
    rng = np.random.default_rng(SEED)
    start = time.perf_counter()
    ent = sum(
        tomography.peres_verdict(randomstates.entangled_pure(rng)) is Verdict.ENTANGLED
        for _ in range(200)
    )
    sep = sum(
        tomography.peres_verdict(randomstates.separable_mixture(rng)) is Verdict.SEPARABLE
        for _ in range(200)
    )
    below = tomography.min_pt_eigenvalue(linalg.werner(1 / 3 - 0.01))
    above = tomography.min_pt_eigenvalue(linalg.werner(1 / 3 + 0.01))
    elapsed = time.perf_counter() - start
    ok = ent == 200 and sep == 200 and below > 0 > above and elapsed < 10
    criterion(5, "Peres-Horodecki verdicts exact on two qubits, Werner threshold 1/3", ok,
              f"entangled={ent}/200 separable={sep}/200 pt_min={below:+.4f}/{above:+.4f} "
              f"t={elapsed:.2f}s")


def test_criterion_6_decoherence_free(criterion):
    rng = np.random.default_rng(SEED)
    states = [chirality.rho_state(lab) for lab in chirality.LABELS]
    worst = 0.0
    for _ in range(100):
        axis, angle = randomstates.axis_angle(rng)
        for s in states:
            worst = max(worst, chirality.check_global_rotation_invariance(s, axis, angle))
    criterion(6, "rho_plus and rho_minus invariant under global rotations", worst <= 1e-10,
              f"max_dev={worst:.1e}")


def test_criterion_7_gloves(criterion):
    rng = np.random.default_rng(SEED)
    gp, gm = gloves.glove("plus").vector, gloves.glove("minus").vector
    p3 = gloves.parity_three()
    inner = abs(np.vdot(gp, gm))
    o_pm = abs(np.vdot(gm, p3 @ gp)) ** 2
    o_mp = abs(np.vdot(gp, p3 @ gm)) ** 2
    worst = 0.0
    for _ in range(50):
        d3 = gloves.rotate_three(randomstates.rotation(rng))
        for v in (gloves.state_S().vector, gloves.state_A().vector):
            worst = max(worst, np.linalg.norm(d3 @ v - v))
    ok = inner <= 1e-12 and abs(o_pm - 1) <= 1e-10 and abs(o_mp - 1) <= 1e-10 and worst <= 1e-9
    criterion(7, "gloves orthogonal, swapped by parity; S and A rotation invariant", ok,
              f"<G+|G->={inner:.1e} overlaps={o_pm:.12f},{o_mp:.12f} rot_dev={worst:.1e}")


def test_criterion_8_logical_encoding(criterion):
    rng = np.random.default_rng(SEED)
    p3 = gloves.parity_three()
    square = 0.0
    for _ in range(50):
        q = encoding.LogicalQubit(*randomstates.logical_qubit_amplitudes(rng))
        lhs = encoding.encode(encoding.parity_on_logical(q))
        square = max(square, linalg.max_abs_diff(lhs, p3 @ encoding.encode(q)))
    chi_dev = encoding.logical_chi_invariance_check()
    z3 = encoding.logical_parity()
    spot, slowest = 0.0, 0.0
    for _ in range(20):
        r = randomstates.pure_state(rng, 8)
        start = time.perf_counter()
        lhs = encoding.apply_physical_parity(encoding.embed(r))
        rhs = encoding.embed(z3 @ r)
        slowest = max(slowest, time.perf_counter() - start)
        spot = max(spot, linalg.max_abs_diff(lhs, rhs))
    ok = square <= 1e-12 and chi_dev <= 1e-12 and spot <= 1e-10 and slowest < 2
    criterion(8, "logical parity is ZZZ and leaves chi invariant", ok,
              f"square={square:.1e} chi_dev={chi_dev:.1e} spot={spot:.1e} "
              f"slowest={slowest:.3f}s")


def test_criterion_9_sampling_and_suite(criterion, singlet, capsys):
    ident = Frame.identity()
    sampled = tomography.measure_correlations(singlet, ident, ident, shots=10**5, seed=SEED)
    exact = tomography.measure_correlations(singlet, ident, ident)
    worst = max(float(np.max(np.abs(getattr(sampled, k) - getattr(exact, k)))) for k in "abt")
    start = time.perf_counter()
    code = main(["suite", "--seed", str(SEED)])
    elapsed = time.perf_counter() - start
    capsys.readouterr()
    ok = worst <= 0.02 and code == 0 and elapsed < 60
    criterion(9, "sampled tomography within 0.02 at 1e5 shots; suite exits 0 under 60 s", ok,
              f"max_err={worst:.4f} suite_exit={code} suite_t={elapsed:.2f}s")
