"""End-to-end scenarios that produce :class:`ExperimentReport` objects.

Each ``cmd_*`` function is what the matching CLI subcommand runs. They never
print or exit; :mod:`qgloves.cli` does that.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import chirality, encoding, gloves, linalg, randomstates, tomography
from .errors import BadState
from .report import ExperimentReport, at_most, close, equals, greater_than, less_than
from .tomography import Frame, Verdict

DEFAULT_SEED = 7
RNG_NAME = "numpy.PCG64"


@dataclass(frozen=True)
class FrameSpec:
    """Command-line description of a frame: ``(-I)**mirror @ R(axis, angle)``."""

    axis: tuple[float, float, float] = (0.0, 0.0, 1.0)
    angle: float = 0.0
    mirror: bool = False

    def frame(self) -> Frame:
        return Frame.from_rotation(self.axis, self.angle, self.mirror)

    def spin_unitary(self) -> np.ndarray:
        """Spin-1/2 unitary of the rotation part only."""
        return linalg.rotation_unitary(self.axis, self.angle)

    def as_dict(self) -> dict:
        return {"axis": list(self.axis), "angle": self.angle, "mirror": self.mirror}


def sampling_bound(shots: int) -> float:
    """Shot-noise bound on a sampled correlation: about 6 sigma, 0.02 at 1e5 shots."""
    return 0.02 * float(np.sqrt(1e5 / shots))


def _tol(override: float | None, default: float) -> float:
    return default if override is None else override


def _matrix_payload(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=complex)
    return {"re": m.real.tolist(), "im": m.imag.tolist()}


# --------------------------------------------------------------------- states


def read_state_file(path: str | Path) -> np.ndarray:
    """Read a complex matrix from a plain-text state file.

    The first line holds the dimension (``4`` or ``4 4``); the remaining
    whitespace-separated tokens are ``real imag`` pairs in row-major order.
    """
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise BadState(f"cannot read state file {path}: {exc}") from None
    if not lines:
        raise BadState(f"state file {path} is empty")
    try:
        header = [int(x) for x in lines[0].split()]
        values = [float(x) for x in " ".join(lines[1:]).split()]
    except ValueError as exc:
        raise BadState(f"malformed state file {path}: {exc}") from None
    if len(header) == 1:
        header = header * 2
    if len(header) != 2 or header[0] != header[1] or header[0] < 1:
        raise BadState(f"state file header must give a square dimension, got {lines[0]!r}")
    n = header[0]
    if len(values) != 2 * n * n:
        raise BadState(f"expected {2 * n * n} numbers for a {n}x{n} matrix, got {len(values)}")
    pairs = np.array(values).reshape(n, n, 2)
    return linalg.check_density(pairs[..., 0] + 1j * pairs[..., 1])


def write_state_file(path: str | Path, rho: np.ndarray) -> None:
    rho = np.asarray(rho, dtype=complex)
    rows = [" ".join(f"{z.real:.17g} {z.imag:.17g}" for z in row) for row in rho]
    Path(path).write_text(f"{rho.shape[0]}\n" + "\n".join(rows) + "\n")


def resolve_state(spec: str) -> tuple[np.ndarray, dict]:
    """Turn ``singlet``, ``werner:p`` or a file path into a density matrix."""
    if spec == "singlet":
        return linalg.singlet_projector(), {"kind": "singlet"}
    if spec.startswith("werner:"):
        try:
            p = float(spec.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad Werner parameter in {spec!r}") from None
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"Werner parameter must lie in [0, 1], got {p}")
        return linalg.werner(p), {"kind": "werner", "p": p}
    return read_state_file(spec), {"kind": "file", "path": str(spec)}


# ----------------------------------------------------------------- tomography


def frame_model_prediction(rho, alice: FrameSpec, bob: FrameSpec) -> np.ndarray:
    """What the reconstruction should be, derived via spin unitaries.

    The rotation part of each frame is undone on the state with its
    spin-1/2 unitary; a mirrored lab then flips the sign of every term
    carrying its own Pauli factor.
    """
    w = np.kron(alice.spin_unitary(), bob.spin_unitary()).conj().T
    a, b, t = tomography.bloch_components(w @ rho @ w.conj().T)
    sa = -1 if alice.mirror else 1
    sb = -1 if bob.mirror else 1
    return tomography.reconstruct(tomography.CorrelationData(sa * a, sb * b, sa * sb * t))


def cmd_tomography(
    state: str = "singlet",
    alice: FrameSpec = FrameSpec(),
    bob: FrameSpec = FrameSpec(),
    shots: int | None = None,
    seed: int = DEFAULT_SEED,
    tolerance: float | None = None,
) -> ExperimentReport:
    rho, state_info = resolve_state(state)
    rho = linalg.check_density(rho, dim=4)
    fa, fb = alice.frame(), bob.frame()
    report = ExperimentReport(
        "tomography",
        {
            "state": state_info,
            "alice": alice.as_dict(),
            "bob": bob.as_dict(),
            "shots": "exact" if shots is None else shots,
            "seed": seed,
            "rng": RNG_NAME,
        },
    )
    data = tomography.measure_correlations(rho, fa, fb, shots, seed)
    recon = tomography.reconstruct(data)
    eig = linalg.hermitian_eig(recon).eigenvalues
    verdict = tomography.peres_verdict(rho)
    report.results = {
        "correlations": data.as_dict(),
        "reconstruction": _matrix_payload(recon),
        "eigenvalues": eig.tolist(),
        "min_eigenvalue": float(eig[0]),
        "same_chirality": fa.chirality == fb.chirality,
        "peres_verdict": verdict.value,
        "min_pt_eigenvalue": tomography.min_pt_eigenvalue(rho),
    }

    report.add(close("reconstruction_trace", 1.0, np.trace(recon).real, _tol(tolerance, 1e-10)))
    if shots is None:
        predicted = frame_model_prediction(rho, alice, bob)
        report.add(
            at_most(
                "reconstruction_matches_frame_model",
                linalg.max_abs_diff(recon, predicted),
                _tol(tolerance, 1e-10),
            )
        )
        if fa.chirality == fb.chirality:
            report.add(
                equals("same_chirality_reconstruction_is_positive", True, bool(eig[0] >= -1e-9))
            )
        if state_info["kind"] == "singlet":
            if np.allclose(fa.matrix, fb.matrix, atol=1e-12):
                dist = np.linalg.norm(recon - linalg.singlet_projector())
                report.add(at_most("frobenius_to_singlet", dist, _tol(tolerance, 1e-10)))
            expected_min = 0.0 if fa.chirality == fb.chirality else -0.5
            report.add(close("min_eigenvalue", expected_min, eig[0], _tol(tolerance, 1e-9)))
    else:
        exact = tomography.measure_correlations(rho, fa, fb, None)
        worst = max(
            np.max(np.abs(data.a - exact.a)),
            np.max(np.abs(data.b - exact.b)),
            np.max(np.abs(data.t - exact.t)),
        )
        report.results["max_sampling_error"] = float(worst)
        bound = sampling_bound(shots)
        report.add(at_most("sampled_correlations_near_exact", worst, _tol(tolerance, bound)))

    if bob.mirror and not alice.mirror:
        w = np.kron(alice.spin_unitary(), bob.spin_unitary()).conj().T
        mirrored = tomography.mirrored_form(w @ rho @ w.conj().T)
        report.results["mirrored_form"] = _matrix_payload(mirrored)
        if shots is None:
            dev = linalg.max_abs_diff(recon, mirrored)
            report.add(at_most("reconstruction_equals_mirrored_form", dev, _tol(tolerance, 1e-10)))

    if state_info["kind"] == "werner":
        expected = Verdict.ENTANGLED if state_info["p"] > 1 / 3 else Verdict.SEPARABLE
        report.add(equals("werner_peres_verdict", expected.value, verdict.value))
    return report


def correlation_table(report: ExperimentReport) -> str:
    """Flat CSV export of the correlation data in a tomography report."""
    c = report.results["correlations"]
    lines = ["quantity,alice_axis,bob_axis,value"]
    axes = linalg.AXES
    for j in range(3):
        lines.append(f"a,{axes[j]},,{c['a'][j]!r}")
    for k in range(3):
        lines.append(f"b,,{axes[k]},{c['b'][k]!r}")
    for j in range(3):
        for k in range(3):
            lines.append(f"t,{axes[j]},{axes[k]},{c['t'][j][k]!r}")
    return "\n".join(lines)


def checks_table(report: ExperimentReport) -> str:
    lines = ["check,expected,actual,tolerance,pass"]
    for c in report.checks:
        lines.append(f"{c.name},{c.expected},{c.actual},{c.tolerance},{c.passed}")
    return "\n".join(lines)


# --------------------------------------------------------------- chi protocol


def cmd_chi_protocol(
    label: str = "plus",
    bob: FrameSpec = FrameSpec(),
    shots: int | None = None,
    seed: int = DEFAULT_SEED,
    tolerance: float | None = None,
) -> ExperimentReport:
    state = chirality.rho_state(label)
    fb = bob.frame()
    expected = state.sign * fb.chirality
    report = ExperimentReport(
        "chi-protocol",
        {
            "label": label,
            "bob": bob.as_dict(),
            "shots": "exact" if shots is None else shots,
            "seed": seed,
            "rng": RNG_NAME,
        },
    )
    outcome = chirality.measure_chi(state, fb, shots, seed)
    report.results = {
        "bob_chirality": fb.chirality,
        "expected_outcome": expected,
        "chirality_verdict": "same" if expected == state.sign else "opposite",
    }
    key = {1: "plus", 0: "zero", -1: "minus"}[expected]
    if shots is None:
        report.results["distribution"] = outcome.as_dict()
        p = getattr(outcome, f"p_{key}")
        report.add(close(f"p_{key}", 1.0, p, _tol(tolerance, 1e-10)))
    else:
        report.results["counts"] = outcome.as_dict()
        report.add(equals(f"all_outcomes_{key}", shots, getattr(outcome, key)))
    return report


# --------------------------------------------------------------------- gloves


def cmd_gloves(
    handedness: str = "plus",
    receiver_mirrored: bool = False,
    tolerance: float | None = None,
) -> ExperimentReport:
    sent = gloves.glove(handedness)
    received = gloves.parity_three() @ sent.vector if receiver_mirrored else sent.vector
    overlaps = gloves.glove_overlaps(received)
    verdict = gloves.discriminate_glove(sent, receiver_mirrored)
    expected = gloves.opposite(handedness) if receiver_mirrored else handedness
    report = ExperimentReport(
        "gloves", {"handedness": handedness, "receiver_mirrored": receiver_mirrored}
    )
    report.results = {"overlaps": overlaps, "verdict": verdict}
    g_plus, g_minus = gloves.glove("plus").vector, gloves.glove("minus").vector
    report.add(
        equals("verdict", expected, verdict),
        close(f"overlap_{expected}", 1.0, overlaps[expected], _tol(tolerance, 1e-10)),
        at_most("glove_orthogonality", abs(np.vdot(g_plus, g_minus)), _tol(tolerance, 1e-12)),
    )
    return report


# ------------------------------------------------------------------- encoding


def _encoding_checks(rng: np.random.Generator, tolerance: float | None):
    checks = []
    p3 = gloves.parity_three()
    worst = 0.0
    for _ in range(50):
        q = encoding.LogicalQubit(*randomstates.logical_qubit_amplitudes(rng))
        lhs = encoding.encode(encoding.parity_on_logical(q))
        worst = max(worst, linalg.max_abs_diff(lhs, p3 @ encoding.encode(q)))
    checks.append(at_most("encode_parity_commutation", worst, _tol(tolerance, 1e-12)))

    checks.append(
        at_most("chi_logical_reflection_invariance", encoding.logical_chi_invariance_check(),
                _tol(tolerance, 1e-12))
    )
    x3 = linalg.kron(encoding.LOGICAL_X, encoding.LOGICAL_X, encoding.LOGICAL_X)
    checks.append(at_most("chi_xxx_invariance", encoding.conjugation_deviation(x3),
                          _tol(tolerance, 1e-10)))
    z1 = linalg.kron(encoding.LOGICAL_Z, np.eye(2), np.eye(2))
    checks.append(greater_than("chi_single_site_z_breaks_invariance",
                               encoding.conjugation_deviation(z1), 0.1))

    z3 = encoding.logical_parity()
    worst, slowest = 0.0, 0.0
    for _ in range(20):
        r = randomstates.pure_state(rng, 8)
        start = time.perf_counter()
        lhs = encoding.apply_physical_parity(encoding.embed(r))
        rhs = encoding.embed(z3 @ r)
        slowest = max(slowest, time.perf_counter() - start)
        worst = max(worst, linalg.max_abs_diff(lhs, rhs))
    checks.append(at_most("embedded_parity_matches_logical_zzz", worst, _tol(tolerance, 1e-10)))
    checks.append(less_than("embedded_parity_runtime_s", slowest, 2.0))

    cols = np.column_stack([encoding.embed(np.eye(8)[i]) for i in range(8)])
    gram = cols.conj().T @ cols
    checks.append(at_most("embedding_isometry", linalg.max_abs_diff(gram, np.eye(8)),
                          _tol(tolerance, 1e-10)))
    return checks


def cmd_encoded(seed: int = DEFAULT_SEED, tolerance: float | None = None) -> ExperimentReport:
    rng = np.random.default_rng(seed)
    report = ExperimentReport("encoded", {"seed": seed, "rng": RNG_NAME})
    sss = encoding.embed(np.eye(8)[0])
    aaa = encoding.embed(np.eye(8)[7])
    report.results = {
        "physical_dim": encoding.PHYSICAL_DIM,
        "parity_on_SSS": float(np.vdot(sss, encoding.apply_physical_parity(sss)).real),
        "parity_on_AAA": float(np.vdot(aaa, encoding.apply_physical_parity(aaa)).real),
    }
    report.add(
        close("parity_eigenvalue_SSS", 1.0, report.results["parity_on_SSS"], _tol(tolerance, 1e-12)),
        close("parity_eigenvalue_AAA", -1.0, report.results["parity_on_AAA"], _tol(tolerance, 1e-12)),
    )
    report.add(*_encoding_checks(rng, tolerance))
    return report


# ---------------------------------------------------------------------- suite


class _Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def _chi_spectrum_checks(tol):
    with _Timer() as timer:
        chi = chirality.build_chi()
        w = linalg.hermitian_eig(chi.matrix).eigenvalues
        clusters = np.round(w).astype(int)
        mult = tuple(int(np.sum(clusters == v)) for v in (-1, 0, 1))
        checks = [
            equals("chi_multiplicities", (2, 4, 2), mult),
            at_most("chi_cluster_deviation", np.max(np.abs(w - clusters)), _tol(tol, 1e-10)),
            at_most("chi_trace", np.trace(chi.matrix).real, _tol(tol, 1e-12)),
            close("chi_trace_squared", 4.0, np.trace(chi.matrix @ chi.matrix).real,
                  _tol(tol, 1e-10)),
        ]
    checks.append(less_than("chi_spectrum_runtime_s", timer.elapsed, 1.0))
    return checks, {"chi_eigenvalues": w.tolist(), "chi_multiplicities": list(mult)}


def _protocol_checks(rng, tol):
    with _Timer() as timer:
        rho_plus = chirality.rho_state("plus")
        checks = [
            close("protocol_identity_p_plus", 1.0,
                  chirality.measure_chi(rho_plus, Frame.identity()).p_plus, _tol(tol, 1e-10)),
            close("protocol_mirror_p_minus", 1.0,
                  chirality.measure_chi(rho_plus, Frame.mirror()).p_minus, _tol(tol, 1e-10)),
        ]
        worst = 0.0
        for _ in range(20):
            f = randomstates.frame(rng)
            d = chirality.measure_chi(rho_plus, f)
            p = d.p_plus if f.chirality == 1 else d.p_minus
            worst = max(worst, abs(1 - p))
        checks.append(at_most("protocol_random_frames", worst, _tol(tol, 1e-10)))
    checks.append(less_than("protocol_runtime_s", timer.elapsed, 1.0))
    return checks


def _tomography_checks(tol):
    singlet = linalg.singlet_projector()
    ident = Frame.identity()
    recon = tomography.reconstruct(tomography.measure_correlations(singlet, ident, ident))
    eig = linalg.hermitian_eig(recon).eigenvalues
    mirrored = tomography.reconstruct(
        tomography.measure_correlations(singlet, ident, Frame.mirror())
    )
    sy = linalg.kron(np.eye(2), linalg.pauli("y"))
    via_pt = sy @ linalg.partial_transpose(singlet, "B") @ sy
    return [
        at_most("eq1_singlet_frobenius", np.linalg.norm(recon - singlet), _tol(tol, 1e-10)),
        equals("eq1_eigenvalues_nonnegative", True, bool(eig[0] >= -1e-10)),
        close("eq2_min_eigenvalue", -0.5, linalg.hermitian_eig(mirrored).eigenvalues[0],
              _tol(tol, 1e-9)),
        at_most("eq2_equals_conjugated_partial_transpose",
                linalg.max_abs_diff(mirrored, via_pt), _tol(tol, 1e-10)),
    ]


def _peres_checks(rng):
    with _Timer() as timer:
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
    return [
        equals("peres_entangled_pure_states", 200, int(ent)),
        equals("peres_separable_mixtures", 200, int(sep)),
        equals("werner_threshold_sign_change", True, bool(below > 0 > above)),
        less_than("peres_runtime_s", timer.elapsed, 10.0),
    ]


def _decoherence_free_checks(rng, tol):
    worst = 0.0
    states = [chirality.rho_state(lab) for lab in chirality.LABELS]
    for _ in range(100):
        axis, angle = randomstates.axis_angle(rng)
        for s in states:
            worst = max(worst, chirality.check_global_rotation_invariance(s, axis, angle))
    return [at_most("rho_pm_global_rotation_invariance", worst, _tol(tol, 1e-10))]


def _glove_checks(rng, tol):
    g_plus, g_minus = gloves.glove("plus").vector, gloves.glove("minus").vector
    p3 = gloves.parity_three()
    worst = 0.0
    for _ in range(50):
        d3 = gloves.rotate_three(randomstates.rotation(rng))
        for psi in (gloves.state_S().vector, gloves.state_A().vector):
            worst = max(worst, np.linalg.norm(d3 @ psi - psi))
    return [
        at_most("glove_orthogonality", abs(np.vdot(g_plus, g_minus)), _tol(tol, 1e-12)),
        close("parity_maps_plus_to_minus", 1.0, abs(np.vdot(g_minus, p3 @ g_plus)) ** 2,
              _tol(tol, 1e-10)),
        close("parity_maps_minus_to_plus", 1.0, abs(np.vdot(g_plus, p3 @ g_minus)) ** 2,
              _tol(tol, 1e-10)),
        at_most("S_A_rotation_invariance", worst, _tol(tol, 1e-9)),
    ]


def _sampling_checks(seed, tol):
    singlet = linalg.singlet_projector()
    ident = Frame.identity()
    sampled = tomography.measure_correlations(singlet, ident, ident, 10**5, seed)
    exact = tomography.measure_correlations(singlet, ident, ident)
    worst = max(
        np.max(np.abs(sampled.a - exact.a)),
        np.max(np.abs(sampled.b - exact.b)),
        np.max(np.abs(sampled.t - exact.t)),
    )
    return [at_most("sampled_tomography_convergence", worst, _tol(tol, 0.02))], float(worst)


def cmd_suite(seed: int = DEFAULT_SEED, tolerance: float | None = None) -> ExperimentReport:
    """Run every acceptance-level check in one report."""
    rng = np.random.default_rng(seed)
    report = ExperimentReport("suite", {"seed": seed, "rng": RNG_NAME})
    with _Timer() as timer:
        spectrum, spectrum_results = _chi_spectrum_checks(tolerance)
        report.add(*spectrum)
        report.add(*_protocol_checks(rng, tolerance))
        report.add(*_tomography_checks(tolerance))
        report.add(*_peres_checks(rng))
        report.add(*_decoherence_free_checks(rng, tolerance))
        report.add(*_glove_checks(rng, tolerance))
        report.add(*_encoding_checks(rng, tolerance))
        sampling, worst = _sampling_checks(seed, tolerance)
        report.add(*sampling)
        for sub in (
            cmd_tomography("singlet", shots=None, seed=seed, tolerance=tolerance),
            cmd_tomography("singlet", bob=FrameSpec(mirror=True), seed=seed, tolerance=tolerance),
            cmd_chi_protocol("plus", FrameSpec(angle=0.7, mirror=True), tolerance=tolerance),
            cmd_gloves("plus", True, tolerance=tolerance),
            cmd_gloves("minus", True, tolerance=tolerance),
        ):
            for c in sub.checks:
                c.name = f"{sub.experiment}.{c.name}"
            report.add(*sub.checks)
    report.add(less_than("suite_runtime_s", timer.elapsed, 60.0))
    report.results = {**spectrum_results, "max_sampling_error": worst,
                      "n_checks": len(report.checks)}
    return report
