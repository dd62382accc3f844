"""Two-qubit correlation tomography between two labs with their own frames.

A lab frame is an orthogonal 3x3 matrix ``M`` whose columns are that lab's
``x``, ``y`` and ``z`` axes written in global coordinates. When Bob "measures
sigma_k" he really measures ``(M e_k) . sigma`` in the global frame, so a lab
whose frame has ``det M = -1`` assigns the opposite sign to every axial
quantity it records.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from . import linalg
from .linalg import I2, kron, pauli_vector

#: An NPT eigenvalue must fall below this to count as entanglement.
NPT_THRESHOLD = -1e-9

Shots = Union[int, None]  # None means exact expectation values


@dataclass(frozen=True)
class Frame:
    """A lab reference frame, an element of O(3)."""

    matrix: np.ndarray = field(default_factory=lambda: np.eye(3))

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.shape != (3, 3):
            raise ValueError(f"frame matrix must be 3x3, got {m.shape}")
        if linalg.max_abs_diff(m.T @ m, np.eye(3)) > linalg.ATOL:
            raise ValueError("frame matrix is not orthogonal")
        if abs(abs(np.linalg.det(m)) - 1.0) > linalg.ATOL:
            raise ValueError("frame determinant is not +-1")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def chirality(self) -> int:
        """``+1`` for a right-handed frame, ``-1`` for a left-handed one."""
        return 1 if np.linalg.det(self.matrix) > 0 else -1

    @classmethod
    def identity(cls) -> "Frame":
        return cls(np.eye(3))

    @classmethod
    def mirror(cls) -> "Frame":
        """The point-reflected frame, ``r -> -r``."""
        return cls(-np.eye(3))

    @classmethod
    def from_rotation(cls, axis, angle: float, mirror: bool = False) -> "Frame":
        """``(-I)**mirror @ so3_from(axis, angle)``."""
        r = linalg.so3_from(axis, angle)
        return cls(-r if mirror else r)


@dataclass(frozen=True)
class CorrelationData:
    """Local Bloch vectors and the correlation tensor, each in its lab's labels.

    ``t[j, k]`` pairs Alice's axis ``j`` with Bob's axis ``k``. ``shots`` is
    ``None`` for exact expectation values.
    """

    a: np.ndarray
    b: np.ndarray
    t: np.ndarray
    shots: Shots = None

    def as_dict(self) -> dict:
        return {
            "a": self.a.tolist(),
            "b": self.b.tolist(),
            "t": self.t.tolist(),
            "shots": "exact" if self.shots is None else self.shots,
        }


class Verdict(str, enum.Enum):
    ENTANGLED = "Entangled"
    SEPARABLE = "Separable"


def _two_qubit_state(state) -> np.ndarray:
    return linalg.check_density(state, dim=4)


def bloch_components(rho) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Global-frame ``<s_j x 1>``, ``<1 x s_k>`` and ``<s_j x s_k>`` of ``rho``."""
    rho = np.asarray(rho, dtype=complex)
    s = pauli_vector()
    a = np.array([np.trace(rho @ kron(sj, I2)).real for sj in s])
    b = np.array([np.trace(rho @ kron(I2, sk)).real for sk in s])
    t = np.array([[np.trace(rho @ kron(sj, sk)).real for sk in s] for sj in s])
    return a, b, t


def _local_projectors(n) -> tuple[np.ndarray, np.ndarray]:
    """Projectors onto the +1 and -1 outcomes of ``n . sigma``."""
    ns = linalg.sigma_dot(n)
    return (I2 + ns) / 2, (I2 - ns) / 2


def _sample_setting(rho, n_a, n_b, shots: int, rng: np.random.Generator) -> np.ndarray:
    """Outcome counts for ``(++, +-, -+, --)`` of one joint local measurement."""
    pa = _local_projectors(n_a)
    pb = _local_projectors(n_b)
    probs = np.array([np.trace(rho @ kron(x, y)).real for x in pa for y in pb])
    probs = np.clip(probs, 0.0, None)
    probs /= probs.sum()
    return rng.multinomial(shots, probs)


def measure_correlations(
    state,
    alice: Frame,
    bob: Frame,
    shots: Shots = None,
    seed: int = 0,
) -> CorrelationData:
    """Measure all single-site and two-site Pauli correlations.

    Parameters
    ----------
    state : array_like
        Two-qubit density matrix in the global frame.
    alice, bob : Frame
        The labs' frames; axis ``j`` of a lab is column ``j`` of its matrix.
    shots : int or None
        ``None`` returns exact expectation values. Otherwise each of the nine
        settings ``(j, k)`` is measured on ``shots`` fresh copies, and the
        local vectors are estimated from the pooled marginals of those same
        outcomes (``3 * shots`` samples per component).
    seed : int
        Seed for the sampled mode. Setting ``(j, k)`` draws from its own
        ``numpy`` PCG64 stream seeded with ``(seed, j, k)``.
    """
    rho = _two_qubit_state(state)
    ma, mb = alice.matrix, bob.matrix

    if shots is None:
        a, b, t = bloch_components(rho)
        return CorrelationData(ma.T @ a, mb.T @ b, ma.T @ t @ mb, None)

    if int(shots) < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    shots = int(shots)
    t = np.empty((3, 3))
    a_sum = np.zeros(3)
    b_sum = np.zeros(3)
    for j in range(3):
        for k in range(3):
            rng = np.random.default_rng([seed, j, k])
            pp, pm, mp, mm = _sample_setting(rho, ma[:, j], mb[:, k], shots, rng)
            t[j, k] = (pp + mm - pm - mp) / shots
            a_sum[j] += pp + pm - mp - mm
            b_sum[k] += pp + mp - pm - mm
    return CorrelationData(a_sum / (3 * shots), b_sum / (3 * shots), t, shots)


def reconstruct(c: CorrelationData) -> np.ndarray:
    """Assemble ``(1 + a.s x 1 + 1 x b.s + t_jk s_j x s_k) / 4``."""
    s = pauli_vector()
    rho = np.eye(4, dtype=complex)
    for j in range(3):
        rho += c.a[j] * kron(s[j], I2) + c.b[j] * kron(I2, s[j])
        for k in range(3):
            rho += c.t[j, k] * kron(s[j], s[k])
    return rho / 4


def mirrored_form(state) -> np.ndarray:
    """The matrix a point-reflected Bob would assemble from ``state``.

    Keeps Alice's Bloch vector and flips the sign of Bob's Bloch vector and
    of every two-site correlation.
    """
    rho = _two_qubit_state(state)
    a, b, t = bloch_components(rho)
    return reconstruct(CorrelationData(a, -b, -t))


def min_pt_eigenvalue(state) -> float:
    """Smallest eigenvalue of the partial transpose on qubit B."""
    return float(linalg.hermitian_eig(linalg.partial_transpose(state, "B")).eigenvalues[0])


def peres_verdict(state) -> Verdict:
    """Peres-Horodecki test, exact for two qubits."""
    rho = _two_qubit_state(state)
    if min_pt_eigenvalue(rho) < NPT_THRESHOLD:
        return Verdict.ENTANGLED
    return Verdict.SEPARABLE
