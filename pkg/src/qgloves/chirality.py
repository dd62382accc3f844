"""The three-qubit chirality operator and the rho_plus / rho_minus protocol."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg
from .linalg import kron, pauli_vector
from .tomography import Frame

#: Eigenvalues within this distance of -1, 0 or +1 join that cluster.
CLUSTER_TOL = 1e-6

LABELS = ("plus", "minus")


def levi_civita() -> np.ndarray:
    eps = np.zeros((3, 3, 3))
    for perm in itertools.permutations(range(3)):
        eps[perm] = _perm_sign(perm)
    return eps


def _perm_sign(perm) -> int:
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


def _readonly(m: np.ndarray) -> np.ndarray:
    m.setflags(write=False)
    return m


@dataclass(frozen=True)
class ChiralityOperator:
    """``chi`` in some frame together with its three spectral projectors."""

    matrix: np.ndarray
    proj_plus: np.ndarray
    proj_zero: np.ndarray
    proj_minus: np.ndarray
    frame: Frame

    def projector(self, outcome: int) -> np.ndarray:
        return {1: self.proj_plus, 0: self.proj_zero, -1: self.proj_minus}[outcome]


@dataclass(frozen=True)
class ChiOutcomeDistribution:
    p_plus: float
    p_zero: float
    p_minus: float

    def as_dict(self) -> dict:
        return {"p_plus": self.p_plus, "p_zero": self.p_zero, "p_minus": self.p_minus}


@dataclass(frozen=True)
class ChiOutcomeCounts:
    plus: int
    zero: int
    minus: int
    seed: int

    @property
    def shots(self) -> int:
        return self.plus + self.zero + self.minus

    def as_dict(self) -> dict:
        return {"plus": self.plus, "zero": self.zero, "minus": self.minus, "seed": self.seed}


@dataclass(frozen=True)
class ChiralityState:
    rho: np.ndarray
    label: str

    @property
    def sign(self) -> int:
        return 1 if self.label == "plus" else -1


def chi_matrix(frame: Frame | None = None) -> np.ndarray:
    """``(1/(2 sqrt 3)) sum eps'_jkl s_j x s_k x s_l`` for a lab frame.

    ``eps'`` is the Levi-Civita tensor with each index carried into the lab
    frame, which works out to ``det(M) * eps``.
    """
    m = np.eye(3) if frame is None else frame.matrix
    eps = np.einsum("abc,aj,bk,cl->jkl", levi_civita(), m, m, m)
    s = pauli_vector()
    chi = np.zeros((8, 8), dtype=complex)
    for j, k, l in itertools.product(range(3), repeat=3):
        if abs(eps[j, k, l]) > 1e-15:
            chi += eps[j, k, l] * kron(s[j], s[k], s[l])
    return chi / (2 * np.sqrt(3))


def spectral_projectors(chi: np.ndarray) -> dict[int, np.ndarray]:
    """Projectors onto the -1, 0 and +1 eigenspaces of ``chi``."""
    w, v = linalg.hermitian_eig(chi)
    out = {}
    assigned = np.zeros(len(w), dtype=bool)
    for target in (-1, 0, 1):
        mask = np.abs(w - target) <= CLUSTER_TOL
        assigned |= mask
        cols = v[:, mask]
        out[target] = cols @ linalg.dagger(cols)
    if not assigned.all():
        raise ValueError(f"eigenvalues {w[~assigned]} do not cluster at -1, 0, +1")
    return out


def build_chi(frame: Frame | None = None) -> ChiralityOperator:
    frame = Frame.identity() if frame is None else frame
    chi = chi_matrix(frame)
    p = spectral_projectors(chi)
    return ChiralityOperator(
        _readonly(chi), _readonly(p[1]), _readonly(p[0]), _readonly(p[-1]), frame
    )


@lru_cache(maxsize=None)
def identity_chi() -> ChiralityOperator:
    return build_chi(Frame.identity())


def rho_state(label: str) -> ChiralityState:
    """``chi_plus / 2`` or ``chi_minus / 2`` of the identity-frame operator."""
    if label not in LABELS:
        raise ValueError(f"label must be 'plus' or 'minus', got {label!r}")
    chi = identity_chi()
    proj = chi.proj_plus if label == "plus" else chi.proj_minus
    return ChiralityState(_readonly(proj / 2), label)


def measure_chi(state, bob: Frame | None = None, shots: int | None = None, seed: int = 0):
    """Measure ``chi`` as defined in Bob's frame.

    Returns a :class:`ChiOutcomeDistribution` in exact mode (``shots=None``)
    and :class:`ChiOutcomeCounts` otherwise.
    """
    if isinstance(state, ChiralityState):
        state = state.rho
    rho = linalg.check_density(state, dim=8)
    chi = build_chi(bob)
    probs = np.array([np.trace(rho @ chi.projector(o)).real for o in (1, 0, -1)])
    probs = np.clip(probs, 0.0, 1.0)
    probs /= probs.sum()
    if shots is None:
        return ChiOutcomeDistribution(*map(float, probs))
    if int(shots) < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    counts = np.random.default_rng(seed).multinomial(int(shots), probs)
    return ChiOutcomeCounts(*map(int, counts), seed=seed)


def global_rotation(axis, angle: float) -> np.ndarray:
    u = linalg.rotation_unitary(axis, angle)
    return kron(u, u, u)


def check_global_rotation_invariance(state, axis, angle: float) -> float:
    """``max |U3 rho U3^dagger - rho|`` with ``U3 = U x U x U``."""
    if isinstance(state, ChiralityState):
        state = state.rho
    rho = linalg.check_density(state, dim=8)
    u3 = global_rotation(axis, angle)
    return linalg.max_abs_diff(u3 @ rho @ linalg.dagger(u3), rho)


def qubit_permutation(perm) -> np.ndarray:
    """Unitary sending qubit ``i`` of a 3-qubit register to position ``perm[i]``."""
    p = np.zeros((8, 8))
    for bits in itertools.product((0, 1), repeat=3):
        out = [0, 0, 0]
        for i, b in enumerate(bits):
            out[perm[i]] = b
        p[int("".join(map(str, out)), 2), int("".join(map(str, bits)), 2)] = 1
    return p
