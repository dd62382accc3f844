"""Random states, rotations and frames for property checks."""
from __future__ import annotations

import numpy as np

from . import linalg
from .tomography import Frame


def unit_vector(rng: np.random.Generator, dim: int = 3) -> np.ndarray:
    v = rng.normal(size=dim)
    return v / np.linalg.norm(v)


def axis_angle(rng: np.random.Generator) -> tuple[np.ndarray, float]:
    return unit_vector(rng), float(rng.uniform(0, 2 * np.pi))


def rotation(rng: np.random.Generator) -> np.ndarray:
    return linalg.so3_from(*axis_angle(rng))


def frame(rng: np.random.Generator, mirror: bool | None = None) -> Frame:
    """Random O(3) frame; ``mirror=None`` picks the chirality at random."""
    if mirror is None:
        mirror = bool(rng.integers(2))
    return Frame.from_rotation(*axis_angle(rng), mirror=mirror)


def pure_state(rng: np.random.Generator, dim: int) -> np.ndarray:
    psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return psi / np.linalg.norm(psi)


def density_matrix(rng: np.random.Generator, dim: int = 4, rank: int | None = None) -> np.ndarray:
    """Ginibre-distributed density matrix (full rank unless ``rank`` given)."""
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def entangled_pure(rng: np.random.Generator, min_schmidt: float = 0.05) -> np.ndarray:
    """Random two-qubit pure state whose smaller Schmidt coefficient is >= ``min_schmidt``."""
    while True:
        psi = pure_state(rng, 4)
        if np.linalg.svd(psi.reshape(2, 2), compute_uv=False)[-1] >= min_schmidt:
            return linalg.projector(psi)


def separable_mixture(rng: np.random.Generator, terms: int = 10) -> np.ndarray:
    """Convex mixture of random pure product states."""
    weights = rng.dirichlet(np.ones(terms))
    rho = np.zeros((4, 4), dtype=complex)
    for w in weights:
        rho += w * linalg.projector(np.kron(pure_state(rng, 2), pure_state(rng, 2)))
    return rho


def logical_qubit_amplitudes(rng: np.random.Generator) -> tuple[complex, complex]:
    c0, c1 = pure_state(rng, 2)
    return complex(c0), complex(c1)
