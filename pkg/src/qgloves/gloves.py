"""Orbital (l = 0, 1) states that carry handedness: |S>, |A> and the gloves.

Single-particle basis order is ``(l=0, m=0), (l=1, m=-1), (l=1, m=0),
(l=1, m=+1)``. Three-particle vectors live in the 64-dimensional product
space with particle 1 as the leftmost tensor factor. Phases follow
Condon-Shortley.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import NotNormalized, NotRotation
from .linalg import kron

ORBITAL_BASIS = ((0, 0), (1, -1), (1, 0), (1, 1))
SINGLE_DIM = len(ORBITAL_BASIS)
THREE_DIM = SINGLE_DIM**3
HANDEDNESS = ("plus", "minus")

#: overlap a state must reach with a glove to be identified as that glove
DISCRIMINATION_THRESHOLD = 1 - 1e-9


def orbital_index(l: int, m: int) -> int:
    return ORBITAL_BASIS.index((l, m))


@dataclass(frozen=True)
class ThreeParticleState:
    vector: np.ndarray

    def __post_init__(self):
        v = np.array(self.vector, dtype=complex)
        if v.shape != (THREE_DIM,):
            raise ValueError(f"expected a {THREE_DIM}-vector, got shape {v.shape}")
        if abs(np.linalg.norm(v) - 1) > linalg.ATOL:
            raise NotNormalized(f"state norm is {np.linalg.norm(v)}")
        v.setflags(write=False)
        object.__setattr__(self, "vector", v)


@dataclass(frozen=True)
class GloveState:
    state: ThreeParticleState
    handedness: str

    @property
    def vector(self) -> np.ndarray:
        return self.state.vector


def _vec(state) -> np.ndarray:
    if isinstance(state, (ThreeParticleState, GloveState)):
        return state.vector
    return np.asarray(state, dtype=complex)


def parity_single() -> np.ndarray:
    """Point reflection ``Y^l_m -> (-1)^l Y^l_m`` on one particle."""
    return np.diag([(-1.0) ** l for l, _ in ORBITAL_BASIS]).astype(complex)


def parity_three() -> np.ndarray:
    p = parity_single()
    return kron(p, p, p)


def product_state(*labels) -> np.ndarray:
    """Product basis vector for three ``(l, m)`` labels."""
    v = np.zeros(THREE_DIM, dtype=complex)
    i, j, k = (orbital_index(*lm) for lm in labels)
    v[(i * SINGLE_DIM + j) * SINGLE_DIM + k] = 1
    return v


def state_S() -> ThreeParticleState:
    """All three particles in ``Y^0_0``."""
    return ThreeParticleState(product_state((0, 0), (0, 0), (0, 0)))


def state_A() -> ThreeParticleState:
    """Fully antisymmetric combination of ``Y^1_{+1}, Y^1_0, Y^1_{-1}``.

    Each ordering of ``(m=+1, 0, -1)`` over the three particles enters with the
    sign of the permutation that produces it, all scaled by ``1/sqrt(6)``.
    """
    ms = (1, 0, -1)
    v = np.zeros(THREE_DIM, dtype=complex)
    for perm in itertools.permutations(range(3)):
        sign = np.linalg.det(np.eye(3)[list(perm)])
        v += sign * product_state(*((1, ms[p]) for p in perm))
    return ThreeParticleState(v / np.sqrt(6))


def glove(handedness: str) -> GloveState:
    """``(|S> + |A>)/sqrt 2`` for ``'plus'``, ``(|S> - |A>)/sqrt 2`` for ``'minus'``."""
    if handedness not in HANDEDNESS:
        raise ValueError(f"handedness must be 'plus' or 'minus', got {handedness!r}")
    sign = 1 if handedness == "plus" else -1
    v = (state_S().vector + sign * state_A().vector) / np.sqrt(2)
    return GloveState(ThreeParticleState(v), handedness)


def opposite(handedness: str) -> str:
    return "minus" if handedness == "plus" else "plus"


# columns: spherical unit vectors e_{-1}, e_0, e_{+1} in Cartesian coordinates
_SPHERICAL = np.array(
    [
        [1 / np.sqrt(2), 0, -1 / np.sqrt(2)],
        [-1j / np.sqrt(2), 0, -1j / np.sqrt(2)],
        [0, 1, 0],
    ],
    dtype=complex,
)


def wigner_d1(r: np.ndarray) -> np.ndarray:
    """l = 1 Wigner matrix of a rotation, rows/columns ordered ``m = -1, 0, +1``."""
    return linalg.dagger(_SPHERICAL) @ np.asarray(r, dtype=float) @ _SPHERICAL


def rotate_single(r) -> np.ndarray:
    """Action of a rotation on the single-particle space: ``1 (+) D^1(r)``."""
    r = np.asarray(r, dtype=float)
    if r.shape != (3, 3):
        raise NotRotation(f"rotation must be 3x3, got {r.shape}")
    if linalg.max_abs_diff(r.T @ r, np.eye(3)) > linalg.ATOL:
        raise NotRotation("matrix is not orthogonal")
    if abs(np.linalg.det(r) - 1) > linalg.ATOL:
        raise NotRotation("matrix has determinant -1; use parity for reflections")
    d = np.zeros((4, 4), dtype=complex)
    d[0, 0] = 1
    d[1:, 1:] = wigner_d1(r)
    return d


def rotate_three(r) -> np.ndarray:
    d = rotate_single(r)
    return kron(d, d, d)


def glove_overlaps(state) -> dict[str, float]:
    """``|<G+|psi>|^2`` and ``|<G-|psi>|^2``."""
    v = _vec(state)
    return {h: float(abs(np.vdot(glove(h).vector, v)) ** 2) for h in HANDEDNESS}


def discriminate_glove(state, receiver_parity_applied: bool = False) -> str:
    """Identify a glove, returning ``'plus'``, ``'minus'`` or ``'inconclusive'``.

    With ``receiver_parity_applied`` the incoming state is first reflected,
    which is how a receiver of opposite handedness describes it.
    """
    v = _vec(state)
    if abs(np.linalg.norm(v) - 1) > linalg.ATOL:
        raise NotNormalized(f"state norm is {np.linalg.norm(v)}")
    if receiver_parity_applied:
        v = parity_three() @ v
    for h, ov in glove_overlaps(v).items():
        if ov >= DISCRIMINATION_THRESHOLD:
            return h
    return "inconclusive"
