"""Logical qubits ``c0 |S> + c1 |A>`` and reflection acting on them.

Three logical qubits occupy nine orbital particles, a ``64**3 = 262144``
dimensional physical space. Only vectors are ever formed there; parity is
applied as a diagonal sign pattern.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg
from .chirality import identity_chi
from .errors import BadDim, NotNormalized
from .gloves import THREE_DIM, parity_three, state_A, state_S
from .linalg import kron

PHYSICAL_DIM = THREE_DIM**3

LOGICAL_Z = np.diag([1.0, -1.0]).astype(complex)
LOGICAL_X = np.array([[0, 1], [1, 0]], dtype=complex)


@dataclass(frozen=True)
class LogicalQubit:
    c0: complex
    c1: complex

    def __post_init__(self):
        nrm = abs(self.c0) ** 2 + abs(self.c1) ** 2
        if abs(nrm - 1) > linalg.ATOL:
            raise NotNormalized(f"|c0|^2 + |c1|^2 = {nrm}")

    @property
    def amplitudes(self) -> np.ndarray:
        return np.array([self.c0, self.c1], dtype=complex)


def logical_basis() -> np.ndarray:
    """64 x 2 isometry whose columns are |S> and |A>."""
    return np.column_stack([state_S().vector, state_A().vector])


def encode(q: LogicalQubit) -> np.ndarray:
    return q.c0 * state_S().vector + q.c1 * state_A().vector


def parity_on_logical(q: LogicalQubit) -> LogicalQubit:
    """Reflection is a logical phase flip: ``(c0, c1) -> (c0, -c1)``."""
    return LogicalQubit(q.c0, -q.c1)


def embed(register) -> np.ndarray:
    """Map 8 logical amplitudes over ``{S, A}^3`` into the physical space."""
    r = np.asarray(register, dtype=complex)
    if r.shape != (8,):
        raise BadDim(f"logical register must have 8 amplitudes, got {r.shape}")
    v = logical_basis()
    return np.einsum("ia,jb,kc,abc->ijk", v, v, v, r.reshape(2, 2, 2)).reshape(-1)


@lru_cache(maxsize=None)
def _physical_parity_signs() -> np.ndarray:
    block = np.real(np.diag(parity_three()))
    signs = (block[:, None, None] * block[None, :, None] * block[None, None, :]).reshape(-1)
    signs.setflags(write=False)
    return signs


def physical_parity_signs() -> np.ndarray:
    """Diagonal of the nine-site parity operator, one sign per basis index."""
    return _physical_parity_signs()


def apply_physical_parity(v) -> np.ndarray:
    """Reflect all nine particles of a physical-space vector."""
    v = np.asarray(v, dtype=complex)
    if v.shape != (PHYSICAL_DIM,):
        raise BadDim(f"expected a {PHYSICAL_DIM}-vector, got shape {v.shape}")
    if abs(np.linalg.norm(v) - 1) > linalg.ATOL:
        raise NotNormalized(f"state norm is {np.linalg.norm(v)}")
    return _physical_parity_signs() * v


def logical_parity() -> np.ndarray:
    """``Z x Z x Z``, the reflection restricted to the logical register."""
    return kron(LOGICAL_Z, LOGICAL_Z, LOGICAL_Z)


def conjugation_deviation(u: np.ndarray, chi: np.ndarray | None = None) -> float:
    """``max |u chi u^dagger - chi|`` for an 8 x 8 unitary ``u``."""
    chi = identity_chi().matrix if chi is None else chi
    return linalg.max_abs_diff(u @ chi @ linalg.dagger(u), chi)


def logical_chi_invariance_check() -> float:
    """Deviation of ``chi`` from invariance under logical reflection."""
    z3 = logical_parity()
    return conjugation_deviation(z3)

