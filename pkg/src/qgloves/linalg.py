"""Dense complex operator algebra.

Matrices and state vectors are plain ``numpy`` arrays of dtype ``complex128``.
Qubit ordering follows the usual left-to-right tensor convention: factor 0 is
the leftmost factor of every Kronecker product, and ``|0>`` is the ``+1``
eigenvector of ``sigma_z``.
"""
from __future__ import annotations

from functools import reduce
from typing import NamedTuple

import numpy as np

from .errors import BadAxis, BadDim, BadState, DimMismatch, NotHermitian

#: Structural tolerance used for Hermiticity, unitarity and norm checks.
ATOL = 1e-10
#: Smallest eigenvalue accepted for a density matrix.
PSD_TOL = 1e-10

_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}
for _m in _PAULI.values():
    _m.setflags(write=False)

AXES = ("x", "y", "z")
I2 = np.eye(2, dtype=complex)
I2.setflags(write=False)


class HermitianEigen(NamedTuple):
    """Spectral decomposition ``m = V diag(w) V^dagger`` with ``w`` ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def pauli(axis: str | int) -> np.ndarray:
    """Return the Pauli matrix for ``axis`` in ``{'x', 'y', 'z'}`` (or 0, 1, 2)."""
    if isinstance(axis, (int, np.integer)):
        if not 0 <= axis < 3:
            raise ValueError(f"axis index must be 0, 1 or 2, got {axis}")
        axis = AXES[axis]
    try:
        return _PAULI[axis.lower()]
    except (KeyError, AttributeError):
        raise ValueError(f"unknown Pauli axis {axis!r}") from None


def pauli_vector() -> np.ndarray:
    """Stack of ``(sigma_x, sigma_y, sigma_z)``, shape ``(3, 2, 2)``."""
    return np.stack([_PAULI[a] for a in AXES])


def sigma_dot(n) -> np.ndarray:
    """``n . sigma`` for a real 3-vector ``n``."""
    n = np.asarray(n, dtype=float)
    return np.tensordot(n, pauli_vector(), axes=1)


def kron(*factors) -> np.ndarray:
    """Kronecker product of one or more matrices (or vectors), left to right."""
    if not factors:
        raise ValueError("kron needs at least one factor")
    return reduce(np.kron, (np.asarray(f, dtype=complex) for f in factors))


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.transpose(m))


def max_abs_diff(a, b) -> float:
    """Max-entry modulus of ``a - b``; the library's notion of matrix closeness."""
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def is_hermitian(m: np.ndarray, tol: float = ATOL) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    scale = max(1.0, float(np.max(np.abs(m))))
    return max_abs_diff(m, dagger(m)) <= tol * scale


def is_unitary(m: np.ndarray, tol: float = ATOL) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return max_abs_diff(dagger(m) @ m, np.eye(m.shape[0])) <= tol


def hermitian_eig(m: np.ndarray) -> HermitianEigen:
    """Eigendecomposition of a Hermitian matrix.

    Eigenvalues are real and ascending; eigenvectors are the orthonormal
    columns of ``eigenvectors``. Within a degenerate eigenspace the basis is
    arbitrary, so compare projectors rather than individual columns.

    Raises
    ------
    NotHermitian
        If ``m`` is not square or deviates from Hermitian by more than the
        structural tolerance.
    """
    m = np.asarray(m, dtype=complex)
    if not is_hermitian(m):
        raise NotHermitian("matrix is not Hermitian within tolerance")
    # symmetrize so round-off in the input cannot leak into the spectrum
    w, v = np.linalg.eigh(0.5 * (m + dagger(m)))
    return HermitianEigen(w, v)


def _check_axis(axis) -> np.ndarray:
    n = np.asarray(axis, dtype=float)
    if n.shape != (3,) or not np.all(np.isfinite(n)):
        raise BadAxis(f"axis must be a finite 3-vector, got {axis!r}")
    if abs(np.linalg.norm(n) - 1.0) > ATOL:
        raise BadAxis(f"axis must have unit length, |axis| = {np.linalg.norm(n)}")
    return n


def rotation_unitary(axis, angle: float) -> np.ndarray:
    """Spin-1/2 rotation ``cos(a/2) I - i sin(a/2) n.sigma``.

    Satisfies ``U sigma_j U^dagger = sum_k R[k, j] sigma_k`` with
    ``R = so3_from(axis, angle)``.
    """
    n = _check_axis(axis)
    return np.cos(angle / 2) * I2 - 1j * np.sin(angle / 2) * sigma_dot(n)


def so3_from(axis, angle: float) -> np.ndarray:
    """Rodrigues rotation matrix about a unit ``axis`` by ``angle`` radians."""
    n = _check_axis(axis)
    k = np.array([[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]])
    return np.eye(3) + np.sin(angle) * k + (1.0 - np.cos(angle)) * (k @ k)


def partial_transpose(rho: np.ndarray, subsystem: str = "B") -> np.ndarray:
    """Transpose one qubit factor of a two-qubit operator.

    ``subsystem`` is ``'A'`` (left factor) or ``'B'`` (right factor).
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise BadDim(f"partial_transpose expects a 4x4 matrix, got {rho.shape}")
    t = rho.reshape(2, 2, 2, 2)  # (row_a, row_b, col_a, col_b)
    if subsystem == "A":
        t = t.transpose(2, 1, 0, 3)
    elif subsystem == "B":
        t = t.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return t.reshape(4, 4).copy()


def check_density(rho, dim: int | None = None) -> np.ndarray:
    """Validate a density matrix and return it as a complex array.

    Raises
    ------
    BadState
        If ``rho`` is not square (of size ``dim`` when given), Hermitian,
        unit-trace and positive semidefinite within tolerance.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise BadState(f"density matrix must be square, got shape {rho.shape}")
    if dim is not None and rho.shape[0] != dim:
        raise BadState(f"expected a {dim}x{dim} density matrix, got {rho.shape}")
    if not is_hermitian(rho):
        raise BadState("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > ATOL:
        raise BadState(f"density matrix trace is {np.trace(rho).real}, not 1")
    if np.linalg.eigvalsh(rho)[0] < -PSD_TOL:
        raise BadState("density matrix has a negative eigenvalue")
    return rho


def expectation(rho: np.ndarray, obs: np.ndarray) -> float:
    """``tr(rho obs)`` for a density matrix and a Hermitian observable."""
    rho = check_density(rho)
    obs = np.asarray(obs, dtype=complex)
    if obs.shape != rho.shape:
        raise DimMismatch(f"state is {rho.shape}, observable is {obs.shape}")
    if not is_hermitian(obs):
        raise NotHermitian("observable is not Hermitian")
    value = np.trace(rho @ obs)
    if abs(value.imag) > ATOL:
        raise NotHermitian(f"expectation has imaginary part {value.imag}")
    return float(value.real)


def ket(*bits: int) -> np.ndarray:
    """Computational-basis qubit ket, e.g. ``ket(0, 1) = |01>``."""
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int("".join(str(b) for b in bits), 2)] = 1.0
    return v


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def normalize(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    nrm = np.linalg.norm(psi)
    if nrm == 0:
        raise BadState("cannot normalize the zero vector")
    return psi / nrm


def singlet() -> np.ndarray:
    """Two-qubit singlet ``(|01> - |10>)/sqrt(2)`` as a state vector."""
    return (ket(0, 1) - ket(1, 0)) / np.sqrt(2)


def singlet_projector() -> np.ndarray:
    return projector(singlet())


def werner(p: float) -> np.ndarray:
    """``p |singlet><singlet| + (1 - p) I/4``."""
    return p * singlet_projector() + (1 - p) * np.eye(4, dtype=complex) / 4
