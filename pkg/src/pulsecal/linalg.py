"""Small dense complex linear algebra helpers.

Everything here operates on explicit numpy arrays; Hilbert-space
dimensions in this package are 2 or 4, so no sparsity or blocking is
worth the complexity.
"""

from __future__ import annotations

import numpy as np

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def expm_hermitian(h: np.ndarray) -> np.ndarray:
    """exp(-i*h) for Hermitian h, via eigendecomposition.

    For the 2x2/4x4 Hermitian matrices used throughout, eigh is both
    faster and more accurate than a general matrix exponential.
    """
    w, q = np.linalg.eigh(h)
    return (q * np.exp(-1j * w)) @ q.conj().T


def is_unitary(u: np.ndarray, tol: float = 1e-10) -> bool:
    n = u.shape[0]
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(n))) < tol)


def gate_infidelity(u: np.ndarray, v: np.ndarray, dim: int) -> float:
    """1 - |Tr(v^dag u)|^2 / dim^2, insensitive to global phase.

    Zero iff u and v agree up to a phase; at most 1 for unitaries.
    Clipped into [0, 1] to absorb rounding at the endpoints.
    """
    tr = np.trace(v.conj().T @ u)
    return float(np.clip(1.0 - (tr.real**2 + tr.imag**2) / dim**2, 0.0, 1.0))
