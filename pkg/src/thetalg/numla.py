"""Dense symmetric float kernels: eigendecomposition and PSD projection."""
from __future__ import annotations

import numpy as np

from thetalg.config import DEFAULT_TOLERANCES, Tolerances

__all__ = ["sym", "eigh", "jacobi_eigh", "psd_project", "min_eig", "frob_inner"]


def sym(m) -> np.ndarray:
    """Float copy of ``m`` made exactly symmetric; rejects non-finite entries."""
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return 0.5 * (a + a.T)


def frob_inner(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.sum(a * b))


def jacobi_eigh(m, tol: Tolerances = DEFAULT_TOLERANCES) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigensolver.

    Sweeps over all (p, q) pairs, zeroing each off-diagonal entry with a plane
    rotation, until the off-diagonal Frobenius norm drops below
    ``tol.jacobi_offdiag * ||m||_F``.
    """
    a = sym(m)
    n = a.shape[0]
    v = np.eye(n)
    scale = np.linalg.norm(a)
    target = tol.jacobi_offdiag * scale
    for _ in range(tol.jacobi_max_sweeps):
        off = np.linalg.norm(a[~np.eye(n, dtype=bool)])
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) if theta != 0 else 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                v[:, p] = c * vp - s * v[:, q]
                v[:, q] = s * vp + c * v[:, q]
    else:
        raise ArithmeticError("Jacobi iteration did not converge")
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def eigh(m, method: str = "lapack", tol: Tolerances = DEFAULT_TOLERANCES) -> tuple[np.ndarray, np.ndarray]:
    """Ascending eigenvalues and orthonormal eigenvectors (columns) of symmetric ``m``."""
    if method == "jacobi":
        return jacobi_eigh(m, tol)
    if method != "lapack":
        raise ValueError(f"unknown eigensolver {method!r}")
    return np.linalg.eigh(sym(m))


def min_eig(m) -> float:
    return float(np.linalg.eigvalsh(sym(m))[0])


def psd_project(m, method: str = "lapack") -> np.ndarray:
    """Frobenius-nearest positive semidefinite matrix: clip negative eigenvalues."""
    w, v = eigh(m, method)
    pos = w > 0
    vp = v[:, pos]
    out = (vp * w[pos]) @ vp.T
    return 0.5 * (out + out.T)
