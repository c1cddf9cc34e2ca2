"""Orthogonal projection onto the span of an orthogonal family of matrices."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from thetalg.exactalg.adjacency import AlgebraBasis
from thetalg.exactalg.coherent import CoherentConfiguration
from thetalg.exactalg.rational import inner, is_exact, to_rational

Basis = Union[AlgebraBasis, CoherentConfiguration, Sequence[np.ndarray]]


def basis_matrices(b: Basis) -> tuple:
    if isinstance(b, AlgebraBasis):
        return b.basis
    if isinstance(b, CoherentConfiguration):
        return b.classes
    return tuple(b)


def coefficients(m, b: Basis) -> list:
    """Expansion coefficients <M, P_i> / <P_i, P_i>; exact for exact ``m``."""
    exact = is_exact(m)
    if isinstance(b, CoherentConfiguration) and b.is_partition():
        sums = class_sums(m, b)
        return [s / size if exact else s / float(size) for s, size in zip(sums, _sizes_checked(b))]
    mats = basis_matrices(b)
    norms = b.norms if isinstance(b, AlgebraBasis) else [inner(p, p) for p in mats]
    if not exact:
        mats = _float_mats(b)
    out = []
    for p, pp in zip(mats, norms):
        if pp == 0:
            raise ValueError("zero matrix in projection basis")
        if exact:
            out.append(Fraction(inner(m, p)) / Fraction(pp))
        else:
            out.append(float(inner(m, p)) / float(pp))
    return out


def _float_mats(b: Basis) -> tuple:
    if isinstance(b, AlgebraBasis):
        return b.float_basis
    return tuple(np.asarray(p, dtype=float) for p in basis_matrices(b))


def _sizes_checked(c: CoherentConfiguration) -> tuple:
    if any(s == 0 for s in c.sizes):
        raise ValueError("zero matrix in projection basis")
    return c.sizes


def class_sums(m, c: CoherentConfiguration) -> list:
    """<M, A_i> for each class: the sum of M over the cells of class i."""
    flat = c.color.ravel()
    k = len(c.classes)
    if is_exact(m):
        sums = [Fraction(0)] * k
        for idx, x in zip(flat.tolist(), np.asarray(m).ravel().tolist()):
            sums[idx] += x
        return sums
    return np.bincount(flat, weights=np.asarray(m, dtype=float).ravel(), minlength=k).tolist()


def project(m, b: Basis) -> np.ndarray:
    """M' = sum_i (<M,P_i>/<P_i,P_i>) P_i over an orthogonal family.

    Integer or Fraction input is projected exactly (object array of Fractions);
    float input gives a float array. Classes of a coherent configuration are
    disjointly supported and hence orthogonal.
    """
    m = np.asarray(m)
    mats = basis_matrices(b)
    if m.shape != np.shape(mats[0]):
        raise ValueError(f"dimension mismatch: {m.shape} vs {np.shape(mats[0])}")
    coef = coefficients(m, b)
    if isinstance(b, CoherentConfiguration) and b.is_partition():
        if is_exact(m):
            return np.array(coef, dtype=object)[b.color]
        return np.asarray(coef, dtype=float)[b.color]
    if is_exact(m):
        out = to_rational(np.zeros(m.shape, dtype=np.int64))
        for c, p in zip(coef, mats):
            if c:
                out = out + c * p
        return out
    out = np.zeros(m.shape, dtype=float)
    for c, p in zip(coef, _float_mats(b)):
        out += c * p
    return out
