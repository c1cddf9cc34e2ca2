"""Exact matrices as numpy object arrays of :class:`fractions.Fraction`."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from thetalg.config import DEFAULT_TOLERANCES

# An n x n numpy array with dtype=object holding Fraction (or int) entries.
RationalMatrix = np.ndarray


class DenominatorOverflow(ArithmeticError):
    """A rational entry grew past the configured denominator bit cap."""


def to_rational(m) -> RationalMatrix:
    """Copy ``m`` into an object array of Fractions.

    Floats are converted exactly (binary value), so only pass floats when that is
    what you mean.
    """
    a = np.asarray(m)
    if a.dtype != object:
        a = a.astype(object)  # numpy scalars -> Python int/float
    out = np.empty(a.shape, dtype=object)
    for idx, x in np.ndenumerate(a):
        out[idx] = x if isinstance(x, Fraction) else Fraction(x)
    return out


def is_exact(m) -> bool:
    a = np.asarray(m)
    return a.dtype == object or np.issubdtype(a.dtype, np.integer) or a.dtype == bool


def inner(m, n):
    """Trace inner product <M, N> = tr(M N^T) for real matrices."""
    return np.sum(np.multiply(m, n))


def is_zero(m) -> bool:
    return not np.any(np.asarray(m) != 0)


def check_denominators(m: RationalMatrix, cap_bits: int | None = None) -> None:
    cap_bits = DEFAULT_TOLERANCES.denominator_bits if cap_bits is None else cap_bits
    for x in np.asarray(m).flat:
        if isinstance(x, Fraction) and x.denominator.bit_length() > cap_bits:
            raise DenominatorOverflow(
                f"denominator of {x.denominator.bit_length()} bits exceeds cap of {cap_bits} bits"
            )


def orthogonalize(m: RationalMatrix, basis: Sequence[RationalMatrix], norms: Sequence) -> RationalMatrix:
    """Remove from ``m`` its components along the pairwise-orthogonal ``basis``."""
    r = m
    for p, pp in zip(basis, norms):
        c = Fraction(inner(m, p)) / pp
        if c:
            r = r - c * p
    return r


def gram_schmidt(mats: Sequence, cap_bits: int | None = None) -> list[RationalMatrix]:
    """Exact Gram-Schmidt without normalization.

    Dependent inputs (zero residual) are dropped; the first nonzero input comes back
    unchanged.
    """
    if len(mats) == 0:
        raise ValueError("gram_schmidt needs at least one matrix")
    shape = np.shape(mats[0])
    out: list[RationalMatrix] = []
    norms: list = []
    for m in mats:
        m = to_rational(m)
        if m.shape != shape:
            raise ValueError(f"shape mismatch: {m.shape} vs {shape}")
        r = orthogonalize(m, out, norms)
        if is_zero(r):
            continue
        check_denominators(r, cap_bits)
        out.append(r)
        norms.append(Fraction(inner(r, r)))
    return out
