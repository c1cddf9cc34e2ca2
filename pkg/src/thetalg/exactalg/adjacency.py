"""Adjacency algebra of a graph and the 1-walk-regularity test.

Gram-Schmidt on I, A, A^2, ... is run in coefficient space: for symmetric A,
<A^i, A^j> = tr A^(i+j), so the orthogonal basis P_k = sum_j c_kj A^j follows
from exact power traces alone. Basis matrices are only formed on demand.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm

import numpy as np

from thetalg.config import DEFAULT_TOLERANCES
from thetalg.exactalg.rational import DenominatorOverflow, inner, to_rational
from thetalg.graphs import Graph


def _int_powers(a: np.ndarray, count: int) -> list[np.ndarray]:
    """I, A, ..., A^(count-1), as int64 when that cannot overflow, else Python ints."""
    n = a.shape[0]
    dmax = int(a.sum(axis=1).max()) if n else 0
    safe = dmax <= 1 or (count - 1) * np.log2(max(dmax, 2)) < 62
    a = a.astype(np.int64 if safe else object)
    out = [np.eye(n, dtype=np.int64).astype(a.dtype)]
    for _ in range(count - 1):
        out.append(out[-1].dot(a))
    return out


@dataclass(frozen=True)
class AlgebraBasis:
    """Pairwise-orthogonal basis of a matrix *-algebra, ``basis[0] == I``.

    Either built from explicit matrices, or (for adjacency algebras) from power
    coefficients ``coeffs[k][j]`` with ``P_k = sum_j coeffs[k][j] A^j``.
    """

    matrices: tuple | None = None
    contains_J: bool = False
    second_is_A: bool = False
    coeffs: tuple | None = None
    powers: tuple | None = field(default=None, repr=False)
    gram_norms: tuple | None = None

    @property
    def dim(self) -> int:
        return len(self.coeffs) if self.coeffs is not None else len(self.matrices)

    @property
    def n(self) -> int:
        return (self.powers or self.matrices)[0].shape[0]

    @cached_property
    def basis(self) -> tuple:
        if self.matrices is not None:
            return tuple(to_rational(m) for m in self.matrices)
        out = []
        for c in self.coeffs:
            den = lcm(*(x.denominator for x in c))
            q = sum(int(x * den) * self.powers[j].astype(object) for j, x in enumerate(c))
            out.append(to_rational(q) / den if den != 1 else to_rational(q))
        return tuple(out)

    @cached_property
    def norms(self) -> tuple:
        if self.gram_norms is not None:
            return self.gram_norms
        return tuple(Fraction(inner(p, p)) for p in self.basis)

    @cached_property
    def float_basis(self) -> tuple:
        return tuple(p.astype(float) for p in self.basis)


@dataclass(frozen=True)
class OneWalkReport:
    is_one_walk_regular: bool
    constants: list = field(default_factory=list)
    failure_witness: tuple | None = None

    def to_dict(self) -> dict:
        return {
            "is_one_walk_regular": self.is_one_walk_regular,
            "constants": [[str(a), str(b)] for a, b in self.constants],
            "failure_witness": None if self.failure_witness is None else list(self.failure_witness),
        }


def adjacency_algebra_basis(g: Graph, cap_bits: int | None = None) -> AlgebraBasis:
    """Orthogonal basis of the algebra generated by A, from Gram-Schmidt on I, A, A^2, ...

    Stops at the first power that depends on the earlier ones; the resulting
    dimension equals the number of distinct eigenvalues of A. ``contains_J`` is
    decided exactly by comparing ||J||^2 with the squared norm of its projection.
    """
    cap_bits = DEFAULT_TOLERANCES.denominator_bits if cap_bits is None else cap_bits
    n = g.n
    powers = _int_powers(g.adjacency(), 2 * n + 1)
    traces = [int(np.trace(p)) for p in powers]
    sums = [int(p.sum()) for p in powers]

    coeffs: list[list[Fraction]] = []
    norms: list[Fraction] = []
    # cross[k][j] = <P_k, A^j> = sum_i c_ki tr A^(i+j)
    cross: list[list[Fraction]] = []
    for k in range(n + 1):
        c = [Fraction(0)] * k + [Fraction(1)]
        for i in range(k):
            # <A^k, P_i> / <P_i, P_i>
            mu = cross[i][k] / norms[i]
            for j, x in enumerate(coeffs[i]):
                c[j] -= mu * x
        row = [sum((x * traces[i + j] for i, x in enumerate(c)), Fraction(0)) for j in range(n + 1)]
        norm = sum((x * row[j] for j, x in enumerate(c)), Fraction(0))
        if norm == 0:
            break
        if max(x.denominator.bit_length() for x in c) > cap_bits:
            raise DenominatorOverflow(f"Gram-Schmidt denominators exceed {cap_bits} bits")
        coeffs.append(c)
        norms.append(norm)
        cross.append(row)

    j_norm = Fraction(n * n)
    j_proj = sum(
        (sum((x * sums[i] for i, x in enumerate(c)), Fraction(0)) ** 2 / pp for c, pp in zip(coeffs, norms)),
        Fraction(0),
    )
    second_is_a = len(coeffs) > 1 and coeffs[1] == [0, 1]
    return AlgebraBasis(
        contains_J=j_proj == j_norm,
        second_is_A=second_is_a,
        coeffs=tuple(tuple(c) for c in coeffs),
        powers=tuple(powers[: len(coeffs)]),
        gram_norms=tuple(norms),
    )


def _int_or_fraction(x: Fraction):
    return x.numerator if x.denominator == 1 else x


def _nonconstant(values: np.ndarray):
    """Index of the first entry differing from entry 0, or None."""
    if values.size == 0:
        return None
    bad = np.nonzero(values != values[0])[0]
    return int(bad[0]) if bad.size else None


def is_one_walk_regular(g: Graph, basis: AlgebraBasis | None = None) -> OneWalkReport:
    """Decide 1-walk regularity from the orthogonal adjacency-algebra basis.

    G is 1-walk regular iff every basis element A_k with k >= 2 vanishes on the
    diagonal and on the edges, and the diagonal of A^2 is constant. Only the first
    ``dim`` powers of A are independent, so this is a finite certificate.
    Constants (a_k, b_k) are the coefficients of I and A when A^k is expanded in
    the basis.
    """
    b = adjacency_algebra_basis(g) if basis is None else basis
    n = g.n
    powers = _int_powers(g.adjacency(), max(b.dim, 3) + 1)
    diag = np.arange(n)
    eu = np.array([u for u, _ in sorted(g.edges)], dtype=np.int64)
    ev = np.array([v for _, v in sorted(g.edges)], dtype=np.int64)

    def masked(p):
        return np.concatenate([p[diag, diag], p[eu, ev]]).astype(object)

    restricted = [masked(p) for p in powers]
    ok = len(set(powers[2][diag, diag].tolist())) == 1
    if ok:
        for c in b.coeffs[2:] if b.coeffs is not None else ():
            den = lcm(*(x.denominator for x in c))
            vals = sum(int(x * den) * restricted[j] for j, x in enumerate(c))
            if np.any(vals != 0):
                ok = False
                break
        if b.coeffs is None:
            mask = np.zeros((n, n), dtype=bool)
            mask[diag, diag] = True
            mask[eu, ev] = mask[ev, eu] = True
            ok = all(not np.any(p[mask] != 0) for p in b.basis[2:])

    tr = [int(np.trace(p)) for p in powers]
    two_m = 2 * g.m
    constants = []
    for k in range(b.dim):
        ak = Fraction(tr[k], n)
        bk = Fraction(int(np.sum(powers[k][eu, ev])) * 2, two_m) if two_m else Fraction(0)
        constants.append((_int_or_fraction(ak), _int_or_fraction(bk)))

    witness = None
    if not ok:
        for k, p in enumerate(powers):
            i = _nonconstant(p[diag, diag])
            if i is not None:
                witness = (k, (i, i))
                break
            i = _nonconstant(p[eu, ev])
            if i is not None:
                witness = (k, (int(eu[i]), int(ev[i])))
                break
    return OneWalkReport(ok, constants, witness)
