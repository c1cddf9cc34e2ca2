"""Central tolerance and size-cap record.

Every report produced by :mod:`thetalg.verify` and the CLI embeds a snapshot
of the record it was computed with.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    # numerical linear algebra
    eig_residual: float = 1e-10
    psd_floor: float = 1e-10
    jacobi_offdiag: float = 1e-12
    jacobi_max_sweeps: int = 100
    # conic solver
    primal: float = 1e-7
    sign: float = 1e-8
    gap: float = 1e-6
    step: float = 1e-9
    max_iters: int = 200_000
    relax: float = 1.6
    # verification (float tier)
    num_tol: float = 1e-8
    eq_tol: float = 1e-4
    product_rel: float = 1e-3
    sandwich: float = 1e-4
    # size caps
    graph6_cap: int = 1000
    closure_cap: int = 256
    solver_cap: int = 40
    clique_cap: int = 30
    chromatic_cap: int = 16
    denominator_bits: int = 2**20

    def with_(self, **changes) -> "Tolerances":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        return asdict(self)


DEFAULT_TOLERANCES = Tolerances()
