"""Dense ADMM conic solver and the Lovász / Schrijver / Szegedy theta programs.

The solver handles problems of the form

    maximize <C, X>  s.t.  <A_i, X> = b_i,  X_uv {= 0, <= 0, >= 0} on listed cells,  X psd

where the sign-constrained cells and the supports of the A_i are disjoint. Under
that restriction the projection onto the affine/sign set is closed form, so each
iteration costs one symmetric eigendecomposition.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from thetalg.config import DEFAULT_TOLERANCES, Tolerances
from thetalg.graphs import Graph, complement
from thetalg.numla import psd_project

__all__ = [
    "ConicProblem",
    "ThetaResult",
    "VARIANTS",
    "theta_problem",
    "solve_conic",
    "solve_theta",
]

VARIANTS = ("lovasz", "schrijver", "szegedy")
SENSES = ("eq", "le", "ge")


@dataclass
class ConicProblem:
    objective: np.ndarray
    equalities: list = field(default_factory=list)  # [(A_i, b_i)]
    cells: list = field(default_factory=list)  # [(u, v, sense)] with u <= v

    def __post_init__(self):
        self.objective = _checked_sym(self.objective, "objective")
        n = self.n
        self.equalities = [(_checked_sym(a, "constraint"), float(b)) for a, b in self.equalities]
        for a, _ in self.equalities:
            if a.shape != (n, n):
                raise ValueError("constraint matrix has wrong size")
        seen = set()
        for u, v, sense in self.cells:
            if not 0 <= u <= v < n:
                raise ValueError(f"cell {(u, v)} must satisfy 0 <= u <= v < n")
            if sense not in SENSES:
                raise ValueError(f"unknown cell sense {sense!r}")
            if (u, v) in seen:
                raise ValueError(f"duplicate cell {(u, v)}")
            seen.add((u, v))

    @property
    def n(self) -> int:
        return self.objective.shape[0]

    def count(self, sense: str) -> int:
        return sum(1 for *_, s in self.cells if s == sense)


def _checked_sym(m, what: str) -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{what} must be square")
    if not np.array_equal(a, a.T):
        raise ValueError(f"{what} must be symmetric")
    return a.copy()


@dataclass
class ThetaResult:
    value: float
    X: np.ndarray
    variant: str
    residuals: tuple  # (primal, dual, gap)
    iterations: int
    converged: bool
    sign_violation: float = 0.0
    dual_value: float = math.nan
    state: tuple | None = field(default=None, repr=False)

    def to_dict(self, include_matrix: bool = True) -> dict:
        d = {
            "variant": self.variant,
            "value": self.value,
            "dual_value": self.dual_value,
            "residuals": {
                "primal": self.residuals[0],
                "dual": self.residuals[1],
                "gap": self.residuals[2],
            },
            "sign_violation": self.sign_violation,
            "iterations": self.iterations,
            "converged": self.converged,
        }
        if include_matrix:
            d["X"] = self.X.tolist()
        return d


# theta programs -----------------------------------------------------------------

def theta_problem(g: Graph, variant: str) -> ConicProblem:
    """Data of the theta SDP: maximize <J, X> with tr X = 1 and variant-specific cells."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown theta variant {variant!r}")
    n = g.n
    cells = []
    if variant == "szegedy":
        cells = [(u, v, "le") for u, v in sorted(g.edges)]
    else:
        cells = [(u, v, "eq") for u, v in sorted(g.edges)]
        if variant == "schrijver":
            cells += [(u, v, "ge") for u in range(n) for v in range(u + 1, n) if (u, v) not in g.edges]
    return ConicProblem(np.ones((n, n)), [(np.eye(n), 1.0)], cells)


# solver ----------------------------------------------------------------------------

class _ConstraintSet:
    """Closed-form Euclidean projection onto the affine/sign set of a problem."""

    def __init__(self, p: ConicProblem):
        n = p.n
        cu = np.array([c[0] for c in p.cells], dtype=np.int64)
        cv = np.array([c[1] for c in p.cells], dtype=np.int64)
        sense = [c[2] for c in p.cells]
        self.n = n
        self.eq = (cu[[s == "eq" for s in sense]], cv[[s == "eq" for s in sense]]) if p.cells else (cu, cv)
        self.le = (cu[[s == "le" for s in sense]], cv[[s == "le" for s in sense]]) if p.cells else (cu, cv)
        self.ge = (cu[[s == "ge" for s in sense]], cv[[s == "ge" for s in sense]]) if p.cells else (cu, cv)

        support = np.zeros((n, n), dtype=bool)
        for a, _ in p.equalities:
            support |= a != 0
        iu, ju = np.nonzero(np.triu(support))
        cell_mask = np.zeros((n, n), dtype=bool)
        cell_mask[cu, cv] = cell_mask[cv, cu] = True
        if np.any(cell_mask[iu, ju]):
            raise ValueError("sign-constrained cells overlap the support of an equality constraint")
        self.iu, self.ju = iu, ju
        self.w = np.where(iu == ju, 1.0, math.sqrt(2.0))
        self.b = np.array([b for _, b in p.equalities], dtype=float)
        if p.equalities:
            self.B = np.array([a[iu, ju] * self.w for a, _ in p.equalities])
            self.BBp = np.linalg.pinv(self.B @ self.B.T)
        else:
            self.B = np.zeros((0, iu.size))
            self.BBp = np.zeros((0, 0))
        self.trace_bound = self._trace_bound(p)

    def _trace_bound(self, p: ConicProblem) -> float | None:
        # tr X is fixed when I lies in the span of the equality matrices
        if not p.equalities:
            return None
        idv = np.where(self.iu == self.ju, 1.0, 0.0)
        kappa, *_ = np.linalg.lstsq(self.B.T, idv, rcond=None)
        if np.linalg.norm(self.B.T @ kappa - idv) > 1e-12 * (1 + np.linalg.norm(idv)):
            return None
        return float(kappa @ self.b)

    def project(self, y: np.ndarray) -> np.ndarray:
        z = y.copy()
        u, v = self.eq
        z[u, v] = z[v, u] = 0.0
        u, v = self.le
        z[u, v] = z[v, u] = np.minimum(y[u, v], 0.0)
        u, v = self.ge
        z[u, v] = z[v, u] = np.maximum(y[u, v], 0.0)
        if self.b.size:
            x = y[self.iu, self.ju] * self.w
            x = x - self.B.T @ (self.BBp @ (self.B @ x - self.b))
            x = x / self.w
            z[self.iu, self.ju] = x
            z[self.ju, self.iu] = x
        return z

    def sign_violation(self, x: np.ndarray) -> float:
        worst = 0.0
        u, v = self.eq
        if u.size:
            worst = max(worst, float(np.max(np.abs(x[u, v]))))
        u, v = self.le
        if u.size:
            worst = max(worst, float(np.max(x[u, v])))
        u, v = self.ge
        if u.size:
            worst = max(worst, float(np.max(-x[u, v])))
        return worst

    def dual_estimate(self, lam: np.ndarray, c: np.ndarray) -> tuple[float, float]:
        """Dual objective bound and psd violation from a multiplier estimate ``lam``.

        ``lam`` is cleaned into the normal-cone structure (span of the A_i on their
        support, sign-respecting values on the cells, zero elsewhere). Weak duality
        then bounds the primal by sum y_i b_i - lambda_min(lam - C) * tr X.
        """
        clean = np.zeros_like(lam)
        u, v = self.eq
        clean[u, v] = clean[v, u] = 0.5 * (lam[u, v] + lam[v, u])
        u, v = self.le
        clean[u, v] = clean[v, u] = np.maximum(0.5 * (lam[u, v] + lam[v, u]), 0.0)
        u, v = self.ge
        clean[u, v] = clean[v, u] = np.minimum(0.5 * (lam[u, v] + lam[v, u]), 0.0)
        value = 0.0
        if self.b.size:
            x = 0.5 * (lam[self.iu, self.ju] + lam[self.ju, self.iu]) * self.w
            y = self.BBp @ (self.B @ x)
            xs = (self.B.T @ y) / self.w
            clean[self.iu, self.ju] = xs
            clean[self.ju, self.iu] = xs
            value = float(y @ self.b)
        clean = 0.5 * (clean + clean.T)
        lmin = float(np.linalg.eigvalsh(clean - c)[0])
        infeas = max(0.0, -lmin)
        if self.trace_bound is not None:
            value += infeas * self.trace_bound
        return value, infeas


def solve_conic(
    p: ConicProblem,
    tol: Tolerances = DEFAULT_TOLERANCES,
    warm_start: tuple | None = None,
    rho: float = 1.0,
    check_every: int = 10,
) -> ThetaResult:
    """Over-relaxed ADMM on the splitting X (psd cone) = Z (affine/sign set).

    Iterates

        X <- Pi_psd(Z - U + C / rho)
        Z <- Pi_set(a X + (1 - a) Z + U)
        U <- U + a X + (1 - a) Z_old - Z

    with relaxation ``a = tol.relax`` and residual-balanced ``rho``. The reported
    value is <C, X> for the psd iterate; ``rho * U`` is the dual multiplier.
    Hitting ``tol.max_iters`` returns the last iterate with ``converged=False``.
    """
    n = p.n
    c = p.objective
    cs = _ConstraintSet(p)
    alpha = tol.relax
    if warm_start is not None:
        z, u, rho = (np.array(w, dtype=float) if i < 2 else float(w) for i, w in enumerate(warm_start))
        z = cs.project(z)
    else:
        z = cs.project(np.eye(n) / n)
        u = np.zeros((n, n))
    x = z.copy()
    x_prev = x
    it = 0
    primal = dual_res = gap = math.inf
    sign = math.inf
    value = dual_value = math.nan
    converged = False
    while it < tol.max_iters:
        it += 1
        x = psd_project(z - u + c / rho)
        xh = alpha * x + (1.0 - alpha) * z
        z_old = z
        z = cs.project(xh + u)
        u = u + xh - z
        if not np.all(np.isfinite(u)):
            raise FloatingPointError("non-finite iterate in conic solver")

        if it % check_every == 0:
            r = np.linalg.norm(x - z)
            s = rho * np.linalg.norm(z - z_old)
            step = np.linalg.norm(x - x_prev)
            primal = float(np.linalg.norm(x - cs.project(x)))
            sign = cs.sign_violation(x)
            value = float(np.sum(c * x))
            if primal <= tol.primal and sign <= tol.sign and step <= tol.step:
                dual_value, dual_res = cs.dual_estimate(rho * u, c)
                gap = abs(dual_value - value)
                if gap <= tol.gap * (1.0 + abs(value)):
                    converged = True
                    break
            if it % (5 * check_every) == 0:
                if r > 10.0 * s:
                    rho *= 2.0
                    u /= 2.0
                elif s > 10.0 * r:
                    rho /= 2.0
                    u *= 2.0
        if it % check_every == check_every - 1:
            x_prev = x

    if not converged:
        primal = float(np.linalg.norm(x - cs.project(x)))
        sign = cs.sign_violation(x)
        value = float(np.sum(c * x))
        dual_value, dual_res = cs.dual_estimate(rho * u, c)
        gap = abs(dual_value - value)
    return ThetaResult(
        value=value,
        X=x,
        variant="conic",
        residuals=(primal, dual_res, gap),
        iterations=it,
        converged=converged,
        sign_violation=sign,
        dual_value=dual_value,
        state=(z, u, rho),
    )


def solve_theta(
    g: Graph,
    variant: str = "lovasz",
    tol: Tolerances = DEFAULT_TOLERANCES,
    warm_start: ThetaResult | None = None,
) -> ThetaResult:
    """Lovász (``lovasz``), Schrijver (``schrijver``) or Szegedy (``szegedy``) theta of ``g``."""
    if g.n > tol.solver_cap:
        raise ValueError(f"n={g.n} exceeds solver cap {tol.solver_cap}")
    if variant not in VARIANTS:
        raise ValueError(f"unknown theta variant {variant!r}")
    if g.n == 1:
        return ThetaResult(1.0, np.ones((1, 1)), variant, (0.0, 0.0, 0.0), 0, True, 0.0, 1.0)
    ws = warm_start.state if warm_start is not None else None
    res = solve_conic(theta_problem(g, variant), tol, warm_start=ws)
    res.variant = variant
    return res


def solve_theta_family(g: Graph, tol: Tolerances = DEFAULT_TOLERANCES) -> dict:
    """The four values entering the product identities, with warm starts."""
    gc = complement(g)
    th = solve_theta(g, "lovasz", tol)
    thc = solve_theta(gc, "lovasz", tol)
    return {
        "theta": th,
        "theta_bar": thc,
        "theta_minus_bar": solve_theta(gc, "schrijver", tol, warm_start=thc),
        "theta_plus": solve_theta(g, "szegedy", tol, warm_start=th),
    }


def theta_values(g: Graph, variants: Sequence[str] = VARIANTS, tol: Tolerances = DEFAULT_TOLERANCES) -> dict:
    out = {}
    base = None
    for v in variants:
        out[v] = solve_theta(g, v, tol, warm_start=base)
        if v == "lovasz":
            base = out[v]
    return out
