"""Machine checks of the trace bounds, the clique-coclique bound and the theta products.

Two tolerance tiers are used. Integer/Fraction inputs are evaluated exactly and
every comparison has zero slack ("exact"). Float inputs, typically solver
optima, use ``num_tol`` for feasibility and ``eq_tol`` for equality ("float").
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any

import numpy as np
from scipy.sparse.csgraph import connected_components

from thetalg.config import DEFAULT_TOLERANCES, Tolerances
from thetalg.exactalg import (
    AlgebraBasis,
    CoherentConfiguration,
    adjacency_algebra_basis,
    check_coherent_axioms,
    is_one_walk_regular,
    project,
    wl_closure,
)
from thetalg.exactalg.projection import coefficients
from thetalg.exactalg.rational import inner, is_exact, to_rational
from thetalg.graphs import Graph, complement, is_connected
from thetalg import oracle
from thetalg.numla import psd_project
from thetalg.sdp import solve_theta, solve_theta_family

__all__ = [
    "VerificationError",
    "NotApplicable",
    "ConditionFailure",
    "ConditionReport",
    "InequalityReport",
    "GraphStructure",
    "analyze",
    "structure_flags",
    "check_condition",
    "lemma0_check",
    "lemma1_check",
    "lemma2_check",
    "main_bound_check",
    "main_bound_checks",
    "theta_product_check",
    "sandwich_check",
    "random_condition_pair",
    "clique_coclique_pair",
    "ProductReport",
]


class VerificationError(ValueError):
    pass


class NotApplicable(VerificationError):
    """The graph lacks the structure a statement needs."""


class ConditionFailure(VerificationError):
    """(M, N) satisfies neither condition (A) nor condition (B)."""


def _f(x) -> float:
    return float(x)


def _tier(*mats) -> str:
    return "exact" if all(is_exact(m) for m in mats) else "float"


# structure ------------------------------------------------------------------------

@dataclass
class GraphStructure:
    """Lazily computed structural data of one graph."""

    g: Graph
    tol: Tolerances = DEFAULT_TOLERANCES

    @cached_property
    def closure(self) -> CoherentConfiguration:
        return wl_closure(self.g, self.tol.closure_cap)

    @cached_property
    def axioms(self):
        return check_coherent_axioms(self.closure)

    @cached_property
    def basis(self) -> AlgebraBasis:
        return adjacency_algebra_basis(self.g, self.tol.denominator_bits)

    @cached_property
    def walk(self):
        return is_one_walk_regular(self.g, self.basis)

    @cached_property
    def connected(self) -> bool:
        return is_connected(self.g)

    @property
    def homogeneous(self) -> bool:
        return self.closure.identity_index is not None

    def flags(self) -> dict:
        walk = self.walk.is_one_walk_regular
        return {
            "connected": self.connected,
            "homogeneous_coherent": self.homogeneous,
            "one_walk_regular": walk,
            "adjacency_algebra_contains_J": self.basis.contains_J,
            "coherent_theorem": self.homogeneous and self.connected,
            "walkregular_theorem": walk and self.basis.contains_J,
            "corollary": self.homogeneous or (walk and self.connected),
        }


def analyze(g: Graph, tol: Tolerances = DEFAULT_TOLERANCES) -> GraphStructure:
    return GraphStructure(g, tol)


def structure_flags(g: Graph) -> dict:
    return analyze(g).flags()


# conditions ----------------------------------------------------------------------

@dataclass
class ConditionReport:
    condition: str
    holds: bool
    max_violation: float
    witness: tuple | None
    tolerance: float

    def to_dict(self) -> dict:
        return {
            "condition": self.condition,
            "holds": self.holds,
            "max_violation": self.max_violation,
            "witness": None if self.witness is None else list(self.witness),
            "tolerance": self.tolerance,
        }


def check_condition(M, N, g: Graph, which: str, tol: Tolerances = DEFAULT_TOLERANCES) -> ConditionReport:
    """Largest violation of condition A (M∘A = 0, N∘Ā = 0) or
    B (M∘A <= 0, N∘Ā = 0, N∘A >= 0) over the off-diagonal cells of ``g``."""
    if which not in ("A", "B"):
        raise ValueError("condition must be 'A' or 'B'")
    M = np.asarray(M)
    N = np.asarray(N)
    if M.shape != (g.n, g.n) or N.shape != (g.n, g.n):
        raise ValueError(f"matrix sizes {M.shape}, {N.shape} do not match n={g.n}")
    exact = _tier(M, N) == "exact"
    threshold = 0 if exact else tol.num_tol
    worst, witness = 0, None
    for u in range(g.n):
        for v in range(g.n):
            if u == v:
                continue
            if g.has_edge(u, v):
                viol = abs(M[u, v]) if which == "A" else max(M[u, v], 0)
                if which == "B":
                    viol = max(viol, max(-N[u, v], 0))
            else:
                viol = abs(N[u, v])
            if viol > worst:
                worst, witness = viol, (u, v)
    return ConditionReport(which, bool(worst <= threshold), _f(worst), witness, float(threshold))


def _which_condition(M, N, g, tol) -> str:
    for which in ("A", "B"):
        if check_condition(M, N, g, which, tol).holds:
            return which
    raise ConditionFailure("matrices satisfy neither condition (A) nor condition (B)")


# reports -------------------------------------------------------------------------

@dataclass
class InequalityReport:
    statement: str
    lhs: Any
    rhs: Any
    slack: Any
    holds: bool
    equality: bool
    tier: str
    tolerances: dict
    per_term: list = field(default_factory=list)
    hypothesis_ok: bool = True
    certificate: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        d = {
            "statement": self.statement,
            "lhs": _f(self.lhs),
            "rhs": _f(self.rhs),
            "slack": _f(self.slack),
            "holds": self.holds,
            "equality": self.equality,
            "tier": self.tier,
            "tolerances": self.tolerances,
            "per_term": [_f(x) for x in self.per_term],
            "hypothesis_ok": self.hypothesis_ok,
            "certificate": _jsonify(self.certificate),
            "notes": list(self.notes),
        }
        if self.tier == "exact":
            d["exact"] = {"lhs": str(self.lhs), "rhs": str(self.rhs), "slack": str(self.slack)}
        return d


def _jsonify(x):
    if isinstance(x, dict):
        return {k: _jsonify(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonify(v) for v in x]
    if isinstance(x, InequalityReport):
        return x.to_dict()
    if isinstance(x, (Fraction, np.floating)):
        return float(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def _tols(tier: str, tol: Tolerances) -> dict:
    if tier == "exact":
        return {"num_tol": 0.0, "eq_tol": 0.0}
    return {"num_tol": tol.num_tol, "eq_tol": tol.eq_tol}


def _homogeneous_family(b) -> tuple:
    """Basis matrices with the identity first and the squared norms."""
    if isinstance(b, CoherentConfiguration):
        if b.identity_index is None:
            raise NotApplicable("coherent configuration is not homogeneous")
        if not b.is_partition():
            raise ValueError("configuration classes do not partition the cells")
        return b
    if isinstance(b, AlgebraBasis):
        if not np.array_equal(b.basis[0], np.eye(b.n, dtype=np.int64)):
            raise ValueError("basis[0] must be the identity")
        for i in range(b.dim):
            for j in range(i + 1, b.dim):
                if inner(b.basis[i], b.basis[j]) != 0:
                    raise ValueError(f"basis elements {i} and {j} are not orthogonal")
        return b
    raise TypeError("expected an AlgebraBasis or CoherentConfiguration")


def _norms(b) -> list:
    if isinstance(b, CoherentConfiguration):
        return list(b.sizes)
    return list(b.norms)


def _identity_first(seq: list, b) -> list:
    if isinstance(b, CoherentConfiguration) and b.identity_index != 0:
        i = b.identity_index
        return [seq[i]] + seq[:i] + seq[i + 1:]
    return seq


def _inner_products(m, b) -> list:
    """<M, P_i> for every basis element, identity first."""
    exact = is_exact(m)
    coef = coefficients(to_rational(m) if exact else np.asarray(m, dtype=float), b)
    norms = _norms(b)
    return _identity_first([c * (Fraction(pp) if exact else float(pp)) for c, pp in zip(coef, norms)], b)


def lemma1_check(M, N, b, tol: Tolerances = DEFAULT_TOLERANCES) -> InequalityReport:
    """<M', N'> <= (tr M)(tr N)/n when <M,P_i><P_i,N> <= 0 for all i != 0."""
    b = _homogeneous_family(b)
    tier = _tier(M, N)
    exact = tier == "exact"
    n = np.shape(M)[0]
    cm = _inner_products(M, b)
    cn = _inner_products(N, b)
    norms = _identity_first(_norms(b), b)
    if exact:
        lhs = sum(Fraction(x) * y / pp for x, y, pp in zip(cm, cn, norms))
        rhs = Fraction(cm[0]) * cn[0] / n
    else:
        lhs = sum(x * y / pp for x, y, pp in zip(cm, cn, norms))
        rhs = cm[0] * cn[0] / n
    per_term = [x * y for x, y in zip(cm[1:], cn[1:])]
    t = _tols(tier, tol)
    hyp = all(p <= t["num_tol"] for p in per_term)
    slack = rhs - lhs
    notes = [] if hyp else ["hypothesis <M,P_i><P_i,N> <= 0 violated; bound not guaranteed"]
    return InequalityReport(
        statement="<M',N'> <= (tr M)(tr N)/n",
        lhs=lhs,
        rhs=rhs,
        slack=slack,
        holds=bool(slack >= -t["num_tol"]),
        equality=all(abs(p) <= t["eq_tol"] for p in per_term),
        tier=tier,
        tolerances=t,
        per_term=per_term,
        hypothesis_ok=hyp,
        notes=notes,
    )


def _contains_j(b) -> bool:
    if isinstance(b, CoherentConfiguration):
        return b.is_partition()
    return b.contains_J


def lemma2_check(M, N, b, tol: Tolerances = DEFAULT_TOLERANCES) -> InequalityReport:
    """<M', N'> >= (tr JM)(tr JN)/n^2, with equality iff M'N' is a multiple of J."""
    b = _homogeneous_family(b)
    if not _contains_j(b):
        raise NotApplicable("J is not in the algebra; the lower trace bound does not apply")
    tier = _tier(M, N)
    exact = tier == "exact"
    if exact:
        M, N = to_rational(M), to_rational(N)
    else:
        M, N = np.asarray(M, dtype=float), np.asarray(N, dtype=float)
    n = M.shape[0]
    mp, np_ = project(M, b), project(N, b)
    lhs = inner(mp, np_)
    jm, jn = np.sum(M), np.sum(N)
    rhs = jm * jn / (n * n) if not exact else Fraction(jm) * jn / (n * n)
    prod = mp.dot(np_)
    pbar = np.sum(prod) / (n * n) if not exact else Fraction(np.sum(prod)) / (n * n)
    dev = prod - pbar
    res_sq = inner(dev, dev)
    prod_norm = math.sqrt(_f(inner(prod, prod)))
    residual = math.sqrt(_f(res_sq))
    t = _tols(tier, tol)
    equality = res_sq == 0 if exact else residual <= t["eq_tol"] * (1.0 + prod_norm)
    psd_floor = min(float(np.linalg.eigvalsh(np.asarray(x, dtype=float))[0]) for x in (M, N))
    cert = {
        "multiple_of_J": pbar,
        "residual": residual,
        "product_norm": prod_norm,
        "trace": {"M": np.trace(M), "M_proj": np.trace(mp), "N": np.trace(N), "N_proj": np.trace(np_)},
        "trace_J": {"M": jm, "M_proj": np.sum(mp), "N": jn, "N_proj": np.sum(np_)},
        "min_eig_inputs": psd_floor,
    }
    slack = lhs - rhs
    return InequalityReport(
        statement="<M',N'> >= (tr JM)(tr JN)/n^2",
        lhs=lhs,
        rhs=rhs,
        slack=slack,
        holds=bool(slack >= -t["num_tol"]),
        equality=bool(equality),
        tier=tier,
        tolerances=t,
        per_term=[],
        hypothesis_ok=psd_floor >= -max(t["num_tol"], 1e-7),
        certificate=cert,
    )


# main theorem ---------------------------------------------------------------------

STRUCTURES = ("coherent", "walkregular")


def _structure_basis(s: GraphStructure, structure: str):
    if structure == "coherent":
        if not s.homogeneous:
            raise NotApplicable("coherent closure is not homogeneous")
        if not s.connected:
            raise NotApplicable("graph is not connected")
        return s.closure
    if structure == "walkregular":
        if not s.walk.is_one_walk_regular:
            raise NotApplicable("graph is not 1-walk regular")
        if not s.basis.contains_J:
            # the walk-regular statement is silent on connectivity, but the lower
            # trace bound needs J in the adjacency algebra
            raise NotApplicable("1-walk regular but J is not in the adjacency algebra (disconnected)")
        return s.basis
    raise ValueError(f"unknown structure {structure!r}")


def main_bound_check(M, N, g: Graph, structure: str, tol: Tolerances = DEFAULT_TOLERANCES,
                     analysis: GraphStructure | None = None) -> InequalityReport:
    """n >= (tr JM)(tr JN)/((tr M)(tr N)) for a pair satisfying (A) or (B)."""
    s = analyze(g, tol) if analysis is None else analysis
    b = _structure_basis(s, structure)
    which = _which_condition(M, N, g, tol)
    tier = _tier(M, N)
    exact = tier == "exact"
    if exact:
        M, N = to_rational(M), to_rational(N)
    else:
        M, N = np.asarray(M, dtype=float), np.asarray(N, dtype=float)
    trm, trn = np.trace(M), np.trace(N)
    if trm == 0 or trn == 0:
        raise VerificationError("tr M or tr N is zero")
    jm, jn = np.sum(M), np.sum(N)
    ratio = Fraction(jm) * jn / (Fraction(trm) * trn) if exact else jm * jn / (trm * trn)
    l1 = lemma1_check(M, N, b, tol)
    l2 = lemma2_check(M, N, b, tol)
    t = _tols(tier, tol)
    n = g.n
    slack = n - ratio
    holds = slack >= -t["num_tol"] * (1 + n)
    equality = slack == 0 if exact else abs(slack) <= t["eq_tol"]
    return InequalityReport(
        statement="n >= (tr JM)(tr JN)/((tr M)(tr N))",
        lhs=ratio,
        rhs=n,
        slack=slack,
        holds=bool(holds),
        equality=bool(equality),
        tier=tier,
        tolerances=t,
        per_term=l1.per_term,
        hypothesis_ok=l1.hypothesis_ok and l2.hypothesis_ok,
        certificate={
            "structure": structure,
            "condition": which,
            "lemma1": l1,
            "lemma2": l2,
            "equality_certified": l1.equality and l2.equality,
        },
    )


def main_bound_checks(M, N, g: Graph, tol: Tolerances = DEFAULT_TOLERANCES,
                      analysis: GraphStructure | None = None) -> dict:
    """Run :func:`main_bound_check` for every structure the graph has."""
    s = analyze(g, tol) if analysis is None else analysis
    out = {}
    for structure in STRUCTURES:
        try:
            out[structure] = main_bound_check(M, N, g, structure, tol, s)
        except NotApplicable as exc:
            out[structure] = {"applicable": False, "reason": str(exc)}
    return out


def clique_coclique_pair(g: Graph, tol: Tolerances = DEFAULT_TOLERANCES):
    """Integer rank-one pair M = chi_T chi_T^T (max coclique), N = chi_S chi_S^T (max clique)."""
    s = oracle.max_clique(g, tol.clique_cap)
    t = oracle.max_coclique(g, tol.clique_cap)
    xs = np.array(s.characteristic_vector(g.n), dtype=np.int64)
    xt = np.array(t.characteristic_vector(g.n), dtype=np.int64)
    return np.outer(xt, xt), np.outer(xs, xs)


# thetas ------------------------------------------------------------------------------

@dataclass
class ProductReport:
    n: int
    flags: dict
    values: dict
    converged: bool
    tolerance: float
    thetas: dict = field(default_factory=dict, repr=False)

    @property
    def qualifies(self) -> bool:
        return self.flags["corollary"]

    @property
    def products(self) -> dict:
        v = self.values
        return {
            "theta_theta_bar": v["theta"] * v["theta_bar"],
            "theta_minus_bar_theta_plus": v["theta_minus_bar"] * v["theta_plus"],
        }

    @property
    def deviations(self) -> dict:
        return {k: p - self.n for k, p in self.products.items()}

    @property
    def inequality_holds(self) -> bool:
        return all(d >= -self.tolerance for d in self.deviations.values())

    @property
    def equality_holds(self) -> bool:
        return all(abs(d) <= self.tolerance for d in self.deviations.values())

    @property
    def passed(self) -> bool:
        if not self.converged:
            return False
        return self.equality_holds if self.qualifies else self.inequality_holds

    def to_dict(self) -> dict:
        return {
            "check": "theta_products",
            "n": self.n,
            "structure": self.flags,
            "qualifies": self.qualifies,
            "values": self.values,
            "products": self.products,
            "deviations": self.deviations,
            "tolerance": self.tolerance,
            "inequality_holds": self.inequality_holds,
            "equality_asserted": self.qualifies,
            "equality_holds": self.equality_holds,
            "converged": self.converged,
            "solver": {k: r.to_dict(include_matrix=False) for k, r in self.thetas.items()},
            "tier": "float",
            "passed": self.passed,
        }


def theta_product_check(g: Graph, tol: Tolerances = DEFAULT_TOLERANCES,
                        analysis: GraphStructure | None = None) -> ProductReport:
    """theta(G) theta(Ḡ) and theta^-(Ḡ) theta^+(G) against n.

    Equality is asserted only for graphs with a homogeneous coherent closure or
    connected 1-walk regular graphs; for all others only ">= n" is checked.
    """
    s = analyze(g, tol) if analysis is None else analysis
    thetas = solve_theta_family(g, tol)
    return ProductReport(
        n=g.n,
        flags=s.flags(),
        values={k: r.value for k, r in thetas.items()},
        converged=all(r.converged for r in thetas.values()),
        tolerance=tol.product_rel * g.n,
        thetas=thetas,
    )


def sandwich_check(g: Graph, tol: Tolerances = DEFAULT_TOLERANCES, thetas: dict | None = None) -> dict:
    """alpha <= theta^- <= theta <= theta^+ <= chi(Ḡ), each link with slack ``tol.sandwich``."""
    if thetas is None:
        thetas = {v: r for v, r in zip(("schrijver", "lovasz", "szegedy"),
                                       _three_thetas(g, tol))}
    alpha = oracle.max_coclique(g, tol.clique_cap).size
    chi_bar = oracle.chromatic_number(complement(g), tol.chromatic_cap)
    chain = [
        ("alpha", float(alpha)),
        ("theta_minus", thetas["schrijver"].value),
        ("theta", thetas["lovasz"].value),
        ("theta_plus", thetas["szegedy"].value),
        ("chi_complement", float(chi_bar)),
    ]
    links = []
    for (a, x), (b, y) in zip(chain, chain[1:]):
        links.append({"lower": a, "upper": b, "slack": y - x, "holds": x <= y + tol.sandwich})
    return {
        "check": "sandwich",
        "chain": dict(chain),
        "links": links,
        "tolerance": tol.sandwich,
        "converged": all(r.converged for r in thetas.values()),
        "passed": all(link["holds"] for link in links),
        "tier": "float",
    }


def _three_thetas(g, tol):
    base = solve_theta(g, "lovasz", tol)
    return (solve_theta(g, "schrijver", tol, warm_start=base), base,
            solve_theta(g, "szegedy", tol, warm_start=base))


# row and column sums -----------------------------------------------------------------

def _irreducible(a: np.ndarray) -> bool:
    ncomp, _ = connected_components(np.asarray(a != 0, dtype=np.int8), directed=True, connection="strong")
    return ncomp == 1


def lemma0_check(c) -> dict:
    """Exact row/column-sum facts for a homogeneous algebra given by classes or a basis."""
    if isinstance(c, CoherentConfiguration):
        homogeneous = c.identity_index is not None
        mats = list(c.classes)
        zero_one = mats
        j_in = c.is_partition()
    elif isinstance(c, AlgebraBasis):
        homogeneous = all(len({p[i, i] for i in range(c.n)}) == 1 for p in c.basis)
        mats = list(c.basis)
        zero_one = [p for p in mats if all(x in (0, 1) for x in p.flat)]
        j_in = c.contains_J
    else:
        raise TypeError("expected a CoherentConfiguration or AlgebraBasis")
    if not homogeneous:
        return {"check": "lemma0", "applicable": False, "reason": "not homogeneous", "passed": True}
    n = mats[0].shape[0]
    rows, cols = [], []
    a_ok = True
    for p in zero_one:
        r = np.asarray(p, dtype=np.int64).sum(axis=1)
        k = np.asarray(p, dtype=np.int64).sum(axis=0)
        a_ok &= len(set(r.tolist())) == 1 and len(set(k.tolist())) == 1
        rows.append(int(r[0]))
        cols.append(int(k[0]))
    irreducible = [i for i, p in enumerate(zero_one) if _irreducible(np.asarray(p, dtype=np.int64))]
    b_ok = j_in if irreducible else True
    c_ok = True
    if j_in:
        jm = np.ones((n, n), dtype=np.int64)
        for p in mats:
            q = to_rational(p) if np.asarray(p).dtype == object else np.asarray(p, dtype=np.int64)
            if not np.all(q.dot(jm) == jm.dot(q)):
                c_ok = False
    return {
        "check": "lemma0",
        "applicable": True,
        "constant_sums": bool(a_ok),
        "row_sums": rows,
        "column_sums": cols,
        "irreducible_classes": irreducible,
        "J_in_span": bool(j_in),
        "irreducible_implies_J": bool(b_ok),
        "J_central": bool(c_ok),
        "vacuous": {"irreducible_implies_J": not irreducible, "J_central": not j_in},
        "tier": "exact",
        "passed": bool(a_ok and b_ok and c_ok),
    }


# random inputs -------------------------------------------------------------------

def _random_set(nb: list[set[int]], rng: np.random.Generator, clique: bool) -> list[int]:
    order = rng.permutation(len(nb))
    chosen: list[int] = []
    for v in order.tolist():
        if all((w in nb[v]) == clique for w in chosen):
            chosen.append(v)
        if rng.random() < 0.25:
            break
    return chosen


def random_condition_pair(g: Graph, which: str, rng: np.random.Generator,
                          terms: int = 4, method: str = "support", tol: Tolerances = DEFAULT_TOLERANCES):
    """Random psd pair (M, N) satisfying condition ``which`` on ``g``.

    ``support``: sums of rank-one terms supported on cocliques (for M) and cliques
    (for N), plus a positive diagonal; for (B), M also gets edge terms
    (e_u - e_v)(e_u - e_v)^T and N uses nonnegative vectors. ``alternating``:
    alternate psd projection with zeroing/clipping the constrained cells until
    both hold to 1e-9.
    """
    n = g.n
    nb = g.neighbors()
    if method == "alternating":
        M = _alternate(rng.standard_normal((n, n)), g, "M", which)
        N = _alternate(rng.standard_normal((n, n)), g, "N", which)
        return M, N
    M = np.diag(rng.random(n))
    N = np.diag(rng.random(n))
    for _ in range(terms):
        t = _random_set(nb, rng, clique=False)
        v = np.zeros(n)
        v[t] = rng.standard_normal(len(t))
        M += np.outer(v, v)
        s = _random_set(nb, rng, clique=True)
        w = np.zeros(n)
        w[s] = rng.random(len(s)) if which == "B" else rng.standard_normal(len(s))
        N += np.outer(w, w)
    if which == "B":
        for u, v in sorted(g.edges):
            if rng.random() < 0.5:
                e = np.zeros(n)
                e[u], e[v] = 1.0, -1.0
                M += rng.random() * np.outer(e, e)
    return M, N


def _alternate(seed: np.ndarray, g: Graph, role: str, which: str, max_rounds: int = 10_000) -> np.ndarray:
    a = g.adjacency().astype(bool)
    abar = ~a & ~np.eye(g.n, dtype=bool)
    x = seed @ seed.T / g.n + np.eye(g.n)

    def clip(y):
        y = y.copy()
        if role == "M":
            y[a] = 0.0 if which == "A" else np.minimum(y[a], 0.0)
        else:
            y[abar] = 0.0
            if which == "B":
                y[a] = np.maximum(y[a], 0.0)
        return y

    for _ in range(max_rounds):
        x = psd_project(clip(x))
        c = clip(x)
        if np.max(np.abs(x - c)) <= 1e-9:
            return x
    raise ArithmeticError("alternating projections did not reach 1e-9")
