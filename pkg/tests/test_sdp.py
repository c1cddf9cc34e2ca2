import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from thetalg.graphs import Graph, complement, named_graph
from thetalg.oracle import chromatic_number, max_clique, max_coclique
from thetalg.sdp import ConicProblem, solve_conic, solve_theta, solve_theta_family, theta_problem, theta_values

from test_graphs import graphs


def _hoffman(g):
    """Ratio bound n * (-lmin) / (d - lmin); tight for edge-transitive regular graphs."""
    w = np.linalg.eigvalsh(g.adjacency().astype(float))
    d = g.degrees()[0]
    return g.n * (-w[0]) / (d - w[0])


def _odd_cycle(n):
    c = math.cos(math.pi / n)
    return n * c / (1 + c)


def _feasible(res, g, variant, tol=1e-6):
    x = res.X
    assert np.linalg.eigvalsh(x)[0] >= -tol
    assert abs(np.trace(x) - 1) <= tol
    for u, v in g.edges:
        if variant == "szegedy":
            assert x[u, v] <= tol
        else:
            assert abs(x[u, v]) <= tol
    if variant == "schrijver":
        for u in range(g.n):
            for v in range(u + 1, g.n):
                if not g.has_edge(u, v):
                    assert x[u, v] >= -tol


def test_theta_problem_shapes():
    p = theta_problem(named_graph("complete", [2]), "lovasz")
    assert p.cells == [(0, 1, "eq")] and len(p.equalities) == 1
    p = theta_problem(named_graph("cycle", [5]), "schrijver")
    assert p.count("eq") == 5 and p.count("ge") == 5
    p = theta_problem(named_graph("empty", [3]), "szegedy")
    assert p.cells == []
    with pytest.raises(ValueError):
        theta_problem(named_graph("cycle", [5]), "shannon")


def test_conic_problem_validation():
    with pytest.raises(ValueError):
        ConicProblem(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        ConicProblem(np.eye(2), cells=[(1, 0, "eq")])
    with pytest.raises(ValueError):
        ConicProblem(np.eye(2), cells=[(0, 1, "eq"), (0, 1, "le")])
    with pytest.raises(ValueError):
        ConicProblem(np.eye(2), cells=[(0, 1, "neq")])
    with pytest.raises(ValueError):
        solve_conic(ConicProblem(np.eye(2), [(np.eye(2), 1.0)], [(0, 0, "ge")]))


@settings(max_examples=10, deadline=None)
@given(st.integers(2, 6), st.integers(0, 2**32 - 1))
def test_trace_only_program_gives_top_eigenvalue(n, seed):
    rng = np.random.default_rng(seed)
    b = rng.standard_normal((n, n))
    c = b + b.T
    res = solve_conic(ConicProblem(c, [(np.eye(n), 1.0)]))
    assert res.converged
    assert res.value == pytest.approx(np.linalg.eigvalsh(c)[-1], abs=1e-5)


@pytest.mark.parametrize("n", [1, 2, 5, 7])
def test_complete_and_empty(n):
    for variant in ("lovasz", "schrijver", "szegedy"):
        # the solver certifies a relative gap of 1e-6 * (1 + value)
        assert solve_theta(named_graph("complete", [n]), variant).value == pytest.approx(1, abs=2e-6)
        res = solve_theta(named_graph("empty", [n]), variant)
        assert res.value == pytest.approx(n, abs=1e-6 * (1 + n))
    res = solve_theta(named_graph("empty", [5]))
    assert np.allclose(res.X, np.ones((5, 5)) / 5, atol=1e-6)


@pytest.mark.parametrize("n", [5, 7, 9, 11])
def test_odd_cycles(n):
    vals = theta_values(named_graph("cycle", [n]))
    for v in vals.values():
        assert v.converged
    assert vals["lovasz"].value == pytest.approx(_odd_cycle(n), abs=1e-5)
    assert vals["schrijver"].value <= vals["lovasz"].value + 1e-6
    assert vals["szegedy"].value >= vals["lovasz"].value - 1e-6


def test_c5_is_sqrt5():
    assert solve_theta(named_graph("cycle", [5])).value == pytest.approx(math.sqrt(5), abs=1e-6)


@pytest.mark.parametrize(
    "name,params",
    [("petersen", []), ("kneser", [6, 2]), ("hypercube", [3]), ("cycle", [8]), ("circulant", [8, 1, 3])],
)
def test_edge_transitive_match_ratio_bound(name, params):
    g = named_graph(name, params)
    res = solve_theta(g)
    assert res.converged
    assert res.value == pytest.approx(_hoffman(g), abs=1e-5)


def test_known_values():
    pet = named_graph("petersen")
    assert solve_theta(pet, "lovasz").value == pytest.approx(4, abs=1e-4)
    assert solve_theta(pet, "schrijver").value == pytest.approx(4, abs=1e-4)
    # Kneser K(6,2): theta = binom(5,1)
    assert solve_theta(named_graph("kneser", [6, 2])).value == pytest.approx(5, abs=1e-5)
    # complement of Petersen is the triangular graph T(5); theta(T5) = 10/4
    assert solve_theta(complement(pet), "szegedy").value == pytest.approx(2.5, abs=1e-3)


@pytest.mark.parametrize("variant", ["lovasz", "schrijver", "szegedy"])
def test_returned_matrix_is_feasible(variant):
    for g in (named_graph("cycle", [7]), named_graph("path", [5]), named_graph("petersen")):
        res = solve_theta(g, variant)
        _feasible(res, g, variant)
        assert res.dual_value >= res.value - 1e-6 * (1 + res.value)
        d = res.to_dict(include_matrix=False)
        assert d["variant"] == variant and "X" not in d


def test_nonconvergence_is_reported():
    from thetalg.config import DEFAULT_TOLERANCES

    res = solve_theta(named_graph("cycle", [7]), tol=DEFAULT_TOLERANCES.with_(max_iters=5))
    assert not res.converged and res.iterations == 5


def test_solver_cap():
    from thetalg.config import DEFAULT_TOLERANCES

    with pytest.raises(ValueError):
        solve_theta(named_graph("cycle", [8]), tol=DEFAULT_TOLERANCES.with_(solver_cap=5))


def test_warm_start_reaches_same_value():
    g = named_graph("circulant", [10, 1, 3])
    cold = solve_theta(g, "szegedy")
    warm = solve_theta(g, "szegedy", warm_start=solve_theta(g, "lovasz"))
    assert warm.value == pytest.approx(cold.value, abs=1e-6)


@settings(max_examples=25, deadline=None)
@given(graphs(max_n=7))
def test_sandwich_and_products(g):
    fam = solve_theta_family(g)
    gc = complement(g)
    th, thb = fam["theta"].value, fam["theta_bar"].value
    tol = 1e-5
    assert fam["theta_minus_bar"].value <= thb + tol
    assert fam["theta_plus"].value >= th - tol
    assert max_coclique(g).size <= th + tol
    assert th <= chromatic_number(gc) + tol
    assert max_clique(g).size <= thb + tol
    # product inequalities hold for every graph
    assert th * thb >= g.n - 1e-4
    assert fam["theta_plus"].value * fam["theta_minus_bar"].value >= g.n - 1e-4


@settings(max_examples=20, deadline=None)
@given(graphs(max_n=7), st.data())
def test_adding_an_edge_does_not_increase_theta(g, data):
    non_edges = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)]
    if not non_edges:
        return
    e = data.draw(st.sampled_from(non_edges))
    h = Graph(g.n, g.edges | {e})
    assert solve_theta(h).value <= solve_theta(g).value + 1e-5
