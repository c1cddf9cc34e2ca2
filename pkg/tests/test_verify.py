import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from thetalg.exactalg import adjacency_algebra_basis, wl_closure
from thetalg.exactalg.coherent import configuration_from_matrices
from thetalg.graphs import Graph, complement, named_graph
from thetalg.sdp import solve_theta
from thetalg.verify import (
    ConditionFailure,
    NotApplicable,
    VerificationError,
    analyze,
    check_condition,
    clique_coclique_pair,
    lemma0_check,
    lemma1_check,
    lemma2_check,
    main_bound_check,
    main_bound_checks,
    random_condition_pair,
    sandwich_check,
    theta_product_check,
)

from corpus import suite
from test_graphs import graphs

PET = named_graph("petersen")
TWO_K3 = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


def _I(n):
    return np.eye(n, dtype=np.int64)


def _J(n):
    return np.ones((n, n), dtype=np.int64)


def _theta_pair(g, which="A"):
    if which == "A":
        return solve_theta(g, "lovasz").X, solve_theta(complement(g), "lovasz").X
    return solve_theta(g, "szegedy").X, solve_theta(complement(g), "schrijver").X


# structure flags


def test_structure_flags():
    f = analyze(PET).flags()
    assert f["homogeneous_coherent"] and f["one_walk_regular"] and f["corollary"]
    f = analyze(named_graph("path", [4])).flags()
    assert not f["homogeneous_coherent"] and not f["one_walk_regular"] and not f["corollary"]
    f = analyze(TWO_K3).flags()
    assert f["homogeneous_coherent"] and not f["connected"] and f["one_walk_regular"]
    assert not f["adjacency_algebra_contains_J"] and not f["walkregular_theorem"]


# conditions


def test_condition_examples():
    m, n = clique_coclique_pair(PET)
    assert check_condition(m, n, PET, "A").holds
    assert check_condition(m, n, PET, "B").holds
    rep = check_condition(n, m, PET, "A")
    assert not rep.holds and rep.max_violation == 1 and rep.tolerance == 0
    with pytest.raises(ValueError):
        check_condition(m, n, PET, "C")
    with pytest.raises(ValueError):
        check_condition(_I(3), _I(3), PET, "A")


def test_condition_b_sign_rules():
    g = named_graph("path", [3])
    m = np.array([[1, -1, 0], [-1, 1, 0], [0, 0, 1]])
    n = np.array([[1, 1, 0], [1, 1, 0], [0, 0, 1]])
    assert not check_condition(m, n, g, "A").holds
    assert check_condition(m, n, g, "B").holds
    assert not check_condition(m, -n, g, "B").holds


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=7), st.integers(0, 2**32 - 1), st.sampled_from("AB"))
def test_condition_duality_under_complement(g, seed, which):
    rng = np.random.default_rng(seed)
    m, n = random_condition_pair(g, which, rng)
    assert check_condition(m, n, g, which).holds
    # swapping roles and complementing preserves condition (A)
    if which == "A":
        assert check_condition(n, m, complement(g), "A").holds


# lemma 1


def test_lemma1_examples():
    c = wl_closure(PET)
    r = lemma1_check(_I(10), _I(10), c)
    assert r.tier == "exact" and r.lhs == r.rhs == 10 and r.equality
    m, n = clique_coclique_pair(PET)
    r = lemma1_check(m, n, c)
    assert r.rhs == Fraction(4, 5) and r.lhs == Fraction(4, 5) and r.holds and r.equality
    assert r.hypothesis_ok
    e11 = np.zeros((3, 3), dtype=np.int64)
    e11[0, 0] = 1
    r = lemma1_check(e11, e11, configuration_from_matrices([_I(3), _J(3) - _I(3)]))
    assert r.lhs == Fraction(1, 3) == r.rhs
    assert json.loads(json.dumps(r.to_dict()))["exact"]["lhs"] == "1/3"


def test_lemma1_walk_basis_agrees_with_closure():
    m, n = clique_coclique_pair(PET)
    a = lemma1_check(m, n, wl_closure(PET))
    b = lemma1_check(m, n, adjacency_algebra_basis(PET))
    assert a.lhs == b.lhs and a.rhs == b.rhs


def test_lemma1_reports_violated_hypothesis():
    c = configuration_from_matrices([_I(3), _J(3) - _I(3)])
    r = lemma1_check(_J(3), _J(3), c)
    assert not r.hypothesis_ok and not r.holds and r.notes


def test_lemma1_rejects_non_homogeneous():
    with pytest.raises(NotApplicable):
        lemma1_check(_I(3), _I(3), wl_closure(named_graph("path", [3])))


# lemma 2


def test_lemma2_examples():
    c = wl_closure(PET)
    r = lemma2_check(_J(10), _J(10), c)
    assert r.lhs == r.rhs == 100 and r.equality
    assert r.certificate["multiple_of_J"] == 10
    r = lemma2_check(_I(10), _I(10), c)
    assert r.lhs == 10 and r.rhs == 1 and r.holds and not r.equality
    m, n = clique_coclique_pair(PET)
    r = lemma2_check(m, n, c)
    assert r.lhs == Fraction(4, 5) and r.rhs == Fraction(16, 25)
    with pytest.raises(NotApplicable):
        lemma2_check(_I(6), _I(6), adjacency_algebra_basis(TWO_K3))


@pytest.mark.parametrize("label,g", suite(), ids=[s[0] for s in suite()])
def test_theta_pair_certifies_equality(label, g):
    m, n = _theta_pair(g)
    r = lemma2_check(m, n, analyze(g).closure)
    assert r.tier == "float" and r.equality
    assert r.certificate["residual"] <= 1e-3 * (1 + r.certificate["product_norm"])
    r1 = lemma1_check(m, n, analyze(g).closure)
    assert r1.equality and max(abs(p) for p in r1.per_term) <= 1e-3


# main bound


def test_main_bound_exact_pair():
    m, n = clique_coclique_pair(PET)
    r = main_bound_check(m, n, PET, "coherent")
    assert r.lhs == 8 and r.rhs == 10 and r.holds and not r.equality
    assert r.certificate["condition"] == "A"
    r2 = main_bound_check(m, n, PET, "walkregular")
    assert r2.lhs == r.lhs
    d = json.loads(json.dumps(r.to_dict()))
    assert d["certificate"]["lemma1"]["statement"].startswith("<M',N'>")


@pytest.mark.parametrize("which", ["A", "B"])
@pytest.mark.parametrize("name,params", [("cycle", [5]), ("cycle", [7]), ("petersen", [])])
def test_main_bound_theta_pairs(name, params, which):
    g = named_graph(name, params)
    m, n = _theta_pair(g, which)
    for r in main_bound_checks(m, n, g).values():
        assert r.holds and r.equality
        assert r.certificate["condition"] in ("A", which)
        assert r.certificate["equality_certified"]


def test_main_bound_errors():
    p4 = named_graph("path", [4])
    with pytest.raises(NotApplicable):
        main_bound_check(_I(4), _I(4), p4, "coherent")
    with pytest.raises(NotApplicable):
        main_bound_check(_I(4), _I(4), p4, "walkregular")
    with pytest.raises(NotApplicable):
        main_bound_check(_I(6), _I(6), TWO_K3, "walkregular")
    with pytest.raises(ConditionFailure):
        main_bound_check(_J(10), _J(10), PET, "coherent")
    with pytest.raises(VerificationError):
        main_bound_check(np.zeros((10, 10), dtype=np.int64), _I(10), PET, "coherent")
    with pytest.raises(ValueError):
        main_bound_check(_I(10), _I(10), PET, "association")
    out = main_bound_checks(_I(4), _I(4), p4)
    assert out["coherent"]["applicable"] is False


@pytest.mark.parametrize("label,g", suite(), ids=[s[0] for s in suite()])
@pytest.mark.parametrize("which", ["A", "B"])
def test_random_pairs_satisfy_bounds(label, g, which):
    rng = np.random.default_rng(11)
    s = analyze(g)
    for _ in range(5):
        m, n = random_condition_pair(g, which, rng)
        assert min(np.linalg.eigvalsh(m)[0], np.linalg.eigvalsh(n)[0]) >= -1e-10
        for r in main_bound_checks(m, n, g, analysis=s).values():
            if isinstance(r, dict):
                continue
            assert r.holds and r.hypothesis_ok
            assert r.certificate["lemma1"].slack >= -1e-8
            assert r.certificate["lemma2"].slack >= -1e-8


def test_alternating_pairs():
    rng = np.random.default_rng(3)
    g = named_graph("cycle", [7])
    for which in "AB":
        m, n = random_condition_pair(g, which, rng, method="alternating")
        assert check_condition(m, n, g, which).holds
        assert main_bound_check(m, n, g, "coherent").holds


# lemma 0


def test_lemma0_examples():
    r = lemma0_check(wl_closure(PET))
    assert r["passed"] and r["row_sums"] == [1, 3, 6] and r["column_sums"] == [1, 3, 6]
    assert r["irreducible_classes"] == [1, 2] and r["J_in_span"]
    r = lemma0_check(configuration_from_matrices([_I(5), _J(5) - _I(5)]))
    assert r["passed"] and r["row_sums"] == [1, 4]
    r = lemma0_check(adjacency_algebra_basis(TWO_K3))
    assert r["passed"] and not r["J_in_span"]
    assert r["vacuous"] == {"irreducible_implies_J": True, "J_central": True}
    r = lemma0_check(wl_closure(named_graph("path", [3])))
    assert not r["applicable"]
    with pytest.raises(TypeError):
        lemma0_check([_I(2)])


def test_lemma0_detects_broken_configuration():
    # homogeneous but not coherent: row sums of the second class vary
    b = np.array([[0, 1, 1], [1, 0, 0], [1, 0, 0]])
    c = configuration_from_matrices([_I(3), b, _J(3) - _I(3) - b])
    assert not lemma0_check(c)["constant_sums"]


# theta products and the sandwich


def test_theta_products():
    r = theta_product_check(PET)
    assert r.qualifies and r.passed and r.equality_holds
    assert r.products["theta_theta_bar"] == pytest.approx(10, abs=1e-4)
    r = theta_product_check(named_graph("path", [4]))
    assert not r.qualifies and r.inequality_holds and r.passed
    assert r.to_dict()["check"] == "theta_products"
    json.dumps(r.to_dict())


def test_sandwich():
    r = sandwich_check(named_graph("cycle", [5]))
    assert r["passed"] and r["chain"]["alpha"] == 2 and r["chain"]["chi_complement"] == 3
    assert r["chain"]["theta"] == pytest.approx(5 ** 0.5, abs=1e-5)
    assert len(r["links"]) == 4
