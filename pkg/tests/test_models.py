from fractions import Fraction

import pytest

from baxops.algebra import Overflow, check_associativity, check_compat, check_counit
from baxops.convolution import check_baxter
from baxops.examples import CHAIN_WEIGHTS
from baxops.models import (SPECIAL_NAMES, PathAlgebraTrunc, Substitution, WeightedDigraph, WordAlgebraTrunc,
                           build_special_algebras, chain_graph, delta_M, graph_word_algebra, integration_baxter,
                           mn_delta_ab, path_epsilon_coproduct, research_coproduct, research_map,
                           substitution_coproduct, substitution_dynamics)


@pytest.fixture(scope="module")
def chain6():
    return chain_graph(6, CHAIN_WEIGHTS)


def _triangle():
    return WeightedDigraph(("a", "b", "c"), (("a", "b", 2), ("b", "c", Fraction(1, 3)), ("c", "a", 5),
                                             ("b", "a", 7)), "triangle")


def _star():
    return WeightedDigraph(("0", "1", "2", "3"), (("0", "1", 1), ("0", "2", 4), ("0", "3", -2), ("1", "0", 3)), "star")


def test_graph_validation():
    with pytest.raises(ValueError):
        WeightedDigraph(("1",), (("1", "2", 1),))
    with pytest.raises(ValueError):
        WeightedDigraph(("1", "1"), ())
    g = WeightedDigraph(("1", "2"), (("1", "2", 1), ("1", "2", 2)))
    assert not g.is_injective()
    with pytest.raises(ValueError, match="not injective"):
        PathAlgebraTrunc(g, 2)


def test_path_algebra_shape(chain6):
    p = PathAlgebraTrunc(chain6, 4)
    assert p.dim == 20
    assert len(p.product.overflow) == 4
    assert check_associativity(p).passed
    e = {v: p.path((v,)) for v in chain6.vertices}
    assert p.mul_basis(e["1"], e["1"]) == {e["1"]: 1}
    assert p.mul_basis(e["1"], e["2"]) == {}
    a12 = p.path(("1", "2"))
    assert p.mul_basis(e["1"], a12) == {a12: 1}
    assert p.mul_basis(a12, e["2"]) == {a12: 1}
    assert p.mul_basis(a12, e["1"]) == {}


def test_path_coproduct_values():
    g = chain_graph(3, [1, 1])
    p = PathAlgebraTrunc(g, 2)
    d = path_epsilon_coproduct(p)
    e1, e2, e3 = (p.path((v,)) for v in "123")
    assert d.delta[e3] == {}
    assert d.delta[p.path(("1", "2"))] == {(e1, e2): 1}
    assert d.delta[p.path(("1", "2", "3"))] == {(e1, p.path(("2", "3"))): 1, (p.path(("1", "2")), e3): 1}


@pytest.mark.parametrize("N", [2, 3, 4])
def test_path_coproduct_eps_on_chain(chain6, N):
    p = PathAlgebraTrunc(chain6, N)
    rep = check_compat(p, path_epsilon_coproduct(p), "Eps")
    assert rep.passed and rep.checked > 0


@pytest.mark.parametrize("graph", ["chain", "triangle", "star"])
def test_research_map_formula(graph, chain6):
    g = {"chain": chain6, "triangle": _triangle(), "star": _star()}[graph]
    p = PathAlgebraTrunc(g, 3)
    vix = {v: p.path((v,)) for v in g.vertices}
    assert check_compat(p, research_coproduct(p), "EpsR").passed
    for i, path in enumerate(p.paths):
        expected = {}
        for a in g.out_arcs(path[-1]):
            expected[(i, vix[a.dst])] = a.weight
        assert research_map(p, i) == expected


def test_research_map_display(chain6):
    p = PathAlgebraTrunc(chain6, 4)
    alpha = p.path(("1", "2", "3", "4"))
    assert research_map(p, ("1", "2", "3", "4")) == {(alpha, p.path(("5",))): CHAIN_WEIGHTS[3]}
    # a vertex path: λ23·(e2⊗e3)
    assert research_map(p, ("2",)) == {(p.path(("2",)), p.path(("3",))): 3}
    assert research_map(p, ("6",)) == {}


def test_delta_M_word_model(chain6):
    w = graph_word_algebra(chain6, 3)
    right, left = delta_M(chain6, w, "right"), delta_M(chain6, w, "left")
    assert right.delta[w.word("1")] == {(w.word("1"), w.word("2")): CHAIN_WEIGHTS[0]}
    assert check_compat(w, right, "EpsPrimeR").passed
    assert check_compat(w, left, "EpsPrimeL").passed
    single = WeightedDigraph(("v",), ())
    ws = graph_word_algebra(single, 2)
    assert all(not r for r in delta_M(single, ws).delta)
    with pytest.raises(ValueError):
        delta_M(chain6, w, "middle")


def test_substitution_coproduct():
    w = WordAlgebraTrunc(["s"], 3, [("s", "s", "s", 1)])
    d = substitution_coproduct(w)
    assert d.delta[w.word("ss")] == {(w.word("ss"), w.word("s")): 1}
    assert check_compat(w, d, "EpsPrimeR").passed
    assert check_compat(w, substitution_coproduct(w, "left"), "EpsPrimeL").passed


def test_dynamics():
    w = WordAlgebraTrunc(["s"], 4, [Substitution("s", "s", "s", Fraction(1))])
    assert substitution_dynamics(w, "s", 1) == {"ss": 1}
    assert substitution_dynamics(w, "s", 2) == {"sss": 1}
    with pytest.raises(Overflow, match="step 4"):
        substitution_dynamics(w, "s", 4)
    ab = WordAlgebraTrunc(["s", "a", "b"], 3, [("s", "a", "b", "1/2"), ("s", "b", "a", "1/2")])
    assert substitution_dynamics(ab, "s", 1) == {"ab": Fraction(1, 2), "ba": Fraction(1, 2)}
    empty = WordAlgebraTrunc(["s"], 2)
    assert substitution_dynamics(empty, "s", 1) == {}


def test_dynamics_conserves_weight():
    rules = [("a", "a", "b", "1/3"), ("a", "b", "a", "2/3"), ("b", "b", "b", 1)]
    w = WordAlgebraTrunc(["a", "b"], 5, rules)
    assert all(v == 1 for v in w.probability_sums().values())
    for t in range(1, 5):
        assert sum(substitution_dynamics(w, "a", t).values()) == 1


def test_word_algebra_validation():
    with pytest.raises(ValueError):
        WordAlgebraTrunc(["a", "a"], 2)
    with pytest.raises(ValueError):
        WordAlgebraTrunc(["a"], 0)
    with pytest.raises(ValueError):
        WordAlgebraTrunc(["a"], 2, [("a", "a", "z", 1)])


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.parametrize("unital", [False, True])
def test_integration_baxter(n, unital):
    alg, R = integration_baxter(n, unital)
    assert check_baxter(alg, R, "full").passed
    assert alg.dim == (n if unital else n - 1)


def test_integration_values():
    alg, R = integration_baxter(3)
    assert R.cols[0] == {1: Fraction(1, 2)} and R.cols[1] == {}
    with pytest.raises(ValueError):
        integration_baxter(1)


def test_mn_delta_ab():
    with pytest.raises(ValueError):
        mn_delta_ab(3, 1, 1)


@pytest.mark.parametrize("name,params", [("deltaLambda", (2, 0)), ("deltaLambda", (3, -2)), ("m2AB", (1,)),
                                         ("m2Delta0", ()), ("m2Delta1", ()), ("mnDeltaAB", (3, 1, 3)),
                                         ("mnDeltaAB", (4, 2, 3)), ("circularM2", (1, 2)),
                                         ("circularM2prime", (3, -1))])
def test_special_algebras(name, params):
    s = build_special_algebras(name, *params)
    for cname, kind in s.expected.items():
        assert check_compat(s.algebra, s.cooperations[cname], kind).passed
    if s.counit is not None:
        (d,) = s.cooperations.values()
        assert check_counit(s.algebra, d, s.counit).passed
    assert name in SPECIAL_NAMES


def test_special_unknown():
    with pytest.raises(KeyError):
        build_special_algebras("nope")
