import json

import pytest

from baxops.operads import (LEFT, RIGHT, OperadPresentation, TooLarge, TreeMonomial, catalan, dims,
                            enumerate_shapes, format_series, free_dim, generating_series, graft,
                            ideal_component, parse_relation, preset, preset_names, presentation_from_json,
                            presentation_to_json)
from oracles import operad_dims

# sequences computed here and confirmed by the brute-force oracle in tests/oracles.py
FROZEN = {
    "As": [1, 1, 1, 1],
    "magma": [1, 1, 2, 5],
    "magma(2)": [1, 2, 8, 40],
    "dendriform": [1, 2, 5, 14],
    "L": [1, 2, 7, 30],
    "dipterous": [1, 2, 6, 22],
    "L-dipterous": [1, 2, 5, 14],
    "anti-dipterous": [1, 2, 6, 22],
    "AL": [1, 2, 5, 14],
    "dialgebra": [1, 2, 3, 4],
    "trialgebra": [1, 3, 7, 15],
    "threeop": [1, 3, 12, 55],
    "M": [1, 4, 23, 156],
    "M1": [1, 4, 23, 156],
    "M2": [1, 4, 23, 156],
    "quadri": [1, 4, 23, 156],
    "M4beta": [1, 4, 28, 240],
    "M4gamma": [1, 4, 28, 240],
    "hypercubic(2)": [1, 2, 4, 8],
    "hypercubic(3)": [1, 3, 9, 27],
    "circular(2)": [1, 2, 4, 6],
    "circular(3)": [1, 3, 9, 18],
    "octo": [1, 8, 101, 1544],
}


def test_tree_encoding():
    t = TreeMonomial.left("b", "a")
    assert t.shape == LEFT and t.labels == ("b", "a")
    assert str(t) == "((x a y) b z)"
    assert str(TreeMonomial.right("a", "b")) == "(x a (y b z))"
    assert t.arity == 3
    assert TreeMonomial.from_nested(t.nested()) == t


def test_graft():
    t = TreeMonomial.left("b", "a")
    c = TreeMonomial.generator("c")
    assert str(graft(t, 1, c)) == "(((x c y) a z) b u)"
    assert str(graft(t, 3, c)) == "((x a y) b (z c u))"
    with pytest.raises(IndexError):
        graft(t, 4, c)


def test_shape_counts():
    assert [catalan(n) for n in range(0, 6)] == [1, 1, 2, 5, 14, 42]
    assert [len(enumerate_shapes(n)) for n in range(1, 7)] == [1, 1, 2, 5, 14, 42]
    assert free_dim(8, 3) == 128
    assert free_dim(2, 4) == 40


def test_parse_relation_with_sums():
    r = parse_relation("(x prec y) prec z = x prec (y star z)", ["prec", "succ"], {"star": ["prec", "succ"]})
    assert r == {TreeMonomial(LEFT, ("prec", "prec")): 1, TreeMonomial(RIGHT, ("prec", "prec")): -1,
                 TreeMonomial(RIGHT, ("prec", "succ")): -1}
    with pytest.raises(ValueError):
        parse_relation("(x foo y) prec z = x prec (y prec z)", ["prec"])
    with pytest.raises(ValueError):
        parse_relation("x prec y = z", ["prec"])


def test_relation_counts():
    assert len(preset("octo").relations) == 27
    assert len(preset("quadri").relations) == 9
    assert len(preset("hypercubic(3)").relations) == 9
    assert len(preset("circular(2)").relations) == 4
    assert len(preset("M").relations) == 9


def test_threeop_duplicate_row():
    # the first and fourth displayed relations coincide, so threeop has six independent relations
    p = preset("threeop")
    assert p.relations[0] == p.relations[3]
    assert len(ideal_component(p, 3)) == 7
    assert dims(p, 3).ideal_ranks[2] == 6


def test_unknown_preset():
    with pytest.raises(KeyError):
        preset("nope")
    with pytest.raises(ValueError):
        preset("hypercubic(0)")


@pytest.mark.parametrize("name", sorted(FROZEN))
def test_frozen_dims(name):
    assert dims(preset(name), len(FROZEN[name])).dims == FROZEN[name]


def test_quadri_arity5():
    assert dims(preset("quadri"), 5).dim(5) == 1162


@pytest.mark.parametrize("name", ["dendriform", "dialgebra", "AL", "L-anti-dipterous", "L", "dipterous",
                                  "anti-dipterous", "L-dipterous", "magma(2)", "magma", "As",
                                  "hypercubic(2)", "circular(2)"])
def test_oracle_agreement_two_generators(name):
    p = preset(name)
    assert p.g <= 2
    assert dims(p, 4).dims == operad_dims(list(p.generators), p.sources, p.sums, 4)


@pytest.mark.parametrize("name", ["M", "M1", "M2", "quadri", "threeop", "trialgebra"])
def test_oracle_agreement_larger(name):
    p = preset(name)
    assert dims(p, 4).dims == operad_dims(list(p.generators), p.sources, p.sums, 4)


def test_generating_series():
    r = dims(preset("dendriform"), 4)
    assert generating_series(r) == [0, -1, 2, -5, 14]
    assert format_series(generating_series(r)) == "-x+2x^2-5x^3+14x^4"
    assert format_series(generating_series(dims(preset("As"), 3))) == "-x+x^2-x^3"
    assert format_series(generating_series(dims(preset("octo"), 3))) == "-x+8x^2-101x^3"


def test_modular_ranks_agree():
    r = dims(preset("octo"), 4, modular_check=True, conjectural_from=4)
    assert r.modular_ranks == r.ideal_ranks
    assert r.to_json()["conjectural_arities"] == [4]


def test_ceiling_refusal(monkeypatch):
    with pytest.raises(TooLarge, match="too large"):
        dims(preset("octo"), 9)
    with pytest.raises(TooLarge):
        dims(preset("quadri"), 5, limit=1000)
    monkeypatch.setenv("BAXOPS_MAX_CELLS", "1000")
    with pytest.raises(TooLarge):
        dims(preset("quadri"), 5)


def test_max_arity_validation():
    with pytest.raises(ValueError):
        dims(preset("As"), 0)


@pytest.mark.parametrize("name", sorted(set(FROZEN) | {"L-anti-dipterous", "associative"}))
def test_presentation_json_round_trip(name):
    p = preset(name)
    doc = presentation_to_json(p)
    back = presentation_from_json(json.loads(json.dumps(doc)))
    assert back == p
    assert presentation_to_json(back) == doc


def test_presentation_json_errors():
    good = {"name": "t", "generators": ["a"], "relations": [[{"shape": "L", "ops": ["a", "a"], "coeff": "1"},
                                                             {"shape": "R", "ops": ["a", "a"], "coeff": "-1"}]]}
    assert presentation_from_json(good).g == 1
    for bad in (
        {"generators": ["a"], "relations": []},
        {**good, "relations": [[{"shape": "Q", "ops": ["a", "a"]}]]},
        {**good, "relations": [[{"shape": "L", "ops": ["a", "b"]}]]},
        {**good, "relations": [[{"shape": "L", "ops": ["a", "a"], "coeff": "1"},
                                {"shape": "L", "ops": ["a", "a"], "coeff": "-1"}]]},
    ):
        with pytest.raises(ValueError):
            presentation_from_json(bad)


def test_presentation_validation():
    with pytest.raises(ValueError):
        OperadPresentation("x", ("a", "a"), [])
    with pytest.raises(ValueError):
        OperadPresentation("x", ("a",), [{TreeMonomial.generator("a"): 1}])


def test_opposite_is_involution():
    for name in ("dendriform", "AL", "M", "quadri"):
        p = preset(name)
        assert p.opposite(name=p.name).opposite(name=p.name) == p
        assert dims(p.opposite(), 4).dims == dims(p, 4).dims


def test_preset_names_resolve():
    for n in preset_names():
        preset(n.replace("(n)", "(2)").replace("(g)", "(2)"))
