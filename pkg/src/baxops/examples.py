"""Builders for the example files shipped in baxops/data.

Each shipped file is the dumps() rendering of one document built here, so the files can be
regenerated with `python3 -m baxops.examples DIR` and checked for drift in the tests.
"""
from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

from .formats import (algebra_to_json, counit_to_json, dumps, graph_to_json, presentation_file_to_json,
                      substitutions_to_json)
from .models import (PathAlgebraTrunc, Substitution, WeightedDigraph, casimir_coproduct, chain_graph,
                     circular_m2_pair, circular_m2_prime_pair, delta_lambda, m2_ab, m2_delta0, m2_delta1, matrix_algebra,
                     path_epsilon_coproduct, research_coproduct, sandwich_coproduct)
from .operads import preset

# distinct weights λ_{i,i+1} on the 6-vertex chain
CHAIN_WEIGHTS = (Fraction(2), Fraction(3), Fraction(5), Fraction(7), Fraction(11))


def _m2_main() -> dict:
    m2 = matrix_algebra(2)
    d0 = m2_delta0()
    coops = {
        "Delta0": d0,
        "Delta1": m2_delta1(),
        "Delta0x2": d0.scaled(2, "Delta0x2"),  # scalar multiple: the degenerate L-circular pair
        "DeltaAB1": m2_ab(1, "DeltaAB1"),
        "DeltaAB2": m2_ab(2, "DeltaAB2"),
        "Casimir": casimir_coproduct(2),  # both ε[L] and ε[R]
    }
    return algebra_to_json(m2, coops)


def _m2_lr() -> dict:
    # ε[L] and ε[R] sandwich coproducts built from the idempotent E11; they are entangled
    m2 = matrix_algebra(2)
    e11 = {0: 1}
    return algebra_to_json(m2, {"DL": sandwich_coproduct(m2, e11, e11, "left", "DL"),
                                "DR": sandwich_coproduct(m2, e11, e11, "right", "DR")})


def _m2_rr() -> dict:
    # an ε'[R] coproduct and an ε[R] coproduct that are entangled
    m2 = matrix_algebra(2)
    dx = sandwich_coproduct(m2, {0: 1, 3: 1}, {1: 1, 2: 2}, "right", "DX")
    return algebra_to_json(m2, {"DA": m2_ab(1, "DA"), "DX": dx})


def _m2_circular() -> dict:
    d1, d2 = circular_m2_pair(1, 2)
    p1, p2 = circular_m2_prime_pair(1, 2)
    return algebra_to_json(matrix_algebra(2), {d.name: d for d in (d1, d2, p1, p2)})


def _delta_lambda() -> tuple:
    alg, d, eta = delta_lambda(2, 1)
    d = d.renamed("DeltaLambda")
    return algebra_to_json(alg, {"DeltaLambda": d}), counit_to_json(eta, alg.basis, "right")


def _fork_graph() -> WeightedDigraph:
    # two parallel arcs 1 -> 2, so s x t is not injective
    return WeightedDigraph(("1", "2", "3"), (("1", "2", Fraction(1)), ("1", "2", Fraction(2)),
                                             ("2", "3", Fraction(3))), "fork")


def _chain3_paths() -> dict:
    # paths of length <= 2 in the 3-chain with Δ (ε-type) and Δ_M (ε[R]-type)
    p = PathAlgebraTrunc(chain_graph(3, CHAIN_WEIGHTS[:2]), 2)
    return algebra_to_json(p, {"Delta": path_epsilon_coproduct(p), "DeltaM": research_coproduct(p)})


def example_documents() -> dict:
    """File name -> JSON document."""
    dl, eta = _delta_lambda()
    return {
        "m2_delta0.json": _m2_main(),
        "m2_lr_pair.json": _m2_lr(),
        "m2_rr_pair.json": _m2_rr(),
        "m2_circular.json": _m2_circular(),
        "delta_lambda.json": dl,
        "delta_lambda_counit.json": eta,
        "chain3_paths.json": _chain3_paths(),
        "chain6.json": graph_to_json(chain_graph(6, CHAIN_WEIGHTS)),
        "fork_graph.json": graph_to_json(_fork_graph()),
        "subst_ss.json": substitutions_to_json(["s"], [Substitution("s", "s", "s", Fraction(1))]),
        "al_presentation.json": presentation_file_to_json(preset("AL")),
    }


def write_examples(directory) -> list:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, doc in sorted(example_documents().items()):
        (out / name).write_text(dumps(doc), encoding="utf-8")
        written.append(name)
    return written


if __name__ == "__main__":
    target = sys.argv[1] if len(sys.argv) > 1 else str(Path(__file__).with_name("data"))
    for n in write_examples(target):
        print(n)
