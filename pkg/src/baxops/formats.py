"""JSON documents for algebras, graphs, substitutions, presentations, operators and counits.

Coefficients are written as strings ("3", "-1/2") so that values stay exact.
"""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Mapping

from .algebra import CoOperation, FiniteAlgebra, Operation
from .linalg import LinearMap, SparseVector, accumulate, clean, format_rational, to_rational
from .models import Substitution, WeightedDigraph
from .operads import OperadPresentation, presentation_from_json, presentation_to_json


class InputError(ValueError):
    """A document that does not describe a valid object."""


def load_json(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror or e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None


def dumps(doc) -> str:
    """Deterministic rendering: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def data_path(name: str) -> Path:
    """Path of a shipped example file."""
    return Path(str(resources.files("baxops") / "data" / name))


def shipped_examples() -> list:
    return sorted(p.name for p in Path(str(resources.files("baxops") / "data")).glob("*.json"))


def _coeff(x, where: str):
    if isinstance(x, float):
        raise InputError(f"{where}: coefficients must be exact (string or integer), got {x!r}")
    try:
        return to_rational(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError(f"{where}: bad coefficient {x!r}") from None


def _field(doc: Mapping, key: str, where: str):
    if not isinstance(doc, Mapping) or key not in doc:
        raise InputError(f"{where}: missing field {key!r}")
    return doc[key]


def _label(index: Mapping, label, where: str) -> int:
    if label not in index:
        raise InputError(f"{where}: unknown basis label {label!r}")
    return index[label]


def _terms_in(terms, index: Mapping, where: str) -> SparseVector:
    if not isinstance(terms, list):
        raise InputError(f"{where}: expected a list of terms")
    acc: dict = {}
    for t in terms:
        k = _label(index, _field(t, "basis", where), where)
        accumulate(acc, {k: 1}, _coeff(t.get("coeff", "1"), where))
    return clean(acc)


def _terms_out(vec: Mapping, basis) -> list:
    return [{"basis": basis[k], "coeff": format_rational(vec[k])} for k in sorted(vec)]


# ---------------------------------------------------------------- algebras

def algebra_from_json(doc: Mapping) -> tuple:
    """Returns (FiniteAlgebra, {name: CoOperation})."""
    name = str(_field(doc, "name", "algebra"))
    basis = _field(doc, "basis", "algebra")
    if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis):
        raise InputError("algebra: basis must be a list of strings")
    if len(set(basis)) != len(basis):
        raise InputError("algebra: duplicate basis labels")
    index = {b: i for i, b in enumerate(basis)}
    table = {}
    for k, entry in enumerate(_field(doc, "product", "algebra")):
        where = f"product entry {k + 1}"
        i = _label(index, _field(entry, "left", where), where)
        j = _label(index, _field(entry, "right", where), where)
        if (i, j) in table:
            raise InputError(f"{where}: duplicate product entry for ({basis[i]}, {basis[j]})")
        table[(i, j)] = _terms_in(_field(entry, "result", where), index, where)
    overflow = []
    for k, entry in enumerate(doc.get("overflow", [])):
        where = f"overflow entry {k + 1}"
        pair = (_label(index, _field(entry, "left", where), where), _label(index, _field(entry, "right", where), where))
        if pair in table:
            raise InputError(f"{where}: pair also has a product value")
        overflow.append(pair)
    unit = None
    if doc.get("unit") is not None:
        unit = _terms_in(doc["unit"], index, "unit")
    alg = FiniteAlgebra(name, basis, Operation(len(basis), table, overflow), unit)
    coops = {}
    raw = doc.get("cooperations", {})
    if not isinstance(raw, Mapping):
        raise InputError("cooperations must map names to lists of rows")
    for cname in sorted(raw):
        rows = [dict() for _ in basis]
        seen = set()
        for k, row in enumerate(raw[cname]):
            where = f"co-operation {cname!r} row {k + 1}"
            i = _label(index, _field(row, "on", where), where)
            if i in seen:
                raise InputError(f"{where}: duplicate row for {basis[i]!r}")
            seen.add(i)
            for t in _field(row, "terms", where):
                key = (_label(index, _field(t, "left", where), where), _label(index, _field(t, "right", where), where))
                accumulate(rows[i], {key: 1}, _coeff(t.get("coeff", "1"), where))
        coops[cname] = CoOperation(cname, len(basis), [clean(r) for r in rows])
    return alg, coops


def algebra_to_json(alg: FiniteAlgebra, cooperations: Mapping | None = None) -> dict:
    b = alg.basis
    product = []
    for (i, j) in sorted(alg.product.table):
        product.append({"left": b[i], "right": b[j], "result": _terms_out(alg.product.table[(i, j)], b)})
    doc = {"name": alg.name, "basis": list(b), "product": product}
    if alg.product.overflow:
        doc["overflow"] = [{"left": b[i], "right": b[j]} for i, j in sorted(alg.product.overflow)]
    if alg.unit is not None:
        doc["unit"] = _terms_out(alg.unit, b)
    coops = {}
    for name, d in sorted((cooperations or {}).items()):
        rows = []
        for i, row in enumerate(d.delta):
            if row:
                rows.append({"on": b[i], "terms": [{"left": b[j], "right": b[k], "coeff": format_rational(row[(j, k)])}
                                                   for j, k in sorted(row)]})
        coops[name] = rows
    doc["cooperations"] = coops
    return doc


# ---------------------------------------------------------------- graphs and substitutions

def graph_from_json(doc: Mapping) -> WeightedDigraph:
    verts = _field(doc, "vertices", "graph")
    if not isinstance(verts, list):
        raise InputError("graph: vertices must be a list")
    arcs = []
    for k, a in enumerate(_field(doc, "arcs", "graph")):
        where = f"arc {k + 1}"
        arcs.append((str(_field(a, "src", where)), str(_field(a, "dst", where)), _coeff(_field(a, "weight", where), where)))
    try:
        return WeightedDigraph(tuple(str(v) for v in verts), tuple(arcs), str(doc.get("name", "graph")))
    except ValueError as e:
        raise InputError(f"graph: {e}") from None


def graph_to_json(g: WeightedDigraph) -> dict:
    return {"name": g.name, "vertices": list(g.vertices),
            "arcs": [{"src": a.src, "dst": a.dst, "weight": format_rational(a.weight)} for a in g.arcs]}


def substitutions_from_json(doc: Mapping) -> tuple:
    """Returns (alphabet, [Substitution]); each rule is {symbol, image: [s1, s2], prob}."""
    alphabet = _field(doc, "alphabet", "substitutions")
    if not isinstance(alphabet, list) or len(set(alphabet)) != len(alphabet):
        raise InputError("substitutions: alphabet must be a list of distinct letters")
    rules = []
    for k, r in enumerate(_field(doc, "rules", "substitutions")):
        where = f"rule {k + 1}"
        sym = _field(r, "symbol", where)
        image = _field(r, "image", where)
        if not (isinstance(image, list) and len(image) == 2):
            raise InputError(f"{where}: image must list two letters")
        for x in [sym] + image:
            if x not in alphabet:
                raise InputError(f"{where}: unknown letter {x!r}")
        rules.append(Substitution(sym, image[0], image[1], _coeff(r.get("prob", "1"), where)))
    return list(alphabet), rules


def substitutions_to_json(alphabet, rules) -> dict:
    return {"alphabet": list(alphabet),
            "rules": [{"symbol": s.symbol, "image": [s.left, s.right], "prob": format_rational(s.prob)} for s in rules]}


# ---------------------------------------------------------------- presentations

def presentation_file_from_json(doc: Mapping) -> OperadPresentation:
    try:
        return presentation_from_json(doc)
    except ValueError as e:
        raise InputError(str(e)) from None


def presentation_file_to_json(p: OperadPresentation) -> dict:
    return presentation_to_json(p)


# ---------------------------------------------------------------- operators and counits

def operator_from_json(doc: Mapping, basis) -> LinearMap:
    """{basis: [...], images: [{on, terms: [{basis, coeff}]}]}; the basis must match the carrier."""
    declared = _field(doc, "basis", "operator")
    if list(declared) != list(basis):
        raise InputError("operator: basis does not match the carrier basis")
    index = {b: i for i, b in enumerate(basis)}
    cols = [SparseVector() for _ in basis]
    seen = set()
    for k, img in enumerate(_field(doc, "images", "operator")):
        where = f"operator image {k + 1}"
        j = _label(index, _field(img, "on", where), where)
        if j in seen:
            raise InputError(f"{where}: duplicate image of {basis[j]!r}")
        seen.add(j)
        cols[j] = _terms_in(_field(img, "terms", where), index, where)
    return LinearMap(len(basis), len(basis), cols)


def operator_to_json(T: LinearMap, basis) -> dict:
    return {"basis": list(basis),
            "images": [{"on": basis[j], "terms": _terms_out(c, basis)} for j, c in enumerate(T.cols) if c]}


def counit_from_json(doc: Mapping, basis) -> dict:
    """{values: [{basis, coeff}], side?: right|left|both, elements?: [labels]}."""
    index = {b: i for i, b in enumerate(basis)}
    values = _terms_in(_field(doc, "values", "counit"), index, "counit")
    side = doc.get("side", "right")
    if side not in ("right", "left", "both"):
        raise InputError(f"counit: unknown side {side!r}")
    elements = None
    if doc.get("elements") is not None:
        elements = [_label(index, e, "counit elements") for e in doc["elements"]]
    return {"values": values, "side": side, "elements": elements}


def counit_to_json(values: Mapping, basis, side: str = "right", elements=None) -> dict:
    doc = {"values": _terms_out(values, basis), "side": side}
    if elements is not None:
        doc["elements"] = [basis[i] for i in elements]
    return doc
