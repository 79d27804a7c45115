"""Split structures built from Baxter and shift operators, their symmetries, and relation checks."""
from __future__ import annotations

from fractions import Fraction
from itertools import product as cartesian
from typing import Iterable, Mapping

from .algebra import (CoOperation, CompatKind, FiniteAlgebra, Operation, Overflow, _compare,
                      check_codialgebra, check_compat, check_cotrialgebra, check_entanglement,
                      check_L_circular, check_operation_associative)
from .convolution import BaxterKind, ConvolutionContext, check_baxter, check_commute, convolution_operation
from .linalg import LinearMap, SparseVector, accumulate, clean
from .operads import LEFT, OCTO_GENERATORS, OCTO_SUMS, QUADRI_SUMS, OperadPresentation, preset
from .reports import HypothesisError, Report

DEGENERATE = "DEGENERATE"


class MultiProductAlgebra:
    """A vector space with a basis and several named bilinear operations.

    `ops` are the generating operations checked against a preset; `sums` names derived
    operations as lists of generator names (the ≺, ≻, ∧, ∨ and ⋆̄ style sums).
    """

    def __init__(self, name: str, basis: Iterable[str], ops: Mapping[str, Operation],
                 sums: Mapping[str, list] | None = None, preset_name: str | None = None,
                 notes: Iterable[str] = (), hypotheses: Iterable[Report] = ()):
        self.name = name
        self.basis = tuple(basis)
        self.ops = dict(ops)
        for k, op in self.ops.items():
            if op.dim != len(self.basis):
                raise ValueError(f"operation {k!r} is not over the carrier basis")
        self.sums = {k: list(v) for k, v in (sums or {}).items()}
        for k, parts in self.sums.items():
            if k in self.ops:
                raise ValueError(f"derived operation {k!r} clashes with a generator")
            for p in parts:
                if p not in self.ops:
                    raise ValueError(f"derived operation {k!r} uses unknown operation {p!r}")
        self.preset_name = preset_name
        self.notes = list(notes)
        self.hypotheses = list(hypotheses)
        self.bracket: Operation | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def op(self, name: str) -> Operation:
        if name in self.ops:
            return self.ops[name]
        if name in self.sums:
            return Operation.sum([self.ops[p] for p in self.sums[name]])
        raise KeyError(f"{self.name} has no operation {name!r}")

    def star(self) -> Operation:
        """Sum of all generating operations."""
        return Operation.sum(list(self.ops.values()))

    def restrict(self, mapping: Mapping[str, str], name: str | None = None,
                 sums: Mapping[str, list] | None = None, preset_name: str | None = None) -> "MultiProductAlgebra":
        """New structure whose operation `new` is this structure's (possibly derived) operation `old`."""
        ops = {new: self.op(old) for new, old in mapping.items()}
        return MultiProductAlgebra(name or self.name, self.basis, ops, sums, preset_name, self.notes)

    def __repr__(self):
        return f"MultiProductAlgebra({self.name!r}, dim={self.dim}, ops={sorted(self.ops)})"


# ---------------------------------------------------------------- building blocks

def _product(carrier) -> Operation:
    if isinstance(carrier, FiniteAlgebra):
        return carrier.product
    if isinstance(carrier, MultiProductAlgebra) and len(carrier.ops) == 1:
        return next(iter(carrier.ops.values()))
    raise ValueError("carrier must be an algebra or a structure with exactly one operation")


def op_from_maps(carrier, left: LinearMap | None = None, right: LinearMap | None = None,
                 product: Operation | None = None) -> Operation:
    """x∘y = L(x)·R(y), with a missing map meaning the identity."""
    mu = product or _product(carrier)
    n = mu.dim

    def f(i, j):
        u = left.cols[i] if left is not None else {i: 1}
        v = right.cols[j] if right is not None else {j: 1}
        return mu(u, v)

    return Operation.from_function(n, f)


def twist(op: Operation, left: LinearMap | None = None, right: LinearMap | None = None) -> Operation:
    """(x, y) -> op(L x, R y)."""
    return op_from_maps(None, left, right, product=op)


def _refuse(what: str, reports: list, force: bool, notes: list) -> None:
    bad = [r for r in reports if not r.passed]
    if not bad:
        return
    msg = f"{what}: hypothesis failed: " + "; ".join(r.summary() for r in bad)
    if not force:
        raise HypothesisError(msg, reports)
    notes.append("forced past failed hypotheses: " + ", ".join(r.id for r in bad))


def _basis_of(carrier) -> tuple:
    return tuple(carrier.basis)


def _check_dim(carrier, *maps: LinearMap) -> None:
    n = len(carrier.basis)
    for m in maps:
        if not (m.n_in == m.n_out == n):
            raise ValueError(f"dimension mismatch: operator is {m.n_out}x{m.n_in}, carrier has dimension {n}")


# ---------------------------------------------------------------- relation checking

def _eval_term(mpa: MultiProductAlgebra, mono, i: int, j: int, k: int, cache: dict) -> SparseVector:
    root, child = mono.labels
    r = mpa.ops[root]
    key = (child, i, j) if mono.shape == LEFT else (child, j, k)
    inner = cache.get(key)
    if inner is None:
        inner = mpa.ops[child].basis(key[1], key[2])
        cache[key] = inner
    if mono.shape == LEFT:
        return r(inner, {k: 1})
    return r({i: 1}, inner)


def verify_relations(mpa: MultiProductAlgebra, p: OperadPresentation | str) -> Report:
    """Evaluate every relation of the presentation on all basis triples."""
    if isinstance(p, str):
        p = preset(p)
    if set(p.generators) != set(mpa.ops):
        raise ValueError(f"operation names {sorted(mpa.ops)} do not match the generators "
                         f"{sorted(p.generators)} of {p.name}")
    rep = Report(f"relations[{p.name}]")
    n = mpa.dim
    cache: dict = {}
    for i, j, k in cartesian(range(n), repeat=3):
        for rname, rel in p.named_relations():
            acc: dict = {}
            try:
                for mono, c in rel.items():
                    accumulate(acc, _eval_term(mpa, mono, i, j, k, cache), c)
            except Overflow:
                rep.skipped += 1
                continue
            _compare(rep, mpa.basis, (i, j, k), clean(acc), {}, rname)
    return rep


def check_cluster(mpa: MultiProductAlgebra) -> Report:
    """The sum of all generating operations is associative."""
    return check_operation_associative(mpa.star(), mpa.basis, f"cluster[{mpa.name}]")


# ---------------------------------------------------------------- Baxter splittings

def split_right_baxter(carrier, zeta: LinearMap, force: bool = False) -> MultiProductAlgebra:
    """x ←⋆ y = ζ(x)y and x ≺ y = xζ(y) for a right Baxter ζ."""
    _check_dim(carrier, zeta)
    notes: list = []
    hyp = [check_baxter(carrier, zeta, BaxterKind.Right, rid="right-baxter[zeta]")]
    _refuse("L-anti-dipterous splitting", hyp, force, notes)
    ops = {"leftStar": op_from_maps(carrier, zeta, None), "prec": op_from_maps(carrier, None, zeta)}
    return MultiProductAlgebra("L-anti-dipterous", _basis_of(carrier), ops, preset_name="AL",
                               notes=notes, hypotheses=hyp)


def split_left_baxter(carrier, theta: LinearMap, force: bool = False) -> MultiProductAlgebra:
    """x →⋆ y = xθ(y) and x ≻ y = θ(x)y for a left Baxter θ."""
    _check_dim(carrier, theta)
    notes: list = []
    hyp = [check_baxter(carrier, theta, BaxterKind.Left, rid="left-baxter[theta]")]
    _refuse("L-dipterous splitting", hyp, force, notes)
    ops = {"rightStar": op_from_maps(carrier, None, theta), "succ": op_from_maps(carrier, theta, None)}
    return MultiProductAlgebra("L-dipterous", _basis_of(carrier), ops, preset_name="L-dipterous",
                               notes=notes, hypotheses=hyp)


def _four_ops(carrier, zeta: LinearMap, theta: LinearMap, inner: LinearMap) -> dict:
    return {
        "b1": op_from_maps(carrier, zeta, theta),
        "b2": op_from_maps(carrier, inner, None),
        "b3": op_from_maps(carrier, theta, zeta),
        "b4": op_from_maps(carrier, None, inner),
    }


def _pair_hypotheses(carrier, zeta, theta, kz: BaxterKind, kt: BaxterKind) -> list:
    return [check_baxter(carrier, zeta, kz, rid=f"{kz.value}-baxter[zeta]"),
            check_baxter(carrier, theta, kt, rid=f"{kt.value}-baxter[theta]"),
            check_commute(zeta, theta, list(carrier.basis), "commute[zeta,theta]")]


def build_M(carrier, zeta: LinearMap, theta: LinearMap, force: bool = False) -> MultiProductAlgebra:
    """•1 = ζ(x)θ(y), •2 = θζ(x)y, •3 = θ(x)ζ(y), •4 = xθζ(y) for ζ right and θ left Baxter, commuting."""
    _check_dim(carrier, zeta, theta)
    notes: list = []
    hyp = _pair_hypotheses(carrier, zeta, theta, BaxterKind.Right, BaxterKind.Left)
    _refuse("[M] construction", hyp, force, notes)
    return MultiProductAlgebra("M", _basis_of(carrier), _four_ops(carrier, zeta, theta, theta @ zeta),
                               preset_name="M", notes=notes, hypotheses=hyp)


def build_M1(carrier, zeta: LinearMap, theta: LinearMap, force: bool = False) -> MultiProductAlgebra:
    """The same four operations for two commuting right Baxter operators."""
    _check_dim(carrier, zeta, theta)
    notes: list = []
    hyp = _pair_hypotheses(carrier, zeta, theta, BaxterKind.Right, BaxterKind.Right)
    _refuse("[M1] construction", hyp, force, notes)
    return MultiProductAlgebra("M1", _basis_of(carrier), _four_ops(carrier, zeta, theta, theta @ zeta),
                               preset_name="M1", notes=notes, hypotheses=hyp)


def build_M2(carrier, zeta: LinearMap, theta: LinearMap, force: bool = False) -> MultiProductAlgebra:
    """•1 = ζ(x)θ(y), •2 = ζθ(x)y, •3 = θ(x)ζ(y), •4 = xζθ(y) for two commuting left Baxter operators."""
    _check_dim(carrier, zeta, theta)
    notes: list = []
    hyp = _pair_hypotheses(carrier, zeta, theta, BaxterKind.Left, BaxterKind.Left)
    _refuse("[M2] construction", hyp, force, notes)
    return MultiProductAlgebra("M2", _basis_of(carrier), _four_ops(carrier, zeta, theta, zeta @ theta),
                               preset_name="M2", notes=notes, hypotheses=hyp)


# ---------------------------------------------------------------- quadri and octo

def build_quadri(carrier, beta: LinearMap, gamma: LinearMap, force: bool = False) -> MultiProductAlgebra:
    """↙ = γ(x)β(y), ↖ = xγβ(y), ↘ = γβ(x)y, ↗ = β(x)γ(y) for two commuting Baxter operators."""
    _check_dim(carrier, beta, gamma)
    notes: list = []
    hyp = [check_baxter(carrier, beta, BaxterKind.Full, rid="baxter[beta]"),
           check_baxter(carrier, gamma, BaxterKind.Full, rid="baxter[gamma]"),
           check_commute(beta, gamma, list(carrier.basis), "commute[beta,gamma]")]
    _refuse("quadri construction", hyp, force, notes)
    gb = gamma @ beta
    ops = {
        "nw": op_from_maps(carrier, None, gb),
        "ne": op_from_maps(carrier, beta, gamma),
        "sw": op_from_maps(carrier, gamma, beta),
        "se": op_from_maps(carrier, gb, None),
    }
    return MultiProductAlgebra("quadri", _basis_of(carrier), ops, QUADRI_SUMS, "quadri", notes, hyp)


def _require_ops(mpa: MultiProductAlgebra, names: Iterable[str]) -> None:
    missing = [n for n in names if n not in mpa.ops]
    if missing:
        raise ValueError(f"{mpa.name} lacks operations {missing}")


_QUADRI_PROJECTIONS = {
    "horizontal": {"prec": "prec", "succ": "succ"},
    "vertical": {"prec": "wedge", "succ": "vee"},
}


def quadri_project(q: MultiProductAlgebra, which: str) -> MultiProductAlgebra:
    """Horizontal (≺, ≻) or vertical (∧ as ≺, ∨ as ≻) dendriform structure of a quadri-algebra."""
    _require_ops(q, ["nw", "ne", "sw", "se"])
    if which not in _QUADRI_PROJECTIONS:
        raise ValueError(f"unknown quadri projection {which!r}")
    return q.restrict(_QUADRI_PROJECTIONS[which], f"{q.name}/{which}", {"star": ["prec", "succ"]},
                      "dendriform")


def build_octo_on_quadri(q: MultiProductAlgebra, xi: LinearMap, force: bool = False) -> MultiProductAlgebra:
    """∘1(x, y) = ∘(x, ξy) and ∘2(x, y) = ∘(ξx, y) for each quadri operation ∘."""
    _require_ops(q, ["nw", "ne", "sw", "se"])
    _check_dim(q, xi)
    notes = list(q.notes)
    hyp = [check_baxter(q, xi, BaxterKind.Full, op_names=["nw", "ne", "sw", "se"], rid="baxter[xi on quadri]")]
    _refuse("octo construction", hyp, force, notes)
    ops = {}
    for o in ("nw", "ne", "sw", "se"):
        ops[o + "1"] = twist(q.ops[o], None, xi)
        ops[o + "2"] = twist(q.ops[o], xi, None)
    ops = {k: ops[k] for k in OCTO_GENERATORS}
    return MultiProductAlgebra("octo", q.basis, ops, OCTO_SUMS, "octo", notes, q.hypotheses + hyp)


def build_octo_three_baxter(carrier, beta: LinearMap, gamma: LinearMap, xi: LinearMap,
                            force: bool = False, notes: Iterable[str] = ()) -> MultiProductAlgebra:
    """Quadri from (β, γ), then ξ as a Baxter operator on it; the three must commute pairwise."""
    _check_dim(carrier, beta, gamma, xi)
    notes = list(notes)
    basis = list(carrier.basis)
    hyp = [check_baxter(carrier, xi, BaxterKind.Full, rid="baxter[xi]"),
           check_commute(beta, xi, basis, "commute[beta,xi]"),
           check_commute(gamma, xi, basis, "commute[gamma,xi]")]
    _refuse("three-Baxter octo construction", hyp, force, notes)
    q = build_quadri(carrier, beta, gamma, force=force)
    o = build_octo_on_quadri(q, xi, force=force)
    o.hypotheses = hyp + o.hypotheses
    o.notes = notes + o.notes
    return o


def _is_multiple(d1: CoOperation, d2: CoOperation) -> bool:
    """d2 = c·d1 for some scalar c (zero allowed)."""
    ratio = None
    for r1, r2 in zip(d1.delta, d2.delta):
        if set(r1) != set(r2):
            if r2:
                return False
            continue
        for k, v in r1.items():
            c = r2[k] / v
            if ratio is None:
                ratio = c
            elif c != ratio:
                return False
    return True


def octo_from_L_circular(a: FiniteAlgebra, d1: CoOperation, d2: CoOperation,
                         force: bool = False) -> MultiProductAlgebra:
    """Octo-algebra on End(A) from the three operators β1, γ2 and ξ = β2 of an L-circular pair."""
    ctx = ConvolutionContext(a, [d1, d2])
    notes: list = []
    hyp = [check_compat(a, d1, CompatKind.Eps), check_compat(a, d2, CompatKind.Eps), check_L_circular(a, d1, d2)]
    _refuse("L-circular octo construction", hyp, force, notes)
    if _is_multiple(d1, d2):
        notes.append(f"{DEGENERATE}: the second coproduct is a scalar multiple of the first, "
                     "so the three operators come from one coassociative coproduct")
    o = build_octo_three_baxter(ctx.end, ctx.beta(d1.name), ctx.gamma(d2.name), ctx.beta(d2.name),
                                force=force, notes=notes)
    o.hypotheses = hyp + o.hypotheses
    return o


_OCTO_PROJECTIONS = {
    "depth": {"ne": "ne12", "se": "se12", "sw": "sw12", "nw": "nw12"},
    "vertical": {"ne": "succ1", "se": "succ2", "sw": "prec2", "nw": "prec1"},
    "horizontal": {"ne": "wedge2", "se": "vee2", "sw": "vee1", "nw": "wedge1"},
}


def octo_project(o: MultiProductAlgebra, which: str) -> MultiProductAlgebra:
    """Depth, vertical or horizontal quadri-algebra of an octo-algebra."""
    _require_ops(o, OCTO_GENERATORS)
    if which not in _OCTO_PROJECTIONS:
        raise ValueError(f"unknown octo projection {which!r}")
    derived = MultiProductAlgebra(o.name, o.basis, o.ops, OCTO_SUMS)
    mapping = {k: _OCTO_PROJECTIONS[which][k] for k in ("nw", "ne", "sw", "se")}
    return derived.restrict(mapping, f"{o.name}/{which}", QUADRI_SUMS, "quadri")


def tensor_labels(*bases) -> list:
    return ["⊗".join(t) for t in cartesian(*bases)]


def tensor_octo(e: MultiProductAlgebra, f: MultiProductAlgebra, g: MultiProductAlgebra,
                force: bool = False) -> MultiProductAlgebra:
    """Octo-algebra on E⊗F⊗G from three dendriform dialgebras; ↖1 = ≺⊗≺⊗≺ and so on."""
    notes: list = []
    hyp = []
    for tag, d in (("E", e), ("F", f), ("G", g)):
        _require_ops(d, ["prec", "succ"])
        r = verify_relations(d.restrict({"prec": "prec", "succ": "succ"}), "dendriform")
        r.id = f"dendriform[{tag}]"
        hyp.append(r)
    _refuse("tensor octo construction", hyp, force, notes)
    slots = {
        "nw1": ("prec", "prec", "prec"), "nw2": ("prec", "prec", "succ"),
        "se1": ("succ", "succ", "prec"), "se2": ("succ", "succ", "succ"),
        "ne1": ("succ", "prec", "prec"), "ne2": ("succ", "prec", "succ"),
        "sw1": ("prec", "succ", "prec"), "sw2": ("prec", "succ", "succ"),
    }
    de, df, dg = e.dim, f.dim, g.dim
    n = de * df * dg

    def idx(a, b, c):
        return (a * df + b) * dg + c

    ops = {}
    for name in OCTO_GENERATORS:
        pe, pf, pg = (e.ops[slots[name][0]], f.ops[slots[name][1]], g.ops[slots[name][2]])
        table = {}
        for x in range(n):
            x1, r = divmod(x, df * dg)
            x2, x3 = divmod(r, dg)
            for y in range(n):
                y1, r = divmod(y, df * dg)
                y2, y3 = divmod(r, dg)
                u, v, w = pe.basis(x1, y1), pf.basis(x2, y2), pg.basis(x3, y3)
                if not (u and v and w):
                    continue
                acc = {}
                for a, ca in u.items():
                    for b, cb in v.items():
                        for c, cc in w.items():
                            acc[idx(a, b, c)] = ca * cb * cc
                table[(x, y)] = acc
        ops[name] = Operation(n, table)
    basis = tensor_labels(e.basis, f.basis, g.basis)
    return MultiProductAlgebra(f"octo({e.name}⊗{f.name}⊗{g.name})", basis, ops, OCTO_SUMS, "octo", notes, hyp)


def tensor_operation(e_op: Operation, f_op: Operation, g_op: Operation) -> Operation:
    """The factorwise product on a triple tensor product."""
    df, dg = f_op.dim, g_op.dim
    n = e_op.dim * df * dg

    def f(x, y):
        x1, r = divmod(x, df * dg)
        x2, x3 = divmod(r, dg)
        y1, r = divmod(y, df * dg)
        y2, y3 = divmod(r, dg)
        acc = {}
        for a, ca in e_op.basis(x1, y1).items():
            for b, cb in f_op.basis(x2, y2).items():
                for c, cc in g_op.basis(x3, y3).items():
                    acc[(a * df + b) * dg + c] = ca * cb * cc
        return acc

    return Operation.from_function(n, f)


def integration_dendriform(n: int = 3, unital: bool = False) -> MultiProductAlgebra:
    """x ≺ y = xR(y), x ≻ y = R(x)y for the truncated integration operator R."""
    from .models import integration_baxter

    alg, R = integration_baxter(n, unital)
    ops = {"prec": op_from_maps(alg, None, R), "succ": op_from_maps(alg, R, None)}
    return MultiProductAlgebra(f"dend({alg.name})", alg.basis, ops, {"star": ["prec", "succ"]}, "dendriform")


def subalgebra_split_dendriform(alg: FiniteAlgebra, first: Iterable[str]) -> MultiProductAlgebra:
    """x ≺ y = xP2(y), x ≻ y = −P1(x)y for A = A1 ⊕ A2, A1 spanned by the labels in `first`.

    −P1 is a Rota–Baxter operator of weight one when both summands are subalgebras, and
    these two operations are its dendriform splitting.  Unlike the integration example the
    result is not nilpotent, which makes relation checks on it discriminating.
    """
    first = set(first)
    unknown = first - set(alg.basis)
    if unknown:
        raise ValueError(f"unknown basis labels {sorted(unknown)}")
    n = alg.dim
    p1 = LinearMap(n, n, [{i: 1} if alg.basis[i] in first else {} for i in range(n)])
    p2 = LinearMap.identity(n) - p1
    ops = {"prec": op_from_maps(alg, None, p2), "succ": op_from_maps(alg, p1.scaled(-1), None)}
    return MultiProductAlgebra(f"split({alg.name})", alg.basis, ops, {"star": ["prec", "succ"]}, "dendriform")


# ---------------------------------------------------------------- symmetries

# target op <- (source op, swap arguments)
_TRANSFORMS = {
    "oppositeM": ("M", "M", {"b1": ("b1", True), "b3": ("b3", True), "b2": ("b4", True), "b4": ("b2", True)}),
    "transposeM1": ("M1", "M1", {"b1": ("b3", False), "b3": ("b1", False), "b2": ("b2", False), "b4": ("b4", False)}),
    "transposeM2": ("M2", "M2", {"b1": ("b3", False), "b3": ("b1", False), "b2": ("b2", False), "b4": ("b4", False)}),
    "opM2toM1": ("M2", "M1", {"b1": ("b1", True), "b3": ("b3", True), "b2": ("b4", True), "b4": ("b2", True)}),
    "octoOpposite": ("octo", "octo", {
        "ne1": ("sw2", True), "ne2": ("sw1", True), "se1": ("nw2", True), "se2": ("nw1", True),
        "sw1": ("ne2", True), "sw2": ("ne1", True), "nw1": ("se2", True), "nw2": ("se1", True)}),
    "octoTranspose": ("octo", "octo", {"ne1": ("sw1", False), "sw1": ("ne1", False),
                                       "ne2": ("sw2", False), "sw2": ("ne2", False)}),
    "symA": ("octo", "octo", {"se1": ("ne2", False), "ne2": ("se1", False),
                              "sw1": ("nw2", False), "nw2": ("sw1", False)}),
    "symB": ("octo", "octo", {"se1": ("ne2", False), "ne2": ("sw2", False), "sw1": ("ne1", False),
                              "nw2": ("sw1", False), "ne1": ("nw2", False), "sw2": ("se1", False)}),
    "symC": ("octo", "octo", {"se1": ("sw2", False), "ne2": ("se1", False), "sw1": ("nw2", False),
                              "nw2": ("ne1", False), "ne1": ("sw1", False), "sw2": ("ne2", False)}),
    "symD": ("octo", "octo", {"se1": ("sw2", False), "ne1": ("nw2", False),
                              "sw2": ("se1", False), "nw2": ("ne1", False)}),
}

TRANSFORM_NAMES = tuple(_TRANSFORMS)


def transform(mpa: MultiProductAlgebra, name: str) -> MultiProductAlgebra:
    """Apply a named substitution of operations (with argument swaps where the table says so)."""
    if name not in _TRANSFORMS:
        raise ValueError(f"unknown transform {name!r}")
    source, target, table = _TRANSFORMS[name]
    gens = preset(source).generators
    _require_ops(mpa, gens)
    ops = {}
    for g in gens:
        old, swap = table.get(g, (g, False))
        op = mpa.ops[old]
        ops[g] = op.opposite() if swap else op
    ops = {g: ops[g] for g in preset(target).generators}
    sums = OCTO_SUMS if target == "octo" else None
    return MultiProductAlgebra(f"{name}({mpa.name})", mpa.basis, ops, sums, target, mpa.notes)


# ---------------------------------------------------------------- from coproducts on End(A)

def dendriform_from_mixed(a: FiniteAlgebra, d1: CoOperation, d2: CoOperation, recipe: str = "EpdendR",
                          force: bool = False) -> MultiProductAlgebra:
    """EpdendR: ≺ = β1(T)γ2(S), ≻ = γ2β1(T)S.  DendepsR: ≻ = β1(T)γ2(S), ≺ = Tβ1γ2(S)."""
    if recipe not in ("EpdendR", "DendepsR"):
        raise ValueError(f"unknown recipe {recipe!r}")
    notes: list = []
    if recipe == "EpdendR":
        hyp = [check_compat(a, d1, CompatKind.EpsPrimeR), check_compat(a, d2, CompatKind.Eps)]
    else:
        hyp = [check_compat(a, d1, CompatKind.Eps), check_compat(a, d2, CompatKind.EpsR)]
    hyp.append(check_entanglement(a, d1, d2))
    _refuse(f"dendriform ({recipe})", hyp, force, notes)
    ctx = ConvolutionContext(a, [d1, d2])
    E = ctx.end
    b1, g2 = ctx.beta(d1.name), ctx.gamma(d2.name)
    if recipe == "EpdendR":
        ops = {"prec": op_from_maps(E, b1, g2), "succ": op_from_maps(E, g2 @ b1, None)}
    else:
        ops = {"prec": op_from_maps(E, None, b1 @ g2), "succ": op_from_maps(E, b1, g2)}
    return MultiProductAlgebra(f"dendriform[{recipe}]", E.basis, ops, {"star": ["prec", "succ"]},
                               "dendriform", notes, hyp)


def build_three_op(a: FiniteAlgebra, d: CoOperation, force: bool = False) -> MultiProductAlgebra:
    """↗ = β(x)γ(y), ↖ = xβγ(y), ↘ = γβ(x)y on End(A) for an ε[R]-bialgebra."""
    notes: list = []
    hyp = [check_compat(a, d, CompatKind.EpsR)]
    _refuse("three-operation construction", hyp, force, notes)
    ctx = ConvolutionContext(a, d)
    E = ctx.end
    b, g = ctx.beta(d.name), ctx.gamma(d.name)
    ops = {"ne": op_from_maps(E, b, g), "nw": op_from_maps(E, None, b @ g), "se": op_from_maps(E, g @ b, None)}
    return MultiProductAlgebra("threeop", E.basis, ops, preset_name="threeop", notes=notes, hypotheses=hyp)


def _gamma_product(ctx: ConvolutionContext, name: str) -> Operation:
    return op_from_maps(ctx.end, None, ctx.gamma(name))


def bracket_operation(dashv: Operation, vdash: Operation) -> Operation:
    """[x, y] = x ⊣ y − y ⊢ x."""
    return dashv.combine([(1, dashv), (-1, vdash.opposite())])


def check_leibniz(bracket: Operation, basis, rid: str = "leibniz") -> Report:
    """[[x,y],z] = [[x,z],y] + [x,[y,z]] on all basis triples."""
    rep = Report(rid)
    n = bracket.dim
    for i, j, k in cartesian(range(n), repeat=3):
        lhs = bracket(bracket.basis(i, j), {k: 1})
        rhs = bracket(bracket.basis(i, k), {j: 1}) + bracket({i: 1}, bracket.basis(j, k))
        _compare(rep, basis, (i, j, k), lhs, rhs)
    return rep


def build_dialgebra_leibniz(a: FiniteAlgebra, dL: CoOperation, dR: CoOperation,
                            force: bool = False) -> MultiProductAlgebra:
    """⊣ = Tγ⊢(S), ⊢ = Tγ⊣(S) on End(A), with Δ⊣ = dL and Δ⊢ = dR; bracket as a derived table."""
    notes: list = []
    hyp = [check_codialgebra(a, dL, dR), check_compat(a, dL, CompatKind.EpsR), check_compat(a, dR, CompatKind.EpsR)]
    _refuse("dialgebra construction", hyp, force, notes)
    ctx = ConvolutionContext(a, {"dL": dL.renamed("dL"), "dR": dR.renamed("dR")})
    ops = {"dashv": _gamma_product(ctx, "dR"), "vdash": _gamma_product(ctx, "dL")}
    m = MultiProductAlgebra("dialgebra", ctx.end.basis, ops, preset_name="dialgebra", notes=notes, hypotheses=hyp)
    m.bracket = bracket_operation(ops["dashv"], ops["vdash"])
    return m


def build_trialgebra_poisson(a: FiniteAlgebra, dL: CoOperation, dR: CoOperation, dPerp: CoOperation,
                             force: bool = False) -> MultiProductAlgebra:
    """Trialgebra on End(A) with ⊥ = Tγ⊥(S); the bracket is kept with the structure."""
    notes: list = []
    hyp = [check_cotrialgebra(a, dL, dR, dPerp)] + [check_compat(a, d, CompatKind.EpsR) for d in (dL, dR, dPerp)]
    _refuse("trialgebra construction", hyp, force, notes)
    ctx = ConvolutionContext(a, {"dL": dL.renamed("dL"), "dR": dR.renamed("dR"), "dP": dPerp.renamed("dP")})
    ops = {"dashv": _gamma_product(ctx, "dR"), "vdash": _gamma_product(ctx, "dL"), "perp": _gamma_product(ctx, "dP")}
    m = MultiProductAlgebra("trialgebra", ctx.end.basis, ops, preset_name="trialgebra", notes=notes, hypotheses=hyp)
    m.bracket = bracket_operation(ops["dashv"], ops["vdash"])
    return m


def poisson_candidates(m: MultiProductAlgebra) -> list:
    """Status of two candidate bracket/⊥ compatibilities; informational only."""
    br, perp = m.bracket, m.ops["perp"]
    n = m.dim
    r1 = Report("poisson-candidate[[x,y⊥z] = [x,y]⊥z + y⊥[x,z]]", informational=True)
    r2 = Report("poisson-candidate[[x⊥y,z] = x⊥[y,z] + [x,z]⊥y]", informational=True)
    for i, j, k in cartesian(range(n), repeat=3):
        lhs = br({i: 1}, perp.basis(j, k))
        rhs = perp(br.basis(i, j), {k: 1}) + perp({j: 1}, br.basis(i, k))
        _compare(r1, m.basis, (i, j, k), lhs, rhs)
        lhs = br(perp.basis(i, j), {k: 1})
        rhs = perp({i: 1}, br.basis(j, k)) + perp(br.basis(i, k), {j: 1})
        _compare(r2, m.basis, (i, j, k), lhs, rhs)
    return [r1, r2]


# ---------------------------------------------------------------- pre-Lie

def prelie_bracket(a: FiniteAlgebra, d: CoOperation) -> tuple:
    """x ⋈ y = y(1) x y(2); returns the operation and a report naming the convention(s) that hold."""
    notes: list = []
    hyp = [check_compat(a, d, CompatKind.Eps)]

    def f(i, j):
        acc: dict = {}
        for (p, q), c in d.delta[j].items():
            accumulate(acc, a.mul(a.mul_basis(p, i), {q: 1}), c)
        return clean(acc)

    op = Operation.from_function(a.dim, f)
    right = Report("pre-Lie[right]")
    left = Report("pre-Lie[left]")

    def assoc(i, j, k):
        return op(op.basis(i, j), {k: 1}) - op({i: 1}, op.basis(j, k))

    n = a.dim
    for i, j, k in cartesian(range(n), repeat=3):
        try:
            ajk = assoc(i, j, k)
            akj = assoc(i, k, j)
            ajik = assoc(j, i, k)
        except Overflow:
            right.skipped += 1
            left.skipped += 1
            continue
        _compare(right, a.basis, (i, j, k), ajk, akj)
        _compare(left, a.basis, (i, j, k), ajk, ajik)
    held = [name for name, r in (("right", right), ("left", left)) if r.passed]
    rep = Report("pre-Lie", notes=notes)
    for h in hyp:
        rep.notes.append(h.summary())
    rep.checked = right.checked
    rep.skipped = right.skipped
    if held:
        rep.notes.append("conventions holding: " + ", ".join(held))
    else:
        rep.absorb(right, "right: ")
        rep.absorb(left, "left: ")
        rep.notes.append("neither pre-Lie convention holds")
    return op, rep, held


# ---------------------------------------------------------------- several coproducts

def _named(deltas) -> list:
    out = []
    for k, d in enumerate(deltas):
        out.append(d.renamed(f"D{k + 1}") if d.name in [e.name for e in deltas[:k]] else d)
    return out


def check_hypercubic(a: FiniteAlgebra, deltas: list, mode: str = "PrimeR-beta",
                     force: bool = False) -> tuple:
    """n products on End(A): β_i(x)y (PrimeR-beta) or xγ_i(y) (R-gamma), checked as hypercubic."""
    if mode not in ("PrimeR-beta", "R-gamma"):
        raise ValueError(f"unknown mode {mode!r}")
    deltas = _named(list(deltas))
    notes: list = []
    if mode == "PrimeR-beta":
        hyp = [check_compat(a, d, CompatKind.EpsPrimeR) for d in deltas]
    else:
        hyp = [check_compat(a, d, CompatKind.EpsR) for d in deltas]
        hyp += [check_entanglement(a, d1, d2) for d1 in deltas for d2 in deltas]
    _refuse(f"hypercubic ({mode})", hyp, force, notes)
    ctx = ConvolutionContext(a, deltas)
    E = ctx.end
    ops = {}
    for k, d in enumerate(deltas):
        if mode == "PrimeR-beta":
            ops[f"star{k + 1}"] = op_from_maps(E, ctx.beta(d.name), None)
        else:
            ops[f"star{k + 1}"] = op_from_maps(E, None, ctx.gamma(d.name))
    n = len(deltas)
    m = MultiProductAlgebra(f"hypercubic({n})", E.basis, ops, preset_name=f"hypercubic({n})",
                            notes=notes, hypotheses=hyp)
    return m, verify_relations(m, f"hypercubic({n})")


def check_circular_coproducts(a: FiniteAlgebra, deltas: list) -> Report:
    """(Δ_i⊗id)Δ_j = (id⊗Δ_i)Δ_j for all i, j."""
    rep = Report("circular-coproducts")
    for di in deltas:
        for dj in deltas:
            for x in range(a.dim):
                t = dj.delta[x]
                _compare(rep, a.basis, (x,), di.on_first(t), di.on_second(t), f"({di.name},{dj.name})")
    return rep


def check_circular(a: FiniteAlgebra, deltas: list, products: str = "convolution",
                   force: bool = False) -> tuple:
    """n-circular structure on End(A) from the convolution products ∗_i or from xγ_i(y)."""
    if products not in ("convolution", "gamma"):
        raise ValueError(f"unknown product mode {products!r}")
    deltas = _named(list(deltas))
    notes: list = []
    hyp = [check_circular_coproducts(a, deltas)]
    if products == "gamma":
        hyp += [check_compat(a, d, CompatKind.EpsR) for d in deltas]
    _refuse("circular construction", hyp, force, notes)
    ctx = ConvolutionContext(a, deltas)
    E = ctx.end
    ops = {}
    for k, d in enumerate(deltas):
        if products == "gamma":
            ops[f"star{k + 1}"] = op_from_maps(E, None, ctx.gamma(d.name))
        else:
            ops[f"star{k + 1}"] = convolution_operation(ctx, d.name)
    n = len(deltas)
    m = MultiProductAlgebra(f"circular({n})", E.basis, ops, preset_name=f"circular({n})",
                            notes=notes, hypotheses=hyp)
    return m, verify_relations(m, f"circular({n})")


def baxter_sum_product(E: FiniteAlgebra, beta: LinearMap) -> Operation:
    """x ∗β y = β(x)y + xβ(y)."""
    return op_from_maps(E, beta, None) + op_from_maps(E, None, beta)


AAS_SAMPLES = ((1, 1), (2, -3), (Fraction(1, 2), 5))


def check_aas(a: FiniteAlgebra, d1: CoOperation, d2: CoOperation) -> Report:
    """The 2-cocycle identity (R∗1S)∗2T + (R∗2S)∗1T = R∗1(S∗2T) + R∗2(S∗1T) on End(A)."""
    d1, d2 = _named([d1, d2])
    ctx = ConvolutionContext(a, [d1, d2])
    E = ctx.end
    p1 = baxter_sum_product(E, ctx.beta(d1.name))
    p2 = baxter_sum_product(E, ctx.beta(d2.name))
    rep = Report(f"Aas[{d1.name},{d2.name}]")
    n = E.dim
    for i, j, k in cartesian(range(n), repeat=3):
        lhs = p2(p1.basis(i, j), {k: 1}) + p1(p2.basis(i, j), {k: 1})
        rhs = p1({i: 1}, p2.basis(j, k)) + p2({i: 1}, p1.basis(j, k))
        _compare(rep, E.basis, (i, j, k), lhs, rhs)
    if rep.passed:
        for l1, l2 in AAS_SAMPLES:
            comb = p1.combine([(l1, p1), (l2, p2)])
            r = check_operation_associative(comb, E.basis, f"associative[{l1}*1 + {l2}*2]")
            rep.notes.append(r.summary())
            rep.absorb(r)
    return rep
