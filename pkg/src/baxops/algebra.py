"""Finite-dimensional algebras, co-operations, and compatibility checkers."""
from __future__ import annotations

from enum import Enum
from itertools import product as cartesian
from typing import Callable, Iterable, Mapping

from .linalg import SparseVector, accumulate, clean, to_rational
from .reports import Report, format_vector

EMPTY = SparseVector()


class Overflow(ArithmeticError):
    """A product left the truncated basis of a graded model."""


class Operation:
    """Bilinear operation on a space with basis 0..dim-1, given on basis pairs.

    Pairs listed in `overflow` have no value inside the truncation; evaluating them raises
    Overflow so that checkers can skip the tuple instead of reading a spurious zero.
    """

    __slots__ = ("dim", "table", "overflow")

    def __init__(self, dim: int, table: Mapping, overflow: Iterable = ()):
        self.dim = dim
        self.table = {}
        for (i, j), v in table.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"basis pair {(i, j)} outside dimension {dim}")
            v = v if isinstance(v, SparseVector) else SparseVector(v)
            for k in v:
                if not 0 <= k < dim:
                    raise ValueError(f"result index {k} outside dimension {dim}")
            if v:
                self.table[(i, j)] = v
        self.overflow = frozenset(overflow)

    @classmethod
    def from_function(cls, dim: int, f: Callable[[int, int], Mapping]) -> "Operation":
        table, over = {}, []
        for i in range(dim):
            for j in range(dim):
                try:
                    v = f(i, j)
                except Overflow:
                    over.append((i, j))
                    continue
                if v:
                    table[(i, j)] = v
        return cls(dim, table, over)

    @classmethod
    def zero(cls, dim: int) -> "Operation":
        return cls(dim, {})

    def basis(self, i: int, j: int) -> SparseVector:
        if (i, j) in self.overflow:
            raise Overflow((i, j))
        return self.table.get((i, j), EMPTY)

    def __call__(self, u: Mapping, v: Mapping) -> SparseVector:
        acc: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                accumulate(acc, self.basis(i, j), a * b)
        return clean(acc)

    def __add__(self, other: "Operation") -> "Operation":
        return self.combine([(1, self), (1, other)])

    def combine(self, terms: list) -> "Operation":
        """Linear combination sum(c * op) over (c, op) pairs (self is ignored)."""
        table: dict = {}
        over = set()
        for c, op in terms:
            over |= op.overflow
            for k, v in op.table.items():
                acc = table.setdefault(k, {})
                accumulate(acc, v, to_rational(c))
        return Operation(self.dim, {k: clean(v) for k, v in table.items() if v}, over)

    @staticmethod
    def sum(ops: list) -> "Operation":
        if not ops:
            raise ValueError("empty sum of operations")
        return ops[0].combine([(1, op) for op in ops])

    def opposite(self) -> "Operation":
        """(x, y) -> op(y, x)."""
        return Operation(self.dim, {(j, i): v for (i, j), v in self.table.items()},
                         {(j, i) for i, j in self.overflow})

    def scaled(self, c) -> "Operation":
        return self.combine([(c, self)])

    def __eq__(self, other):
        if not isinstance(other, Operation):
            return NotImplemented
        return self.dim == other.dim and self.table == other.table and self.overflow == other.overflow

    def __hash__(self):
        return hash((self.dim, len(self.table)))

    def is_zero(self) -> bool:
        return not self.table and not self.overflow


class FiniteAlgebra:
    """Algebra given by structure constants on a labeled basis; associativity is checked, not assumed."""

    def __init__(self, name: str, basis: Iterable[str], product, unit: Mapping | None = None,
                 overflow: Iterable = ()):
        self.name = name
        self.basis = tuple(basis)
        if len(set(self.basis)) != len(self.basis):
            raise ValueError("duplicate basis labels")
        self.index = {b: i for i, b in enumerate(self.basis)}
        if isinstance(product, Operation):
            if product.dim != len(self.basis):
                raise ValueError("product dimension does not match basis")
            self.product = product
        else:
            self.product = Operation(len(self.basis), product, overflow)
        self.unit = None if unit is None else SparseVector(unit)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ops(self) -> dict:
        return {"mu": self.product}

    def label(self, i: int) -> str:
        return self.basis[i]

    def e(self, i: int) -> SparseVector:
        return SparseVector({i: 1})

    def element(self, coeffs: Mapping[str, object]) -> SparseVector:
        """Vector from {label: coeff}."""
        return SparseVector({self.index[k]: v for k, v in coeffs.items()})

    def mul(self, u: Mapping, v: Mapping) -> SparseVector:
        return self.product(u, v)

    def mul_basis(self, i: int, j: int) -> SparseVector:
        return self.product.basis(i, j)

    def with_product(self, product: Operation, name: str | None = None) -> "FiniteAlgebra":
        return FiniteAlgebra(name or self.name, self.basis, product, self.unit)

    def __eq__(self, other):
        if not isinstance(other, FiniteAlgebra):
            return NotImplemented
        return (self.name, self.basis, self.product, self.unit) == (other.name, other.basis, other.product, other.unit)

    def __repr__(self):
        return f"FiniteAlgebra({self.name!r}, dim={self.dim})"


class CompatKind(str, Enum):
    Eps = "Eps"
    EpsR = "EpsR"
    EpsL = "EpsL"
    EpsPrimeR = "EpsPrimeR"
    EpsPrimeL = "EpsPrimeL"

    @property
    def coassociative(self) -> bool:
        return self in (CompatKind.Eps, CompatKind.EpsR, CompatKind.EpsL)


class CoOperation:
    """Linear map A -> A⊗A; delta[i] is a sparse vector keyed by index pairs (j, k)."""

    def __init__(self, name: str, dim: int, delta: list):
        if len(delta) != dim:
            raise ValueError(f"co-operation {name!r} has {len(delta)} rows for dimension {dim}")
        self.name = name
        self.dim = dim
        self.delta = []
        for row in delta:
            row = row if isinstance(row, SparseVector) else SparseVector(row)
            for j, k in row:
                if not (0 <= j < dim and 0 <= k < dim):
                    raise ValueError(f"co-operation {name!r} references index outside 0..{dim - 1}")
            self.delta.append(row)

    @classmethod
    def zero(cls, name: str, dim: int) -> "CoOperation":
        return cls(name, dim, [SparseVector() for _ in range(dim)])

    def apply(self, vec: Mapping) -> SparseVector:
        acc: dict = {}
        for i, c in vec.items():
            accumulate(acc, self.delta[i], c)
        return clean(acc)

    def on_first(self, t2: Mapping) -> SparseVector:
        """(Δ⊗id) on a 2-tensor."""
        acc: dict = {}
        for (j, k), c in t2.items():
            for (a, b), d in self.delta[j].items():
                key = (a, b, k)
                s = acc.get(key, 0) + c * d
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
        return clean(acc)

    def on_second(self, t2: Mapping) -> SparseVector:
        """(id⊗Δ) on a 2-tensor."""
        acc: dict = {}
        for (j, k), c in t2.items():
            for (a, b), d in self.delta[k].items():
                key = (j, a, b)
                s = acc.get(key, 0) + c * d
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
        return clean(acc)

    def scaled(self, c, name: str | None = None) -> "CoOperation":
        return CoOperation(name or self.name, self.dim, [r.scaled(c) for r in self.delta])

    def renamed(self, name: str) -> "CoOperation":
        return CoOperation(name, self.dim, self.delta)

    def __eq__(self, other):
        if not isinstance(other, CoOperation):
            return NotImplemented
        return self.dim == other.dim and self.delta == other.delta

    def __hash__(self):
        return hash((self.name, self.dim))

    def __repr__(self):
        return f"CoOperation({self.name!r}, dim={self.dim})"


def act_left(a: FiniteAlgebra, x: Mapping, t2: Mapping) -> SparseVector:
    """x·(u⊗v) = (xu)⊗v."""
    acc: dict = {}
    for i, c in x.items():
        for (j, k), d in t2.items():
            for m, e in a.mul_basis(i, j).items():
                key = (m, k)
                s = acc.get(key, 0) + c * d * e
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
    return clean(acc)


def act_right(a: FiniteAlgebra, t2: Mapping, x: Mapping) -> SparseVector:
    """(u⊗v)·x = u⊗(vx)."""
    acc: dict = {}
    for i, c in x.items():
        for (j, k), d in t2.items():
            for m, e in a.mul_basis(k, i).items():
                key = (j, m)
                s = acc.get(key, 0) + c * d * e
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
    return clean(acc)


def tensor_labeler(basis):
    def lab(k):
        if isinstance(k, tuple):
            return "⊗".join(basis[i] for i in k)
        return basis[k]
    return lab


def _compare(rep: Report, basis, where: tuple, lhs: Mapping, rhs: Mapping, tag: str = "") -> None:
    rep.checked += 1
    if lhs != rhs:
        diff = SparseVector(lhs) - SparseVector(rhs)
        rep.fail(tuple(basis[i] for i in where), format_vector(diff, tensor_labeler(basis)), tag)


def check_operation_associative(op: Operation, basis, rid: str = "associativity") -> Report:
    rep = Report(rid)
    n = op.dim
    for i, j, k in cartesian(range(n), repeat=3):
        try:
            lhs = op(op.basis(i, j), {k: 1})
            rhs = op({i: 1}, op.basis(j, k))
        except Overflow:
            rep.skipped += 1
            continue
        _compare(rep, basis, (i, j, k), lhs, rhs)
    return rep


def check_associativity(a: FiniteAlgebra) -> Report:
    """(e_i e_j) e_k = e_i (e_j e_k) on all basis triples."""
    return check_operation_associative(a.product, a.basis)


def check_coassociativity(a: FiniteAlgebra, d: CoOperation) -> Report:
    _same_dim(a, d)
    rep = Report(f"coassociativity[{d.name}]")
    for i in range(a.dim):
        t = d.delta[i]
        _compare(rep, a.basis, (i,), d.on_first(t), d.on_second(t))
    return rep


def _same_dim(a: FiniteAlgebra, *ds: CoOperation) -> None:
    for d in ds:
        if d.dim != a.dim:
            raise ValueError(f"co-operation {d.name!r} has dimension {d.dim}, algebra has {a.dim}")


def check_compat(a: FiniteAlgebra, d: CoOperation, kind: CompatKind | str) -> Report:
    """Product compatibility of the given kind on all basis pairs, plus coassociativity for unprimed kinds."""
    kind = CompatKind(kind)
    _same_dim(a, d)
    rep = Report(f"compat[{kind.value}][{d.name}]")
    left = kind in (CompatKind.Eps, CompatKind.EpsL, CompatKind.EpsPrimeL)
    right = kind in (CompatKind.Eps, CompatKind.EpsR, CompatKind.EpsPrimeR)
    for i in range(a.dim):
        for j in range(a.dim):
            try:
                lhs = d.apply(a.mul_basis(i, j))
                rhs: dict = {}
                if left:
                    accumulate(rhs, act_right(a, d.delta[i], {j: 1}))
                if right:
                    accumulate(rhs, act_left(a, {i: 1}, d.delta[j]))
            except Overflow:
                rep.skipped += 1
                continue
            _compare(rep, a.basis, (i, j), lhs, rhs, "product")
    if kind.coassociative:
        rep.absorb(check_coassociativity(a, d), "")
    return rep


def check_counit(a: FiniteAlgebra, d: CoOperation, eta: Mapping, side: str = "right",
                 elements: Iterable[int] | None = None) -> Report:
    """(id⊗η)Δ = id (side "right"), (η⊗id)Δ = id (side "left"), or both, on the given basis elements."""
    if side not in ("right", "left", "both"):
        raise ValueError(f"unknown counit side {side!r}")
    _same_dim(a, d)
    eta = SparseVector(eta)
    rep = Report(f"counit[{side}][{d.name}]")
    idx = range(a.dim) if elements is None else list(elements)
    sides = ["right", "left"] if side == "both" else [side]
    for s in sides:
        for i in idx:
            acc: dict = {}
            for (j, k), c in d.delta[i].items():
                if s == "right":
                    accumulate(acc, {j: 1}, c * eta.get(k, 0))
                else:
                    accumulate(acc, {k: 1}, c * eta.get(j, 0))
            _compare(rep, a.basis, (i,), acc, {i: 1}, s)
    return rep


def check_entanglement(a: FiniteAlgebra, d1: CoOperation, d2: CoOperation) -> Report:
    """(Δ1⊗id)Δ2 = (id⊗Δ2)Δ1 on every basis element."""
    _same_dim(a, d1, d2)
    rep = Report(f"entanglement[{d1.name}->{d2.name}]")
    for i in range(a.dim):
        _compare(rep, a.basis, (i,), d1.on_first(d2.delta[i]), d2.on_second(d1.delta[i]))
    return rep


def check_L_circular(a: FiniteAlgebra, d1: CoOperation, d2: CoOperation) -> Report:
    """Entanglement Δ1⇢Δ2 together with (Δ1⊗id)Δ2 = (id⊗Δ1)Δ2."""
    rep = Report(f"L-circular[{d1.name},{d2.name}]")
    rep.absorb(check_entanglement(a, d1, d2), "entanglement")
    second = Report("second")
    for i in range(a.dim):
        t = d2.delta[i]
        _compare(second, a.basis, (i,), d1.on_first(t), d1.on_second(t), "(D1xid)D2=(idxD1)D2")
    rep.absorb(second)
    return rep


def check_corelations(a: FiniteAlgebra, coops: Mapping[str, CoOperation], relations: list,
                      rid: str) -> Report:
    """Dual of quadratic operation relations, one co-operation per generator.

    A left comb with root r and inner node c becomes (Δc⊗id)Δr, a right comb becomes (id⊗Δc)Δr.
    `relations` is a list of (name, vector over arity-3 tree monomials).
    """
    _same_dim(a, *coops.values())
    rep = Report(rid)
    for rname, rel in relations:
        for i in range(a.dim):
            acc: dict = {}
            for mono, c in rel.items():
                root, child = mono.labels
                t = coops[root].delta[i]
                if mono.shape == "(())":
                    accumulate(acc, coops[child].on_first(t), c)
                else:
                    accumulate(acc, coops[child].on_second(t), c)
            _compare(rep, a.basis, (i,), acc, {}, rname)
    return rep


def check_codialgebra(a: FiniteAlgebra, dL: CoOperation, dR: CoOperation) -> Report:
    """Dualized dialgebra axioms with Δ⊣ = dL and Δ⊢ = dR, including coassociativity of both."""
    from .operads import preset

    p = preset("dialgebra")
    return check_corelations(a, {"dashv": dL, "vdash": dR}, p.named_relations(), f"codialgebra[{dL.name},{dR.name}]")


def check_cotrialgebra(a: FiniteAlgebra, dL: CoOperation, dR: CoOperation, dPerp: CoOperation) -> Report:
    """Dualized trialgebra axioms (which contain the codialgebra ones and all three coassociativities)."""
    from .operads import preset

    p = preset("trialgebra")
    return check_corelations(a, {"dashv": dL, "vdash": dR, "perp": dPerp}, p.named_relations(),
                             f"cotrialgebra[{dL.name},{dR.name},{dPerp.name}]")
