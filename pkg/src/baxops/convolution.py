"""End(A), convolution products, the shifts β and γ, and Baxter identity checks."""
from __future__ import annotations

from enum import Enum
from typing import Mapping

from .algebra import CoOperation, FiniteAlgebra, Operation, Overflow, _compare
from .linalg import LinearMap, SparseVector, accumulate, clean
from .reports import Report


class BaxterKind(str, Enum):
    Full = "full"
    Right = "right"
    Left = "left"


def end_label(a: FiniteAlgebra, p: int, q: int) -> str:
    return f"E[{p + 1},{q + 1}]"


def end_algebra(a: FiniteAlgebra) -> FiniteAlgebra:
    """End(A) under composition, basis E_pq (row-major): E_pq sends e_q to e_p."""
    d = a.dim
    table = {}
    for p in range(d):
        for q in range(d):
            for s in range(d):
                table[(p * d + q, q * d + s)] = SparseVector({p * d + s: 1})
    basis = [end_label(a, p, q) for p in range(d) for q in range(d)]
    unit = SparseVector({p * d + p: 1 for p in range(d)})
    return FiniteAlgebra(f"End({a.name})", basis, table, unit)


def to_end_vector(T: LinearMap) -> SparseVector:
    d = T.n_in
    out = {}
    for q, col in enumerate(T.cols):
        for p, v in col.items():
            out[p * d + q] = v
    return clean(out)


def from_end_vector(v: Mapping, d: int) -> LinearMap:
    cols = [dict() for _ in range(d)]
    for k, c in v.items():
        p, q = divmod(k, d)
        cols[q][p] = c
    return LinearMap(d, d, cols)


class ConvolutionContext:
    """An algebra with named co-operations; caches the shift operators on End(A)."""

    def __init__(self, algebra: FiniteAlgebra, cooperations):
        self.algebra = algebra
        if isinstance(cooperations, CoOperation):
            cooperations = [cooperations]
        if isinstance(cooperations, Mapping):
            self.cooperations = dict(cooperations)
        else:
            self.cooperations = {d.name: d for d in cooperations}
        for d in self.cooperations.values():
            if d.dim != algebra.dim:
                raise ValueError(f"co-operation {d.name!r} is not over the algebra's basis")
        self._end = None
        self._cache: dict = {}

    @property
    def end(self) -> FiniteAlgebra:
        if self._end is None:
            self._end = end_algebra(self.algebra)
        return self._end

    def delta(self, name: str) -> CoOperation:
        try:
            return self.cooperations[name]
        except KeyError:
            raise KeyError(f"unknown co-operation {name!r}") from None

    def convolve(self, name: str, T: LinearMap, S: LinearMap) -> LinearMap:
        return convolve(self, name, T, S)

    def beta(self, name: str) -> LinearMap:
        return shift_beta(self, name)

    def gamma(self, name: str) -> LinearMap:
        return shift_gamma(self, name)


def convolve(ctx: ConvolutionContext, name: str, T: LinearMap, S: LinearMap) -> LinearMap:
    """T∗S = μ(T⊗S)Δ, column by column."""
    a = ctx.algebra
    d = ctx.delta(name)
    cols = []
    for i in range(a.dim):
        acc: dict = {}
        for (j, k), c in d.delta[i].items():
            accumulate(acc, a.mul(T.cols[j], S.cols[k]), c)
        cols.append(clean(acc))
    return LinearMap(a.dim, a.dim, cols)


def _shift(ctx: ConvolutionContext, name: str, side: str) -> LinearMap:
    key = (side, name)
    if key not in ctx._cache:
        a = ctx.algebra
        n = a.dim
        ident = LinearMap.identity(n)
        cols = []
        for k in range(n * n):
            E = from_end_vector({k: 1}, n)
            img = convolve(ctx, name, ident, E) if side == "beta" else convolve(ctx, name, E, ident)
            cols.append(to_end_vector(img))
        ctx._cache[key] = LinearMap(n * n, n * n, cols)
    return ctx._cache[key]


def shift_beta(ctx: ConvolutionContext, name: str) -> LinearMap:
    """β(T) = id∗T as a dim²×dim² matrix on End(A)."""
    return _shift(ctx, name, "beta")


def shift_gamma(ctx: ConvolutionContext, name: str) -> LinearMap:
    """γ(T) = T∗id as a dim²×dim² matrix on End(A)."""
    return _shift(ctx, name, "gamma")


def convolution_operation(ctx: ConvolutionContext, name: str) -> Operation:
    """The convolution product as a bilinear operation on the End(A) basis."""
    n = ctx.algebra.dim

    def f(x, y):
        return to_end_vector(convolve(ctx, name, from_end_vector({x: 1}, n), from_end_vector({y: 1}, n)))

    return Operation.from_function(n * n, f)


def _carrier_ops(carrier, op_names=None) -> dict:
    ops = carrier.ops
    if op_names is not None:
        ops = {k: ops[k] for k in op_names}
    return ops


def check_baxter(carrier, zeta: LinearMap, kind: BaxterKind | str = BaxterKind.Full,
                 op_names=None, rid: str | None = None) -> Report:
    """ζ(x)∘ζ(y) against ζ(ζ(x)∘y + x∘ζ(y)) (Full), ζ(ζ(x)∘y) (Right) or ζ(x∘ζ(y)) (Left), per operation."""
    kind = BaxterKind(kind)
    n = len(carrier.basis)
    if not (zeta.n_in == zeta.n_out == n):
        raise ValueError(f"dimension mismatch: operator is {zeta.n_out}x{zeta.n_in}, carrier has dimension {n}")
    rep = Report(rid or f"baxter[{kind.value}]")
    for oname, op in _carrier_ops(carrier, op_names).items():
        for i in range(n):
            zi = zeta.cols[i]
            for j in range(n):
                zj = zeta.cols[j]
                try:
                    lhs = op(zi, zj)
                    inner: dict = {}
                    if kind in (BaxterKind.Full, BaxterKind.Right):
                        accumulate(inner, op(zi, {j: 1}))
                    if kind in (BaxterKind.Full, BaxterKind.Left):
                        accumulate(inner, op({i: 1}, zj))
                    rhs = zeta.apply(inner)
                except Overflow:
                    rep.skipped += 1
                    continue
                _compare(rep, carrier.basis, (i, j), lhs, rhs, oname)
    return rep


def check_commute(op1: LinearMap, op2: LinearMap, basis=None, rid: str = "commute") -> Report:
    """op1∘op2 = op2∘op1, compared column by column."""
    if not (op1.n_in == op1.n_out == op2.n_in == op2.n_out):
        raise ValueError("dimension mismatch")
    basis = basis or [str(i) for i in range(op1.n_in)]
    rep = Report(rid)
    for j in range(op1.n_in):
        lhs = op1.apply(op2.cols[j])
        rhs = op2.apply(op1.cols[j])
        _compare(rep, basis, (j,), lhs, rhs)
    return rep


def check_mixed_baxter(ctx: ConvolutionContext, d1: str, d2: str, law: str) -> Report:
    """Bax12: β2(T)β1(S) = β1(β2(T)S).  Bax3: γ2(T)γ1(S) = γ2(Tγ1(S)).  Over End(A) basis pairs."""
    E = ctx.end
    comp = E.product
    rep = Report(f"{law}[{d1},{d2}]")
    if law == "Bax12":
        b1, b2 = shift_beta(ctx, d1), shift_beta(ctx, d2)
        for t in range(E.dim):
            bt = b2.cols[t]
            for s in range(E.dim):
                lhs = comp(bt, b1.cols[s])
                rhs = b1.apply(comp(bt, {s: 1}))
                _compare(rep, E.basis, (t, s), lhs, rhs)
    elif law == "Bax3":
        g1, g2 = shift_gamma(ctx, d1), shift_gamma(ctx, d2)
        for t in range(E.dim):
            for s in range(E.dim):
                lhs = comp(g2.cols[t], g1.cols[s])
                rhs = g2.apply(comp({t: 1}, g1.cols[s]))
                _compare(rep, E.basis, (t, s), lhs, rhs)
    else:
        raise ValueError(f"unknown law {law!r}")
    return rep
