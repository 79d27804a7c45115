"""Truncated graded models (path and word algebras), integration operators, and named example algebras."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from typing import Iterable, Mapping

from .algebra import CoOperation, FiniteAlgebra, Operation, Overflow
from .linalg import LinearMap, SparseVector, accumulate, clean, to_rational


# ---------------------------------------------------------------- weighted digraphs

@dataclass(frozen=True)
class Arc:
    src: str
    dst: str
    weight: Fraction


@dataclass
class WeightedDigraph:
    vertices: tuple
    arcs: tuple
    name: str = "graph"

    def __post_init__(self):
        self.vertices = tuple(str(v) for v in self.vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        vs = set(self.vertices)
        arcs = []
        for a in self.arcs:
            if not isinstance(a, Arc):
                a = Arc(str(a[0]), str(a[1]), to_rational(a[2]))
            if a.src not in vs or a.dst not in vs:
                raise ValueError(f"arc {a.src}->{a.dst} uses an undeclared vertex")
            arcs.append(a)
        self.arcs = tuple(arcs)

    def is_injective(self) -> bool:
        """s × t is injective: at most one arc between any ordered pair of vertices."""
        pairs = [(a.src, a.dst) for a in self.arcs]
        return len(pairs) == len(set(pairs))

    def require_injective(self) -> None:
        if not self.is_injective():
            dup = sorted({(a.src, a.dst) for a in self.arcs if sum(1 for b in self.arcs if (b.src, b.dst) == (a.src, a.dst)) > 1})
            raise ValueError(f"s x t is not injective: repeated arcs {dup}")

    def out_arcs(self, v: str) -> list:
        return [a for a in self.arcs if a.src == v]

    def in_arcs(self, v: str) -> list:
        return [a for a in self.arcs if a.dst == v]

    def weight(self, s: str, t: str) -> Fraction:
        for a in self.arcs:
            if a.src == s and a.dst == t:
                return a.weight
        raise KeyError(f"no arc {s}->{t}")


def chain_graph(n: int = 6, weights: Iterable | None = None) -> WeightedDigraph:
    """Chain 1 -> 2 -> ... -> n.  The default weights are distinct small rationals."""
    if weights is None:
        weights = [Fraction(k + 1, k + 2) + k for k in range(n - 1)]
    weights = [to_rational(w) for w in weights]
    if len(weights) != n - 1:
        raise ValueError("chain of n vertices needs n-1 weights")
    verts = [str(i) for i in range(1, n + 1)]
    return WeightedDigraph(verts, [Arc(verts[i], verts[i + 1], weights[i]) for i in range(n - 1)], f"chain{n}")


# ---------------------------------------------------------------- path algebra

def vertex_label(v: str) -> str:
    return f"e{v}"


def path_label(vs: tuple) -> str:
    return "-".join(vs)


class PathAlgebraTrunc(FiniteAlgebra):
    """Path algebra kG with paths of length at most N; longer concatenations are OVERFLOW."""

    def __init__(self, graph: WeightedDigraph, N: int):
        graph.require_injective()
        if N < 0:
            raise ValueError("truncation must be non-negative")
        self.graph = graph
        self.N = N
        paths = [(v,) for v in graph.vertices]
        frontier = [(a.src, a.dst) for a in graph.arcs] if N >= 1 else []
        length = 1
        while frontier:
            paths.extend(frontier)
            length += 1
            if length > N:
                break
            frontier = [p + (a.dst,) for p in frontier for a in graph.out_arcs(p[-1])]
        self.paths = paths
        labels = [vertex_label(p[0]) if len(p) == 1 else path_label(p) for p in paths]
        pidx = {p: i for i, p in enumerate(paths)}
        table, over = {}, []
        for i, p in enumerate(paths):
            for j, q in enumerate(paths):
                if p[-1] != q[0]:
                    continue
                r = p + q[1:]
                if len(r) - 1 > N:
                    over.append((i, j))
                else:
                    table[(i, j)] = SparseVector({pidx[r]: 1})
        unit = {pidx[(v,)]: 1 for v in graph.vertices}
        super().__init__(f"kG[{graph.name},N={N}]", labels, Operation(len(paths), table, over), unit)
        self.path_index = pidx

    def path(self, vs) -> int:
        vs = tuple(str(v) for v in vs)
        return self.path_index[vs]


def path_epsilon_coproduct(p: PathAlgebraTrunc, name: str = "Delta") -> CoOperation:
    """Δ(e_i) = 0, Δ(a_ij) = w e_i⊗e_j, extended to paths by the Leibniz rule."""
    rows = []
    for path in p.paths:
        acc: dict = {}
        for k in range(len(path) - 1):
            w = p.graph.weight(path[k], path[k + 1])
            left = p.path_index[path[:k + 1]]
            right = p.path_index[path[k + 1:]]
            accumulate(acc, {(left, right): 1}, w)
        rows.append(clean(acc))
    return CoOperation(name, p.dim, rows)


def research_coproduct(p: PathAlgebraTrunc, name: str = "DeltaM") -> CoOperation:
    """Δ_M(α) = α ⊗ Σ a_ij, the sum of all arcs (needs N >= 1)."""
    if p.N < 1:
        raise ValueError("the arc sum needs truncation N >= 1")
    arcs = [p.path_index[(a.src, a.dst)] for a in p.graph.arcs]
    rows = [SparseVector({(i, j): 1 for j in arcs}) for i in range(p.dim)]
    return CoOperation(name, p.dim, rows)


def research_map(p: PathAlgebraTrunc, alpha, delta: CoOperation | None = None,
                 delta_m: CoOperation | None = None) -> SparseVector:
    """(μ⊗id)(id⊗Δ)Δ_M(α), keyed by (path index, vertex index)."""
    delta = delta or path_epsilon_coproduct(p)
    delta_m = delta_m or research_coproduct(p)
    i = alpha if isinstance(alpha, int) else p.path(alpha)
    t3 = delta.on_second(delta_m.delta[i])
    acc: dict = {}
    for (x, y, z), c in t3.items():
        for m, v in p.mul_basis(x, y).items():
            accumulate(acc, {(m, z): 1}, c * v)
    return clean(acc)


# ---------------------------------------------------------------- word algebra

@dataclass(frozen=True)
class Substitution:
    symbol: str
    left: str
    right: str
    prob: Fraction


class WordAlgebraTrunc(FiniteAlgebra):
    """Free algebra on an alphabet, nonempty words of length at most N, with OVERFLOW beyond N."""

    def __init__(self, alphabet: Iterable[str], N: int, substitutions: Iterable = (), name: str | None = None):
        self.alphabet = tuple(alphabet)
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("duplicate letters")
        if N < 1:
            raise ValueError("truncation must be at least 1")
        self.N = N
        words = []
        for n in range(1, N + 1):
            words.extend(cartesian(self.alphabet, repeat=n))
        self.words = words
        widx = {w: i for i, w in enumerate(words)}
        self.word_index = widx
        table, over = {}, []
        for i, u in enumerate(words):
            for j, v in enumerate(words):
                if len(u) + len(v) > N:
                    over.append((i, j))
                else:
                    table[(i, j)] = SparseVector({widx[u + v]: 1})
        subs = []
        for s in substitutions:
            if not isinstance(s, Substitution):
                s = Substitution(str(s[0]), str(s[1]), str(s[2]), to_rational(s[3]))
            for x in (s.symbol, s.left, s.right):
                if x not in self.alphabet:
                    raise ValueError(f"substitution uses unknown letter {x!r}")
            subs.append(s)
        self.substitutions = tuple(subs)
        super().__init__(name or f"As[{''.join(self.alphabet)},N={N}]", [self.show(w) for w in words],
                         Operation(len(words), table, over))

    @staticmethod
    def show(w: tuple) -> str:
        if all(len(x) == 1 for x in w):
            return "".join(w)
        return ".".join(w)

    def word(self, w) -> int:
        if isinstance(w, str):
            w = tuple(w) if all(len(x) == 1 for x in self.alphabet) else tuple(w.split("."))
        return self.word_index[tuple(w)]

    def probability_sums(self) -> dict:
        out = {a: Fraction(0) for a in self.alphabet}
        for s in self.substitutions:
            out[s.symbol] += s.prob
        return out

    def letter_coproduct(self) -> dict:
        """Δ on letters: s -> Σ P(s ↦ s1 s2) s1⊗s2."""
        out = {a: {} for a in self.alphabet}
        for s in self.substitutions:
            accumulate(out[s.symbol], {(s.left, s.right): 1}, s.prob)
        return out


def _extend(w: WordAlgebraTrunc, letter_delta: Mapping, side: str, name: str) -> CoOperation:
    """Right: Δ♯(w1..wn) = w1..w(n-1)·Δ(wn).  Left: Δ♯(w1..wn) = Δ(w1)·w2..wn."""
    rows = []
    for word in w.words:
        acc: dict = {}
        if side == "right":
            prefix, last = word[:-1], word[-1]
            for (x, y), c in letter_delta[last].items():
                key = (w.word_index[prefix + (x,)], w.word_index[(y,)])
                accumulate(acc, {key: 1}, c)
        else:
            first, suffix = word[0], word[1:]
            for (x, y), c in letter_delta[first].items():
                key = (w.word_index[(x,)], w.word_index[(y,) + suffix])
                accumulate(acc, {key: 1}, c)
        rows.append(clean(acc))
    return CoOperation(name, w.dim, rows)


def substitution_coproduct(w: WordAlgebraTrunc, side: str = "right", name: str = "Delta") -> CoOperation:
    return _extend(w, w.letter_coproduct(), side, name)


def graph_word_algebra(graph: WeightedDigraph, N: int) -> WordAlgebraTrunc:
    return WordAlgebraTrunc(graph.vertices, N, name=f"As[{graph.name},N={N}]")


def delta_M(graph: WeightedDigraph, w: WordAlgebraTrunc, side: str = "right", name: str | None = None) -> CoOperation:
    """Right: Δ_M(v) = Σ w(a) v⊗t(a) over arcs leaving v.  Left: Σ w(a) s(a)⊗v over arcs entering v."""
    graph.require_injective()
    if side not in ("right", "left"):
        raise ValueError(f"unknown side {side!r}")
    letter = {}
    for v in graph.vertices:
        acc: dict = {}
        if side == "right":
            for a in graph.out_arcs(v):
                accumulate(acc, {(v, a.dst): 1}, a.weight)
        else:
            for a in graph.in_arcs(v):
                accumulate(acc, {(a.src, v): 1}, a.weight)
        letter[v] = acc
    return _extend(w, letter, side, name or f"DeltaM[{side}]")


def substitution_dynamics(w: WordAlgebraTrunc, start, steps: int, delta: CoOperation | None = None) -> SparseVector:
    """Apply μΔ♯ `steps` times to the start word; keys are word labels."""
    delta = delta or substitution_coproduct(w)
    vec = SparseVector({w.word(start): 1})
    for t in range(1, steps + 1):
        acc: dict = {}
        for i, c in vec.items():
            for (x, y), d in delta.delta[i].items():
                try:
                    accumulate(acc, w.mul_basis(x, y), c * d)
                except Overflow:
                    raise Overflow(f"step {t} leaves the truncation N={w.N}") from None
        vec = clean(acc)
    return SparseVector({w.basis[i]: c for i, c in vec.items()})


# ---------------------------------------------------------------- truncated polynomials

def integration_baxter(n: int, unital: bool = False) -> tuple:
    """t·k[t]/(t^n) (or k[t]/(t^n) when unital) with R(t^a) = t^(a+1)/(a+1) and R(t^(n-1)) = 0."""
    if n < 2:
        raise ValueError("truncation must be at least 2")
    lo = 0 if unital else 1
    powers = list(range(lo, n))
    idx = {a: i for i, a in enumerate(powers)}
    labels = ["1" if a == 0 else ("t" if a == 1 else f"t^{a}") for a in powers]
    table = {}
    for a in powers:
        for b in powers:
            if a + b < n:
                table[(idx[a], idx[b])] = SparseVector({idx[a + b]: 1})
    unit = {idx[0]: 1} if unital else None
    alg = FiniteAlgebra(f"k[t]/(t^{n})" if unital else f"t.k[t]/(t^{n})", labels, table, unit)
    cols = []
    for a in powers:
        cols.append(SparseVector({idx[a + 1]: Fraction(1, a + 1)}) if a + 1 < n else SparseVector())
    return alg, LinearMap(len(powers), len(powers), cols)


# ---------------------------------------------------------------- named example algebras

def matrix_algebra(n: int) -> FiniteAlgebra:
    """M_n(k) on matrix units E_ij, row-major."""
    basis = [f"E{i}{j}" if n < 10 else f"E{i},{j}" for i in range(1, n + 1) for j in range(1, n + 1)]

    def ix(i, j):
        return (i - 1) * n + (j - 1)

    table = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                table[(ix(i, j), ix(j, k))] = SparseVector({ix(i, k): 1})
    unit = {ix(i, i): 1 for i in range(1, n + 1)}
    return FiniteAlgebra(f"M{n}", basis, table, unit)


def upper_triangular_algebra(n: int) -> FiniteAlgebra:
    """Upper triangular n×n matrices on the units E_ij with i <= j."""
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
    ix = {p: k for k, p in enumerate(pairs)}
    table = {}
    for (i, j) in pairs:
        for (j2, k) in pairs:
            if j == j2:
                table[(ix[(i, j)], ix[(j, k)])] = SparseVector({ix[(i, k)]: 1})
    unit = {ix[(i, i)]: 1 for i in range(1, n + 1)}
    return FiniteAlgebra(f"T{n}", [f"E{i}{j}" for i, j in pairs], table, unit)


def _m2_from_formula(name: str, f) -> CoOperation:
    """f(a, b, c, d) returns a list of (coeff, X, Y) with X, Y 2x2 nested lists; Δ(M) = Σ coeff X⊗Y."""
    rows = []
    for k in range(4):
        entries = [0, 0, 0, 0]
        entries[k] = 1
        acc: dict = {}
        for c, X, Y in f(*entries):
            for p in range(4):
                x = X[p // 2][p % 2]
                if not x:
                    continue
                for q in range(4):
                    y = Y[q // 2][q % 2]
                    if y:
                        accumulate(acc, {(p, q): 1}, to_rational(c) * x * y)
        rows.append(clean(acc))
    return CoOperation(name, 4, rows)


E12 = [[0, 1], [0, 0]]
E21 = [[0, 0], [1, 0]]


def m2_delta0(name: str = "Delta0") -> CoOperation:
    return _m2_from_formula(name, lambda a, b, c, d: [(1, [[0, a], [0, c]], E12), (-1, E12, [[c, d], [0, 0]])])


def m2_delta1(name: str = "Delta1") -> CoOperation:
    return _m2_from_formula(name, lambda a, b, c, d: [(1, [[b, 0], [d, 0]], E21), (-1, E21, [[0, 0], [a, b]])])


def circular_m2_pair(lam, nu) -> tuple:
    lam, nu = to_rational(lam), to_rational(nu)
    d1 = m2_delta0("Delta1")
    d2 = _m2_from_formula("Delta2", lambda a, b, c, d: [
        (1, [[0, lam * a], [0, nu * c]], E12), (-1, E12, [[nu * c, lam * d], [0, 0]])])
    return d1, d2


def circular_m2_prime_pair(lam, nu) -> tuple:
    lam, nu = to_rational(lam), to_rational(nu)
    d1 = m2_delta1("Delta1p")
    d2 = _m2_from_formula("Delta2p", lambda a, b, c, d: [
        (1, [[lam * b, 0], [nu * d, 0]], E21), (-1, E21, [[0, 0], [nu * a, lam * b]])])
    return d1, d2


def mn_delta_ab(n: int, a: int, b: int, name: str | None = None) -> CoOperation:
    """Δ(X) = Σ_k X_ka E_kb ⊗ E_ab − E_ab ⊗ Σ_k X_bk E_ak, for a + b = n + 1."""
    if a + b != n + 1 or not (1 <= a <= n and 1 <= b <= n):
        raise ValueError(f"need 1 <= a, b <= n and a + b = n + 1, got a={a}, b={b}, n={n}")

    def ix(i, j):
        return (i - 1) * n + (j - 1)

    rows = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            acc: dict = {}
            if j == a:
                accumulate(acc, {(ix(i, b), ix(a, b)): 1})
            if i == b:
                accumulate(acc, {(ix(a, b), ix(a, j)): 1}, -1)
            rows.append(clean(acc))
    return CoOperation(name or f"Delta({a},{b})", n * n, rows)


def sandwich_coproduct(alg: FiniteAlgebra, A: Mapping, B: Mapping, side: str = "right",
                       name: str = "Delta") -> CoOperation:
    """Right: Δ(x) = xA⊗B (ε[R] type).  Left: Δ(x) = A⊗Bx (ε[L] type).  A, B are vectors."""
    A, B = SparseVector(A), SparseVector(B)
    rows = []
    for i in range(alg.dim):
        acc: dict = {}
        if side == "right":
            xa = alg.mul({i: 1}, A)
            for p, c in xa.items():
                for q, d in B.items():
                    accumulate(acc, {(p, q): 1}, c * d)
        elif side == "left":
            bx = alg.mul(B, {i: 1})
            for p, c in A.items():
                for q, d in bx.items():
                    accumulate(acc, {(p, q): 1}, c * d)
        else:
            raise ValueError(f"unknown side {side!r}")
        rows.append(clean(acc))
    return CoOperation(name, alg.dim, rows)


def casimir_coproduct(n: int, name: str = "Casimir") -> CoOperation:
    """Δ(x) = Σ_ij xE_ij ⊗ E_ji on M_n(k).

    The Casimir tensor commutes with the bimodule action, so Δ is both ε[L] and ε[R], and it
    is coassociative.
    """
    m = matrix_algebra(n)
    rows = []
    for x in range(m.dim):
        acc: dict = {}
        for i in range(n):
            for j in range(n):
                for p, c in m.mul_basis(x, i * n + j).items():
                    accumulate(acc, {(p, j * n + i): 1}, c)
        rows.append(clean(acc))
    return CoOperation(name, m.dim, rows)


def m2_ab(lam, name: str = "DeltaAB") -> CoOperation:
    """Δ(x) = xA⊗B with A = [[λ,λ],[0,0]], B = [[0,0],[λ,λ]], so A² = λA and BA = λB."""
    lam = to_rational(lam)
    m2 = matrix_algebra(2)
    A = {0: lam, 1: lam}
    B = {2: lam, 3: lam}
    return sandwich_coproduct(m2, A, B, "right", name)


def delta_lambda(n: int, lam) -> tuple:
    """k[X1..Xn]/(XiXj) with Δ(1) = 1⊗Σ + Σ⊗1 + λΣ⊗Σ and Δ(Xi) = Xi⊗Σ; also the counit ε.

    ε(1) = -λ and ε(Σ) = 1; the value on Σ is spread evenly as ε(Xi) = 1/n.
    """
    if n < 1:
        raise ValueError("n must be positive")
    lam = to_rational(lam)
    basis = ["1"] + [f"X{i}" for i in range(1, n + 1)]
    table = {}
    for i in range(n + 1):
        table[(0, i)] = SparseVector({i: 1})
        table[(i, 0)] = SparseVector({i: 1})
    alg = FiniteAlgebra(f"k[X1..X{n}]/R", basis, table, {0: 1})
    xs = range(1, n + 1)
    one: dict = {}
    for i in xs:
        accumulate(one, {(0, i): 1})
        accumulate(one, {(i, 0): 1})
        for j in xs:
            accumulate(one, {(i, j): 1}, lam)
    rows = [clean(one)] + [SparseVector({(i, j): 1 for j in xs}) for i in xs]
    delta = CoOperation(f"DeltaLambda[{lam}]", n + 1, rows)
    eta = SparseVector({0: -lam, **{i: Fraction(1, n) for i in xs}})
    return alg, delta, eta


@dataclass
class SpecialAlgebra:
    algebra: FiniteAlgebra
    cooperations: dict
    counit: SparseVector | None = None
    expected: dict = field(default_factory=dict)


def build_special_algebras(name: str, *params) -> SpecialAlgebra:
    """Named examples; `expected` maps co-operation name to the compatibility kind it should pass."""
    if name == "deltaLambda":
        n, lam = params
        alg, d, eta = delta_lambda(int(n), lam)
        return SpecialAlgebra(alg, {d.name: d}, eta, {d.name: "EpsR"})
    if name == "m2AB":
        (lam,) = params
        d = m2_ab(lam)
        return SpecialAlgebra(matrix_algebra(2), {d.name: d}, None, {d.name: "EpsR"})
    if name == "m2Delta0":
        d = m2_delta0()
        return SpecialAlgebra(matrix_algebra(2), {d.name: d}, None, {d.name: "Eps"})
    if name == "m2Delta1":
        d = m2_delta1()
        return SpecialAlgebra(matrix_algebra(2), {d.name: d}, None, {d.name: "Eps"})
    if name == "mnDeltaAB":
        n, a, b = (int(x) for x in params)
        d = mn_delta_ab(n, a, b)
        return SpecialAlgebra(matrix_algebra(n), {d.name: d}, None, {d.name: "Eps"})
    if name == "circularM2":
        d1, d2 = circular_m2_pair(*params)
        return SpecialAlgebra(matrix_algebra(2), {d1.name: d1, d2.name: d2}, None, {d1.name: "Eps"})
    if name == "circularM2prime":
        d1, d2 = circular_m2_prime_pair(*params)
        return SpecialAlgebra(matrix_algebra(2), {d1.name: d1, d2.name: d2}, None, {d1.name: "Eps"})
    raise KeyError(f"unknown special algebra {name!r}")


SPECIAL_NAMES = ("deltaLambda", "m2AB", "m2Delta0", "m2Delta1", "mnDeltaAB", "circularM2", "circularM2prime")
