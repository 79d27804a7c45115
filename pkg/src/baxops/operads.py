"""Binary non-symmetric operads: tree monomials, quadratic ideals and dimension sequences.

Tree monomials are planar binary trees whose internal nodes carry generator names.
A shape is encoded as a balanced-parenthesis word: a leaf is the empty word and a node
with subtrees l, r is "(" + l + ")" + r.  Labels are listed in root-first preorder
(root, then the left subtree, then the right subtree).  In arity 3 this gives

    left comb   (x a y) b z  ->  shape "(())", labels (b, a)
    right comb  x b (y a z)  ->  shape "()()", labels (b, a)

Why single grafts span the ideal: an element of the arity-n ideal component is a tree
with one relation substituted at some node.  Strip the generator at the root if the
relation is not there, or graft the remaining subtrees leaf by leaf if it is; either way
the element is reached from arity n-1 ideal elements by grafting one generator at a leaf
or grafting the ideal element into one input of a generator.  Linearity lets us start each
step from a basis of the previous component instead of the full spanning set.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from .linalg import DEFAULT_PRIMES, IntMatrix, SparseVector, accumulate, clean, echelon_rows, rank_modular, to_rational

LEFT = "(())"
RIGHT = "()()"

DEFAULT_MAX_CELLS = 20_000_000


class TooLarge(MemoryError):
    """Refusal to build an ideal matrix above the configured size ceiling."""


@dataclass(frozen=True, order=True)
class TreeMonomial:
    shape: str
    labels: tuple

    def __post_init__(self):
        if self.shape.count("(") != self.shape.count(")"):
            raise ValueError(f"unbalanced shape {self.shape!r}")
        if len(self.labels) != len(self.shape) // 2:
            raise ValueError("label count must equal the number of internal nodes")

    @property
    def arity(self) -> int:
        return len(self.shape) // 2 + 1

    @classmethod
    def generator(cls, g: str) -> "TreeMonomial":
        return cls("()", (g,))

    @classmethod
    def left(cls, root: str, child: str) -> "TreeMonomial":
        return cls(LEFT, (root, child))

    @classmethod
    def right(cls, root: str, child: str) -> "TreeMonomial":
        return cls(RIGHT, (root, child))

    def nested(self):
        return _decode(self.shape, self.labels)

    @classmethod
    def from_nested(cls, t) -> "TreeMonomial":
        return cls(*_encode(t))

    def __str__(self):
        return _show(self.nested(), iter("xyzuvwabcdefghijklmnopqrst"))


@lru_cache(maxsize=None)
def _decode(shape: str, labels: tuple):
    pos = 0
    lab = iter(labels)

    def parse():
        nonlocal pos
        if pos == len(shape) or shape[pos] == ")":
            return None
        pos += 1
        root = next(lab)
        left = parse()
        if shape[pos] != ")":
            raise ValueError(f"malformed shape {shape!r}")
        pos += 1
        right = parse()
        return (root, left, right)

    t = parse()
    if pos != len(shape):
        raise ValueError(f"malformed shape {shape!r}")
    return t


def _encode(t) -> tuple:
    if t is None:
        return "", ()
    ls, ll = _encode(t[1])
    rs, rl = _encode(t[2])
    return "(" + ls + ")" + rs, (t[0],) + ll + rl


def _show(t, names) -> str:
    if t is None:
        return next(names)
    return f"({_show(t[1], names)} {t[0]} {_show(t[2], names)})"


def _leaves(t) -> int:
    return 1 if t is None else _leaves(t[1]) + _leaves(t[2])


def _graft_nested(t, i: int, s):
    """Replace leaf i (1-based) of nested tree t by s; returns (tree, leaves consumed)."""
    def walk(node, k):
        if node is None:
            return (s, 1) if k == 1 else (None, 1)
        left, nl = walk(node[1], k)
        if k <= nl:
            return (node[0], left, node[2]), nl + _leaves(node[2])
        right, nr = walk(node[2], k - nl)
        return (node[0], node[1], right), nl + nr
    out, n = walk(t, i)
    return out


@lru_cache(maxsize=1 << 16)
def _graft_cached(t: TreeMonomial, i: int, s: TreeMonomial) -> TreeMonomial:
    return TreeMonomial.from_nested(_graft_nested(t.nested(), i, s.nested()))


def graft(t, i: int, s):
    """Partial composition t ∘_i s, extended linearly when t or s is a sparse vector of monomials."""
    if isinstance(t, TreeMonomial) and isinstance(s, TreeMonomial):
        if not 1 <= i <= t.arity:
            raise IndexError(f"leaf {i} outside 1..{t.arity}")
        return _graft_cached(t, i, s)
    tv = {t: 1} if isinstance(t, TreeMonomial) else t
    sv = {s: 1} if isinstance(s, TreeMonomial) else s
    acc: dict = {}
    for a, c in tv.items():
        for b, d in sv.items():
            accumulate(acc, {graft(a, i, b): 1}, c * d)
    return clean(acc)


@lru_cache(maxsize=None)
def enumerate_shapes(n: int) -> tuple:
    """All planar binary tree shapes with n leaves, ordered by left-subtree size then recursively."""
    if n < 1:
        raise ValueError("arity must be at least 1")
    if n == 1:
        return ("",)
    out = []
    for k in range(1, n):
        for l in enumerate_shapes(k):
            for r in enumerate_shapes(n - k):
                out.append("(" + l + ")" + r)
    return tuple(out)


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def free_dim(g: int, n: int) -> int:
    return catalan(n - 1) * g ** (n - 1)


# ---------------------------------------------------------------- presentations

_SIDE_L = re.compile(r"^\(x (\S+) y\) (\S+) z$")
_SIDE_R = re.compile(r"^x (\S+) \(y (\S+) z\)$")


def _expand_side(side: str, expand) -> SparseVector:
    side = " ".join(side.split())
    m = _SIDE_L.match(side)
    acc: dict = {}
    if m:
        inner, outer = m.group(1), m.group(2)
        for r in expand(outer):
            for c in expand(inner):
                accumulate(acc, {TreeMonomial.left(r, c): 1})
        return clean(acc)
    m = _SIDE_R.match(side)
    if m:
        outer, inner = m.group(1), m.group(2)
        for r in expand(outer):
            for c in expand(inner):
                accumulate(acc, {TreeMonomial.right(r, c): 1})
        return clean(acc)
    raise ValueError(f"cannot parse relation side {side!r}")


def parse_relation(text: str, generators, sums: dict | None = None) -> SparseVector:
    """Parse "(x A y) B z = x C (y D z)" where names are generators or entries of `sums`."""
    sums = sums or {}

    def expand(name):
        if name in sums:
            return sums[name]
        if name in generators:
            return [name]
        raise ValueError(f"unknown operation {name!r}")

    lhs, rhs = text.split("=")
    vec = _expand_side(lhs.strip(), expand) - _expand_side(rhs.strip(), expand)
    if not vec:
        raise ValueError(f"relation {text!r} is trivial")
    return vec


@dataclass
class OperadPresentation:
    name: str
    generators: tuple
    relations: list
    relation_names: list = field(default_factory=list)
    sums: dict = field(default_factory=dict)
    sources: list = field(default_factory=list)

    def __post_init__(self):
        self.generators = tuple(self.generators)
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator names")
        gens = set(self.generators)
        rels = []
        for r in self.relations:
            r = r if isinstance(r, SparseVector) else SparseVector(r)
            if not r:
                raise ValueError("relations must be nonzero")
            for m in r:
                if m.arity != 3:
                    raise ValueError("relations must be quadratic (arity 3)")
                if not set(m.labels) <= gens:
                    raise ValueError(f"relation uses undeclared generator in {m.labels}")
            rels.append(r)
        self.relations = rels
        if not self.relation_names:
            self.relation_names = [f"r{i + 1}" for i in range(len(rels))]

    @property
    def g(self) -> int:
        return len(self.generators)

    def named_relations(self) -> list:
        return list(zip(self.relation_names, self.relations))

    @classmethod
    def from_displays(cls, name, generators, displays, sums=None, names=None) -> "OperadPresentation":
        rels = [parse_relation(d, generators, sums) for d in displays]
        return cls(name, tuple(generators), rels, list(names or []), dict(sums or {}), list(displays))

    def opposite(self, relabel: dict | None = None, name: str | None = None) -> "OperadPresentation":
        """Mirror every tree and rename generators: the presentation of the opposite algebras."""
        relabel = relabel or {g: g for g in self.generators}

        def mirror(t):
            if t is None:
                return None
            return (relabel[t[0]], mirror(t[2]), mirror(t[1]))

        rels = [SparseVector({TreeMonomial.from_nested(mirror(m.nested())): c for m, c in r.items()})
                for r in self.relations]
        gens = tuple(relabel[g] for g in self.generators)
        return OperadPresentation(name or f"{self.name}-op", gens, rels, list(self.relation_names))

    def __eq__(self, other):
        if not isinstance(other, OperadPresentation):
            return NotImplemented
        return (self.name, self.generators, self.relations) == (other.name, other.generators, other.relations)


# ---------------------------------------------------------------- monomial indexing

class _Indexer:
    def __init__(self, generators, n):
        self.g = len(generators)
        self.n = n
        self.gidx = {x: i for i, x in enumerate(generators)}
        self.gens = tuple(generators)
        self.shapes = enumerate_shapes(n)
        self.sidx = {s: i for i, s in enumerate(self.shapes)}
        self.size = len(self.shapes) * self.g ** (n - 1)

    def index(self, m: TreeMonomial) -> int:
        k = self.sidx[m.shape]
        for lab in m.labels:
            k = k * self.g + self.gidx[lab]
        return k

    def monomial(self, k: int) -> TreeMonomial:
        labs = []
        for _ in range(self.n - 1):
            k, d = divmod(k, self.g)
            labs.append(self.gens[d])
        return TreeMonomial(self.shapes[k], tuple(reversed(labs)))


def _rows(vectors, ix: _Indexer) -> IntMatrix:
    return IntMatrix.from_rational_rows(({ix.index(m): c for m, c in v.items()} for v in vectors), ix.size)


def max_cells() -> int:
    v = os.environ.get("BAXOPS_MAX_CELLS")
    return int(v) if v else DEFAULT_MAX_CELLS


def _grafts(p: OperadPresentation, base: list, n_prev: int) -> list:
    gens = [TreeMonomial.generator(x) for x in p.generators]
    out = []
    for u in base:
        for g in gens:
            for i in range(1, n_prev + 1):
                out.append(graft(u, i, g))
            out.append(graft(g, 1, u))
            out.append(graft(g, 2, u))
    return out


def _check_ceiling(rows: int, cols: int, n: int, limit: int | None):
    limit = max_cells() if limit is None else limit
    if rows * cols > limit:
        raise TooLarge(f"too large: arity-{n} ideal matrix would be {rows} x {cols} "
                       f"({rows * cols} cells > ceiling {limit}; raise BAXOPS_MAX_CELLS to allow)")


def _basis_vectors(vectors, ix: _Indexer) -> list:
    rows = echelon_rows(_rows(vectors, ix))
    return [SparseVector({ix.monomial(c): v for c, v in r.items()}) for r in rows]


def ideal_component(p: OperadPresentation, n: int, limit: int | None = None) -> list:
    """Spanning set of the arity-n component of the ideal generated by the relations.

    For n > 3 the vectors are single grafts of a basis of the arity n-1 component with a
    generator, at every leaf and in both inputs of the generator.
    """
    if n < 3:
        raise ValueError("ideal components start at arity 3")
    span = list(p.relations)
    for m in range(4, n + 1):
        ix = _Indexer(p.generators, m - 1)
        base = _basis_vectors(span, ix) if span else []
        _check_ceiling(len(base) * p.g * (m + 1), free_dim(p.g, m), m, limit)
        span = _grafts(p, base, m - 1)
    return span


@dataclass
class DimensionReport:
    name: str
    g: int
    max_arity: int
    dims: list
    free_dims: list
    ideal_ranks: list
    modular_ranks: list = field(default_factory=list)
    conjectural: list = field(default_factory=list)

    def dim(self, n: int) -> int:
        return self.dims[n - 1]

    def to_json(self) -> dict:
        d = {
            "preset": self.name,
            "generators": self.g,
            "max_arity": self.max_arity,
            "dims": self.dims,
            "free_dims": self.free_dims,
            "ideal_ranks": self.ideal_ranks,
            "generating_series": generating_series(self),
        }
        if self.modular_ranks:
            d["modular_ranks"] = self.modular_ranks
        if self.conjectural:
            d["conjectural_arities"] = self.conjectural
        return d


def dims(p: OperadPresentation, max_arity: int, modular_check: bool = False,
         limit: int | None = None, conjectural_from: int | None = None) -> DimensionReport:
    """dim P'(n) for n = 1..max_arity: free dimension minus the rank of the ideal component."""
    if max_arity < 1:
        raise ValueError("max_arity must be at least 1")
    g = p.g
    out, free, ranks, mods = [], [], [], []
    span = list(p.relations)
    for n in range(1, max_arity + 1):
        fd = free_dim(g, n) if n > 1 else 1
        if n < 3:
            r = 0
            if modular_check:
                mods.append(0)
        else:
            if n > 3:
                prev = _Indexer(p.generators, n - 1)
                base = _basis_vectors(span, prev) if span else []
                _check_ceiling(len(base) * g * (n + 1), fd, n, limit)
                span = _grafts(p, base, n - 1)
            ix = _Indexer(p.generators, n)
            m = _rows(span, ix)
            r = len(echelon_rows(m))
            if modular_check:
                mods.append(rank_modular(m, DEFAULT_PRIMES))
        out.append(fd - r)
        free.append(fd)
        ranks.append(r)
    conj = []
    if conjectural_from is not None:
        conj = [n for n in range(conjectural_from, max_arity + 1)]
    return DimensionReport(p.name, g, max_arity, out, free, ranks, mods, conj)


def generating_series(r: DimensionReport) -> list:
    """Coefficients of Σ (-1)^n dim P'(n) x^n, index = degree (index 0 is 0)."""
    return [0] + [(-1) ** n * d for n, d in enumerate(r.dims, start=1)]


def format_series(coeffs: list) -> str:
    parts = []
    for n, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if n == 0 else ("x" if n == 1 else f"x^{n}")
        mag = abs(c)
        body = (str(mag) if mag != 1 or not mono else "") + mono
        parts.append(("-" if c < 0 else "+") + body)
    if not parts:
        return "0"
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


# ---------------------------------------------------------------- presets

def _dendriform():
    return OperadPresentation.from_displays(
        "dendriform", ["prec", "succ"],
        ["(x prec y) prec z = x prec (y star z)",
         "(x succ y) prec z = x succ (y prec z)",
         "(x star y) succ z = x succ (y succ z)"],
        {"star": ["prec", "succ"]})


def _l_algebra():
    return OperadPresentation.from_displays(
        "L", ["succ", "prec"], ["(x succ y) prec z = x succ (y prec z)"], names=["L"])


def _dipterous(L: bool):
    d = ["(x rightStar y) rightStar z = x rightStar (y rightStar z)",
         "(x rightStar y) succ z = x succ (y succ z)"]
    n = ["As", "Dip"]
    if L:
        d.append("(x succ y) rightStar z = x succ (y rightStar z)")
        n.append("L")
    return OperadPresentation.from_displays("L-dipterous" if L else "dipterous", ["rightStar", "succ"], d, names=n)


def _anti_dipterous(L: bool):
    d = ["(x leftStar y) leftStar z = x leftStar (y leftStar z)",
         "(x prec y) prec z = x prec (y leftStar z)"]
    n = ["As", "A.Dip"]
    if L:
        d.append("(x leftStar y) prec z = x leftStar (y prec z)")
        n.append("L")
    return OperadPresentation.from_displays("AL" if L else "anti-dipterous", ["leftStar", "prec"], d, names=n)


def _matrix_preset(name, cells):
    """cells: (a, b, d, e) meaning (x •a y) •b z = x •d (y •e z)."""
    gens = ["b1", "b2", "b3", "b4"]
    displays = [f"(x b{a} y) b{b} z = x b{d} (y b{e} z)" for a, b, d, e in cells]
    names = [f"{name}{i // 3 + 1}{i % 3 + 1}" for i in range(len(cells))]
    return OperadPresentation.from_displays(name, gens, displays, names=names)


_M_CELLS = [(4, 4, 4, 1), (3, 4, 3, 1), (1, 4, 1, 4),
            (4, 3, 3, 2), (2, 4, 2, 4), (1, 1, 1, 1),
            (1, 2, 2, 2), (1, 3, 2, 3), (2, 1, 2, 1)]
_M1_CELLS = [(2, 2, 2, 2), (1, 4, 1, 3), (2, 1, 2, 1),
             (3, 4, 3, 1), (2, 4, 2, 4), (1, 1, 1, 2),
             (2, 3, 2, 3), (3, 3, 3, 2), (4, 4, 4, 2)]
_M2_CELLS = [(4, 4, 4, 4), (3, 1, 2, 1), (1, 4, 1, 4),
             (1, 3, 2, 3), (2, 4, 2, 4), (4, 1, 1, 1),
             (3, 4, 3, 4), (4, 3, 3, 3), (4, 2, 2, 2)]

QUADRI_SUMS = {
    "succ": ["ne", "se"], "prec": ["nw", "sw"],
    "vee": ["se", "sw"], "wedge": ["ne", "nw"],
    "star": ["nw", "ne", "sw", "se"],
}


def _quadri():
    return OperadPresentation.from_displays(
        "quadri", ["nw", "ne", "sw", "se"],
        ["(x nw y) nw z = x nw (y star z)",
         "(x ne y) nw z = x ne (y prec z)",
         "(x wedge y) ne z = x ne (y succ z)",
         "(x sw y) nw z = x sw (y wedge z)",
         "(x se y) nw z = x se (y nw z)",
         "(x vee y) ne z = x se (y ne z)",
         "(x prec y) sw z = x sw (y vee z)",
         "(x succ y) sw z = x se (y sw z)",
         "(x star y) se z = x se (y se z)"],
        QUADRI_SUMS, names=[f"Q{i}{j}" for i in (1, 2, 3) for j in (1, 2, 3)])


OCTO_GENERATORS = ["nw1", "ne1", "sw1", "se1", "nw2", "ne2", "sw2", "se2"]


def _octo_sums():
    s = {}
    for i in ("1", "2"):
        s["prec" + i] = ["sw" + i, "nw" + i]
        s["succ" + i] = ["se" + i, "ne" + i]
        s["wedge" + i] = ["nw" + i, "ne" + i]
        s["vee" + i] = ["sw" + i, "se" + i]
        s["Sigma" + i] = ["nw" + i, "ne" + i, "sw" + i, "se" + i]
    for o in ("nw", "ne", "sw", "se"):
        s[o + "12"] = [o + "1", o + "2"]
    s["Wedge"] = s["wedge1"] + s["wedge2"]
    s["Vee"] = s["vee1"] + s["vee2"]
    s["ll"] = s["prec1"] + s["prec2"]
    s["gg"] = s["succ1"] + s["succ2"]
    s["star"] = list(OCTO_GENERATORS)
    return s


OCTO_SUMS = _octo_sums()


def _octo():
    d = [
        # first block
        "(x nw1 y) nw1 z = x nw1 (y star z)",
        "(x ne1 y) nw1 z = x ne1 (y ll z)",
        "(x wedge1 y) ne1 z = x ne1 (y gg z)",
        "(x sw1 y) nw1 z = x sw1 (y Wedge z)",
        "(x se1 y) nw1 z = x se1 (y nw12 z)",
        "(x vee1 y) ne1 z = x se1 (y ne12 z)",
        "(x prec1 y) sw1 z = x sw1 (y Vee z)",
        "(x succ1 y) sw1 z = x se1 (y sw12 z)",
        "(x Sigma1 y) se1 z = x se1 (y se12 z)",
        # second block
        "(x nw2 y) nw1 z = x nw2 (y Sigma1 z)",
        "(x ne2 y) nw1 z = x ne2 (y prec1 z)",
        "(x wedge2 y) ne1 z = x ne2 (y succ1 z)",
        "(x sw2 y) nw1 z = x sw2 (y wedge1 z)",
        "(x se2 y) nw1 z = x se2 (y nw1 z)",
        "(x vee2 y) ne1 z = x se2 (y ne1 z)",
        "(x prec2 y) sw1 z = x sw2 (y vee1 z)",
        "(x succ2 y) sw1 z = x se2 (y sw1 z)",
        "(x Sigma2 y) se1 z = x se2 (y se1 z)",
        # third block
        "(x nw12 y) nw2 z = x nw2 (y Sigma2 z)",
        "(x ne12 y) nw2 z = x ne2 (y prec2 z)",
        "(x Wedge y) ne2 z = x ne2 (y succ2 z)",
        "(x sw12 y) nw2 z = x sw2 (y wedge2 z)",
        "(x se12 y) nw2 z = x se2 (y nw2 z)",
        "(x Vee y) ne2 z = x se2 (y ne2 z)",
        "(x ll y) sw2 z = x sw2 (y vee2 z)",
        "(x gg y) sw2 z = x se2 (y sw2 z)",
        "(x star y) se2 z = x se2 (y se2 z)",
    ]
    names = [f"O{b}.{i}{j}" for b in (1, 2, 3) for i in (1, 2, 3) for j in (1, 2, 3)]
    return OperadPresentation.from_displays("octo", OCTO_GENERATORS, d, OCTO_SUMS, names)


def _hypercubic(n: int, circular: bool):
    gens = [f"star{i}" for i in range(1, n + 1)]
    d, names = [], []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if circular:
                d.append(f"(x star{i} y) star{j} z = x star{j} (y star{i} z)")
            else:
                d.append(f"(x star{i} y) star{j} z = x star{i} (y star{j} z)")
            names.append(f"({i},{j})")
    return OperadPresentation.from_displays(f"{'circular' if circular else 'hypercubic'}({n})", gens, d, names=names)


def _threeop():
    return OperadPresentation.from_displays(
        "threeop", ["ne", "nw", "se"],
        ["(x ne y) ne z = x ne (y ne z)",
         "(x nw y) nw z = x nw (y ne z)",
         "(x se y) ne z = x se (y ne z)",
         "(x ne y) ne z = x ne (y ne z)",
         "(x ne y) se z = x se (y se z)",
         "(x ne y) nw z = x ne (y nw z)",
         "(x se y) nw z = x se (y nw z)"],
        names=["T11", "T12", "T13", "T21", "T22", "T23", "T31"])


_DIALGEBRA = [
    "x dashv (y dashv z) = x dashv (y vdash z)",
    "(x vdash y) dashv z = x vdash (y dashv z)",
    "(x vdash y) vdash z = (x dashv y) vdash z",
    "(x dashv y) dashv z = x dashv (y dashv z)",
    "(x vdash y) vdash z = x vdash (y vdash z)",
]
_DIALGEBRA_NAMES = ["D1", "D2", "D3", "As-dashv", "As-vdash"]


def _dialgebra():
    return OperadPresentation.from_displays("dialgebra", ["dashv", "vdash"], _DIALGEBRA, names=_DIALGEBRA_NAMES)


def _trialgebra():
    d = _DIALGEBRA + [
        "(x perp y) perp z = x perp (y perp z)",
        "(x dashv y) dashv z = x dashv (y perp z)",
        "(x perp y) dashv z = x perp (y dashv z)",
        "(x dashv y) perp z = x perp (y vdash z)",
        "(x vdash y) perp z = x vdash (y perp z)",
        "(x perp y) vdash z = x vdash (y vdash z)",
    ]
    names = _DIALGEBRA_NAMES + ["As-perp", "T1", "T2", "T3", "T4", "T5"]
    return OperadPresentation.from_displays("trialgebra", ["dashv", "vdash", "perp"], d, names=names)


def _m4beta():
    return OperadPresentation.from_displays(
        "M4beta", ["leftStar1", "prec1", "leftStar2", "prec2"],
        ["(x leftStar1 y) prec2 z = x leftStar1 (y prec2 z)",
         "(x leftStar2 y) prec1 z = x leftStar2 (y prec1 z)",
         "(x prec2 y) prec1 z = x prec1 (y leftStar2 z)",
         "(x leftStar2 y) leftStar1 z = x leftStar2 (y leftStar1 z)"])


def _m4gamma():
    return OperadPresentation.from_displays(
        "M4gamma", ["rightStar1", "succ1", "rightStar2", "succ2"],
        ["(x succ2 y) rightStar1 z = x succ2 (y rightStar1 z)",
         "(x succ1 y) rightStar2 z = x succ1 (y rightStar2 z)",
         "(x rightStar2 y) rightStar1 z = x rightStar2 (y rightStar1 z)",
         "(x rightStar1 y) succ2 z = x succ2 (y succ1 z)"])


def _associative():
    return OperadPresentation.from_displays("As", ["mu"], ["(x mu y) mu z = x mu (y mu z)"], names=["As"])


def _magma(g: int):
    gens = ["mu"] if g == 1 else [f"mu{i}" for i in range(1, g + 1)]
    return OperadPresentation(f"magma({g})" if g != 1 else "magma", gens, [])


_FIXED = {
    "dendriform": _dendriform,
    "L": _l_algebra,
    "dipterous": lambda: _dipterous(False),
    "L-dipterous": lambda: _dipterous(True),
    "anti-dipterous": lambda: _anti_dipterous(False),
    "AL": lambda: _anti_dipterous(True),
    "L-anti-dipterous": lambda: _anti_dipterous(True),
    "M": lambda: _matrix_preset("M", _M_CELLS),
    "M1": lambda: _matrix_preset("M1", _M1_CELLS),
    "M2": lambda: _matrix_preset("M2", _M2_CELLS),
    "quadri": _quadri,
    "octo": _octo,
    "threeop": _threeop,
    "dialgebra": _dialgebra,
    "trialgebra": _trialgebra,
    "M4beta": _m4beta,
    "M4gamma": _m4gamma,
    "As": _associative,
    "associative": _associative,
    "magma": lambda: _magma(1),
}

_PARAM = re.compile(r"^(hypercubic|circular|magma)\((\d+)\)$")


def preset_names() -> list:
    return sorted(_FIXED) + ["hypercubic(n)", "circular(n)", "magma(g)"]


def preset(name: str) -> OperadPresentation:
    """Named presentation; parametrised families are written hypercubic(3), circular(2), magma(2)."""
    if name in _FIXED:
        return _FIXED[name]()
    m = _PARAM.match(name.replace(" ", ""))
    if m:
        n = int(m.group(2))
        if n < 1:
            raise ValueError("parameter must be positive")
        if m.group(1) == "magma":
            return _magma(n)
        return _hypercubic(n, m.group(1) == "circular")
    raise KeyError(f"unknown preset {name!r}")


# ---------------------------------------------------------------- JSON

def presentation_to_json(p: OperadPresentation) -> dict:
    from .linalg import format_rational

    rels = []
    for r in p.relations:
        terms = []
        for m in sorted(r):
            terms.append({"shape": "L" if m.shape == LEFT else "R", "ops": list(m.labels),
                          "coeff": format_rational(r[m])})
        rels.append(terms)
    return {"name": p.name, "generators": list(p.generators), "relations": rels}


def presentation_from_json(doc: dict) -> OperadPresentation:
    try:
        name = doc["name"]
        gens = list(doc["generators"])
        raw = doc["relations"]
    except (KeyError, TypeError) as e:
        raise ValueError(f"presentation is missing field {e}") from None
    rels = []
    for k, rel in enumerate(raw):
        acc: dict = {}
        for term in rel:
            shape = term.get("shape")
            ops = term.get("ops")
            if shape not in ("L", "R"):
                raise ValueError(f"relation {k + 1}: shape must be 'L' or 'R', got {shape!r}")
            if not isinstance(ops, list) or len(ops) != 2:
                raise ValueError(f"relation {k + 1}: ops must list two generators")
            for o in ops:
                if o not in gens:
                    raise ValueError(f"relation {k + 1}: undeclared generator {o!r}")
            mono = TreeMonomial(LEFT if shape == "L" else RIGHT, tuple(ops))
            accumulate(acc, {mono: 1}, to_rational(term.get("coeff", "1")))
        if not acc:
            raise ValueError(f"relation {k + 1} is zero")
        rels.append(clean(acc))
    return OperadPresentation(name, tuple(gens), rels)
