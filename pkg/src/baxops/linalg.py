"""Exact rational scalars, sparse vectors and integer rank computation."""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Hashable, Iterable, Mapping

Q = Fraction


def to_rational(x) -> Fraction:
    """Parse an int, Fraction or "p/q" string into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ValueError("empty coefficient")
        return Fraction(s)
    raise TypeError(f"cannot read {x!r} as an exact rational")


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def accumulate(acc: dict, vec: Mapping, c=1) -> None:
    """acc += c * vec, dropping entries that cancel."""
    if not c:
        return
    for k, v in vec.items():
        s = acc.get(k, 0) + c * v
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


class SparseVector(dict):
    """Map from basis key to nonzero Fraction. Zero entries are never stored."""

    __slots__ = ()

    def __init__(self, entries: Mapping | Iterable | None = None):
        super().__init__()
        if entries is None:
            return
        items = entries.items() if isinstance(entries, Mapping) else entries
        for k, v in items:
            s = self.get(k, 0) + to_rational(v)
            if s:
                self[k] = s
            else:
                self.pop(k, None)

    @classmethod
    def unit(cls, key: Hashable, c=1) -> "SparseVector":
        return cls({key: c})

    def is_zero(self) -> bool:
        return not self

    def scaled(self, c) -> "SparseVector":
        c = to_rational(c)
        if not c:
            return SparseVector()
        out = SparseVector()
        for k, v in self.items():
            dict.__setitem__(out, k, v * c)
        return out

    def added(self, other: Mapping, c=1) -> "SparseVector":
        out = SparseVector()
        dict.update(out, self)
        accumulate(out, other, c)
        return out

    def __add__(self, other):
        return self.added(other, 1)

    def __sub__(self, other):
        return self.added(other, -1)

    def __neg__(self):
        return self.scaled(-1)

    def __mul__(self, c):
        return self.scaled(c)

    __rmul__ = __mul__

    def sorted_items(self):
        return sorted(self.items(), key=lambda kv: kv[0])

    def __repr__(self):
        return "SparseVector({%s})" % ", ".join(f"{k!r}: {format_rational(v)}" for k, v in self.sorted_items())


def clean(d: dict) -> SparseVector:
    """Wrap a dict already free of zero values as a SparseVector without copying values."""
    out = SparseVector()
    dict.update(out, d)
    return out


class LinearMap:
    """Matrix with exact entries stored column-wise; column j is the image of basis vector j."""

    __slots__ = ("n_in", "n_out", "cols")

    def __init__(self, n_in: int, n_out: int, cols: list):
        if len(cols) != n_in:
            raise ValueError("column count does not match input dimension")
        for col in cols:
            for k in col:
                if not 0 <= k < n_out:
                    raise ValueError(f"row index {k} outside 0..{n_out - 1}")
        self.n_in = n_in
        self.n_out = n_out
        self.cols = [c if isinstance(c, SparseVector) else SparseVector(c) for c in cols]

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls(n, n, [SparseVector({i: 1}) for i in range(n)])

    @classmethod
    def zero(cls, n: int, m: int | None = None) -> "LinearMap":
        return cls(n, n if m is None else m, [SparseVector() for _ in range(n)])

    @classmethod
    def from_rows(cls, rows: list) -> "LinearMap":
        n_out = len(rows)
        n_in = len(rows[0]) if rows else 0
        cols = []
        for j in range(n_in):
            cols.append(SparseVector({i: rows[i][j] for i in range(n_out) if to_rational(rows[i][j])}))
        return cls(n_in, n_out, cols)

    def rows(self) -> list:
        out = [[Fraction(0)] * self.n_in for _ in range(self.n_out)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                out[i][j] = v
        return out

    @property
    def is_square(self) -> bool:
        return self.n_in == self.n_out

    def entry(self, i: int, j: int) -> Fraction:
        return self.cols[j].get(i, Fraction(0))

    def apply(self, vec: Mapping) -> SparseVector:
        acc: dict = {}
        for j, c in vec.items():
            accumulate(acc, self.cols[j], c)
        return clean(acc)

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other."""
        if other.n_out != self.n_in:
            raise ValueError("dimension mismatch in composition")
        return LinearMap(other.n_in, self.n_out, [self.apply(c) for c in other.cols])

    def __matmul__(self, other):
        return self.compose(other)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        self._same_shape(other)
        return LinearMap(self.n_in, self.n_out, [a + b for a, b in zip(self.cols, other.cols)])

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        self._same_shape(other)
        return LinearMap(self.n_in, self.n_out, [a - b for a, b in zip(self.cols, other.cols)])

    def scaled(self, c) -> "LinearMap":
        return LinearMap(self.n_in, self.n_out, [col.scaled(c) for col in self.cols])

    def _same_shape(self, other):
        if (self.n_in, self.n_out) != (other.n_in, other.n_out):
            raise ValueError("dimension mismatch")

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.n_in, self.n_out) == (other.n_in, other.n_out) and self.cols == other.cols

    def __hash__(self):
        return hash((self.n_in, self.n_out, tuple(tuple(sorted(c.items())) for c in self.cols)))

    def __repr__(self):
        return f"LinearMap({self.n_out}x{self.n_in}, nnz={sum(len(c) for c in self.cols)})"


class IntMatrix:
    """Sparse integer matrix; rows are dicts column -> nonzero int."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows: Iterable[Mapping], ncols: int):
        self.ncols = ncols
        self.rows = []
        for r in rows:
            row = {c: int(v) for c, v in r.items() if v}
            for c in row:
                if not 0 <= c < ncols:
                    raise ValueError(f"column {c} outside 0..{ncols - 1}")
            self.rows.append(row)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @classmethod
    def from_rational_rows(cls, rows: Iterable[Mapping], ncols: int) -> "IntMatrix":
        """Clear denominators row by row; each row is scaled to a primitive integer row."""
        out = []
        for r in rows:
            vals = {c: to_rational(v) for c, v in r.items() if v}
            den = 1
            for v in vals.values():
                den = den * v.denominator // gcd(den, v.denominator)
            out.append(_primitive({c: int(v * den) for c, v in vals.items()}))
        return cls(out, ncols)

    @classmethod
    def from_dense(cls, dense: list) -> "IntMatrix":
        ncols = len(dense[0]) if dense else 0
        return cls.from_rational_rows(({j: v for j, v in enumerate(row) if v} for row in dense), ncols)

    def __repr__(self):
        return f"IntMatrix({self.nrows}x{self.ncols})"


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)] if row else 1
    if g > 1 or lead < 0:
        g = -g if lead < 0 else g
        row = {c: v // g for c, v in row.items()}
    return row


def echelon_rows(m: IntMatrix) -> list:
    """Fraction-free sparse elimination; returns independent primitive rows keyed by pivot.

    Each reduction step is the Bareiss cross-multiplication r <- a*r - b*p with a, b the
    pivot entries; the row content is divided out afterwards, which keeps entries small on
    the sparse relation matrices this is used for.
    """
    pivots: dict = {}
    for src in m.rows:
        r = dict(src)
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                pivots[c] = _primitive(r)
                break
            a = p[c]
            b = r[c]
            g = gcd(a, b)
            a //= g
            b //= g
            new = {k: a * v for k, v in r.items()} if a != 1 else dict(r)
            for k, v in p.items():
                s = new.get(k, 0) - b * v
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
            r = _primitive(new) if new else new
    return [pivots[c] for c in sorted(pivots)]


def rank_exact(m: IntMatrix) -> int:
    """Rank over the rationals."""
    return len(echelon_rows(m))


def _rank_mod(m: IntMatrix, p: int) -> int:
    pivots: dict = {}
    for src in m.rows:
        r = {c: v % p for c, v in src.items() if v % p}
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(r[c], -1, p)
                pivots[c] = {k: v * inv % p for k, v in r.items()}
                break
            b = r[c]
            for k, v in piv.items():
                s = (r.get(k, 0) - b * v) % p
                if s:
                    r[k] = s
                else:
                    r.pop(k, None)
    return len(pivots)


def rank_modular(m: IntMatrix, primes: Iterable[int]) -> int:
    """Max of the ranks over GF(p); a lower bound on rank_exact."""
    primes = list(primes)
    if not primes:
        raise ValueError("no primes")
    if len(set(primes)) != len(primes):
        raise ValueError("primes must be distinct")
    return max(_rank_mod(m, p) for p in primes)


DEFAULT_PRIMES = (1000003, 998244353)
