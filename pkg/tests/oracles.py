"""Independent reference computations used by the tests.

Nothing here calls into baxops beyond reading a presentation's generator names, relation
display strings and sums.  Trees are nested tuples (op, left, right) with "x" for a leaf.
"""
from __future__ import annotations

import itertools
import re
from fractions import Fraction

LEAF = "x"

_L = re.compile(r"^\(x (\S+) y\) (\S+) z$")
_R = re.compile(r"^x (\S+) \(y (\S+) z\)$")


def _expand(name, sums):
    return sums.get(name, [name])


def parse_side(text, sums):
    """One side of a display as {tree: coeff} on three leaves."""
    text = text.strip()
    m = _L.match(text)
    out = {}
    if m:
        for a in _expand(m.group(1), sums):
            for b in _expand(m.group(2), sums):
                t = (b, (a, LEAF, LEAF), LEAF)
                out[t] = out.get(t, 0) + 1
        return out
    m = _R.match(text)
    if m:
        for a in _expand(m.group(1), sums):
            for b in _expand(m.group(2), sums):
                t = (a, LEAF, (b, LEAF, LEAF))
                out[t] = out.get(t, 0) + 1
        return out
    raise ValueError(f"cannot parse {text!r}")


def parse_display(text, sums):
    lhs, rhs = text.split("=")
    vec = dict(parse_side(lhs, sums))
    for t, c in parse_side(rhs, sums).items():
        vec[t] = vec.get(t, 0) - c
    return {t: Fraction(c) for t, c in vec.items() if c}


def trees(gens, n):
    """All planar binary trees with n leaves and internal vertices labelled by gens."""
    if n == 1:
        return [LEAF]
    out = []
    for k in range(1, n):
        for left in trees(gens, k):
            for right in trees(gens, n - k):
                for g in gens:
                    out.append((g, left, right))
    return out


def leaves(t):
    return 1 if t == LEAF else leaves(t[1]) + leaves(t[2])


def substitute_leaves(t, subs):
    """Replace the leaves of t, left to right, by the trees in subs."""
    it = iter(subs)

    def walk(u):
        if u == LEAF:
            return next(it)
        return (u[0], walk(u[1]), walk(u[2]))
    return walk(t)


def graft_at(context, i, s):
    """context ∘_i s by leaf replacement."""
    subs = [LEAF] * leaves(context)
    subs[i] = s
    return substitute_leaves(context, subs)


def ideal_vectors(gens, relations, n):
    """Every C ∘_i r(A, B, D) of arity n, for relation r, context C, leaf i, and trees A, B, D."""
    out = []
    for m in range(1, n - 1):
        rest = n - m + 1  # leaves used below the relation
        for a in range(1, rest - 1):
            for b in range(1, rest - a):
                d = rest - a - b
                if d < 1:
                    continue
                for C in trees(gens, m):
                    for i in range(m):
                        for A in trees(gens, a):
                            for B in trees(gens, b):
                                for D in trees(gens, d):
                                    for r in relations:
                                        vec = {}
                                        for t, c in r.items():
                                            u = graft_at(C, i, substitute_leaves(t, [A, B, D]))
                                            vec[u] = vec.get(u, 0) + c
                                        out.append(vec)
    return out


def rank(vectors):
    """Rank by plain Gaussian elimination over Fraction."""
    rows = [{k: Fraction(v) for k, v in vec.items() if v} for vec in vectors]
    rows = [r for r in rows if r]
    pivots = {}
    r = 0
    for row in rows:
        row = dict(row)
        changed = True
        while changed and row:
            changed = False
            for key, prow in pivots.items():
                if key in row:
                    c = row[key] / prow[key]
                    for k, v in prow.items():
                        nv = row.get(k, 0) - c * v
                        if nv:
                            row[k] = nv
                        else:
                            row.pop(k, None)
                    changed = True
                    break
        if row:
            key = min(row, key=repr)
            pivots[key] = row
            r += 1
    return r


def operad_dims(gens, displays, sums, max_arity):
    rels = [parse_display(d, sums) for d in displays]
    out = []
    for n in range(1, max_arity + 1):
        free = len(trees(gens, n))
        ideal = ideal_vectors(gens, rels, n) if n >= 3 and rels else []
        out.append(free - rank(ideal))
    return out


def random_vector(rng, dim, density=0.6, span=5):
    """A random rational vector as {index: Fraction}."""
    out = {}
    for i in range(dim):
        if rng.random() < density:
            v = Fraction(rng.randint(-span, span), rng.randint(1, 3))
            if v:
                out[i] = v
    return out


def bilinear_eval(table, u, v):
    """Evaluate a bilinear map given on basis pairs: Σ u_i v_j table[(i, j)]."""
    acc = {}
    for (i, a), (j, b) in itertools.product(u.items(), v.items()):
        for k, c in table.get((i, j), {}).items():
            acc[k] = acc.get(k, 0) + a * b * c
    return {k: c for k, c in acc.items() if c}
