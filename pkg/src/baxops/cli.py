"""Command-line verifier.  Exit status: 0 all checks pass, 1 a check failed, 2 bad input or refusal."""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import __version__
from .algebra import CompatKind, FiniteAlgebra, Overflow, check_associativity, check_compat, check_counit
from .convolution import BaxterKind, ConvolutionContext, check_baxter
from .formats import (InputError, algebra_from_json, counit_from_json, data_path, dumps, graph_from_json,
                      load_json, operator_from_json, presentation_file_from_json, substitutions_from_json)
from .linalg import format_rational
from .models import (PathAlgebraTrunc, WordAlgebraTrunc, delta_M, graph_word_algebra, path_epsilon_coproduct,
                     research_coproduct, research_map, substitution_dynamics,
                     upper_triangular_algebra)
from .operads import TooLarge, dims, format_series, generating_series, preset
from .reports import HypothesisError, Report
from . import structures as st

STRUCTURES = ("ladip", "ldip", "M", "M1", "M2", "quadri", "octo", "octo3", "tensor-octo", "dialgebra",
              "trialgebra", "hypercubic", "circular", "threeop", "prelie", "dendriform-mixed")

# structures whose relations imply that the sum of the operations is associative
_CLUSTER_IMPLIED = {"dendriform", "quadri", "octo"}


class Refusal(Exception):
    """Input is well-formed but the request cannot be carried out."""


class Run:
    """Collects checks, results and timings for one command."""

    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.checks: list = []
        self.results: dict = {}
        self.notes: list = []
        self.timings: dict = {}
        self._t = time.perf_counter()

    def add(self, *reports: Report) -> None:
        self.checks.extend(reports)

    def lap(self, label: str) -> None:
        now = time.perf_counter()
        self.timings[label] = round(now - self._t, 6)
        self._t = now

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.checks if not r.informational)

    def to_json(self, timings: bool = True) -> dict:
        doc = {"command": self.command, "inputs": self.inputs,
               "checks": [r.to_json() for r in self.checks], "results": self.results,
               "passed": self.ok}
        if self.notes:
            doc["notes"] = self.notes
        if timings:
            doc["timings"] = self.timings
        return doc

    def text(self) -> str:
        lines = [f"baxops {self.command}"]
        lines += ["  " + r.summary() for r in self.checks]
        for r in self.checks:
            for n in r.notes:
                lines.append(f"    note ({r.id}): {n}")
        for k in sorted(self.results):
            v = self.results[k]
            if isinstance(v, (str, int)):
                lines.append(f"  {k}: {v}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        lines.append("  result: " + ("PASS" if self.ok else "FAIL"))
        return "\n".join(lines)


# ---------------------------------------------------------------- input helpers

def _resolve(path: str) -> Path:
    """A file path, or example:NAME for a shipped example file."""
    if path.startswith("example:"):
        name = path.split(":", 1)[1]
        if not name.endswith(".json"):
            name += ".json"
        p = data_path(name)
        if not p.exists():
            raise InputError(f"no shipped example {name!r}")
        return p
    return Path(path)


def _load(path: str) -> dict:
    return load_json(_resolve(path))


def _algebra(args) -> tuple:
    alg, coops = algebra_from_json(_load(args.algebra))
    return alg, coops


def _delta(coops: dict, name: str):
    if name not in coops:
        raise InputError(f"unknown co-operation {name!r}; file defines {sorted(coops)}")
    return coops[name]


def _deltas(args, coops) -> list:
    names = list(args.delta or [])
    for extra in (getattr(args, "delta2", None), getattr(args, "delta3", None)):
        if extra:
            names.append(extra)
    if not names:
        raise InputError("at least one --delta is required")
    return [_delta(coops, n) for n in names]


def _need(ds: list, k: int, structure: str) -> list:
    if len(ds) < k:
        raise InputError(f"{structure} needs {k} co-operations (use --delta/--delta2/--delta3)")
    return ds


def _ops_json(m: st.MultiProductAlgebra) -> dict:
    out = {}
    for name in sorted(m.ops):
        op = m.ops[name]
        rows = []
        for (i, j) in sorted(op.table):
            v = op.table[(i, j)]
            rows.append({"left": m.basis[i], "right": m.basis[j],
                         "result": [{"basis": m.basis[k], "coeff": format_rational(v[k])} for k in sorted(v)]})
        out[name] = rows
    return out


# ---------------------------------------------------------------- commands

def cmd_verify(args) -> Run:
    alg, coops = _algebra(args)
    d = _delta(coops, args.delta)
    run = Run("verify", {"algebra": args.algebra, "delta": args.delta, "kind": args.kind,
                         "counit": args.counit})
    try:
        kind = CompatKind(args.kind)
    except ValueError:
        raise InputError(f"unknown kind {args.kind!r}; choose from {[k.value for k in CompatKind]}") from None
    run.add(check_associativity(alg))
    run.add(check_compat(alg, d, kind))
    if args.counit:
        c = counit_from_json(_load(args.counit), alg.basis)
        run.add(check_counit(alg, d, c["values"], c["side"], c["elements"]))
    run.lap("verify")
    return run


def cmd_baxter(args) -> Run:
    alg, coops = _algebra(args)
    d = _delta(coops, args.delta)
    ctx = ConvolutionContext(alg, coops)
    run = Run("baxter", {"algebra": args.algebra, "delta": args.delta, "operator": args.operator,
                         "kind": args.kind})
    if args.operator == "beta":
        op = ctx.beta(d.name)
    elif args.operator == "gamma":
        op = ctx.gamma(d.name)
    else:
        op = operator_from_json(_load(args.operator), ctx.end.basis)
    run.lap("operators")
    run.add(check_baxter(ctx.end, op, BaxterKind(args.kind), rid=f"baxter[{args.kind}][{args.operator}]"))
    run.lap("check")
    return run


def _end(alg: FiniteAlgebra, ds: list) -> tuple:
    named = {}
    for k, d in enumerate(ds):
        key = d.name if d.name not in named else f"{d.name}#{k + 1}"
        named[key] = d.renamed(key)
    return ConvolutionContext(alg, named), list(named)


def _operator_override(path, ctx) -> object:
    return operator_from_json(_load(path), ctx.end.basis) if path else None


def _finish_structure(run: Run, m: st.MultiProductAlgebra, args) -> None:
    run.add(*m.hypotheses)
    rep = st.verify_relations(m, m.preset_name)
    run.add(rep)
    base = m.preset_name.split("(")[0]
    cluster = st.check_cluster(m)
    if base not in _CLUSTER_IMPLIED and base not in ("hypercubic", "circular"):
        cluster.informational = True
        cluster.notes.append("the relations do not force the sum of the operations to be associative")
    run.add(cluster)
    run.notes.extend(m.notes)
    run.results["structure"] = m.name
    run.results["dimension"] = m.dim
    run.results["operations"] = sorted(m.ops)
    if args.dump_ops:
        run.results["ops"] = _ops_json(m)


def cmd_derive(args) -> Run:
    s = args.structure
    run = Run("derive", {"structure": s, "algebra": args.algebra, "delta": args.delta, "delta2": args.delta2,
                         "delta3": args.delta3, "force": args.force})
    if s == "tensor-octo":
        if args.factor == "split":
            d = st.subalgebra_split_dendriform(upper_triangular_algebra(2), ["E11"])
        else:
            d = st.integration_dendriform(2, unital=True)
        run.inputs["factor"] = args.factor
        o = st.tensor_octo(d, d, d, force=args.force)
        run.lap("construct")
        _finish_structure(run, o, args)
        _octo_projections(run, o)
        run.lap("verify")
        return run
    if not args.algebra:
        raise InputError(f"derive {s} needs --algebra")
    alg, coops = _algebra(args)
    ds = _deltas(args, coops)
    ctx, names = _end(alg, ds)
    E = ctx.end
    f = args.force
    if s == "ladip":
        m = st.split_right_baxter(E, _operator_override(args.zeta, ctx) or ctx.beta(names[0]), f)
    elif s == "ldip":
        m = st.split_left_baxter(E, _operator_override(args.theta, ctx) or ctx.gamma(names[0]), f)
    elif s in ("M", "M1", "M2"):
        if not args.theta:
            _need(ds, 2, s)
        zeta = _operator_override(args.zeta, ctx) or ctx.beta(names[0])
        theta = _operator_override(args.theta, ctx) or ctx.gamma(names[1])
        m = {"M": st.build_M, "M1": st.build_M1, "M2": st.build_M2}[s](E, zeta, theta, f)
    elif s == "quadri":
        m = st.build_quadri(E, ctx.beta(names[0]), ctx.gamma(names[0]), f)
    elif s == "octo":
        q = st.build_quadri(E, ctx.beta(names[0]), ctx.gamma(names[0]), f)
        xi = ctx.beta(names[1] if len(names) > 1 else names[0])
        m = st.build_octo_on_quadri(q, xi, f)
    elif s == "octo3":
        _need(ds, 2, s)
        m = st.octo_from_L_circular(alg, ds[0], ds[1], f)
    elif s == "dialgebra":
        _need(ds, 2, s)
        m = st.build_dialgebra_leibniz(alg, ds[0], ds[1], f)
    elif s == "trialgebra":
        _need(ds, 3, s)
        m = st.build_trialgebra_poisson(alg, ds[0], ds[1], ds[2], f)
    elif s == "hypercubic":
        m, _ = st.check_hypercubic(alg, ds, args.mode, f)
    elif s == "circular":
        m, _ = st.check_circular(alg, ds, args.products, f)
    elif s == "threeop":
        m = st.build_three_op(alg, ds[0], f)
    elif s == "dendriform-mixed":
        _need(ds, 2, s)
        m = st.dendriform_from_mixed(alg, ds[0], ds[1], args.recipe, f)
    elif s == "prelie":
        op, rep, held = st.prelie_bracket(alg, ds[0])
        run.lap("construct")
        run.add(rep)
        run.results["conventions"] = held
        return run
    else:
        raise InputError(f"unknown structure {s!r}")
    run.lap("construct")
    _finish_structure(run, m, args)
    if s in ("quadri",):
        for w in ("horizontal", "vertical"):
            r = st.verify_relations(st.quadri_project(m, w), "dendriform")
            r.id = f"quadri/{w}: {r.id}"
            run.add(r)
    if s in ("octo", "octo3"):
        _octo_projections(run, m)
    if s in ("dialgebra", "trialgebra"):
        run.add(st.check_leibniz(m.bracket, m.basis))
    if s == "trialgebra":
        run.add(*st.poisson_candidates(m))
    run.lap("verify")
    return run


def _octo_projections(run: Run, o: st.MultiProductAlgebra) -> None:
    star = o.star()
    same = Report("projections share the associative product")
    for w in ("depth", "vertical", "horizontal"):
        q = st.octo_project(o, w)
        r = st.verify_relations(q, "quadri")
        r.id = f"octo/{w}: {r.id}"
        run.add(r)
        for h in ("horizontal", "vertical"):
            same.checked += 1
            if st.quadri_project(q, h).star() != star:
                same.fail((w, h), {}, "star table differs")
    run.add(same)


def cmd_operad(args) -> Run:
    if args.action != "dims":
        raise InputError(f"unknown operad action {args.action!r}")
    if bool(args.preset) == bool(args.file):
        raise InputError("give exactly one of --preset and --file")
    if args.file:
        p = presentation_file_from_json(_load(args.file))
    else:
        try:
            p = preset(args.preset)
        except (KeyError, ValueError) as e:
            raise InputError(e.args[0] if e.args else str(e)) from None
    run = Run("operad dims", {"preset": args.preset, "file": args.file, "max_arity": args.max_arity,
                              "modular_check": args.modular_check})
    r = dims(p, args.max_arity, modular_check=args.modular_check,
             conjectural_from=4 if p.g >= 8 else None)
    run.lap("dims")
    run.results.update(r.to_json())
    run.results["sequence"] = " ".join(map(str, r.dims))
    run.results["series"] = format_series(generating_series(r))
    if args.modular_check:
        rep = Report("modular-rank agreement")
        for n, (a, b) in enumerate(zip(r.ideal_ranks, r.modular_ranks), start=1):
            rep.checked += 1
            if a != b:
                rep.fail((n,), {"exact": a, "modular": b})
        run.add(rep)
    return run


def cmd_graph(args) -> Run:
    run = Run(f"graph {args.action}", {"graph": args.graph, "subst": args.subst, "trunc": args.trunc})
    if args.action == "dynamics":
        if not args.subst:
            raise InputError("graph dynamics needs --subst")
        alphabet, rules = substitutions_from_json(_load(args.subst))
        w = WordAlgebraTrunc(alphabet, args.trunc, rules)
        run.inputs.update({"start": args.start, "steps": args.steps})
        if args.start is None:
            raise InputError("graph dynamics needs --start")
        for ch in (args.start if all(len(a) == 1 for a in alphabet) else args.start.split(".")):
            if ch not in alphabet:
                raise InputError(f"start word uses unknown letter {ch!r}")
        if not 1 <= len(args.start) <= args.trunc:
            raise InputError("start word must be nonempty and within the truncation")
        sums = w.probability_sums()
        probs = Report("probabilities sum to one", notes=[])
        for a in alphabet:
            probs.checked += 1
            if sums[a] != 1:
                probs.fail((a,), {"sum": format_rational(sums[a])})
        probs.informational = True
        run.add(probs)
        try:
            vec = substitution_dynamics(w, args.start, args.steps)
        except Overflow as e:
            raise Refusal(f"OVERFLOW: {e}") from None
        run.results["state"] = {k: format_rational(vec[k]) for k in sorted(vec)}
        run.results["display"] = " + ".join(f"{format_rational(vec[k])}·{k}" for k in sorted(vec)) or "0"
        run.lap("dynamics")
        return run
    if not args.graph:
        raise InputError(f"graph {args.action} needs --graph")
    g = graph_from_json(_load(args.graph))
    if args.action == "verify":
        if args.delta_m and not g.is_injective():
            raise Refusal("the graph has repeated arcs between the same vertices (s x t not injective); "
                          "Delta_M is undefined")
        p = PathAlgebraTrunc(g, args.trunc)
        run.add(check_associativity(p))
        run.add(check_compat(p, path_epsilon_coproduct(p), CompatKind.Eps))
        if args.delta_m:
            w = graph_word_algebra(g, args.trunc)
            run.add(check_compat(w, delta_M(g, w, "right"), CompatKind.EpsPrimeR))
            run.add(check_compat(w, delta_M(g, w, "left"), CompatKind.EpsPrimeL))
            run.add(check_compat(p, research_coproduct(p), CompatKind.EpsR))
        run.results["dimension"] = p.dim
        run.lap("verify")
        return run
    if args.action == "research":
        if not args.path:
            raise InputError("graph research needs --path")
        p = PathAlgebraTrunc(g, args.trunc)
        vs = [v.strip() for v in args.path.split(",")]
        try:
            i = p.path(vs)
        except KeyError:
            raise InputError(f"{','.join(vs)} is not a path of length at most {args.trunc} in the graph") from None
        vec = research_map(p, i)
        out = {f"{p.basis[a]}⊗{p.basis[b]}": format_rational(c) for (a, b), c in sorted(vec.items())}
        run.results["research"] = out
        run.results["display"] = " + ".join(f"{v}·({k})" for k, v in out.items()) or "0"
        run.lap("research")
        return run
    raise InputError(f"unknown graph action {args.action!r}")


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="baxops", description=__doc__)
    ap.add_argument("--version", action="version", version=f"baxops {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON report instead of text")
    common.add_argument("--report", metavar="FILE", help="also write the JSON report to FILE")
    common.add_argument("--no-timings", action="store_true", help="omit timings so reports are byte-identical")
    sub = ap.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", parents=[common], help="associativity, compatibility and counit checks")
    v.add_argument("--algebra", required=True, help="algebra JSON file or example:NAME")
    v.add_argument("--delta", required=True)
    v.add_argument("--kind", required=True, help="Eps, EpsR, EpsL, EpsPrimeR or EpsPrimeL")
    v.add_argument("--counit")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("baxter", parents=[common], help="Baxter identity for β, γ or an explicit operator on End(A)")
    b.add_argument("--algebra", required=True)
    b.add_argument("--delta", required=True)
    b.add_argument("--operator", default="beta", help="beta, gamma, or an operator JSON file")
    b.add_argument("--kind", default="full", choices=[k.value for k in BaxterKind])
    b.set_defaults(func=cmd_baxter)

    d = sub.add_parser("derive", parents=[common], help="construct and verify a split structure on End(A)")
    d.add_argument("structure", choices=STRUCTURES)
    d.add_argument("--algebra")
    d.add_argument("--delta", action="append")
    d.add_argument("--delta2")
    d.add_argument("--delta3")
    d.add_argument("--zeta", help="operator file replacing the first operator (M, M1, M2, ladip)")
    d.add_argument("--theta", help="operator file replacing the second operator (M, M1, M2, ldip)")
    d.add_argument("--mode", default="PrimeR-beta", choices=["PrimeR-beta", "R-gamma"])
    d.add_argument("--products", default="convolution", choices=["convolution", "gamma"])
    d.add_argument("--recipe", default="DendepsR", choices=["EpdendR", "DendepsR"])
    d.add_argument("--factor", default="integration", choices=["integration", "split"])
    d.add_argument("--force", action="store_true", help="construct even when hypotheses fail")
    d.add_argument("--dump-ops", action="store_true")
    d.set_defaults(func=cmd_derive)

    o = sub.add_parser("operad", parents=[common], help="dimensions of a quadratic non-symmetric operad")
    o.add_argument("action", choices=["dims"])
    o.add_argument("--preset")
    o.add_argument("--file")
    o.add_argument("--max-arity", type=int, required=True)
    o.add_argument("--modular-check", action="store_true")
    o.set_defaults(func=cmd_operad)

    g = sub.add_parser("graph", parents=[common], help="path and word algebra models")
    g.add_argument("action", choices=["verify", "research", "dynamics"])
    g.add_argument("--graph")
    g.add_argument("--subst")
    g.add_argument("--trunc", type=int, default=4)
    g.add_argument("--delta-m", action="store_true", help="also build Δ_M (needs s x t injective)")
    g.add_argument("--path", help="comma-separated vertices, e.g. 1,2,3,4")
    g.add_argument("--start")
    g.add_argument("--steps", type=int, default=1)
    g.set_defaults(func=cmd_graph)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        run = args.func(args)
    except HypothesisError as e:
        run = Run(args.cmd if args.cmd != "derive" else "derive", {"structure": getattr(args, "structure", None)})
        run.add(*e.reports)
        run.notes.append(str(e))
        return _emit(run, args, 1)
    except (InputError, TooLarge, Refusal, KeyError, ValueError, Overflow) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        print(f"baxops: error: {msg}", file=sys.stderr)
        return 2
    return _emit(run, args, 0 if run.ok else 1)


def _emit(run: Run, args, code: int) -> int:
    doc = run.to_json(timings=not args.no_timings)
    if args.report:
        Path(args.report).write_text(dumps(doc), encoding="utf-8")
    if args.json:
        sys.stdout.write(dumps(doc))
    else:
        print(run.text())
    return code


if __name__ == "__main__":
    sys.exit(main())
