"""Command-line entry point: ``codeprover <command> ...``.

Exit status is 0 whenever a command ran, whatever the mathematical verdict;
2 signals a usage, parse or IO problem and 1 a failed proof step or oracle
check. ``--fail-on-contradiction`` makes ``check`` exit 3 on a refutation.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .bounds import griesmer_min_length
from .codespec import CodeSpec
from .delsarte import Mode, NoContradiction, Quantity, bound_quantity, feasibility_verdict, is_refutation
from .geometry import (
    admissible_even_weights,
    castelnuovo_genus_bound,
    castelnuovo_split,
    chi_double_cover,
    code_dim_lower_bound,
    double_cover_genus,
    embedding_dim_inequality,
    min_even_weight,
)
from .lp import Optimal
from .reductions import ReductionError, residual_dimension_exact, residual_spec, shorten_components, shorten_dual_word
from .serialize import DocumentError, dumps, load_json, parse_spec_document, rational, spec_to_dict, verdict_to_dict

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_REFUTED = 3


class UsageError(Exception):
    pass


def fmt(v: Fraction | int, approx: bool = True) -> str:
    v = Fraction(v)
    if v.denominator == 1:
        return str(v.numerator)
    text = f"{v.numerator}/{v.denominator}"
    return f"{text} (~{float(v):.4g}, approximate)" if approx else text


def _int_list(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


def _assignments(text: str | None) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    if not text:
        return out
    for item in text.replace(" ", "").split(","):
        if not item:
            continue
        if "=" not in item:
            raise UsageError(f"expected index=value, got {item!r}")
        i, v = item.split("=", 1)
        try:
            out[int(i)] = Fraction(v)
        except ValueError:
            raise UsageError(f"bad assignment {item!r}") from None
    return out


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def spec_from_args(args: argparse.Namespace) -> tuple[CodeSpec, Mode]:
    mode = Mode(args.mode) if args.mode else None
    if args.spec:
        spec, doc_mode = parse_spec_document(_read(args.spec))
        mode = mode or doc_mode
    else:
        if args.n is None or args.k is None or args.weights is None:
            raise UsageError("give --spec FILE or all of --n, --k and --weights")
        spec = CodeSpec(args.n, args.k, _int_list(args.weights), forced=_int_list(args.forced))
    fixed = _assignments(args.dual_fixed)
    fixed.update({m: Fraction(0) for m in _int_list(args.dual_zero)})
    lower = _assignments(args.dual_lower)
    counts = _assignments(args.fixed)
    if fixed or lower:
        spec = spec.with_dual(fixed=fixed, lower=lower)
    if counts:
        spec = CodeSpec(spec.n, spec.k, spec.weights, spec.forced, {**spec.fixed_counts, **counts}, spec.dual_fixed, spec.dual_lower)
    return spec, mode or Mode.FULL


def _emit(args: argparse.Namespace, doc: dict[str, Any], text: str) -> None:
    sys.stdout.write(dumps(doc) if args.json else text.rstrip("\n") + "\n")


# -- commands -----------------------------------------------------------------


def cmd_check(args: argparse.Namespace) -> int:
    spec, mode = spec_from_args(args)
    verdict = feasibility_verdict(spec, mode)
    need = griesmer_min_length(spec.k, spec.min_weight)
    lines = [f"spec: {spec}  (mode: {mode.value})", f"Griesmer: n >= {need}" + (f" > {spec.n}: refuted" if need > spec.n else "")]
    for w in verdict.windows:
        kind = "pinned" if w.is_pin else "window"
        lines.append(f"  {kind} {w.quantity}: [{w.low}, {w.high}] from LP range [{fmt(w.relaxed[0])}, {fmt(w.relaxed[1])}]")
    if isinstance(verdict, NoContradiction):
        lines.append("bounds:")
        for q, (lo, hi) in verdict.bounds.items():
            lines.append(f"  {str(q):>6}  [{fmt(lo)}, {fmt(hi)}]")
    lines.append(verdict.describe())
    doc = {
        "spec": spec_to_dict(spec, mode),
        "griesmer": {"min_length": need, "refuted": need > spec.n},
        "verdict": verdict_to_dict(verdict),
    }
    _emit(args, doc, "\n".join(lines))
    if args.fail_on_contradiction and (is_refutation(verdict) or need > spec.n):
        return EXIT_REFUTED
    return EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    spec, mode = spec_from_args(args)
    try:
        q = Quantity.parse(args.quantity)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    senses = ["min", "max"] if args.sense == "both" else [args.sense]
    doc: dict[str, Any] = {"spec": spec_to_dict(spec, mode), "quantity": str(q)}
    lines = [f"spec: {spec}  (mode: {mode.value})"]
    for sense in senses:
        out = bound_quantity(spec, q, sense, mode)
        if isinstance(out, Optimal):
            doc[sense] = rational(out.value)
            rounded = math.ceil(out.value) if sense == "min" else math.floor(out.value)
            lines.append(f"{sense} {q} = {fmt(out.value)}; integer {'>=' if sense == 'min' else '<='} {rounded}")
        else:
            doc[sense] = type(out).__name__.lower()
            lines.append(f"{sense} {q}: {type(out).__name__.lower()}")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_residual(args: argparse.Namespace) -> int:
    spec, _ = spec_from_args(args)
    res = residual_spec(spec, args.weight)
    exact = residual_dimension_exact(spec, args.weight)
    doc = {"spec": spec_to_dict(spec), "weight": args.weight, "residual": spec_to_dict(res), "dimension_exact": exact}
    note = "" if exact else " (dimension may drop: a word can split this weight)"
    _emit(args, doc, f"residual of {spec} at weight {args.weight}: {res}{note}")
    return EXIT_OK


def cmd_shorten(args: argparse.Namespace) -> int:
    spec, _ = spec_from_args(args)
    if args.dual_weight is not None:
        out = shorten_dual_word(spec, args.dual_weight, args.positions)
        how = f"on {args.positions or args.dual_weight} positions of a weight-{args.dual_weight} dual word"
    else:
        comps = _int_list(args.components)
        if not comps:
            raise UsageError("give --components or --dual-weight")
        out = shorten_components(spec, comps)
        how = f"on tied components {comps}"
    _emit(args, {"spec": spec_to_dict(spec), "shortened": spec_to_dict(out)}, f"shortening {spec} {how}: {out}")
    return EXIT_OK


def _load_script(name: str):
    from .prover import ProofScript, sextic66_script

    if name == "sextic66":
        return sextic66_script()
    path = Path(name)
    if not path.is_file():
        raise UsageError(f"unknown script {name!r} (built in: sextic66)")
    return ProofScript.from_dict(load_json(_read(name)))


def cmd_prove(args: argparse.Namespace) -> int:
    from .prover import check_log, run_script
    from .prover.engine import ProofLog, summarize

    script = _load_script(args.script)
    log = run_script(script, jobs=args.jobs)
    out = Path(args.out or f"{script.name}.log.json")
    try:
        out.write_text(log.dumps())
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc.strerror}") from None
    lines = [summarize(log), "", f"log written to {out}  ({len(log.entries)} steps, {log.wall_time:.2f} s)"]
    if log.verified and log.conclusion:
        lines.append(f"VERIFIED: {log.conclusion_text()}")
    elif not log.verified:
        bad = log.first_failure
        lines.append(f"FAILED at step {bad.step.id}: {bad.error}")
    if args.verify:
        ok = check_log(ProofLog.loads(out.read_text()))
        lines.append("certificates re-verified" if ok else "certificate re-check FAILED")
        if not ok:
            print("\n".join(lines))
            return EXIT_FAILED
    if args.json:
        sys.stdout.write(dumps({"log": str(out), "status": log.status, "conclusion": log.conclusion_text()}))
    else:
        print("\n".join(lines))
    return EXIT_OK if log.verified else EXIT_FAILED


def cmd_verify_log(args: argparse.Namespace) -> int:
    from .prover.engine import ProofLog, check_log_report

    try:
        log = ProofLog.loads(_read(args.log))
    except DocumentError as exc:
        raise UsageError(f"{args.log}: {exc}") from None
    results = check_log_report(log)
    ok = all(r.ok for r in results)
    lines = [f"{'ok  ' if r.ok else 'FAIL'} {r.step_id}" + (f": {r.reason}" if r.reason else "") for r in results]
    lines.append(f"{len(results)} steps; " + ("certificates re-verified" if ok else "verification FAILED"))
    doc = {"ok": ok, "steps": [{"id": r.step_id, "ok": r.ok, "reason": r.reason} for r in results]}
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAILED


def cmd_geom(args: argparse.Namespace) -> int:
    q = args.query
    if q == "chi":
        v = chi_double_cover(args.s, args.n, args.p)
        text = f"chi = {args.n}*({args.n}+4-{args.s})*{args.s} + 2*(1+C({args.s - 1},3)) - {args.p}/4 = {fmt(v)}"
    elif q == "castelnuovo":
        v = castelnuovo_genus_bound(args.d, args.r)
        x, y = castelnuovo_split(args.d, args.r)
        text = f"({args.d}-1)/({args.r}-1) = {x} + {fmt(y, False)}; bound = ({args.r}-1)*(C({x},2) + {x}*{fmt(y, False)}) = {fmt(v)}"
    elif q == "embedding":
        v = embedding_dim_inequality(args.s, args.r)
        text = f"s = {args.s}, r = {args.r}: genus {double_cover_genus(args.s)}; " + ("possible" if v else "ruled out")
    elif q == "min-weight":
        res = min_even_weight(args.s)
        v = res.value
        steps = [f"p = {t.p}: chi = {fmt(t.chi)}, h0 >= {t.h0_lower}" + (" > 5 excluded" if t.excluded else "") for t in res.trace]
        text = "\n".join(steps + [f"minimum weight = {v}"])
    elif q == "weights":
        v = admissible_even_weights(args.max_nodes, exclude_48=not args.allow_48)
        text = "admissible weights: {" + ",".join(map(str, sorted(v))) + "}"
    else:
        v = code_dim_lower_bound(args.nodes, args.b2)
        text = f"dim C >= {args.nodes} - {args.b2}/2 = {v}"
    _emit(args, {"query": q, "value": _json_value(v)}, text)
    return EXIT_OK


def _json_value(v: Any) -> Any:
    if isinstance(v, bool):
        return v
    if isinstance(v, Fraction):
        return rational(v)
    if isinstance(v, frozenset):
        return sorted(v)
    return v


def cmd_census(args: argparse.Namespace) -> int:
    from .census import run_census

    rep = run_census(args.max_n, args.max_k, args.samples, args.sample_n, args.sample_k, args.seed, Mode(args.mode or "full"), args.raw)
    lines = [f"{rep.codes} codes, {rep.profiles} distinct profiles, {len(rep.failures)} failures"] + rep.failures[:20]
    _emit(args, {"codes": rep.codes, "profiles": rep.profiles, "failures": rep.failures}, "\n".join(lines))
    return EXIT_OK if rep.ok else EXIT_FAILED


def cmd_corollary(args: argparse.Namespace) -> int:
    from .prover import CorollaryError, sextic_corollary

    try:
        rep = sextic_corollary(nodes=args.nodes, withdrawn=tuple(args.withdraw))
    except CorollaryError as exc:
        print(f"refusing to state the corollary: {exc}", file=sys.stderr)
        return EXIT_FAILED
    doc = {
        "nodes": rep.nodes,
        "asserted": rep.asserted,
        "code": spec_to_dict(rep.code) if rep.code else None,
        "unexcluded": list(rep.unexcluded),
        "references": list(rep.references),
    }
    _emit(args, doc, rep.text)
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def _spec_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("code spec")
    g.add_argument("--spec", metavar="FILE", help="JSON spec document")
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--weights", help="comma-separated allowed weights")
    g.add_argument("--forced", help="weights that must occur")
    g.add_argument("--dual-zero", help="dual weights m with mu_m = 0")
    g.add_argument("--dual-fixed", help="m=v pins on dual counts")
    g.add_argument("--dual-lower", help="m=v lower bounds on dual counts")
    g.add_argument("--fixed", help="j=v pins on weight counts")
    g.add_argument("--mode", choices=[m.value for m in Mode], help="LP constraint set (default full)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="codeprover", description="Exact LP refutations of binary code specs.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
        p.set_defaults(func=func)
        return p

    p = add("check", cmd_check, "run the LP gate on a spec")
    _spec_flags(p)
    p.add_argument("--fail-on-contradiction", action="store_true", help="exit 3 when the spec is refuted")

    p = add("bound", cmd_bound, "exact LP range of one quantity")
    _spec_flags(p)
    p.add_argument("--quantity", required=True, help="A_j or mu_m")
    p.add_argument("--sense", choices=["min", "max", "both"], default="both")

    p = add("residual", cmd_residual, "residual spec at a weight")
    _spec_flags(p)
    p.add_argument("--weight", type=int, required=True)

    p = add("shorten", cmd_shorten, "shortened spec")
    _spec_flags(p)
    p.add_argument("--components", help="tied component sizes, e.g. 2,2")
    p.add_argument("--dual-weight", type=int)
    p.add_argument("--positions", type=int)

    p = add("prove", cmd_prove, "run a proof script and write its log")
    p.add_argument("script", help="'sextic66' or a JSON script file")
    p.add_argument("--out", help="log path (default NAME.log.json)")
    p.add_argument("--verify", action="store_true", help="re-check the written log")
    p.add_argument("--jobs", type=int, default=1)

    p = add("verify-log", cmd_verify_log, "re-check every certificate in a log")
    p.add_argument("log")

    p = add("geom", cmd_geom, "numeric invariants of nodal surfaces")
    p.add_argument("query", choices=["chi", "castelnuovo", "embedding", "min-weight", "weights", "dim-bound"])
    p.add_argument("--s", type=int, default=6)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--d", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--nodes", type=int, default=66)
    p.add_argument("--b2", type=int, default=106)
    p.add_argument("--max-nodes", type=int, default=66)
    p.add_argument("--allow-48", action="store_true")

    p = add("census", cmd_census, "brute-force oracle over small codes")
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--max-k", type=int, default=3)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--sample-n", type=int, default=16)
    p.add_argument("--sample-k", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=[m.value for m in Mode])
    p.add_argument("--raw", action="store_true", help="enumerate every P, not multisets of columns")

    p = add("corollary", cmd_corollary, "what the theorem says about a nodal sextic")
    p.add_argument("--nodes", type=int, default=66)
    p.add_argument("--withdraw", action="append", default=[], metavar="AXIOM", help="drop an axiom step, e.g. ax_no48")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "geom":
        need = {"castelnuovo": ("d", "r"), "embedding": ("r",)}.get(args.query, ())
        missing = [f"--{a}" for a in need if getattr(args, a) is None]
        if missing:
            parser.error(f"geom {args.query} needs {' '.join(missing)}")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"codeprover: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DocumentError as exc:
        print(f"codeprover: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ReductionError) as exc:
        print(f"codeprover: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
