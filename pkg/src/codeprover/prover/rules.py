"""How each justification kind is executed and how its certificate is re-checked.

``execute_step`` may run the LP solver and returns a JSON-ready certificate.
``check_step`` never solves anything: it rebuilds LP problems from the claim,
verifies Farkas multipliers by arithmetic and recomputes every reduction.
A check returns ``None`` on success and a reason string on failure.
"""

from __future__ import annotations

from typing import Any, Mapping

from ..bounds import griesmer_check, griesmer_min_length, implies_nonexistence
from ..codespec import CodeSpec
from ..delsarte import (
    Mode,
    Quantity,
    build_lp,
    cut_constraint,
    feasibility_verdict,
    lower_bound_window,
    window_problems,
)
from ..lp import verify_certificate
from ..reductions import (
    ReductionError,
    adjoin_complement,
    deuce_graph_cases,
    pair_cases,
    pair_interaction,
    residual_dimension_exact,
    residual_spec,
    shorten_components,
    shorten_dual_word,
)
from ..serialize import (
    problem_to_dict,
    spec_to_dict,
    verdict_from_dict,
    verdict_to_dict,
    window_from_dict,
    window_to_dict,
)
from .arith import ExpressionError, evaluate, matches
from .script import (
    Adjoin,
    Arithmetic,
    Axiom,
    Claim,
    DeuceGraph,
    DualBound,
    Fact,
    Griesmer,
    LPVerdict,
    Monotone,
    Nonexistence,
    ProofStep,
    Residual,
    ScriptError,
    Shorten,
    value_to_json,
)

CLAIM_KINDS = {
    "lp": (Nonexistence, DualBound),
    "griesmer": (Nonexistence,),
    "residual": (Nonexistence,),
    "shorten": (Nonexistence,),
    "monotone": (Nonexistence,),
    "adjoin": (Nonexistence,),
    "deuce_graph": (Nonexistence,),
    "axiom": (Fact,),
    "arithmetic": (Fact,),
}


def validate_step(step: ProofStep) -> None:
    """Structural checks that do not depend on other steps."""
    j = step.justification
    if not isinstance(step.claim, CLAIM_KINDS[j.kind]):
        raise ScriptError(f"step {step.id!r}: {j.kind} cannot justify a {step.claim.kind} claim")
    spec = getattr(step.claim, "spec", None)
    if isinstance(j, Residual) and j.weight not in spec.weights:
        raise ScriptError(f"step {step.id!r}: residual weight {j.weight} is not in {spec}")
    if isinstance(j, Shorten):
        if j.dual_weight is None and tuple(j.components) not in ((1,), (2,)):
            raise ScriptError(f"step {step.id!r}: shorten needs components (1,) or (2,), or a dual_weight")
        if j.dual_weight is not None and j.dual_weight < 1:
            raise ScriptError(f"step {step.id!r}: dual_weight must be positive")
    if isinstance(j, LPVerdict):
        for m, _ in j.assumptions:
            if not 1 <= m <= spec.n:
                raise ScriptError(f"step {step.id!r}: assumption mu_{m} out of range")
    if isinstance(j, DeuceGraph) and j.variant not in ("pair", "cliques"):
        raise ScriptError(f"step {step.id!r}: unknown deuce graph variant {j.variant!r}")
    if isinstance(j, DeuceGraph) and j.variant == "cliques" and j.subcode is None:
        raise ScriptError(f"step {step.id!r}: the cliques variant needs a subcode step")
    if isinstance(j, Axiom) and not j.citation.strip():
        raise ScriptError(f"step {step.id!r}: axioms need a citation")


# -- helpers ------------------------------------------------------------------


def _refuted(claims: Mapping[str, Claim], ref: str, target: CodeSpec) -> str | None:
    claim = claims.get(ref)
    if not isinstance(claim, Nonexistence):
        return f"step {ref!r} does not prove a nonexistence claim"
    if not implies_nonexistence(claim.spec, target):
        return f"{claim.spec} does not rule out {target}"
    return None


def _lp_spec(step: ProofStep) -> CodeSpec:
    j = step.justification
    return step.claim.spec.with_dual(fixed={m: 0 for m, _ in j.assumptions})


def _dual_word_weight(j: Shorten) -> int:
    if j.dual_weight is not None:
        return j.dual_weight
    return 1 if tuple(j.components) == (1,) else 2


def _shortened(spec: CodeSpec, j: Shorten) -> CodeSpec:
    if j.dual_weight is not None:
        return shorten_dual_word(spec, j.dual_weight, j.positions)
    return shorten_components(spec, j.components)


def _big_weights(spec: CodeSpec, edges: int) -> list[int]:
    # words of these weights leave too few free coordinates for all deuces
    return [w for w in spec.sorted_weights if (spec.n - w) // 2 < edges]


def matching_subcode(spec: CodeSpec, edges: int) -> CodeSpec:
    """Shorten on a deuce inside the (unique) large-weight word."""
    big = set(_big_weights(spec, edges))
    weights = [w for w in spec.weights if w not in big and w <= spec.n - 2]
    return CodeSpec(spec.n - 2, spec.k - 1, weights, dual_lower={2: edges - 1})


# -- execution ----------------------------------------------------------------


def execute_step(step: ProofStep, claims: Mapping[str, Claim]) -> tuple[dict[str, Any], str]:
    """Run the step; returns (certificate, one-line summary)."""
    j = step.justification
    claim = step.claim
    if isinstance(j, LPVerdict):
        spec = _lp_spec(step)
        cert: dict[str, Any] = {
            "lp_spec": spec_to_dict(spec, j.mode),
            "problem": problem_to_dict(build_lp(spec, j.mode)),
        }
        if isinstance(claim, DualBound):
            window = lower_bound_window(spec, Quantity.dual(claim.m), j.mode)
            cert["window"] = window_to_dict(window)
            lo = window.relaxed[0]
            return cert, f"LP: min mu_{claim.m} = {lo}, so mu_{claim.m} >= {window.low}"
        verdict = feasibility_verdict(spec, j.mode, j.dual_track)
        cert["verdict"] = verdict_to_dict(verdict)
        pins = [f"{w.quantity} = {w.low}" for w in verdict.windows if w.is_pin]
        text = verdict.describe()
        if pins:
            text = f"pinned {', '.join(pins)}; {text}"
        return cert, f"LP ({Mode(j.mode).value} mode): {text}"
    if isinstance(j, Griesmer):
        spec = claim.spec
        need = griesmer_min_length(spec.k, spec.min_weight)
        return {"min_length": need, "n": spec.n}, f"Griesmer: length >= {need} > {spec.n}" if need > spec.n else f"Griesmer: length >= {need}"
    if isinstance(j, Residual):
        res = residual_spec(claim.spec, j.weight)
        cert = {"residual_spec": spec_to_dict(res), "dimension_exact": residual_dimension_exact(claim.spec, j.weight)}
        text = f"residual at weight {j.weight} is {res}"
        if j.partner:
            text += f"; without weight {j.weight} see {j.partner}"
        return cert, text
    if isinstance(j, Shorten):
        reduced = _shortened(claim.spec, j)
        return {"reduced_spec": spec_to_dict(reduced)}, f"shortening on a weight-{_dual_word_weight(j)} dual word gives {reduced}"
    if isinstance(j, Monotone):
        src = claims[j.source].spec
        return {"from_spec": spec_to_dict(src)}, f"weights and forced set are covered by {src}"
    if isinstance(j, Adjoin):
        adj = adjoin_complement(claim.spec)
        return {"adjoined_spec": spec_to_dict(adj)}, f"adjoining the all-ones word gives {adj}"
    if isinstance(j, DeuceGraph):
        return _deuce_cert(step, claims)
    if isinstance(j, Axiom):
        return {"citation": j.citation}, "axiom"
    if isinstance(j, Arithmetic):
        value = evaluate(j.expression)
        return {"value": value_to_json(value)}, f"{j.expression} = {_show(value)}"
    raise ScriptError(f"unknown justification {j!r}")


def _show(v: Any) -> str:
    if isinstance(v, frozenset):
        return "{" + ",".join(str(x) for x in sorted(v)) + "}" if v else "{}"
    return str(v)


def _deuce_cert(step: ProofStep, claims: Mapping[str, Claim]) -> tuple[dict[str, Any], str]:
    j = step.justification
    spec = step.claim.spec
    bound = claims[j.bound]
    edges = bound.value if isinstance(bound, DualBound) else 0
    cases = pair_cases(spec) if j.variant == "pair" else deuce_graph_cases(spec, edges)
    cert: dict[str, Any] = {
        "edges": edges,
        "cases": [{"shape": list(c.component_shape), "reduced_spec": spec_to_dict(c.reduced_spec), "rule": c.justification} for c in cases],
    }
    text = f"{edges} deuces; cases " + ", ".join(f"{list(c.component_shape)} -> {c.reduced_spec}" for c in cases)
    if j.variant == "cliques":
        sub = matching_subcode(spec, edges)
        cert["big_weights"] = _big_weights(spec, edges)
        cert["subcode_spec"] = spec_to_dict(sub)
        text += f"; deuces pairwise disjoint, shorten on one inside the large word: {sub}"
    return cert, text


# -- checking -----------------------------------------------------------------


def check_step(step: ProofStep, claims: Mapping[str, Claim], cert: Mapping[str, Any]) -> str | None:
    """Re-verify a step from its claim, its dependencies' claims and its certificate."""
    try:
        validate_step(step)
        return _CHECKS[step.justification.kind](step, claims, cert)
    except (ScriptError, ReductionError, ExpressionError, ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        return f"{type(exc).__name__}: {exc}"


def _check_lp(step: ProofStep, claims, cert) -> str | None:
    j: LPVerdict = step.justification
    claim = step.claim
    for m, ref in j.assumptions:
        why = _refuted(claims, ref, claim.spec.with_dual(lower={m: 1}))
        if why:
            return f"assumption mu_{m} = 0: {why}"
    spec = _lp_spec(step)
    problem = build_lp(spec, j.mode)
    if "problem" in cert and cert["problem"] != problem_to_dict(problem):
        return "recorded constraint set differs from the Delsarte LP of the claim"
    if isinstance(claim, DualBound):
        w = window_from_dict(cert["window"])
        if w.quantity != Quantity.dual(claim.m) or w.low is None or w.low < claim.value:
            return "window does not give the claimed lower bound"
        lp_low, _ = window_problems(problem, spec, w)
        if w.low_certificate is None or not verify_certificate(lp_low, w.low_certificate):
            return f"Farkas certificate for mu_{claim.m} <= {w.low - 1} does not verify"
        return None
    verdict = verdict_from_dict(cert["verdict"])
    return replay_verdict(spec, problem, verdict)


def replay_verdict(spec: CodeSpec, problem, verdict) -> str | None:
    """Walk the windows of a gate verdict, checking every certificate."""
    kind = type(verdict).__name__
    if kind == "NoContradiction":
        return "LP gate found no contradiction"
    current = problem
    windows = verdict.windows
    for i, w in enumerate(windows):
        q = w.quantity
        if q.kind == "count" and q.index not in spec.weights:
            return f"window on untracked quantity {q}"
        if q.kind == "dual" and not 0 <= q.index <= spec.n:
            return f"window on untracked quantity {q}"
        if w.low is None or w.high is None:
            return f"window {i} on {q} is one-sided"
        lp_low, lp_high = window_problems(current, spec, w)
        if w.low_certificate is None or not verify_certificate(lp_low, w.low_certificate):
            return f"certificate for {q} <= {w.low - 1} does not verify"
        if w.high_certificate is None or not verify_certificate(lp_high, w.high_certificate):
            return f"certificate for {q} >= {w.high + 1} does not verify"
        last = i == len(windows) - 1
        if w.is_pin:
            current = current.with_constraints(cut_constraint(spec, q, "=", w.low))
        elif not (w.is_empty and last and kind in ("ForcedNonInteger", "ForcedConflict")):
            return f"window {i} on {q} is neither a pin nor the final contradiction"
    if kind == "InfeasibleLP":
        if not verify_certificate(current, verdict.certificate):
            return "final Farkas certificate does not verify"
        return None
    if not windows or not windows[-1].is_empty:
        return "contradiction verdict without an empty window"
    if windows[-1].quantity != verdict.quantity:
        return "contradiction names a different quantity than its window"
    return None


def _check_griesmer(step, claims, cert) -> str | None:
    if not griesmer_check(step.claim.spec):
        return "Griesmer bound does not exclude the spec"
    return None


def _check_residual(step, claims, cert) -> str | None:
    j: Residual = step.justification
    spec = step.claim.spec
    if not residual_dimension_exact(spec, j.weight):
        return f"a word could split weight {j.weight}; residual dimension may drop"
    why = _refuted(claims, j.source, residual_spec(spec, j.weight))
    if why:
        return why
    if j.partner is None:
        if j.weight not in spec.forced:
            return f"weight {j.weight} is not forced and no partner case is given"
        return None
    return _refuted(claims, j.partner, spec.with_weights(spec.weights - {j.weight}))


def _check_shorten(step, claims, cert) -> str | None:
    j: Shorten = step.justification
    spec = step.claim.spec
    m = _dual_word_weight(j)
    if max(spec.dual_lower.get(m, 0), spec.dual_fixed.get(m, 0)) < 1:
        return f"claim spec does not assume a dual word of weight {m}"
    return _refuted(claims, j.source, _shortened(spec, j))


def _check_monotone(step, claims, cert) -> str | None:
    return _refuted(claims, step.justification.source, step.claim.spec)


def _check_adjoin(step, claims, cert) -> str | None:
    return _refuted(claims, step.justification.source, adjoin_complement(step.claim.spec))


def _check_deuce_graph(step, claims, cert) -> str | None:
    j: DeuceGraph = step.justification
    spec = step.claim.spec
    bound = claims.get(j.bound)
    if not isinstance(bound, DualBound) or bound.m != 2 or bound.spec != spec:
        return "bound step must show mu_2 >= L for the claim spec itself"
    edges = bound.value
    if j.variant == "pair":
        if edges < 2:
            return "need at least two deuces"
        required = pair_cases(spec)
    else:
        if edges <= 3:
            return "a lone K_3 is not excluded with at most 3 deuces"
        required = deuce_graph_cases(spec, edges)
    given = {tuple(shape): ref for shape, ref in j.cases}
    for case in required:
        ref = given.get(case.component_shape)
        if ref is None:
            return f"case {list(case.component_shape)} is not covered"
        why = _refuted(claims, ref, case.reduced_spec)
        if why:
            return f"case {list(case.component_shape)}: {why}"
    if j.variant == "pair":
        return None
    big = _big_weights(spec, edges)
    for a in big:
        for b in big:
            overlaps = pair_interaction(a, b, spec)
            if overlaps - ({a} if a == b else set()):
                return f"two words of weights {a}, {b} could coexist"
    if spec.k < 2:
        return "no room to shorten"
    return _refuted(claims, j.subcode, matching_subcode(spec, edges))


def _check_axiom(step, claims, cert) -> str | None:
    return None if step.justification.citation.strip() else "axiom without citation"


def _check_arithmetic(step, claims, cert) -> str | None:
    j: Arithmetic = step.justification
    value = evaluate(j.expression)
    if not matches(value, j.expected):
        return f"{j.expression} evaluates to {_show(value)}, expected {_show(j.expected)}"
    return None


_CHECKS = {
    "lp": _check_lp,
    "griesmer": _check_griesmer,
    "residual": _check_residual,
    "shorten": _check_shorten,
    "monotone": _check_monotone,
    "adjoin": _check_adjoin,
    "deuce_graph": _check_deuce_graph,
    "axiom": _check_axiom,
    "arithmetic": _check_arithmetic,
}
