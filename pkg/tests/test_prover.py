import json

import pytest

from codeprover.codespec import CodeSpec
from codeprover.prover import (
    CorollaryError,
    ProofScript,
    ScriptBuilder,
    ScriptError,
    check_log,
    check_log_report,
    run_script,
    sextic66_script,
    sextic_corollary,
)
from codeprover.prover.arith import ExpressionError, evaluate
from codeprover.prover.engine import ProofLog
from codeprover.prover.script import (
    Arithmetic,
    Axiom,
    DualBound,
    Fact,
    Griesmer,
    LPVerdict,
    Monotone,
    Nonexistence,
    ProofStep,
    Residual,
    Shorten,
)
from codeprover.delsarte import Mode

R = {24, 32, 40, 56}
T = {4, 8, 12, 16, 20}


def _reload(log: ProofLog) -> ProofLog:
    return ProofLog.loads(log.dumps())


def test_single_griesmer_step():
    b = ScriptBuilder("g")
    b.add("g", Nonexistence(CodeSpec(48, 7, {24, 48})), Griesmer())
    log = run_script(b.build("g"))
    assert log.verified and check_log(log)
    assert log.conclusion_text() == "no [48,7,{24,48}] code"


def test_griesmer_step_that_does_not_hold():
    b = ScriptBuilder("g")
    b.add("g", Nonexistence(CodeSpec(49, 7, {24, 48})), Griesmer())
    log = run_script(b.build())
    assert not log.verified and log.first_failure.step.id == "g"


def test_sextic66_verifies(sextic_log):
    assert sextic_log.verified
    assert sextic_log.conclusion_text() == "no [66,13,{24,32,40,56}] code"
    assert check_log(sextic_log)
    assert sextic_log.wall_time < 60


def test_log_round_trip_is_bit_exact(sextic_log):
    text = sextic_log.dumps()
    again = ProofLog.loads(text)
    assert again.dumps() == text
    assert check_log(again) == check_log(sextic_log)


def test_false_arithmetic_step_fails_the_log():
    b = ScriptBuilder("bad")
    b.add("one", Fact("1 = 2"), Arithmetic("1", 2))
    b.add("after", Fact("depends on a falsehood"), Arithmetic("2 + 2", 4), "one")
    log = run_script(b.build())
    assert not log.verified
    assert log.first_failure.step.id == "one"
    assert log.entry("after").status == "failed"
    assert not check_log(log)


def test_empty_log():
    assert check_log(ProofLog("empty"))
    assert run_script(ProofScript("empty", ())).verified


def _tamper(log: ProofLog, step_id: str, edit) -> ProofLog:
    doc = json.loads(log.dumps())
    for e in doc["entries"]:
        if e["step"]["id"] == step_id:
            edit(e)
    return ProofLog.from_dict(doc)


def test_perturbed_multiplier_is_caught(sextic_log):
    def bump(entry):
        mult = entry["certificate"]["verdict"]["certificate"]["multipliers"]
        key = sorted(mult)[0]
        mult[key]["num"] = str(int(mult[key]["num"]) + 1)

    bad = _tamper(sextic_log, "t21", bump)
    assert not check_log(bad)
    failed = [r for r in check_log_report(bad) if not r.ok]
    assert failed[0].step_id == "t21"
    # everything downstream of t21 is rejected too
    assert any(r.step_id == "theorem" for r in failed)


def test_perturbed_window_certificate_is_caught(sextic_log):
    def bump(entry):
        w = entry["certificate"]["verdict"]["windows"][0]
        mult = w["low_certificate"]["multipliers"]
        key = sorted(mult)[-1]
        mult[key]["den"] = str(int(mult[key]["den"]) * 3)

    assert not check_log(_tamper(sextic_log, "q58", bump))


def test_claim_swapped_under_certificate_is_caught(sextic_log):
    def swap(entry):
        entry["step"]["claim"]["spec"]["k"] = 9

    assert not check_log(_tamper(sextic_log, "t21", swap))


def test_status_flip_is_caught(sextic_log):
    def fail(entry):
        entry["status"] = "failed"

    assert not check_log(_tamper(sextic_log, "r64", fail))


def test_axiom_forgery_is_caught(sextic_log):
    def forge(entry):
        entry["step"]["justification"] = {"kind": "axiom", "citation": "trust me"}
        entry["status"] = "axiom"

    # an axiom cannot justify a nonexistence claim
    results = check_log_report(_tamper(sextic_log, "t21", forge))
    assert not next(r for r in results if r.step_id == "t21").ok


def test_malformed_scripts_raise():
    b = ScriptBuilder("bad")
    b.add("x", Nonexistence(CodeSpec(61, 11, R)), Residual("y", 48))
    b.add("y", Nonexistence(CodeSpec(21, 10, T)), LPVerdict())
    with pytest.raises(ScriptError):
        run_script(b.build())
    cyc = ProofScript(
        "cyc",
        (
            ProofStep("a", Nonexistence(CodeSpec(5, 1, {5})), Monotone("b")),
            ProofStep("b", Nonexistence(CodeSpec(5, 1, {5})), Monotone("a")),
        ),
    )
    with pytest.raises(ScriptError):
        run_script(cyc)
    with pytest.raises(ScriptError):
        run_script(ProofScript("u", (ProofStep("a", Fact("x"), Arithmetic("1", 1), ("nope",)),)))
    with pytest.raises(ScriptError):
        run_script(ProofScript("k", (ProofStep("a", Fact("x"), Griesmer()),)))
    with pytest.raises(ScriptError):
        run_script(ProofScript("c", (ProofStep("a", Fact("x"), Axiom("  ")),)))


def test_steps_need_verified_dependencies():
    b = ScriptBuilder("chain")
    b.add("lp", Nonexistence(CodeSpec(61, 11, {24, 32, 56})), LPVerdict(Mode.PAPER))  # not refuted without mu_1 = 0
    b.add("mono", Nonexistence(CodeSpec(61, 11, {24, 32})), Monotone("lp"))
    log = run_script(b.build())
    assert log.entry("lp").status == "failed"
    assert "dependencies not verified" in log.entry("mono").error


def test_shorten_needs_the_dual_word_in_the_claim():
    b = ScriptBuilder("s")
    b.add("base", Nonexistence(CodeSpec(21, 10, T)), LPVerdict())
    b.add("s", Nonexistence(CodeSpec(22, 10, T)), Shorten("base", (1,)))
    log = run_script(b.build())
    assert log.entry("s").status == "failed"


def test_dual_bound_claim_too_strong():
    b = ScriptBuilder("d")
    b.add("d", DualBound(CodeSpec(66, 13, R, dual_fixed={1: 0}), 2, 8), LPVerdict())
    assert not run_script(b.build()).verified


def test_parallel_run_matches_serial(sextic_log):
    par = run_script(sextic66_script(), jobs=4)

    def strip(log):
        doc = log.to_dict()
        for e in doc["entries"]:
            e["wall_time"] = 0
        return doc

    assert strip(par) == strip(sextic_log)


def test_script_round_trip():
    s = sextic66_script()
    again = ProofScript.from_dict(json.loads(json.dumps(s.to_dict())))
    assert again == s


def test_script_axioms_are_exactly_five():
    s = sextic66_script()
    axioms = [st.id for st in s.steps if isinstance(st.justification, Axiom)]
    assert sorted(axioms) == sorted(["ax_div8", "ax_no48", "ax_h0", "ax_basset", "ax_dim"])


def test_script_covers_the_argument():
    s = sextic66_script()
    claims = {st.id: st for st in s.steps}
    lp_specs = {str(st.claim.spec) for st in s.steps if st.justification.kind == "lp" and isinstance(st.claim, Nonexistence)}
    for text in ["[21,10,{4,8,12,16,20}]", "[22,11,{4,8,12,16,20}]", "[58,11,{24,32,56}]", "[63,13,{24,32,40,56}]", "[64,13,{24,32,40,56}]"]:
        assert text in lp_specs
    for n in (59, 60, 61):
        assert isinstance(claims[f"q{n}_mu1"].justification, Shorten)
        assert dict(claims[f"q{n}"].justification.assumptions) == {1: f"q{n}_mu1"}
    assert claims["r61"].justification.partner == "q61"
    assert set(dict(claims["r63"].justification.assumptions)) == {1, 2, 3}
    assert set(dict(claims["r64"].justification.assumptions)) == {1, 2, 3}
    assert claims["r65"].justification.variant == "pair"
    assert claims["theorem"].justification.variant == "cliques"
    assert claims["free66"].justification.expression == "floor((66 - 56) / 2)"
    assert claims["r66_mu2"].claim.value == 7
    assert s.conclusion == "theorem"


def test_arith_language():
    assert evaluate("floor((66 - 56) / 2)") == 5
    assert evaluate("7 / 2") * 2 == 7
    assert evaluate("{1, 2} == set([2, 1])") is True
    assert evaluate("binomial(66, 2)") == 2145
    for bad in ["__import__('os')", "open('x')", "2 ** 100000", "x + 1", "(lambda: 1)()"]:
        with pytest.raises(ExpressionError):
            evaluate(bad)


# -- corollary ----------------------------------------------------------------


def test_corollary_default(sextic_log):
    rep = sextic_corollary(sextic_log)
    assert rep.asserted
    assert rep.code == CodeSpec(66, 13, {24, 32, 40, 64}, forced={64})
    assert "64 must occur, 56 cannot" in rep.text
    assert "pair_56_64" in rep.references and "theorem" in rep.references
    assert "[66,13,{24,32,40,_64_}]" in rep.text


def test_corollary_without_48_axiom(sextic_log):
    rep = sextic_corollary(sextic_log, withdrawn=("ax_no48",))
    assert not rep.asserted
    assert rep.unexcluded == (48,)
    assert "48" in rep.text


def test_corollary_at_65_nodes(sextic_log):
    rep = sextic_corollary(sextic_log, nodes=65)
    assert not rep.asserted and rep.dimension == 12


def test_corollary_refuses_failed_ingredients(sextic_log):
    doc = json.loads(sextic_log.dumps())
    for e in doc["entries"]:
        if e["step"]["id"] == "dim66":
            e["status"] = "failed"
    with pytest.raises(CorollaryError):
        sextic_corollary(ProofLog.from_dict(doc))


def test_corollary_with_other_axiom_withdrawn(sextic_log):
    rep = sextic_corollary(sextic_log, withdrawn=("ax_basset",))
    assert not rep.asserted
    with pytest.raises(ValueError):
        sextic_corollary(sextic_log, withdrawn=("ax_unknown",))
