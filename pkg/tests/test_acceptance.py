"""The acceptance criteria, one test each.

The conftest hook prints a PASS/FAIL line per criterion at the end of the run.
"""

import json
import math
import time
from fractions import Fraction

from codeprover.bounds import griesmer_check, griesmer_min_length
from codeprover.census import run_census, universe
from codeprover.cli import main
from codeprover.codespec import CodeSpec
from codeprover.combinatorics import WeightDistribution, binomial, krawtchouk, macwilliams
from codeprover.delsarte import (
    ForcedNonInteger,
    InfeasibleLP,
    Mode,
    NoContradiction,
    Quantity,
    bound_quantity,
    build_lp,
    feasibility_verdict,
    is_refutation,
    lower_bound_window,
    tighten,
)
from codeprover.geometry import (
    admissible_even_weights,
    castelnuovo_genus_bound,
    chi_double_cover,
    code_dim_lower_bound,
)
from codeprover.lp import verify_certificate
from codeprover.prover import check_log, sextic_corollary
from codeprover.prover.engine import ProofLog
from codeprover.reductions import pair_interaction, residual_spec

R = frozenset({24, 32, 40, 56})
Q = frozenset({24, 32, 56})
T = frozenset({4, 8, 12, 16, 20})


def _timed(fn, *args, **kw):
    start = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - start


def test_criterion_01_lp_refutations():
    for k, n in ((10, 21), (11, 22)):
        spec = CodeSpec(n, k, T)
        v, t = _timed(feasibility_verdict, spec)
        assert t < 5
        assert is_refutation(v)
        if n == 21:
            assert isinstance(v, InfeasibleLP)
            assert verify_certificate(build_lp(spec), v.certificate)


def test_criterion_02_tightening_contradictions():
    v, t = _timed(tighten, CodeSpec(58, 11, Q))
    assert t < 10
    assert isinstance(v, ForcedNonInteger)
    pins = [(str(w.quantity), w.low) for w in v.windows if w.is_pin]
    assert pins == [("A_56", 1), ("mu_1", 2)]
    assert v.quantity == Quantity.dual(2) and v.value == Fraction(13, 2)

    v, t = _timed(tighten, CodeSpec(64, 13, R, dual_fixed={1: 0, 2: 0, 3: 0}))
    assert t < 10
    assert isinstance(v, ForcedNonInteger)
    assert v.quantity == Quantity.count(56) and v.value == Fraction(5, 2)

    for n in (59, 60):
        v, t = _timed(feasibility_verdict, CodeSpec(n, 11, Q, dual_fixed={1: 0}))
        assert t < 10
        assert is_refutation(v)


def test_criterion_03_lp_lower_bounds():
    w65 = lower_bound_window(CodeSpec(65, 13, R, dual_fixed={1: 0}), Quantity.dual(2))
    assert w65.relaxed[0] == 5 and w65.low >= 5
    w66 = lower_bound_window(CodeSpec(66, 13, R, dual_fixed={1: 0}), Quantity.dual(2))
    assert w66.relaxed[0] == Fraction(13, 2) and w66.low == 7
    assert math.ceil(bound_quantity(CodeSpec(66, 13, R, dual_fixed={1: 0}), Quantity.dual(2), "min").value) == 7


def test_criterion_04_griesmer():
    assert griesmer_min_length(7, 24) == 49
    assert griesmer_check(CodeSpec(48, 7, {24, 48}))


def test_criterion_05_residual_derivation():
    out = residual_spec(CodeSpec(61, 11, R), 40)
    assert (out.n, out.k) == (21, 10)
    assert out.weights == T


def test_criterion_06_full_replay(tmp_path, capsys):
    path = tmp_path / "sextic66.log.json"
    start = time.perf_counter()
    code = main(["prove", "sextic66", "--out", str(path)])
    elapsed = time.perf_counter() - start
    out = capsys.readouterr().out
    assert code == 0
    assert elapsed < 60
    assert "no [66,13,{24,32,40,56}] code" in out

    log = ProofLog.loads(path.read_text())
    assert log.verified
    assert log.conclusion_text() == "no [66,13,{24,32,40,56}] code"
    assert check_log(log)
    assert main(["verify-log", str(path)]) == 0
    lp_steps = [e for e in log.entries if e.step.justification.kind == "lp"]
    assert lp_steps and all(e.certificate for e in lp_steps)


def test_criterion_07_negative_control(capsys):
    spec = CodeSpec(66, 13, {24, 32, 40, 64}, forced={64})
    for mode in Mode:
        assert isinstance(feasibility_verdict(spec, mode), NoContradiction)
    assert main(["--json", "check", "--n", "66", "--k", "13", "--weights", "24,32,40,64", "--forced", "64"]) == 0
    assert json.loads(capsys.readouterr().out)["verdict"]["kind"] == "no_contradiction"


def test_criterion_08_geometry_values():
    assert chi_double_cover(6, 1, 24) == 10
    assert chi_double_cover(6, 0, 48) == 10
    assert chi_double_cover(6, 1, 16) == 12
    assert castelnuovo_genus_bound(12, 3) == 25 >= 19
    assert castelnuovo_genus_bound(12, 4) == 15 < 19
    assert code_dim_lower_bound(66) == 13
    assert admissible_even_weights(66) == {24, 32, 40, 56, 64}


def test_criterion_09_corollary(sextic_log):
    rep = sextic_corollary(sextic_log)
    assert rep.asserted
    assert "64 must occur, 56 cannot" in rep.text
    assert pair_interaction(56, 64, CodeSpec(66, 13, {24, 32, 40, 56, 64})) == frozenset()
    assert "pair_56_64" in rep.references
    assert sextic_log.entry("pair_56_64").ok


def test_criterion_10_soundness_oracle():
    report, t = _timed(run_census, max_n=10, max_k=3, samples=1000, sample_n=16, sample_k=5)
    assert t < 300
    assert report.failures == []
    assert report.codes == sum(1 for _ in universe(10, 3)) + 1000


def test_criterion_11_combinatorics_properties():
    for n in range(17):
        for m in range(n + 1):
            for i in range(n + 1):
                if 1 <= m < n:
                    assert (m + 1) * krawtchouk(n, m + 1, i) == (n - 2 * i) * krawtchouk(n, m, i) - (n - m + 1) * krawtchouk(n, m - 1, i)
                assert binomial(n, i) * krawtchouk(n, m, i) == binomial(n, m) * krawtchouk(n, i, m)
            for mm in range(n + 1):
                s = sum(binomial(n, i) * krawtchouk(n, m, i) * krawtchouk(n, mm, i) for i in range(n + 1))
                assert s == (2**n * binomial(n, m) if m == mm else 0)
    for code in universe(10, 3):
        a = WeightDistribution.from_dense(code.distribution())
        assert macwilliams(macwilliams(a, code.k), code.n - code.k) == a
