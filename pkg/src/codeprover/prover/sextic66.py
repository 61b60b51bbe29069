"""The built-in proof that no [66,13,{24,32,40,56}] code exists, and its corollary.

With R = {24,32,40,56} and T = {4,8,12,16,20}, the chain runs through the
[20..22,10..11,T] LP refutations, the [58..61,11] chain, the case split on
weight 40, the [62,12] chain, [63,13] and [64,13] with mu_1 = mu_2 = mu_3 = 0,
the deuce pair analysis at length 65 and the deuce graph analysis at 66.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..bounds import implies_nonexistence
from ..codespec import CodeSpec
from ..delsarte import Mode
from ..geometry import admissible_even_weights, code_dim_lower_bound
from ..reductions import pair_interaction
from .engine import ProofLog, run_script
from .script import (
    Adjoin,
    Arithmetic,
    Axiom,
    DeuceGraph,
    DualBound,
    Fact,
    Griesmer,
    LPVerdict,
    Monotone,
    Nonexistence,
    ProofScript,
    Residual,
    ScriptBuilder,
    Shorten,
)

R = frozenset({24, 32, 40, 56})
Q = frozenset({24, 32, 56})
T = frozenset({4, 8, 12, 16, 20})
SEXTIC_WEIGHTS = frozenset({24, 32, 40, 56, 64})

AXIOMS = {
    "ax_div8": "Every even set of nodes on a nodal sextic has size divisible by 8 (Reid's argument: the weights are divisible by 8).",
    "ax_no48": "C has no word of weight 48: an even set of 48 nodes would give a double cover whose code data contradicts the Griesmer bound together with the geometry of the cover.",
    "ax_h0": "For the double cover X branched along an even set of p nodes, h^0(O_X(1)) = h^2(O_X(1)) and h^0(O_X(1)) = 5, so chi(O_X(1)) <= 10.",
    "ax_basset": "A nodal sextic cannot have 67 or more nodes (Basset's bound).",
    "ax_dim": "The even sets of nodes form a binary code C with dim C >= #nodes - b2/2, from the dimension of H^2(S, F_2) (Beauville), with b2 = 106.",
}


def _no(n: int, k: int, weights, **kw) -> Nonexistence:
    return Nonexistence(CodeSpec(n, k, weights, **kw))


def _lp(*assumptions: tuple[int, str]) -> LPVerdict:
    return LPVerdict(Mode.PAPER, tuple(assumptions))


def sextic66_script() -> ProofScript:
    b = ScriptBuilder(
        "sextic66",
        "There is no [66,13,{24,32,40,56}] code; hence a 66-node sextic has an even set of 64 nodes and none of 56.",
    )

    # geometric inputs
    for sid, text in AXIOMS.items():
        deps = ("griesmer48",) if sid == "ax_no48" else ()
        if sid == "ax_no48":
            b.add("griesmer48", _no(48, 7, {24, 48}), Griesmer(), note="the coding half of the weight-48 exclusion")
        b.add(sid, Fact(text), Axiom(text), *deps)
    b.add("chi_24", Fact("chi(O_X(1)) = 10 for p = 24"), Arithmetic("chi(6, 1, 24)", 10), "ax_h0")
    b.add("chi_16", Fact("chi(O_X(1)) = 12 for p = 16, so h^0 >= 6"), Arithmetic("chi(6, 1, 16)", 12), "ax_h0")
    b.add("chi_48", Fact("chi(O_X) = 10 for p = 48"), Arithmetic("chi(6, 0, 48)", 10), "ax_no48")
    b.add("min_weight", Fact("the minimum weight of C is 24"), Arithmetic("min_even_weight(6)", 24), "ax_div8", "ax_h0", "chi_16", "chi_24")
    b.add(
        "weights",
        Fact("the nonzero weights of C lie in {24,32,40,56,64}"),
        Arithmetic("admissible_weights(66)", SEXTIC_WEIGHTS),
        "ax_div8", "ax_basset", "ax_no48", "min_weight",
    )
    b.add("dim66", Fact("dim C >= 66 - 53 = 13 for 66 nodes"), Arithmetic("dim_bound(66)", 13), "ax_dim")
    b.add(
        "pair_56_64",
        Fact("words of weights 56 and 64 cannot coexist"),
        Arithmetic("pair_overlaps(56, 64, 66, {24, 32, 40, 56, 64})", frozenset()),
        "weights",
    )
    b.add(
        "pair_56_56",
        Fact("two distinct words of weight 56 cannot coexist"),
        Arithmetic("pair_overlaps(56, 56, 66, {24, 32, 40, 56})", frozenset({56})),
    )

    # the T codes
    b.add("t21", _no(21, 10, T), _lp())
    b.add("t22", _no(22, 11, T), _lp())
    b.add("t20", _no(20, 10, T), _lp())

    # length 58..61, dimension 11, weights {24,32,56}
    b.add("q58", _no(58, 11, Q), _lp())
    prev = "q58"
    for n in (59, 60, 61):
        s = b.add(f"q{n}_mu1", _no(n, 11, Q, dual_lower={1: 1}), Shorten(prev, (1,)), note="a zero coordinate shortens to length n - 1")
        prev = b.add(f"q{n}", _no(n, 11, Q), _lp((1, s)))
    b.add("r61", _no(61, 11, R), Residual("t21", 40, partner="q61"), note="weight 40 occurs, or it does not")
    b.add("r60", _no(60, 11, R), Residual("t20", 40, partner="q60"))

    # dimension 12
    s = b.add("q62_mu1", _no(62, 12, Q, dual_lower={1: 1}), Shorten("q61", (1,)))
    b.add("q62", _no(62, 12, Q), _lp((1, s)))
    b.add("r62", _no(62, 12, R), Residual("t22", 40, partner="q62"))

    # dimension 13, lengths 63 and 64
    s1 = b.add("r63_mu1", _no(63, 13, R, dual_lower={1: 1}), Shorten("r62", (1,)))
    s2 = b.add("r63_mu2", _no(63, 13, R, dual_lower={2: 1}), Shorten("r61", (2,)))
    s3 = b.add("r63_mu3", _no(63, 13, R, dual_lower={3: 1}), Shorten("r61", dual_weight=3, positions=2))
    b.add("r63", _no(63, 13, R), _lp((1, s1), (2, s2), (3, s3)))
    s1 = b.add("r64_mu1", _no(64, 13, R, dual_lower={1: 1}), Shorten("r63", (1,)))
    s2 = b.add("r64_mu2", _no(64, 13, R, dual_lower={2: 1}), Shorten("r62", (2,)))
    s3 = b.add("r64_mu3", _no(64, 13, R, dual_lower={3: 1}), Shorten("r61", dual_weight=3, positions=3))
    b.add("r64", _no(64, 13, R), _lp((1, s1), (2, s2), (3, s3)), note="A_56 is forced to 5/2")

    # length 65: two deuces
    s1 = b.add("r65_mu1", _no(65, 13, R, dual_lower={1: 1}), Shorten("r64", (1,)))
    b.add("r65_mu2", DualBound(CodeSpec(65, 13, R), 2, 5), _lp((1, s1)))
    b.add("r65", _no(65, 13, R), DeuceGraph("pair", "r65_mu2", (((2, 2), "r61"), ((3,), "r62"))))

    # length 66: the deuce graph is a matching with at least 7 edges
    s1 = b.add("r66_mu1", _no(66, 13, R, dual_lower={1: 1}), Shorten("r65", (1,)))
    b.add("r66_mu2", DualBound(CodeSpec(66, 13, R), 2, 7), _lp((1, s1)))
    b.add("free66", Fact("at most 5 of the deuces are disjoint from a word v of weight 56"), Arithmetic("floor((66 - 56) / 2)", 5))
    b.add("left66", Fact("shortening on one deuce leaves at least 7 - 1 = 6 of them"), Arithmetic("7 - 1", 6))
    b.add("m62", _no(62, 12, {24, 32, 40}), Monotone("r62"))
    b.add(
        "e64",
        _no(64, 13, {24, 32, 40, 64}, forced={64}, dual_lower={2: 1}),
        Shorten("m62", (2,)),
        note="E contains the all-ones word and keeps a dual word of weight 2",
    )
    b.add("d64", _no(64, 12, {24, 32, 40}, dual_lower={2: 6}), Adjoin("e64"), "left66")
    b.add(
        "theorem",
        _no(66, 13, R),
        DeuceGraph(
            "cliques",
            "r66_mu2",
            (((4,), "r62"), ((5,), "r61"), ((3, 3), "r60"), ((3, 2), "r61")),
            subcode="d64",
            extra=("free66", "pair_56_56"),
        ),
    )
    return b.build("theorem")


# -- corollary ----------------------------------------------------------------


class CorollaryError(RuntimeError):
    """An ingredient of the corollary did not verify."""


INGREDIENTS = ("theorem", "weights", "dim66", "pair_56_64") + tuple(AXIOMS)


@dataclass(frozen=True)
class CorollaryReport:
    nodes: int
    asserted: bool
    code: CodeSpec | None
    weights: frozenset[int]
    dimension: int
    unexcluded: tuple[int, ...] = ()
    withdrawn: tuple[str, ...] = ()
    references: tuple[str, ...] = ()
    lines: tuple[str, ...] = field(default_factory=tuple)

    @property
    def text(self) -> str:
        return "\n".join(self.lines)


def sextic_corollary(log: ProofLog | None = None, nodes: int = 66, withdrawn: tuple[str, ...] = ()) -> CorollaryReport:
    """What the theorem says about the even sets of a sextic with ``nodes`` nodes."""
    if log is None:
        log = run_script(sextic66_script())
    for sid in INGREDIENTS:
        try:
            entry = log.entry(sid)
        except KeyError:
            raise CorollaryError(f"ingredient step {sid!r} is missing from the log") from None
        if not entry.ok:
            raise CorollaryError(f"ingredient step {sid!r} did not verify")
    unknown = [w for w in withdrawn if w not in AXIOMS]
    if unknown:
        raise ValueError(f"unknown axioms {unknown}")

    theorem = log.entry("theorem").step.claim.spec
    dim = code_dim_lower_bound(nodes)
    weights = admissible_even_weights(nodes, exclude_48="ax_no48" not in withdrawn)
    lines = [
        f"Nodal sextic with {nodes} nodes: dim C >= {nodes} - 53 = {dim} [dim66, ax_dim].",
        "Possible weights of C: {" + ",".join(map(str, sorted(weights))) + "} [weights].",
    ]
    unexcluded = tuple(sorted(weights - SEXTIC_WEIGHTS))
    refs = ["dim66", "weights", "theorem", "pair_56_64"]

    def degraded(reason: str) -> CorollaryReport:
        lines.append(f"Corollary not asserted: {reason}.")
        return CorollaryReport(nodes, False, None, weights, dim, unexcluded, tuple(withdrawn), tuple(refs), tuple(lines))

    if unexcluded:
        lines.append("Unexcluded weights: " + ", ".join(map(str, unexcluded)) + " (axiom withdrawn).")
        return degraded("the theorem does not cover weight sets containing " + ", ".join(map(str, unexcluded)))
    others = [w for w in withdrawn if w != "ax_no48"]
    if others:
        return degraded("axioms withdrawn: " + ", ".join(others))
    if dim < theorem.k:
        return degraded(f"dimension {dim} < {theorem.k}, so the theorem gives no forcing")

    # a code avoiding 64 has all weights in R and a 13-dimensional subcode
    without_64 = CodeSpec(nodes, dim, weights - {64})
    if nodes != theorem.n or not implies_nonexistence(theorem, without_64):
        return degraded("the theorem does not apply at this length")
    if pair_interaction(56, 64, CodeSpec(nodes, dim, weights)):
        return degraded("words of weight 56 and 64 might coexist")
    code = CodeSpec(nodes, dim, weights - {56}, forced={64})
    lines.append(f"Without weight 64, C would contain a {theorem} subcode, impossible [theorem].")
    lines.append("64 must occur, 56 cannot: words of weights 56 and 64 have no admissible overlap [pair_56_64].")
    lines.append(f"Hence C must be a {code} code.")
    return CorollaryReport(nodes, True, code, weights, dim, (), tuple(withdrawn), tuple(refs), tuple(lines))
