"""Delsarte LP relaxation of a code spec and the integer tightening loop.

Every verdict carries exact certificates: a refutation is a sequence of
integer windows, each backed by Farkas certificates for the two cut
problems just outside the window, ending in either an empty window or an
infeasible LP.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .codespec import CodeSpec
from .combinatorics import krawtchouk_table
from .lp import (
    Constraint,
    FarkasCertificate,
    Infeasible,
    LinearExpr,
    LPOutcome,
    LPProblem,
    Optimal,
    Relation,
    Sense,
    solve,
)

DEFAULT_DUAL_TRACK = 4


class Mode(str, enum.Enum):
    PAPER = "paper"  # mu_m >= 0 for m <= n/2 only
    FULL = "full"


@dataclass(frozen=True, order=True)
class Quantity:
    kind: str  # "count" or "dual"
    index: int

    def __post_init__(self) -> None:
        if self.kind not in ("count", "dual"):
            raise ValueError(f"unknown quantity kind {self.kind!r}")

    @classmethod
    def count(cls, j: int) -> "Quantity":
        return cls("count", j)

    @classmethod
    def dual(cls, m: int) -> "Quantity":
        return cls("dual", m)

    @classmethod
    def parse(cls, text: str) -> "Quantity":
        head, _, idx = text.partition("_")
        if head == "A":
            return cls.count(int(idx))
        if head == "mu":
            return cls.dual(int(idx))
        raise ValueError(f"cannot parse quantity {text!r}")

    def __str__(self) -> str:
        return f"A_{self.index}" if self.kind == "count" else f"mu_{self.index}"


def dual_range(n: int, mode: Mode | str) -> range:
    return range(n // 2 + 1) if Mode(mode) is Mode.PAPER else range(n + 1)


def quantity_expr(spec: CodeSpec, q: Quantity) -> LinearExpr:
    """``q`` as an affine function of the A_j variables."""
    ws = spec.sorted_weights
    if q.kind == "count":
        if q.index not in spec.weights:
            raise ValueError(f"A_{q.index} is not a variable of {spec}")
        return LinearExpr(tuple(Fraction(int(j == q.index)) for j in ws))
    if not 0 <= q.index <= spec.n:
        raise ValueError(f"mu_{q.index} outside [0, {spec.n}]")
    row = krawtchouk_table(spec.n)[q.index]
    scale = Fraction(1, 2**spec.k)
    return LinearExpr(tuple(scale * row[j] for j in ws), scale * row[0])


def _dual_row(spec: CodeSpec, m: int) -> list[int]:
    # 2^k mu_m = K_m(0) + sum_j K_m(j) a_j
    row = krawtchouk_table(spec.n)[m]
    return [row[j] for j in spec.sorted_weights]


def build_lp(spec: CodeSpec, mode: Mode | str = Mode.FULL) -> LPProblem:
    """The Delsarte relaxation with integer-scaled dual rows."""
    ws = spec.sorted_weights
    variables = tuple(f"A_{j}" for j in ws)
    scale = 2**spec.k
    cons = [Constraint([1] * len(ws), Relation.EQ, scale - 1, "size: 1 + sum A_j = 2^k")]
    for m in dual_range(spec.n, mode):
        cons.append(Constraint(_dual_row(spec, m), Relation.GE, -krawtchouk_table(spec.n)[m][0], f"mu_{m} >= 0"))
    for j in sorted(spec.forced):
        cons.append(Constraint([int(w == j) for w in ws], Relation.GE, 1, f"A_{j} >= 1 (forced)"))
    for j, v in spec.fixed_counts.items():
        cons.append(Constraint([int(w == j) for w in ws], Relation.EQ, v, f"A_{j} = {v}"))
    for m, v in spec.dual_fixed.items():
        k0 = krawtchouk_table(spec.n)[m][0]
        cons.append(Constraint(_dual_row(spec, m), Relation.EQ, v * scale - k0, f"mu_{m} = {v}"))
    for m, v in spec.dual_lower.items():
        k0 = krawtchouk_table(spec.n)[m][0]
        cons.append(Constraint(_dual_row(spec, m), Relation.GE, v * scale - k0, f"mu_{m} >= {v}"))
    return LPProblem(variables, tuple(cons))


def cut_constraint(spec: CodeSpec, q: Quantity, relation: Relation | str, value: int | Fraction) -> Constraint:
    """The row ``q (relation) value`` in the same scaling as :func:`build_lp`."""
    relation = Relation(relation)
    value = Fraction(value)
    if q.kind == "count":
        return Constraint([int(w == q.index) for w in spec.sorted_weights], relation, value, f"{q} {relation.value} {value}")
    k0 = krawtchouk_table(spec.n)[q.index][0]
    return Constraint(_dual_row(spec, q.index), relation, value * 2**spec.k - k0, f"{q} {relation.value} {value}")


def bound_quantity(
    spec: CodeSpec,
    target: Quantity,
    sense: Sense | str,
    mode: Mode | str = Mode.FULL,
    pins: Sequence[tuple[Quantity, int]] = (),
) -> LPOutcome:
    """Exact min or max of ``target`` over the relaxation (plus ``pins``)."""
    problem = build_lp(spec, mode).with_constraints(*(cut_constraint(spec, q, "=", v) for q, v in pins))
    return solve(problem.with_objective(quantity_expr(spec, target)), sense)


@dataclass(frozen=True)
class Window:
    """Integer values of ``quantity`` are confined to ``[low, high]``.

    ``low_certificate`` refutes the problem plus ``quantity <= low - 1`` and
    ``high_certificate`` refutes it plus ``quantity >= high + 1``; either
    side may be absent. ``low > high`` is a contradiction. ``relaxed`` is
    the real interval the LP reported.
    """

    quantity: Quantity
    low: int | None
    high: int | None
    low_certificate: FarkasCertificate | None = None
    high_certificate: FarkasCertificate | None = None
    relaxed: tuple[Fraction, Fraction] | None = None

    @property
    def is_pin(self) -> bool:
        return self.low is not None and self.low == self.high

    @property
    def is_empty(self) -> bool:
        return self.low is not None and self.high is not None and self.low > self.high


def window_problems(base: LPProblem, spec: CodeSpec, w: Window) -> tuple[LPProblem | None, LPProblem | None]:
    low = high = None
    if w.low is not None:
        low = base.with_constraints(cut_constraint(spec, w.quantity, "<=", w.low - 1))
    if w.high is not None:
        high = base.with_constraints(cut_constraint(spec, w.quantity, ">=", w.high + 1))
    return low, high


def certify_window(base: LPProblem, spec: CodeSpec, q: Quantity, low: int | None, high: int | None, relaxed=None) -> Window:
    draft = Window(q, low, high)
    lp_low, lp_high = window_problems(base, spec, draft)
    certs = []
    for problem in (lp_low, lp_high):
        if problem is None:
            certs.append(None)
            continue
        out = solve(problem)
        if not isinstance(out, Infeasible):
            raise ArithmeticError(f"cut for {q} is feasible; window [{low}, {high}] is not implied")
        certs.append(out.certificate)
    return Window(q, low, high, certs[0], certs[1], relaxed)


@dataclass(frozen=True)
class InfeasibleLP:
    certificate: FarkasCertificate
    windows: tuple[Window, ...] = ()

    def describe(self) -> str:
        return "INFEASIBLE (LP)"


@dataclass(frozen=True)
class ForcedNonInteger:
    quantity: Quantity
    value: Fraction
    windows: tuple[Window, ...] = ()
    also: tuple[tuple[Quantity, tuple[Fraction, Fraction]], ...] = ()

    def describe(self) -> str:
        return f"CONTRADICTION: {self.quantity} forced to {_fmt(self.value)}"


@dataclass(frozen=True)
class ForcedConflict:
    quantity: Quantity
    required: int
    available: Fraction
    windows: tuple[Window, ...] = ()
    also: tuple[tuple[Quantity, tuple[Fraction, Fraction]], ...] = ()

    def describe(self) -> str:
        return f"CONTRADICTION: {self.quantity} needs >= {self.required} but at most {_fmt(self.available)} possible"


@dataclass(frozen=True)
class NoContradiction:
    bounds: dict[Quantity, tuple[Fraction, Fraction]] = field(default_factory=dict)
    windows: tuple[Window, ...] = ()

    @property
    def pins(self) -> dict[Quantity, int]:
        return {w.quantity: w.low for w in self.windows if w.is_pin}

    def describe(self) -> str:
        pinned = "; ".join(f"{q} = {v}" for q, v in self.pins.items())
        return "NO CONTRADICTION" + (f"; {pinned}" if pinned else "")


GateVerdict = Union[InfeasibleLP, ForcedNonInteger, ForcedConflict, NoContradiction]


def is_refutation(verdict: GateVerdict) -> bool:
    return not isinstance(verdict, NoContradiction)


def _fmt(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def tracked_quantities(spec: CodeSpec, mode: Mode | str, dual_track: int = DEFAULT_DUAL_TRACK) -> list[Quantity]:
    duals = [m for m in dual_range(spec.n, mode) if 1 <= m <= dual_track]
    return [Quantity.count(j) for j in spec.sorted_weights] + [Quantity.dual(m) for m in duals]


def _contradiction_rank(item):
    position, window = item
    lo_v, hi_v = window.relaxed
    forced = lo_v == hi_v
    # exactly forced values first, then the smallest magnitude, then sweep order
    return (not forced, abs(lo_v), position)


def tighten(spec: CodeSpec, mode: Mode | str = Mode.FULL, dual_track: int = DEFAULT_DUAL_TRACK) -> GateVerdict:
    """Pin integral quantities whose LP window holds one integer until a fixpoint.

    Each sweep bounds every tracked quantity against the current problem.
    A sweep with an empty integer window ends in a contradiction; otherwise
    the first single-integer window is pinned and the sweep restarts.
    """
    base = build_lp(spec, mode)
    tracked = tracked_quantities(spec, mode, dual_track)
    fixed: dict[Quantity, Fraction] = {Quantity.count(j): v for j, v in spec.fixed_counts.items()}
    fixed.update({Quantity.dual(m): v for m, v in spec.dual_fixed.items()})
    windows: list[Window] = []
    problem = base
    while True:
        bounds: dict[Quantity, tuple[Fraction, Fraction]] = {}
        empty: list[tuple[int, Window]] = []
        first_pin: Window | None = None
        for pos, q in enumerate(tracked):
            if q in fixed:
                bounds[q] = (fixed[q], fixed[q])
                continue
            expr = quantity_expr(spec, q)
            lo = solve(problem.with_objective(expr), Sense.MINIMIZE)
            if isinstance(lo, Infeasible):
                return InfeasibleLP(lo.certificate, tuple(windows))
            hi = solve(problem.with_objective(expr), Sense.MAXIMIZE)
            assert isinstance(lo, Optimal) and isinstance(hi, Optimal)
            bounds[q] = (lo.value, hi.value)
            low, high = math.ceil(lo.value), math.floor(hi.value)
            if low > high:
                empty.append((pos, Window(q, low, high, relaxed=bounds[q])))
            elif low == high and first_pin is None:
                first_pin = Window(q, low, high, relaxed=bounds[q])
        if empty:
            _, chosen = min(empty, key=_contradiction_rank)
            q = chosen.quantity
            windows.append(certify_window(problem, spec, q, chosen.low, chosen.high, chosen.relaxed))
            others = tuple((w.quantity, w.relaxed) for _, w in empty if w is not chosen)
            lo_v, hi_v = chosen.relaxed
            if lo_v == hi_v:
                return ForcedNonInteger(q, lo_v, tuple(windows), others)
            return ForcedConflict(q, chosen.low, hi_v, tuple(windows), others)
        if first_pin is None:
            return NoContradiction(bounds, tuple(windows))
        q = first_pin.quantity
        windows.append(certify_window(problem, spec, q, first_pin.low, first_pin.high, first_pin.relaxed))
        fixed[q] = Fraction(first_pin.low)
        problem = problem.with_constraints(cut_constraint(spec, q, "=", first_pin.low))


def feasibility_verdict(spec: CodeSpec, mode: Mode | str = Mode.FULL, dual_track: int = DEFAULT_DUAL_TRACK) -> GateVerdict:
    """:func:`tighten`, plus a conflict when a forced weight cannot reach count 1."""
    verdict = tighten(spec, mode, dual_track)
    if isinstance(verdict, NoContradiction):
        for j in sorted(spec.forced):
            q = Quantity.count(j)
            lo, hi = verdict.bounds.get(q, (None, None))
            if hi is not None and hi < 1:
                return ForcedConflict(q, 1, hi, verdict.windows)
    return verdict


def lower_bound_window(spec: CodeSpec, q: Quantity, mode: Mode | str = Mode.FULL) -> Window:
    """Integer lower bound ``ceil(min q)`` with its cut certificate."""
    out = bound_quantity(spec, q, Sense.MINIMIZE, mode)
    if not isinstance(out, Optimal):
        raise ArithmeticError(f"cannot bound {q} on {spec}: {type(out).__name__}")
    return certify_window(build_lp(spec, mode), spec, q, math.ceil(out.value), None, (out.value, out.value))
