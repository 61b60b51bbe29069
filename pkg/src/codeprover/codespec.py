"""Parameters of a putative binary linear code."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping


def _frozen_map(items: Mapping[int, object] | None) -> dict[int, Fraction]:
    return {int(k): Fraction(v) for k, v in sorted((items or {}).items())}


@dataclass(frozen=True)
class CodeSpec:
    """An ``[n, k, J]`` code shape with optional pins on weight and dual counts.

    ``forced`` lists weights that must occur. ``fixed_counts`` pins A_j,
    ``dual_fixed`` pins the dual counts mu_m and ``dual_lower`` gives lower
    bounds on them.
    """

    n: int
    k: int
    weights: frozenset[int]
    forced: frozenset[int] = frozenset()
    fixed_counts: Mapping[int, Fraction] = field(default_factory=dict)
    dual_fixed: Mapping[int, Fraction] = field(default_factory=dict)
    dual_lower: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", frozenset(int(w) for w in self.weights))
        object.__setattr__(self, "forced", frozenset(int(w) for w in self.forced))
        object.__setattr__(self, "fixed_counts", _frozen_map(self.fixed_counts))
        object.__setattr__(self, "dual_fixed", _frozen_map(self.dual_fixed))
        object.__setattr__(self, "dual_lower", _frozen_map(self.dual_lower))
        self.validate()

    def validate(self) -> None:
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got n={self.n}, k={self.k}")
        bad = [w for w in self.weights if not 1 <= w <= self.n]
        if bad:
            raise ValueError(f"weights {sorted(bad)} outside [1, {self.n}]")
        if not self.forced <= self.weights:
            raise ValueError("forced weights must be allowed weights")
        for w, v in self.fixed_counts.items():
            if w not in self.weights:
                raise ValueError(f"fixed count for weight {w} not in the weight set")
            if v < 0:
                raise ValueError(f"fixed count A_{w} = {v} is negative")
            if w in self.forced and v < 1:
                raise ValueError(f"forced weight {w} pinned to {v} < 1")
        for m, v in list(self.dual_fixed.items()) + list(self.dual_lower.items()):
            if not 0 <= m <= self.n:
                raise ValueError(f"dual index {m} outside [0, {self.n}]")
            if v < 0:
                raise ValueError(f"dual constraint mu_{m} = {v} is negative")

    def __hash__(self) -> int:
        return hash(self.key())

    def key(self) -> tuple:
        return (
            self.n,
            self.k,
            tuple(sorted(self.weights)),
            tuple(sorted(self.forced)),
            tuple(self.fixed_counts.items()),
            tuple(self.dual_fixed.items()),
            tuple(self.dual_lower.items()),
        )

    @property
    def sorted_weights(self) -> list[int]:
        return sorted(self.weights)

    @property
    def min_weight(self) -> int:
        return min(self.weights)

    @property
    def has_dual_constraints(self) -> bool:
        return bool(self.dual_fixed or self.dual_lower)

    def with_dual(self, fixed: Mapping[int, object] | None = None, lower: Mapping[int, object] | None = None) -> "CodeSpec":
        return replace(
            self,
            dual_fixed={**self.dual_fixed, **(fixed or {})},
            dual_lower={**self.dual_lower, **(lower or {})},
        )

    def bare(self) -> "CodeSpec":
        """Same shape without count or dual pins."""
        return CodeSpec(self.n, self.k, self.weights, self.forced)

    def with_weights(self, weights: Iterable[int], forced: Iterable[int] | None = None) -> "CodeSpec":
        weights = frozenset(weights)
        forced = frozenset(forced) if forced is not None else self.forced & weights
        fixed = {w: v for w, v in self.fixed_counts.items() if w in weights}
        return replace(self, weights=weights, forced=forced, fixed_counts=fixed)

    def label(self) -> str:
        ws = ",".join(f"_{w}_" if w in self.forced else str(w) for w in self.sorted_weights)
        text = f"[{self.n},{self.k},{{{ws}}}]"
        extras = []
        extras += [f"A_{w}={_fmt(v)}" for w, v in self.fixed_counts.items()]
        extras += [f"mu_{m}={_fmt(v)}" for m, v in self.dual_fixed.items()]
        extras += [f"mu_{m}>={_fmt(v)}" for m, v in self.dual_lower.items()]
        if extras:
            text += " with " + ", ".join(extras)
        return text

    def __str__(self) -> str:
        return self.label()


def _fmt(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
