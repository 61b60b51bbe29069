"""Numeric invariants of nodal surfaces and their even node sets."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .combinatorics import binomial

BASSET_MAX_NODES = 66
SEXTIC_B2 = 106
SEXTIC_H0_OX1 = 5  # h^0(O_X(1)) once h^0 >= 5 is known


def chi_double_cover(s: int, n: int, p: int) -> Fraction:
    """chi(O_X(n)) of the double cover branched along an even set of size p."""
    if s < 1 or p < 0:
        raise ValueError("need s >= 1 and p >= 0")
    if p % 4:
        warnings.warn(f"p = {p} is not divisible by 4; chi is not an integer", stacklevel=2)
    return n * (n + 4 - s) * s + 2 * (1 + binomial(s - 1, 3)) - Fraction(p, 4)


def castelnuovo_split(d: int, r: int) -> tuple[int, Fraction]:
    q = Fraction(d - 1, r - 1)
    x = math.floor(q)
    return x, q - x


def castelnuovo_genus_bound(d: int, r: int) -> Fraction:
    """Largest genus a nondegenerate degree-d curve in P^r can have."""
    if r < 2 or d < r:
        raise ValueError("need r >= 2 and d >= r")
    x, y = castelnuovo_split(d, r)
    return (r - 1) * (binomial(x, 2) + x * y)


def double_cover_genus(s: int) -> int:
    # etale double cover of a plane section of genus (s-1)(s-2)/2
    return (s - 1) * (s - 2) - 1


def embedding_inequality(s: int, r: int) -> bool:
    return 2 * (r - 1) * (s * s - 3 * s + 1) <= (2 * s - 1) * (2 * s + r - 4)


def embedding_dim_inequality(s: int, r: int) -> bool:
    """Whether the curve M can sit in P^r; False means r is ruled out.

    For s >= 8 this is the closed-form inequality. Degrees 5, 6 and 7 are
    checked directly against the Castelnuovo bound for degree 2s.
    """
    if s < 5 or r < 3:
        raise ValueError("need s >= 5 and r >= 3")
    if s >= 8:
        return embedding_inequality(s, r)
    if 2 * s < r:
        return False
    return double_cover_genus(s) <= castelnuovo_genus_bound(2 * s, r)


@dataclass(frozen=True)
class WeightTrace:
    p: int
    chi: Fraction
    h0_lower: int
    excluded: bool


@dataclass(frozen=True)
class MinWeightResult:
    value: int
    trace: tuple[WeightTrace, ...] = field(default_factory=tuple)


def min_even_weight(s: int = 6) -> MinWeightResult:
    """Smallest nonzero weight of the even-set code of a nodal sextic.

    Weights are multiples of 8 (taken as given). For each candidate p,
    h^0(O_X(1)) = h^2(O_X(1)) gives h^0 >= chi(O_X(1)) / 2, which must not
    exceed 5.
    """
    if s != 6:
        raise ValueError("the exclusion pipeline is only wired for sextics")
    trace = []
    p = 8
    while True:
        chi = chi_double_cover(s, 1, p)
        h0 = math.ceil(chi / 2)
        excluded = h0 > SEXTIC_H0_OX1
        trace.append(WeightTrace(p, chi, h0, excluded))
        if not excluded:
            return MinWeightResult(p, tuple(trace))
        p += 8


def admissible_even_weights(max_nodes: int = BASSET_MAX_NODES, exclude_48: bool = True) -> frozenset[int]:
    """Possible sizes of a nonempty even node set on a sextic with ``max_nodes`` nodes."""
    if max_nodes > BASSET_MAX_NODES:
        raise ValueError(f"a nodal sextic has at most {BASSET_MAX_NODES} nodes")
    lowest = min_even_weight(6).value
    return frozenset(w for w in range(lowest, max_nodes + 1, 8) if not (exclude_48 and w == 48))


def code_dim_lower_bound(num_nodes: int, b2: int = SEXTIC_B2) -> int:
    """dim C >= nodes - b2/2, clamped at zero."""
    if num_nodes < 0:
        raise ValueError("num_nodes must be nonnegative")
    if b2 % 2:
        raise ValueError("b2 must be even")
    return max(0, num_nodes - b2 // 2)
