"""Griesmer bound and parameter-level monotonicity between code specs."""

from __future__ import annotations

from .codespec import CodeSpec


def griesmer_min_length(k: int, d: int) -> int:
    """Smallest length allowed for a binary [n, k, d] code: sum_i ceil(d / 2^i)."""
    if k < 1 or d < 1:
        raise ValueError("griesmer_min_length needs k >= 1 and d >= 1")
    return sum(-(-d // 2**i) for i in range(k))


def griesmer_check(spec: CodeSpec) -> bool:
    """True when the Griesmer bound alone rules ``spec`` out."""
    if not spec.weights:
        raise ValueError("griesmer_check needs a nonempty weight set")
    return griesmer_min_length(spec.k, spec.min_weight) > spec.n


def _dual_demands_met(refuted: CodeSpec, query: CodeSpec) -> bool:
    # every query code must satisfy the refuted spec's pins on its counts
    for j, v in refuted.fixed_counts.items():
        if j in query.fixed_counts:
            if query.fixed_counts[j] != v:
                return False
        elif not (j not in query.weights and v == 0):
            return False
    for m, v in refuted.dual_fixed.items():
        if query.dual_fixed.get(m) != v:
            return False
    for m, v in refuted.dual_lower.items():
        have = max(query.dual_lower.get(m, 0), query.dual_fixed.get(m, 0))
        if have < v:
            return False
    return True


def implies_nonexistence(refuted: CodeSpec, query: CodeSpec) -> bool:
    """Whether "no ``refuted`` code" already rules out every ``query`` code.

    A query code of dimension at least ``refuted.k`` has a subcode of
    dimension ``refuted.k`` whose weights lie in ``query.weights``. Forced
    weights carry over when the query forces them too and the subcode can
    be chosen to hold one word of each. Pins on counts or dual counts do
    not survive passing to a subcode, so they only propagate at equal
    dimension.
    """
    if refuted.n != query.n or query.k < refuted.k:
        return False
    if not query.weights <= refuted.weights:
        return False
    if not refuted.forced <= query.forced:
        return False
    if query.k == refuted.k:
        return _dual_demands_met(refuted, query)
    if refuted.fixed_counts or refuted.has_dual_constraints:
        return False
    return len(refuted.forced) <= refuted.k
