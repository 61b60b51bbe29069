"""Spec-to-spec reductions: residual codes, shortening, deuce graphs, adjoining 1."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .codespec import CodeSpec


class ReductionError(ValueError):
    """A reduction cannot produce a valid spec (often an immediate refutation)."""


def pair_interaction(j1: int, j2: int, spec: CodeSpec) -> frozenset[int]:
    """Possible support overlaps of two words of weights ``j1`` and ``j2``.

    The sum has weight ``j1 + j2 - 2t``, which must be 0 or an allowed weight.
    """
    allowed = spec.weights | {0}
    lo = max(0, j1 + j2 - spec.n)
    hi = min(j1, j2)
    return frozenset(t for t in range(lo, hi + 1) if j1 + j2 - 2 * t in allowed)


def residual_weights(spec: CodeSpec, w: int) -> frozenset[int]:
    out = set()
    for j in spec.weights:
        for t in pair_interaction(j, w, spec):
            r = j - t
            if 1 <= r <= spec.n - w:
                out.add(r)
    return frozenset(out)


def residual_dimension_exact(spec: CodeSpec, w: int) -> bool:
    """No nonzero word other than the chosen one can live inside its support.

    Such a word u would split ``w`` into two allowed weights |u| + |u + v| = w.
    Without one, projecting away the support kills only span{v}.
    """
    return not any(w - j in spec.weights for j in spec.weights if j < w)


def residual_spec(spec: CodeSpec, w: int) -> CodeSpec:
    """Residual code with respect to a word of weight ``w``: [n - w, k - 1, J']."""
    if w not in spec.weights:
        raise ReductionError(f"weight {w} is not allowed in {spec}")
    if spec.n <= w:
        raise ReductionError(f"residual at weight {w} needs n > {w}")
    if spec.k - 1 > spec.n - w:
        raise ReductionError(f"residual dimension {spec.k - 1} exceeds length {spec.n - w}")
    weights = residual_weights(spec, w)
    if not weights and spec.k - 1 >= 1:
        raise ReductionError(f"residual of {spec} at {w} has no admissible weights")
    if spec.k - 1 < 1:
        raise ReductionError("residual of a one-dimensional code is trivial")
    if min(weights) < spec.min_weight - w // 2:
        raise AssertionError("overlap analysis violates the residual distance bound")
    return CodeSpec(spec.n - w, spec.k - 1, weights)


def shorten_components(spec: CodeSpec, components: Sequence[int]) -> CodeSpec:
    """Shorten on groups of mutually tied coordinates.

    A group of size 1 is an identically zero coordinate and costs no
    dimension; larger groups cost one dimension each.
    """
    if any(c < 1 for c in components):
        raise ReductionError("component sizes must be positive")
    total = sum(components)
    if total > spec.n:
        raise ReductionError(f"cannot shorten {total} of {spec.n} coordinates")
    k = spec.k - sum(1 for c in components if c >= 2)
    return _shortened(spec, total, k)


def shorten_dual_word(spec: CodeSpec, m: int, positions: int | None = None) -> CodeSpec:
    """Shorten on ``positions`` coordinates in the support of a weight-``m`` dual word.

    Those coordinates carry one linear relation in the code, so the
    projection onto them has rank at most ``min(positions, m - 1)``.
    """
    positions = m if positions is None else positions
    if not 1 <= positions <= m:
        raise ReductionError("positions must lie in [1, m]")
    if m > spec.n:
        raise ReductionError(f"no dual word of weight {m} in length {spec.n}")
    return _shortened(spec, positions, spec.k - min(positions, m - 1))


def _shortened(spec: CodeSpec, removed: int, k: int) -> CodeSpec:
    n = spec.n - removed
    if k <= 0:
        raise ReductionError(f"shortening leaves dimension {k}")
    weights = frozenset(w for w in spec.weights if w <= n)
    if not weights:
        raise ReductionError("shortening leaves no admissible weights")
    if k > n:
        raise ReductionError(f"shortened dimension {k} exceeds length {n}")
    return CodeSpec(n, k, weights)


def complement_weights(n: int, weights: Iterable[int]) -> frozenset[int]:
    ws = frozenset(weights)
    return frozenset(w for w in ws | {n - j for j in ws | {0}} if 1 <= w <= n)


def adjoin_complement(spec: CodeSpec) -> CodeSpec:
    """Add the all-ones word: [n, k + 1, J + (n - J) + {n}], with n forced.

    The new dual is the even-weight part of the old one, so pins on even
    dual weights survive and odd dual weights vanish.
    """
    if spec.n in spec.weights:
        raise ReductionError("the all-ones word may already be in the code")
    if spec.k + 1 > spec.n:
        raise ReductionError("no room to adjoin the all-ones word")
    fixed = {m: v for m, v in spec.dual_fixed.items() if m % 2 == 0}
    fixed.update({m: 0 for m in list(spec.dual_fixed) + list(spec.dual_lower) if m % 2 == 1})
    lower = {m: v for m, v in spec.dual_lower.items() if m % 2 == 0}
    return CodeSpec(
        spec.n,
        spec.k + 1,
        complement_weights(spec.n, spec.weights),
        forced=spec.forced | {spec.n},
        dual_fixed=fixed,
        dual_lower=lower,
    )


@dataclass(frozen=True)
class DeuceGraphCase:
    """One component configuration of the deuce graph and where it leads."""

    component_shape: tuple[int, ...]
    reduced_spec: CodeSpec
    justification: str


def _case(spec: CodeSpec, shape: tuple[int, ...], rule: str) -> DeuceGraphCase:
    return DeuceGraphCase(shape, shorten_components(spec, shape), rule)


def pair_cases(spec: CodeSpec) -> list[DeuceGraphCase]:
    """Two distinct deuces are disjoint or lie in a common clique of size >= 3."""
    return [
        _case(spec, (2, 2), "two disjoint deuces"),
        _case(spec, (3,), "two deuces sharing a coordinate span a K_3"),
    ]


def deuce_graph_cases(spec: CodeSpec, min_edges: int) -> list[DeuceGraphCase]:
    """Configurations a clique-union deuce graph with a component of size >= 3 must contain.

    With at least ``min_edges`` > 3 edges, a graph with some clique of size
    >= 3 contains a K_5, a K_4, two K_3's or a K_3 plus an edge; otherwise
    a lone K_3 remains possible and is listed too.
    """
    if min_edges < 1:
        raise ValueError("min_edges must be positive")
    cases = [
        _case(spec, (4,), "K_4 component"),
        _case(spec, (5,), "K_m component with m >= 5 (five of its tied coordinates)"),
        _case(spec, (3, 3), "two K_3 components"),
        _case(spec, (3, 2), "a K_3 component and a K_2 component"),
    ]
    if min_edges <= 3:
        cases.append(_case(spec, (3,), "a lone K_3 component"))
    return cases


def clique_unions(max_vertices: int) -> list[tuple[int, ...]]:
    """All multisets of clique sizes >= 2 using at most ``max_vertices`` vertices."""
    out: list[tuple[int, ...]] = []

    def grow(prefix: list[int], largest: int, budget: int) -> None:
        if prefix:
            out.append(tuple(prefix))
        for c in range(min(largest, budget), 1, -1):
            prefix.append(c)
            grow(prefix, c, budget - c)
            prefix.pop()

    grow([], max_vertices, max_vertices)
    return out


def clique_edges(shape: Sequence[int]) -> int:
    return sum(c * (c - 1) // 2 for c in shape)


def contains_shape(shape: Sequence[int], sub: Sequence[int]) -> bool:
    """A clique union contains ``sub`` when its cliques can host them injectively."""
    big = sorted(shape, reverse=True)
    used = [False] * len(big)
    for need in sorted(sub, reverse=True):
        for i, c in enumerate(big):
            if not used[i] and c >= need:
                used[i] = True
                break
        else:
            return False
    return True
