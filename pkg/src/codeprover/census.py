"""Brute-force enumeration of small binary linear codes, used as a test oracle.

Codes are generated by systematic matrices [I_k | P]. Every code is
equivalent to a systematic one, and weight data does not depend on the
column order of P, so by default P runs over multisets of columns.
``raw=True`` enumerates every P instead, as a cross-check.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .codespec import CodeSpec
from .combinatorics import WeightDistribution, macwilliams
from .delsarte import Mode, NoContradiction, feasibility_verdict
from .reductions import (
    ReductionError,
    residual_dimension_exact,
    residual_spec,
    shorten_components,
    shorten_dual_word,
)


@dataclass(frozen=True)
class Code:
    """A binary code given by generator rows as n-bit integers (bit i = coordinate i)."""

    n: int
    rows: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.rows)

    def words(self) -> list[int]:
        out = [0]
        for r in self.rows:
            out += [w ^ r for w in out]
        return out

    def distribution(self) -> list[int]:
        dist = [0] * (self.n + 1)
        for w in self.words():
            dist[w.bit_count()] += 1
        return dist

    def weights(self) -> frozenset[int]:
        return frozenset(i for i, c in enumerate(self.distribution()) if i and c)

    def profile(self) -> CodeSpec:
        return CodeSpec(self.n, self.k, self.weights())


def rank(rows: Sequence[int]) -> int:
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


def dual_words_exhaustive(code: Code) -> list[int]:
    """All vectors orthogonal to every row, by scanning F_2^n."""
    return [v for v in range(1 << code.n) if all(not (v & r).bit_count() % 2 for r in code.rows)]


def null_space(code: Code) -> Code:
    """A basis of the dual code by Gaussian elimination."""
    n = code.n
    pivots: dict[int, int] = {}  # pivot column -> reduced row
    for r in code.rows:
        for col, row in pivots.items():
            if r >> col & 1:
                r ^= row
        if not r:
            continue
        col = (r & -r).bit_length() - 1
        for c, row in list(pivots.items()):
            if row >> col & 1:
                pivots[c] = row ^ r
        pivots[col] = r
    basis = []
    for free in range(n):
        if free in pivots:
            continue
        v = 1 << free
        for col, row in pivots.items():
            if row >> free & 1:
                v |= 1 << col
        basis.append(v)
    return Code(n, tuple(basis))


def dual_distribution(code: Code, exhaustive: bool | None = None) -> list[int]:
    if exhaustive is None:
        exhaustive = code.n <= 12
    words = dual_words_exhaustive(code) if exhaustive else null_space(code).words()
    dist = [0] * (code.n + 1)
    for w in words:
        dist[w.bit_count()] += 1
    return dist


def systematic_codes(n: int, k: int, raw: bool = False) -> Iterator[Code]:
    if not 1 <= k <= n:
        return
    identity = [1 << i for i in range(k)]
    columns = range(1 << k)
    chooser = itertools.product(columns, repeat=n - k) if raw else itertools.combinations_with_replacement(columns, n - k)
    for cols in chooser:
        rows = list(identity)
        for pos, col in enumerate(cols):
            for i in range(k):
                if col >> i & 1:
                    rows[i] |= 1 << (k + pos)
        yield Code(n, tuple(rows))


def universe(max_n: int, max_k: int, raw: bool = False) -> Iterator[Code]:
    for n in range(1, max_n + 1):
        for k in range(1, min(max_k, n) + 1):
            yield from systematic_codes(n, k, raw)


def random_code(rng: random.Random, max_n: int, max_k: int) -> Code:
    n = rng.randint(1, max_n)
    k = rng.randint(1, min(max_k, n))
    while True:
        rows = tuple(rng.getrandbits(n) for _ in range(k))
        if rank(rows) == k:
            return Code(n, rows)


# -- contracts ----------------------------------------------------------------


def _support(v: int, n: int) -> list[int]:
    return [i for i in range(n) if v >> i & 1]


def _project(word: int, keep: Sequence[int]) -> int:
    return sum(1 << j for j, i in enumerate(keep) if word >> i & 1)


def residual_violations(code: Code, spec: CodeSpec) -> list[str]:
    """Check the residual contract at one word of each weight."""
    out = []
    words = code.words()
    n = code.n
    seen = set()
    for v in words:
        w = v.bit_count()
        if not w or w in seen or w >= n:
            continue
        seen.add(w)
        try:
            target = residual_spec(spec, w)
        except ReductionError as exc:
            if spec.k >= 2 and residual_dimension_exact(spec, w):
                out.append(f"residual at {w} raised on a real code: {exc}")
            continue
        keep = [i for i in range(n) if not v >> i & 1]
        proj = {_project(u, keep) for u in words}
        dim = len(proj).bit_length() - 1
        got = {p.bit_count() for p in proj} - {0}
        if not got <= target.weights:
            out.append(f"residual at {w} has weights {sorted(got)} outside {target}")
        if dim < target.k:
            if residual_dimension_exact(spec, w):
                out.append(f"residual at {w} has dimension {dim} < {target.k}")
        elif dim > target.k:
            out.append(f"residual at {w} has dimension {dim} > {target.k}")
    return out


def _subcode_vanishing(words: list[int], positions: Sequence[int]) -> list[int]:
    mask = sum(1 << i for i in positions)
    return [w for w in words if not w & mask]


def _shortened_ok(words: list[int], positions: Sequence[int], n: int, target: CodeSpec) -> str | None:
    sub = _subcode_vanishing(words, positions)
    keep = [i for i in range(n) if i not in set(positions)]
    got = {_project(w, keep).bit_count() for w in sub} - {0}
    dim = len(sub).bit_length() - 1
    if not got <= target.weights:
        return f"weights {sorted(got)} outside {target}"
    if dim < target.k:
        return f"dimension {dim} < {target.k}"
    return None


def shortening_violations(code: Code, spec: CodeSpec, dual: list[int] | None = None) -> list[str]:
    """Check shortening on a zero coordinate, a deuce and a few dual words."""
    out = []
    n = code.n
    words = code.words()
    if dual is None:
        dual = dual_words_exhaustive(code) if n <= 12 else null_space(code).words()
    done = set()
    for u in sorted(dual, key=lambda x: (x.bit_count(), x)):
        m = u.bit_count()
        if not m or m > 4 or m in done:
            continue
        done.add(m)
        supp = _support(u, n)
        trials: list[tuple[str, Sequence[int], object]] = []
        if m in (1, 2):
            trials.append((f"components ({m},)", supp, lambda: shorten_components(spec, (m,))))
        for t in range(1, m + 1):
            trials.append((f"dual word {m}, {t} positions", supp[:t], lambda t=t: shorten_dual_word(spec, m, t)))
        for label, pos, make in trials:
            try:
                target = make()
            except ReductionError:
                continue
            why = _shortened_ok(words, pos, n, target)
            if why:
                out.append(f"shortening on {label}: {why}")
    return out


def window_violations(code: Code, verdict) -> list[str]:
    """Every window from the gate must contain the code's true value."""
    dist = code.distribution()
    dual = dual_distribution(code)
    out = []
    for w in verdict.windows:
        q = w.quantity
        true = dist[q.index] if q.kind == "count" else dual[q.index]
        if (w.low is not None and true < w.low) or (w.high is not None and true > w.high):
            out.append(f"{q} = {true} outside window [{w.low}, {w.high}]")
    return out


# -- running the oracle -------------------------------------------------------


@dataclass
class CensusReport:
    codes: int = 0
    profiles: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass
class Census:
    """Runs every oracle contract, caching gate verdicts per profile."""

    mode: Mode = Mode.FULL
    contracts: bool = True
    verdicts: dict = field(default_factory=dict)
    report: CensusReport = field(default_factory=CensusReport)

    def verdict(self, spec: CodeSpec):
        if spec not in self.verdicts:
            self.verdicts[spec] = feasibility_verdict(spec, self.mode)
            self.report.profiles += 1
        return self.verdicts[spec]

    def check(self, code: Code) -> None:
        rep = self.report
        rep.codes += 1
        spec = code.profile()
        tag = f"{list(code.rows)} (n={code.n})"
        dist = code.distribution()
        dual = dual_distribution(code)
        a = WeightDistribution.from_dense(dist)
        b = macwilliams(a, code.k)
        if b.dense() != [Fraction(x) for x in dual]:
            rep.failures.append(f"{tag}: MacWilliams {b.dense()} != brute force {dual}")
        if macwilliams(b, code.n - code.k) != a:
            rep.failures.append(f"{tag}: double MacWilliams transform is not the identity")
        if not spec.weights:
            return
        verdict = self.verdict(spec)
        if not isinstance(verdict, NoContradiction):
            rep.failures.append(f"{tag}: gate refuted a real code's profile {spec}: {verdict.describe()}")
        else:
            rep.failures += [f"{tag}: {e}" for e in window_violations(code, verdict)]
        if self.contracts:
            rep.failures += [f"{tag}: {e}" for e in residual_violations(code, spec)]
            rep.failures += [f"{tag}: {e}" for e in shortening_violations(code, spec)]


def run_census(
    max_n: int = 10,
    max_k: int = 3,
    samples: int = 1000,
    sample_n: int = 16,
    sample_k: int = 5,
    seed: int = 0,
    mode: Mode = Mode.FULL,
    raw: bool = False,
) -> CensusReport:
    census = Census(mode)
    for code in universe(max_n, max_k, raw):
        census.check(code)
    rng = random.Random(seed)
    for _ in range(samples):
        census.check(random_code(rng, sample_n, sample_k))
    return census.report


def existing_profiles(max_n: int, max_k: int) -> dict[tuple[int, int], set[frozenset[int]]]:
    """Observed weight sets by (n, k) over the systematic universe."""
    out: dict[tuple[int, int], set[frozenset[int]]] = {}
    for code in universe(max_n, max_k):
        out.setdefault((code.n, code.k), set()).add(code.weights())
    return out


def exists(spec: CodeSpec, profiles: dict[tuple[int, int], set[frozenset[int]]]) -> bool:
    """Whether some enumerated code matches ``spec``'s length, dimension, weights and forced set."""
    if spec.fixed_counts or spec.has_dual_constraints:
        raise ValueError("existence lookup only handles weight-set specs")
    return any(spec.forced <= seen <= spec.weights for seen in profiles.get((spec.n, spec.k), ()))

