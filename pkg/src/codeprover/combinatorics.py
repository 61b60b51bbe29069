"""Binomials, binary Krawtchouk polynomials and the MacWilliams transform."""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping

_KRAWTCHOUK_TABLES: dict[int, tuple[tuple[int, ...], ...]] = {}
_TABLE_LOCK = threading.Lock()


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n."""
    if k < 0 or k > n or n < 0:
        return 0
    return math.comb(n, k)


def krawtchouk_sum(n: int, m: int, i: int) -> int:
    """K_m(i) straight from the alternating sum. Slow; kept as a cross-check."""
    return sum((-1) ** j * binomial(i, j) * binomial(n - i, m - j) for j in range(m + 1))


def _build_table(n: int) -> tuple[tuple[int, ...], ...]:
    # rows indexed by degree m, columns by point i
    rows = [[1] * (n + 1)]
    if n >= 1:
        rows.append([n - 2 * i for i in range(n + 1)])
    for m in range(1, n):
        prev, cur = rows[m - 1], rows[m]
        nxt = []
        for i in range(n + 1):
            num = (n - 2 * i) * cur[i] - (n - m + 1) * prev[i]
            q, r = divmod(num, m + 1)
            assert r == 0
            nxt.append(q)
        rows.append(nxt)
    return tuple(tuple(r) for r in rows)


def krawtchouk_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Full table ``T[m][i] = K_m(i)`` for length ``n``, memoized."""
    table = _KRAWTCHOUK_TABLES.get(n)
    if table is None:
        with _TABLE_LOCK:
            table = _KRAWTCHOUK_TABLES.get(n)
            if table is None:
                table = _build_table(n)
                _KRAWTCHOUK_TABLES[n] = table
    return table


def krawtchouk(n: int, m: int, i: int) -> int:
    """Binary Krawtchouk value K_m(i) = sum_j (-1)^j C(i,j) C(n-i, m-j)."""
    if not (0 <= m <= n and 0 <= i <= n):
        raise ValueError(f"krawtchouk needs 0 <= m, i <= n; got n={n}, m={m}, i={i}")
    return krawtchouk_table(n)[m][i]


@dataclass(frozen=True)
class WeightDistribution:
    """Sparse weight counts of a length-``length`` code (or of its dual)."""

    length: int
    counts: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned: dict[int, Fraction] = {}
        for w, c in sorted(self.counts.items()):
            if not 0 <= w <= self.length:
                raise ValueError(f"weight {w} outside [0, {self.length}]")
            c = Fraction(c)
            if c < 0:
                raise ValueError(f"negative count {c} at weight {w}")
            if c:
                cleaned[w] = c
        object.__setattr__(self, "counts", cleaned)

    @classmethod
    def from_dense(cls, values) -> "WeightDistribution":
        values = list(values)
        return cls(len(values) - 1, {w: Fraction(v) for w, v in enumerate(values)})

    def __getitem__(self, w: int) -> Fraction:
        return self.counts.get(w, Fraction(0))

    def __iter__(self) -> Iterator[tuple[int, Fraction]]:
        return iter(self.counts.items())

    def dense(self) -> list[Fraction]:
        return [self[w] for w in range(self.length + 1)]

    def total(self) -> Fraction:
        return sum(self.counts.values(), Fraction(0))

    def support(self) -> list[int]:
        return list(self.counts)


def macwilliams(dist: WeightDistribution, k: int) -> WeightDistribution:
    """Dual weight distribution: B_m = 2^-k sum_i A_i K_m(i)."""
    n = dist.length
    if dist[0] != 1:
        raise ValueError("distribution must contain exactly one zero word")
    if dist.total() != 2**k:
        raise ValueError(f"counts sum to {dist.total()}, expected 2^{k} = {2**k}")
    table = krawtchouk_table(n)
    scale = Fraction(1, 2**k)
    out = {}
    for m in range(n + 1):
        row = table[m]
        out[m] = scale * sum((c * row[i] for i, c in dist), Fraction(0))
    return WeightDistribution(n, out)
