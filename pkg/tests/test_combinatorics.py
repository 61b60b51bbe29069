
import pytest
from codeprover.combinatorics import (
    WeightDistribution,
    binomial,
    krawtchouk,
    krawtchouk_sum,
    krawtchouk_table,
    macwilliams,
)


def test_binomial_values():
    assert binomial(5, 3) == 10
    assert all(binomial(n, 0) == 1 for n in range(20))
    assert binomial(66, 2) == 2145
    assert binomial(4, -1) == 0
    assert binomial(4, 5) == 0


def test_krawtchouk_examples():
    assert all(krawtchouk(9, 0, i) == 1 for i in range(10))
    assert krawtchouk(6, 1, 2) == 2
    assert all(krawtchouk(12, m, 0) == binomial(12, m) for m in range(13))


def test_krawtchouk_out_of_range():
    with pytest.raises(ValueError):
        krawtchouk(5, 6, 0)
    with pytest.raises(ValueError):
        krawtchouk(5, 1, -1)


def test_table_matches_definition():
    for n in range(0, 25):
        table = krawtchouk_table(n)
        for m in range(n + 1):
            for i in range(n + 1):
                assert table[m][i] == krawtchouk_sum(n, m, i)


def test_recurrence():
    for n in range(1, 31):
        for m in range(1, n):
            for i in range(n + 1):
                lhs = (m + 1) * krawtchouk(n, m + 1, i)
                rhs = (n - 2 * i) * krawtchouk(n, m, i) - (n - m + 1) * krawtchouk(n, m - 1, i)
                assert lhs == rhs


def test_reciprocity():
    for n in range(21):
        for m in range(n + 1):
            for i in range(n + 1):
                assert binomial(n, i) * krawtchouk(n, m, i) == binomial(n, m) * krawtchouk(n, i, m)


def test_orthogonality():
    for n in range(17):
        for m in range(n + 1):
            for mm in range(n + 1):
                s = sum(binomial(n, i) * krawtchouk(n, m, i) * krawtchouk(n, mm, i) for i in range(n + 1))
                assert s == (2**n * binomial(n, m) if m == mm else 0)


def test_large_values_stay_exact():
    # well beyond 64-bit range
    v = krawtchouk(66, 33, 1)
    assert v == krawtchouk_sum(66, 33, 1)
    assert krawtchouk(66, 33, 0) > 2**62
    assert abs(krawtchouk(66, 30, 2) * krawtchouk(66, 31, 4)) > 2**64


def test_distribution_validation():
    with pytest.raises(ValueError):
        WeightDistribution(3, {4: 1})
    with pytest.raises(ValueError):
        WeightDistribution(3, {1: -1})
    d = WeightDistribution(4, {0: 1, 2: 0, 4: 1})
    assert d.support() == [0, 4]
    assert d.dense() == [1, 0, 0, 0, 1]
    assert d.total() == 2


def test_macwilliams_examples():
    rep = WeightDistribution.from_dense([1, 0, 1])
    assert macwilliams(rep, 1).dense() == [1, 0, 1]
    trivial = WeightDistribution.from_dense([1, 0, 0, 0, 0, 0])
    assert macwilliams(trivial, 0).dense() == [binomial(5, m) for m in range(6)]
    toy = WeightDistribution.from_dense([1, 0, 2, 0, 1])
    b = macwilliams(toy, 2)
    # brute force: the dual of span{1100, 0011} is itself
    assert b.dense() == [1, 0, 2, 0, 1]
    assert macwilliams(b, 2) == toy


def test_macwilliams_rejects_bad_totals():
    with pytest.raises(ValueError):
        macwilliams(WeightDistribution.from_dense([1, 1, 1]), 1)
    with pytest.raises(ValueError):
        macwilliams(WeightDistribution.from_dense([0, 1, 1]), 1)


def test_negative_dual_counts_are_rejected():
    # three words of weight 2 in length 2 would give B_1 = (2 - 6) / 4 = -1
    with pytest.raises(ValueError):
        macwilliams(WeightDistribution.from_dense([1, 0, 3]), 2)
