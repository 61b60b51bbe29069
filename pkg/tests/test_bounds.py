import itertools
import random

from codeprover.bounds import griesmer_check, griesmer_min_length, implies_nonexistence
from codeprover.census import exists, existing_profiles
from codeprover.codespec import CodeSpec

R = {24, 32, 40, 56}


def test_griesmer_values():
    assert griesmer_min_length(1, 9) == 9
    assert griesmer_min_length(7, 24) == 49
    assert griesmer_min_length(4, 3) == 7


def test_griesmer_check():
    assert griesmer_check(CodeSpec(48, 7, {24, 48}))
    assert not griesmer_check(CodeSpec(49, 7, {24, 48}))
    assert not griesmer_check(CodeSpec(5, 1, {5}))


def test_griesmer_monotone():
    for k in range(1, 12):
        for d in range(1, 40):
            assert griesmer_min_length(k + 1, d) > griesmer_min_length(k, d)
            assert griesmer_min_length(k, d + 1) > griesmer_min_length(k, d)


def test_implies_examples():
    assert implies_nonexistence(CodeSpec(62, 12, R), CodeSpec(62, 12, {24, 32, 40}))
    assert implies_nonexistence(CodeSpec(61, 11, R), CodeSpec(61, 12, R))
    for s in [CodeSpec(61, 11, R), CodeSpec(64, 13, R, forced={56}, dual_lower={2: 1})]:
        assert implies_nonexistence(s, s)
    assert not implies_nonexistence(CodeSpec(61, 12, R), CodeSpec(61, 11, R))
    assert not implies_nonexistence(CodeSpec(61, 11, R), CodeSpec(62, 11, R))
    assert not implies_nonexistence(CodeSpec(61, 11, {24, 32}), CodeSpec(61, 11, R))


def test_implies_dual_pins_only_at_equal_dimension():
    pinned = CodeSpec(63, 13, R, dual_lower={2: 1})
    assert implies_nonexistence(pinned, CodeSpec(63, 13, R, dual_lower={2: 3}))
    assert not implies_nonexistence(pinned, CodeSpec(63, 13, R))
    assert not implies_nonexistence(pinned, CodeSpec(63, 14, R, dual_lower={2: 3}))


def test_implies_forced_weights():
    forced = CodeSpec(20, 3, {4, 8}, forced={8})
    assert implies_nonexistence(forced, CodeSpec(20, 3, {4, 8}, forced={8}))
    assert not implies_nonexistence(forced, CodeSpec(20, 3, {4, 8}))
    assert implies_nonexistence(forced, CodeSpec(20, 4, {4, 8}, forced={8}))


def _random_spec(rng, n, k_max):
    k = rng.randint(1, min(k_max, n))
    weights = {w for w in range(1, n + 1) if rng.random() < 0.5} or {n}
    forced = {w for w in weights if rng.random() < 0.2}
    return CodeSpec(n, k, weights, forced=forced)


def test_implies_transitive_on_samples():
    rng = random.Random(3)
    specs = [_random_spec(rng, 6, 4) for _ in range(60)]
    for a, b, c in itertools.product(specs[:20], specs[:20], specs[:20]):
        if implies_nonexistence(a, b) and implies_nonexistence(b, c):
            assert implies_nonexistence(a, c)


def test_implies_against_brute_force_universe():
    profiles = existing_profiles(8, 3)
    rng = random.Random(11)
    checked = 0
    for _ in range(4000):
        n = rng.randint(1, 8)
        a = _random_spec(rng, n, 3)
        b = _random_spec(rng, n, 3)
        if implies_nonexistence(a, b) and exists(b, profiles):
            checked += 1
            assert exists(a, profiles), (a, b)
    # shrink b from real codes to exercise the positive case
    for (n, k), sets in profiles.items():
        for seen in sets:
            b = CodeSpec(n, k, seen, forced=seen)
            for k2 in range(1, k + 1):
                a = CodeSpec(n, k2, seen | {n}, forced=set(sorted(seen)[:1]))
                if implies_nonexistence(a, b):
                    checked += 1
                    assert exists(a, profiles)
    assert checked > 100
