import pytest

from codeprover.codespec import CodeSpec
from codeprover.reductions import (
    ReductionError,
    adjoin_complement,
    clique_edges,
    clique_unions,
    complement_weights,
    contains_shape,
    deuce_graph_cases,
    pair_cases,
    pair_interaction,
    residual_dimension_exact,
    residual_spec,
    residual_weights,
    shorten_components,
    shorten_dual_word,
)

R = frozenset({24, 32, 40, 56})
T = frozenset({4, 8, 12, 16, 20})
SEXTIC = CodeSpec(66, 13, {24, 32, 40, 56, 64})


def test_residual_at_40():
    assert residual_spec(CodeSpec(61, 11, R), 40) == CodeSpec(21, 10, T)
    assert residual_spec(CodeSpec(62, 12, R), 40) == CodeSpec(22, 11, T)
    assert residual_spec(CodeSpec(60, 11, R), 40) == CodeSpec(20, 10, T)
    assert residual_dimension_exact(CodeSpec(61, 11, R), 40)


def test_residual_of_two_word_code():
    # [2n', 2, {n'}]: two weight-n' words overlap in n'/2 coordinates
    for half in (2, 4, 6):
        res = residual_spec(CodeSpec(2 * half, 2, {half}), half)
        assert res.n == half and res.k == 1
        assert res.weights == {half // 2}


def test_residual_errors():
    with pytest.raises(ReductionError):
        residual_spec(CodeSpec(61, 11, R), 48)
    with pytest.raises(ReductionError):
        residual_spec(CodeSpec(8, 1, {8}), 8)
    with pytest.raises(ReductionError):
        residual_spec(CodeSpec(10, 1, {4}), 4)


def test_residual_distance_bound():
    for n in range(4, 20):
        for w in range(1, n):
            spec = CodeSpec(n, 2, {w, *range(max(1, w - 3), n + 1, 2)})
            try:
                res = residual_spec(spec, w)
            except ReductionError:
                continue
            assert min(res.weights) >= spec.min_weight - w // 2


def test_dimension_exactness_detects_splits():
    assert not residual_dimension_exact(CodeSpec(10, 2, {2, 4}), 4)
    assert residual_dimension_exact(CodeSpec(10, 2, {3, 4}), 4)


def test_pair_interaction():
    assert pair_interaction(56, 64, SEXTIC) == frozenset()
    assert pair_interaction(24, 24, SEXTIC) == frozenset({4, 8, 12, 24})
    for j in (24, 32, 40, 56, 64):
        assert j in pair_interaction(j, j, SEXTIC)
    assert pair_interaction(56, 56, CodeSpec(66, 13, R)) == frozenset({56})


def test_residual_weights_collect_overlaps():
    assert residual_weights(CodeSpec(61, 11, R), 40) == T


def test_shorten_components():
    assert shorten_components(CodeSpec(65, 13, R), (2, 2)) == CodeSpec(61, 11, R)
    assert shorten_components(CodeSpec(65, 13, R), (3,)) == CodeSpec(62, 12, R)
    assert shorten_components(CodeSpec(30, 4, {8, 16}), (1,)) == CodeSpec(29, 4, {8, 16})
    with pytest.raises(ReductionError):
        shorten_components(CodeSpec(4, 1, {2}), (2,))
    with pytest.raises(ReductionError):
        shorten_components(CodeSpec(4, 2, {2, 4}), (0,))


def test_shorten_composes():
    spec = CodeSpec(40, 6, {8, 16, 24})
    assert shorten_components(spec, (2, 2)) == shorten_components(shorten_components(spec, (2,)), (2,))


def test_shorten_dual_word():
    spec = CodeSpec(64, 13, R)
    assert shorten_dual_word(spec, 3, 3) == CodeSpec(61, 11, R)
    assert shorten_dual_word(spec, 3, 2) == CodeSpec(62, 11, R)
    assert shorten_dual_word(spec, 3, 1) == CodeSpec(63, 12, R)
    assert shorten_dual_word(spec, 2) == shorten_components(spec, (2,))
    assert shorten_dual_word(spec, 1) == shorten_components(spec, (1,))
    with pytest.raises(ReductionError):
        shorten_dual_word(spec, 3, 4)


def test_deuce_graph_cases_66():
    cases = {c.component_shape: c.reduced_spec for c in deuce_graph_cases(CodeSpec(66, 13, R), 7)}
    assert cases[(4,)] == CodeSpec(62, 12, R)
    assert cases[(3, 3)] == CodeSpec(60, 11, R)
    assert cases[(3, 2)] == CodeSpec(61, 11, R)
    assert cases[(5,)] == CodeSpec(61, 12, R)
    assert (3,) not in cases
    assert (3,) in {c.component_shape for c in deuce_graph_cases(CodeSpec(66, 13, R), 3)}


def test_pair_cases_65():
    cases = {c.component_shape: c.reduced_spec for c in pair_cases(CodeSpec(65, 13, R))}
    assert cases == {(2, 2): CodeSpec(61, 11, R), (3,): CodeSpec(62, 12, R)}


def test_case_list_is_exhaustive():
    # any clique union with > 3 edges and a clique of size >= 3 contains a listed shape
    listed = [(4,), (5,), (3, 3), (3, 2)]
    for shape in clique_unions(14):
        if max(shape) >= 3 and clique_edges(shape) > 3:
            assert any(contains_shape(shape, sub) for sub in listed), shape


def test_adjoin_complement():
    adj = adjoin_complement(CodeSpec(64, 12, {24, 32, 40}))
    assert adj == CodeSpec(64, 13, {24, 32, 40, 64}, forced={64})
    assert adjoin_complement(CodeSpec(10, 2, {5})) == CodeSpec(10, 3, {5, 10}, forced={10})
    assert adjoin_complement(CodeSpec(6, 1, {2})) == CodeSpec(6, 2, {2, 4, 6}, forced={6})
    with pytest.raises(ReductionError):
        adjoin_complement(CodeSpec(6, 1, {6}))


def test_adjoin_dual_pins():
    adj = adjoin_complement(CodeSpec(64, 12, {24, 32, 40}, dual_lower={2: 6, 3: 1}, dual_fixed={1: 0}))
    assert adj.dual_lower == {2: 6}
    assert adj.dual_fixed == {1: 0, 3: 0}


def test_complement_weights_idempotent():
    for n in range(2, 20):
        for j in range(1, n):
            once = complement_weights(n, {j})
            assert complement_weights(n, once) == once
            assert once == {j, n - j, n} - {0}
