from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from codeprover.codespec import CodeSpec
from codeprover.delsarte import Mode, feasibility_verdict
from codeprover.delsarte import build_lp
from codeprover.serialize import (
    DocumentError,
    dumps,
    parse_rational,
    parse_spec_document,
    problem_from_dict,
    problem_to_dict,
    rational,
    serialize_spec_document,
    verdict_from_dict,
    verdict_to_dict,
)


def test_rational_round_trip():
    assert rational(Fraction(-13, 2)) == {"num": "-13", "den": "2"}
    assert parse_rational({"num": "-13", "den": "2"}) == Fraction(-13, 2)
    assert parse_rational(4) == 4
    assert parse_rational("5/3") == Fraction(5, 3)
    with pytest.raises(DocumentError):
        parse_rational(1.5)
    with pytest.raises(DocumentError):
        parse_rational(True)


@st.composite
def specs(draw):
    n = draw(st.integers(1, 40))
    k = draw(st.integers(1, n))
    weights = draw(st.sets(st.integers(1, n), min_size=1, max_size=6))
    forced = draw(st.sets(st.sampled_from(sorted(weights)), max_size=2))
    duals = st.dictionaries(st.integers(0, n), st.fractions(0, 50, max_denominator=4), max_size=3)
    counts = draw(st.dictionaries(st.sampled_from(sorted(weights)), st.integers(1, 9), max_size=2))
    return CodeSpec(n, k, weights, forced, counts, draw(duals), draw(duals))


@given(specs(), st.sampled_from([None, Mode.PAPER, Mode.FULL]))
def test_spec_document_round_trip(spec, mode):
    text = serialize_spec_document(spec, mode)
    back, back_mode = parse_spec_document(text)
    assert back == spec and back_mode == mode
    assert serialize_spec_document(back, back_mode) == text


def test_unknown_key_has_position():
    text = '{\n  "n": 5,\n  "k": 2,\n  "weights": [2, 4],\n  "colour": "red"\n}\n'
    with pytest.raises(DocumentError) as info:
        parse_spec_document(text)
    assert info.value.line == 5 and info.value.column == 3
    assert "colour" in str(info.value)


def test_json_syntax_error_has_position():
    with pytest.raises(DocumentError) as info:
        parse_spec_document('{"n": 5,\n "k": }')
    assert info.value.line == 2


def test_missing_and_invalid_fields():
    with pytest.raises(DocumentError):
        parse_spec_document('{"n": 5, "k": 2}')
    with pytest.raises(DocumentError):
        parse_spec_document('{"n": 5, "k": 9, "weights": [2]}')
    with pytest.raises(DocumentError):
        parse_spec_document('{"n": 5, "k": 2, "weights": ["2"]}')


def test_problem_and_verdict_round_trip():
    spec = CodeSpec(58, 11, {24, 32, 56})
    p = build_lp(spec, Mode.PAPER)
    assert problem_from_dict(problem_to_dict(p)) == p
    v = feasibility_verdict(spec, Mode.PAPER)
    doc = verdict_to_dict(v)
    assert verdict_from_dict(doc) == v
    assert dumps(verdict_to_dict(verdict_from_dict(doc))) == dumps(doc)


def test_machine_output_has_no_floats():
    doc = verdict_to_dict(feasibility_verdict(CodeSpec(64, 13, {24, 32, 40, 56}, dual_fixed={1: 0, 2: 0, 3: 0}), Mode.PAPER))
    text = dumps(doc)
    assert "2.5" not in text and '"num": "5"' in text
