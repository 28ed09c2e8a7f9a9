import pytest
from hypothesis import given, strategies as st

from czfkit import hf
from czfkit.hf import EMPTY, HFSet, hfset, parse_hf


def hf_strategy(max_depth=3):
    return st.recursive(
        st.just(EMPTY),
        lambda children: st.lists(children, max_size=4).map(HFSet),
        max_leaves=12,
    )


def test_empty_serialization():
    assert str(EMPTY) == "{}"
    assert len(EMPTY) == 0
    assert not EMPTY


def test_dedup_and_order():
    a = hfset(EMPTY, hfset(EMPTY), EMPTY)
    assert len(a) == 2
    assert str(a) == "{{{}},{}}"


def test_extensional_equality():
    assert hfset(EMPTY, hfset(EMPTY)) == hfset(hfset(EMPTY), EMPTY)
    assert hfset(EMPTY) != hfset(hfset(EMPTY))


def test_parse_round_trip_examples():
    for text in ["{}", "{{}}", "{{},{{}}}", "{{{}},{}}"]:
        assert str(parse_hf(text)) == str(HFSet(parse_hf(text)))


def test_parse_whitespace_and_errors():
    assert parse_hf(" { { } , { { } } } ") == hfset(EMPTY, hfset(EMPTY))
    with pytest.raises(ValueError):
        parse_hf("{")
    with pytest.raises(ValueError):
        parse_hf("{} {}")
    with pytest.raises(ValueError):
        parse_hf("{,}")


@given(hf_strategy())
def test_serialize_parse_inverse(s):
    assert parse_hf(str(s)) == s


def test_kpair_unpair():
    a, b = hfset(EMPTY), hfset(hfset(EMPTY))
    assert hf.unpair(hf.kpair(a, b)) == (a, b)
    assert hf.unpair(hf.kpair(a, a)) == (a, a)
    assert hf.unpair(hfset(EMPTY, hfset(EMPTY))) is None
    assert hf.unpair(EMPTY) is None


@given(hf_strategy(), hf_strategy())
def test_kpair_injective(a, b):
    assert hf.unpair(hf.kpair(a, b)) == (a, b)


def test_tuple_right():
    a, b, c = EMPTY, hfset(EMPTY), hfset(hfset(EMPTY))
    assert hf.tuple_right([a]) == a
    assert hf.tuple_right([a, b, c]) == hf.kpair(a, hf.kpair(b, c))
    with pytest.raises(ValueError):
        hf.tuple_right([])


def test_product_and_powerset():
    one = hfset(EMPTY)
    assert hf.product(one, one) == hfset(hf.kpair(EMPTY, EMPTY))
    assert len(hf.powerset(hfset(EMPTY, one))) == 4
    assert EMPTY in hf.powerset(EMPTY)


def test_union_intersection_difference():
    a = hfset(EMPTY, hfset(EMPTY))
    assert hf.union(hfset(a)) == a
    assert hf.intersection(a, hfset(EMPTY)) == hfset(EMPTY)
    assert hf.difference(a, hfset(EMPTY)) == hfset(hfset(EMPTY))
    assert hf.binary_union(hfset(EMPTY), hfset(hfset(EMPTY))) == a


def test_von_neumann_and_to_ordinal():
    assert hf.von_neumann(0) == EMPTY
    assert hf.von_neumann(2) == hfset(EMPTY, hfset(EMPTY))
    for n in range(5):
        assert hf.to_ordinal(hf.von_neumann(n)) == n
    assert hf.to_ordinal(hfset(hfset(EMPTY))) is None


def test_rank_and_transitivity():
    assert EMPTY.rank() == 0
    assert hf.von_neumann(3).rank() == 3
    assert hf.von_neumann(3).is_transitive()
    assert not hfset(hfset(EMPTY)).is_transitive()
    tc = hfset(hfset(EMPTY)).transitive_closure()
    assert tc == hfset(EMPTY, hfset(EMPTY))


def test_v_stage():
    assert hf.v_stage(0) == EMPTY
    assert hf.v_stage(1) == hfset(EMPTY)
    assert len(hf.v_stage(3)) == 4
    assert hf.v_stage(2).is_subset(hf.v_stage(3))
    assert hf.v_stage(3).is_transitive()
