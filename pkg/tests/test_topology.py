import itertools

import pytest

from czfkit import topology as tp
from czfkit.topology import (
    FormalTopology, SetPresentation, TopologyError, big_join, big_meet,
    bottom, check_presentation, frame_elements, from_poset, implies, join,
    leq, meet, nucleus, omega, parse_frame_element, parse_topology,
    render_frame_element, render_topology, top, validate,
)


def chain2():
    return from_poset(["a", "b"], [("a", "b")])


def antichain2():
    return from_poset(["a", "b"], [])


def test_omega_validates():
    assert validate(omega()) == []


def test_poset_topologies_validate():
    assert validate(chain2()) == []
    assert validate(antichain2()) == []
    assert validate(from_poset(["a", "b", "c"],
                               [("a", "b"), ("b", "c")])) == []


def test_broken_cover_reports_reflexivity():
    t = omega()
    cover = dict(t.cover)
    cover[("0", frozenset(["0"]))] = False
    broken = FormalTopology(t.carrier, t.order, cover)
    violations = validate(broken)
    assert any(v.axiom == "reflexivity" for v in violations)


def test_carrier_budget():
    with pytest.raises(TopologyError):
        FormalTopology(tuple(f"t{i}" for i in range(11)), frozenset(), {})


def test_nucleus_on_chain():
    t = chain2()
    assert nucleus(t, frozenset(["b"])) == frozenset(["a", "b"])
    assert nucleus(t, frozenset(["a"])) == frozenset(["a"])
    assert nucleus(t, frozenset()) == frozenset()


def test_frame_element_counts():
    assert frame_elements(omega()) == [frozenset(), frozenset(["0"])]
    assert len(frame_elements(from_poset(["a"], []))) == 2
    assert len(frame_elements(chain2())) == 3
    # the antichain gives the four-element Boolean algebra
    assert len(frame_elements(antichain2())) == 4


def test_lattice_operations():
    t = chain2()
    a = frozenset(["a"])
    ab = frozenset(["a", "b"])
    assert top(t) == ab
    assert bottom(t) == frozenset()
    assert meet(t, a, ab) == a
    assert join(t, a, nucleus(t, frozenset(["b"]))) == ab
    assert leq(t, a, ab) and not leq(t, ab, a)


def test_implies_examples():
    t = omega()
    zero = frozenset(["0"])
    assert implies(t, zero, frozenset()) == frozenset()
    assert implies(t, frozenset(), zero) == zero
    assert implies(t, zero, zero) == zero


def test_adjunction_on_small_frames():
    for t in [omega(), chain2(), antichain2(),
              from_poset(["a", "b", "c"], [("a", "c"), ("b", "c")])]:
        frame = frame_elements(t)
        for p, q, r in itertools.product(frame, repeat=3):
            lhs = leq(t, r, implies(t, p, q))
            rhs = leq(t, meet(t, r, p), q)
            assert lhs == rhs, (t.carrier, p, q, r)


def test_nucleus_laws():
    for t in [omega(), chain2(), antichain2()]:
        subs = list(t.subsets())
        for p in subs:
            jp = nucleus(t, p)
            assert t.down(p) <= jp or not validate(t)
            assert nucleus(t, jp) == jp
            for q in subs:
                if p <= q:
                    assert jp <= nucleus(t, q)


def test_big_meet_big_join():
    t = antichain2()
    frame = frame_elements(t)
    assert big_meet(t, []) == top(t)
    assert big_join(t, []) == bottom(t)
    assert big_join(t, frame) == top(t)
    assert big_meet(t, frame) == bottom(t)


def test_from_poset_rejects_cycles():
    with pytest.raises(TopologyError):
        from_poset(["a", "b"], [("a", "b"), ("b", "a")])


def test_presentation():
    t = chain2()
    fams = {a: frozenset(u for u in t.subsets() if t.covers(a, u)
                         and all(not (v < u and t.covers(a, v))
                                 for v in t.subsets()))
            for a in t.carrier}
    assert check_presentation(t, SetPresentation(fams))
    assert not check_presentation(t, SetPresentation({"a": frozenset()}))


def test_parse_render_round_trip():
    for t in [omega(), chain2(), antichain2()]:
        again = parse_topology(render_topology(t))
        assert again.carrier == t.carrier
        assert again.order == t.order
        assert again.cover == t.cover


def test_parse_topology_errors():
    with pytest.raises(TopologyError):
        parse_topology("order: a<=b\n")
    with pytest.raises(TopologyError):
        parse_topology("carrier: a\nnonsense here\n")
    with pytest.raises(TopologyError):
        parse_topology("carrier: a\ncover: a | {a}\n")


def test_frame_element_text():
    p = frozenset(["b", "a"])
    assert render_frame_element(p) == "{a,b}"
    assert parse_frame_element("{a,b}") == p
    assert parse_frame_element("{}") == frozenset()
    with pytest.raises(TopologyError):
        parse_frame_element("a,b")
