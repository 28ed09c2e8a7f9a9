import itertools

import pytest

from czfkit import hf, topology as tp
from czfkit.formula import parse
from czfkit.hf import EMPTY, hfset
from czfkit.names import (
    EMPTY_NAME, Interpreter, Name, check_name, class_equal, collection_value,
    interpret, interpret_relativized, make_class_name, make_name,
    name_universe, op, parse_name, powerset_name, serialize_name,
    strong_collection_witness, subset_value, up,
)
from czfkit.topology import frame_elements, from_poset, omega


OMEGA = omega()
CHAIN = from_poset(["a", "b"], [("a", "b")])
TOP = tp.top(OMEGA)
BOT = tp.bottom(OMEGA)
ONE = hfset(EMPTY)


def u_omega(depth):
    return name_universe(OMEGA, depth)


def test_make_name_sorts_and_dedups():
    t = OMEGA
    n = make_name([(EMPTY_NAME, TOP), (EMPTY_NAME, TOP)])
    assert len(n.entries) == 1
    with pytest.raises(ValueError):
        make_name([(EMPTY_NAME, TOP), (EMPTY_NAME, BOT)])
    # bottom-weight entries are kept distinct from absence only textually
    assert serialize_name(n) == "(()->{0})"


def test_check_name_structure():
    assert check_name(EMPTY, OMEGA) == EMPTY_NAME
    n = check_name(ONE, OMEGA)
    assert n.entries == ((EMPTY_NAME, TOP),)
    assert n.depth() == 1


def test_check_name_injective_small_ranks():
    pool = list(hf.v_stage(3))
    names = [check_name(x, OMEGA) for x in pool]
    assert len(set(names)) == len(pool)


def test_up_and_op_structure():
    t = OMEGA
    a = EMPTY_NAME
    b = check_name(ONE, t)
    pair = up(a, b, t)
    assert set(pair.keys()) == {a, b}
    assert up(a, a, t).entries == ((a, TOP),)
    o = op(a, b, t)
    assert set(o.keys()) == {up(a, a, t), up(a, b, t)}


def test_up_agrees_with_pairing():
    u = u_omega(2)
    it = Interpreter(u)
    a = check_name(EMPTY, OMEGA)
    pair = up(a, a, OMEGA)
    assert it.eq(pair, check_name(ONE, OMEGA)) == TOP


def test_interpret_atoms():
    u = u_omega(2)
    zero = check_name(EMPTY, OMEGA)
    one = check_name(ONE, OMEGA)
    env = {"x": zero, "y": one}
    assert interpret(parse("x = x"), env, u) == TOP
    assert interpret(parse("x in y"), env, u) == TOP
    assert interpret(parse("x = y"), env, u) == BOT
    assert interpret(parse("y in x"), env, u) == BOT


def test_interpret_literals():
    u = u_omega(2)
    assert interpret(parse("{} in {{}}"), None, u) == TOP
    assert interpret(parse("{} = {{}}"), None, u) == BOT


def test_name_universe_sizes():
    # each level: (frame size + 1) ^ (names at the previous level)
    assert len(u_omega(0).names) == 1
    assert len(u_omega(1).names) == 3
    assert len(u_omega(2).names) == 27
    assert len(name_universe(CHAIN, 1).names) == 4


def test_name_universe_budget():
    with pytest.raises(hf.BudgetExceeded):
        name_universe(OMEGA, 4, max_count=1000)


def test_name_universe_closed_under_entries():
    u = u_omega(2)
    pool = set(u.names)
    shallow = set(u_omega(1).names)
    for n in u.names:
        for k in n.keys():
            assert k in shallow
    assert shallow <= {make_name(n.entries) for n in pool} | pool


def test_equality_laws():
    for t in [OMEGA, CHAIN]:
        u = name_universe(t, 1)
        it = Interpreter(u)
        for a in u.names:
            assert it.eq(a, a) == tp.top(t)
        for a, b in itertools.product(u.names, repeat=2):
            assert it.eq(a, b) == it.eq(b, a)
        for a, b, c in itertools.product(u.names, repeat=3):
            lhs = tp.meet(t, it.eq(a, b), it.eq(b, c))
            assert lhs <= it.eq(a, c)


def test_membership_respects_equality():
    for t in [OMEGA, CHAIN]:
        u = name_universe(t, 1)
        it = Interpreter(u)
        for a, b, c in itertools.product(u.names, repeat=3):
            lhs = tp.meet(t, it.eq(a, b), it.mem(a, c))
            assert lhs <= it.mem(b, c)


def test_extensionality_valid_at_truncation():
    u = u_omega(1)
    f = parse("all x. all y. ((all z. z in x <-> z in y) -> x = y)")
    assert interpret(f, None, u) == TOP


def test_pairing_valid_at_truncation():
    # for names one level below the universe depth
    u = u_omega(2)
    it = Interpreter(u)
    shallow = u_omega(1).names
    for a, b in itertools.product(shallow, repeat=2):
        pair = up(a, b, OMEGA)
        hit = tp.big_join(OMEGA, (it.eq(pair, c) for c in u.names))
        assert hit == TOP


def test_collection_value_and_witness():
    u = u_omega(2)
    it = Interpreter(u)
    a = check_name(ONE, OMEGA)
    r = check_name(hfset(hf.kpair(EMPTY, EMPTY)), OMEGA)
    assert collection_value(it, a, r) == TOP
    b = strong_collection_witness(a, r, TOP, u)
    assert collection_value(it, a, r, b) == TOP


def test_witness_empty_cases():
    u = u_omega(2)
    a = check_name(ONE, OMEGA)
    r = check_name(hfset(hf.kpair(EMPTY, EMPTY)), OMEGA)
    assert strong_collection_witness(EMPTY_NAME, EMPTY_NAME, TOP, u) == EMPTY_NAME
    assert strong_collection_witness(a, r, BOT, u) == EMPTY_NAME


def test_witness_requires_precondition():
    u = u_omega(2)
    a = check_name(ONE, OMEGA)
    with pytest.raises(ValueError):
        strong_collection_witness(a, EMPTY_NAME, TOP, u)


def test_powerset_name():
    u = u_omega(2)
    it = Interpreter(u)
    p0 = powerset_name(EMPTY_NAME, u)
    assert p0.entries == ((EMPTY_NAME, TOP),)
    p1 = powerset_name(check_name(ONE, OMEGA), u)
    assert len(p1.entries) == 2
    # every subset of a equals some member of the powerset name
    a = check_name(ONE, OMEGA)
    for c in u_omega(1).names:
        sub = subset_value(it, c, a)
        hit = tp.big_join(OMEGA, (tp.meet(OMEGA, q, it.eq(c, d))
                                  for d, q in p1.entries))
        assert sub <= hit


def test_interpret_relativized():
    sub = u_omega(1)
    full = u_omega(2)
    f = parse("all x. ex y. x in y")
    vs, vf = interpret_relativized(f, None, sub, full)
    assert vs in frame_elements(OMEGA) and vf in frame_elements(OMEGA)
    g = parse("{} = {}")
    assert interpret_relativized(g, None, sub, full) == (TOP, TOP)
    with pytest.raises(ValueError):
        interpret_relativized(f, None, name_universe(CHAIN, 1), full)


def test_class_names():
    u = u_omega(1)
    a = make_class_name([(EMPTY_NAME, TOP)])
    assert class_equal(a, a, u) == TOP
    assert class_equal(a, make_class_name([]), u) == BOT
    env = {"x": EMPTY_NAME, "M": a}
    assert interpret(parse("x in M"), env, u) == TOP


def test_class_atomic_transfer():
    # equal classes share their members
    u = u_omega(1)
    it = Interpreter(u)
    frames = frame_elements(OMEGA)
    singles = [make_class_name([(EMPTY_NAME, p)]) for p in frames]
    singles.append(make_class_name([]))
    for a, b in itertools.product(singles, repeat=2):
        if class_equal(a, b, u) != TOP:
            continue
        for n in u.names:
            if it.class_mem(n, a) == TOP:
                assert it.class_mem(n, b) == TOP


def test_class_name_not_a_term():
    u = u_omega(1)
    env = {"x": make_class_name([])}
    with pytest.raises(ValueError):
        interpret(parse("x = x"), env, u)


def test_parse_serialize_round_trip():
    u = u_omega(2)
    for n in u.names:
        assert parse_name(serialize_name(n)) == n
    with pytest.raises(ValueError):
        parse_name("()->{}")
    with pytest.raises(ValueError):
        parse_name("(() {0})")
