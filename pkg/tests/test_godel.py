import itertools

import pytest

from czfkit import godel, hf
from czfkit.formula import parse
from czfkit.godel import (
    App, Arg, CompileError, compile_bounded, def_stage, eval_opterm,
    fundamental_op, hereditary_add, l_stage, max_placeholder, opterm_render,
)
from czfkit.hf import EMPTY, hfset, kpair, parse_hf
from czfkit.semantics import comprehension


ONE = hfset(EMPTY)


def test_pairing():
    assert fundamental_op("p", [EMPTY, EMPTY]) == ONE
    assert fundamental_op("p", [EMPTY, ONE]) == hfset(EMPTY, ONE)


def test_big_union():
    assert fundamental_op("cup", [hfset(ONE)]) == ONE


def test_intersection_with_convention():
    # x cap (big intersection of y); empty y absorbs to x
    assert fundamental_op("cap", [hfset(EMPTY, ONE), hfset(ONE)]) == ONE
    assert fundamental_op("cap", [ONE, EMPTY]) == ONE


def test_difference_product():
    assert fundamental_op("diff", [hfset(EMPTY, ONE), ONE]) == hfset(ONE)
    assert fundamental_op("times", [ONE, ONE]) == hfset(kpair(EMPTY, EMPTY))


def test_imp_op():
    a = hfset(EMPTY, ONE)
    # guarded by y being an ordered pair; z in 1st -> z in 2nd
    y = kpair(ONE, hfset(EMPTY, ONE))
    assert fundamental_op("imp", [a, y]) == a
    y2 = kpair(hfset(EMPTY, ONE), ONE)
    assert fundamental_op("imp", [a, y2]) == ONE
    assert fundamental_op("imp", [a, EMPTY]) == EMPTY


def test_forall_op():
    # x"{z} for z in y, collected as a set
    r = hfset(kpair(EMPTY, EMPTY), kpair(EMPTY, ONE), kpair(ONE, EMPTY))
    out = fundamental_op("forall", [r, hfset(EMPTY, ONE)])
    assert out == hfset(hfset(EMPTY, ONE), ONE)
    assert fundamental_op("forall", [r, EMPTY]) == EMPTY


def test_dom_ran():
    r = hfset(kpair(EMPTY, ONE))
    assert fundamental_op("dom", [r, EMPTY]) == ONE
    assert fundamental_op("ran", [r, EMPTY]) == hfset(ONE)


def test_insertion_ops():
    r = hfset(kpair(EMPTY, ONE))
    out = godel.fundamental_op("123", [r, hfset(EMPTY)])
    assert out == hfset(hf.tuple_right([EMPTY, ONE, EMPTY]))
    out = godel.fundamental_op("132", [r, hfset(EMPTY)])
    assert out == hfset(hf.tuple_right([EMPTY, EMPTY, ONE]))


def test_eq_mem_ops():
    a, b = hfset(EMPTY, ONE), hfset(EMPTY, ONE)
    eq = fundamental_op("eq", [a, b])
    assert eq == hfset(kpair(EMPTY, EMPTY), kpair(ONE, ONE))
    mem = fundamental_op("mem", [a, b])
    # pairs <v,u> with u in v
    assert mem == hfset(kpair(ONE, EMPTY))


def test_arity_errors():
    with pytest.raises(ValueError):
        fundamental_op("cup", [EMPTY, EMPTY])
    with pytest.raises(ValueError):
        fundamental_op("p", [EMPTY])


def test_opterm_eval_and_render():
    t = App("p", (Arg(1), Arg(1)))
    assert eval_opterm(t, [EMPTY]) == ONE
    assert eval_opterm(Arg(1), [ONE]) == ONE
    assert opterm_render(t) == "F_p(#1,#1)"
    assert max_placeholder(t) == 1
    with pytest.raises(ValueError):
        eval_opterm(Arg(2), [EMPTY])


def test_compile_small_cases():
    t = compile_bounded(parse("x1 in x1"), 1)
    assert eval_opterm(t, [hfset(EMPTY, ONE)]) == EMPTY
    t = compile_bounded(parse("x2 in x1"), 2)
    assert eval_opterm(t, [hfset(ONE), ONE]) == hfset(kpair(EMPTY, ONE))
    t = compile_bounded(parse("x1 = x1"), 1)
    assert eval_opterm(t, [ONE]) == ONE


def test_compile_requires_bounded():
    with pytest.raises(CompileError):
        compile_bounded(parse("ex y. y in x1"), 1)
    with pytest.raises(ValueError):
        compile_bounded(parse("x1 in x3"), 2)


def test_compile_matches_oracle_sample():
    args_pool = list(hf.v_stage(3))
    formulas = [
        "x1 = x2", "x1 in x2", "x2 in x1",
        "x1 in x2 & x2 in x1", "x1 in x2 | x1 = x2",
        "x1 in x2 -> x2 in x1",
        "ex y in x1. y in x2", "all y in x1. y in x2",
        "ex y in x2. all z in y. z in x1",
    ]
    for text in formulas:
        f = parse(text)
        t = compile_bounded(f, 2)
        for a1, a2 in itertools.product(args_pool, repeat=2):
            assert eval_opterm(t, [a1, a2]) == comprehension(f, [a1, a2]), text
    for text in ["x1 = {}", "{} in x1", "all y in x1. y = {}"]:
        f = parse(text)
        t = compile_bounded(f, 1)
        for a1 in args_pool:
            assert eval_opterm(t, [a1]) == comprehension(f, [a1]), text


def test_def_stage_examples():
    assert def_stage(EMPTY, 0) == EMPTY
    assert def_stage(EMPTY, 1) == hfset(EMPTY, ONE)
    a = hfset(ONE)
    for k in range(2):
        s1, s2 = def_stage(a, k), def_stage(a, k + 1)
        assert s1.is_subset(s2)
    assert a in def_stage(a, 1)
    for x in a:
        assert x in def_stage(a, 1)


def test_def_stage_budget():
    with pytest.raises(hf.BudgetExceeded):
        def_stage(hf.v_stage(3), 3, max_size=10)


def test_l_stage():
    assert l_stage(0, 1) == EMPTY
    assert l_stage(1, 1) == hfset(EMPTY, ONE)
    for beta in range(3):
        assert l_stage(beta, 1).is_subset(l_stage(beta + 1, 1))


def test_hereditary_add_values():
    assert hereditary_add(0, 0) == 1
    assert hereditary_add(0, 2) == 3
    assert hereditary_add(1, 1) == 3


def test_hereditary_add_laws():
    for a in range(5):
        for g in range(5):
            v = hereditary_add(a, g)
            assert v >= a + g
            assert hereditary_add(a + 1, g) >= v
            assert hereditary_add(a, g + 1) >= v


def test_parse_hf_literal_in_compile():
    f = parse("x1 = {{}}")
    t = compile_bounded(f, 1)
    dom = hfset(EMPTY, ONE, hfset(ONE))
    assert eval_opterm(t, [dom]) == hfset(ONE)
    assert parse_hf("{{}}") == ONE
