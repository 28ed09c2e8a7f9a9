import pytest

from czfkit import hf
from czfkit.corpus import bounded_formulas
from czfkit.formula import (
    All, And, BoundedAll, BoundedEx, ClassMem, Eq, Ex, Falsum,
    FormulaSyntaxError, Imp, Lit, Mem, Or, Var, alpha_eq, class_ids,
    free_vars, is_bounded, parse, relativize, render, substitute,
)


def test_parse_base_cases():
    assert parse("x in y") == Mem(Var("x"), Var("y"))
    assert parse("x = y") == Eq(Var("x"), Var("y"))
    assert parse("false") == Falsum()
    assert parse("x in M") == ClassMem(Var("x"), "M")


def test_parse_quantifiers():
    assert parse("all x in y. x = x") == BoundedAll(
        "x", Var("y"), Eq(Var("x"), Var("x")))
    assert parse("ex x. x in y") == Ex("x", Mem(Var("x"), Var("y")))


def test_negation_is_sugar():
    assert parse("~(p = q)") == Imp(Eq(Var("p"), Var("q")), Falsum())
    assert render(parse("~(x = x)")) == "~(x = x)"


def test_biconditional_is_sugar():
    f = parse("x = y <-> y = x")
    assert f == And(Imp(Eq(Var("x"), Var("y")), Eq(Var("y"), Var("x"))),
                    Imp(Eq(Var("y"), Var("x")), Eq(Var("x"), Var("y"))))


def test_hf_literals():
    f = parse("x = {{},{{}}}")
    assert isinstance(f.right, Lit)
    assert str(f.right.value) == "{{{}},{}}"


def test_precedence():
    f = parse("a in b & c in d | e in f -> g in h")
    assert isinstance(f, Imp)
    assert isinstance(f.left, Or)
    assert isinstance(f.left.left, And)
    # right-associative implication
    g = parse("a = a -> b = b -> c = c")
    assert isinstance(g, Imp) and isinstance(g.right, Imp)


def test_big_connectives():
    f = parse("bigand [x = x, x in y]")
    assert len(f.parts) == 2
    g = parse("bigor [false]")
    assert len(g.parts) == 1


def test_syntax_errors_have_position():
    with pytest.raises(FormulaSyntaxError):
        parse("x in")
    with pytest.raises(FormulaSyntaxError):
        parse("all X. x = x")
    with pytest.raises(FormulaSyntaxError):
        parse("")


def test_render_parse_identity_on_examples():
    texts = [
        "false",
        "x in y",
        "~(x = x)",
        "ex x in a. x in b",
        "all x. ex y. x in y",
        "x = {} & (y in z | ~(y = z))",
        "bigand [x = x, false]",
    ]
    for t in texts:
        f = parse(t)
        assert parse(render(f)) == f


def test_render_parse_identity_on_corpus():
    for f in bounded_formulas(2, 2, limit=120, include_literals=True):
        assert parse(render(f)) == f


def test_free_vars():
    assert free_vars(parse("x = y")) == {"x", "y"}
    assert free_vars(parse("all x. x in y")) == {"y"}
    assert free_vars(parse("all x in y. x in x")) == {"y"}
    assert free_vars(parse("x in M")) == {"x"}


def test_substitute_basic():
    f = parse("x in y")
    assert substitute(f, "x", Lit(hf.EMPTY)) == Mem(Lit(hf.EMPTY), Var("y"))
    g = parse("all x. x in y")
    assert substitute(g, "x", Var("z")) == g


def test_substitute_capture_avoidance():
    f = All("y", Eq(Var("x"), Var("y")))
    out = substitute(f, "x", Var("y"))
    assert isinstance(out, All)
    assert out.var != "y"
    assert out.body == Eq(Var("y"), Var(out.var))


def test_substitute_free_var_law():
    f = parse("x in y & (ex z. z = x)")
    out = substitute(f, "x", Var("w"))
    assert free_vars(out) == {"w", "y"}


def test_relativize_term():
    f = All("x", Eq(Var("x"), Var("x")))
    assert relativize(f, Var("a")) == BoundedAll("x", Var("a"),
                                                 Eq(Var("x"), Var("x")))
    assert is_bounded(relativize(parse("all x. ex y. x in y"), Var("a")))


def test_relativize_class():
    f = Ex("x", Mem(Var("x"), Var("y")))
    out = relativize(f, "M")
    assert out == Ex("x", And(ClassMem(Var("x"), "M"),
                              Mem(Var("x"), Var("y"))))
    with pytest.raises(ValueError):
        relativize(parse("all x. x in M"), "M")


def test_relativize_bounded_identity():
    f = parse("all x in y. x = x")
    assert relativize(f, Var("a")) == f


def test_is_bounded():
    assert is_bounded(parse("false"))
    assert is_bounded(parse("all x in y. x = x"))
    assert not is_bounded(parse("ex x. x in y"))


def test_class_ids():
    assert class_ids(parse("x in M & y in N")) == {"M", "N"}
    assert class_ids(parse("x in y")) == set()


def test_alpha_eq():
    assert alpha_eq(parse("all x. x = x"), parse("all y. y = y"))
    assert not alpha_eq(parse("all x. x = x"), parse("all y. y in y"))
    assert alpha_eq(parse("ex x in a. all y in x. y in b"),
                    parse("ex u in a. all v in u. v in b"))
