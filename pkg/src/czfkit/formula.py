"""Two-sorted set-theoretic formulas: AST, parser, renderer, substitution.

Connectives are Falsum, =, membership, class membership, and/or/implies,
finite big conjunctions/disjunctions, and bounded/unbounded quantifiers.
Negation is sugar: ``~p`` parses to ``p -> false``.  Biconditional ``<->``
is sugar for the conjunction of both implications.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .hf import HFSet, _parse_hf_at, _skip_ws


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


# -- terms -----------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("empty variable name")


@dataclass(frozen=True)
class Lit:
    value: HFSet


Term = Var | Lit


# -- formula nodes ---------------------------------------------------------


@dataclass(frozen=True)
class Falsum:
    pass


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Mem:
    left: Term
    right: Term


@dataclass(frozen=True)
class ClassMem:
    element: Term
    cls: str


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class BigAnd:
    parts: tuple["Formula", ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("BigAnd requires at least one conjunct")


@dataclass(frozen=True)
class BigOr:
    parts: tuple["Formula", ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("BigOr requires at least one disjunct")


@dataclass(frozen=True)
class BoundedAll:
    var: str
    bound: Term
    body: "Formula"


@dataclass(frozen=True)
class BoundedEx:
    var: str
    bound: Term
    body: "Formula"


@dataclass(frozen=True)
class All:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Ex:
    var: str
    body: "Formula"


Formula = (
    Falsum | Eq | Mem | ClassMem | And | Or | Imp
    | BigAnd | BigOr | BoundedAll | BoundedEx | All | Ex
)

QUANTIFIERS = (BoundedAll, BoundedEx, All, Ex)


def neg(f: Formula) -> Formula:
    return Imp(f, Falsum())


def is_neg(f: Formula) -> bool:
    return isinstance(f, Imp) and isinstance(f.right, Falsum)


# -- parser ----------------------------------------------------------------

_KEYWORDS = {"false", "all", "ex", "in", "bigand", "bigor"}
_VAR_RE = re.compile(r"[a-z][a-z0-9_']*")
_CLASS_RE = re.compile(r"[A-Z][A-Za-z0-9_]*")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> FormulaSyntaxError:
        return FormulaSyntaxError(message, self.pos)

    def skip_ws(self):
        self.pos = _skip_ws(self.text, self.pos)

    def peek(self, s: str) -> bool:
        self.skip_ws()
        return self.text.startswith(s, self.pos)

    def eat(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def expect(self, s: str):
        if not self.eat(s):
            raise self.error(f"expected {s!r}")

    def peek_word(self) -> str | None:
        self.skip_ws()
        m = _VAR_RE.match(self.text, self.pos)
        return m.group(0) if m else None

    def eat_word(self, w: str) -> bool:
        if self.peek_word() == w:
            self.pos += len(w)
            return True
        return False

    def parse_var(self) -> str:
        w = self.peek_word()
        if w is None or w in _KEYWORDS:
            raise self.error("expected a variable")
        self.pos += len(w)
        return w

    def parse_term(self) -> Term:
        self.skip_ws()
        if self.peek("{"):
            value, self.pos = _parse_hf_at(self.text, self.pos)
            return Lit(value)
        return Var(self.parse_var())

    # precedence: -> (lowest, right-assoc) < | < & < unary/atom
    def parse_formula(self) -> Formula:
        left = self.parse_or()
        if self.eat("<->"):
            right = self.parse_formula()
            return And(Imp(left, right), Imp(right, left))
        if self.eat("->"):
            return Imp(left, self.parse_formula())
        return left

    def parse_or(self) -> Formula:
        left = self.parse_and()
        while self.peek("|") and not self.peek("|-"):
            self.expect("|")
            left = Or(left, self.parse_and())
        return left

    def parse_and(self) -> Formula:
        left = self.parse_unary()
        while self.eat("&"):
            left = And(left, self.parse_unary())
        return left

    def parse_unary(self) -> Formula:
        if self.eat("~"):
            return neg(self.parse_unary())
        return self.parse_atom()

    def parse_quantifier(self, cls_plain, cls_bounded) -> Formula:
        var = self.parse_var()
        if self.eat_word("in"):
            bound = self.parse_term()
            self.expect(".")
            return cls_bounded(var, bound, self.parse_formula())
        self.expect(".")
        return cls_plain(var, self.parse_formula())

    def parse_list(self) -> tuple[Formula, ...]:
        self.expect("[")
        parts = [self.parse_formula()]
        while self.eat(","):
            parts.append(self.parse_formula())
        self.expect("]")
        return tuple(parts)

    def parse_atom(self) -> Formula:
        self.skip_ws()
        if self.eat("("):
            inner = self.parse_formula()
            self.expect(")")
            return inner
        if self.eat_word("false"):
            return Falsum()
        if self.eat_word("all"):
            return self.parse_quantifier(All, BoundedAll)
        if self.eat_word("ex"):
            return self.parse_quantifier(Ex, BoundedEx)
        if self.eat_word("bigand"):
            return BigAnd(self.parse_list())
        if self.eat_word("bigor"):
            return BigOr(self.parse_list())
        left = self.parse_term()
        if self.eat("="):
            return Eq(left, self.parse_term())
        if self.eat_word("in"):
            self.skip_ws()
            m = _CLASS_RE.match(self.text, self.pos)
            if m:
                self.pos = m.end()
                return ClassMem(left, m.group(0))
            return Mem(left, self.parse_term())
        raise self.error("expected '=' or 'in' after term")


def parse(text: str, forbid_free: bool = False) -> Formula:
    """Parse formula source text.

    With ``forbid_free`` the formula must be a sentence; any free variable
    raises ValueError.
    """
    p = _Parser(text)
    f = p.parse_formula()
    p.skip_ws()
    if p.pos != len(text):
        raise p.error("trailing input")
    if forbid_free:
        fv = free_vars(f)
        if fv:
            raise ValueError(f"unbound variables: {sorted(fv)}")
    return f


# -- rendering -------------------------------------------------------------


def _render_term(t: Term) -> str:
    return t.name if isinstance(t, Var) else t.value.serialize()


def render(f: Formula) -> str:
    """Canonical text; ``parse(render(f))`` is structurally ``f``."""
    return _render(f, 0)


# operator levels: 0 formula (->), 1 or, 2 and, 3 unary/atom
def _render(f: Formula, level: int) -> str:
    if is_neg(f):
        return "~(" + _render(f.left, 0) + ")"
    match f:
        case Falsum():
            return "false"
        case Eq(l, r):
            return f"{_render_term(l)} = {_render_term(r)}"
        case Mem(l, r):
            return f"{_render_term(l)} in {_render_term(r)}"
        case ClassMem(e, c):
            return f"{_render_term(e)} in {c}"
        case And(l, r):
            s = f"{_render(l, 2)} & {_render(r, 3)}"
            return f"({s})" if level > 2 else s
        case Or(l, r):
            s = f"{_render(l, 1)} | {_render(r, 2)}"
            return f"({s})" if level > 1 else s
        case Imp(l, r):
            s = f"{_render(l, 1)} -> {_render(r, 0)}"
            return f"({s})" if level > 0 else s
        case BigAnd(parts):
            return "bigand [" + ", ".join(_render(p, 0) for p in parts) + "]"
        case BigOr(parts):
            return "bigor [" + ", ".join(_render(p, 0) for p in parts) + "]"
        case BoundedAll(v, b, body):
            s = f"all {v} in {_render_term(b)}. {_render(body, 0)}"
            return f"({s})" if level > 0 else s
        case BoundedEx(v, b, body):
            s = f"ex {v} in {_render_term(b)}. {_render(body, 0)}"
            return f"({s})" if level > 0 else s
        case All(v, body):
            s = f"all {v}. {_render(body, 0)}"
            return f"({s})" if level > 0 else s
        case Ex(v, body):
            s = f"ex {v}. {_render(body, 0)}"
            return f"({s})" if level > 0 else s
    raise TypeError(f"not a formula: {f!r}")


# -- variables and substitution --------------------------------------------


def _term_vars(t: Term) -> set[str]:
    return {t.name} if isinstance(t, Var) else set()


def free_vars(f: Formula) -> set[str]:
    match f:
        case Falsum():
            return set()
        case Eq(l, r) | Mem(l, r):
            return _term_vars(l) | _term_vars(r)
        case ClassMem(e, _):
            return _term_vars(e)
        case And(l, r) | Or(l, r) | Imp(l, r):
            return free_vars(l) | free_vars(r)
        case BigAnd(parts) | BigOr(parts):
            return set().union(*(free_vars(p) for p in parts))
        case BoundedAll(v, b, body) | BoundedEx(v, b, body):
            return _term_vars(b) | (free_vars(body) - {v})
        case All(v, body) | Ex(v, body):
            return free_vars(body) - {v}
    raise TypeError(f"not a formula: {f!r}")


def _fresh(base: str, avoid: set[str]) -> str:
    cand = base + "'"
    while cand in avoid:
        cand += "'"
    return cand


def _subst_term(t: Term, v: str, r: Term) -> Term:
    return r if isinstance(t, Var) and t.name == v else t


def substitute(f: Formula, v: str, t: Term) -> Formula:
    """Capture-avoiding substitution of term t for free occurrences of v."""
    match f:
        case Falsum():
            return f
        case Eq(l, r):
            return Eq(_subst_term(l, v, t), _subst_term(r, v, t))
        case Mem(l, r):
            return Mem(_subst_term(l, v, t), _subst_term(r, v, t))
        case ClassMem(e, c):
            return ClassMem(_subst_term(e, v, t), c)
        case And(l, r):
            return And(substitute(l, v, t), substitute(r, v, t))
        case Or(l, r):
            return Or(substitute(l, v, t), substitute(r, v, t))
        case Imp(l, r):
            return Imp(substitute(l, v, t), substitute(r, v, t))
        case BigAnd(parts):
            return BigAnd(tuple(substitute(p, v, t) for p in parts))
        case BigOr(parts):
            return BigOr(tuple(substitute(p, v, t) for p in parts))
        case BoundedAll(w, b, body) | BoundedEx(w, b, body):
            cls = type(f)
            nb = _subst_term(b, v, t)
            if w == v:
                return cls(w, nb, body)
            if w in _term_vars(t) and v in free_vars(body):
                nw = _fresh(w, free_vars(body) | _term_vars(t) | {v})
                body = substitute(body, w, Var(nw))
                w = nw
            return cls(w, nb, substitute(body, v, t))
        case All(w, body) | Ex(w, body):
            cls = type(f)
            if w == v or v not in free_vars(body):
                return f
            if w in _term_vars(t):
                nw = _fresh(w, free_vars(body) | _term_vars(t) | {v})
                body = substitute(body, w, Var(nw))
                w = nw
            return cls(w, substitute(body, v, t))
    raise TypeError(f"not a formula: {f!r}")


# -- relativization and boundedness ----------------------------------------


def relativize(f: Formula, bound: Term | str) -> Formula:
    """Bound every unbounded quantifier to a term or guard it by a class.

    For a class identifier C, universal bodies are guarded by implication
    and existential bodies by conjunction with ``x in C``.
    """
    if isinstance(bound, str):
        for cid in class_ids(f):
            if cid == bound:
                raise ValueError(f"formula already mentions class {bound}")

    def go(g: Formula) -> Formula:
        match g:
            case Falsum() | Eq() | Mem() | ClassMem():
                return g
            case And(l, r):
                return And(go(l), go(r))
            case Or(l, r):
                return Or(go(l), go(r))
            case Imp(l, r):
                return Imp(go(l), go(r))
            case BigAnd(parts):
                return BigAnd(tuple(go(p) for p in parts))
            case BigOr(parts):
                return BigOr(tuple(go(p) for p in parts))
            case BoundedAll(v, b, body):
                return BoundedAll(v, b, go(body))
            case BoundedEx(v, b, body):
                return BoundedEx(v, b, go(body))
            case All(v, body):
                if isinstance(bound, str):
                    return All(v, Imp(ClassMem(Var(v), bound), go(body)))
                return BoundedAll(v, bound, go(body))
            case Ex(v, body):
                if isinstance(bound, str):
                    return Ex(v, And(ClassMem(Var(v), bound), go(body)))
                return BoundedEx(v, bound, go(body))
        raise TypeError(f"not a formula: {g!r}")

    return go(f)


def is_bounded(f: Formula) -> bool:
    """True iff f has no unbounded quantifier."""
    match f:
        case Falsum() | Eq() | Mem() | ClassMem():
            return True
        case And(l, r) | Or(l, r) | Imp(l, r):
            return is_bounded(l) and is_bounded(r)
        case BigAnd(parts) | BigOr(parts):
            return all(is_bounded(p) for p in parts)
        case BoundedAll(_, _, body) | BoundedEx(_, _, body):
            return is_bounded(body)
        case All() | Ex():
            return False
    raise TypeError(f"not a formula: {f!r}")


def class_ids(f: Formula) -> set[str]:
    match f:
        case ClassMem(_, c):
            return {c}
        case And(l, r) | Or(l, r) | Imp(l, r):
            return class_ids(l) | class_ids(r)
        case BigAnd(parts) | BigOr(parts):
            return set().union(*(class_ids(p) for p in parts))
        case BoundedAll(_, _, body) | BoundedEx(_, _, body):
            return class_ids(body)
        case All(_, body) | Ex(_, body):
            return class_ids(body)
        case _:
            return set()


def subformulas(f: Formula):
    """All subformulas of f, including f itself (preorder)."""
    yield f
    match f:
        case And(l, r) | Or(l, r) | Imp(l, r):
            yield from subformulas(l)
            yield from subformulas(r)
        case BigAnd(parts) | BigOr(parts):
            for p in parts:
                yield from subformulas(p)
        case BoundedAll(_, _, body) | BoundedEx(_, _, body):
            yield from subformulas(body)
        case All(_, body) | Ex(_, body):
            yield from subformulas(body)


def alpha_canonical(f: Formula, _depth: int = 0, _ren: dict[str, str] | None = None) -> Formula:
    """Rename bound variables to a canonical v0,v1,... numbering by depth."""
    ren = _ren or {}

    def term(t: Term) -> Term:
        if isinstance(t, Var) and t.name in ren:
            return Var(ren[t.name])
        return t

    match f:
        case Falsum():
            return f
        case Eq(l, r):
            return Eq(term(l), term(r))
        case Mem(l, r):
            return Mem(term(l), term(r))
        case ClassMem(e, c):
            return ClassMem(term(e), c)
        case And(l, r) | Or(l, r) | Imp(l, r):
            cls = type(f)
            return cls(alpha_canonical(l, _depth, ren), alpha_canonical(r, _depth, ren))
        case BigAnd(parts) | BigOr(parts):
            cls = type(f)
            return cls(tuple(alpha_canonical(p, _depth, ren) for p in parts))
        case BoundedAll(v, b, body) | BoundedEx(v, b, body):
            cls = type(f)
            nv = f"v{_depth}"
            return cls(nv, term(b), alpha_canonical(body, _depth + 1, {**ren, v: nv}))
        case All(v, body) | Ex(v, body):
            cls = type(f)
            nv = f"v{_depth}"
            return cls(nv, alpha_canonical(body, _depth + 1, {**ren, v: nv}))
    raise TypeError(f"not a formula: {f!r}")


def alpha_eq(f: Formula, g: Formula) -> bool:
    return alpha_canonical(f) == alpha_canonical(g)
