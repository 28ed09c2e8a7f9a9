"""The thirteen fundamental set operations, term evaluation, the bounded
formula compiler, and the truncated definability/constructible stages.

The compiler turns a bounded formula with free variables x1..xn into a term
over the fundamental operations that computes, for any arguments a1..an,
the comprehension {<x_n,...,x_1> in a_n x ... x a_1 | phi(x1..xn)} (tuples
right-nested, 1-tuples being the element itself).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import hf
from .formula import (
    And, BigAnd, BigOr, BoundedAll, BoundedEx, Eq, Falsum, Formula, Imp, Lit,
    Mem, Or, Term, Var, free_vars, is_bounded,
)
from .hf import EMPTY, HFSet, BudgetExceeded

OP_SYMBOLS = (
    "p", "cap", "cup", "diff", "times", "imp", "forall",
    "dom", "ran", "123", "132", "eq", "mem",
)

_ARITY = {sym: (1 if sym == "cup" else 2) for sym in OP_SYMBOLS}


def _first(x: HFSet) -> HFSet | None:
    p = hf.unpair(x)
    return p[0] if p else None


def _second(x: HFSet) -> HFSet | None:
    p = hf.unpair(x)
    return p[1] if p else None


def _dom(x: HFSet) -> HFSet:
    return HFSet(p[0] for e in x if (p := hf.unpair(e)))


def _ran(x: HFSet) -> HFSet:
    return HFSet(p[1] for e in x if (p := hf.unpair(e)))


def _image_singleton(y: HFSet, z: HFSet) -> HFSet:
    """y"{z} = {u | <z,u> in y}."""
    return HFSet(p[1] for e in y if (p := hf.unpair(e)) and p[0] == z)


def fundamental_op(symbol: str, args: list[HFSet]) -> HFSet:
    """Apply one fundamental operation."""
    if symbol not in _ARITY:
        raise ValueError(f"unknown operation {symbol!r}")
    if len(args) != _ARITY[symbol]:
        raise ValueError(
            f"operation {symbol!r} takes {_ARITY[symbol]} arguments, got {len(args)}")
    match symbol:
        case "p":
            return hf.hfset(args[0], args[1])
        case "cap":
            # x cap bigcap y; bigcap of the empty family absorbs: result x
            x, y = args
            if not y:
                return x
            result = x
            for e in y:
                result = hf.intersection(result, e)
            return result
        case "cup":
            return hf.union(args[0])
        case "diff":
            return hf.difference(args[0], args[1])
        case "times":
            return hf.product(args[0], args[1])
        case "imp":
            x, y = args
            fst, snd = _first(y), _second(y)
            if fst is None:
                return HFSet()
            return HFSet(z for z in x if z not in fst or z in snd)
        case "forall":
            x, y = args
            return HFSet(_image_singleton(x, z) for z in y)
        case "dom":
            return _dom(args[0])
        case "ran":
            return _ran(args[0])
        case "123":
            x, y = args
            return HFSet(
                hf.kpair(p[0], hf.kpair(p[1], w))
                for e in x if (p := hf.unpair(e)) for w in y)
        case "132":
            x, y = args
            return HFSet(
                hf.kpair(p[0], hf.kpair(w, p[1]))
                for e in x if (p := hf.unpair(e)) for w in y)
        case "eq":
            x, y = args
            return HFSet(hf.kpair(v, u) for v in y for u in x if u == v)
        case "mem":
            x, y = args
            return HFSet(hf.kpair(v, u) for v in y for u in x if u in v)
    raise AssertionError


# -- operation terms -------------------------------------------------------


@dataclass(frozen=True)
class Arg:
    """Placeholder for the i-th argument (1-based)."""
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("argument indices start at 1")


@dataclass(frozen=True)
class App:
    op: str
    args: tuple["OpTerm", ...]

    def __post_init__(self):
        if self.op not in _ARITY:
            raise ValueError(f"unknown operation {self.op!r}")
        if len(self.args) != _ARITY[self.op]:
            raise ValueError(f"operation {self.op!r} arity mismatch")


OpTerm = Arg | App


def opterm_render(t: OpTerm) -> str:
    if isinstance(t, Arg):
        return f"#{t.index}"
    return f"F_{t.op}(" + ",".join(opterm_render(a) for a in t.args) + ")"


def eval_opterm(t: OpTerm, args: list[HFSet]) -> HFSet:
    if isinstance(t, Arg):
        if t.index > len(args):
            raise ValueError(f"argument index {t.index} out of range")
        return args[t.index - 1]
    return fundamental_op(t.op, [eval_opterm(a, args) for a in t.args])


def max_placeholder(t: OpTerm) -> int:
    if isinstance(t, Arg):
        return t.index
    return max((max_placeholder(a) for a in t.args), default=0)


# -- compiler --------------------------------------------------------------

# term-building shorthands


def _app(op: str, *args: OpTerm) -> App:
    return App(op, args)


def _pair(a: OpTerm, b: OpTerm) -> App:
    return _app("p", a, b)


def _inter(a: OpTerm, b: OpTerm) -> App:
    # x cap bigcap {y} = x cap y
    return _app("cap", a, _pair(b, b))


def _bunion(a: OpTerm, b: OpTerm) -> App:
    return _app("cup", _pair(a, b))


def _diff(a: OpTerm, b: OpTerm) -> App:
    return _app("diff", a, b)


def _rant(x: OpTerm) -> App:
    # ran/dom are binary with an ignored second argument
    return _app("ran", x, x)


def _domt(x: OpTerm) -> App:
    return _app("dom", x, x)


def _swap(r: OpTerm, a: OpTerm, b: OpTerm) -> App:
    """Invert a pair relation r <= a x b.

    Append a copy of the first coordinate (op 123 over r), intersect with
    the shape {<u,<w,u>>} (op 132 over the diagonal of a), and project to
    the range: ran{<u,<v,u>> | <u,v> in r} = {<v,u>}.
    """
    shape = _app("132", _app("eq", a, a), b)
    return _rant(_inter(_app("123", r, a), shape))


class CompileError(ValueError):
    pass


class _Compiler:
    def __init__(self):
        self.anchor = Arg(1)

    def empty(self) -> OpTerm:
        return _diff(self.anchor, self.anchor)

    def literal(self, value: HFSet) -> OpTerm:
        """A term denoting a fixed hereditarily finite set."""
        elems = [self.literal(e) for e in value]
        if not elems:
            return self.empty()
        acc = _pair(elems[0], elems[0])
        for e in elems[1:]:
            acc = _bunion(acc, _pair(e, e))
        return acc

    def prod(self, slots: list[OpTerm]) -> OpTerm:
        # slots[i-1] is the range of x_i; product a_m x (... x a_1)
        acc = slots[0]
        for s in slots[1:]:
            acc = _app("times", s, acc)
        return acc

    def single_var_atom(self, f: Formula, slot: OpTerm) -> OpTerm:
        """{x in slot | atom(x)} for an atom over one variable and literals."""
        match f:
            case Eq(Var(), Var()):
                return slot
            case Mem(Var(), Var()):
                return self.empty()  # x in x fails by foundation
            case Eq(Var(), Lit(c)) | Eq(Lit(c), Var()):
                single = self.literal(hf.hfset(c))
                return _app("cap", slot, _pair(single, single))
            case Mem(Var(), Lit(c)):
                return _inter(slot, self.literal(c))
            case Mem(Lit(c), Var()):
                # {x | c in x} = dom{<x,c> | c in x}
                return _domt(_app("mem", self.literal(hf.hfset(c)), slot))
        raise AssertionError(f"not a single-variable atom: {f!r}")

    def atom(self, f: Formula, slots: list[OpTerm], ctx: dict[str, int]) -> OpTerm:
        def index(t: Term) -> int:
            # 0 for literals
            if isinstance(t, Lit):
                return 0
            if t.name not in ctx:
                raise CompileError(f"free variable {t.name} not among x1..xn")
            return ctx[t.name]

        left, right = f.left, f.right
        i, j = index(left), index(right)
        m = len(slots)
        if i == 0 and j == 0:
            truth = (left.value == right.value) if isinstance(f, Eq) \
                else (left.value in right.value)
            return self.prod(slots) if truth else self.empty()
        top = max(i, j)
        if top < m:
            # x_m unconstrained: strip it and pad with its slot
            inner = self.atom(f, slots[:-1], ctx)
            return _app("times", slots[-1], inner)
        low = min(i, j)
        if low == top:
            # both sides are x_m
            rel = self.single_var_atom(f, slots[-1])
            return rel if m == 1 else _app("times", rel, self.prod(slots[:-1]))
        if low == 0:
            # x_m against a literal
            lit_atom = f  # shape already has one Var, one Lit
            rel = self.single_var_atom(lit_atom, slots[-1])
            return rel if m == 1 else _app("times", rel, self.prod(slots[:-1]))
        # x_m against x_low: build the pair relation {<x_m, x_low>}
        s_top, s_low = slots[top - 1], slots[low - 1]
        if isinstance(f, Eq):
            r2 = _app("eq", s_low, s_top)
        elif i == low:
            # member is the inner variable: container first, directly buildable
            r2 = _app("mem", s_low, s_top)
        else:
            # member is the outer variable: build the good orientation and swap
            r2 = _swap(_app("mem", s_top, s_low), s_low, s_top)
        t = r2 if low == 1 else _app("123", r2, self.prod(slots[:low - 1]))
        for k in range(low + 1, top):
            t = _app("132", t, slots[k - 1])
        return t

    def compile(self, f: Formula, slots: list[OpTerm], ctx: dict[str, int]) -> OpTerm:
        match f:
            case Falsum():
                return self.empty()
            case Eq() | Mem():
                return self.atom(f, slots, ctx)
            case And(l, r):
                return _inter(self.compile(l, slots, ctx), self.compile(r, slots, ctx))
            case Or(l, r):
                return _bunion(self.compile(l, slots, ctx), self.compile(r, slots, ctx))
            case Imp(l, r):
                holds = self.compile(r, slots, ctx)
                fails = _diff(self.prod(slots), self.compile(l, slots, ctx))
                return _bunion(fails, holds)
            case BigAnd(parts):
                acc = self.compile(parts[0], slots, ctx)
                for part in parts[1:]:
                    acc = _inter(acc, self.compile(part, slots, ctx))
                return acc
            case BigOr(parts):
                acc = self.compile(parts[0], slots, ctx)
                for part in parts[1:]:
                    acc = _bunion(acc, self.compile(part, slots, ctx))
                return acc
            case BoundedEx(v, b, body) | BoundedAll(v, b, body):
                if isinstance(b, Lit):
                    slot = self.literal(b.value)
                    inner = body
                else:
                    if b.name not in ctx:
                        raise CompileError(f"free variable {b.name} not among x1..xn")
                    slot = _app("cup", slots[ctx[b.name] - 1])
                    guard = Mem(Var(v), b)
                    inner = And(guard, body) if isinstance(f, BoundedEx) \
                        else Imp(guard, body)
                new_ctx = {**ctx, v: len(slots) + 1}
                s = self.compile(inner, slots + [slot], new_ctx)
                if isinstance(f, BoundedEx):
                    return _rant(s)
                # P_m cap bigcap of the sections of s by the bound's elements;
                # an empty bound makes the bigcap absorb, leaving P_m
                return _app("cap", self.prod(slots), _app("forall", s, slot))
        raise CompileError("formula contains an unbounded quantifier")


def compile_bounded(f: Formula, arity: int) -> OpTerm:
    """Compile a bounded formula over free variables x1..x<arity>."""
    if arity < 1:
        raise CompileError("arity must be at least 1")
    if not is_bounded(f):
        raise CompileError("formula contains an unbounded quantifier")
    expected = {f"x{i}" for i in range(1, arity + 1)}
    fv = free_vars(f)
    if fv != expected:
        raise CompileError(
            f"free variables {sorted(fv)} do not match x1..x{arity}")
    ctx = {f"x{i}": i for i in range(1, arity + 1)}
    slots: list[OpTerm] = [Arg(i) for i in range(1, arity + 1)]
    # note: variables shadowed by inner quantifiers are handled by ctx override
    return _Compiler().compile(f, slots, ctx)


# -- definability and constructible stages ---------------------------------


def _arg_tuples(a: HFSet, symbol: str):
    elems = list(a)
    if _ARITY[symbol] == 1:
        return ([x] for x in elems)
    return ([x, y] for x in elems for y in elems)


def expand(a: HFSet, max_size: int | None = None) -> HFSet:
    """a plus every fundamental-operation value on argument tuples from a."""
    out = list(a)
    for symbol in OP_SYMBOLS:
        for args in _arg_tuples(a, symbol):
            out.append(fundamental_op(symbol, args))
            if max_size is not None and len(out) > max_size * 8:
                break
    result = HFSet(out)
    if max_size is not None and len(result) > max_size:
        raise BudgetExceeded(f"expansion exceeds {max_size} elements")
    return result


def define_step(a: HFSet, max_size: int | None = None) -> HFSet:
    """One definability step: expand(a with a itself adjoined)."""
    return expand(hf.binary_union(a, hf.hfset(a)), max_size)


def def_stage(a: HFSet, k: int, max_size: int | None = 4096) -> HFSet:
    """Union of the first k definability iterates (truncation of the full
    omega-union)."""
    acc = a
    cur = a
    for _ in range(k):
        cur = define_step(cur, max_size)
        acc = hf.binary_union(acc, cur)
        if max_size is not None and len(acc) > max_size:
            raise BudgetExceeded(f"stage exceeds {max_size} elements")
    return acc


def l_stage(alpha: int, k: int, max_size: int | None = 4096) -> HFSet:
    """Truncated constructible stage: union over beta < alpha of the
    truncated definability closure of the previous stage."""
    stages = [EMPTY]
    for _ in range(alpha):
        cur = EMPTY
        for prev in stages:
            cur = hf.binary_union(cur, def_stage(prev, k, max_size))
        if max_size is not None and len(cur) > max_size:
            raise BudgetExceeded(f"stage exceeds {max_size} elements")
        stages.append(cur)
    return stages[alpha]


def hereditary_add(alpha: int, gamma: int) -> int:
    """Hereditary ordinal addition on finite ordinals."""
    if alpha < 0 or gamma < 0:
        raise ValueError("finite ordinals only")
    memo: dict[int, int] = {}

    def go(a: int) -> int:
        if a in memo:
            return memo[a]
        inner = HFSet()
        for beta in range(a):
            inner = hf.binary_union(inner, hf.von_neumann(go(beta)))
        inner = hf.binary_union(inner, hf.hfset(hf.von_neumann(a)))
        base = hf.to_ordinal(inner)
        if base is None:
            raise AssertionError("hereditary sum left the ordinals")
        memo[a] = base + gamma
        return memo[a]

    return go(alpha)
