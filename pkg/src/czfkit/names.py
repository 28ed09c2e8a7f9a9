"""Heyting-valued names over a finite formal topology and the forcing
interpretation of set-theoretic formulas.

A name is a finite function from previously built names to frame elements;
the value records how strongly the key is a member.  Interpretation follows
the usual recursion: equality unfolds to mutual inclusion weighted by
membership degrees, membership to a weighted join over the candidate's
entries, and quantifiers range over a finite universe of names built up to
a fixed depth.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import topology as tp
from .formula import (
    All, And, BigAnd, BigOr, BoundedAll, BoundedEx, ClassMem, Eq, Ex, Falsum,
    Formula, Imp, Lit, Mem, Or, Term, Var,
)
from .hf import BudgetExceeded, HFSet
from .topology import FormalTopology, FrameElement


@dataclass(frozen=True)
class Name:
    entries: tuple[tuple["Name", FrameElement], ...]

    def keys(self):
        return [x for x, _ in self.entries]

    def value(self, key: "Name") -> FrameElement:
        for x, p in self.entries:
            if x == key:
                return p
        return frozenset()

    def depth(self) -> int:
        if not self.entries:
            return 0
        return 1 + max(x.depth() for x, _ in self.entries)


def serialize_name(n: Name) -> str:
    parts = [f"{serialize_name(x)}->{tp.render_frame_element(p)}"
             for x, p in n.entries]
    return "(" + ",".join(parts) + ")"


def make_name(entries) -> Name:
    """Builds a name with sorted, functional entries.  Identical duplicate
    entries collapse; conflicting values for one key are an error."""
    seen: dict[str, tuple[Name, FrameElement]] = {}
    for x, p in entries:
        key = serialize_name(x)
        if key in seen and seen[key][1] != p:
            raise ValueError(f"conflicting values for entry {key}")
        seen[key] = (x, frozenset(p))
    return Name(tuple(v for _, v in sorted(seen.items())))


EMPTY_NAME = Name(())


@dataclass(frozen=True)
class ClassName:
    """A class-sized name: same shape as a name but never a quantifier
    range and never a member of anything."""
    entries: tuple[tuple[Name, FrameElement], ...]


def make_class_name(entries) -> ClassName:
    return ClassName(make_name(entries).entries)


@dataclass(frozen=True)
class NameUniverse:
    topology: FormalTopology
    depth: int
    names: tuple[Name, ...]


def name_universe(t: FormalTopology, depth: int,
                  max_count: int = 100000) -> NameUniverse:
    """All names over t of the given depth or less."""
    frames = tp.frame_elements(t)
    current: list[Name] = [EMPTY_NAME]
    for _ in range(depth):
        per_key = len(frames) + 1
        total = per_key ** len(current)
        if total > max_count:
            raise BudgetExceeded(
                f"{total} names at the next depth exceed {max_count}")
        nxt = []
        for combo in itertools.product(range(per_key), repeat=len(current)):
            entries = [(current[i], frames[c - 1])
                       for i, c in enumerate(combo) if c > 0]
            nxt.append(make_name(entries))
        current = nxt
    ordered = sorted(set(current), key=serialize_name)
    return NameUniverse(t, depth, tuple(ordered))


def check_name(x: HFSet, t: FormalTopology) -> Name:
    """The canonical name of a hereditarily finite set: every hereditary
    member appears with full weight."""
    return make_name((check_name(y, t), tp.top(t)) for y in x)


def up(a: Name, b: Name, t: FormalTopology) -> Name:
    """The unordered pair name {a,b} with full membership weights."""
    return make_name([(a, tp.top(t)), (b, tp.top(t))])


def op(a: Name, b: Name, t: FormalTopology) -> Name:
    """The ordered pair name {{a},{a,b}}."""
    return up(up(a, a, t), up(a, b, t), t)


class Interpreter:
    """Forcing values of formulas over a fixed finite name universe.

    Equality values are memoized; the recursion is well founded because
    entries of a name are strictly shallower than the name."""

    def __init__(self, universe: NameUniverse):
        self.u = universe
        self.t = universe.topology
        self._eq: dict[tuple[Name, Name], FrameElement] = {}
        self._mem: dict[tuple[Name, Name], FrameElement] = {}
        self._check: dict[HFSet, Name] = {}

    def term_name(self, term: Term, env: dict) -> Name:
        if isinstance(term, Lit):
            if term.value not in self._check:
                self._check[term.value] = check_name(term.value, self.t)
            return self._check[term.value]
        try:
            val = env[term.name]
        except KeyError:
            raise ValueError(f"unassigned variable {term.name}") from None
        if not isinstance(val, Name):
            raise ValueError(f"{term.name} is bound to a class name; class "
                             "names cannot appear in term position here")
        return val

    def eq(self, a: Name, b: Name) -> FrameElement:
        key = (a, b)
        if key in self._eq:
            return self._eq[key]
        t = self.t
        conjuncts = []
        for x, px in a.entries:
            conjuncts.append(tp.implies(t, px, self.mem(x, b)))
        for y, qy in b.entries:
            conjuncts.append(tp.implies(t, qy, self.mem(y, a)))
        out = tp.big_meet(t, conjuncts)
        self._eq[key] = out
        self._eq[(b, a)] = out
        return out

    def mem(self, a: Name, b: Name) -> FrameElement:
        key = (a, b)
        if key in self._mem:
            return self._mem[key]
        t = self.t
        out = tp.big_join(t, (tp.meet(t, q, self.eq(a, y))
                              for y, q in b.entries))
        self._mem[key] = out
        return out

    def class_mem(self, a: Name, cls: ClassName) -> FrameElement:
        t = self.t
        return tp.big_join(t, (tp.meet(t, q, self.eq(a, y))
                               for y, q in cls.entries))

    def value(self, f: Formula, env: dict | None = None) -> FrameElement:
        env = env or {}
        t = self.t
        match f:
            case Falsum():
                return tp.bottom(t)
            case Eq(l, r):
                return self.eq(self.term_name(l, env), self.term_name(r, env))
            case Mem(l, r):
                return self.mem(self.term_name(l, env), self.term_name(r, env))
            case ClassMem(term, cls):
                binding = env.get(cls)
                if not isinstance(binding, ClassName):
                    raise ValueError(f"class symbol {cls} is not bound to a "
                                     "class name")
                return self.class_mem(self.term_name(term, env), binding)
            case And(l, r):
                return tp.meet(t, self.value(l, env), self.value(r, env))
            case Or(l, r):
                return tp.join(t, self.value(l, env), self.value(r, env))
            case Imp(l, r):
                return tp.implies(t, self.value(l, env), self.value(r, env))
            case BigAnd(parts):
                return tp.big_meet(t, (self.value(p, env) for p in parts))
            case BigOr(parts):
                return tp.big_join(t, (self.value(p, env) for p in parts))
            case BoundedAll(v, b, body):
                bn = self.term_name(b, env)
                return tp.big_meet(
                    t, (tp.implies(t, p, self.value(body, {**env, v: x}))
                        for x, p in bn.entries))
            case BoundedEx(v, b, body):
                bn = self.term_name(b, env)
                return tp.big_join(
                    t, (tp.meet(t, p, self.value(body, {**env, v: x}))
                        for x, p in bn.entries))
            case All(v, body):
                return tp.big_meet(t, (self.value(body, {**env, v: n})
                                       for n in self.u.names))
            case Ex(v, body):
                return tp.big_join(t, (self.value(body, {**env, v: n})
                                       for n in self.u.names))
        raise TypeError(f"not a formula: {f!r}")


def interpret(f: Formula, env: dict | None, u: NameUniverse) -> FrameElement:
    return Interpreter(u).value(f, env)


def interpret_relativized(f: Formula, env: dict | None, sub: NameUniverse,
                          full: NameUniverse):
    """Forcing values with quantifiers ranging over a subuniverse versus the
    full universe; the subuniverse must be included in the full one."""
    if not set(sub.names) <= set(full.names):
        raise ValueError("subuniverse is not included in the full universe")
    if sub.topology is not full.topology and \
            (sub.topology.carrier != full.topology.carrier
             or sub.topology.order != full.topology.order
             or sub.topology.cover != full.topology.cover):
        raise ValueError("universes live over different topologies")
    return interpret(f, env, sub), interpret(f, env, full)


def class_equal(a: ClassName, b: ClassName, u: NameUniverse) -> FrameElement:
    """Extensional equality of two class names, by the same two-conjunct
    recipe as name equality."""
    it = Interpreter(u)
    t = u.topology
    conjuncts = []
    for x, px in a.entries:
        conjuncts.append(tp.implies(t, px, it.class_mem(x, b)))
    for y, qy in b.entries:
        conjuncts.append(tp.implies(t, qy, it.class_mem(y, a)))
    return tp.big_meet(t, conjuncts)


# -- constructions with verified properties --------------------------------


def collection_value(it: Interpreter, a: Name, r: Name,
                     b: Name | None = None) -> FrameElement:
    """Forcing value of "r is a multi-valued function from a onto b", with
    pairs spelled as ordered-pair names inside r.  With b omitted the
    target is the whole universe and only totality is measured."""
    t = it.t
    parts = []
    if b is None:
        for x, px in a.entries:
            hit = tp.big_join(t, (it.mem(op(x, y, t), r) for y in it.u.names))
            parts.append(tp.implies(t, px, hit))
        return tp.big_meet(t, parts)
    for x, px in a.entries:
        hit = tp.big_join(t, (tp.meet(t, qy, it.mem(op(x, y, t), r))
                              for y, qy in b.entries))
        parts.append(tp.implies(t, px, hit))
    for y, qy in b.entries:
        hit = tp.big_join(t, (tp.meet(t, px, it.mem(op(x, y, t), r))
                              for x, px in a.entries))
        parts.append(tp.implies(t, qy, hit))
    return tp.big_meet(t, parts)


def strong_collection_witness(a: Name, r: Name, p: FrameElement,
                              u: NameUniverse,
                              it: Interpreter | None = None) -> Name:
    """Builds the image name for strong collection.

    Requires p to force that r is total on a over the universe; collects
    the triples (entry of a, candidate name, token) whose token lies under
    the combined weight, and returns the name assembling the candidates
    with saturated token sets as weights.  Forcing totality both ways from
    p onto the result is a theorem checked in the test suite; an empty p
    yields the empty name.
    """
    if it is None:
        it = Interpreter(u)
    t = u.topology
    pre = collection_value(it, a, r)
    if not p <= pre:
        raise ValueError("p does not force totality of the relation on a")
    if not p:
        return EMPTY_NAME
    collected: dict[Name, set] = {}
    for x, px in a.entries:
        for y in u.names:
            weight = tp.big_meet(t, [p, px, it.mem(op(x, y, t), r)])
            for z in weight:
                collected.setdefault(y, set()).add(z)
    return make_name((y, tp.nucleus(t, frozenset(zs)))
                     for y, zs in collected.items() if zs)


def powerset_name(a: Name, u: NameUniverse,
                  max_count: int = 100000) -> Name:
    """The name whose entries are all frame-valued functions on the entries
    of a, each with full weight; it forces every subset of a to equal one
    of its members."""
    t = u.topology
    frames = tp.frame_elements(t)
    keys = a.keys()
    total = len(frames) ** len(keys)
    if total > max_count:
        raise BudgetExceeded(f"{total} candidate subsets exceed {max_count}")
    entries = []
    for combo in itertools.product(frames, repeat=len(keys)):
        sub = make_name((keys[i], combo[i]) for i in range(len(keys))
                        if combo[i])
        entries.append((sub, tp.top(t)))
    return make_name(entries)


def subset_value(it: Interpreter, c: Name, a: Name) -> FrameElement:
    """Forcing value of "c is a subset of a"."""
    t = it.t
    return tp.big_meet(t, (tp.implies(t, px, it.mem(x, a))
                           for x, px in c.entries))


# -- text interchange ------------------------------------------------------


def parse_name(text: str) -> Name:
    name, pos = _parse_name_at(text, 0)
    if text[pos:].strip():
        raise ValueError(f"trailing input after name: {text[pos:]!r}")
    return name


def _parse_name_at(text: str, pos: int) -> tuple[Name, int]:
    def skip(i):
        while i < len(text) and text[i].isspace():
            i += 1
        return i

    pos = skip(pos)
    if pos >= len(text) or text[pos] != "(":
        raise ValueError(f"expected '(' at position {pos}")
    pos = skip(pos + 1)
    entries = []
    if pos < len(text) and text[pos] == ")":
        return make_name(entries), pos + 1
    while True:
        key, pos = _parse_name_at(text, pos)
        pos = skip(pos)
        if text[pos:pos + 2] != "->":
            raise ValueError(f"expected '->' at position {pos}")
        pos = skip(pos + 2)
        if pos >= len(text) or text[pos] != "{":
            raise ValueError(f"expected frame element at position {pos}")
        end = text.index("}", pos)
        val = tp.parse_frame_element(text[pos:end + 1])
        entries.append((key, val))
        pos = skip(end + 1)
        if pos < len(text) and text[pos] == ",":
            pos = skip(pos + 1)
            continue
        if pos < len(text) and text[pos] == ")":
            return make_name(entries), pos + 1
        raise ValueError(f"expected ',' or ')' at position {pos}")
