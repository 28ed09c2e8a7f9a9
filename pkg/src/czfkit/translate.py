"""The double-negation translation and its semantic form.

Two modes: the syntactic Goedel-Gentzen translation wraps atoms,
disjunctions and existentials in double negations and leaves the other
connectives alone; the semantic mode evaluates atoms by forcing over the
double-negation topology and combines the results with classical truth
functions, which is what the translation denotes there.
"""

from __future__ import annotations

import enum

from . import topology as tp
from .formula import (
    All, And, BigAnd, BigOr, BoundedAll, BoundedEx, ClassMem, Eq, Ex, Falsum,
    Formula, Imp, Mem, Or, neg,
)
from .names import Interpreter, NameUniverse


class AtomicMode(enum.Enum):
    SEMANTIC = "semantic"
    GOEDEL_GENTZEN = "goedel-gentzen"


def _dneg(f: Formula) -> Formula:
    return neg(neg(f))


def dn_translate(f: Formula, mode: AtomicMode = AtomicMode.GOEDEL_GENTZEN,
                 u: NameUniverse | None = None, env: dict | None = None):
    """The double-negation translation.

    In Goedel-Gentzen mode the result is a Formula with double negations
    over atoms, disjunctions and existentials.  In semantic mode atoms are
    evaluated by forcing over the supplied universe and the result is the
    truth value of the translated formula."""
    if mode is AtomicMode.GOEDEL_GENTZEN:
        return _gg(f)
    if u is None:
        raise ValueError("semantic mode needs a name universe")
    return semantic_translate(f, env, Interpreter(u))


def _gg(f: Formula) -> Formula:
    """The Goedel-Gentzen translation as a formula transformer."""
    match f:
        case Falsum():
            return f
        case Eq() | Mem() | ClassMem():
            return _dneg(f)
        case And(l, r):
            return And(_gg(l), _gg(r))
        case Or(l, r):
            return _dneg(Or(_gg(l), _gg(r)))
        case Imp(l, r):
            return Imp(_gg(l), _gg(r))
        case BigAnd(parts):
            return BigAnd(tuple(_gg(p) for p in parts))
        case BigOr(parts):
            return _dneg(BigOr(tuple(_gg(p) for p in parts)))
        case BoundedAll(v, b, body):
            return BoundedAll(v, b, _gg(body))
        case BoundedEx(v, b, body):
            return _dneg(BoundedEx(v, b, _gg(body)))
        case All(v, body):
            return All(v, _gg(body))
        case Ex(v, body):
            return _dneg(Ex(v, body=_gg(body)))
    raise TypeError(f"not a formula: {f!r}")


def semantic_translate(f: Formula, env: dict | None,
                       it: Interpreter) -> bool:
    """Classical truth of the translated formula: atoms become "forced with
    top value", the connectives and quantifiers are read classically."""
    env = env or {}
    top = tp.top(it.t)
    match f:
        case Falsum():
            return False
        case Eq() | Mem() | ClassMem():
            return it.value(f, env) == top
        case And(l, r):
            return (semantic_translate(l, env, it)
                    and semantic_translate(r, env, it))
        case Or(l, r):
            return (semantic_translate(l, env, it)
                    or semantic_translate(r, env, it))
        case Imp(l, r):
            return ((not semantic_translate(l, env, it))
                    or semantic_translate(r, env, it))
        case BigAnd(parts):
            return all(semantic_translate(p, env, it) for p in parts)
        case BigOr(parts):
            return any(semantic_translate(p, env, it) for p in parts)
        case BoundedAll(v, b, body):
            bn = it.term_name(b, env)
            return all(semantic_translate(body, {**env, v: x}, it)
                       for x, p in bn.entries if p == top)
        case BoundedEx(v, b, body):
            bn = it.term_name(b, env)
            return any(semantic_translate(body, {**env, v: x}, it)
                       for x, p in bn.entries if p == top)
        case All(v, body):
            return all(semantic_translate(body, {**env, v: n}, it)
                       for n in it.u.names)
        case Ex(v, body):
            return any(semantic_translate(body, {**env, v: n}, it)
                       for n in it.u.names)
    raise TypeError(f"not a formula: {f!r}")


def semantic_coincidence_check(f: Formula, env: dict | None,
                               u: NameUniverse) -> bool:
    """Over the double-negation topology the classical reading of the
    translation must agree with forcing the formula itself with top value.
    Returns True when the two verdicts agree."""
    if u.topology.carrier != tp.omega().carrier \
            or u.topology.cover != tp.omega().cover:
        raise ValueError("coincidence holds over the double-negation "
                         "topology; pass a universe over it")
    it = Interpreter(u)
    classical = semantic_translate(f, env, it)
    forced = it.value(f, env) == tp.top(u.topology)
    return classical == forced
