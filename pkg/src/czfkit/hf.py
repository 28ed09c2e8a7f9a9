"""Canonical hereditarily finite sets.

An HFSet is an immutable, deduplicated, canonically ordered finite set of
HFSets.  Structural equality coincides with extensional equality, and the
serialization defined here (``{a,b,...}`` with elements sorted bytewise by
their own serializations) is the interchange format used by the CLI and the
test fixtures.
"""

from __future__ import annotations

import functools
from typing import Iterable, Iterator


class BudgetExceeded(Exception):
    """A configured size budget was exceeded."""


@functools.total_ordering
class HFSet:
    """A hereditarily finite set in canonical form."""

    __slots__ = ("_elems", "_repr", "_hash")

    def __init__(self, elems: Iterable["HFSet"] = ()):
        uniq = {}
        for e in elems:
            if not isinstance(e, HFSet):
                raise TypeError(f"HFSet elements must be HFSets, got {e!r}")
            uniq[e.serialize()] = e
        ordered = sorted(uniq)
        self._elems = tuple(uniq[k] for k in ordered)
        self._repr = "{" + ",".join(ordered) + "}"
        self._hash = hash(self._repr)

    # -- canonical form ----------------------------------------------------

    def serialize(self) -> str:
        return self._repr

    def __repr__(self) -> str:
        return self._repr

    def __eq__(self, other) -> bool:
        return isinstance(other, HFSet) and self._repr == other._repr

    def __lt__(self, other) -> bool:
        if not isinstance(other, HFSet):
            return NotImplemented
        return self._repr < other._repr

    def __hash__(self) -> int:
        return self._hash

    # -- set protocol ------------------------------------------------------

    def __iter__(self) -> Iterator["HFSet"]:
        return iter(self._elems)

    def __len__(self) -> int:
        return len(self._elems)

    def __contains__(self, x) -> bool:
        return isinstance(x, HFSet) and any(e == x for e in self._elems)

    def __bool__(self) -> bool:
        return bool(self._elems)

    def elements(self) -> tuple["HFSet", ...]:
        return self._elems

    def is_subset(self, other: "HFSet") -> bool:
        return all(e in other for e in self)

    # -- derived data ------------------------------------------------------

    def rank(self) -> int:
        return max((e.rank() + 1 for e in self._elems), default=0)

    def is_transitive(self) -> bool:
        return all(e.is_subset(self) for e in self)

    def transitive_closure(self) -> "HFSet":
        acc: list[HFSet] = []
        for e in self:
            acc.append(e)
            acc.extend(e.transitive_closure())
        return HFSet(acc)


EMPTY = HFSet()


def hfset(*elems: HFSet) -> HFSet:
    return HFSet(elems)


def parse_hf(text: str) -> HFSet:
    """Parse the canonical brace notation, e.g. ``{{},{{}}}``."""
    s, pos = _parse_hf_at(text, _skip_ws(text, 0))
    pos = _skip_ws(text, pos)
    if pos != len(text):
        raise ValueError(f"trailing input at position {pos}: {text[pos:]!r}")
    return s


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _parse_hf_at(text: str, pos: int) -> tuple[HFSet, int]:
    if pos >= len(text) or text[pos] != "{":
        raise ValueError(f"expected '{{' at position {pos}")
    pos = _skip_ws(text, pos + 1)
    elems: list[HFSet] = []
    if pos < len(text) and text[pos] == "}":
        return HFSet(), pos + 1
    while True:
        e, pos = _parse_hf_at(text, pos)
        elems.append(e)
        pos = _skip_ws(text, pos)
        if pos >= len(text):
            raise ValueError("unterminated set literal")
        if text[pos] == ",":
            pos = _skip_ws(text, pos + 1)
        elif text[pos] == "}":
            return HFSet(elems), pos + 1
        else:
            raise ValueError(f"expected ',' or '}}' at position {pos}")


# -- common constructions --------------------------------------------------


def union(s: HFSet) -> HFSet:
    return HFSet(x for e in s for x in e)


def binary_union(a: HFSet, b: HFSet) -> HFSet:
    return HFSet(list(a) + list(b))


def intersection(a: HFSet, b: HFSet) -> HFSet:
    return HFSet(e for e in a if e in b)


def difference(a: HFSet, b: HFSet) -> HFSet:
    return HFSet(e for e in a if e not in b)


def kpair(a: HFSet, b: HFSet) -> HFSet:
    """Kuratowski ordered pair {{a},{a,b}}."""
    return hfset(hfset(a), hfset(a, b))


def unpair(p: HFSet) -> tuple[HFSet, HFSet] | None:
    """Invert kpair; None if p is not an ordered pair."""
    if len(p) == 1:
        (inner,) = p
        if len(inner) == 1:
            (a,) = inner
            return a, a
        return None
    if len(p) == 2:
        e1, e2 = p.elements()
        if len(e1) == 1 and len(e2) == 2:
            single, double = e1, e2
        elif len(e2) == 1 and len(e1) == 2:
            single, double = e2, e1
        else:
            return None
        (a,) = single
        if a not in double:
            return None
        rest = [x for x in double if x != a]
        if len(rest) != 1:
            return None
        return a, rest[0]
    return None


def tuple_right(elems: list[HFSet]) -> HFSet:
    """Right-nested tuple <u,v,w> = <u,<v,w>>; a 1-tuple is the element."""
    if not elems:
        raise ValueError("empty tuple has no encoding")
    acc = elems[-1]
    for e in reversed(elems[:-1]):
        acc = kpair(e, acc)
    return acc


def product(a: HFSet, b: HFSet) -> HFSet:
    return HFSet(kpair(x, y) for x in a for y in b)


def powerset(s: HFSet) -> HFSet:
    elems = list(s)
    out = []
    for mask in range(1 << len(elems)):
        out.append(HFSet(e for i, e in enumerate(elems) if mask >> i & 1))
    return HFSet(out)


def subsets(s: HFSet) -> Iterator[HFSet]:
    elems = list(s)
    for mask in range(1 << len(elems)):
        yield HFSet(e for i, e in enumerate(elems) if mask >> i & 1)


def von_neumann(n: int) -> HFSet:
    s = HFSet()
    for _ in range(n):
        s = HFSet(list(s) + [s])
    return s


def to_ordinal(s: HFSet) -> int | None:
    """The n with s = von_neumann(n), or None."""
    for n in range(len(s) + 1):
        if von_neumann(n) == s:
            return n
    return None


def v_stage(n: int) -> HFSet:
    """Finite cumulative stage: V_0 = empty, V_{n+1} = powerset(V_n)."""
    s = HFSet()
    for _ in range(n):
        s = powerset(s)
    return s
