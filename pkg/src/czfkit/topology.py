"""Finite formal topologies and the complete Heyting algebras they present.

A formal topology here is a finite carrier with a preorder and an explicit
cover table listing, for every token a and every subset p of the carrier,
whether a is covered by p.  The frame of the topology consists of the
stable lower subsets; meets are intersections, joins are saturations of
unions, and Heyting implication is computed by joining the principal
saturations that land under the right-hand side.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

FrameElement = frozenset  # frozenset[str], a stable lower subset


class TopologyError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    axiom: str
    detail: str


@dataclass(frozen=True)
class FormalTopology:
    carrier: tuple[str, ...]
    order: frozenset[tuple[str, ...]]  # pairs (a, b) meaning a below b
    cover: dict[tuple[str, frozenset], bool] = field(hash=False)

    def __post_init__(self):
        if len(set(self.carrier)) != len(self.carrier):
            raise TopologyError("carrier tokens must be distinct")
        if len(self.carrier) > 10:
            raise TopologyError("carrier larger than 10 tokens is out of budget")
        for a, b in self.order:
            if a not in self.carrier or b not in self.carrier:
                raise TopologyError(f"order pair ({a},{b}) off the carrier")
        for (a, p) in self.cover:
            if a not in self.carrier or not p <= set(self.carrier):
                raise TopologyError("cover row off the carrier")

    def below(self, a: str, b: str) -> bool:
        return (a, b) in self.order

    def covers(self, a: str, p: frozenset) -> bool:
        return self.cover.get((a, frozenset(p)), False)

    def down(self, p) -> frozenset:
        return frozenset(x for x in self.carrier
                         if any(self.below(x, c) for c in p))

    def subsets(self):
        for r in range(len(self.carrier) + 1):
            for combo in itertools.combinations(self.carrier, r):
                yield frozenset(combo)


def validate(t: FormalTopology) -> list[Violation]:
    """Checks the preorder laws and the four cover axioms, returning every
    violation found with the witnessing tokens and subsets."""
    out: list[Violation] = []
    for a in t.carrier:
        if not t.below(a, a):
            out.append(Violation("order-reflexive", f"{a}"))
    for a, b, c in itertools.product(t.carrier, repeat=3):
        if t.below(a, b) and t.below(b, c) and not t.below(a, c):
            out.append(Violation("order-transitive", f"{a} {b} {c}"))
    subs = list(t.subsets())
    for a in t.carrier:
        for p in subs:
            if a in p and not t.covers(a, p):
                out.append(Violation("reflexivity", f"{a} in {sorted(p)}"))
    for a, b in itertools.product(t.carrier, repeat=2):
        if not t.below(a, b):
            continue
        for p in subs:
            if t.covers(b, p) and not t.covers(a, p):
                out.append(Violation("order-compat",
                                     f"{a} below {b}, p={sorted(p)}"))
    for a in t.carrier:
        for p, q in itertools.product(subs, repeat=2):
            if (t.covers(a, p) and all(t.covers(x, q) for x in p)
                    and not t.covers(a, q)):
                out.append(Violation("transitivity",
                                     f"{a} p={sorted(p)} q={sorted(q)}"))
            if t.covers(a, p) and t.covers(a, q):
                meet = t.down(p) & t.down(q)
                if not t.covers(a, meet):
                    out.append(Violation("stability",
                                         f"{a} p={sorted(p)} q={sorted(q)}"))
    return out


def nucleus(t: FormalTopology, p) -> FrameElement:
    """The saturation of p: all tokens covered by p."""
    p = frozenset(p)
    return frozenset(a for a in t.carrier if t.covers(a, p))


def frame_elements(t: FormalTopology) -> list[FrameElement]:
    """All stable lower subsets, in a fixed order."""
    out = []
    for p in t.subsets():
        if t.down(p) == p and nucleus(t, p) == p:
            out.append(p)
    return sorted(out, key=lambda p: (len(p), sorted(p)))


def top(t: FormalTopology) -> FrameElement:
    return nucleus(t, frozenset(t.carrier))


def bottom(t: FormalTopology) -> FrameElement:
    return nucleus(t, frozenset())


def meet(t: FormalTopology, p: FrameElement, q: FrameElement) -> FrameElement:
    return p & q


def join(t: FormalTopology, p: FrameElement, q: FrameElement) -> FrameElement:
    return nucleus(t, p | q)


def _generators(t: FormalTopology) -> list[FrameElement]:
    return [nucleus(t, frozenset([s])) for s in t.carrier]


def implies(t: FormalTopology, p: FrameElement, q: FrameElement) -> FrameElement:
    """Largest r with r meet p below q, joined from principal generators."""
    useful = [g for g in _generators(t) if g & p <= q]
    return big_join(t, useful)


def big_meet(t: FormalTopology, ps) -> FrameElement:
    out = top(t)
    for p in ps:
        out = out & p
    return out


def big_join(t: FormalTopology, ps) -> FrameElement:
    acc: frozenset = frozenset()
    for p in ps:
        acc = acc | p
    return nucleus(t, acc)


def leq(t: FormalTopology, p: FrameElement, q: FrameElement) -> bool:
    return p <= q


# -- constructions ---------------------------------------------------------


def from_poset(elements, order_pairs) -> FormalTopology:
    """The topology of a poset: covering is membership in the down-set."""
    elements = tuple(elements)
    order = set(order_pairs)
    for a in elements:
        order.add((a, a))
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(order), repeat=2):
            if b == c and (a, d) not in order:
                order.add((a, d))
                changed = True
    for a, b in order:
        if a != b and (b, a) in order:
            raise TopologyError(f"not antisymmetric: {a} and {b}")
    cover = {}
    for r in range(len(elements) + 1):
        for combo in itertools.combinations(elements, r):
            p = frozenset(combo)
            for a in elements:
                cover[(a, p)] = any((a, c) in order for c in p)
    return FormalTopology(elements, frozenset(order), cover)


def omega() -> FormalTopology:
    """The one-token topology whose cover is double-negated membership.

    Classically the double negation collapses, so the cover is plain
    membership and the frame is the two-element Boolean algebra.
    """
    token = "0"
    cover = {
        (token, frozenset()): False,
        (token, frozenset([token])): True,
    }
    return FormalTopology((token,), frozenset([(token, token)]), cover)


# -- set presentations -----------------------------------------------------


@dataclass(frozen=True)
class SetPresentation:
    """For each token, a finite family of basic covers that generate the
    cover relation: a is covered by p iff some listed family member for a
    is included in p."""
    families: dict[str, frozenset] = field(hash=False)  # token -> set of frozensets


def check_presentation(t: FormalTopology, r: SetPresentation) -> bool:
    for a in t.carrier:
        fams = r.families.get(a, frozenset())
        for p in t.subsets():
            presented = any(u <= p for u in fams)
            if presented != t.covers(a, p):
                return False
    return True


# -- text interchange ------------------------------------------------------


def parse_topology(text: str) -> FormalTopology:
    """Reads the line format:

        carrier: a b c
        order: a<=b b<=c
        cover: a <| {b,c}

    Reflexive order pairs are implied.  Cover rows not listed are false.
    """
    carrier: tuple[str, ...] = ()
    order: set[tuple[str, str]] = set()
    cover_rows: list[tuple[str, frozenset]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("carrier:"):
            carrier = tuple(line[len("carrier:"):].split())
        elif line.startswith("order:"):
            for pair in line[len("order:"):].split():
                if "<=" not in pair:
                    raise TopologyError(f"bad order pair {pair!r}")
                a, b = pair.split("<=", 1)
                order.add((a, b))
        elif line.startswith("cover:"):
            body = line[len("cover:"):].strip()
            if "<|" not in body:
                raise TopologyError(f"bad cover row {body!r}")
            a, rest = body.split("<|", 1)
            rest = rest.strip()
            if not (rest.startswith("{") and rest.endswith("}")):
                raise TopologyError(f"bad cover subset {rest!r}")
            inner = rest[1:-1].strip()
            p = frozenset(x.strip() for x in inner.split(",") if x.strip())
            cover_rows.append((a.strip(), p))
        else:
            raise TopologyError(f"unrecognized line {line!r}")
    if not carrier:
        raise TopologyError("missing carrier line")
    for a in carrier:
        order.add((a, a))
    cover = {(a, p): True for a, p in cover_rows}
    for a in carrier:
        for r in range(len(carrier) + 1):
            for combo in itertools.combinations(carrier, r):
                cover.setdefault((a, frozenset(combo)), False)
    return FormalTopology(carrier, frozenset(order), cover)


def render_topology(t: FormalTopology) -> str:
    lines = ["carrier: " + " ".join(t.carrier)]
    strict = [f"{a}<={b}" for a, b in sorted(t.order) if a != b]
    lines.append("order:" + ("" if not strict else " " + " ".join(strict)))
    for (a, p), v in sorted(t.cover.items(),
                            key=lambda kv: (kv[0][0], len(kv[0][1]),
                                            sorted(kv[0][1]))):
        if v:
            lines.append(f"cover: {a} <| {{{','.join(sorted(p))}}}")
    return "\n".join(lines) + "\n"


def render_frame_element(p: FrameElement) -> str:
    return "{" + ",".join(sorted(p)) + "}"


def parse_frame_element(text: str) -> FrameElement:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise TopologyError(f"bad frame element {text!r}")
    inner = text[1:-1].strip()
    if not inner:
        return frozenset()
    return frozenset(x.strip() for x in inner.split(","))
