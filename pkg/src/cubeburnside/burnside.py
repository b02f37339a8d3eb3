"""Finite sets, finite correspondences (spans), their fiber-product
composition, bijections over a pair of sets, and linearization to integer
matrices.

Composite elements get ids joined with the reserved separator "∘", written
top morphism first ("y∘x" for the pair (y, x)).  Because string joining is
associative, iterated composites are independent of association order both
in ids and in (source, target) data.  Atomic element ids must not contain
the separator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .linalg import Matrix

COMPOSE_SEP = "∘"


@dataclass(frozen=True)
class FiniteSet:
    """Ordered finite set of distinct string identifiers."""

    elements: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("duplicate element ids")
        for e in self.elements:
            if COMPOSE_SEP in e:
                raise ValueError(f"reserved separator in id {e!r}")

    @staticmethod
    def of(elements: Iterable[str]) -> "FiniteSet":
        return FiniteSet(tuple(elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, e: str) -> bool:
        return e in self.elements

    def __iter__(self):
        return iter(self.elements)

    def index(self, e: str) -> int:
        return self.elements.index(e)


EMPTY_SET = FiniteSet(())


@dataclass(frozen=True)
class CorrElem:
    id: str
    s: str
    t: str


@dataclass(frozen=True)
class Correspondence:
    """A span: elements with a source in ``source_set`` and target in
    ``target_set``."""

    source_set: FiniteSet
    target_set: FiniteSet
    elements: tuple[CorrElem, ...]

    def __post_init__(self):
        ids = [e.id for e in self.elements]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate correspondence element ids")
        for e in self.elements:
            if e.s not in self.source_set or e.t not in self.target_set:
                raise ValueError(f"element {e.id!r} has endpoint outside its sets")

    @staticmethod
    def of(source: FiniteSet, target: FiniteSet,
           elements: Iterable[tuple[str, str, str]]) -> "Correspondence":
        return Correspondence(source, target,
                              tuple(CorrElem(i, s, t) for i, s, t in elements))

    def __len__(self) -> int:
        return len(self.elements)

    def ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.elements)

    def by_id(self, eid: str) -> CorrElem:
        for e in self.elements:
            if e.id == eid:
                return e
        raise KeyError(eid)

    def fibers(self) -> dict[tuple[str, str], list[CorrElem]]:
        out: dict[tuple[str, str], list[CorrElem]] = {}
        for e in self.elements:
            out.setdefault((e.s, e.t), []).append(e)
        return out

    def flip(self) -> "Correspondence":
        """Swap source and target maps (the self-duality of spans)."""
        return Correspondence(self.target_set, self.source_set,
                              tuple(CorrElem(e.id, e.t, e.s) for e in self.elements))


def identity_correspondence(a: FiniteSet) -> Correspondence:
    return Correspondence(a, a, tuple(CorrElem(e, e, e) for e in a))


def correspondence_from_map(a: FiniteSet, b: FiniteSet,
                            f: Callable[[str], str] | Mapping[str, str]) -> Correspondence:
    """A set map a -> b viewed as a span with identity source map."""
    get = f.__getitem__ if isinstance(f, Mapping) else f
    return Correspondence(a, b, tuple(CorrElem(e, e, get(e)) for e in a))


def compose(y: Correspondence, x: Correspondence) -> Correspondence:
    """Fiber product Y ×_B X of y: B -> C with x: A -> B.

    Elements are the pairs (y, x) with s(y) = t(x), id "y∘x", ordered
    lexicographically by (position of y, position of x).
    """
    if y.source_set != x.target_set:
        raise ValueError("middle sets do not match")
    elems = []
    for ye in y.elements:
        for xe in x.elements:
            if ye.s == xe.t:
                elems.append(CorrElem(f"{ye.id}{COMPOSE_SEP}{xe.id}", xe.s, ye.t))
    return Correspondence(x.source_set, y.target_set, tuple(elems))


def split_composite_id(eid: str) -> tuple[str, ...]:
    """Atomic parts of a composite id, outermost (latest) first."""
    return tuple(eid.split(COMPOSE_SEP))


def join_composite_id(parts: Iterable[str]) -> str:
    return COMPOSE_SEP.join(parts)


@dataclass(frozen=True)
class BijectionOver:
    """A 2-morphism: a bijection of parallel correspondences commuting with
    the source and target maps."""

    src: Correspondence
    dst: Correspondence
    mapping: tuple[tuple[str, str], ...]  # (src element id, dst element id)

    def __post_init__(self):
        if not is_two_morphism(dict(self.mapping), self.src, self.dst):
            raise ValueError("not a 2-morphism")

    @staticmethod
    def of(src: Correspondence, dst: Correspondence,
           mapping: Mapping[str, str]) -> "BijectionOver":
        return BijectionOver(src, dst, tuple(sorted(mapping.items())))

    def as_dict(self) -> dict[str, str]:
        return dict(self.mapping)

    def apply(self, eid: str) -> str:
        return dict(self.mapping)[eid]

    def inverse(self) -> "BijectionOver":
        return BijectionOver(self.dst, self.src,
                             tuple(sorted((b, a) for a, b in self.mapping)))

    def then(self, other: "BijectionOver") -> "BijectionOver":
        if self.dst != other.src:
            raise ValueError("composition mismatch")
        o = other.as_dict()
        return BijectionOver(self.src, other.dst,
                             tuple(sorted((a, o[b]) for a, b in self.mapping)))


def identity_bijection(x: Correspondence) -> BijectionOver:
    return BijectionOver.of(x, x, {e.id: e.id for e in x.elements})


def is_two_morphism(f: Mapping[str, str], x: Correspondence, y: Correspondence) -> bool:
    """True iff f is a bijection of elements preserving s and t."""
    if x.source_set != y.source_set or x.target_set != y.target_set:
        return False
    xids = set(x.ids())
    yids = set(y.ids())
    if set(f.keys()) != xids or set(f.values()) != yids or len(f) != len(x):
        return False
    ylookup = {e.id: e for e in y.elements}
    for e in x.elements:
        img = ylookup[f[e.id]]
        if img.s != e.s or img.t != e.t:
            return False
    return True


def linearize(x: Correspondence) -> Matrix:
    """Matrix of fiber cardinalities: rows indexed by target_set, columns by
    source_set, acting on column vectors of the free abelian group."""
    rows = []
    for b in x.target_set:
        rows.append([sum(1 for e in x.elements if e.s == a and e.t == b)
                     for a in x.source_set])
    if not x.target_set.elements:
        return Matrix.zero(0, len(x.source_set))
    return Matrix.from_rows(rows)


# -- JSON ----------------------------------------------------------------

def finite_set_to_json(a: FiniteSet) -> list[str]:
    return list(a.elements)


def correspondence_to_json(x: Correspondence) -> dict:
    return {"source": list(x.source_set.elements),
            "target": list(x.target_set.elements),
            "elements": [{"id": e.id, "s": e.s, "t": e.t} for e in x.elements]}


def correspondence_from_json(obj: dict) -> Correspondence:
    return Correspondence.of(FiniteSet.of(obj["source"]), FiniteSet.of(obj["target"]),
                             [(e["id"], e["s"], e["t"]) for e in obj["elements"]])
