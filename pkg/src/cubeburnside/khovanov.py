"""Planar diagram codes, cube-of-resolutions circle tracing, generators
labeled x_+/x_- per circle, Frobenius-algebra edge correspondences, the
ladybug pairing on exceptional square fibers, and assembly of the stable
functor of a link diagram together with its reduced and quantum-graded
variants.

Conventions (fixed; mirroring a diagram exchanges them):
  * Crossing tuples (a,b,c,d) list arcs counterclockwise from the incoming
    under-strand.  A crossing is positive when d follows b in its
    component's cyclic arc numbering (over-strand entering at b), negative
    when b follows d; two-arc over-strands satisfy both relations and are
    disambiguated by matching each arc's head and tail occurrences.
  * The 0-resolution joins a-d and b-c; the 1-resolution joins a-b and c-d.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Mapping, Sequence

from . import cube
from .burnside import (BijectionOver, CorrElem, Correspondence, FiniteSet,
                       split_composite_id)
from .cube import Face2, Vertex
from .errors import InputError, InternalInvariantError
from .functor import (CubeFunctorData, StableFunctor, composite_along_chain,
                      quotient_functor_data, sub_functor, validate_coherence)
from .linalg import Matrix
from .totalization import ChainComplex, dualize, homology_nontrivial, tot

Crossing = tuple[int, int, int, int]

# slot pairings per resolution and the counterclockwise-later slot per strand
_PARTNER = {0: {0: 3, 3: 0, 1: 2, 2: 1}, 1: {0: 1, 1: 0, 2: 3, 3: 2}}
_LATER = {0: {frozenset({0, 3}): 0, frozenset({1, 2}): 2},
          1: {frozenset({0, 1}): 1, frozenset({2, 3}): 3}}

PLUS, MINUS = "+", "-"


@dataclass(frozen=True)
class PDCode:
    crossings: tuple[Crossing, ...]
    free_loops: int = 0

    @property
    def n(self) -> int:
        return len(self.crossings)

    def arcs(self) -> list[int]:
        return sorted({a for x in self.crossings for a in x})

    def to_json(self) -> dict:
        return {"crossings": [list(x) for x in self.crossings],
                "free_loops": self.free_loops}


_PD_RE = re.compile(r"^\s*PD\[(.*)\]\s*$", re.S)
_X_RE = re.compile(r"X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_pd(text_or_obj, free_loops: int = 0) -> PDCode:
    """Accepts "PD[X(a,b,c,d),...]" or the JSON dict form."""
    if isinstance(text_or_obj, dict):
        obj = text_or_obj
        pd = PDCode(tuple(tuple(int(a) for a in x) for x in obj.get("crossings", [])),
                    int(obj.get("free_loops", 0)))
    else:
        text = str(text_or_obj)
        m = _PD_RE.match(text)
        if not m:
            raise InputError("expected PD[...] or a JSON object")
        inner = m.group(1).strip()
        tuples = _X_RE.findall(inner)
        residue = _X_RE.sub("", inner).replace(",", "").strip()
        if residue:
            raise InputError(f"unparsed PD content: {residue!r}")
        pd = PDCode(tuple(tuple(int(a) for a in t) for t in tuples), free_loops)
    validate_pd(pd)
    return pd


def _occurrences(pd: PDCode) -> dict[int, list[tuple[int, int]]]:
    occ: dict[int, list[tuple[int, int]]] = {}
    for ci, x in enumerate(pd.crossings):
        for slot, arc in enumerate(x):
            occ.setdefault(arc, []).append((ci, slot))
    return occ


def _components(pd: PDCode) -> list[list[int]]:
    """Partition of arc labels into link components (each a contiguous
    integer range)."""
    parent: dict[int, int] = {a: a for a in pd.arcs()}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        parent[find(a)] = find(b)

    for (a, b, c, d) in pd.crossings:
        union(a, c)
        union(b, d)
    comps: dict[int, list[int]] = {}
    for a in pd.arcs():
        comps.setdefault(find(a), []).append(a)
    return [sorted(v) for v in sorted(comps.values())]


def validate_pd(pd: PDCode) -> None:
    if pd.free_loops < 0:
        raise InputError("free_loops must be nonnegative")
    occ = _occurrences(pd)
    for arc, places in occ.items():
        if len(places) != 2:
            raise InputError(f"arc {arc} occurs {len(places)} times, expected 2")
    for comp in _components(pd):
        if comp != list(range(comp[0], comp[0] + len(comp))):
            raise InputError(f"component arcs {comp} are not consecutively numbered")
    crossing_signs(pd)  # validates orientation relations


def _succ_table(pd: PDCode) -> dict[int, int]:
    succ = {}
    for comp in _components(pd):
        for i, a in enumerate(comp):
            succ[a] = comp[(i + 1) % len(comp)]
    return succ


def per_crossing_signs(pd: PDCode) -> tuple[int, ...]:
    """+1/-1 per crossing; raises on inconsistent orientation data."""
    if not pd.crossings:
        return ()
    succ = _succ_table(pd)
    cands: list[list[int]] = []
    for (a, b, c, d) in pd.crossings:
        if succ[a] != c:
            raise InputError(f"under-strand {a}->{c} is not consecutive")
        opts = []
        if succ[b] == d:
            opts.append(1)
        if succ[d] == b:
            opts.append(-1)
        if not opts:
            raise InputError(f"crossing ({a},{b},{c},{d}): over-strand arcs "
                             "are not consecutive either way")
        cands.append(opts)
    occ = _occurrences(pd)

    def consistent(signs: Sequence[int]) -> bool:
        # heads: slot 0 always; slot 1 if positive else slot 3
        head_count = {arc: 0 for arc in occ}
        for ci, (a, b, c, d) in enumerate(pd.crossings):
            head_count[a] += 1
            head_count[b if signs[ci] == 1 else d] += 1
        return all(v == 1 for v in head_count.values())

    ambiguous = [i for i, o in enumerate(cands) if len(o) == 2]
    solutions = []
    for combo in itertools.product(*(o for o in cands)):
        if consistent(combo):
            solutions.append(combo)
            if len(solutions) > 1:
                break
    if not solutions:
        raise InputError("no orientation-consistent crossing signs exist")
    if len(solutions) > 1:
        raise InputError("crossing signs are ambiguous; orientation data "
                         f"underdetermined at crossings {ambiguous}")
    return solutions[0]


def crossing_signs(pd: PDCode) -> tuple[int, int]:
    signs = per_crossing_signs(pd)
    return (sum(1 for s in signs if s > 0), sum(1 for s in signs if s < 0))


# -- resolutions ------------------------------------------------------------------

@dataclass(frozen=True)
class CirclePassage:
    crossing: int
    slot_in: int
    slot_out: int

    @property
    def strand(self) -> frozenset[int]:
        return frozenset({self.slot_in, self.slot_out})


@dataclass(frozen=True)
class ResolvedCircle:
    """A circle of a resolution: either a free loop or a cyclic walk
    alternating crossing passages and arcs (arc ``walk_arcs[t]`` follows
    passage ``passages[t]``)."""

    arcs: frozenset[int]
    passages: tuple[CirclePassage, ...]
    walk_arcs: tuple[int, ...]
    loop_index: int | None = None

    def sort_key(self):
        if self.loop_index is not None:
            return (1, self.loop_index)
        return (0, min(self.arcs))


@dataclass(frozen=True)
class ResolvedDiagram:
    vertex: Vertex
    circles: tuple[ResolvedCircle, ...]

    def circle_of_arc(self, arc: int) -> int:
        for i, c in enumerate(self.circles):
            if arc in c.arcs:
                return i
        raise KeyError(arc)

    def circle_of_loop(self, k: int) -> int:
        for i, c in enumerate(self.circles):
            if c.loop_index == k:
                return i
        raise KeyError(k)


def resolve(pd: PDCode, v: Vertex) -> ResolvedDiagram:
    """Trace the circles of the resolution selected by v."""
    if len(v) != pd.n:
        raise InputError("vertex length must equal the crossing count")
    occ = _occurrences(pd)
    other: dict[tuple[int, int], tuple[int, int]] = {}
    for places in occ.values():
        (p1, p2) = places
        other[p1] = p2
        other[p2] = p1
    visited: set[tuple[int, int]] = set()
    circles = []
    for ci in range(pd.n):
        for slot in range(4):
            start = (ci, slot)
            if start in visited:
                continue
            passages = []
            walk_arcs = []
            node = start
            while True:
                c2, s_in = node
                s_out = _PARTNER[v[c2]][s_in]
                visited.add((c2, s_in))
                visited.add((c2, s_out))
                passages.append(CirclePassage(c2, s_in, s_out))
                walk_arcs.append(pd.crossings[c2][s_out])
                node = other[(c2, s_out)]
                if node == start:
                    break
            circles.append(ResolvedCircle(frozenset(walk_arcs), tuple(passages),
                                          tuple(walk_arcs)))
    for k in range(pd.free_loops):
        circles.append(ResolvedCircle(frozenset(), (), (), loop_index=k))
    circles.sort(key=lambda c: c.sort_key())
    return ResolvedDiagram(v, tuple(circles))


@dataclass(frozen=True)
class KhGenerator:
    vertex: Vertex
    labels: tuple[str, ...]

    @property
    def id(self) -> str:
        return "".join(self.labels)


def quantum_grading(pd: PDCode, v: Vertex, labels: str | Sequence[str]) -> int:
    np, nm = crossing_signs(pd)
    plus = sum(1 for c in labels if c == PLUS)
    minus = sum(1 for c in labels if c == MINUS)
    return np - 2 * nm + cube.grading(v) + plus - minus


_M_TABLE = {(PLUS, PLUS): PLUS, (PLUS, MINUS): MINUS, (MINUS, PLUS): MINUS,
            (MINUS, MINUS): None}
_DELTA_TABLE = {PLUS: [(PLUS, MINUS), (MINUS, PLUS)], MINUS: [(MINUS, MINUS)]}


class DiagramCube:
    """Cached resolutions, generators and circle transitions of one diagram."""

    def __init__(self, pd: PDCode):
        validate_pd(pd)
        self.pd = pd
        self.signs = per_crossing_signs(pd)
        self.n_plus = sum(1 for s in self.signs if s > 0)
        self.n_minus = sum(1 for s in self.signs if s < 0)
        self._resolved: dict[Vertex, ResolvedDiagram] = {}

    def resolved(self, v: Vertex) -> ResolvedDiagram:
        if v not in self._resolved:
            self._resolved[v] = resolve(self.pd, v)
        return self._resolved[v]

    def generators(self, v: Vertex) -> FiniteSet:
        k = len(self.resolved(v).circles)
        return FiniteSet(tuple("".join(ls) for ls in
                               itertools.product((PLUS, MINUS), repeat=k)))

    def circle_match(self, src: ResolvedDiagram, dst: ResolvedDiagram,
                     ) -> dict[int, int]:
        """Indices of dst circles with the same arc set / loop index; only
        meaningful for circles untouched by the changed crossing."""
        out = {}
        keyed = {}
        for j, c in enumerate(dst.circles):
            keyed[(c.arcs, c.loop_index)] = j
        for i, c in enumerate(src.circles):
            j = keyed.get((c.arcs, c.loop_index))
            if j is not None:
                out[i] = j
        return out

    def edge_correspondence(self, u: Vertex, v: Vertex) -> Correspondence:
        """Elements are the pairs (target generator y at v, source generator
        x at u) whose abelian-side coefficient is 1; merge edges apply the
        multiplication table, split edges the comultiplication table."""
        k = cube.edge_coordinate(u, v)
        rv, ru = self.resolved(v), self.resolved(u)
        vk = [i for i, c in enumerate(rv.circles)
              if any(p.crossing == k for p in c.passages)]
        uk = [i for i, c in enumerate(ru.circles)
              if any(p.crossing == k for p in c.passages)]
        stable_vu = self.circle_match(rv, ru)
        elems = []
        gen_u = self.generators(u)
        gen_v = self.generators(v)
        for y in gen_v:
            for x in _abelian_images(y, rv, ru, vk, uk, stable_vu):
                elems.append(CorrElem(f"{x}>{y}", x, y))
        return Correspondence(gen_u, gen_v, tuple(elems))

    def functor_data(self, with_faces: bool = True) -> CubeFunctorData:
        n = self.pd.n
        vs = {v: self.generators(v) for v in cube.vertices(n)}
        ec = {(u, v): self.edge_correspondence(u, v) for (u, v) in cube.edges(n)}
        fm = None
        if with_faces:
            data = CubeFunctorData.build(n, vs, ec, None)
            fm = {face: self.face_matching(data, face) for face in cube.faces2(n)}
        return CubeFunctorData.build(n, vs, ec, fm)

    # -- square matchings -------------------------------------------------

    def face_matching(self, data: CubeFunctorData, face: Face2) -> BijectionOver:
        ca = composite_along_chain(data, (face.top, face.mid_a, face.bottom))
        cb = composite_along_chain(data, (face.top, face.mid_b, face.bottom))
        fa, fb = ca.fibers(), cb.fibers()
        mapping: dict[str, str] = {}
        lady = None
        for key in fa:
            ea, eb = fa[key], fb.get(key, [])
            if len(ea) != len(eb):
                raise InternalInvariantError(
                    f"square fibers differ at {key} on face {face}")
            if len(ea) == 1:
                mapping[ea[0].id] = eb[0].id
            elif len(ea) == 2:
                x, z = key
                if lady is None:
                    lady = self.detect_ladybug(face, x, z)
                if lady is None:
                    raise InternalInvariantError(
                        f"two-element fiber without ladybug configuration on {face}")
                transfer = self.ladybug_fiber_map(lady, ea, eb)
                mapping.update(transfer)
            elif len(ea) > 2:
                raise InternalInvariantError(
                    f"fiber of size {len(ea)} on face {face}")
        return BijectionOver.of(ca, cb, mapping)

    def detect_ladybug(self, face: Face2, x: str, z: str) -> "LadybugData | None":
        """The exceptional square pattern: one bottom circle carrying both
        re-smoothed crossings with alternating passages, splitting both ways
        and re-merging, labeled + below and - above."""
        i = cube.edge_coordinate(face.top, face.mid_a)
        j = cube.edge_coordinate(face.top, face.mid_b)
        rw = self.resolved(face.bottom)
        ru = self.resolved(face.top)
        wi = {ci for ci, c in enumerate(rw.circles)
              if any(p.crossing in (i, j) for p in c.passages)}
        if len(wi) != 1:
            return None
        cw = next(iter(wi))
        circle = rw.circles[cw]
        marked = [t for t, p in enumerate(circle.passages) if p.crossing in (i, j)]
        if len(marked) != 4:
            return None
        kinds = [circle.passages[t].crossing for t in marked]
        if kinds[0] == kinds[1] or kinds[1] == kinds[2]:
            return None  # the four passages must alternate i,j,i,j
        ui = {ci for ci, c in enumerate(ru.circles)
              if any(p.crossing in (i, j) for p in c.passages)}
        if len(ui) != 1:
            return None
        cu = next(iter(ui))
        if z[cw] != PLUS or x[cu] != MINUS:
            return None
        seg_v = self._right_segments(circle, marked, j)
        seg_vp = self._right_segments(circle, marked, i)
        if {s for s in seg_v} != {s for s in seg_vp}:
            raise InternalInvariantError("right-pair selections disagree")
        seg1, seg2 = sorted(seg_v, key=min)
        rv, rvp = self.resolved(face.mid_a), self.resolved(face.mid_b)
        return LadybugData(
            face=face, bottom_circle=cw, top_circle=cu,
            endpoints=tuple(circle.passages[t] for t in marked),
            right_pair=(seg1, seg2),
            split_a=(self._circle_containing(rv, seg1), self._circle_containing(rv, seg2)),
            split_b=(self._circle_containing(rvp, seg1), self._circle_containing(rvp, seg2)),
        )

    @staticmethod
    def _circle_containing(rd: ResolvedDiagram, arcs: frozenset[int]) -> int:
        hits = {i for i, c in enumerate(rd.circles) if arcs & c.arcs}
        if len(hits) != 1:
            raise InternalInvariantError("segment arcs split across circles")
        return next(iter(hits))

    @staticmethod
    def _right_segments(circle: ResolvedCircle, marked: list[int],
                        crossing: int) -> tuple[frozenset[int], frozenset[int]]:
        """Walk arcs selected by turning toward the counterclockwise-later
        strand end at each passage of the given crossing."""
        m = len(circle.passages)
        segs = []
        for t in marked:
            p = circle.passages[t]
            if p.crossing != crossing:
                continue
            later = _LATER[0][p.strand]
            forward = (p.slot_out == later)
            arcs = []
            if forward:
                s = t
                while True:
                    arcs.append(circle.walk_arcs[s])
                    s = (s + 1) % m
                    if s in marked:
                        break
            else:
                s = (t - 1) % m
                while True:
                    arcs.append(circle.walk_arcs[s])
                    if s in marked:
                        # walk_arcs[s] precedes passage s+1; stop after the
                        # arc following the previous marked passage
                        break
                    s = (s - 1) % m
            segs.append(frozenset(arcs))
        if len(segs) != 2:
            raise InternalInvariantError("expected two surgery endpoints")
        return (segs[0], segs[1])

    def ladybug_fiber_map(self, lady: "LadybugData",
                          ea: list[CorrElem], eb: list[CorrElem]) -> dict[str, str]:
        """Pair the two-element fibers through the two middles by transferring
        the middle labeling along the right-pair circle identification."""
        face = lady.face
        rv, rvp = self.resolved(face.mid_a), self.resolved(face.mid_b)
        stable = self.circle_match(rv, rvp)
        out = {}
        by_mid_b = {}
        for e in eb:
            by_mid_b[_middle_label(e)] = e
        for e in ea:
            mid = _middle_label(e)
            target = [None] * len(rvp.circles)
            for ci in range(len(rv.circles)):
                if ci == lady.split_a[0]:
                    target[lady.split_b[0]] = mid[ci]
                elif ci == lady.split_a[1]:
                    target[lady.split_b[1]] = mid[ci]
                else:
                    target[stable[ci]] = mid[ci]
            if any(t is None for t in target):
                raise InternalInvariantError("middle labeling transfer incomplete")
            key = "".join(target)
            if key not in by_mid_b:
                raise InternalInvariantError("transferred labeling missing on the far side")
            out[e.id] = by_mid_b[key].id
        return out


def _middle_label(e: CorrElem) -> str:
    """Middle generator of a two-step composite element "x2>m∘m>x1"."""
    y, x = split_composite_id(e.id)
    src, mid = x.split(">")
    mid2, tgt = y.split(">")
    if mid != mid2:
        raise InternalInvariantError("composite steps do not share their middle")
    return mid


@dataclass(frozen=True)
class LadybugData:
    face: Face2
    bottom_circle: int                     # index in the bottom resolution
    top_circle: int                        # index in the top resolution
    endpoints: tuple[CirclePassage, ...]   # the four passages in cyclic order
    right_pair: tuple[frozenset[int], frozenset[int]]
    split_a: tuple[int, int]               # circles of mid_a from right arcs 1,2
    split_b: tuple[int, int]               # circles of mid_b from right arcs 1,2


def _abelian_images(y: str, rv: ResolvedDiagram, ru: ResolvedDiagram,
                    vk: list[int], uk: list[int],
                    stable_vu: Mapping[int, int]) -> list[str]:
    """Generators x at the 1-side with coefficient one in the image of y."""
    if len(vk) == 2:
        # two circles merge into one
        (m1, m2) = vk
        merged = _M_TABLE[(y[m1], y[m2])]
        if merged is None:
            return []
        out = [None] * len(ru.circles)
        out[uk[0]] = merged
        for ci in range(len(rv.circles)):
            if ci in (m1, m2):
                continue
            out[stable_vu[ci]] = y[ci]
        return ["".join(out)]
    if len(vk) == 1 and len(uk) == 2:
        (s0,) = vk
        frames = _DELTA_TABLE[y[s0]]
        res = []
        for (l1, l2) in frames:
            out = [None] * len(ru.circles)
            out[uk[0]] = l1
            out[uk[1]] = l2
            for ci in range(len(rv.circles)):
                if ci == s0:
                    continue
                out[stable_vu[ci]] = y[ci]
            res.append("".join(out))
        return res
    raise InternalInvariantError("resolution change is neither merge nor split")


# -- public operations ---------------------------------------------------------

def edge_correspondence(pd: PDCode, u: Vertex, v: Vertex) -> Correspondence:
    return DiagramCube(pd).edge_correspondence(u, v)


def detect_ladybug(pd: PDCode, face: Face2, x: str, z: str):
    return DiagramCube(pd).detect_ladybug(face, x, z)


def ladybug_matching(pd: PDCode, face: Face2, x: str, z: str) -> dict[str, str]:
    """The bijection of the two-element square fiber at (x, z), keyed by
    composite element ids through the two middles."""
    dc = DiagramCube(pd)
    lady = dc.detect_ladybug(face, x, z)
    if lady is None:
        raise InputError("no ladybug configuration at this fiber")
    data = dc.functor_data(with_faces=False)
    ca = composite_along_chain(data, (face.top, face.mid_a, face.bottom))
    cb = composite_along_chain(data, (face.top, face.mid_b, face.bottom))
    return dc.ladybug_fiber_map(lady, ca.fibers()[(x, z)], cb.fibers()[(x, z)])


def face_matching(pd: PDCode, face: Face2) -> BijectionOver:
    dc = DiagramCube(pd)
    return dc.face_matching(dc.functor_data(with_faces=False), face)


def build_khovanov_functor(pd: PDCode, validate: bool = True) -> StableFunctor:
    """Generators per vertex, Frobenius edge correspondences, square
    matchings (forced or ladybug), shifted by minus the negative crossing
    count; coherence is validated on construction."""
    dc = DiagramCube(pd)
    data = dc.functor_data(with_faces=True)
    if validate:
        rep = validate_coherence(data)
        if not rep:
            raise InternalInvariantError(
                "diagram functor fails coherence: " + "; ".join(rep.failures[:3]))
    return StableFunctor(data, -dc.n_minus)


def generator_gradings(pd: PDCode, reduced_offset: int = 0,
                       ) -> dict[Vertex, dict[str, int]]:
    dc = DiagramCube(pd)
    np, nm = dc.n_plus, dc.n_minus
    out: dict[Vertex, dict[str, int]] = {}
    for v in cube.vertices(pd.n):
        out[v] = {}
        for g in dc.generators(v):
            plus = g.count(PLUS)
            minus = g.count(MINUS)
            out[v][g] = np - 2 * nm + cube.grading(v) + plus - minus + reduced_offset
    return out


def split_by_quantum(pd: PDCode, sf: StableFunctor,
                     reduced: bool = False) -> dict[int, StableFunctor]:
    """Restrict all data to each quantum grading; every edge element joins
    generators of equal grading, so the pieces are closed both ways."""
    gradings = generator_gradings(pd, reduced_offset=1 if reduced else 0)
    f = sf.functor
    values = sorted({gradings[v][x] for v in cube.vertices(f.n) for x in f.vset(v)})
    out = {}
    for j in values:
        s = {(v, x) for v in cube.vertices(f.n) for x in f.vset(v)
             if gradings[v][x] == j}
        out[j] = StableFunctor(sub_functor(f, s), sf.shift)
    return out


def basepoint_circle(pd: PDCode, rd: ResolvedDiagram, basepoint) -> int:
    if isinstance(basepoint, tuple) and basepoint and basepoint[0] == "loop":
        return rd.circle_of_loop(int(basepoint[1]))
    arc = int(basepoint)
    if arc not in _occurrences(pd):
        raise InputError(f"unknown basepoint arc {arc}")
    return rd.circle_of_arc(arc)


def reduced_functor(pd: PDCode, basepoint, validate: bool = True) -> StableFunctor:
    """Restriction to the generators labeling the basepoint circle x_-.

    The discarded generators span a subcomplex of the totalization (the
    restriction is quotient-style)."""
    sf = build_khovanov_functor(pd, validate=validate)
    dc = DiagramCube(pd)
    s = set()
    for v in cube.vertices(pd.n):
        rd = dc.resolved(v)
        ci = basepoint_circle(pd, rd, basepoint)
        for g in sf.functor.vset(v):
            if g[ci] == MINUS:
                s.add((v, g))
    return StableFunctor(quotient_functor_data(sf.functor, s), sf.shift)


def disjoint_union_pd(pd1: PDCode, pd2: PDCode) -> PDCode:
    shift = max(pd1.arcs(), default=0)
    crossings = pd1.crossings + tuple(
        tuple(a + shift for a in x) for x in pd2.crossings)
    out = PDCode(crossings, pd1.free_loops + pd2.free_loops)
    validate_pd(out)
    return out


def _head_tail(pd: PDCode) -> tuple[dict[int, tuple[int, int]], dict[int, tuple[int, int]]]:
    """head[arc] = occurrence where the arc ends, tail[arc] = where it starts."""
    signs = per_crossing_signs(pd)
    head: dict[int, tuple[int, int]] = {}
    tail: dict[int, tuple[int, int]] = {}
    for ci, (a, b, c, d) in enumerate(pd.crossings):
        head[a] = (ci, 0)
        tail[c] = (ci, 2)
        if signs[ci] == 1:
            head[b] = (ci, 1)
            tail[d] = (ci, 3)
        else:
            head[d] = (ci, 3)
            tail[b] = (ci, 1)
    return head, tail


def connect_sum_pd(pd1: PDCode, p1: int, pd2: PDCode, p2: int,
                   ) -> tuple[PDCode, int]:
    """Splice the two basepoint arcs; returns the new diagram and the arc
    carrying the first diagram's outgoing half (a valid new basepoint)."""
    if pd1.n == 0 or pd2.n == 0:
        raise InputError("connected sum requires arcs on both sides")
    shift = max(pd1.arcs())
    pd2s = PDCode(tuple(tuple(a + shift for a in x) for x in pd2.crossings), 0)
    p2s = p2 + shift
    if p1 not in _occurrences(pd1) or (p2 + shift) not in _occurrences(pd2s):
        raise InputError("basepoint arc not present")
    h1, t1 = _head_tail(pd1)
    h2, t2 = _head_tail(pd2s)
    off = pd1.n
    # occurrence-level arc list: (tail occurrence, head occurrence)
    arcs: list[tuple[tuple[int, int], tuple[int, int]]] = []
    for arc in pd1.arcs():
        if arc == p1:
            continue
        arcs.append((t1[arc], h1[arc]))
    for arc in pd2s.arcs():
        if arc == p2s:
            continue
        arcs.append(((t2[arc][0] + off, t2[arc][1]), (h2[arc][0] + off, h2[arc][1])))
    spliced_a = (t1[p1], (h2[p2s][0] + off, h2[p2s][1]))
    spliced_b = ((t2[p2s][0] + off, t2[p2s][1]), h1[p1])
    arcs.append(spliced_a)
    arcs.append(spliced_b)
    by_tail = {t: (t, h) for (t, h) in arcs}
    crossings_old = pd1.crossings + pd2s.crossings

    def exit_occurrence(head_occ: tuple[int, int]) -> tuple[int, int]:
        ci, slot = head_occ
        if slot == 0:
            return (ci, 2)
        if slot == 1:
            return (ci, 3)
        if slot == 3:
            return (ci, 1)
        raise InternalInvariantError("head at an exit slot")

    # traverse and renumber
    numbering: dict[tuple[tuple[int, int], tuple[int, int]], int] = {}
    nxt = 1
    new_basepoint = None
    remaining = set(arcs)
    while remaining:
        start = min(remaining, key=lambda th: (th[0][0], th[0][1]))
        cur = start
        while True:
            numbering[cur] = nxt
            if cur == spliced_a:
                new_basepoint = nxt
            nxt += 1
            remaining.discard(cur)
            cur = by_tail[exit_occurrence(cur[1])]
            if cur == start:
                break
    slot_arc: dict[tuple[int, int], int] = {}
    for (t, h), num in numbering.items():
        slot_arc[t] = num
        slot_arc[h] = num
    new_crossings = tuple(
        tuple(slot_arc[(ci, slot)] for slot in range(4)) for ci in range(len(crossings_old)))
    out = PDCode(new_crossings, pd1.free_loops + pd2.free_loops)
    validate_pd(out)
    assert new_basepoint is not None
    return out, new_basepoint


def braid_closure_pd(word: Sequence[int], strands: int) -> PDCode:
    """Planar diagram of a braid closure; word entries ±i stand for the
    generator crossing strand positions i and i+1 (1-based), all strands
    oriented the same way.  Untouched positions close into free loops."""
    if strands < 1 or any(abs(g) < 1 or abs(g) >= strands for g in word):
        raise InputError("bad braid word")
    m = len(word)
    used = {p for g in word for p in (abs(g), abs(g) + 1)}
    # per column, the bottom and top slots of its crossings in height order
    bottoms: dict[int, list[tuple[int, int]]] = {p: [] for p in used}
    tops: dict[int, list[tuple[int, int]]] = {p: [] for p in used}
    for ci, g in enumerate(word):
        i = abs(g)
        if g > 0:
            # a=(bottom,i+1) b=(top,i+1) c=(top,i) d=(bottom,i)
            bottoms[i + 1].append((ci, 0))
            tops[i + 1].append((ci, 1))
            tops[i].append((ci, 2))
            bottoms[i].append((ci, 3))
        else:
            # a=(bottom,i) b=(bottom,i+1) c=(top,i+1) d=(top,i)
            bottoms[i].append((ci, 0))
            bottoms[i + 1].append((ci, 1))
            tops[i + 1].append((ci, 2))
            tops[i].append((ci, 3))
    # arc from each top slot up (cyclically) to the next bottom slot
    arcs: list[tuple[tuple[int, int], tuple[int, int]]] = []  # (tail=top, head=bottom)
    for p in used:
        bs, ts = bottoms[p], tops[p]
        for k, tslot in enumerate(ts):
            arcs.append((tslot, bs[(k + 1) % len(bs)]))
    by_tail = {t: (t, h) for (t, h) in arcs}

    def exit_slot(ci: int, slot: int) -> int:
        if slot == 0:
            return 2
        return {True: {3: 1}, False: {1: 3}}[word[ci] > 0][slot]

    numbering: dict[tuple[tuple[int, int], tuple[int, int]], int] = {}
    nxt = 1
    remaining = set(arcs)
    while remaining:
        start = min(remaining, key=lambda th: (th[0][0], th[0][1]))
        cur = start
        while True:
            numbering[cur] = nxt
            nxt += 1
            remaining.discard(cur)
            hci, hslot = cur[1]
            cur = by_tail[(hci, exit_slot(hci, hslot))]
            if cur == start:
                break
    slot_arc: dict[tuple[int, int], int] = {}
    for (t, h), num in numbering.items():
        slot_arc[t] = num
        slot_arc[h] = num
    crossings = tuple(tuple(slot_arc[(ci, s)] for s in range(4)) for ci in range(m))
    loops = strands - len(used)
    out = PDCode(crossings, loops)
    validate_pd(out)
    return out


# -- homology tables -------------------------------------------------------------

def kh_table(pd: PDCode, reduced: bool = False, basepoint=None,
             validate: bool = True) -> list[dict]:
    """Bigraded homology rows [{"i","j","rank","torsion"}] sorted by (j,i),
    computed through the span functor, totalization and dualization."""
    if reduced:
        if basepoint is None:
            raise InputError("reduced homology needs a basepoint")
        sf = reduced_functor(pd, basepoint, validate=validate)
    else:
        sf = build_khovanov_functor(pd, validate=validate)
    rows = []
    for j, part in split_by_quantum(pd, sf, reduced=reduced).items():
        dual = dualize(tot(part))
        for d, h in homology_nontrivial(dual).items():
            rows.append({"i": -d, "j": j, "rank": h.free_rank,
                         "torsion": list(h.torsion)})
    rows.sort(key=lambda r: (r["j"], r["i"]))
    return rows


def kh_table_direct(pd: PDCode, reduced: bool = False, basepoint=None) -> list[dict]:
    """Independent check: assemble the cochain complex directly from the
    multiplication/comultiplication matrices (no span layer) and read off
    its cohomology."""
    dc = DiagramCube(pd)
    n, np_, nm = pd.n, dc.n_plus, dc.n_minus
    gens: dict[Vertex, list[str]] = {}
    for v in cube.vertices(n):
        gens[v] = list(dc.generators(v))
    if reduced:
        if basepoint is None:
            raise InputError("reduced homology needs a basepoint")
        for v in cube.vertices(n):
            ci = basepoint_circle(pd, dc.resolved(v), basepoint)
            gens[v] = [g for g in gens[v] if g[ci] == MINUS]
    offset = 1 if reduced else 0
    grad: dict[tuple[Vertex, str], int] = {}
    for v in cube.vertices(n):
        for g in gens[v]:
            grad[(v, g)] = (np_ - 2 * nm + cube.grading(v)
                            + g.count(PLUS) - g.count(MINUS) + offset)
    rows = []
    for j in sorted({g for g in grad.values()}):
        # cochain degree i = |v| - n_minus; store at chain degree -i
        basis: dict[int, list[tuple[Vertex, str]]] = {}
        for v in cube.vertices(n):
            for g in gens[v]:
                if grad[(v, g)] == j:
                    basis.setdefault(-(cube.grading(v) - nm), []).append((v, g))
        index = {d: {bg: k for k, bg in enumerate(b)} for d, b in basis.items()}
        diffs = {}
        for d in basis:
            if d - 1 not in basis:
                continue
            mat = [[0] * len(basis[d]) for _ in basis[d - 1]]
            for col, (v, y) in enumerate(basis[d]):
                for k in range(n):
                    if v[k] != 0:
                        continue
                    u = v[:k] + (1,) + v[k + 1:]
                    sgn = -1 if cube.sign_assignment(u, v) else 1
                    rv, ru = dc.resolved(v), dc.resolved(u)
                    vk = [i2 for i2, c in enumerate(rv.circles)
                          if any(p.crossing == k for p in c.passages)]
                    ukk = [i2 for i2, c in enumerate(ru.circles)
                           if any(p.crossing == k for p in c.passages)]
                    for x in _abelian_images(y, rv, ru, vk, ukk,
                                             dc.circle_match(rv, ru)):
                        if (u, x) in index[d - 1]:
                            mat[index[d - 1][(u, x)]][col] += sgn
            diffs[d] = Matrix.from_rows(mat) if mat else Matrix.zero(0, len(basis[d]))
        cx = ChainComplex.build(
            {d: tuple(f"{cube.bits(v)}|{g}" for (v, g) in b) for d, b in basis.items()},
            diffs)
        for d, h in homology_nontrivial(cx).items():
            rows.append({"i": -d, "j": j, "rank": h.free_rank,
                         "torsion": list(h.torsion)})
    rows.sort(key=lambda r: (r["j"], r["i"]))
    return rows
