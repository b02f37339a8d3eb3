"""Functors from the cube poset to finite sets and spans, encoded by their
values on vertices, edges, and canonically oriented 2-faces.

Stored data is the compact form: a finite set per vertex, a correspondence
per edge, and a 2-morphism per canonically oriented 2-face (the reverse
orientation is its inverse).  Validation covers the fiberwise composite
cardinality condition on squares and the hexagon condition on 3-faces,
which together let composites be reconstructed consistently along any
maximal chain.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Mapping, Sequence

from . import cube
from .burnside import (
    COMPOSE_SEP,
    BijectionOver,
    CorrElem,
    Correspondence,
    FiniteSet,
    compose,
    identity_correspondence,
    is_two_morphism,
    join_composite_id,
    split_composite_id,
)
from .cube import Face2, Face3, FaceInclusion, Vertex
from .errors import InputError, SearchCapExceeded

Edge = tuple[Vertex, Vertex]


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    failures: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=True)
class CubeFunctorData:
    """Values on all vertices, edges, and (optionally) 2-faces of {0,1}^n.

    ``face_matchings`` is None for partial data (vertices and edges only);
    otherwise it has an entry for every canonically oriented 2-face, mapping
    the composite through ``mid_a`` to the composite through ``mid_b``.
    """

    n: int
    vertex_sets: dict[Vertex, FiniteSet]
    edge_corrs: dict[Edge, Correspondence]
    face_matchings: dict[Face2, BijectionOver] | None = None

    @staticmethod
    def build(n: int,
              vertex_sets: Mapping[Vertex, FiniteSet],
              edge_corrs: Mapping[Edge, Correspondence],
              face_matchings: Mapping[Face2, BijectionOver] | None = None,
              ) -> "CubeFunctorData":
        vs: dict[Vertex, FiniteSet] = {}
        for v in cube.vertices(n):
            vs[v] = vertex_sets.get(v, FiniteSet(()))
        for v in vertex_sets:
            if v not in vs:
                raise InputError(f"vertex {v} outside the {n}-cube")
        ec: dict[Edge, Correspondence] = {}
        for (u, v) in cube.edges(n):
            corr = edge_corrs.get((u, v))
            if corr is None:
                corr = Correspondence(vs[u], vs[v], ())
            if corr.source_set != vs[u] or corr.target_set != vs[v]:
                raise InputError(f"edge {u}>{v} endpoint sets do not match")
            for e in corr.elements:
                if COMPOSE_SEP in e.id:
                    raise InputError(f"reserved separator in edge element id {e.id!r}")
            ec[(u, v)] = corr
        for e in edge_corrs:
            if e not in ec:
                raise InputError(f"edge {e} outside the {n}-cube")
        fm: dict[Face2, BijectionOver] | None = None
        if face_matchings is not None:
            fm = {}
            for f in cube.faces2(n):
                if f not in face_matchings:
                    raise InputError(f"missing matching for face {f}")
                fm[f] = face_matchings[f]
            for f in face_matchings:
                if f not in fm:
                    raise InputError(f"face {f} outside the {n}-cube")
        return CubeFunctorData(n, vs, ec, fm)

    @property
    def has_matchings(self) -> bool:
        return self.face_matchings is not None

    def vset(self, v: Vertex) -> FiniteSet:
        return self.vertex_sets[v]

    def edge(self, u: Vertex, v: Vertex) -> Correspondence:
        return self.edge_corrs[(u, v)]

    def matching(self, f: Face2) -> BijectionOver:
        assert self.face_matchings is not None
        return self.face_matchings[f]

    def matching_via(self, f: Face2, first_mid: Vertex) -> BijectionOver:
        """Matching oriented from the composite through ``first_mid``."""
        m = self.matching(f)
        if first_mid == f.mid_a:
            return m
        if first_mid == f.mid_b:
            return m.inverse()
        raise ValueError(f"{first_mid} is not a middle vertex of {f}")

    def support(self) -> list[tuple[Vertex, str]]:
        return [(v, x) for v in cube.vertices(self.n) for x in self.vset(v)]


@dataclass(frozen=True)
class StableFunctor:
    functor: CubeFunctorData
    shift: int = 0


def empty_functor(n: int, with_matchings: bool = True) -> CubeFunctorData:
    data = CubeFunctorData.build(n, {}, {}, None)
    return forced_matchings(data) if with_matchings else data


def one_point_functor(element: str = "*") -> CubeFunctorData:
    return CubeFunctorData.build(0, {(): FiniteSet((element,))}, {}, {})


# -- composites along chains ----------------------------------------------

def composite_along_chain(f: CubeFunctorData, chain: cube.Chain) -> Correspondence:
    """Flattened iterated fiber product along a saturated chain."""
    cube.check_chain(chain)
    cur = identity_correspondence(f.vset(chain[0]))
    for a, b in zip(chain, chain[1:]):
        cur = compose(f.edge(a, b), cur)
    if len(chain) > 1:
        # drop the seed identity component from ids: "e1∘x" -> "e1"
        elems = tuple(CorrElem(join_composite_id(split_composite_id(e.id)[:-1]), e.s, e.t)
                      for e in cur.elements)
        cur = Correspondence(cur.source_set, cur.target_set, elems)
    return cur


def _steps_of(eid: str) -> list[str]:
    """Composite id -> per-step element ids ordered from the top vertex."""
    return list(reversed(split_composite_id(eid)))


def _id_of_steps(steps: Sequence[str]) -> str:
    return join_composite_id(list(reversed(list(steps))))


def _apply_swap(f: CubeFunctorData, chain: cube.Chain, idx: int,
                steps: list[str]) -> list[str]:
    """Push one composite element across the 2-face swapping interior
    vertex ``idx`` of ``chain``."""
    new_chain = cube.chain_swap(chain, idx)
    face = Face2.spanning(chain[idx - 1], chain[idx], new_chain[idx], chain[idx + 1])
    m = f.matching_via(face, chain[idx])
    pair_id = join_composite_id([steps[idx], steps[idx - 1]])
    image = m.apply(pair_id)
    y2, x2 = split_composite_id(image)
    out = list(steps)
    out[idx - 1] = x2
    out[idx] = y2
    return out


def reconstruct_two_morphism(f: CubeFunctorData, c1: cube.Chain, c2: cube.Chain,
                             swap_path: Sequence[tuple[int, cube.Chain]] | None = None,
                             ) -> BijectionOver:
    """The bijection of chain composites obtained by composing stored face
    matchings along a swap path (the deterministic one unless given)."""
    if not f.has_matchings:
        raise InputError("functor has no face matchings")
    if swap_path is None:
        swap_path = cube.chain_swap_path(c1, c2)
    src = composite_along_chain(f, c1)
    dst = composite_along_chain(f, c2)
    mapping = {}
    for e in src.elements:
        steps = _steps_of(e.id) if len(c1) > 1 else [e.id]
        chain = c1
        for idx, nxt in swap_path:
            steps = _apply_swap(f, chain, idx, steps)
            chain = nxt
        mapping[e.id] = _id_of_steps(steps) if len(c1) > 1 else steps[0]
    if len(c1) == 1:
        # chain of length 0: identity on the identity correspondence
        mapping = {e.id: e.id for e in src.elements}
    return BijectionOver.of(src, dst, mapping)


# -- validation -------------------------------------------------------------

def validate_c0(f: CubeFunctorData) -> ValidationReport:
    """Fiberwise equality of the two composite cardinalities on every square."""
    failures = []
    for face in cube.faces2(f.n):
        ca = composite_along_chain(f, (face.top, face.mid_a, face.bottom))
        cb = composite_along_chain(f, (face.top, face.mid_b, face.bottom))
        fa = {k: len(v) for k, v in ca.fibers().items()}
        fb = {k: len(v) for k, v in cb.fibers().items()}
        if fa != fb:
            diff = {k: (fa.get(k, 0), fb.get(k, 0))
                    for k in sorted(set(fa) | set(fb)) if fa.get(k, 0) != fb.get(k, 0)}
            failures.append(f"face {_face_key(face)}: fiber sizes differ {diff}")
    return ValidationReport(not failures, tuple(failures))


def _hexagon_cycle(face: Face3) -> list[cube.Chain]:
    i, j, k = face.coords
    orders = [(i, j, k), (j, i, k), (j, k, i), (k, j, i), (k, i, j), (i, k, j)]
    return [cube.chain_from_coords(face.top, o) for o in orders]


def check_hexagon(f: CubeFunctorData, face: Face3) -> bool:
    """Composing the six swaps around a 3-face must be the identity."""
    chains = _hexagon_cycle(face)
    start = composite_along_chain(f, chains[0])
    for e in start.elements:
        steps = _steps_of(e.id)
        chain = chains[0]
        for nxt in chains[1:] + [chains[0]]:
            idx = _swap_index(chain, nxt)
            steps = _apply_swap(f, chain, idx, steps)
            chain = nxt
        if _id_of_steps(steps) != e.id:
            return False
    return True


def _swap_index(c1: cube.Chain, c2: cube.Chain) -> int:
    diffs = [i for i, (a, b) in enumerate(zip(c1, c2)) if a != b]
    if len(diffs) != 1:
        raise ValueError("chains are not one swap apart")
    return diffs[0]


def validate_coherence(f: CubeFunctorData) -> ValidationReport:
    """Stored matchings are 2-morphisms of the right composites, and every
    3-face hexagon commutes."""
    if not f.has_matchings:
        return ValidationReport(False, ("functor carries no face matchings",))
    c0 = validate_c0(f)
    if not c0:
        return ValidationReport(False, c0.failures)
    failures = []
    for face in cube.faces2(f.n):
        m = f.matching(face)
        ca = composite_along_chain(f, (face.top, face.mid_a, face.bottom))
        cb = composite_along_chain(f, (face.top, face.mid_b, face.bottom))
        if m.src != ca or m.dst != cb:
            failures.append(f"face {_face_key(face)}: matching endpoints are not the stored composites")
        elif not is_two_morphism(m.as_dict(), ca, cb):
            failures.append(f"face {_face_key(face)}: matching is not a 2-morphism")
    if failures:
        return ValidationReport(False, tuple(failures))
    for face3 in cube.faces3(f.n):
        if not check_hexagon(f, face3):
            failures.append(f"3-face at {cube.bits(face3.top)} coords "
                            f"{tuple(c + 1 for c in face3.coords)}: hexagon does not commute")
    return ValidationReport(not failures, tuple(failures))


# -- exhaustive matching search ---------------------------------------------

def boundary_faces2(face: Face3) -> list[Face2]:
    i, j, k = face.coords
    t = face.top
    return [Face2.from_top(t, i, j), Face2.from_top(t, i, k), Face2.from_top(t, j, k),
            Face2.from_top(cube.clear_coordinate(t, i), j, k),
            Face2.from_top(cube.clear_coordinate(t, j), i, k),
            Face2.from_top(cube.clear_coordinate(t, k), i, j)]


def _face_candidates(f: CubeFunctorData, face: Face2,
                     pinned: Mapping[str, str] | None,
                     max_per_face: int) -> list[BijectionOver]:
    ca = composite_along_chain(f, (face.top, face.mid_a, face.bottom))
    cb = composite_along_chain(f, (face.top, face.mid_b, face.bottom))
    fa = ca.fibers()
    fb = cb.fibers()
    if {k: len(v) for k, v in fa.items()} != {k: len(v) for k, v in fb.items()}:
        raise InputError("composite fibers do not match; run validate_c0 first")
    if pinned:
        ids_a, ids_b = set(ca.ids()), set(cb.ids())
        for s, t in pinned.items():
            if s not in ids_a or t not in ids_b:
                raise InputError(f"pinned pair {s!r}->{t!r} not in face {_face_key(face)}")
    count = 1
    for k in fa:
        count *= factorial(len(fa[k]))
    if count > max_per_face:
        raise SearchCapExceeded(f"face {_face_key(face)} admits {count} bijections")
    per_fiber = []
    for key in sorted(fa):
        srcs = [e.id for e in fa[key]]
        tgts = [e.id for e in fb[key]]
        opts = []
        for perm in itertools.permutations(tgts):
            m = dict(zip(srcs, perm))
            if pinned and any(m[s] != t for s, t in pinned.items() if s in m):
                continue
            opts.append(m)
        per_fiber.append(opts)
    out = []
    for combo in itertools.product(*per_fiber):
        m = {}
        for part in combo:
            m.update(part)
        out.append(BijectionOver.of(ca, cb, m))
    return out


def enumerate_matchings(f: CubeFunctorData,
                        pinned: Mapping[Face2, Mapping[str, str]] | None = None,
                        max_per_face: int = factorial(10),
                        max_faces: int = 64,
                        ) -> list[dict[Face2, dict[str, str]]]:
    """All globally coherent 2-face matching assignments for data that has
    vertices and edges (matchings, if any, are ignored).

    ``pinned`` optionally constrains some faces by partial id mappings.
    """
    faces = cube.faces2(f.n)
    if len(faces) > max_faces:
        raise SearchCapExceeded(f"{len(faces)} faces exceeds cap {max_faces}")
    report = validate_c0(f)
    if not report:
        raise InputError("condition on composite cardinalities fails: " +
                         "; ".join(report.failures))
    candidates = {face: _face_candidates(f, face, (pinned or {}).get(face), max_per_face)
                  for face in faces}
    face3s = cube.faces3(f.n)
    face_pos = {face: i for i, face in enumerate(faces)}
    # 3-faces become checkable once their last (in assignment order) 2-face is set
    ready_at: dict[int, list[Face3]] = {}
    for f3 in face3s:
        last = max(face_pos[b] for b in boundary_faces2(f3))
        ready_at.setdefault(last, []).append(f3)

    results: list[dict[Face2, dict[str, str]]] = []
    assignment: dict[Face2, BijectionOver] = {}

    def rec(i: int) -> None:
        if i == len(faces):
            results.append({face: b.as_dict() for face, b in assignment.items()})
            return
        face = faces[i]
        for cand in candidates[face]:
            assignment[face] = cand
            probe = CubeFunctorData(f.n, f.vertex_sets, f.edge_corrs, dict(assignment))
            if all(check_hexagon(probe, f3) for f3 in ready_at.get(i, [])):
                rec(i + 1)
        assignment.pop(face, None)

    rec(0)
    return results


def with_matchings(f: CubeFunctorData,
                   assignment: Mapping[Face2, Mapping[str, str]]) -> CubeFunctorData:
    fm = {}
    for face in cube.faces2(f.n):
        ca = composite_along_chain(f, (face.top, face.mid_a, face.bottom))
        cb = composite_along_chain(f, (face.top, face.mid_b, face.bottom))
        fm[face] = BijectionOver.of(ca, cb, dict(assignment[face]))
    return CubeFunctorData(f.n, f.vertex_sets, f.edge_corrs, fm)


def forced_matchings(f: CubeFunctorData) -> CubeFunctorData:
    """Attach the unique fiberwise matchings; error on any ambiguous fiber."""
    fm = {}
    for face in cube.faces2(f.n):
        ca = composite_along_chain(f, (face.top, face.mid_a, face.bottom))
        cb = composite_along_chain(f, (face.top, face.mid_b, face.bottom))
        fa, fb = ca.fibers(), cb.fibers()
        mapping = {}
        for key, elems in fa.items():
            others = fb.get(key, [])
            if len(elems) != len(others):
                raise InputError(f"face {_face_key(face)}: fiber sizes differ at {key}")
            if len(elems) > 1:
                raise InputError(f"face {_face_key(face)}: ambiguous fiber {key}")
            if elems:
                mapping[elems[0].id] = others[0].id
        fm[face] = BijectionOver.of(ca, cb, mapping)
    return CubeFunctorData(f.n, f.vertex_sets, f.edge_corrs, fm)


# -- relabeling --------------------------------------------------------------

def relabel(f: CubeFunctorData,
            vmap: Mapping[Vertex, Mapping[str, str]],
            emap: Mapping[Edge, Mapping[str, str]]) -> CubeFunctorData:
    """Rename vertex-set elements and edge elements; structure unchanged."""
    def vm(v: Vertex, x: str) -> str:
        return vmap.get(v, {}).get(x, x)

    def em(e: Edge, x: str) -> str:
        return emap.get(e, {}).get(x, x)

    vs = {v: FiniteSet(tuple(vm(v, x) for x in f.vset(v))) for v in cube.vertices(f.n)}
    ec = {}
    for (u, v) in cube.edges(f.n):
        corr = f.edge(u, v)
        ec[(u, v)] = Correspondence(vs[u], vs[v],
                                    tuple(CorrElem(em((u, v), e.id), vm(u, e.s), vm(v, e.t))
                                          for e in corr.elements))
    fm = None
    if f.has_matchings:
        fm = {}
        probe = CubeFunctorData(f.n, vs, ec, None)
        for face in cube.faces2(f.n):
            ea, eb = (face.top, face.mid_a), (face.mid_a, face.bottom)
            ea2, eb2 = (face.top, face.mid_b), (face.mid_b, face.bottom)
            mapping = {}
            for src, dst in f.matching(face).mapping:
                ys, xs = split_composite_id(src)
                yd, xd = split_composite_id(dst)
                mapping[join_composite_id([em(eb, ys), em(ea, xs)])] = \
                    join_composite_id([em(eb2, yd), em(ea2, xd)])
            ca = composite_along_chain(probe, (face.top, face.mid_a, face.bottom))
            cb = composite_along_chain(probe, (face.top, face.mid_b, face.bottom))
            fm[face] = BijectionOver.of(ca, cb, mapping)
    return CubeFunctorData(f.n, vs, ec, fm)


def tag_all(f: CubeFunctorData, tag: str) -> CubeFunctorData:
    vmap = {v: {x: tag + x for x in f.vset(v)} for v in cube.vertices(f.n)}
    emap = {e: {el.id: tag + el.id for el in f.edge(*e).elements} for e in cube.edges(f.n)}
    return relabel(f, vmap, emap)


# -- coproduct, product, face inclusions -------------------------------------

def coproduct(f: CubeFunctorData, g: CubeFunctorData,
              tags: tuple[str, str] = ("l·", "r·")) -> CubeFunctorData:
    """Vertexwise disjoint union; elements are tagged to stay distinct."""
    if f.n != g.n:
        raise InputError("coproduct requires equal cube dimensions")
    ft, gt = tag_all(f, tags[0]), tag_all(g, tags[1])
    vs = {v: FiniteSet(ft.vset(v).elements + gt.vset(v).elements)
          for v in cube.vertices(f.n)}
    ec = {}
    for e in cube.edges(f.n):
        ec[e] = Correspondence(vs[e[0]], vs[e[1]],
                               ft.edge(*e).elements + gt.edge(*e).elements)
    fm = None
    if f.has_matchings and g.has_matchings:
        fm = {}
        for face in cube.faces2(f.n):
            mapping = dict(ft.matching(face).mapping) | dict(gt.matching(face).mapping)
            probe = CubeFunctorData(f.n, vs, ec, None)
            ca = composite_along_chain(probe, (face.top, face.mid_a, face.bottom))
            cb = composite_along_chain(probe, (face.top, face.mid_b, face.bottom))
            fm[face] = BijectionOver.of(ca, cb, mapping)
    return CubeFunctorData(f.n, vs, ec, fm)


def _pair_id(a: str, b: str) -> str:
    return f"({a},{b})"


def product(f1: CubeFunctorData, f2: CubeFunctorData) -> CubeFunctorData:
    """Product functor on the concatenated cube; edges act on one factor and
    identically on the other, so the two kinds of mixed-square composites are
    matched by recombining the same pair of factor elements."""
    n1, n2 = f1.n, f2.n
    n = n1 + n2

    def vset(w: Vertex) -> FiniteSet:
        a, b = w[:n1], w[n1:]
        return FiniteSet(tuple(_pair_id(x, y) for x in f1.vset(a) for y in f2.vset(b)))

    vs = {w: vset(w) for w in cube.vertices(n)}
    ec: dict[Edge, Correspondence] = {}
    for (u, v) in cube.edges(n):
        k = cube.edge_coordinate(u, v)
        u1, u2, v1, v2 = u[:n1], u[n1:], v[:n1], v[n1:]
        elems = []
        if k < n1:
            for e in f1.edge(u1, v1).elements:
                for y in f2.vset(u2):
                    elems.append(CorrElem(_pair_id(e.id, y), _pair_id(e.s, y), _pair_id(e.t, y)))
        else:
            for x in f1.vset(u1):
                for e in f2.edge(u2, v2).elements:
                    elems.append(CorrElem(_pair_id(x, e.id), _pair_id(x, e.s), _pair_id(x, e.t)))
        ec[(u, v)] = Correspondence(vs[u], vs[v], tuple(elems))

    fm = None
    if f1.has_matchings and f2.has_matchings:
        fm = {}
        probe = CubeFunctorData(n, vs, ec, None)
        for face in cube.faces2(n):
            i = cube.edge_coordinate(face.top, face.mid_a)
            j = cube.edge_coordinate(face.top, face.mid_b)
            ca = composite_along_chain(probe, (face.top, face.mid_a, face.bottom))
            cb = composite_along_chain(probe, (face.top, face.mid_b, face.bottom))
            mapping: dict[str, str] = {}
            if j < n1:
                inner = Face2.from_top(face.top[:n1], i, j)
                m1 = f1.matching(inner).as_dict()
                for e in ca.elements:
                    ys, xs = split_composite_id(e.id)
                    y1, w = _split_pair(ys)
                    x1, w2 = _split_pair(xs)
                    yd, xd = split_composite_id(m1[join_composite_id([y1, x1])])
                    mapping[e.id] = join_composite_id([_pair_id(yd, w), _pair_id(xd, w2)])
            elif i >= n1:
                inner = Face2.from_top(face.top[n1:], i - n1, j - n1)
                m2 = f2.matching(inner).as_dict()
                for e in ca.elements:
                    ys, xs = split_composite_id(e.id)
                    w, y2 = _split_pair(ys)
                    w2, x2 = _split_pair(xs)
                    yd, xd = split_composite_id(m2[join_composite_id([y2, x2])])
                    mapping[e.id] = join_composite_id([_pair_id(w, yd), _pair_id(w2, xd)])
            else:
                # one coordinate in each factor: recombine (e1, e2)
                for e in ca.elements:
                    ys, xs = split_composite_id(e.id)
                    z, e2 = _split_pair(ys)     # (F1(mid) element, F2 edge element)
                    e1, w = _split_pair(xs)     # (F1 edge element, F2(top) element)
                    x1 = f1.edge(face.top[:n1], face.mid_a[:n1]).by_id(e1)
                    e2el = f2.edge(face.top[n1:], face.bottom[n1:]).by_id(e2)
                    mapping[e.id] = join_composite_id(
                        [_pair_id(e1, e2el.t), _pair_id(x1.s, e2)])
            fm[face] = BijectionOver.of(ca, cb, mapping)
    return CubeFunctorData(n, vs, ec, fm)


def _split_pair(pid: str) -> tuple[str, str]:
    if not (pid.startswith("(") and pid.endswith(")")):
        raise ValueError(f"not a pair id: {pid!r}")
    depth = 0
    for k, ch in enumerate(pid):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 1:
            return pid[1:k], pid[k + 1:-1]
    raise ValueError(f"not a pair id: {pid!r}")


def slice_functor(f: CubeFunctorData, iota: FaceInclusion) -> CubeFunctorData:
    """Pull back along a face inclusion (no support requirement)."""
    if iota.N != f.n:
        raise InputError("dimension mismatch")
    n = iota.n
    vs = {v: f.vset(iota.apply(v)) for v in cube.vertices(n)}
    ec = {(u, v): f.edge(iota.apply(u), iota.apply(v)) for (u, v) in cube.edges(n)}
    fm = None
    if f.has_matchings:
        fm = {}
        for face in cube.faces2(n):
            i = cube.edge_coordinate(face.top, face.mid_a)
            j = cube.edge_coordinate(face.top, face.mid_b)
            big = Face2.spanning(iota.apply(face.top), iota.apply(face.mid_a),
                                 iota.apply(face.mid_b), iota.apply(face.bottom))
            fm[face] = f.matching_via(big, iota.apply(face.mid_a))
    return CubeFunctorData(n, vs, ec, fm)


def extend_along_face_inclusion(f: CubeFunctorData, iota: FaceInclusion) -> CubeFunctorData:
    """Extend by empty sets off the image of the face inclusion."""
    if iota.n != f.n:
        raise InputError("dimension mismatch")
    n2 = iota.N
    image = {iota.apply(v): v for v in cube.vertices(f.n)}
    vs = {w: f.vset(image[w]) if w in image else FiniteSet(())
          for w in cube.vertices(n2)}
    ec = {}
    for (u, v) in cube.edges(n2):
        if u in image and v in image:
            ec[(u, v)] = f.edge(image[u], image[v])
        else:
            ec[(u, v)] = Correspondence(vs[u], vs[v], ())
    fm = None
    if f.has_matchings:
        fm = {}
        probe = CubeFunctorData(n2, vs, ec, None)
        for face in cube.faces2(n2):
            if face.top in image and face.bottom in image:
                small = Face2.spanning(image[face.top], image[face.mid_a],
                                       image[face.mid_b], image[face.bottom])
                fm[face] = f.matching_via(small, image[face.mid_a])
            else:
                ca = composite_along_chain(probe, (face.top, face.mid_a, face.bottom))
                cb = composite_along_chain(probe, (face.top, face.mid_b, face.bottom))
                fm[face] = BijectionOver.of(ca, cb, {})
    return CubeFunctorData(n2, vs, ec, fm)


def restrict_along_face_inclusion(f: CubeFunctorData, iota: FaceInclusion) -> CubeFunctorData:
    """Inverse of extension when the support lies in the image."""
    if iota.N != f.n:
        raise InputError("dimension mismatch")
    image = iota.image()
    for w in cube.vertices(f.n):
        if w not in image and len(f.vset(w)) > 0:
            raise InputError(f"support at {cube.bits(w)} outside the face image")
    return slice_functor(f, iota)


# -- sub and quotient functors ------------------------------------------------

SupportSet = set[tuple[Vertex, str]]


def _closed_under_targets(f: CubeFunctorData, s: SupportSet) -> str | None:
    for (u, v) in cube.edges(f.n):
        for e in f.edge(u, v).elements:
            if (u, e.s) in s and (v, e.t) not in s:
                return (f"edge {cube.bits(u)}>{cube.bits(v)} element {e.id} leaves "
                        f"the subset at {e.t}")
    return None


def _restrict_data(f: CubeFunctorData, s: SupportSet) -> CubeFunctorData:
    vs = {v: FiniteSet(tuple(x for x in f.vset(v) if (v, x) in s))
          for v in cube.vertices(f.n)}
    ec = {}
    for (u, v) in cube.edges(f.n):
        ec[(u, v)] = Correspondence(
            vs[u], vs[v],
            tuple(e for e in f.edge(u, v).elements
                  if (u, e.s) in s and (v, e.t) in s))
    fm = None
    if f.has_matchings:
        fm = {}
        probe = CubeFunctorData(f.n, vs, ec, None)
        for face in cube.faces2(f.n):
            ca = composite_along_chain(probe, (face.top, face.mid_a, face.bottom))
            keep = set(ca.ids())
            mapping = {k: v2 for k, v2 in f.matching(face).mapping if k in keep}
            cb = composite_along_chain(probe, (face.top, face.mid_b, face.bottom))
            fm[face] = BijectionOver.of(ca, cb, mapping)
    return CubeFunctorData(f.n, vs, ec, fm)


def sub_functor(f: CubeFunctorData, s: Iterable[tuple[Vertex, str]]) -> CubeFunctorData:
    """Restriction to a subset of generators whose span is closed under all
    edge targets."""
    ss = set(s)
    witness = _closed_under_targets(f, ss)
    if witness is not None:
        raise InputError("subset does not span a subcomplex: " + witness)
    return _restrict_data(f, ss)


def quotient_functor_data(f: CubeFunctorData, s: Iterable[tuple[Vertex, str]],
                          ) -> CubeFunctorData:
    """Restriction to a subset whose complement spans a subcomplex."""
    ss = set(s)
    comp = {(v, x) for v in cube.vertices(f.n) for x in f.vset(v)} - ss
    witness = _closed_under_targets(f, comp)
    if witness is not None:
        raise InputError("complement does not span a subcomplex: " + witness)
    return _restrict_data(f, ss)


def quotient_functor(f: CubeFunctorData, s: Iterable[tuple[Vertex, str]],
                     ) -> tuple[CubeFunctorData, "NaturalTransformation"]:
    """Quotient-style restriction together with the projection
    transformation onto it."""
    ss = set(s)
    fs = quotient_functor_data(f, ss)
    eta = projection_transformation(f, fs, ss)
    return fs, eta


# -- natural transformations ---------------------------------------------------

@dataclass(frozen=True)
class NaturalTransformation:
    """A functor on the (n+1)-cube whose restriction to the 1-side is the
    source and to the 0-side the target."""

    ambient: CubeFunctorData

    @property
    def n(self) -> int:
        return self.ambient.n - 1

    def _side(self, bit: int) -> FaceInclusion:
        return FaceInclusion(self.n, self.n + 1, (bit,) + (0,) * self.n,
                             tuple(range(1, self.n + 1)))

    def source_functor(self) -> CubeFunctorData:
        return slice_functor(self.ambient, self._side(1))

    def target_functor(self) -> CubeFunctorData:
        return slice_functor(self.ambient, self._side(0))

    def component(self, v: Vertex) -> Correspondence:
        return self.ambient.edge((1,) + v, (0,) + v)


def build_nat_trans(f: CubeFunctorData, g: CubeFunctorData,
                    components: Mapping[Vertex, Correspondence],
                    mixed_matchings: Mapping[Edge, Mapping[str, str]] | None = None,
                    ) -> NaturalTransformation:
    """Assemble and validate the ambient functor of a transformation f -> g.

    ``mixed_matchings`` maps each n-cube edge (u, v) to the matching from the
    composite g(u>v)∘component(u) to component(v)∘f(u>v); omitted entries are
    derived when every fiber is forced.
    """
    if f.n != g.n:
        raise InputError("transformation requires equal cube dimensions")
    if not (f.has_matchings and g.has_matchings):
        raise InputError("both functors need face matchings")
    n = f.n
    vs: dict[Vertex, FiniteSet] = {}
    ec: dict[Edge, Correspondence] = {}
    for v in cube.vertices(n):
        vs[(1,) + v] = f.vset(v)
        vs[(0,) + v] = g.vset(v)
    for (u, v) in cube.edges(n):
        ec[((1,) + u, (1,) + v)] = f.edge(u, v)
        ec[((0,) + u, (0,) + v)] = g.edge(u, v)
    for v in cube.vertices(n):
        comp = components[v]
        if comp.source_set != f.vset(v) or comp.target_set != g.vset(v):
            raise InputError(f"component at {cube.bits(v)} has wrong endpoint sets")
        ec[((1,) + v, (0,) + v)] = comp
    fm: dict[Face2, BijectionOver] = {}
    probe = CubeFunctorData(n + 1, vs, ec, None)
    for face in cube.faces2(n + 1):
        tb = face.top[0]
        if tb == face.bottom[0]:
            inner = Face2.spanning(face.top[1:], face.mid_a[1:], face.mid_b[1:],
                                   face.bottom[1:])
            src = f if tb == 1 else g
            fm[face] = src.matching(inner)
        else:
            # mixed square: mid_a = (0, u), mid_b = (1, v)
            u, v = face.top[1:], face.bottom[1:]
            ca = composite_along_chain(probe, (face.top, face.mid_a, face.bottom))
            cb = composite_along_chain(probe, (face.top, face.mid_b, face.bottom))
            given = (mixed_matchings or {}).get((u, v))
            if given is not None:
                mapping = dict(given)
            else:
                fa, fb_ = ca.fibers(), cb.fibers()
                mapping = {}
                for key, elems in fa.items():
                    others = fb_.get(key, [])
                    if len(elems) != len(others):
                        raise InputError(
                            f"mixed square over edge {cube.bits(u)}>{cube.bits(v)}: "
                            "composite fibers differ")
                    if len(elems) > 1:
                        raise InputError(
                            f"mixed square over edge {cube.bits(u)}>{cube.bits(v)}: "
                            "ambiguous fiber needs an explicit matching")
                    if elems:
                        mapping[elems[0].id] = others[0].id
            try:
                fm[face] = BijectionOver.of(ca, cb, mapping)
            except ValueError as exc:
                raise InputError(f"mixed square over edge {cube.bits(u)}>"
                                 f"{cube.bits(v)}: {exc}") from exc
    ambient = CubeFunctorData(n + 1, vs, ec, fm)
    rep = validate_coherence(ambient)
    if not rep:
        raise InputError("transformation is not coherent: " + "; ".join(rep.failures))
    return NaturalTransformation(ambient)


def identity_transformation(f: CubeFunctorData) -> NaturalTransformation:
    comps = {v: identity_correspondence(f.vset(v)) for v in cube.vertices(f.n)}
    mixed = {}
    for (u, v) in cube.edges(f.n):
        mixed[(u, v)] = {join_composite_id([e.id, e.s]): join_composite_id([e.t, e.id])
                         for e in f.edge(u, v).elements}
    return build_nat_trans(f, f, comps, mixed)


def sub_inclusion_transformation(f: CubeFunctorData, s: Iterable[tuple[Vertex, str]],
                                 ) -> tuple[CubeFunctorData, NaturalTransformation]:
    """The sub-functor on ``s`` and the inclusion transformation into f."""
    ss = set(s)
    fsub = sub_functor(f, ss)
    comps = {}
    mixed = {}
    for v in cube.vertices(f.n):
        comps[v] = Correspondence(fsub.vset(v), f.vset(v),
                                  tuple(CorrElem(x, x, x) for x in fsub.vset(v)))
    for (u, v) in cube.edges(f.n):
        mixed[(u, v)] = {join_composite_id([e.id, e.s]): join_composite_id([e.t, e.id])
                         for e in fsub.edge(u, v).elements}
    return fsub, build_nat_trans(fsub, f, comps, mixed)


def projection_transformation(f: CubeFunctorData, fs: CubeFunctorData,
                              s: SupportSet) -> NaturalTransformation:
    comps = {}
    mixed = {}
    for v in cube.vertices(f.n):
        comps[v] = Correspondence(f.vset(v), fs.vset(v),
                                  tuple(CorrElem(x, x, x) for x in fs.vset(v)))
    for (u, v) in cube.edges(f.n):
        mixed[(u, v)] = {join_composite_id([e.id, e.s]): join_composite_id([e.t, e.id])
                         for e in fs.edge(u, v).elements}
    return build_nat_trans(f, fs, comps, mixed)


def iso_transformation(f: CubeFunctorData, g: CubeFunctorData,
                       sigma: Mapping[Vertex, Mapping[str, str]],
                       tau: Mapping[Edge, Mapping[str, str]]) -> NaturalTransformation:
    """The transformation whose components are the graphs of a natural
    isomorphism (sigma on vertex sets, tau on edge elements)."""
    comps = {}
    mixed = {}
    for v in cube.vertices(f.n):
        comps[v] = Correspondence(f.vset(v), g.vset(v),
                                  tuple(CorrElem(x, x, sigma[v][x]) for x in f.vset(v)))
    for (u, v) in cube.edges(f.n):
        mixed[(u, v)] = {}
        for e in f.edge(u, v).elements:
            ge = tau[(u, v)][e.id]
            mixed[(u, v)][join_composite_id([ge, e.s])] = join_composite_id([e.t, e.id])
    return build_nat_trans(f, g, comps, mixed)


def glue_along_top(eta: NaturalTransformation, eta2: NaturalTransformation,
                   ) -> tuple[CubeFunctorData, NaturalTransformation, NaturalTransformation]:
    """Pushout of two transformations out of the same source: identify the
    1-side copies and take the disjoint union elsewhere.

    Returns (H, incl_from_target(eta), incl_from_target(eta2)); the inclusion
    sources are the extensions of the two targets by empty sets on the
    1-side, with their generators tagged "l·" and "r·" inside H.
    """
    if eta.source_functor() != eta2.source_functor():
        raise InputError("transformations do not share their restriction to the 1-side")
    n = eta.n
    g = eta.source_functor()
    fa, fb = eta.target_functor(), eta2.target_functor()
    fat, fbt = tag_all(fa, "l·"), tag_all(fb, "r·")
    vs: dict[Vertex, FiniteSet] = {}
    ec: dict[Edge, Correspondence] = {}
    for v in cube.vertices(n):
        vs[(1,) + v] = g.vset(v)
        vs[(0,) + v] = FiniteSet(fat.vset(v).elements + fbt.vset(v).elements)
    for (u, v) in cube.edges(n):
        ec[((1,) + u, (1,) + v)] = g.edge(u, v)
        ec[((0,) + u, (0,) + v)] = Correspondence(
            vs[(0,) + u], vs[(0,) + v], fat.edge(u, v).elements + fbt.edge(u, v).elements)
    for v in cube.vertices(n):
        elems = []
        for tag, tr in (("l·", eta), ("r·", eta2)):
            for e in tr.component(v).elements:
                elems.append(CorrElem(tag + e.id, e.s, tag + e.t))
        ec[((1,) + v, (0,) + v)] = Correspondence(vs[(1,) + v], vs[(0,) + v], tuple(elems))
    fm: dict[Face2, BijectionOver] = {}
    probe = CubeFunctorData(n + 1, vs, ec, None)
    for face in cube.faces2(n + 1):
        ca = composite_along_chain(probe, (face.top, face.mid_a, face.bottom))
        cb = composite_along_chain(probe, (face.top, face.mid_b, face.bottom))
        if face.top[0] == face.bottom[0]:
            if face.top[0] == 1:
                inner = Face2.spanning(face.top[1:], face.mid_a[1:], face.mid_b[1:],
                                       face.bottom[1:])
                fm[face] = g.matching(inner)
            else:
                inner = Face2.spanning(face.top[1:], face.mid_a[1:], face.mid_b[1:],
                                       face.bottom[1:])
                mapping = dict(fat.matching(inner).mapping) | dict(fbt.matching(inner).mapping)
                fm[face] = BijectionOver.of(ca, cb, mapping)
        else:
            mapping = {}
            for tag, tr in (("l·", eta), ("r·", eta2)):
                m = tr.ambient.matching(
                    Face2.spanning(face.top, face.mid_a, face.mid_b, face.bottom))
                for src, dst in m.mapping:
                    ys, xs = split_composite_id(src)
                    yd, xd = split_composite_id(dst)
                    # mid_a = (0, u): both steps rename on the 0-side/mixed side
                    mapping[join_composite_id([tag + ys, tag + xs])] = \
                        join_composite_id([tag + yd, xd])
            fm[face] = BijectionOver.of(ca, cb, mapping)
    h = CubeFunctorData(n + 1, vs, ec, fm)
    rep = validate_coherence(h)
    if not rep:
        raise InputError("glued functor is not coherent: " + "; ".join(rep.failures))
    iota0 = FaceInclusion(n, n + 1, (0,) * (n + 1), tuple(range(1, n + 1)))
    sl = {((0,) + v, "l·" + x) for v in cube.vertices(n) for x in fa.vset(v)}
    sr = {((0,) + v, "r·" + x) for v in cube.vertices(n) for x in fb.vset(v)}
    _, th_l = sub_inclusion_transformation(h, sl)
    _, th_r = sub_inclusion_transformation(h, sr)
    return h, th_l, th_r


# -- natural isomorphism search ------------------------------------------------

def is_natural_isomorphism(f: CubeFunctorData, g: CubeFunctorData,
                           sigma: Mapping[Vertex, Mapping[str, str]],
                           tau: Mapping[Edge, Mapping[str, str]]) -> bool:
    if f.n != g.n:
        return False
    for v in cube.vertices(f.n):
        sv = sigma[v]
        if sorted(sv.keys()) != sorted(f.vset(v).elements):
            return False
        if sorted(sv.values()) != sorted(g.vset(v).elements):
            return False
    for (u, v) in cube.edges(f.n):
        tv = tau[(u, v)]
        fe, ge = f.edge(u, v), g.edge(u, v)
        if sorted(tv.keys()) != sorted(fe.ids()):
            return False
        if sorted(tv.values()) != sorted(ge.ids()):
            return False
        for e in fe.elements:
            img = ge.by_id(tv[e.id])
            if img.s != sigma[u][e.s] or img.t != sigma[v][e.t]:
                return False
    if f.has_matchings != g.has_matchings:
        return False
    if f.has_matchings:
        for face in cube.faces2(f.n):
            mf = f.matching(face).as_dict()
            mg = g.matching(face).as_dict()
            ta = tau[(face.top, face.mid_a)]
            tb = tau[(face.mid_a, face.bottom)]
            ta2 = tau[(face.top, face.mid_b)]
            tb2 = tau[(face.mid_b, face.bottom)]
            for src, dst in mf.items():
                ys, xs = split_composite_id(src)
                yd, xd = split_composite_id(dst)
                if mg[join_composite_id([tb[ys], ta[xs]])] != \
                        join_composite_id([tb2[yd], ta2[xd]]):
                    return False
    return True


def find_natural_isomorphism(f: CubeFunctorData, g: CubeFunctorData,
                             max_nodes: int = 2_000_000,
                             sigma_hint: Mapping[Vertex, Mapping[str, str]] | None = None,
                             ):
    """Bounded exhaustive search for (sigma, tau) making f and g naturally
    isomorphic; returns the pair or None."""
    if f.n != g.n or f.has_matchings != g.has_matchings:
        return None
    n = f.n
    verts = cube.vertices(n)
    for v in verts:
        if len(f.vset(v)) != len(g.vset(v)):
            return None
    for e in cube.edges(n):
        if len(f.edge(*e)) != len(g.edge(*e)):
            return None

    nodes = 0

    def bump():
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise SearchCapExceeded("natural isomorphism search exceeded node cap")

    incident = {v: [] for v in verts}
    for (u, v) in cube.edges(n):
        incident[u].append(((u, v), "s"))
        incident[v].append(((u, v), "t"))

    def degree_sig(h: CubeFunctorData, v: Vertex, x: str):
        sig = []
        for e, role in incident[v]:
            corr = h.edge(*e)
            cnt = sum(1 for el in corr.elements
                      if (el.s if role == "s" else el.t) == x)
            sig.append(cnt)
        return tuple(sig)

    fsig = {v: {x: degree_sig(f, v, x) for x in f.vset(v)} for v in verts}
    gsig = {v: {x: degree_sig(g, v, x) for x in g.vset(v)} for v in verts}

    sigma: dict[Vertex, dict[str, str]] = {}

    def edge_counts_ok(v: Vertex) -> bool:
        for e, _ in incident[v]:
            u, w = e
            if u in sigma and w in sigma:
                fc: dict[tuple[str, str], int] = {}
                for el in f.edge(u, w).elements:
                    key = (sigma[u][el.s], sigma[w][el.t])
                    fc[key] = fc.get(key, 0) + 1
                gc: dict[tuple[str, str], int] = {}
                for el in g.edge(u, w).elements:
                    gc[(el.s, el.t)] = gc.get((el.s, el.t), 0) + 1
                if fc != gc:
                    return False
        return True

    def assign_sigma(vi: int):
        if vi == len(verts):
            yield None
            return
        v = verts[vi]
        if sigma_hint is not None and v in sigma_hint:
            cands = [dict(sigma_hint[v])]
        else:
            fx = list(f.vset(v))
            gx = list(g.vset(v))
            cands = []
            for perm in itertools.permutations(gx):
                m = dict(zip(fx, perm))
                if all(fsig[v][a] == gsig[v][b] for a, b in m.items()):
                    cands.append(m)
        for m in cands:
            bump()
            sigma[v] = m
            if edge_counts_ok(v):
                yield from assign_sigma(vi + 1)
            del sigma[v]

    edges = cube.edges(n)
    face_by_last_edge: dict[Edge, list[Face2]] = {}
    edge_pos = {e: i for i, e in enumerate(edges)}
    for face in cube.faces2(n):
        es = [(face.top, face.mid_a), (face.mid_a, face.bottom),
              (face.top, face.mid_b), (face.mid_b, face.bottom)]
        last = max(es, key=lambda e: edge_pos[e])
        face_by_last_edge.setdefault(last, []).append(face)

    tau: dict[Edge, dict[str, str]] = {}

    def face_ok(face: Face2) -> bool:
        mf = f.matching(face).as_dict()
        mg = g.matching(face).as_dict()
        ta = tau[(face.top, face.mid_a)]
        tb = tau[(face.mid_a, face.bottom)]
        ta2 = tau[(face.top, face.mid_b)]
        tb2 = tau[(face.mid_b, face.bottom)]
        for src, dst in mf.items():
            ys, xs = split_composite_id(src)
            yd, xd = split_composite_id(dst)
            if mg[join_composite_id([tb[ys], ta[xs]])] != \
                    join_composite_id([tb2[yd], ta2[xd]]):
                return False
        return True

    def assign_tau(ei: int):
        if ei == len(edges):
            yield None
            return
        e = edges[ei]
        u, w = e
        ffib: dict[tuple[str, str], list[str]] = {}
        for el in f.edge(*e).elements:
            ffib.setdefault((sigma[u][el.s], sigma[w][el.t]), []).append(el.id)
        gfib: dict[tuple[str, str], list[str]] = {}
        for el in g.edge(*e).elements:
            gfib.setdefault((el.s, el.t), []).append(el.id)
        if {k: len(v) for k, v in ffib.items()} != {k: len(v) for k, v in gfib.items()}:
            return
        keys = sorted(ffib)
        pools = [list(itertools.permutations(gfib[k])) for k in keys]
        for combo in itertools.product(*pools):
            bump()
            m: dict[str, str] = {}
            for k, perm in zip(keys, combo):
                m.update(dict(zip(ffib[k], perm)))
            tau[e] = m
            if (not f.has_matchings) or all(face_ok(fc) for fc in face_by_last_edge.get(e, [])):
                yield from assign_tau(ei + 1)
            del tau[e]

    try:
        for _ in assign_sigma(0):
            for _ in assign_tau(0):
                out_sigma = {v: dict(sigma[v]) for v in verts}
                out_tau = {e: dict(tau[e]) for e in edges}
                return out_sigma, out_tau
    except SearchCapExceeded:
        raise
    return None


# -- JSON ----------------------------------------------------------------------

def _face_key(face: Face2) -> str:
    return (f"{cube.bits(face.top)}>{cube.bits(face.bottom)} via "
            f"{cube.bits(face.mid_a)}|{cube.bits(face.mid_b)}")


def functor_to_json(sf: StableFunctor | CubeFunctorData) -> dict:
    if isinstance(sf, CubeFunctorData):
        sf = StableFunctor(sf, 0)
    f = sf.functor
    out: dict = {"schema_version": 1, "n": f.n, "shift": sf.shift}
    out["vertices"] = {cube.bits(v): list(f.vset(v).elements) for v in cube.vertices(f.n)}
    out["edges"] = {f"{cube.bits(u)}>{cube.bits(v)}":
                    [{"id": e.id, "s": e.s, "t": e.t} for e in f.edge(u, v).elements]
                    for (u, v) in cube.edges(f.n)}
    if f.has_matchings:
        out["faces"] = {_face_key(face): dict(f.matching(face).mapping)
                        for face in cube.faces2(f.n)}
    return out


def functor_from_json(obj: dict) -> StableFunctor:
    try:
        n = int(obj["n"])
        shift = int(obj.get("shift", 0))
        vs = {cube.vertex_from_bits(k): FiniteSet(tuple(v))
              for k, v in obj.get("vertices", {}).items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed functor data: {exc}") from exc
    ec = {}
    for key, elems in obj.get("edges", {}).items():
        try:
            us, vsx = key.split(">")
            u, v = cube.vertex_from_bits(us), cube.vertex_from_bits(vsx)
            ec[(u, v)] = Correspondence.of(vs.get(u, FiniteSet(())),
                                           vs.get(v, FiniteSet(())),
                                           [(e["id"], e["s"], e["t"]) for e in elems])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"edge {key}: {exc}") from exc
    fm = None
    if "faces" in obj:
        data = CubeFunctorData.build(n, vs, ec, None)
        fm = {}
        for key, mapping in obj["faces"].items():
            try:
                face, flipped = _face_from_key(key)
                ca = composite_along_chain(data, (face.top, face.mid_a, face.bottom))
                cb = composite_along_chain(data, (face.top, face.mid_b, face.bottom))
                bij = (BijectionOver.of(cb, ca, dict(mapping)).inverse() if flipped
                       else BijectionOver.of(ca, cb, dict(mapping)))
            except (KeyError, ValueError) as exc:
                raise InputError(f"face {key}: {exc}") from exc
            if face in fm and fm[face].as_dict() != bij.as_dict():
                raise InputError(f"face {key}: inconsistent with reverse orientation")
            fm[face] = bij
    return StableFunctor(CubeFunctorData.build(n, vs, ec, fm), shift)


def _face_from_key(key: str) -> tuple[Face2, bool]:
    try:
        span, mids = key.split(" via ")
        tops, bots = span.split(">")
        ma, mb = mids.split("|")
        top = cube.vertex_from_bits(tops)
        bottom = cube.vertex_from_bits(bots)
        mida = cube.vertex_from_bits(ma)
        midb = cube.vertex_from_bits(mb)
    except ValueError as exc:
        raise InputError(f"malformed face key {key!r}") from exc
    face = Face2.spanning(top, mida, midb, bottom)
    return face, face.mid_a != mida
