"""Finite complexes built from simplices with distinct vertices, the span
functor they induce on the cube over their vertex set, and an independent
boundary-matrix homology used to cross-validate the totalization route."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import cube
from .burnside import CorrElem, Correspondence, FiniteSet
from .cube import Vertex
from .errors import InputError
from .functor import CubeFunctorData, StableFunctor, forced_matchings
from .linalg import Matrix
from .totalization import ChainComplex, HomologyGroup, homology


@dataclass(frozen=True)
class Simplex:
    id: str
    verts: tuple[int, ...]  # 1-based vertex numbers, ordered, distinct

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.verts)

    @property
    def dim(self) -> int:
        return len(self.verts) - 1


@dataclass(frozen=True)
class DeltaComplex:
    n_vertices: int
    simplices: tuple[Simplex, ...]

    def __post_init__(self):
        ids = [s.id for s in self.simplices]
        if len(set(ids)) != len(ids):
            raise InputError("duplicate simplex ids")
        supports = {s.support for s in self.simplices}
        for s in self.simplices:
            if len(set(s.verts)) != len(s.verts):
                raise InputError(f"simplex {s.id} repeats a vertex")
            if any(not 1 <= v <= self.n_vertices for v in s.verts):
                raise InputError(f"simplex {s.id} uses an unknown vertex")
            for k in range(len(s.verts)):
                face = frozenset(s.verts[:k] + s.verts[k + 1:])
                if face and face not in supports:
                    raise InputError(f"face {sorted(face)} of {s.id} is missing")

    def by_dim(self, k: int) -> list[Simplex]:
        return [s for s in self.simplices if s.dim == k]

    def unique_by_support(self, support: frozenset[int]) -> Simplex:
        hits = [s for s in self.simplices if s.support == support]
        if len(hits) != 1:
            raise InputError(f"support {sorted(support)} names {len(hits)} simplices")
        return hits[0]

    def to_json(self) -> dict:
        return {"n_vertices": self.n_vertices,
                "simplices": [{"id": s.id, "verts": list(s.verts)}
                              for s in self.simplices]}

    @staticmethod
    def from_json(obj: dict) -> "DeltaComplex":
        return DeltaComplex(int(obj["n_vertices"]),
                            tuple(Simplex(str(s["id"]), tuple(int(v) for v in s["verts"]))
                                  for s in obj["simplices"]))


def complex_from_maximal(n_vertices: int, maximal: list[tuple[int, ...]]) -> DeltaComplex:
    """Simplicial complex generated by maximal faces; ids name vertex sets."""
    supports: set[tuple[int, ...]] = set()
    for m in maximal:
        vs = tuple(sorted(set(m)))
        for k in range(1, len(vs) + 1):
            for sub in itertools.combinations(vs, k):
                supports.add(sub)
    simplices = tuple(Simplex("s" + "_".join(map(str, vs)), vs)
                      for vs in sorted(supports, key=lambda t: (len(t), t)))
    return DeltaComplex(n_vertices, simplices)


def delta_functor(x: DeltaComplex) -> StableFunctor:
    """Vertex v carries the simplices supported exactly on its 1-bits; edges
    are the containment pairs; square matchings are the forced ones.  The
    stable shift is -1 so a k-simplex sits in degree k."""
    n = x.n_vertices
    by_support: dict[frozenset[int], list[Simplex]] = {}
    for s in x.simplices:
        by_support.setdefault(s.support, []).append(s)

    def bits_support(v: Vertex) -> frozenset[int]:
        return frozenset(i + 1 for i, b in enumerate(v) if b)

    vs = {}
    for v in cube.vertices(n):
        vs[v] = FiniteSet(tuple(s.id for s in by_support.get(bits_support(v), [])))
    ec = {}
    for (u, v) in cube.edges(n):
        elems = []
        for su in by_support.get(bits_support(u), []):
            for sv in by_support.get(bits_support(v), []):
                elems.append(CorrElem(f"{sv.id}<{su.id}", su.id, sv.id))
        ec[(u, v)] = Correspondence(vs[u], vs[v], tuple(elems))
    data = forced_matchings(CubeFunctorData.build(n, vs, ec, None))
    return StableFunctor(data, -1)


def simplicial_homology(x: DeltaComplex) -> dict[int, HomologyGroup]:
    """Boundary matrices with alternating signs, assembled without the cube."""
    basis = {}
    diffs = {}
    for k in range(0, max((s.dim for s in x.simplices), default=-1) + 1):
        sims = x.by_dim(k)
        if sims:
            basis[k] = tuple(s.id for s in sims)
    index = {k: {sid: i for i, sid in enumerate(b)} for k, b in basis.items()}
    for k in basis:
        if k - 1 not in basis:
            continue
        rows = [[0] * len(basis[k]) for _ in basis[k - 1]]
        for j, s in enumerate(x.by_dim(k)):
            for i in range(len(s.verts)):
                face = x.unique_by_support(frozenset(s.verts[:i] + s.verts[i + 1:]))
                rows[index[k - 1][face.id]][j] += (-1) ** i
        diffs[k] = Matrix.from_rows(rows)
    return homology(ChainComplex.build(basis, diffs))
