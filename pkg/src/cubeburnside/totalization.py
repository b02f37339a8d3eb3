"""Chain complexes of finitely generated free abelian groups, their exact
integral homology, and the totalization of cube functors.

Homological (lower) grading throughout; dualizing negates degrees.  The
generator of a functor's totalization sitting over vertex v at set element x
is labeled "<bits(v)>|<x>" and placed in degree |v| + shift.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from . import cube
from .cube import FaceInclusion, Vertex
from .errors import InputError, InternalInvariantError
from .functor import CubeFunctorData, NaturalTransformation, StableFunctor
from .linalg import Matrix, smith_normal_form


@dataclass(frozen=True)
class ChainComplex:
    """Per-degree ordered bases and differentials d: C_d -> C_{d-1}.

    Normalized: only nonempty degrees appear, and a differential (possibly
    zero) is stored exactly for each adjacent pair of present degrees.
    """

    basis: dict[int, tuple[str, ...]]
    diffs: dict[int, Matrix]

    @staticmethod
    def build(basis: Mapping[int, tuple[str, ...]],
              diffs: Mapping[int, Matrix],
              check_d2: bool = True) -> "ChainComplex":
        bs = {d: tuple(b) for d, b in basis.items() if len(b) > 0}
        ds: dict[int, Matrix] = {}
        for d in bs:
            if d - 1 in bs:
                m = diffs.get(d)
                if m is None:
                    m = Matrix.zero(len(bs[d - 1]), len(bs[d]))
                if (m.rows, m.cols) != (len(bs[d - 1]), len(bs[d])):
                    raise InputError(f"differential at degree {d} has wrong shape")
                ds[d] = m
        for d, m in diffs.items():
            if d not in ds and not m.is_zero():
                raise InputError(f"nonzero differential at degree {d} without groups")
        c = ChainComplex(bs, ds)
        if check_d2:
            for d in ds:
                if d - 1 in ds:
                    if not (ds[d - 1] * ds[d]).is_zero():
                        raise InternalInvariantError(
                            f"differential does not square to zero at degree {d}")
        return c

    def degrees(self) -> list[int]:
        return sorted(self.basis)

    def dim(self, d: int) -> int:
        return len(self.basis.get(d, ()))

    def diff(self, d: int) -> Matrix:
        if d in self.diffs:
            return self.diffs[d]
        return Matrix.zero(self.dim(d - 1), self.dim(d))

    def is_zero_complex(self) -> bool:
        return not self.basis


ZERO_COMPLEX = ChainComplex({}, {})


@dataclass(frozen=True)
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    matrices: dict[int, Matrix]

    @staticmethod
    def build(source: ChainComplex, target: ChainComplex,
              matrices: Mapping[int, Matrix]) -> "ChainMap":
        ms = {}
        for d in set(source.basis) | set(matrices):
            m = matrices.get(d)
            if m is None:
                m = Matrix.zero(target.dim(d), source.dim(d))
            if (m.rows, m.cols) != (target.dim(d), source.dim(d)):
                raise InputError(f"chain map matrix at degree {d} has wrong shape")
            if m.rows and m.cols:
                ms[d] = m
            elif not m.is_zero():
                raise InputError(f"nonzero map at empty degree {d}")
        f = ChainMap(source, target, ms)
        for d in set(source.basis):
            lhs = f.matrix(d - 1) * source.diff(d)
            rhs = target.diff(d) * f.matrix(d)
            if lhs != rhs:
                raise InputError(f"does not commute with differentials at degree {d}")
        return f

    def matrix(self, d: int) -> Matrix:
        if d in self.matrices:
            return self.matrices[d]
        return Matrix.zero(self.target.dim(d), self.source.dim(d))


@dataclass(frozen=True)
class HomologyGroup:
    degree: int
    free_rank: int
    torsion: tuple[int, ...]  # invariant factors > 1, each dividing the next

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def to_json(self) -> dict:
        return {"degree": self.degree, "rank": self.free_rank,
                "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class _Presentation:
    """Homology at one degree: generators are a kernel basis, relations the
    boundary image in kernel coordinates."""

    kernel: Matrix        # dim C_d x k, columns form a saturated kernel basis
    vinv: Matrix          # inverse of the SNF column transform of d_d
    rank: int             # rank of d_d
    relations: Matrix     # k x dim C_{d+1}


def _presentation(c: ChainComplex, d: int) -> _Presentation:
    nd = c.dim(d)
    snf = smith_normal_form(c.diff(d))
    r = snf.rank
    kernel_cols = list(range(r, nd))
    kernel = snf.v.submatrix(list(range(nd)), kernel_cols)
    coords = snf.v_inv * c.diff(d + 1)
    rel = coords.submatrix(kernel_cols, list(range(c.dim(d + 1))))
    upper = coords.submatrix(list(range(r)), list(range(c.dim(d + 1))))
    if not upper.is_zero():
        raise InternalInvariantError("boundary image not contained in the kernel")
    return _Presentation(kernel, snf.v_inv, r, rel)


def _group_of(pres: _Presentation, d: int) -> HomologyGroup:
    k = pres.kernel.cols
    snf = smith_normal_form(pres.relations)
    facs = snf.invariant_factors
    torsion = tuple(x for x in facs if x > 1)
    return HomologyGroup(d, k - len(facs), torsion)


def homology(c: ChainComplex) -> dict[int, HomologyGroup]:
    """Exact integral homology in every nonempty degree."""
    out = {}
    for d in c.degrees():
        out[d] = _group_of(_presentation(c, d), d)
    return out


def homology_nontrivial(c: ChainComplex) -> dict[int, HomologyGroup]:
    return {d: h for d, h in homology(c).items() if not h.is_trivial}


def is_quasi_iso(f: ChainMap) -> bool:
    """True iff f induces an isomorphism on integral homology everywhere.

    Checks that the groups have equal invariants and that the induced map is
    surjective; finitely generated abelian groups are Hopfian, so this
    suffices for isomorphism.
    """
    degrees = sorted(set(f.source.basis) | set(f.target.basis))
    for d in degrees:
        ps = _presentation(f.source, d) if f.source.dim(d) else None
        pt = _presentation(f.target, d) if f.target.dim(d) else None
        hs = _group_of(ps, d) if ps else HomologyGroup(d, 0, ())
        ht = _group_of(pt, d) if pt else HomologyGroup(d, 0, ())
        if (hs.free_rank, hs.torsion) != (ht.free_rank, ht.torsion):
            return False
        if ht.is_trivial:
            continue
        assert ps is not None and pt is not None
        img = f.matrix(d) * ps.kernel
        coords = pt.vinv * img
        upper = coords.submatrix(list(range(pt.rank)), list(range(img.cols)))
        if not upper.is_zero():
            raise InternalInvariantError("chain map image leaves the kernel")
        y = coords.submatrix(list(range(pt.rank, pt.vinv.rows)), list(range(img.cols)))
        stacked = y.hstack(pt.relations)
        facs = smith_normal_form(stacked).invariant_factors
        k = pt.kernel.cols
        if len(facs) != k or any(x != 1 for x in facs):
            return False
    return True


# -- totalization ---------------------------------------------------------------

def tot_label(v: Vertex, x: str) -> str:
    return f"{cube.bits(v)}|{x}"


def tot(sf: StableFunctor | CubeFunctorData) -> ChainComplex:
    """Signed sum of linearized edge maps over the cube, graded by |v|+shift.

    Shifting by r follows the suspension convention and multiplies the
    differential by (-1)^r; that is what makes the face-inclusion shift map
    below a chain isomorphism.  Requires only vertex and edge data; squares
    must satisfy the fiberwise cardinality condition, which is re-asserted
    here as d∘d = 0.
    """
    if isinstance(sf, CubeFunctorData):
        sf = StableFunctor(sf, 0)
    f, r = sf.functor, sf.shift
    basis: dict[int, list[str]] = {}
    index: dict[tuple[Vertex, str], int] = {}
    for v in cube.vertices(f.n):
        d = cube.grading(v) + r
        for x in f.vset(v):
            basis.setdefault(d, [])
            index[(v, x)] = len(basis[d])
            basis[d].append(tot_label(v, x))
    diffs: dict[int, Matrix] = {}
    for d in list(basis):
        if d - 1 not in basis:
            continue
        rows = [[0] * len(basis[d]) for _ in basis[d - 1]]
        for u in cube.vertices(f.n):
            if cube.grading(u) + r != d:
                continue
            for k in range(f.n):
                if u[k] != 1:
                    continue
                v = cube.clear_coordinate(u, k)
                sign = -1 if (cube.sign_assignment(u, v) + r) % 2 else 1
                for e in f.edge(u, v).elements:
                    rows[index[(v, e.t)]][index[(u, e.s)]] += sign
        diffs[d] = Matrix.from_rows(rows) if rows else Matrix.zero(0, len(basis[d]))
    try:
        return ChainComplex.build({d: tuple(b) for d, b in basis.items()}, diffs)
    except InternalInvariantError as exc:
        raise InternalInvariantError(
            "totalization differential does not square to zero; "
            "the square condition fails") from exc


def tot_nat_trans(eta: NaturalTransformation, shift: int = 0) -> ChainMap:
    """Degree-preserving chain map extracted from the mixed edges."""
    src = tot(StableFunctor(eta.source_functor(), shift))
    tgt = tot(StableFunctor(eta.target_functor(), shift))
    mats: dict[int, Matrix] = {}
    for d in src.degrees():
        if tgt.dim(d) == 0:
            continue
        rows = [[0] * src.dim(d) for _ in range(tgt.dim(d))]
        src_index = {lbl: i for i, lbl in enumerate(src.basis[d])}
        tgt_index = {lbl: i for i, lbl in enumerate(tgt.basis.get(d, ()))}
        for v in cube.vertices(eta.n):
            if cube.grading(v) + shift != d:
                continue
            for e in eta.component(v).elements:
                rows[tgt_index[tot_label(v, e.t)]][src_index[tot_label(v, e.s)]] += 1
        mats[d] = Matrix.from_rows(rows)
    return ChainMap.build(src, tgt, mats)


# -- constructions on complexes ---------------------------------------------------

def dualize(c: ChainComplex) -> ChainComplex:
    """Transpose differentials; degree d becomes -d."""
    basis = {-d: b for d, b in c.basis.items()}
    diffs = {}
    for d in c.basis:
        if d + 1 in c.basis:
            diffs[-d] = c.diff(d + 1).transpose()
    return ChainComplex.build(basis, diffs)


def direct_sum(c1: ChainComplex, c2: ChainComplex,
               tags: tuple[str, str] = ("l·", "r·")) -> ChainComplex:
    basis = {}
    diffs = {}
    for d in sorted(set(c1.basis) | set(c2.basis)):
        basis[d] = tuple(tags[0] + x for x in c1.basis.get(d, ())) + \
                   tuple(tags[1] + x for x in c2.basis.get(d, ()))
    for d in basis:
        if d - 1 not in basis:
            continue
        m1, m2 = c1.diff(d), c2.diff(d)
        rows = []
        for i in range(m1.rows):
            rows.append(list(m1.entries[i]) + [0] * m2.cols)
        for i in range(m2.rows):
            rows.append([0] * m1.cols + list(m2.entries[i]))
        diffs[d] = Matrix.from_rows(rows) if rows else Matrix.zero(0, len(basis[d]))
    return ChainComplex.build(basis, diffs)


def tensor(c1: ChainComplex, c2: ChainComplex) -> ChainComplex:
    """Tensor product with the sign (-1)^p on the second-factor differential.

    Degree-m basis: pairs (p ascending, first factor major)."""
    basis: dict[int, list[str]] = {}
    index: dict[tuple[int, int, int, int], int] = {}  # (p, q, i, j) -> position
    for p in c1.degrees():
        for q in c2.degrees():
            m = p + q
            basis.setdefault(m, [])
            for i, a in enumerate(c1.basis[p]):
                for j, b in enumerate(c2.basis[q]):
                    index[(p, q, i, j)] = len(basis[m])
                    basis[m].append(f"{a}⊗{b}")
    diffs = {}
    for m in basis:
        if m - 1 not in basis:
            continue
        rows = [[0] * len(basis[m]) for _ in basis[m - 1]]
        for p in c1.degrees():
            q = m - p
            if q not in c2.basis:
                continue
            d1 = c1.diff(p)
            d2 = c2.diff(q)
            for i in range(c1.dim(p)):
                for j in range(c2.dim(q)):
                    col = index[(p, q, i, j)]
                    for i2 in range(c1.dim(p - 1)):
                        if d1[i2, i]:
                            rows[index[(p - 1, q, i2, j)]][col] += d1[i2, i]
                    sgn = -1 if p % 2 else 1
                    for j2 in range(c2.dim(q - 1)):
                        if d2[j2, j]:
                            rows[index[(p, q - 1, i, j2)]][col] += sgn * d2[j2, j]
        diffs[m] = Matrix.from_rows(rows) if rows else Matrix.zero(0, len(basis[m]))
    return ChainComplex.build({d: tuple(b) for d, b in basis.items()}, diffs)


def cone(f: ChainMap) -> ChainComplex:
    """Mapping cone: degree m is target_m then source_{m-1}; the source block
    differential is negated and the map feeds the target block."""
    basis = {}
    degrees = set(f.target.basis) | {d + 1 for d in f.source.basis}
    for m in degrees:
        basis[m] = tuple("0·" + x for x in f.target.basis.get(m, ())) + \
                   tuple("1·" + x for x in f.source.basis.get(m - 1, ()))
    diffs = {}
    for m in basis:
        if m - 1 not in basis:
            continue
        dt = f.target.diff(m)
        ds = f.source.diff(m - 1)
        fm = f.matrix(m - 1)
        tr, sr = f.target.dim(m - 1), f.source.dim(m - 2)
        tc, sc = f.target.dim(m), f.source.dim(m - 1)
        rows = []
        for i in range(tr):
            rows.append([dt[i, j] for j in range(tc)] + [fm[i, j] for j in range(sc)])
        for i in range(sr):
            rows.append([0] * tc + [-ds[i, j] for j in range(sc)])
        diffs[m] = Matrix.from_rows(rows) if rows else Matrix.zero(0, len(basis[m]))
    return ChainComplex.build(basis, diffs)


def shift_complex(c: ChainComplex, r: int) -> ChainComplex:
    """Suspension: raise degrees by r and scale the differential by (-1)^r."""
    sgn = -1 if r % 2 else 1
    return ChainComplex.build({d + r: b for d, b in c.basis.items()},
                              {d + r: (m if sgn == 1 else -m)
                               for d, m in c.diffs.items()})


def complexes_equal_under(c1: ChainComplex, c2: ChainComplex,
                          lmap: Callable[[int, str], str]) -> bool:
    """Entrywise equality after identifying bases by the label bijection."""
    if set(c1.basis) != set(c2.basis):
        return False
    perms: dict[int, list[int]] = {}
    for d in c1.basis:
        mapped = [lmap(d, x) for x in c1.basis[d]]
        if sorted(mapped) != sorted(c2.basis[d]):
            return False
        pos2 = {x: i for i, x in enumerate(c2.basis[d])}
        perms[d] = [pos2[x] for x in mapped]
    for d in c1.basis:
        if d - 1 not in c1.basis:
            continue
        m1, m2 = c1.diff(d), c2.diff(d)
        for i in range(m1.rows):
            for j in range(m1.cols):
                if m1[i, j] != m2[perms[d - 1][i], perms[d][j]]:
                    return False
    return True


# -- face inclusion shift isomorphism ----------------------------------------------

@dataclass(frozen=True)
class SignTwist:
    """A mod-2 vertex assignment solving the edge equation
    t_u + t_v = |iota| + s_{u,v} + s_{iota u, iota v}."""

    iota: FaceInclusion
    values: dict[Vertex, int]


def face_shift_iso(f: CubeFunctorData, iota: FaceInclusion,
                   ) -> tuple[SignTwist, ChainMap]:
    """The signed identity identifying the extension's totalization with the
    weight-shifted totalization of the original functor."""
    if iota.n != f.n:
        raise InputError("dimension mismatch")
    n = f.n
    w = iota.weight
    t: dict[Vertex, int] = {(0,) * n: 0}
    order = sorted(cube.vertices(n), key=cube.grading)
    for v in order:
        if v in t:
            continue
        k = next(i for i in range(n) if v[i] == 1)
        below = cube.clear_coordinate(v, k)
        rhs = (w + cube.sign_assignment(v, below)
               + cube.sign_assignment(iota.apply(v), iota.apply(below))) % 2
        t[v] = (t[below] + rhs) % 2
    for (u, v) in cube.edges(n):
        rhs = (w + cube.sign_assignment(u, v)
               + cube.sign_assignment(iota.apply(u), iota.apply(v))) % 2
        if (t[u] + t[v]) % 2 != rhs:
            raise InternalInvariantError("sign twist closure fails")
    from .functor import extend_along_face_inclusion
    src = tot(StableFunctor(extend_along_face_inclusion(f, iota), 0))
    tgt = tot(StableFunctor(f, w))
    mats = {}
    for d in src.degrees():
        src_index = {lbl: i for i, lbl in enumerate(src.basis[d])}
        rows = [[0] * src.dim(d) for _ in range(tgt.dim(d))]
        tgt_index = {lbl: i for i, lbl in enumerate(tgt.basis.get(d, ()))}
        for v in cube.vertices(n):
            if cube.grading(v) + w != d:
                continue
            for x in f.vset(v):
                sign = -1 if t[v] else 1
                rows[tgt_index[tot_label(v, x)]][src_index[tot_label(iota.apply(v), x)]] = sign
        mats[d] = Matrix.from_rows(rows) if rows else Matrix.zero(0, src.dim(d))
    cm = ChainMap.build(src, tgt, mats)
    for d in src.degrees():
        m = cm.matrix(d)
        if m.rows != m.cols or abs(m.det()) != 1:
            raise InternalInvariantError("face shift map is not an isomorphism")
    return SignTwist(iota, t), cm
