import itertools

import pytest

from cubeburnside import cube, fixtures as FX
from cubeburnside import khovanov as kh
from cubeburnside.burnside import linearize
from cubeburnside.errors import InputError
from cubeburnside.functor import (CubeFunctorData, composite_along_chain,
                                  coproduct, find_natural_isomorphism, product,
                                  validate_c0, validate_coherence)
from cubeburnside.linalg import Matrix
from cubeburnside.totalization import (direct_sum, homology_nontrivial,
                                       tot)


# -- parsing ---------------------------------------------------------------------

def test_parse_examples():
    u0 = kh.parse_pd("PD[]", free_loops=1)
    assert u0.n == 0 and u0.free_loops == 1
    tref = kh.parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]")
    assert tref.n == 3 and len(tref.arcs()) == 6
    kink = kh.parse_pd("PD[X(1,1,2,2)]")
    assert kink.n == 1


def test_parse_errors():
    with pytest.raises(InputError):
        kh.parse_pd("PD[X(1,2,3)]")
    with pytest.raises(InputError):
        kh.parse_pd("PD[X(1,1,1,2)]")          # arc 1 occurs three times
    with pytest.raises(InputError):
        # over-strand arcs not consecutive either way at the first crossing
        kh.parse_pd("PD[X(1,6,2,3),X(3,2,4,5),X(5,4,6,1)]")
    with pytest.raises(InputError):
        kh.parse_pd("PD[X(1,2,1,2)]")  # head/tail data underdetermined
    with pytest.raises(InputError):
        kh.parse_pd("nonsense")
    with pytest.raises(InputError):
        kh.parse_pd("PD[X(1,5,2,6),X(2,6,1,5)]")  # labels not consecutive


def test_parse_json_form():
    pd = kh.parse_pd({"crossings": [[1, 1, 2, 2]], "free_loops": 1})
    assert pd.n == 1 and pd.free_loops == 1
    assert kh.parse_pd(pd.to_json()) == pd


# -- signs -----------------------------------------------------------------------

def test_crossing_signs_examples(pd_corpus):
    assert kh.crossing_signs(pd_corpus["unknot0"]) == (0, 0)
    np_, nm = kh.crossing_signs(pd_corpus["trefoil_pos"])
    assert np_ + nm == 3
    np2, nm2 = kh.crossing_signs(pd_corpus["trefoil_neg"])
    assert (np2, nm2) == (nm, np_)  # mirror swaps the counts
    assert kh.crossing_signs(pd_corpus["kink_neg"]) == (0, 1)
    assert kh.crossing_signs(pd_corpus["kink_pos"]) == (1, 0)
    assert kh.crossing_signs(pd_corpus["fig8"]) == (2, 2)


# -- resolutions -----------------------------------------------------------------

def test_resolve_examples(pd_corpus):
    u0 = pd_corpus["unknot0"]
    assert len(kh.resolve(u0, ()).circles) == 1
    kink = pd_corpus["kink_neg"]
    counts = sorted(len(kh.resolve(kink, (b,)).circles) for b in (0, 1))
    assert counts == [1, 2]
    tref = pd_corpus["trefoil_pos"]
    assert len(kh.resolve(tref, (0, 0, 0)).circles) == 2
    assert len(kh.resolve(tref, (1, 1, 1)).circles) == 3
    with pytest.raises(InputError):
        kh.resolve(tref, (0, 0))


def test_resolve_circles_partition_arcs(pd_corpus):
    pd = pd_corpus["fig8"]
    for v in cube.vertices(pd.n):
        rd = kh.resolve(pd, v)
        arcs = sorted(a for c in rd.circles for a in c.arcs)
        assert arcs == pd.arcs()
        for c in rd.circles:
            assert len(c.passages) == len(c.walk_arcs)


# -- edge correspondences and gradings ---------------------------------------------

def test_edge_correspondence_merge_split(pd_corpus):
    kink = pd_corpus["kink_neg"]
    # u=(1): two circles; v=(0): one circle; the edge splits the v-circle
    corr = kh.edge_correspondence(kink, (1,), (0,))
    by_target = {}
    for e in corr.elements:
        by_target.setdefault(e.t, []).append(e.s)
    assert sorted(by_target["+"]) == ["+-", "-+"]   # comultiplying x_+
    assert by_target["-"] == ["--"]                 # comultiplying x_-
    # a merge edge: the positive kink merges two circles going up the cube
    kinkp = pd_corpus["kink_pos"]
    corr2 = kh.edge_correspondence(kinkp, (1,), (0,))
    by_source = {}
    for e in corr2.elements:
        by_source.setdefault(e.s, []).append(e.t)
    assert by_source["+"] == ["++"]                  # m(++)=+
    assert sorted(by_source["-"]) == ["+-", "-+"]    # m(+-)=m(-+)=-
    targets = {e.t for e in corr2.elements}
    assert "--" not in targets                       # m(--)=0


def test_merge_edge_coefficient_one(pd_corpus):
    # every nonzero multiplication entry appears with coefficient one
    pd = pd_corpus["hopf"]
    dc = kh.DiagramCube(pd)
    for (u, v) in cube.edges(pd.n):
        fibers = dc.edge_correspondence(u, v).fibers()
        assert all(len(e) == 1 for e in fibers.values())


def test_quantum_grading_examples(pd_corpus):
    u0 = pd_corpus["unknot0"]
    assert kh.quantum_grading(u0, (), "+") == 1
    assert kh.quantum_grading(u0, (), "-") == -1
    tref = pd_corpus["trefoil_pos"]
    np_, nm = kh.crossing_signs(tref)
    assert kh.quantum_grading(tref, (1, 1, 1), "+++") == np_ - 2 * nm + 3 + 3


def test_quantum_grading_preserved_on_edges(small_corpus):
    for name, pd in small_corpus.items():
        grads = kh.generator_gradings(pd)
        dc = kh.DiagramCube(pd)
        for (u, v) in cube.edges(pd.n):
            for e in dc.edge_correspondence(u, v).elements:
                assert grads[u][e.s] == grads[v][e.t], (name, u, v, e)


# -- ladybug machinery --------------------------------------------------------------

def test_detect_ladybug_absent_cases(pd_corpus):
    tref = pd_corpus["trefoil_pos"]
    dc = kh.DiagramCube(tref)
    face = cube.Face2.from_top((1, 1, 0), 0, 1)
    gens_u = dc.generators(face.top)
    gens_w = dc.generators(face.bottom)
    for x, z in itertools.product(gens_u, gens_w):
        assert dc.detect_ladybug(face, x, z) is None


def test_ladybug_found_in_corpus(pd_corpus):
    pd = pd_corpus["unknot_ladybug"]
    dc = kh.DiagramCube(pd)
    data = dc.functor_data(with_faces=False)
    found = 0
    for face in cube.faces2(pd.n):
        ca = composite_along_chain(data, (face.top, face.mid_a, face.bottom))
        cb = composite_along_chain(data, (face.top, face.mid_b, face.bottom))
        for key, elems in ca.fibers().items():
            if len(elems) == 2:
                x, z = key
                lady = dc.detect_ladybug(face, x, z)
                assert lady is not None
                assert len(cb.fibers()[key]) == 2
                found += 1
                # wrong label: no ladybug
                flip_z = z.replace("+", "?").replace("-", "+").replace("?", "-")
                assert dc.detect_ladybug(face, x, flip_z) is None
    assert found >= 1


def test_ladybug_numbering_does_not_matter(pd_corpus):
    pd = pd_corpus["unknot_ladybug"]
    dc = kh.DiagramCube(pd)
    data = dc.functor_data(with_faces=False)
    for face in cube.faces2(pd.n):
        ca = composite_along_chain(data, (face.top, face.mid_a, face.bottom))
        cb = composite_along_chain(data, (face.top, face.mid_b, face.bottom))
        for key, elems in ca.fibers().items():
            if len(elems) != 2:
                continue
            x, z = key
            lady = dc.detect_ladybug(face, x, z)
            swapped = kh.LadybugData(
                lady.face, lady.bottom_circle, lady.top_circle, lady.endpoints,
                (lady.right_pair[1], lady.right_pair[0]),
                (lady.split_a[1], lady.split_a[0]),
                (lady.split_b[1], lady.split_b[0]))
            a = dc.ladybug_fiber_map(lady, elems, cb.fibers()[key])
            b = dc.ladybug_fiber_map(swapped, elems, cb.fibers()[key])
            assert a == b


def test_ladybug_involution(pd_corpus):
    # swapping the roles of the two middles inverts the fiber bijection
    pd = pd_corpus["unknot_ladybug"]
    dc = kh.DiagramCube(pd)
    data = dc.functor_data(with_faces=False)
    for face in cube.faces2(pd.n):
        ca = composite_along_chain(data, (face.top, face.mid_a, face.bottom))
        cb = composite_along_chain(data, (face.top, face.mid_b, face.bottom))
        for key, elems in ca.fibers().items():
            if len(elems) != 2:
                continue
            x, z = key
            lady = dc.detect_ladybug(face, x, z)
            fwd = dc.ladybug_fiber_map(lady, elems, cb.fibers()[key])
            reversed_data = kh.LadybugData(
                lady.face, lady.bottom_circle, lady.top_circle, lady.endpoints,
                lady.right_pair, lady.split_b, lady.split_a)
            back = dc.ladybug_fiber_map(reversed_data, cb.fibers()[key], elems)
            assert {v: k for k, v in fwd.items()} == back


def test_face_matching_is_two_morphism_corpus(small_corpus):
    for name, pd in small_corpus.items():
        dc = kh.DiagramCube(pd)
        data = dc.functor_data(with_faces=False)
        for face in cube.faces2(pd.n):
            dc.face_matching(data, face)  # BijectionOver validates on build


def test_flipping_ladybug_breaks_coherence(pd_corpus):
    pd = pd_corpus["unknot_ladybug"]
    dc = kh.DiagramCube(pd)
    full = dc.functor_data(with_faces=True)
    assert validate_coherence(full).ok
    data = dc.functor_data(with_faces=False)
    for face in cube.faces2(pd.n):
        ca = composite_along_chain(data, (face.top, face.mid_a, face.bottom))
        twos = [k for k, v in ca.fibers().items() if len(v) == 2]
        if not twos:
            continue
        m = full.matching(face)
        d = m.as_dict()
        fib = ca.fibers()[twos[0]]
        d[fib[0].id], d[fib[1].id] = d[fib[1].id], d[fib[0].id]
        from cubeburnside.burnside import BijectionOver
        fm = dict(full.face_matchings)
        fm[face] = BijectionOver.of(m.src, m.dst, d)
        flipped = CubeFunctorData(full.n, full.vertex_sets, full.edge_corrs, fm)
        assert not validate_coherence(flipped).ok
        return
    pytest.fail("no ladybug face found")


# -- the functor and its totalization ------------------------------------------------

def test_build_unknot0(pd_corpus):
    sf = kh.build_khovanov_functor(pd_corpus["unknot0"])
    assert sf.shift == 0
    assert sf.functor.n == 0
    assert len(sf.functor.vset(())) == 2


def test_corpus_functors_coherent(small_corpus):
    for name, pd in small_corpus.items():
        sf = kh.build_khovanov_functor(pd)  # validates on construction
        assert validate_c0(sf.functor).ok, name


def test_linearized_edges_transpose_of_matrix_path(small_corpus):
    # the span layer and the direct matrix tables describe the same maps
    for name, pd in small_corpus.items():
        dc = kh.DiagramCube(pd)
        for (u, v) in cube.edges(pd.n):
            corr = dc.edge_correspondence(u, v)
            gu, gv = list(dc.generators(u)), list(dc.generators(v))
            rv, ru = dc.resolved(v), dc.resolved(u)
            vk = [i for i, c in enumerate(rv.circles)
                  if any(p.crossing == cube.edge_coordinate(u, v)
                         for p in c.passages)]
            uk = [i for i, c in enumerate(ru.circles)
                  if any(p.crossing == cube.edge_coordinate(u, v)
                         for p in c.passages)]
            stable = dc.circle_match(rv, ru)
            rows = []
            for x in gu:
                row = []
                for y in gv:
                    row.append(1 if x in kh._abelian_images(y, rv, ru, vk, uk, stable)
                               else 0)
                rows.append(row)
            ab_matrix = Matrix.from_rows(rows)  # rows x (at u), cols y (at v)
            assert linearize(corr) == ab_matrix.transpose(), (name, u, v)


def test_unknot_tables_match(pd_corpus):
    expect = [{"i": 0, "j": -1, "rank": 1, "torsion": []},
              {"i": 0, "j": 1, "rank": 1, "torsion": []}]
    for name in ("unknot0", "kink_neg", "kink_pos", "unknot_r2",
                 "unknot_ladybug", "kink_kink"):
        assert kh.kh_table(pd_corpus[name]) == expect, name


def test_trefoil_published_table(pd_corpus):
    assert kh.kh_table(pd_corpus["trefoil_pos"]) == [
        {"i": 0, "j": 1, "rank": 1, "torsion": []},
        {"i": 0, "j": 3, "rank": 1, "torsion": []},
        {"i": 2, "j": 5, "rank": 1, "torsion": []},
        {"i": 3, "j": 7, "rank": 0, "torsion": [2]},
        {"i": 3, "j": 9, "rank": 1, "torsion": []},
    ]
    assert kh.kh_table(pd_corpus["trefoil_neg"]) == [
        {"i": -3, "j": -9, "rank": 1, "torsion": []},
        {"i": -2, "j": -7, "rank": 0, "torsion": [2]},
        {"i": -2, "j": -5, "rank": 1, "torsion": []},
        {"i": 0, "j": -3, "rank": 1, "torsion": []},
        {"i": 0, "j": -1, "rank": 1, "torsion": []},
    ]


def test_fig8_published_table(pd_corpus):
    assert kh.kh_table(pd_corpus["fig8"]) == [
        {"i": -2, "j": -5, "rank": 1, "torsion": []},
        {"i": -1, "j": -3, "rank": 0, "torsion": [2]},
        {"i": -1, "j": -1, "rank": 1, "torsion": []},
        {"i": 0, "j": -1, "rank": 1, "torsion": []},
        {"i": 0, "j": 1, "rank": 1, "torsion": []},
        {"i": 1, "j": 1, "rank": 1, "torsion": []},
        {"i": 2, "j": 3, "rank": 0, "torsion": [2]},
        {"i": 2, "j": 5, "rank": 1, "torsion": []},
    ]


def test_hopf_table(pd_corpus):
    assert kh.kh_table(pd_corpus["hopf"]) == [
        {"i": 0, "j": 0, "rank": 1, "torsion": []},
        {"i": 0, "j": 2, "rank": 1, "torsion": []},
        {"i": 2, "j": 4, "rank": 1, "torsion": []},
        {"i": 2, "j": 6, "rank": 1, "torsion": []},
    ]


def test_tables_match_direct_route(small_corpus):
    for name, pd in small_corpus.items():
        assert kh.kh_table(pd) == kh.kh_table_direct(pd), name


def test_tables_match_direct_route_large(pd_corpus):
    for name in ("granny", "square_knot", "trefoil_fig8"):
        pd = pd_corpus[name]
        assert kh.kh_table(pd, validate=False) == kh.kh_table_direct(pd), name


def test_rmove_pairs_same_homology(pd_corpus):
    for a, b in FX.rmove_pairs():
        assert kh.kh_table(pd_corpus[a]) == kh.kh_table(pd_corpus[b]), (a, b)


def test_split_by_quantum(pd_corpus):
    u0 = pd_corpus["unknot0"]
    sf = kh.build_khovanov_functor(u0)
    parts = kh.split_by_quantum(u0, sf)
    assert sorted(parts) == [-1, 1]
    assert all(len(p.functor.vset(())) == 1 for p in parts.values())
    # the coproduct of the parts is naturally isomorphic to the functor
    kink = pd_corpus["kink_neg"]
    sk = kh.build_khovanov_functor(kink)
    ps = kh.split_by_quantum(kink, sk)
    total = None
    for j in sorted(ps):
        total = ps[j].functor if total is None else coproduct(total, ps[j].functor)
    assert find_natural_isomorphism(total, sk.functor) is not None


def test_split_by_quantum_homology_additivity(pd_corpus):
    tref = pd_corpus["trefoil_pos"]
    sf = kh.build_khovanov_functor(tref)
    whole = {d: (h.free_rank, tuple(sorted(h.torsion)))
             for d, h in homology_nontrivial(tot(sf)).items()}
    summed = None
    for j, part in sorted(kh.split_by_quantum(tref, sf).items()):
        c = tot(part)
        summed = c if summed is None else direct_sum(summed, c)
    got = {d: (h.free_rank, tuple(sorted(h.torsion)))
           for d, h in homology_nontrivial(summed).items()}
    assert got == whole


# -- reduced -------------------------------------------------------------------------

def test_reduced_unknot(pd_corpus):
    assert kh.kh_table(pd_corpus["unknot0"], reduced=True,
                       basepoint=("loop", 0)) == \
        [{"i": 0, "j": 0, "rank": 1, "torsion": []}]
    assert kh.kh_table(pd_corpus["kink_neg"], reduced=True, basepoint=1) == \
        [{"i": 0, "j": 0, "rank": 1, "torsion": []}]


def test_reduced_trefoil(pd_corpus):
    rows = kh.kh_table(pd_corpus["trefoil_pos"], reduced=True, basepoint=1)
    assert sum(r["rank"] for r in rows) == 3
    assert all(r["torsion"] == [] for r in rows)
    assert rows == kh.kh_table_direct(pd_corpus["trefoil_pos"], reduced=True,
                                      basepoint=1)


def test_reduced_unknown_basepoint(pd_corpus):
    with pytest.raises(InputError):
        kh.reduced_functor(pd_corpus["kink_neg"], 99)


# -- unions and sums -----------------------------------------------------------------

def test_disjoint_union_basics(pd_corpus):
    u0 = pd_corpus["unknot0"]
    both = kh.disjoint_union_pd(u0, u0)
    assert both.free_loops == 2
    sf = kh.build_khovanov_functor(both)
    assert len(sf.functor.vset(())) == 4


def _coproduct_fold(parts):
    out = None
    for p in parts:
        out = p if out is None else coproduct(out, p)
    return out


def test_x1_disjoint_union(pd_corpus):
    k = pd_corpus["kink_neg"]
    union = kh.disjoint_union_pd(k, k)
    left = kh.split_by_quantum(union, kh.build_khovanov_functor(union))
    parts = {j: s.functor
             for j, s in kh.split_by_quantum(k, kh.build_khovanov_functor(k)).items()}
    for j, lf in left.items():
        rhs = _coproduct_fold([product(parts[j1], parts[j2])
                               for j1 in sorted(parts) for j2 in sorted(parts)
                               if j1 + j2 == j])
        assert find_natural_isomorphism(lf.functor, rhs) is not None, j


def test_x2_reduced_disjoint_union(pd_corpus):
    k, u0 = pd_corpus["kink_neg"], pd_corpus["unknot0"]
    union = kh.disjoint_union_pd(k, u0)
    left = kh.split_by_quantum(union, kh.reduced_functor(union, 1), reduced=True)
    red = {j: s.functor for j, s in
           kh.split_by_quantum(k, kh.reduced_functor(k, 1), reduced=True).items()}
    unred = {j: s.functor for j, s in
             kh.split_by_quantum(u0, kh.build_khovanov_functor(u0)).items()}
    for j, lf in left.items():
        rhs = _coproduct_fold([product(red[j1], unred[j2])
                               for j1 in sorted(red) for j2 in sorted(unred)
                               if j1 + j2 == j])
        assert find_natural_isomorphism(lf.functor, rhs) is not None, j


def test_x3_connected_sum(pd_corpus):
    k = pd_corpus["kink_neg"]
    csum, bp = kh.connect_sum_pd(k, 1, k, 1)
    left = kh.split_by_quantum(csum, kh.reduced_functor(csum, bp), reduced=True)
    red = {j: s.functor for j, s in
           kh.split_by_quantum(k, kh.reduced_functor(k, 1), reduced=True).items()}
    for j, lf in left.items():
        rhs = _coproduct_fold([product(red[j1], red[j2])
                               for j1 in sorted(red) for j2 in sorted(red)
                               if j1 + j2 == j])
        assert rhs is not None and \
            find_natural_isomorphism(lf.functor, rhs) is not None, j


def test_reduced_connect_sum_kuenneth(pd_corpus):
    # reduced homology of both three-crossing sums is the tensor square of
    # the reduced factor (torsion-free, so a plain bigraded convolution)
    tref = pd_corpus["trefoil_pos"]
    g, bp = kh.connect_sum_pd(tref, 1, tref, 1)
    assert g == pd_corpus["granny"]
    rows = kh.kh_table(g, reduced=True, basepoint=bp, validate=False)
    factor = kh.kh_table(tref, reduced=True, basepoint=1)
    conv = {}
    for r1 in factor:
        for r2 in factor:
            key = (r1["i"] + r2["i"], r1["j"] + r2["j"])
            conv[key] = conv.get(key, 0) + r1["rank"] * r2["rank"]
    assert {(r["i"], r["j"]): r["rank"] for r in rows} == conv
    assert all(r["torsion"] == [] for r in rows)
    sq, bp2 = kh.connect_sum_pd(tref, 1, pd_corpus["trefoil_neg"], 1)
    rows2 = kh.kh_table(sq, reduced=True, basepoint=bp2, validate=False)
    assert sum(r["rank"] for r in rows2) == 9
    assert all(r["torsion"] == [] for r in rows2)


def test_connect_sum_is_valid_and_invariant(pd_corpus):
    tref = pd_corpus["trefoil_pos"]
    granny = pd_corpus["granny"]
    kh.validate_pd(granny)
    assert granny.n == 6
    # adding a kink by connect sum keeps the homology (R1 at homology level)
    assert kh.kh_table(pd_corpus["trefoil_kink"]) == kh.kh_table(tref)


def test_connect_sum_errors(pd_corpus):
    with pytest.raises(InputError):
        kh.connect_sum_pd(pd_corpus["unknot0"], 1, pd_corpus["kink_neg"], 1)
    with pytest.raises(InputError):
        kh.connect_sum_pd(pd_corpus["kink_neg"], 7, pd_corpus["kink_neg"], 1)


def test_braid_closure_sweep():
    # coherence (hexagons included) and two-route table agreement across a
    # sample of closures rich in ladybug squares
    words = [(1, 1, -1), (-1, 1, 1), (1, -1, -1), (1, 1, 1, -1),
             (1, 2, -1, 2), (1, -2, 1, -2), (-1, 2, 2, -1), (1, 2, -1, -2)]
    lady = 0
    for w in words:
        strands = max(abs(g) for g in w) + 1
        pd = kh.braid_closure_pd(list(w), strands)
        kh.build_khovanov_functor(pd)  # raises if any square or hexagon fails
        assert kh.kh_table(pd, validate=False) == kh.kh_table_direct(pd), w
        dc = kh.DiagramCube(pd)
        data = dc.functor_data(with_faces=False)
        for face in cube.faces2(pd.n):
            ca = composite_along_chain(data, (face.top, face.mid_a, face.bottom))
            lady += sum(1 for v in ca.fibers().values() if len(v) == 2)
    assert lady > 0


def test_braid_closure_ambiguous_orientation():
    # an all-over two-arc component leaves its orientation undetermined
    with pytest.raises(InputError):
        kh.braid_closure_pd([1, -1], 2)


def test_braid_closure(pd_corpus):
    tref = kh.braid_closure_pd([1, 1, 1], 2)
    assert sum(kh.crossing_signs(tref)) == 3
    assert kh.kh_table(tref) in (kh.kh_table(pd_corpus["trefoil_pos"]),
                                 kh.kh_table(pd_corpus["trefoil_neg"]))
    with_loop = kh.braid_closure_pd([1], 3)
    assert with_loop.free_loops == 1
    with pytest.raises(InputError):
        kh.braid_closure_pd([3], 2)
