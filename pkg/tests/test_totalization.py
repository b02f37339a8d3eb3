import random

import pytest

from cubeburnside import cube, fixtures as FX, simplicial
from cubeburnside.burnside import Correspondence, FiniteSet
from cubeburnside.cube import FaceInclusion
from cubeburnside.errors import InputError, InternalInvariantError
from cubeburnside.functor import (CubeFunctorData, StableFunctor, coproduct,
                                  empty_functor, identity_transformation,
                                  product, quotient_functor,
                                  sub_inclusion_transformation)
from cubeburnside.linalg import Matrix
from cubeburnside.totalization import (ChainComplex, ChainMap, cone,
                                       complexes_equal_under, direct_sum,
                                       dualize, face_shift_iso, homology,
                                       homology_nontrivial, is_quasi_iso,
                                       shift_complex, tot, tot_nat_trans)


def groups(c):
    return {d: (h.free_rank, h.torsion) for d, h in homology_nontrivial(c).items()}


def test_tot_projective(projective):
    c = tot(projective)
    assert c.basis == {0: ("0|f",), 1: ("1|e",)}
    assert c.diff(1) == Matrix.from_rows([[2]])
    assert groups(c) == {0: (0, (2,))}


def test_tot_empty():
    assert tot(empty_functor(2)).is_zero_complex()


def test_tot_product_ranks(projective):
    pp = product(projective, FX.projective_functor("x", "y", ("w1", "w2")))
    c = tot(pp)
    assert [c.dim(d) for d in (0, 1, 2)] == [1, 2, 1]
    assert groups(c) == {0: (0, (2,)), 1: (0, (2,))}


def test_tot_shift_negates_differential(projective):
    c0 = tot(StableFunctor(projective, 0))
    c1 = tot(StableFunctor(projective, 1))
    assert c1.diff(2) == -c0.diff(1)
    assert shift_complex(c0, 1) == c1


def test_tot_detects_square_failure():
    # two parallel one-element edges with mismatched composite counts
    vs = {cube.vertex_from_bits(k): FiniteSet((k,)) for k in ("11", "10", "01", "00")}

    def corr(a, b, k):
        u, v = cube.vertex_from_bits(a), cube.vertex_from_bits(b)
        return (u, v), Correspondence.of(
            vs[u], vs[v], [(f"{a}{b}{i}", a, b) for i in range(k)])

    ec = dict([corr("11", "10", 1), corr("10", "00", 1),
               corr("11", "01", 1), corr("01", "00", 2)])
    broken = CubeFunctorData.build(2, vs, ec, None)
    with pytest.raises(InternalInvariantError):
        tot(broken)


def test_homology_zero_complex():
    assert homology(ChainComplex({}, {})) == {}


def test_homology_direct_sum_additive():
    rng = random.Random(7)
    fixtures = [tot(FX.projective_functor()),
                tot(simplicial.delta_functor(FX.delta_projective_plane())),
                tot(product(FX.projective_functor(),
                            FX.projective_functor("x", "y", ("w1", "w2"))))]
    for _ in range(6):
        a, b = rng.choice(fixtures), rng.choice(fixtures)
        ds = direct_sum(a, b)
        expected = {}
        for d in set(list(a.basis) + list(b.basis)):
            ha = homology(a).get(d)
            hb = homology(b).get(d)
            rank = (ha.free_rank if ha else 0) + (hb.free_rank if hb else 0)
            tor = tuple(sorted((ha.torsion if ha else ()) + (hb.torsion if hb else ())))
            if rank or tor:
                expected[d] = (rank, tor)
        got = {d: (h.free_rank, tuple(sorted(h.torsion)))
               for d, h in homology_nontrivial(ds).items()}
        assert got == expected


def test_is_quasi_iso_examples(projective):
    c = tot(projective)
    ident = ChainMap.build(c, c, {d: Matrix.identity(c.dim(d)) for d in c.degrees()})
    assert is_quasi_iso(ident)
    zero = ChainMap.build(c, c, {})
    assert not is_quasi_iso(zero)


def test_quasi_iso_stable_under_isomorphisms(projective):
    iota = FaceInclusion(1, 3, (1, 0, 1), (1,))
    _, cm = face_shift_iso(projective, iota)
    assert is_quasi_iso(cm)


def test_dualize(projective):
    c = tot(projective)
    assert dualize(dualize(c)) == c
    d = dualize(c)
    assert groups(d) == {-1: (0, (2,))}
    assert dualize(ChainComplex({}, {})).is_zero_complex()


def _cone_label_map(d, lbl):
    tag, rest = lbl.split("·", 1)
    v, x = rest.split("|")
    return f"{tag}{v}|{x}"


def test_mapping_cone_identity_three_fixtures(projective, wedge_cube):
    support_f = {((1, 1, 0), "p3"), ((1, 0, 0), "p4"),
                 ((0, 1, 0), "p1"), ((0, 0, 0), "p2")}
    _, incl = sub_inclusion_transformation(wedge_cube, support_f)
    acyc = CubeFunctorData.build(
        1, {(1,): FiniteSet(("x",)), (0,): FiniteSet(("y",))},
        {((1,), (0,)): Correspondence.of(FiniteSet(("x",)), FiniteSet(("y",)),
                                         [("w", "x", "y")])}, {})
    b = coproduct(projective, acyc)
    _, proj = quotient_functor(b, {((1,), "l·e"), ((0,), "l·f")})
    for eta in (identity_transformation(projective), incl, proj):
        f = tot_nat_trans(eta)
        assert complexes_equal_under(cone(f), tot(eta.ambient), _cone_label_map)


def test_face_shift_iso_examples(projective):
    ident = FaceInclusion.identity(1)
    tw, cm = face_shift_iso(projective, ident)
    assert set(tw.values.values()) == {0}
    assert all(cm.matrix(d) == Matrix.identity(cm.source.dim(d))
               for d in cm.source.degrees())
    iota = FaceInclusion(1, 2, (1, 0), (1,))
    tw2, cm2 = face_shift_iso(projective, iota)
    w = iota.weight
    for (u, v) in cube.edges(1):
        lhs = (tw2.values[u] + tw2.values[v]) % 2
        rhs = (w + cube.sign_assignment(u, v)
               + cube.sign_assignment(iota.apply(u), iota.apply(v))) % 2
        assert lhs == rhs
    assert is_quasi_iso(cm2)


def test_face_shift_iso_randomized(projective):
    rng = random.Random(11)
    functors = [projective,
                product(projective, FX.projective_functor("x", "y", ("w1", "w2"))),
                coproduct(projective, projective)]
    for f in functors:
        n = f.n
        for _ in range(8):
            big = rng.randint(n, n + 2)
            coords = rng.sample(range(big), n)
            bottom = [rng.randint(0, 1) for _ in range(big)]
            for c in coords:
                bottom[c] = 0
            iota = FaceInclusion(n, big, tuple(bottom), tuple(coords))
            tw, cm = face_shift_iso(f, iota)
            for (u, v) in cube.edges(n):
                assert (tw.values[u] + tw.values[v]) % 2 == \
                    (iota.weight + cube.sign_assignment(u, v)
                     + cube.sign_assignment(iota.apply(u), iota.apply(v))) % 2
            assert is_quasi_iso(cm)


def test_chain_map_must_commute(projective):
    c = tot(projective)
    other = ChainComplex.build(c.basis, {1: Matrix.from_rows([[3]])})
    with pytest.raises(InputError):
        ChainMap.build(c, other, {d: Matrix.identity(c.dim(d))
                                  for d in c.degrees()})
