"""Built-in fixtures: the small abstract square/cube functors with one- and
two-element sets used throughout the test suite and CLI demos, the planar
diagram corpus, reference triangulations, and the wedge-splitting stable
equivalence certificate."""

from __future__ import annotations

import itertools

from . import cube, khovanov, simplicial
from .burnside import Correspondence, FiniteSet
from .certificates import EquivalenceCertificate, FaceStep, NatTransStep
from .cube import Face2, FaceInclusion
from .errors import InternalInvariantError
from .functor import (CubeFunctorData, StableFunctor, coproduct,
                      enumerate_matchings, extend_along_face_inclusion,
                      iso_transformation, sub_inclusion_transformation,
                      with_matchings)


def projective_functor(e: str = "e", f: str = "f",
                       u: tuple[str, str] = ("u1", "u2")) -> CubeFunctorData:
    """One-element sets on the interval, two parallel edge elements; its
    totalization is Z --2--> Z."""
    es, fs = FiniteSet((e,)), FiniteSet((f,))
    return CubeFunctorData.build(
        1, {(1,): es, (0,): fs},
        {((1,), (0,)): Correspondence.of(es, fs, [(u[0], e, f), (u[1], e, f)])},
        {})


def _square_data(ids: dict[str, str] | None = None) -> CubeFunctorData:
    """One-element vertex sets on the square, two-element edges a/b/c/d
    (top>right, right>bottom, top>left, left>bottom); no matchings."""
    v = ids or {"11": "v11", "10": "v10", "01": "v01", "00": "v00"}
    vs = {cube.vertex_from_bits(k): FiniteSet((x,)) for k, x in v.items()}

    def edge(uk, vk, names):
        u, w = cube.vertex_from_bits(uk), cube.vertex_from_bits(vk)
        return (u, w), Correspondence.of(
            vs[u], vs[w], [(nm, v[uk], v[vk]) for nm in names])

    ec = dict([edge("11", "10", ("a1", "a2")), edge("10", "00", ("b1", "b2")),
               edge("11", "01", ("c1", "c2")), edge("01", "00", ("d1", "d2"))])
    return CubeFunctorData.build(2, vs, ec, None)


def multiple_extension_square(ids: dict[str, str] | None = None) -> CubeFunctorData:
    """The square with two-element edges whose matchings are unconstrained:
    24 coherent completions, 6 once one pair is pinned."""
    return _square_data(ids)


SQUARE_FACE = Face2.from_top((1, 1), 0, 1)


def _square_matching(pattern: str, ids: dict[str, str] | None = None) -> CubeFunctorData:
    """pattern "smash": a_i b_j -> c_j d_i; pattern "wedge": a_i b_j -> c_i d_j.
    Stored canonically (left composite d∘c to right composite b∘a)."""
    data = _square_data(ids)
    mapping = {}
    for i, j in itertools.product((1, 2), repeat=2):
        if pattern == "smash":
            # a_i b_j -> c_j d_i, inverted: (c_j, d_i) -> (a_i, b_j)
            mapping[f"d{i}∘c{j}"] = f"b{j}∘a{i}"
        elif pattern == "wedge":
            mapping[f"d{j}∘c{i}"] = f"b{j}∘a{i}"
        else:
            raise ValueError(pattern)
    return with_matchings(data, {SQUARE_FACE: mapping})


def smash_square(ids=None) -> CubeFunctorData:
    """The completion naturally isomorphic to the product of two projective
    functors."""
    return _square_matching("smash", ids)


def wedge_square(ids=None) -> CubeFunctorData:
    """The completion that splits stably into two shifted projective
    functors."""
    return _square_matching("wedge", ids)


def zero_extension_cube() -> CubeFunctorData:
    """The 3-cube data admitting no coherent matchings at all."""
    V = {"111": ["p1", "p2"], "110": ["A1", "A2", "A3", "A4"],
         "101": ["C1", "C2", "C3", "C4"], "100": ["R1", "R2"],
         "011": ["E1", "E2"], "010": ["S1", "S2", "S3", "S4"],
         "001": ["T1", "T2", "T3", "T4"], "000": ["q1", "q2"]}
    vs = {cube.vertex_from_bits(k): FiniteSet(tuple(v)) for k, v in V.items()}
    E = {
        ("111", "110"): [("a1", "p1", "A1"), ("a2", "p1", "A2"),
                         ("a3", "p2", "A3"), ("a4", "p2", "A4")],
        ("111", "101"): [("c1", "p1", "C1"), ("c2", "p1", "C2"),
                         ("c3", "p2", "C3"), ("c4", "p2", "C4")],
        ("111", "011"): [("k1", "p1", "E1"), ("k2", "p1", "E2"),
                         ("k3", "p2", "E1"), ("k4", "p2", "E2")],
        ("110", "100"): [("b1", "A1", "R1"), ("b2", "A2", "R1"),
                         ("b3", "A3", "R2"), ("b4", "A4", "R2")],
        ("110", "010"): [("m1", "A1", "S1"), ("m2", "A1", "S3"),
                         ("m3", "A2", "S2"), ("m4", "A2", "S4"),
                         ("m5", "A3", "S1"), ("m6", "A3", "S3"),
                         ("m7", "A4", "S2"), ("m8", "A4", "S4")],
        ("101", "100"): [("d1", "C1", "R1"), ("d2", "C2", "R1"),
                         ("d3", "C3", "R2"), ("d4", "C4", "R2")],
        ("101", "001"): [("n1", "C1", "T1"), ("n2", "C1", "T3"),
                         ("n3", "C2", "T2"), ("n4", "C2", "T4"),
                         ("n5", "C3", "T2"), ("n6", "C3", "T3"),
                         ("n7", "C4", "T1"), ("n8", "C4", "T4")],
        ("100", "000"): [("r1", "R1", "q1"), ("r2", "R1", "q2"),
                         ("r3", "R2", "q1"), ("r4", "R2", "q2")],
        ("011", "010"): [("e1", "E1", "S1"), ("e2", "E1", "S2"),
                         ("e3", "E2", "S3"), ("e4", "E2", "S4")],
        ("011", "001"): [("g1", "E1", "T1"), ("g2", "E1", "T2"),
                         ("g3", "E2", "T3"), ("g4", "E2", "T4")],
        ("010", "000"): [("f1", "S1", "q1"), ("f2", "S2", "q1"),
                         ("f3", "S3", "q2"), ("f4", "S4", "q2")],
        ("001", "000"): [("h1", "T1", "q1"), ("h2", "T2", "q1"),
                         ("h3", "T3", "q2"), ("h4", "T4", "q2")],
    }
    ec = {(cube.vertex_from_bits(a), cube.vertex_from_bits(b)):
          Correspondence.of(vs[cube.vertex_from_bits(a)],
                            vs[cube.vertex_from_bits(b)], els)
          for (a, b), els in E.items()}
    return CubeFunctorData.build(3, vs, ec, None)


# -- the glued 3-cube splitting the wedge square -----------------------------------

def wedge_cube_partial() -> CubeFunctorData:
    """Vertex and edge data of the 3-cube functor whose bottom face carries
    the wedge-square matching and which retracts onto two shifted projective
    summands."""
    V = {"111": ["t"], "110": ["p3"], "101": ["m"], "100": ["p4"],
         "011": ["p5", "o1"], "010": ["p1"], "001": ["p6", "o2"], "000": ["p2"]}
    vs = {cube.vertex_from_bits(k): FiniteSet(tuple(v)) for k, v in V.items()}
    E = {
        ("111", "110"): [("ta", "t", "p3")],
        ("111", "101"): [("tm1", "t", "m"), ("tm2", "t", "m")],
        ("111", "011"): [("tp5", "t", "p5"), ("to1a", "t", "o1"), ("to1b", "t", "o1")],
        ("110", "100"): [("a1", "p3", "p4"), ("a2", "p3", "p4")],
        ("110", "010"): [("c1", "p3", "p1"), ("c2", "p3", "p1")],
        ("101", "100"): [("mb", "m", "p4")],
        ("101", "001"): [("u6", "m", "p6"), ("uo", "m", "o2")],
        ("100", "000"): [("b1", "p4", "p2"), ("b2", "p4", "p2")],
        ("011", "010"): [("w1", "o1", "p1")],
        ("011", "001"): [("e1", "p5", "p6"), ("e2", "p5", "p6"), ("oo", "o1", "o2")],
        ("010", "000"): [("d1", "p1", "p2"), ("d2", "p1", "p2")],
        ("001", "000"): [("h1", "o2", "p2"), ("h2", "o2", "p2")],
    }
    ec = {(cube.vertex_from_bits(a), cube.vertex_from_bits(b)):
          Correspondence.of(vs[cube.vertex_from_bits(a)],
                            vs[cube.vertex_from_bits(b)], els)
          for (a, b), els in E.items()}
    return CubeFunctorData.build(3, vs, ec, None)


WEDGE_PIN_FACE = Face2.from_top((1, 1, 0), 0, 1)


def wedge_cube_completions() -> list[dict]:
    """All coherent completions pinning the wedge matching on the bottom
    face (top 110, middles 010 and 100).  There are 16, differing only by
    relabelings of parallel edge elements: one functor up to natural
    isomorphism."""
    data = wedge_cube_partial()
    pin = {f"d{j}∘c{i}": f"b{j}∘a{i}" for i, j in itertools.product((1, 2), repeat=2)}
    return enumerate_matchings(data, pinned={WEDGE_PIN_FACE: pin})


def wedge_cube() -> CubeFunctorData:
    """A canonical coherent completion of the partial wedge-cube data."""
    matchings = wedge_cube_completions()
    if not matchings:
        raise InternalInvariantError("no coherent completion exists")
    key = lambda m: sorted((repr(f), tuple(sorted(v.items()))) for f, v in m.items())
    return with_matchings(wedge_cube_partial(), min(matchings, key=key))


def wedge_certificate() -> EquivalenceCertificate:
    """Stable equivalence between the wedge-square functor and the disjoint
    union of the two shifted projective functors, through the glued 3-cube."""
    g = wedge_cube()
    f2 = wedge_square(ids={"11": "p3", "10": "p4", "01": "p1", "00": "p2"})
    iota = FaceInclusion(2, 3, (0, 0, 0), (0, 1))
    support_f = {((1, 1, 0), "p3"), ((1, 0, 0), "p4"), ((0, 1, 0), "p1"),
                 ((0, 0, 0), "p2")}
    f, eta_f = sub_inclusion_transformation(g, support_f)
    support_fp = {((0, 1, 1), "p5"), ((0, 1, 0), "p1"), ((0, 0, 1), "p6"),
                  ((0, 0, 0), "p2")}
    fp, eta_fp = sub_inclusion_transformation(g, support_fp)
    iota_p = FaceInclusion(2, 3, (0, 0, 0), (1, 2))
    # the slice of fp through iota_p: p5@11 --e--> p6@01, p1@10 --d--> p2@00
    xp = CubeFunctorData.build(
        2,
        {(1, 1): FiniteSet(("p5",)), (0, 1): FiniteSet(("p6",)),
         (1, 0): FiniteSet(("p1",)), (0, 0): FiniteSet(("p2",))},
        {((1, 1), (0, 1)): Correspondence.of(
            FiniteSet(("p5",)), FiniteSet(("p6",)),
            [("e1", "p5", "p6"), ("e2", "p5", "p6")]),
         ((1, 0), (0, 0)): Correspondence.of(
            FiniteSet(("p1",)), FiniteSet(("p2",)),
            [("d1", "p1", "p2"), ("d2", "p1", "p2")])},
        None)
    from .functor import forced_matchings
    xp = forced_matchings(xp)
    iota0 = FaceInclusion(1, 2, (0, 0), (1,))
    iota1 = FaceInclusion(1, 2, (1, 0), (1,))
    pp = coproduct(extend_along_face_inclusion(projective_functor(), iota0),
                   extend_along_face_inclusion(projective_functor(), iota1))
    tau = FaceInclusion(2, 2, (0, 0), (1, 0))
    x = extend_along_face_inclusion(pp, tau)
    # rename the tagged coproduct generators onto the glued-cube names
    sigma = {(1, 1): {"r·e": "p5"}, (0, 1): {"r·f": "p6"},
             (1, 0): {"l·e": "p1"}, (0, 0): {"l·f": "p2"}}
    sigma.update({v: {} for v in cube.vertices(2) if v not in sigma})
    tau_map = {((1, 1), (0, 1)): {"r·u1": "e1", "r·u2": "e2"},
               ((1, 0), (0, 0)): {"l·u1": "d1", "l·u2": "d2"}}
    tau_map.update({e: {} for e in cube.edges(2) if e not in tau_map})
    eta_iso = iso_transformation(x, xp, sigma, tau_map)
    chain = (StableFunctor(f2, 0), StableFunctor(f, 0), StableFunctor(g, 0),
             StableFunctor(fp, 0), StableFunctor(xp, 0), StableFunctor(x, 0),
             StableFunctor(pp, 0))
    steps = (FaceStep(iota, "forward"),
             NatTransStep(eta_f, "forward"),
             NatTransStep(eta_fp, "reverse"),
             FaceStep(iota_p, "reverse"),
             NatTransStep(eta_iso, "reverse"),
             FaceStep(tau, "reverse"))
    return EquivalenceCertificate(chain, steps)


# -- planar diagram corpus ----------------------------------------------------------

def pd_corpus() -> dict[str, khovanov.PDCode]:
    """Named diagrams: unknot presentations (incl. one with ladybug squares),
    the Hopf link, both trefoils, the figure eight, connected sums and
    disjoint unions, all of at most 7 crossings."""
    kh = khovanov
    unknot0 = kh.PDCode((), 1)
    kink_neg = kh.parse_pd("PD[X(1,1,2,2)]")
    kink_pos = kh.parse_pd("PD[X(1,2,2,1)]")
    unknot_r2 = kh.parse_pd("PD[X(1,1,2,4),X(2,3,3,4)]")
    unknot_lady = kh.braid_closure_pd([1, 1, -1], 2)
    hopf = kh.parse_pd("PD[X(4,1,3,2),X(2,3,1,4)]")
    trefoil_pos = kh.parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]")
    trefoil_neg = kh.parse_pd("PD[X(4,2,5,1),X(6,4,1,3),X(2,6,3,5)]")
    fig8 = kh.parse_pd("PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]")
    granny, _ = kh.connect_sum_pd(trefoil_pos, 1, trefoil_pos, 1)
    square, _ = kh.connect_sum_pd(trefoil_pos, 1, trefoil_neg, 1)
    tref_kink, _ = kh.connect_sum_pd(trefoil_pos, 1, kink_neg, 1)
    kink_sum, _ = kh.connect_sum_pd(kink_neg, 1, kink_neg, 1)
    tref_fig8, _ = kh.connect_sum_pd(trefoil_pos, 1, fig8, 1)
    return {
        "unknot0": unknot0,
        "kink_neg": kink_neg,
        "kink_pos": kink_pos,
        "unknot_r2": unknot_r2,
        "unknot_ladybug": unknot_lady,
        "hopf": hopf,
        "trefoil_pos": trefoil_pos,
        "trefoil_neg": trefoil_neg,
        "fig8": fig8,
        "granny": granny,
        "square_knot": square,
        "trefoil_kink": tref_kink,
        "kink_kink": kink_sum,
        "trefoil_fig8": tref_fig8,
        "unknot_pair": kh.disjoint_union_pd(unknot0, unknot0),
        "kink_disjoint": kh.disjoint_union_pd(kink_neg, kink_neg),
        "trefoil_unknot": kh.disjoint_union_pd(trefoil_pos, kink_neg),
        "hopf_unknot": kh.disjoint_union_pd(hopf, unknot0),
    }


def rmove_pairs() -> list[tuple[str, str]]:
    """Diagram pairs related by Reidemeister moves (same underlying link)."""
    return [("unknot0", "kink_neg"), ("unknot0", "kink_pos"),
            ("unknot0", "unknot_r2"), ("unknot0", "unknot_ladybug"),
            ("unknot0", "kink_kink"), ("trefoil_pos", "trefoil_kink")]


# -- reference triangulations --------------------------------------------------------

def delta_point() -> simplicial.DeltaComplex:
    return simplicial.complex_from_maximal(1, [(1,)])


def delta_sphere() -> simplicial.DeltaComplex:
    """Boundary of the 3-simplex."""
    return simplicial.complex_from_maximal(
        4, list(itertools.combinations(range(1, 5), 3)))


def delta_projective_plane() -> simplicial.DeltaComplex:
    """The six-vertex triangulation."""
    return simplicial.complex_from_maximal(
        6, [(1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 6), (1, 4, 5),
            (2, 3, 4), (2, 3, 5), (2, 4, 6), (3, 5, 6), (4, 5, 6)])


def delta_torus() -> simplicial.DeltaComplex:
    """The seven-vertex triangulation."""
    tris = [tuple(sorted(((i % 7) + 1, ((i + 1) % 7) + 1, ((i + 3) % 7) + 1)))
            for i in range(7)]
    tris += [tuple(sorted(((i % 7) + 1, ((i + 2) % 7) + 1, ((i + 3) % 7) + 1)))
             for i in range(7)]
    return simplicial.complex_from_maximal(7, tris)


def delta_fixtures() -> dict[str, simplicial.DeltaComplex]:
    return {"point": delta_point(), "sphere2": delta_sphere(),
            "rp2": delta_projective_plane(), "torus": delta_torus()}
