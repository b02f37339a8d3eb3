#!/usr/bin/env python3
"""End-to-end demonstration run: worked square/cube examples, homology of
the diagram corpus against the golden tables, triangulation cross-checks,
and the wedge-splitting certificate.  Exits nonzero on any mismatch."""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from cubeburnside import fixtures as FX
from cubeburnside.certificates import verify_certificate
from cubeburnside.corpus import list_fixtures, load_golden
from cubeburnside.functor import (enumerate_matchings, find_natural_isomorphism,
                                  product, validate_coherence)
from cubeburnside.khovanov import kh_table
from cubeburnside.simplicial import delta_functor, simplicial_homology
from cubeburnside.totalization import homology_nontrivial, tot


def main() -> int:
    t0 = time.time()
    bad = 0

    print("== square/cube matching searches ==")
    me = FX.multiple_extension_square()
    n_all = len(enumerate_matchings(me))
    n_pin = len(enumerate_matchings(me, pinned={FX.SQUARE_FACE: {"d1∘c1": "b1∘a1"}}))
    print(f"free square: {n_all} matchings, {n_pin} pinned (expect 24, 6)")
    bad += (n_all, n_pin) != (24, 6)
    n_zero = len(enumerate_matchings(FX.zero_extension_cube()))
    print(f"obstructed cube: {n_zero} matchings (expect 0)")
    bad += n_zero != 0

    print("== stable splittings ==")
    pp = product(FX.projective_functor(), FX.projective_functor("x", "y", ("w1", "w2")))
    print("smash square ≅ product:",
          find_natural_isomorphism(FX.smash_square(), pp) is not None)
    rep = verify_certificate(FX.wedge_certificate())
    print(f"wedge certificate: {'pass' if rep.ok else 'FAIL'} ({len(rep.steps)} steps)")
    bad += not rep.ok

    print("== diagram corpus homology ==")
    corpus = FX.pd_corpus()
    for name in sorted(corpus):
        rows = kh_table(corpus[name])
        mark = ""
        if name in list_fixtures("golden"):
            ok = rows == load_golden(name)["rows"]
            mark = "golden ok" if ok else "GOLDEN MISMATCH"
            bad += not ok
        print(f"  {name}: {len(rows)} rows {mark}")

    print("== triangulations ==")
    for name, x in FX.delta_fixtures().items():
        a = {d: (h.free_rank, h.torsion)
             for d, h in homology_nontrivial(tot(delta_functor(x))).items()}
        b = {d: (h.free_rank, h.torsion)
             for d, h in simplicial_homology(x).items() if not h.is_trivial}
        ok = a == b
        bad += not ok
        print(f"  {name}: {'agree' if ok else 'DISAGREE'} {a}")

    print(f"done in {time.time() - t0:.1f}s; {'all good' if not bad else f'{bad} failures'}")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
