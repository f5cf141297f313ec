"""Closed-form vs kernel-pair evaluator over the whole generated corpus.

    python scripts/run_oracle.py [--max-order 27] [--reflectors ab nil:2 sol:1]
"""

import argparse
import time

from higher_hopf import groups as gp
from higher_hopf.corpus import double_extensions, pxmod_extensions, surjection_corpus
from higher_hopf.cubes import arrow_cube
from higher_hopf.hopf import L_categorical, L_closed


def sweep(label, cases, refl, carrier=lambda X: X):
    t = time.perf_counter()
    bad = nontrivial = 0
    for name, cube in cases:
        a, b = carrier(L_closed(refl, cube)), carrier(L_categorical(refl, cube))
        if not gp.subgroups_equal(a, b):
            bad += 1
            print(f"  disagreement on {name}: closed {a.order}, categorical {b.order}")
        nontrivial += a.order > 1
    print(f"{label:<28} {refl:<8} {len(cases):>5} cases {nontrivial:>5} nontrivial {bad:>3} bad "
          f"{time.perf_counter() - t:6.1f}s")
    return bad


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-order", type=int, default=27)
    ap.add_argument("--reflectors", nargs="+", default=["ab", "nil:2", "sol:1"])
    args = ap.parse_args()
    arrows = [(c.name, arrow_cube(c.f)) for c in surjection_corpus(args.max_order)]
    squares = double_extensions(args.max_order)
    bad = 0
    for refl in args.reflectors:
        bad += sweep("group surjections", arrows, refl)
        bad += sweep("group double extensions", squares, refl)
    for n in (1, 2):
        bad += sweep(f"precrossed n={n}", pxmod_extensions(8 if n == 1 else 4, n), "peiffer", lambda X: X.M)
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
