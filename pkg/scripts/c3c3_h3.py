"""H2 and H3 of C3 x C3 in the class-2 exponent-3 variety, across seeds.

Prints the numerator and denominator orders of the Hopf quotient for each
presentation, so the invariance of the result is visible at a glance.
"""

from higher_hopf.corpus import _abelian
from higher_hopf.hopf import hopf_evaluate
from higher_hopf.presentations import n_presentation

VARIETY = "group:c2:p3"


def main():
    A = _abelian(3, 3)
    for n in (1, 2):
        for seed in (None, 1, 2, 3):
            cube = n_presentation(A, VARIETY, n, seed=seed)
            res = hopf_evaluate("ab", cube, VARIETY)
            print(
                f"H{n + 1} seed={seed!s:<4} |F|={cube.initial.order:<4} "
                f"|N|={res.numerator_order:<3} |L|={res.denominator_order:<3} "
                f"invariants={res.invariants['abelian_invariants']}  {res.fingerprint[:12]}"
            )


if __name__ == "__main__":
    main()
