"""Twisted cubic, step by step.

The points 1, x, x^2, x^3 give the relation matrix [[1,-2,1,0],[0,1,-2,1]].
This script follows the zigzag pattern through every merge and clean,
prints the final Kasteleyn matrix and compares the result with v1 times the
discriminant of v1 + v2 x + v3 x^2 + v4 x^3 computed from a Sylvester
matrix.

    python demos/cubic_walkthrough.py
"""

from fractions import Fraction

from adet.fixtures import CUBIC_BA
from adet.kasteleyn import compute_adet
from adet.oracle import evaluate, horn_kapranov_point, univariate_EA_oracle


def show_pattern(name, pat):
    print(f"{name}: p = {pat.p}, {pat.nrows} crossings")
    print("  B =", pat.B.tolist())


def main():
    res = compute_adet(CUBIC_BA, keep_trace=True)
    for name, pat in res.run.trace:
        show_pattern(name, pat)

    print("\nKasteleyn matrix of the final pattern:")
    for row in res.K.entries:
        print("  [" + ", ".join(str(x) or "0" for x in row) + "]")

    print("\ncolumn provenance (pattern column, input column, multiplier):")
    print(" ", res.run.provenance.as_triples())

    print("\nE_A =", res.value)
    mono, rest = res.value.monomial_factor()
    print(f"    = {mono} * ({rest})")

    oracle = univariate_EA_oracle(3)
    print("Sylvester oracle agrees:", oracle == res.value)

    # a cubic with a double root at x = -2/3 must be a zero of E_A
    c = horn_kapranov_point(CUBIC_BA, [Fraction(1), Fraction(-2, 3)], 1, 1)
    values = {f"v{k + 1}": c[k] for k in range(4)}
    print("coefficients of a singular cubic:", [str(x) for x in c])
    print("E_A there:", evaluate(res.value, values))


if __name__ == "__main__":
    main()
