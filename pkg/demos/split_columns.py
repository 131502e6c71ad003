"""Inputs with a non-primitive column.

For B_A = [[2,0,-1,-1],[0,1,-1,0]] the first column (2,0) is split into two
parallel zigzags.  Folding them back with u = d*v or u = v/d gives
different polynomials; only the second vanishes at every coefficient
vector of a singular Laurent polynomial.  This script evaluates both at a
few such points.

    python demos/split_columns.py
"""

import random
from fractions import Fraction

from adet.intlinalg import integer_kernel
from adet.kasteleyn import compute_adet
from adet.oracle import evaluate, horn_kapranov_point

B_A = [[2, 0, -1, -1], [0, 1, -1, 0]]

rng = random.Random(5)
results = {rule: compute_adet(B_A, multiplicity=rule) for rule in ("paper", "inverse")}
print("final columns:", results["paper"].run.pattern.B.tolist())
print("provenance:", results["paper"].run.provenance.as_triples())
for rule, res in results.items():
    print(f"\n{rule:8s} E_A = {res.value}")

dim = integer_kernel(B_A).shape[0]
print("\nvalue at singular points (paper, inverse):")
for _ in range(4):
    x = [Fraction(rng.randint(1, 5), rng.randint(1, 5)) for _ in range(dim)]
    c = horn_kapranov_point(B_A, x, rng.randint(1, 4), -rng.randint(1, 4))
    values = {f"v{k + 1}": val for k, val in enumerate(c)}
    print("  ", [evaluate(res.value, values) for res in results.values()])
