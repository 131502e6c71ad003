"""Kasteleyn matrix of the six-zigzag hexagon pattern.

Prints K, its complement, the determinant with every z specialised, and
the Newton polygon of det K, whose edges reproduce the columns of B.

    python demos/hexagon_kasteleyn.py
"""

from adet.fixtures import hexagon_pattern
from adet.kasteleyn import build_K, complement_K, iota_det, newton_polygon_check


def print_matrix(title, K):
    print(title)
    for label, row in zip(K.row_labels, K.entries):
        cells = ", ".join(str(x) if x else "0" for x in row)
        print(f"  {label}: [{cells}]")


pat = hexagon_pattern()
K = build_K(pat)
print_matrix("K (rows are +-cells, columns --cells):", K)
print_matrix("\ncomplement:", complement_K(K))

det = iota_det(K, pat)
print("\niota(det K) =", det)
report = newton_polygon_check(det, pat.B)
print("Newton polygon vertices:", report.vertices)
print("edges (primitive direction, lattice length):", report.edges)
print("B columns:", [pat.zeta(j) for j in range(pat.p)])
