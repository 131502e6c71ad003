"""Exact integer linear algebra used by the pattern pipeline.

All matrices are numpy arrays of ``dtype=object`` holding Python ints, so
entries never overflow and no floating point is involved anywhere.
"""

from math import gcd

import numpy as np

from .errors import NotOnAffineHyperplane, NotSaturated, NotSpanning, WrongRank


def as_intmatrix(data, ncols=None):
    """Return ``data`` as a 2-D object array of Python ints.

    ``ncols`` fixes the width of an empty matrix (``[]`` has no rows to
    infer it from).
    """
    rows = [[int(x) for x in row] for row in data]
    if not rows:
        return np.zeros((0, ncols or 0), dtype=object)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged matrix")
    out = np.empty((len(rows), width), dtype=object)
    for i, r in enumerate(rows):
        out[i, :] = r
    return out


def det2(v, w):
    """Determinant of the 2x2 matrix with columns ``v`` and ``w``."""
    return int(v[0]) * int(w[1]) - int(v[1]) * int(w[0])


def _echelon(rows, pivot_cols):
    """Row-style Hermite normal form, in place on a list of int lists.

    Only the first ``pivot_cols`` columns are used for pivoting; the
    remaining columns are carried along (an augmented transform block).
    Pivots are positive and entries above a pivot lie in ``[0, pivot)``.
    Returns the number of pivots.
    """
    nrows = len(rows)
    r = 0
    for c in range(pivot_cols):
        if r >= nrows:
            break
        while True:
            nz = [i for i in range(r, nrows) if rows[i][c] != 0]
            if not nz:
                break
            k = min(nz, key=lambda i: abs(rows[i][c]))
            rows[r], rows[k] = rows[k], rows[r]
            done = True
            for i in range(r + 1, nrows):
                if rows[i][c]:
                    q = rows[i][c] // rows[r][c]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                    if rows[i][c]:
                        done = False
            if done:
                break
        if rows[r][c] == 0:
            continue
        if rows[r][c] < 0:
            rows[r] = [-a for a in rows[r]]
        piv = rows[r][c]
        for i in range(r):
            q = rows[i][c] // piv
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def hermite_normal_form(M):
    """Canonical row-style HNF of ``M`` with zero rows dropped."""
    M = as_intmatrix(M)
    rows = [list(r) for r in M]
    k = _echelon(rows, M.shape[1])
    return as_intmatrix(rows[:k], ncols=M.shape[1])


def rank(M):
    M = as_intmatrix(M)
    rows = [list(r) for r in M]
    return _echelon(rows, M.shape[1])


def integer_kernel(M):
    """Basis of the saturated lattice ``{x in Z^n : M x = 0}``, one per row.

    The basis is returned in Hermite normal form, so it depends only on
    the lattice and reruns are bit-identical.
    """
    M = as_intmatrix(M)
    d, n = M.shape
    aug = []
    for j in range(n):
        aug.append([int(M[i, j]) for i in range(d)] + [1 if k == j else 0 for k in range(n)])
    k = _echelon(aug, d)
    kernel = [row[d:] for row in aug[k:]]
    if not kernel:
        return np.zeros((0, n), dtype=object)
    return hermite_normal_form(kernel)


def smith_invariants(M):
    """Nonzero invariant factors of ``M`` in divisibility order."""
    A = [[int(x) for x in row] for row in as_intmatrix(M)]
    if not A:
        return []
    m, n = len(A), len(A[0])
    out = []
    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        A[t], A[pi] = A[pi], A[t]
        for row in A:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        dirty = True
            if not dirty:
                # pivot must also divide the remaining block
                bad = [(i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p]
                if not bad:
                    break
                i, _ = bad[0]
                A[t] = [a + b for a, b in zip(A[t], A[i])]
                continue
            nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n)
                  if A[i][j] and (i == t or j == t)]
            _, pi, pj = min(nz)
            A[t], A[pi] = A[pi], A[t]
            for row in A:
                row[t], row[pj] = row[pj], row[t]
        out.append(abs(A[t][t]))
        t += 1
    return out


def _column_gcd(col):
    g = 0
    for x in col:
        g = gcd(g, int(x))
    return g


def validate_input(A=None, B=None):
    """Check the hypotheses on the point set and return the relation matrix.

    Exactly one of ``A`` (an ``(N-2) x N`` matrix whose columns are the
    points) or ``B`` (a ``2 x N`` relation lattice basis) must be given.
    Violations raise the matching ``InputError`` subclass.
    """
    if (A is None) == (B is None):
        raise ValueError("give exactly one of A or B")
    if A is not None:
        A = as_intmatrix(A)
        k, N = A.shape
        if k != N - 2:
            raise WrongRank(f"A must have N-2 rows for N={N} columns, got {k}")
        inv = smith_invariants(A)
        if len(inv) != k or any(x != 1 for x in inv):
            raise NotSpanning(f"columns of A do not span Z^{k}: invariant factors {inv}")
        B = integer_kernel(A)
        if B.shape[0] != 2:
            raise WrongRank(f"relation lattice has rank {B.shape[0]}, expected 2")
        for i in range(2):
            if sum(B[i]) != 0:
                raise NotOnAffineHyperplane(
                    "no linear functional is 1 on every column of A "
                    f"(relation {list(B[i])} has nonzero sum)")
        return B

    B = as_intmatrix(B)
    if B.shape[0] != 2:
        raise WrongRank(f"B must have 2 rows, got {B.shape[0]}")
    if rank(B) != 2:
        raise WrongRank(f"B has rank {rank(B)}, expected 2")
    for i in range(2):
        if sum(B[i]) != 0:
            raise NotOnAffineHyperplane(f"row {i + 1} of B sums to {sum(B[i])}, not 0")
    inv = smith_invariants(B)
    if inv != [1, 1]:
        raise NotSaturated(f"B spans a sublattice of index {inv[0] * inv[1]}: invariant factors {inv}")
    return B
