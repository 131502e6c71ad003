"""Merging and repairing moves as row/column rewrites of a pattern.

Every move is pure: it takes a ZigzagPattern and returns a new one.
Column indices are 0-based.
"""

import numpy as np

from .errors import NotSingleIntersection, PreconditionFailed
from .pattern import ZigzagPattern, intersection_rows, is_minus_pair, is_plus_pair


def _drop_rows(pat, rows):
    keep = [e for e in range(pat.nrows) if e not in set(rows)]
    return ZigzagPattern(pat.B, pat.I[keep], pat.P[keep])


def _neg(z):
    return (-z[0], -z[1])


def merge(pat, i, j):
    """Merge zigzags ``i`` and ``j`` meeting in exactly one point.

    Column ``j`` is added to column ``i`` in B, I and P, then deleted, and
    the row of the common point is removed.
    """
    rows = intersection_rows(pat, i, j)
    if len(rows) != 1:
        raise NotSingleIntersection(f"zigzags {i} and {j} meet {len(rows)} times, not once")
    keep_rows = [e for e in range(pat.nrows) if e != rows[0]]
    keep_cols = [c for c in range(pat.p) if c != j]

    def fold(M):
        M = M.copy()
        M[:, i] = M[:, i] + M[:, j]
        return M[:, keep_cols]

    return ZigzagPattern(fold(pat.B), fold(pat.I)[keep_rows], fold(pat.P)[keep_rows])


def repair1(pat, i, j):
    """Remove both crossings of an antiparallel pair that bound a single cell."""
    if pat.zeta(i) != _neg(pat.zeta(j)):
        raise PreconditionFailed(f"zigzags {i} and {j} are not in opposite classes")
    rows = intersection_rows(pat, i, j)
    if len(rows) != 2:
        raise PreconditionFailed(f"zigzags {i} and {j} meet {len(rows)} times, need 2")
    out = _drop_rows(pat, rows)
    if not (is_plus_pair(out, i, j) or is_minus_pair(out, i, j)):
        raise PreconditionFailed(f"zigzags {i} and {j} do not become an opposite pair")
    return out


def bigon_rows(pat, i, j):
    """Pairs of crossings of ``i`` and ``j`` whose +-cells or --cells coincide.

    Two rows with identical ``P`` (or identical ``Q``) lifts are corners of a
    single cell bounded only by the two zigzags.
    """
    rows = sorted(intersection_rows(pat, i, j))
    found = []
    for a_pos, a in enumerate(rows):
        for b in rows[a_pos + 1:]:
            if (pat.P[a] == pat.P[b]).all() or (pat.Q[a] == pat.Q[b]).all():
                found.append((a, b))
    return found


def remove_bigon(pat, i, j, rows):
    """Drop the two corners of a bigon between antiparallel zigzags.

    Unlike ``repair1`` the pair may meet more than twice; only the given
    corners go away.
    """
    if pat.zeta(i) != _neg(pat.zeta(j)):
        raise PreconditionFailed(f"zigzags {i} and {j} are not in opposite classes")
    rows = tuple(sorted(rows))
    if rows not in bigon_rows(pat, i, j):
        raise PreconditionFailed(f"rows {rows} do not bound a bigon of {i} and {j}")
    return _drop_rows(pat, rows)


def repair2(pat, i, j):
    """Uncross two parallel zigzags meeting twice by swapping their middle arcs."""
    if pat.zeta(i) != pat.zeta(j):
        raise PreconditionFailed(f"zigzags {i} and {j} are not in the same class")
    rows = intersection_rows(pat, i, j)
    if len(rows) != 2:
        raise PreconditionFailed(f"zigzags {i} and {j} meet {len(rows)} times, need 2")
    P = pat.P.copy()
    I = pat.I.copy()
    H = P[:, i] - P[:, j]
    m = max(H)
    top = H == m
    swap = (top & (I[:, i] == 1)) | ((H == m - 1) & (I[:, j] == 1))
    P[top, i] -= 1
    P[top, j] += 1
    I[swap, i], I[swap, j] = pat.I[swap, j], pat.I[swap, i]
    return _drop_rows(ZigzagPattern(pat.B, I, P), rows)


def repair3(pat, z0, seq):
    """Replace an alternating ladder crossing ``z0`` twice by a parallel one.

    ``seq`` lists the ladder columns.  It is reversed if needed so that the
    first member is antiparallel to ``z0``; then consecutive members must
    form plus, minus, plus, ... opposite pairs.
    """
    seq = list(seq)
    if len(seq) == 0 or len(seq) % 2:
        raise PreconditionFailed(f"ladder must have positive even length, got {len(seq)}")
    if z0 in seq or len(set(seq)) != len(seq):
        raise PreconditionFailed("ladder columns must be distinct and exclude z0")
    c0 = pat.zeta(z0)
    if pat.zeta(seq[0]) == c0:
        seq.reverse()
    for k, col in enumerate(seq, start=1):
        want = c0 if k % 2 == 0 else _neg(c0)
        if pat.zeta(col) != want:
            raise PreconditionFailed(f"ladder member {col} is not in class {want}")
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if intersection_rows(pat, seq[a], seq[b]):
                raise PreconditionFailed(f"ladder members {seq[a]} and {seq[b]} intersect")
    for col in seq:
        n = len(intersection_rows(pat, z0, col))
        if n != 2:
            raise PreconditionFailed(f"z0={z0} meets ladder member {col} {n} times, need 2")
    for k in range(1, len(seq)):
        test = is_plus_pair if k % 2 == 1 else is_minus_pair
        if not test(pat, seq[k - 1], seq[k]):
            kind = "plus" if k % 2 == 1 else "minus"
            raise PreconditionFailed(f"ladder members {seq[k - 1]}, {seq[k]} are not a {kind} pair")

    on_seq = pat.I[:, seq].sum(axis=1) > 0
    keep = [e for e in range(pat.nrows) if not on_seq[e]]
    I = pat.I[keep].copy()
    P = pat.P[keep].copy()
    for k, col in enumerate(seq, start=1):
        P[:, col] = P[:, z0] if k % 2 == 0 else -P[:, z0]

    chain = [z0] + seq
    new_I, new_P = [], []
    for e in range(I.shape[0]):
        if I[e, z0] != 1:
            new_I.append(I[e])
            new_P.append(P[e])
            continue
        other = I[e].copy()
        other[z0] = 0
        prow = P[e].copy()
        for k, col in enumerate(chain):
            if k % 2 == 1:
                prow = prow.copy()
                prow[chain[k - 1]] -= 1
                prow[col] += 1
            irow = other.copy()
            irow[col] = 1
            new_I.append(irow)
            new_P.append(prow)
    p = pat.p
    I_out = np.array(new_I, dtype=object).reshape(len(new_I), p)
    P_out = np.array(new_P, dtype=object).reshape(len(new_P), p)
    return ZigzagPattern(pat.B, I_out, P_out)
