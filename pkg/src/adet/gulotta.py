"""Iteration driver: from a relation matrix to a very good zigzag pattern.

One iteration computes a merge plan from the position of the input
columns relative to the pattern columns, multiplies the pattern by the
resulting 0/1 merging matrix, and then repairs the merged pattern until it
is very good again.  The loop stops once every input column is a multiple
of a pattern column.
"""

from dataclasses import dataclass, field
from math import gcd
import logging

import numpy as np

from .errors import (AlreadyTerminal, CleanFailed, IterationLimitExceeded,
                     NotVeryGood, AdetError)
from .intlinalg import as_intmatrix
from .moves import bigon_rows, remove_bigon, repair2, repair3
from .pattern import (ZigzagPattern, band_violations, class_of, homology_classes,
                      intersection_rows, is_minus_pair, is_plus_pair, pair_counts, validate)

log = logging.getLogger(__name__)

J = as_intmatrix([[0, 1], [-1, 0]])


def _neg(z):
    return (-z[0], -z[1])


def initial_pattern(B_A):
    """Straight-line grid pattern to start from.

    Returns ``(pattern, n1, n2)`` where ``n1``/``n2`` are the sums of the
    positive entries in the two rows of ``B_A``.
    """
    B_A = as_intmatrix(B_A)
    n1 = sum(x for x in B_A[0] if x > 0)
    n2 = sum(x for x in B_A[1] if x > 0)
    p = 2 * n1 + 2 * n2
    B = [[1] * n1 + [0] * n2 + [-1] * n1 + [0] * n2,
         [0] * n1 + [1] * n2 + [0] * n1 + [-1] * n2]
    I_rows, P_rows = [], []
    for a in range(1, n1 + 1):
        for b in range(1, n2 + 1):
            prow = [0] * p
            for j in range(1, p + 1):
                if j <= a or 2 * n1 + n2 + 1 <= j <= 2 * n1 + n2 + b:
                    prow[j - 1] = 1
                elif n1 + n2 + 1 <= j <= n1 + n2 + a - 1 or n1 + 1 <= j <= n1 + b - 1:
                    prow[j - 1] = -1
            for x, y in ((a, b + n1), (a, b + 2 * n1 + n2),
                         (a + n1 + n2, b + n1), (a + n1 + n2, b + 2 * n1 + n2)):
                irow = [0] * p
                irow[x - 1] = irow[y - 1] = 1
                I_rows.append(irow)
                P_rows.append(prow)
    pat = ZigzagPattern(as_intmatrix(B), as_intmatrix(I_rows, ncols=p), as_intmatrix(P_rows, ncols=p))
    return pat, n1, n2


def _primitive(col):
    g = gcd(int(col[0]), int(col[1]))
    return g, (int(col[0]) // g, int(col[1]) // g)


def is_terminal(B_A, pat):
    """True when every column of ``B_A`` is a multiple of a pattern column."""
    B_A = as_intmatrix(B_A)
    cols = {pat.zeta(j) for j in range(pat.p)}
    return all(_primitive(B_A[:, k])[1] in cols for k in range(B_A.shape[1]))


@dataclass
class MergePlan:
    S: np.ndarray
    R: np.ndarray
    rho: list
    lam: list
    sigma: list          # sigma[i] = new (0-based) position of zigzag i
    phi: list            # phi[pos] = merged column of position pos
    M: np.ndarray
    q: int
    classes: dict = field(default_factory=dict)   # class vector -> per-class counts


def merge_plan(B_A, pat, check=True):
    """Compute the merging matrix for one iteration."""
    B_A = as_intmatrix(B_A)
    if check:
        rep = validate(pat, "verygood")
        if not rep.ok:
            raise NotVeryGood(str(rep.failures()))
    if is_terminal(B_A, pat):
        raise AlreadyTerminal("every input column is already a multiple of a pattern column")
    p = pat.p
    S = B_A.T.dot(J).dot(pat.B)
    Sc = S[:, list(range(1, p)) + [0]]
    R = np.zeros(S.shape, dtype=object)
    for i in range(S.shape[0]):
        for j in range(p):
            s, sc = S[i, j], Sc[i, j]
            if s < 0:
                R[i, j] = (abs(s) + abs(sc) - abs(s + sc)) // 2
    rho = [int(sum(R[:, j])) for j in range(p)]
    lam = [rho[p - 1]] + rho[: p - 1]
    q = sum(lam)

    runs = homology_classes(pat)
    if len(runs) > 1 and runs[0][0] > runs[0][-1]:
        raise NotVeryGood("a homology class wraps around the last column")
    tilde = {}
    for run in runs:
        z = pat.zeta(run[0])
        r_t = max(rho[j] for j in run)
        l_t = max(lam[j] for j in run)
        m_t = len(run) - r_t - l_t
        if m_t < 0:
            raise AdetError(f"class {z} has {len(run)} zigzags but must merge {r_t + l_t}")
        tilde[z] = (l_t, m_t, r_t)

    sigma = [None] * p
    info = {}
    for run in runs:
        z = pat.zeta(run[0])
        l_t, m_t, r_t = tilde[z]
        if _neg(z) in tilde:
            ol, om, orr = tilde[_neg(z)]
            l_h, m_h, r_h = min(l_t, ol), min(m_t, om), min(r_t, orr)
        else:
            l_h = m_h = r_h = 0
        l_b, m_b, r_b = l_t - l_h, m_t - m_h, r_t - r_h
        # source order of the six blocks and where each one lands
        blocks = [(l_h, 0), (m_h, l_t), (r_h, l_t + m_t),
                  (l_b, l_h), (m_b, l_t + m_h), (r_b, l_t + m_t + r_h)]
        offset = 0
        for length, target in blocks:
            for k in range(length):
                sigma[run[offset + k]] = run[0] + target + k
            offset += length
        info[z] = {"tilde": (l_t, m_t, r_t), "hat": (l_h, m_h, r_h), "bar": (l_b, m_b, r_b)}

    # position j (1-based) -> merged column (1-based)
    phi = []
    acc = 0
    for j in range(1, p + 1):
        acc += lam[j - 1]
        if j > lam[0]:
            phi.append(j - acc - 1)
        else:
            phi.append(p - q + j - acc - 1)
    M = np.zeros((p, p - q), dtype=object)
    for i in range(p):
        M[i, phi[sigma[i]]] = 1
    return MergePlan(S, R, rho, lam, sigma, phi, M, q, info)


def apply_merge(pat, M):
    """Multiply the pattern by the merging matrix and drop vanished points."""
    M = as_intmatrix(M)
    B = pat.B.dot(M)
    IM = pat.I.dot(M) if pat.nrows else np.zeros((0, M.shape[1]), dtype=object)
    PM = pat.P.dot(M) if pat.nrows else np.zeros((0, M.shape[1]), dtype=object)
    keep = [e for e in range(IM.shape[0])
            if not (sum(1 for x in IM[e] if x) == 1 and max(IM[e]) == 2)]
    return ZigzagPattern(B, IM[keep], PM[keep])


def merged_columns(M):
    """Columns of the merged pattern that received two zigzags."""
    M = as_intmatrix(M)
    return {j for j in range(M.shape[1]) if sum(M[:, j]) > 1}


# -- clean phase ------------------------------------------------------------

def _plus_members(pat):
    members = set()
    classes = class_of(pat)
    for z, cols in classes.items():
        opp = classes.get(_neg(z))
        if not opp:
            continue
        for a in cols:
            for b in opp:
                if is_plus_pair(pat, a, b):
                    members.add(a)
                    members.add(b)
    return members


def _repair2_pass(pat, plus):
    counts = pair_counts(pat)
    for (i, j), n in sorted(counts.items()):
        if n == 2 and pat.zeta(i) == pat.zeta(j) and ((i in plus) == (j in plus)):
            # Both argument orders describe the same curves.  Pick the one
            # that leaves the cell at the origin of the lift untouched, so
            # column offsets (and hence opposite-pair sums) are preserved.
            H = pat.P[:, i] - pat.P[:, j]
            if max(H) <= 0:
                return repair2(pat, j, i)
            return repair2(pat, i, j)
    return None


def _repair1_pass(pat, plus):
    counts = pair_counts(pat)
    for i, j in sorted(counts):
        if pat.zeta(i) != _neg(pat.zeta(j)) or (i in plus) != (j in plus):
            continue
        found = bigon_rows(pat, i, j)
        if found:
            return remove_bigon(pat, i, j, found[0])
    return None


def _rotate_classes(pat):
    """Rotate columns so no homology class wraps past the last column."""
    p = pat.p
    if p < 2 or pat.zeta(0) != pat.zeta(p - 1):
        return pat
    start = p - 1
    while start > 0 and pat.zeta(start - 1) == pat.zeta(0):
        start -= 1
    order = list(range(start, p)) + list(range(start))
    return pat.permute_columns(order)


def _find_ladder(pat, first, second, m):
    """Alternating plus/minus chain of ``2m`` zigzags starting in ``first``.

    Chain members must be pairwise disjoint.  Returns the two member lists
    in chain order, or None.
    """
    counts = pair_counts(pat)

    def meets(a, b):
        return counts.get((min(a, b), max(a, b)), 0) > 0

    def dfs(chain):
        if len(chain) == 2 * m:
            return chain
        k = len(chain)
        pool = second if k % 2 == 1 else first
        for c in pool:
            if c in chain or any(meets(c, x) for x in chain):
                continue
            if k and not (is_plus_pair if k % 2 == 1 else is_minus_pair)(pat, chain[-1], c):
                continue
            found = dfs(chain + [c])
            if found:
                return found
        return None

    chain = dfs([])
    if chain is None:
        return None
    return chain[0::2], chain[1::2]


def reorder(pat):
    """Permute columns inside classes so opposite classes form ladders.

    Patterns whose classes already form ladders are returned as they are.
    """
    pat = _rotate_classes(pat)
    if not band_violations(pat):
        return pat
    classes = class_of(pat)
    order = list(range(pat.p))
    done = set()
    for z, cols in classes.items():
        opp = classes.get(_neg(z))
        if not opp or z in done:
            continue
        done.add(z)
        done.add(_neg(z))
        m = min(len(cols), len(opp))
        found = _find_ladder(pat, cols, opp, m)
        if found:
            lead, trail = found
        else:
            found = _find_ladder(pat, opp, cols, m)
            if found is None:
                continue
            trail, lead = found
        new_cols = lead + [c for c in cols if c not in lead]
        new_opp = trail + [c for c in opp if c not in trail]
        for pos, c in zip(cols, new_cols):
            order[pos] = c
        for pos, c in zip(opp, new_opp):
            order[pos] = c
    if order == list(range(pat.p)):
        return pat
    return pat.permute_columns(order)


def _ladder_chain(pat, cols, opp, b):
    """Chain order of the ladder formed by ``opp`` and the first ``b`` of ``cols``."""
    c, o = cols[:b], opp[:b]
    if all(is_minus_pair(pat, c[t + 1], o[t]) for t in range(b - 1)):
        chain = []
        for t in range(b):
            chain += [c[t], o[t]]
    else:
        chain = []
        for t in range(b):
            chain += [o[t], c[t]]
    return chain


def _repair3_pass(pat, merged):
    classes = class_of(pat)
    for z, cols in classes.items():
        opp = classes.get(_neg(z))
        if not opp or not len(cols) > len(opp) > 0:
            continue
        if merged is not None and not (set(cols) | set(opp)) & merged:
            continue
        b = len(opp)
        z0 = cols[-1]
        if not intersection_rows(pat, z0, opp[0]):
            continue
        chain = _ladder_chain(pat, cols, opp, b)
        return repair3(pat, z0, chain)
    return None


def clean(pat, merged=None, check=True):
    """Turn a freshly merged pattern into a very good one.

    ``merged`` is the set of columns produced by merging (see
    ``merged_columns``); when omitted every class is eligible for the
    third repair.
    """
    limit = 4 * (pat.nrows + pat.p) + 10
    # Membership is fixed before any repair, otherwise the first repairs
    # would change which pairs later ones may touch.
    plus = _plus_members(pat)
    for _ in range(limit):
        nxt = _repair2_pass(pat, plus)
        if nxt is None:
            break
        pat = nxt
    for _ in range(limit):
        nxt = _repair1_pass(pat, plus)
        if nxt is None:
            break
        pat = nxt
    pat = reorder(pat)
    for _ in range(pat.p):
        nxt = _repair3_pass(pat, merged)
        if nxt is None:
            break
        pat = nxt
    if check:
        rep = validate(pat, "verygood")
        if not rep.ok:
            raise CleanFailed(str(rep.failures()[0]))
    return pat


# -- driver -----------------------------------------------------------------

@dataclass
class ColumnProvenance:
    """``entries[i] = (ba_column, multiplier)`` for pattern column ``i``."""
    entries: list

    def multiplier(self, i):
        return self.entries[i][1]

    def source(self, i):
        return self.entries[i][0]

    def as_triples(self):
        return [(i, k, d) for i, (k, d) in enumerate(self.entries)]


def column_provenance(B_A, pat):
    """Match final pattern columns to input columns.

    Input columns sharing a primitive direction receive consecutive blocks
    of the matching pattern columns, in input column order.
    """
    B_A = as_intmatrix(B_A)
    by_dir = {}
    for k in range(B_A.shape[1]):
        d, prim = _primitive(B_A[:, k])
        by_dir.setdefault(prim, []).append((k, d))
    entries = [None] * pat.p
    for prim, sources in by_dir.items():
        cols = [j for j in range(pat.p) if pat.zeta(j) == prim]
        need = sum(d for _, d in sources)
        if len(cols) != need:
            raise AdetError(f"direction {prim}: pattern has {len(cols)} columns, input needs {need}")
        it = iter(cols)
        for k, d in sources:
            for _ in range(d):
                entries[next(it)] = (k, d)
    if any(e is None for e in entries):
        raise AdetError("pattern has columns not accounted for by the input")
    return ColumnProvenance(entries)


@dataclass
class RunResult:
    pattern: ZigzagPattern
    provenance: ColumnProvenance
    trace: list          # (name, pattern) pairs
    iterations: int


def run(B_A, keep_trace=True, check=True):
    """Iterate merge and clean until the pattern is terminal."""
    B_A = as_intmatrix(B_A)
    pat, _, _ = initial_pattern(B_A)
    trace = [("step-000", pat)] if keep_trace else []
    limit = pat.p
    it = 0
    while not is_terminal(B_A, pat):
        it += 1
        if it > limit:
            raise IterationLimitExceeded(f"no termination after {limit} iterations")
        plan = merge_plan(B_A, pat, check=check)
        merged = apply_merge(pat, plan.M)
        log.debug("iteration %d: p %d -> %d", it, pat.p, merged.p)
        if keep_trace:
            trace.append((f"step-{it:03d}-merged", merged))
        pat = clean(merged, merged_columns(plan.M), check=check)
        if keep_trace:
            trace.append((f"step-{it:03d}-clean", pat))
    return RunResult(pat, column_provenance(B_A, pat), trace, it)
