"""Zigzag patterns encoded as integer matrices, and their validators.

A pattern of ``p`` zigzags with ``r`` intersection points is stored as

* ``B`` (2 x p): column ``j`` is the homology vector of zigzag ``j``;
* ``I`` (r x p): each row has ones at the two zigzags meeting there;
* ``P`` (r x p): an intersection vector of the +-cell at that point.

``Q = P - I`` is the matching vector of the --cell.  Column and row indices
are 0-based throughout the Python API.
"""

from dataclasses import dataclass, field
from math import gcd
import json

import numpy as np

from .errors import IndexOutOfRange, NotGood, NotOpposite
from .intlinalg import as_intmatrix, det2, integer_kernel, rank

LEVELS = ("basic", "good", "verygood")


@dataclass(frozen=True, eq=False)
class ZigzagPattern:
    B: np.ndarray
    I: np.ndarray
    P: np.ndarray

    def __post_init__(self):
        B = as_intmatrix(self.B)
        p = B.shape[1]
        I = as_intmatrix(self.I, ncols=p)
        P = as_intmatrix(self.P, ncols=p)
        if B.shape[0] != 2:
            raise ValueError("B must have two rows")
        if I.shape != P.shape or I.shape[1] != p:
            raise ValueError(f"inconsistent shapes B{B.shape} I{I.shape} P{P.shape}")
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "I", I)
        object.__setattr__(self, "P", P)

    @property
    def Q(self):
        return self.P - self.I

    @property
    def p(self):
        return self.B.shape[1]

    @property
    def nrows(self):
        return self.I.shape[0]

    def zeta(self, j):
        return (int(self.B[0, j]), int(self.B[1, j]))

    def row_pair(self, e):
        """The two zigzags meeting at intersection point ``e``."""
        i, j = (int(k) for k in np.flatnonzero(self.I[e] != 0)[:2])
        return i, j

    def __eq__(self, other):
        if not isinstance(other, ZigzagPattern):
            return NotImplemented
        return (self.B.shape == other.B.shape and self.I.shape == other.I.shape
                and (self.B == other.B).all() and (self.I == other.I).all()
                and (self.P == other.P).all())

    def permute_columns(self, order):
        """New pattern whose column ``k`` is old column ``order[k]``."""
        order = list(order)
        return ZigzagPattern(self.B[:, order], self.I[:, order], self.P[:, order])

    def to_json(self):
        return {"B": [[int(x) for x in r] for r in self.B],
                "I": [[int(x) for x in r] for r in self.I],
                "P": [[int(x) for x in r] for r in self.P]}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        p = len(obj["B"][0]) if obj["B"] else 0
        return cls(as_intmatrix(obj["B"]), as_intmatrix(obj["I"], ncols=p),
                   as_intmatrix(obj["P"], ncols=p))


def _check_index(pat, *idx):
    for i in idx:
        if not 0 <= i < pat.p:
            raise IndexOutOfRange(f"column {i} out of range for p={pat.p}")


def intersection_rows(pat, i, j):
    """Rows of ``I`` for the intersection points of zigzags ``i`` and ``j``."""
    _check_index(pat, i, j)
    if i == j:
        raise ValueError("i and j must differ")
    return [int(e) for e in np.flatnonzero((pat.I[:, i] == 1) & (pat.I[:, j] == 1))]


def pair_counts(pat):
    """Map ``(i, j)`` with ``i < j`` to the number of intersection rows."""
    counts = {}
    for e in range(pat.nrows):
        key = pat.row_pair(e)
        counts[key] = counts.get(key, 0) + 1
    return counts


def homology_classes(pat):
    """Maximal runs of equal columns of ``B`` in cyclic order.

    Raises NotGood when equal columns are not contiguous.  A run that wraps
    from the last column to the first is returned first, tail part first.
    """
    p = pat.p
    if p == 0:
        return []
    runs = []
    for j in range(p):
        if runs and pat.zeta(j) == pat.zeta(runs[-1][-1]):
            runs[-1].append(j)
        else:
            runs.append([j])
    if len(runs) > 1 and pat.zeta(0) == pat.zeta(p - 1):
        tail = runs.pop()
        runs[0] = tail + runs[0]
    seen = {}
    for run in runs:
        z = pat.zeta(run[0])
        if z in seen:
            raise NotGood(f"columns for class {z} are not contiguous: {seen[z]} and {run}")
        seen[z] = run
    return runs


def class_of(pat):
    """Dict from homology vector to its ordered list of columns."""
    return {pat.zeta(run[0]): run for run in homology_classes(pat)}


def opposite_pair_type(pat, j, k):
    """``"plus"``, ``"minus"``, ``"both"`` or ``"none"`` for an antiparallel pair."""
    _check_index(pat, j, k)
    zj, zk = pat.zeta(j), pat.zeta(k)
    if zj != (-zk[0], -zk[1]):
        raise NotOpposite(f"columns {j} and {k} are not opposite: {zj} vs {zk}")
    Q = pat.Q
    plus = bool((Q[:, j] == -Q[:, k]).all())
    minus = bool((pat.P[:, j] == -pat.P[:, k]).all())
    if plus and minus:
        return "both"
    if plus:
        return "plus"
    if minus:
        return "minus"
    return "none"


def is_plus_pair(pat, j, k):
    return opposite_pair_type(pat, j, k) in ("plus", "both")


def is_minus_pair(pat, j, k):
    return opposite_pair_type(pat, j, k) in ("minus", "both")


def cell_labels(pat):
    """Reduce ``P`` and ``Q`` rows modulo the row space of ``B``.

    Returns ``(A_Z, black, white)`` where ``A_Z`` is ``p x (p-2)`` with
    ``B A_Z = 0`` and ``black[e]``/``white[e]`` are tuples labelling the
    +-cell and --cell at intersection point ``e``.
    """
    A_Z = integer_kernel(pat.B).T
    PA = pat.P.dot(A_Z) if pat.nrows else np.zeros((0, A_Z.shape[1]), dtype=object)
    QA = pat.Q.dot(A_Z) if pat.nrows else np.zeros((0, A_Z.shape[1]), dtype=object)
    black = [tuple(int(x) for x in r) for r in PA]
    white = [tuple(int(x) for x in r) for r in QA]
    return A_Z, black, white


@dataclass
class ConditionResult:
    name: str
    passed: bool
    witness: object = None

    def __str__(self):
        mark = "PASS" if self.passed else "FAIL"
        tail = "" if self.passed or self.witness is None else f"  witness: {self.witness}"
        return f"[{mark}] {self.name}{tail}"


@dataclass
class ValidationReport:
    level: str
    results: list = field(default_factory=list)

    @property
    def ok(self):
        return all(r.passed for r in self.results)

    def failures(self):
        return [r for r in self.results if not r.passed]

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "\n".join(str(r) for r in self.results)


def _cond1(pat):
    sums = [int(x) for x in pat.B.sum(axis=1)] if pat.p else [0, 0]
    r = rank(pat.B) if pat.p else 0
    ok = r == 2 and sums == [0, 0]
    return ConditionResult("1: rank(B) = 2 and columns sum to 0", ok,
                           None if ok else {"rank": r, "column_sum": sums})


def _cond2(pat):
    bad = [j for j in range(pat.p) if gcd(*pat.zeta(j)) != 1]
    return ConditionResult("2: every column of B is primitive", not bad, bad or None)


def _cond34(pat):
    bad = [e for e in range(pat.nrows)
           if sorted(int(x) for x in pat.I[e]) != [0] * (pat.p - 2) + [1, 1]]
    return ConditionResult("3/4: each intersection row joins exactly two zigzags", not bad, bad or None)


def _cond5(pat):
    # the --cell at a crossing is the +-cell shifted by -1 in both crossing columns
    D = pat.P - pat.Q
    bad = [e for e in range(pat.nrows) if not (D[e] == pat.I[e]).all()]
    return ConditionResult("5: P-row and Q-row differ by the crossing pair", not bad, bad or None)


def _cond6(pat):
    if pat.p < 3:
        return ConditionResult("6: as many +-cells as --cells", False, "fewer than 3 zigzags")
    _, black, white = cell_labels(pat)
    nb, nw = len(set(black)), len(set(white))
    return ConditionResult("6: as many +-cells as --cells", nb == nw,
                           None if nb == nw else {"black": nb, "white": nw})


def _cond7(pat):
    p = pat.p
    bad = []
    for i in range(p):
        a, b = pat.zeta(i), pat.zeta((i + 1) % p)
        if det2(a, b) < 0:
            bad.append(("negative det", i, (i + 1) % p))
        if i < p - 1 and b == (-a[0], -a[1]):
            bad.append(("consecutive opposite", i, i + 1))
    if p and (pat.zeta(p - 1) == pat.zeta(0) or pat.zeta(p - 1) == tuple(-x for x in pat.zeta(0))):
        bad.append(("last column equals +-first", p - 1, 0))
    if not bad:
        try:
            runs = homology_classes(pat)
        except NotGood as exc:
            bad.append(("classes not contiguous", str(exc)))
        else:
            # counterclockwise with one full turn: class vectors strictly turn left
            vecs = [pat.zeta(r[0]) for r in runs]
            n = len(vecs)
            steps = [(vecs[k], vecs[(k + 1) % n]) for k in range(n)]
            if any(det2(a, b) <= 0 for a, b in steps):
                bad.append(("class vectors not strictly counterclockwise", vecs))
            elif sum(1 for a, b in steps if a[1] < 0 <= b[1]) != 1:
                bad.append(("class vectors wind more than once", vecs))
    return ConditionResult("7: columns ordered counterclockwise, classes contiguous", not bad, bad or None)


def _cond8(pat):
    counts = pair_counts(pat)
    bad = []
    for i in range(pat.p):
        for j in range(i + 1, pat.p):
            d = abs(det2(pat.zeta(i), pat.zeta(j)))
            n = counts.get((i, j), 0)
            if d != n:
                bad.append((i, j, d, n))
    return ConditionResult("8: |Z_i ^ Z_j| = #(Z_i cap Z_j) for all pairs", not bad,
                           bad[:10] or None)


def band_violations(pat):
    """Violations of the opposite-pair ladder condition, as a list."""
    bad = []
    classes = class_of(pat)
    for z, cols in classes.items():
        opp = classes.get((-z[0], -z[1]))
        if opp is None:
            continue
        m = min(len(cols), len(opp))
        for t in range(m):
            if not is_plus_pair(pat, cols[t], opp[t]):
                bad.append(("not +-opposite", cols[t], opp[t]))
        if m > 1:
            first = all(is_minus_pair(pat, cols[t + 1], opp[t]) for t in range(m - 1))
            second = all(is_minus_pair(pat, cols[t], opp[t + 1]) for t in range(m - 1))
            if not (first or second):
                bad.append(("no --opposite ladder", tuple(cols[:m]), tuple(opp[:m])))
    return bad


def _cond9(pat):
    try:
        bad = band_violations(pat)
    except NotGood as exc:
        bad = [str(exc)]
    return ConditionResult("9: opposite classes form an alternating ladder", not bad, bad or None)


_CHECKS = {
    "basic": (_cond1, _cond2, _cond34, _cond5, _cond6),
    "good": (_cond7, _cond8),
    "verygood": (_cond9,),
}


def validate(pat, level="good"):
    """Check the pattern conditions up to ``level`` and report each one."""
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}")
    report = ValidationReport(level)
    for lv in LEVELS[: LEVELS.index(level) + 1]:
        for check in _CHECKS[lv]:
            report.results.append(check(pat))
    return report
