"""Shared generators and replay helpers for the test modules."""

import random

from hypothesis import strategies as st

from adet import gulotta as G
from adet.errors import InputError
from adet.intlinalg import validate_input


def _candidate(draw_int, n):
    rows = []
    for _ in range(2):
        head = [draw_int(-3, 3) for _ in range(n - 1)]
        last = -sum(head)
        if abs(last) > 3:
            return None
        rows.append(head + [last])
    if any(rows[0][k] == 0 and rows[1][k] == 0 for k in range(n)):
        return None
    try:
        validate_input(B=rows)
    except InputError:
        return None
    return rows


def random_relations(rng, nmax=6):
    """Rejection-sample a valid 2 x N relation matrix, N in 3..nmax, entries in [-3, 3]."""
    while True:
        rows = _candidate(rng.randint, rng.randint(3, nmax))
        if rows is not None:
            return rows


def corpus(size, seed, nmax=6):
    rng = random.Random(seed)
    return [random_relations(rng, nmax) for _ in range(size)]


@st.composite
def relation_matrices(draw, nmax=6):
    """Hypothesis strategy with the same distribution as ``random_relations``."""
    seed = draw(st.integers(0, 2**32 - 1))
    return random_relations(random.Random(seed), nmax)


def clean_stages(pat, merged):
    """Replay the clean phase, returning the pattern before each repair family."""
    plus = G._plus_members(pat)
    stages = {"merged": pat}
    while (nxt := G._repair2_pass(pat, plus)) is not None:
        pat = nxt
    stages["after_repair2"] = pat
    while (nxt := G._repair1_pass(pat, plus)) is not None:
        pat = nxt
    stages["after_repair1"] = pat
    stages["reordered"] = G.reorder(pat)
    return stages


def iterations(B_A):
    """Yield ``(before, plan, merged, cleaned)`` for every iteration of a run."""
    pat, _, _ = G.initial_pattern(B_A)
    while not G.is_terminal(B_A, pat):
        plan = G.merge_plan(B_A, pat)
        merged = G.apply_merge(pat, plan.M)
        cleaned = G.clean(merged, G.merged_columns(plan.M))
        yield pat, plan, merged, cleaned
        pat = cleaned


def structural_ok(pat):
    """Two ones per I-row, Q = P - I, B columns summing to zero."""
    rows_ok = all(sorted(int(x) for x in row)[-2:] == [1, 1] and sum(int(x) for x in row) == 2
                  for row in pat.I)
    return (rows_ok and (pat.P - pat.Q == pat.I).all()
            and all(sum(int(x) for x in pat.B[r]) == 0 for r in range(2)))


# criterion number -> one summary line, filled in by test_acceptance
ACCEPTANCE = {}


def record(number, title, passed, detail):
    line = f"criterion {number} {'PASS' if passed else 'FAIL'}  {title}: {detail}"
    ACCEPTANCE[number] = line
    print(line)
    return passed
