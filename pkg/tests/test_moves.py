import numpy as np
import pytest

from adet import gulotta as G
from adet.errors import NotSingleIntersection, PreconditionFailed
from adet.fixtures import hexagon_pattern, square_pattern
from adet.moves import bigon_rows, merge, remove_bigon, repair1, repair2, repair3
from adet.pattern import ZigzagPattern, intersection_rows, pair_counts, validate
from adet.intlinalg import det2

from support import clean_stages, corpus, iterations, structural_ok


def drop(M, row=None, col=None):
    M = np.array(M, dtype=object)
    if row is not None:
        M = np.delete(M, row, axis=0)
    if col is not None:
        M = np.delete(M, col, axis=1)
    return M


def test_merge_hexagon_first_pair():
    pat = hexagon_pattern()
    out = merge(pat, 0, 1)
    assert out.p == 5 and out.nrows == 11
    assert out.zeta(0) == (2, 1)
    # independent replay of the edit: add column 1 to column 0, delete it and row 0
    for old, new in ((pat.I, out.I), (pat.P, out.P)):
        expect = old.copy()
        expect[:, 0] = expect[:, 0] + expect[:, 1]
        assert (drop(expect, row=0, col=1) == new).all()
    assert [1, 1, 0, 0, 0, 0] not in [list(r) for r in out.I]


def test_merge_parallel_pair_fails():
    with pytest.raises(NotSingleIntersection):
        merge(square_pattern(), 0, 1)


def test_merge_square_crossing_pair():
    pat = square_pattern()
    out = merge(pat, 0, 2)
    assert out.zeta(0) == (1, 1) and out.nrows == 15 and out.p == 7
    expect = pat.I.copy()
    expect[:, 0] = expect[:, 0] + expect[:, 2]
    assert (drop(expect, row=0, col=2) == out.I).all()
    assert structural_ok(out)


def test_merge_keeps_shadow_conditions_one_to_five():
    for pat in (hexagon_pattern(), square_pattern()):
        for (i, j), n in pair_counts(pat).items():
            out = merge(pat, i, j)
            failed = {r.name[0] for r in validate(out, "basic").failures()}
            assert failed <= {"6"}, (i, j, failed)


@pytest.mark.xfail(strict=True, reason="cell labels collide for some merged hexagon pairs; "
                   "geometric cell counts stay equal (see README, known limitations)")
def test_merge_keeps_cell_balance_label_shadow():
    pat = hexagon_pattern()
    for (i, j), n in pair_counts(pat).items():
        assert validate(merge(pat, i, j), "basic").ok, (i, j)


def test_merge_preserves_basic_on_initial_patterns():
    for B_A in corpus(8, 2):
        pat, _, _ = G.initial_pattern(B_A)
        for (i, j), n in list(pair_counts(pat).items())[:12]:
            assert validate(merge(pat, i, j), "basic").ok


def test_repair1_preconditions():
    with pytest.raises(PreconditionFailed):
        repair1(square_pattern(), 0, 1)
    four = ZigzagPattern([[1, -1, 0, 0], [0, 0, 1, -1]], [[1, 1, 0, 0]] * 4, [[1, 0, 0, 0]] * 4)
    with pytest.raises(PreconditionFailed, match="4 times"):
        repair1(four, 0, 1)


def test_repair2_preconditions():
    with pytest.raises(PreconditionFailed):
        repair2(square_pattern(), 0, 2)
    with pytest.raises(PreconditionFailed):
        repair2(square_pattern(), 0, 1)


def test_repair2_with_constant_height():
    pat = ZigzagPattern([[1, 1, -1, -1], [0, 0, 0, 0]],
                        [[1, 1, 0, 0], [1, 1, 0, 0], [1, 0, 1, 0], [0, 1, 0, 1]],
                        [[1, 0, 0, 0], [1, 0, 0, 0], [1, 0, 1, 0], [2, 1, 0, 1]])
    out = repair2(pat, 0, 1)
    # every row sits at the maximum height and shifts; rows 0 and 1 are the crossings
    assert [list(r) for r in out.P] == [[0, 1, 1, 0], [1, 2, 0, 1]]
    assert [list(r) for r in out.I] == [[0, 1, 1, 0], [0, 1, 0, 1]]
    assert all(sorted(r)[-2:] == [1, 1] and sum(r) == 2 for r in (list(x) for x in out.P - out.Q))


def merged_corpus():
    for B_A in corpus(25, 11):
        for before, plan, merged, cleaned in iterations(B_A):
            yield plan, merged


def test_repair2_on_merged_patterns():
    seen = 0
    for plan, merged in merged_corpus():
        for (i, j), n in pair_counts(merged).items():
            if n != 2 or merged.zeta(i) != merged.zeta(j):
                continue
            for a, b in ((i, j), (j, i)):
                out = repair2(merged, a, b)
                seen += 1
                assert structural_ok(out)
                assert out.nrows == merged.nrows - 2
                assert intersection_rows(out, i, j) == []
                assert det2(out.zeta(i), out.zeta(j)) == 0
    assert seen > 20


def test_repair1_agrees_with_bigon_removal():
    seen = 0
    for plan, merged in merged_corpus():
        pat = clean_stages(merged, G.merged_columns(plan.M))["after_repair2"]
        for (i, j), n in pair_counts(pat).items():
            if n != 2 or pat.zeta(i) != (-pat.zeta(j)[0], -pat.zeta(j)[1]):
                continue
            found = bigon_rows(pat, i, j)
            if not found:
                continue
            seen += 1
            out = repair1(pat, i, j)
            assert out == remove_bigon(pat, i, j, found[0])
            assert out.nrows == pat.nrows - 2 and out.p == pat.p
    assert seen > 5


def test_remove_bigon_rejects_other_rows():
    for plan, merged in merged_corpus():
        pat = clean_stages(merged, G.merged_columns(plan.M))["after_repair2"]
        for (i, j), n in pair_counts(pat).items():
            if pat.zeta(i) == (-pat.zeta(j)[0], -pat.zeta(j)[1]) and bigon_rows(pat, i, j):
                rows = intersection_rows(pat, i, j)
                bad = (rows[0], next(e for e in range(pat.nrows) if e not in rows))
                with pytest.raises(PreconditionFailed):
                    remove_bigon(pat, i, j, bad)
                with pytest.raises(PreconditionFailed):
                    remove_bigon(pat, i, i, bigon_rows(pat, i, j)[0])
                return
    pytest.fail("no bigon found in the corpus")


def test_repair3_preconditions():
    pat = square_pattern()
    with pytest.raises(PreconditionFailed, match="even"):
        repair3(pat, 0, [4])
    with pytest.raises(PreconditionFailed, match="0 times"):
        repair3(pat, 0, [4, 1])


def test_repair3_micro_instance(monkeypatch):
    calls = []
    real = G.repair3

    def spy(pat, z0, seq):
        out = real(pat, z0, seq)
        calls.append((pat, z0, list(seq), out))
        return out

    monkeypatch.setattr(G, "repair3", spy)
    G.run([[-2, 1, 1, 0], [2, -2, 1, -1]], keep_trace=False)
    assert calls
    for pat, z0, seq, out in calls:
        s = len(seq) // 2
        on_seq = [e for e in range(pat.nrows) if any(pat.I[e, c] for c in seq)]
        crossing_z0 = [e for e in range(pat.nrows) if e not in on_seq and pat.I[e, z0]]
        assert out.nrows == pat.nrows - len(on_seq) + 2 * s * len(crossing_z0)
        assert out.p == pat.p and (out.B == pat.B).all()
        assert structural_ok(out)
        # the ladder ends up parallel or antiparallel to z0 and disjoint from it
        for c in seq:
            assert intersection_rows(out, z0, c) == []
