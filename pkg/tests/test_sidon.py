import math
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubeforge.errors import DegenerateError, NotPrimeError, PreconditionError
from cubeforge.sidon import (
    erdos_turan_sidon,
    final_size_floor,
    first_sumset_cap_exit,
    grow_large_phase,
    grow_small_phase,
    is_prime,
    mian_chowla,
    sidon_cubic_lowerbound,
)
from cubeforge.sumsets import is_sidon, restricted_sumset

from oracles import subset_sums


def _brute_sidon(A):
    sums = [a + b for i, a in enumerate(A) for b in A[i:]]
    return len(sums) == len(set(sums))


def test_constructions():
    assert list(erdos_turan_sidon(3)) == [0, 7, 13]
    assert len(erdos_turan_sidon(5)) == 5 and _brute_sidon(list(erdos_turan_sidon(5)))
    assert list(mian_chowla(4)) == [1, 2, 4, 8]
    assert list(mian_chowla(6)) == [1, 2, 4, 8, 13, 21]
    assert list(mian_chowla(1)) == [1]
    with pytest.raises(NotPrimeError):
        erdos_turan_sidon(15)
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13, 17, 31])
def test_erdos_turan_is_sidon_and_sized(p):
    A = list(erdos_turan_sidon(p))
    assert len(A) == p and _brute_sidon(A)
    assert max(A) < 2 * p * p


def test_mian_chowla_matches_greedy_oracle():
    seq = [1]
    while len(seq) < 15:
        c = seq[-1] + 1
        while not _brute_sidon(seq + [c]):
            c += 1
        seq.append(c)
    assert list(mian_chowla(15)) == seq


def test_small_step_examples():
    A = mian_chowla(12)
    X, step = grow_small_phase(A)
    assert len(restricted_sumset(sorted(X))) >= 2 and step.sumset_before == 1
    assert step.phase == "small" and step.b == step.a1 + step.a2
    with pytest.raises(PreconditionError):
        grow_small_phase(A, list(A)[:7])


def test_small_step_chooses_min_overlap_smallest_b():
    A = erdos_turan_sidon(11)
    X = frozenset()
    for _ in range(2):
        X, step = grow_small_phase(A, X)
    S = subset_sums(sorted(X - {step.a1, step.a2}))
    rest = [a for a in A if a not in X - {step.a1, step.a2}]
    best = min((len(S & {s + a + b for s in S}), a + b) for i, a in enumerate(rest) for b in rest[i + 1:])
    assert (step.overlap, step.b) == best


def test_large_step_after_small_phase():
    A = erdos_turan_sidon(13)
    tr = sidon_cubic_lowerbound(A)
    first_large = tr.phase_steps("large")[0]
    assert first_large.sumset_after - first_large.sumset_before >= 2
    with pytest.raises(PreconditionError):
        grow_large_phase(A, list(A)[:10])


def test_degenerate_and_precondition_errors():
    with pytest.raises(PreconditionError):
        sidon_cubic_lowerbound([1, 2, 3, 4, 5, 6, 7, 8])
    with pytest.raises(PreconditionError):
        sidon_cubic_lowerbound(mian_chowla(5))
    with pytest.raises(PreconditionError):
        grow_small_phase([1, 2, 4], [3])
    with pytest.raises(DegenerateError):
        grow_large_phase(mian_chowla(7), [1, 2, 4])


def test_trace_examples():
    A = erdos_turan_sidon(11)
    tr = sidon_cubic_lowerbound(A)
    small = tr.phase_steps("small")
    assert len(small) <= 2 * math.log(comb(len(A) // 2, 2), 1.5)
    assert all(s.ratio >= 1.5 for s in small)
    tr = sidon_cubic_lowerbound(mian_chowla(8))
    x_small = 2 * len(tr.phase_steps("small"))
    assert len(tr.phase_steps("large")) >= (3 * 8 // 4 - x_small) // 2
    d = tr.to_dict()
    assert d["final_sumset"] == len(subset_sums(d["final_x"]))


def test_open_question_scan():
    # Erdos-Turan sets: p = 11 leaves the small phase on its size cap, 13 on the sumset cap
    assert sidon_cubic_lowerbound(erdos_turan_sidon(11)).small_exit == "size_cap"
    assert first_sumset_cap_exit(erdos_turan_sidon(p) for p in (11, 13, 17)) == 13
    assert first_sumset_cap_exit([]) is None


@settings(max_examples=15, deadline=None)
@given(st.integers(8, 24))
def test_pipeline_guarantees_on_mian_chowla(n):
    A = mian_chowla(n)
    tr = sidon_cubic_lowerbound(A)
    gain = math.ceil(comb(n // 4, 2) / 2)
    for s in tr.steps:
        if s.phase == "small":
            assert 2 * s.sumset_after >= 3 * s.sumset_before
        else:
            assert s.sumset_after - s.sumset_before >= gain
    assert tr.final_sumset >= final_size_floor(n)
    assert is_sidon(tr.final_x)
