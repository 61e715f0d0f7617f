import random
from itertools import product
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubeforge.errors import CapError, DomainError, NotFoundError, ShapeError
from cubeforge.gaps import (
    Gap,
    containing_ap,
    decompose_rank2,
    enumerate_gap,
    find_collision,
    parse_gap,
    read_gap_file,
)
from cubeforge.verify import check_gap, random_symmetric_proper_gap


def test_enumerate_examples():
    assert list(enumerate_gap(Gap(0, (3,), (0,), (4,)))) == [3, 6, 9, 12]
    Q = Gap(0, (1, 2), (0, 0), (2, 2))
    assert list(enumerate_gap(Q)) == [3, 4, 5, 6]
    assert Q.is_proper()
    Q = Gap(0, (1, 1), (0, 0), (2, 2))
    assert len(enumerate_gap(Q)) == 3 and Q.volume == 4
    assert not Q.is_proper()


def test_gap_validation_and_cap():
    with pytest.raises(DomainError):
        Gap(0, (0,), (0,), (1,))
    with pytest.raises(DomainError):
        Gap(0, (1,), (2,), (2,))
    with pytest.raises(ShapeError):
        Gap(0, (1, 2), (0,), (1,))
    with pytest.raises(CapError):
        enumerate_gap(Gap(0, (1, 1000), (0, 0), (1000, 1000)), cap=10**5)


def test_parse_gap(tmp_path):
    Q = parse_gap("7; 2,-3; -1..1, 0..4")
    assert Q == Gap(7, (2, -3), (-1, 0), (1, 4))
    assert parse_gap(Q.to_text()) == Q
    p = tmp_path / "q.txt"
    p.write_text("# a comment\n" + Q.to_text() + "\n")
    assert read_gap_file(p) == Q
    with pytest.raises(DomainError):
        parse_gap("1; 2")


def test_decompose_example():
    dec = decompose_rank2(Gap.symmetric((5, 1), (1, 1)))
    parts = [list(p) for p in dec.parts]
    assert parts == [[6], [4], [-4], [-6], [-5, 0, 5], [-1, 1]]


def test_decompose_requires_shape():
    with pytest.raises(ShapeError):
        decompose_rank2(Gap(0, (1, 7), (0, 0), (2, 2)))
    with pytest.raises(ShapeError):
        decompose_rank2(Gap.symmetric((1, 1), (1, 1)))
    with pytest.raises(ShapeError):
        decompose_rank2(Gap.symmetric((1,), (3,)))


def test_collision_examples():
    w = find_collision(2, 3, 4, 3)
    assert (w.x, w.y) == ((1, 3), (4, 1))
    assert w.value() == 11
    w = find_collision(1, 1, 2, 2)
    assert (w.x, w.y) == ((1, 2), (2, 1))
    with pytest.raises(NotFoundError):
        find_collision(2, 5, 2, 2)


def test_containing_ap_examples():
    R = containing_ap(Gap.symmetric((2, 3), (2, 2)))
    assert (R.start, R.difference, R.length) == (-10, 1, 21)
    R = containing_ap(Gap.symmetric((2, 4), (1, 1)))
    assert (R.start, R.difference, R.length) == (-6, 2, 7)
    Q = Gap.symmetric((6, 10), (2, 1))
    R = containing_ap(Q)
    assert (R.difference, R.length) == (2, 23)
    assert all(x in set(R.terms()) for x in enumerate_gap(Q.closed_box()))


def test_collision_bruteforce_minimality():
    for d1, d2, m, n in [(2, 3, 4, 3), (3, 5, 6, 4), (-4, 6, 5, 5), (7, -3, 4, 8)]:
        pts = sorted(product(range(1, m + 1), range(1, n + 1)))
        cands = [(x, y) for x in pts for y in pts
                 if x < y and x[0] * d1 + x[1] * d2 == y[0] * d1 + y[1] * d2]
        try:
            w = find_collision(d1, d2, m, n)
        except NotFoundError:
            assert not cands
            continue
        assert (w.x, w.y) == min(cands)
        assert w.x[0] * d1 + w.x[1] * d2 == w.y[0] * d1 + w.y[1] * d2


@settings(max_examples=60, deadline=None)
@given(st.integers(-30, 30), st.lists(st.integers(-20, 20).filter(bool), min_size=1, max_size=3),
       st.data())
def test_enumerate_size_and_translation(a, ds, data):
    lower = [data.draw(st.integers(-3, 2)) for _ in ds]
    upper = [lo + data.draw(st.integers(1, 4)) for lo in lower]
    Q = Gap(a, tuple(ds), tuple(lower), tuple(upper))
    S = enumerate_gap(Q)
    assert len(S) <= Q.volume
    brute = {a + sum(k * d for k, d in zip(ks, ds))
             for ks in product(*(range(lo + 1, hi + 1) for lo, hi in zip(lower, upper)))}
    assert set(S) == brute
    Q2 = Gap(a + 17, Q.differences, Q.lower, Q.upper)
    assert Q2.is_proper() == Q.is_proper()


def test_random_gap_suite_sample():
    rng = random.Random(11)
    for _ in range(100):
        Q = random_symmetric_proper_gap(rng, 6, 50)
        assert check_gap(Q, 3)
        dec = decompose_rank2(Q)
        sizes = [len(p) for p in dec.parts]
        assert sizes[0] == sizes[3] and sizes[1] == sizes[2]
        g = gcd(*Q.differences)
        assert all(x % g == 0 for x in enumerate_gap(Q.closed_box()))
