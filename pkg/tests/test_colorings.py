from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubeforge.colorings import (
    Coloring,
    estimate_mono_cube_probability,
    find_ap_free_coloring,
    find_mono_ap,
    find_mono_cube,
    parse_coloring,
    product_coloring,
    random_coloring,
)
from cubeforge.errors import DomainError, SearchTimeout, ShapeError

from oracles import has_mono_ap, has_mono_cube

colorings = st.integers(1, 12).flatmap(
    lambda n: st.tuples(st.just(2), st.lists(st.integers(0, 1), min_size=n, max_size=n)))


def test_coloring_basics():
    c = Coloring(3, (0, 2, 1))
    assert c(1) == 0 and c(2) == 2 and c.n == 3
    assert str(c) == "021"
    assert c.class_masks() == [0b10, 0b1000, 0b100]
    with pytest.raises(DomainError):
        Coloring(2, (0, 2))
    assert parse_coloring("0110\n") == Coloring(2, (0, 1, 1, 0))
    with pytest.raises(DomainError):
        parse_coloring("01a")


def test_product_examples():
    z = Coloring(1, (0, 0, 0))
    pc = product_coloring(z, z)
    assert pc.r == 1 and pc.colors == (0, 0, 0)
    pc = product_coloring(Coloring(2, (0, 1)), Coloring(2, (1, 0)))
    assert pc.colors == (1, 2)
    with pytest.raises(ShapeError):
        product_coloring(Coloring(2, (0,)), Coloring(2, (0, 1)))


def test_ap_free_examples():
    c = find_ap_free_coloring(8, 3, 2)
    assert str(c) == "00110011"
    classes = [{i for i in range(1, 9) if c(i) == col} for col in (0, 1)]
    assert {frozenset(x) for x in classes} == {frozenset({1, 2, 5, 6}), frozenset({3, 4, 7, 8})}
    assert find_mono_ap(c, 3) is None
    assert find_ap_free_coloring(9, 3, 2) is None
    assert find_ap_free_coloring(1, 2, 2).n == 1


def test_ap_free_budget_is_timeout_not_notfound():
    with pytest.raises(SearchTimeout) as info:
        find_ap_free_coloring(30, 4, 2, budget=50)
    assert info.value.nodes > 50
    assert isinstance(info.value, TimeoutError)


def test_mono_ap_examples():
    w = find_mono_ap(Coloring(2, (0,) * 5), 3)
    assert (w.start, w.difference, w.length) == (1, 1, 3)
    w = find_mono_ap(Coloring(2, (0, 1) * 4 + (0,)), 3)
    assert w.difference == 2 and w.start == 1


def test_mono_cube_examples():
    w = find_mono_cube(Coloring(2, (0, 0, 0, 0)), 2)
    assert w.x0 == 1 and list(w.A) == [1, 2] and list(w.realized) == [1, 2, 3, 4]
    assert w.to_dict() == {"x0": 1, "A": [1, 2], "realized": [1, 2, 3, 4], "color": 0}
    assert find_mono_cube(Coloring(2, (0, 0, 1, 1)), 2) is None
    assert find_mono_cube(Coloring(3, (0, 1, 2)), 1) is None
    w = find_mono_cube(Coloring(3, (0, 1, 2, 1)), 1)
    assert (w.x0, list(w.A)) == (2, [2])


def test_mono_cube_sumset_cap():
    c = Coloring(2, (0,) * 12)
    w = find_mono_cube(c, 2, sumset_cap=3)
    # distinct positive a < b always give 4 distinct cube points
    assert w is None
    assert find_mono_cube(c, 2, sumset_cap=4) is not None


def test_random_coloring_determinism_and_balance():
    assert random_coloring(50, 3, 7) == random_coloring(50, 3, 7)
    assert random_coloring(50, 3, 7) != random_coloring(50, 3, 8)
    c = random_coloring(100_000, 2, 12345)
    assert abs(sum(c.colors) / c.n - 0.5) <= 0.01
    assert random_coloring(1, 2, 99).colors[0] in (0, 1)
    # prefixes are stable
    assert random_coloring(10, 2, 5).colors == random_coloring(20, 2, 5).colors[:10]


def test_probability_examples():
    est = estimate_mono_cube_probability(4, 2, exact=True)
    assert est.estimate == 0.125 and est.hits == 2 and est.stderr == 0
    est = estimate_mono_cube_probability(5, 3, trials=50, seed=1)
    assert est.hits == 0 and est.estimate == 0
    a = estimate_mono_cube_probability(7, 2, trials=300, seed=42)
    b = estimate_mono_cube_probability(7, 2, trials=300, seed=42)
    assert a == b


@settings(max_examples=150, deadline=None)
@given(colorings, st.integers(1, 4))
def test_mono_ap_agrees_with_oracle(rc, k):
    c = Coloring(*rc)
    w = find_mono_ap(c, k)
    assert (w is not None) == has_mono_ap(c.colors, k)
    if w is not None:
        assert c.is_monochromatic(w.terms()) and w.terms()[-1] <= c.n


@settings(max_examples=120, deadline=None)
@given(colorings, st.integers(1, 3))
def test_mono_cube_agrees_with_oracle(rc, k):
    c = Coloring(*rc)
    w = find_mono_cube(c, k)
    assert (w is not None) == has_mono_cube(c.colors, k)
    if w is not None:
        assert len(w.A) == k and min(w.A) > 0
        assert c.is_monochromatic(w.realized) and max(w.realized) <= c.n


def test_product_law_exhaustive_small():
    n = 3
    subsets = [s for mask in range(1, 1 << n) for s in [[i + 1 for i in range(n) if mask >> i & 1]]]
    for c1 in product((0, 1), repeat=n):
        for c2 in product((0, 1, 2), repeat=n):
            a, b = Coloring(2, c1), Coloring(3, c2)
            pc = product_coloring(a, b)
            for s in subsets:
                assert pc.is_monochromatic(s) == (a.is_monochromatic(s) and b.is_monochromatic(s))
