from __future__ import annotations

import itertools
import random
from collections import Counter
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quivarity.cycles import (
    Cycle,
    coregular_alpha_one,
    count_primitive_cycles,
    iss_dimension_alpha_one,
    least_rotation,
    primitive_cycles,
    quasi_primitive_cycles,
)
from quivarity.quiver import DimensionVector, Quiver, QuiverError, QuiverSetting, chi_setting, is_strongly_connected
from quivarity.reduction import classify

B = QuiverSetting.build


def necklaces(colors: int, n: int) -> int:
    """Burnside count of necklaces of length ``n`` over ``colors`` beads."""
    phi = lambda d: sum(1 for k in range(1, d + 1) if gcd(k, d) == 1)  # noqa: E731
    return sum(phi(d) * colors ** (n // d) for d in range(1, n + 1) if n % d == 0) // n


def brute_force_cycles(s: QuiverSetting, max_len: int) -> set[tuple[int, ...]]:
    """Every closed arrow word up to rotation, filtered by the revisit rule."""
    arrows = s.quiver.arrows
    found = set()
    for p in range(1, max_len + 1):
        for word in itertools.product(range(len(arrows)), repeat=p):
            if any(arrows[word[i]][0] != arrows[word[(i + 1) % p]][1] for i in range(p)):
                continue
            seen = Counter(arrows[a][0] for a in word)
            if any(c > 1 and s.alpha[v] < 2 for v, c in seen.items()):
                continue
            if any(s.alpha[v] == 0 for v in seen):
                continue
            found.add(least_rotation(word))
    return found


def cycle3() -> QuiverSetting:
    return B({"a": 1, "b": 1, "c": 1}, [("a", "b"), ("b", "c"), ("c", "a")])


def double_two_cycle() -> QuiverSetting:
    return B({"a": 1, "b": 1}, [("a", "b")] * 2 + [("b", "a")] * 2)


@st.composite
def small_settings(draw, max_dim=2):
    n = draw(st.integers(1, 3))
    verts = "abc"[:n]
    arrows = draw(st.lists(st.tuples(st.sampled_from(verts), st.sampled_from(verts)), max_size=5))
    dims = draw(st.lists(st.integers(0, max_dim), min_size=n, max_size=n))
    return QuiverSetting(Quiver(tuple(verts), tuple(arrows)), DimensionVector(zip(verts, dims)))


@st.composite
def unit_settings(draw):
    n = draw(st.integers(1, 4))
    verts = "abcd"[:n]
    arrows = draw(st.lists(st.tuples(st.sampled_from(verts), st.sampled_from(verts)), max_size=8))
    return QuiverSetting(Quiver(tuple(verts), tuple(arrows)), DimensionVector.unit(verts))


# --- canonical rotation ---------------------------------------------------


def test_cycle_holds_least_rotation():
    assert Cycle((3, 1, 2)).arrows == (1, 2, 3)
    assert Cycle((2, 1, 2, 1)) == Cycle((1, 2, 1, 2))


@given(st.lists(st.integers(0, 5), min_size=1, max_size=8), st.integers(0, 20))
def test_rotation_invariance(word, shift):
    k = shift % len(word)
    assert Cycle(tuple(word[k:] + word[:k])) == Cycle(tuple(word))


def test_from_arrows_checks_closure():
    q = B({"a": 1, "b": 1}, [("a", "b"), ("b", "a")]).quiver
    assert len(Cycle.from_arrows(q, [0, 1])) == 2
    with pytest.raises(QuiverError):
        Cycle.from_arrows(q, [0, 0])


def test_empty_cycle_rejected():
    with pytest.raises(QuiverError):
        Cycle(())


# --- primitive cycles -----------------------------------------------------


def test_primitive_three_cycle():
    assert len(primitive_cycles(cycle3().quiver)) == 1


def test_primitive_double_two_cycle():
    assert len(primitive_cycles(double_two_cycle().quiver)) == 4


def test_primitive_three_loops():
    assert len(primitive_cycles(Quiver(("v",), (("v", "v"),) * 3))) == 3


@settings(max_examples=200, deadline=None)
@given(unit_settings())
def test_primitive_counts_agree(s):
    cycles = primitive_cycles(s.quiver)
    assert len(cycles) == len(set(cycles))
    assert count_primitive_cycles(s.quiver) == len(cycles)
    for c in cycles:
        vs = c.vertices(s.quiver)
        assert len(vs) == len(set(vs))


@settings(max_examples=100, deadline=None)
@given(unit_settings())
def test_quasi_primitive_on_unit_is_primitive(s):
    n = len(s.vertices)
    assert set(quasi_primitive_cycles(s, max(n, n * n))) == set(primitive_cycles(s.quiver))


# --- quasi-primitive cycles -----------------------------------------------


def test_two_loops_dim_two_necklaces():
    s = B({"v": 2}, [("v", "v")] * 2)
    assert len(quasi_primitive_cycles(s, 5)) == 23 == sum(necklaces(2, n) for n in range(1, 6))
    # default bound |alpha|^2 = 4
    assert len(quasi_primitive_cycles(s)) == sum(necklaces(2, n) for n in range(1, 5))


def test_three_cycle_unit_long_bound():
    assert len(quasi_primitive_cycles(cycle3(), 9)) == 1


def test_max_len_zero_rejected():
    with pytest.raises(QuiverError):
        quasi_primitive_cycles(cycle3(), 0)


@pytest.mark.parametrize("loops,max_len", [(1, 6), (2, 6), (3, 4)])
def test_single_vertex_matches_burnside(loops, max_len):
    s = B({"v": 3}, [("v", "v")] * loops)
    assert len(quasi_primitive_cycles(s, max_len)) == sum(necklaces(loops, n) for n in range(1, max_len + 1))


@settings(max_examples=150, deadline=None)
@given(small_settings(), st.integers(1, 4))
def test_quasi_primitive_matches_brute_force(s, max_len):
    got = [c.arrows for c in quasi_primitive_cycles(s, max_len)]
    assert len(got) == len(set(got))
    assert set(got) == brute_force_cycles(s, max_len)


# --- the dimension-one lemma ----------------------------------------------


def test_alpha_one_examples():
    assert coregular_alpha_one(cycle3())
    assert not coregular_alpha_one(double_two_cycle())
    assert coregular_alpha_one(B({"v": 1}, [("v", "v")] * 2))
    assert coregular_alpha_one(B({"v": 1}))


def test_alpha_one_preconditions():
    with pytest.raises(QuiverError):
        coregular_alpha_one(B({"v": 2}))
    with pytest.raises(QuiverError):
        coregular_alpha_one(B({"a": 1, "b": 1}, [("a", "b")]))


@settings(max_examples=300, deadline=None)
@given(unit_settings())
def test_alpha_one_agrees_with_classify(s):
    if is_strongly_connected(s.quiver):
        assert coregular_alpha_one(s) == classify(s).coregular


@settings(max_examples=200, deadline=None)
@given(unit_settings())
def test_alpha_one_dimension_formula(s):
    loopless = not any(a == b for a, b in s.arrows)
    if loopless and is_strongly_connected(s.quiver):
        assert iss_dimension_alpha_one(s.quiver) == 1 - chi_setting(s, s.alpha, s.alpha)


def test_random_rotations_of_enumerated_cycles():
    rng = random.Random(3)
    s = B({"a": 2, "b": 1}, [("a", "a"), ("a", "b"), ("b", "a"), ("a", "a")])
    for c in quasi_primitive_cycles(s, 6):
        k = rng.randrange(len(c))
        assert Cycle(c.arrows[k:] + c.arrows[:k]) == c
