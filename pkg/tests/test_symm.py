from __future__ import annotations

import pytest

from quivarity.quiver import QuiverError, QuiverSetting
from quivarity.reduction import classify
from quivarity.sweep import SweepSpec, enumerate_settings
from quivarity.symm import classify_symmetric, connected_sum_decompose, prime_type


def sym(dims: dict[str, int], pairs: list[tuple[str, str, int]]) -> QuiverSetting:
    arrows = []
    for a, b, k in pairs:
        arrows += [(a, b)] * k + [(b, a)] * k
    return QuiverSetting.build(dims, arrows)


def test_type_three_single_block():
    s = sym({"a": 1, "b": 3, "c": 2}, [("a", "b", 1), ("b", "c", 1)])
    dec = connected_sum_decompose(s)
    assert dec.components == (s,) and dec.junction_vertices == ()
    assert prime_type(s) == "III"


def test_split_at_dimension_one():
    s = sym({"a": 2, "v": 1, "b": 3}, [("a", "v", 1), ("v", "b", 1)])
    dec = connected_sum_decompose(s)
    assert dec.junction_vertices == ("v",)
    assert [c.vertices for c in dec.components] == [("a", "v"), ("b", "v")]
    assert dec.reassemble() == s


def test_no_split_at_dimension_two():
    s = sym({"a": 3, "v": 2, "b": 3}, [("a", "v", 1), ("v", "b", 1)])
    dec = connected_sum_decompose(s)
    assert dec.components == (s,)
    assert prime_type(s) == "IV"


def test_prime_types():
    assert classify_symmetric(sym({"a": 1, "b": 5}, [("a", "b", 3)]))
    assert not classify_symmetric(sym({"a": 1, "b": 3}, [("a", "b", 4)]))
    assert classify_symmetric(sym({"a": 3, "b": 2, "c": 4}, [("a", "b", 1), ("b", "c", 1)]))
    assert prime_type(sym({"a": 4, "b": 3}, [("a", "b", 1)])) == "I"


def test_preconditions():
    with pytest.raises(QuiverError):
        classify_symmetric(QuiverSetting.build({"a": 1, "b": 1}, [("a", "b")]))
    with pytest.raises(QuiverError):
        classify_symmetric(QuiverSetting.build({"a": 2}, [("a", "a")]))
    with pytest.raises(QuiverError):
        classify_symmetric(QuiverSetting.build({"a": 1, "b": 1}))


def test_agreement_on_small_sweep():
    spec = SweepSpec(max_vertices=3, max_dim=3, max_arrows=2, loops=False, symmetric=True)
    n = 0
    for s in enumerate_settings(spec):
        n += 1
        dec = connected_sum_decompose(s)
        assert dec.reassemble() == s
        assert classify_symmetric(s) == classify(s).coregular, str(s)
    assert n > 100
