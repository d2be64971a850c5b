import math

import pytest

from permforge import PropertyKind, check_property, inverse, proper_intervals
from permforge.properties import Interval

from _corpus import perm

P = PropertyKind


@pytest.mark.parametrize(
    "target, kind, expected",
    [
        ("246135", P.SIMPLE, True),
        ("1632547", P.SIMPLE, False),
        ("521634", P.SIMPLE, False),
        ("213654", P.PLUS_DECOMPOSABLE, True),
        ("546123", P.MINUS_DECOMPOSABLE, True),
        ("4253716", P.BLOCKWISE_SIMPLE, True),
        ("24513", P.BLOCKWISE_SIMPLE, False),
        ("4312", P.DERANGEMENT, True),
        ("2431", P.NONDERANGEMENT, True),
        ("1243", P.INVOLUTION, True),
        ("2431", P.INVOLUTION, False),
        ("3412", P.PARITY, True),
        ("2413", P.PARITY, False),
    ],
)
def test_property_examples(target, kind, expected):
    assert check_property(perm(target), kind) is expected


def test_property_accepts_names():
    assert check_property(perm("1243"), "involution")
    with pytest.raises(ValueError):
        check_property(perm("1"), "prime")


def test_proper_intervals_examples():
    found = proper_intervals(perm("1632547"))
    assert set(found) == {(3, 4), (5, 6), (3, 6), (2, 6), (2, 7), (1, 6)}
    assert found == sorted(found)
    assert all(isinstance(i, Interval) for i in found)
    assert proper_intervals(perm("246135")) == []
    assert proper_intervals(perm("12")) == []
    # the two blocks of 3142[1,21,1,12]
    assert {(2, 3), (5, 6)} <= set(proper_intervals(perm("521634")))


def test_singleton_values():
    one = perm("1")
    expected = {
        P.SIMPLE: True,
        P.BLOCKWISE_SIMPLE: True,
        P.DERANGEMENT: False,
        P.NONDERANGEMENT: True,
        P.INVOLUTION: True,
        P.PARITY: True,
        P.PLUS_DECOMPOSABLE: False,
        P.MINUS_DECOMPOSABLE: False,
    }
    assert {k: check_property(one, k) for k in P} == expected


def _literal_decomposable(values, sign):
    n = len(values)
    for sep in range(1, n):
        head, tail = values[:sep], values[sep:]
        if sign > 0 and max(head) < min(tail):
            return True
        if sign < 0 and min(head) > max(tail):
            return True
    return False


def _literal_intervals(values):
    n = len(values)
    return sorted(
        (a + 1, b)
        for a in range(n)
        for b in range(a + 2, n + 1)
        if b - a < n and max(values[a:b]) - min(values[a:b]) + 1 == b - a
    )


def test_against_literal_definitions(perms_by_length):
    for n in range(1, 8):
        for p in perms_by_length[n]:
            v = p.images
            assert check_property(p, P.PLUS_DECOMPOSABLE) == _literal_decomposable(v, 1)
            assert check_property(p, P.MINUS_DECOMPOSABLE) == _literal_decomposable(v, -1)
            assert [tuple(i) for i in proper_intervals(p)] == _literal_intervals(v)
            assert check_property(p, P.INVOLUTION) == (inverse(p) == p)


def test_invariants(perms_by_length):
    for n, ps in perms_by_length.items():
        for p in ps:
            got = {k: check_property(p, k) for k in P}
            assert got[P.DERANGEMENT] != got[P.NONDERANGEMENT]
            if n >= 2:
                assert not (got[P.PLUS_DECOMPOSABLE] and got[P.MINUS_DECOMPOSABLE])
            if n >= 3 and (got[P.PLUS_DECOMPOSABLE] or got[P.MINUS_DECOMPOSABLE]):
                assert not got[P.SIMPLE]
            if 4 <= n and got[P.SIMPLE]:
                assert got[P.BLOCKWISE_SIMPLE], p


def _count(ps, kind):
    return sum(check_property(p, kind) for p in ps)


def test_counts(perms_by_length):
    assert _count(perms_by_length[4], P.DERANGEMENT) == 9
    assert [_count(perms_by_length[n], P.INVOLUTION) for n in range(1, 6)] == [1, 2, 4, 10, 26]
    assert [_count(perms_by_length[n], P.SIMPLE) for n in (3, 4)] == [0, 2]
    for n, ps in perms_by_length.items():
        assert _count(ps, P.PARITY) == math.factorial((n + 1) // 2) * math.factorial(n // 2)
