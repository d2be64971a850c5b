import itertools
import random

import pytest

from permforge.patterns import (
    IndexOutOfRange,
    InvalidPattern,
    PatternSpec,
    avoids,
    bivincular,
    boxed,
    classic,
    classic_match_at,
    consecutive,
    contains,
    find_occurrences,
    mesh,
    to_mesh,
    vincular,
)
from permforge.perm import LengthMismatch, Permutation, order_isomorphic

from _corpus import BATTERY, STEP1_MESH, STEP1_MESH_ALT, perm, random_pattern


def literal_occurrences(target: Permutation, pattern: PatternSpec):
    """Index tuples meeting the variant's definition, by brute force over all subsets.

    Mesh cells use non-strict bounds on the values.
    """
    n, k = len(target), pattern.k
    pad = (0, *target.images, n + 1)
    base = pattern.base.images
    pinv = [0] * (k + 2)
    pinv[k + 1] = k + 1
    for i, v in enumerate(base, start=1):
        pinv[v] = i
    m = to_mesh(pattern) if pattern.kind in ("boxed", "consecutive") else pattern
    out = []
    for occ in itertools.combinations(range(1, n + 1), k):
        if not order_isomorphic([pad[i] for i in occ], base):
            continue
        ix = (0, *occ, n + 1)
        if any(ix[a + 1] != ix[a] + 1 for a in m.adjacencies):
            continue
        js = (0, *sorted(pad[i] for i in occ), n + 1)
        if any(js[b + 1] != js[b] + 1 for b in m.value_adjacencies):
            continue
        shaded_hit = any(
            pad[ix[pinv[y]]] <= pad[z] <= pad[ix[pinv[y + 1]]]
            for x, y in m.regions
            for z in range(ix[x] + 1, ix[x + 1])
        )
        if not shaded_hit:
            out.append(occ)
    return out


# -- worked examples ------------------------------------------------------------


def test_classic_match_at():
    t = perm("521634")
    assert classic_match_at(t, perm("123"), (3, 5, 6))
    assert not classic_match_at(t, perm("123"), (1, 2, 3))
    assert classic_match_at(perm("12"), perm("1"), (1,))


@pytest.mark.parametrize("occ", [(0, 2, 3), (3, 5, 7), (3, 3, 4)])
def test_classic_match_at_bad_indices(occ):
    with pytest.raises(IndexOutOfRange):
        classic_match_at(perm("521634"), perm("123"), occ)


def test_classic_match_at_length_mismatch():
    with pytest.raises(LengthMismatch):
        classic_match_at(perm("521634"), perm("123"), (1, 2))


@pytest.mark.parametrize(
    "target, pattern, witness",
    [
        ("521634", classic("123"), (3, 5, 6)),
        ("521634", vincular("132", {1}), (3, 4, 6)),
        ("521634", bivincular("312", {2}, {2}), (1, 5, 6)),
        ("521634", mesh("132", [(0, 0), (2, 1), (2, 2)]), (2, 4, 5)),
        ("236514", boxed("231"), (2, 4, 5)),
        ("152463", consecutive("312"), (2, 3, 4)),
    ],
)
def test_containment_examples(target, pattern, witness):
    t = perm(target)
    assert contains(t, pattern)
    assert not avoids(t, pattern)
    assert witness in find_occurrences(t, pattern)


def test_avoidance_examples():
    assert avoids(perm("12345"), classic("21"))
    assert avoids(perm("12345"), mesh("132", [(0, 0), (2, 0), (2, 1), (2, 2)]))
    shaded = mesh("132", [(0, 0), (2, 0), (2, 1), (2, 2)])
    t = perm("652413")
    # the only classic 132 is 243 at (3,4,6); the 1 at position 5 sits in cell (2,0)
    assert find_occurrences(t, classic("132")) == [(3, 4, 6)]
    assert avoids(t, shaded)
    assert not avoids(perm("521634"), classic("123"))


def test_find_occurrences_21_matches_brute_force():
    t = perm("521634")
    expected = [c for c in itertools.combinations(range(1, 7), 2) if t(c[0]) > t(c[1])]
    # 21-occurrences are exactly the inversions: 4 + 1 + 2
    assert len(expected) == 7
    occs = find_occurrences(t, classic("21"))
    assert occs == expected
    assert occs[0] == (1, 2)
    assert find_occurrences(perm("12345"), classic("21")) == []


def test_consecutive_unique_window():
    t = perm("152463")
    windows = [
        tuple(range(s, s + 3)) for s in range(1, 5)
        if order_isomorphic([t(i) for i in range(s, s + 3)], (3, 1, 2))
    ]
    assert windows == [(2, 3, 4)]
    assert find_occurrences(t, consecutive("312")) == [(2, 3, 4)]


def test_to_mesh_examples():
    assert to_mesh(classic("21")) == mesh("21", [])
    assert to_mesh(vincular("132", {1})).regions == {(1, 0), (1, 1), (1, 2), (1, 3)}
    assert to_mesh(boxed("231")).regions == {(1, 1), (1, 2), (2, 1), (2, 2)}
    assert to_mesh(consecutive("312")) == to_mesh(vincular("312", {1, 2}))
    m = mesh("132", [(0, 0)])
    assert to_mesh(m) is m
    biv = to_mesh(bivincular("312", {2}, {0}))
    assert biv.regions == {(2, y) for y in range(4)} | {(x, 0) for x in range(4)}


def test_pattern_validation():
    with pytest.raises(InvalidPattern):
        vincular("132", {4})
    with pytest.raises(InvalidPattern):
        mesh("12", [(3, 0)])
    with pytest.raises(InvalidPattern):
        PatternSpec("classic", perm("12"), adjacencies=frozenset({1}))
    with pytest.raises(InvalidPattern):
        PatternSpec("spiral", perm("12"))


def test_duplicates_collapse():
    assert mesh("213", [(0, 0), (0, 1), (1, 0), (1, 0)]) == STEP1_MESH
    assert vincular("132", [1, 1]) == vincular("132", [1])


def test_pattern_longer_than_target():
    assert not contains(perm("21"), classic("123"))
    assert avoids(perm("21"), classic("123"))
    assert find_occurrences(perm("1"), consecutive("12")) == []


# -- invariants -------------------------------------------------------------------


def test_literal_oracle_agrees_on_battery(perms_upto_6):
    """Direct matcher (strict mesh bounds) against the literal non-strict reading."""
    for t in perms_upto_6:
        for p in BATTERY:
            assert find_occurrences(t, p) == literal_occurrences(t, p), (t, p)


def test_battery_mesh_reduction_and_duality(perms_upto_6):
    for t in perms_upto_6:
        for p in BATTERY:
            c = contains(t, p)
            assert c == contains(t, to_mesh(p)), (t, p)
            assert c != avoids(t, p)


def test_mesh_reduction_random_pairs():
    rng = random.Random(7)
    kinds = ("classic", "vincular", "bivincular", "mesh", "boxed", "consecutive")
    checked = 0
    while checked < 1500:
        n = rng.randint(1, 7)
        values = list(range(1, n + 1))
        rng.shuffle(values)
        t = Permutation(tuple(values))
        p = random_pattern(rng, rng.choice(kinds))
        assert contains(t, p) == contains(t, to_mesh(p)), (t, p)
        assert contains(t, p) == bool(literal_occurrences(t, p)), (t, p)
        checked += 1


def test_specialization_chain(perms_upto_6):
    bases = [perm(s) for s in ("1", "12", "21", "132", "231", "312", "1324", "2413")]
    for base in bases:
        k = len(base)
        cl = classic(base)
        pairs = [
            (vincular(base, ()), cl),
            (bivincular(base, (), ()), cl),
            (consecutive(base), vincular(base, range(1, k))),
            (boxed(base), mesh(base, [(x, y) for x in range(1, k) for y in range(1, k)])),
        ]
        for t in perms_upto_6:
            for a, b in pairs:
                assert contains(t, a) == contains(t, b), (t, a, b)


def test_padded_anchors():
    # 0 in A pins the first occurrence index to position 1
    front = vincular("12", {0})
    assert contains(perm("132"), front)
    assert all(o[0] == 1 for o in find_occurrences(perm("1342"), front))
    assert not contains(perm("312"), front)
    # k in A pins the last occurrence index to position n
    back = vincular("12", {2})
    assert all(o[-1] == 4 for o in find_occurrences(perm("1342"), back))
    assert not contains(perm("231"), back)
    assert contains(perm("213"), back)


def test_singleton_pattern(perms_upto_6):
    assert all(contains(t, classic("1")) for t in perms_upto_6)


def test_occurrences_sorted_and_valid(perms_upto_6):
    for t in perms_upto_6[::7]:
        for p in BATTERY:
            occs = find_occurrences(t, p)
            assert occs == sorted(occs)
            for o in occs:
                assert classic_match_at(t, p.base, o)
