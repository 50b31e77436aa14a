from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ttw.errors import BuildError
from ttw.gallery import (b2_semilattice, boolean2x2_semilattice, c3_semilattice,
                         m3_semilattice, q3_quantale, zero_one_monoid)
from ttw.orderkit import (FinMonoid, FinPoset, Quantale, Semilattice,
                          directed_downsets, downsets, finitely_bounded_downsets,
                          ideal_quantale, is_distributive, is_frame,
                          is_frame_exhaustive, is_preframe, poset_isomorphism,
                          quantale_subunits)


def antichain_with_top():
    # a and b have no meet, so this is a poset but not a semilattice
    return FinPoset.from_pairs(["a", "b", "1"], [("a", "1"), ("b", "1")])


def test_poset_laws_rejected():
    with pytest.raises(BuildError):
        FinPoset(("x", "y"), ((True, True), (True, True)))  # not antisymmetric


def test_downsets_b2():
    dl = downsets(b2_semilattice())
    assert [sorted(s) for s in dl.sets] == [[], [0], [0, 1]]
    assert dl.poset.elements == ("{}", "{0}", "{0,1}")


def test_downsets_antichain_with_top():
    # subset enumeration: downward closed subsets of a < 1 > b
    base = antichain_with_top()
    dl = downsets(base)
    assert len(dl.sets) == 5
    brute = [frozenset(s)
             for size in range(4)
             for s in itertools.combinations(range(3), size)
             if base.is_downset(s)] + [frozenset(range(3))]
    assert set(dl.sets) == set(brute)


def test_downsets_of_two_chain_is_three_chain():
    # the two-element subunit chain of an unbounded-multiplication quantale
    # completes to the three-element chain of downsets
    two = Semilattice.from_poset(FinPoset.chain(["0", "oo"]))
    dl = downsets(two)
    assert poset_isomorphism(dl.poset, FinPoset.chain(["x", "y", "z"])) is not None


def test_directed_downsets_b2():
    dl = directed_downsets(b2_semilattice())
    assert [sorted(s) for s in dl.sets] == [[], [0], [0, 1]]


def test_directed_downsets_exclude_empty():
    dl = directed_downsets(b2_semilattice(), include_empty=False)
    assert [sorted(s) for s in dl.sets] == [[0], [0, 1]]


def test_directed_downsets_three_chain():
    dl = directed_downsets(c3_semilattice())
    assert len(dl.sets) == 4  # empty plus the three principal downsets


def test_directed_downsets_of_boolean2x2_drop_the_join_free_pair():
    dl = directed_downsets(boolean2x2_semilattice())
    assert len(dl.sets) == 5
    assert frozenset((0, 1, 2)) not in dl.sets  # {0, a, b} has no top


def test_finitely_bounded_is_everything_on_finite_posets():
    for lat in (b2_semilattice(), m3_semilattice(), antichain_with_top()):
        assert finitely_bounded_downsets(lat).sets == downsets(lat).sets
        # and every downset really is generated by its maximal elements
        dl = downsets(lat)
        base = dl.base
        for s in dl.sets:
            assert base.down_closure(base.maximal(s)) == s


def test_downsets_form_frame_and_embedding_preserves_meets():
    for lat in (b2_semilattice(), c3_semilattice(), boolean2x2_semilattice(),
                m3_semilattice()):
        dl = downsets(lat)
        assert is_frame(dl.poset)
        n = len(lat)
        for i in range(n):
            for j in range(n):
                meet_then_embed = dl.embedding[lat.meet(i, j)]
                embedded_meet = dl.poset.meet((dl.embedding[i], dl.embedding[j]))
                assert meet_then_embed == embedded_meet
        assert dl.sets[dl.embedding[lat.top]] == frozenset(range(n))
    assert is_frame(downsets(antichain_with_top()).poset)


def test_quantale_subunits_q3():
    lat = quantale_subunits(q3_quantale())
    assert lat.elements == ("0", "1")


def test_quantale_subunits_of_frame_is_whole_frame():
    q = Quantale.from_semilattice(boolean2x2_semilattice())
    lat = quantale_subunits(q)
    assert lat.elements == ("0", "a", "b", "1")
    assert poset_isomorphism(lat.poset, boolean2x2_semilattice().poset) is not None


def test_ideal_quantale_of_zero_one_monoid():
    q = ideal_quantale(zero_one_monoid())
    assert q.elements == ("{}", "{0}", "{0,1}")
    lat = quantale_subunits(q)
    # all three ideals are idempotent below the unit
    assert len(lat) == 3


def test_ideal_quantale_rejects_noncommutative():
    # two-element left-zero semigroup adjoined a unit is not commutative
    mult = ((0, 1, 2), (1, 1, 1), (2, 2, 2))
    monoid = FinMonoid(("1", "x", "y"), mult, 0)
    assert not monoid.is_commutative()
    with pytest.raises(BuildError):
        ideal_quantale(monoid)


def test_is_distributive():
    assert is_distributive(boolean2x2_semilattice())
    assert not is_distributive(m3_semilattice())
    assert is_distributive(c3_semilattice())


def test_is_frame():
    assert is_frame(boolean2x2_semilattice().poset)
    assert not is_frame(m3_semilattice().poset)
    assert is_frame(FinPoset.chain(["a", "b", "c", "d"]))
    assert not is_frame(antichain_with_top())  # no bottom


def test_is_preframe():
    # every bounded meet-semilattice is a preframe at finite scale
    assert is_preframe(c3_semilattice())
    assert is_preframe(m3_semilattice())
    # the antichain with top lacks binary meets, so it is no preframe
    assert not is_preframe(antichain_with_top())
    assert not is_preframe(antichain_with_top(), include_empty=False)


def test_finite_frame_iff_distributive_bounded_lattice():
    for lat in (b2_semilattice(), c3_semilattice(), boolean2x2_semilattice(),
                m3_semilattice()):
        poset = lat.poset
        expected = (poset.is_lattice() and is_distributive(lat))
        assert is_frame(poset) == expected
        # the two frame routes agree where the exhaustive one is feasible
        assert is_frame_exhaustive(poset) == is_frame(poset)


def test_quantale_law_rejection():
    poset = FinPoset.chain(["0", "eps", "1"])
    bad = ((0, 0, 0), (0, 1, 1), (0, 1, 2))  # eps.eps = eps but eps.1 = eps: fine
    # break associativity instead: eps.eps = 1
    worse = ((0, 0, 0), (0, 2, 1), (0, 1, 2))
    with pytest.raises(BuildError):
        Quantale(poset, worse, 2)
    Quantale(poset, bad, 2)  # lawful: a chain with idempotent eps


@st.composite
def small_posets(draw):
    n = draw(st.integers(min_value=1, max_value=5))
    elements = [f"e{i}" for i in range(n)]
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            if draw(st.booleans()):
                pairs.append((elements[i], elements[j]))
    return FinPoset.from_pairs(elements, pairs)


@settings(max_examples=60, deadline=None)
@given(small_posets())
def test_downsets_always_frame(poset):
    dl = downsets(poset)
    assert is_frame(dl.poset)
    # downsets are closed under union and intersection
    for a in dl.sets:
        for b in dl.sets:
            assert (a | b) in dl.sets
            assert (a & b) in dl.sets


@settings(max_examples=60, deadline=None)
@given(small_posets())
def test_directed_downsets_are_empty_or_principal(poset):
    dl = directed_downsets(poset)
    for s in dl.sets:
        if s:
            maxima = poset.maximal(s)
            assert len(maxima) == 1
            assert poset.down_closure(maxima) == s
        else:
            assert s == frozenset()
