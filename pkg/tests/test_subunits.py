from __future__ import annotations

import pytest

from conftest import build_cached, obj_by_label, subunit_by_domain
from ttw import gallery
from ttw.errors import BuildError
from ttw.fincat import (FinCategory, MonoidalCategory, MonoidalData, Morphism,
                        all_cocones, is_iso, is_pushout, subobjects)
from ttw.orderkit import poset_isomorphism, quantale_subunits
from ttw.subunits import (_tensor_right, check_characterisation,
                          d_diagram, down_closure, enumerate_subunits,
                          family_is_directed, has_universal_directed_joins,
                          has_universal_finite_joins, idempotent_families,
                          is_firm, is_locale_based, is_stiff, retract_pairs,
                          subunit_leq, subunit_leq_factoring,
                          subunit_leq_invertibility, subunit_semilattice)


# ---------------------------------------------------------------------------
# enumeration


def test_semilattice_subunits_are_all_elements(gallery_category):
    name, mc = gallery_category
    subs = enumerate_subunits(mc)
    expected = gallery.GALLERY[name].expected_subunits
    assert tuple(mc.obj_label(s.domain) for s in subs) == expected


def test_q3_subunits(q3):
    subs = enumerate_subunits(q3)
    assert [q3.obj_label(s.domain) for s in subs] == ["0", "1"]


def test_one_object_group_has_single_subunit(z2):
    subs = enumerate_subunits(z2)
    assert len(subs) == 1
    # ... even though there are two monomorphisms into the unit
    assert len(subs[0].cls.members) == 2
    # and the category has no terminal object
    from ttw.fincat import terminal_object
    assert terminal_object(z2) is None


def test_subunits_determined_by_domain(gallery_category):
    name, mc = gallery_category
    subs = enumerate_subunits(mc)
    classes = {s.cls.representative: s for s in subs}
    for s in subs:
        for member in s.cls.members:
            assert mc.dom(member) in [mc.dom(m) for m in s.cls.members]
    # any two subunit monos with the same domain lie in one class
    monos = [m for cls in subobjects(mc, mc.unit) for m in cls.members]
    for s in subs:
        for t in subs:
            if s is not t:
                assert mc.dom(s.rep) != mc.dom(t.rep) or s.rep == t.rep


def test_split_epic_mode_matches_on_gallery(gallery_category):
    name, mc = gallery_category
    invertible = enumerate_subunits(mc)
    split = enumerate_subunits(mc, mode="split_epic")
    assert [s.rep for s in invertible] == [s.rep for s in split]


# ---------------------------------------------------------------------------
# order


def test_everything_below_identity_subunit(gallery_category):
    name, mc = gallery_category
    subs = enumerate_subunits(mc)
    top = next(s for s in subs if mc.identity(mc.unit) in s.cls.members)
    for s in subs:
        assert subunit_leq(mc, s, top)


def test_c3_subunit_order(c3):
    subs = enumerate_subunits(c3)
    m = subunit_by_domain(c3, subs, "m")
    one = subunit_by_domain(c3, subs, "1")
    assert subunit_leq(c3, m, one)
    assert not subunit_leq(c3, one, m)


def test_order_routes_agree_everywhere(gallery_category):
    name, mc = gallery_category
    subs = enumerate_subunits(mc)
    for s in subs:
        for t in subs:
            assert subunit_leq_factoring(mc, s, t) == \
                subunit_leq_invertibility(mc, s, t)
            subunit_leq(mc, s, t)  # raises on disagreement


# ---------------------------------------------------------------------------
# semilattice of subunits


def test_semilattice_of_semilattice_category_is_input(boolean2x2):
    lat = subunit_semilattice(boolean2x2)
    assert lat.lattice.elements == ("0", "a", "b", "1")
    from ttw.gallery import boolean2x2_semilattice
    assert poset_isomorphism(lat.lattice.poset,
                             boolean2x2_semilattice().poset) is not None


def test_q3_subunit_semilattice_is_two_chain(q3):
    lat = subunit_semilattice(q3)
    assert lat.lattice.elements == ("0", "1")
    assert lat.meet(0, 1) == 0 and lat.meet(1, 1) == 1


def test_meet_is_quantale_product_of_idempotents():
    for name in ("q3", "ideal2", "boolean2x2"):
        mc = build_cached(name)
        entry = gallery.GALLERY[name]
        q = entry.quantale()
        lat = subunit_semilattice(mc)
        q_subs = quantale_subunits(q)
        for i in range(len(lat)):
            for j in range(len(lat)):
                meet_dom = mc.obj_label(lat.subunits[lat.meet(i, j)].domain)
                a = q.elements.index(mc.obj_label(lat.subunits[i].domain))
                b = q.elements.index(mc.obj_label(lat.subunits[j].domain))
                assert q.elements[q.mult[a][b]] == meet_dom


def test_subunit_semilattice_laws_hold(gallery_category):
    name, mc = gallery_category
    lat = subunit_semilattice(mc)  # the constructor verifies all laws
    n = len(lat)
    for i in range(n):
        assert lat.meet(i, lat.top) == i
        for j in range(n):
            assert lat.meet(i, j) == lat.meet(j, i)
            assert (lat.meet(i, j) == i) == lat.leq[i][j]
            for k in range(n):
                assert lat.meet(lat.meet(i, j), k) == lat.meet(i, lat.meet(j, k))


# ---------------------------------------------------------------------------
# firmness, including a constructed failure


def test_gallery_is_firm(gallery_category):
    name, mc = gallery_category
    assert is_firm(mc).holds


def non_firm_tables() -> MonoidalCategory:
    """Deliberately unlawful tables where two subunits s, t have a
    non-monic s (x) T; only the checks is_firm needs are meaningful."""
    objects = ("I", "S", "T", "P")
    labels = ["id_I", "id_S", "id_T", "id_P", "s", "t", "p", "q", "r", "e"]
    doms = [0, 1, 2, 3, 1, 2, 3, 3, 3, 3]
    cods = [0, 1, 2, 3, 0, 0, 1, 2, 0, 3]
    morphisms = tuple(Morphism(k, doms[k], cods[k], labels[k])
                      for k in range(10))
    identity = (0, 1, 2, 3)
    compose = {}
    for f in morphisms:
        for g in morphisms:
            if g.dom != f.cod:
                continue
            if f.mid == identity[f.dom]:
                compose[(g.mid, f.mid)] = g.mid
            elif g.mid == identity[g.dom]:
                compose[(g.mid, f.mid)] = f.mid
            else:
                pair = (labels[g.mid], labels[f.mid])
                table = {("s", "p"): "r", ("t", "q"): "r", ("p", "e"): "p",
                         ("q", "e"): "q", ("r", "e"): "r", ("e", "e"): "e"}
                compose[(g.mid, f.mid)] = labels.index(table[pair])
    t_obj = ((0, 1, 2, 3), (1, 1, 3, 3), (2, 3, 2, 3), (3, 3, 3, 3))
    hom_first = {}
    for m in morphisms:
        hom_first.setdefault((m.dom, m.cod), m.mid)
    t_mor = {}
    for f in morphisms:
        for g in morphisms:
            key = (t_obj[f.dom][g.dom], t_obj[f.cod][g.cod])
            t_mor[(f.mid, g.mid)] = hom_first[key]
    # pin the entries the subunit machinery consults
    t_mor[(4, 1)] = 1   # s (x) S invertible
    t_mor[(5, 2)] = 2   # t (x) T invertible
    t_mor[(4, 2)] = 7   # s (x) T = q, the non-monic side
    t_mor[(5, 1)] = 6   # t (x) S = p
    t_mor[(4, 0)] = 4
    t_mor[(5, 0)] = 5
    braiding = tuple(tuple(identity[t_obj[b][a]] for b in range(4))
                     for a in range(4))
    cat = FinCategory(objects, morphisms, identity, compose)
    return MonoidalCategory(cat, MonoidalData(0, t_obj, t_mor, braiding))


def test_constructed_non_firm_category_reports_witness():
    mc = non_firm_tables()
    subs = enumerate_subunits(mc)
    assert sorted(mc.obj_label(s.domain) for s in subs) == ["I", "S", "T"]
    report = is_firm(mc)
    assert not report.holds
    s_rep, t_rep, culprit = report.witness
    assert mc.mor_label(culprit) == "q"
    # the witness is replayable: q really is not monic
    from ttw.fincat import is_mono
    assert not is_mono(mc, culprit)
    # and the semilattice construction refuses the category
    with pytest.raises(BuildError):
        subunit_semilattice(mc)


# ---------------------------------------------------------------------------
# the join hierarchy


def test_gallery_is_stiff(gallery_category):
    name, mc = gallery_category
    assert is_stiff(mc).holds


def test_boolean2x2_has_universal_finite_joins(boolean2x2):
    assert has_universal_finite_joins(boolean2x2).holds


def test_m3_universal_finite_joins_fail_with_replayable_witness(m3):
    report = has_universal_finite_joins(m3)
    assert not report.holds
    assert report.details["stage"] == "square"
    s_rep, t_rep, x, left, top, bottom_leg, right_leg = report.witness
    assert not is_pushout(m3, left, top, bottom_leg, right_leg)


def test_quantale_categories_locale_based():
    for name in ("b2", "c3", "q3", "boolean2x2", "ideal2"):
        assert is_locale_based(build_cached(name)).holds


def test_directed_joins():
    assert has_universal_directed_joins(build_cached("c3")).holds
    assert has_universal_directed_joins(build_cached("m3")).holds
    assert not has_universal_directed_joins(build_cached("z2")).holds
    # without the empty family, the one-object group needs no initial object
    assert has_universal_directed_joins(build_cached("z2"),
                                        include_empty=False).holds


def test_m3_not_locale_based(m3):
    report = is_locale_based(m3)
    assert not report.holds
    assert report.details["finite"] is False
    assert report.details["directed"] is True


def test_hierarchy_is_monotone(gallery_category):
    name, mc = gallery_category
    firm = is_firm(mc).holds
    stiff = is_stiff(mc).holds
    finite = has_universal_finite_joins(mc).holds
    directed = has_universal_directed_joins(mc).holds
    locale = is_locale_based(mc).holds
    assert not stiff or firm
    assert not finite or stiff
    assert not directed or stiff
    assert not locale or (finite and directed)
    assert locale == (finite and directed)
    assert locale == gallery.GALLERY[name].expected_locale_based


def test_characterisation_agrees_on_gallery(gallery_category):
    name, mc = gallery_category
    report = check_characterisation(mc)  # raises on any disagreement
    assert report.details["verdicts"]["all"] == \
        gallery.GALLERY[name].expected_locale_based


def test_characterisation_b2_all_conditions(b2):
    report = check_characterisation(b2)
    assert report.holds and not report.witness


def test_characterisation_m3_witness(m3):
    report = check_characterisation(m3)
    assert not report.holds
    witness = report.details["witnesses"]["all"]
    family, x, comparison, reason = witness
    assert reason == "comparison not invertible"
    assert is_iso(m3, comparison) is None
    # the degenerate colimit: the family of a, b over object c collapses
    lat = subunit_semilattice(m3)
    a = lat.index_of_domain("a")
    b = lat.index_of_domain("b")
    c = obj_by_label(m3, "c")
    from ttw.fincat import colimit
    fam = down_closure(lat, (a, b))
    col = colimit(m3, d_diagram(m3, lat, fam, c))
    assert m3.obj_label(col.apex) == "0"


# ---------------------------------------------------------------------------
# invariants


def test_retract_stability(gallery_category):
    name, mc = gallery_category
    subs = enumerate_subunits(mc)
    for m, e in retract_pairs(mc):
        a, b = mc.dom(m), mc.cod(m)
        for s in subs:
            if is_iso(mc, _tensor_right(mc, s.rep, b)) is not None:
                assert is_iso(mc, _tensor_right(mc, s.rep, a)) is not None


def test_idempotent_family_cocones_extend_uniquely():
    for name in ("q3", "boolean2x2", "m3"):
        mc = build_cached(name)
        lat = subunit_semilattice(mc)
        for family in idempotent_families(lat):
            closed = down_closure(lat, family)
            if closed == family:
                continue
            for x in range(len(mc.objects)):
                small = d_diagram(mc, lat, family, x)
                big = d_diagram(mc, lat, closed, x)
                positions = [closed.index(i) for i in family]
                for cocone in all_cocones(mc, small):
                    extensions = [
                        c for c in all_cocones(mc, big)
                        if c.apex == cocone.apex and
                        tuple(c.legs[p] for p in positions) == cocone.legs]
                    assert len(extensions) == 1


def test_directed_family_predicate(m3):
    lat = subunit_semilattice(m3)
    a = lat.index_of_domain("a")
    b = lat.index_of_domain("b")
    one = lat.index_of_domain("1")
    assert not family_is_directed(lat, (a, b))
    assert family_is_directed(lat, (a, b, one))
    assert family_is_directed(lat, ())
    assert not family_is_directed(lat, (), include_empty=False)
