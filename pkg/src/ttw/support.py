"""Support of morphisms.

The subunits a morphism restricts to determine its support.  The
canonical support lands in the downset lattice of the subunit
semilattice: it sends f to the set of subunits below every subunit f
restricts to, and every other support datum factors through it by
joins.  When the subunits form a lattice (always, at this finite
scale), the single best subunit supp(f) is the meet of the restricting
set, equivalently the join of the canonical downset.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .caps import DEFAULT_CAPS, Caps
from .errors import BuildError, ConsistencyError
from .fincat import MonoidalCategory
from .orderkit import DownsetLattice, FinPoset, downsets
from .restriction import restricting_subunits
from .subunits import PropertyReport, SubunitSemilattice, subunit_semilattice


@dataclass(frozen=True)
class SupportResult:
    morphism: int
    canonical: frozenset[int]  # downset of subunit indices
    supp: int                  # subunit index


@dataclass(frozen=True, eq=False)
class SupportDatum:
    """A monotone assignment of lattice values to subunits, extended to
    every morphism as the meet over the subunits it restricts to."""

    mc: MonoidalCategory
    lat: SubunitSemilattice
    target: FinPoset
    on_subunits: tuple[int, ...]
    values: dict[int, int]  # morphism id -> target element

    def value(self, f: int) -> int:
        return self.values[f]


def _restriction_table(mc: MonoidalCategory,
                       lat: SubunitSemilattice) -> dict[int, list[int]]:
    subs = list(lat.subunits)
    return {f.mid: restricting_subunits(mc, subs, f.mid) for f in mc.morphisms}


def canonical_support(mc: MonoidalCategory, f: int,
                      lat: SubunitSemilattice | None = None) -> SupportResult:
    """The canonical downset-valued support of one morphism, plus the
    single subunit supp(f); the two descriptions are cross-checked."""
    if lat is None:
        lat = subunit_semilattice(mc)
    restricting = restricting_subunits(mc, list(lat.subunits), f)
    if not restricting:
        raise ConsistencyError("morphism restricts to no subunit at all",
                               details={"morphism": f})
    canonical = frozenset(
        s for s in range(len(lat))
        if all(lat.leq[s][t] for t in restricting))
    supp = lat.lattice.poset.meet(tuple(restricting))
    if supp is None:
        raise ConsistencyError("restricting set has no meet",
                               details={"morphism": f})
    join_route = lat.lattice.poset.join(tuple(canonical))
    if join_route != supp:
        raise ConsistencyError(
            "meet of restricting subunits differs from join of the downset",
            details={"morphism": f, "meet": supp, "join": join_route})
    return SupportResult(f, canonical, supp)


def support_datum_from_monotone(mc: MonoidalCategory, target: FinPoset,
                                on_subunits, lat: SubunitSemilattice | None = None
                                ) -> SupportDatum:
    """Extend a monotone map on subunits to a support datum.

    Rejects non-monotone input and targets that are not complete
    lattices; verifies that the extension agrees with the given map on
    subunit representatives and is functorial for the restriction
    preorder on morphisms.
    """
    if lat is None:
        lat = subunit_semilattice(mc)
    on_subunits = tuple(on_subunits)
    if len(on_subunits) != len(lat):
        raise BuildError("assignment length does not match the subunits")
    if not target.is_lattice():
        raise BuildError("support target is not a complete lattice")
    for i in range(len(lat)):
        for j in range(len(lat)):
            if lat.leq[i][j] and not target.leq[on_subunits[i]][on_subunits[j]]:
                raise BuildError(
                    f"assignment is not monotone on subunit pair ({i}, {j})")
    table = _restriction_table(mc, lat)
    values = {}
    for f in mc.morphisms:
        meet = target.meet(tuple(on_subunits[s] for s in table[f.mid]))
        if meet is None:
            raise ConsistencyError("target lacks a needed meet",
                                   details={"morphism": f.mid})
        values[f.mid] = meet
    datum = SupportDatum(mc, lat, target, on_subunits, values)
    for k, s in enumerate(lat.subunits):
        if datum.value(s.rep) != on_subunits[k]:
            raise ConsistencyError(
                "extension disagrees with the assignment on a subunit",
                details={"subunit": k})
    for f in mc.morphisms:
        for g in mc.morphisms:
            if set(table[g.mid]) <= set(table[f.mid]):
                if not target.leq[values[f.mid]][values[g.mid]]:
                    raise ConsistencyError(
                        "extension is not functorial for the restriction preorder",
                        details={"f": f.mid, "g": g.mid})
    return datum


def canonical_support_datum(mc: MonoidalCategory,
                            lat: SubunitSemilattice | None = None,
                            caps: Caps = DEFAULT_CAPS
                            ) -> tuple[SupportDatum, DownsetLattice]:
    """The initial support datum, valued in downsets of the subunits."""
    if lat is None:
        lat = subunit_semilattice(mc)
    dl = downsets(lat.lattice, caps=caps)
    return (support_datum_from_monotone(mc, dl.poset, dl.embedding, lat=lat), dl)


def verify_support_laws(mc: MonoidalCategory, datum: SupportDatum,
                        caps: Caps = DEFAULT_CAPS) -> PropertyReport:
    """The two derived laws of any support datum, plus initiality of the
    canonical one.

    Colax monoidality: the value of a tensor is below the meet of the
    values.  Object factoring: the value of f is the meet of the values
    of the identities f factors through.  Initiality: mapping a downset
    to the join of the assigned values carries the canonical datum to
    this one, preserves all joins, and agrees on principal downsets.
    """
    target = datum.target
    values = datum.values
    for f in mc.morphisms:
        for g in mc.morphisms:
            tens = values[mc.tensor_mor(f.mid, g.mid)]
            bound = target.meet((values[f.mid], values[g.mid]))
            if not target.leq[tens][bound]:
                return PropertyReport("support_laws", False,
                                      witness=(f.mid, g.mid),
                                      details={"reason": "colax bound fails"})
    for f in mc.morphisms:
        through = []
        for a in range(len(mc.objects)):
            if any(mc.compose(v, u) == f.mid
                   for u in mc.hom(f.dom, a) for v in mc.hom(a, f.cod)):
                through.append(values[mc.identity(a)])
        if target.meet(tuple(through)) != values[f.mid]:
            return PropertyReport("support_laws", False, witness=(f.mid,),
                                  details={"reason": "object formula fails"})

    lat = datum.lat
    dl = downsets(lat.lattice, caps=caps)
    def join_image(downset: frozenset[int]) -> int | None:
        return target.join(tuple(datum.on_subunits[s] for s in downset))
    factor = [join_image(s) for s in dl.sets]
    if any(v is None for v in factor):
        return PropertyReport("support_laws", False,
                              details={"reason": "target lacks a join"})
    for f in mc.morphisms:
        canonical = canonical_support(mc, f.mid, lat=lat)
        if factor[dl.index_of(canonical.canonical)] != values[f.mid]:
            return PropertyReport(
                "support_laws", False, witness=(f.mid,),
                details={"reason": "canonical datum does not factor to this one"})
    # the factoring map preserves arbitrary joins of downsets
    n = len(dl.sets)
    caps.check("max_subunit_family_base", n)
    for size in range(n + 1):
        for subset in itertools.combinations(range(n), size):
            union = frozenset().union(*(dl.sets[k] for k in subset)) \
                if subset else frozenset()
            lhs = factor[dl.index_of(union)]
            rhs = target.join(tuple(factor[k] for k in subset))
            if lhs != rhs:
                return PropertyReport(
                    "support_laws", False, witness=subset,
                    details={"reason": "factoring map is not join preserving"})
    for k, s in enumerate(lat.subunits):
        principal = dl.sets[dl.embedding[k]]
        if factor[dl.index_of(principal)] != datum.on_subunits[k]:
            return PropertyReport(
                "support_laws", False, witness=(k,),
                details={"reason": "factoring map moves a principal downset"})
    return PropertyReport("support_laws", True)
