"""Finite presheaves, Day convolution, and broad-presheaf completions.

Presheaves are tables: a finite value set per object and an index map
per morphism, contravariantly.  The Day tensor of two presheaves is
computed literally as its quotient presentation: triples (h, x, y) of a
morphism h: A -> B (x) C and elements x, y, identified by the least
equivalence relation generated by sliding morphisms f, g across the
components, closed with union-find.

Broad presheaves are presented intensionally by a pair (U, X) of a
downward-closed subunit family and an object; morphisms between them
are cocones whose legs restrict into the target family.  Collecting the
(finitely bounded, directed, all) presentations yields the three
completion categories, again as explicit finite monoidal categories.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ._unionfind import UnionFind
from .caps import DEFAULT_CAPS, Caps
from .errors import BuildError, ConsistencyError
from .fincat import (CatFunctor, FinCategory, MonoidalCategory, MonoidalData,
                     Morphism, assert_valid, factors_through, terminal_object)
from .orderkit import (directed_downsets, downsets, finitely_bounded_downsets)
from .restriction import restricts_to
from .subunits import (SubunitSemilattice, _tensor_left, _tensor_right,
                       is_stiff, subunit_semilattice)

Triple = tuple[int, int, int, int, int]  # (B, C, h, x-index, y-index)


# ---------------------------------------------------------------------------
# presheaves


@dataclass(frozen=True, eq=False)
class Presheaf:
    mc: MonoidalCategory
    values: tuple[tuple, ...]          # labels per object
    action: dict[int, tuple[int, ...]]  # mid -> map of value indices, cod to dom

    def size(self, a: int) -> int:
        return len(self.values[a])

    def apply(self, f: int, x: int) -> int:
        return self.action[f][x]


def check_presheaf(p: Presheaf) -> None:
    mc = p.mc
    if len(p.values) != len(mc.objects):
        raise BuildError("presheaf values missing objects")
    for f in mc.morphisms:
        arr = p.action.get(f.mid)
        if arr is None or len(arr) != p.size(f.cod) or \
                any(not (0 <= v < p.size(f.dom)) for v in arr):
            raise BuildError(f"presheaf action malformed at morphism {f.mid}")
    for a in range(len(mc.objects)):
        ida = p.action[mc.identity(a)]
        if any(ida[x] != x for x in range(p.size(a))):
            raise BuildError(f"presheaf action not identity at object {a}")
    for f in mc.morphisms:
        for g in mc.morphisms:
            if g.dom != f.cod:
                continue
            gf = mc.compose(g.mid, f.mid)
            for x in range(p.size(g.cod)):
                if p.action[gf][x] != p.action[f.mid][p.action[g.mid][x]]:
                    raise BuildError(
                        f"presheaf not functorial at ({g.mid}, {f.mid})")


def presheaf_cap_check(p: Presheaf, caps: Caps) -> None:
    for a in range(len(p.values)):
        caps.check("max_presheaf_values", p.size(a))


def yoneda(mc: MonoidalCategory, a: int) -> Presheaf:
    """The representable presheaf of an object: morphisms into it, with
    precomposition as the action."""
    values = tuple(tuple(mc.hom(b, a)) for b in range(len(mc.objects)))
    action = {}
    for f in mc.morphisms:
        row = values[f.cod]
        index_dom = {m: i for i, m in enumerate(values[f.dom])}
        action[f.mid] = tuple(index_dom[mc.compose(m, f.mid)] for m in row)
    p = Presheaf(mc, values, action)
    check_presheaf(p)
    return p


def coproduct_of_representables(mc: MonoidalCategory, tags: list[int]) -> Presheaf:
    """Disjoint unions of representables; handy as a pool of valid test
    presheaves (the empty list gives the empty presheaf)."""
    values = []
    for b in range(len(mc.objects)):
        row = []
        for k, a in enumerate(tags):
            row.extend((k, m) for m in mc.hom(b, a))
        values.append(tuple(row))
    index = [{lab: i for i, lab in enumerate(row)} for row in values]
    action = {}
    for f in mc.morphisms:
        action[f.mid] = tuple(index[f.dom][(k, mc.compose(m, f.mid))]
                              for (k, m) in values[f.cod])
    p = Presheaf(mc, tuple(values), action)
    check_presheaf(p)
    return p


@dataclass(frozen=True, eq=False)
class NatTransformation:
    source: Presheaf
    target: Presheaf
    components: tuple[tuple[int, ...], ...]

    def is_bijective(self) -> bool:
        return all(len(set(c)) == len(c) == self.target.size(a)
                   for a, c in enumerate(self.components))


def is_natural(f: Presheaf, g: Presheaf, components) -> bool:
    mc = f.mc
    for m in mc.morphisms:
        for x in range(f.size(m.cod)):
            if g.action[m.mid][components[m.cod][x]] != \
                    components[m.dom][f.action[m.mid][x]]:
                return False
    return True


def nat_transformations(f: Presheaf, g: Presheaf,
                        caps: Caps = DEFAULT_CAPS) -> list[NatTransformation]:
    """All natural transformations, by exhaustive component search."""
    mc = f.mc
    spaces = []
    total = 1
    for a in range(len(mc.objects)):
        maps = list(itertools.product(range(g.size(a)), repeat=f.size(a)))
        if not maps:
            maps = [()] if f.size(a) == 0 else []
        total *= max(len(maps), 1)
        caps.check("max_cocones", total)
        if not maps:
            return []
        spaces.append(maps)
    out = []
    for combo in itertools.product(*spaces):
        if is_natural(f, g, combo):
            out.append(NatTransformation(f, g, tuple(combo)))
    return out


def presheaves_isomorphic(f: Presheaf, g: Presheaf,
                          caps: Caps = DEFAULT_CAPS) -> NatTransformation | None:
    if any(f.size(a) != g.size(a) for a in range(len(f.values))):
        return None
    for nt in nat_transformations(f, g, caps=caps):
        if nt.is_bijective():
            return nt
    return None


# ---------------------------------------------------------------------------
# Day convolution


@dataclass(frozen=True, eq=False)
class DayTensorResult:
    """The Day tensor as a quotient: all triples per object, their
    partition into classes, and the induced presheaf on classes."""

    mc: MonoidalCategory
    left: Presheaf
    right: Presheaf
    triples: tuple[tuple[Triple, ...], ...]
    class_of: tuple[dict[Triple, int], ...]
    classes: tuple[tuple[tuple[Triple, ...], ...], ...]
    presheaf: Presheaf

    def class_count(self, a: int) -> int:
        return len(self.classes[a])


def day_tensor(mc: MonoidalCategory, left: Presheaf, right: Presheaf,
               caps: Caps = DEFAULT_CAPS) -> DayTensorResult:
    """Quotient construction of the Day tensor.

    Per object A the triples are (B, C, h: A -> B (x) C, x, y); the
    generating identification slides a pair (f, g) from the element
    coordinates into the morphism coordinate, and its symmetric
    transitive closure is taken with union-find.  The action of the
    quotient (precomposition on h) is verified well defined on classes,
    and the resulting presheaf is verified functorial.
    """
    presheaf_cap_check(left, caps)
    presheaf_cap_check(right, caps)
    n_obj = len(mc.objects)
    all_triples: list[tuple[Triple, ...]] = []
    all_class_of: list[dict[Triple, int]] = []
    all_classes: list[tuple[tuple[Triple, ...], ...]] = []

    for a in range(n_obj):
        triples: list[Triple] = []
        for b in range(n_obj):
            for c in range(n_obj):
                bc = mc.tensor_obj(b, c)
                for h in mc.hom(a, bc):
                    for x in range(left.size(b)):
                        for y in range(right.size(c)):
                            triples.append((b, c, h, x, y))
        caps.check("max_cocones", len(triples))
        uf = UnionFind(triples)
        for (b2, c2, h2, x2, y2) in triples:
            for f in mc.morphisms:
                if f.cod != b2:
                    continue
                x1 = left.apply(f.mid, x2)
                for g in mc.morphisms:
                    if g.cod != c2:
                        continue
                    y1 = right.apply(g.mid, y2)
                    fg = mc.tensor_mor(f.mid, g.mid)
                    for h1 in mc.hom(a, mc.dom(fg)):
                        if mc.compose(fg, h1) == h2:
                            uf.union((f.dom, g.dom, h1, x1, y1),
                                     (b2, c2, h2, x2, y2))
        groups = sorted((tuple(sorted(grp)) for grp in uf.classes()),
                        key=lambda grp: grp[0])
        class_of = {t: k for k, grp in enumerate(groups) for t in grp}
        all_triples.append(tuple(sorted(triples)))
        all_classes.append(tuple(groups))
        all_class_of.append(class_of)

    values = tuple(tuple(grp[0] for grp in all_classes[a]) for a in range(n_obj))
    action = {}
    for m in mc.morphisms:
        row = []
        for grp in all_classes[m.cod]:
            images = {all_class_of[m.dom][(b, c, mc.compose(h, m.mid), x, y)]
                      for (b, c, h, x, y) in grp}
            if len(images) != 1:
                raise ConsistencyError(
                    "Day action not well defined on a class",
                    details={"morphism": m.mid, "class": grp})
            row.append(images.pop())
        action[m.mid] = tuple(row)
    quotient = Presheaf(mc, values, action)
    check_presheaf(quotient)
    return DayTensorResult(mc, left, right, tuple(all_triples),
                           tuple(all_class_of), tuple(all_classes), quotient)


def day_tensor_mor(day_src: DayTensorResult, day_tgt: DayTensorResult,
                   phi: NatTransformation, psi: NatTransformation
                   ) -> NatTransformation:
    """The tensor of presheaf morphisms on quotient classes:
    (h, x, y) -> (h, phi(x), psi(y)); verified well defined and natural."""
    mc = day_src.mc
    components = []
    for a in range(len(mc.objects)):
        row = []
        for grp in day_src.classes[a]:
            images = {day_tgt.class_of[a][(b, c, h, phi.components[b][x],
                                           psi.components[c][y])]
                      for (b, c, h, x, y) in grp}
            if len(images) != 1:
                raise ConsistencyError("Day tensor of morphisms ill defined",
                                       details={"object": a, "class": grp})
            row.append(images.pop())
        components.append(tuple(row))
    nt = NatTransformation(day_src.presheaf, day_tgt.presheaf, tuple(components))
    if not is_natural(day_src.presheaf, day_tgt.presheaf, nt.components):
        raise ConsistencyError("Day tensor of morphisms not natural")
    return nt


def identity_nat(p: Presheaf) -> NatTransformation:
    return NatTransformation(p, p, tuple(tuple(range(p.size(a)))
                                         for a in range(len(p.values))))


def day_unitors(mc: MonoidalCategory, p: Presheaf,
                caps: Caps = DEFAULT_CAPS) -> tuple[NatTransformation, NatTransformation]:
    """The unitor isomorphisms F (x) I -> F and I (x) F -> F of the Day
    structure, computed from their explicit formulas and verified to be
    natural bijections.

    The unit presheaf is the representable of the tensor unit, so its
    elements are morphism ids and can be composed into the coordinates.
    """
    unit_p = yoneda(mc, mc.unit)
    right = day_tensor(mc, p, unit_p, caps=caps)
    left = day_tensor(mc, unit_p, p, caps=caps)
    rho_parts = []
    lam_parts = []
    for a in range(len(mc.objects)):
        row = []
        for grp in right.classes[a]:
            values = set()
            for (b, c, h, x, y) in grp:
                y_mor = unit_p.values[c][y]          # c -> unit
                collapse = mc.compose(_tensor_left(mc, b, y_mor), h)
                values.add(p.apply(collapse, x))
            if len(values) != 1:
                raise ConsistencyError("right unitor ill defined",
                                       details={"object": a, "class": grp})
            row.append(values.pop())
        rho_parts.append(tuple(row))
        row = []
        for grp in left.classes[a]:
            values = set()
            for (b, c, h, x, y) in grp:
                x_mor = unit_p.values[b][x]          # b -> unit
                collapse = mc.compose(_tensor_right(mc, x_mor, c), h)
                values.add(p.apply(collapse, y))
            if len(values) != 1:
                raise ConsistencyError("left unitor ill defined",
                                       details={"object": a, "class": grp})
            row.append(values.pop())
        lam_parts.append(tuple(row))
    rho = NatTransformation(right.presheaf, p, tuple(rho_parts))
    lam = NatTransformation(left.presheaf, p, tuple(lam_parts))
    for name, nt, src in (("right", rho, right.presheaf),
                          ("left", lam, left.presheaf)):
        if not is_natural(src, p, nt.components):
            raise ConsistencyError(f"{name} unitor not natural")
        if not nt.is_bijective():
            raise ConsistencyError(f"{name} unitor not invertible")
    return rho, lam


# ---------------------------------------------------------------------------
# sieves: the subunits of the presheaf category


@dataclass(frozen=True)
class Sieve:
    """A subfunctor of the morphisms into the unit: a set of morphisms
    closed under precomposition."""

    members: frozenset[int]

    def at(self, mc: MonoidalCategory, a: int) -> tuple[int, ...]:
        return tuple(m for m in sorted(self.members) if mc.dom(m) == a)


def sieve_presheaf(mc: MonoidalCategory, sieve: Sieve) -> Presheaf:
    values = tuple(sieve.at(mc, a) for a in range(len(mc.objects)))
    index = [{m: i for i, m in enumerate(row)} for row in values]
    action = {}
    for f in mc.morphisms:
        action[f.mid] = tuple(index[f.dom][mc.compose(m, f.mid)]
                              for m in values[f.cod])
    p = Presheaf(mc, values, action)
    check_presheaf(p)
    return p


def all_sieves_on_unit(mc: MonoidalCategory, caps: Caps = DEFAULT_CAPS) -> list[Sieve]:
    into_unit = [m.mid for m in mc.morphisms if m.cod == mc.unit]
    caps.check("max_downset_base", len(into_unit))
    out = []
    for bits in itertools.product((False, True), repeat=len(into_unit)):
        subset = frozenset(m for k, m in enumerate(into_unit) if bits[k])
        closed = all(mc.compose(s, f.mid) in subset
                     for s in subset for f in mc.morphisms if f.cod == mc.dom(s))
        if closed:
            out.append(Sieve(subset))
    out.sort(key=lambda s: (len(s.members), sorted(s.members)))
    return out


def presheaf_subunits(mc: MonoidalCategory, caps: Caps = DEFAULT_CAPS) -> list[Sieve]:
    """The sieves on the unit that are subunits of the presheaf category.

    Two routes are computed and must agree: the factorisation condition
    (every member arises from exactly one Day class of the sieve
    squared), and invertibility of the inclusion tensored with the
    sieve.
    """
    chosen = []
    for sieve in all_sieves_on_unit(mc, caps=caps):
        p = sieve_presheaf(mc, sieve)
        square = day_tensor(mc, p, p, caps=caps)
        route_a = True
        for a in range(len(mc.objects)):
            wanted = {m: 0 for m in p.values[a]}
            for grp in square.classes[a]:
                vals = set()
                for (b, c, h, x, y) in grp:
                    x_mor = p.values[b][x]
                    y_mor = p.values[c][y]
                    vals.add(mc.compose(mc.tensor_mor(x_mor, y_mor), h))
                if len(vals) != 1:
                    raise ConsistencyError("sieve pairing ill defined on a class",
                                           details={"object": a})
                val = vals.pop()
                if val not in wanted:
                    route_a = False
                    break
                wanted[val] += 1
            if not route_a or any(count != 1 for count in wanted.values()):
                route_a = False
                break
        unit_p = yoneda(mc, mc.unit)
        inclusion_parts = []
        for a in range(len(mc.objects)):
            idx = {m: i for i, m in enumerate(unit_p.values[a])}
            inclusion_parts.append(tuple(idx[m] for m in p.values[a]))
        inclusion = NatTransformation(p, unit_p, tuple(inclusion_parts))
        if not is_natural(p, unit_p, inclusion.components):
            raise ConsistencyError("sieve inclusion not natural")
        tensored = day_tensor_mor(square, day_tensor(mc, unit_p, p, caps=caps),
                                  inclusion, identity_nat(p))
        route_b = tensored.is_bijective()
        if route_a != route_b:
            raise ConsistencyError(
                "sieve subunit routes disagree",
                details={"sieve": sorted(sieve.members),
                         "factorisation": route_a, "invertibility": route_b})
        if route_a:
            chosen.append(sieve)
    return chosen


# ---------------------------------------------------------------------------
# broad presheaves and the completion categories


@dataclass(frozen=True)
class BroadSpec:
    """A presentation (U, X): a downward-closed family of subunit
    indices and an object, of one of the three flavours."""

    family: tuple[int, ...]
    obj: int
    flavour: str


def make_broad_spec(lat: SubunitSemilattice, family, obj: int, flavour: str,
                    include_empty: bool = True) -> BroadSpec:
    family = tuple(sorted(set(family)))
    fam = set(family)
    closed = all(i in fam for j in fam for i in range(len(lat)) if lat.leq[i][j])
    if not closed:
        raise BuildError("broad family is not downward closed")
    if flavour == "directed":
        if not family and not include_empty:
            raise BuildError("empty family excluded under this convention")
        if family and not all(
                any(lat.leq[a][c] and lat.leq[b][c] for c in family)
                for a in family for b in family):
            raise BuildError("broad family is not directed")
    elif flavour not in ("finite", "all"):
        raise ValueError(f"unknown flavour {flavour!r}")
    return BroadSpec(family, obj, flavour)


def broad_presheaf(mc: MonoidalCategory, lat: SubunitSemilattice,
                   spec: BroadSpec) -> Presheaf:
    """The presheaf of morphisms into the spec object restricting to a
    member of the family, with precomposition action."""
    fam = [lat.subunits[i] for i in spec.family]
    values = []
    for a in range(len(mc.objects)):
        values.append(tuple(
            f for f in mc.hom(a, spec.obj)
            if any(restricts_to(mc, f, s) is not None for s in fam)))
    index = [{m: i for i, m in enumerate(row)} for row in values]
    action = {}
    for f in mc.morphisms:
        action[f.mid] = tuple(index[f.dom][mc.compose(m, f.mid)]
                              for m in values[f.cod])
    p = Presheaf(mc, tuple(values), action)
    check_presheaf(p)
    return p


@dataclass(frozen=True, eq=False)
class BroadCompletion:
    source: MonoidalCategory
    flavour: str
    lat: SubunitSemilattice
    category: MonoidalCategory
    specs: tuple[BroadSpec, ...]
    cocones: tuple[tuple[int, ...], ...]  # per completion morphism, source legs
    embedding: CatFunctor

    def spec_index(self, spec: BroadSpec) -> int:
        return self.specs.index(spec)


def _flavour_families(lat: SubunitSemilattice, flavour: str,
                      include_empty: bool, caps: Caps) -> list[tuple[int, ...]]:
    if flavour == "all":
        dl = downsets(lat.lattice, caps=caps)
    elif flavour == "finite":
        dl = finitely_bounded_downsets(lat.lattice, caps=caps)
    elif flavour == "directed":
        dl = directed_downsets(lat.lattice, include_empty=include_empty,
                               caps=caps)
    else:
        raise ValueError(f"unknown flavour {flavour!r}")
    return [tuple(sorted(s)) for s in dl.sets]


def _restriction_factor(mc: MonoidalCategory, lat: SubunitSemilattice,
                        family, leg: int, target_obj: int) -> tuple[int, int]:
    """The least (t, h) with leg = (t (x) target) o h and t in family."""
    for t in family:
        h = restricts_to(mc, leg, lat.subunits[t])
        if h is not None:
            return t, h
    raise ConsistencyError("cocone leg does not restrict into the family",
                           details={"leg": leg, "family": family})


def broad_category(mc: MonoidalCategory, flavour: str = "all",
                   include_empty: bool = True,
                   caps: Caps = DEFAULT_CAPS) -> BroadCompletion:
    """The completion of a stiff category by broad presheaves of the
    given flavour, presented intensionally.

    Objects are canonical pairs (downward-closed family, object);
    morphisms (U, X) -> (V, Y) are cocones over the diagram of the
    S (x) X whose legs restrict into V; composition pastes cocones
    through a restriction factorisation, checked independent of the
    factorisation chosen.  The embedding sends an object A to the pair
    (all subunits, A).
    """
    stiff = is_stiff(mc)
    if not stiff.holds:
        raise BuildError("broad completion requires a stiff category", stiff)
    lat = subunit_semilattice(mc)
    families = _flavour_families(lat, flavour, include_empty, caps)
    specs = [BroadSpec(fam, x, flavour)
             for fam in sorted(families) for x in range(len(mc.objects))]
    spec_index = {(s.family, s.obj): k for k, s in enumerate(specs)}

    node_obj = {}
    for spec in specs:
        node_obj[spec.family, spec.obj] = tuple(
            mc.tensor_obj(lat.subunits[i].domain, spec.obj)
            for i in spec.family)

    def diagram_edges(spec: BroadSpec):
        nodes = node_obj[spec.family, spec.obj]
        edges = []
        for ai, i in enumerate(spec.family):
            six = _tensor_right(mc, lat.subunits[i].rep, spec.obj)
            for bj, j in enumerate(spec.family):
                sjx = _tensor_right(mc, lat.subunits[j].rep, spec.obj)
                for f in mc.hom(nodes[ai], nodes[bj]):
                    if mc.compose(sjx, f) == six:
                        edges.append((ai, bj, f))
        return edges

    edges_cache = {(s.family, s.obj): diagram_edges(s) for s in specs}

    def hom_cocones(src: BroadSpec, dst: BroadSpec) -> list[tuple[int, ...]]:
        nodes = node_obj[src.family, src.obj]
        fam_dst = [lat.subunits[i] for i in dst.family]
        candidate_legs = []
        count = 1
        for ai, i in enumerate(src.family):
            legs = [c for c in mc.hom(nodes[ai], dst.obj)
                    if any(restricts_to(mc, c, t) is not None for t in fam_dst)]
            count *= len(legs)
            candidate_legs.append(legs)
            if count == 0:
                return []
        caps.check("max_cocones", count)
        out = []
        for legs in itertools.product(*candidate_legs):
            if all(mc.compose(legs[bj], f) == legs[ai]
                   for ai, bj, f in edges_cache[src.family, src.obj]):
                out.append(tuple(legs))
        return out

    mor_defs: list[tuple[int, int, tuple[int, ...]]] = []
    mor_index: dict[tuple[int, int, tuple[int, ...]], int] = {}
    for a, src in enumerate(specs):
        for b, dst in enumerate(specs):
            for legs in hom_cocones(src, dst):
                mor_index[(a, b, legs)] = len(mor_defs)
                mor_defs.append((a, b, legs))
    caps.check("max_morphisms", len(mor_defs))

    def compose_cocones(kb: int, ka: int) -> int:
        # each composite leg depends only on the factorisation of its own
        # leg through the middle family, so well-definedness reduces to a
        # per-leg sweep over every factorisation
        a_src, a_dst, a_legs = mor_defs[ka]
        b_src, b_dst, b_legs = mor_defs[kb]
        mid_spec = specs[a_dst]
        new_legs = []
        for leg in a_legs:
            candidates = set()
            for pos, t in enumerate(mid_spec.family):
                sub = lat.subunits[t]
                target = _tensor_right(mc, sub.rep, mid_spec.obj)
                for h in mc.hom(mc.dom(leg), mc.dom(target)):
                    if mc.compose(target, h) == leg:
                        candidates.add(mc.compose(b_legs[pos], h))
            if len(candidates) != 1:
                raise ConsistencyError(
                    "cocone pasting depends on the factorisation",
                    details={"alpha": ka, "beta": kb, "leg": leg,
                             "candidates": sorted(candidates)})
            new_legs.append(candidates.pop())
        return mor_index[(a_src, b_dst, tuple(new_legs))]

    morphisms = tuple(Morphism(k, a, b, f"c{k}")
                      for k, (a, b, legs) in enumerate(mor_defs))
    identity = []
    for k, spec in enumerate(specs):
        legs = tuple(_tensor_right(mc, lat.subunits[i].rep, spec.obj)
                     for i in spec.family)
        identity.append(mor_index[(k, k, legs)])
    compose = {}
    for ka, (a1, b1, _) in enumerate(mor_defs):
        for kb, (a2, b2, _) in enumerate(mor_defs):
            if a2 != b1:
                continue
            compose[(kb, ka)] = compose_cocones(kb, ka)
    cat = FinCategory(tuple(f"{_family_label(mc, lat, s.family)}"
                            f"[{mc.obj_label(s.obj)}]" for s in specs),
                      morphisms, tuple(identity), compose)

    def tensor_family(fu, fv):
        meets = {lat.meet(i, j) for i in fu for j in fv}
        closed = {i for i in range(len(lat))
                  if any(lat.leq[i][j] for j in meets)}
        return tuple(sorted(closed))

    t_obj_idx = []
    for s1 in specs:
        row = []
        for s2 in specs:
            fam = tensor_family(s1.family, s2.family)
            row.append(spec_index[(fam, mc.tensor_obj(s1.obj, s2.obj))])
        t_obj_idx.append(tuple(row))

    # the leg of the tensor at a family member r factors r through one
    # meet of the two families, shuffles the middle factors with the
    # braiding, and applies the two given legs; everything except the
    # legs depends only on the spec pair, so precompute those prefixes
    prefix_cache: dict[tuple[int, int], tuple[tuple[int, int, int], ...]] = {}

    def tensor_prefixes(ks1: int, ks2: int):
        if (ks1, ks2) in prefix_cache:
            return prefix_cache[(ks1, ks2)]
        su, sv = specs[ks1], specs[ks2]
        src_spec = specs[t_obj_idx[ks1][ks2]]
        out = []
        for r in src_spec.family:
            rsub = lat.subunits[r]
            chosen = None
            for ui, i in enumerate(su.family):
                for vj, j in enumerate(sv.family):
                    if not lat.leq[r][lat.meet(i, j)]:
                        continue
                    meet_mono = mc.tensor_mor(lat.subunits[i].rep,
                                              lat.subunits[j].rep)
                    k = factors_through(mc, rsub.rep, meet_mono)
                    if k is None:
                        raise ConsistencyError(
                            "meet factorisation missing", details={"r": r})
                    shuffle = mc.tensor_mor(
                        mc.tensor_mor(
                            mc.identity(lat.subunits[i].domain),
                            mc.braiding(lat.subunits[j].domain, su.obj)),
                        mc.identity(sv.obj))
                    prefix = mc.compose(
                        shuffle,
                        _tensor_right(mc, k, mc.tensor_obj(su.obj, sv.obj)))
                    chosen = (ui, vj, prefix)
                    break
                if chosen is not None:
                    break
            if chosen is None:
                raise ConsistencyError("tensor family member above no meet",
                                       details={"r": r})
            out.append(chosen)
        prefixes = tuple(out)
        prefix_cache[(ks1, ks2)] = prefixes
        return prefixes

    def tensor_cocones(ka: int, kb: int) -> int:
        a_src, a_dst, a_legs = mor_defs[ka]
        b_src, b_dst, b_legs = mor_defs[kb]
        legs = []
        for ui, vj, prefix in tensor_prefixes(a_src, b_src):
            legs.append(mc.compose(mc.tensor_mor(a_legs[ui], b_legs[vj]),
                                   prefix))
        key = (t_obj_idx[a_src][b_src], t_obj_idx[a_dst][b_dst], tuple(legs))
        if key not in mor_index:
            raise ConsistencyError("tensor of cocones escaped the hom sets",
                                   details={"key": key})
        return mor_index[key]

    # in a thin completion a morphism is determined by its endpoints, so
    # the tensor table follows from the object tensor alone; the leg
    # formula stays as the general path and is cross-checked in tests
    hom_count: dict[tuple[int, int], int] = {}
    unique_mor: dict[tuple[int, int], int] = {}
    for k, (a, b, _) in enumerate(mor_defs):
        hom_count[(a, b)] = hom_count.get((a, b), 0) + 1
        unique_mor[(a, b)] = k
    completion_thin = all(v == 1 for v in hom_count.values())

    t_mor = {}
    for ka, (a1, b1, _) in enumerate(mor_defs):
        for kb, (a2, b2, _) in enumerate(mor_defs):
            if completion_thin:
                t_mor[(ka, kb)] = unique_mor[(t_obj_idx[a1][a2],
                                              t_obj_idx[b1][b2])]
            else:
                t_mor[(ka, kb)] = tensor_cocones(ka, kb)

    full_family = tuple(range(len(lat)))
    unit_idx = spec_index[(full_family, mc.unit)]

    braiding_rows = []
    for k1, s1 in enumerate(specs):
        row = []
        for k2, s2 in enumerate(specs):
            src_idx = t_obj_idx[k1][k2]
            dst_idx = t_obj_idx[k2][k1]
            src_spec = specs[src_idx]
            legs = []
            for r in src_spec.family:
                rsub = lat.subunits[r]
                leg = mc.compose(
                    _tensor_right(mc, rsub.rep, mc.tensor_obj(s2.obj, s1.obj)),
                    _tensor_left(mc, rsub.domain, mc.braiding(s1.obj, s2.obj)))
                legs.append(leg)
            key = (src_idx, dst_idx, tuple(legs))
            if key not in mor_index:
                raise ConsistencyError("braiding cocone escaped the hom sets",
                                       details={"key": key})
            row.append(mor_index[key])
        braiding_rows.append(tuple(row))

    completion = assert_valid(
        MonoidalCategory(cat, MonoidalData(unit_idx, tuple(t_obj_idx), t_mor,
                                           tuple(braiding_rows))),
        caps=caps)

    emb_obj = tuple(spec_index[(full_family, a)] for a in range(len(mc.objects)))
    emb_mor = []
    for f in mc.morphisms:
        legs = tuple(mc.compose(f.mid,
                                _tensor_right(mc, lat.subunits[i].rep, f.dom))
                     for i in full_family)
        emb_mor.append(mor_index[(emb_obj[f.dom], emb_obj[f.cod], legs)])
    embedding = CatFunctor(mc, completion, emb_obj, tuple(emb_mor))
    embedding.check_functor()
    embedding.check_strict_monoidal()
    return BroadCompletion(mc, flavour, lat, completion, tuple(specs),
                           tuple(legs for _, _, legs in mor_defs), embedding)


def _family_label(mc: MonoidalCategory, lat: SubunitSemilattice, family) -> str:
    if not family:
        return "{}"
    return "{" + ",".join(mc.obj_label(lat.subunits[i].domain)
                          for i in family) + "}"


def completion_has_no_terminal(completion: BroadCompletion) -> bool:
    return terminal_object(completion.category) is None


def tensor_of_morphisms_by_legs(completion: BroadCompletion, ka: int,
                                kb: int) -> int:
    """Recompute the tensor of two completion morphisms from the leg
    formula, independently of the thin shortcut used when building the
    table; the two must agree."""
    mc = completion.source
    lat = completion.lat
    cat = completion.category
    index = {(cat.dom(k), cat.cod(k), completion.cocones[k]): k
             for k in range(len(cat.morphisms))}
    a_src, a_dst = cat.dom(ka), cat.cod(ka)
    b_src, b_dst = cat.dom(kb), cat.cod(kb)
    su, sv = completion.specs[a_src], completion.specs[b_src]
    src_spec = completion.specs[cat.tensor_obj(a_src, b_src)]
    legs = []
    for r in src_spec.family:
        rsub = lat.subunits[r]
        leg = None
        for ui, i in enumerate(su.family):
            for vj, j in enumerate(sv.family):
                if not lat.leq[r][lat.meet(i, j)]:
                    continue
                meet_mono = mc.tensor_mor(lat.subunits[i].rep,
                                          lat.subunits[j].rep)
                k = factors_through(mc, rsub.rep, meet_mono)
                shuffle = mc.tensor_mor(
                    mc.tensor_mor(mc.identity(lat.subunits[i].domain),
                                  mc.braiding(lat.subunits[j].domain, su.obj)),
                    mc.identity(sv.obj))
                prefix = mc.compose(
                    shuffle, _tensor_right(mc, k,
                                           mc.tensor_obj(su.obj, sv.obj)))
                leg = mc.compose(
                    mc.tensor_mor(completion.cocones[ka][ui],
                                  completion.cocones[kb][vj]), prefix)
                break
            if leg is not None:
                break
        legs.append(leg)
    return index[(cat.tensor_obj(a_src, b_src), cat.tensor_obj(a_dst, b_dst),
                  tuple(legs))]


# ---------------------------------------------------------------------------
# functor extension along the completion


def extend_functor(completion: BroadCompletion, functor: CatFunctor,
                   caps: Caps = DEFAULT_CAPS) -> CatFunctor:
    """Extend a strict monoidal subunit-preserving functor to the
    completion: a spec (U, X) is sent to (join of the image of U) (x)
    F(X), and a cocone morphism to the unique mediating morphism out of
    the corresponding colimit in the target.

    The target must have the universal joins matching the completion
    flavour; it is rejected otherwise.  The extension is verified to be
    a functor agreeing with the original along the embedding and to
    carry each family spec to the join of its image.
    """
    from .subunits import (has_universal_directed_joins,
                           has_universal_finite_joins, is_locale_based)
    mc = completion.source
    target = functor.target
    functor.check_strict_monoidal()
    if completion.flavour == "all":
        joins = is_locale_based(target, caps=caps)
    elif completion.flavour == "finite":
        joins = has_universal_finite_joins(target, caps=caps)
    else:
        joins = has_universal_directed_joins(target, caps=caps)
    if not joins.holds:
        raise BuildError(
            f"target lacks universal {completion.flavour} joins", joins)
    lat = completion.lat
    lat_t = subunit_semilattice(target)

    image_sub = []
    for s in lat.subunits:
        img = functor.on_mor(s.rep)
        found = next((k for k, t in enumerate(lat_t.subunits)
                      if img in t.cls.members), None)
        if found is None:
            raise BuildError(
                f"functor does not preserve the subunit at {s.rep}")
        image_sub.append(found)

    def family_join(family) -> int:
        if family:
            j = lat_t.join(image_sub[i] for i in family)
        else:
            j = lat_t.bottom()
        if j is None:
            raise BuildError("target subunits lack a needed join")
        return j

    obj_map = []
    for spec in completion.specs:
        w = lat_t.subunits[family_join(spec.family)]
        obj_map.append(target.tensor_obj(w.domain, functor.on_obj(spec.obj)))

    mor_map = []
    for k, m in enumerate(completion.category.morphisms):
        src_spec = completion.specs[m.dom]
        dst_spec = completion.specs[m.cod]
        legs = completion.cocones[k]
        w_src = lat_t.subunits[family_join(src_spec.family)]
        w_dst = lat_t.subunits[family_join(dst_spec.family)]
        fx = functor.on_obj(src_spec.obj)
        fy = functor.on_obj(dst_spec.obj)
        src_apex = target.tensor_obj(w_src.domain, fx)
        dst_apex = target.tensor_obj(w_dst.domain, fy)
        constraints = []
        for pos, i in enumerate(src_spec.family):
            t_idx = image_sub[i]
            incl = factors_through(target, lat_t.subunits[t_idx].rep, w_src.rep)
            colim_leg = _tensor_right(target, incl, fx)
            t2, h = _restriction_factor(mc, lat, dst_spec.family, legs[pos],
                                        dst_spec.obj)
            incl2 = factors_through(target, lat_t.subunits[image_sub[t2]].rep,
                                    w_dst.rep)
            rho = target.compose(_tensor_right(target, incl2, fy),
                                 functor.on_mor(h))
            constraints.append((colim_leg, rho))
        fillers = [u for u in target.hom(src_apex, dst_apex)
                   if all(target.compose(u, colim_leg) == rho
                          for colim_leg, rho in constraints)]
        if len(fillers) != 1:
            raise ConsistencyError(
                "mediating morphism for the extension not unique",
                details={"morphism": k, "fillers": fillers})
        mor_map.append(fillers[0])

    extension = CatFunctor(completion.category, target, tuple(obj_map),
                           tuple(mor_map))
    extension.check_functor()
    if target.is_thin():
        extension.check_strict_monoidal()
    emb = completion.embedding
    for a in range(len(mc.objects)):
        if extension.on_obj(emb.on_obj(a)) != functor.on_obj(a):
            raise ConsistencyError("extension moves an embedded object",
                                   details={"object": a})
    for f in mc.morphisms:
        if extension.on_mor(emb.on_mor(f.mid)) != functor.on_mor(f.mid):
            raise ConsistencyError("extension moves an embedded morphism",
                                   details={"morphism": f.mid})
    for spec_idx, spec in enumerate(completion.specs):
        if spec.obj == mc.unit:
            w = lat_t.subunits[family_join(spec.family)]
            if extension.on_obj(spec_idx) != target.tensor_obj(w.domain,
                                                               target.unit):
                raise ConsistencyError("extension misses the family join",
                                       details={"spec": spec})
    return extension
