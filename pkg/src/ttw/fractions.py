"""Localisation by a calculus of right fractions.

The class of maps inverted is generated by the tensored subunit
inclusions s (x) A together with all identities, closed under
composition and under tensoring with objects.  After verifying the two
right-fraction conditions (the Ore square and left cancellation), the
localised category is built concretely: morphisms are equivalence
classes of spans (denominator in the class, numerator arbitrary), with
composition through Ore fillers.  Inverting every subunit at once gives
the universal simple quotient.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ._unionfind import UnionFind
from .caps import DEFAULT_CAPS, Caps
from .errors import BuildError, ConsistencyError
from .fincat import (CatFunctor, FinCategory, MonoidalCategory, MonoidalData,
                     Morphism, assert_valid, is_iso)
from .subunits import (PropertyReport, Subunit, _tensor_left, _tensor_right,
                       enumerate_subunits)


@dataclass(frozen=True, eq=False)
class SigmaClass:
    mc: MonoidalCategory
    members: frozenset[int]
    origin: dict[int, str]  # how each member arose, for reports

    def __contains__(self, mid: int) -> bool:
        return mid in self.members


@dataclass(frozen=True, order=True)
class FractionSpan:
    denominator: int  # P -> A, member of the class
    numerator: int    # P -> B


@dataclass(frozen=True, eq=False)
class LocalisedCategory:
    category: MonoidalCategory
    source: MonoidalCategory
    sigma: SigmaClass
    quotient: CatFunctor                       # source -> localised
    classes: tuple[frozenset[FractionSpan], ...]  # per localised morphism
    reps: tuple[FractionSpan, ...]

    def class_of(self, span: FractionSpan) -> int:
        for k, members in enumerate(self.classes):
            if span in members:
                return k
        raise KeyError(span)


def sigma(mc: MonoidalCategory, subunit_set: list[Subunit] | None = None,
          caps: Caps = DEFAULT_CAPS) -> SigmaClass:
    """The class generated by all s (x) A for s in the given subunit set
    (default: every subunit) plus identities, closed under composition
    and under tensoring with object identities on either side."""
    if subunit_set is None:
        subunit_set = enumerate_subunits(mc)
    origin: dict[int, str] = {}
    for a in range(len(mc.objects)):
        origin.setdefault(mc.identity(a), f"id_{mc.obj_label(a)}")
    for s in subunit_set:
        for a in range(len(mc.objects)):
            m = _tensor_right(mc, s.rep, a)
            origin.setdefault(
                m, f"{mc.obj_label(s.domain)}(x){mc.obj_label(a)}")
    members = set(origin)
    changed = True
    while changed:
        changed = False
        for f, g in itertools.product(tuple(members), repeat=2):
            if mc.dom(g) == mc.cod(f):
                h = mc.compose(g, f)
                if h not in members:
                    members.add(h)
                    origin[h] = "composition"
                    changed = True
        for f in tuple(members):
            for a in range(len(mc.objects)):
                for h in (_tensor_right(mc, f, a), _tensor_left(mc, a, f)):
                    if h not in members:
                        members.add(h)
                        origin[h] = "tensor"
                        changed = True
    return SigmaClass(mc, frozenset(members), origin)


def verify_right_fractions(mc: MonoidalCategory, sig: SigmaClass) -> PropertyReport:
    """Closure properties plus the two right-fraction conditions, all
    checked exhaustively with witnesses on failure."""
    members = sig.members
    for a in range(len(mc.objects)):
        if mc.identity(a) not in members:
            return PropertyReport("right_fractions", False,
                                  witness=("identity", a),
                                  details={"reason": "missing identity"})
    for f in members:
        for g in members:
            if mc.dom(g) == mc.cod(f) and mc.compose(g, f) not in members:
                return PropertyReport("right_fractions", False,
                                      witness=("composition", g, f),
                                      details={"reason": "not composition closed"})
        for a in range(len(mc.objects)):
            if _tensor_right(mc, f, a) not in members or \
                    _tensor_left(mc, a, f) not in members:
                return PropertyReport("right_fractions", False,
                                      witness=("tensor", f, a),
                                      details={"reason": "not tensor closed"})
    # Ore square: every cospan (sigma, f) admits a span (t, g), t in Sigma
    for s in members:
        for f in mc.morphisms:
            if f.cod != mc.cod(s):
                continue
            filler = _ore_filler(mc, sig, s, f.mid)
            if filler is None:
                return PropertyReport("right_fractions", False,
                                      witness=("ore", s, f.mid))
    # cancellation: t o f = t o g forces f o sigma = g o sigma
    for t in members:
        c = mc.dom(t)
        for b in range(len(mc.objects)):
            for f, g in itertools.combinations(mc.hom(b, c), 2):
                if mc.compose(t, f) != mc.compose(t, g):
                    continue
                if not any(mc.compose(f, s) == mc.compose(g, s)
                           for s in members if mc.cod(s) == b):
                    return PropertyReport("right_fractions", False,
                                          witness=("cancellation", t, f, g))
    return PropertyReport("right_fractions", True,
                          details={"size": len(members)})


def _ore_filler(mc: MonoidalCategory, sig: SigmaClass, s: int,
                f: int) -> tuple[int, int] | None:
    """For s: A -> C in the class and f: B -> C, the first (t, g) with
    t: P -> B in the class, g: P -> A, and s o g = f o t."""
    a, b = mc.dom(s), mc.dom(f)
    for p in range(len(mc.objects)):
        for t in mc.hom(p, b):
            if t not in sig.members:
                continue
            ft = mc.compose(f, t)
            for g in mc.hom(p, a):
                if mc.compose(s, g) == ft:
                    return t, g
    return None


def _span_equivalent(mc: MonoidalCategory, sig: SigmaClass, x: FractionSpan,
                     y: FractionSpan) -> bool:
    """Spans with common refinement: u, u' with equal denominator legs in
    the class and equal numerator legs."""
    p1, p2 = mc.dom(x.denominator), mc.dom(y.denominator)
    for r in range(len(mc.objects)):
        for u in mc.hom(r, p1):
            du = mc.compose(x.denominator, u)
            if du not in sig.members:
                continue
            nu = mc.compose(x.numerator, u)
            for u2 in mc.hom(r, p2):
                if mc.compose(y.denominator, u2) == du and \
                        mc.compose(y.numerator, u2) == nu:
                    return True
    return False


def localise(mc: MonoidalCategory, sig: SigmaClass,
             caps: Caps = DEFAULT_CAPS) -> LocalisedCategory:
    """The category of right fractions at the class.

    Objects are unchanged; a morphism A -> B is an equivalence class of
    spans (d: P -> A in the class, n: P -> B), canonically represented
    by its least (d, n) pair; composition finds an Ore filler, and the
    result is checked independent of the filler chosen.  The quotient
    functor sends f to the class of (identity, f) and is verified to
    invert the class and to be strict monoidal on the quotient tensor.
    """
    check = verify_right_fractions(mc, sig)
    if not check.holds:
        raise BuildError(f"no calculus of right fractions: {check.witness}", check)

    spans_by_pair: dict[tuple[int, int], list[FractionSpan]] = {}
    for d in sorted(sig.members):
        p = mc.dom(d)
        a = mc.cod(d)
        for b in range(len(mc.objects)):
            for n in mc.hom(p, b):
                spans_by_pair.setdefault((a, b), []).append(FractionSpan(d, n))

    uf = UnionFind()
    for pair, spans in spans_by_pair.items():
        for span in spans:
            uf.add(span)
        for x, y in itertools.combinations(spans, 2):
            if _span_equivalent(mc, sig, x, y):
                uf.union(x, y)

    raw_classes = sorted(uf.classes(), key=lambda c: min(c))
    span_class: dict[FractionSpan, int] = {}
    classes: list[frozenset[FractionSpan]] = []
    reps: list[FractionSpan] = []
    mor_defs: list[tuple[int, int, FractionSpan]] = []
    order: list[tuple[tuple[int, int], frozenset]] = []
    for group in raw_classes:
        rep = min(group)
        a, b = mc.cod(rep.denominator), mc.cod(rep.numerator)
        order.append(((a, b), group))
    order.sort(key=lambda item: (item[0], min(item[1])))
    for (a, b), group in order:
        k = len(classes)
        classes.append(frozenset(group))
        rep = min(group)
        reps.append(rep)
        mor_defs.append((a, b, rep))
        for span in group:
            span_class[span] = k

    def classify(d: int, n: int) -> int:
        span = FractionSpan(d, n)
        if span in span_class:
            return span_class[span]
        raise ConsistencyError("span escaped the enumerated quotient",
                               details={"span": span})

    n_loc = len(classes)
    morphisms = tuple(
        Morphism(k, a, b, f"[{mc.mor_label(rep.denominator)};"
                          f"{mc.mor_label(rep.numerator)}]")
        for k, (a, b, rep) in enumerate(mor_defs))
    identity = tuple(classify(mc.identity(a), mc.identity(a))
                     for a in range(len(mc.objects)))

    def compose_spans(beta: FractionSpan, alpha: FractionSpan) -> int:
        results = set()
        p1, p2 = mc.dom(alpha.denominator), mc.dom(beta.denominator)
        for r in range(len(mc.objects)):
            for t in mc.hom(r, p1):
                if t not in sig.members:
                    continue
                mid_path = mc.compose(alpha.numerator, t)
                for g in mc.hom(r, p2):
                    if mc.compose(beta.denominator, g) != mid_path:
                        continue
                    results.add(classify(mc.compose(alpha.denominator, t),
                                         mc.compose(beta.numerator, g)))
        if not results:
            raise ConsistencyError("no Ore filler found during composition",
                                   details={"alpha": alpha, "beta": beta})
        if len(results) > 1:
            raise ConsistencyError("composition depends on the Ore filler",
                                   details={"alpha": alpha, "beta": beta,
                                            "classes": sorted(results)})
        return results.pop()

    compose = {}
    for kf, (a1, b1, rep_f) in enumerate(mor_defs):
        for kg, (a2, b2, rep_g) in enumerate(mor_defs):
            if a2 != b1:
                continue
            compose[(kg, kf)] = compose_spans(rep_g, rep_f)

    cat = FinCategory(mc.objects, morphisms, identity, compose)

    t_obj = tuple(tuple(mc.tensor_obj(a, b) for b in range(len(mc.objects)))
                  for a in range(len(mc.objects)))
    t_mor = {}
    for kf, (_, _, rf) in enumerate(mor_defs):
        for kg, (_, _, rg) in enumerate(mor_defs):
            t_mor[(kf, kg)] = classify(
                mc.tensor_mor(rf.denominator, rg.denominator),
                mc.tensor_mor(rf.numerator, rg.numerator))
    braiding = tuple(
        tuple(classify(mc.identity(mc.tensor_obj(a, b)), mc.braiding(a, b))
              for b in range(len(mc.objects)))
        for a in range(len(mc.objects)))
    loc = assert_valid(MonoidalCategory(cat, MonoidalData(mc.unit, t_obj,
                                                          t_mor, braiding)),
                       caps=caps)

    q_mor = tuple(classify(mc.identity(f.dom), f.mid) for f in mc.morphisms)
    quotient = CatFunctor(mc, loc, tuple(range(len(mc.objects))), q_mor)
    quotient.check_functor()
    quotient.check_strict_monoidal()
    for s in sig.members:
        if is_iso(loc, q_mor[s]) is None:
            raise ConsistencyError("quotient functor fails to invert the class",
                                   details={"member": s})
    return LocalisedCategory(loc, mc, sig, quotient, tuple(classes), tuple(reps))


def is_simple(mc: MonoidalCategory) -> bool:
    """No subunits except the identity class."""
    subs = enumerate_subunits(mc)
    return len(subs) == 1 and mc.identity(mc.unit) in subs[0].cls.members


def simple_quotient(mc: MonoidalCategory, caps: Caps = DEFAULT_CAPS) -> LocalisedCategory:
    """Invert every tensored subunit inclusion at once; the result is
    verified simple."""
    loc = localise(mc, sigma(mc, caps=caps), caps=caps)
    if not is_simple(loc.category):
        raise ConsistencyError("simple quotient still has proper subunits",
                               details={"objects": loc.category.objects})
    return loc


def localisation_factor(loc: LocalisedCategory, functor: CatFunctor) -> CatFunctor:
    """Factor a functor that inverts the class through the quotient.

    The factor sends a span class to target(numerator) after the inverse
    of target(denominator); it is checked well defined on every class
    member, functorial, and exactly equal to the original on images of
    the quotient.
    """
    mc = loc.source
    target = functor.target
    for s in loc.sigma.members:
        if is_iso(target, functor.on_mor(s)) is None:
            raise BuildError(f"functor does not invert class member {s}")
    mor_map = []
    for members in loc.classes:
        values = set()
        for span in members:
            inv = is_iso(target, functor.on_mor(span.denominator))
            values.add(target.compose(functor.on_mor(span.numerator), inv))
        if len(values) != 1:
            raise ConsistencyError("factor is not constant on a span class",
                                   details={"values": sorted(values)})
        mor_map.append(values.pop())
    factored = CatFunctor(loc.category, target, functor.obj_map, tuple(mor_map))
    factored.check_functor()
    for f in mc.morphisms:
        if factored.on_mor(loc.quotient.on_mor(f.mid)) != functor.on_mor(f.mid):
            raise ConsistencyError("factor does not recover the functor",
                                   details={"morphism": f.mid})
    return factored


def restriction_localisation_equivalence(mc: MonoidalCategory, s: Subunit,
                                         caps: Caps = DEFAULT_CAPS) -> PropertyReport:
    """Restriction to s is the localisation at its tensored inclusions:
    the coreflector inverts them, and the induced factor puts each
    localised hom-set in bijection with the restricted one."""
    from .restriction import restriction_category
    loc = localise(mc, sigma(mc, [s], caps=caps), caps=caps)
    rc = restriction_category(mc, s, caps=caps)
    factored = localisation_factor(loc, rc.coreflector)
    sub = rc.subcategory
    for a in range(len(mc.objects)):
        for b in range(len(mc.objects)):
            loc_hom = [m.mid for m in loc.category.morphisms
                       if m.dom == a and m.cod == b]
            images = [factored.on_mor(k) for k in loc_hom]
            target_hom = sub.hom(factored.on_obj(a), factored.on_obj(b))
            if len(set(images)) != len(images) or set(images) != set(target_hom):
                return PropertyReport(
                    "restriction_is_localisation", False, witness=(a, b),
                    details={"loc_hom": loc_hom, "images": images,
                             "restricted_hom": list(target_hom)})
    return PropertyReport("restriction_is_localisation", True,
                          details={"subunit": s.rep})
