"""Finite posets, semilattices, quantales and their downset completions.

Everything here is index-based: a poset holds a tuple of element labels
and a boolean matrix ``leq``.  Meets and joins are computed by scan;
absence of a bound is a first-class result (``None``), not an error.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .caps import DEFAULT_CAPS, Caps
from .errors import BuildError, MalformedTableError


# ---------------------------------------------------------------------------
# posets


@dataclass(frozen=True)
class FinPoset:
    elements: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        n = len(self.elements)
        if len(self.leq) != n or any(len(row) != n for row in self.leq):
            raise MalformedTableError("leq matrix shape does not match elements")
        for i in range(n):
            if not self.leq[i][i]:
                raise BuildError(f"leq not reflexive at {self.elements[i]}")
        for i in range(n):
            for j in range(n):
                if i != j and self.leq[i][j] and self.leq[j][i]:
                    raise BuildError(
                        f"leq not antisymmetric on {self.elements[i]}, {self.elements[j]}")
                for k in range(n):
                    if self.leq[i][j] and self.leq[j][k] and not self.leq[i][k]:
                        raise BuildError(
                            f"leq not transitive via {self.elements[j]}")

    @staticmethod
    def from_pairs(elements, pairs) -> "FinPoset":
        """Build from strict-or-not `x <= y` pairs; reflexive-transitive closure
        is taken, antisymmetry is verified by the constructor."""
        index = {x: i for i, x in enumerate(elements)}
        n = len(elements)
        leq = [[i == j for j in range(n)] for i in range(n)]
        for x, y in pairs:
            if x not in index or y not in index:
                raise MalformedTableError(f"unknown element in pair ({x}, {y})")
            leq[index[x]][index[y]] = True
        for k in range(n):
            for i in range(n):
                if leq[i][k]:
                    row_k = leq[k]
                    row_i = leq[i]
                    for j in range(n):
                        if row_k[j]:
                            row_i[j] = True
        return FinPoset(tuple(elements), tuple(tuple(row) for row in leq))

    @staticmethod
    def chain(labels) -> "FinPoset":
        labels = list(labels)
        return FinPoset.from_pairs(labels, [(labels[i], labels[i + 1])
                                            for i in range(len(labels) - 1)])

    def __len__(self):
        return len(self.elements)

    def index(self, label) -> int:
        return self.elements.index(label)

    def le(self, i: int, j: int) -> bool:
        return self.leq[i][j]

    def upper_bounds(self, subset) -> list[int]:
        return [u for u in range(len(self)) if all(self.leq[i][u] for i in subset)]

    def lower_bounds(self, subset) -> list[int]:
        return [u for u in range(len(self)) if all(self.leq[u][i] for i in subset)]

    def join(self, subset) -> int | None:
        """Least upper bound of a set of indices, or None."""
        ubs = self.upper_bounds(subset)
        least = [u for u in ubs if all(self.leq[u][v] for v in ubs)]
        return least[0] if least else None

    def meet(self, subset) -> int | None:
        lbs = self.lower_bounds(subset)
        greatest = [u for u in lbs if all(self.leq[v][u] for v in lbs)]
        return greatest[0] if greatest else None

    def bottom(self) -> int | None:
        return self.join(())

    def top(self) -> int | None:
        return self.meet(())

    def maximal(self, subset) -> list[int]:
        return [i for i in subset
                if not any(j != i and self.leq[i][j] for j in subset)]

    def down_closure(self, subset) -> frozenset[int]:
        return frozenset(i for i in range(len(self))
                         if any(self.leq[i][j] for j in subset))

    def is_downset(self, subset) -> bool:
        sub = set(subset)
        return all(i in sub for j in sub for i in range(len(self)) if self.leq[i][j])

    def is_directed(self, subset, include_empty: bool = True) -> bool:
        subset = list(subset)
        if not subset:
            return include_empty
        return all(any(self.leq[a][c] and self.leq[b][c] for c in subset)
                   for a in subset for b in subset)

    def is_lattice(self) -> bool:
        n = len(self)
        if n == 0:
            return False
        pairs = itertools.combinations_with_replacement(range(n), 2)
        return (self.bottom() is not None and self.top() is not None
                and all(self.join((i, j)) is not None and self.meet((i, j)) is not None
                        for i, j in pairs))

    def covers(self) -> list[tuple[int, int]]:
        """Cover pairs (i, j): i < j with nothing strictly between."""
        out = []
        n = len(self)
        for i in range(n):
            for j in range(n):
                if i == j or not self.leq[i][j]:
                    continue
                if not any(k != i and k != j and self.leq[i][k] and self.leq[k][j]
                           for k in range(n)):
                    out.append((i, j))
        return out


def poset_isomorphism(p: FinPoset, q: FinPoset) -> tuple[int, ...] | None:
    """An order isomorphism p -> q as an index map, or None.

    Backtracking over candidates matched by up/down degree; fine at the
    sizes this package handles.
    """
    n = len(p)
    if n != len(q):
        return None

    def profile(poset, i):
        down = sum(poset.leq[j][i] for j in range(len(poset)))
        up = sum(poset.leq[i][j] for j in range(len(poset)))
        return (down, up)

    p_prof = [profile(p, i) for i in range(n)]
    q_prof = [profile(q, i) for i in range(n)]
    assignment: list[int] = []

    def extend(i: int) -> bool:
        if i == n:
            return True
        for cand in range(n):
            if cand in assignment or p_prof[i] != q_prof[cand]:
                continue
            ok = all((p.leq[j][i] == q.leq[assignment[j]][cand])
                     and (p.leq[i][j] == q.leq[cand][assignment[j]])
                     for j in range(i))
            if ok:
                assignment.append(cand)
                if extend(i + 1):
                    return True
                assignment.pop()
        return False

    return tuple(assignment) if extend(0) else None


# ---------------------------------------------------------------------------
# semilattices and quantales


@dataclass(frozen=True)
class Semilattice:
    """Finite meet-semilattice with a top element.

    ``meet`` is a full binary table of indices; it must agree with the
    order (x <= y iff x meet y = x).
    """

    poset: FinPoset
    meet_table: tuple[tuple[int, ...], ...]
    top: int

    def __post_init__(self):
        n = len(self.poset)
        if len(self.meet_table) != n or any(len(r) != n for r in self.meet_table):
            raise MalformedTableError("meet table shape mismatch")
        m = self.meet_table
        for i in range(n):
            if m[i][self.top] != i or m[self.top][i] != i:
                raise BuildError("top is not a unit for meet")
            if m[i][i] != i:
                raise BuildError("meet not idempotent")
            for j in range(n):
                if m[i][j] != m[j][i]:
                    raise BuildError("meet not commutative")
                if (m[i][j] == i) != self.poset.leq[i][j]:
                    raise BuildError("meet disagrees with the order")
                for k in range(n):
                    if m[m[i][j]][k] != m[i][m[j][k]]:
                        raise BuildError("meet not associative")

    @staticmethod
    def from_poset(poset: FinPoset) -> "Semilattice":
        n = len(poset)
        top = poset.top()
        if top is None:
            raise BuildError("poset has no top element")
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                meet = poset.meet((i, j))
                if meet is None:
                    raise BuildError(
                        f"no meet of {poset.elements[i]} and {poset.elements[j]}")
                row.append(meet)
            table.append(tuple(row))
        return Semilattice(poset, tuple(table), top)

    @property
    def elements(self):
        return self.poset.elements

    def __len__(self):
        return len(self.poset)

    def meet(self, i: int, j: int) -> int:
        return self.meet_table[i][j]


@dataclass(frozen=True)
class Quantale:
    """Finite commutative-or-not quantale: a complete lattice with a
    monoid multiplication distributing over all joins in each argument."""

    poset: FinPoset
    mult: tuple[tuple[int, ...], ...]
    unit: int
    commutative: bool = field(init=False, default=False)

    def __post_init__(self):
        n = len(self.poset)
        if len(self.mult) != n or any(len(r) != n for r in self.mult):
            raise MalformedTableError("mult table shape mismatch")
        if not self.poset.is_lattice():
            raise BuildError("carrier is not a complete lattice")
        m = self.mult
        for i in range(n):
            if m[i][self.unit] != i or m[self.unit][i] != i:
                raise BuildError("unit law fails")
            for j in range(n):
                for k in range(n):
                    if m[m[i][j]][k] != m[i][m[j][k]]:
                        raise BuildError("multiplication not associative")
        # distributivity over all joins reduces, over a finite lattice, to
        # binary joins and the bottom element
        bot = self.poset.bottom()
        join = self.poset.join
        for i in range(n):
            if m[i][bot] != bot or m[bot][i] != bot:
                raise BuildError("multiplication does not preserve bottom")
            for j in range(n):
                for k in range(n):
                    if m[i][join((j, k))] != join((m[i][j], m[i][k])):
                        raise BuildError("left distributivity fails")
                    if m[join((j, k))][i] != join((m[j][i], m[k][i])):
                        raise BuildError("right distributivity fails")
        object.__setattr__(
            self, "commutative",
            all(m[i][j] == m[j][i] for i in range(n) for j in range(n)))

    @staticmethod
    def from_semilattice(lat: Semilattice) -> "Quantale":
        """A finite lattice with meet as multiplication; a frame."""
        if not lat.poset.is_lattice():
            raise BuildError("semilattice lacks joins, cannot form a quantale")
        return Quantale(lat.poset, lat.meet_table, lat.top)

    @property
    def elements(self):
        return self.poset.elements

    def __len__(self):
        return len(self.poset)


@dataclass(frozen=True)
class FinMonoid:
    elements: tuple[str, ...]
    mult: tuple[tuple[int, ...], ...]
    unit: int

    def __post_init__(self):
        n = len(self.elements)
        if len(self.mult) != n or any(len(r) != n for r in self.mult):
            raise MalformedTableError("mult table shape mismatch")
        m = self.mult
        for i in range(n):
            if m[i][self.unit] != i or m[self.unit][i] != i:
                raise BuildError("monoid unit law fails")
            for j in range(n):
                for k in range(n):
                    if m[m[i][j]][k] != m[i][m[j][k]]:
                        raise BuildError("monoid not associative")

    def is_commutative(self) -> bool:
        n = len(self.elements)
        return all(self.mult[i][j] == self.mult[j][i]
                   for i in range(n) for j in range(n))


@dataclass(frozen=True)
class DownsetLattice:
    """All downward-closed subsets of a base poset, ordered by inclusion,
    with the embedding x -> down-closure of {x}."""

    base: FinPoset
    sets: tuple[frozenset[int], ...]
    poset: FinPoset
    embedding: tuple[int, ...]

    def index_of(self, downset: frozenset[int]) -> int:
        return self.sets.index(downset)


# ---------------------------------------------------------------------------
# operations


def _downset_label(base: FinPoset, s: frozenset[int]) -> str:
    if not s:
        return "{}"
    return "{" + ",".join(base.elements[i] for i in sorted(s)) + "}"


def downsets(lat: Semilattice | FinPoset, caps: Caps = DEFAULT_CAPS) -> DownsetLattice:
    """All downsets of the carrier poset under inclusion.

    This is the free completion of a finite semilattice to a frame; the
    result is checked to be a frame and the embedding to preserve finite
    meets and the top.
    """
    base = lat.poset if isinstance(lat, Semilattice) else lat
    n = len(base)
    caps.check("max_downset_base", n)
    all_sets = []
    for bits in itertools.product((False, True), repeat=n):
        subset = frozenset(i for i in range(n) if bits[i])
        if base.is_downset(subset):
            all_sets.append(subset)
    all_sets.sort(key=lambda s: (len(s), sorted(s)))
    labels = [_downset_label(base, s) for s in all_sets]
    leq = tuple(tuple(a <= b for b in all_sets) for a in all_sets)
    poset = FinPoset(tuple(labels), leq)
    embedding = tuple(all_sets.index(base.down_closure((i,))) for i in range(n))
    result = DownsetLattice(base, tuple(all_sets), poset, embedding)
    if not is_frame(poset, caps=caps):
        raise BuildError("downset lattice failed the frame laws")
    return result


def directed_downsets(lat: Semilattice | FinPoset, include_empty: bool = True,
                      caps: Caps = DEFAULT_CAPS) -> DownsetLattice:
    """The sub-poset of downsets that are upward directed.

    On a finite poset these are the principal downsets, plus the empty
    set when ``include_empty`` (the default; it is the bottom of the
    free preframe).
    """
    full = downsets(lat, caps=caps)
    keep = [k for k, s in enumerate(full.sets)
            if full.base.is_directed(s, include_empty=include_empty)]
    return _restrict_downsets(full, keep)


def finitely_bounded_downsets(lat: Semilattice | FinPoset,
                              caps: Caps = DEFAULT_CAPS) -> DownsetLattice:
    """Downsets generated by finitely many elements; on a finite poset
    that is every downset, but the generation property is still checked."""
    full = downsets(lat, caps=caps)
    keep = [k for k, s in enumerate(full.sets)
            if full.base.down_closure(full.base.maximal(s)) == s]
    return _restrict_downsets(full, keep)


def _restrict_downsets(full: DownsetLattice, keep: list[int]) -> DownsetLattice:
    sets = tuple(full.sets[k] for k in keep)
    labels = tuple(full.poset.elements[k] for k in keep)
    leq = tuple(tuple(a <= b for b in sets) for a in sets)
    poset = FinPoset(labels, leq)
    embedding = []
    for i in range(len(full.base)):
        principal = full.base.down_closure((i,))
        embedding.append(sets.index(principal))
    return DownsetLattice(full.base, sets, poset, tuple(embedding))


def quantale_subunits(q: Quantale) -> Semilattice:
    """The idempotents below the unit, as a sub-semilattice of the
    quantale; meets are given by the multiplication.  Always a frame."""
    if not q.commutative:
        raise BuildError("quantale is not commutative")
    members = [i for i in range(len(q))
               if q.mult[i][i] == i and q.poset.leq[i][q.unit]]
    labels = tuple(q.elements[i] for i in members)
    leq = tuple(tuple(q.poset.leq[a][b] for b in members) for a in members)
    poset = FinPoset(labels, leq)
    pos = {element: k for k, element in enumerate(members)}
    meet_table = tuple(tuple(pos[q.mult[a][b]] for b in members) for a in members)
    lat = Semilattice(poset, meet_table, pos[q.unit])
    if not is_frame(poset):
        raise BuildError("quantale idempotents failed the frame laws")
    return lat


def ideal_quantale(monoid: FinMonoid) -> Quantale:
    """The quantale of ideals of a commutative monoid: subsets closed
    under multiplication by every element, multiplied elementwise, with
    the whole monoid as unit and unions as joins."""
    if not monoid.is_commutative():
        raise BuildError("monoid is not commutative")
    n = len(monoid.elements)
    ideals = []
    for bits in itertools.product((False, True), repeat=n):
        subset = frozenset(i for i in range(n) if bits[i])
        if all(monoid.mult[x][m] in subset for x in subset for m in range(n)):
            ideals.append(subset)
    ideals.sort(key=lambda s: (len(s), sorted(s)))
    labels = []
    for s in ideals:
        labels.append("{" + ",".join(sorted(monoid.elements[i] for i in s)) + "}"
                      if s else "{}")
    leq = tuple(tuple(a <= b for b in ideals) for a in ideals)
    poset = FinPoset(tuple(labels), leq)
    def product(a, b):
        # the elementwise product of ideals of a commutative monoid is
        # itself an ideal, so no generation step is needed
        return frozenset(monoid.mult[x][y] for x in a for y in b)
    mult = tuple(tuple(ideals.index(product(a, b)) for b in ideals)
                 for a in ideals)
    everything = ideals.index(frozenset(range(n)))
    return Quantale(poset, mult, everything)


def is_distributive(lat: Semilattice | FinPoset) -> bool:
    """Exhaustive x /\\ (y \\/ z) = (x /\\ y) \\/ (x /\\ z) over a lattice;
    False when the carrier is not a lattice at all."""
    poset = lat.poset if isinstance(lat, Semilattice) else lat
    if not poset.is_lattice():
        return False
    n = len(poset)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                lhs = poset.meet((x, poset.join((y, z))))
                rhs = poset.join((poset.meet((x, y)), poset.meet((x, z))))
                if lhs != rhs:
                    return False
    return True


def is_frame(lat: Semilattice | FinPoset, caps: Caps = DEFAULT_CAPS) -> bool:
    """Complete lattice in which finite meets distribute over arbitrary
    joins.

    Over a finite carrier every supremum is a finite join, so the law
    reduces exactly to bounded-lattice structure plus binary
    distributivity; ``is_frame_exhaustive`` spells out the full
    quantification and is cross-checked against this in the tests.
    """
    poset = lat.poset if isinstance(lat, Semilattice) else lat
    return poset.is_lattice() and is_distributive(poset)


def is_frame_exhaustive(lat: Semilattice | FinPoset,
                        caps: Caps = DEFAULT_CAPS) -> bool:
    """The frame law quantified over every subset of the carrier; only
    feasible for small carriers, and capped accordingly."""
    poset = lat.poset if isinstance(lat, Semilattice) else lat
    if not poset.is_lattice():
        return False
    n = len(poset)
    caps.check("max_subunit_family_base", n)
    for size in range(n + 1):
        for subset in itertools.combinations(range(n), size):
            sup = poset.join(subset)
            if sup is None:
                return False
            for x in range(n):
                distributed = poset.join(tuple(poset.meet((x, s)) for s in subset))
                if poset.meet((x, sup)) != distributed:
                    return False
    return True


def is_preframe(lat: Semilattice | FinPoset, include_empty: bool = True,
                caps: Caps = DEFAULT_CAPS) -> bool:
    """Meet-semilattice with top in which every directed subset has a
    supremum and binary meets distribute over directed suprema."""
    poset = lat.poset if isinstance(lat, Semilattice) else lat
    n = len(poset)
    caps.check("max_subunit_family_base", n)
    if poset.top() is None:
        return False
    if any(poset.meet((i, j)) is None for i in range(n) for j in range(n)):
        return False
    for size in range(0 if include_empty else 1, n + 1):
        for subset in itertools.combinations(range(n), size):
            if not poset.is_directed(subset, include_empty=include_empty):
                continue
            sup = poset.join(subset)
            if sup is None:
                return False
            for x in range(n):
                distributed = poset.join(tuple(poset.meet((x, s)) for s in subset))
                if poset.meet((x, sup)) != distributed:
                    return False
    return True
