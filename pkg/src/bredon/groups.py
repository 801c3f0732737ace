"""Finite groups, subgroup lattices, the subconjugacy poset and the orbit category.

Group elements are indices ``0 .. order-1``.  Products follow the
multiplication table: ``mul[a][b]`` is ``a*b``.  For permutation groups
``(a*b)(x) = a(b(x))``, so actions built from permutations are left actions.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

DEFAULT_ORDER_BOUND = 64


class NotAGroup(ValueError):
    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(f"{message} (witness {witness})" if witness else message)
        self.witness = witness


class OrderBoundExceeded(ValueError):
    pass


class SourceTargetMismatch(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Subgroup:
    """A subgroup as a sorted tuple of element indices of its parent."""

    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: int) -> bool:
        return g in self._set

    @cached_property
    def _set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def issubset(self, other: Subgroup) -> bool:
        return self._set <= other._set

    def __repr__(self) -> str:
        return f"Subgroup{list(self.elements)}"


class FiniteGroup:
    """A finite group given by its multiplication table.

    ``generators`` is an ordered generating list; actions of the group on
    complexes are specified by the images of these generators.
    """

    def __init__(self, mul: Sequence[Sequence[int]], generators: Sequence[int] | None = None,
                 perms: Sequence[tuple[int, ...]] | None = None, name: str | None = None):
        self.mul = tuple(tuple(int(x) for x in row) for row in mul)
        self.order = len(self.mul)
        self.name = name
        self.perms = tuple(perms) if perms is not None else None
        self._validate()
        self.identity = next(e for e in range(self.order)
                             if all(self.mul[e][a] == a == self.mul[a][e] for a in range(self.order)))
        self.inverse = tuple(next(b for b in range(self.order) if self.mul[a][b] == self.identity)
                             for a in range(self.order))
        self.generators = tuple(generators) if generators is not None else self._greedy_generators()

    # construction ------------------------------------------------------

    @classmethod
    def from_multiplication_table(cls, table: Sequence[Sequence[int]], name: str | None = None) -> FiniteGroup:
        return cls(table, name=name)

    @classmethod
    def from_permutations(cls, generators: Sequence[Sequence[int]], *, degree: int | None = None,
                          order_bound: int = DEFAULT_ORDER_BOUND, name: str | None = None) -> FiniteGroup:
        """Closure of the generators, elements numbered in shortlex order of their words."""
        gens = [tuple(int(x) for x in g) for g in generators]
        if degree is None:
            degree = max((len(g) for g in gens), default=0)
        for g in gens:
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise NotAGroup(f"{list(g)} is not a permutation of 0..{degree - 1}")
        ident = tuple(range(degree))
        elements = [ident]
        index = {ident: 0}
        queue = deque([ident])
        while queue:
            w = queue.popleft()
            for s in gens:
                x = tuple(w[s[i]] for i in range(degree))
                if x not in index:
                    if len(elements) >= order_bound:
                        raise OrderBoundExceeded(f"group order exceeds {order_bound}")
                    index[x] = len(elements)
                    elements.append(x)
                    queue.append(x)
        table = [[index[tuple(a[b[i]] for i in range(degree))] for b in elements] for a in elements]
        return cls(table, generators=[index[g] for g in gens], perms=elements, name=name)

    def _validate(self) -> None:
        n = self.order
        if n == 0:
            raise NotAGroup("empty table")
        for i, row in enumerate(self.mul):
            if len(row) != n:
                raise NotAGroup("table is not square", (i,))
            for j, v in enumerate(row):
                if not 0 <= v < n:
                    raise NotAGroup("entry out of range", (i, j))
        ids = [e for e in range(n) if all(self.mul[e][a] == a == self.mul[a][e] for a in range(n))]
        if not ids:
            raise NotAGroup("no identity element")
        e = ids[0]
        for a in range(n):
            if not any(self.mul[a][b] == e and self.mul[b][a] == e for b in range(n)):
                raise NotAGroup("element has no inverse", (a,))
        m = self.mul
        for a, b, c in product(range(n), repeat=3):
            if m[m[a][b]][c] != m[a][m[b][c]]:
                raise NotAGroup("associativity fails", (a, b, c))

    def _greedy_generators(self) -> tuple[int, ...]:
        gens: list[int] = []
        span = {self.identity}
        for g in range(self.order):
            if g not in span:
                gens.append(g)
                span = set(self.closure(gens))
        return tuple(gens)

    # arithmetic -------------------------------------------------------

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteGroup) and self.mul == other.mul

    def __hash__(self) -> int:
        return hash(self.mul)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or 'order ' + str(self.order)})"

    def m(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def product(self, elems: Iterable[int]) -> int:
        out = self.identity
        for x in elems:
            out = self.mul[out][x]
        return out

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, g: int, h: int) -> int:
        """``g h g^-1``."""
        return self.mul[self.mul[g][h]][self.inverse[g]]

    def closure(self, gens: Iterable[int]) -> list[int]:
        gens = list(gens)
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            a = queue.popleft()
            for s in gens:
                b = self.mul[a][s]
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return sorted(seen)

    def subgroup(self, elems: Iterable[int]) -> Subgroup:
        """The subgroup generated by ``elems``."""
        return Subgroup(tuple(self.closure(elems)))

    @cached_property
    def trivial_subgroup(self) -> Subgroup:
        return Subgroup((self.identity,))

    @cached_property
    def whole(self) -> Subgroup:
        return Subgroup(tuple(range(self.order)))

    def is_subgroup(self, elems: Iterable[int]) -> bool:
        s = set(elems)
        if self.identity not in s:
            return False
        return all(self.mul[a][b] in s for a in s for b in s) and all(self.inverse[a] in s for a in s)

    def conjugate(self, g: int, H: Subgroup) -> Subgroup:
        """``g H g^-1``."""
        return Subgroup(tuple(sorted(self.conj(g, h) for h in H.elements)))

    def normalizer(self, H: Subgroup) -> Subgroup:
        return Subgroup(tuple(g for g in range(self.order) if self.conjugate(g, H) == H))

    def left_coset(self, g: int, H: Subgroup) -> frozenset[int]:
        return frozenset(self.mul[g][h] for h in H.elements)

    def coset_rep(self, g: int, H: Subgroup) -> int:
        """Smallest element of ``gH``."""
        return min(self.mul[g][h] for h in H.elements)

    def coset_reps(self, H: Subgroup) -> list[int]:
        return sorted({self.coset_rep(g, H) for g in range(self.order)})

    def word(self, g: int) -> list[int]:
        """A shortest word in generator positions evaluating to ``g``."""
        return self._words[g]

    @cached_property
    def _words(self) -> dict[int, list[int]]:
        words = {self.identity: []}
        queue = deque([self.identity])
        while queue:
            a = queue.popleft()
            for k, s in enumerate(self.generators):
                b = self.mul[a][s]
                if b not in words:
                    words[b] = words[a] + [k]
                    queue.append(b)
        if len(words) != self.order:
            raise NotAGroup("generator list does not generate the group")
        return words

    # subgroup structure -----------------------------------------------------

    @cached_property
    def subgroups(self) -> tuple[Subgroup, ...]:
        """All subgroups, sorted by (order, elements)."""
        found = {self.trivial_subgroup}
        frontier = [self.trivial_subgroup]
        while frontier:
            nxt = []
            for S in frontier:
                for g in range(self.order):
                    if g in S:
                        continue
                    T = Subgroup(tuple(self.closure(S.elements + (g,))))
                    if T not in found:
                        found.add(T)
                        nxt.append(T)
            frontier = nxt
        return tuple(sorted(found, key=lambda s: (s.order, s.elements)))

    def subgroup_index(self, H: Subgroup) -> int:
        return self._subgroup_pos[H]

    @cached_property
    def _subgroup_pos(self) -> dict[Subgroup, int]:
        return {H: i for i, H in enumerate(self.subgroups)}

    def subconjugate(self, H: Subgroup, K: Subgroup) -> bool:
        """True iff some ``g^-1 H g`` is contained in ``K``."""
        return any(self.conjugate(self.inverse[g], H).issubset(K) for g in range(self.order))

    @cached_property
    def conjugacy_poset(self) -> ConjugacyClassPoset:
        return conjugacy_poset(self)

    def subgroup_group(self, H: Subgroup) -> tuple[FiniteGroup, tuple[int, ...]]:
        """``H`` as a group in its own right, plus the embedding into ``self``.

        The local element ``i`` corresponds to ``H.elements[i]``.
        """
        pos = {g: i for i, g in enumerate(H.elements)}
        table = [[pos[self.mul[a][b]] for b in H.elements] for a in H.elements]
        name = f"subgroup of order {H.order} of {self.name}" if self.name else None
        return FiniteGroup(table, name=name), H.elements

    def to_document(self) -> dict:
        doc: dict = {"order": self.order, "table": [list(r) for r in self.mul],
                     "generators": list(self.generators)}
        doc["subgroups"] = [list(H.elements) for H in self.subgroups]
        return doc


def enumerate_subgroups(G: FiniteGroup) -> list[Subgroup]:
    return list(G.subgroups)


# standard groups ------------------------------------------------------------


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], generators=[], name="1")


def cyclic_group(n: int) -> FiniteGroup:
    if n == 1:
        return trivial_group()
    gen = tuple((i + 1) % n for i in range(n))
    return FiniteGroup.from_permutations([gen], name=f"Z/{n}")


def symmetric_group(n: int) -> FiniteGroup:
    if n <= 1:
        return trivial_group()
    if n == 2:
        return FiniteGroup.from_permutations([(1, 0)], name="S_2")
    transposition = (1, 0) + tuple(range(2, n))
    cycle = tuple((i + 1) % n for i in range(n))
    return FiniteGroup.from_permutations([transposition, cycle], name=f"S_{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return FiniteGroup.from_permutations([rot, ref], name=f"D_{n}")


def klein_four() -> FiniteGroup:
    return FiniteGroup.from_permutations([(1, 0, 3, 2), (2, 3, 0, 1)], name="Z/2xZ/2")


# the subconjugacy poset ---------------------------------------------------


@dataclass(frozen=True)
class ConjugacyClassPoset:
    """Conjugacy classes of subgroups ordered by subconjugacy."""

    classes: tuple[tuple[Subgroup, ...], ...]
    leq: tuple[tuple[bool, ...], ...]
    class_of: dict

    def representative(self, i: int) -> Subgroup:
        return self.classes[i][0]

    def index(self, H: Subgroup) -> int:
        return self.class_of[H]

    def le(self, H: Subgroup, K: Subgroup) -> bool:
        return self.leq[self.class_of[H]][self.class_of[K]]

    def __len__(self) -> int:
        return len(self.classes)


def conjugacy_poset(G: FiniteGroup) -> ConjugacyClassPoset:
    classes: list[list[Subgroup]] = []
    class_of: dict[Subgroup, int] = {}
    for H in G.subgroups:
        if H in class_of:
            continue
        members = sorted({G.conjugate(g, H) for g in range(G.order)})
        for K in members:
            class_of[K] = len(classes)
        classes.append(members)
    reps = [c[0] for c in classes]
    leq = tuple(tuple(G.subconjugate(a, b) for b in reps) for a in reps)
    return ConjugacyClassPoset(tuple(tuple(c) for c in classes), leq, class_of)


# the orbit category ---------------------------------------------------------


@dataclass(frozen=True, order=True)
class OrbitMorphism:
    """The G-map ``G/H -> G/K``, ``xH -> x g K``; ``g`` is the minimal coset element."""

    source: Subgroup
    target: Subgroup
    coset: int


class OrbitCategory:
    """Objects are all subgroups; ``hom(H, K)`` lists cosets ``gK`` with ``g^-1 H g ⊆ K``."""

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.objects = group.subgroups
        self._homs: dict[tuple[Subgroup, Subgroup], tuple[OrbitMorphism, ...]] = {}

    def hom(self, H: Subgroup, K: Subgroup) -> tuple[OrbitMorphism, ...]:
        key = (H, K)
        if key not in self._homs:
            G = self.group
            reps = []
            for g in G.coset_reps(K):
                if G.conjugate(G.inv(g), H).issubset(K):
                    reps.append(OrbitMorphism(H, K, g))
            self._homs[key] = tuple(reps)
        return self._homs[key]

    def morphism(self, H: Subgroup, K: Subgroup, g: int) -> OrbitMorphism:
        G = self.group
        if not G.conjugate(G.inv(g), H).issubset(K):
            raise ValueError(f"element {g} does not define a map G/{H} -> G/{K}")
        return OrbitMorphism(H, K, G.coset_rep(g, K))

    def identity(self, H: Subgroup) -> OrbitMorphism:
        return OrbitMorphism(H, H, self.group.coset_rep(self.group.identity, H))

    def compose(self, f: OrbitMorphism, g: OrbitMorphism) -> OrbitMorphism:
        """``g ∘ f`` (first ``f``, then ``g``)."""
        if f.target != g.source:
            raise SourceTargetMismatch(f"{f} then {g}")
        G = self.group
        return OrbitMorphism(f.source, g.target, G.coset_rep(G.m(f.coset, g.coset), g.target))

    def is_iso(self, f: OrbitMorphism) -> bool:
        return f.source.order == f.target.order

    def all_morphisms(self) -> list[OrbitMorphism]:
        return [f for H in self.objects for K in self.objects for f in self.hom(H, K)]

    def as_set_map(self, f: OrbitMorphism) -> dict[frozenset[int], frozenset[int]]:
        """The underlying map of coset sets, for cross-checks."""
        G = self.group
        return {G.left_coset(x, f.source): G.left_coset(G.m(x, f.coset), f.target)
                for x in G.coset_reps(f.source)}


def hom_orbit(C: OrbitCategory, H: Subgroup, K: Subgroup) -> list[OrbitMorphism]:
    return list(C.hom(H, K))


def compose_orbit(C: OrbitCategory, f: OrbitMorphism, g: OrbitMorphism) -> OrbitMorphism:
    return C.compose(f, g)


def fixed_cosets(G: FiniteGroup, H: Subgroup, K: Subgroup) -> list[int]:
    """Representatives of cosets ``xK`` with ``h x K = x K`` for all ``h`` in ``H``."""
    out = []
    for x in G.coset_reps(K):
        coset = G.left_coset(x, K)
        if all(G.m(h, x) in coset for h in H.elements):
            out.append(x)
    return out
