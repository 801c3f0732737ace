"""Coefficient systems: contravariant functors from the orbit category to f.g. abelian groups."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .groups import FiniteGroup, OrbitCategory, OrbitMorphism, Subgroup
from .linalg import AbHom, FGAbGroup, IntMatrix, direct_sum, vstack
from .linalg.abelian import preimage_lattice, subquotient
from .linalg.matrix import block_diag
from .linalg.smith import solve


class NotAnAction(ValueError):
    pass


class NotAFunctor(ValueError):
    pass


class GroupMismatch(ValueError):
    pass


MapRule = Callable[[OrbitMorphism], IntMatrix]


class CoefficientSystem:
    """``E(G/H)`` for every subgroup H and ``E(f): E(G/K) -> E(G/H)`` for ``f: G/H -> G/K``.

    Maps come from ``rule`` on demand and are cached.  ``overrides`` replaces
    individual maps; it exists for literal input and for negative controls.
    """

    def __init__(self, group: FiniteGroup, values: Mapping[Subgroup, FGAbGroup], rule: MapRule,
                 name: str = "E", overrides: Mapping[OrbitMorphism, IntMatrix] | None = None):
        self.group = group
        self.orbits = OrbitCategory(group)
        self.values = dict(values)
        missing = [H for H in group.subgroups if H not in self.values]
        if missing:
            raise ValueError(f"no value given at {missing[0]}")
        self._rule = rule
        self.name = name
        self.overrides = dict(overrides or {})
        self._cache: dict[OrbitMorphism, AbHom] = {}

    def __repr__(self) -> str:
        return f"CoefficientSystem({self.name} over {self.group!r})"

    def value(self, H: Subgroup) -> FGAbGroup:
        return self.values[H]

    def map(self, f: OrbitMorphism) -> AbHom:
        if f not in self._cache:
            M = self.overrides.get(f)
            if M is None:
                M = self._rule(f)
            self._cache[f] = AbHom(self.values[f.target], self.values[f.source], M)
        return self._cache[f]

    def map_along(self, H: Subgroup, K: Subgroup, g: int) -> AbHom:
        """``E`` of the map ``G/H -> G/K`` given by any element of the coset ``gK``."""
        return self.map(self.orbits.morphism(H, K, g))

    def with_override(self, f: OrbitMorphism, matrix: IntMatrix, name: str | None = None) -> CoefficientSystem:
        over = dict(self.overrides)
        over[f] = matrix
        return CoefficientSystem(self.group, self.values, self._rule, name or f"{self.name}*", over)

    def is_zero(self) -> bool:
        return all(v.is_zero for v in self.values.values())

    def to_document(self) -> dict:
        """Literal form: every value and every non-identity map."""
        pos = {H: i for i, H in enumerate(self.group.subgroups)}
        maps = []
        for f in self.orbits.all_morphisms():
            if f == self.orbits.identity(f.source):
                continue
            maps.append({"source": pos[f.source], "target": pos[f.target], "coset": f.coset,
                         "matrix": self.map(f).matrix.to_dense()})
        return {"kind": "literal",
                "values": [{"subgroup": list(H.elements), "generators": self.values[H].ngens,
                            "relations": self.values[H].relations.T.to_dense()}
                           for H in self.group.subgroups],
                "maps": maps}


# constructors ---------------------------------------------------------------


def constant_system(G: FiniteGroup, A: FGAbGroup | None = None) -> CoefficientSystem:
    A = FGAbGroup.free(1) if A is None else A
    ident = IntMatrix.identity(A.ngens)
    return CoefficientSystem(G, {H: A for H in G.subgroups}, lambda f: ident, name=f"constant {A}")


def zero_system(G: FiniteGroup) -> CoefficientSystem:
    return constant_system(G, FGAbGroup.zero())


def representable_system(G: FiniteGroup, K: Subgroup) -> CoefficientSystem:
    """Free abelian on ``hom(-, G/K)``; maps are precomposition."""
    orbits = OrbitCategory(G)
    values = {H: FGAbGroup.free(len(orbits.hom(H, K))) for H in G.subgroups}

    def rule(f: OrbitMorphism) -> IntMatrix:
        src = orbits.hom(f.target, K)
        dst = {phi: i for i, phi in enumerate(orbits.hom(f.source, K))}
        entries: dict[int, dict[int, int]] = {}
        for j, phi in enumerate(src):
            i = dst[orbits.compose(f, phi)]
            entries.setdefault(i, {})[j] = 1
        return IntMatrix(len(dst), len(src), entries)

    return CoefficientSystem(G, values, rule, name=f"representable at order-{K.order} subgroup {list(K.elements)}")


def extend_action(G: FiniteGroup, module: FGAbGroup, generator_matrices: Sequence[IntMatrix]) -> list[IntMatrix]:
    """Matrices for every element from generator matrices, along shortest words."""
    if len(generator_matrices) != len(G.generators):
        raise NotAnAction(f"{len(generator_matrices)} matrices for {len(G.generators)} generators")
    n = module.ngens
    for k, A in enumerate(generator_matrices):
        if A.shape != (n, n):
            raise NotAnAction(f"generator matrix {k} has shape {A.shape}, expected {(n, n)}")
    out = []
    for g in range(G.order):
        M = IntMatrix.identity(n)
        for k in G.word(g):
            M = M @ generator_matrices[k]
        out.append(M)
    return out


def check_action(G: FiniteGroup, module: FGAbGroup, matrices: Sequence[IntMatrix]) -> None:
    for g, A in enumerate(matrices):
        if not AbHom(module, module, A).is_well_defined():
            raise NotAnAction(f"element {g} does not respect the module relations")
    if not module.is_zero_map_into(matrices[G.identity] - IntMatrix.identity(module.ngens)):
        raise NotAnAction("identity acts nontrivially")
    for a in range(G.order):
        for b in range(G.order):
            diff = matrices[a] @ matrices[b] - matrices[G.m(a, b)]
            if not module.is_zero_map_into(diff):
                raise NotAnAction(f"action fails to be multiplicative at ({a}, {b})")


def fixed_point_system(G: FiniteGroup, module: FGAbGroup, generator_matrices: Sequence[IntMatrix] | None = None,
                       *, element_matrices: Sequence[IntMatrix] | None = None) -> CoefficientSystem:
    """``G/H -> M^H``; the map of ``f = gK: G/H -> G/K`` is ``x -> g·x``."""
    if element_matrices is None:
        if generator_matrices is None:
            raise NotAnAction("no action given")
        element_matrices = extend_action(G, module, generator_matrices)
    rho = list(element_matrices)
    if len(rho) != G.order:
        raise NotAnAction("need one matrix per group element")
    check_action(G, module, rho)
    n = module.ngens
    ident = IntMatrix.identity(n)
    bases: dict[Subgroup, IntMatrix] = {}
    values: dict[Subgroup, FGAbGroup] = {}
    for H in G.subgroups:
        others = [h for h in H.elements if h != G.identity]
        if not others:
            L = ident
        else:
            stacked = vstack([rho[h] - ident for h in others])
            L = preimage_lattice(stacked, block_diag([module.relations] * len(others)))
        sq = subquotient(L, module.relations)
        bases[H] = sq.basis
        values[H] = sq.group

    def rule(f: OrbitMorphism) -> IntMatrix:
        src, dst = bases[f.target], bases[f.source]
        if src.ncols == 0 or dst.ncols == 0:
            return IntMatrix(dst.ncols, src.ncols)
        x = solve(dst, rho[f.coset] @ src)
        if x is None:
            raise NotAnAction(f"element {f.coset} does not carry fixed points to fixed points")
        return x

    system = CoefficientSystem(G, values, rule, name=f"fixed points of a rank-{n} module")
    system.fixed_bases = bases  # type: ignore[attr-defined]
    return system


def permutation_module(G: FiniteGroup, H: Subgroup | None = None) -> tuple[FGAbGroup, list[IntMatrix]]:
    """``Z[G/H]`` with left translation; ``H`` defaults to the trivial subgroup."""
    H = G.trivial_subgroup if H is None else H
    reps = G.coset_reps(H)
    pos = {c: i for i, c in enumerate(reps)}
    mats = []
    for g in range(G.order):
        entries = {pos[G.coset_rep(G.m(g, c), H)]: {j: 1} for j, c in enumerate(reps)}
        mats.append(IntMatrix(len(reps), len(reps), entries))
    return FGAbGroup.free(len(reps)), mats


def coinduced_system(G: FiniteGroup) -> CoefficientSystem:
    """``G/H -> Map(G/H, Z)``: fixed points of the regular permutation module."""
    M, mats = permutation_module(G)
    return fixed_point_system(G, M, element_matrices=mats)


def restrict_system(E: CoefficientSystem, H: Subgroup) -> CoefficientSystem:
    """``E`` along induction ``Orb_H -> Orb_G``; H is presented by ``subgroup_group``."""
    G = E.group
    Hgrp, emb = G.subgroup_group(H)

    def up(L: Subgroup) -> Subgroup:
        return Subgroup(tuple(sorted(emb[i] for i in L.elements)))

    values = {L: E.value(up(L)) for L in Hgrp.subgroups}

    def rule(f: OrbitMorphism) -> IntMatrix:
        return E.map_along(up(f.source), up(f.target), emb[f.coset]).matrix

    return CoefficientSystem(Hgrp, values, rule, name=f"{E.name} restricted to order {H.order}")


def literal_system(G: FiniteGroup, values: Mapping[Subgroup, FGAbGroup],
                   maps: Mapping[OrbitMorphism, IntMatrix]) -> CoefficientSystem:
    """User-supplied values and maps; identities may be omitted, as may maps touching a zero generator set."""
    orbits = OrbitCategory(G)
    given = {orbits.morphism(f.source, f.target, f.coset): M for f, M in maps.items()}

    def rule(f: OrbitMorphism) -> IntMatrix:
        if f in given:
            return given[f]
        src, dst = values[f.target], values[f.source]
        if f.source == f.target and f == orbits.identity(f.source):
            return IntMatrix.identity(src.ngens)
        if src.ngens == 0 or dst.ngens == 0:
            return IntMatrix(dst.ngens, src.ngens)
        raise NotAFunctor(f"no matrix given for {f}")

    return CoefficientSystem(G, values, rule, name="literal")


def direct_sum_system(systems: Sequence[CoefficientSystem]) -> CoefficientSystem:
    G = systems[0].group
    values = {H: direct_sum([E.value(H) for E in systems]) for H in G.subgroups}
    return CoefficientSystem(G, values, lambda f: block_diag([E.map(f).matrix for E in systems]),
                             name=" + ".join(E.name for E in systems))


# functoriality --------------------------------------------------------------


@dataclass
class FunctorialityReport:
    passed: bool
    checked: int = 0
    witnesses: list[dict] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.passed


def _describe(f: OrbitMorphism) -> dict:
    return {"source": list(f.source.elements), "target": list(f.target.elements), "coset": f.coset}


def check_functoriality(E: CoefficientSystem, *, max_witnesses: int = 5) -> FunctorialityReport:
    """Identities, composites, relation-compatibility and invertibility on isomorphisms, exhaustively."""
    O = E.orbits
    report = FunctorialityReport(True)

    def fail(kind: str, **info):
        report.passed = False
        if len(report.witnesses) < max_witnesses:
            report.witnesses.append({"kind": kind, **info})

    for f in O.all_morphisms():
        report.checked += 1
        try:
            h = E.map(f)
        except (ValueError, NotAFunctor) as exc:
            fail("missing", morphism=_describe(f), message=str(exc))
            continue
        if not h.is_well_defined():
            fail("relations", morphism=_describe(f))
        if f == O.identity(f.source) and not h.equals(AbHom.identity(E.value(f.source))):
            fail("identity", morphism=_describe(f))
        if O.is_iso(f) and not h.is_iso():
            fail("isomorphism", morphism=_describe(f))
    if not report.passed:
        return report
    for f in O.all_morphisms():
        for K in O.objects:
            for g in O.hom(f.target, K):
                report.checked += 1
                lhs = E.map(O.compose(f, g))
                rhs = E.map(f) @ E.map(g)
                if not lhs.equals(rhs):
                    fail("composition", first=_describe(f), second=_describe(g))
    return report


def require_functorial(E: CoefficientSystem) -> None:
    rep = check_functoriality(E, max_witnesses=1)
    if not rep:
        raise NotAFunctor(f"coefficient system fails functoriality: {rep.witnesses[0]}")
