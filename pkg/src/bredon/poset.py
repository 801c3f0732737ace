"""The poset route: stabilizer functor on the face poset of X/G and its derived limit."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .coeff import CoefficientSystem, GroupMismatch, NotAFunctor
from .gcomplex import GSimplicialComplex, QuotientComplex, apply_subdivision_policy, quotient
from .groups import ConjugacyClassPoset, Subgroup, conjugacy_poset
from .linalg import AbHom, FGAbGroup, IntMatrix, assemble, direct_sum
from .linalg.cochain import CochainComplex, cohomology

Cell = tuple[int, int]


@dataclass
class StratifiedPoset:
    """Cells of X/G under the face relation, labeled by stabilizer class."""

    elements: list[Cell]
    quotient: QuotientComplex
    stratum: dict[Cell, int]
    classes: ConjugacyClassPoset

    def leq(self, x: Cell, y: Cell) -> bool:
        return self.quotient.leq(x, y)

    def below(self, y: Cell) -> frozenset[Cell]:
        return self.quotient._below[y]

    def covers(self) -> list[tuple[Cell, Cell]]:
        return [(f, y) for y in self.elements for f in self.quotient.faces[y]]

    def comparable_pairs(self) -> list[tuple[Cell, Cell]]:
        return [(x, y) for y in self.elements for x in sorted(self.below(y))]

    def stratification_violations(self) -> list[tuple[Cell, Cell]]:
        """Pairs ``x < y`` where the class of y is not below the class of x."""
        out = []
        for x, y in self.comparable_pairs():
            if not self.classes.leq[self.stratum[y]][self.stratum[x]]:
                out.append((x, y))
        return out

    def chains(self, n: int) -> list[tuple[Cell, ...]]:
        return self._chains[n] if n < len(self._chains) else []

    @cached_property
    def _chains(self) -> list[list[tuple[Cell, ...]]]:
        above: dict[Cell, list[Cell]] = {x: [] for x in self.elements}
        for x, y in self.comparable_pairs():
            above[x].append(y)
        out: list[list[tuple[Cell, ...]]] = [[(x,) for x in sorted(self.elements)]]
        while out[-1]:
            nxt = [c + (y,) for c in out[-1] for y in sorted(above[c[-1]])]
            if not nxt:
                break
            out.append(nxt)
        return out


def stratified_poset(X: GSimplicialComplex) -> StratifiedPoset:
    Q = quotient(X)
    return StratifiedPoset(list(Q.cells), Q, dict(Q.strata), conjugacy_poset(X.group))


@dataclass
class FunctorReport:
    commutative: bool
    constructible: bool
    stalks: bool
    witnesses: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.commutative and self.constructible and self.stalks


@dataclass
class PosetFunctor:
    """Values on poset elements and maps ``value(x) -> value(y)`` for every ``x <= y``."""

    poset: StratifiedPoset
    value: dict[Cell, FGAbGroup]
    maps: dict[tuple[Cell, Cell], AbHom]
    stabilizer: dict[Cell, Subgroup] = field(default_factory=dict)

    def map(self, x: Cell, y: Cell) -> AbHom:
        if x == y:
            return AbHom.identity(self.value[x])
        return self.maps[(x, y)]

    def check_commutativity(self) -> list[tuple[Cell, Cell, Cell]]:
        bad = []
        for x, z in self.poset.comparable_pairs():
            for y in self.poset.below(z):
                if y != x and x in self.poset.below(y):
                    if not self.map(x, z).equals(self.map(y, z) @ self.map(x, y)):
                        bad.append((x, y, z))
        return bad

    def check_constructibility(self) -> list[tuple[Cell, Cell]]:
        bad = []
        for x, y in self.poset.comparable_pairs():
            if self.poset.stratum[x] == self.poset.stratum[y] and not self.map(x, y).is_iso():
                bad.append((x, y))
        return bad

    def to_document(self) -> dict:
        P = self.poset
        return {
            "elements": [{"cell": list(x), "stratum": P.stratum[x],
                          "stratum_representative": list(P.classes.representative(P.stratum[x]).elements),
                          "stabilizer": list(self.stabilizer[x].elements) if x in self.stabilizer else None,
                          "value": self.value[x].to_document(),
                          "presentation": {"generators": self.value[x].ngens,
                                           "relations": self.value[x].relations.to_document()}}
                         for x in P.elements],
            "covers": [{"lower": list(x), "upper": list(y), "matrix": self.map(x, y).matrix.to_document()}
                       for x, y in P.covers()],
        }


def stabilizer_functor(X: GSimplicialComplex, E: CoefficientSystem) -> PosetFunctor:
    """``x ↦ E(G/G_σ)`` at the lexicographic lift σ of x; ``x <= y`` gives ``E`` of the face inclusion."""
    if X.group != E.group:
        raise GroupMismatch("complex and coefficient system are over different groups")
    data = X.orbit_data
    G = X.group
    P = stratified_poset(X)
    stab = {(n, k): data.stabilizers[n][k] for n, k in P.elements}
    value = {x: E.value(stab[x]) for x in P.elements}
    maps = {}
    for x, y in P.comparable_pairs():
        top = data.reps[y[0]][y[1]]
        face = [f for f in combinations(top, x[0] + 1) if data.locate[f][0] == x[1]]
        if len(face) != 1:
            raise NotAFunctor(f"cell {x} occurs {len(face)} times as a face of {y}")
        h = data.locate[face[0]][1]
        maps[(x, y)] = E.map_along(stab[y], stab[x], G.inv(h))
    return PosetFunctor(P, value, maps, stab)


def check_functor(F: PosetFunctor, X: GSimplicialComplex | None = None, E: CoefficientSystem | None = None,
                  *, max_witnesses: int = 5) -> FunctorReport:
    """Commutativity on all comparable triples, constructibility, and the stalk property when X, E are given."""
    comm = F.check_commutativity()
    cons = F.check_constructibility()
    witnesses = [{"kind": "commutativity", "chain": [list(c) for c in t]} for t in comm[:max_witnesses]]
    witnesses += [{"kind": "constructibility", "pair": [list(c) for c in t]} for t in cons[:max_witnesses]]
    stalks_ok = True
    if X is not None and E is not None:
        bad = stalk_violations(F, X, E)
        stalks_ok = not bad
        witnesses += bad[:max_witnesses]
    return FunctorReport(not comm, not cons, stalks_ok, witnesses)


def stalk_violations(F: PosetFunctor, X: GSimplicialComplex, E: CoefficientSystem) -> list[dict]:
    """Every lift σ of x has ``E(G/G_σ) ≅ value(x)`` through the conjugation morphism."""
    data = X.orbit_data
    G = X.group
    out = []
    for (n, k) in F.poset.elements:
        rep_stab = data.stabilizers[n][k]
        for s in data.members[n][k]:
            _, h = data.locate[s]
            Gs = X.stabilizer(s)
            m = E.map_along(Gs, rep_stab, G.inv(h))
            if not (E.value(Gs).isomorphic(F.value[(n, k)]) and m.is_iso()):
                out.append({"kind": "stalk", "cell": [n, k], "lift": list(s)})
    return out


def poset_limit_complex(F: PosetFunctor) -> CochainComplex:
    """Chains ``x_0 < ... < x_n`` carry ``value(x_n)``; the last face uses the structure map."""
    P = F.poset
    levels = P._chains
    if not levels or not levels[0]:
        return CochainComplex((), ())
    groups, index = [], []
    for chains in levels:
        groups.append(direct_sum([F.value[c[-1]] for c in chains]))
        index.append({c: i for i, c in enumerate(chains)})
    diffs = []
    for n in range(len(levels) - 1):
        blocks: dict[tuple[int, int], IntMatrix] = {}
        for i, c in enumerate(levels[n + 1]):
            top_size = F.value[c[-1]].ngens
            for k in range(n + 2):
                j = index[n][c[:k] + c[k + 1:]]
                if k <= n:
                    m = IntMatrix.identity(top_size)
                else:
                    m = F.map(c[-2], c[-1]).matrix
                blocks[(i, j)] = m.scale(-1 if k % 2 else 1)
        diffs.append(assemble([F.value[c[-1]].ngens for c in levels[n + 1]],
                              [F.value[c[-1]].ngens for c in levels[n]], blocks))
    C = CochainComplex(tuple(groups), tuple(diffs))
    return C


def cohomology_poset(X: GSimplicialComplex, E: CoefficientSystem, *, subdivide: str | int = "auto",
                     method: str = "auto", check: bool = True) -> list[FGAbGroup]:
    if X.group != E.group:
        raise GroupMismatch("complex and coefficient system are over different groups")
    X = apply_subdivision_policy(X, subdivide)
    F = stabilizer_functor(X, E)
    if check:
        bad = F.check_commutativity()
        if bad:
            raise NotAFunctor(f"structure maps do not commute along {bad[0]}")
    C = poset_limit_complex(F)
    if check:
        C.validate()
    return cohomology(C, method=method)
