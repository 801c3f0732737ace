"""Executable checks of the structural properties over a seeded corpus."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import standard
from .cellular import assemble_complex, bredon_cohomology, induced_map, restriction_map
from .coeff import (CoefficientSystem, coinduced_system, constant_system, fixed_point_system, representable_system,
                    restrict_system, zero_system)
from .csupp import bredon_csupp, les_open_closed
from .gcomplex import (GPair, GSimplicialComplex, SimplicialMap, cone, disjoint_union,
                       fixed_subcomplex, induce, quotient, regularize, subdivision_retraction)
from .groups import FiniteGroup, Subgroup, cyclic_group, symmetric_group, trivial_group
from .linalg import FGAbGroup, IntMatrix, hstack, vstack
from .linalg.cochain import (CochainMap, cohomology, cohomology_group, direct_sum_complex,
                             induced_on_cohomology, long_exact_sequence, mapping_cone)
from .poset import cohomology_poset

Systems = Callable[[FiniteGroup], list[tuple[str, CoefficientSystem]]]


# corpus ---------------------------------------------------------------------


@dataclass
class CorpusEntry:
    name: str
    complex: GSimplicialComplex
    subdivisions: int = 0


@dataclass
class Corpus:
    """Groups with regularized complexes and a coefficient-system family per group."""

    seed: int
    groups: dict[str, FiniteGroup]
    complexes: dict[str, list[CorpusEntry]]
    systems: Systems

    def entries(self) -> Iterable[tuple[str, FiniteGroup, CorpusEntry]]:
        for gname, G in self.groups.items():
            for e in self.complexes[gname]:
                yield gname, G, e

    def __len__(self) -> int:
        return sum(len(v) for v in self.complexes.values())


def sign_character(G: FiniteGroup) -> list[int] | None:
    """Parity of left multiplication, if it is a nontrivial character."""
    signs = []
    for g in range(G.order):
        perm = G.mul[g]
        seen, parity = set(), 1
        for start in range(G.order):
            if start in seen:
                continue
            length, x = 0, start
            while x not in seen:
                seen.add(x)
                x = perm[x]
                length += 1
            if length % 2 == 0:
                parity = -parity
        signs.append(parity)
    return signs if -1 in signs else None


def sign_system(G: FiniteGroup) -> CoefficientSystem | None:
    signs = sign_character(G)
    if signs is None:
        return None
    return fixed_point_system(G, FGAbGroup.free(1), element_matrices=[IntMatrix.diagonal([s]) for s in signs])


def standard_systems(G: FiniteGroup) -> list[tuple[str, CoefficientSystem]]:
    """Constant Z and Z/2, representable at {e} and at a middle subgroup, coinduced, sign."""
    out = [("constant Z", constant_system(G)),
           ("constant Z/2", constant_system(G, FGAbGroup.from_normal_form(0, [2]))),
           ("representable {e}", representable_system(G, G.trivial_subgroup)),
           ("coinduced", coinduced_system(G))]
    middle = [H for H in G.subgroups if 1 < H.order < G.order]
    if middle:
        out.append((f"representable order {middle[0].order}", representable_system(G, middle[0])))
    sgn = sign_system(G)
    if sgn is not None:
        out.append(("sign", sgn))
    return out


def all_constructor_systems(G: FiniteGroup) -> list[tuple[str, CoefficientSystem]]:
    """Every constructor: constants, representables at every subgroup, fixed-point modules, zero."""
    out = [("constant Z", constant_system(G)),
           ("constant Z/2", constant_system(G, FGAbGroup.from_normal_form(0, [2]))),
           ("constant Z + Z/3", constant_system(G, FGAbGroup.from_normal_form(1, [3]))),
           ("zero", zero_system(G)),
           ("coinduced", coinduced_system(G))]
    for i, K in enumerate(G.subgroups):
        out.append((f"representable #{i} (order {K.order})", representable_system(G, K)))
    sgn = sign_system(G)
    if sgn is not None:
        out.append(("sign", sgn))
    return out


def corpus_groups() -> dict[str, FiniteGroup]:
    return {"Z/2": cyclic_group(2), "Z/3": cyclic_group(3), "Z/4": cyclic_group(4), "S_3": symmetric_group(3)}


def complexes_for(G: FiniteGroup, rng: random.Random, n_random: int = 3) -> list[tuple[str, GSimplicialComplex]]:
    e = G.trivial_subgroup
    free = standard.orbit(G, e)
    circle = standard.circle_for(G)
    out = [("point", standard.point(G)),
           ("free orbit", free)]
    seen = set()
    for H in G.subgroups:
        cls = G.conjugacy_poset.index(H)
        if 1 < H.order < G.order and cls not in seen:
            seen.add(cls)
            out.append((f"orbit G/H, |H|={H.order}", standard.orbit(G, H)))
    out += [("suspension of free orbit", standard.suspension(free)),
            ("cone on free orbit", cone(free)),
            ("circle", circle),
            ("cone on circle", cone(circle)),
            ("point + circle", disjoint_union(standard.point(G), circle)),
            ("induced squares", standard.induced_circle(G, e))]
    if G.order == 2:
        out.append(("reflection square", standard.reflection_square(G)))
        out.append(("reflection hexagon", standard.reflection_cycle(G, 6)))
    octa = standard.octahedron_for(G)
    if octa is not None:
        out.append(("octahedron", octa))
    for H in sorted(G.subgroups, key=lambda H: -H.order):
        if 3 <= len(G.coset_reps(H)) <= 4:
            out.append((f"simplex boundary on G/H, |H|={H.order}", standard.simplex_boundary_on(G, H)))
            break
    if G.order <= 4:
        out.append(("join of free orbits", standard.join(free, free)))
    for k in range(n_random):
        out.append((f"random equivariant #{k}", standard.random_equivariant(G, rng)))
    return out


def default_corpus(seed: int = 0, *, n_random: int = 3, systems: Systems = standard_systems) -> Corpus:
    rng = random.Random(seed)
    groups = corpus_groups()
    complexes = {}
    for gname, G in groups.items():
        entries = []
        for name, X in complexes_for(G, rng, n_random):
            report = X.validate()
            if not report.valid:
                raise ValueError(f"corpus complex {name} over {gname} is invalid: {report.violations}")
            Y, k = regularize(X)
            entries.append(CorpusEntry(name, Y, k))
        complexes[gname] = entries
    return Corpus(seed, groups, complexes, systems)


def random_trivial_complexes(seed: int, count: int = 20, max_simplices: int = 60) -> list[GSimplicialComplex]:
    rng = random.Random(seed)
    return [standard.random_complex(rng, max_simplices=max_simplices) for _ in range(count)]


# reports --------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: list[dict] = field(default_factory=list)
    skipped: list[dict] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, **witness) -> None:
        self.failures.append(witness)

    def to_document(self) -> dict:
        return {"check": self.name, "passed": self.passed, "cases": self.cases,
                "seconds": round(self.seconds, 3), "failures": self.failures, "skipped": self.skipped}


@dataclass
class VerdictReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_document(self, *, timings: bool = True) -> dict:
        docs = [c.to_document() for c in self.checks]
        if not timings:
            for d in docs:
                d.pop("seconds")
        return {"passed": self.passed, "checks": docs}

    def table(self, *, timings: bool = True) -> str:
        width = max([len(c.name) for c in self.checks] + [5])
        lines = [f"{'check'.ljust(width)}  result  cases  failures" + ("  seconds" if timings else "")]
        for c in self.checks:
            line = f"{c.name.ljust(width)}  {'PASS' if c.passed else 'FAIL'}    {c.cases:5d}  {len(c.failures):8d}"
            if timings:
                line += f"  {c.seconds:7.2f}"
            lines.append(line)
            for w in c.failures[:3]:
                lines.append(f"    witness: {w}")
        return "\n".join(lines)


def _timed(name: str, body: Callable[[CheckResult], None]) -> CheckResult:
    res = CheckResult(name)
    t0 = time.perf_counter()
    body(res)
    res.seconds = time.perf_counter() - t0
    return res


def _forms(groups: list[FGAbGroup], top: int) -> list[str]:
    out = [str(g) for g in groups] + ["0"] * (top + 1 - len(groups))
    while len(out) > top + 1 and out[-1] == "0":
        out.pop()
    return out


def _same(a: list[FGAbGroup], b: list[FGAbGroup]) -> bool:
    n = max(len(a), len(b))
    return _forms(a, n - 1) == _forms(b, n - 1)


# checks ---------------------------------------------------------------------


def verify_normalization(corpus: Corpus, systems: Systems = all_constructor_systems) -> CheckResult:
    """Every orbit G/H: H^0 = E(G/H) and nothing above, by both routes."""
    def body(res: CheckResult):
        for gname, G in corpus.groups.items():
            for sname, E in systems(G):
                for H in G.subgroups:
                    X = standard.orbit(G, H)
                    for route, f in (("cellular", bredon_cohomology), ("poset", cohomology_poset)):
                        res.cases += 1
                        got = f(X, E)
                        if not (got and got[0].isomorphic(E.value(H)) and all(g.is_zero for g in got[1:])):
                            res.fail(group=gname, system=sname, orbit=list(H.elements), route=route,
                                     expected=str(E.value(H)), got=[str(g) for g in got])
    return _timed("normalization", body)


def verify_route_agreement(corpus: Corpus) -> CheckResult:
    def body(res: CheckResult):
        for gname, G, entry in corpus.entries():
            for sname, E in corpus.systems(G):
                res.cases += 1
                a = bredon_cohomology(entry.complex, E, subdivide="off")
                b = cohomology_poset(entry.complex, E, subdivide="off")
                if not _same(a, b):
                    res.fail(group=gname, complex=entry.name, system=sname,
                             cellular=[str(g) for g in a], poset=[str(g) for g in b])
    return _timed("route agreement", body)


def nonequivariant(X: GSimplicialComplex, A: FGAbGroup | None = None) -> list[FGAbGroup]:
    Y = X.with_trivial_group()
    return bredon_cohomology(Y, constant_system(Y.group, A), subdivide="off")


def verify_free_representable(corpus: Corpus, per_group: int = 10) -> CheckResult:
    """Representable at G/{e} against nonequivariant integral cohomology."""
    def body(res: CheckResult):
        for gname, G in corpus.groups.items():
            E = representable_system(G, G.trivial_subgroup)
            for entry in _equivariant_entries(corpus, gname)[:per_group]:
                res.cases += 1
                a = bredon_cohomology(entry.complex, E, subdivide="off")
                b = nonequivariant(entry.complex)
                if not _same(a, b):
                    res.fail(group=gname, complex=entry.name, bredon=[str(g) for g in a],
                             nonequivariant=[str(g) for g in b])
    return _timed("representable at G/e vs nonequivariant", body)


def verify_coinduced(corpus: Corpus, per_group: int = 10) -> CheckResult:
    """``G/H -> Map(G/H, Z)`` against nonequivariant integral cohomology."""
    def body(res: CheckResult):
        for gname, G in corpus.groups.items():
            E = coinduced_system(G)
            for entry in _equivariant_entries(corpus, gname)[:per_group]:
                res.cases += 1
                a = bredon_cohomology(entry.complex, E, subdivide="off")
                b = nonequivariant(entry.complex)
                if not _same(a, b):
                    res.fail(group=gname, complex=entry.name, bredon=[str(g) for g in a],
                             nonequivariant=[str(g) for g in b])
    return _timed("coinduced vs nonequivariant", body)


def _equivariant_entries(corpus: Corpus, gname: str) -> list[CorpusEntry]:
    """Entries ordered so that those with a nontrivial action on cells come first."""
    entries = corpus.complexes[gname]
    return sorted(entries, key=lambda e: e.name == "point")


def quotient_model(X: GSimplicialComplex) -> GSimplicialComplex:
    """A trivial-group simplicial model of X/G: the order complex of the orbit face poset."""
    return quotient(X).order_complex()


def verify_quotient_identity(corpus: Corpus) -> CheckResult:
    """Constant coefficients A: Bredon cohomology equals cohomology of X/G with coefficients A."""
    coeffs = [FGAbGroup.free(1), FGAbGroup.from_normal_form(0, [2]), FGAbGroup.from_normal_form(1, [3])]

    def body(res: CheckResult):
        for gname, G, entry in corpus.entries():
            Q = quotient_model(entry.complex)
            for A in coeffs:
                res.cases += 1
                a = bredon_cohomology(entry.complex, constant_system(G, A), subdivide="off")
                b = bredon_cohomology(Q, constant_system(Q.group, A), subdivide="off")
                if not _same(a, b):
                    res.fail(group=gname, complex=entry.name, coefficients=str(A),
                             bredon=[str(g) for g in a], quotient=[str(g) for g in b])
    return _timed("constant coefficients vs quotient", body)


def _split_pairs(X: GSimplicialComplex, rng: random.Random) -> list[tuple[set, set]]:
    """Orbit sets of (K, L) with K ∪ L = X: a random split of the facet orbits, plus (X, ∅)."""
    data = X.orbit_data
    all_orbits = {(len(s) - 1, data.locate[s][0]) for s in X.all_simplices()}
    facet_orbits = sorted({(len(s) - 1, data.locate[s][0]) for s in X.facets()})

    def closure(orbits):
        out = set()
        for n, k in orbits:
            rep = data.reps[n][k]
            for s in _faces(rep):
                out.add((len(s) - 1, data.locate[s][0]))
        return out

    pairs = [(all_orbits, set())]
    if len(facet_orbits) >= 2:
        chosen = [o for o in facet_orbits if rng.random() < 0.5] or facet_orbits[:1]
        rest = [o for o in facet_orbits if o not in chosen] or facet_orbits[-1:]
        pairs.append((closure(chosen), closure(rest)))
    return pairs


def _faces(s: tuple[int, ...]) -> list[tuple[int, ...]]:
    from itertools import combinations
    return [f for k in range(1, len(s) + 1) for f in combinations(s, k)]


def mayer_vietoris(X: GSimplicialComplex, E: CoefficientSystem, K: set, L: set):
    """Cohomology sequence of ``0 -> C(X) -> C(K) ⊕ C(L) -> C(K ∩ L) -> 0``."""
    CX = assemble_complex(X, E)
    CK = assemble_complex(X, E, keep=K)
    CL = assemble_complex(X, E, keep=L)
    CI = assemble_complex(X, E, keep=K & L)
    rK, rL = restriction_map(CX, CK), restriction_map(CX, CL)
    sK, sL = restriction_map(CK, CI), restriction_map(CL, CI)
    mid = direct_sum_complex(CK.complex, CL.complex)
    top = mid.top
    i = CochainMap(CX.complex, mid, tuple(vstack([rK.f(n), rL.f(n)]) for n in range(top + 1)))
    p = CochainMap(mid, CI.complex, tuple(hstack([sK.f(n), -sL.f(n)]) for n in range(top + 1)))
    return long_exact_sequence(i, p, names=("X", "K+L", "K∩L"))


def verify_closed_mv(corpus: Corpus, max_pairs: int | None = None) -> CheckResult:
    def body(res: CheckResult):
        rng = random.Random(corpus.seed + 1)
        for gname, G, entry in corpus.entries():
            for K, L in _split_pairs(entry.complex, rng):
                for sname, E in corpus.systems(G)[:3]:
                    if max_pairs is not None and res.cases >= max_pairs:
                        return
                    res.cases += 1
                    les = mayer_vietoris(entry.complex, E, K, L)
                    if not les.exact:
                        res.fail(group=gname, complex=entry.name, system=sname,
                                 nodes=[(n.label, str(n.homology)) for n in les.failures()])
    return _timed("closed Mayer-Vietoris", body)


def corpus_pairs(corpus: Corpus) -> list[tuple[str, str, GPair]]:
    """G-pairs: empty and full subcomplexes, fixed-point subcomplexes, and a facet-orbit closure."""
    out = []
    for gname, G, entry in corpus.entries():
        X = entry.complex
        candidates = [("empty", frozenset()), ("all", frozenset(X.all_simplices()))]
        fixed = fixed_subcomplex(X, G.whole).all_simplices()
        if fixed and len(fixed) < len(X):
            candidates.append(("G-fixed points", frozenset(fixed)))
        facets = X.facets()
        if len(facets) > 1:
            data = X.orbit_data
            orbit = data.members[len(facets[0]) - 1][data.locate[facets[0]][0]]
            sub = frozenset(f for s in orbit for f in _faces(s))
            if len(sub) < len(X):
                candidates.append(("one facet orbit", sub))
        for label, sub in candidates:
            out.append((gname, f"{entry.name} / {label}", GPair(X, sub)))
    return out


def verify_compact_supports(corpus: Corpus) -> CheckResult:
    """Open-closed sequence exact; relative and collapsed paths agree; A = ∅ gives ordinary cohomology."""
    def body(res: CheckResult):
        for gname, name, P in corpus_pairs(corpus):
            G = P.total.group
            for sname, E in corpus.systems(G)[:4]:
                res.cases += 1
                les = les_open_closed(P, E, subdivide="off")
                if not les.exact:
                    res.fail(group=gname, pair=name, system=sname, kind="exactness",
                             nodes=[(n.label, str(n.homology)) for n in les.failures()])
                rel = bredon_csupp(P, E, subdivide="off")
                col = bredon_csupp(P, E, path="collapsed", subdivide="off")
                if not _same(rel.groups, col.groups):
                    res.fail(group=gname, pair=name, system=sname, kind="paths",
                             relative=[str(g) for g in rel.groups], collapsed=[str(g) for g in col.groups])
                if not P.sub:
                    full = bredon_cohomology(P.total, E, subdivide="off")
                    if not _same(rel.groups, full):
                        res.fail(group=gname, pair=name, system=sname, kind="compact agreement",
                                 csupp=[str(g) for g in rel.groups], ordinary=[str(g) for g in full])
    return _timed("compact supports", body)


def verify_induction(corpus: Corpus, base_count: int = 5) -> CheckResult:
    """``G ×_H Y`` over G against Y over H with the restricted system, for every subgroup H."""
    def body(res: CheckResult):
        for gname, G in corpus.groups.items():
            bases = [e for e in corpus.complexes[gname] if e.name != "point"][:base_count]
            for H in G.subgroups:
                for entry in bases:
                    Y = entry.complex.restrict(H)
                    for sname, E in corpus.systems(G):
                        res.cases += 1
                        a = bredon_cohomology(induce(Y, G, H), E, subdivide="off")
                        b = bredon_cohomology(Y, restrict_system(E, H), subdivide="off")
                        if not _same(a, b):
                            res.fail(group=gname, subgroup=list(H.elements), complex=entry.name, system=sname,
                                     induced=[str(g) for g in a], restricted=[str(g) for g in b])
    return _timed("induction", body)


def is_quasi_isomorphism(f: CochainMap) -> bool:
    return all(g.is_zero for g in cohomology(mapping_cone(f)))


def verify_homotopy(corpus: Corpus) -> CheckResult:
    """Cone acyclicity and subdivision invariance, the latter also through an explicit quasi-isomorphism."""
    def body(res: CheckResult):
        for gname, G, entry in corpus.entries():
            X = entry.complex
            CX = cone(X)
            sd, phi = subdivision_retraction(X)
            pt = standard.point(G)
            for sname, E in corpus.systems(G):
                res.cases += 1
                c = bredon_cohomology(CX, E, subdivide="off")
                p = bredon_cohomology(pt, E)
                if not _same(c, p):
                    res.fail(group=gname, complex=entry.name, system=sname, kind="cone",
                             cone=[str(g) for g in c], point=[str(g) for g in p])
                a = bredon_cohomology(sd, E, subdivide="off")
                b = bredon_cohomology(X, E, subdivide="off")
                if not _same(a, b):
                    res.fail(group=gname, complex=entry.name, system=sname, kind="subdivision",
                             subdivided=[str(g) for g in a], original=[str(g) for g in b])
                elif X.dim <= 1 or len(X) <= 40:
                    if not is_quasi_isomorphism(induced_map(phi, E)):
                        res.fail(group=gname, complex=entry.name, system=sname, kind="retraction")
    return _timed("homotopy invariance", body)


# towers ---------------------------------------------------------------------


@dataclass
class TowerOutcome:
    stabilized: bool
    limit: list[FGAbGroup]
    colimit: list[FGAbGroup]


def subdivision_tower(X: GSimplicialComplex, depth: int) -> tuple[list[GSimplicialComplex], list[SimplicialMap]]:
    """``X_0 = X`` and ``X_{i+1} = sd X_i`` with retractions ``X_{i+1} -> X_i``."""
    stages, maps = [X], []
    for _ in range(depth):
        sd, phi = subdivision_retraction(stages[-1])
        stages.append(sd)
        maps.append(phi)
    return stages, maps


def tower_colimit(stages: list[GSimplicialComplex], maps: list[SimplicialMap], E: CoefficientSystem) -> TowerOutcome:
    """Direct limit of ``H(X_0) -> H(X_1) -> ...``; it is attained once every later map is an isomorphism."""
    complexes = [assemble_complex(X, E) for X in stages]
    last_non_iso = -1
    for i, phi in enumerate(maps):
        f = induced_map(phi, E, complexes[i + 1], complexes[i])
        if not is_quasi_isomorphism(f):
            last_non_iso = i
    limit = cohomology(complexes[-1].complex)
    stabilized = last_non_iso < len(maps) - 1 or not maps
    colimit = cohomology(complexes[last_non_iso + 1].complex) if stabilized else limit
    return TowerOutcome(stabilized, limit, colimit)


def gset_tower(G: FiniteGroup, H: Subgroup, depth: int) -> tuple[list[GSimplicialComplex], list[SimplicialMap]]:
    """``2^i`` copies of ``G/H``; copy ``c`` of stage i+1 projects to copy ``c // 2`` of stage i."""
    base = standard.orbit(G, H)
    m = base.nverts
    stages = [base]
    for _ in range(depth):
        stages.append(disjoint_union(stages[-1], stages[-1]))
    maps = []
    for i in range(depth):
        src, dst = stages[i + 1], stages[i]
        vmap = {v: (v // m // 2) * m + v % m for v in range(src.nverts)}
        maps.append(SimplicialMap(src, dst, vmap))
    return stages, maps


def check_gset_tower(G: FiniteGroup, H: Subgroup, E: CoefficientSystem, depth: int = 4) -> list[dict]:
    """Degree-0 maps are injective and compose to the map of the composite projection."""
    stages, maps = gset_tower(G, H, depth)
    cx = [assemble_complex(X, E) for X in stages]
    h0 = [cohomology_group(c.complex, 0) for c in cx]
    problems = []
    for i, phi in enumerate(maps):
        phi.check()
        f = induced_on_cohomology(induced_map(phi, E, cx[i + 1], cx[i]), h0[i], h0[i + 1])
        if not f.kernel().group.is_zero:
            problems.append({"stage": i, "kind": "not injective"})
        expected = E.value(H).direct_sum(*[E.value(H)] * (2 ** (i + 1) - 1))
        if not h0[i + 1].group.isomorphic(expected):
            problems.append({"stage": i + 1, "kind": "degree-0 value", "got": str(h0[i + 1].group)})
    for i in range(depth):
        for j in range(i + 2, depth + 1):
            comp = maps[j - 1]
            for k in range(j - 2, i - 1, -1):
                comp = comp.compose(maps[k])
            direct = induced_on_cohomology(induced_map(comp, E, cx[j], cx[i]), h0[i], h0[j])
            stepwise = None
            for k in range(i, j):
                step = induced_on_cohomology(induced_map(maps[k], E, cx[k + 1], cx[k]), h0[k], h0[k + 1])
                stepwise = step if stepwise is None else step @ stepwise
            if not direct.equals(stepwise):
                problems.append({"from": i, "to": j, "kind": "incompatible"})
    return problems


def verify_codescent_towers(corpus: Corpus, depth: int = 4, subdivision_depth: int = 2) -> CheckResult:
    def body(res: CheckResult):
        for gname, G, entry in corpus.entries():
            X = entry.complex
            if len(X) > 12:
                continue
            for sname, E in corpus.systems(G)[:3]:
                res.cases += 1
                stages, maps = subdivision_tower(X, subdivision_depth if len(X) <= 6 else 1)
                out = tower_colimit(stages, maps, E)
                if not out.stabilized:
                    res.skipped.append({"group": gname, "complex": entry.name, "reason": "tower does not stabilize"})
                elif not _same(out.colimit, out.limit):
                    res.fail(group=gname, complex=entry.name, system=sname, kind="subdivision tower",
                             colimit=[str(g) for g in out.colimit], limit=[str(g) for g in out.limit])
                const = tower_colimit([X, X], [SimplicialMap(X, X, {v: v for v in X.vertices()})], E)
                if not _same(const.colimit, bredon_cohomology(X, E, subdivide="off")):
                    res.fail(group=gname, complex=entry.name, system=sname, kind="constant tower")
        for gname, G in corpus.groups.items():
            for sname, E in corpus.systems(G)[:3]:
                for H in (G.trivial_subgroup, G.whole):
                    res.cases += 1
                    for p in check_gset_tower(G, H, E, depth):
                        res.fail(group=gname, system=sname, orbit=list(H.elements), **p)
        T = trivial_group()
        res.cases += 1
        for p in check_gset_tower(T, T.whole, constant_system(T), depth):
            res.fail(group="1", system="constant Z", **p)
    return _timed("codescent towers", body)


# full run -------------------------------------------------------------------


CHECKS = {
    "normalization": verify_normalization,
    "route": verify_route_agreement,
    "quotient": verify_quotient_identity,
    "representable": verify_free_representable,
    "coinduced": verify_coinduced,
    "mv": verify_closed_mv,
    "csupp": verify_compact_supports,
    "induction": verify_induction,
    "homotopy": verify_homotopy,
    "towers": verify_codescent_towers,
}


# The representable check encodes a claim that fails whenever some cell has a
# nontrivial stabilizer; it runs only on request.
DEFAULT_CHECKS = [name for name in CHECKS if name != "representable"]


def run_all(corpus: Corpus, names: Iterable[str] | None = None) -> VerdictReport:
    report = VerdictReport()
    for name in names or DEFAULT_CHECKS:
        report.checks.append(CHECKS[name](corpus))
    return report
