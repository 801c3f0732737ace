"""Standard G-complexes used by the corpus, the tests and the CLI."""

from __future__ import annotations

import random
from itertools import combinations

from .gcomplex import GSimplicialComplex, face_closure, induce
from .groups import FiniteGroup, Subgroup, trivial_group


def point(G: FiniteGroup) -> GSimplicialComplex:
    return GSimplicialComplex(G, 1, [(0,)])


def orbit(G: FiniteGroup, H: Subgroup) -> GSimplicialComplex:
    """The discrete G-set ``G/H``; vertex i is the coset of ``coset_reps(H)[i]``."""
    return GSimplicialComplex(G, len(G.coset_reps(H)), [(i,) for i in range(len(G.coset_reps(H)))],
                              coset_action(G, H))


def coset_action(G: FiniteGroup, H: Subgroup) -> list[tuple[int, ...]]:
    reps = G.coset_reps(H)
    pos = {c: i for i, c in enumerate(reps)}
    return [tuple(pos[G.coset_rep(G.m(g, c), H)] for c in reps) for g in range(G.order)]


def cycle(n: int) -> GSimplicialComplex:
    return GSimplicialComplex(trivial_group(), n, [(i, (i + 1) % n) for i in range(n)])


def rotation_cycle(G: FiniteGroup, n: int, steps: list[int]) -> GSimplicialComplex:
    """n-gon with generator k rotating by ``steps[k]``."""
    images = [[(i + s) % n for i in range(n)] for s in steps]
    return GSimplicialComplex.from_facets(G, n, [(i, (i + 1) % n) for i in range(n)], images)


def reflection_cycle(G: FiniteGroup, n: int) -> GSimplicialComplex:
    """n-gon with the (single) generator acting by ``i -> -i``."""
    return GSimplicialComplex.from_facets(G, n, [(i, (i + 1) % n) for i in range(n)],
                                          [[(-i) % n for i in range(n)]])


def reflection_square(G: FiniteGroup) -> GSimplicialComplex:
    """Square boundary, reflection across the diagonal through vertices 0 and 2."""
    return GSimplicialComplex.from_facets(G, 4, [(0, 1), (1, 2), (2, 3), (3, 0)], [[0, 3, 2, 1]])


def octahedron(G: FiniteGroup, generator_images: list[list[int]]) -> GSimplicialComplex:
    """Boundary of the octahedron on antipodal pairs (0,1), (2,3), (4,5)."""
    facets = [(a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)]
    return GSimplicialComplex.from_facets(G, 6, facets, generator_images)


def simplex_boundary_on(G: FiniteGroup, H: Subgroup) -> GSimplicialComplex:
    """Boundary of the simplex spanned by ``G/H`` with the permutation action."""
    m = len(G.coset_reps(H))
    facets = list(combinations(range(m), m - 1)) if m > 1 else [(0,)]
    return GSimplicialComplex(G, m, facets, coset_action(G, H))


def suspension(X: GSimplicialComplex) -> GSimplicialComplex:
    """Join with two fixed points."""
    a, b = X.nverts, X.nverts + 1
    simplices = X.all_simplices() + [(a,), (b,)] + [s + (c,) for s in X.all_simplices() for c in (a, b)]
    action = [p + (a, b) for p in X.action]
    return GSimplicialComplex(X.group, X.nverts + 2, simplices, action, closed=True)


def join(X: GSimplicialComplex, Y: GSimplicialComplex) -> GSimplicialComplex:
    off = X.nverts
    ys = [tuple(v + off for v in t) for t in Y.all_simplices()]
    simplices = X.all_simplices() + ys + [s + t for s in X.all_simplices() for t in ys]
    action = [p + tuple(v + off for v in q) for p, q in zip(X.action, Y.action)]
    return GSimplicialComplex(X.group, off + Y.nverts, simplices, action, closed=True)


def random_complex(rng: random.Random, *, max_simplices: int = 60, max_vertices: int = 8,
                   max_dim: int = 3) -> GSimplicialComplex:
    """A random complex with trivial group and at most ``max_simplices`` simplices."""
    n = rng.randint(1, max_vertices)
    facets: list[tuple[int, ...]] = [(v,) for v in range(n)]
    simplices = face_closure(facets)
    for _ in range(4 * n):
        k = rng.randint(2, min(max_dim, n - 1) + 1) if n > 1 else 1
        f = tuple(sorted(rng.sample(range(n), k)))
        trial = simplices | face_closure([f])
        if len(trial) <= max_simplices:
            simplices = trial
    return GSimplicialComplex(trivial_group(), n, simplices, closed=True)


def random_equivariant(G: FiniteGroup, rng: random.Random, *, max_orbit_facets: int = 3,
                       max_dim: int = 2) -> GSimplicialComplex:
    """Orbit closure of a few random simplices on a union of one or two transitive G-sets."""
    subs = list(G.subgroups)
    proper = [H for H in subs if H.order < G.order] or subs
    parts = [rng.choice(proper)] + [rng.choice(subs) for _ in range(rng.randint(0, 1))]
    action: list[tuple[int, ...]] = [() for _ in range(G.order)]
    off = 0
    for H in parts:
        acts = coset_action(G, H)
        action = [a + tuple(v + off for v in p) for a, p in zip(action, acts)]
        off += len(acts[0])
    n = off
    seeds = []
    for _ in range(rng.randint(1, max_orbit_facets)):
        k = rng.randint(min(2, n), min(max_dim + 1, n))
        seeds.append(tuple(sorted(rng.sample(range(n), k))))
    facets = {tuple(sorted(action[g][v] for v in s)) for s in seeds for g in range(G.order)}
    facets |= {(v,) for v in range(n)}
    return GSimplicialComplex(G, n, facets, action)


def circle_for(G: FiniteGroup) -> GSimplicialComplex:
    """A circle with a nontrivial G-action: rotation for cyclic groups, else the triangle on a coset set."""
    if len(G.generators) == 1 and G.order > 1:
        n = G.order
        return rotation_cycle(G, 2 * n, [2])
    for H in G.subgroups:
        m = len(G.coset_reps(H))
        if m == 3:
            return GSimplicialComplex(G, 3, [(0, 1), (1, 2), (0, 2)], coset_action(G, H))
    return rotation_cycle(G, 3, [0] * len(G.generators)) if G.generators else cycle(3)


def induced_circle(G: FiniteGroup, H: Subgroup) -> GSimplicialComplex:
    Hgrp, _ = G.subgroup_group(H)
    Y = GSimplicialComplex(Hgrp, 4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    return induce(Y, G, H)


def pair_action(G: FiniteGroup, H: Subgroup) -> list[tuple[int, ...]]:
    """Action on ``G/H × {0, 1}`` with vertex ``2i + e``."""
    return [tuple(2 * p[v // 2] + v % 2 for v in range(2 * len(p))) for p in coset_action(G, H)]


def octahedron_for(G: FiniteGroup) -> GSimplicialComplex | None:
    """An octahedron boundary with a G-action, when one of the standard ones applies."""
    for H in G.subgroups:
        if len(G.coset_reps(H)) == 3:
            facets = [(a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)]
            return GSimplicialComplex(G, 6, facets, pair_action(G, H))
    if len(G.generators) == 1 and G.order == 2:
        return octahedron(G, [[1, 0, 2, 3, 4, 5]])
    if len(G.generators) == 1 and G.order == 4:
        return octahedron(G, [[2, 3, 1, 0, 4, 5]])
    return None
