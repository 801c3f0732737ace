"""Finite simplicial complexes with a simplicial action of a finite group."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .groups import FiniteGroup, Subgroup, conjugacy_poset, trivial_group

Simplex = tuple[int, ...]


class NonRegular(ValueError):
    pass


class InvalidComplex(ValueError):
    pass


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation that sorts ``seq`` (entries distinct)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def face_closure(facets: Iterable[Sequence[int]]) -> set[Simplex]:
    out: set[Simplex] = set()
    for f in facets:
        f = tuple(sorted(set(int(v) for v in f)))
        if not f or f in out:
            continue
        for k in range(1, len(f) + 1):
            out.update(combinations(f, k))
    return out


@dataclass
class ValidationReport:
    valid: bool
    regular: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid


class GSimplicialComplex:
    """A simplicial complex on vertex labels ``0..nverts-1`` with a G-action.

    ``action[g]`` is the vertex permutation of group element ``g``.  Only
    labels that occur in some simplex are vertices of the complex; the
    action must still permute all labels.
    """

    def __init__(self, group: FiniteGroup, nverts: int, simplices: Iterable[Sequence[int]],
                 action: Sequence[Sequence[int]] | None = None, *, closed: bool = False):
        self.group = group
        self.nverts = nverts
        simp = set(tuple(s) for s in simplices) if closed else face_closure(simplices)
        for s in simp:
            for v in s:
                if not 0 <= v < nverts:
                    raise InvalidComplex(f"vertex {v} of {s} out of range")
        dims: dict[int, list[Simplex]] = {}
        for s in simp:
            dims.setdefault(len(s) - 1, []).append(s)
        self.dim = max(dims, default=-1)
        self.simplices: tuple[tuple[Simplex, ...], ...] = tuple(
            tuple(sorted(dims.get(d, []))) for d in range(self.dim + 1))
        if action is None:
            action = [tuple(range(nverts))] * group.order
        self.action = tuple(tuple(int(x) for x in p) for p in action)
        if len(self.action) != group.order:
            raise InvalidComplex("need one vertex permutation per group element")
        for p in self.action:
            if sorted(p) != list(range(nverts)):
                raise InvalidComplex(f"{list(p)} is not a permutation of the vertex labels")
        self.index = {s: i for d in self.simplices for i, s in enumerate(d)}

    # construction ------------------------------------------------------

    @classmethod
    def from_facets(cls, group: FiniteGroup, nverts: int, facets: Iterable[Sequence[int]],
                    generator_images: Sequence[Sequence[int]] | None = None) -> GSimplicialComplex:
        return cls(group, nverts, facets, action_from_generators(group, nverts, generator_images))

    def __repr__(self) -> str:
        counts = [len(d) for d in self.simplices]
        return f"GSimplicialComplex({self.group!r}, f-vector={counts})"

    # basic queries --------------------------------------------------------

    def all_simplices(self) -> list[Simplex]:
        return [s for d in self.simplices for s in d]

    def __len__(self) -> int:
        return sum(len(d) for d in self.simplices)

    def __contains__(self, s: Sequence[int]) -> bool:
        return tuple(sorted(s)) in self.index

    def cells(self, n: int) -> tuple[Simplex, ...]:
        return self.simplices[n] if 0 <= n <= self.dim else ()

    def vertices(self) -> list[int]:
        return [s[0] for s in self.cells(0)]

    def apply(self, g: int, s: Sequence[int]) -> Simplex:
        p = self.action[g]
        return tuple(sorted(p[v] for v in s))

    def apply_ordered(self, g: int, s: Sequence[int]) -> tuple[int, ...]:
        p = self.action[g]
        return tuple(p[v] for v in s)

    def generator_images(self) -> list[list[int]]:
        return [list(self.action[g]) for g in self.group.generators]

    def facets(self) -> list[Simplex]:
        out = []
        all_s = self.all_simplices()
        cofaces = set()
        for s in all_s:
            for k in range(len(s)):
                cofaces.add(s[:k] + s[k + 1:])
        for s in all_s:
            if s not in cofaces:
                out.append(s)
        return sorted(out)

    def to_document(self) -> dict:
        return {"vertices": self.nverts, "facets": [list(f) for f in self.facets()],
                "action": {"generator_images": self.generator_images()}}

    def stabilizer(self, s: Sequence[int]) -> Subgroup:
        s = tuple(sorted(s))
        return Subgroup(tuple(g for g in range(self.group.order) if self.apply(g, s) == s))

    def pointwise_stabilizer(self, s: Sequence[int]) -> Subgroup:
        return Subgroup(tuple(g for g in range(self.group.order) if all(self.action[g][v] == v for v in s)))

    # validation -----------------------------------------------------------

    def validate(self) -> ValidationReport:
        violations = []
        for s in self.all_simplices():
            for k in range(len(s)):
                f = s[:k] + s[k + 1:]
                if f and f not in self.index:
                    violations.append(f"face {f} of {s} missing")
        G = self.group
        for g in range(G.order):
            for s in self.all_simplices():
                if self.apply(g, s) not in self.index:
                    violations.append(f"element {g} maps {s} to non-simplex {self.apply(g, s)}")
                    break
        for a in range(G.order):
            pa = self.action[a]
            for b in range(G.order):
                pb = self.action[b]
                pab = self.action[G.m(a, b)]
                if any(pa[pb[v]] != pab[v] for v in range(self.nverts)):
                    violations.append(f"action is not a homomorphism at ({a}, {b})")
                    break
        if self.action[G.identity] != tuple(range(self.nverts)):
            violations.append("identity acts nontrivially")
        valid = not violations
        regular = valid and self._regular_violation() is None
        if valid and not regular:
            violations.append(f"non-regular: {self._regular_violation()}")
        return ValidationReport(valid, regular, violations)

    def _regular_violation(self) -> str | None:
        for g in range(self.group.order):
            p = self.action[g]
            for s in self.all_simplices():
                image = set(p[v] for v in s)
                common = image.intersection(s)
                for v in common:
                    if p[v] != v:
                        return f"element {g} moves vertex {v} of {s} ∩ g{s}"
        return None

    def is_regular(self) -> bool:
        return self._regular_violation() is None

    def require_regular(self) -> None:
        v = self._regular_violation()
        if v is not None:
            raise NonRegular(v)

    # derived complexes --------------------------------------------------------

    def subcomplex(self, simplices: Iterable[Sequence[int]]) -> GSimplicialComplex:
        return GSimplicialComplex(self.group, self.nverts, simplices, self.action)

    def with_trivial_group(self) -> GSimplicialComplex:
        return GSimplicialComplex(trivial_group(), self.nverts, self.all_simplices(), closed=True)

    def restrict(self, H: Subgroup) -> GSimplicialComplex:
        """The same complex as an H-complex; H is presented by ``subgroup_group``."""
        Hgrp, emb = self.group.subgroup_group(H)
        return GSimplicialComplex(Hgrp, self.nverts, self.all_simplices(), [self.action[g] for g in emb], closed=True)

    def is_invariant(self, simplices: Iterable[Sequence[int]]) -> bool:
        S = set(tuple(sorted(s)) for s in simplices)
        return all(self.apply(g, s) in S for g in range(self.group.order) for s in S)

    @cached_property
    def orbit_data(self) -> CellOrbitData:
        return cell_orbit_data(self)


def action_from_generators(group: FiniteGroup, nverts: int,
                           generator_images: Sequence[Sequence[int]] | None) -> list[tuple[int, ...]]:
    """Extend generator images to all elements along shortest words."""
    ident = tuple(range(nverts))
    if generator_images is None:
        return [ident] * group.order
    if len(generator_images) != len(group.generators):
        raise InvalidComplex(f"{len(generator_images)} generator images for {len(group.generators)} generators")
    imgs = [tuple(int(x) for x in p) for p in generator_images]
    for p in imgs:
        if sorted(p) != list(ident):
            raise InvalidComplex(f"{list(p)} is not a permutation of the vertex labels")
    out = []
    for g in range(group.order):
        perm = ident
        for k in group.word(g):
            s = imgs[k]
            perm = tuple(perm[s[i]] for i in range(nverts))
        out.append(perm)
    return out


# orbit bookkeeping ----------------------------------------------------------


@dataclass(frozen=True)
class FaceDatum:
    """Codimension-one face of a representative.

    ``translator`` sends the face onto the stored representative of its
    orbit; ``sign`` is the incidence number with sorted-vertex orientations.
    """

    position: int
    orbit: int
    translator: int
    sign: int


@dataclass
class CellOrbitData:
    """Orbit representatives per dimension with stabilizers and face data.

    ``locate[s] = (orbit, h)`` with ``h`` the minimal element satisfying
    ``h·s = representative``.
    """

    reps: list[list[Simplex]]
    stabilizers: list[list[Subgroup]]
    faces: list[list[list[FaceDatum]]]
    locate: dict[Simplex, tuple[int, int]]
    members: list[list[list[Simplex]]]

    def count(self, n: int) -> int:
        return len(self.reps[n]) if 0 <= n < len(self.reps) else 0

    def orientation_sign(self, X: GSimplicialComplex, ordered_image: Sequence[int], h: int, rep: Simplex) -> int:
        moved = [X.action[h][v] for v in ordered_image]
        return permutation_sign([rep.index(v) for v in moved])


def cell_orbit_data(X: GSimplicialComplex) -> CellOrbitData:
    X.require_regular()
    G = X.group
    reps: list[list[Simplex]] = []
    stabs: list[list[Subgroup]] = []
    members: list[list[list[Simplex]]] = []
    locate: dict[Simplex, tuple[int, int]] = {}
    for n in range(X.dim + 1):
        reps_n, stabs_n, mem_n = [], [], []
        for s in X.cells(n):
            if s in locate:
                continue
            k = len(reps_n)
            stab = X.stabilizer(s)
            orbit = {}
            for g in range(G.order):
                t = X.apply(g, s)
                if t not in orbit:
                    # h·t = s for h in Stab(s)·g^-1; keep the minimal index
                    ginv = G.inv(g)
                    orbit[t] = min(G.m(a, ginv) for a in stab.elements)
            for t, h in orbit.items():
                locate[t] = (k, h)
            reps_n.append(s)
            stabs_n.append(stab)
            mem_n.append(sorted(orbit))
        reps.append(reps_n)
        stabs.append(stabs_n)
        members.append(mem_n)
    faces: list[list[list[FaceDatum]]] = [[[] for _ in reps[0]]] if reps else []
    for n in range(1, X.dim + 1):
        faces_n = []
        for s in reps[n]:
            data = []
            for i in range(len(s)):
                f = s[:i] + s[i + 1:]
                orbit, h = locate[f]
                rep = reps[n - 1][orbit]
                moved = [X.action[h][v] for v in f]
                eps = permutation_sign([rep.index(v) for v in moved])
                data.append(FaceDatum(i, orbit, h, (-1) ** i * eps))
            faces_n.append(data)
        faces.append(faces_n)
    return CellOrbitData(reps, stabs, faces, locate, members)


# operations on complexes ----------------------------------------------------


def is_regular(X: GSimplicialComplex) -> bool:
    return X.is_regular()


def validate(X: GSimplicialComplex) -> ValidationReport:
    return X.validate()


def barycentric_subdivide(X: GSimplicialComplex) -> GSimplicialComplex:
    """Vertices are the simplices of X (by dimension, then lexicographic); simplices are flags."""
    verts = X.all_simplices()
    pos = {s: i for i, s in enumerate(verts)}
    flags: list[tuple[int, ...]] = []

    def extend(chain: list[Simplex]):
        top = chain[-1]
        flags.append(tuple(pos[c] for c in chain))
        for k in range(1, len(top)):
            for face in combinations(top, k):
                extend(chain + [face])

    for s in verts:
        extend([s])
    action = [tuple(pos[X.apply(g, s)] for s in verts) for g in range(X.group.order)]
    return GSimplicialComplex(X.group, len(verts), [tuple(sorted(f)) for f in flags], action, closed=True)


def regularize(X: GSimplicialComplex, max_subdivisions: int = 2) -> tuple[GSimplicialComplex, int]:
    """Subdivide until regular; returns the complex and the number of subdivisions."""
    for k in range(max_subdivisions + 1):
        if X.is_regular():
            return X, k
        if k < max_subdivisions:
            X = barycentric_subdivide(X)
    raise NonRegular(f"still not regular after {max_subdivisions} subdivisions")


def fixed_subcomplex(X: GSimplicialComplex, H: Subgroup) -> GSimplicialComplex:
    """Simplices fixed vertexwise by every element of H, with trivial group."""
    X.require_regular()
    keep = [s for s in X.all_simplices() if all(X.action[h][v] == v for h in H.elements for v in s)]
    return GSimplicialComplex(trivial_group(), X.nverts, keep, closed=True)


@dataclass
class QuotientComplex:
    """Orbits of simplices, their face relation and orbit-type strata.

    Cells are pairs ``(n, k)``: the k-th orbit of n-simplices.  Distinct faces
    of a simplex lie in distinct orbits when X is regular, so the quotient is
    a regular cell complex whose closed cells are simplices.
    """

    source: GSimplicialComplex
    cells: list[tuple[int, int]]
    faces: dict[tuple[int, int], list[tuple[int, int]]]
    cellmap: dict[Simplex, tuple[int, int]]
    strata: dict[tuple[int, int], int]
    vertex_sets: dict[tuple[int, int], frozenset[tuple[int, int]]]

    def counts(self) -> list[int]:
        out: dict[int, int] = {}
        for n, _ in self.cells:
            out[n] = out.get(n, 0) + 1
        return [out.get(n, 0) for n in range(max(out, default=-1) + 1)]

    def leq(self, x: tuple[int, int], y: tuple[int, int]) -> bool:
        """Face relation (reflexive)."""
        return x == y or x in self._below[y]

    @cached_property
    def _below(self) -> dict[tuple[int, int], frozenset[tuple[int, int]]]:
        below: dict[tuple[int, int], frozenset[tuple[int, int]]] = {}
        for c in sorted(self.cells):
            acc = set()
            for f in self.faces[c]:
                acc.add(f)
                acc |= below[f]
            below[c] = frozenset(acc)
        return below

    def is_simplicial(self) -> bool:
        """True iff cells are determined by their vertex sets."""
        seen = set()
        for c in self.cells:
            vs = self.vertex_sets[c]
            if vs in seen:
                return False
            seen.add(vs)
        return True

    def as_simplicial_complex(self) -> GSimplicialComplex | None:
        """The literal quotient on vertex orbits, when it is a simplicial complex."""
        if not self.is_simplicial():
            return None
        vpos = {c: i for i, c in enumerate(c for c in self.cells if c[0] == 0)}
        simplices = [tuple(sorted(vpos[v] for v in self.vertex_sets[c])) for c in self.cells]
        return GSimplicialComplex(trivial_group(), len(vpos), simplices, closed=True)

    def order_complex(self) -> GSimplicialComplex:
        """Barycentric subdivision of the quotient (chains in the face poset), trivial group."""
        pos = {c: i for i, c in enumerate(sorted(self.cells))}
        chains: list[tuple[int, ...]] = []

        def extend(chain):
            chains.append(tuple(sorted(pos[c] for c in chain)))
            for f in sorted(self._below[chain[-1]]):
                extend(chain + [f])

        for c in self.cells:
            extend([c])
        return GSimplicialComplex(trivial_group(), len(pos), chains, closed=True)


def quotient(X: GSimplicialComplex) -> QuotientComplex:
    data = X.orbit_data
    poset = conjugacy_poset(X.group)
    cells = [(n, k) for n in range(len(data.reps)) for k in range(len(data.reps[n]))]
    faces = {}
    vsets = {}
    for n, k in cells:
        rep = data.reps[n][k]
        faces[(n, k)] = [] if n == 0 else [(n - 1, fd.orbit) for fd in data.faces[n][k]]
        vsets[(n, k)] = frozenset((0, data.locate[(v,)][0]) for v in rep)
    cellmap = {s: (len(s) - 1, data.locate[s][0]) for s in X.all_simplices()}
    strata = {(n, k): poset.index(data.stabilizers[n][k]) for n, k in cells}
    return QuotientComplex(X, cells, faces, cellmap, strata, vsets)


def induce(Y: GSimplicialComplex, G: FiniteGroup, H: Subgroup) -> GSimplicialComplex:
    """``G ×_H Y`` for an H-complex Y (H presented as ``G.subgroup_group(H)``)."""
    Hgrp, emb = G.subgroup_group(H)
    if Y.group != Hgrp:
        raise ValueError("Y must be a complex over G.subgroup_group(H)")
    local = {g: i for i, g in enumerate(emb)}
    reps = G.coset_reps(H)
    rpos = {c: i for i, c in enumerate(reps)}
    ny = Y.nverts
    action = []
    for g in range(G.order):
        perm = [0] * (len(reps) * ny)
        for ci, c in enumerate(reps):
            gc = G.m(g, c)
            c2 = G.coset_rep(gc, H)
            h = G.m(G.inv(c2), gc)
            hp = Y.action[local[h]]
            for y in range(ny):
                perm[ci * ny + y] = rpos[c2] * ny + hp[y]
        action.append(tuple(perm))
    simplices = [tuple(ci * ny + v for v in s) for ci in range(len(reps)) for s in Y.all_simplices()]
    return GSimplicialComplex(G, len(reps) * ny, simplices, action, closed=True)


def cone(X: GSimplicialComplex) -> GSimplicialComplex:
    """Join with one new G-fixed apex (label ``nverts``)."""
    apex = X.nverts
    simplices = X.all_simplices() + [(apex,)] + [s + (apex,) for s in X.all_simplices()]
    action = [p + (apex,) for p in X.action]
    return GSimplicialComplex(X.group, apex + 1, simplices, action, closed=True)


def disjoint_union(X: GSimplicialComplex, Y: GSimplicialComplex) -> GSimplicialComplex:
    if X.group != Y.group:
        raise ValueError("disjoint union needs a common group")
    off = X.nverts
    simplices = X.all_simplices() + [tuple(v + off for v in s) for s in Y.all_simplices()]
    action = [p + tuple(v + off for v in q) for p, q in zip(X.action, Y.action)]
    return GSimplicialComplex(X.group, off + Y.nverts, simplices, action, closed=True)


def empty_complex(G: FiniteGroup) -> GSimplicialComplex:
    return GSimplicialComplex(G, 0, [])


@dataclass
class GPair:
    """A G-complex X with a G-invariant subcomplex A (given by its simplices)."""

    total: GSimplicialComplex
    sub: frozenset[Simplex]

    def __post_init__(self):
        self.sub = frozenset(tuple(sorted(s)) for s in self.sub)
        X = self.total
        for s in self.sub:
            if s not in X.index:
                raise InvalidComplex(f"{s} is not a simplex of X")
            for k in range(len(s)):
                f = s[:k] + s[k + 1:]
                if f and f not in self.sub:
                    raise InvalidComplex(f"subcomplex not face-closed: {f} of {s}")
        if not X.is_invariant(self.sub):
            raise InvalidComplex("subcomplex is not G-invariant")

    @classmethod
    def from_facets(cls, X: GSimplicialComplex, facets: Iterable[Sequence[int]]) -> GPair:
        return cls(X, frozenset(face_closure(facets)))

    def sub_complex(self) -> GSimplicialComplex:
        return self.total.subcomplex(self.sub)

    def open_cells(self) -> list[Simplex]:
        return [s for s in self.total.all_simplices() if s not in self.sub]


# simplicial maps ------------------------------------------------------------


@dataclass
class SimplicialMap:
    """A vertex map ``source -> target`` sending simplices to simplices."""

    source: GSimplicialComplex
    target: GSimplicialComplex
    vertex_map: dict[int, int]

    def image(self, s: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.vertex_map[v] for v in s)

    def check(self) -> None:
        for s in self.source.all_simplices():
            img = tuple(sorted(set(self.image(s))))
            if img not in self.target.index:
                raise ValueError(f"{s} maps to non-simplex {img}")
        if self.source.group != self.target.group:
            raise ValueError("maps must be over the same group")
        for g in range(self.source.group.order):
            for v in self.source.vertices():
                if self.vertex_map[self.source.action[g][v]] != self.target.action[g][self.vertex_map[v]]:
                    raise ValueError(f"not equivariant at element {g}, vertex {v}")

    def compose(self, other: SimplicialMap) -> SimplicialMap:
        """``other ∘ self``."""
        return SimplicialMap(self.source, other.target,
                             {v: other.vertex_map[w] for v, w in self.vertex_map.items()})


def inclusion(sub: GSimplicialComplex, total: GSimplicialComplex) -> SimplicialMap:
    return SimplicialMap(sub, total, {v: v for v in sub.vertices()})


def subdivision_retraction(X: GSimplicialComplex) -> tuple[GSimplicialComplex, SimplicialMap]:
    """``sd X`` together with an equivariant simplicial approximation of the identity.

    The barycenter of ``s`` goes to ``h^-1 · min(rep)`` where ``h·s = rep``;
    regularity makes this independent of the choice of ``h``.
    """
    data = X.orbit_data
    sd = barycentric_subdivide(X)
    verts = X.all_simplices()
    vmap = {}
    G = X.group
    for i, s in enumerate(verts):
        orbit, h = data.locate[s]
        rep = data.reps[len(s) - 1][orbit]
        vmap[i] = X.action[G.inv(h)][rep[0]]
    return sd, SimplicialMap(sd, X, vmap)


def apply_subdivision_policy(X: GSimplicialComplex, policy: str | int = "auto") -> GSimplicialComplex:
    """``"auto"``: subdivide at most twice until regular; ``"off"``: require regular; ``n``: subdivide n times."""
    if policy == "auto":
        return regularize(X)[0]
    if policy == "off":
        X.require_regular()
        return X
    n = int(policy)
    if n < 0:
        raise ValueError("subdivision count must be nonnegative")
    for _ in range(n):
        X = barycentric_subdivide(X)
    X.require_regular()
    return X


def subdivide_pair(P: GPair) -> GPair:
    """Barycentric subdivision of a pair; the subcomplex becomes the flags inside A."""
    X = P.total
    sd = barycentric_subdivide(X)
    inside = {i for i, s in enumerate(X.all_simplices()) if s in P.sub}
    return GPair(sd, frozenset(s for s in sd.all_simplices() if all(v in inside for v in s)))


def apply_pair_policy(P: GPair, policy: str | int = "auto") -> GPair:
    if policy == "off":
        P.total.require_regular()
        return P
    if policy == "auto":
        for k in range(3):
            if P.total.is_regular():
                return P
            if k < 2:
                P = subdivide_pair(P)
        raise NonRegular("still not regular after 2 subdivisions")
    for _ in range(int(policy)):
        P = subdivide_pair(P)
    P.total.require_regular()
    return P
