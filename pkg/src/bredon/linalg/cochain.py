"""Cochain complexes of presented abelian groups and their cohomology."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .abelian import AbHom, FGAbGroup, direct_sum, homology_at, preimage_lattice, subquotient
from .matrix import IntMatrix, block_diag, hstack, vstack
from .smith import invariant_factors, solve


class NotAComplex(ValueError):
    def __init__(self, degree: int, message: str = "d∘d is not zero"):
        super().__init__(f"degree {degree}: {message}")
        self.degree = degree


@dataclass(frozen=True, eq=False)
class CochainComplex:
    """Groups ``C^0 .. C^N`` and differentials ``d^n : C^n -> C^{n+1}``.

    ``differentials[n]`` has shape ``(C^{n+1}.ngens, C^n.ngens)``; there
    are ``len(groups) - 1`` of them.  Out-of-range degrees are zero.
    """

    groups: tuple[FGAbGroup, ...]
    differentials: tuple[IntMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(self.groups))
        object.__setattr__(self, "differentials", tuple(self.differentials))
        if len(self.differentials) != max(len(self.groups) - 1, 0):
            raise ValueError("need one differential between consecutive groups")
        for n, d in enumerate(self.differentials):
            if d.shape != (self.groups[n + 1].ngens, self.groups[n].ngens):
                raise ValueError(f"differential {n} has shape {d.shape}")

    @property
    def top(self) -> int:
        return len(self.groups) - 1

    def group(self, n: int) -> FGAbGroup:
        if 0 <= n < len(self.groups):
            return self.groups[n]
        return FGAbGroup(0)

    def d(self, n: int) -> IntMatrix:
        if 0 <= n < len(self.differentials):
            return self.differentials[n]
        return IntMatrix(self.group(n + 1).ngens, self.group(n).ngens)

    def dhom(self, n: int) -> AbHom:
        return AbHom(self.group(n), self.group(n + 1), self.d(n))

    @property
    def is_presentation_free(self) -> bool:
        return all(g.is_presentation_free for g in self.groups)

    def validate(self) -> CochainComplex:
        for n in range(len(self.differentials)):
            if not self.dhom(n).is_well_defined():
                raise NotAComplex(n, "differential does not respect relations")
        for n in range(len(self.differentials) - 1):
            if not self.group(n + 2).is_zero_map_into(self.d(n + 1) @ self.d(n)):
                raise NotAComplex(n)
        return self

    def padded(self, top: int) -> CochainComplex:
        """Same complex with zero groups appended up to degree ``top``."""
        if top <= self.top:
            return self
        groups = list(self.groups) or [FGAbGroup(0)]
        diffs = list(self.differentials)
        while len(groups) <= top:
            diffs.append(IntMatrix(0, groups[-1].ngens))
            groups.append(FGAbGroup(0))
        return CochainComplex(tuple(groups), tuple(diffs))


def direct_sum_complex(a: CochainComplex, b: CochainComplex) -> CochainComplex:
    top = max(a.top, b.top)
    a, b = a.padded(top), b.padded(top)
    groups = [direct_sum([a.group(n), b.group(n)]) for n in range(top + 1)]
    diffs = [block_diag([a.d(n), b.d(n)]) for n in range(top)]
    return CochainComplex(tuple(groups), tuple(diffs))


@dataclass(frozen=True, eq=False)
class CohomologyGroup:
    """``H^n`` presented on a basis of the cocycle lattice."""

    degree: int
    group: FGAbGroup
    cocycles: IntMatrix  # columns: basis of Z^n inside C^n's generator lattice

    def coordinates(self, cocycles: IntMatrix) -> IntMatrix:
        if cocycles.ncols == 0:
            return IntMatrix(self.cocycles.ncols, 0)
        x = solve(self.cocycles, cocycles)
        if x is None:
            raise ValueError(f"H^{self.degree}: vector is not a cocycle")
        return x


def _free_cohomology(C: CochainComplex) -> list[FGAbGroup]:
    invs = [invariant_factors(C.d(n)) for n in range(C.top)]
    out = []
    for n in range(C.top + 1):
        r_out = len(invs[n]) if n < C.top else 0
        r_in = invs[n - 1] if n > 0 else []
        rank = C.group(n).ngens - r_out - len(r_in)
        out.append(FGAbGroup.from_normal_form(rank, [d for d in r_in if d > 1]))
    return out


def cohomology_group(C: CochainComplex, n: int) -> CohomologyGroup:
    """General path: works for arbitrary presented cochain groups.

    Cocycles are ``{x : d x ∈ relations(C^{n+1})}``, coboundaries are the
    span of ``relations(C^n)`` and ``im d^{n-1}``; the quotient is presented
    on a basis of the cocycle lattice.
    """
    Cn = C.group(n)
    if n < C.top:
        Z = preimage_lattice(C.d(n), C.group(n + 1).relations)
    else:
        Z = IntMatrix.identity(Cn.ngens)
    B = hstack([Cn.relations, C.d(n - 1)]) if n > 0 else Cn.relations
    try:
        sq = subquotient(Z, B)
    except ValueError:
        raise NotAComplex(n - 1) from None
    return CohomologyGroup(n, sq.group, sq.basis)


def cohomology(C: CochainComplex, *, method: str = "auto") -> list[FGAbGroup]:
    """Cohomology of ``C`` in degrees ``0..C.top``, as normal-form groups.

    ``method`` is ``"free"`` (rank/invariant-factor count, only for
    relation-free presentations), ``"general"`` (cocycle/coboundary
    subquotient), or ``"auto"``.
    """
    if not C.groups:
        return []
    if method == "auto":
        method = "free" if C.is_presentation_free else "general"
    if method == "free":
        if not C.is_presentation_free:
            raise ValueError("free method needs relation-free cochain groups")
        for n in range(C.top - 1):
            if not (C.d(n + 1) @ C.d(n)).is_zero():
                raise NotAComplex(n)
        return _free_cohomology(C)
    if method != "general":
        raise ValueError(f"unknown method {method!r}")
    C.validate()
    out = []
    for n in range(C.top + 1):
        h = cohomology_group(C, n).group
        out.append(FGAbGroup.from_normal_form(*h.normal_form))
    return out


def normal_forms(groups: Sequence[FGAbGroup]) -> list[tuple[int, tuple[int, ...]]]:
    return [g.normal_form for g in groups]


def same_cohomology(a: Sequence[FGAbGroup], b: Sequence[FGAbGroup]) -> bool:
    """Degreewise isomorphism, treating missing degrees as zero."""
    n = max(len(a), len(b))
    za = list(a) + [FGAbGroup(0)] * (n - len(a))
    zb = list(b) + [FGAbGroup(0)] * (n - len(b))
    return all(x.isomorphic(y) for x, y in zip(za, zb))


# maps between complexes ----------------------------------------------------


@dataclass(frozen=True, eq=False)
class CochainMap:
    """Degreewise matrices ``f^n : A^n -> B^n``."""

    source: CochainComplex
    target: CochainComplex
    components: tuple[IntMatrix, ...]

    def f(self, n: int) -> IntMatrix:
        if 0 <= n < len(self.components):
            return self.components[n]
        return IntMatrix(self.target.group(n).ngens, self.source.group(n).ngens)

    def is_chain_map(self) -> bool:
        top = max(self.source.top, self.target.top)
        for n in range(top + 1):
            if not AbHom(self.source.group(n), self.target.group(n), self.f(n)).is_well_defined():
                return False
            lhs = self.target.d(n) @ self.f(n)
            rhs = self.f(n + 1) @ self.source.d(n)
            if not self.target.group(n + 1).is_zero_map_into(lhs - rhs):
                return False
        return True


def induced_on_cohomology(f: CochainMap, hs: CohomologyGroup, ht: CohomologyGroup) -> AbHom:
    n = hs.degree
    images = f.f(n) @ hs.cocycles
    return AbHom(hs.group, ht.group, ht.coordinates(images))


def mapping_cone(f: CochainMap) -> CochainComplex:
    """Mapping cone, shifted up by one so it starts in stored degree 0.

    Stored degree ``k`` holds ``A^k ⊕ B^{k-1}`` with
    ``d(a, b) = (-d a, f a + d b)``.  ``f`` is a quasi-isomorphism iff
    the cone is acyclic.
    """
    A, B = f.source, f.target
    top = max(A.top, B.top + 1)
    groups = [direct_sum([A.group(k), B.group(k - 1)]) for k in range(top + 1)]
    diffs = []
    for k in range(top):
        upper = hstack([-A.d(k), IntMatrix(A.group(k + 1).ngens, B.group(k - 1).ngens)])
        lower = hstack([f.f(k), B.d(k - 1)])
        diffs.append(vstack([upper, lower]))
    return CochainComplex(tuple(groups), tuple(diffs))


@dataclass
class ExactnessNode:
    label: str
    homology: FGAbGroup | None  # None when the composite through the node is nonzero

    @property
    def exact(self) -> bool:
        return self.homology is not None and self.homology.is_zero


@dataclass
class LongExactSequence:
    """A finite sequence ``0 -> G_0 -> G_1 -> ... -> G_k -> 0``."""

    labels: list[str]
    groups: list[FGAbGroup]
    maps: list[AbHom]  # maps[i] : groups[i] -> groups[i+1]
    nodes: list[ExactnessNode] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return all(node.exact for node in self.nodes)

    def failures(self) -> list[ExactnessNode]:
        return [node for node in self.nodes if not node.exact]


def check_exactness(labels: list[str], groups: list[FGAbGroup], maps: list[AbHom]) -> LongExactSequence:
    """Compute ``ker / im`` at every node, bracketing the ends by zeros."""
    nodes = []
    for i, G in enumerate(groups):
        incoming = maps[i - 1] if i > 0 else AbHom.zero(FGAbGroup(0), G)
        outgoing = maps[i] if i < len(maps) else AbHom.zero(G, FGAbGroup(0))
        if not (outgoing @ incoming).is_zero():
            nodes.append(ExactnessNode(labels[i], None))
            continue
        h = homology_at(incoming, outgoing).group
        nodes.append(ExactnessNode(labels[i], FGAbGroup.from_normal_form(*h.normal_form)))
    return LongExactSequence(labels, groups, maps, nodes)


def connecting_map(i: CochainMap, p: CochainMap, hc: CohomologyGroup, ha_next: CohomologyGroup) -> AbHom:
    """``δ : H^n(C) -> H^{n+1}(A)`` for a short exact ``0 -> A -> B -> C -> 0``."""
    n = hc.degree
    A, B, C = i.source, i.target, p.target
    lift_sys = hstack([p.f(n), C.group(n).relations])
    lifts = solve(lift_sys, hc.cocycles)
    if lifts is None:
        raise ValueError(f"degree {n}: projection is not surjective")
    x = lifts.submatrix(range(B.group(n).ngens), range(lifts.ncols))
    dx = B.d(n) @ x
    back_sys = hstack([i.f(n + 1), B.group(n + 1).relations])
    ys = solve(back_sys, dx)
    if ys is None:
        raise ValueError(f"degree {n}: d(lift) is not in the image of the inclusion")
    y = ys.submatrix(range(A.group(n + 1).ngens), range(ys.ncols))
    return AbHom(hc.group, ha_next.group, ha_next.coordinates(y))


def long_exact_sequence(i: CochainMap, p: CochainMap, names: Sequence[str] = ("A", "B", "C")) -> LongExactSequence:
    """Assemble and check the cohomology sequence of ``0 -> A -> B -> C -> 0``."""
    A, B, C = i.source, i.target, p.target
    top = max(A.top, B.top, C.top)
    A, B, C = A.padded(top), B.padded(top), C.padded(top)
    i = CochainMap(A, B, i.components)
    p = CochainMap(B, C, p.components)
    HA = [cohomology_group(A, n) for n in range(top + 1)]
    HB = [cohomology_group(B, n) for n in range(top + 1)]
    HC = [cohomology_group(C, n) for n in range(top + 1)]
    labels, groups, maps = [], [], []
    for n in range(top + 1):
        labels += [f"H{n}({names[0]})", f"H{n}({names[1]})", f"H{n}({names[2]})"]
        groups += [HA[n].group, HB[n].group, HC[n].group]
        maps.append(induced_on_cohomology(i, HA[n], HB[n]))
        maps.append(induced_on_cohomology(p, HB[n], HC[n]))
        if n < top:
            maps.append(connecting_map(i, p, HC[n], HA[n + 1]))
    return check_exactness(labels, groups, maps)
