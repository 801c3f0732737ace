"""Cellular Bredon cochains: one block ``E(G/G_σ)`` per orbit of simplices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection, Sequence

from .coeff import CoefficientSystem, GroupMismatch, restrict_system
from .gcomplex import (GSimplicialComplex, NonRegular, Simplex, SimplicialMap, apply_subdivision_policy,
                       induce, permutation_sign)
from .groups import Subgroup
from .linalg import FGAbGroup, IntMatrix, assemble, direct_sum
from .linalg.cochain import CochainComplex, CochainMap, cohomology

__all__ = ["BlockLabel", "BredonCochainComplex", "assemble_complex", "bredon_cohomology", "bredon_table",
           "induced_map", "restriction_map", "NonRegular", "GroupMismatch"]

Cell = tuple[int, int]


@dataclass(frozen=True)
class BlockLabel:
    """One summand of ``C^n``: the orbit of ``rep`` contributes ``E(G/stabilizer)``."""

    orbit: int
    rep: Simplex
    stabilizer: Subgroup
    offset: int
    size: int


@dataclass(frozen=True, eq=False)
class BredonCochainComplex:
    complex: CochainComplex
    labels: tuple[tuple[BlockLabel, ...], ...]
    space: GSimplicialComplex
    system: CoefficientSystem

    def block_of(self, n: int, orbit: int) -> BlockLabel | None:
        for b in self.labels[n] if n < len(self.labels) else ():
            if b.orbit == orbit:
                return b
        return None

    def to_document(self) -> dict:
        return {
            "degrees": [
                {"degree": n,
                 "blocks": [{"orbit": b.orbit, "rep": list(b.rep), "stabilizer": list(b.stabilizer.elements),
                             "offset": b.offset, "size": b.size} for b in self.labels[n]],
                 "relations": self.complex.group(n).relations.to_document()}
                for n in range(len(self.labels))],
            "differentials": [d.to_document() for d in self.complex.differentials],
        }


def _check_inputs(X: GSimplicialComplex, E: CoefficientSystem) -> None:
    if X.group != E.group:
        raise GroupMismatch("complex and coefficient system are over different groups")
    X.require_regular()


def _orbit_blocks(X: GSimplicialComplex, E: CoefficientSystem, keep: Collection[Cell] | None):
    data = X.orbit_data
    labels: list[tuple[BlockLabel, ...]] = []
    groups: list[FGAbGroup] = []
    for n in range(X.dim + 1):
        row, vals, off = [], [], 0
        for k, rep in enumerate(data.reps[n]):
            if keep is not None and (n, k) not in keep:
                continue
            stab = data.stabilizers[n][k]
            size = E.value(stab).ngens
            row.append(BlockLabel(k, rep, stab, off, size))
            vals.append(E.value(stab))
            off += size
        labels.append(tuple(row))
        groups.append(direct_sum(vals))
    return labels, groups


def assemble_complex(X: GSimplicialComplex, E: CoefficientSystem, keep: Collection[Cell] | None = None,
                     *, check: bool = True) -> BredonCochainComplex:
    """Cellular Bredon complex of X, optionally on the orbits listed in ``keep`` only.

    ``keep`` must be closed under faces (a subcomplex) or under cofaces (the
    cells off a subcomplex); either way the restricted formula is a complex.
    """
    _check_inputs(X, E)
    data = X.orbit_data
    G = X.group
    labels, groups = _orbit_blocks(X, E, keep)
    diffs = []
    for n in range(X.dim):
        src = {b.orbit: i for i, b in enumerate(labels[n])}
        blocks: dict[tuple[int, int], IntMatrix] = {}
        for i, top in enumerate(labels[n + 1]):
            for fd in data.faces[n + 1][top.orbit]:
                j = src.get(fd.orbit)
                if j is None:
                    continue
                face = labels[n][j]
                m = E.map_along(top.stabilizer, face.stabilizer, G.inv(fd.translator)).matrix.scale(fd.sign)
                blocks[(i, j)] = blocks[(i, j)] + m if (i, j) in blocks else m
        diffs.append(assemble([b.size for b in labels[n + 1]], [b.size for b in labels[n]], blocks))
    C = CochainComplex(tuple(groups), tuple(diffs))
    if check:
        C.validate()
    return BredonCochainComplex(C, tuple(labels), X, E)


def bredon_cohomology(X: GSimplicialComplex, E: CoefficientSystem, *, subdivide: str | int = "auto",
                      method: str = "auto") -> list[FGAbGroup]:
    """``H^n_Br(X; E)`` for ``n = 0..dim X``; empty list for the empty complex."""
    if X.group != E.group:
        raise GroupMismatch("complex and coefficient system are over different groups")
    X = apply_subdivision_policy(X, subdivide)
    return cohomology(assemble_complex(X, E).complex, method=method)


def restriction_map(big: BredonCochainComplex, small: BredonCochainComplex) -> CochainMap:
    """Coordinate map between two complexes built from the same X on nested orbit sets.

    Projects when ``small`` keeps fewer orbits (restriction to a subcomplex)
    and includes when it keeps more (extension by zero from a relative complex).
    """
    top = max(big.complex.top, small.complex.top)
    comps = []
    for n in range(top + 1):
        rows = small.complex.group(n).ngens
        cols = big.complex.group(n).ngens
        entries: dict[int, dict[int, int]] = {}
        if n < len(small.labels) and n < len(big.labels):
            where = {b.orbit: b for b in big.labels[n]}
            for b in small.labels[n]:
                a = where.get(b.orbit)
                if a is not None:
                    for t in range(b.size):
                        entries[b.offset + t] = {a.offset + t: 1}
        comps.append(IntMatrix(rows, cols, entries))
    return CochainMap(big.complex, small.complex, tuple(comps))


def induced_map(phi: SimplicialMap, E: CoefficientSystem, source: BredonCochainComplex | None = None,
                target: BredonCochainComplex | None = None) -> CochainMap:
    """``phi^*: C(Y; E) -> C(X; E)`` for an equivariant simplicial map ``phi: X -> Y``.

    The orbit of ``rep`` goes to the orbit of ``phi(rep)``; collapsed simplices
    contribute zero.
    """
    X, Y = phi.source, phi.target
    CX = source or assemble_complex(X, E)
    CY = target or assemble_complex(Y, E)
    dy = Y.orbit_data
    G = X.group
    comps = []
    for n in range(X.dim + 1):
        blocks: dict[tuple[int, int], IntMatrix] = {}
        ylabels = {b.orbit: j for j, b in enumerate(CY.labels[n])} if n < len(CY.labels) else {}
        for i, b in enumerate(CX.labels[n]):
            image = phi.image(b.rep)
            if len(set(image)) < len(image):
                continue
            orbit, h = dy.locate[tuple(sorted(image))]
            j = ylabels.get(orbit)
            if j is None:
                continue
            rep_y = dy.reps[n][orbit]
            moved = [Y.action[h][v] for v in image]
            sign = permutation_sign([rep_y.index(v) for v in moved])
            m = E.map_along(b.stabilizer, CY.labels[n][j].stabilizer, G.inv(h)).matrix.scale(sign)
            blocks[(i, j)] = blocks[(i, j)] + m if (i, j) in blocks else m
        ysizes = [c.size for c in CY.labels[n]] if n < len(CY.labels) else []
        comps.append(assemble([c.size for c in CX.labels[n]], ysizes, blocks))
    return CochainMap(CY.complex, CX.complex, tuple(comps))


def bredon_table(X: GSimplicialComplex, E: CoefficientSystem, *, subdivide: str | int = "auto",
                 subgroups: Sequence[Subgroup] | None = None) -> dict[Subgroup, list[FGAbGroup]]:
    """``H ↦ H^*_Br(X × G/H; E)`` with ``X × G/H`` realized as ``G ×_H res X``."""
    if X.group != E.group:
        raise GroupMismatch("complex and coefficient system are over different groups")
    X = apply_subdivision_policy(X, subdivide)
    G = X.group
    out = {}
    for H in subgroups or G.subgroups:
        Y = induce(X.restrict(H), G, H)
        out[H] = bredon_cohomology(Y, E, subdivide="off")
    return out


def bredon_cohomology_restricted(X: GSimplicialComplex, E: CoefficientSystem, H: Subgroup) -> list[FGAbGroup]:
    """Right-hand side of the induction isomorphism: H-cohomology of res X with res E."""
    return bredon_cohomology(X.restrict(H), restrict_system(E, H), subdivide="off")
