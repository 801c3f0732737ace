"""Presented finitely generated abelian groups and maps between them."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .matrix import IntMatrix, block_diag, hstack
from .smith import SmithDecomposition, image_basis, invariant_factors, kernel_basis, smith, solve


class NotAHomomorphism(ValueError):
    pass


def format_normal_form(rank: int, torsion: Sequence[int]) -> str:
    parts = []
    if rank == 1:
        parts.append("Z")
    elif rank > 1:
        parts.append(f"Z^{rank}")
    parts += [f"Z/{d}" for d in torsion]
    return " + ".join(parts) if parts else "0"


@dataclass(frozen=True, eq=False)
class FGAbGroup:
    """``Z^ngens`` modulo the span of the relation vectors.

    ``relations`` is an ``ngens x k`` matrix whose columns are the
    relations.  Two groups are isomorphic iff their normal forms match.
    """

    ngens: int
    relations: IntMatrix = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.relations is None:
            object.__setattr__(self, "relations", IntMatrix(self.ngens, 0))
        if self.relations.nrows != self.ngens:
            raise ValueError("relation matrix must have one row per generator")

    @classmethod
    def free(cls, n: int) -> FGAbGroup:
        return cls(n)

    @classmethod
    def zero(cls) -> FGAbGroup:
        return cls(0)

    @classmethod
    def from_normal_form(cls, rank: int, torsion: Sequence[int] = ()) -> FGAbGroup:
        torsion = [int(d) for d in torsion]
        for d in torsion:
            if d < 2:
                raise ValueError(f"torsion divisor {d} must be >= 2")
        n = rank + len(torsion)
        rel = IntMatrix(n, len(torsion), {rank + k: {k: d} for k, d in enumerate(torsion)})
        return cls(n, rel)

    @classmethod
    def from_relation_rows(cls, ngens: int, rows: Sequence[Sequence[int]]) -> FGAbGroup:
        return cls(ngens, IntMatrix.from_columns([list(r) for r in rows], ngens))

    @property
    def is_presentation_free(self) -> bool:
        return self.relations.is_zero()

    @cached_property
    def normal_form(self) -> tuple[int, tuple[int, ...]]:
        inv = invariant_factors(self.relations)
        return self.ngens - len(inv), tuple(d for d in inv if d > 1)

    @property
    def rank(self) -> int:
        return self.normal_form[0]

    @property
    def torsion(self) -> tuple[int, ...]:
        return self.normal_form[1]

    @property
    def is_zero(self) -> bool:
        return self.normal_form == (0, ())

    def order(self) -> int | None:
        if self.rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def isomorphic(self, other: FGAbGroup) -> bool:
        return self.normal_form == other.normal_form

    @cached_property
    def _relation_smith(self) -> SmithDecomposition:
        return smith(self.relations)

    def contains_relation(self, v: Sequence[int]) -> bool:
        """True iff ``v`` is zero in the group."""
        if not any(v):
            return True
        if self.relations.ncols == 0:
            return False
        return self._relation_smith.solve(list(v)) is not None

    def is_zero_map_into(self, M: IntMatrix) -> bool:
        """True iff every column of ``M`` vanishes in this group."""
        if M.nrows != self.ngens:
            raise ValueError("matrix rows must match generator count")
        if M.is_zero():
            return True
        return all(self.contains_relation(c) for c in M.columns() if any(c))

    def direct_sum(self, *others: FGAbGroup) -> FGAbGroup:
        return direct_sum([self, *others])

    def to_document(self) -> dict:
        r, t = self.normal_form
        return {"rank": r, "torsion": list(t)}

    def __str__(self) -> str:
        return format_normal_form(*self.normal_form)

    def __repr__(self) -> str:
        return f"FGAbGroup<{self}; {self.ngens} gens>"


def direct_sum(groups: Sequence[FGAbGroup]) -> FGAbGroup:
    if not groups:
        return FGAbGroup(0)
    return FGAbGroup(sum(g.ngens for g in groups), block_diag([g.relations for g in groups]))


@dataclass(frozen=True, eq=False)
class AbHom:
    """A homomorphism given by its action on generators.

    ``matrix`` has shape ``(target.ngens, source.ngens)``.
    """

    source: FGAbGroup
    target: FGAbGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.ngens, self.source.ngens):
            raise ValueError(f"matrix shape {self.matrix.shape} does not fit "
                             f"{self.source.ngens} -> {self.target.ngens}")

    @classmethod
    def identity(cls, group: FGAbGroup) -> AbHom:
        return cls(group, group, IntMatrix.identity(group.ngens))

    @classmethod
    def zero(cls, source: FGAbGroup, target: FGAbGroup) -> AbHom:
        return cls(source, target, IntMatrix(target.ngens, source.ngens))

    def is_well_defined(self) -> bool:
        """Relations of the source must map into relations of the target."""
        return self.target.is_zero_map_into(self.matrix @ self.source.relations)

    def check(self) -> AbHom:
        if not self.is_well_defined():
            raise NotAHomomorphism("matrix does not respect the source relations")
        return self

    def __matmul__(self, other: AbHom) -> AbHom:
        # self after other
        return AbHom(other.source, self.target, self.matrix @ other.matrix)

    def equals(self, other: AbHom) -> bool:
        """Equality modulo target relations."""
        if self.matrix.shape != other.matrix.shape:
            return False
        return self.target.is_zero_map_into(self.matrix - other.matrix)

    def is_zero(self) -> bool:
        return self.target.is_zero_map_into(self.matrix)

    def kernel(self) -> Subquotient:
        return kernel(self)

    def cokernel(self) -> FGAbGroup:
        return FGAbGroup(self.target.ngens, hstack([self.matrix, self.target.relations]))

    def is_iso(self) -> bool:
        return self.kernel().group.is_zero and self.cokernel().is_zero


@dataclass(frozen=True, eq=False)
class Subquotient:
    """A group ``L / R`` with ``R ⊆ L ⊆ Z^n``.

    ``basis`` (``n x k``) is a basis of ``L``; ``group`` is ``L/R`` presented
    on those ``k`` basis vectors.
    """

    group: FGAbGroup
    basis: IntMatrix

    def coordinates(self, vectors: IntMatrix) -> IntMatrix:
        """Coordinates of vectors of ``L`` in the chosen basis."""
        if vectors.ncols == 0:
            return IntMatrix(self.basis.ncols, 0)
        x = solve(self.basis, vectors)
        if x is None:
            raise ValueError("vector does not lie in the lattice")
        return x


def subquotient(L_generators: IntMatrix, R_generators: IntMatrix) -> Subquotient:
    """Present ``span(L) / span(R)``; requires ``span(R) ⊆ span(L)``."""
    n = L_generators.nrows
    if R_generators.nrows != n:
        raise ValueError("generator matrices live in different ambient lattices")
    basis = image_basis(L_generators) if L_generators.ncols else IntMatrix(n, 0)
    if R_generators.ncols == 0 or R_generators.is_zero():
        rel = IntMatrix(basis.ncols, 0)
    else:
        rel = solve(basis, R_generators)
        if rel is None:
            raise ValueError("relation lattice is not contained in the generator lattice")
    return Subquotient(FGAbGroup(basis.ncols, rel), basis)


def preimage_lattice(F: IntMatrix, target_relations: IntMatrix) -> IntMatrix:
    """Generators of ``{x : F x ∈ span(target_relations)}``."""
    n = F.ncols
    if target_relations.ncols == 0 or target_relations.is_zero():
        return kernel_basis(F)
    K = kernel_basis(hstack([F, target_relations]))
    return K.submatrix(range(n), range(K.ncols))


def kernel(f: AbHom) -> Subquotient:
    L = preimage_lattice(f.matrix, f.target.relations)
    return subquotient(L, f.source.relations)


def homology_at(f: AbHom, g: AbHom) -> Subquotient:
    """``ker g / im f`` for ``A --f--> B --g--> C``; requires ``g f = 0``."""
    if f.target.ngens != g.source.ngens:
        raise ValueError("maps are not composable")
    if not (g @ f).is_zero():
        raise ValueError("composite is not zero")
    L = preimage_lattice(g.matrix, g.target.relations)
    R = hstack([f.target.relations, f.matrix])
    return subquotient(L, R)
