"""Compactly supported Bredon cohomology of ``U = X - A`` for a G-pair ``(X, A)``."""

from __future__ import annotations

from dataclasses import dataclass

from .cellular import assemble_complex, restriction_map
from .coeff import CoefficientSystem, GroupMismatch
from .gcomplex import GPair, GSimplicialComplex, apply_pair_policy
from .linalg import FGAbGroup
from .linalg.cochain import LongExactSequence, cohomology, cohomology_group, long_exact_sequence
from .linalg.cochain import induced_on_cohomology

RELATIVE = "relative-complex"
COLLAPSED = "collapsed-quotient"


@dataclass
class Collapsed:
    complex: GSimplicialComplex
    basepoint: int


@dataclass
class CompactSupportResult:
    groups: list[FGAbGroup]
    model: str

    def to_document(self) -> dict:
        return {"model": self.model, "groups": [g.to_document() for g in self.groups]}


def collapse(P: GPair) -> Collapsed:
    """``X ∪ cone(A)`` with the cone point as basepoint, a model of ``X/A``.

    For ``A = ∅`` this is ``X`` plus a disjoint fixed point; for ``A = X`` it
    is the basepoint alone.
    """
    X = P.total
    apex = X.nverts
    action = [p + (apex,) for p in X.action]
    if len(P.sub) == len(X):
        return Collapsed(GSimplicialComplex(X.group, apex + 1, [(apex,)], action, closed=True), apex)
    simplices = X.all_simplices() + [(apex,)] + [s + (apex,) for s in sorted(P.sub)]
    return Collapsed(GSimplicialComplex(X.group, apex + 1, simplices, action, closed=True), apex)


def _open_orbits(P: GPair) -> set[tuple[int, int]]:
    data = P.total.orbit_data
    return {(n, k) for n, reps in enumerate(data.reps) for k, s in enumerate(reps) if s not in P.sub}


def _closed_orbits(P: GPair) -> set[tuple[int, int]]:
    data = P.total.orbit_data
    return {(n, k) for n, reps in enumerate(data.reps) for k, s in enumerate(reps) if s in P.sub}


def _relative(P: GPair, E: CoefficientSystem) -> list[FGAbGroup]:
    C = assemble_complex(P.total, E, keep=_open_orbits(P)).complex
    return cohomology(C)


def _collapsed(P: GPair, E: CoefficientSystem) -> list[FGAbGroup]:
    Y = collapse(P)
    full = assemble_complex(Y.complex, E)
    orbit = Y.complex.orbit_data.locate[(Y.basepoint,)][0]
    point = assemble_complex(Y.complex, E, keep={(0, orbit)})
    H = cohomology(full.complex)
    h0 = cohomology_group(full.complex, 0)
    p0 = cohomology_group(point.complex, 0)
    res = induced_on_cohomology(restriction_map(full, point), h0, p0)
    ker = res.kernel().group
    out = [FGAbGroup.from_normal_form(*ker.normal_form)] + H[1:]
    dim = P.total.dim
    while len(out) > dim + 1 and out[-1].is_zero:
        out.pop()
    while len(out) < dim + 1:
        out.append(FGAbGroup(0))
    return out


def bredon_csupp(P: GPair, E: CoefficientSystem, *, path: str = "relative",
                 subdivide: str | int = "auto") -> CompactSupportResult:
    """``H^*_c`` of ``X - A``.  ``path`` is ``"relative"`` (default) or ``"collapsed"``."""
    if P.total.group != E.group:
        raise GroupMismatch("pair and coefficient system are over different groups")
    P = apply_pair_policy(P, subdivide)
    if path == "relative":
        groups = _relative(P, E)
        return CompactSupportResult(groups + [FGAbGroup(0)] * (P.total.dim + 1 - len(groups)), RELATIVE)
    if path == "collapsed":
        return CompactSupportResult(_collapsed(P, E), COLLAPSED)
    raise ValueError(f"unknown path {path!r}")


def les_open_closed(P: GPair, E: CoefficientSystem, *, subdivide: str | int = "auto") -> LongExactSequence:
    """``... -> H^n_c(U) -> H^n(X) -> H^n(A) -> H^{n+1}_c(U) -> ...`` with explicit maps."""
    if P.total.group != E.group:
        raise GroupMismatch("pair and coefficient system are over different groups")
    P = apply_pair_policy(P, subdivide)
    X = P.total
    CU = assemble_complex(X, E, keep=_open_orbits(P))
    CX = assemble_complex(X, E)
    CA = assemble_complex(X, E, keep=_closed_orbits(P))
    return long_exact_sequence(restriction_map(CU, CX), restriction_map(CX, CA), names=("U", "X", "A"))

