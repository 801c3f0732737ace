import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bredon import standard
from bredon.gcomplex import (
    GPair,
    GSimplicialComplex,
    InvalidComplex,
    NonRegular,
    SimplicialMap,
    barycentric_subdivide,
    cone,
    disjoint_union,
    empty_complex,
    fixed_subcomplex,
    induce,
    quotient,
    regularize,
    subdivision_retraction,
)
from bredon.groups import cyclic_group, symmetric_group, trivial_group

Z2, Z3, Z4, S3 = cyclic_group(2), cyclic_group(3), cyclic_group(4), symmetric_group(3)
GROUPS = [Z2, Z3, Z4, S3]


def swap_edge():
    return GSimplicialComplex.from_facets(Z2, 2, [(0, 1)], [[1, 0]])


def free_hexagon():
    return standard.rotation_cycle(Z2, 6, [3])


def test_validate_examples():
    assert standard.point(Z2).validate().regular
    r = swap_edge().validate()
    assert r.valid and not r.regular and r.violations
    r = free_hexagon().validate()
    assert r.valid and r.regular


def test_validate_catches_bad_action():
    # the generator and its square both swap: not a homomorphism
    bad = [(0, 1), (1, 0), (1, 0), (0, 1)]
    X = GSimplicialComplex(Z4, 2, [(0,), (1,)], bad)
    r = X.validate()
    assert not r.valid and any("homomorphism" in v for v in r.violations)
    Y = GSimplicialComplex(Z2, 3, [(0, 1), (2,)], [(0, 1, 2), (0, 2, 1)])
    assert not Y.validate().valid


def test_invalid_inputs():
    with pytest.raises(InvalidComplex):
        GSimplicialComplex(Z2, 2, [(0, 2)])
    with pytest.raises(InvalidComplex):
        GSimplicialComplex.from_facets(Z2, 2, [(0, 1)], [[0, 0]])


def test_regularity():
    assert not swap_edge().is_regular()
    assert barycentric_subdivide(swap_edge()).is_regular()
    assert free_hexagon().is_regular()
    with pytest.raises(NonRegular):
        swap_edge().orbit_data


def test_subdivision_counts():
    sd = barycentric_subdivide(swap_edge())
    assert [len(c) for c in sd.simplices] == [3, 2]
    mid = next(v for v in sd.vertices() if all(sd.action[g][v] == v for g in range(2)))
    assert sd.all_simplices().count((mid,)) == 1
    tri = GSimplicialComplex(trivial_group(), 3, [(0, 1), (1, 2), (0, 2)])
    assert [len(c) for c in barycentric_subdivide(tri).simplices] == [6, 6]
    full = GSimplicialComplex(trivial_group(), 3, [(0, 1, 2)])
    assert [len(c) for c in barycentric_subdivide(full).simplices] == [7, 12, 6]


def test_second_subdivision_is_regular():
    cases = [swap_edge(), GSimplicialComplex.from_facets(Z3, 3, [(0, 1, 2)], [[1, 2, 0]]),
             GSimplicialComplex.from_facets(Z2, 4, [(0, 1, 2), (1, 2, 3)], [[3, 2, 1, 0]])]
    for X in cases:
        assert not X.is_regular()
        Y, k = regularize(X)
        assert Y.is_regular() and 1 <= k <= 2
        assert barycentric_subdivide(barycentric_subdivide(X)).is_regular()


def test_fixed_points():
    X = free_hexagon()
    assert len(fixed_subcomplex(X, Z2.trivial_subgroup)) == len(X)
    assert len(fixed_subcomplex(X, Z2.whole)) == 0
    R = standard.reflection_square(Z2)
    assert fixed_subcomplex(R, Z2.whole).all_simplices() == [(0,), (2,)]


def test_quotient_examples():
    Q = quotient(standard.point(S3))
    assert Q.counts() == [1] and Q.strata[(0, 0)] == S3.conjugacy_poset.index(S3.whole)
    Q = quotient(free_hexagon())
    assert Q.counts() == [3, 3]
    assert set(Q.strata.values()) == {Z2.conjugacy_poset.index(Z2.trivial_subgroup)}
    Q = quotient(standard.reflection_square(Z2))
    assert Q.counts() == [3, 2]
    fixed = Z2.conjugacy_poset.index(Z2.whole)
    assert sorted(Q.strata[Q.cellmap[(v,)]] == fixed for v in range(4)) == [False, False, True, True]
    assert all(Q.strata[Q.cellmap[e]] != fixed for e in [(0, 1), (1, 2)])
    interval = Q.as_simplicial_complex()
    assert [len(c) for c in interval.simplices] == [3, 2]


def test_orbit_data_examples():
    d = standard.point(Z3).orbit_data
    assert d.reps == [[(0,)]] and d.stabilizers[0][0].order == 3
    d = free_hexagon().orbit_data
    assert [len(r) for r in d.reps] == [3, 3]
    assert all(H.order == 1 for row in d.stabilizers for H in row)
    d = standard.reflection_square(Z2).orbit_data
    assert sorted(H.order for H in d.stabilizers[0]) == [1, 2, 2]
    assert [H.order for H in d.stabilizers[1]] == [1, 1]


def test_induce_examples():
    Te, _ = Z2.subgroup_group(Z2.trivial_subgroup)
    pt = GSimplicialComplex(Te, 1, [(0,)])
    X = induce(pt, Z2, Z2.trivial_subgroup)
    assert X.vertices() == [0, 1] and X.action[1] == (1, 0)
    I = GSimplicialComplex(Te, 2, [(0, 1)])
    X = induce(I, Z2, Z2.trivial_subgroup)
    assert [len(c) for c in X.simplices] == [4, 2]
    Y = standard.reflection_square(Z2)
    same = induce(Y.restrict(Z2.whole), Z2, Z2.whole)
    assert [len(c) for c in same.simplices] == [len(c) for c in Y.simplices]


def test_cone_and_union():
    assert len(cone(empty_complex(Z2))) == 1
    C = cone(standard.orbit(Z2, Z2.trivial_subgroup))
    assert [len(c) for c in C.simplices] == [3, 2]
    apex = C.nverts - 1
    assert all(C.action[g][apex] == apex for g in range(2))
    U = disjoint_union(standard.point(Z2), free_hexagon())
    assert len(U) == 1 + len(free_hexagon())


def test_cone_counts_on_corpus(corpus):
    for _, _, e in corpus.entries():
        assert len(cone(e.complex)) == 2 * len(e.complex) + 1


def test_face_stabilizers_contain_cell_stabilizer(corpus):
    for _, G, e in corpus.entries():
        d = e.complex.orbit_data
        P = G.conjugacy_poset
        for n in range(1, len(d.reps)):
            for k, faces in enumerate(d.faces[n]):
                H = d.stabilizers[n][k]
                for fd in faces:
                    K = d.stabilizers[n - 1][fd.orbit]
                    assert P.le(H, K)


def test_translators_hit_representatives(corpus):
    for _, G, e in corpus.entries():
        X = e.complex
        d = X.orbit_data
        for s, (orbit, h) in d.locate.items():
            assert X.apply(h, s) == d.reps[len(s) - 1][orbit]
        for n in range(1, len(d.reps)):
            for k, rep in enumerate(d.reps[n]):
                for fd in d.faces[n][k]:
                    f = rep[:fd.position] + rep[fd.position + 1:]
                    assert X.apply(fd.translator, f) == d.reps[n - 1][fd.orbit]
                for g in d.stabilizers[n][k].elements:
                    assert all(X.action[g][v] == v for v in rep)


def test_quotient_strata_order_reversing(corpus):
    for _, G, e in corpus.entries():
        Q = quotient(e.complex)
        P = G.conjugacy_poset
        for c in Q.cells:
            for f in Q.faces[c]:
                assert P.leq[Q.strata[c]][Q.strata[f]]
        assert set(Q.cellmap.values()) == set(Q.cells)
        for s, c in Q.cellmap.items():
            assert c[0] == len(s) - 1
            for g in range(G.order):
                assert Q.cellmap[e.complex.apply(g, s)] == c


def test_quotient_of_induced_matches():
    rng = random.Random(5)
    for G in (Z4, S3):
        for H in G.subgroups:
            Hg, emb = G.subgroup_group(H)
            Y, _ = regularize(standard.random_equivariant(Hg, rng)) if Hg.order > 1 else (standard.cycle(4), 0)
            if Hg.order == 1:
                Y = GSimplicialComplex(Hg, Y.nverts, Y.all_simplices())
            X = induce(Y, G, H)
            qx, qy = quotient(X), quotient(Y)
            assert qx.counts() == qy.counts()
            # class of a stabilizer in H maps to the class of its image in G
            sx = sorted(G.conjugacy_poset.index(G.subgroup([emb[g] for g in K.elements]))
                        for K in (Y.orbit_data.stabilizers[n][k] for n, k in qy.cells))
            assert sorted(qx.strata.values()) == sx


def test_pair_validation():
    X = free_hexagon()
    with pytest.raises(InvalidComplex):
        GPair.from_facets(X, [(0, 1)])  # not invariant
    with pytest.raises(InvalidComplex):
        GPair(X, frozenset({(0, 1)}))  # not face-closed
    P = GPair.from_facets(X, [(0, 1), (3, 4)])
    assert len(P.open_cells()) == len(X) - len(P.sub)


def test_retraction_is_simplicial_and_equivariant(corpus):
    for _, _, e in list(corpus.entries())[::4]:
        sd, phi = subdivision_retraction(e.complex)
        phi.check()


def test_simplicial_map_check_rejects():
    X = free_hexagon()
    with pytest.raises(ValueError):
        SimplicialMap(X, X, {v: (v + 1) % 6 if v != 0 else 3 for v in range(6)}).check()


@st.composite
def equivariant(draw):
    G = draw(st.sampled_from(GROUPS))
    seed = draw(st.integers(0, 10_000))
    return standard.random_equivariant(G, random.Random(seed))


@settings(max_examples=40, deadline=None)
@given(equivariant())
def test_random_complexes_regularize(X):
    assert X.validate().valid
    Y, k = regularize(X)
    assert Y.is_regular() and k <= 2
    sd = barycentric_subdivide(X)
    assert sd.validate().valid
    assert len(sd.vertices()) == len(X)
