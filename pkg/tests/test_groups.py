import itertools

import pytest

from bredon.groups import (
    FiniteGroup,
    NotAGroup,
    OrbitCategory,
    OrderBoundExceeded,
    SourceTargetMismatch,
    compose_orbit,
    conjugacy_poset,
    cyclic_group,
    dihedral_group,
    enumerate_subgroups,
    hom_orbit,
    klein_four,
    symmetric_group,
)
from oracles import brute_subgroups, equivariant_map_count, fixed_coset_count

SMALL = [cyclic_group(1), cyclic_group(2), cyclic_group(3), cyclic_group(4), klein_four(),
         symmetric_group(3), dihedral_group(4)]


def test_tables():
    T = FiniteGroup.from_multiplication_table([[0]])
    assert T.order == 1 and T.generators == ()
    Z2 = FiniteGroup.from_multiplication_table([[0, 1], [1, 0]])
    assert Z2.order == 2 and Z2.inverse == (0, 1)
    S3 = symmetric_group(3)
    again = FiniteGroup.from_multiplication_table(S3.mul)
    assert again.order == 6 and len(again.generators) == 2


@pytest.mark.parametrize("table", [
    [[0, 1], [0, 1]],
    [[0, 1, 2], [1, 2, 0], [2, 1, 0]],
    [[0, 1], [1]],
])
def test_bad_tables(table):
    with pytest.raises((NotAGroup, ValueError)):
        FiniteGroup.from_multiplication_table(table)


def test_identity_need_not_be_zero():
    G = FiniteGroup.from_multiplication_table([[1, 0], [0, 1]])
    assert G.identity == 1


def test_not_a_group_has_witness():
    with pytest.raises(NotAGroup) as info:
        FiniteGroup.from_multiplication_table([[0, 1, 2], [1, 2, 0], [2, 1, 0]])
    assert info.value.witness


def test_permutations():
    assert FiniteGroup.from_permutations([]).order == 1
    assert FiniteGroup.from_permutations([[1, 0]]).order == 2
    S = FiniteGroup.from_permutations([[1, 0, 2], [1, 2, 0]])
    assert S.order == 6
    assert len(S.subgroups) == 6
    with pytest.raises(OrderBoundExceeded):
        FiniteGroup.from_permutations([[1, 0, 2, 3], [1, 2, 3, 0]], order_bound=10)


def test_permutation_numbering_is_stable():
    a = FiniteGroup.from_permutations([[1, 0, 2], [1, 2, 0]])
    b = FiniteGroup.from_permutations([[1, 0, 2], [1, 2, 0]])
    assert a.mul == b.mul and a.perms == b.perms
    assert a.perms[0] == (0, 1, 2)


@pytest.mark.parametrize("G", SMALL, ids=lambda G: f"order{G.order}-{len(G.generators)}gens")
def test_subgroups_match_brute_force(G):
    found = {frozenset(H.elements) for H in enumerate_subgroups(G)}
    assert found == brute_subgroups(G.mul)
    assert len(found) == len(enumerate_subgroups(G))


def test_subgroup_counts():
    assert len(cyclic_group(1).subgroups) == 1
    assert sorted(H.order for H in cyclic_group(4).subgroups) == [1, 2, 4]
    assert sorted(H.order for H in symmetric_group(3).subgroups) == [1, 2, 2, 2, 3, 6]


def test_conjugacy_poset():
    P = conjugacy_poset(cyclic_group(1))
    assert len(P) == 1 and P.leq == ((True,),)
    P = conjugacy_poset(cyclic_group(2))
    assert len(P) == 2
    S3 = symmetric_group(3)
    P = S3.conjugacy_poset
    assert len(P) == 4
    two = next(H for H in S3.subgroups if H.order == 2)
    three = next(H for H in S3.subgroups if H.order == 3)
    assert not P.le(two, three) and not P.le(three, two)
    for H in S3.subgroups:
        assert P.le(S3.trivial_subgroup, H) and P.le(H, S3.whole)


@pytest.mark.parametrize("G", SMALL, ids=lambda G: f"order{G.order}-{len(G.generators)}gens")
def test_hom_counts(G):
    C = OrbitCategory(G)
    for H in G.subgroups:
        for K in G.subgroups:
            n = len(hom_orbit(C, H, K))
            assert n == fixed_coset_count(G.mul, H.elements, K.elements)
            if G.order <= 4:
                assert n == equivariant_map_count(G.mul, H.elements, K.elements)


@pytest.mark.parametrize("G", SMALL, ids=lambda G: f"order{G.order}-{len(G.generators)}gens")
def test_poset_matches_homs(G):
    C = OrbitCategory(G)
    P = G.conjugacy_poset
    for i in range(len(P)):
        for j in range(len(P)):
            assert P.leq[i][j] == bool(C.hom(P.representative(i), P.representative(j)))


def test_hom_examples():
    Z2 = cyclic_group(2)
    C = OrbitCategory(Z2)
    e = Z2.trivial_subgroup
    assert len(C.hom(e, e)) == 2
    for G in SMALL[1:]:
        assert OrbitCategory(G).hom(G.whole, G.trivial_subgroup) == ()
    S3 = symmetric_group(3)
    two = next(H for H in S3.subgroups if H.order == 2)
    assert len(OrbitCategory(S3).hom(two, two)) == 1


def test_swap_squares_to_identity():
    Z2 = cyclic_group(2)
    C = OrbitCategory(Z2)
    e = Z2.trivial_subgroup
    swap = next(f for f in C.hom(e, e) if f != C.identity(e))
    assert compose_orbit(C, swap, swap) == C.identity(e)


@pytest.mark.parametrize("G", [cyclic_group(2), cyclic_group(4), symmetric_group(3), dihedral_group(4)],
                         ids=lambda G: f"order{G.order}")
def test_category_laws(G):
    C = OrbitCategory(G)
    arrows = C.all_morphisms()
    for f in arrows:
        assert C.compose(C.identity(f.source), f) == f
        assert C.compose(f, C.identity(f.target)) == f
    by_source: dict = {}
    for f in arrows:
        by_source.setdefault(f.source, []).append(f)
    for f in arrows:
        for g in by_source[f.target]:
            for h in by_source[g.target]:
                assert C.compose(C.compose(f, g), h) == C.compose(f, C.compose(g, h))


def test_composition_matches_set_maps():
    G = symmetric_group(3)
    C = OrbitCategory(G)
    arrows = C.all_morphisms()
    for f, g in itertools.product(arrows, repeat=2):
        if f.target != g.source:
            continue
        fm, gm, hm = C.as_set_map(f), C.as_set_map(g), C.as_set_map(C.compose(f, g))
        assert all(hm[x] == gm[fm[x]] for x in fm)


def test_compose_mismatch():
    G = cyclic_group(2)
    C = OrbitCategory(G)
    f = C.identity(G.trivial_subgroup)
    g = C.identity(G.whole)
    with pytest.raises(SourceTargetMismatch):
        C.compose(f, g)
