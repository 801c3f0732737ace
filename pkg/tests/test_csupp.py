import pytest

from bredon import standard
from bredon.cellular import bredon_cohomology
from bredon.coeff import GroupMismatch, coinduced_system, constant_system, representable_system
from bredon.csupp import bredon_csupp, collapse, les_open_closed
from bredon.gcomplex import GPair, GSimplicialComplex, disjoint_union, fixed_subcomplex
from bredon.groups import cyclic_group, symmetric_group, trivial_group
from bredon.verify import corpus_pairs
from oracles import integral_cohomology, trim

Z2, Z3, S3 = cyclic_group(2), cyclic_group(3), symmetric_group(3)
T = trivial_group()


def forms(groups):
    return trim([g.normal_form for g in groups])


def interval():
    return GSimplicialComplex(T, 3, [(0, 1), (1, 2)])


def test_collapse_examples():
    X = interval()
    empty = collapse(GPair(X, frozenset()))
    assert len(empty.complex) == len(X) + 1
    assert [str(g) for g in bredon_cohomology(empty.complex, constant_system(T))] == ["Z^2", "0"]
    full = collapse(GPair(X, frozenset(X.all_simplices())))
    assert full.complex.all_simplices() == [(full.basepoint,)]
    ends = collapse(GPair(X, frozenset({(0,), (2,)})))
    assert [str(g) for g in bredon_cohomology(ends.complex, constant_system(T))] == ["Z", "Z"]


def test_open_interval():
    X = interval()
    P = GPair(X, frozenset({(0,), (2,)}))
    for path in ("relative", "collapsed"):
        assert [str(g) for g in bredon_csupp(P, constant_system(T), path=path).groups] == ["0", "Z"]
    assert forms(bredon_csupp(P, constant_system(T)).groups) == \
        trim(integral_cohomology(X.all_simplices(), exclude=[(0,), (2,)]))


def test_empty_subcomplex_is_ordinary_cohomology():
    for X in (standard.reflection_square(Z2), standard.rotation_cycle(Z3, 6, [2])):
        P = GPair(X, frozenset())
        for _, E in [("constant", constant_system(X.group)), ("rep", representable_system(X.group, X.group.trivial_subgroup))]:
            H = bredon_cohomology(X, E)
            for path in ("relative", "collapsed"):
                assert forms(bredon_csupp(P, E, path=path).groups) == forms(H)


def test_full_subcomplex_is_zero():
    X = standard.reflection_square(Z2)
    P = GPair(X, frozenset(X.all_simplices()))
    for path in ("relative", "collapsed"):
        assert all(g.is_zero for g in bredon_csupp(P, constant_system(Z2), path=path).groups)


def test_orbit_with_empty_subcomplex():
    for H in S3.subgroups:
        X = standard.orbit(S3, H)
        E = representable_system(S3, S3.trivial_subgroup)
        got = bredon_csupp(GPair(X, frozenset()), E, path="collapsed").groups
        assert got[0].isomorphic(E.value(H))


def test_reflection_square_rel_fixed_points():
    X = standard.reflection_square(Z2)
    A = frozenset(fixed_subcomplex(X, Z2.whole).all_simplices())
    P = GPair(X, A)
    E = constant_system(Z2)
    les = les_open_closed(P, E)
    assert les.exact
    # the quotient is an interval and U is its interior
    assert [str(g) for g in bredon_csupp(P, E).groups] == ["0", "Z"]
    C = coinduced_system(Z2)
    assert forms(bredon_csupp(P, C).groups) == trim(integral_cohomology(X.all_simplices(), exclude=A))


def test_coinduced_is_relative_cohomology(corpus):
    for gname, name, P in corpus_pairs(corpus)[::3]:
        E = coinduced_system(P.total.group)
        want = trim(integral_cohomology(P.total.all_simplices(), exclude=P.sub))
        for path in ("relative", "collapsed"):
            assert forms(bredon_csupp(P, E, path=path, subdivide="off").groups) == want, (gname, name, path)


def test_paths_agree_and_sequence_exact(corpus):
    for gname, name, P in corpus_pairs(corpus)[::5]:
        for _, E in corpus.systems(P.total.group)[:3]:
            a = bredon_csupp(P, E, path="relative", subdivide="off").groups
            b = bredon_csupp(P, E, path="collapsed", subdivide="off").groups
            assert forms(a) == forms(b), (gname, name)
            assert les_open_closed(P, E, subdivide="off").exact


def test_additive_over_disjoint_unions():
    X = standard.reflection_square(Z2)
    A = frozenset(fixed_subcomplex(X, Z2.whole).all_simplices())
    U = disjoint_union(X, X)
    shifted = frozenset(tuple(v + X.nverts for v in s) for s in A)
    P = GPair(U, A | shifted)
    E = constant_system(Z2)
    single = bredon_csupp(GPair(X, A), E).groups
    both = bredon_csupp(P, E).groups
    assert forms(both) == forms([g.direct_sum(g) for g in single])


def test_group_mismatch():
    with pytest.raises(GroupMismatch):
        bredon_csupp(GPair(standard.point(Z2), frozenset()), constant_system(Z3))
    with pytest.raises(ValueError):
        bredon_csupp(GPair(standard.point(Z2), frozenset()), constant_system(Z2), path="other")
