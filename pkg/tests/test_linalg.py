import itertools
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors as sympy_factors

from bredon.linalg import (
    AbHom,
    CochainComplex,
    FGAbGroup,
    IntMatrix,
    NotAComplex,
    assemble,
    block_diag,
    cohomology,
    determinant,
    hstack,
    invariant_factors,
    kernel_basis,
    smith,
    vstack,
)
from bredon.linalg.abelian import subquotient
from bredon.linalg.cochain import cohomology_group


def dense(m: IntMatrix) -> Matrix:
    return Matrix(m.nrows, m.ncols, lambda i, j: m[i, j]) if m.nrows and m.ncols else Matrix.zeros(m.nrows, m.ncols)


matrices = st.integers(1, 7).flatmap(lambda m: st.integers(1, 7).flatmap(
    lambda n: st.lists(st.lists(st.integers(-20, 20), min_size=n, max_size=n), min_size=m, max_size=m)))


def test_snf_examples():
    Z = IntMatrix.zeros(3, 2)
    dec = smith(Z)
    assert dec.diagonal == [0, 0] and dec.U == IntMatrix.identity(3) and dec.V == IntMatrix.identity(2)
    assert smith(IntMatrix.from_dense([[2, 4], [6, 8]])).diagonal == [2, 4]
    assert smith(IntMatrix.identity(4)).diagonal == [1, 1, 1, 1]


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_properties(rows):
    A = IntMatrix.from_dense(rows)
    dec = smith(A)
    assert dec.U @ A @ dec.V == dec.D
    assert abs(determinant(dec.U)) == 1 and abs(determinant(dec.V)) == 1
    assert dec.U @ dec.Uinv == IntMatrix.identity(A.nrows)
    assert dec.V @ dec.Vinv == IntMatrix.identity(A.ncols)
    d = dec.diagonal
    assert all(x >= 0 for x in d)
    assert all((a == 0 and b == 0) or (a != 0 and b % a == 0) for a, b in zip(d, d[1:]))
    expected = [abs(int(x)) for x in sympy_factors(Matrix(rows), domain=ZZ)]
    assert d == expected
    assert invariant_factors(A) == [x for x in expected if x]


@settings(max_examples=50, deadline=None)
@given(matrices)
def test_snf_deterministic(rows):
    A = IntMatrix.from_dense(rows)
    a, b = smith(A), smith(A)
    assert (a.U, a.D, a.V) == (b.U, b.D, b.V)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_kernel_is_saturated(rows):
    A = IntMatrix.from_dense(rows)
    K = kernel_basis(A)
    assert (A @ K).is_zero()
    assert K.ncols == A.ncols - len(invariant_factors(A))
    if K.ncols:
        # saturated: the maximal minors of K have gcd 1
        Kd = dense(K)
        g = 0
        for rows_ in itertools.combinations(range(K.nrows), K.ncols):
            g = gcd(g, int(Kd.extract(list(rows_), list(range(K.ncols))).det()))
        assert g == 1


def test_kernel_and_cokernel_examples():
    K = kernel_basis(IntMatrix.from_dense([[1, 1]]))
    assert K.ncols == 1 and sorted(K.column(0)) == [-1, 1]
    assert str(AbHom(FGAbGroup(1), FGAbGroup(1), IntMatrix.from_dense([[2]])).cokernel()) == "Z/2"
    D = IntMatrix.from_dense([[1, 0], [0, 0]])
    assert AbHom(FGAbGroup(2), FGAbGroup(2), D).cokernel().normal_form == (1, ())


def test_group_isomorphism():
    a = FGAbGroup.from_normal_form(1, [2])
    assert a.isomorphic(FGAbGroup.from_normal_form(1, [2]))
    assert FGAbGroup.from_relation_rows(2, [[2, 0], [0, 3]]).isomorphic(FGAbGroup.from_normal_form(0, [6]))
    assert not FGAbGroup.free(1).isomorphic(FGAbGroup.from_normal_form(0, [2]))
    assert FGAbGroup.from_relation_rows(2, [[1, 1]]).normal_form == (1, ())


def test_block_helpers():
    a = IntMatrix.from_dense([[1, 2]])
    b = IntMatrix.from_dense([[3]])
    assert hstack([a, b]).to_dense() == [[1, 2, 3]]
    assert vstack([a, IntMatrix.from_dense([[4, 5]])]).to_dense() == [[1, 2], [4, 5]]
    assert block_diag([a, b]).to_dense() == [[1, 2, 0], [0, 0, 3]]
    m = assemble([1, 1], [2, 1], {(0, 0): a, (1, 1): b})
    assert m.to_dense() == [[1, 2, 0], [0, 0, 3]]


def test_cohomology_examples():
    C = CochainComplex([FGAbGroup(1), FGAbGroup(1)], [IntMatrix.from_dense([[2]])])
    assert [str(g) for g in cohomology(C)] == ["0", "Z/2"]
    Z = CochainComplex([FGAbGroup(2), FGAbGroup(3)], [IntMatrix.zeros(3, 2)])
    assert [g.normal_form for g in cohomology(Z)] == [(2, ()), (3, ())]
    circle = IntMatrix.from_dense([[-1, 1, 0], [0, -1, 1], [1, 0, -1]])
    C = CochainComplex([FGAbGroup(3), FGAbGroup(3)], [circle])
    assert [str(g) for g in cohomology(C)] == ["Z", "Z"]


def test_not_a_complex():
    d = IntMatrix.from_dense([[1]])
    C = CochainComplex([FGAbGroup(1)] * 3, [d, d])
    with pytest.raises(NotAComplex) as info:
        cohomology(C)
    assert info.value.degree == 0


@st.composite
def free_complexes(draw):
    # C^n = Z^{a_n} + Z^{b_n}; d_n sends the b_n part into the a_{n+1} part,
    # so d∘d = 0 by construction while the invariant factors stay arbitrary
    a = draw(st.lists(st.integers(0, 3), min_size=2, max_size=4))
    sizes = a
    b = draw(st.lists(st.integers(0, 3), min_size=len(sizes), max_size=len(sizes)))
    b[-1] = 0
    groups, diffs = [], []
    for n in range(len(sizes)):
        groups.append(FGAbGroup(a[n] + b[n]))
    for n in range(len(sizes) - 1):
        X = draw(st.lists(st.lists(st.integers(-6, 6), min_size=b[n], max_size=b[n]),
                          min_size=a[n + 1], max_size=a[n + 1]))
        rows = [[0] * a[n] + list(r) for r in X] + [[0] * (a[n] + b[n]) for _ in range(b[n + 1])]
        diffs.append(IntMatrix.from_dense(rows, ncols=a[n] + b[n]))
    return CochainComplex(groups, diffs)


@settings(max_examples=100, deadline=None)
@given(free_complexes())
def test_free_and_general_paths_agree(C):
    assert [g.normal_form for g in cohomology(C, method="free")] == \
           [g.normal_form for g in cohomology(C, method="general")]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from([2, 3, 4]), min_size=1, max_size=3),
       st.lists(st.sampled_from([2, 3, 4]), min_size=1, max_size=3),
       st.data())
def test_finite_complex_matches_enumeration(t0, t1, data):
    """Two-term complex of finite groups: compare with counting kernel and image elements."""
    A = FGAbGroup.from_normal_form(0, t0)
    B = FGAbGroup.from_normal_form(0, t1)
    # a homomorphism Z/a -> Z/b is x -> k x with b | k a
    entries = []
    for j, bj in enumerate(t1):
        row = []
        for i, ai in enumerate(t0):
            step = bj // gcd(ai, bj)
            row.append(step * data.draw(st.integers(0, 3)))
        entries.append(row)
    d = IntMatrix.from_dense(entries, ncols=len(t0))
    C = CochainComplex([A, B], [d])
    H = cohomology(C)
    elems_a = list(itertools.product(*[range(x) for x in t0]))
    image = set()
    ker = 0
    for x in elems_a:
        y = tuple(sum(entries[j][i] * x[i] for i in range(len(t0))) % t1[j] for j in range(len(t1)))
        image.add(y)
        ker += all(v == 0 for v in y)
    size_b = 1
    for x in t1:
        size_b *= x
    assert H[0].order() == ker
    assert H[1].order() == size_b // len(image)


def test_general_path_on_presented_groups():
    # Z --2--> Z/4 --4--> Z/8: H0 = 2Z, H1 = {0,2}/{0,2}, H2 = (Z/8)/{0,4}
    C = CochainComplex([FGAbGroup(1), FGAbGroup.from_normal_form(0, [4]), FGAbGroup.from_normal_form(0, [8])],
                       [IntMatrix.from_dense([[2]]), IntMatrix.from_dense([[4]])])
    H = cohomology(C)
    assert H[0].normal_form == (1, ())
    assert H[1].is_zero
    assert H[2].normal_form == (0, (4,))


def test_subquotient_basis_maps_into_lattice():
    L = IntMatrix.from_dense([[2, 0], [0, 3]])
    R = IntMatrix.from_dense([[4], [0]])
    sq = subquotient(L, R)
    assert sq.group.normal_form == (1, (2,))


def test_cohomology_group_coordinates():
    C = CochainComplex([FGAbGroup(1), FGAbGroup(1)], [IntMatrix.from_dense([[3]])])
    h1 = cohomology_group(C, 1)
    assert h1.group.normal_form == (0, (3,))
