from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from lochodge.linalg import (FiniteComplex, IncrementalSpan, RationalMatrix, cohomology_dim,
                             image_basis, image_of_subspace, inverse, kernel_basis, rank,
                             row_reduce, solve, solve_many, span_dim, subspace_eq, subspace_intersection,
                             subspace_leq, subspace_sum)

small = st.integers(-3, 3)


@st.composite
def matrices(draw, max_dim=6):
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    rows = [[draw(small) for _ in range(c)] for _ in range(r)]
    return RationalMatrix.from_rows(rows, c)


@st.composite
def vector_lists(draw, dim, max_len=4):
    k = draw(st.integers(0, max_len))
    return [tuple(Fraction(draw(small)) for _ in range(dim)) for _ in range(k)]


def sympy_rank(M: RationalMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    return sympy.Matrix(M.rows, M.cols, lambda i, j: sympy.Rational(str(M.to_dense()[i][j]))).rank()


def test_rank_examples():
    assert rank(RationalMatrix.identity(2)) == 2
    assert rank(RationalMatrix.zero(3, 4)) == 0
    assert rank(RationalMatrix.from_rows([[1, 2], [2, 4]])) == 1


def test_kernel_and_image_examples():
    assert kernel_basis(RationalMatrix.from_rows([[1, 1]])) == [(1, -1)]
    assert image_basis(RationalMatrix.identity(3)) == row_reduce([(1, 0, 0), (0, 1, 0), (0, 0, 1)], 3)
    assert len(kernel_basis(RationalMatrix.zero(2, 3))) == 3


def test_cohomology_examples():
    # dims (1, 2, 1) with both maps zero
    C = FiniteComplex([1, 2, 1], [RationalMatrix.zero(2, 1), RationalMatrix.zero(1, 2)])
    assert [cohomology_dim(C, q) for q in range(3)] == [1, 2, 1]
    exact = FiniteComplex([1, 1], [RationalMatrix.identity(1)])
    assert [cohomology_dim(exact, q) for q in range(2)] == [0, 0]
    assert cohomology_dim(FiniteComplex([1], []), 0) == 1


def test_d_squared_rejected():
    d0 = RationalMatrix.from_rows([[1]])
    d1 = RationalMatrix.from_rows([[1]])
    with pytest.raises(ValueError):
        FiniteComplex([1, 1, 1], [d0, d1])


def test_subspace_examples():
    assert subspace_leq([(1, 0)], [(1, 0), (0, 1)])
    assert subspace_intersection([(1, 1)], [(1, 0)]) == []
    swap = RationalMatrix.from_rows([[0, 1], [1, 0]])
    assert image_of_subspace(swap, [(1, 0)]) == [(0, 1)]
    with pytest.raises(ValueError):
        subspace_leq([(1, 0)], [(1, 0, 0)])


def test_solve_and_inverse():
    M = RationalMatrix.from_rows([[2, 1], [1, 1]])
    assert solve(M, [3, 2]) == (1, 1)
    assert (inverse(M) @ M).to_dense() == RationalMatrix.identity(2).to_dense()
    assert solve(RationalMatrix.from_rows([[1, 1], [1, 1]]), [1, 2]) is None


@given(matrices())
def test_rank_matches_sympy(M):
    assert rank(M) == sympy_rank(M)


@given(matrices())
def test_rank_nullity(M):
    K = kernel_basis(M)
    assert len(K) + rank(M) == M.cols
    for v in K:
        assert not any(M.apply(v))
    assert len(image_basis(M)) == rank(M)


@given(matrices())
def test_transpose_rank(M):
    assert rank(M.transpose()) == rank(M)


@st.composite
def random_complexes(draw):
    """Direct sums of Q (lone) and Q -> Q (pairs), conjugated by random invertible maps.

    The cohomology is known by construction: one dimension per lone summand.
    """
    length = draw(st.integers(1, 4))
    lone = [draw(st.integers(0, 2)) for _ in range(length)]
    pairs = [draw(st.integers(0, 2)) for _ in range(length - 1)]
    dims = [lone[i] + (pairs[i] if i < length - 1 else 0) + (pairs[i - 1] if i > 0 else 0)
            for i in range(length)]
    base = []
    for i in range(length - 1):
        ent = {}
        # layout of space i: [lone | pairs into i+1 | pairs from i-1]
        src0 = lone[i]
        tgt0 = lone[i + 1] + (pairs[i + 1] if i + 1 < length - 1 else 0)
        for p in range(pairs[i]):
            ent[(tgt0 + p, src0 + p)] = Fraction(1)
        base.append(RationalMatrix(dims[i + 1], dims[i], ent))
    gs = []
    for d in dims:
        while True:
            g = RationalMatrix.from_rows([[draw(small) for _ in range(d)] for _ in range(d)], d)
            if rank(g) == d:
                break
        gs.append(g)
    diffs = [gs[i + 1] @ base[i] @ inverse(gs[i]) for i in range(length - 1)]
    return FiniteComplex(dims, diffs), lone


@given(random_complexes())
def test_cohomology_of_random_complexes(data):
    C, lone = data
    assert [cohomology_dim(C, q) for q in range(len(lone))] == lone
    # dense oracle through sympy ranks
    for q in range(len(lone)):
        out = sympy_rank(C.d(q)) if q < len(lone) - 1 else 0
        inc = sympy_rank(C.d(q - 1)) if q > 0 else 0
        assert C.dim(q) - out - inc == lone[q]
        assert C.cohomology(q).dim == lone[q]


@given(random_complexes())
def test_cohomology_coordinates(data):
    C, lone = data
    for q in range(len(lone)):
        H = C.cohomology(q)
        for i, z in enumerate(H.reps):
            assert H.coordinates(z) == tuple(Fraction(int(i == j)) for j in range(H.dim))
        for b in H.boundaries:
            assert not any(H.coordinates(b))


@given(st.integers(1, 4).flatmap(lambda d: st.tuples(st.just(d), vector_lists(d), vector_lists(d))))
def test_lattice_laws(data):
    dim, U, V = data
    UV = subspace_intersection(U, V, dim)
    assert subspace_eq(UV, subspace_intersection(V, U, dim), dim)
    assert subspace_eq(subspace_intersection(U, U, dim), row_reduce(U, dim), dim)
    S = subspace_sum(U, V, dim)
    assert subspace_leq(U, S, dim) and subspace_leq(V, S, dim)
    assert subspace_leq(UV, U, dim) and subspace_leq(UV, V, dim)
    assert len(S) + len(UV) == span_dim(U, dim) + span_dim(V, dim)


@given(st.integers(1, 5).flatmap(lambda d: st.tuples(st.just(d), vector_lists(d, 6))))
def test_incremental_span_matches_batch(data):
    dim, vecs = data
    acc = IncrementalSpan()
    for i, v in enumerate(vecs):
        grew = acc.add(v)
        assert grew == (span_dim(vecs[:i + 1], dim) > span_dim(vecs[:i], dim))
    assert len(acc) == span_dim(vecs, dim)


@given(st.integers(1, 4).flatmap(lambda d: st.tuples(st.just(d), vector_lists(d))))
def test_row_reduce_is_canonical(data):
    dim, U = data
    assert row_reduce(U, dim) == row_reduce(list(reversed(U)) + U, dim)


@given(matrices(), st.lists(st.lists(small, min_size=6, max_size=6), max_size=3))
def test_solve_many_matches_solve(M, raw):
    bs = [b[:M.rows] for b in raw]
    for b, x in zip(bs, solve_many(M, bs)):
        y = solve(M, b)
        assert (x is None) == (y is None)
        if x is not None:
            assert list(M.apply(x)) == [Fraction(v) for v in b]
