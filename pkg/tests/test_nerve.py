from hypothesis import assume, given, settings, strategies as st

from conftest import degrees, ideal, monomial_ideals
from lochodge.linalg import rank, subspace_eq
from lochodge.monomial import radical
from lochodge.nerve import (dowker_transfer, maximal_patterns, nerve_cohomology_dim, nerve_complex,
                            restriction_image, submasks)
from lochodge.resolutions import ext_colimit_image, ext_image_via_solved_lift
from lochodge.strands import SubsetComplex


def covering_strand(pats, S):
    r = len(pats)
    keep = []
    for m in range(1 << r):
        common = S
        for j in range(r):
            if m >> j & 1:
                common &= pats[j]
        if not common:
            keep.append(m)
    return SubsetComplex(r, keep)


def test_helpers():
    assert sorted(submasks(0b101)) == [0, 1, 4, 5]
    assert maximal_patterns([1, 3, 3, 4, 0]) == [3, 4]
    N = nerve_complex(3, [0b011, 0b110])
    assert N.bases[2] == [0b011, 0b110] and N.bases[3] == []


def test_two_points_and_circle():
    # (x1, x2) at (-1, -1): two disjoint vertices, one reduced H^0
    assert nerve_cohomology_dim(2, [0b10, 0b01], 2) == 1
    # boundary of a triangle: H^1 of a circle
    tri = [0b011, 0b110, 0b101]
    assert nerve_cohomology_dim(3, tri, 3) == 1
    assert nerve_cohomology_dim(3, tri, 2) == 0


@st.composite
def pattern_sets(draw):
    n = draw(st.integers(1, 4))
    S = draw(st.integers(1, (1 << n) - 1))
    pats = draw(st.lists(st.integers(0, (1 << n) - 1).map(lambda p: p & S), min_size=1, max_size=5))
    return n, S, pats


@settings(max_examples=60)
@given(pattern_sets())
def test_nerve_matches_covering_strand(data):
    n, S, pats = data
    C = covering_strand(pats, S)
    for q in range(len(pats) + 1):
        assert nerve_cohomology_dim(n, pats, q) == C.cohomology_dim(q)


@settings(max_examples=60)
@given(pattern_sets())
def test_dowker_transfer_is_invertible(data):
    n, S, pats = data
    C = covering_strand(pats, S)
    for q in range(len(pats) + 1):
        T = dowker_transfer(n, pats, q, C)
        assert T.rows == T.cols == C.cohomology_dim(q)
        assert rank(T) == T.rows


@given(pattern_sets())
def test_restriction_to_itself_is_everything(data):
    n, S, pats = data
    for p in range(n + 1):
        d = nerve_complex(n, pats).cohomology_dim(p)
        assert len(restriction_image(n, pats, pats, p)) == d


@settings(max_examples=30)
@given(monomial_ideals(n_max=3, gens_max=3, exp_max=2).flatmap(
    lambda I: st.tuples(st.just(I), degrees(I.n), st.integers(0, 1))))
def test_nerve_route_matches_witness_route(data):
    I, u, k = data
    assume(not I.is_unit)
    for q in range(len(radical(I).gens) + 1):
        a = ext_colimit_image(I, q, u, k)
        b = ext_colimit_image(I, q, u, k, route="witness")
        assert a.ext_dim == b.ext_dim
        assert subspace_eq(a.subspace, b.subspace, a.cech_dim)


def test_routes_agree_on_proper_subspaces():
    # strands of dimension >= 2 where the image is neither 0 nor everything
    cases = [(ideal((2, 1, 0), (1, 0, 2), (0, 2, 1)), 2, (-1, -2, -1), 0),
             (ideal((0, 2, 0, 1), (2, 1, 1, 0), (1, 0, 2, 1)), 2, (0, -2, -1, -1), 0)]
    for I, q, u, k in cases:
        a = ext_colimit_image(I, q, u, k)
        assert (len(a.subspace), a.cech_dim) == (1, 2)
        b = ext_colimit_image(I, q, u, k, route="witness")
        c = ext_image_via_solved_lift(I, q, u, k)
        assert subspace_eq(a.subspace, b.subspace, a.cech_dim)
        assert subspace_eq(a.subspace, c, a.cech_dim)
