from fractions import Fraction

from hypothesis import given, settings, strategies as st

from clustertube.linalg import (
    ExactMatrix,
    QuotientSpace,
    coords_in_span,
    kernel_basis,
    rank,
    rref,
    solve,
)


def test_rref_identity():
    m = ExactMatrix.identity(2)
    red, pivots, rk = rref(m)
    assert rk == 2
    assert pivots == (0, 1)
    assert red == m


def test_rref_zero_matrix():
    assert rref(ExactMatrix.zero(3, 3)).rank == 0


def test_rref_rank_one():
    # second row is twice the first
    assert rank(ExactMatrix([[1, 2], [2, 4]])) == 1


def test_kernel_identity_empty():
    assert kernel_basis(ExactMatrix.identity(3)) == []


def test_kernel_zero_matrix_full():
    assert len(kernel_basis(ExactMatrix.zero(2, 3))) == 3


def test_kernel_sum_constraint():
    (v,) = kernel_basis(ExactMatrix([[1, 1]]))
    assert v[0] == -v[1] != 0


def test_solve_basic():
    m = ExactMatrix([[2, 0], [0, 3]])
    assert solve(m, [4, 9]) == (Fraction(2), Fraction(3))
    assert solve(ExactMatrix([[1], [1]]), [1, 2]) is None


def test_coords_in_span():
    cols = [(1, 0, 1), (0, 1, 1)]
    assert coords_in_span(cols, (2, 3, 5)) == (Fraction(2), Fraction(3))
    assert coords_in_span(cols, (0, 0, 1)) is None


def test_quotient_space_projection():
    q = QuotientSpace(3, [(1, 1, 0)])
    assert q.dim == 2
    image = q.project((1, 1, 0))
    assert not any(image)
    v = q.project((1, 0, 0))
    assert q.project(q.lift(v)) == v


small_entries = st.integers(min_value=-4, max_value=4)


@st.composite
def matrices(draw):
    nrows = draw(st.integers(min_value=1, max_value=4))
    ncols = draw(st.integers(min_value=1, max_value=4))
    rows = draw(
        st.lists(
            st.lists(small_entries, min_size=ncols, max_size=ncols),
            min_size=nrows,
            max_size=nrows,
        )
    )
    return ExactMatrix(rows)


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rref_idempotent(m):
    red = rref(m).matrix
    assert rref(red).matrix == red


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rank_nullity(m):
    vecs = kernel_basis(m)
    assert rank(m) + len(vecs) == m.ncols
    for v in vecs:
        assert not any(m.apply(v))
