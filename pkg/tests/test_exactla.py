from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from tiltlab.exactla import (
    ContainmentError,
    DimensionError,
    Matrix,
    Subspace,
    linear_solve,
    subspace_calc,
)

entries = st.integers(-3, 3).map(Fraction) | st.fractions(min_value=-2, max_value=2, max_denominator=4)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix.from_rows(rows)


def to_sympy(m: Matrix) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in m.data])


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_and_rref_agree_with_sympy(m):
    ref, piv = to_sympy(m).rref()
    ours, pivots = m.rref()
    assert m.rank() == len(piv)
    assert pivots == tuple(piv)
    assert [list(map(sympy.Rational, r)) for r in ours.data] == ref[:len(piv), :].tolist()


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    k = m.kernel()
    assert k.dim + m.rank() == m.cols
    for v in k.vectors:
        assert not any(m.apply(v))
    assert k.dim == len(to_sympy(m).nullspace())


@settings(max_examples=40, deadline=None)
@given(matrices(), st.data())
def test_linear_solve_consistent_rhs(m, data):
    x = data.draw(st.lists(entries, min_size=m.cols, max_size=m.cols))
    b = m.apply(x)
    sol = linear_solve(m, b)
    assert sol.particular is not None
    assert m.apply(sol.particular) == b
    assert sol.rank == m.rank()


def test_linear_solve_inconsistent():
    m = Matrix.from_rows([[1, 1], [2, 2]])
    assert linear_solve(m, [1, 3]).particular is None
    with pytest.raises(DimensionError):
        linear_solve(m, [1, 2, 3])


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(
    st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_inverse(rows):
    m = Matrix.from_rows(rows)
    if m.rank() < m.rows:
        with pytest.raises(ZeroDivisionError):
            m.inverse()
    else:
        assert m @ m.inverse() == Matrix.identity(m.rows)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.lists(entries, min_size=n, max_size=n), max_size=4),
    st.lists(st.lists(entries, min_size=n, max_size=n), max_size=4))))
def test_sum_intersection_dimension_formula(args):
    n, us, vs = args
    u, v = Subspace.span(us, n), Subspace.span(vs, n)
    s, i = u + v, u & v
    assert s.dim + i.dim == u.dim + v.dim
    assert u.contains_space(i) and v.contains_space(i)
    assert s.contains_space(u) and s.contains_space(v)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.lists(entries, min_size=n, max_size=n), max_size=4),
    st.lists(st.lists(entries, min_size=n, max_size=n), max_size=3))))
def test_quotient_coordinates(args):
    n, us, vs = args
    v = Subspace.span(vs, n)
    u = Subspace.span(us, n) + v
    q = subspace_calc(u, v, "quotient_coords")
    assert q.rank == u.dim - v.dim
    for w in v.vectors:
        assert not any(q(w))
    # the lifts are a section of the coordinate map
    for k in range(q.rank):
        e = tuple(Fraction(int(j == k)) for j in range(q.rank))
        assert q(q.lift(e)) == e
        assert q.lift(e) in u


def test_quotient_requires_containment():
    u = Subspace.span([[1, 0]], 2)
    v = Subspace.span([[0, 1]], 2)
    with pytest.raises(ContainmentError):
        subspace_calc(u, v, "quotient_coords")


def test_span_is_canonical():
    a = Subspace.span([[1, 2, 3], [0, 1, 1]], 3)
    b = Subspace.span([[1, 3, 4], [2, 4, 6], [0, 2, 2]], 3)
    assert a == b
    assert a.coords([1, 3, 4]) is not None
    assert [0, 0, 1] not in a


def test_ambient_mismatch():
    with pytest.raises(DimensionError):
        Subspace.zero(2) + Subspace.zero(3)
    with pytest.raises(DimensionError):
        Matrix.identity(2) @ Matrix.identity(3)


def test_annihilator():
    u = Subspace.span([[1, 1, 0]], 3)
    ann = u.annihilator()
    assert ann.dim == 2
    assert all(sum(a * b for a, b in zip(w, u.vectors[0])) == 0 for w in ann.vectors)
    assert Subspace.zero(3).annihilator().dim == 3
