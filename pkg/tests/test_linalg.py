from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from fcy.errors import DimensionMismatch, MalformedInput, NonSquareMatrix, ZeroDivisionInField
from fcy.linalg import (QQ, PrimeField, identity, invert, matmul, matvec, nullspace,
                        parse_field, rank, row_reduce, solve)


def test_row_reduce_identity():
    rref, r, piv = row_reduce([[1, 0], [0, 1]])
    assert rref == [[1, 0], [0, 1]] and r == 2 and piv == [0, 1]


def test_row_reduce_proportional_rows():
    rref, r, piv = row_reduce([[1, 2], [2, 4]])
    assert r == 1
    assert rref == [[1, 2], [0, 0]]
    assert piv == [0]


def test_row_reduce_permutation():
    rref, r, _ = row_reduce([[0, 1], [1, 0]])
    assert r == 2 and rref == identity(2)


def test_solve_identity():
    x, ker = solve(identity(2), [3, F(-1, 2)])
    assert x == [3, F(-1, 2)] and ker == []


def test_solve_underdetermined():
    x, ker = solve([[1, 1]], [0])
    assert x == [0, 0]
    assert ker == [[-1, 1]] or ker == [[1, -1]]


def test_solve_inconsistent():
    assert solve([[1], [1]], [1, 2]) is None


def test_solve_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        solve([[1, 2]], [1, 2])


def test_invert_examples():
    assert invert(identity(3)) == identity(3)
    assert invert([[2]]) == [[F(1, 2)]]
    assert invert([[1, 2], [2, 4]]) is None


def test_invert_rejects_non_square():
    with pytest.raises(NonSquareMatrix):
        invert([[1, 2]])


def test_ragged_matrix_rejected():
    with pytest.raises(DimensionMismatch):
        row_reduce([[1, 2], [3]])


def test_exact_arithmetic():
    a, b = F(7, 3), F(-5, 11)
    assert a + (-a) == 0
    assert (a / b) * (b / a) == 1


def test_prime_field_basics():
    f = PrimeField(7)
    x = f(3)
    assert x * f(5) == 1
    assert f(F(1, 2)) * 2 == 1
    assert -x + x == 0
    assert f(-1) ** 2 == 1
    with pytest.raises(ZeroDivisionInField):
        x / f(0)
    with pytest.raises(ZeroDivisionInField):
        f(F(1, 7))
    assert f.fmt(f(6)) == "-1/1"


def test_parse_field():
    assert parse_field("q") is QQ
    assert parse_field("fp:101").p == 101
    with pytest.raises(MalformedInput):
        parse_field("fp:100")
    with pytest.raises(MalformedInput):
        parse_field("reals")


def test_rational_format():
    assert QQ.fmt(F(-3, 4)) == "-3/4"
    assert QQ.fmt(2) == "2/1"
    assert QQ("5/10") == F(1, 2)
    with pytest.raises(MalformedInput):
        QQ("x/2")


def test_linear_algebra_over_prime_field():
    f = PrimeField(5)
    m = [[1, 2], [3, 4]]
    inv = invert(m, f)
    assert matmul(inv, [[f(x) for x in r] for r in m], f) == identity(2, f)
    # [[1,2],[3,1]] is singular mod 5
    assert invert([[1, 2], [3, 1]], f) is None


small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(min_rows=1, max_rows=4, min_cols=1, max_cols=4):
    return st.integers(min_rows, max_rows).flatmap(
        lambda r: st.integers(min_cols, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n),
                                                     min_size=n, max_size=n)))
def test_inverse_property(m):
    inv = invert(m)
    if inv is not None:
        assert matmul(inv, m) == identity(len(m))
        assert matmul(m, inv) == identity(len(m))
    else:
        assert rank(m) < len(m)


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rref_idempotent(m):
    rref, r, piv = row_reduce(m)
    again, r2, piv2 = row_reduce(rref)
    assert again == rref and r2 == r and piv2 == piv
    assert r == len(piv)


@settings(max_examples=80, deadline=None)
@given(matrices(), st.data())
def test_solve_consistency(a, data):
    b = data.draw(st.lists(small, min_size=len(a), max_size=len(a)))
    res = solve(a, b)
    if res is None:
        # then b is outside the column space: appending it raises the rank
        aug = [row + [y] for row, y in zip(a, b)]
        assert rank(aug) == rank(a) + 1
        return
    x, ker = res
    assert matvec(a, x) == [F(v) for v in b]
    for v in ker:
        assert all(c == 0 for c in matvec(a, v))
    assert len(ker) == len(a[0]) - rank(a)


@settings(max_examples=50, deadline=None)
@given(matrices())
def test_nullspace_dimension(m):
    ns = nullspace(m)
    assert len(ns) + rank(m) == len(m[0])
    for v in ns:
        assert all(c == 0 for c in matvec(m, v))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 100), st.integers(1, 100), st.sampled_from([2, 3, 7, 101]))
def test_modp_field_axioms(a, b, p):
    f = PrimeField(p)
    x, y = f(a), f(b)
    assert x + y == f(a + b)
    assert x * y == f(a * b)
    if y:
        assert (x / y) * y == x
