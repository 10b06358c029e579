import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nodalcurves.fields import QQ, ExactField, FieldError, block_jordan

FIELDS = [QQ, ExactField(2), ExactField(3), ExactField(101)]


def test_parsing():
    assert ExactField.parse("Q") == QQ
    assert ExactField.parse("F101") == ExactField.parse("Fp:101") == ExactField(101)
    for bad in ("F4", "F1", "reals"):
        with pytest.raises(FieldError):
            ExactField.parse(bad)


def test_scalars():
    f = ExactField(7)
    assert f("1/3") == 5 and f.inv(3) == 5 and f.pow(3, -1) == 5
    assert QQ("2/4") == QQ(1) / 2
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


@given(st.sampled_from(FIELDS), st.integers(1, 4), st.integers(0, 10_000))
def test_inverse_and_rank(f, n, seed):
    m = f.random_invertible(n, random.Random(seed))
    assert f.matmul(m, f.inverse(m)) == f.identity(n)
    assert f.rank(m) == n
    singular = m[:-1] + (m[0],) if n > 1 else (f.zeros(1, 1)[0],)
    assert not f.is_invertible(singular)


@given(st.sampled_from(FIELDS), st.integers(1, 3), st.integers(0, 10_000))
def test_nullspace(f, n, seed):
    rng = random.Random(seed)
    a = tuple(tuple(f.random(rng) for _ in range(n + 1)) for _ in range(n))
    basis = f.nullspace(a)
    assert len(basis) == n + 1 - f.rank(a)
    for v in basis:
        assert f.matmul(a, tuple((x,) for x in v)) == f.zeros(n, 1)


def test_charpoly_and_roots():
    f = ExactField(5)
    j = block_jordan(f, 2, 3)
    assert f.charpoly_factors(j) == [((2, 1), 2)]  # (t - 3)^2 = (t + 2)^2
    assert f.roots((1, 0, 1)) == [2, 3]
    assert QQ.roots((2, 0, 1)) == []
    assert block_jordan(QQ, 2, (2, 0, 1)) == (
        (0, -2, 1, 0), (1, 0, 0, 1), (0, 0, 0, -2), (0, 0, 1, 0))
