from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from epstein.arithmetic import divisors, factorize, mobius, sigma_nu, sigma_table
from epstein.errors import DomainError


def test_mobius_examples():
    assert [mobius(n) for n in (1, 2, 4, 6, 30, 12)] == [1, -1, 0, 1, -1, 0]


def test_sigma_examples():
    assert sigma_nu(-3, 2) == Fraction(9, 8)
    assert sigma_nu(3, 6) == 252


@given(st.integers(1, 3000), st.integers(1, 3000))
def test_mobius_multiplicative(a, b):
    from math import gcd

    if gcd(a, b) == 1:
        assert mobius(a * b) == mobius(a) * mobius(b)


@given(st.integers(1, 5000))
def test_mobius_sum_over_divisors(n):
    assert sum(mobius(d) for d in divisors(n)) == (1 if n == 1 else 0)


@given(st.integers(2, 10**6))
def test_factorize_roundtrip(n):
    prod = 1
    for p, e in factorize(n).items():
        prod *= p**e
    assert prod == n


@pytest.mark.parametrize("nu", [-5, -3, 1, 3])
def test_sigma_table_matches_exact(nu):
    tab = sigma_table(nu, 60)
    for n in range(1, 61):
        assert tab[n - 1] == pytest.approx(float(sigma_nu(nu, n)), rel=1e-15)
    assert not tab.flags.writeable


def test_domain_errors():
    with pytest.raises(DomainError):
        factorize(0)
    with pytest.raises(DomainError):
        sigma_table(3, 0)
