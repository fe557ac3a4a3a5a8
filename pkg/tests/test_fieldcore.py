from fractions import Fraction
from math import factorial, prod

import pytest
from hypothesis import given, strategies as st

from cnslab.errors import DivisionByZero, NotPIntegral, ZeroInverse
from cnslab.fieldcore import (
    FactoredRational,
    binomial_factored,
    factorial_factored,
    fp_inv,
    fp_normalize,
    fr_arith,
    fr_reduce_mod,
    is_prime,
    superfactorial_factored,
)
from oracles import is_prime_trial

F = FactoredRational.from_int


@pytest.mark.parametrize("n, expected", [(11, True), (1, False), (857, True), (0, False), (2, True), (561, False)])
def test_is_prime_examples(n, expected):
    assert is_prime(n) is expected


def test_is_prime_matches_trial_division():
    assert [n for n in range(5000) if is_prime(n)] == [n for n in range(5000) if is_prime_trial(n)]


@pytest.mark.parametrize("n, expected", [
    (2**61 - 1, True),  # Mersenne prime
    (3215031751, False),  # strong pseudoprime to bases 2, 3, 5, 7
    (3825123056546413051, False),  # strong pseudoprime to the first nine prime bases
    (2**63 - 25, True),
])
def test_is_prime_large(n, expected):
    assert is_prime(n) is expected


@pytest.mark.parametrize("x, p, r", [(-2, 11, 9), (13, 11, 2), (0, 7, 0)])
def test_fp_normalize(x, p, r):
    assert fp_normalize(x, p) == r


def test_fp_inv():
    assert fp_inv(3, 7) == 5
    assert fp_inv(1, 101) == 1
    with pytest.raises(ZeroInverse):
        fp_inv(0, 7)


@given(st.sampled_from([2, 3, 5, 7, 101, 10007, 2**31 - 1]), st.integers())
def test_fp_inv_involution(p, x):
    x %= p
    if x == 0:
        return
    assert fp_inv(fp_inv(x, p), p) == x
    assert x * fp_inv(x, p) % p == 1


def test_factorial_factored_examples():
    assert factorial_factored(0) == F(1)
    assert factorial_factored(5).as_dict() == {2: 3, 3: 1, 5: 1}
    assert factorial_factored(6).as_dict() == {2: 4, 3: 2, 5: 1}
    for n in range(30):
        assert factorial_factored(n).to_fraction() == factorial(n)


def test_superfactorial_examples():
    assert superfactorial_factored(0).to_fraction() == 1
    assert superfactorial_factored(1).to_fraction() == 1
    assert superfactorial_factored(3).to_fraction() == 2
    assert superfactorial_factored(4).to_fraction() == 12


def test_superfactorial_recurrence_to_100():
    for n in range(100):
        assert superfactorial_factored(n + 1) == fr_arith(superfactorial_factored(n), factorial_factored(n), "mul")


def test_vandermonde_identity():
    for n in range(13):
        direct = prod(j - i for j in range(1, n + 1) for i in range(1, j))
        assert superfactorial_factored(n).to_fraction() == direct


def test_fr_arith_examples():
    assert fr_arith(F(24), F(15), "mul").as_dict() == {2: 3, 3: 2, 5: 1}
    assert fr_arith(F(720), F(24), "div").as_dict() == {2: 1, 3: 1, 5: 1}
    assert fr_arith(F(2), 10, "pow_int").as_dict() == {2: 10}
    assert fr_arith(F(-3), 3, "pow_int").to_fraction() == -27
    with pytest.raises(DivisionByZero):
        fr_arith(F(3), F(0), "div")


def test_zero_invariants():
    z = F(0)
    assert z.sign == 0 and z.exponents == ()
    assert fr_arith(z, F(5), "mul") == z
    with pytest.raises(ValueError):
        FactoredRational(0, ((2, 1),))
    with pytest.raises(ValueError):
        FactoredRational(1, ((4, 1),))


def test_binomial_convention():
    assert binomial_factored(-1, 0).to_fraction() == 1
    assert binomial_factored(10, 3).to_fraction() == 120
    assert binomial_factored(3, 5).sign == 0


def test_fr_reduce_mod_examples():
    assert fr_reduce_mod(F(12), 7) == 5
    assert fr_reduce_mod(FactoredRational.from_fraction(Fraction(1, 24)), 7) == 5
    with pytest.raises(NotPIntegral):
        fr_reduce_mod(FactoredRational.from_fraction(Fraction(1, 7)), 7)
    assert fr_reduce_mod(F(14), 7) == 0
    assert fr_reduce_mod(F(-1), 7) == 6


fractions = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4).filter(lambda x: x != 0)


@given(fractions, fractions, st.sampled_from([3, 5, 7, 11, 13]))
def test_reduce_mod_is_multiplicative(a, b, p):
    fa, fb = FactoredRational.from_fraction(a), FactoredRational.from_fraction(b)
    try:
        ra, rb, rab = fr_reduce_mod(fa, p), fr_reduce_mod(fb, p), fr_reduce_mod(fa * fb, p)
    except NotPIntegral:
        return
    assert rab == ra * rb % p


@given(fractions, fractions)
def test_fraction_round_trip(a, b):
    fa, fb = FactoredRational.from_fraction(a), FactoredRational.from_fraction(b)
    assert (fa * fb).to_fraction() == a * b
    assert (fa / fb).to_fraction() == a / b
