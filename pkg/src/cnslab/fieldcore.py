"""Prime-field helpers and exact rationals kept in factored form.

Residues are plain ``int`` values in ``[0, p)``; there is no wrapper class.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import DivisionByZero, NotPIntegral, NotPrime, ZeroInverse

# Deterministic for every n < 3.3e24, far beyond the 2^63 contract.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"{p!r} is not prime")
    return p


def fp_normalize(x: int, p: int) -> int:
    return x % p


def fp_inv(x: int, p: int) -> int:
    x %= p
    if x == 0:
        raise ZeroInverse(f"0 has no inverse mod {p}")
    return pow(x, -1, p)


@lru_cache(maxsize=None)
def primes_upto(n: int) -> tuple[int, ...]:
    if n < 2:
        return ()
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(n ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def factor_int(n: int) -> dict[int, int]:
    """Trial-division factorization of |n| (n != 0)."""
    n = abs(n)
    out: dict[int, int] = {}
    q = 2
    while q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += 1 if q == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class FactoredRational:
    """Signed rational ``sign * prod(q**e)``; zero is ``sign == 0`` with no exponents."""

    sign: int
    exponents: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or 1")
        if self.sign == 0 and self.exponents:
            raise ValueError("zero carries no exponents")
        for q, e in self.exponents:
            if e == 0 or not is_prime(q):
                raise ValueError(f"bad factor {q}^{e}")

    @classmethod
    def from_mapping(cls, sign: int, exps: Mapping[int, int]) -> "FactoredRational":
        if sign == 0:
            return cls(0)
        return cls(sign, tuple(sorted((q, e) for q, e in exps.items() if e)))

    @classmethod
    def from_int(cls, n: int) -> "FactoredRational":
        if n == 0:
            return cls(0)
        return cls.from_mapping(1 if n > 0 else -1, factor_int(n))

    @classmethod
    def from_fraction(cls, x: Fraction | int) -> "FactoredRational":
        x = Fraction(x)
        if x == 0:
            return cls(0)
        num = factor_int(x.numerator)
        for q, e in factor_int(x.denominator).items():
            num[q] = num.get(q, 0) - e
        return cls.from_mapping(1 if x > 0 else -1, num)

    def as_dict(self) -> dict[int, int]:
        return dict(self.exponents)

    def exponent(self, q: int) -> int:
        return self.as_dict().get(q, 0)

    def to_fraction(self) -> Fraction:
        num = den = 1
        for q, e in self.exponents:
            if e > 0:
                num *= q ** e
            else:
                den *= q ** -e
        return Fraction(self.sign * num, den)

    def is_integer(self) -> bool:
        return all(e > 0 for _, e in self.exponents)

    def __mul__(self, other: "FactoredRational") -> "FactoredRational":
        return fr_arith(self, other, "mul")

    def __truediv__(self, other: "FactoredRational") -> "FactoredRational":
        return fr_arith(self, other, "div")

    def __pow__(self, k: int) -> "FactoredRational":
        return fr_arith(self, k, "pow_int")

    def __str__(self) -> str:
        if self.sign == 0:
            return "0"
        body = "*".join(f"{q}^{e}" if e != 1 else str(q) for q, e in self.exponents) or "1"
        return ("-" if self.sign < 0 else "") + body


ONE = FactoredRational(1)
ZERO = FactoredRational(0)


def _combine(a: FactoredRational, b: FactoredRational, scale: int) -> FactoredRational:
    exps = a.as_dict()
    for q, e in b.exponents:
        exps[q] = exps.get(q, 0) + scale * e
    return FactoredRational.from_mapping(a.sign * b.sign, exps)


def fr_arith(a: FactoredRational, b, op: str) -> FactoredRational:
    """Multiply, divide or raise to an integer power by exponent arithmetic.

    For ``pow_int`` the second operand is a plain ``int`` exponent.
    """
    if op == "mul":
        if a.sign == 0 or b.sign == 0:
            return ZERO
        return _combine(a, b, 1)
    if op == "div":
        if b.sign == 0:
            raise DivisionByZero("division by a zero FactoredRational")
        if a.sign == 0:
            return ZERO
        return _combine(a, b, -1)
    if op == "pow_int":
        k = int(b)
        if a.sign == 0:
            if k < 0:
                raise DivisionByZero("0 raised to a negative power")
            return ONE if k == 0 else ZERO
        sign = a.sign if k % 2 else 1
        return FactoredRational.from_mapping(sign, {q: e * k for q, e in a.exponents})
    raise ValueError(f"unknown op {op!r}")


def fr_product(items: Iterable[FactoredRational]) -> FactoredRational:
    out = ONE
    for x in items:
        out = out * x
    return out


@lru_cache(maxsize=4096)
def factorial_factored(n: int) -> FactoredRational:
    if n < 0:
        raise ValueError("factorial of a negative integer")
    exps = {}
    for q in primes_upto(n):
        e, qk = 0, q
        while qk <= n:  # Legendre
            e += n // qk
            qk *= q
        exps[q] = e
    return FactoredRational.from_mapping(1, exps)


@lru_cache(maxsize=1024)
def superfactorial_factored(n: int) -> FactoredRational:
    """prod_{i=0}^{n-1} i!, the value of the integer Vandermonde on 1..n."""
    if n < 0:
        raise ValueError("superfactorial of a negative integer")
    exps: dict[int, int] = {}
    for i in range(2, n):
        for q, e in factorial_factored(i).exponents:
            exps[q] = exps.get(q, 0) + e
    return FactoredRational.from_mapping(1, exps)


def binomial_factored(n: int, k: int) -> FactoredRational:
    """C(n, k) with the generalized convention C(n, 0) = 1 for every n."""
    if k == 0:
        return ONE
    if k < 0 or n < 0 or k > n:
        return ZERO
    return factorial_factored(n) / (factorial_factored(k) * factorial_factored(n - k))


def fr_reduce_mod(x: FactoredRational, p: int) -> int:
    if x.sign == 0:
        return 0
    e_p = x.exponent(p)
    if e_p < 0:
        raise NotPIntegral(f"{x} has p-adic valuation {e_p} at p={p}")
    if e_p > 0:
        return 0
    num = den = 1
    for q, e in x.exponents:
        if e > 0:
            num = num * pow(q, e, p) % p
        else:
            den = den * pow(q, -e, p) % p
    return x.sign * num * pow(den, -1, p) % p
