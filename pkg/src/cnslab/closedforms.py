"""Exact closed forms of the certificate coefficients, reduced mod p at the end.

Intermediate factorials may exceed p (e.g. the superfactorial of 2d+1),
so everything is carried as a :class:`FactoredRational` and only the
final value is read in F_p.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import BadBounds, BadField, DeltaTooLarge, NotPIntegral
from .fieldcore import (
    FactoredRational,
    binomial_factored as C,
    factorial_factored as fact,
    fr_product,
    fr_reduce_mod,
    superfactorial_factored as sfact,
)

TWO = FactoredRational.from_int(2)


@dataclass(frozen=True)
class ClosedFormResult:
    kind: str
    params: tuple[int, ...]
    p: int
    exact: FactoredRational
    residue: int | None  # None when the value is not p-integral

    @property
    def reducible(self) -> bool:
        return self.residue is not None


def _result(kind, params, p, exact) -> ClosedFormResult:
    try:
        residue = fr_reduce_mod(exact, p)
    except NotPIntegral:
        residue = None
    return ClosedFormResult(kind, params, p, exact, residue)


def cd_closed_exact(n: int, m: int, delta: int) -> FactoredRational:
    if not 0 <= delta < min(n, m):
        raise DeltaTooLarge(f"need 0 <= delta < min(n, m), got delta={delta}")
    return C(n + (m - delta) - 2, n - 1)


def cd_closed(n: int, m: int, delta: int, p: int) -> ClosedFormResult:
    return _result("CD", (n, m, delta), p, cd_closed_exact(n, m, delta))


def dsh_closed_exact(d: int, h: int, delta: int) -> FactoredRational:
    if not 0 <= delta < h <= d:
        raise DeltaTooLarge(f"need 0 <= delta < h <= d, got d={d}, h={h}, delta={delta}")
    return fr_product([
        fact(h * (d - h)),
        C(d - h + delta - 1, delta),
        C(h, delta),
        sfact(h),
        sfact(d - h),
    ]) / (C(h * (d - h), delta) * sfact(d))


def dsh_closed(d: int, h: int, delta: int, p: int) -> ClosedFormResult:
    return _result("DSH", (d, h, delta), p, dsh_closed_exact(d, h, delta))


def m_d_alpha(d: int, alpha: int) -> int:
    return d * (d + 1) // 2 - alpha * (alpha + 1) // 2


def main_closed_exact(d: int, alpha: int, delta: int) -> FactoredRational:
    if not 0 <= delta <= alpha <= d:
        raise BadBounds(f"need 0 <= delta <= alpha <= d, got d={d}, alpha={alpha}, delta={delta}")
    m = m_d_alpha(d, alpha)
    head = TWO ** (m - delta) * fact(m) / C(m, delta)
    binoms = fr_product([C(d - alpha + delta - 1, delta), C(alpha + 1, delta), C(d + alpha + 1, delta)])
    binoms = binoms / C(2 * alpha + 2, delta)
    supers = fr_product([sfact(alpha), sfact(d - alpha), sfact(d + alpha + 1)]) / (sfact(d) * sfact(2 * d + 1))
    tail = fr_product(fact(2 * i - 1) for i in range(alpha + 1, d + 1))
    return fr_product([head, binoms, supers, tail])


def main_closed(d: int, alpha: int, delta: int, p: int) -> ClosedFormResult:
    if p == 2:
        raise BadField("p must be odd")
    return _result("MAIN", (d, alpha, delta), p, main_closed_exact(d, alpha, delta))


def closed_for(kind: str, params: tuple[int, ...], delta: int, p: int) -> ClosedFormResult:
    """Closed form matching a Q-side model's ``(kind, params, delta)``."""
    kind = kind.upper()
    if kind == "CD":
        return cd_closed(*params, delta, p)
    if kind == "DSH":
        return dsh_closed(*params, delta, p)
    if kind == "MAIN":
        return main_closed(*params, delta, p)
    raise ValueError(f"unknown kind {kind!r}")
