"""Grids, root sets and distinguished points of the three polynomial proofs.

A :class:`ProofModel` describes a product of linear forms

    prod_{x in roots} (X_1 + ... + X_d + shift - x)
      * prod_{i<j} (X_j - X_i)                  if vandermonde
      * prod_{i<j, j > plus_cutoff} (X_j + X_i)  if plus_cutoff is not None

together with a Cartesian grid and the monomial whose coefficient
certifies the bound.  Q-side models are built on the extremal arithmetic
progressions; P-side models are built on an arbitrary set and a candidate
cover C of its subsums.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import BadBounds, BadField, BadH, CoverTooSmall, DeltaTooLarge, NotAsymmetric
from .fieldcore import fp_inv
from .subsums import FpSet, hfold, is_asymmetric, sigma_upper, sumset

KINDS = ("CD", "DSH", "MAIN")


@dataclass(frozen=True)
class ProofModel:
    p: int
    kind: str
    params: tuple[int, ...]
    delta: int
    grid: tuple[tuple[int, ...], ...]
    roots: tuple[int, ...]
    shift: int
    vandermonde: bool
    plus_cutoff: int | None
    monomial: tuple[int, ...]
    bstar: tuple[int, ...] | None = None
    side: str = "Q"
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def nvars(self) -> int:
        return len(self.grid)

    def grid_sets(self) -> list[FpSet]:
        return [FpSet.of(self.p, row) for row in self.grid]

    def root_set(self) -> FpSet:
        return FpSet.of(self.p, self.roots)

    def vandermonde_pairs(self) -> int:
        d = self.nvars
        return d * (d - 1) // 2 if self.vandermonde else 0

    def plus_pairs(self) -> int:
        if self.plus_cutoff is None:
            return 0
        # pairs i < j with j > cutoff (1-based j)
        return sum(j - 1 for j in range(self.plus_cutoff + 1, self.nvars + 1))

    def degree(self) -> int:
        return len(self.roots) + self.vandermonde_pairs() + self.plus_pairs()

    def grid_size(self) -> int:
        n = 1
        for row in self.grid:
            n *= len(row)
        return n

    def size_condition(self) -> bool:
        return all(len(row) == k + 1 for row, k in zip(self.grid, self.monomial))

    def degree_condition(self) -> bool:
        return sum(self.monomial) == self.degree()

    def label(self) -> str:
        return f"{self.side}-{self.kind}{self.params}@p={self.p}"


def _residues(values, p: int) -> tuple[int, ...]:
    return tuple(v % p for v in values)


def cd_delta(n: int, m: int, p: int) -> int:
    return max(0, n + m - 1 - p)


def dsh_delta(d: int, h: int, p: int) -> int:
    return max(0, h * (d - h) + 1 - p)


def main_delta(d: int, alpha: int, p: int) -> int:
    return max(0, d * (d + 1) // 2 - alpha * (alpha + 1) // 2 - (p - 1))


def cd_model(n: int, m: int, p: int) -> ProofModel:
    if not (1 <= n <= p and 1 <= m <= p):
        raise BadBounds(f"need 1 <= n, m <= p, got n={n}, m={m}, p={p}")
    delta = cd_delta(n, m, p)
    if delta >= min(n, m):
        raise DeltaTooLarge(f"delta={delta} >= min(n, m)")
    m2 = m - delta
    return ProofModel(
        p=p, kind="CD", params=(n, m), delta=delta,
        grid=(_residues(range(1, n + 1), p), _residues(range(1, m2 + 1), p)),
        roots=_residues(range(2, n + m2), p),
        shift=0, vandermonde=False, plus_cutoff=None,
        monomial=(n - 1, m2 - 1),
        bstar=(n % p, m2 % p),
    )


def _dsh_row_len(d: int, h: int, delta: int, i: int) -> int:
    return d - h + i - 1 if i <= delta else d - h + i


def dsh_model(d: int, h: int, p: int) -> ProofModel:
    if not 1 <= h <= d:
        raise BadH(f"need 1 <= h <= d, got h={h}, d={d}")
    if d >= p:
        raise BadBounds(f"need d < p, got d={d}, p={p}")
    delta = dsh_delta(d, h, p)
    if delta >= h:
        raise DeltaTooLarge(f"delta={delta} >= h={h}")
    lens = [_dsh_row_len(d, h, delta, i) for i in range(1, h + 1)]
    lo = h * (h + 1) // 2
    hi = d * (d + 1) // 2 - (d - h) * (d - h + 1) // 2 - delta - 1
    return ProofModel(
        p=p, kind="DSH", params=(d, h), delta=delta,
        grid=tuple(_residues(range(1, n + 1), p) for n in lens),
        roots=_residues(range(lo, hi + 1), p),
        shift=0, vandermonde=True, plus_cutoff=None,
        monomial=tuple(n - 1 for n in lens),
        # each coordinate at the top of its row
        bstar=_residues(lens, p),
    )


def _main_row(d: int, alpha: int, delta: int, i: int, a: Sequence[int]) -> list[int]:
    """Row i (1-based) of the signed grid for magnitudes a[0..d-1] = a_1..a_d."""
    if i <= delta:
        return [-a[j - 1] for j in range(d, alpha - i + 1, -1)]
    if i <= alpha:
        return [-a[j - 1] for j in range(d, alpha - i, -1)]
    return [-a[j - 1] for j in range(d, 0, -1)] + [a[j - 1] for j in range(1, i + 1)]


def _main_monomial(d: int, alpha: int, delta: int) -> tuple[int, ...]:
    out = []
    for i in range(1, d + 1):
        if i <= delta:
            out.append(d - alpha + i - 2)
        elif i <= alpha:
            out.append(d - alpha + i - 1)
        else:
            out.append(d + i - 1)
    return tuple(out)


def _check_main_params(d: int, alpha: int, p: int) -> int:
    if p == 2:
        raise BadField("no nonempty asymmetric set exists in F_2")
    if not 0 <= alpha <= d:
        raise BadBounds(f"need 0 <= alpha <= d, got alpha={alpha}, d={d}")
    if 2 * d > p - 1:
        raise BadBounds(f"need d <= (p-1)/2, got d={d}, p={p}")
    delta = main_delta(d, alpha, p)
    if delta > alpha:
        raise DeltaTooLarge(f"delta={delta} > alpha={alpha}")
    return delta


def main_model(d: int, alpha: int, p: int) -> ProofModel:
    if d < 1:
        raise BadBounds("need d >= 1")
    delta = _check_main_params(d, alpha, p)
    mags = list(range(1, d + 1))
    top = d * (d + 1) // 2 - alpha * (alpha + 1) // 2 - delta
    bstar = (
        [-(alpha - i + 2) for i in range(1, delta + 1)]
        + [-(alpha - i + 1) for i in range(delta + 1, alpha + 1)]
        + ([alpha + 1 - delta] if alpha < d else [])
        + list(range(alpha + 2, d + 1))
    )
    return ProofModel(
        p=p, kind="MAIN", params=(d, alpha), delta=delta,
        grid=tuple(_residues(_main_row(d, alpha, delta, i, mags), p) for i in range(1, d + 1)),
        # grid sums plus d(d+1)/2 are even, hence the dilation by 2
        roots=_residues((2 * t for t in range(top)), p),
        shift=(d * (d + 1) // 2) % p, vandermonde=True, plus_cutoff=alpha,
        monomial=_main_monomial(d, alpha, delta),
        bstar=_residues(bstar, p),
    )


def p_side_model(A: FpSet, kind: str, params: Sequence[int], C: FpSet, *,
                 B: FpSet | None = None, order: Sequence[int] | None = None,
                 strict: bool = False) -> ProofModel:
    """The proof polynomial built on an arbitrary set A and root set C.

    ``params`` is ``()`` for CD (pass ``B``), ``(h,)`` for DSH and
    ``(alpha,)`` for MAIN.  ``order`` fixes the labelling a_1..a_d of A
    (default: increasing residues).  With ``strict`` the cover C must
    contain the subsum set the proof assumes it contains.
    """
    p = A.p
    kind = kind.upper()
    elems = list(order) if order is not None else A.elements()
    if sorted(x % p for x in elems) != A.elements():
        raise ValueError("order must list each element of A exactly once")
    if kind == "CD":
        if B is None:
            raise ValueError("CD needs the second set B")
        n, m = len(A), len(B)
        if n == 0 or m == 0:
            raise BadBounds("CD needs nonempty A and B")
        delta = cd_delta(n, m, p)
        if strict and not sumset(A, B).issubset(C):
            raise CoverTooSmall("C does not contain A+B")
        return ProofModel(
            p=p, kind="CD", params=(n, m), delta=delta,
            grid=(tuple(elems), tuple(B.elements()[: m - delta])),
            roots=tuple(C.elements()), shift=0, vandermonde=False, plus_cutoff=None,
            monomial=(n - 1, m - delta - 1), side="P",
        )
    if kind == "DSH":
        (h,) = params
        d = len(elems)
        if not 1 <= h <= d:
            raise BadH(f"need 1 <= h <= |A|, got h={h}")
        delta = dsh_delta(d, h, p)
        if delta >= h:
            raise DeltaTooLarge(f"delta={delta} >= h={h}")
        if strict and not hfold(A, h).issubset(C):
            raise CoverTooSmall("C does not contain h^A")
        lens = [_dsh_row_len(d, h, delta, i) for i in range(1, h + 1)]
        return ProofModel(
            p=p, kind="DSH", params=(d, h), delta=delta,
            grid=tuple(tuple(x % p for x in elems[:n]) for n in lens),
            roots=tuple(C.elements()), shift=0, vandermonde=True, plus_cutoff=None,
            monomial=tuple(n - 1 for n in lens), side="P",
        )
    if kind == "MAIN":
        (alpha,) = params
        if not is_asymmetric(A):
            raise NotAsymmetric("A meets -A")
        d = len(elems)
        delta = _check_main_params(d, alpha, p)
        if strict and not sigma_upper(A, alpha).issubset(C):
            raise CoverTooSmall("C does not contain Sigma^alpha(A)")
        half = fp_inv(2, p)
        a = [x * half % p for x in elems]
        return ProofModel(
            p=p, kind="MAIN", params=(d, alpha), delta=delta,
            grid=tuple(_residues(_main_row(d, alpha, delta, i, a), p) for i in range(1, d + 1)),
            roots=tuple(C.elements()), shift=sum(a) % p, vandermonde=True, plus_cutoff=alpha,
            monomial=_main_monomial(d, alpha, delta), side="P",
        )
    raise ValueError(f"unknown kind {kind!r}")


def eval_model(M: ProofModel, point: Sequence[int]) -> int:
    p = M.p
    if len(point) != M.nvars:
        raise ValueError(f"point has {len(point)} coordinates, model has {M.nvars}")
    b = [x % p for x in point]
    base = (sum(b) + M.shift) % p
    acc = 1
    for x in M.roots:
        acc = acc * (base - x) % p
        if not acc:
            return 0
    d = M.nvars
    for j in range(d):
        for i in range(j):
            if M.vandermonde:
                acc = acc * (b[j] - b[i]) % p
            if M.plus_cutoff is not None and j + 1 > M.plus_cutoff:
                acc = acc * (b[j] + b[i]) % p
        if not acc:
            return 0
    return acc


def _dtype(p: int):
    # int64 products of two residues stay exact below 2^31
    return np.int64 if p < (1 << 31) else object


def eval_points(M: ProofModel, coords: np.ndarray) -> np.ndarray:
    """Vectorized :func:`eval_model` over an ``(N, d)`` array of residues."""
    p = M.p
    coords = coords.astype(_dtype(p), copy=False)
    n = coords.shape[0]
    acc = np.ones(n, dtype=coords.dtype)
    base = (coords.sum(axis=1) + M.shift) % p if M.nvars else np.full(n, M.shift % p, dtype=coords.dtype)
    for x in M.roots:
        acc = acc * ((base - x) % p) % p
    d = M.nvars
    for j in range(d):
        for i in range(j):
            if M.vandermonde:
                acc = acc * ((coords[:, j] - coords[:, i]) % p) % p
            if M.plus_cutoff is not None and j + 1 > M.plus_cutoff:
                acc = acc * ((coords[:, j] + coords[:, i]) % p) % p
    return acc
