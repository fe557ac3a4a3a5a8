"""Certificate coefficients of proof models, computed three independent ways.

* ``coeff_full_sum``: the coefficient formula summed over the whole grid.
* ``coeff_single_point``: the same formula collapsed to the one grid point
  where the Q-side polynomial survives.
* ``expansion_coefficient``: brute multiplication of the linear factors.

The closed forms live in :mod:`cnslab.closedforms`.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import partial
from typing import Iterable

import numpy as np

from ._parallel import map_ordered, split_range
from .constructions import ProofModel, _dtype, eval_model, eval_points
from .errors import GridTooLarge, NotAMember, NotUniquePoint, TooLarge, ZeroAtBstar
from .fieldcore import fp_inv
from .subsums import FpSet

DEFAULT_MAX_GRID = 10**7
CHUNK = 1 << 16


def max_grid() -> int:
    return int(os.environ.get("CNSLAB_MAX_GRID", DEFAULT_MAX_GRID))


def g_prime(B: FpSet | Iterable[int], b: int, p: int | None = None) -> int:
    """prod_{a in B, a != b} (b - a), the derivative of prod_{a in B}(X - a) at b."""
    if isinstance(B, FpSet):
        p = B.p
        B = B.elements()
    if p is None:
        raise ValueError("p is required when B is not an FpSet")
    b %= p
    row = [a % p for a in B]
    if b not in row:
        raise NotAMember(f"{b} is not in the set")
    acc = 1
    for a in row:
        if a != b:
            acc = acc * (b - a) % p
    return acc


def _check_grid(M: ProofModel, limit: int | None) -> int:
    limit = max_grid() if limit is None else limit
    n = M.grid_size()
    if n > limit:
        raise GridTooLarge(f"grid has {n} points, limit is {limit}")
    return n


def _grid_chunk(M: ProofModel, lo: int, hi: int) -> tuple[np.ndarray, tuple[np.ndarray, ...]]:
    sizes = [len(row) for row in M.grid]
    idx = np.unravel_index(np.arange(lo, hi), sizes)
    dt = _dtype(M.p)
    rows = [np.array(row, dtype=dt) for row in M.grid]
    coords = np.stack([rows[i][idx[i]] for i in range(M.nvars)], axis=1) if M.nvars else np.zeros((hi - lo, 0), dtype=dt)
    return coords, idx


def _partial_sum(M: ProofModel, span: tuple[int, int]) -> int:
    p = M.p
    dt = _dtype(p)
    inv = [np.array([fp_inv(g_prime(row, b, p), p) for b in row], dtype=dt) for row in M.grid]
    coords, idx = _grid_chunk(M, *span)
    vals = eval_points(M, coords)
    for i in range(M.nvars):
        vals = vals * inv[i][idx[i]] % p
    return int(vals.sum() % p)


def _partial_census(M: ProofModel, collect: int, span: tuple[int, int]) -> tuple[int, list[tuple[int, ...]]]:
    coords, _ = _grid_chunk(M, *span)
    vals = eval_points(M, coords)
    hits = np.nonzero(vals != 0)[0]
    pts = [tuple(int(x) for x in coords[k]) for k in hits[:collect]]
    return int(hits.size), pts


def coeff_full_sum(M: ProofModel, *, limit: int | None = None, workers: int = 1) -> int:
    """Sum of P(b) / prod g_i'(b_i) over the whole grid, in F_p."""
    n = _check_grid(M, limit)
    parts = map_ordered(partial(_partial_sum, M), split_range(n, CHUNK), workers)
    return sum(parts) % M.p


def nonzero_points(M: ProofModel, *, limit: int | None = None, workers: int = 1,
                   collect: int = 0) -> tuple[int, list[tuple[int, ...]]]:
    """Number of grid points where the model polynomial is nonzero.

    Returns ``(count, points)`` where ``points`` holds at most ``collect``
    of them in enumeration order.
    """
    n = _check_grid(M, limit)
    parts = map_ordered(partial(_partial_census, M, collect), split_range(n, CHUNK), workers)
    count, pts = 0, []
    for c, chunk_pts in parts:
        count += c
        pts.extend(chunk_pts[: max(collect - len(pts), 0)])
    return count, pts


def coeff_single_point(M: ProofModel, *, trust: bool = False, limit: int | None = None,
                       workers: int = 1) -> int:
    if M.bstar is None:
        raise ValueError(f"{M.label()} has no distinguished point")
    p = M.p
    value = eval_model(M, M.bstar)
    if value == 0:
        raise ZeroAtBstar(f"{M.label()} vanishes at {M.bstar}")
    if not trust and M.grid_size() <= (max_grid() if limit is None else limit):
        count, _ = nonzero_points(M, limit=limit, workers=workers)
        if count != 1:
            raise NotUniquePoint(f"{M.label()} is nonzero at {count} grid points")
    denom = 1
    for row, b in zip(M.grid, M.bstar):
        denom = denom * g_prime(row, b, p) % p
    return value * fp_inv(denom, p) % p


def _linear_factors(M: ProofModel):
    """Yield ``(constant, {var: coeff})`` for each linear factor of the model."""
    d = M.nvars
    for x in M.roots:
        yield (M.shift - x) % M.p, {i: 1 for i in range(d)}
    for j in range(d):
        for i in range(j):
            if M.vandermonde:
                yield 0, {j: 1, i: -1}
            if M.plus_cutoff is not None and j + 1 > M.plus_cutoff:
                yield 0, {j: 1, i: 1}


def expansion_coefficient(M: ProofModel, *, monomial: tuple[int, ...] | None = None,
                          max_vars: int = 4, max_degree: int = 24) -> int:
    """Coefficient of ``monomial`` (default: the model's) by multiplying out the factors.

    The dense coefficient array is truncated to exponents <= the target;
    multiplying by linear forms never lowers an exponent, so nothing
    outside that box can feed back into the target coefficient.
    """
    target = tuple(M.monomial if monomial is None else monomial)
    deg = M.degree()
    if M.nvars > max_vars or deg > max_degree:
        raise TooLarge(f"{M.nvars} variables, degree {deg}: over the expansion guard")
    if sum(target) > deg:
        return 0
    p = M.p
    arr = np.zeros(tuple(k + 1 for k in target), dtype=_dtype(p))
    arr[(0,) * len(target)] = 1
    for const, lin in _linear_factors(M):
        new = arr * const % p
        for i, c in lin.items():
            if target[i] == 0:
                continue
            dst = [slice(None)] * arr.ndim
            src = [slice(None)] * arr.ndim
            dst[i] = slice(1, None)
            src[i] = slice(None, -1)
            new[tuple(dst)] = (new[tuple(dst)] + c * arr[tuple(src)]) % p
        arr = new
    return int(arr[target] % p)


METHODS = ("full_sum", "single_point", "closed_form", "expansion")


@dataclass
class CoefficientReport:
    kind: str
    params: tuple[int, ...]
    p: int
    delta: int
    methods: dict[str, int] = field(default_factory=dict)
    skipped: dict[str, str] = field(default_factory=dict)
    nonzero_point_count: int | None = None
    warnings: list[str] = field(default_factory=list)

    @property
    def agreement(self) -> bool:
        return len(set(self.methods.values())) <= 1

    @property
    def nonzero(self) -> bool:
        return bool(self.methods) and all(v != 0 for v in self.methods.values())

    @property
    def ok(self) -> bool:
        census_ok = self.nonzero_point_count in (None, 1)
        return self.agreement and self.nonzero and census_ok

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "params": list(self.params),
            "p": self.p,
            "delta": self.delta,
            "methods": dict(self.methods),
            "skipped": dict(self.skipped),
            "nonzero_point_count": self.nonzero_point_count,
            "agreement": self.agreement,
            "nonzero": self.nonzero,
            "warnings": list(self.warnings),
        }


@dataclass
class ContradictionReport:
    status: str  # "contradiction", "consistent" or "inapplicable"
    degree_ok: bool
    size_ok: bool
    coefficient: int
    witness: tuple[int, ...] | None = None
    witness_sum: int | None = None
    p_side_full_sum: int | None = None

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "degree_ok": self.degree_ok,
            "size_ok": self.size_ok,
            "coefficient": self.coefficient,
            "witness": None if self.witness is None else list(self.witness),
            "witness_sum": self.witness_sum,
            "p_side_full_sum": self.p_side_full_sum,
        }


def cns_audit(Mp: ProofModel, c: int, *, limit: int | None = None) -> ContradictionReport:
    """Run the Nullstellensatz argument on a P-side model with certified coefficient c.

    When the degree and size conditions hold and ``c != 0`` the P-side
    polynomial cannot vanish on its grid, so the cover C misses some
    subsum; the report carries such a missing point as witness.  The
    P-side coefficient is recomputed by the full sum when the grid fits.
    """
    p = Mp.p
    c %= p
    degree_ok, size_ok = Mp.degree_condition(), Mp.size_condition()
    if not (degree_ok and size_ok):
        return ContradictionReport("inapplicable", degree_ok, size_ok, c)
    if c == 0:
        return ContradictionReport("consistent", degree_ok, size_ok, c)
    report = ContradictionReport("contradiction", degree_ok, size_ok, c)
    if Mp.grid_size() <= (max_grid() if limit is None else limit):
        report.p_side_full_sum = coeff_full_sum(Mp, limit=limit)
        count, pts = nonzero_points(Mp, limit=limit, collect=1)
        if count == 0:
            # the Nullstellensatz forbids this; something upstream is wrong
            raise AssertionError(f"{Mp.label()} vanishes on its grid despite c={c}")
        report.witness = pts[0]
        report.witness_sum = (sum(pts[0]) + Mp.shift) % p
    return report
