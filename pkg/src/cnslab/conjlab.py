"""Evidence gathering for the double-bound subsum conjecture.

For asymmetric A the naive estimate

    |Sigma_alpha^beta(A)| >= min(p, d(d+1)/2 - alpha(alpha+1)/2 - beta(beta+1)/2 + 1)

fails for dilations of {1, -2, 3, ..., k} when p = k(k+1)/2 - 4.  This
module reproduces that family and searches for any other violation.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import partial

import numpy as np

from ._parallel import map_ordered
from .errors import BadBounds, NotAsymmetric, SpaceTooLarge
from .fieldcore import is_prime
from .subsums import FpSet, is_asymmetric, sigma_double, subsum_table
from .theoremlab import DEFAULT_MAX_SPACE, encoding_to_set

KNOWN_EXCEPTIONAL = ((1, 1), (1, 2), (2, 1))


def conj_bound(d: int, alpha: int, beta: int, p: int) -> int:
    if alpha < 0 or beta < 0 or alpha + beta > d:
        raise BadBounds(f"need alpha + beta <= d, got alpha={alpha}, beta={beta}, d={d}")
    return min(p, d * (d + 1) // 2 - alpha * (alpha + 1) // 2 - beta * (beta + 1) // 2 + 1)


def family_values(k: int) -> list[int]:
    return [1, -2] + list(range(3, k + 1))


def family_set(k: int, p: int) -> FpSet:
    if k < 3:
        raise BadBounds("the family needs k >= 3")
    A = FpSet.of(p, family_values(k))
    if len(A) != k:
        raise BadBounds(f"{{1, -2, 3, ..., {k}}} has repeated residues mod {p}")
    if not is_asymmetric(A):
        raise NotAsymmetric(f"{{1, -2, 3, ..., {k}}} meets its negative mod {p}")
    return A


def special_pairs(limit: int) -> list[tuple[int, int]]:
    """All (k, p) with k >= 3, p = k(k+1)/2 - 4 prime and p < limit.

    Pairs where {1, -2, 3, ..., k} is not an asymmetric k-set mod p are
    dropped; that only removes (3, 2).
    """
    out = []
    k = 3
    while k * (k + 1) // 2 - 4 < limit:
        p = k * (k + 1) // 2 - 4
        if is_prime(p) and p > 2:
            out.append((k, p))
        k += 1
    return out


def check_double(A: FpSet, alpha: int, beta: int, table=None) -> tuple[bool, int, int]:
    if not is_asymmetric(A):
        raise NotAsymmetric("A meets -A")
    bound = conj_bound(len(A), alpha, beta, A.p)
    observed = len(sigma_double(A, alpha, beta, table))
    return observed >= bound, observed, bound


def family_dilation(A: FpSet) -> int | None:
    """Smallest lambda with A = lambda.{1,-2,3,...,k} and p = k(k+1)/2 - 4, else None."""
    p, k = A.p, len(A)
    if k < 3 or k * (k + 1) // 2 - 4 != p:
        return None
    base = [v % p for v in family_values(k)]
    for lam in range(1, p):
        if FpSet.of(p, (lam * v for v in base)) == A:
            return lam
    return None


@dataclass(frozen=True)
class ConjectureHit:
    p: int
    A: tuple[int, ...]
    alpha: int
    beta: int
    observed: int
    conjectured_bound: int
    matches_known_family: bool
    dilation: int | None = None

    @property
    def in_known_range(self) -> bool:
        return (self.alpha, self.beta) in KNOWN_EXCEPTIONAL

    @property
    def explained(self) -> bool:
        return self.matches_known_family and self.in_known_range

    def as_dict(self) -> dict:
        return {
            "p": self.p, "A": list(self.A), "alpha": self.alpha, "beta": self.beta,
            "observed": self.observed, "conjectured_bound": self.conjectured_bound,
            "matches_known_family": self.matches_known_family, "dilation": self.dilation,
        }


def hits_for(A: FpSet) -> list[ConjectureHit]:
    """Every (alpha, beta) with alpha + beta <= |A| where A violates the estimate."""
    p, d = A.p, len(A)
    table = subsum_table(A)
    out = []
    for alpha in range(d + 1):
        bits = 0
        # widen the row range downward from the top: beta = d - alpha, ..., 0
        for beta in range(d - alpha, -1, -1):
            bits |= table.rows[d - beta]
            observed = bits.bit_count()
            bound = conj_bound(d, alpha, beta, p)
            if observed < bound:
                out.append((alpha, beta, observed, bound))
    if not out:
        return []
    lam = family_dilation(A)
    elems = tuple(A.elements())
    return [ConjectureHit(p, elems, a, b, o, bd, lam is not None, lam)
            for a, b, o, bd in sorted(out)]


def _exhaustive_branch(p: int, first_state: int) -> list[ConjectureHit]:
    half = (p - 1) // 2
    out = []
    for rest in itertools.product((0, 1, 2), repeat=half - 1):
        out.extend(hits_for(encoding_to_set(p, (first_state,) + rest)))
    return out


def _sampled(p: int, seed: int, index: int) -> list[ConjectureHit]:
    rng = np.random.default_rng([seed, index])
    states = rng.integers(0, 3, size=(p - 1) // 2).tolist()
    return hits_for(encoding_to_set(p, states))


def search(p: int, mode: str = "exhaustive", *, samples: int = 0, seed: int = 0,
           max_space: int = DEFAULT_MAX_SPACE, workers: int = 1) -> list[ConjectureHit]:
    """Violations of the double-bound estimate among asymmetric subsets of F_p."""
    if p == 2:
        return []
    half = (p - 1) // 2
    if mode == "exhaustive":
        size = 3**half * (half + 1) * (half + 2) // 2
        if size > max_space:
            raise SpaceTooLarge(f"p={p}: {size} (set, alpha, beta) triples exceed {max_space}")
        parts = map_ordered(partial(_exhaustive_branch, p), [0, 1, 2], workers)
    elif mode == "sampled":
        parts = map_ordered(partial(_sampled, p, seed), list(range(samples)), workers)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    hits = {(h.A, h.alpha, h.beta): h for part in parts for h in part}
    return [hits[key] for key in sorted(hits)]
