"""Bound checks for the three addition theorems, exhaustive and sampled."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from ._parallel import map_ordered
from .closedforms import closed_for
from .coeffengine import (
    CoefficientReport,
    coeff_full_sum,
    coeff_single_point,
    expansion_coefficient,
    max_grid,
    nonzero_points,
)
from .constructions import cd_model, dsh_delta, dsh_model, main_delta, main_model
from .errors import BadH, EmptyInput, NotAsymmetric, SpaceTooLarge, TooLarge
from .subsums import (
    FpSet,
    count_profile,
    is_asymmetric,
    rotate,
    sigma_sizes_from_profile,
    subsum_table,
    sumset,
)

DEFAULT_MAX_SPACE = 10**8
THEOREMS = ("CD", "DSH", "MAIN")


def cd_bound(n: int, m: int, p: int) -> int:
    return min(p, n + m - 1)


def dsh_bound(d: int, h: int, p: int) -> int:
    return min(p, h * (d - h) + 1)


def main_bound(d: int, alpha: int, p: int) -> int:
    return min(p, d * (d + 1) // 2 - alpha * (alpha + 1) // 2 + 1)


def check_cd(A: FpSet, B: FpSet) -> tuple[bool, int, int]:
    if not len(A) or not len(B):
        raise EmptyInput("Cauchy-Davenport needs nonempty sets")
    observed = len(sumset(A, B))
    bound = cd_bound(len(A), len(B), A.p)
    return observed >= bound, observed, bound


def check_dsh(A: FpSet, h: int, table=None) -> tuple[bool, int, int]:
    if not 0 <= h <= len(A):
        raise BadH(f"h={h} outside [0, {len(A)}]")
    observed = len((table or subsum_table(A)).row(h))
    bound = dsh_bound(len(A), h, A.p)
    return observed >= bound, observed, bound


def check_main(A: FpSet, alpha: int, table=None) -> tuple[bool, int, int, int]:
    if not is_asymmetric(A):
        raise NotAsymmetric("A meets -A")
    d = len(A)
    if not 0 <= alpha <= d:
        raise BadH(f"alpha={alpha} outside [0, {d}]")
    table = table or subsum_table(A)
    lower = len(table.union(alpha, d))
    upper = len(table.union(0, d - alpha))
    bound = main_bound(d, alpha, A.p)
    return lower >= bound and lower == upper, lower, upper, bound


@dataclass
class TheoremReport:
    theorem: str
    p: int
    mode: str
    instances_checked: int = 0
    violations: list[dict] = field(default_factory=list)
    note: str = ""

    @property
    def holds(self) -> bool:
        return not self.violations

    def merge(self, other: "TheoremReport") -> None:
        self.instances_checked += other.instances_checked
        self.violations.extend(other.violations)

    def as_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "p": self.p,
            "mode": self.mode,
            "instances_checked": self.instances_checked,
            "violations": list(self.violations),
            "note": self.note,
        }


def asymmetric_sets(p: int):
    """Every A with A & -A empty: each magnitude 1..(p-1)/2 is absent, +x or -x."""
    half = (p - 1) // 2
    for states in itertools.product((0, 1, 2), repeat=half):
        yield encoding_to_set(p, states)


def encoding_to_set(p: int, states) -> FpSet:
    vals = [x if s == 1 else p - x for x, s in zip(range(1, len(states) + 1), states) if s]
    return FpSet.of(p, vals)


def space_size(theorem: str, p: int) -> int:
    theorem = theorem.upper()
    if theorem == "CD":
        return (2**p - 1) ** 2
    if theorem == "DSH":
        return (p + 2) * 2 ** (p - 1)  # sum over A of (|A| + 1)
    if theorem == "MAIN":
        half = (p - 1) // 2
        return 3**half * (half + 1)
    raise ValueError(f"unknown theorem {theorem!r}")


_POP16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.int16)


def _cd_branch(p: int, first: int) -> TheoremReport:
    """All pairs (A, B) where min(A) == first, B over every nonempty subset."""
    mask = (1 << p) - 1
    Bs = np.arange(1, 1 << p, dtype=np.int64)
    popB = _POP16[Bs & 0xFFFF] + _POP16[Bs >> 16]
    rep = TheoremReport("CD", p, "exhaustive")

    def rot(arr, a):
        return ((arr << a) & mask) | (arr >> (p - a)) if a else arr

    def visit(a_bits: int, size: int, acc: np.ndarray, nxt: int) -> None:
        card = _POP16[acc & 0xFFFF] + _POP16[acc >> 16]
        bound = np.minimum(p, size + popB - 1)
        bad = np.nonzero(card < bound)[0]
        rep.instances_checked += Bs.size
        for k in bad:
            rep.violations.append({
                "A": FpSet(p, a_bits).elements(), "B": FpSet(p, int(Bs[k])).elements(),
                "observed": int(card[k]), "bound": int(bound[k]),
            })
        for a in range(nxt, p):
            visit(a_bits | 1 << a, size + 1, acc | rot(Bs, a), a + 1)

    visit(1 << first, 1, rot(Bs, first), first + 1)
    return rep


def _dsh_branch(p: int, first: int | None) -> TheoremReport:
    """All A with min(A) == first (``None``: the empty set), every h."""
    mask = (1 << p) - 1
    rep = TheoremReport("DSH", p, "exhaustive")

    def check(a_bits: int, rows: list[int]) -> None:
        d = len(rows) - 1
        for h, row in enumerate(rows):
            observed, bound = row.bit_count(), dsh_bound(d, h, p)
            if observed < bound:
                rep.violations.append({"A": FpSet(p, a_bits).elements(), "h": h,
                                       "observed": observed, "bound": bound})
        rep.instances_checked += d + 1

    def visit(a_bits: int, rows: list[int], nxt: int) -> None:
        check(a_bits, rows)
        for a in range(nxt, p):
            new = rows + [0]
            for k in range(len(new) - 1, 0, -1):
                new[k] |= rotate(new[k - 1], a, p, mask)
            visit(a_bits | 1 << a, new, a + 1)

    if first is None:
        check(0, [1])
    else:
        visit(1 << first, [1, 1 << first], first + 1)
    return rep


def _main_instances(p: int, A: FpSet, rep: TheoremReport) -> None:
    table = subsum_table(A)
    for alpha in range(len(A) + 1):
        holds, lower, upper, bound = check_main(A, alpha, table)
        rep.instances_checked += 1
        if not holds:
            rep.violations.append({"A": A.elements(), "alpha": alpha, "observed_lower": lower,
                                   "observed_upper": upper, "bound": bound})


def _main_branch(p: int, first_state: int) -> TheoremReport:
    """Asymmetric sets whose magnitude-1 state is ``first_state``."""
    rep = TheoremReport("MAIN", p, "exhaustive")
    half = (p - 1) // 2
    if half == 0:
        if first_state == 0:
            _main_instances(p, FpSet(p), rep)
        return rep
    for rest in itertools.product((0, 1, 2), repeat=half - 1):
        _main_instances(p, encoding_to_set(p, (first_state,) + rest), rep)
    return rep


def exhaustive_verify(p: int, theorem: str, *, max_space: int = DEFAULT_MAX_SPACE,
                      workers: int = 1) -> TheoremReport:
    theorem = theorem.upper()
    size = space_size(theorem, p)
    if size > max_space:
        raise SpaceTooLarge(f"{theorem} at p={p}: {size} instances exceed {max_space}")
    if theorem == "CD":
        parts = map_ordered(partial(_cd_branch, p), list(range(p)), workers)
    elif theorem == "DSH":
        parts = map_ordered(partial(_dsh_branch, p), [None, *range(p)], workers)
    elif theorem == "MAIN":
        if p == 2:
            parts = [TheoremReport("MAIN", p, "exhaustive")]
            _main_instances(p, FpSet(p), parts[0])
        else:
            parts = map_ordered(partial(_main_branch, p), [0, 1, 2], workers)
    else:
        raise ValueError(f"unknown theorem {theorem!r}")
    report = TheoremReport(theorem, p, "exhaustive")
    for part in parts:
        report.merge(part)
    return report


SAMPLING_NOTES = {
    "CD": "A and B uniform over nonempty subsets (each residue kept with probability 1/2)",
    "DSH": "A uniform over subsets; every h in [0, |A|] checked",
    "MAIN": "A uniform over the 3-state magnitude encoding (absent, +x, -x); every alpha checked",
}


def _random_subset(rng: np.random.Generator, p: int, nonempty: bool) -> FpSet:
    while True:
        keep = rng.integers(0, 2, size=p)
        A = FpSet.of(p, np.nonzero(keep)[0].tolist())
        if len(A) or not nonempty:
            return A


def _sample(p: int, theorem: str, seed: int, index: int) -> TheoremReport:
    rng = np.random.default_rng([seed, index])
    rep = TheoremReport(theorem, p, "sampled")
    if theorem == "CD":
        A, B = _random_subset(rng, p, True), _random_subset(rng, p, True)
        holds, observed, bound = check_cd(A, B)
        rep.instances_checked = 1
        if not holds:
            rep.violations.append({"sample": index, "A": A.elements(), "B": B.elements(),
                                   "observed": observed, "bound": bound})
    elif theorem == "DSH":
        A = _random_subset(rng, p, False)
        table = subsum_table(A)
        for h in range(len(A) + 1):
            holds, observed, bound = check_dsh(A, h, table)
            rep.instances_checked += 1
            if not holds:
                rep.violations.append({"sample": index, "A": A.elements(), "h": h,
                                       "observed": observed, "bound": bound})
    elif theorem == "MAIN":
        states = rng.integers(0, 3, size=(p - 1) // 2)
        A = encoding_to_set(p, states.tolist())
        d = len(A)
        # one O(|A| p) pass gives |Sigma_alpha| and |Sigma^alpha| for all alpha
        lower, upper = sigma_sizes_from_profile(*count_profile(A), d)
        for alpha in range(d + 1):
            bound = main_bound(d, alpha, p)
            rep.instances_checked += 1
            if lower[alpha] < bound or lower[alpha] != upper[alpha]:
                rep.violations.append({"sample": index, "A": A.elements(), "alpha": alpha,
                                       "observed_lower": lower[alpha], "observed_upper": upper[alpha],
                                       "bound": bound})
    else:
        raise ValueError(f"unknown theorem {theorem!r}")
    return rep


def random_verify(p: int, theorem: str, samples: int, seed: int, *, workers: int = 1) -> TheoremReport:
    """Check ``samples`` random instances; sample i depends only on (seed, i)."""
    theorem = theorem.upper()
    report = TheoremReport(theorem, p, "sampled", note=SAMPLING_NOTES.get(theorem, ""))
    parts = map_ordered(partial(_sample, p, theorem, seed), list(range(samples)), workers)
    for part in parts:
        report.merge(part)
    return report


def q_model(theorem: str, params: tuple[int, ...], p: int):
    theorem = theorem.upper()
    builder = {"CD": cd_model, "DSH": dsh_model, "MAIN": main_model}[theorem]
    return builder(*params, p)


def construction_audit(theorem: str, params: tuple[int, ...], p: int, *,
                       methods=("full_sum", "single_point", "closed_form", "expansion"),
                       census: bool = True, limit: int | None = None,
                       max_vars: int = 4, max_degree: int = 24, workers: int = 1) -> CoefficientReport:
    """Build the Q-side model and compute its certificate by every requested method."""
    M = q_model(theorem, params, p)
    report = CoefficientReport(M.kind, M.params, p, M.delta)
    limit = max_grid() if limit is None else limit
    fits = M.grid_size() <= limit
    if census:
        if fits:
            report.nonzero_point_count = nonzero_points(M, limit=limit, workers=workers)[0]
        else:
            report.skipped["census"] = f"grid of {M.grid_size()} points over limit {limit}"
    for method in methods:
        if method == "full_sum":
            if fits:
                report.methods[method] = coeff_full_sum(M, limit=limit, workers=workers)
            else:
                report.skipped[method] = f"grid of {M.grid_size()} points over limit {limit}"
        elif method == "single_point":
            # uniqueness already scanned by the census when it ran
            report.methods[method] = coeff_single_point(M, trust=True)
        elif method == "closed_form":
            cf = closed_for(M.kind, M.params, M.delta, p)
            if cf.reducible:
                report.methods[method] = cf.residue
            else:
                report.skipped[method] = "closed form is not p-integral"
                report.warnings.append(f"closed form {cf.exact} not p-integral; using single_point")
                report.methods.setdefault("single_point", coeff_single_point(M, trust=True))
        elif method == "expansion":
            try:
                report.methods[method] = expansion_coefficient(M, max_vars=max_vars, max_degree=max_degree)
            except TooLarge as exc:
                report.skipped[method] = str(exc)
        else:
            raise ValueError(f"unknown method {method!r}")
    return report


def sharpness_cd(p: int, n: int, m: int) -> tuple[int, int]:
    """``(|[1,n] + [1,m]|, bound)``."""
    obs = len(sumset(FpSet.interval(p, 1, n), FpSet.interval(p, 1, m)))
    return obs, cd_bound(n, m, p)


SWEEP_PRIMES = {"CD": (5, 7, 11, 31), "DSH": (7, 11, 13, 31), "MAIN": (7, 11, 13, 31)}
# instances with a positive wrap excess; d <= 6 admits none for DSH
SWEEP_EXTRAS = {
    "CD": (),
    "DSH": ((7, 3, 11), (7, 4, 11), (9, 3, 17)),
    "MAIN": ((5, 2, 11), (6, 3, 13)),
}


def sweep_instances(theorem: str) -> list[tuple[tuple[int, ...], int]]:
    """``(params, p)`` pairs of the certificate agreement sweep."""
    theorem = theorem.upper()
    out = []
    for p in SWEEP_PRIMES[theorem]:
        if theorem == "CD":
            out += [((n, m), p) for n in range(1, 7) for m in range(1, 7) if n <= p and m <= p]
        elif theorem == "DSH":
            for d in range(1, 7):
                for h in range(1, d + 1):
                    if d < p and dsh_delta(d, h, p) < h:
                        out.append(((d, h), p))
        else:
            for d in range(1, 6):
                for alpha in range(d + 1):
                    if 2 * d <= p - 1 and main_delta(d, alpha, p) <= alpha:
                        out.append(((d, alpha), p))
    for x in SWEEP_EXTRAS[theorem]:
        if (tuple(x[:-1]), x[-1]) not in out:
            out.append((tuple(x[:-1]), x[-1]))
    return out


def _audit_one(item) -> CoefficientReport:
    theorem, params, p = item
    return construction_audit(theorem, params, p)


def certificate_sweep(theorems=THEOREMS, *, workers: int = 1) -> list[CoefficientReport]:
    items = [(t.upper(), params, p) for t in theorems for params, p in sweep_instances(t)]
    return map_ordered(_audit_one, items, workers)
