"""Command-line entry point: ``cnslab <command> ...``.

Every command prints one envelope with the fields ``command``, ``params``,
``results``, ``violations`` and ``timing``.  Exit codes: 0 ok, 1 violation
or disagreement, 2 usage error, 3 internal assertion failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import asdict, dataclass, fields

from . import conjlab, theoremlab
from .errors import CnsLabError, NotUniquePoint, ZeroAtBstar
from .fieldcore import require_prime
from .subsums import FpSet, hfold, is_asymmetric, restricted_sumset, sigma_double, subsum_table, sumset

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

METHOD_NAMES = {
    "sum": ("full_sum",),
    "point": ("single_point",),
    "closed": ("closed_form",),
    "expand": ("expansion",),
    "all": ("full_sum", "single_point", "closed_form", "expansion"),
}

# fields that change how a run executes or prints, never what it computes
_EXECUTION_FIELDS = {"fmt", "workers", "timing"}


@dataclass
class RunConfig:
    command: str
    subcommand: str | None = None
    p: int | None = None
    set: list[int] | None = None
    a: list[int] | None = None
    b: list[int] | None = None
    n: int | None = None
    m: int | None = None
    d: int | None = None
    h: int | None = None
    alpha: int | None = None
    beta: int | None = None
    k: int | None = None
    method: str = "all"
    restricted: bool = False
    exhaustive: bool = False
    samples: int | None = None
    seed: int = 0
    limit: int | None = None
    max_grid: int | None = None
    max_space: int = theoremlab.DEFAULT_MAX_SPACE
    max_vars: int = 4
    max_degree: int = 24
    fmt: str = "json"
    workers: int = 1
    timing: bool = False

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in names})

    def echo(self) -> dict:
        """Parameters that determine the result (for the output envelope)."""
        return {k: v for k, v in self.to_dict().items()
                if k not in _EXECUTION_FIELDS and k not in ("command", "subcommand") and v is not None}

    @property
    def name(self) -> str:
        return f"{self.command} {self.subcommand}" if self.subcommand else self.command


def _set_literal(text: str) -> list[int]:
    text = text.strip().strip("{}")
    if not text:
        return []
    try:
        return [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}")


def _common(sp: argparse.ArgumentParser) -> None:
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--timing", action="store_true", help="record wall time (output is then not reproducible)")
    sp.set_defaults(fmt="json")


def _sampling(sp: argparse.ArgumentParser) -> None:
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--exhaustive", action="store_true")
    g.add_argument("--samples", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-space", type=int, default=theoremlab.DEFAULT_MAX_SPACE)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cnslab", description="Restricted subset sums over F_p and their polynomial certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sumset", help="A+B (or the restricted sumset)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--a", type=_set_literal, required=True)
    sp.add_argument("--b", type=_set_literal, required=True)
    sp.add_argument("--restricted", action="store_true")
    _common(sp)

    sp = sub.add_parser("hfold", help="sums of h distinct elements")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--set", type=_set_literal, required=True)
    sp.add_argument("--h", type=int, required=True)
    _common(sp)

    sp = sub.add_parser("sigma", help="sums of between alpha and |A|-beta distinct elements")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--set", type=_set_literal, required=True)
    sp.add_argument("--alpha", type=int, default=0)
    sp.add_argument("--beta", type=int, default=0)
    _common(sp)

    sp = sub.add_parser("coeff", help="certificate coefficient of one proof model")
    sp.add_argument("subcommand", choices=["cd", "dsh", "main"])
    sp.add_argument("--p", type=int, required=True)
    for name in ("n", "m", "d", "h", "alpha"):
        sp.add_argument(f"--{name}", type=int)
    sp.add_argument("--method", choices=sorted(METHOD_NAMES), default="all")
    sp.add_argument("--max-grid", type=int)
    sp.add_argument("--max-vars", type=int, default=4)
    sp.add_argument("--max-degree", type=int, default=24)
    _common(sp)

    sp = sub.add_parser("verify", help="check a theorem's bound")
    sp.add_argument("subcommand", choices=["cd", "dsh", "main"])
    sp.add_argument("--p", type=int, required=True)
    _sampling(sp)
    _common(sp)

    sp = sub.add_parser("audit", help="certificate agreement sweep")
    sp.add_argument("subcommand", nargs="?", choices=["cd", "dsh", "main", "all"], default="all")
    _common(sp)

    sp = sub.add_parser("conjecture", help="double-bound conjecture tools")
    sp.add_argument("subcommand", choices=["pairs", "family", "search"])
    sp.add_argument("--p", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--limit", type=int)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--exhaustive", action="store_true")
    g.add_argument("--samples", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-space", type=int, default=theoremlab.DEFAULT_MAX_SPACE)
    _common(sp)
    return parser


def parse_args(argv=None) -> RunConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = RunConfig.from_dict(vars(ns))
    need = {
        ("coeff", "cd"): ("n", "m"),
        ("coeff", "dsh"): ("d", "h"),
        ("coeff", "main"): ("d", "alpha"),
    }.get((cfg.command, cfg.subcommand), ())
    missing = [f"--{x}" for x in need if getattr(cfg, x) is None]
    if cfg.command == "conjecture" and cfg.subcommand == "search":
        if cfg.p is None:
            missing.append("--p")
        if not cfg.exhaustive and cfg.samples is None:
            missing.append("--exhaustive or --samples")
    if missing:
        parser.error(f"{cfg.name} requires {', '.join(missing)}")
    if cfg.workers < 1:
        parser.error("--workers must be >= 1")
    return cfg


def _fpset(cfg: RunConfig, values) -> FpSet:
    return FpSet.of(cfg.p, values)


def _cmd_sumset(cfg):
    A, B = _fpset(cfg, cfg.a), _fpset(cfg, cfg.b)
    S = restricted_sumset(A, B) if cfg.restricted else sumset(A, B)
    res = {"A": A.elements(), "B": B.elements(), "restricted": cfg.restricted,
           "sumset": S.elements(), "size": len(S)}
    if not cfg.restricted and len(A) and len(B):
        res["cd_bound"] = theoremlab.cd_bound(len(A), len(B), cfg.p)
    return res, []


def _cmd_hfold(cfg):
    A = _fpset(cfg, cfg.set)
    S = hfold(A, cfg.h)
    return {"A": A.elements(), "h": cfg.h, "hfold": S.elements(), "size": len(S),
            "dsh_bound": theoremlab.dsh_bound(len(A), cfg.h, cfg.p)}, []


def _cmd_sigma(cfg):
    A = _fpset(cfg, cfg.set)
    S = sigma_double(A, cfg.alpha, cfg.beta)
    res = {"A": A.elements(), "alpha": cfg.alpha, "beta": cfg.beta, "sigma": S.elements(),
           "size": len(S), "asymmetric": is_asymmetric(A)}
    if res["asymmetric"]:
        bound = conjlab.conj_bound(len(A), cfg.alpha, cfg.beta, cfg.p)
        res["conjectured_bound"] = bound
        res["meets_bound"] = len(S) >= bound
    return res, []


def _cmd_coeff(cfg):
    params = {"cd": (cfg.n, cfg.m), "dsh": (cfg.d, cfg.h), "main": (cfg.d, cfg.alpha)}[cfg.subcommand]
    rep = theoremlab.construction_audit(
        cfg.subcommand, params, cfg.p, methods=METHOD_NAMES[cfg.method],
        limit=cfg.max_grid, max_vars=cfg.max_vars, max_degree=cfg.max_degree, workers=cfg.workers)
    violations = [] if rep.ok else [rep.as_dict()]
    return rep.as_dict(), violations


def _cmd_verify(cfg):
    if cfg.exhaustive:
        rep = theoremlab.exhaustive_verify(cfg.p, cfg.subcommand, max_space=cfg.max_space, workers=cfg.workers)
    else:
        rep = theoremlab.random_verify(cfg.p, cfg.subcommand, cfg.samples, cfg.seed, workers=cfg.workers)
    res = rep.as_dict()
    violations = res.pop("violations")
    res["holds"] = not violations
    return res, violations


def _cmd_audit(cfg):
    which = theoremlab.THEOREMS if cfg.subcommand == "all" else (cfg.subcommand.upper(),)
    reports = theoremlab.certificate_sweep(which, workers=cfg.workers)
    rows = [r.as_dict() for r in reports]
    return rows, [r for r, rep in zip(rows, reports) if not rep.ok]


def _family_rows(k: int, p: int) -> list[dict]:
    A = conjlab.family_set(k, p)
    table = subsum_table(A)
    rows = []
    for alpha in range(k + 1):
        for beta in range(k + 1 - alpha):
            holds, observed, bound = conjlab.check_double(A, alpha, beta, table)
            rows.append({"k": k, "p": p, "alpha": alpha, "beta": beta,
                         "observed": observed, "bound": bound, "holds": holds})
    return rows


def _cmd_conjecture(cfg):
    if cfg.subcommand == "pairs":
        limit = 1000 if cfg.limit is None else cfg.limit
        return [{"k": k, "p": p} for k, p in conjlab.special_pairs(limit)], []
    if cfg.subcommand == "family":
        if cfg.k is not None:
            p = cfg.p if cfg.p is not None else cfg.k * (cfg.k + 1) // 2 - 4
            return {"set": conjlab.family_set(cfg.k, p).elements(), "rows": _family_rows(cfg.k, p)}, []
        rows = []
        for k, p in conjlab.special_pairs(1000 if cfg.limit is None else cfg.limit):
            A = conjlab.family_set(k, p)
            table = subsum_table(A)
            row = {"k": k, "p": p}
            for alpha, beta in conjlab.KNOWN_EXCEPTIONAL:
                _, observed, bound = conjlab.check_double(A, alpha, beta, table)
                row[f"sigma_{alpha}_{beta}"] = observed
                row[f"bound_{alpha}_{beta}"] = bound
            rows.append(row)
        return rows, []
    require_prime(cfg.p)
    if cfg.exhaustive:
        hits = conjlab.search(cfg.p, "exhaustive", max_space=cfg.max_space, workers=cfg.workers)
    else:
        hits = conjlab.search(cfg.p, "sampled", samples=cfg.samples, seed=cfg.seed, workers=cfg.workers)
    rows = [dict(h.as_dict(), explained=h.explained) for h in hits]
    unexplained = [r for r in rows if not r["explained"]]
    return {"p": cfg.p, "mode": "exhaustive" if cfg.exhaustive else "sampled",
            "hit_count": len(rows), "unexplained_count": len(unexplained), "hits": rows}, unexplained


HANDLERS = {
    "sumset": _cmd_sumset, "hfold": _cmd_hfold, "sigma": _cmd_sigma, "coeff": _cmd_coeff,
    "verify": _cmd_verify, "audit": _cmd_audit, "conjecture": _cmd_conjecture,
}


def _flat(value):
    if isinstance(value, (list, tuple)):
        return " ".join(str(_flat(v)) for v in value)
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True)
    return value


def _table(results) -> list[dict]:
    if isinstance(results, dict):
        for key in ("rows", "hits"):
            if isinstance(results.get(key), list):
                return results[key]
        return [results]
    return list(results)


def render(envelope: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(envelope, indent=2) + "\n"
    rows = _table(envelope["results"])
    if fmt == "csv":
        buf = io.StringIO()
        header: list[str] = []
        for row in rows:
            header += [k for k in row if k not in header]
        writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _flat(v) for k, v in row.items()})
        return buf.getvalue()
    lines = [f"# {envelope['command']}"]
    for row in rows:
        lines.append("  ".join(f"{k}={_flat(v)}" for k, v in row.items()))
    lines.append(f"# violations: {len(envelope['violations'])}")
    return "\n".join(lines) + "\n"


def run(cfg: RunConfig) -> tuple[int, str]:
    if cfg.p is not None:
        require_prime(cfg.p)
    start = time.perf_counter()
    results, violations = HANDLERS[cfg.command](cfg)
    envelope = {
        "command": cfg.name,
        "params": cfg.echo(),
        "results": results,
        "violations": violations,
        "timing": {"seconds": round(time.perf_counter() - start, 6)} if cfg.timing else None,
    }
    return (EXIT_VIOLATION if violations else EXIT_OK), render(envelope, cfg.fmt)


def main(argv=None) -> int:
    cfg = parse_args(argv)
    try:
        code, text = run(cfg)
    except (AssertionError, NotUniquePoint, ZeroAtBstar) as exc:
        print(f"cnslab: internal check failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except CnsLabError as exc:
        print(f"cnslab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(text)
    return code

