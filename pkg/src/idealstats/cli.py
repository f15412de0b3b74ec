"""Command-line front end.

Subcommands: fields, count {ideals|hfree|hfull|th}, constants, mertens, ek,
density, audit, probmodel.  Every command emits a CSV table (header row
mandatory) or the equivalent JSON; numbers are printed with 15 significant
digits, locale-independent, so repeated runs are byte-identical.

Exit codes: 0 success, 1 domain or validation error, 2 I/O error.  The
--threads flag is accepted for interface stability; all computations are
deterministic serial folds, so results never depend on it.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import counting, kernels, probmodel
from .catalog import load_catalog, parse_catalog
from .constants import (
    dedekind_zeta,
    hfull_correction_series,
    hfull_density_constant_forms,
    hfull_euler_polynomial,
)
from .counting import (
    count_hfree,
    count_hfree_coprime,
    count_hfull,
    count_hfull_coprime,
    count_ideals,
    count_tuples,
    divisor_density,
)
from .ekstat import ek_sample, gaussian_moment, ks_report
from .errors import IdealstatsError, MathDomainError
from .fields import FieldDescriptor
from .mertens import fit_constant
from .primeideals import prime_ideal_for, smallest_prime_ideals


@dataclass(frozen=True)
class RunConfig:
    """One fully parsed invocation; everything run() needs."""

    command: str
    field: str
    subset: str | None = None
    what: str | None = None
    h: int = 2
    x: int | None = None
    grid: tuple[int, ...] | None = None
    part: int | None = None
    alpha: float = 2.0
    bins: int = 40
    r: int = 3
    moments: tuple[int, ...] = (1, 2, 3, 4)
    prime: tuple[int, int] | None = None
    smallest: int = 3
    coprime_to: tuple[int, int] | None = None
    tolerance: float | None = None
    fmt: str = "csv"
    out: str | None = None
    seed: int = probmodel.DEFAULT_SEED
    threads: int = 1
    cache_dir: str | None = None
    catalog: str | None = None


# ------------------------------------------------------------------- parsing


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; 2 is reserved for I/O here.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _int_value(text: str) -> int:
    v = float(text)
    if v != int(v) or not v >= 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return int(v)


def _grid_value(text: str) -> tuple[int, ...]:
    parts = [p for p in text.split(",") if p]
    if not parts:
        raise argparse.ArgumentTypeError("empty grid")
    grid = tuple(_int_value(p) for p in parts)
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise argparse.ArgumentTypeError("grid must be strictly increasing")
    return grid


def _prime_value(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) not in (1, 2):
        raise argparse.ArgumentTypeError("prime spec is p or p,conjugate_index")
    try:
        p = int(parts[0])
        idx = int(parts[1]) if len(parts) == 2 else 0
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime spec {text!r}") from None
    if p < 2 or idx < 0:
        raise argparse.ArgumentTypeError(f"bad prime spec {text!r}")
    return p, idx


def _threads_value(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("--threads must be >= 1")
    return n


def _moments_value(text: str) -> tuple[int, ...]:
    try:
        orders = tuple(int(p) for p in text.split(",") if p)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad moment list {text!r}") from None
    if not orders or any(not 1 <= r <= 8 for r in orders):
        raise argparse.ArgumentTypeError("moment orders must be in 1..8")
    return orders


def build_parser() -> _Parser:
    parser = _Parser(prog="idealstats", description=__doc__.splitlines()[0])

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="Q", help="catalog label (default Q)")
    common.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="write to this file instead of stdout")
    common.add_argument("--catalog", default=None, help="field catalog file")
    common.add_argument("--cache-dir", default=None, help="prime table cache directory")
    common.add_argument("--threads", type=_threads_value, default=os.cpu_count() or 1,
                        help="worker hint; results are independent of it")
    common.add_argument("--tol", dest="tolerance", type=float, default=None)

    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("fields", parents=[common], help="catalog invariants and kappa")

    p = sub.add_parser("count", parents=[common], help="observed vs main-term counts")
    p.add_argument("what", choices=("ideals", "hfree", "hfull", "th"))
    p.add_argument("--h", type=int, default=2)
    p.add_argument("--x", type=_int_value, default=None)
    p.add_argument("--grid", type=_grid_value, default=None)
    p.add_argument("--coprime-to", type=_prime_value, default=None, metavar="P[,IDX]")

    p = sub.add_parser("constants", parents=[common], help="Euler-product constants")
    p.add_argument("--h", type=int, default=2)

    p = sub.add_parser("mertens", parents=[common], help="reciprocal-sum shapes on a grid")
    p.add_argument("--part", type=int, required=True, choices=range(1, 8))
    p.add_argument("--x-grid", type=_grid_value, required=True, dest="grid")
    p.add_argument("--alpha", type=float, default=2.0)

    p = sub.add_parser("ek", parents=[common], help="normalized omega statistic")
    p.add_argument("--subset", choices=("all", "hfree", "hfull"), default="all")
    p.add_argument("--h", type=int, default=2)
    p.add_argument("--x", type=_int_value, required=True)
    p.add_argument("--bins", type=int, default=40)

    p = sub.add_parser("density", parents=[common], help="divisor densities vs the model")
    p.add_argument("--subset", choices=("all", "hfree", "hfull"), default="hfree")
    p.add_argument("--h", type=int, default=2)
    p.add_argument("--x", type=_int_value, default=None)
    p.add_argument("--grid", type=_grid_value, default=None)
    p.add_argument("--prime", type=_prime_value, default=None, metavar="P[,IDX]")
    p.add_argument("--smallest", type=int, default=3,
                   help="audit this many smallest prime ideals when --prime is absent")

    p = sub.add_parser("audit", parents=[common], help="moment-transfer conditions")
    p.add_argument("--subset", choices=("hfree", "hfull"), required=True)
    p.add_argument("--h", type=int, default=2)
    p.add_argument("--x", type=_int_value, required=True)
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--seed", type=int, default=probmodel.DEFAULT_SEED)

    p = sub.add_parser("probmodel", parents=[common], help="Bernoulli model vs omega_y")
    p.add_argument("--subset", choices=("hfree", "hfull"), required=True)
    p.add_argument("--h", type=int, default=2)
    p.add_argument("--x", type=_int_value, required=True)
    p.add_argument("--moments", type=_moments_value, default=(1, 2, 3, 4))
    p.add_argument("--seed", type=int, default=probmodel.DEFAULT_SEED)

    return parser


def parse_args(argv: list[str] | None = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    known = {f for f in RunConfig.__dataclass_fields__}
    return RunConfig(**{k: v for k, v in vars(ns).items() if k in known and v is not None})


# ------------------------------------------------------------------ emission


def _fmt_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".15g")
    return str(v)


def _json_value(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        # round-trip through the printed form so csv and json agree exactly
        return float(format(float(v), ".15g"))
    if isinstance(v, (list, tuple)):
        return [_json_value(u) for u in v]
    if isinstance(v, dict):
        return {str(k): _json_value(u) for k, u in v.items()}
    return v


@dataclass
class Emission:
    columns: list[str]
    rows: list[list]
    extra: dict | None = None  # JSON-only summary fields

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.columns)
            for row in self.rows:
                w.writerow([_fmt_cell(v) for v in row])
            return buf.getvalue()
        payload = dict(self.extra) if self.extra else {}
        payload["columns"] = self.columns
        payload["rows"] = [
            {c: _json_value(v) for c, v in zip(self.columns, row)} for row in self.rows
        ]
        return json.dumps(_json_value(payload), indent=2) + "\n"


# ------------------------------------------------------------------ handlers


def _load_fields(config: RunConfig) -> dict[str, FieldDescriptor]:
    if config.catalog is None:
        return load_catalog(None)
    text = Path(config.catalog).read_text()  # OSError -> exit 2
    return {f.label: f for f in parse_catalog(text, source=config.catalog)}


def _field(config: RunConfig) -> FieldDescriptor:
    fields = _load_fields(config)
    try:
        return fields[config.field]
    except KeyError:
        raise MathDomainError(
            f"unknown field {config.field!r}; catalog has {', '.join(sorted(fields))}"
        ) from None


def _xs(config: RunConfig) -> tuple[int, ...]:
    if (config.x is None) == (config.grid is None):
        raise MathDomainError("give exactly one of --x and --grid")
    return config.grid if config.grid is not None else (config.x,)


def _cmd_fields(config: RunConfig) -> Emission:
    cols = ["label", "d", "discriminant", "r1", "r2",
            "class_number", "regulator", "nu", "kappa"]
    rows = [
        [f.label, f.d, f.discriminant, f.r1, f.r2,
         f.class_number, f.regulator, f.nu, f.kappa]
        for f in _load_fields(config).values()
    ]
    return Emission(cols, rows)


def _cmd_count(config: RunConfig) -> Emission:
    desc = _field(config)
    h = config.h
    ell = None
    if config.coprime_to is not None:
        if config.what not in ("hfree", "hfull"):
            raise MathDomainError("--coprime-to applies to hfree and hfull only")
        ell = prime_ideal_for(desc, *config.coprime_to)
    rows = []
    for x in _xs(config):
        if config.what == "ideals":
            rep = count_ideals(desc, x)
        elif config.what == "hfree":
            rep = count_hfree_coprime(desc, h, x, ell) if ell else count_hfree(desc, h, x)
        elif config.what == "hfull":
            rep = count_hfull_coprime(desc, h, x, ell) if ell else count_hfull(desc, h, x)
        else:
            rep = count_tuples(desc, h, x)
        rows.append([rep.x, rep.observed, rep.prediction.main_term,
                     rep.relative_error, rep.prediction.error_case])
    return Emission(["x", "observed", "main_term", "relative_error", "error_case"], rows)


_P_BUDGET = 64_000_000


def _feasible_tol(alpha: float, target: float) -> float:
    """Tightest tolerance the truncation budget can honor for this exponent."""
    return max(target, 8.0 * _P_BUDGET ** (0.5 - alpha))


def _cmd_constants(config: RunConfig) -> Emission:
    desc = _field(config)
    h = config.h
    if h < 2:
        raise MathDomainError("h must be >= 2")
    rows: list[list] = [["kappa", desc.kappa]]
    rows.append([f"zeta_K({h})", dedekind_zeta(desc, float(h), tol=_feasible_tol(h, 1e-9)).value])
    for i in range(1, h):
        s = 1.0 + i / h
        rows.append([f"zeta_K(1+{i}/{h})", dedekind_zeta(desc, s, tol=_feasible_tol(s, 1e-8)).value])
    direct, split = hfull_density_constant_forms(desc, h, tol=_feasible_tol(1.0 + 1.0 / h, 1e-8))
    rows.append(["gamma_h_direct", direct.value])
    rows.append(["gamma_h_split", split.value])
    g_tol = _feasible_tol(2.0 + 2.0 / h, 1e-8)
    rows.append(["G_h(1/h)", hfull_correction_series(desc, h, 1.0 / h, tol=g_tol).value])
    poly = hfull_euler_polynomial(h)
    for r, c in enumerate(poly.coefficients):
        rows.append([f"alpha_{r}", c])
    return Emission(["name", "value"], rows)


def _cmd_mertens(config: RunConfig) -> Emission:
    desc = _field(config)
    fit = fit_constant(desc, config.part, config.grid, alpha=config.alpha)
    rows = [
        [x, e, m, r]
        for x, e, m, r in zip(fit.x_grid, fit.empirical, fit.model, fit.residuals)
    ]
    return Emission(["x", "empirical", "model", "residual"], rows)


def _cmd_ek(config: RunConfig) -> Emission:
    desc = _field(config)
    sample = ek_sample(desc, config.subset, config.h, config.x)
    rep = ks_report(sample, bins=config.bins)
    rows = [
        [rep.bin_edges[i], rep.bin_edges[i + 1], int(rep.bin_counts[i]),
         rep.empirical_cdf[i], rep.reference_cdf[i]]
        for i in range(len(rep.bin_counts))
    ]
    extra = {
        "label": rep.label, "subset": rep.subset, "h": rep.h, "x": rep.x,
        "n": rep.n, "ks_distance": rep.ks,
        "moments": [[r, m, gaussian_moment(r)] for r, m in enumerate(rep.moments, 1)],
    }
    return Emission(["bin_left", "bin_right", "count", "empirical_cdf", "phi"], rows, extra)


def _cmd_density(config: RunConfig) -> Emission:
    desc = _field(config)
    if config.prime is not None:
        primes = [prime_ideal_for(desc, *config.prime)]
    else:
        if config.smallest < 1:
            raise MathDomainError("--smallest must be >= 1")
        primes = smallest_prime_ideals(desc, config.smallest)
    rows = []
    for x in _xs(config):
        for prime in primes:
            est = divisor_density(desc, config.subset, config.h, x, prime)
            rows.append([est.x, prime.p, prime.conjugate_index, prime.norm,
                         est.observed, est.density, est.error])
    return Emission(
        ["x", "p", "conjugate_index", "norm", "empirical", "model", "error"], rows
    )


def _cmd_audit(config: RunConfig) -> Emission:
    desc = _field(config)
    rep = probmodel.conditions_audit(
        desc, config.subset, config.h, config.x, r_max=config.r, seed=config.seed
    )
    rows: list[list] = [
        ["beta", rep.beta],
        ["y", rep.y],
        ["members", rep.members],
        ["max_factors_above_beta", rep.max_factors_above_beta],
        ["tail_density_sum", rep.tail_density_sum],
        ["tail_abs_error_sum", rep.tail_abs_error_sum],
        ["small_density_sum", rep.small_density_sum],
        ["loglog_gap", rep.loglog_gap],
        ["small_density_sq_sum", rep.small_density_sq_sum],
    ]
    for u, v in rep.tuple_error_sums.items():
        rows.append([f"tuple_error_sum_{u}", v])
    for i, n in enumerate(rep.tracked_norms, 1):
        rows.append([f"tracked_norm_{i}", n])
    for name, v in rep.normalized.items():
        rows.append([f"normalized_{name}", v])
    extra = {
        "label": rep.label, "subset": rep.subset, "h": rep.h, "x": rep.x,
        "seed": config.seed, "r_max": config.r,
    }
    return Emission(["name", "value"], rows, extra)


def _cmd_probmodel(config: RunConfig) -> Emission:
    desc = _field(config)
    system = probmodel.bernoulli_system(desc, config.subset, config.h, config.x)
    mu, var = probmodel.mean_variance(system)
    if var <= 0:
        raise MathDomainError("degenerate Bernoulli system (zero variance)")
    sigma = math.sqrt(var)
    rmax = max(config.moments)
    table = counting.subset_table(desc, config.subset, config.h, config.x)
    n, sums = kernels.centered_omega_y_moments(
        table.norm, config.x, kernels.subset_code(config.subset), config.h,
        system.y, mu, sigma, rmax,
    )
    pmf = probmodel.distribution(system)
    k = np.arange(len(pmf), dtype=np.float64)
    rows = []
    for r in config.moments:
        exact = float(math.fsum(pmf * ((k - mu) / sigma) ** r))
        empirical = float(sums[r - 1]) / n
        rows.append([r, exact, empirical, abs(exact - empirical)])
    return Emission(["r", "exact", "empirical", "gap"], rows)


_HANDLERS = {
    "fields": _cmd_fields,
    "count": _cmd_count,
    "constants": _cmd_constants,
    "mertens": _cmd_mertens,
    "ek": _cmd_ek,
    "density": _cmd_density,
    "audit": _cmd_audit,
    "probmodel": _cmd_probmodel,
}


def run(config: RunConfig) -> int:
    if config.cache_dir is not None:
        os.environ["IDEALSTATS_CACHE_DIR"] = config.cache_dir
        counting._table_for.cache_clear()
    try:
        text = _HANDLERS[config.command](config).render(config.fmt)
    except (IdealstatsError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        if config.out is None:
            sys.stdout.write(text)
        else:
            Path(config.out).write_text(text)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def main(argv: list[str] | None = None) -> int:
    return run(parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
