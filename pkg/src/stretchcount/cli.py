"""Command-line experiment runners with reproducible CSV output.

Subcommands: scan | counterexample | cluster | audit | eigen | oscillator.
Exit codes: 0 success, 1 an audited invariant failed, 2 usage error.

Scans default to the radius grid r = k * sqrt(3)/10 (an irrational step, to
avoid structured radii); the named presets are figure2 (p = 2, the balanced
family trace) and figure5 (p = 1, the triangle clustering trace).  CSV files
start with two comment lines, a schema tag and the science-relevant part of
the configuration, and floats are printed with 12 significant digits so
identical configurations reproduce byte-identical files.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass, field
from multiprocessing import Pool

import numpy as np

from . import estimates
from .counting import count_p1_balanced, count_p1_sqrt2, count_pcircle
from .curves import curve_for_exponent
from .spectral import maximize_neumann, minimize_dirichlet, minimize_oscillator
from .sweep import maximize_count

__all__ = [
    "ExperimentConfig",
    "run_scan",
    "run_counterexample",
    "run_cluster",
    "run_audit",
    "run_eigen_asymptotics",
    "run_oscillator",
    "main",
]

GRID_MULTIPLIER = math.sqrt(3.0) / 10.0
SQRT2 = math.sqrt(2.0)


@dataclass
class ExperimentConfig:
    experiment: str = "scan"
    p: float = 2.0
    r_start: int = 1
    r_stop: int = 2000
    r_multiplier: float = GRID_MULTIPLIER
    output_path: str = "out.csv"
    parallelism: int = 0  # 0 = all cores
    seed: int = 0
    r: float | None = None
    s_values: list[float] = field(default_factory=list)
    max_m: int = 1000
    draws: int = 1000
    n_values: list[int] = field(default_factory=lambda: [100, 1000, 10000, 100000])

    def grid(self) -> list[int]:
        return list(range(self.r_start, self.r_stop + 1))

    def jobs(self) -> int:
        return self.parallelism if self.parallelism > 0 else (os.cpu_count() or 1)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _intervals_json(intervals) -> str:
    return json.dumps([[float(_fmt(a)), float(_fmt(b))] for a, b in intervals],
                      separators=(",", ":"))


def _write_csv(path, schema, config_echo, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(f"# stretchcount {schema} v1\n")
        fh.write(f"# config: {json.dumps(config_echo, sort_keys=True)}\n")
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _scan_worker(args):
    p, k, mult = args
    r = k * mult
    res = maximize_count(p, r)
    return (_fmt(r), _fmt(math.log(r)), res.extremal_count,
            _fmt(res.sup_s), _intervals_json(res.intervals))


def run_scan(config: ExperimentConfig) -> str:
    """Optimal-stretch trace over the radius grid; one CSV row per radius."""
    grid = config.grid()
    if not grid:
        raise ValueError("empty radius grid")
    items = [(config.p, k, config.r_multiplier) for k in grid]
    jobs = config.jobs()
    if jobs > 1 and len(items) > 1:
        with Pool(jobs) as pool:
            rows = list(pool.imap(_scan_worker, items, chunksize=max(1, len(items) // (jobs * 8))))
    else:
        rows = [_scan_worker(it) for it in items]
    echo = {"experiment": config.experiment, "p": config.p,
            "r_start": config.r_start, "r_stop": config.r_stop,
            "r_multiplier": float(_fmt(config.r_multiplier)), "seed": config.seed}
    _write_csv(config.output_path, "scan", echo,
               ["r", "log_r", "extremal_count", "sup_s", "intervals"], rows)
    return config.output_path


def run_counterexample(p: float, r: float, s_list: list[float]):
    """Counts at fixed radius for each stretch in s_list, plus differences."""
    rows = []
    for s in s_list:
        rows.append((s, count_pcircle(p, r, s)))
    print(f"p = {p:g}, r = {r:g}")
    for s, n in rows:
        print(f"  s = {_fmt(s):>18}  count = {n}")
    for (s1, n1), (s2, n2) in zip(rows, rows[1:]):
        print(f"  count(s={_fmt(s2)}) - count(s={_fmt(s1)}) = {n2 - n1}")
    return rows


def cluster_rows(max_m: int):
    """Radii r = sqrt(2)(m + 1/2) falling within 1/4 below an integer; the
    sqrt(2)-stretch then beats the balanced triangle by about r/2 points."""
    rows = []
    for m in range(1, max_m + 1):
        r = SQRT2 * (m + 0.5)
        n = math.ceil(r)
        if 0.0 < n - r < 0.25:
            n_sqrt2 = count_p1_sqrt2(m)
            n_bal = count_p1_balanced(r)
            rows.append((m, r, n, n_sqrt2, n_bal, (n_sqrt2 - n_bal) / r))
    return rows


def run_cluster(config: ExperimentConfig) -> str:
    rows = cluster_rows(config.max_m)
    echo = {"experiment": "cluster", "max_m": config.max_m}
    _write_csv(config.output_path, "cluster", echo,
               ["m", "r", "n_above", "count_sqrt2", "count_balanced", "gain_per_r"],
               [(m, _fmt(r), n, a, b, _fmt(g)) for m, r, n, a, b, g in rows])
    return config.output_path


AUDIT_SMOOTH_P = (2.0,)
AUDIT_GENERAL_P = (1.5, 2.0, 3.0, 4.0)
AUDIT_BASIC_P = (1.0, 1.5, 2.0, 3.0, 4.0)


def audit_reports(draws: int, seed: int):
    """Seeded random draws of (curve, r, s) within each bound's precondition."""
    rng = np.random.default_rng(seed)
    curves = {p: curve_for_exponent(p) for p in set(AUDIT_BASIC_P) | set(AUDIT_GENERAL_P)}
    reports = []
    for _ in range(draws):
        r = math.exp(rng.uniform(math.log(3.0), math.log(300.0)))
        s = math.exp(rng.uniform(math.log(0.2), math.log(5.0)))
        p_basic = float(rng.choice(AUDIT_BASIC_P))
        p_general = float(rng.choice(AUDIT_GENERAL_P))
        cb = curves[p_basic]
        reports.append(estimates.rough_lower_bound(cb, r, s))
        reports.append(estimates.two_term_upper_bound(cb, max(r, s * 1.0001), s))
        reports.append(estimates.neumann_lower_bound(cb, r, s))
        reports.append(estimates.remainder_bound_smooth(curves[2.0], r, s))
        reports.append(estimates.remainder_bound_general(curves[p_general], r, s))
    return reports


def run_audit(config: ExperimentConfig) -> int:
    """Write every BoundReport as a CSV row; returns the violation count."""
    reports = audit_reports(config.draws, config.seed)
    rows = []
    for rep in reports:
        name = f"{rep.name}:{rep.inputs.get('curve', '?')}"
        rows.append((name, _fmt(rep.inputs["r"]), _fmt(rep.inputs["s"]),
                     _fmt(rep.lhs), _fmt(rep.rhs), _fmt(rep.slack), rep.holds))
    echo = {"experiment": "audit", "draws": config.draws, "seed": config.seed}
    _write_csv(config.output_path, "audit", echo,
               ["name", "r", "s", "lhs", "rhs", "slack", "holds"], rows)
    return sum(1 for rep in reports if not rep.holds)


def _asymptotic(n: int, sign: float) -> float:
    c = 4.0 / math.pi
    return c * n + sign * c ** 1.5 * math.sqrt(n)


def run_eigen_asymptotics(config: ExperimentConfig) -> str:
    rows = []
    for n in config.n_values:
        d = minimize_dirichlet(n)
        rows.append((n, d.problem, _fmt(d.value), _fmt(d.sup_s),
                     _fmt(d.value - _asymptotic(n, +1.0))))
        m = maximize_neumann(n)
        rows.append((n, m.problem, _fmt(m.value), _fmt(m.sup_s),
                     _fmt(m.value - _asymptotic(n, -1.0))))
    echo = {"experiment": "eigen_asymptotics", "n_values": config.n_values}
    _write_csv(config.output_path, "eigen", echo,
               ["n", "problem", "value", "sup_s", "residual_vs_asymptotic"], rows)
    return config.output_path


def run_oscillator(config: ExperimentConfig) -> str:
    """Oscillator optimal-stretch trace: data for the clustering question, no
    convergence assertion."""
    rows = []
    for n in config.n_values:
        res = minimize_oscillator(n)
        rows.append((n, _fmt(res.value), _fmt(res.sup_s), _intervals_json(res.s_set)))
    echo = {"experiment": "oscillator", "n_values": config.n_values}
    _write_csv(config.output_path, "oscillator", echo,
               ["n", "value", "sup_s", "intervals"], rows)
    return config.output_path


# ---------------------------------------------------------------------------
# argument handling

def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="stretchcount",
                                 description="lattice counting under stretched curves")
    ap.add_argument("--config", help="JSON file mirroring ExperimentConfig")
    sub = ap.add_subparsers(dest="command")

    sc = sub.add_parser("scan", help="optimal-stretch trace over a radius grid")
    sc.add_argument("--preset", choices=["figure2", "figure5"])
    sc.add_argument("--p", type=float)
    sc.add_argument("--r-start", type=int)
    sc.add_argument("--r-count", type=int)
    sc.add_argument("--r-multiplier", type=float)
    sc.add_argument("--out")
    sc.add_argument("--jobs", type=int)

    ce = sub.add_parser("counterexample", help="counts at fixed radius, several stretches")
    ce.add_argument("--p", type=float)
    ce.add_argument("--r", type=float)
    ce.add_argument("--s", type=float, action="append")

    cl = sub.add_parser("cluster", help="sqrt(2)-stretch gain sequence for the triangle")
    cl.add_argument("--max-m", type=int)
    cl.add_argument("--out")

    au = sub.add_parser("audit", help="randomized bound audit")
    au.add_argument("--draws", type=int)
    au.add_argument("--seed", type=int)
    au.add_argument("--out")

    ei = sub.add_parser("eigen", help="extremal rectangle eigenvalue asymptotics")
    ei.add_argument("--n", type=int, action="append")
    ei.add_argument("--out")

    osc = sub.add_parser("oscillator", help="oscillator optimal-stretch data")
    osc.add_argument("--n", type=int, action="append")
    osc.add_argument("--out")
    return ap


def _config_from(args) -> ExperimentConfig:
    cfg = ExperimentConfig()
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
        grid = payload.pop("r_grid", None)
        for key, val in payload.items():
            if hasattr(cfg, key):
                setattr(cfg, key, val)
            else:
                raise ValueError(f"unknown config field {key!r}")
        if grid:
            cfg.r_start = int(grid.get("start", cfg.r_start))
            cfg.r_stop = int(grid.get("stop", cfg.r_stop))
            cfg.r_multiplier = float(grid.get("multiplier", cfg.r_multiplier))
    return cfg


def _apply_scan_flags(cfg, args):
    if getattr(args, "preset", None):
        cfg.experiment = args.preset
        cfg.p = 2.0 if args.preset == "figure2" else 1.0
    if getattr(args, "p", None) is not None:
        cfg.p = args.p
    if getattr(args, "r_start", None) is not None:
        cfg.r_start = args.r_start
    if getattr(args, "r_count", None) is not None:
        cfg.r_stop = cfg.r_start + args.r_count - 1
    if getattr(args, "r_multiplier", None) is not None:
        cfg.r_multiplier = args.r_multiplier
    if getattr(args, "out", None):
        cfg.output_path = args.out
    if getattr(args, "jobs", None) is not None:
        cfg.parallelism = args.jobs


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = _config_from(args)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    command = args.command
    if command is None:
        if not args.config:
            ap.print_usage(sys.stderr)
            return 2
        command = {"figure2": "scan", "figure5": "scan"}.get(cfg.experiment, cfg.experiment)
        if cfg.experiment in ("figure2", "figure5"):
            cfg.p = 2.0 if cfg.experiment == "figure2" else 1.0
        if cfg.experiment == "eigen_asymptotics":
            command = "eigen"

    try:
        if command == "scan":
            _apply_scan_flags(cfg, args)
            if cfg.r_stop < cfg.r_start:
                print("error: empty radius grid", file=sys.stderr)
                return 2
            path = run_scan(cfg)
            print(f"wrote {path} ({cfg.r_stop - cfg.r_start + 1} rows)")
            return 0
        if command == "counterexample":
            p = args.p if getattr(args, "p", None) is not None else None
            if p is None and getattr(args, "r", None) is None and not getattr(args, "s", None):
                run_counterexample(2.0, 4.96, [1.0, 1.15])
                run_counterexample(1.0, 4.96, [1.0, SQRT2])
                return 0
            if p is None or args.r is None or not args.s:
                print("error: counterexample needs --p, --r and at least one --s",
                      file=sys.stderr)
                return 2
            run_counterexample(p, args.r, args.s)
            return 0
        if command == "cluster":
            if getattr(args, "max_m", None) is not None:
                cfg.max_m = args.max_m
            if getattr(args, "out", None):
                cfg.output_path = args.out
            path = run_cluster(cfg)
            rows = cluster_rows(cfg.max_m)
            print(f"wrote {path} ({len(rows)} qualifying radii up to m={cfg.max_m})")
            return 0
        if command == "audit":
            if getattr(args, "draws", None) is not None:
                cfg.draws = args.draws
            if getattr(args, "seed", None) is not None:
                cfg.seed = args.seed
            if getattr(args, "out", None):
                cfg.output_path = args.out
            violations = run_audit(cfg)
            print(f"wrote {cfg.output_path}; violations: {violations}")
            return 1 if violations else 0
        if command == "eigen":
            if getattr(args, "n", None):
                cfg.n_values = args.n
            if getattr(args, "out", None):
                cfg.output_path = args.out
            path = run_eigen_asymptotics(cfg)
            print(f"wrote {path}")
            return 0
        if command == "oscillator":
            if getattr(args, "n", None):
                cfg.n_values = args.n
            if getattr(args, "out", None):
                cfg.output_path = args.out
            path = run_oscillator(cfg)
            print(f"wrote {path}")
            return 0
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"error: unknown experiment {command!r}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
