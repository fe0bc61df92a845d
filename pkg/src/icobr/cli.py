"""Command-line front end.

Subcommands:
  analyze CONFIG [--json]            single-scenario report
  sweep SPEC -o OUT.csv [--workers]  parameter sweep to CSV
  region CONFIG --xi X [--mode] -o   rate-region dumps + equivalence check
  verify [--seed S] [--n N]          randomized invariant suite

Exit codes: 0 success, 1 validation error, 2 verification failure.
SPEC may be a JSON file path or the name of a bundled preset
(see ``icobr sweep --help``).  The ICOBR_WORKERS environment variable
overrides the sweep worker count.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import os
import sys
from importlib import resources

import numpy as np

from . import verify as verify_mod
from .achievability import (BottleneckCase, RelayMode, _mode_rows,
                            closed_form_region, max_sum_rate_value,
                            outer_rate_bounds, project_split_region,
                            separable_conditions, split_rate_system)
from .bandwidth import BandwidthObjective, optimize_bandwidth
from .channel import (PowerSplit, Scenario, regime_flags, scenario_from_dict,
                      scenario_to_dict, strong_interference_threshold)
from .outerbound import RegimeError, gap_report, sum_rate_upper_bound
from .regions import contains, format_system, membership_disagreements

PRESETS = {
    "relay_gain_a21_0.1": "relay_gain_sweep_a21_0.1.json",
    "relay_gain_a21_0.9": "relay_gain_sweep_a21_0.9.json",
    "relay_gain_a21_1.8": "relay_gain_sweep_a21_1.8.json",
    "bandwidth_split": "bandwidth_split_sweep.json",
}

_OBJECTIVES = tuple(o.value for o in BandwidthObjective)


def _fmt(x) -> str:
    return f"{x:.9g}"


class SpecError(ValueError):
    """Invalid configuration or sweep specification."""


def load_sweep_spec(source: str) -> dict:
    """Load a sweep spec from a file path or a bundled preset name."""
    if os.path.exists(source):
        with open(source, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    elif source in PRESETS:
        doc = json.loads(resources.files("icobr.presets")
                         .joinpath(PRESETS[source]).read_text())
    else:
        raise SpecError(
            f"{source!r} is neither a file nor a preset "
            f"(presets: {', '.join(sorted(PRESETS))})")
    return doc


def parse_sweep_spec(doc: dict) -> dict:
    if not isinstance(doc, dict):
        raise SpecError("sweep spec must be a JSON object")
    for key in ("base", "param"):
        if key not in doc:
            raise SpecError(f"sweep spec missing {key!r}")
    optimize_bw = bool(doc.get("optimize_bw", False))
    base = scenario_from_dict(doc["base"], require_bw=not optimize_bw)
    param = doc["param"]
    base.with_param(param, 1.0)  # validates the name
    if "values" in doc:
        values = [float(v) for v in doc["values"]]
    else:
        missing = [k for k in ("lo", "hi", "count") if k not in doc]
        if missing:
            raise SpecError(f"sweep spec needs 'values' or lo/hi/count "
                            f"(missing {', '.join(missing)})")
        values = np.linspace(float(doc["lo"]), float(doc["hi"]),
                             int(doc["count"])).tolist()
    if not values or not all(np.isfinite(values)):
        raise SpecError("sweep values must be nonempty and finite")
    objectives = doc.get("objectives", list(_OBJECTIVES))
    bad = [o for o in objectives if o not in _OBJECTIVES]
    if bad:
        raise SpecError(f"unknown objectives {bad}; valid: {list(_OBJECTIVES)}")
    eta = doc.get("eta")
    if optimize_bw:
        if eta is None:
            raise SpecError("optimize_bw requires 'eta'")
        eta = float(eta)
        if not eta > 0:
            raise SpecError("eta must be > 0")
    return dict(base=doc["base"], param=param, values=values,
                objectives=list(objectives), optimize_bw=optimize_bw, eta=eta)


def sweep_columns(spec: dict) -> list[str]:
    cols = [spec["param"]]
    for obj in spec["objectives"]:
        cols.append(f"{obj}_rate")
        cols.append(f"{obj}_xi_star")
        if spec["optimize_bw"]:
            cols.append(f"{obj}_eta_mac_star")
    cols.append("warnings")
    return cols


def compute_sweep_row(task: tuple) -> list[str]:
    """One sweep row; module-level so worker processes can pickle it."""
    base_doc, param, value, objectives, optimize_bw, eta = task
    sc = scenario_from_dict(base_doc, require_bw=not optimize_bw)
    sc = sc.with_param(param, value)
    cells = [_fmt(value)]
    warnings = []
    for obj in objectives:
        try:
            if optimize_bw:
                out = optimize_bandwidth(sc, eta, BandwidthObjective(obj))
                rate, eta_mac = out.rate, out.eta_mac_star
                if obj == "upper_bound":
                    xi = out.inner.xi_star
                else:
                    xi = out.inner.xi_star.xi
                cells += [_fmt(rate), _fmt(xi), _fmt(eta_mac)]
            elif obj == "upper_bound":
                ub = sum_rate_upper_bound(sc)
                cells += [_fmt(ub.rate), _fmt(ub.xi_star)]
            else:
                mode = (RelayMode.SIGNAL_RELAYING if obj == "achievable_sr"
                        else RelayMode.INTERFERENCE_FORWARDING)
                rate, xi = max_sum_rate_value(sc, mode)
                cells += [_fmt(rate), _fmt(xi)]
        except RegimeError as err:
            cells += [""] * (3 if optimize_bw else 2)
            warnings.append(f"{obj}: {err}")
    cells.append("; ".join(warnings))
    return cells


def run_sweep(spec: dict, workers: int = 1) -> list[list[str]]:
    """Compute all sweep rows, in input order."""
    tasks = [(spec["base"], spec["param"], v, spec["objectives"],
              spec["optimize_bw"], spec["eta"]) for v in spec["values"]]
    if workers > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(compute_sweep_row, tasks))
    return [compute_sweep_row(t) for t in tasks]


def write_csv(path: str, columns: list[str], rows: list[list[str]]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


# ---------------------------------------------------------------------------
# analyze

def build_report(sc: Scenario) -> dict:
    """Pure aggregation of the module results for one scenario."""
    flags = regime_flags(sc)
    conds = separable_conditions(sc)
    gaps = gap_report(sc)
    if conds.case is not BottleneckCase.NONE:
        verdict = (f"sum-capacity established (separable coding optimal, "
                   f"{conds.case.value.upper()}-limited relay path)")
    elif gaps.capacity_established:
        verdict = "sum-capacity established numerically (gap <= 1e-6)"
    elif gaps.upper is None:
        verdict = "no optimality claim (upper bound unavailable here)"
    else:
        verdict = "no optimality claim (gap above tolerance)"
    report = {
        "scenario": scenario_to_dict(sc),
        "regime": {
            "weak_a12": flags.weak_a12,
            "bc_ordered": flags.bc_ordered,
            "strong_a21": flags.strong_a21,
            "a21_threshold": strong_interference_threshold(sc.powers.P1, sc.gains.a12),
        },
        "separable_conditions": {
            "applicable": conds.applicable,
            "case": conds.case.value,
            "mac1_rate": conds.mac1_rate,
            "bc1_full_rate": conds.bc1_full_rate,
            "mac2_cond_rate": conds.mac2_cond_rate,
            "bc2_rate_at_star": conds.bc2_rate_at_star,
            "xi_star": conds.xi_star,
        },
        "achievable": {},
        "upper_bound": None,
        "gaps": {"signal_relaying": gaps.gap_sr, "interference_forwarding": gaps.gap_if},
        "capacity_established": gaps.capacity_established,
        "regime_error": gaps.regime_error,
        "verdict": verdict,
    }
    for label, ach in (("signal_relaying", gaps.achievable_sr),
                       ("interference_forwarding", gaps.achievable_if)):
        report["achievable"][label] = {
            "sum_rate": ach.sum_rate,
            "xi_star": ach.xi_star.xi,
            "split": {k: getattr(ach.split, k)
                      for k in ("r1p", "r1r", "r2cp", "r2cpp", "r2r")},
            "r1": ach.split.r1,
            "r2": ach.split.r2,
        }
    if gaps.upper is not None:
        bd = gaps.upper.breakdown
        report["upper_bound"] = {
            "rate": gaps.upper.rate,
            "xi_star": gaps.upper.xi_star,
            "terms": {"t1": bd.t1, "t2": bd.t2, "t3": bd.t3},
            "active_term": f"t{bd.active + 1}",
        }
    return report


def _print_report(report: dict, out) -> None:
    sc = report["scenario"]
    out.write("scenario: " + ", ".join(f"{k}={_fmt(v)}" for k, v in sc.items()) + "\n")
    reg = report["regime"]
    out.write(f"regime flags: weak_a12={reg['weak_a12']} "
              f"bc_ordered={reg['bc_ordered']} strong_a21={reg['strong_a21']} "
              f"(threshold {_fmt(reg['a21_threshold'])})\n")
    conds = report["separable_conditions"]
    out.write("separable-coding conditions:\n")
    out.write(f"  case: {conds['case']}  (applicable: {conds['applicable']})\n")
    out.write(f"  relay MAC rate for source 1  {_fmt(conds['mac1_rate'])} vs "
              f"full broadcast rate to D1 {_fmt(conds['bc1_full_rate'])}\n")
    out.write(f"  relay MAC rate for source 2  {_fmt(conds['mac2_cond_rate'])} vs "
              f"broadcast rate to D2 at xi* {_fmt(conds['bc2_rate_at_star'])} "
              f"(xi* = {_fmt(conds['xi_star'])})\n")
    for label, ach in report["achievable"].items():
        split = ", ".join(f"{k}={_fmt(v)}" for k, v in ach["split"].items())
        out.write(f"achievable ({label}): sum rate {_fmt(ach['sum_rate'])} at "
                  f"xi* {_fmt(ach['xi_star'])}\n  split: {split}\n")
    if report["upper_bound"] is not None:
        ub = report["upper_bound"]
        terms = ", ".join(f"{k}={_fmt(v)}" for k, v in ub["terms"].items())
        out.write(f"upper bound: {_fmt(ub['rate'])} at xi {_fmt(ub['xi_star'])} "
                  f"(active {ub['active_term']}; {terms})\n")
        out.write(f"gaps: signal relaying {_fmt(report['gaps']['signal_relaying'])}, "
                  f"interference forwarding "
                  f"{_fmt(report['gaps']['interference_forwarding'])}\n")
    else:
        out.write(f"upper bound: unavailable ({report['regime_error']})\n")
    out.write("verdict: " + report["verdict"] + "\n")


# ---------------------------------------------------------------------------
# region dump

def region_dump(sc: Scenario, xi: float, mode: RelayMode) -> tuple[str, bool]:
    """Text dump of the split-rate system, its projection, the closed
    form and the headline bounds, plus an inline equivalence check."""
    ps = PowerSplit(xi)
    split_sys = split_rate_system(sc, ps)
    projected = project_split_region(sc, ps, mode)
    closed = closed_form_region(sc, ps)
    outer = outer_rate_bounds(sc, ps)

    rmax = max(float(np.max(closed.rhs)), 0.05) * 1.05
    g = np.linspace(0.0, rmax, 100)
    pts = np.stack(np.meshgrid(g, g, indexing="ij"), axis=-1).reshape(-1, 2)
    if mode is RelayMode.INTERFERENCE_FORWARDING:
        bad = membership_disagreements(projected, closed, pts, tol=1e-9)
        equivalent = len(bad) == 0
        verdict = (f"projected vs closed form on {len(pts)} grid points: "
                   f"{len(bad)} disagreements -> "
                   f"{'EQUIVALENT' if equivalent else 'DIFFERENT'}")
    else:
        # signal relaying shrinks the region; check one-sided containment
        inside = contains(projected, pts, -1e-9)
        ok = contains(closed, pts[inside], tol=1e-9)
        equivalent = bool(np.all(ok))
        verdict = (f"signal-relaying projection contained in closed form on "
                   f"{int(np.sum(inside))} interior points: "
                   f"{'PASS' if equivalent else 'FAIL'}")

    sections = []
    label = ("interference forwarding" if mode is RelayMode.INTERFERENCE_FORWARDING
             else "signal relaying (r2cp = 0)")
    sections.append(f"# split-rate constraints at xi = {_fmt(xi)}, {label}")
    sections.append(format_system(_mode_rows(split_sys, mode)))
    sections.append("\n# projected (r1, r2) region via Fourier-Motzkin")
    sections.append(format_system(projected))
    sections.append("\n# closed-form (r1, r2) region (interference forwarding)")
    sections.append(format_system(closed))
    sections.append("\n# headline outer bounds")
    sections.append(format_system(outer))
    sections.append("\n# " + verdict)
    return "\n".join(sections) + "\n", equivalent


# ---------------------------------------------------------------------------
# entry points

def cmd_analyze(args) -> int:
    sc = _load_scenario(args.config)
    report = build_report(sc)
    if args.json:
        json.dump(report, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        _print_report(report, sys.stdout)
    return 0


def cmd_sweep(args) -> int:
    spec = parse_sweep_spec(load_sweep_spec(args.spec))
    workers = args.workers
    env = os.environ.get("ICOBR_WORKERS")
    if env is not None:
        try:
            workers = int(env)
        except ValueError:
            raise SpecError(f"ICOBR_WORKERS must be an integer, got {env!r}")
    rows = run_sweep(spec, workers=max(1, workers))
    write_csv(args.output, sweep_columns(spec), rows)
    n_warn = sum(1 for r in rows if r[-1])
    sys.stdout.write(f"wrote {len(rows)} rows to {args.output}"
                     + (f" ({n_warn} rows with warnings)\n" if n_warn else "\n"))
    return 0


def cmd_region(args) -> int:
    sc = _load_scenario(args.config)
    if not 0.0 <= args.xi <= 1.0:
        raise SpecError(f"--xi must lie in [0, 1], got {args.xi}")
    mode = (RelayMode.SIGNAL_RELAYING if args.mode == "sr"
            else RelayMode.INTERFERENCE_FORWARDING)
    text, ok = region_dump(sc, args.xi, mode)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(text)
    sys.stdout.write(text.rsplit("# ", 1)[-1])
    return 0 if ok else 2


def cmd_verify(args) -> int:
    report = verify_mod.run_verification(seed=args.seed, n_scenarios=args.n)
    width = max(len(r.name) for r in report.results)
    for r in report.results:
        status = "PASS" if r.passed else "FAIL"
        sys.stdout.write(f"{r.name:<{width}}  {r.checks:>7} checks  {status}\n")
        for failure in r.failures:
            sys.stdout.write(f"    counterexample: {failure}\n")
    n_fail = sum(not r.passed for r in report.results)
    sys.stdout.write(
        f"{len(report.results) - n_fail}/{len(report.results)} invariants passed "
        f"(seed={report.seed}, n={report.n_scenarios})\n")
    return 0 if report.ok else 2


def _load_scenario(path: str) -> Scenario:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as err:
        raise SpecError(f"cannot read {path}: {err}")
    except json.JSONDecodeError as err:
        raise SpecError(f"{path} is not valid JSON: {err}")
    if not isinstance(doc, dict):
        raise SpecError(f"{path}: expected a JSON object")
    return scenario_from_dict(doc)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="icobr",
        description="Sum-rate analysis for an interference channel "
                    "with a half-duplex out-of-band relay.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze a single scenario")
    p.add_argument("config", help="scenario JSON file")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="parameter sweep to CSV")
    p.add_argument("spec", help="sweep spec JSON file or preset name: "
                                + ", ".join(sorted(PRESETS)))
    p.add_argument("-o", "--output", required=True, help="output CSV path")
    p.add_argument("--workers", type=int, default=1,
                   help="parallel workers (ICOBR_WORKERS overrides)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("region", help="dump rate-region inequality systems")
    p.add_argument("config", help="scenario JSON file")
    p.add_argument("--xi", type=float, required=True, help="relay power split in [0, 1]")
    p.add_argument("--mode", choices=("sr", "if"), default="if",
                   help="sr: signal relaying only; if: interference forwarding")
    p.add_argument("-o", "--output", required=True, help="output text path")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("verify", help="run the randomized invariant suite")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--n", type=int, default=1000, help="scenario budget")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SpecError, ValueError) as err:
        sys.stderr.write(f"error: {err}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
