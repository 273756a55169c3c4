"""Command-line front end.

Exit codes: 0 pass or consistent, 1 fail or inconsistent, 2 mostly
Inconclusive, 3 usage error.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import sys
from pathlib import Path

import numpy as np

from . import _kernels
from . import falsify as _falsify
from .analytic import AnalyticMap
from .errors import (CenterMismatch, DegenerateDenominator, NotNormalized, SubordLabError,
                     UnsupportedQ)
from .families import FAMILIES, JanowskiParams, example21_membership, family
from .geometry import RHO_MAX, Outcome, SampleGrid, boundary_curve, test_subordination
from .params import ParamSet
from .report import emit_csv, emit_svg, write_json
from .serialize import from_prefix, parse_infix
from .theorem import check_hypotheses, class_membership, verify_sandwich

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3
COMMANDS = ("check-class", "check-hypotheses", "test-subordination", "verify-sandwich",
            "scan", "falsify", "plot")
SCAN_A = tuple(round(0.1 * k, 1) for k in range(1, 10))
SCAN_B = tuple(round(-0.1 * k, 1) for k in range(9, 0, -1))


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_complex(text) -> complex:
    """'re,im', a plain number, or a Python complex literal."""
    if isinstance(text, (int, float, complex)):
        return complex(text)
    if isinstance(text, (list, tuple)) and len(text) == 2:
        return complex(float(text[0]), float(text[1]))
    s = str(text).strip()
    try:
        if "," in s:
            re_, im = s.split(",")
            return complex(float(re_), float(im))
        return complex(s.replace(" ", ""))
    except ValueError:
        raise UsageError(f"not a complex number: {text!r}") from None


def parse_function(spec: str) -> AnalyticMap:
    """'tree:<prefix>', 'NAME' or 'NAME:k=v,...' for a built-in family, or an
    infix expression in z."""
    spec = spec.strip()
    if spec.startswith("tree:"):
        return from_prefix(spec[5:])
    name, _, rest = spec.partition(":")
    if name.lower() in FAMILIES or name.lower() in ("cayley", "z", "g"):
        kw = {}
        for item in filter(None, rest.split(",")):
            k, _, v = item.partition("=")
            kw[k.strip()] = v.strip()
        try:
            return family(name, **kw)
        except KeyError as exc:
            raise UsageError(f"family {name!r} needs parameter {exc}") from None
    return parse_infix(spec)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="subord-lab", description="Numerical differential subordination checks.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="JSON file with any of the options below")
    parser.add_argument("--family", help="built-in family used when a function is not given")
    parser.add_argument("--A", type=float)
    parser.add_argument("--B", type=float)
    for name in ("alpha", "beta", "gamma", "delta", "mu", "lambda"):
        parser.add_argument(f"--{name}", dest=name)
    for name in ("f", "g", "p", "q", "q1", "q2"):
        parser.add_argument(f"--{name}", help="function spec")
    parser.add_argument("--grid-radii", dest="grid_radii")
    parser.add_argument("--grid-n", dest="grid_n", type=int)
    parser.add_argument("--rho", type=float, help="plot radius")
    parser.add_argument("--out", default=None, help="output directory")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--trials", type=int)
    return parser


def resolve(argv) -> dict:
    """Merge flags over the optional JSON config."""
    ns = build_parser().parse_args(argv)
    cfg: dict = {}
    if ns.config:
        try:
            cfg = json.loads(Path(ns.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config: {exc}") from None
        if not isinstance(cfg, dict):
            raise UsageError("config must be a JSON object")
        cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
    for k, v in vars(ns).items():
        if v is not None:
            cfg[k] = v
    cfg.setdefault("seed", 0)
    cfg.setdefault("out", ".")
    return cfg


def params_from(cfg: dict) -> ParamSet:
    kw = {}
    for name, field in (("alpha", "alpha"), ("mu", "mu")):
        if name in cfg:
            kw[field] = parse_complex(cfg[name]).real
    for name in ("beta", "gamma", "delta"):
        if name in cfg:
            kw[name] = parse_complex(cfg[name])
    if "lambda" in cfg:
        kw["lam"] = parse_complex(cfg["lambda"])
    if "A" in cfg and "B" in cfg:
        kw["A"], kw["B"] = float(cfg["A"]), float(cfg["B"])
    return ParamSet(**kw)


def grid_from(cfg: dict) -> SampleGrid:
    kw = {}
    if "grid_radii" in cfg:
        r = cfg["grid_radii"]
        kw["radii"] = tuple(float(x) for x in (r.split(",") if isinstance(r, str) else r))
    if "grid_n" in cfg:
        kw["angular_count"] = int(cfg["grid_n"])
    return SampleGrid(**kw)


def function_from(cfg: dict, key: str, required: bool = True) -> AnalyticMap | None:
    if key in cfg:
        return parse_function(str(cfg[key]))
    if "family" in cfg:
        kw = {k: cfg[k] for k in ("A", "B") if k in cfg}
        try:
            return family(cfg["family"], **kw)
        except KeyError as exc:
            raise UsageError(f"family {cfg['family']!r}: missing or unknown {exc}") from None
    if required:
        raise UsageError(f"--{key} (or --family) is required")
    return None


def _exit_for_reports(reports) -> int:
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


def _exit_for_outcome(outcome: Outcome) -> int:
    return {Outcome.HOLDS: EXIT_PASS, Outcome.FAILS: EXIT_FAIL,
            Outcome.INCONCLUSIVE: EXIT_INCONCLUSIVE}[outcome]


def cmd_check_class(cfg):
    p = function_from(cfg, "p")
    ps, grid = params_from(cfg), grid_from(cfg)
    rep = class_membership(p, ps, grid)
    return {"report": rep.to_dict(), "params": ps.to_dict(), "grid": grid.to_dict()}, _exit_for_reports([rep])


def cmd_check_hypotheses(cfg):
    q = function_from(cfg, "q")
    ps, grid = params_from(cfg), grid_from(cfg)
    reps = check_hypotheses(q, ps, grid)
    return ({"hypotheses": [r.to_dict() for r in reps], "params": ps.to_dict(), "grid": grid.to_dict()},
            _exit_for_reports(reps))


def cmd_test_subordination(cfg):
    f, g = function_from(cfg, "f"), function_from(cfg, "g")
    grid = grid_from(cfg)
    v = test_subordination(f, g, grid)
    return {"verdict": v.to_dict(), "grid": grid.to_dict()}, _exit_for_outcome(v.outcome)


def cmd_verify_sandwich(cfg):
    p, q1, q2 = function_from(cfg, "p"), function_from(cfg, "q1"), function_from(cfg, "q2")
    v = verify_sandwich(p, q1, q2, params_from(cfg), grid_from(cfg))
    if not v.consistent:
        code = EXIT_FAIL
    elif v.inconclusive:
        code = EXIT_INCONCLUSIVE
    else:
        code = EXIT_PASS
    return {"verdict": v.to_dict()}, code


def scan_rows(ps: ParamSet, grid: SampleGrid) -> list[dict]:
    rows = []
    for A in SCAN_A:
        for B in SCAN_B:
            jp = JanowskiParams(A, B)
            reps = check_hypotheses(family("janowski", A=A, B=B), ps, grid)
            try:
                first, second = example21_membership(jp, ps)
            except SubordLabError:
                first = second = ""
            rows.append({
                "A": A, "B": B, "alpha": ps.alpha,
                "beta_re": ps.beta.real, "beta_im": ps.beta.imag,
                "gamma_re": ps.gamma.real, "gamma_im": ps.gamma.imag,
                "delta_re": ps.delta.real, "delta_im": ps.delta.imag, "mu": ps.mu,
                "cond22_min": reps[0].min_value, "cond23_min": reps[1].min_value,
                "qstar_min": reps[2].min_value,
                "closed_form_1": first, "closed_form_2": second,
            })
    return rows


def cmd_scan(cfg):
    ps, grid = params_from(cfg), grid_from(cfg)
    rows = scan_rows(ps, grid)
    path = emit_csv(rows, Path(cfg["out"]) / "scan.csv")
    return {"rows": len(rows), "csv": path.name, "params": ps.to_dict(), "grid": grid.to_dict()}, EXIT_PASS


def cmd_falsify(cfg):
    trials = int(cfg.get("trials", 500))
    report = _falsify.run_campaign(trials, int(cfg["seed"]))
    if report["inconsistencies"]:
        code = EXIT_FAIL
    elif trials and report["inconclusive"] * 2 > trials:
        code = EXIT_INCONCLUSIVE
    else:
        code = EXIT_PASS
    return report, code


def cmd_plot(cfg):
    rho = float(cfg.get("rho", RHO_MAX))
    curves, labels = [], []
    for key in ("f", "g", "p", "q", "q1", "q2"):
        if key in cfg:
            curves.append(boundary_curve(parse_function(str(cfg[key])), rho))
            labels.append(f"{key} = {cfg[key]}")
    if not curves and "family" in cfg:
        curves.append(boundary_curve(function_from(cfg, "family"), rho))
        labels.append(str(cfg["family"]))
    if not curves:
        raise UsageError("plot needs at least one function")
    path = emit_svg(curves, labels, Path(cfg["out"]) / "plot.svg")
    return {"svg": path.name, "rho": rho, "curves": labels}, EXIT_PASS


HANDLERS = {
    "check-class": cmd_check_class,
    "check-hypotheses": cmd_check_hypotheses,
    "test-subordination": cmd_test_subordination,
    "verify-sandwich": cmd_verify_sandwich,
    "scan": cmd_scan,
    "falsify": cmd_falsify,
    "plot": cmd_plot,
}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def run(cfg: dict) -> int:
    command = cfg["command"]
    out = Path(cfg["out"])
    if not out.is_dir():
        raise UsageError(f"output directory does not exist: {out}")
    body, code = HANDLERS[command](cfg)
    report = {"command": command, "seed": int(cfg["seed"]), "exit_code": code, **body,
              "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat()}
    write_json(_jsonable(report), out / f"{command}.json")
    return code


def main(argv=None) -> int:
    try:
        cfg = resolve(sys.argv[1:] if argv is None else argv)
        _kernels.configure_threads()
        code = run(cfg)
    except (UsageError, ValueError, KeyError, TypeError, CenterMismatch, DegenerateDenominator,
            NotNormalized, UnsupportedQ) as exc:
        print(f"subord-lab: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SubordLabError as exc:
        # numerical breakdown: the question could not be decided
        print(f"subord-lab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    print(f"{cfg['command']}: exit {code} ({Path(cfg['out']) / (cfg['command'] + '.json')})")
    return code


if __name__ == "__main__":
    sys.exit(main())
