"""Command line front end.

Subcommands: spectrum, table1, margin-scan, resolvent, airy, oscillator,
basis.  Structured results are JSON documents tagged "btspec-result-v1"
embedding the resolved configuration; tables are CSV with a dot decimal
separator.  Exit codes: 0 success, 1 numeric failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import model1d, runs
from .annulus import AnnulusGeometry, build_basis

RESULT_SCHEMA = "btspec-result-v1"
DEFAULT_CACHE = "./.btspec-cache"

EXIT_OK = 0
EXIT_NUMERIC = 1
EXIT_USAGE = 2


class UsageError(ValueError):
    pass


def _json_default(obj):
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return [{"re": z.real, "im": z.imag} for z in obj.tolist()]
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _result_doc(command: str, config: dict, payload: dict) -> str:
    doc = {"schema": RESULT_SCHEMA, "command": command,
           "config": config, "result": payload}
    return json.dumps(doc, default=_json_default, indent=2) + "\n"


def _fmt4(z: complex | None) -> str:
    if z is None:
        return ""
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real:.4f}{sign}{abs(z.imag):.4f}i"


def _resolve_cache(args) -> str | None:
    if args.cache_dir is not None:
        return args.cache_dir
    return os.environ.get("BTSPEC_CACHE", DEFAULT_CACHE)


def _load_config(args, defaults: dict) -> dict:
    """CLI flags > config file > built-in defaults."""
    cfg = dict(defaults)
    if args.config:
        try:
            cfg.update(json.loads(Path(args.config).read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}")
    for key in defaults:
        flag = getattr(args, key, None)
        if flag is not None:
            cfg[key] = flag
    return cfg


def cmd_spectrum(args) -> int:
    cfg = _load_config(args, {
        "h": 0.008, "r_outer": 1.5, "m_max": None, "n_max": None,
        "sectors": "both", "vectors": False, "check_convergence": False,
        "dump_matrices": False,
    })
    if cfg["h"] <= 0 or cfg["r_outer"] <= 1:
        raise UsageError("require h > 0 and r_outer > 1")
    parities = ("even", "odd") if cfg["sectors"] == "both" else (cfg["sectors"],)
    run = runs.run_spectrum(
        cfg["h"], cfg["r_outer"], cfg["m_max"], cfg["n_max"],
        parities=parities, want_vectors=cfg["vectors"],
        do_localize=cfg["vectors"], check_convergence=cfg["check_convergence"],
        cache_dir=_resolve_cache(args))
    payload = {
        "m_max": run.m_max,
        "n_max": run.n_max,
        "eigenvalues": run.union.eigenvalues,
        "sectors": run.union.sectors,
        "matched": [
            {"index": i, "branch": c.label, "value": run.union.eigenvalues[i],
             "candidate": c.value}
            for i, c in sorted(run.match.matches.items())
        ] if run.match else [],
        "localization": run.localization,
        "convergence": run.convergence,
    }
    if cfg["dump_matrices"]:
        payload["Lambda"] = run.system.Lambda
        payload["B"] = run.system.B
    cfg["m_max"], cfg["n_max"] = run.m_max, run.n_max
    _write(_result_doc("spectrum", cfg, payload), args.out)
    return EXIT_OK


def cmd_table1(args) -> int:
    cfg = _load_config(args, {"h": 0.008})
    if cfg["h"] <= 0:
        raise UsageError("require h > 0")
    report = runs.table1_report(h=cfg["h"], cache_dir=_resolve_cache(args))
    lines = ["quantity,R=1.5,R=2,R=3"]
    for row, boundary, n, k in runs.TABLE1_ROWS:
        tag = "N" if boundary == runs.INNER_NEUMANN else "D"
        label = f"{tag}({n},{k})"
        num = [report["columns"][R][row] for R in report["r_values"]]
        app = [report["columns"][R][f"lambda_app_{label}"]
               for R in report["r_values"]]
        lines.append(row + "," + ",".join(_fmt4(z) for z in num))
        lines.append(f"lambda_app_{label}," + ",".join(_fmt4(z) for z in app))
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_margin_scan(args) -> int:
    cfg = _load_config(args, {"h_list": [0.032, 0.016, 0.008, 0.004],
                              "r_outer": 2.0})
    h_list = cfg["h_list"]
    if any(h <= 0 for h in h_list):
        raise UsageError("h values must be positive")
    if sorted(h_list, reverse=True) != list(h_list):
        raise UsageError("h list must be decreasing")
    report = runs.margin_scan(h_list, cfg["r_outer"],
                              cache_dir=_resolve_cache(args))
    slope = "" if report["slope"] is None else f"{report['slope']:.6f}"
    lines = ["h,re_lambda1,re_lambda1_scaled,model_constant,slope"]
    for row in report["rows"]:
        lines.append(f"{row['h']:g},{row['re_lambda1']:.8f},"
                     f"{row['scaled']:.8f},{report['model_constant']:.8f},"
                     f"{slope}")
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_resolvent(args) -> int:
    cfg = _load_config(args, {"h": 0.008, "r_outer": 1.5, "epsilon": 0.5,
                              "n_re": 5, "n_im": 5})
    if not 0 < cfg["epsilon"] < 1:
        raise UsageError("epsilon must be in (0, 1): empty region otherwise")
    if cfg["h"] <= 0 or cfg["r_outer"] <= 1:
        raise UsageError("require h > 0 and r_outer > 1")
    report = runs.resolvent_scan(cfg["h"], cfg["r_outer"], cfg["epsilon"],
                                 cfg["n_re"], cfg["n_im"],
                                 cache_dir=_resolve_cache(args))
    lines = ["re_z,im_z,smin,h23_over_smin"]
    for i, y in enumerate(report["im"]):
        for j, x in enumerate(report["re"]):
            lines.append(f"{x:.10g},{y:.10g},{report['smin'][i, j]:.10g},"
                         f"{report['ratio'][i, j]:.10g}")
    lines.append(f"summary_max,,,{report['summary_max']:.10g}")
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_airy(args) -> int:
    cfg = _load_config(args, {"bc": "D", "j": 1.0, "n_report": 4})
    if cfg["j"] <= 0:
        raise UsageError("j must be positive")
    if cfg["bc"] not in ("D", "N"):
        raise UsageError("bc must be D or N")
    report = model1d.converged_halfline_spectrum(cfg["bc"], cfg["j"],
                                                 cfg["n_report"])
    base = model1d.converged_halfline_spectrum(cfg["bc"], 1.0, 1)
    defect = abs(report.lambda_sharp
                 - cfg["j"] ** (2.0 / 3.0) * base.lambda_sharp)
    payload = {
        "eigenvalues": report.eigenvalues,
        "lambda_sharp": report.lambda_sharp,
        "scaling_defect": defect,
        "converged": report.converged,
        "detail": report.detail,
    }
    _write(_result_doc("airy", cfg, payload), args.out)
    return EXIT_OK if report.converged else EXIT_NUMERIC


def cmd_oscillator(args) -> int:
    cfg = _load_config(args, {"a": 1.0, "n_report": 4})
    if cfg["a"] <= 0:
        raise UsageError("a must be positive")
    w = model1d.rotated_oscillator_spectrum(cfg["a"], n_report=cfg["n_report"])
    payload = {"eigenvalues": w}
    _write(_result_doc("oscillator", cfg, payload), args.out)
    return EXIT_OK


def cmd_basis(args) -> int:
    cfg = _load_config(args, {"h": None, "r_outer": 1.5,
                              "m_max": 60, "n_max": 40})
    if cfg["r_outer"] <= 1:
        raise UsageError("r_outer must exceed 1")
    cache = _resolve_cache(args)
    geometry = AnnulusGeometry(r_outer=cfg["r_outer"])
    modes = build_basis(geometry, cfg["m_max"], cfg["n_max"], cache_dir=cache)
    payload = {"cache_dir": cache, "mode_count": len(modes)}
    _write(_result_doc("basis", cfg, payload), args.out)
    return EXIT_OK


def _float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="btspec",
        description="Spectra of -h^2*Laplacian + i*x1 on a circular annulus "
                    "(Neumann inside, Dirichlet outside) and its 1D model "
                    "operators.")
    p.add_argument("--config", help="JSON config file (flags take precedence)")
    p.add_argument("--cache-dir", dest="cache_dir",
                   help=f"basis cache directory (default $BTSPEC_CACHE or "
                        f"{DEFAULT_CACHE})")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--format", choices=["json", "csv"], default=None,
                   help="output format where a command supports both")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="eigenvalues of one annulus system")
    sp.add_argument("--h", type=float)
    sp.add_argument("--r-outer", dest="r_outer", type=float)
    sp.add_argument("--m-max", dest="m_max", type=int)
    sp.add_argument("--n-max", dest="n_max", type=int)
    sp.add_argument("--sectors", choices=["both", "even", "odd"])
    sp.add_argument("--vectors", action="store_const", const=True)
    sp.add_argument("--check-convergence", dest="check_convergence",
                    action="store_const", const=True)
    sp.add_argument("--dump-matrices", dest="dump_matrices",
                    action="store_const", const=True)
    sp.set_defaults(func=cmd_spectrum)

    tp = sub.add_parser("table1", help="eigenvalue table for R = 1.5, 2, 3")
    tp.add_argument("--h", type=float)
    tp.set_defaults(func=cmd_table1)

    mp = sub.add_parser("margin-scan", help="left-margin scaling against h")
    mp.add_argument("--h-list", dest="h_list", type=_float_list)
    mp.add_argument("--r-outer", dest="r_outer", type=float)
    mp.set_defaults(func=cmd_margin_scan)

    rp = sub.add_parser("resolvent", help="smin grid left of the margin")
    rp.add_argument("--h", type=float)
    rp.add_argument("--r-outer", dest="r_outer", type=float)
    rp.add_argument("--epsilon", type=float)
    rp.add_argument("--n-re", dest="n_re", type=int)
    rp.add_argument("--n-im", dest="n_im", type=int)
    rp.set_defaults(func=cmd_resolvent)

    ap = sub.add_parser("airy", help="half-line complex Airy eigenvalues")
    ap.add_argument("--bc", choices=["D", "N"])
    ap.add_argument("--j", type=float)
    ap.add_argument("--n-report", dest="n_report", type=int)
    ap.set_defaults(func=cmd_airy)

    op = sub.add_parser("oscillator", help="rotated harmonic oscillator")
    op.add_argument("--a", type=float)
    op.add_argument("--n-report", dest="n_report", type=int)
    op.set_defaults(func=cmd_oscillator)

    bp = sub.add_parser("basis", help="prebuild the basis cache")
    bp.add_argument("--r-outer", dest="r_outer", type=float)
    bp.add_argument("--m-max", dest="m_max", type=int)
    bp.add_argument("--n-max", dest="n_max", type=int)
    bp.set_defaults(func=cmd_basis)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, RuntimeError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
