"""Command-line front end.

Subcommands: model-info, eval, dr, transform, verify.  Data goes to
stdout (or --output FILE); diagnostics go to stderr.  Formats: table
(default), csv, json.  Floats are emitted with shortest round-trip
formatting so re-reading a CSV/JSON file reproduces the values exactly.

Exit codes: 0 success, 1 verification failures, 2 invalid parameters or
grids, 3 kernel/quadrature convergence failure.
"""

import argparse
import csv
import io
import json
import sys
from typing import List, Optional

from .damek_ricci import dr_space, enumerate_lower_bound, enumerate_spaces
from .errors import DomainError, MaxSubdivisionsError, NoConvergenceError
from .model import (
    ModelParams,
    classify_bounds,
    einstein_constant,
    normalize_ricci,
    sigma,
    theta,
)
from .special import spherical_function
from .transform import bump_profile, profile_from_samples, spherical_fourier
from .verify import VerifyConfig, run_all

_FORMATS = ("table", "csv", "json")


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        print(text)


def _table(header: List[str], rows: List[list]) -> str:
    cells = [[_fmt(v) for v in row] for row in rows]
    widths = [
        max(len(header[i]), *(len(r[i]) for r in cells)) if cells else len(header[i])
        for i in range(len(header))
    ]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    for r in cells:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)))
    return "\n".join(lines)


def _csv(header: List[str], rows: List[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for r in rows:
        writer.writerow([_fmt(v) for v in r])
    return buf.getvalue().rstrip("\n")


def _parse_grid(spec: str) -> List[float]:
    try:
        a, b, step = (float(x) for x in spec.split(":"))
    except ValueError:
        raise DomainError(f"grid spec must be 'a:b:step', got {spec!r}")
    if not step > 0 or b < a:
        raise DomainError(f"grid spec needs step > 0 and b >= a, got {spec!r}")
    grid = []
    i = 0
    while True:
        v = a + i * step
        if v > b + 1e-9 * step:
            break
        grid.append(v)
        i += 1
    if not grid:
        raise DomainError(f"grid spec {spec!r} produced no points")
    return grid


def _parse_profile(spec: str):
    kind, _, rest = spec.partition(":")
    if kind == "bump":
        if not rest.startswith("R="):
            raise DomainError(f"bump profile spec must be 'bump:R=<radius>', got {spec!r}")
        return bump_profile(float(rest[2:]))
    if kind == "file":
        pairs = []
        with open(rest) as fh:
            for row in csv.reader(fh):
                if not row:
                    continue
                try:
                    pairs.append((float(row[0]), float(row[1])))
                except ValueError:
                    continue  # header line
        return profile_from_samples(pairs, description=f"file:{rest}")
    raise DomainError(f"unknown profile spec {spec!r}")


def _model_from_args(args) -> ModelParams:
    return ModelParams(args.n, args.ell, args.q)


def _model_dict(p: ModelParams) -> dict:
    return {"n": p.n, "ell": p.ell, "q": p.q}


def cmd_model_info(args) -> int:
    p = _model_from_args(args)
    tol = args.tol if args.tol is not None else 1e-9
    kappa = einstein_constant(p).kappa
    rows = [
        ["n", p.n],
        ["ell", p.ell],
        ["q", p.q],
        ["kappa", kappa],
    ]
    info = {"kappa": kappa}
    if kappa < 0:
        normalized, scale = normalize_ricci(p)
        cls = classify_bounds(normalized, tol)
        rows += [
            ["scale_factor", scale.c],
            ["normalized_ell", normalized.ell],
            ["normalized_q", normalized.q],
            ["classification", cls.tag.value],
            ["real_hyperbolic", cls.real_hyperbolic],
            ["margin_low", cls.margin_low],
            ["margin_high", cls.margin_high],
        ]
        info.update(
            scale_factor=scale.c,
            normalized_ell=normalized.ell,
            normalized_q=normalized.q,
            classification=cls.tag.value,
            real_hyperbolic=cls.real_hyperbolic,
            margin_low=cls.margin_low,
            margin_high=cls.margin_high,
        )
    else:
        rows.append(["classification", "NotNormalizable"])
        info["classification"] = "NotNormalizable"
    if args.format == "json":
        _emit(
            json.dumps(
                {"model": _model_dict(p), "info": info, "meta": {"command": "model-info"}}
            ),
            args.output,
        )
    elif args.format == "csv":
        _emit(_csv(["key", "value"], rows), args.output)
    else:
        _emit(_table(["key", "value"], rows), args.output)
    return 0


def cmd_eval(args) -> int:
    p = _model_from_args(args)
    grid = _parse_grid(args.grid)
    if args.quantity == "phi" and args.lam is None:
        raise DomainError("eval phi requires --lambda")
    if args.quantity == "theta":
        values = [theta(p, r) for r in grid]
    elif args.quantity == "sigma":
        values = [sigma(p, r) for r in grid]
    else:
        values = [spherical_function(p, args.lam, r) for r in grid]
    rows = [[r, v] for r, v in zip(grid, values)]
    if args.format == "json":
        meta = {"command": "eval", "quantity": args.quantity}
        if args.lam is not None:
            meta["lambda"] = args.lam
        _emit(
            json.dumps(
                {
                    "model": _model_dict(p),
                    "series": [{"r": r, "value": v} for r, v in rows],
                    "meta": meta,
                }
            ),
            args.output,
        )
    elif args.format == "csv":
        _emit(_csv(["r", "value"], rows), args.output)
    else:
        _emit(_table(["r", "value"], rows), args.output)
    return 0


def cmd_dr(args) -> int:
    header = ["m", "k", "n", "q", "q_normalized", "classification", "note"]
    if args.dr_command == "lower-bound":
        spaces = [dr_space(k, m) for m, k in enumerate_lower_bound(args.max_m)]
    else:
        spaces = enumerate_spaces(args.max_m, args.max_j)
    rows = []
    for s in spaces:
        rows.append(
            [
                s.m,
                s.k,
                s.n,
                s.model.q,
                s.normalized_entropy,
                s.classification().tag.value,
                s.note,
            ]
        )
    if args.format == "json":
        _emit(
            json.dumps(
                {
                    "rows": [dict(zip(header, row)) for row in rows],
                    "meta": {"command": f"dr {args.dr_command}", "max_m": args.max_m},
                }
            ),
            args.output,
        )
    elif args.format == "csv":
        _emit(_csv(header, rows), args.output)
    else:
        _emit(_table(header, rows), args.output)
    return 0


def cmd_transform(args) -> int:
    p = _model_from_args(args)
    tol = args.tol if args.tol is not None else 1e-10
    profile = _parse_profile(args.profile)
    lambdas = _parse_grid(args.lambdas)
    results = [spherical_fourier(p, profile, lam, tol=tol) for lam in lambdas]
    header = ["lambda", "value", "quad_error", "kernel"]
    rows = [[t.lam, t.value, t.quad_error, t.kernel_used] for t in results]
    if args.format == "json":
        _emit(
            json.dumps(
                {
                    "model": _model_dict(p),
                    "series": [
                        {
                            "lambda": t.lam,
                            "value": t.value,
                            "quad_error": t.quad_error,
                            "kernel": t.kernel_used,
                        }
                        for t in results
                    ],
                    "meta": {"command": "transform", "profile": profile.description},
                }
            ),
            args.output,
        )
    elif args.format == "csv":
        _emit(_csv(header, rows), args.output)
    else:
        _emit(_table(header, rows), args.output)
    return 0


def cmd_verify(args) -> int:
    cfg = VerifyConfig(name_filter=args.filter, inject_failure=args.inject_failure)
    report = run_all(cfg)
    if args.format == "json":
        _emit(json.dumps(report.to_dict()), args.output)
    else:
        _emit(report.to_text(), args.output)
    return 0 if report.all_passed else 1


def _add_model_args(sp) -> None:
    sp.add_argument("--n", type=int, required=True, help="dimension (integer >= 3)")
    sp.add_argument("--ell", type=float, required=True, help="profile scale (1/length)")
    sp.add_argument("--q", type=float, required=True, help="volume entropy (1/length)")


def _add_common(sp) -> None:
    sp.add_argument("--format", choices=_FORMATS, default=None)
    sp.add_argument("--output", default=None, help="write data to this path")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hhm",
        description="Geometry, spectra and entropy bounds of hypergeometric-type "
        "harmonic manifolds.",
    )
    ap.add_argument("--config", default=None, help="JSON file with default options")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("model-info", help="parameters, curvature, normalization, bounds")
    _add_model_args(sp)
    sp.add_argument("--tol", type=float, default=None)
    _add_common(sp)
    sp.set_defaults(func=cmd_model_info)

    sp = sub.add_parser("eval", help="sample theta, sigma or phi on a radial grid")
    sp.add_argument("quantity", choices=("theta", "sigma", "phi"))
    _add_model_args(sp)
    sp.add_argument("--grid", default=None, help="radial grid a:b:step")
    sp.add_argument("--lambda", dest="lam", type=float, default=None)
    _add_common(sp)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("dr", help="Damek-Ricci enumeration and classification")
    sp.add_argument("dr_command", choices=("enumerate", "lower-bound"))
    sp.add_argument("--max-m", type=int, required=True)
    sp.add_argument("--max-j", type=int, default=1)
    _add_common(sp)
    sp.set_defaults(func=cmd_dr)

    sp = sub.add_parser("transform", help="spherical Fourier transform of a profile")
    _add_model_args(sp)
    sp.add_argument("--profile", default=None, help="bump:R=<radius> or file:<csv>")
    sp.add_argument("--lambdas", default=None, help="lambda grid a:b:step")
    sp.add_argument("--tol", type=float, default=None)
    _add_common(sp)
    sp.set_defaults(func=cmd_transform)

    sp = sub.add_parser("verify", help="run the verification battery")
    sp.add_argument("--filter", default=None, help="run only checks whose family matches")
    sp.add_argument("--inject-failure", action="store_true", help=argparse.SUPPRESS)
    _add_common(sp)
    sp.set_defaults(func=cmd_verify)
    return ap


def _apply_config(args) -> None:
    # config values fill in options the command line left unset
    cfg = {}
    if args.config:
        with open(args.config) as fh:
            cfg = json.load(fh)
        if not isinstance(cfg, dict):
            raise DomainError("config file must hold a JSON object")
    for key in ("format", "output", "grid", "lambdas", "profile", "filter"):
        if cfg.get(key) is not None and getattr(args, key, False) is None:
            setattr(args, key, cfg[key])
    if cfg.get("tol") is not None and getattr(args, "tol", False) is None:
        args.tol = float(cfg["tol"])
    if args.format is None:
        args.format = "table"
    if args.format not in _FORMATS:
        raise DomainError(f"format must be one of {_FORMATS}, got {args.format!r}")
    for key in ("grid", "lambdas", "profile"):
        if getattr(args, key, False) is None:
            raise DomainError(f"--{key} is required (flag or config)")


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        _apply_config(args)
        return args.func(args)
    except DomainError as exc:
        print(f"hhm: invalid parameters: {exc}", file=sys.stderr)
        return 2
    except (NoConvergenceError, MaxSubdivisionsError) as exc:
        print(f"hhm: evaluation failed to converge: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"hhm: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
