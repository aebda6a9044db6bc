"""Command-line front end.

Exit status: 0 on success, 1 when a validation check fails, 2 on usage or
domain errors. Every command writes a ``*.manifest.txt`` next to its output;
passing a manifest back through ``--config`` reruns the command with the
same parameters.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .capacity import ad_capacity, hashing_bound
from .channel_models import ChannelKind, cta_pmf, depolarizing_probability, pmf_for
from .errors import DomainError, NoSolutionError, NotBracketedError
from .io import (format_number, manifest_path, read_curve_csv, read_key_values,
                 write_curve_csv, write_key_values, write_rows)
from .montecarlo import (McConfig, agrees, blocks_for_wer, confidence_interval,
                         empirical_outage, reference_sigma)
from .outage import GAMMA_MAX, OutageQuery, XAxis, delta_out, noise_limit, outage_curve, \
    outage_probability

SEED_ENV = "TVQC_SEED"
DEFAULT_SEED = 20220607
FIG1_CVS = "0.01,0.10,0.15,0.20,0.25"
OUTAGE_GAMMA_MIN = 1e-3


class UsageError(DomainError):
    pass


# --- argument types -------------------------------------------------------

def parse_grid(spec: str) -> list[float]:
    """``start:stop:step`` (stop inclusive), ``logspace:start:stop:n`` or ``a,b,c``."""
    spec = spec.strip()
    try:
        if spec.startswith("logspace:"):
            _, start, stop, n = spec.split(":")
            start, stop, n = float(start), float(stop), int(n)
            if start <= 0 or stop <= start or n < 2:
                raise ValueError
            return [float(v) for v in np.geomspace(start, stop, n)]
        if ":" in spec:
            start, stop, step = (Decimal(p) for p in spec.split(":"))
            if step <= 0 or stop < start:
                raise ValueError
            count = int((stop - start) / step) + 1
            return [float(start + k * step) for k in range(count)]
        values = [float(v) for v in spec.split(",") if v.strip()]
        if not values:
            raise ValueError
        return values
    except (ValueError, InvalidOperation):
        raise argparse.ArgumentTypeError(
            f"malformed grid {spec!r}; use start:stop:step, logspace:start:stop:n or a,b,c"
        ) from None


def parse_rate(text: str) -> float:
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"malformed rate {text!r}") from None


def parse_float_list(text: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed number list {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty number list")
    return values


def parse_kind(text: str) -> ChannelKind:
    try:
        return ChannelKind.parse(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


# --- manifests ------------------------------------------------------------

def _fmt_param(value) -> str:
    if isinstance(value, (list, tuple)):
        return ",".join(_fmt_param(v) for v in value)
    if isinstance(value, float):
        return format_number(value)
    return str(value)


def _manifest(args, outputs: list[Path], extra: dict | None = None) -> dict:
    items = {"command": args.command, "tool_version": __version__}
    skip = {"command", "config", "handler", "grid_spec"}
    for key in sorted(vars(args)):
        value = getattr(args, key)
        if key in skip or value is None:
            continue
        if key == "grid" and getattr(args, "grid_spec", None):
            value = args.grid_spec
        items[key] = _fmt_param(value)
    for key, value in (extra or {}).items():
        items[key] = _fmt_param(value)
    items["outputs"] = ",".join(str(p) for p in outputs)
    return items


def _emit_manifests(args, outputs: list[Path], extra: dict | None = None) -> None:
    items = _manifest(args, outputs, extra)
    for out in outputs:
        write_key_values(manifest_path(out), items)


# --- commands -------------------------------------------------------------

def _capacity_value(kind: ChannelKind, gamma: float) -> float:
    if kind is ChannelKind.AD:
        return ad_capacity(gamma).value
    return hashing_bound(pmf_for(kind, gamma)).value


def cmd_capacity(args) -> int:
    kind = args.kind
    for g in args.grid:
        if not 0.0 <= g <= 1.0:
            raise UsageError(f"--grid: gamma {g!r} outside [0, 1]")
    rows = [(g, _capacity_value(kind, g)) for g in args.grid]
    out = Path(args.output) if args.output else Path(args.out_dir) / f"capacity_{kind}.csv"
    write_rows(out, ("gamma", "capacity"), rows)
    _emit_manifests(args, [out])
    print(out)
    return 0


def cmd_noise_limit(args) -> int:
    nl = noise_limit(args.kind, args.rate)
    report = f"{nl.gamma_star:.6f}"
    out = Path(args.out_dir) / f"noise_limit_{args.kind}.txt"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(report + "\n", encoding="utf-8")
    _emit_manifests(args, [out], {"gamma_star": repr(nl.gamma_star)})
    print(report)
    return 0


def _check_outage_grid(x_axis: XAxis, grid: list[float]) -> None:
    if x_axis is XAxis.GAMMA:
        lo, hi = OUTAGE_GAMMA_MIN, GAMMA_MAX
    else:
        lo, hi = (depolarizing_probability(cta_pmf(g)) for g in (OUTAGE_GAMMA_MIN, GAMMA_MAX))
    for x in grid:
        if not lo <= x <= hi:
            raise UsageError(f"--grid: {x_axis} value {x!r} outside [{lo:.6g}, {hi:.6g}]")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise UsageError("--grid: values must be strictly increasing")


def cmd_outage(args) -> int:
    for cv in args.cv:
        if not (math.isfinite(cv) and cv >= 0.0):
            raise UsageError(f"--cv: coefficient of variation {cv!r} must be >= 0")
    if not 0.0 < args.rate < 1.0:
        raise UsageError(f"--rate: {args.rate!r} must lie in (0, 1)")
    x_axis = XAxis(args.x_axis)
    _check_outage_grid(x_axis, args.grid)
    out_dir = Path(args.out_dir)
    outputs = []
    for cv in args.cv:
        curve = outage_curve(args.kind, args.rate, cv, x_axis, args.grid)
        out = out_dir / f"outage_{args.kind}_cv{format_number(cv)}.csv"
        write_curve_csv(out, curve)
        outputs.append(out)
    _emit_manifests(args, outputs)
    for out in outputs:
        print(out)
    return 0


def mc_report(args) -> tuple[str, bool]:
    """Run the Monte Carlo check and format its report."""
    if not args.cv > 0.0:
        raise UsageError(f"--cv: {args.cv!r} must be > 0 for Monte Carlo validation")
    query = OutageQuery(args.kind, args.rate, args.cv, args.gamma)
    closed = outage_probability(query)
    cfg = McConfig(args.seed, args.n, args.mu_t1, args.cv, args.kind, args.rate, args.gamma)
    est = empirical_outage(cfg, workers=args.workers)
    sigma = reference_sigma(closed, est.n_samples)
    ok_sigma = agrees(est, closed, 3.0)
    ok_events = est.n_events == est.n_threshold_events
    lo3, hi3 = max(closed - 3 * sigma, 0.0), min(closed + 3 * sigma, 1.0)
    ci = confidence_interval(est.p_hat)
    z = (est.p_hat - closed) / sigma if sigma > 0 else 0.0
    lines = [
        f"kind: {args.kind}",
        f"rate: {args.rate!r}",
        f"cv: {args.cv!r}",
        f"gamma: {args.gamma!r}",
        f"mu_t1: {args.mu_t1!r}",
        f"n_samples: {est.n_samples}",
        f"seed: {args.seed}",
        f"closed_form: {closed!r}",
        f"p_hat: {est.p_hat!r}",
        f"std_err: {est.std_err!r}",
        f"sigma_at_closed_form: {sigma!r}",
        f"z_score: {z:.4f}",
        f"interval_3sigma: [{lo3!r}, {hi3!r}]",
        f"interval_0.8_1.25: [{ci[0]!r}, {ci[1]!r}]",
        f"blocks_for_wer: {blocks_for_wer(est.p_hat) if est.p_hat > 0 else 'n/a'}",
        f"capacity_events: {est.n_events}",
        f"threshold_events: {est.n_threshold_events}",
        f"event_equivalence: {'OK' if ok_events else 'MISMATCH'}",
        f"result: {'PASS' if ok_sigma and ok_events else 'FAIL'}",
    ]
    return "\n".join(lines) + "\n", ok_sigma and ok_events


def cmd_mc_validate(args) -> int:
    report, ok = mc_report(args)
    out = Path(args.out_dir) / f"mc_validate_{args.kind}.txt"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(report, encoding="utf-8")
    _emit_manifests(args, [out])
    sys.stdout.write(report)
    return 0 if ok else 1


def cmd_delta_out(args) -> int:
    code = read_curve_csv(args.code, args.code_x_axis)
    ref = read_curve_csv(args.outage, args.outage_x_axis)
    if code.x_axis is not ref.x_axis:
        raise UsageError(f"x axes differ: code curve uses {code.x_axis}, outage curve {ref.x_axis}")
    value = delta_out(code, ref, args.wer)
    report = f"{value:.2f} dB"
    out = Path(args.out_dir) / "delta_out.txt"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(report + "\n", encoding="utf-8")
    _emit_manifests(args, [out], {"delta_out_db": repr(value)})
    print(report)
    return 0


# --- parser ---------------------------------------------------------------

def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file supplying defaults (a manifest works)")
    common.add_argument("--out-dir", default=".", help="directory for outputs and manifests")

    parser = argparse.ArgumentParser(
        prog="tvqc",
        description="Capacities and outage probabilities of time-varying amplitude damping channels.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    subs = {}

    p = sub.add_parser("capacity", parents=[common], help="capacity or hashing bound versus gamma")
    p.add_argument("--kind", type=parse_kind, default="AD")
    p.add_argument("--grid", type=parse_grid, default="0:0.5:0.01")
    p.add_argument("--output", help="CSV path (default: OUT_DIR/capacity_KIND.csv)")
    p.set_defaults(handler=cmd_capacity)
    subs["capacity"] = p

    p = sub.add_parser("noise-limit", parents=[common], help="damping at which capacity equals the rate")
    p.add_argument("--kind", type=parse_kind, default="AD")
    p.add_argument("--rate", type=parse_rate, default="1/9")
    p.set_defaults(handler=cmd_noise_limit)
    subs["noise-limit"] = p

    p = sub.add_parser("outage", parents=[common], help="closed-form outage curves, one file per cv")
    p.add_argument("--kind", type=parse_kind, default="AD")
    p.add_argument("--rate", type=parse_rate, default="1/9")
    p.add_argument("--cv", type=parse_float_list, default=FIG1_CVS)
    p.add_argument("--x-axis", choices=[a.value for a in XAxis], default=XAxis.GAMMA.value)
    p.add_argument("--grid", type=parse_grid, default="logspace:0.001:0.6:200")
    p.set_defaults(handler=cmd_outage)
    subs["outage"] = p

    p = sub.add_parser("mc-validate", parents=[common], help="check the closed form by Monte Carlo")
    p.add_argument("--kind", type=parse_kind, default="AD")
    p.add_argument("--rate", type=parse_rate, default="1/9")
    p.add_argument("--cv", type=float, default=0.25)
    p.add_argument("--gamma", type=float, default=0.3)
    p.add_argument("--n", type=int, default=10 ** 6, help="number of T1 samples")
    p.add_argument("--mu-t1", type=float, default=100.0, help="mean relaxation time (us)")
    p.add_argument("--seed", type=int, default=None,
                   help=f"RNG seed (default: ${SEED_ENV} or {DEFAULT_SEED})")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(handler=cmd_mc_validate)
    subs["mc-validate"] = p

    p = sub.add_parser("delta-out", parents=[common], help="dB distance from a code curve to an outage curve")
    p.add_argument("--code", required=True, help="code WER curve CSV")
    p.add_argument("--outage", required=True, help="outage curve CSV")
    p.add_argument("--wer", type=float, default=1e-3)
    p.add_argument("--code-x-axis", choices=[a.value for a in XAxis])
    p.add_argument("--outage-x-axis", choices=[a.value for a in XAxis])
    p.set_defaults(handler=cmd_delta_out)
    subs["delta-out"] = p
    return parser, subs


def _grid_specs(argv: list[str], args, config: dict[str, str]) -> None:
    # keep the user's grid text so manifests stay compact and exact
    if not hasattr(args, "grid"):
        return
    spec = None
    for i, tok in enumerate(argv):
        if tok == "--grid" and i + 1 < len(argv):
            spec = argv[i + 1]
        elif tok.startswith("--grid="):
            spec = tok.split("=", 1)[1]
    if spec is None:
        spec = config.get("grid")
    if spec is not None:
        args.grid_spec = spec


def parse_args(argv: list[str]) -> argparse.Namespace:
    parser, subs = build_parser()
    args = parser.parse_args(argv)
    config: dict[str, str] = {}
    if args.config:
        try:
            config = read_key_values(args.config)
        except OSError as exc:
            parser.error(f"--config: {exc}")
        sub = subs[args.command]
        dests = {a.dest for a in sub._actions} - {"help", "config", "seed"}
        sub.set_defaults(**{k: v for k, v in config.items() if k in dests})
        args = parser.parse_args(argv)
    _grid_specs(argv, args, config)
    if hasattr(args, "seed"):
        if args.seed is not None:
            args.seed_source = "cli"
        elif "seed" in config:
            args.seed, args.seed_source = int(config["seed"]), "config"
        elif os.environ.get(SEED_ENV):
            args.seed, args.seed_source = int(os.environ[SEED_ENV]), f"env:{SEED_ENV}"
        else:
            args.seed, args.seed_source = DEFAULT_SEED, "default"
    return args


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parse_args(argv)
        return args.handler(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except (DomainError, NoSolutionError, NotBracketedError) as exc:
        print(f"tvqc: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
