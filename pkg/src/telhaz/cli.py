"""Command-line surface: every figure and case study as CSV tables.

Outputs are plain data (no plotting); columns are documented in
``docs/formats.md``. All stochastic commands take an explicit seed and are
byte-for-byte deterministic given their flags.

Exit codes: 0 success, 2 invalid input, 3 defensibility test failed
(so shell pipelines can branch on the verdict), 1 internal error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import math
import sys
import traceback
from pathlib import Path

import numpy as np

from . import datasets, presets
from .estimation import BandConfig, Sample, confidence_band, defensibility_test, kde_cdf, kde_density
from .hazard import HazardSpec, load_hazard_config
from .perturbed import PerturbedModel
from .telegraph import TelegraphParams, integrate_path, sample_path, w_density


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    v = float(value)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return repr(v)


@contextlib.contextmanager
def _open_output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _write_csv(stream, header, rows) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])


def _resolve_hazard(spec: str) -> HazardSpec:
    if spec.startswith("preset:"):
        name = spec[len("preset:"):]
        try:
            return presets.HAZARDS[name]
        except KeyError:
            raise ValueError(
                f"unknown hazard preset {name!r}; available: {sorted(presets.HAZARDS)}"
            ) from None
    return load_hazard_config(spec)


def _resolve_dataset(spec: str) -> datasets.NamedDataset:
    if spec.startswith("preset:"):
        try:
            return datasets.builtin(spec[len("preset:"):])
        except KeyError as exc:
            raise ValueError(exc.args[0]) from None
    return datasets.load(spec)


def _model_from_args(args) -> PerturbedModel:
    return PerturbedModel(_resolve_hazard(args.hazard), TelegraphParams(c=args.c, lam=args.lam))


# -- subcommands --------------------------------------------------------------


def cmd_simulate_w(args) -> int:
    params = TelegraphParams(c=args.c, lam=args.lam)
    grid = np.linspace(0.0, args.horizon, args.grid_size)
    rows = []
    for pid in range(args.paths):
        path = sample_path(params, args.horizon, args.seed + pid)
        for t in grid:
            rows.append((pid, t, integrate_path(path, params, float(t))))
    with _open_output(args.output) as out:
        _write_csv(out, ("path_id", "t", "w"), rows)
    return 0


def cmd_simulate_x(args) -> int:
    model = _model_from_args(args)
    horizon = min(args.horizon, model.hazard.support_end * (1.0 - 1e-12))
    grid = np.linspace(0.0, horizon, args.grid_size)
    rows = []
    for pid in range(args.paths):
        for t, x in model.sample_path_values(horizon, grid, args.seed + pid):
            rows.append((pid, t, x))
    with _open_output(args.output) as out:
        _write_csv(out, ("path_id", "t", "x"), rows)
    return 0


def cmd_density(args) -> int:
    params = TelegraphParams(c=args.c, lam=args.lam)
    if args.process == "w":
        ct = params.c * args.t
        xs = np.linspace(-ct, ct, args.points + 2)[1:-1]
        f = w_density(params, args.t, xs)
    else:
        if args.hazard is None:
            raise ValueError("--hazard is required for the x-process density")
        model = PerturbedModel(_resolve_hazard(args.hazard), params)
        band = model.band(args.t)
        xs = np.linspace(band.a, band.b, args.points + 2)[1:-1]
        f = model.density(xs, args.t)
    with _open_output(args.output) as out:
        _write_csv(out, ("x", "density"), zip(xs, f))
    return 0


def cmd_moments(args) -> int:
    model = _model_from_args(args)
    grid = np.linspace(0.0, args.t_max, args.points)
    means = model.mean(grid)
    variances = model.variance(grid)
    with _open_output(args.output) as out:
        _write_csv(out, ("t", "mean", "variance"), zip(grid, means, variances))
    return 0


def cmd_band(args) -> int:
    model = _model_from_args(args)
    grid = np.linspace(0.0, args.t_max, args.points)
    rows = [
        (b.t, b.a, b.b, b.width)
        for b in (model.band(float(t)) for t in grid)
    ]
    with _open_output(args.output) as out:
        _write_csv(out, ("t", "a", "b", "width"), rows)
    return 0


def cmd_estimate(args) -> int:
    dataset = _resolve_dataset(args.data)
    config = BandConfig(h=args.bandwidth, alpha=args.alpha, grid_size=args.grid_size)
    band = confidence_band(dataset.sample, config)
    f = kde_density(dataset.sample, args.bandwidth, band.grid)
    F = kde_cdf(dataset.sample, args.bandwidth, band.grid)
    rows = zip(band.grid, f, F, band.rate, band.lower, band.upper)
    with _open_output(args.output) as out:
        _write_csv(out, ("t", "f_hat", "F_hat", "r_hat", "lower", "upper"), rows)
    return 0


def _defensibility_rows(report):
    band = report.band
    return zip(
        band.grid, band.rate, band.lower, band.upper, report.baseline_rate, report.margin
    )


def _write_defensibility_report(stream, report, dataset_name: str, args) -> None:
    stream.write(f"dataset = {dataset_name}\n")
    stream.write(f"n = {report.band.grid.size} grid points, h = {_fmt(args.bandwidth)}, ")
    stream.write(f"alpha = {_fmt(args.alpha)}\n")
    stream.write(f"c = {_fmt(report.c)}\n")
    stream.write(f"holds = {str(report.holds).lower()}\n")
    stream.write(f"max_admissible_c = {_fmt(report.max_admissible_c)}\n")
    if report.violating_t is not None:
        stream.write(f"violating_t = {_fmt(report.violating_t)}\n")


def cmd_defensibility(args) -> int:
    dataset = _resolve_dataset(args.data)
    baseline = _resolve_hazard(args.hazard)
    config = BandConfig(h=args.bandwidth, alpha=args.alpha, grid_size=args.grid_size)
    report = defensibility_test(dataset.sample, config, baseline, args.c)
    with _open_output(args.output) as out:
        if args.format == "csv":
            _write_csv(
                out,
                ("t", "r_hat", "lower", "upper", "baseline", "margin"),
                _defensibility_rows(report),
            )
        else:
            _write_defensibility_report(out, report, dataset.name, args)
    return 0 if report.holds else 3


# -- reproduce ----------------------------------------------------------------


def _reproduce_fig1(outdir: Path, seed: int) -> None:
    model = presets.model_fig1()
    grid = np.linspace(0.0, presets.FIG1_HORIZON, 201)
    cums = model.hazard.cumulative(grid)
    w_rows, x_rows = [], []
    for pid in range(2):
        path = sample_path(model.noise, presets.FIG1_HORIZON, seed + pid)
        w = np.array([integrate_path(path, model.noise, float(t)) for t in grid])
        x = -np.expm1(-(cums + w))
        w_rows.extend((pid, t, wv) for t, wv in zip(grid, w))
        x_rows.extend((pid, t, xv) for t, xv in zip(grid, x))
    with open(outdir / "w_paths.csv", "w", encoding="utf-8", newline="") as fh:
        _write_csv(fh, ("path_id", "t", "w"), w_rows)
    with open(outdir / "x_paths.csv", "w", encoding="utf-8", newline="") as fh:
        _write_csv(fh, ("path_id", "t", "x"), x_rows)
    with open(outdir / "f_curve.csv", "w", encoding="utf-8", newline="") as fh:
        _write_csv(fh, ("t", "cdf"), zip(grid, model.hazard.cdf(grid)))


def _reproduce_fig2(outdir: Path) -> None:
    summary = []
    for case in ("a", "b", "c"):
        model = presets.model_fig2(case)
        grid = np.linspace(0.0, presets.FIG2_HORIZONS[case], 401)
        rows = [(b.t, b.a, b.b, b.width) for b in (model.band(float(t)) for t in grid)]
        with open(outdir / f"band_{case}.csv", "w", encoding="utf-8", newline="") as fh:
            _write_csv(fh, ("t", "a", "b", "width"), rows)
        summary.append((case, model.total_excess_hazard, model.terminal_band_width()))
    with open(outdir / "summary.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("case", "nu", "terminal_width"))
        for case, nu, width in summary:
            writer.writerow((case, _fmt(nu), _fmt(width)))


def _reproduce_fig3(outdir: Path) -> None:
    model = presets.model_fig3()
    density_rows, atom_rows = [], []
    for t in presets.FIG3_TIMES:
        band = model.band(t)
        xs = np.linspace(band.a, band.b, 403)[1:-1]
        f = model.density(xs, t)
        density_rows.extend((t, x, fv) for x, fv in zip(xs, f))
        atom_rows.append((t, band.a, band.b, model.atom_prob(t)))
    with open(outdir / "density.csv", "w", encoding="utf-8", newline="") as fh:
        _write_csv(fh, ("t", "x", "density"), density_rows)
    with open(outdir / "atoms.csv", "w", encoding="utf-8", newline="") as fh:
        _write_csv(fh, ("t", "a", "b", "atom_prob"), atom_rows)


def _reproduce_fig4(outdir: Path) -> None:
    model = presets.model_fig3()
    grid = np.linspace(0.0, presets.FIG4_HORIZON, 401)
    with open(outdir / "moments.csv", "w", encoding="utf-8", newline="") as fh:
        _write_csv(
            fh, ("t", "mean", "variance"), zip(grid, model.mean(grid), model.variance(grid))
        )


def _reproduce_app(outdir: Path, preset: dict) -> int:
    dataset = datasets.builtin(preset["dataset"])
    config = BandConfig(h=preset["h"], alpha=preset["alpha"])
    report = defensibility_test(dataset.sample, config, preset["baseline"], preset["c"])
    band = report.band
    f = kde_density(dataset.sample, preset["h"], band.grid)
    F = kde_cdf(dataset.sample, preset["h"], band.grid)
    with open(outdir / "estimate.csv", "w", encoding="utf-8", newline="") as fh:
        _write_csv(
            fh,
            ("t", "f_hat", "F_hat", "r_hat", "lower", "upper"),
            zip(band.grid, f, F, band.rate, band.lower, band.upper),
        )
    with open(outdir / "defensibility.csv", "w", encoding="utf-8", newline="") as fh:
        _write_csv(
            fh,
            ("t", "r_hat", "lower", "upper", "baseline", "margin"),
            _defensibility_rows(report),
        )
    with open(outdir / "report.txt", "w", encoding="utf-8") as fh:
        fh.write(f"dataset = {dataset.name}\n")
        fh.write(f"h = {_fmt(preset['h'])}, alpha = {_fmt(preset['alpha'])}\n")
        fh.write(f"c = {_fmt(preset['c'])}\n")
        fh.write(f"holds = {str(report.holds).lower()}\n")
        fh.write(f"max_admissible_c = {_fmt(report.max_admissible_c)}\n")
    return 0 if report.holds else 3


def cmd_reproduce(args) -> int:
    outdir = Path(args.output_dir or f"{args.target}_tables")
    outdir.mkdir(parents=True, exist_ok=True)
    if args.target == "fig1":
        _reproduce_fig1(outdir, args.seed)
    elif args.target == "fig2":
        _reproduce_fig2(outdir)
    elif args.target == "fig3":
        _reproduce_fig3(outdir)
    elif args.target == "fig4":
        _reproduce_fig4(outdir)
    elif args.target == "app1":
        return _reproduce_app(outdir, presets.APP1)
    elif args.target == "app2":
        return _reproduce_app(outdir, presets.APP2)
    return 0


# -- parser -------------------------------------------------------------------


def _add_noise_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--c", type=float, default=1.0, help="noise amplitude (> 0)")
    p.add_argument("--lam", type=float, default=1.0, help="switching rate (> 0)")


def _add_output_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", default=None, help="output file (default: stdout)")
    p.add_argument(
        "--config",
        default=None,
        help="key=value file supplying any flag of this subcommand",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="telhaz",
        description="Telegraph-noise-perturbed hazard models: simulation, laws, and data checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate-w", help="sample paths of the integrated noise")
    _add_noise_flags(p)
    p.add_argument("--horizon", type=float, default=1.0)
    p.add_argument("--paths", type=int, default=2)
    p.add_argument("--grid-size", type=int, default=201)
    p.add_argument("--seed", type=int, default=1)
    _add_output_flag(p)
    p.set_defaults(func=cmd_simulate_w)

    p = sub.add_parser("simulate-x", help="sample paths of the perturbed CDF process")
    p.add_argument("--hazard", required=True, help="hazard config file or preset:NAME")
    _add_noise_flags(p)
    p.add_argument("--horizon", type=float, default=1.0)
    p.add_argument("--paths", type=int, default=2)
    p.add_argument("--grid-size", type=int, default=201)
    p.add_argument("--seed", type=int, default=1)
    _add_output_flag(p)
    p.set_defaults(func=cmd_simulate_x)

    p = sub.add_parser("density", help="closed-form density of W(t) or X(t)")
    p.add_argument("--process", choices=("w", "x"), default="w")
    p.add_argument("--hazard", default=None, help="required when --process x")
    _add_noise_flags(p)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--points", type=int, default=401)
    _add_output_flag(p)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("moments", help="mean and variance of X(t) on a grid")
    p.add_argument("--hazard", required=True)
    _add_noise_flags(p)
    p.add_argument("--t-max", type=float, default=2.0)
    p.add_argument("--points", type=int, default=401)
    _add_output_flag(p)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("band", help="almost-sure band of X(t) on a grid")
    p.add_argument("--hazard", required=True)
    _add_noise_flags(p)
    p.add_argument("--t-max", type=float, default=2.0)
    p.add_argument("--points", type=int, default=401)
    _add_output_flag(p)
    p.set_defaults(func=cmd_band)

    p = sub.add_parser("estimate", help="kernel density/CDF/hazard with confidence band")
    p.add_argument("--data", required=True, help="data file or preset:NAME")
    p.add_argument("--bandwidth", type=float, required=True)
    p.add_argument("--alpha", type=float, default=0.025)
    p.add_argument("--grid-size", type=int, default=512)
    _add_output_flag(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("defensibility", help="strip test of the model on a data set")
    p.add_argument("--data", required=True, help="data file or preset:NAME")
    p.add_argument("--hazard", required=True, help="baseline hazard config or preset:NAME")
    p.add_argument("--bandwidth", type=float, required=True)
    p.add_argument("--alpha", type=float, default=0.025)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--grid-size", type=int, default=512)
    p.add_argument("--format", choices=("csv", "report"), default="report")
    _add_output_flag(p)
    p.set_defaults(func=cmd_defensibility)

    p = sub.add_parser("reproduce", help="emit all tables for a named figure or case study")
    p.add_argument("target", choices=("fig1", "fig2", "fig3", "fig4", "app1", "app2"))
    p.add_argument("--output-dir", default=None)
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(func=cmd_reproduce)

    return parser


def _inject_config(argv: list[str]) -> list[str]:
    """Expand ``--config FILE`` into flag tokens so explicit flags win."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        raise ValueError("--config requires a file path")
    path = argv[i + 1]
    tokens: list[str] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
            key, _, value = line.partition("=")
            tokens += [f"--{key.strip().replace('_', '-')}", value.strip()]
    remaining = argv[:i] + argv[i + 2:]
    # insert right after the subcommand so later explicit flags override
    return remaining[:1] + tokens + remaining[1:]


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _inject_config(argv)
        args = build_parser().parse_args(argv)
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # argparse reports its own errors
        return int(exc.code or 0)
    except Exception:
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
