"""Command-line front end.

Subcommands: discretize, distortion, search, exclusion, stability, integrate,
simulate.  Machine-readable numbers are printed with 17 significant digits,
human summaries with 6.  Exit codes: 0 success, 2 bad arguments or input,
3 numerical degeneracy.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .analysis import (
    FrequencyGrid,
    Metric,
    Objective,
    default_grid,
    discretization_stable,
    distortion_profile,
    exclusion_scan,
    hurwitz_stable,
    map_poles,
    search_alpha,
)
from .errors import InvalidInput, NumericalDegeneracy
from .poly import Polynomial, poly_roots
from .systems import DEFAULTS, PlantSpec
from .timedomain import SampledSignal, integrate_sequence, simulate_dtf
from .transform import (
    AlphaParam,
    ContinuousTransferFunction,
    DiscreteTransferFunction,
    Method,
    SampleSpec,
    alpha_substitute,
    disk_within_unit_circle,
    stability_disk,
    to_alpha,
)

PLANTS = tuple(DEFAULTS)

PRESETS = {
    "fig3": {"plant": "lpf", "fc": 2400.0, "fs": 10000.0},
    "section6": {
        "plant": "all",
        "fs": 10000.0,
        "grid_points": 200,
        "alpha_grid": "0.5,1.0,0.005",
    },
}

CSV_COLUMNS = (
    "f_hz,amp_analog_db,amp_discrete_db,amp_err_db,"
    "phase_analog_deg,phase_discrete_deg,phase_err_deg"
)


def fmt(x) -> str:
    """Machine format: 17 significant digits, locale independent."""
    return format(float(x), ".17g")


def hfmt(x) -> str:
    """Human format: 6 significant digits."""
    return format(float(x), ".6g")


def hbool(b) -> str:
    return "true" if b else "false"


def _cfmt(z: complex) -> str:
    return f"{hfmt(z.real)}{'+' if z.imag >= 0 else '-'}{hfmt(abs(z.imag))}j"


def _jsonable(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (np.floating,)):
        return _jsonable(float(x))
    if isinstance(x, (np.bool_,)):
        return bool(x)
    return x


def dump_json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, allow_nan=False) + "\n"


def parse_floats(text: str, what: str) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise InvalidInput(f"{what}: expected comma-separated numbers, got {text!r}") from None
    if not vals:
        raise InvalidInput(f"{what}: no values given")
    return vals


def parse_samples(lines) -> np.ndarray:
    """One real per line (first CSV field); a non-numeric first line is a header."""
    out = []
    header_allowed = True
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        token = line.split(",")[0].strip()
        try:
            value = float(token)
        except ValueError:
            if header_allowed:
                header_allowed = False
                continue
            raise InvalidInput(f"line {lineno}: cannot parse {line!r} as a number") from None
        if not math.isfinite(value):
            raise InvalidInput(f"line {lineno}: non-finite sample {token!r}")
        header_allowed = False
        out.append(value)
    if not out:
        raise InvalidInput("input contains no samples")
    return np.array(out)


# -- configuration ---------------------------------------------------------------


@dataclass
class RunConfig:
    plants: list = field(default_factory=list)  # [(label, ContinuousTransferFunction)]
    alpha: AlphaParam | None = None
    sample: SampleSpec | None = None
    grid: FrequencyGrid | None = None
    metric: Metric = Metric.MAX_ABS
    objective: Objective = Objective.AMPLITUDE
    fmt: str = "csv"
    out: str | None = None


def _plant_params(args, kind):
    params = {}
    for name in DEFAULTS[kind]:
        v = getattr(args, name, None)
        if v is not None:
            params[name] = v
    return params


def _label(kind, params):
    return kind + "".join(f" {k}={hfmt(v)}" for k, v in params.items())


def resolve_plants(args) -> list:
    if args.num is not None or args.den is not None:
        if args.plant is not None:
            raise InvalidInput("give either --plant or --num/--den, not both")
        if args.num is None or args.den is None:
            raise InvalidInput("--num and --den must be given together")
        h = ContinuousTransferFunction(
            Polynomial(parse_floats(args.num, "--num")),
            Polynomial(parse_floats(args.den, "--den")),
        )
        return [("custom", h)]
    if args.plant is None:
        return []
    kinds = PLANTS if args.plant == "all" else (args.plant,)
    out = []
    for kind in kinds:
        spec = PlantSpec(kind, _plant_params(args, kind))
        out.append((_label(kind, spec.params), spec.build()))
    return out


def resolve_alpha(args) -> AlphaParam | None:
    if args.alpha is not None and args.method is not None:
        raise InvalidInput("give either --alpha or --method, not both")
    if args.alpha is not None:
        return AlphaParam(args.alpha)
    if args.method is not None:
        return to_alpha(args.method, args.param)
    if args.param is not None:
        raise InvalidInput("--param needs --method")
    return None


def resolve_grid(args, sample: SampleSpec) -> FrequencyGrid:
    if args.grid is None:
        return default_grid(sample, args.grid_points or 500)
    parts = [p.strip() for p in args.grid.split(",")]
    if len(parts) != 4 or parts[3] not in ("log", "linear"):
        raise InvalidInput("--grid expects fmin,fmax,n,{log|linear}")
    fmin, fmax = parse_floats(",".join(parts[:2]), "--grid")
    try:
        n = int(parts[2])
    except ValueError:
        raise InvalidInput(f"--grid: n must be an integer, got {parts[2]!r}") from None
    if n < 2:
        raise InvalidInput("--grid: n must be at least 2")
    if not 0 < fmin < fmax < sample.f_nyquist:
        raise InvalidInput(
            f"--grid: need 0 < fmin < fmax < fs/2 = {hfmt(sample.f_nyquist)}"
        )
    build = FrequencyGrid.log if parts[3] == "log" else FrequencyGrid.linear
    return build(fmin, fmax, n)


def resolve(args) -> RunConfig:
    sample = SampleSpec.from_fs(args.fs)
    cfg = RunConfig(
        plants=resolve_plants(args),
        alpha=resolve_alpha(args),
        sample=sample,
        metric=Metric(args.metric),
        objective=Objective(args.objective),
        fmt=args.format,
        out=args.out,
    )
    if args.command in ("distortion", "search", "exclusion"):
        cfg.grid = resolve_grid(args, sample)
    return cfg


def _need_plant(cfg: RunConfig, allow_many=False):
    if not cfg.plants:
        raise InvalidInput("no system given: use --plant, --num/--den or --preset")
    if len(cfg.plants) > 1 and not allow_many:
        raise InvalidInput("--plant all is only supported by the exclusion command")
    return cfg.plants


def _need_alpha(cfg: RunConfig) -> AlphaParam:
    if cfg.alpha is None:
        raise InvalidInput("no alpha given: use --alpha X or --method NAME [--param Y]")
    return cfg.alpha


def _warn_alpha(alpha: AlphaParam, err):
    if not alpha.stable_range:
        err.write(
            f"warning: alpha = {hfmt(alpha.alpha)} is below 0.5; the left half-plane "
            "is not mapped inside the unit circle (stable range is alpha >= 0.5)\n"
        )


# -- commands ---------------------------------------------------------------------


def format_discretization(label, hd: DiscreteTransferFunction, verdict) -> str:
    lines = [
        "# alphadisc discretize",
        "# order: ascending",
        f"# system: {label}",
        f"alpha: {fmt(hd.alpha_used.alpha)}",
        f"T: {fmt(hd.sample.T)}",
        "num: " + ",".join(fmt(c) for c in hd.num.coeffs),
        "den: " + ",".join(fmt(c) for c in hd.den.coeffs),
        f"schur_stable: {hbool(verdict.schur_stable)}",
        "pole_moduli: " + ",".join(fmt(m) for m in verdict.pole_moduli),
    ]
    return "\n".join(lines) + "\n"


def parse_discretization(text: str) -> DiscreteTransferFunction:
    """Read back the text emitted by ``discretize``."""
    fields = {}
    for line in text.splitlines():
        if line.startswith("#") or ":" not in line:
            continue
        key, _, value = line.partition(":")
        fields[key.strip()] = value.strip()
    try:
        return DiscreteTransferFunction(
            Polynomial(parse_floats(fields["num"], "num")),
            Polynomial(parse_floats(fields["den"], "den")),
            sample=SampleSpec(float(fields["T"])),
            alpha_used=AlphaParam(float(fields["alpha"])),
        )
    except KeyError as exc:
        raise InvalidInput(f"missing field {exc.args[0]!r}") from None


def cmd_discretize(cfg: RunConfig, out, err) -> int:
    (label, h), = _need_plant(cfg)
    alpha = _need_alpha(cfg)
    _warn_alpha(alpha, err)
    hd = alpha_substitute(h, alpha, cfg.sample)
    verdict = discretization_stable(hd, alpha, cfg.sample)
    if cfg.fmt == "json":
        out.write(dump_json({
            "system": label,
            "order": "ascending",
            "alpha": hd.alpha_used.alpha,
            "T": hd.sample.T,
            "num": hd.num.tolist(),
            "den": hd.den.tolist(),
            "schur_stable": verdict.schur_stable,
            "pole_moduli": verdict.pole_moduli,
        }))
    else:
        out.write(format_discretization(label, hd, verdict))
    return 0


def _header(cfg: RunConfig, cmd: str, label: str) -> list[str]:
    return [
        f"# alphadisc {cmd}",
        f"# system: {label}",
        f"# fs: {fmt(cfg.sample.fs)}",
        f"# grid: {fmt(cfg.grid.points[0])}..{fmt(cfg.grid.points[-1])} ({len(cfg.grid)} points)",
    ]


def cmd_distortion(cfg: RunConfig, out, err) -> int:
    (label, h), = _need_plant(cfg)
    alpha = _need_alpha(cfg)
    _warn_alpha(alpha, err)
    prof = distortion_profile(h, alpha, cfg.sample, cfg.grid)
    if cfg.fmt == "json":
        out.write(dump_json({
            "system": label,
            "alpha": alpha.alpha,
            "fs": cfg.sample.fs,
            "convention": "error = discrete - analog",
            "columns": CSV_COLUMNS.split(","),
            "rows": [list(r) for r in prof.rows()],
        }))
        return 0
    lines = _header(cfg, "distortion", label)
    lines += [
        f"# alpha: {fmt(alpha.alpha)}",
        "# convention: error = discrete - analog; amplitude in dB; phase in degrees,"
        " unwrapped along ascending frequency",
        CSV_COLUMNS,
    ]
    lines += [",".join(fmt(v) for v in row) for row in prof.rows()]
    out.write("\n".join(lines) + "\n")
    return 0


def cmd_search(cfg: RunConfig, out, err, interval=(0.5, 1.0), trace=False) -> int:
    (label, h), = _need_plant(cfg)
    lo, hi = interval
    if lo < 0.5:
        err.write(
            f"warning: search interval [{hfmt(lo)}, {hfmt(hi)}] extends below the stable"
            " range alpha >= 0.5\n"
        )
    res = search_alpha(h, cfg.sample, cfg.grid, cfg.objective, cfg.metric, (lo, hi))
    doc = {
        "system": label,
        "alpha_star": res.alpha_star.alpha,
        "objective_value": res.objective_value,
        "metric": res.metric.value,
        "objective": res.objective.value,
        "degenerate": res.degenerate,
        "interval": list(res.interval),
        "interval_stable": res.interval_stable,
    }
    if trace:
        doc["trace"] = [list(t) for t in res.trace]
    out.write(dump_json(doc))
    return 0


def cmd_exclusion(cfg: RunConfig, out, err, alpha_grid=(0.5, 1.0, 0.005)) -> int:
    plants = _need_plant(cfg, allow_many=True)
    lo, hi, step = alpha_grid
    reports = [(label, exclusion_scan(h, cfg.sample, cfg.grid, lo, hi, step)) for label, h in plants]
    if cfg.fmt == "json":
        doc = {"alpha_grid": [lo, hi, step], "fs": cfg.sample.fs, "reports": []}
        for label, rep in reports:
            doc["reports"].append({
                "system": label,
                "records": [
                    {
                        "f_hz": r.f,
                        "alpha_amp_argmin": r.alpha_amp_argmin,
                        "alpha_phase_argmin": r.alpha_phase_argmin,
                        "amp_min": r.amp_min,
                        "phase_min": r.phase_min,
                        "coincident": r.coincident,
                        "degenerate": r.degenerate,
                    }
                    for r in rep.records
                ],
                "summary": rep.summary(),
            })
        out.write(dump_json(doc))
        return 0
    blocks = []
    for label, rep in reports:
        lines = _header(cfg, "exclusion", label)
        lines += [
            f"# alpha_grid: {fmt(lo)},{fmt(hi)},{fmt(step)}",
            "f_hz,alpha_amp_argmin,alpha_phase_argmin,coincident",
        ]
        for r in rep.records:
            flag = "degenerate" if r.degenerate else hbool(r.coincident)
            lines.append(f"{fmt(r.f)},{fmt(r.alpha_amp_argmin)},{fmt(r.alpha_phase_argmin)},{flag}")
        lines.append("# summary: " + json.dumps(_jsonable(rep.summary()), allow_nan=False))
        blocks.append("\n".join(lines) + "\n")
    out.write("\n".join(blocks))
    return 0


def cmd_stability(cfg: RunConfig, out, err) -> int:
    alpha = _need_alpha(cfg)
    _warn_alpha(alpha, err)
    disk = stability_disk(alpha)
    right, left = disk.crossings
    lines = [
        "# alphadisc stability",
        f"alpha: {hfmt(alpha.alpha)}",
        f"center: {hfmt(disk.center)}",
        f"radius: {hfmt(disk.radius)}",
        f"region: {'exterior' if disk.exterior else 'interior'}",
        f"crossings: {hfmt(right)},{hfmt(left)}",
        f"within_unit_circle: {hbool(disk_within_unit_circle(disk))}",
    ]
    for label, h in _need_plant(cfg) if cfg.plants else []:
        verdict = discretization_stable(h, alpha, cfg.sample)
        try:
            cpoles = poly_roots(h.den)
        except NumericalDegeneracy:
            cpoles = np.zeros(0, dtype=complex)
        mapped = map_poles(h, alpha, cfg.sample)
        lines += [
            f"system: {label}",
            f"fs: {hfmt(cfg.sample.fs)}",
            f"hurwitz: {hurwitz_stable(h).value}",
            "continuous_poles: " + ", ".join(_cfmt(p) for p in cpoles),
            "mapped_poles: " + ", ".join(f"{_cfmt(p)} |z|={hfmt(abs(p))}" for p in mapped),
            "discrete_poles: " + ", ".join(f"{_cfmt(p)} |z|={hfmt(abs(p))}" for p in verdict.poles),
            f"schur_stable: {hbool(verdict.schur_stable)}",
        ]
    out.write("\n".join(lines) + "\n")
    return 0


def _read_input(path):
    if path in (None, "-"):
        return parse_samples(sys.stdin.read().splitlines())
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_samples(fh.read().splitlines())
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None


def _write_column(out, header_lines, name, values):
    lines = header_lines + [name] + [fmt(v) for v in values]
    out.write("\n".join(lines) + "\n")


def cmd_integrate(cfg: RunConfig, out, err, input_path=None, u0=0.0) -> int:
    alpha = _need_alpha(cfg)
    e = SampledSignal(_read_input(input_path), cfg.sample)
    u = integrate_sequence(e, alpha, u0)
    _write_column(
        out,
        ["# alphadisc integrate", f"# alpha: {fmt(alpha.alpha)}", f"# T: {fmt(cfg.sample.T)}",
         f"# u0: {fmt(u0)}"],
        "u",
        u.samples,
    )
    return 0


def cmd_simulate(cfg: RunConfig, out, err, input_path=None, znum=None, zden=None) -> int:
    if (znum is None) != (zden is None):
        raise InvalidInput("--znum and --zden must be given together")
    if znum is not None:
        hd = DiscreteTransferFunction(
            Polynomial(parse_floats(znum, "--znum")),
            Polynomial(parse_floats(zden, "--zden")),
            sample=cfg.sample,
        )
        label = "custom z-domain"
    else:
        (label, h), = _need_plant(cfg)
        alpha = _need_alpha(cfg)
        _warn_alpha(alpha, err)
        hd = alpha_substitute(h, alpha, cfg.sample)
    x = SampledSignal(_read_input(input_path), cfg.sample)
    y = simulate_dtf(hd, x)
    _write_column(
        out,
        ["# alphadisc simulate", f"# system: {label}", "# order: ascending",
         "# num: " + ",".join(fmt(c) for c in hd.num.coeffs),
         "# den: " + ",".join(fmt(c) for c in hd.den.coeffs),
         f"# T: {fmt(cfg.sample.T)}"],
        "y",
        y.samples,
    )
    return 0


# -- argument parsing ----------------------------------------------------------------


def _common(p: argparse.ArgumentParser):
    g = p.add_argument_group("system")
    g.add_argument("--plant", choices=PLANTS + ("all",))
    g.add_argument("--fc", type=float, help="LPF crossing frequency, Hz")
    g.add_argument("--kp", type=float)
    g.add_argument("--ki", type=float)
    g.add_argument("--kr", type=float)
    g.add_argument("--f0", type=float, help="PR / notch centre frequency, Hz")
    g.add_argument("--q", type=float, help="notch quality factor")
    g.add_argument("--num", help="s-domain numerator, ascending: a0,a1,...")
    g.add_argument("--den", help="s-domain denominator, ascending: b0,b1,...")
    g = p.add_argument_group("discretisation")
    g.add_argument("--alpha", type=float)
    g.add_argument("--method", choices=[m.value for m in Method])
    g.add_argument("--param", type=float)
    g.add_argument("--fs", type=float, default=10000.0, help="sampling frequency, Hz")
    g = p.add_argument_group("analysis")
    g.add_argument("--grid", help="fmin,fmax,n,{log|linear}")
    g.add_argument("--grid-points", type=int, default=None, help=argparse.SUPPRESS)
    g.add_argument("--metric", choices=[m.value for m in Metric], default="max_abs")
    g.add_argument("--objective", choices=[o.value for o in Objective], default="amplitude")
    g = p.add_argument_group("output")
    g.add_argument("--format", choices=["csv", "json"], default="csv")
    g.add_argument("--out", help="output path (default stdout)")
    g.add_argument("--preset", choices=sorted(PRESETS))
    g.add_argument("--config", help="JSON file of option defaults")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="alphadisc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    cmds = {
        "discretize": "print z-domain coefficients",
        "distortion": "amplitude/phase distortion table (CSV)",
        "search": "alpha minimising a distortion metric (JSON)",
        "exclusion": "per-frequency argmin-alpha scan",
        "stability": "stability disk and pole verdicts",
        "integrate": "hexagonal integration of a sample column",
        "simulate": "run a sample column through a discretised system",
    }
    parser.commands = {}
    for name, help_ in cmds.items():
        p = sub.add_parser(name, help=help_)
        parser.commands[name] = p
        _common(p)
        if name == "search":
            p.add_argument("--interval", default="0.5,1.0", help="lo,hi")
            p.add_argument("--trace", action="store_true")
        if name == "exclusion":
            p.add_argument("--alpha-grid", default="0.5,1.0,0.005", help="lo,hi,step")
        if name in ("integrate", "simulate"):
            p.add_argument("--input", default="-", help="CSV of samples (default stdin)")
        if name == "integrate":
            p.add_argument("--u0", type=float, default=0.0)
        if name == "simulate":
            p.add_argument("--znum", help="z-domain numerator, ascending")
            p.add_argument("--zden", help="z-domain denominator, ascending")
    return parser


def _apply_defaults(parser, argv):
    """Preset < config file < explicit flags."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("command", nargs="?")
    pre.add_argument("--preset")
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    sub = parser.commands.get(known.command)
    if sub is None:
        return
    valid = {a.dest for a in sub._actions}
    defaults = {}
    if known.preset is not None:
        if known.preset not in PRESETS:
            raise InvalidInput(f"unknown preset {known.preset!r}")
        defaults.update({k: v for k, v in PRESETS[known.preset].items() if k in valid})
    if known.config is not None:
        try:
            with open(known.config, encoding="utf-8") as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidInput(f"cannot load config {known.config}: {exc}") from None
        if not isinstance(cfg, dict):
            raise InvalidInput("config file must hold a JSON object")
        cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
        unknown = set(cfg) - valid - {"preset", "config"}
        if unknown:
            raise InvalidInput(f"unknown configuration keys: {sorted(unknown)}")
        cfg.pop("preset", None)
        cfg.pop("config", None)
        defaults.update(cfg)
    if defaults:
        sub.set_defaults(**defaults)


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_defaults(parser, argv)
        args = parser.parse_args(argv)
        cfg = resolve(args)
        dest = out
        fh = None
        if cfg.out:
            try:
                fh = open(cfg.out, "w", encoding="utf-8", newline="\n")
            except OSError as exc:
                raise InvalidInput(f"cannot write {cfg.out}: {exc.strerror}") from None
            dest = fh
        try:
            if args.command == "discretize":
                return cmd_discretize(cfg, dest, err)
            if args.command == "distortion":
                return cmd_distortion(cfg, dest, err)
            if args.command == "search":
                bounds = parse_floats(args.interval, "--interval")
                if len(bounds) != 2 or not bounds[0] < bounds[1]:
                    raise InvalidInput("--interval expects lo,hi with lo < hi")
                return cmd_search(cfg, dest, err, tuple(bounds), args.trace)
            if args.command == "exclusion":
                grid = parse_floats(args.alpha_grid, "--alpha-grid")
                if len(grid) != 3:
                    raise InvalidInput("--alpha-grid expects lo,hi,step")
                return cmd_exclusion(cfg, dest, err, tuple(grid))
            if args.command == "stability":
                return cmd_stability(cfg, dest, err)
            if args.command == "integrate":
                return cmd_integrate(cfg, dest, err, args.input, args.u0)
            return cmd_simulate(cfg, dest, err, args.input, args.znum, args.zden)
        finally:
            if fh is not None:
                fh.close()
    except InvalidInput as exc:
        err.write(f"error: {exc}\n")
        return 2
    except NumericalDegeneracy as exc:
        err.write(f"numerical error: {exc}\n")
        return 3


def main(argv=None):
    try:
        code = run(argv)
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        sys.stderr.close()
        code = 0
    sys.exit(code)


if __name__ == "__main__":
    main()
