"""Command-line front end: ``litho-sim <command> [--flags]``.

Exit codes:
    0  success
    2  usage error (unknown command, flag or config key)
    3  missing required parameter
    4  malformed numeric value
    5  precondition violated (e.g. N = 0, 2m = N)
    6  oracle verification failed
    7  I/O failure
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from litho_sim.deposition import (
    ResolutionScheme,
    deposition_general,
    deposition_resonant,
    effective_resolution,
    matrix_element_general,
    phase_grid,
    sample_curve,
)
from litho_sim.errors import LithoError, PreconditionError
from litho_sim.fock import NmesSpec
from litho_sim.pattern import (
    SuperpositionRecipe,
    TargetCoeffs,
    exposure_curve,
    figure1_data,
    fit_target,
    fringe_halfperiod,
    sinphi_recipe,
)
from litho_sim.svg import polyline_svg

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MISSING = 3
EXIT_NUMBER = 4
EXIT_PRECONDITION = 5
EXIT_VERIFY = 6
EXIT_IO = 7

COMMANDS = (
    "deposition", "matrix-element", "resonant", "resolution",
    "pattern", "fit", "figure1", "verify",
)
INT_PARAMS = ("n", "m", "m-prime", "k", "n-max")
FLOAT_PARAMS = ("gamma", "theta", "theta-prime", "lambda", "t")
GRID_KEYS = ("phi-min", "phi-max", "samples")
IO_KEYS = ("format", "output", "target", "recipe", "figure")
FORMATS = ("csv", "json", "svg")

# (required, optional) parameters per command
COMMAND_PARAMS = {
    "deposition": (("n",), ("m", "gamma", "theta")),
    "matrix-element": (("n", "m", "m-prime"), ("gamma", "theta", "theta-prime")),
    "resonant": (("n", "k"), ()),
    "resolution": (("n",), ("k", "lambda")),
    "pattern": ((), ("n-max", "gamma", "t")),
    "fit": ((), ("gamma", "t")),
    "figure1": ((), ()),
    "verify": ((), ("n-max",)),
}
DEFAULTS = {"gamma": math.pi / 4, "t": 1.0, "lambda": 1.0, "m": 0, "theta": 0.0,
            "theta-prime": 0.0, "k": 1}
FIGURE1_N = (2, 6, 12)


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    phi_min: float = 0.0
    phi_max: float = 2 * math.pi
    samples: int = 512
    format: str = "csv"
    output: str | None = None
    target: str | None = None
    recipe: str | None = None
    figure: str | None = None

    def grid(self) -> np.ndarray:
        return phase_grid(self.phi_min, self.phi_max, self.samples)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(EXIT_USAGE, message)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="litho-sim", add_help=True,
                description="NMES quantum photolithography simulator")
    p.add_argument("command", nargs="?")
    p.add_argument("--config", help="JSON file with the same keys as the flags")
    for key in INT_PARAMS + FLOAT_PARAMS + GRID_KEYS + IO_KEYS:
        flag = ["--" + key] + (["-o"] if key == "output" else [])
        p.add_argument(*flag, dest=key.replace("-", "_"), default=None)
    return p


def _to_int(key, raw):
    try:
        if isinstance(raw, bool):
            raise ValueError
        if isinstance(raw, float):
            if not raw.is_integer():
                raise ValueError
            return int(raw)
        return int(str(raw).strip())
    except ValueError:
        raise CliError(EXIT_NUMBER, f"--{key}: expected an integer, got {raw!r}") from None


def _to_float(key, raw):
    try:
        if isinstance(raw, bool):
            raise ValueError
        value = float(raw)
    except (TypeError, ValueError):
        raise CliError(EXIT_NUMBER, f"--{key}: expected a number, got {raw!r}") from None
    if not math.isfinite(value):
        raise CliError(EXIT_NUMBER, f"--{key}: value must be finite, got {raw!r}")
    return value


def parse_config(argv=None, config_text: str | None = None) -> RunConfig:
    """Merge an optional JSON config with command-line flags (flags win)."""
    argv = list(sys.argv[1:] if argv is None else argv)
    values: dict = {}
    args = _build_parser().parse_args(argv) if argv else None

    text = config_text
    if args is not None and args.config:
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            raise CliError(EXIT_IO, f"cannot read config {args.config}: {exc}") from None
    if text:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CliError(EXIT_USAGE, f"config is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise CliError(EXIT_USAGE, "config must be a JSON object")
        known = set(INT_PARAMS + FLOAT_PARAMS + GRID_KEYS + IO_KEYS) | {"command"}
        unknown = sorted(set(data) - known)
        if unknown:
            raise CliError(EXIT_USAGE, f"unknown config key(s): {', '.join(unknown)}")
        values.update(data)
    if args is not None:
        if args.command:
            values["command"] = args.command
        for key in INT_PARAMS + FLOAT_PARAMS + GRID_KEYS + IO_KEYS:
            v = getattr(args, key.replace("-", "_"))
            if v is not None:
                values[key] = v

    command = values.pop("command", None)
    if command not in COMMANDS:
        raise CliError(EXIT_USAGE, f"unknown command {command!r}; choose from {', '.join(COMMANDS)}")

    required, optional = COMMAND_PARAMS[command]
    params = {}
    for key in INT_PARAMS + FLOAT_PARAMS:
        if key not in values:
            continue
        if key not in required + optional:
            raise CliError(EXIT_USAGE, f"parameter --{key} does not apply to {command}")
        raw = values.pop(key)
        params[key] = _to_int(key, raw) if key in INT_PARAMS else _to_float(key, raw)
    missing = [k for k in required if k not in params]
    if command == "fit" and "target" not in values:
        missing.append("target")
    if missing:
        raise CliError(EXIT_MISSING, f"{command}: missing required parameter(s) "
                       + ", ".join("--" + k for k in missing))
    for key in optional:
        if key not in params and key in DEFAULTS:
            params[key] = DEFAULTS[key]

    cfg = RunConfig(command, params)
    if "phi-min" in values:
        cfg.phi_min = _to_float("phi-min", values["phi-min"])
    if "phi-max" in values:
        cfg.phi_max = _to_float("phi-max", values["phi-max"])
    if "samples" in values:
        cfg.samples = _to_int("samples", values["samples"])
    if cfg.samples < 2 or not cfg.phi_min < cfg.phi_max:
        raise CliError(EXIT_PRECONDITION, "grid needs samples >= 2 and phi-min < phi-max")
    fmt = values.get("format", "csv")
    if fmt not in FORMATS:
        raise CliError(EXIT_USAGE, f"--format must be one of {', '.join(FORMATS)}")
    cfg.format = fmt
    for key in ("output", "target", "recipe", "figure"):
        if key in values:
            setattr(cfg, key, str(values[key]))
    if command == "pattern" and cfg.recipe is None and "n-max" not in params:
        raise CliError(EXIT_MISSING, "pattern: need --recipe FILE or --n-max")
    return cfg


# -- emission -------------------------------------------------------------


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(v if isinstance(v, str) else _fmt(float(v)) for v in row) + "\n")
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write(path, text: str, out=None):
    if path is None or path == "-":
        (out or sys.stdout).write(text)
        return
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {path}: {exc}") from None


def _emit_curve(cfg: RunConfig, phi, columns: dict, title: str, out=None):
    names = list(columns)
    if cfg.format == "csv":
        text = _csv(["phi"] + names, zip(phi, *columns.values()))
    elif cfg.format == "json":
        text = _json({"phi": [float(p) for p in phi],
                      **{k: [float(v) for v in vs] for k, vs in columns.items()}})
    else:
        text = polyline_svg([(k, phi, vs) for k, vs in columns.items()], title=title)
    _write(cfg.output, text, out)
    if cfg.figure:
        from litho_sim.plotting import plot_curves

        try:
            plot_curves([(k, np.asarray(phi), np.asarray(v)) for k, v in columns.items()],
                        cfg.figure, title=title)
        except OSError as exc:
            raise CliError(EXIT_IO, f"cannot write {cfg.figure}: {exc}") from None


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_USAGE, f"{path} is not valid JSON: {exc}") from None


# -- commands -------------------------------------------------------------


def _run_deposition(cfg, out):
    p = cfg.params
    if p["n"] < 1:
        raise PreconditionError(f"N={p['n']}: absorption order must be at least 1")
    spec = NmesSpec(p["n"], p["m"], p["gamma"], p["theta"])
    phi = cfg.grid()
    curve = sample_curve(lambda x: deposition_general(spec, x), phi)
    _emit_curve(cfg, phi, {"value": curve.values}, f"deposition N={spec.N} m={spec.m}", out)


def _run_matrix_element(cfg, out):
    p = cfg.params
    phi = cfg.grid()
    z = matrix_element_general(p["n"], p["m"], p["m-prime"], p["gamma"], p["theta"],
                               p["theta-prime"], phi)
    _emit_curve(cfg, phi, {"re": z.real, "im": z.imag},
                f"matrix element N={p['n']} m={p['m']} m'={p['m-prime']}", out)


def _run_resonant(cfg, out):
    p = cfg.params
    phi = cfg.grid()
    curve = sample_curve(lambda x: deposition_resonant(p["n"], p["k"], x), phi)
    _emit_curve(cfg, phi, {"value": curve.values}, f"resonant N={p['n']} k={p['k']}", out)


def resolution_table(n: int, k: int, wavelength: float, samples: int = 2048) -> list[dict]:
    phi = phase_grid(0.0, 2 * math.pi, samples)
    rows = []
    for scheme in (ResolutionScheme.classical(wavelength), ResolutionScheme.mes(n, wavelength),
                   ResolutionScheme.resonant(n, k, wavelength)):
        curve = sample_curve(scheme.rate(), phi)
        rows.append({
            "scheme": scheme.variant,
            "N": 1 if scheme.N is None else scheme.N,
            "k": 0 if scheme.k is None else scheme.k,
            "lambda": wavelength,
            "resolution": effective_resolution(scheme),
            "fringe_halfperiod": fringe_halfperiod(curve),
        })
    return rows


def _run_resolution(cfg, out):
    p = cfg.params
    rows = resolution_table(p["n"], p["k"], p["lambda"], max(cfg.samples, 2048))
    if cfg.format == "json":
        text = _json(rows)
    elif cfg.format == "csv":
        header = ["scheme", "N", "k", "lambda", "resolution", "fringe_halfperiod"]
        text = _csv(header, ([r["scheme"], str(r["N"]), str(r["k"])] +
                             [r[h] for h in header[3:]] for r in rows))
    else:
        raise CliError(EXIT_USAGE, "resolution emits a table; use --format csv or json")
    _write(cfg.output, text, out)


def _run_pattern(cfg, out):
    p = cfg.params
    if cfg.recipe:
        recipe = SuperpositionRecipe.from_json(_read_json(cfg.recipe))
    else:
        recipe = sinphi_recipe(p["n-max"], p["gamma"], p["t"])
    phi = cfg.grid()
    curve = exposure_curve(recipe, phi)
    _emit_curve(cfg, phi, {"value": curve.values}, "exposure pattern", out)


def _run_fit(cfg, out):
    p = cfg.params
    target = TargetCoeffs.from_json(_read_json(cfg.target))
    recipe = fit_target(target, p["gamma"], p["t"])
    _write(cfg.output, _json(recipe.to_json()), out)


def _run_figure1(cfg, out):
    outdir = Path(cfg.output or "figure1")
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot create {outdir}: {exc}") from None
    data = figure1_data(FIGURE1_N, math.pi / 4, 1.0, cfg.samples)
    phi = data["phi"]
    for row in data["fits"]:
        _write(outdir / f"sinphi_nmax{row['n_max']}.csv",
               _csv(["phi", "value"], zip(phi, row["curve"].values)))
        _write(outdir / f"sinphi_nmax{row['n_max']}.json", _json(row["recipe"].to_json()))
    _write(outdir / "sinphi_reference.csv", _csv(["phi", "value"], zip(phi, data["reference"])))
    summary = _csv(["n_max", "rms", "sup"],
                   ([str(r["n_max"]), r["rms"], r["sup"]] for r in data["fits"]))
    _write(outdir / "summary.csv", summary)
    from litho_sim.plotting import plot_figure1

    try:
        plot_figure1(data, outdir / "figure1.png")
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write figure: {exc}") from None
    if cfg.format == "svg":
        _write(outdir / "figure1.svg", polyline_svg(
            [("|sin phi|", phi, data["reference"])]
            + [(f"N={r['n_max']}", phi, r["curve"].values) for r in data["fits"]],
            title="|sin phi| pattern synthesis"))
    (out or sys.stdout).write(summary)


def _run_verify(cfg, out):
    from litho_sim.verify import oracle_sweep

    result = oracle_sweep(n_max=cfg.params.get("n-max", 12))
    if cfg.format == "csv":
        text = _csv(list(result), [[str(v) if isinstance(v, (bool, int)) else v
                                    for v in result.values()]])
    else:
        text = _json(result)
    _write(cfg.output, text, out)
    if not result["passed"]:
        raise CliError(EXIT_VERIFY, "oracle equivalence violated: max |closed form - oracle| "
                       f"= {max(result['max_abs_diff_expectation'], result['max_abs_diff_matrix_element']):.3g}"
                       f" > {result['tolerance']:g}")


RUNNERS = {
    "deposition": _run_deposition,
    "matrix-element": _run_matrix_element,
    "resonant": _run_resonant,
    "resolution": _run_resolution,
    "pattern": _run_pattern,
    "fit": _run_fit,
    "figure1": _run_figure1,
    "verify": _run_verify,
}


def run(cfg: RunConfig, out=None) -> int:
    try:
        RUNNERS[cfg.command](cfg, out)
    except LithoError as exc:
        raise CliError(EXIT_PRECONDITION, f"{type(exc).__name__}: {exc}") from None
    return EXIT_OK


def main(argv=None) -> int:
    try:
        return run(parse_config(argv))
    except CliError as exc:
        print(f"litho-sim: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
