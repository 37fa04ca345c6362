"""Command-line driver: figure presets, key=value configs, CSV output.

Exit codes: 0 success, 1 usage error, 2 numeric error.
"""

from __future__ import annotations

import argparse
import dataclasses
import datetime
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .errors import DomainError, NumericError, UsageError
from .evolution import EvolutionParams, evolve_series
from .lineshape import LineshapeParams, decay_rate
from .spin_model import NUCLEI, FieldConfig, Nucleus, SpinGeometry, spectrum

CSV_HEADER = "t_seconds,rho_complete,rho_markov"
LONG_WINDOW_DECAYS = 5.0  # t_end = 5 / (2 gamma_-1)
SHORT_WINDOW_WIDTHS = 10.0  # t_end = 10 / delta


@dataclass(frozen=True)
class RunConfig:
    nucleus: str | float  # preset name or magnetic moment in nuclear magnetons
    h_z: float  # Oe
    h_1: float  # Oe
    delta: float = 1e6  # s^-1
    theta: float = 30.0  # deg
    phi: float = 0.0  # deg
    r: float = 2e-9  # cm
    t_start: float = 0.0
    t_end: float | None = None
    n_points: int = 500
    window: str = "long"
    output: str | None = None
    emit_plot: bool = False

    def nucleus_obj(self) -> Nucleus:
        if isinstance(self.nucleus, str):
            return NUCLEI[self.nucleus]
        return Nucleus("custom", float(self.nucleus))

    def geometry(self) -> SpinGeometry:
        return SpinGeometry(self.r, math.radians(self.theta), math.radians(self.phi))

    def fields(self) -> FieldConfig:
        return FieldConfig(self.h_z, self.h_1)

    def evolution_params(self) -> EvolutionParams:
        return EvolutionParams.from_system(self.nucleus_obj(), self.geometry(), self.fields(), self.delta)


_SHARED = dict(h_z=1e4, delta=1e6, theta=30.0, phi=0.0, r=2e-9, t_start=0.0, n_points=500)
PRESETS = {
    "fig1a": dict(_SHARED, nucleus="H1", h_1=25.0, window="long"),
    "fig1b": dict(_SHARED, nucleus="H1", h_1=37.0, window="long"),
    "fig2": dict(_SHARED, nucleus="H1", h_1=1.0, window="short"),
    "fig3a": dict(_SHARED, nucleus="C13", h_1=100.0, window="long"),
    "fig3b": dict(_SHARED, nucleus="C13", h_1=150.0, window="long"),
    "fig4": dict(_SHARED, nucleus="C13", h_1=1.0, window="short"),
}

_FIELDS = {f.name: f for f in dataclasses.fields(RunConfig)}
_REQUIRED = ("nucleus", "h_z", "h_1")


def _convert(key, raw):
    raw = raw.strip()
    try:
        if key == "nucleus":
            return raw if raw in NUCLEI else float(raw)
        if key == "n_points":
            return int(raw)
        if key == "emit_plot":
            if raw.lower() in ("1", "true", "yes", "on"):
                return True
            if raw.lower() in ("0", "false", "no", "off"):
                return False
            raise ValueError(raw)
        if key == "window":
            if raw not in ("long", "short"):
                raise ValueError(raw)
            return raw
        if key == "output":
            return raw or None
        if key == "t_end" and raw.lower() in ("", "auto", "none"):
            return None
        value = float(raw)
    except ValueError:
        raise UsageError(f"invalid value for {key!r}: {raw!r}") from None
    if not math.isfinite(value):
        raise UsageError(f"invalid value for {key!r}: {raw!r}")
    return value


def parse_pairs(lines, source="config"):
    """Flat ``key=value`` lines; blank lines and ``#`` comments are skipped."""
    out = {}
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{source}:{n}: expected key=value, got {line!r}")
        key, raw = (s.strip() for s in line.split("=", 1))
        if key not in _FIELDS:
            raise UsageError(f"{source}:{n}: unknown key {key!r}")
        out[key] = _convert(key, raw)
    return out


def resolve_t_end(values):
    if values.get("t_end") is not None:
        return values["t_end"]
    cfg = RunConfig(**{**values, "t_end": 0.0})
    params = cfg.evolution_params()
    if values.get("window", "long") == "short":
        return SHORT_WINDOW_WIDTHS / cfg.delta
    if params.gamma_minus1 == 0:
        raise UsageError("t_end: long window needs h_1 > 0; set t_end or window=short")
    return LONG_WINDOW_DECAYS / (2 * params.gamma_minus1)


def validate(values) -> RunConfig:
    for key in _REQUIRED:
        if key not in values:
            raise UsageError(f"missing required key {key!r}")
    checks = [
        ("h_z", values["h_z"] > 0),
        ("h_1", values["h_1"] >= 0),
        ("delta", values.get("delta", 1.0) > 0),
        ("r", values.get("r", 1.0) > 0),
        ("theta", 0 <= values.get("theta", 0.0) <= 180),
        ("phi", 0 <= values.get("phi", 0.0) < 360),
        ("t_start", values.get("t_start", 0.0) >= 0),
        ("n_points", values.get("n_points", 2) >= 2),
    ]
    nucleus = values["nucleus"]
    checks.append(("nucleus", isinstance(nucleus, str) or nucleus >= 0))
    for key, ok in checks:
        if not ok:
            raise UsageError(f"invalid value for {key!r}: {values[key]!r}")
    try:
        values = {**values, "t_end": resolve_t_end(values)}
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    if not values["t_end"] > values.get("t_start", 0.0):
        raise UsageError(f"invalid value for 't_end': must exceed t_start, got {values['t_end']!r}")
    return RunConfig(**values)


def parse_config(path=None, preset=None, overrides=()) -> RunConfig:
    """Merge preset < config file < ``key=value`` overrides, then validate."""
    values = {}
    if preset is not None:
        if preset not in PRESETS:
            raise UsageError(f"unknown preset {preset!r}; choose from {', '.join(PRESETS)}")
        values.update(PRESETS[preset])
    if path is not None:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read config {path}: {exc}") from None
        values.update(parse_pairs(text.splitlines(), source=str(path)))
    values.update(parse_pairs(overrides, source="--set"))
    return validate(values)


def _fmt(value):
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    return "" if value is None else str(value)


def format_config(cfg: RunConfig) -> str:
    return "".join(f"{f}={_fmt(getattr(cfg, f))}\n" for f in _FIELDS)


def _num(x):
    return format(float(x), ".17g")


def run(cfg: RunConfig, reproducible=False) -> str:
    """CSV document: ``#`` metadata block, header, one row per grid point."""
    params = cfg.evolution_params()
    spec = spectrum(cfg.nucleus_obj(), cfg.geometry(), cfg.fields())
    grid = np.linspace(cfg.t_start, cfg.t_end, cfg.n_points)
    try:
        series = evolve_series(grid, params)
    except NumericError as exc:
        raise NumericError(f"{exc} [config: {format_config(cfg).strip().replace(chr(10), ', ')}]") from exc

    meta = [f"twospin {__version__}"]
    if not reproducible:
        meta.append(f"generated={datetime.datetime.now(datetime.timezone.utc).isoformat()}")
    # where the file goes is not part of the run, so identical runs stay byte-identical
    meta += [ln for ln in format_config(cfg).splitlines() if not ln.startswith("output=")]
    meta += [
        f"gamma_n={_num(spec.gamma_n)}",
        f"delta_e23={_num(spec.de23)}",
        f"gamma_minus1={_num(params.gamma_minus1)}",
        f"kappa={_num(params.kappa)}",
        f"omega0_over_delta={_num(params.omega0 / params.delta)}",
        "t_end_rule=long: 5/(2 gamma_minus1), short: 10/delta, unless t_end is given",
    ]
    lines = [f"# {m}" for m in meta] + [CSV_HEADER]
    lines += [
        f"{_num(t)},{_num(c)},{_num(m)}"
        for t, c, m in zip(series.times, series.rho_complete, series.rho_markov)
    ]
    return "\n".join(lines) + "\n"


def report_spectrum(cfg: RunConfig) -> str:
    spec = spectrum(cfg.nucleus_obj(), cfg.geometry(), cfg.fields())
    gamma = decay_rate(spec.gamma_n, cfg.h_1, LineshapeParams(spec.de23, cfg.delta))
    rows = [
        ("gamma_n", spec.gamma_n, "rad s^-1 G^-1"),
        ("E1", spec.e1, "rad s^-1"),
        ("E2", spec.e2, "rad s^-1"),
        ("E3", spec.e3, "rad s^-1"),
        ("E4", spec.e4, "rad s^-1"),
        ("dE12", spec.de12, "rad s^-1"),
        ("dE23", spec.de23, "rad s^-1"),
        ("gamma_minus1", gamma, "s^-1"),
        ("omega0/delta", spec.de23 / cfg.delta, ""),
        ("zeno_scale_1/delta", 1.0 / cfg.delta, "s"),
    ]
    return "".join(f"{name:<20s}{value:>20.10e}  {unit}\n" for name, value, unit in rows)


PLOT_TEMPLATE = '''\
"""Plot {csv} (complete vs Markovian survival element)."""
import matplotlib.pyplot as plt
import numpy as np

data = np.genfromtxt({csv!r}, delimiter=",", names=True, comments="#")
plt.plot(data["t_seconds"], data["rho_complete"], "-", label="complete")
plt.plot(data["t_seconds"], data["rho_markov"], "--", label="exp(-2 gamma t)")
plt.xlabel("t [s]")
plt.ylabel("<-1|rho(t)|-1>")
plt.legend()
plt.savefig({png!r}, dpi=150)
'''


def plot_script(csv_path) -> str:
    csv_path = Path(csv_path)
    return PLOT_TEMPLATE.format(csv=csv_path.name, png=csv_path.with_suffix(".png").name)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    p = _Parser(prog="twospin", description="Survival element of the spin -1 level of a driven nuclear pair.")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--config", help="flat key=value file")
    p.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE")
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.add_argument("--reproducible", action="store_true", help="omit the timestamp line")
    p.add_argument("--spectrum", action="store_true", help="print energy levels and rates instead")
    p.add_argument("--version", action="version", version=f"twospin {__version__}")
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.preset is None and args.config is None and not args.overrides:
            raise UsageError("give --preset, --config or --set")
        cfg = parse_config(args.config, args.preset, args.overrides)
        if args.out:
            cfg = dataclasses.replace(cfg, output=args.out)
        if args.spectrum:
            sys.stdout.write(report_spectrum(cfg))
            return 0
        if cfg.emit_plot and not cfg.output:
            raise UsageError("emit_plot needs an output path")
        text = run(cfg, reproducible=args.reproducible)
        if cfg.output:
            out = Path(cfg.output)
            out.write_bytes(text.encode())
            if cfg.emit_plot:
                out.with_suffix(".plot.py").write_text(plot_script(out))
        else:
            sys.stdout.write(text)
        return 0
    except UsageError as exc:
        print(f"twospin: usage error: {exc}", file=sys.stderr)
        return 1
    except NumericError as exc:
        print(f"twospin: numeric error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
