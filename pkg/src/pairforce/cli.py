"""Command-line front end.

Commands
--------
force             per-separation component sweep -> CSV/JSON dataset
verify-integrand  rebuild the ladder integrands and check them exactly
ratio             detection-ratio sweep
crossover         separation where the selected ratio reaches 1
trajectory        quasi-static trajectory under the selected force

Configuration is a sectioned INI-style file; every key can also be given on
the command line as ``--section.key value``.  Unknown sections or keys are
errors.  Output files are byte-deterministic for a given config and package
version and start with comment lines carrying the version and a config hash.
"""

from __future__ import annotations

import argparse
import configparser
import hashlib
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from . import __version__, analysis, dispersion, dynamics, entanglement, ladder, units
from .errors import (ConfigError, ConvergenceError, DomainError,
                     IntegrandMismatchError, NumericsError, PairforceError,
                     UnsupportedError)
from .model import (AtomSpec, BathSpec, ComponentSelection, PairConfig,
                    SqueezeState, ZERO_TEMPERATURE, COMPONENT_NAMES)
from .quadrature import QuadratureSpec

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICS = 2
EXIT_VERIFY = 3


# --- schema --------------------------------------------------------------------

def _posfloat(s: str) -> float:
    v = float(s)
    if not v > 0:
        raise ValueError("must be positive")
    return v


def _nonzero(s: str) -> float:
    v = float(s)
    if v == 0:
        raise ValueError("must be nonzero")
    return v


def _posint(s: str) -> int:
    v = int(s)
    if v <= 0:
        raise ValueError("must be a positive integer")
    return v


def _temperature(s: str) -> float:
    """Kelvin, or the word 'zero' for the zero-temperature marker."""
    if s.strip().lower() == "zero":
        return ZERO_TEMPERATURE
    return units.to_internal_inverse_temperature(_posfloat(s))


def _floatlist(s: str) -> tuple:
    return tuple(_posfloat(p) for p in s.split(","))


def _namelist(s: str) -> tuple:
    return tuple(p.strip() for p in s.split(",") if p.strip())


def _choice(*options):
    def parse(s: str) -> str:
        if s not in options:
            raise ValueError(f"must be one of {', '.join(options)}")
        return s
    return parse


_ATOM_KEYS = {
    "omega_eV": _posfloat,
    "reduced_mass_eV": _posfloat,
    "charge_e": _nonzero,
    "total_mass_eV": _posfloat,
    "temperature_K": _temperature,
}

SCHEMA = {
    "atom1": _ATOM_KEYS,
    "atom2": _ATOM_KEYS,
    "field": {"temperature_K": _temperature},
    "squeeze": {
        "alpha_tilde": _posfloat, "beta_tilde": _posfloat,
        "alpha_tilde_x": _posfloat, "alpha_tilde_y": _posfloat,
        "alpha_tilde_z": _posfloat,
        "beta_tilde_x": _posfloat, "beta_tilde_y": _posfloat,
        "beta_tilde_z": _posfloat,
    },
    "quadrature": {
        "eta": _posfloat, "eta_ladder": _floatlist,
        "pole_window": _posfloat, "panel_tol": _posfloat,
        "max_panels": _posint,
    },
    "sweep": {
        "z_min_nm": _posfloat, "z_max_nm": _posfloat,
        "points": _posint, "grid": _choice("linear", "log"),
    },
    "output": {"format": _choice("csv", "json"), "path": str},
    "force": {"components": _namelist},
    "ratio": {"kind": _choice("noneq_over_cp", "ent_over_london")},
    "crossover": {
        "kind": _choice("noneq_over_cp", "ent_over_london"),
        "prefactor": _posfloat,
        "z_lo_nm": _posfloat, "z_hi_nm": _posfloat,
    },
    "trajectory": {
        "z0_nm": _posfloat, "v0_c": float, "dt": _posfloat,
        "t_max": _posfloat, "z_min_nm": _posfloat, "components": _namelist,
    },
}


class RunConfig:
    """Validated, merged (file + command line) configuration."""

    def __init__(self, values: dict):
        self.values = values          # {(section, key): parsed value}

    @classmethod
    def load(cls, path: str | None, overrides: dict) -> "RunConfig":
        raw: dict = {}
        if path is not None:
            cp = configparser.ConfigParser(interpolation=None)
            try:
                with open(path) as fh:
                    cp.read_file(fh, source=path)
            except OSError as exc:
                raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
            except configparser.Error as exc:
                raise ConfigError(f"malformed config: {exc}") from exc
            for section in cp.sections():
                if section not in SCHEMA:
                    raise ConfigError(f"unknown config section [{section}]")
                for key, val in cp.items(section):
                    if key not in SCHEMA[section]:
                        raise ConfigError(
                            f"unknown key {section}.{key} "
                            f"(valid: {', '.join(SCHEMA[section])})")
                    raw[(section, key)] = val
        raw.update(overrides)

        values = {}
        for (section, key), val in raw.items():
            parser = SCHEMA[section][key]
            try:
                values[(section, key)] = parser(val)
            except (ValueError, DomainError) as exc:
                raise ConfigError(f"{section}.{key} = {val!r}: {exc}") from exc
        return cls(values)

    def get(self, section: str, key: str, default=None):
        return self.values.get((section, key), default)

    def require(self, section: str, key: str):
        try:
            return self.values[(section, key)]
        except KeyError:
            raise ConfigError(f"missing required key {section}.{key}") from None

    def has_section(self, section: str) -> bool:
        return any(s == section for s, _ in self.values)

    def sha256(self) -> str:
        lines = [f"{s}.{k}={self.values[(s, k)]!r}"
                 for s, k in sorted(self.values)]
        return hashlib.sha256("\n".join(lines).encode()).hexdigest()


# --- model assembly --------------------------------------------------------------

def _build_atom(cfg: RunConfig, section: str) -> AtomSpec:
    return AtomSpec(
        q=cfg.require(section, "charge_e") * units.ELEMENTARY_CHARGE_INTERNAL,
        mu=cfg.require(section, "reduced_mass_eV"),
        omega=cfg.require(section, "omega_eV"),
        total_mass=cfg.require(section, "total_mass_eV"),
        beta=cfg.get(section, "temperature_K", ZERO_TEMPERATURE),
    )


def _build_squeeze(cfg: RunConfig, atom: AtomSpec) -> SqueezeState | None:
    if not cfg.has_section("squeeze"):
        return None
    iso = [cfg.get("squeeze", k) for k in ("alpha_tilde", "beta_tilde")]
    axes = [cfg.get("squeeze", f"{p}_{ax}")
            for p in ("alpha_tilde", "beta_tilde") for ax in "xyz"]
    if any(v is not None for v in iso) and any(v is not None for v in axes):
        raise ConfigError("squeeze: give either the isotropic pair or all "
                          "six per-axis keys, not both")
    if any(v is not None for v in iso):
        if any(v is None for v in iso):
            raise ConfigError("squeeze: both alpha_tilde and beta_tilde required")
        return SqueezeState.from_tilde(iso[0], iso[1], atom.mu, atom.omega)
    if any(v is None for v in axes):
        raise ConfigError("squeeze: all six per-axis keys required")
    return SqueezeState.from_tilde(tuple(axes[:3]), tuple(axes[3:]),
                                   atom.mu, atom.omega)


def _build_pair(cfg: RunConfig, z: float) -> PairConfig:
    atom1 = _build_atom(cfg, "atom1")
    atom2 = _build_atom(cfg, "atom2")
    bath = BathSpec(beta=cfg.get("field", "temperature_K", ZERO_TEMPERATURE))
    squeeze = _build_squeeze(cfg, atom1)
    return PairConfig(atom1=atom1, atom2=atom2, bath=bath, z=z, squeeze=squeeze)


def _build_quadspec(cfg: RunConfig) -> QuadratureSpec:
    kw = {}
    for key in ("eta", "eta_ladder", "pole_window", "panel_tol", "max_panels"):
        val = cfg.get("quadrature", key)
        if val is not None:
            kw[key] = val
    return QuadratureSpec(**kw)


def _sweep_grid(cfg: RunConfig) -> np.ndarray:
    z_lo = units.to_internal_length(cfg.require("sweep", "z_min_nm"))
    z_hi = units.to_internal_length(cfg.require("sweep", "z_max_nm"))
    if not z_lo < z_hi:
        raise ConfigError("sweep: z_min_nm must be smaller than z_max_nm")
    points = cfg.require("sweep", "points")
    if cfg.get("sweep", "grid", "log") == "log":
        return np.geomspace(z_lo, z_hi, points)
    return np.linspace(z_lo, z_hi, points)


# --- dataset emission -------------------------------------------------------------

def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.11e}"
    return str(value)


def _emit(cfg: RunConfig, columns, rows, stream=None) -> None:
    fmt = cfg.get("output", "format", "csv")
    path = cfg.get("output", "path")
    header = [f"# pairforce {__version__}",
              f"# config-sha256 {cfg.sha256()}"]
    buf = io.StringIO()
    if fmt == "csv":
        for line in header:
            buf.write(line + "\n")
        buf.write(",".join(columns) + "\n")
        for row in rows:
            buf.write(",".join(_fmt(v) for v in row) + "\n")
    else:
        for line in header:
            buf.write(line + "\n")
        buf.write("[\n")
        for i, row in enumerate(rows):
            fields = []
            for name, v in zip(columns, row):
                if isinstance(v, float):
                    fields.append(f'"{name}": {_fmt(v)}')
                else:
                    fields.append(f'"{name}": {json.dumps(v)}')
            comma = "," if i + 1 < len(rows) else ""
            buf.write("  {" + ", ".join(fields) + "}" + comma + "\n")
        buf.write("]\n")
    text = buf.getvalue()
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        (stream or sys.stdout).write(text)


# --- commands -----------------------------------------------------------------------

_COMPONENT_COLUMNS = {
    "fA": "f_A", "fB": "f_B", "fC_integral": "f_C_integral",
    "delta_fC": "delta_f_C", "london_nearfield": "f_london",
    "cp_farfield": "f_cp_farfield", "noneq": "f_noneq",
    "entanglement": "f_ent",
}


def cmd_force(cfg: RunConfig, jobs: int = 1, stream=None) -> int:
    names = cfg.require("force", "components")
    sel = ComponentSelection.from_names(names)
    spec = _build_quadspec(cfg)
    zs = _sweep_grid(cfg)
    pair0 = _build_pair(cfg, float(zs[0]))

    columns = ["z_nm", "z_inv_eV"]
    for name in sel.active():
        col = _COMPONENT_COLUMNS[name]
        columns += [f"{col}_eV2", f"{col}_N"]
    columns += ["total_eV2", "total_N", "methods", "error"]

    def one(z: float):
        row = [units.to_lab_length(z), z]
        try:
            bd = dispersion.total_force(pair0.at(z), sel, spec)
        except PairforceError as exc:
            row += [math.nan, math.nan] * len(sel.active())
            row += [math.nan, math.nan, "", str(exc)]
            return row
        for name in sel.active():
            v = bd.value_of(name)
            row += [v, units.force_to_newton(v)]
        row += [bd.total, units.force_to_newton(bd.total),
                ";".join(f"{k}={v}" for k, v in sorted(bd.methods.items())),
                ""]
        return row

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(one, [float(z) for z in zs]))
    else:
        rows = [one(float(z)) for z in zs]
    _emit(cfg, columns, rows, stream)
    return EXIT_OK


def cmd_verify_integrand(stream=None) -> int:
    out = stream or sys.stdout
    status = EXIT_OK
    try:
        series = ladder.derive_fc_integrand()
        out.write("PASS combined frequency bracket\n")
        out.write(f"  {series.to_text()}\n")
    except IntegrandMismatchError as exc:
        status = EXIT_VERIFY
        out.write("FAIL combined frequency bracket\n")
        for key, (want, got) in exc.diff.items():
            out.write(f"  term {key}: expected {want}, got {got}\n")
    out.write(f"  convention: {ladder.BRACKET_CONVENTION}\n")

    kern = entanglement.kernel_series()
    expected = ladder.TrigSeries([(1, 3, -1, "sin", 1), (1, 2, -2, "cos", 1)])
    d, coeffs = kern.laurent_x(2)
    lead = (coeffs.get(-2), coeffs.get(0))
    if kern == expected and d == 4 and lead == (Fraction(1), Fraction(1, 2)):
        out.write("PASS entanglement kernel\n")
        out.write(f"  {kern.to_text()}\n")
        out.write("  small-separation expansion: w^4 (x^-2 + 1/2 + O(x^2))\n")
    else:
        status = EXIT_VERIFY
        out.write(f"FAIL entanglement kernel: got {kern.to_text()}\n")
    return status


def cmd_ratio(cfg: RunConfig, stream=None) -> int:
    kind = cfg.require("ratio", "kind")
    zs = _sweep_grid(cfg)
    pair0 = _build_pair(cfg, float(zs[0]))
    rows = []
    if kind == "noneq_over_cp":
        columns = ["z_nm", "z_inv_eV", "ratio"]
        for z in zs:
            rows.append([units.to_lab_length(float(z)), float(z),
                         analysis.ratio_noneq(pair0, float(z))])
    else:
        columns = ["z_nm", "z_inv_eV", "ratio_internal", "ratio_printed",
                   "prefactor_printed"]
        for z in zs:
            r = analysis.ratio_entanglement(pair0, float(z))
            rows.append([units.to_lab_length(float(z)), float(z),
                         r.ratio_internal, r.ratio_printed,
                         r.prefactor_printed])
    _emit(cfg, columns, rows, stream)
    return EXIT_OK


def cmd_crossover(cfg: RunConfig, stream=None) -> int:
    kind = cfg.require("crossover", "kind")
    prefactor = cfg.get("crossover", "prefactor")
    columns = ["kind", "path", "z_star_nm", "validity"]
    rows = []
    if prefactor is not None:
        z_nm = analysis.crossover_from_prefactor(prefactor)
        note = ("near-field check requires max(Omega) z << 1 for the "
                "configured atoms")
        rows.append([kind, "printed-prefactor", z_nm, note])
    else:
        pair = _build_pair(cfg, 1.0)
        kw = {}
        if cfg.get("crossover", "z_lo_nm") is not None:
            kw["z_lo"] = units.to_internal_length(cfg.get("crossover", "z_lo_nm"))
        if cfg.get("crossover", "z_hi_nm") is not None:
            kw["z_hi"] = units.to_internal_length(cfg.get("crossover", "z_hi_nm"))
        c = analysis.crossover_distance(kind, pair, **kw)
        validity = ("inside near-field window" if c.in_near_field_window
                    else "outside near-field window")
        rows.append([kind, "internal-units", c.z_nm, validity])
    _emit(cfg, columns, rows, stream)
    for row in rows:
        (stream or sys.stdout).write(
            f"# z* = {row[2]:.6f} nm ({row[1]}; {row[3]})\n")
    return EXIT_OK


def cmd_trajectory(cfg: RunConfig, stream=None) -> int:
    names = cfg.get("trajectory", "components")
    if names is None:
        raise ConfigError("missing required key trajectory.components")
    sel = ComponentSelection.from_names(names)
    spec = _build_quadspec(cfg)
    z0 = units.to_internal_length(cfg.require("trajectory", "z0_nm"))
    pair = _build_pair(cfg, z0)
    z_min = cfg.get("trajectory", "z_min_nm")
    z_min = units.to_internal_length(z_min) if z_min is not None else None
    result = dynamics.integrate(
        pair, sel, z0,
        v0=cfg.require("trajectory", "v0_c"),
        dt=cfg.require("trajectory", "dt"),
        t_max=cfg.require("trajectory", "t_max"),
        spec=spec, z_min=z_min)
    columns = ["t_inv_eV", "z_inv_eV", "z_nm", "v_c", "f_eV2"]
    rows = [[s.t, s.z, units.to_lab_length(s.z), s.v, s.f]
            for s in result.states]
    _emit(cfg, columns, rows, stream)
    out = stream or sys.stdout
    out.write(f"# halt: {result.halt_reason}\n")
    for w in result.warnings:
        out.write(f"# warning: {w}\n")
    if result.error:
        out.write(f"# error: {result.error}\n")
        return EXIT_NUMERICS
    return EXIT_OK


# --- entry point -------------------------------------------------------------------

def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pairforce",
        description="Interatomic dispersion, nonequilibrium and entanglement forces")
    parser.add_argument("--version", action="version",
                        version=f"pairforce {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("force", "ratio", "crossover", "trajectory"):
        p = sub.add_parser(name)
        p.add_argument("--config", help="sectioned config file")
        p.add_argument("--jobs", type=int, default=1,
                       help="parallel sweep evaluation (row order is "
                            "deterministic regardless)")
        for section, keys in SCHEMA.items():
            for key in keys:
                p.add_argument(f"--{section}.{key}", dest=f"{section}.{key}",
                               metavar="V", help=argparse.SUPPRESS)
    sub.add_parser("verify-integrand")
    return parser


def main(argv=None) -> int:
    args = _make_parser().parse_args(argv)
    try:
        if args.command == "verify-integrand":
            return cmd_verify_integrand()
        overrides = {}
        for section, keys in SCHEMA.items():
            for key in keys:
                val = getattr(args, f"{section}.{key}", None)
                if val is not None:
                    overrides[(section, key)] = val
        cfg = RunConfig.load(args.config, overrides)
        if args.command == "force":
            return cmd_force(cfg, jobs=args.jobs)
        if args.command == "ratio":
            return cmd_ratio(cfg)
        if args.command == "crossover":
            return cmd_crossover(cfg)
        if args.command == "trajectory":
            return cmd_trajectory(cfg)
        raise ConfigError(f"unknown command {args.command!r}")
    except (ConfigError, DomainError, UnsupportedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ConvergenceError, NumericsError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICS
    except IntegrandMismatchError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
