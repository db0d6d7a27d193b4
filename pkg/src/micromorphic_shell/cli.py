"""Command-line front end.

Modes
-----
solve    one closed-form profile written as CSV (stdout when no output is given)
sweep    one profile per value of a chosen dimensionless key
figures  the built-in parametric studies, one directory per figure
verify   residual, finite-difference and energy checks with thresholds

Settings come from an optional ``key = value`` file (``--config``) and from
flags of the same names; flags win. Exit codes: 0 success, 1 verification
failure, 2 configuration error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import datasets
from .errors import ConditioningError, DomainError, OracleError, ValidationError
from .material import DimensionlessSet, from_dimensionless
from .presets import FIGURES, get_figure
from .solver import BoundaryData, ShellGeometry, evaluate, profile, solve_coefficients
from .verification import RADIAL, SHEAR, energy_check, fd_energy, fd_error, fd_solve, format_report, residual_check

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3
MODES = ("solve", "sweep", "verify", "figures")
SHAPE_KEYS = ("g1", "g2", "g3", "beta", "lc_ratio")

# verify thresholds
RESIDUAL_TOL = 1e-7
BC_TOL = 1e-9
FD_TOL = 1e-3
FD_SAMPLES = 1024
ENERGY_TOL = 1e-3


class ConfigError(ValueError):
    pass


def _parse_bool(s):
    v = str(s).strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {s!r}")


def _parse_values(s):
    return tuple(float(v) for v in str(s).replace(",", " ").split())


@dataclass
class RunConfig:
    mode: str
    samples: int = 1001
    output: str | None = None
    figure: int | None = None
    raw: bool = False
    g1: float | None = None
    g2: float | None = None
    g3: float | None = None
    beta: float | None = None
    lc_ratio: float | None = None
    delta: float | None = None
    mu_M: float = 1.0
    r_o: float = 1.0
    mu_c: float = 0.0
    U_o: float = 1.0
    sweep: str | None = None
    values: tuple | None = None


PARSERS = {
    "mode": str,
    "samples": int,
    "output": str,
    "figure": int,
    "raw": _parse_bool,
    "sweep": str,
    "values": _parse_values,
}
PARSERS.update({k: float for k in ("g1", "g2", "g3", "beta", "lc_ratio", "delta", "mu_M", "r_o", "mu_c", "U_o")})
KEYS = tuple(f.name for f in dataclasses.fields(RunConfig))


def _convert(key, raw):
    try:
        return PARSERS[key](raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad value for {key!r}: {raw!r} ({exc})") from None


def read_config_file(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, value = (t.strip() for t in line.split("=", 1))
        if key not in PARSERS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = _convert(key, value)
    return out


def build_config(file_values: dict, flag_values: dict) -> RunConfig:
    merged = {**file_values, **{k: v for k, v in flag_values.items() if v is not None}}
    if "mode" not in merged:
        raise ConfigError("missing required key 'mode'")
    if merged["mode"] not in MODES:
        raise ConfigError(f"mode must be one of {MODES}, got {merged['mode']!r}")
    cfg = RunConfig(**merged)
    if cfg.samples < 2:
        raise ConfigError(f"samples must be >= 2, got {cfg.samples}")
    if cfg.figure is not None and cfg.figure not in FIGURES:
        raise ConfigError(f"unknown figure {cfg.figure}; available: {sorted(FIGURES)}")
    if cfg.mode == "figures" and cfg.figure is None:
        raise ConfigError("missing required key 'figure' for mode 'figures'")
    if cfg.mode == "sweep":
        if cfg.sweep is None:
            raise ConfigError("missing required key 'sweep' for mode 'sweep'")
        if cfg.sweep not in SHAPE_KEYS + ("delta",):
            raise ConfigError(f"sweep must name one of {SHAPE_KEYS + ('delta',)}, got {cfg.sweep!r}")
        if not cfg.values:
            raise ConfigError("missing required key 'values' for mode 'sweep'")
    if cfg.U_o == 0 and not cfg.raw and cfg.mode != "verify":
        raise ConfigError("U_o = 0 leaves the normalized output undefined; set raw = true")
    if cfg.mode in ("solve", "verify", "sweep"):
        shape = shape_values(cfg)
        missing = [k for k in SHAPE_KEYS if shape.get(k) is None and k != cfg.sweep]
        if missing:
            raise ConfigError(f"missing required key{'s' if len(missing) > 1 else ''}: {', '.join(missing)}")
    return cfg


def shape_values(cfg: RunConfig) -> dict:
    """Dimensionless keys, with gaps filled from the figure preset (first curve) when one is named."""
    explicit = {k: getattr(cfg, k) for k in SHAPE_KEYS}
    explicit["delta"] = cfg.delta
    if cfg.figure is not None:
        preset = get_figure(cfg.figure)
        base = {**preset.fixed, preset.key: preset.values[0]}
        explicit = {k: (v if v is not None else base.get(k)) for k, v in explicit.items()}
    if explicit["delta"] is None:
        explicit["delta"] = 0.0
    return explicit


@dataclass(frozen=True)
class Case:
    shape: DimensionlessSet
    params: object
    geometry: ShellGeometry
    boundary: BoundaryData


def make_case(cfg: RunConfig, **override) -> Case:
    vals = {**shape_values(cfg), **override}
    g = DimensionlessSet(**vals)
    p = from_dimensionless(g, mu_M=cfg.mu_M, r_o=cfg.r_o, mu_c=cfg.mu_c)
    geom = ShellGeometry(g.beta * cfg.r_o, cfg.r_o)
    bc = BoundaryData(g.delta * cfg.U_o, cfg.U_o)
    return Case(g, p, geom, bc)


def boundary_residual(case: Case, coeffs) -> float:
    """Largest violated boundary condition, relative to max(|U_i|, |U_o|)."""
    geom, bc = case.geometry, case.boundary
    s = evaluate(case.params, geom, coeffs, np.array([geom.r_i, geom.r_o]))
    targets = np.array([bc.U_i, bc.U_o])
    res = np.concatenate([s.u_r - targets, s.P_tt - targets / s.r])
    scale = max(abs(bc.U_i), abs(bc.U_o))
    worst = float(np.max(np.abs(res)))
    return worst / scale if scale > 0 else worst


def _solve(case: Case, corrupt: float | None = None):
    coeffs = solve_coefficients(case.params, case.geometry, case.boundary)
    if corrupt is not None:
        coeffs = dataclasses.replace(coeffs, C1=coeffs.C1 * corrupt)
    return coeffs


# ------------------------------------------------------------------ modes


def run_solve(cfg: RunConfig, out=sys.stdout, err=sys.stderr) -> int:
    case = make_case(cfg)
    coeffs = _solve(case)
    prof = profile(case.params, case.geometry, case.boundary, cfg.samples, coeffs=coeffs)
    try:
        header, cols = datasets.profile_columns(prof, cfg.raw)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    text = datasets.render_csv(header, cols)
    summary = (
        f"C1={coeffs.C1:.12e} C2={coeffs.C2:.12e} C3={coeffs.C3:.12e} "
        f"D1={coeffs.D1:.12e} D2={coeffs.D2:.12e} bc_residual={boundary_residual(case, coeffs):.3e}"
    )
    if cfg.output is None:
        out.write(text)
        print(summary, file=err)
    else:
        datasets.write_text(Path(cfg.output), text)
        print(summary, file=out)
        print(f"wrote {len(prof)} rows to {cfg.output}", file=out)
    return EXIT_OK


def _label(key, value) -> str:
    return f"{key}_{value:g}"


def write_study(outdir: Path, cfg: RunConfig, key: str, values, fixed: dict, header: dict) -> list[str]:
    """One CSV per swept value, classical baselines and a metadata sidecar."""
    outdir.mkdir(parents=True, exist_ok=True)
    meta = dict(header)
    meta["swept_key"] = key
    meta["swept_values"] = [float(v) for v in values]
    for k in ("g1", "g2", "g3", "beta", "lc_ratio", "delta"):
        if k != key and k in fixed:
            meta[k] = float(fixed[k])
    meta.update(mu_M=cfg.mu_M, r_o=cfg.r_o, U_o=cfg.U_o, mu_c=cfg.mu_c, samples=cfg.samples)
    meta["normalization"] = "r / r_o, u_r / U_o, delta = (u_r - u_r_classical) / U_o"

    # the classical curve depends on geometry and boundary data only
    per_curve_classical = key in ("beta", "delta")
    files = []
    for v in values:
        case = make_case(cfg, **{**fixed, key: float(v)})
        prof = profile(case.params, case.geometry, case.boundary, cfg.samples, coeffs=_solve(case))
        name = _label(key, v) + ".csv"
        datasets.write_profile_csv(outdir / name, prof, cfg.raw)
        files.append(name)
        tag = f"curve[{_label(key, v)}]"
        p, c = case.params, prof.coefficients
        meta[f"{tag}.file"] = name
        for attr in ("mu_e", "lambda_e", "mu_m", "lambda_m", "L_c", "kappa_M"):
            meta[f"{tag}.{attr}"] = float(getattr(p, attr))
        for attr in ("C1", "C2", "C3", "D1", "D2"):
            meta[f"{tag}.{attr}"] = float(getattr(c, attr))
        if prof.delta is not None:
            meta[f"{tag}.max_abs_delta"] = float(np.max(np.abs(prof.delta)))

        if per_curve_classical or v == values[0]:
            cname = ("classical_" + _label(key, v) if per_curve_classical else "classical") + ".csv"
            ro, Uo = case.geometry.r_o, case.boundary.U_o
            if cfg.raw or Uo == 0:
                cols = (("r", "u_r_classical"), [prof.r, prof.u_classical])
            else:
                cols = (datasets.CLASSICAL_HEADER, [prof.r / ro, prof.u_classical / Uo])
            datasets.write_text(outdir / cname, datasets.render_csv(*cols))
            meta[f"classical[{_label(key, v)}].file" if per_curve_classical else "classical.file"] = cname
            files.append(cname)
    datasets.write_text(outdir / "metadata.txt", datasets.render_metadata(meta))
    files.append("metadata.txt")
    return files


def run_figures(cfg: RunConfig, out=sys.stdout) -> int:
    preset = get_figure(cfg.figure)
    outdir = Path(cfg.output or f"figure_{preset.figure}")
    header = dict(figure=preset.figure, title=preset.title, values_source=preset.source)
    files = write_study(outdir, cfg, preset.key, preset.values, preset.fixed, header)
    print(f"figure {preset.figure}: wrote {len(files)} files to {outdir}", file=out)
    return EXIT_OK


def run_sweep(cfg: RunConfig, out=sys.stdout) -> int:
    outdir = Path(cfg.output or f"sweep_{cfg.sweep}")
    fixed = {k: v for k, v in shape_values(cfg).items() if v is not None}
    header = dict(title=f"sweep over {cfg.sweep}", values_source="user configuration")
    files = write_study(outdir, cfg, cfg.sweep, cfg.values, fixed, header)
    print(f"sweep {cfg.sweep}: wrote {len(files)} files to {outdir}", file=out)
    return EXIT_OK


def verify_metrics(cfg: RunConfig, corrupt: float | None = None) -> dict:
    case = make_case(cfg)
    p, geom, bc = case.params, case.geometry, case.boundary
    coeffs = _solve(case, corrupt)
    m = {"bc_residual": boundary_residual(case, coeffs)}
    c3_ref = coeffs.C2 * p.mu_m / (p.mu_e + p.mu_m)
    m["c3_constraint"] = abs(coeffs.C3 - c3_ref) / max(abs(c3_ref), abs(coeffs.C2), 1e-300) if coeffs.C2 else abs(coeffs.C3)
    rep = residual_check(p, geom, coeffs)
    for eq in RADIAL + SHEAR:
        m[f"residual_{eq}"] = rep.normalized[eq]
    m[f"fd_error_n{FD_SAMPLES}"] = fd_error(p, geom, bc, FD_SAMPLES, coeffs)
    e_an = energy_check(p, geom, bc, coeffs=coeffs)
    e_fd = fd_energy(p, fd_solve(p, geom, bc, FD_SAMPLES))
    m["energy_analytic"] = e_an
    m["energy_fd"] = e_fd
    m["energy_rel_diff"] = abs(e_an - e_fd) / e_an if e_an > 0 else abs(e_fd)
    return m


def verify_failures(m: dict) -> list[str]:
    fails = []

    def need(key, ok, rule):
        if not ok:
            fails.append(f"{key} = {m[key]:.6e} violates {rule}")

    need("bc_residual", m["bc_residual"] <= BC_TOL, f"<= {BC_TOL:g}")
    need("c3_constraint", m["c3_constraint"] <= BC_TOL, f"<= {BC_TOL:g}")
    for eq in RADIAL:
        need(f"residual_{eq}", m[f"residual_{eq}"] <= RESIDUAL_TOL, f"<= {RESIDUAL_TOL:g}")
    for eq in SHEAR:
        need(f"residual_{eq}", m[f"residual_{eq}"] == 0, "== 0")
    key = f"fd_error_n{FD_SAMPLES}"
    need(key, m[key] <= FD_TOL, f"<= {FD_TOL:g}")
    need("energy_analytic", m["energy_analytic"] >= 0, ">= 0")
    need("energy_rel_diff", m["energy_rel_diff"] <= ENERGY_TOL, f"<= {ENERGY_TOL:g}")
    return fails


def run_verify(cfg: RunConfig, corrupt: float | None = None, out=sys.stdout) -> int:
    m = verify_metrics(cfg, corrupt)
    fails = verify_failures(m)
    out.write(format_report(m))
    if fails:
        for f in fails:
            print(f"FAIL {f}", file=out)
        print("status: fail", file=out)
        return EXIT_VERIFY
    print("status: pass", file=out)
    return EXIT_OK


# ------------------------------------------------------------------ entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="micromorphic-shell",
        description="Closed-form relaxed micromorphic solution for long cylindrical shells.",
    )
    ap.add_argument("--mode", required=True, choices=MODES)
    ap.add_argument("--config", help="key = value settings file; flags override it")
    ap.add_argument("--samples", type=str)
    ap.add_argument("--output", "-o", type=str)
    ap.add_argument("--figure", type=str)
    ap.add_argument("--raw", action="store_const", const="true", help="physical units instead of normalized")
    for k in ("g1", "g2", "g3", "beta", "lc_ratio", "delta", "mu_M", "r_o", "mu_c", "U_o"):
        names = [f"--{k}"] + ([f"--{k.replace('_', '-')}"] if "_" in k and k.islower() else [])
        ap.add_argument(*names, dest=k, type=str)
    ap.add_argument("--sweep", type=str, help="dimensionless key to sweep")
    ap.add_argument("--values", type=str, help="comma separated values for the swept key")
    ap.add_argument("--corrupt-c1", dest="corrupt_c1", type=float, help=argparse.SUPPRESS)
    return ap


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        file_values = read_config_file(args.config) if args.config else {}
        flags = {k: getattr(args, k) for k in KEYS if getattr(args, k, None) is not None}
        flag_values = {k: _convert(k, v) for k, v in flags.items()}
        cfg = build_config(file_values, flag_values)
        if cfg.mode == "solve":
            return run_solve(cfg, out, err)
        if cfg.mode == "figures":
            return run_figures(cfg, out)
        if cfg.mode == "sweep":
            return run_sweep(cfg, out)
        return run_verify(cfg, args.corrupt_c1, out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=err)
        return EXIT_CONFIG
    except ValidationError as exc:
        print("invalid parameters:", file=err)
        for v in exc.violations:
            print(f"  - {v}", file=err)
        return EXIT_CONFIG
    except DomainError as exc:
        print(f"invalid parameters: {exc}", file=err)
        return EXIT_CONFIG
    except (ConditioningError, OracleError) as exc:
        print(f"numerical failure: {exc}", file=err)
        return EXIT_VERIFY
    except OSError as exc:
        print(f"I/O error: {exc}", file=err)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
