"""Command-line front end: sweeps, classification, cone fits, isospectrality, series checks.

Subcommands
-----------
bands        complex band surfaces over a 1-d or 2-d parameter grid
classify     full degeneracy taxonomy record at one parameter point
cone         per-ray dispersion fit around a degeneracy
isospectral  grid-wide spectrum comparison between two families
puiseux      half-integer versus integer power-series diagnostic

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 unresolved classification, 5 precondition violation.

All data files are byte-deterministic for a fixed configuration.  The core
contains no randomness; JSON config echoes carry ``"seedless": true`` to
record that.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from epbands import __version__
from epbands.analysis import (
    ClassifyConfig,
    NotDegenerateError,
    classify_degeneracy,
    fit_cone,
    locate_cluster,
    puiseux_diagnostic,
)
from epbands.bloch import SweepResult, hybrid_sweep, sweep_line
from epbands.io import fmt_complex, fmt_float, json_text, write_csv, write_json
from epbands.isospectral import DimensionMismatchError, verify_isospectral
from epbands.linalg import EigenSolveError
from epbands.models import MODEL_NAMES, NonConvergenceError, make_family

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_UNRESOLVED = 4
EXIT_PRECONDITION = 5

PLANE_TILT_DEFAULT = float(np.sqrt(2.0) - 1.0)
PLANE_OFFSET_DEFAULT = 1.0 / 40.0


class ConfigError(ValueError):
    """Invalid flags, ranges, or config-file entries; maps to exit code 2."""


def parse_range(text: str) -> np.ndarray:
    """Inclusive grid from 'min:max:count'; odd counts center symmetric ranges."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"range {text!r} must look like min:max:count")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"cannot parse range {text!r}: {exc}") from exc
    if count < 2:
        raise ConfigError("range count must be at least 2")
    if not (hi > lo):
        raise ConfigError("range max must exceed min")
    return np.linspace(lo, hi, count)


def parse_point(text: str, axes: tuple[str, str]) -> tuple[float, float]:
    """Parse 'tau=1,k=0' style points; keys must match the model's axes."""
    values: dict[str, float] = {}
    for item in text.split(","):
        if "=" not in item:
            raise ConfigError(f"point component {item!r} must look like name=value")
        key, _, raw = item.partition("=")
        key = key.strip()
        if key not in axes:
            raise ConfigError(f"unknown point coordinate {key!r}; model axes are {axes}")
        try:
            values[key] = float(raw)
        except ValueError as exc:
            raise ConfigError(f"cannot parse {item!r}: {exc}") from exc
    missing = [a for a in axes if a not in values]
    if missing:
        raise ConfigError(f"point is missing coordinates {missing}")
    return values[axes[0]], values[axes[1]]


def parse_pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ConfigError(f"direction {text!r} must be two comma-separated numbers")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise ConfigError(f"cannot parse direction {text!r}: {exc}") from exc


def parse_shifts(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(s) for s in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"cannot parse shifts {text!r}: {exc}") from exc


def _load_config_args(path: str) -> list[str]:
    """Turn key=value lines into CLI flags; explicit flags take precedence."""
    args: list[str] = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        flag = "--" + key
        if value.lower() in ("true", "yes", "1") and key in ("plot", "gnuplot-stub", "cross-section"):
            args.append(flag)
        elif value.lower() in ("false", "no", "0") and key in ("plot", "gnuplot-stub", "cross-section"):
            continue
        else:
            args.extend([flag, value])
    return args


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", choices=MODEL_NAMES, help="model id")
    parser.add_argument("--v0", type=float, default=1.0, help="potential amplitude (default 1.0)")
    parser.add_argument("--trunc", type=int, default=8, help="plane-wave truncation M for the bloch model")
    parser.add_argument("--shifts", type=parse_shifts, default=(1.0, 2.0, 3.0),
                        help="comma-separated energy shifts for stacked models")
    parser.add_argument("--out", type=str, help="output path stem (suffixes are appended)")
    parser.add_argument("--format", choices=("csv", "json", "both"), default="both",
                        help="which data files to write (default both)")
    parser.add_argument("--tol-degeneracy", type=float, default=None,
                        help="degeneracy clustering tolerance (default 1e-8 * max(1, spectral radius))")
    parser.add_argument("--tol-rank", type=float, default=1e-8,
                        help="relative rank tolerance for geometric multiplicity")
    parser.add_argument("--threads", type=int, default=1, help="worker threads for sweeps")
    parser.add_argument("--plot", action="store_true", help="render a PNG figure next to the data")
    parser.add_argument("--gnuplot-stub", action="store_true",
                        help="emit a plain-text gnuplot script referencing the CSV")
    parser.add_argument("--config", type=str, help="key=value config file merged under the flags")


def _add_axis_flags(parser: argparse.ArgumentParser) -> None:
    for name in ("tau", "k", "g", "d1", "d2"):
        parser.add_argument(f"--{name}", type=float, default=None,
                            help=f"fixed value for the {name} axis")
        parser.add_argument(f"--{name}-range", type=str, default=None,
                            help=f"swept grid for the {name} axis, min:max:count")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="epbands",
        description="Complex band structures and degeneracy classification for matrix models.",
    )
    parser.add_argument("--version", action="version", version=f"epbands {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_bands = sub.add_parser("bands", help="export band surfaces over a parameter grid")
    _add_common(p_bands)
    _add_axis_flags(p_bands)

    p_cls = sub.add_parser("classify", help="classify a degeneracy at a parameter point")
    _add_common(p_cls)
    p_cls.add_argument("--point", type=str, required=True, help="parameter point, e.g. tau=1,k=0")
    p_cls.add_argument("--energy", type=float, default=None, help="target cluster energy")
    p_cls.add_argument("--band-pair", choices=("lowest", "nearest"), default="nearest",
                       help="pair selector when --energy is not given")

    p_cone = sub.add_parser("cone", help="fit the local dispersion cone at a degeneracy")
    _add_common(p_cone)
    p_cone.add_argument("--point", type=str, required=True)
    p_cone.add_argument("--energy", type=float, default=None)
    p_cone.add_argument("--rays", type=int, default=8, help="number of equally spaced rays")
    p_cone.add_argument("--direction", type=str, default=None,
                        help="fit a single ray along this direction, e.g. 10,1")
    p_cone.add_argument("--rmax", type=float, default=0.02, help="largest fit radius")
    p_cone.add_argument("--n-radii", type=int, default=8, help="log-spaced radii per ray")
    p_cone.add_argument("--cross-section", action="store_true",
                        help="also export the intersection with two tilted planes")
    p_cone.add_argument("--plane-tilt", type=float, default=PLANE_TILT_DEFAULT,
                        help="tilt s of the section planes w = w0 - s*dx1 +- d")
    p_cone.add_argument("--plane-offset", type=float, default=PLANE_OFFSET_DEFAULT,
                        help="offset d of the section planes")

    p_iso = sub.add_parser("isospectral", help="compare sorted spectra of two families")
    _add_common(p_iso)
    _add_axis_flags(p_iso)
    p_iso.add_argument("--family-a", choices=MODEL_NAMES, required=True)
    p_iso.add_argument("--family-b", choices=MODEL_NAMES, required=True)
    p_iso.add_argument("--tol", type=float, default=1e-12, help="pass threshold on the deviation")

    p_pui = sub.add_parser("puiseux", help="half-integer vs integer series diagnostic")
    _add_common(p_pui)
    p_pui.add_argument("--point", type=str, required=True)
    p_pui.add_argument("--energy", type=float, default=None)
    p_pui.add_argument("--direction", type=str, required=True, help="probe direction, e.g. 1,0")
    p_pui.add_argument("--eps-min", type=float, default=1e-6)
    p_pui.add_argument("--eps-max", type=float, default=1e-3)
    p_pui.add_argument("--eps-count", type=int, default=12)

    return parser


def _classify_config(ns: argparse.Namespace) -> ClassifyConfig:
    if ns.tol_degeneracy is not None and not (ns.tol_degeneracy > 0):
        raise ConfigError("--tol-degeneracy must be positive")
    if not (ns.tol_rank > 0):
        raise ConfigError("--tol-rank must be positive")
    if ns.threads < 1:
        raise ConfigError("--threads must be at least 1")
    return ClassifyConfig(cluster_tol=ns.tol_degeneracy, rank_tol=ns.tol_rank)


def _make_family(ns: argparse.Namespace, model: str | None = None):
    name = model if model is not None else ns.model
    if name is None:
        raise ConfigError("--model is required")
    return make_family(name, v0=ns.v0, trunc_m=ns.trunc, shifts=ns.shifts)


def _common_echo(ns: argparse.Namespace, command: str) -> dict:
    echo = {
        "command": command,
        "model": ns.model,
        "v0": fmt_float(ns.v0),
        "trunc": ns.trunc,
        "shifts": [fmt_float(s) for s in ns.shifts],
        "format": ns.format,
        "tol_degeneracy": None if ns.tol_degeneracy is None else fmt_float(ns.tol_degeneracy),
        "tol_rank": fmt_float(ns.tol_rank),
        "threads": ns.threads,
        "plot": bool(ns.plot),
        "seedless": True,
    }
    return echo


def _axis_values(ns: argparse.Namespace, axis: str) -> tuple[str, object]:
    fixed = getattr(ns, axis)
    ranged = getattr(ns, f"{axis}_range")
    if fixed is not None and ranged is not None:
        raise ConfigError(f"give either --{axis} or --{axis}-range, not both")
    if ranged is not None:
        return "range", parse_range(ranged)
    if fixed is not None:
        return "fixed", float(fixed)
    raise ConfigError(f"model axis {axis!r} needs --{axis} or --{axis}-range")


def _check_unused_axes(ns: argparse.Namespace, axes: tuple[str, str]) -> None:
    for name in ("tau", "k", "g", "d1", "d2"):
        if name in axes:
            continue
        if getattr(ns, name) is not None or getattr(ns, f"{name}_range") is not None:
            raise ConfigError(f"axis {name!r} does not apply to this model (axes {axes})")


def _sweep_csv_rows(sweep: SweepResult) -> tuple[list[str], list[list[str]]]:
    if sweep.is_2d:
        header = ["param1", "param2", "band", "re_omega", "im_omega"]
        (v1, v2) = sweep.axes.values()
        rows = []
        for i, x1 in enumerate(v1):
            for j, x2 in enumerate(v2):
                for b in range(sweep.n_bands):
                    z = sweep.bands[b, i, j]
                    rows.append(
                        [fmt_float(x1), fmt_float(x2), str(b + 1), fmt_float(z.real), fmt_float(z.imag)]
                    )
        return header, rows
    header = ["param1", "band", "re_omega", "im_omega"]
    (v1,) = sweep.axes.values()
    rows = []
    for i, x1 in enumerate(v1):
        for b in range(sweep.n_bands):
            z = sweep.bands[b, i]
            rows.append([fmt_float(x1), str(b + 1), fmt_float(z.real), fmt_float(z.imag)])
    return header, rows


def _sweep_json(sweep: SweepResult, echo: dict) -> dict:
    axes = {name: [fmt_float(v) for v in vals] for name, vals in sweep.axes.items()}
    bands = {
        "re": [[fmt_float(v) for v in band.real.ravel()] for band in sweep.bands],
        "im": [[fmt_float(v) for v in band.imag.ravel()] for band in sweep.bands],
    }
    flagged = [list(map(int, idx)) for idx in np.argwhere(sweep.degenerate_mask)]
    return {
        "config": echo,
        "model": sweep.model,
        "axes": axes,
        "grid_shape": list(sweep.bands.shape[1:]),
        "n_bands": sweep.n_bands,
        "bands": bands,
        "degenerate_flags": flagged,
    }


def _write_gnuplot_stub(stem: Path, is_2d: bool) -> None:
    csv_name = stem.name + ".csv"
    lines = [
        "# gnuplot script for the band export; run with: gnuplot -p <this file>",
        "set datafile separator ','",
        "set key off",
    ]
    if is_2d:
        lines += [
            "set ticslevel 0",
            f"splot '{csv_name}' every ::1 using 1:2:4 with points pointtype 7 pointsize 0.2",
        ]
    else:
        lines += [
            f"plot '{csv_name}' every ::1 using 1:3 with points pointtype 7 pointsize 0.3",
        ]
    from epbands.io import _atomic_write_text

    _atomic_write_text(stem.with_name(stem.name + ".gnuplot"), "\n".join(lines) + "\n")


def cmd_bands(ns: argparse.Namespace) -> int:
    family = _make_family(ns)
    _check_unused_axes(ns, family.axes)
    kind1, val1 = _axis_values(ns, family.axes[0])
    kind2, val2 = _axis_values(ns, family.axes[1])

    if kind1 == "range" and kind2 == "range":
        sweep = hybrid_sweep(family, val1, val2, threads=ns.threads, gap_tol=ns.tol_degeneracy)
    elif kind1 == "range":
        sweep = sweep_line(family, 0, val1, val2, threads=ns.threads, gap_tol=ns.tol_degeneracy)
    elif kind2 == "range":
        sweep = sweep_line(family, 1, val2, val1, threads=ns.threads, gap_tol=ns.tol_degeneracy)
    else:
        raise ConfigError("bands needs at least one swept axis (--<axis>-range)")

    if ns.out is None:
        raise ConfigError("bands requires --out")
    stem = Path(ns.out)
    echo = _common_echo(ns, "bands")
    for axis in family.axes:
        kind, val = _axis_values(ns, axis)
        echo[f"axis_{axis}"] = (
            {"min": fmt_float(val[0]), "max": fmt_float(val[-1]), "count": len(val)}
            if kind == "range"
            else {"fixed": fmt_float(val)}
        )

    if ns.format in ("csv", "both"):
        header, rows = _sweep_csv_rows(sweep)
        write_csv(stem.with_name(stem.name + ".csv"), header, rows)
        print(f"wrote {stem}.csv")
    if ns.format in ("json", "both"):
        write_json(stem.with_name(stem.name + ".json"), _sweep_json(sweep, echo))
        print(f"wrote {stem}.json")
    if ns.plot:
        from epbands.plotting import plot_sweep

        plot_sweep(sweep, stem.with_name(stem.name + ".png"))
        print(f"wrote {stem}.png")
    if ns.gnuplot_stub:
        _write_gnuplot_stub(stem, sweep.is_2d)
        print(f"wrote {stem}.gnuplot")
    return EXIT_OK


def _report_json(report, echo: dict) -> dict:
    return {
        "config": echo,
        "family": report.family,
        "location": [fmt_float(report.location[0]), fmt_float(report.location[1])],
        "energy": fmt_complex(report.energy),
        "algebraic_multiplicity": report.algebraic_multiplicity,
        "geometric_multiplicity": report.geometric_multiplicity,
        "coalescence_overlap": fmt_float(report.coalescence_overlap),
        "eigenvector": [fmt_complex(v) for v in report.eigenvector],
        "locally_real": report.locally_real,
        "max_imag": fmt_float(report.max_imag),
        "branch_cut_detected": report.branch_cut_detected,
        "node_type": report.node_type,
        "dispersion_exponent": fmt_float(report.dispersion_exponent),
        "dispersion_exponent_std": fmt_float(report.dispersion_exponent_std),
        "ray_exponents": [fmt_float(p) for p in report.ray_exponents],
        "line_directions": [
            [fmt_float(a), fmt_float(b)] for a, b in report.line_directions
        ],
        "label": report.label,
    }


def cmd_classify(ns: argparse.Namespace) -> int:
    family = _make_family(ns)
    point = parse_point(ns.point, family.axes)
    report = classify_degeneracy(
        family,
        point,
        energy=ns.energy,
        lowest=(ns.band_pair == "lowest" and ns.energy is None),
        config=_classify_config(ns),
    )
    echo = _common_echo(ns, "classify")
    echo["point"] = ns.point
    echo["energy"] = None if ns.energy is None else fmt_float(ns.energy)
    echo["band_pair"] = ns.band_pair
    payload = _report_json(report, echo)
    if ns.out is not None:
        stem = Path(ns.out)
        write_json(stem.with_name(stem.name + ".json"), payload)
        print(f"wrote {stem}.json")
    else:
        print(json_text(payload))
    return EXIT_UNRESOLVED if report.label == "Unresolved" else EXIT_OK


def _cone_json(fit, echo: dict) -> dict:
    rays = []
    for ray in fit.rays:
        rays.append(
            {
                "direction": [fmt_float(ray.direction[0]), fmt_float(ray.direction[1])],
                "is_line_direction": ray.is_line_direction,
                "exponent": fmt_float(ray.exponent),
                "exponent_stderr": fmt_float(ray.exponent_stderr),
                "splitting_coeff": fmt_float(ray.splitting_coeff),
                "slopes": [fmt_complex(ray.slopes[0]), fmt_complex(ray.slopes[1])],
                "residual_rms": fmt_float(ray.residual_rms),
            }
        )
    return {
        "config": echo,
        "point": [fmt_float(fit.point[0]), fmt_float(fit.point[1])],
        "energy": fmt_complex(fit.energy),
        "radii": [fmt_float(r) for r in fit.radii],
        "exponent_mean": fmt_float(fit.exponent),
        "exponent_std": fmt_float(fit.exponent_std),
        "line_directions": [[fmt_float(a), fmt_float(b)] for a, b in fit.line_directions],
        "rays": rays,
    }


def _cone_csv_rows(fit) -> tuple[list[str], list[list[str]]]:
    header = ["ray", "dir1", "dir2", "radius", "splitting", "re_lower", "im_lower", "re_upper", "im_upper"]
    rows = []
    for idx, ray in enumerate(fit.rays):
        if ray.offsets is None:
            continue
        lower, upper = ray.offsets
        for r, s, lo, up in zip(fit.radii, ray.splittings, lower, upper):
            rows.append(
                [
                    str(idx),
                    fmt_float(ray.direction[0]),
                    fmt_float(ray.direction[1]),
                    fmt_float(r),
                    fmt_float(s),
                    fmt_float(lo.real),
                    fmt_float(lo.imag),
                    fmt_float(up.real),
                    fmt_float(up.imag),
                ]
            )
    return header, rows


def _cross_section_rows(
    family, point: tuple[float, float], energy: complex, tilt: float, offset: float
) -> tuple[list[str], list[list[str]]]:
    """Intersection curves of the two band sheets with tilted planes.

    The planes are w = Re(energy) - tilt * dx1 +- offset; for each angle the
    crossing radius is found by bisection on the sheet-minus-plane residual.
    """
    from epbands.analysis import tracked_pair

    header = ["plane", "sheet", "angle", "dx1", "dx2", "re_omega"]
    rows: list[list[str]] = []
    angles = np.linspace(0.0, 2.0 * np.pi, 181)

    def sheet_value(r: float, u1: float, u2: float, sheet: int) -> float:
        w = np.linalg.eigvals(
            family.matrix(point[0] + r * u1, point[1] + r * u2).astype(complex)
        )
        pair = tracked_pair(w, energy)
        return float(pair[sheet].real)

    for plane_sign, plane_name in ((1.0, "+d"), (-1.0, "-d")):
        for sheet in (0, 1):
            for theta in angles:
                u1, u2 = float(np.cos(theta)), float(np.sin(theta))

                def residual(r: float) -> float:
                    plane = energy.real - tilt * r * u1 + plane_sign * offset
                    return sheet_value(r, u1, u2, sheet) - plane

                lo, hi = 1e-9, 0.1
                flo, fhi = residual(lo), residual(hi)
                if flo == 0.0 or fhi == 0.0 or (flo < 0) == (fhi < 0):
                    continue
                for _ in range(60):
                    mid = 0.5 * (lo + hi)
                    fmid = residual(mid)
                    if (fmid < 0) == (flo < 0):
                        lo, flo = mid, fmid
                    else:
                        hi = mid
                r = 0.5 * (lo + hi)
                rows.append(
                    [
                        plane_name,
                        str(sheet),
                        fmt_float(theta),
                        fmt_float(r * u1),
                        fmt_float(r * u2),
                        fmt_float(sheet_value(r, u1, u2, sheet)),
                    ]
                )
    return header, rows


def cmd_cone(ns: argparse.Namespace) -> int:
    family = _make_family(ns)
    point = parse_point(ns.point, family.axes)
    config = _classify_config(ns)
    w0, _ = locate_cluster(
        family, point, energy=None if ns.energy is None else complex(ns.energy),
        config=config,
    )

    radii = np.logspace(np.log10(ns.rmax) - 3.0, np.log10(ns.rmax), ns.n_radii)
    rays = [parse_pair(ns.direction)] if ns.direction else None
    fit = fit_cone(family, point, w0, rays=rays, radii=radii, n_rays=ns.rays)

    echo = _common_echo(ns, "cone")
    echo["point"] = ns.point
    echo["rays"] = ns.rays
    echo["rmax"] = fmt_float(ns.rmax)
    echo["n_radii"] = ns.n_radii
    payload = _cone_json(fit, echo)

    if ns.out is not None:
        stem = Path(ns.out)
        if ns.format in ("json", "both"):
            write_json(stem.with_name(stem.name + ".json"), payload)
            print(f"wrote {stem}.json")
        if ns.format in ("csv", "both"):
            header, rows = _cone_csv_rows(fit)
            write_csv(stem.with_name(stem.name + ".csv"), header, rows)
            print(f"wrote {stem}.csv")
        if ns.cross_section:
            header, rows = _cross_section_rows(family, point, w0, ns.plane_tilt, ns.plane_offset)
            write_csv(stem.with_name(stem.name + "_section.csv"), header, rows)
            print(f"wrote {stem}_section.csv")
        if ns.plot:
            from epbands.plotting import plot_cone

            plot_cone(fit, stem.with_name(stem.name + ".png"))
            print(f"wrote {stem}.png")
    else:
        print(json_text(payload))
    return EXIT_OK


def cmd_isospectral(ns: argparse.Namespace) -> int:
    if not (ns.tol > 0):
        raise ConfigError("--tol must be positive")
    fam_a = _make_family(ns, ns.family_a)
    fam_b = _make_family(ns, ns.family_b)
    if fam_a.axes != fam_b.axes:
        raise ConfigError(
            f"families live on different parameter planes: {fam_a.axes} vs {fam_b.axes}"
        )
    grids = []
    for idx, axis in enumerate(fam_a.axes):
        ranged = getattr(ns, f"{axis}_range")
        if ranged is not None:
            grids.append(parse_range(ranged))
        elif axis == "tau":
            grids.append(np.linspace(0.0, 2.0, 101))
        elif axis == "k":
            grids.append(np.linspace(-0.5, 0.5, 101))
        else:
            grids.append(np.linspace(-0.1, 0.1, 101))
    report = verify_isospectral(
        fam_a, fam_b, grids[0], grids[1], tol=ns.tol, config=_classify_config(ns)
    )
    echo = _common_echo(ns, "isospectral")
    echo["family_a"] = ns.family_a
    echo["family_b"] = ns.family_b
    echo["tol"] = fmt_float(ns.tol)
    payload = {
        "config": echo,
        "family_a": report.family_a,
        "family_b": report.family_b,
        "grid": {
            "axis1": [fmt_float(report.grid_spec["axis1"][0]), fmt_float(report.grid_spec["axis1"][1]), report.grid_spec["axis1"][2]],
            "axis2": [fmt_float(report.grid_spec["axis2"][0]), fmt_float(report.grid_spec["axis2"][1]), report.grid_spec["axis2"][2]],
        },
        "max_deviation": fmt_float(report.max_deviation),
        "worst_point": [fmt_float(report.worst_point[0]), fmt_float(report.worst_point[1])],
        "passed": report.passed,
        "degeneracy_comparison": [
            {
                "point": [fmt_float(c["point"][0]), fmt_float(c["point"][1])],
                "energy": fmt_complex(c["energy"]),
                "label_a": c["label_a"],
                "label_b": c["label_b"],
            }
            for c in report.degeneracy_comparison
        ],
    }
    if ns.out is not None:
        stem = Path(ns.out)
        write_json(stem.with_name(stem.name + ".json"), payload)
        print(f"wrote {stem}.json")
        if ns.plot:
            from epbands.plotting import plot_isospectral

            plot_isospectral(report, stem.with_name(stem.name + ".png"))
            print(f"wrote {stem}.png")
    else:
        print(json_text(payload))
    return EXIT_OK


def cmd_puiseux(ns: argparse.Namespace) -> int:
    family = _make_family(ns)
    point = parse_point(ns.point, family.axes)
    direction = parse_pair(ns.direction)
    eps = np.logspace(np.log10(ns.eps_min), np.log10(ns.eps_max), ns.eps_count)
    diag = puiseux_diagnostic(
        family,
        point,
        direction,
        energy=ns.energy,
        eps=eps,
        config=_classify_config(ns),
    )
    echo = _common_echo(ns, "puiseux")
    echo["point"] = ns.point
    echo["direction"] = ns.direction
    echo["eps"] = {
        "min": fmt_float(ns.eps_min),
        "max": fmt_float(ns.eps_max),
        "count": ns.eps_count,
    }
    payload = {
        "config": echo,
        "model": diag["model"],
        "direction": [fmt_float(diag["direction"][0]), fmt_float(diag["direction"][1])],
        "energy": fmt_complex(diag["energy"]),
        "c_half": fmt_complex(diag["c_half"]),
        "c_one": fmt_complex(diag["c_one"]),
        "c_half_lower": fmt_complex(diag["c_half_lower"]),
        "c_one_lower": fmt_complex(diag["c_one_lower"]),
        "c_half_max": fmt_float(diag["c_half_max"]),
        "c_one_max": fmt_float(diag["c_one_max"]),
        "fit_residuals": [fmt_float(r) for r in diag["fit_residuals"]],
    }
    if ns.out is not None:
        stem = Path(ns.out)
        write_json(stem.with_name(stem.name + ".json"), payload)
        print(f"wrote {stem}.json")
        if ns.plot:
            from epbands.plotting import plot_puiseux

            plot_puiseux(diag, stem.with_name(stem.name + ".png"))
            print(f"wrote {stem}.png")
    else:
        print(json_text(payload))
    return EXIT_OK


_HANDLERS = {
    "bands": cmd_bands,
    "classify": cmd_classify,
    "cone": cmd_cone,
    "isospectral": cmd_isospectral,
    "puiseux": cmd_puiseux,
}


def _join_negative_values(argv: list[str]) -> list[str]:
    """Rewrite '--flag -0.5:...' as '--flag=-0.5:...' so argparse accepts it."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if (
            tok.startswith("--")
            and "=" not in tok
            and nxt is not None
            and len(nxt) >= 2
            and nxt[0] == "-"
            and (nxt[1].isdigit() or nxt[1] == ".")
        ):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)

    # Merge an optional config file: its flags go right after the subcommand
    # so explicit command-line flags override them.
    if "--config" in argv:
        idx = argv.index("--config")
        if idx + 1 >= len(argv):
            print("error: --config needs a path", file=sys.stderr)
            return EXIT_CONFIG
        try:
            config_args = _load_config_args(argv[idx + 1])
        except (OSError, ConfigError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        del argv[idx : idx + 2]
        if not argv:
            print("error: a subcommand is required", file=sys.stderr)
            return EXIT_CONFIG
        argv = [argv[0]] + config_args + argv[1:]
    argv = _join_negative_values(argv)

    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_CONFIG

    try:
        return _HANDLERS[ns.command](ns)
    except (ConfigError, DimensionMismatchError, ValueError) as exc:
        if isinstance(exc, NotDegenerateError):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_PRECONDITION
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (EigenSolveError, NonConvergenceError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"i/o failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
