"""Figure rendering for sweep, cone, series, and isospectrality outputs.

Figures are written next to the delimited data files.  Rendering is
deterministic: fixed figure geometry, pinned PNG metadata, no timestamps.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from epbands.analysis import ConeFit  # noqa: E402
from epbands.bloch import SweepResult  # noqa: E402
from epbands.isospectral import IsospectralReport  # noqa: E402

_RC = {
    "figure.figsize": (8.0, 5.0),
    "figure.dpi": 110,
    "savefig.dpi": 150,
    "font.size": 9,
    "axes.labelsize": 10,
    "axes.titlesize": 10,
    "legend.fontsize": 8,
    "lines.linewidth": 1.2,
}

_PNG_META = {"Software": "epbands"}


def _save(fig, path: Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, metadata=_PNG_META)
    plt.close(fig)


def plot_sweep(sweep: SweepResult, path: Path) -> None:
    """Band surfaces (2-d sweep) or band curves (1-d sweep), real and imaginary parts."""
    with plt.rc_context(_RC):
        if sweep.is_2d:
            _plot_sweep_2d(sweep, path)
        else:
            _plot_sweep_1d(sweep, path)


def _plot_sweep_1d(sweep: SweepResult, path: Path) -> None:
    (name, values), = sweep.axes.items()
    fig, (ax_re, ax_im) = plt.subplots(2, 1, sharex=True)
    for b in range(sweep.n_bands):
        ax_re.plot(values, sweep.bands[b].real, label=f"band {b + 1}")
        ax_im.plot(values, sweep.bands[b].imag)
    ax_re.set_ylabel(r"Re $\omega$")
    ax_im.set_ylabel(r"Im $\omega$")
    ax_im.set_xlabel(name)
    ax_re.set_title(f"{sweep.model}: bands along {name}")
    if sweep.n_bands <= 8:
        ax_re.legend(loc="best")
    fig.tight_layout()
    _save(fig, path)


def _plot_sweep_2d(sweep: SweepResult, path: Path) -> None:
    (n1, v1), (n2, v2) = sweep.axes.items()
    x, y = np.meshgrid(v1, v2, indexing="ij")
    fig = plt.figure(figsize=(10.0, 5.0))
    ax_re = fig.add_subplot(1, 2, 1, projection="3d")
    ax_im = fig.add_subplot(1, 2, 2, projection="3d")
    for b in range(sweep.n_bands):
        ax_re.plot_surface(
            x, y, sweep.bands[b].real, alpha=0.7, linewidth=0, antialiased=False
        )
        ax_im.plot_surface(
            x, y, sweep.bands[b].imag, alpha=0.7, linewidth=0, antialiased=False
        )
    for ax, part in ((ax_re, r"Re $\omega$"), (ax_im, r"Im $\omega$")):
        ax.set_xlabel(n1)
        ax.set_ylabel(n2)
        ax.set_zlabel(part)
    ax_re.set_title(f"{sweep.model}: real part")
    ax_im.set_title(f"{sweep.model}: imaginary part")
    fig.tight_layout()
    _save(fig, path)


def plot_cone(fit: ConeFit, path: Path) -> None:
    """Per-ray splitting power laws and sheet offsets around a degeneracy."""
    with plt.rc_context(_RC):
        fig, (ax_split, ax_sheet) = plt.subplots(1, 2, figsize=(10.0, 4.5))
        for ray in fit.rays:
            angle = np.degrees(np.arctan2(ray.direction[1], ray.direction[0]))
            if ray.is_line_direction:
                ax_split.plot([], [], label=f"{angle:.0f}° (line direction)")
                continue
            model = ray.splitting_coeff * fit.radii**ray.exponent
            ax_split.loglog(
                fit.radii, model, linestyle="--", color="gray", linewidth=0.8
            )
            ax_split.loglog(
                fit.radii,
                ray.splittings,
                marker="o",
                markersize=3,
                linestyle="none",
                label=f"{angle:.0f}°: p={ray.exponent:.3f}",
            )
            if ray.offsets is not None:
                ax_sheet.plot(fit.radii, ray.offsets[0].real, linewidth=0.8)
                ax_sheet.plot(fit.radii, ray.offsets[1].real, linewidth=0.8)
        ax_split.set_xlabel("ray radius r")
        ax_split.set_ylabel(r"band splitting $|\omega_+-\omega_-|$")
        ax_split.legend(loc="best")
        ax_sheet.set_xlabel("ray radius r")
        ax_sheet.set_ylabel(r"sheet offset (linear fit)")
        fig.suptitle(f"dispersion at {fit.point}")
        fig.tight_layout()
        _save(fig, path)


def plot_puiseux(diag: dict, path: Path) -> None:
    """Measured branch offsets against the fitted half-integer and integer terms."""
    eps = np.asarray(diag["eps"], dtype=float)
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6.0, 4.5))
        half = abs(diag["c_half_max"]) * np.sqrt(eps)
        one = abs(diag["c_one_max"]) * eps
        if np.all(half > 0):
            ax.loglog(eps, half, "--", label=r"$|c_{1/2}|\,\epsilon^{1/2}$")
        if np.all(one > 0):
            ax.loglog(eps, one, "-.", label=r"$|c_{1}|\,\epsilon$")
        ax.set_xlabel(r"perturbation strength $\epsilon$")
        ax.set_ylabel("fitted term magnitude")
        ax.set_title(f"series model: {diag['model']}")
        ax.legend(loc="best")
        fig.tight_layout()
        _save(fig, path)


def plot_isospectral(report: IsospectralReport, path: Path) -> None:
    """Heat map of the per-point sorted-spectrum deviation (log scale)."""
    if report.deviations is None:
        return
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6.5, 5.0))
        dev = np.maximum(report.deviations, 1e-300)
        im = ax.imshow(
            np.log10(dev).T,
            origin="lower",
            aspect="auto",
            extent=(
                report.grid_spec["axis1"][0],
                report.grid_spec["axis1"][1],
                report.grid_spec["axis2"][0],
                report.grid_spec["axis2"][1],
            ),
        )
        fig.colorbar(im, ax=ax, label=r"$\log_{10}$ spectrum deviation")
        ax.set_title(f"{report.family_a} vs {report.family_b}")
        fig.tight_layout()
        _save(fig, path)
