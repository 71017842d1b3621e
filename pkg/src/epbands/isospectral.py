"""Grid-wide spectrum comparison between Hamiltonian families.

Two families are isospectral over a region when their sorted spectra agree
at every grid point.  The interesting pairs here are a Hermitian family
and a non-Hermitian one sharing a real spectrum everywhere, with matching
degeneracies that differ in kind: diabolic in the Hermitian member,
defective in the non-Hermitian one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from epbands.analysis import ClassifyConfig, classify_degeneracy, find_degeneracies
from epbands.bloch import BlochSpec, build_bloch, free_space_levels
from epbands.models import HamiltonianFamily


class DimensionMismatchError(ValueError):
    """The two families produce matrices of different size."""


def sorted_spectrum_distance(wa: np.ndarray, wb: np.ndarray) -> float:
    """Max elementwise distance between two spectra sorted by (Re, Im)."""
    wa = np.asarray(wa, dtype=complex)
    wb = np.asarray(wb, dtype=complex)
    if wa.shape != wb.shape:
        raise DimensionMismatchError("spectra have different sizes")
    sa = wa[np.lexsort((wa.imag, wa.real))]
    sb = wb[np.lexsort((wb.imag, wb.real))]
    return float(np.max(np.abs(sa - sb)))


@dataclass
class IsospectralReport:
    """Outcome of a grid-wide spectrum comparison between two families."""

    family_a: str
    family_b: str
    grid_spec: dict
    max_deviation: float
    worst_point: tuple[float, float]
    passed: bool
    tol: float
    degeneracy_comparison: list[dict] = field(default_factory=list)
    deviations: np.ndarray | None = None


def verify_isospectral(
    fam_a: HamiltonianFamily,
    fam_b: HamiltonianFamily,
    grid1: np.ndarray,
    grid2: np.ndarray,
    tol: float = 1e-12,
    compare_degeneracies: bool = True,
    detection_tol: float = 0.05,
    config: ClassifyConfig = ClassifyConfig(),
) -> IsospectralReport:
    """Compare sorted spectra of two families over a shared parameter grid.

    Passes iff the largest sorted-spectrum distance over the grid is at
    most ``tol``.  When ``compare_degeneracies`` is set, degeneracies found
    in both families at the same point and energy are classified in each
    and reported side by side; the labels are allowed to differ even where
    the spectra agree exactly.
    """
    if fam_a.dim != fam_b.dim:
        raise DimensionMismatchError(
            f"{fam_a.name} is {fam_a.dim}x{fam_a.dim} but {fam_b.name} is {fam_b.dim}x{fam_b.dim}"
        )
    grid1 = np.asarray(grid1, dtype=float)
    grid2 = np.asarray(grid2, dtype=float)

    deviations = np.zeros((len(grid1), len(grid2)))
    max_dev = -1.0
    worst = (float(grid1[0]), float(grid2[0]))
    for i, x1 in enumerate(grid1):
        for j, x2 in enumerate(grid2):
            wa = np.linalg.eigvals(fam_a.matrix(x1, x2).astype(complex))
            wb = np.linalg.eigvals(fam_b.matrix(x1, x2).astype(complex))
            d = sorted_spectrum_distance(wa, wb)
            deviations[i, j] = d
            if d > max_dev:
                max_dev = d
                worst = (float(x1), float(x2))

    comparison: list[dict] = []
    if compare_degeneracies:
        cands_a = find_degeneracies(fam_a, grid1, grid2, tol=detection_tol)
        cands_b = find_degeneracies(fam_b, grid1, grid2, tol=detection_tol)
        for ca in cands_a:
            for cb in cands_b:
                matched = (
                    abs(ca.location[0] - cb.location[0]) < 1e-6
                    and abs(ca.location[1] - cb.location[1]) < 1e-6
                    and abs(ca.energy - cb.energy) < 1e-3
                )
                if matched:
                    rep_a = classify_degeneracy(fam_a, ca.location, energy=ca.energy, config=config)
                    rep_b = classify_degeneracy(fam_b, cb.location, energy=cb.energy, config=config)
                    comparison.append(
                        {
                            "point": ca.location,
                            "energy": complex(ca.energy),
                            "label_a": rep_a.label,
                            "label_b": rep_b.label,
                        }
                    )
                    break

    return IsospectralReport(
        family_a=fam_a.name,
        family_b=fam_b.name,
        grid_spec={
            "axis1": (float(grid1[0]), float(grid1[-1]), int(len(grid1))),
            "axis2": (float(grid2[0]), float(grid2[-1]), int(len(grid2))),
        },
        max_deviation=max_dev,
        worst_point=worst,
        passed=bool(max_dev <= tol),
        tol=tol,
        degeneracy_comparison=comparison,
        deviations=deviations,
    )


def free_space_equivalence(
    spec: BlochSpec, k_grid: np.ndarray, tol: float = 1e-12
) -> dict:
    """Check the crystal's spectrum against folded free-space levels at tau = 1.

    At tau = 1 the plane-wave matrix is triangular, so every band equals a
    folded free-particle energy (m + k)^2 exactly, independent of v0.  The
    band-structure "degeneracies" in this regime are artifacts of folding a
    single dispersion into the zone, which is precisely what makes the
    comparison exact.  Raises ValueError unless tau == 1.
    """
    if spec.tau != 1.0:
        raise ValueError("free-space equivalence is defined only at tau = 1")
    k_grid = np.asarray(k_grid, dtype=float)
    max_dev = 0.0
    worst_k = float(k_grid[0])
    for k in k_grid:
        w = np.sort(np.linalg.eigvals(build_bloch(spec, k)).real)
        ref = free_space_levels(spec, k)
        d = float(np.max(np.abs(w - ref)))
        if d > max_dev:
            max_dev = d
            worst_k = float(k)
    return {
        "model": "bloch",
        "v0": spec.v0,
        "trunc_m": spec.trunc_m,
        "k_grid": (float(k_grid[0]), float(k_grid[-1]), int(len(k_grid))),
        "max_deviation": max_dev,
        "worst_k": worst_k,
        "passed": bool(max_dev <= tol),
        "tol": tol,
    }
