"""Truncated plane-wave Hamiltonian of the complex-potential crystal, plus band sweeps.

The crystal potential ``v0 (cos x + i tau sin x)`` with period ``2 pi``
couples plane waves ``m`` and ``m +- 1`` with the asymmetric strengths
``t_-`` and ``t_+``.  Truncating to ``|m| <= M`` gives a (2M+1) square
tridiagonal matrix whose diagonal carries the free kinetic energies
``(m + k)^2``.  At ``tau = 1`` the matrix is lower triangular, so its
spectrum is exactly the folded free-space multiset independent of v0.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from epbands.linalg import default_cluster_tol, pair_continuation
from epbands.models import HamiltonianFamily, ModelParams


@dataclass(frozen=True)
class BlochSpec:
    """Plane-wave model parameters: amplitude v0 > 0, strength tau >= 0, truncation M >= 2."""

    v0: float
    tau: float
    trunc_m: int

    def __post_init__(self) -> None:
        if not (self.v0 > 0):
            raise ValueError("v0 must be positive")
        if self.tau < 0:
            raise ValueError("tau must be non-negative")
        if self.trunc_m < 2:
            raise ValueError("trunc_m must be at least 2 to resolve the second and third bands")

    @property
    def size(self) -> int:
        return 2 * self.trunc_m + 1


def build_bloch(spec: BlochSpec, k: float) -> np.ndarray:
    """Tridiagonal plane-wave matrix at momentum k.

    Diagonal (m + k)^2 for m = -M..M, superdiagonal t_-, subdiagonal t_+.
    Intended for k inside the first Brillouin zone [-1/2, 1/2]; the formula
    extends smoothly slightly beyond it, which degeneracy probes rely on.
    """
    p = ModelParams(spec.v0, spec.tau, k)
    n = spec.size
    ms = np.arange(-spec.trunc_m, spec.trunc_m + 1, dtype=float)
    h = np.zeros((n, n))
    h[np.arange(n), np.arange(n)] = (ms + k) ** 2
    idx = np.arange(n - 1)
    h[idx, idx + 1] = p.t_minus
    h[idx + 1, idx] = p.t_plus
    return h


def free_space_levels(spec: BlochSpec, k: float) -> np.ndarray:
    """Sorted folded free-space energies {(m + k)^2 : |m| <= M}."""
    ms = np.arange(-spec.trunc_m, spec.trunc_m + 1, dtype=float)
    return np.sort((ms + k) ** 2)


def bloch_family(v0: float = 1.0, trunc_m: int = 8) -> HamiltonianFamily:
    """The crystal as a (tau, k) family for the degeneracy analysis tools."""
    def build(tau: float, k: float) -> np.ndarray:
        return build_bloch(BlochSpec(v0, tau, trunc_m), k)

    return HamiltonianFamily("bloch", 2 * trunc_m + 1, ("tau", "k"), build)


@dataclass
class SweepResult:
    """Band surfaces over a 1-d or 2-d parameter grid, continuity-ordered.

    ``bands[b]`` is the complex energy surface of band ``b`` over the grid
    (shape matches the axis grids); band indices are fixed at the first
    grid point by ascending real part and then followed by minimal-distance
    continuation.  ``degenerate_mask`` flags grid points whose minimal
    eigenvalue gap falls below 10x the degeneracy tolerance; band ordering
    inside those neighborhoods is a bookkeeping choice, not a physical one.
    """

    model: str
    axes: dict[str, np.ndarray]
    bands: np.ndarray
    degenerate_mask: np.ndarray
    meta: dict = field(default_factory=dict)

    @property
    def n_bands(self) -> int:
        return self.bands.shape[0]

    @property
    def is_2d(self) -> bool:
        return len(self.axes) == 2


def _eigvals_grid(
    family: HamiltonianFamily,
    points: list[tuple[float, float]],
    threads: int = 1,
) -> list[np.ndarray]:
    def solve(pt: tuple[float, float]) -> np.ndarray:
        return np.linalg.eigvals(family.matrix(*pt).astype(complex))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(solve, points))
    return [solve(pt) for pt in points]


def _sort_initial(w: np.ndarray) -> np.ndarray:
    return w[np.lexsort((w.imag, w.real))]


def _min_gap(w: np.ndarray) -> float:
    if len(w) < 2:
        return np.inf
    diff = np.abs(w[:, None] - w[None, :])
    return float(np.min(diff[np.triu_indices(len(w), k=1)]))


def sweep_line(
    family: HamiltonianFamily,
    axis: int,
    values: np.ndarray,
    fixed: float,
    threads: int = 1,
    gap_tol: float | None = None,
) -> SweepResult:
    """1-d sweep along one family axis with the other held fixed."""
    values = np.asarray(values, dtype=float)
    if len(values) < 2:
        raise ValueError("need at least two grid points along the swept axis")
    if axis not in (0, 1):
        raise ValueError("axis must be 0 or 1")
    points = [
        (values[i], fixed) if axis == 0 else (fixed, values[i]) for i in range(len(values))
    ]
    raw = _eigvals_grid(family, points, threads)

    bands = np.empty((family.dim, len(values)), dtype=complex)
    mask = np.zeros(len(values), dtype=bool)
    prev = _sort_initial(raw[0])
    bands[:, 0] = prev
    for i in range(1, len(values)):
        perm = pair_continuation(prev, raw[i])
        prev = raw[i][perm]
        bands[:, i] = prev
    for i, w in enumerate(raw):
        tol = gap_tol if gap_tol is not None else default_cluster_tol(w)
        mask[i] = _min_gap(w) < 10.0 * tol

    swept_name = family.axes[axis]
    fixed_name = family.axes[1 - axis]
    return SweepResult(
        model=family.name,
        axes={swept_name: values},
        bands=bands,
        degenerate_mask=mask,
        meta={"fixed": {fixed_name: fixed}, "axes_order": (swept_name,)},
    )


def hybrid_sweep(
    family: HamiltonianFamily,
    values1: np.ndarray,
    values2: np.ndarray,
    threads: int = 1,
    gap_tol: float | None = None,
) -> SweepResult:
    """2-d sweep over the family's full parameter plane.

    Grid points are independent and may be evaluated concurrently; the
    continuity ordering is a sequential post-pass row by row (each row is
    seeded from the previous row's first column).
    """
    values1 = np.asarray(values1, dtype=float)
    values2 = np.asarray(values2, dtype=float)
    if len(values1) < 2 or len(values2) < 2:
        raise ValueError("need at least two grid points along each axis")

    points = [(x1, x2) for x1 in values1 for x2 in values2]
    raw_flat = _eigvals_grid(family, points, threads)
    n1, n2 = len(values1), len(values2)
    raw = [raw_flat[i * n2 : (i + 1) * n2] for i in range(n1)]

    bands = np.empty((family.dim, n1, n2), dtype=complex)
    mask = np.zeros((n1, n2), dtype=bool)
    row_seed = _sort_initial(raw[0][0])
    for i in range(n1):
        if i > 0:
            perm = pair_continuation(row_seed, raw[i][0])
            row_seed = raw[i][0][perm]
        prev = row_seed
        bands[:, i, 0] = prev
        for j in range(1, n2):
            perm = pair_continuation(prev, raw[i][j])
            prev = raw[i][j][perm]
            bands[:, i, j] = prev
        for j in range(n2):
            tol = gap_tol if gap_tol is not None else default_cluster_tol(raw[i][j])
            mask[i, j] = _min_gap(raw[i][j]) < 10.0 * tol

    return SweepResult(
        model=family.name,
        axes={family.axes[0]: values1, family.axes[1]: values2},
        bands=bands,
        degenerate_mask=mask,
        meta={"axes_order": family.axes},
    )


def band_structure(
    spec: BlochSpec, k_grid: np.ndarray, threads: int = 1
) -> SweepResult:
    """All 2M+1 crystal bands along a momentum grid inside the first Brillouin zone."""
    k_grid = np.asarray(k_grid, dtype=float)
    if np.any(k_grid < -0.5) or np.any(k_grid > 0.5):
        raise ValueError("k grid must lie inside the first Brillouin zone [-1/2, 1/2]")
    if np.any(np.diff(k_grid) <= 0):
        raise ValueError("k grid must be strictly increasing")
    family = bloch_family(spec.v0, spec.trunc_m)
    result = sweep_line(family, axis=1, values=k_grid, fixed=spec.tau, threads=threads)
    result.meta["trunc_m"] = spec.trunc_m
    result.meta["v0"] = spec.v0
    return result
