"""Degeneracy detection, taxonomy, cone fitting, and the fractional-power diagnostic.

A degeneracy of a parametrized family is characterized by a handful of
independent metrics, each computed on a small probe neighborhood:

* algebraic multiplicity: size of the eigenvalue cluster at the point,
* geometric multiplicity: rank deficiency of (H - w0 I),
* coalescence overlap: how parallel the cluster eigenvectors are,
* local reality: largest imaginary part of the tracked pair on a probe disk,
* branch cut: whether the disk splits into real and complex angular sectors,
* node type: whether the degeneracy is isolated or extends as a line or
  opens into a region where the real parts stay locked,
* dispersion exponent: per-ray power law of the band splitting.

The rank-based geometric multiplicity is authoritative for eigenvector
coalescence; the overlap of numerically computed eigenvectors of a
defective pair is noise-limited and reported as corroboration only.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from epbands.linalg import default_cluster_tol, eig_dense, numerical_rank
from epbands.models import HamiltonianFamily


class NotDegenerateError(ValueError):
    """The supplied parameter point does not host a degeneracy within tolerance."""


@dataclass(frozen=True)
class ClassifyConfig:
    """Tolerances and probe geometry for degeneracy classification.

    ``cluster_tol`` and ``gap_tol`` default to 1e-8 and 1e-4 times
    max(1, spectral radius); the looser gap confirmation accommodates the
    square-root sensitivity of defective pairs to parameter error.  The
    exponent windows separate linear from square-root dispersion by a wide
    margin and are configurable.
    """

    cluster_tol: float | None = None
    gap_tol: float | None = None
    rank_tol: float = 1e-8
    reality_tol: float = 1e-9
    line_tol: float = 1e-12
    probe_radius: float = 0.02
    n_angles: int = 16
    n_radial: int = 5
    n_rays: int = 8
    fit_radii: tuple[float, ...] | None = None
    linear_range: tuple[float, float] = (0.8, 1.2)
    sqrt_range: tuple[float, float] = (0.35, 0.65)

    def resolved_cluster_tol(self, eigenvalues: np.ndarray) -> float:
        if self.cluster_tol is not None:
            return self.cluster_tol
        return default_cluster_tol(eigenvalues)

    def resolved_gap_tol(self, eigenvalues: np.ndarray) -> float:
        if self.gap_tol is not None:
            return self.gap_tol
        rho = float(np.max(np.abs(eigenvalues))) if len(eigenvalues) else 0.0
        return 1e-4 * max(1.0, rho)

    def resolved_fit_radii(self) -> np.ndarray:
        if self.fit_radii is not None:
            return np.asarray(self.fit_radii, dtype=float)
        return np.logspace(
            np.log10(self.probe_radius) - 3.0, np.log10(self.probe_radius), 8
        )


@dataclass(frozen=True)
class DegeneracyCandidate:
    """A parameter point and cluster energy where two bands (nearly) meet."""

    location: tuple[float, float]
    energy: complex
    gap: float


@dataclass
class RayFit:
    """Power-law and slope fit of the band splitting along one ray.

    ``offsets`` holds the raw sheet offsets (lower, upper) from the
    degeneracy energy at each radius, for export and plotting.
    """

    direction: tuple[float, float]
    exponent: float
    exponent_stderr: float
    splitting_coeff: float
    slopes: tuple[complex, complex]
    residual_rms: float
    is_line_direction: bool
    splittings: np.ndarray = field(default_factory=lambda: np.empty(0))
    offsets: tuple[np.ndarray, np.ndarray] | None = None


@dataclass
class ConeFit:
    """Per-ray dispersion fits around a degeneracy.

    ``tilt`` is the mean of the two sheets' linear slopes per ray (the
    common-mode linear term); ``exponent`` aggregates the per-ray power
    laws of the splitting |w+ - w-|, which is immune to the tilt.  Rays
    with splitting below the line tolerance at every radius are exceptional
    line directions and are excluded from the exponent aggregate.
    """

    point: tuple[float, float]
    energy: complex
    radii: np.ndarray
    rays: list[RayFit]

    @property
    def line_directions(self) -> list[tuple[float, float]]:
        return [r.direction for r in self.rays if r.is_line_direction]

    @property
    def exponents(self) -> list[float]:
        return [r.exponent for r in self.rays if not r.is_line_direction]

    @property
    def exponent(self) -> float:
        vals = self.exponents
        return float(np.mean(vals)) if vals else float("nan")

    @property
    def exponent_std(self) -> float:
        vals = self.exponents
        return float(np.std(vals)) if vals else float("nan")

    @property
    def tilt(self) -> list[complex]:
        return [
            complex(0.5 * (r.slopes[0] + r.slopes[1]))
            for r in self.rays
            if not r.is_line_direction
        ]


@dataclass
class DegeneracyReport:
    """Full taxonomy record for one candidate degeneracy."""

    family: str
    location: tuple[float, float]
    energy: complex
    algebraic_multiplicity: int
    geometric_multiplicity: int
    coalescence_overlap: float
    eigenvector: np.ndarray
    locally_real: bool
    max_imag: float
    branch_cut_detected: bool
    node_type: str
    dispersion_exponent: float
    dispersion_exponent_std: float
    ray_exponents: list[float]
    line_directions: list[tuple[float, float]]
    label: str
    cone_fit: ConeFit | None = None


def _pair_near(w: np.ndarray, energy: complex | None, lowest: bool = False) -> tuple[int, int]:
    """Indices of the tracked eigenvalue pair.

    With ``energy`` given, the two eigenvalues closest to it; with
    ``lowest``, the minimal-gap pair of smallest real midpoint; otherwise
    the globally minimal-gap pair.
    """
    n = len(w)
    if n < 2:
        raise NotDegenerateError("matrix has fewer than two eigenvalues")
    if energy is not None:
        order = np.argsort(np.abs(w - energy))
        return int(order[0]), int(order[1])
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    gaps = np.array([abs(w[i] - w[j]) for i, j in pairs])
    if lowest:
        min_gap = gaps.min()
        near = [p for p, g in zip(pairs, gaps) if g <= 10.0 * max(min_gap, 1e-300)]
        near.sort(key=lambda p: (w[p[0]] + w[p[1]]).real)
        return near[0]
    i, j = pairs[int(np.argmin(gaps))]
    return i, j


def tracked_pair(w: np.ndarray, energy: complex) -> np.ndarray:
    """The two eigenvalues nearest ``energy``, in a stable (lower, upper) order.

    Sorted by real part, except that conjugate-like pairs (real parts equal
    to rounding) are ordered by imaginary part; plain lexicographic order
    would flip branches between samples on one-ulp real-part noise.
    """
    order = np.argsort(np.abs(w - energy))
    pair = w[order[:2]]
    scale = max(1.0, abs(energy))
    if abs(pair[0].real - pair[1].real) <= 1e-11 * scale:
        key = np.argsort(pair.imag)
    else:
        key = np.argsort(pair.real)
    return pair[key]


def locate_cluster(
    family: HamiltonianFamily,
    point: tuple[float, float],
    energy: complex | None = None,
    lowest: bool = False,
    config: ClassifyConfig = ClassifyConfig(),
) -> tuple[complex, float]:
    """Confirm a degenerate pair at ``point``; return its (energy, gap).

    Raises :class:`NotDegenerateError` when the selected pair's gap exceeds
    the confirmation tolerance.
    """
    w = np.linalg.eigvals(family.matrix(*point).astype(complex))
    if energy is not None:
        i, j = _pair_near(w, energy)
    else:
        i, j = _pair_near(w, None, lowest=lowest)
    gap = float(abs(w[i] - w[j]))
    gap_tol = config.resolved_gap_tol(w)
    if gap > gap_tol:
        raise NotDegenerateError(
            f"pair gap {gap:.3e} at {point} exceeds tolerance {gap_tol:.3e}"
        )
    return complex(0.5 * (w[i] + w[j])), gap


def find_degeneracies(
    family: HamiltonianFamily,
    grid1: np.ndarray,
    grid2: np.ndarray,
    tol: float = 0.05,
    resolution: float = 1e-10,
) -> list[DegeneracyCandidate]:
    """Locate band degeneracies of a family over a rectangular grid.

    Every grid point whose minimal eigenvalue gap falls below ``tol``
    seeds one candidate per eigenvalue cluster found there.  Each seed is
    refined by bisection (repeated shrinking of a local stencil) on the
    tracked pair gap down to parameter ``resolution``, and refined
    candidates that coincide within merge tolerance are deduplicated.
    An empty list is a valid result.
    """
    grid1 = np.atleast_1d(np.asarray(grid1, dtype=float))
    grid2 = np.atleast_1d(np.asarray(grid2, dtype=float))
    step1 = float(np.max(np.diff(grid1))) if len(grid1) > 1 else 0.0
    step2 = float(np.max(np.diff(grid2))) if len(grid2) > 1 else 0.0

    seeds: list[tuple[float, float, complex]] = []
    for x1 in grid1:
        for x2 in grid2:
            w = np.linalg.eigvals(family.matrix(x1, x2).astype(complex))
            n = len(w)
            # Connected components of the "closer than tol" graph.
            used = np.zeros(n, dtype=bool)
            for i in range(n):
                if used[i]:
                    continue
                comp = [i]
                used[i] = True
                for j in range(i + 1, n):
                    if not used[j] and any(abs(w[j] - w[m]) < tol for m in comp):
                        comp.append(j)
                        used[j] = True
                if len(comp) >= 2:
                    seeds.append((float(x1), float(x2), complex(np.mean(w[comp]))))

    candidates: list[DegeneracyCandidate] = []
    for x1, x2, energy in seeds:
        loc, gap, w0 = _refine_candidate(
            family, (x1, x2), energy, (step1, step2), resolution
        )
        merged = False
        for idx, prev in enumerate(candidates):
            same_place = (
                abs(loc[0] - prev.location[0]) <= max(step1, step2, 1e-6)
                and abs(loc[1] - prev.location[1]) <= max(step1, step2, 1e-6)
            )
            if same_place and abs(w0 - prev.energy) < 0.1:
                if gap < prev.gap:
                    candidates[idx] = DegeneracyCandidate(loc, w0, gap)
                merged = True
                break
        if not merged:
            candidates.append(DegeneracyCandidate(loc, w0, gap))
    candidates.sort(key=lambda c: (c.location[0], c.location[1], c.energy.real, c.energy.imag))
    return candidates


def _refine_candidate(
    family: HamiltonianFamily,
    start: tuple[float, float],
    energy: complex,
    spans: tuple[float, float],
    resolution: float,
) -> tuple[tuple[float, float], float, complex]:
    """Shrinking-stencil bisection on the tracked pair gap."""

    def tracked_gap(x1: float, x2: float, target: complex) -> tuple[float, complex]:
        w = np.linalg.eigvals(family.matrix(x1, x2).astype(complex))
        pair = tracked_pair(w, target)
        return float(abs(pair[1] - pair[0])), complex(np.mean(pair))

    best = start
    span1 = spans[0] if spans[0] > 0 else 0.0
    span2 = spans[1] if spans[1] > 0 else 0.0
    best_gap, best_energy = tracked_gap(*best, energy)
    offsets1 = (-1.0, 0.0, 1.0) if span1 > 0 else (0.0,)
    offsets2 = (-1.0, 0.0, 1.0) if span2 > 0 else (0.0,)
    while max(span1, span2) > resolution:
        for d1 in offsets1:
            for d2 in offsets2:
                pt = (best[0] + d1 * span1, best[1] + d2 * span2)
                gap, w0 = tracked_gap(*pt, best_energy)
                if gap < best_gap:
                    best, best_gap, best_energy = pt, gap, w0
        span1 /= 2.0
        span2 /= 2.0
    return best, best_gap, best_energy


@dataclass
class RealityProbe:
    """Raw local-reality scan over a probe disk around a degeneracy."""

    max_imag: float
    branch_cut_detected: bool
    node_type: str
    complex_angles: int
    line_angles: int
    re_locked_angles: int


def local_reality(
    family: HamiltonianFamily,
    point: tuple[float, float],
    energy: complex,
    radius: float = 0.02,
    n_angles: int = 16,
    n_radial: int = 5,
    reality_tol: float = 1e-9,
    line_tol: float = 1e-12,
) -> RealityProbe:
    """Scan the tracked band pair over a probe disk.

    Per angular direction, the pair is sampled at ``n_radial`` radii.  A
    direction is "complex" when any sample's imaginary part exceeds
    ``reality_tol``; a branch cut is detected when the disk splits into
    complex and real angular sectors (sheets that are complex everywhere,
    as for a conjugate pair around an imaginary cone, have no cut to
    cross).  A direction with full splitting below ``line_tol`` at every
    radius extends the degeneracy as a line; directions whose real parts
    stay locked while the splitting is finite mark a region of conjugate
    sheets, reported as a surface node.
    """
    radii = np.linspace(radius / n_radial, radius, n_radial)
    max_imag = 0.0
    complex_dir = np.zeros(n_angles, dtype=bool)
    line_dir = np.zeros(n_angles, dtype=bool)
    re_locked_dir = np.zeros(n_angles, dtype=bool)
    for a in range(n_angles):
        theta = 2.0 * np.pi * a / n_angles
        u1, u2 = np.cos(theta), np.sin(theta)
        dir_complex = False
        dir_line = True
        dir_re_locked = True
        for r in radii:
            w = np.linalg.eigvals(
                family.matrix(point[0] + r * u1, point[1] + r * u2).astype(complex)
            )
            pair = tracked_pair(w, energy)
            im = float(np.max(np.abs(pair.imag)))
            max_imag = max(max_imag, im)
            if im > reality_tol:
                dir_complex = True
            split = abs(pair[1] - pair[0])
            if split >= line_tol:
                dir_line = False
            if abs(pair[1].real - pair[0].real) > reality_tol:
                dir_re_locked = False
        complex_dir[a] = dir_complex
        line_dir[a] = dir_line
        re_locked_dir[a] = dir_re_locked

    branch_cut = bool(complex_dir.any() and (~complex_dir).any())
    n_line = int(line_dir.sum())
    n_re_locked = int((re_locked_dir & ~line_dir).sum())
    if n_re_locked >= 2:
        node_type = "surface"
    elif n_line >= 1:
        node_type = "line"
    else:
        node_type = "point"
    return RealityProbe(
        max_imag=max_imag,
        branch_cut_detected=branch_cut,
        node_type=node_type,
        complex_angles=int(complex_dir.sum()),
        line_angles=n_line,
        re_locked_angles=n_re_locked,
    )


def _default_rays(n_rays: int) -> list[tuple[float, float]]:
    out = []
    for j in range(n_rays):
        theta = 2.0 * np.pi * j / n_rays
        out.append((float(np.cos(theta)), float(np.sin(theta))))
    return out


def fit_cone(
    family: HamiltonianFamily,
    point: tuple[float, float],
    energy: complex,
    rays: list[tuple[float, float]] | None = None,
    radii: np.ndarray | None = None,
    n_rays: int = 8,
    line_tol: float = 1e-12,
) -> ConeFit:
    """Fit the local dispersion of the tracked band pair along rays.

    Per ray, the power-law exponent comes from least squares on
    ``log |w+ - w-|`` versus ``log r``; each sheet's signed offset from the
    degeneracy energy is fitted on the design ``[r, r^2]`` and the linear
    coefficient is reported as the slope (the r^2 column absorbs curvature
    that would otherwise bias slopes at finite radius).  The splitting, not
    the individual sheets, carries the exponent: the common-mode tilt would
    corrupt single-sheet power laws.

    A ray whose splitting stays below ``line_tol`` at every radius is an
    exceptional line direction; it is flagged and excluded from fits rather
    than treated as a failure.  Requires at least 4 radii.
    """
    if radii is None:
        radii = np.logspace(np.log10(0.02) - 3.0, np.log10(0.02), 8)
    radii = np.asarray(radii, dtype=float)
    if len(radii) < 4:
        raise ValueError("need at least 4 radii for a dispersion fit")
    if rays is None:
        rays = _default_rays(n_rays)
    rays = [
        (u1 / float(np.hypot(u1, u2)), u2 / float(np.hypot(u1, u2))) for u1, u2 in rays
    ]

    fits: list[RayFit] = []
    for u1, u2 in rays:
        upper = np.empty(len(radii), dtype=complex)
        lower = np.empty(len(radii), dtype=complex)
        for idx, r in enumerate(radii):
            w = np.linalg.eigvals(
                family.matrix(point[0] + r * u1, point[1] + r * u2).astype(complex)
            )
            pair = tracked_pair(w, energy)
            lower[idx], upper[idx] = pair[0], pair[1]
        splitting = np.abs(upper - lower)
        if np.all(splitting < line_tol):
            fits.append(
                RayFit(
                    direction=(u1, u2),
                    exponent=float("nan"),
                    exponent_stderr=float("nan"),
                    splitting_coeff=0.0,
                    slopes=(0.0 + 0.0j, 0.0 + 0.0j),
                    residual_rms=0.0,
                    is_line_direction=True,
                    splittings=splitting,
                    offsets=(lower - energy, upper - energy),
                )
            )
            continue
        logs = np.log(splitting)
        logr = np.log(radii)
        (slope_p, intercept), cov = np.polyfit(logr, logs, 1, cov=True)
        design = np.column_stack([radii, radii**2]).astype(complex)
        slopes = []
        residuals = []
        for sheet in (upper, lower):
            coef, *_ = np.linalg.lstsq(design, sheet - energy, rcond=None)
            slopes.append(complex(coef[0]))
            residuals.append(sheet - energy - design @ coef)
        rms = float(np.sqrt(np.mean(np.abs(np.concatenate(residuals)) ** 2)))
        fits.append(
            RayFit(
                direction=(u1, u2),
                exponent=float(slope_p),
                exponent_stderr=float(np.sqrt(max(cov[0, 0], 0.0))),
                splitting_coeff=float(np.exp(intercept)),
                slopes=(slopes[1], slopes[0]),
                residual_rms=rms,
                is_line_direction=False,
                splittings=splitting,
                offsets=(lower - energy, upper - energy),
            )
        )
    return ConeFit(point=point, energy=energy, radii=radii, rays=fits)


def puiseux_diagnostic(
    family: HamiltonianFamily,
    point: tuple[float, float],
    direction: tuple[float, float],
    energy: complex | None = None,
    eps: np.ndarray | None = None,
    config: ClassifyConfig = ClassifyConfig(),
) -> dict:
    """Test whether a half-integer power series describes the local splitting.

    Both branches of the tracked pair are fitted independently against the
    two-term ansatz ``c_half * eps^(1/2) + c_one * eps`` on log-spaced
    perturbation strengths; the reported coefficients are the branch maxima
    in magnitude.  The model is ``half_integer`` when the fractional term
    contributes more than the linear term at the largest sampled strength,
    ``integer`` otherwise.  At a linear-dispersion degeneracy the
    fractional coefficient is consistent with zero on every direction; at a
    conventional square-root degeneracy it dominates.
    """
    if eps is None:
        eps = np.logspace(-6, -3, 12)
    eps = np.asarray(eps, dtype=float)
    norm = float(np.hypot(*direction))
    u1, u2 = direction[0] / norm, direction[1] / norm

    w0_all = np.linalg.eigvals(family.matrix(*point).astype(complex))
    if energy is None:
        i, j = _pair_near(w0_all, None)
        pair0 = np.array([w0_all[i], w0_all[j]])
    else:
        pair0 = tracked_pair(w0_all, energy)
    gap0 = abs(pair0[1] - pair0[0])
    if gap0 > config.resolved_gap_tol(w0_all):
        raise NotDegenerateError(
            f"pair gap {gap0:.3e} at {point} exceeds the degeneracy tolerance"
        )
    w0 = complex(np.mean(pair0))
    cluster = np.abs(w0_all - w0) <= max(
        config.resolved_cluster_tol(w0_all), 5.0 * gap0
    )
    if int(cluster.sum()) != 2:
        raise NotDegenerateError(
            f"degeneracy at {point} has multiplicity {int(cluster.sum())}, need 2"
        )

    branch_lo = np.empty(len(eps), dtype=complex)
    branch_hi = np.empty(len(eps), dtype=complex)
    for idx, e in enumerate(eps):
        w = np.linalg.eigvals(
            family.matrix(point[0] + e * u1, point[1] + e * u2).astype(complex)
        )
        pair = tracked_pair(w, w0)
        branch_lo[idx], branch_hi[idx] = pair[0], pair[1]

    design = np.column_stack([np.sqrt(eps), eps]).astype(complex)
    coeffs = []
    resids = []
    for data in (branch_hi, branch_lo):
        coef, *_ = np.linalg.lstsq(design, data - w0, rcond=None)
        coeffs.append(coef)
        resids.append(float(np.sqrt(np.mean(np.abs(data - w0 - design @ coef) ** 2))))
    c_half = max(abs(c[0]) for c in coeffs)
    c_one = max(abs(c[1]) for c in coeffs)
    eps_max = float(eps.max())
    half_contrib = c_half * np.sqrt(eps_max)
    one_contrib = c_one * eps_max
    model = "half_integer" if half_contrib > one_contrib else "integer"
    return {
        "model": model,
        "c_half": complex(coeffs[0][0]),
        "c_one": complex(coeffs[0][1]),
        "c_half_lower": complex(coeffs[1][0]),
        "c_one_lower": complex(coeffs[1][1]),
        "c_half_max": float(c_half),
        "c_one_max": float(c_one),
        "fit_residuals": resids,
        "direction": (u1, u2),
        "energy": w0,
        "eps": eps,
    }


def classify_degeneracy(
    family: HamiltonianFamily,
    point: tuple[float, float],
    energy: complex | None = None,
    lowest: bool = False,
    config: ClassifyConfig = ClassifyConfig(),
) -> DegeneracyReport:
    """Assemble the full taxonomy record for a degeneracy of ``family`` at ``point``.

    Raises :class:`NotDegenerateError` when the tracked pair gap exceeds the
    confirmation tolerance.  The label follows the metric rules:

    * diabolic point with conical dispersion ("DiracPoint"): algebraic 2,
      geometric 2, locally real spectrum, isolated point node, linear
      exponent on every probed ray;
    * defective with conical dispersion ("DiracEP"): as above but
      geometric 1 and no branch cut;
    * defective with square-root dispersion or a branch cut
      ("ConventionalEP2"): algebraic 2, geometric 1;
    * anything else is "Unresolved" (including degeneracies outside the
      three-row taxonomy, such as a conjugate pair around an imaginary
      cone, or points on an exceptional line).
    """
    a = family.matrix(*point)
    spectrum = eig_dense(a)
    w = spectrum.eigenvalues

    if energy is not None:
        i, j = _pair_near(w, energy)
    else:
        i, j = _pair_near(w, None, lowest=lowest)
    gap = abs(w[i] - w[j])
    gap_tol = config.resolved_gap_tol(w)
    if gap > gap_tol:
        raise NotDegenerateError(
            f"pair gap {gap:.3e} at {point} exceeds tolerance {gap_tol:.3e}"
        )
    w0 = complex(0.5 * (w[i] + w[j]))

    cluster_radius = max(config.resolved_cluster_tol(w), 5.0 * gap)
    members = np.nonzero(np.abs(w - w0) <= cluster_radius)[0]
    alg = int(len(members))

    geo = a.shape[0] - numerical_rank(
        a.astype(complex) - w0 * np.eye(a.shape[0]), config.rank_tol
    )

    overlap = 0.0
    vecs = spectrum.right_eigenvectors
    for ii in members:
        for jj in members:
            if ii < jj:
                overlap = max(overlap, float(abs(np.vdot(vecs[:, ii], vecs[:, jj]))))

    # Representative cluster eigenvector from the smallest singular vector of
    # (H - w0 I); well conditioned even when the pair is defective.
    _, _, vh = np.linalg.svd(a.astype(complex) - w0 * np.eye(a.shape[0]))
    rep = vh[-1].conj()
    mags = np.abs(rep)
    lead = rep[np.nonzero(mags > 1e-12 * mags.max())[0][0]]
    rep = rep * np.conj(lead / abs(lead))

    probe = local_reality(
        family,
        point,
        w0,
        radius=config.probe_radius,
        n_angles=config.n_angles,
        n_radial=config.n_radial,
        reality_tol=config.reality_tol,
        line_tol=config.line_tol,
    )
    locally_real = probe.max_imag <= config.reality_tol

    cone = fit_cone(
        family,
        point,
        w0,
        radii=config.resolved_fit_radii(),
        n_rays=config.n_rays,
        line_tol=config.line_tol,
    )
    exponents = cone.exponents
    lo, hi = config.linear_range
    linear_all = bool(exponents) and all(lo <= p <= hi for p in exponents)
    slo, shi = config.sqrt_range
    sqrt_any = any(slo <= p <= shi for p in exponents)

    if alg == 2 and geo == 2 and locally_real and probe.node_type == "point" and linear_all:
        label = "DiracPoint"
    elif alg == 2 and geo == 1 and (sqrt_any or probe.branch_cut_detected):
        label = "ConventionalEP2"
    elif (
        alg == 2
        and geo == 1
        and locally_real
        and not probe.branch_cut_detected
        and probe.node_type == "point"
        and linear_all
    ):
        label = "DiracEP"
    else:
        label = "Unresolved"

    return DegeneracyReport(
        family=family.name,
        location=(float(point[0]), float(point[1])),
        energy=w0,
        algebraic_multiplicity=alg,
        geometric_multiplicity=geo,
        coalescence_overlap=overlap,
        eigenvector=rep,
        locally_real=locally_real,
        max_imag=probe.max_imag,
        branch_cut_detected=probe.branch_cut_detected,
        node_type=probe.node_type,
        dispersion_exponent=cone.exponent,
        dispersion_exponent_std=cone.exponent_std,
        ray_exponents=exponents,
        line_directions=cone.line_directions,
        label=label,
        cone_fit=cone,
    )
