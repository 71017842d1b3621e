"""Dense complex linear algebra used by every model in the package.

All matrices here are small (2x2 up to a few tens) and O(1)-scaled, so the
routines favor strict, testable contracts over asymptotic performance:
eigenpairs carry a residual guarantee, cubic roots carry a residual bound
and exact conjugate pairing, and band continuation along parameter paths
is an optimal assignment rather than a heuristic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

# Maximum allowed ||A v - w v|| relative to ||A||_F for returned eigenpairs.
RESIDUAL_RTOL = 1e-10

# Root residual bound for solve_cubic, relative to the largest coefficient.
CUBIC_RTOL = 1e-12


class EigenSolveError(RuntimeError):
    """Raised when the eigensolver fails to converge or violates its residual bound."""


def default_cluster_tol(eigenvalues: np.ndarray) -> float:
    """Degeneracy clustering tolerance: 1e-8 * max(1, spectral radius)."""
    rho = float(np.max(np.abs(eigenvalues))) if len(eigenvalues) else 0.0
    return 1e-8 * max(1.0, rho)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues and unit-norm right eigenvectors of one matrix evaluation.

    Eigenvectors are the columns of ``right_eigenvectors``; column i pairs
    with ``eigenvalues[i]``.  Each column has Euclidean norm 1 and its first
    nonzero entry is real and positive, so repeated runs are bit-identical.
    For a numerically defective cluster the returned vectors may be nearly
    parallel; consumers measure that overlap rather than treating it as an
    error.
    """

    eigenvalues: np.ndarray
    right_eigenvectors: np.ndarray
    ordering: str = "by_real_part"

    @property
    def n(self) -> int:
        return len(self.eigenvalues)


def _validate_matrix(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or (np.iscomplexobj(a) and not np.all(np.isfinite(a.imag))):
        raise ValueError("matrix has non-finite entries")
    return a


def _fix_phase(vectors: np.ndarray) -> np.ndarray:
    """Normalize columns to unit norm with the first nonzero entry real positive."""
    v = vectors.astype(complex, copy=True)
    for j in range(v.shape[1]):
        col = v[:, j]
        nrm = np.linalg.norm(col)
        if nrm == 0.0:
            continue
        col /= nrm
        mags = np.abs(col)
        nz = np.nonzero(mags > 1e-12 * mags.max())[0]
        lead = col[nz[0]]
        phase = lead / abs(lead)
        if phase != 1.0:
            col *= np.conj(phase)
        v[:, j] = col
    return v


def eig_dense(a: np.ndarray, ordering: str = "by_real_part") -> Spectrum:
    """Full eigendecomposition of a dense square matrix.

    Eigenvalues are sorted by (real, imaginary) part unless
    ``ordering="unsorted"``.  Every returned pair satisfies
    ``||A v - w v|| <= 1e-10 ||A||_F``; a violation or a LAPACK convergence
    failure raises :class:`EigenSolveError` after one rescaled retry.
    """
    a = _validate_matrix(a)
    if ordering not in ("by_real_part", "unsorted"):
        raise ValueError(f"unknown ordering {ordering!r}")

    try:
        w, v = np.linalg.eig(a)
    except np.linalg.LinAlgError:
        # Retry on a rescaled copy; crude rebalancing for badly scaled input.
        scale = float(np.max(np.abs(a)))
        if scale == 0.0:
            raise EigenSolveError("eigensolver failed on zero-scaled matrix")
        try:
            w, v = np.linalg.eig(a / scale)
            w = w * scale
        except np.linalg.LinAlgError as exc:
            raise EigenSolveError("eigensolver failed to converge") from exc

    w = w.astype(complex)
    if ordering == "by_real_part":
        idx = np.lexsort((w.imag, w.real))
        w = w[idx]
        v = v[:, idx]
    v = _fix_phase(v)

    norm_a = np.linalg.norm(a)
    residual = max(
        np.linalg.norm(a @ v[:, i] - w[i] * v[:, i]) for i in range(len(w))
    )
    if residual > RESIDUAL_RTOL * max(norm_a, 1e-300):
        raise EigenSolveError(
            f"eigenpair residual {residual:.3e} exceeds {RESIDUAL_RTOL:.0e} * ||A||_F"
        )
    return Spectrum(eigenvalues=w, right_eigenvectors=v, ordering=ordering)


def numerical_rank(a: np.ndarray, tol: float) -> int:
    """Rank as the number of singular values above ``tol * sigma_max``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = _validate_matrix(a)
    sigma = np.linalg.svd(a, compute_uv=False)
    if sigma.size == 0 or sigma[0] == 0.0:
        return 0
    return int(np.count_nonzero(sigma > tol * sigma[0]))


def geometric_multiplicity(a: np.ndarray, omega: complex, tol: float) -> int:
    """Dimension of the eigenspace of ``a`` at eigenvalue ``omega``.

    Computed as n - rank(A - omega I) with the relative rank tolerance
    ``tol``.  Raises ValueError when ``omega`` is not within the default
    clustering tolerance of any eigenvalue, which signals that the caller
    passed a non-degenerate point.
    """
    a = _validate_matrix(a)
    w = np.linalg.eigvals(a.astype(complex))
    if np.min(np.abs(w - omega)) > default_cluster_tol(w):
        raise ValueError(f"{omega} is not an eigenvalue within tolerance")
    n = a.shape[0]
    shifted = a.astype(complex) - omega * np.eye(n)
    return n - numerical_rank(shifted, tol)


@dataclass(frozen=True)
class CubicCoeffs:
    """Real coefficients of c3 w^3 + c2 w^2 + c1 w + c0 = 0, with c3 != 0."""

    c3: float
    c2: float
    c1: float
    c0: float

    def __post_init__(self) -> None:
        if self.c3 == 0.0:
            raise ValueError("leading coefficient c3 must be nonzero")
        for name in ("c3", "c2", "c1", "c0"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"coefficient {name} is not finite")

    def evaluate(self, w: complex) -> complex:
        return ((self.c3 * w + self.c2) * w + self.c1) * w + self.c0


def _cbrt(x: float) -> float:
    return float(np.copysign(np.abs(x) ** (1.0 / 3.0), x))


def _polish_root(c: CubicCoeffs, w: complex, step_cap: float, max_steps: int = 12) -> complex:
    """Newton refinement; recovers the residual bound for ill-scaled cubics.

    Near double roots the closed form in depressed coordinates loses about
    half the digits; a few Newton steps on the original polynomial restore
    them.  ``step_cap`` bounds each update so the iterate cannot jump into
    another root's basin; real iterates stay real, preserving the
    root-type structure.
    """
    best = w
    best_res = abs(c.evaluate(w))
    for _ in range(max_steps):
        pw = c.evaluate(w)
        dpw = (3.0 * c.c3 * w + 2.0 * c.c2) * w + c.c1
        if dpw == 0:
            break
        step = pw / dpw
        if step_cap > 0.0 and abs(step) > step_cap:
            break
        w = w - step
        res = abs(c.evaluate(w))
        if res < best_res:
            best, best_res = w, res
        else:
            break
    return best


def _needs_polish(c: CubicCoeffs, w: complex) -> bool:
    cmax = max(abs(c.c3), abs(c.c2), abs(c.c1), abs(c.c0))
    return abs(c.evaluate(w)) > 0.25 * CUBIC_RTOL * cmax * (1.0 + abs(w) ** 3)


def solve_cubic(c: CubicCoeffs) -> list[complex]:
    """All three roots of a real cubic, sorted by (real, imaginary) part.

    Roots come back as either three reals or one real plus an exactly
    conjugate pair (the pair is built from shared floats, so conjugacy is
    bitwise).  The closed form switches between the trigonometric branch
    (three real roots) and a cancellation-safe Cardano branch (one real
    root); the crossover is exactly where naive Cardano loses digits.
    """
    a, b, cc, d = c.c3, c.c2, c.c1, c.c0
    # Depressed cubic y^3 + p y + q with w = y - b/(3a).
    b_a = b / a
    p = cc / a - b_a * b_a / 3.0
    q = 2.0 * b_a**3 / 27.0 - b_a * (cc / a) / 3.0 + d / a
    shift = -b_a / 3.0

    if p == 0.0 and q == 0.0:
        roots = [complex(shift, 0.0)] * 3
    else:
        disc = -4.0 * p**3 - 27.0 * q * q
        if disc >= 0.0 and p < 0.0:
            # Three real roots: trigonometric form, arccos argument clamped
            # against rounding at repeated roots.  An underflowing p means a
            # near-triple root; the argument sign then only picks the label.
            m = 2.0 * np.sqrt(-p / 3.0)
            with np.errstate(divide="ignore", invalid="ignore"):
                arg = 3.0 * q / (p * m)
            if not np.isfinite(arg):
                arg = 1.0 if q == 0.0 else float(np.copysign(1.0, -q))
            arg = min(1.0, max(-1.0, arg))
            theta = np.arccos(arg) / 3.0
            ys = [m * np.cos(theta - 2.0 * np.pi * kk / 3.0) + shift for kk in range(3)]
            roots = []
            for idx, y in enumerate(ys):
                w = complex(y, 0.0)
                if _needs_polish(c, w):
                    others = [abs(y - ys[jj]) for jj in range(3) if jj != idx]
                    cap = 0.5 * min(d for d in others if d > 0.0) if any(d > 0 for d in others) else 0.0
                    w = complex(_polish_root(c, w, cap).real, 0.0)
                roots.append(w)
        else:
            # One real root: pick the Cardano cube root with the larger
            # magnitude to avoid cancellation in u + v.
            disc_term = np.sqrt(max(q * q / 4.0 + p**3 / 27.0, 0.0))
            u3 = -q / 2.0 - disc_term if q >= 0.0 else -q / 2.0 + disc_term
            u = _cbrt(u3)
            v = -p / (3.0 * u) if u != 0.0 else 0.0
            y_real = u + v + shift
            pair = complex(-(u + v) / 2.0 + shift, np.sqrt(3.0) / 2.0 * (u - v))
            separation = abs(complex(y_real, 0.0) - pair)
            cap = 0.5 * separation if separation > 0.0 else 0.0
            if _needs_polish(c, complex(y_real, 0.0)):
                y_real = _polish_root(c, complex(y_real, 0.0), cap).real
            if _needs_polish(c, pair):
                pair = _polish_root(c, pair, cap)
            roots = [
                complex(y_real, 0.0),
                complex(pair.real, pair.imag),
                complex(pair.real, -pair.imag),
            ]

    roots.sort(key=lambda z: (z.real, z.imag))
    return roots


def pair_continuation(prev: np.ndarray, next_: np.ndarray) -> np.ndarray:
    """Assignment of next-step eigenvalues to previous-step bands.

    Returns a permutation ``perm`` such that ``next_[perm[i]]`` continues
    band ``prev[i]``, minimizing the total squared complex distance (exact
    optimal matching).  Exact cost ties are broken toward preserving index
    order.
    """
    prev = np.asarray(prev, dtype=complex)
    next_ = np.asarray(next_, dtype=complex)
    if prev.shape != next_.shape or prev.ndim != 1:
        raise ValueError("prev and next must be 1-d sequences of equal length")
    n = len(prev)
    cost = np.abs(next_[None, :] - prev[:, None]) ** 2
    cmax = cost.max()
    # Tiny off-diagonal penalty so exact ties keep the incoming order.
    tie = 1e-12 * (cmax if cmax > 0.0 else 1.0)
    cost = cost + tie * (1.0 - np.eye(n))
    _, col = linear_sum_assignment(cost)
    return col
