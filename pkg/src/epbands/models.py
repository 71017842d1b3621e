"""Matrix model catalog: gain/loss lattice models and their closed-form dispersions.

Conventions used throughout:

* couplings ``t_pm = v0 * (1 +- tau) / 2`` and ``t2 = t_minus * t_plus
  = v0^2 (1 - tau^2) / 4``,
* ``dtau = tau - 1`` measures the distance from the gain/loss strength at
  which the asymmetric coupling ``t_minus`` vanishes,
* matrices are built with exact couplings; the leading-order evaluation
  ``t2 ~ -(v0^2/2) dtau`` appears only inside the small-dispersion
  formulas, keeping exact and approximate code paths separately testable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import block_diag

from epbands.linalg import CubicCoeffs


class NonConvergenceError(RuntimeError):
    """Self-consistent eigenvalue iteration left its basin or ran out of steps."""


@dataclass(frozen=True)
class ModelParams:
    """Potential amplitude v0 > 0, gain/loss strength tau >= 0, momentum k."""

    v0: float
    tau: float
    k: float

    def __post_init__(self) -> None:
        if not (self.v0 > 0):
            raise ValueError("v0 must be positive")
        if self.tau < 0:
            raise ValueError("tau must be non-negative")
        if not np.isfinite(self.k):
            raise ValueError("k must be finite")

    @property
    def t_plus(self) -> float:
        return self.v0 * (1.0 + self.tau) / 2.0

    @property
    def t_minus(self) -> float:
        return self.v0 * (1.0 - self.tau) / 2.0

    @property
    def t2(self) -> float:
        """Coupling product t_minus * t_plus = v0^2 (1 - tau^2) / 4."""
        return self.t_minus * self.t_plus


def build_h3(p: ModelParams) -> np.ndarray:
    """Three-band model [[1-2k, t-, 0], [t+, 0, t-], [0, t+, 1+2k]]."""
    tm, tp = p.t_minus, p.t_plus
    return np.array(
        [
            [1.0 - 2.0 * p.k, tm, 0.0],
            [tp, 0.0, tm],
            [0.0, tp, 1.0 + 2.0 * p.k],
        ]
    )


def char_poly_h3(p: ModelParams) -> CubicCoeffs:
    """Characteristic cubic of the three-band model.

    Expanding w(1-w)^2 + 2 t2 (1-w) - 4 k^2 w = 0 in powers of w gives
    w^3 - 2 w^2 + (1 - 2 t2 - 4 k^2) w + 2 t2 = 0.
    """
    t2 = p.t2
    return CubicCoeffs(1.0, -2.0, 1.0 - 2.0 * t2 - 4.0 * p.k * p.k, 2.0 * t2)


def h3_cone_exact(k: float, dtau: float, v0: float = 1.0) -> tuple[float, float]:
    """Leading-order band offsets dw = t2 +- sqrt(t4 + 4 k^2) from w0 = 1.

    ``t2`` is evaluated at leading order as -(v0^2/2) dtau; valid for small
    |k| and |dtau| (<= 0.1 recommended).  Returns the (+, -) branches.
    """
    t2 = -(v0 * v0 / 2.0) * dtau
    root = np.sqrt(t2 * t2 + 4.0 * k * k)
    return t2 + root, t2 - root


def h3_cone_ray(alpha: float, k: float) -> tuple[float, float]:
    """Ray dispersion dw = (-alpha +- sqrt(4 + alpha^2)) k along dtau = (2 alpha / v0^2) k."""
    root = np.sqrt(4.0 + alpha * alpha)
    return (-alpha + root) * k, (-alpha - root) * k


def build_ha_prime(p: ModelParams) -> np.ndarray:
    """Linearized two-band reduction (1 + t2) I + [[-2k, t-^2], [t+^2, 2k]].

    Takes the Jordan normal form at tau = 1, k = 0; eigenvalues are
    1 + t2 +- sqrt(4 k^2 + t2^2) for every parameter choice.
    """
    tm2, tp2 = p.t_minus**2, p.t_plus**2
    e = 1.0 + p.t2
    return np.array([[e - 2.0 * p.k, tm2], [tp2, e + 2.0 * p.k]])


def build_hb_prime(p: ModelParams) -> np.ndarray:
    """Hermitian two-band reduction [[1 + 2 t2, -2k], [-2k, 1]], isospectral to build_ha_prime."""
    t2 = p.t2
    return np.array([[1.0 + 2.0 * t2, -2.0 * p.k], [-2.0 * p.k, 1.0]])


def build_ha_double_prime(p: ModelParams) -> np.ndarray:
    """First-order truncation of build_ha_prime, degenerate along the whole k = 0 line.

    Dropping the O(dtau^2) block from the linearized two-band model leaves
    (1 - (v0^2/2) dtau) I + [[-2k, 0], [v0^2 (1 + dtau), 2k]]; the lower
    triangular form makes the eigenvalues exactly
    1 - (v0^2/2) dtau -+ 2k, and the nonzero lower-left entry keeps the
    k = 0 degeneracy defective (an exceptional line, not a single point).
    """
    dtau = p.tau - 1.0
    v02 = p.v0 * p.v0
    e = 1.0 - (v02 / 2.0) * dtau
    return np.array([[e - 2.0 * p.k, 0.0], [v02 * (1.0 + dtau), e + 2.0 * p.k]])


def nonlinear_eig_ha(
    p: ModelParams,
    branch: str,
    init: complex = 1.0 + 0.0j,
    damping: float = 0.5,
    tol: float = 1e-12,
    max_iter: int = 1000,
) -> complex:
    """Self-consistent eigenvalue of the exact two-band reduction.

    Damped fixed-point iteration on
    ``w = (1 + t2/w) +- sqrt(4 k^2 + t2^2 / w^2)`` with the branch sign held
    fixed; every converged value is a root of the three-band characteristic
    cubic.  Raises :class:`NonConvergenceError` when the iterate leaves the
    basin (|w| < 0.1) or the step never falls below ``tol``; callers then
    fall back to solve_cubic plus root matching.
    """
    if branch not in ("+", "-"):
        raise ValueError("branch must be '+' or '-'")
    sign = 1.0 if branch == "+" else -1.0
    t2 = p.t2
    four_k2 = 4.0 * p.k * p.k
    w = complex(init)
    for _ in range(max_iter):
        if abs(w) < 0.1:
            raise NonConvergenceError(
                f"iterate left the basin at {w}; branch {branch!r} invalid here"
            )
        rhs = 1.0 + t2 / w + sign * np.sqrt(four_k2 + (t2 * t2) / (w * w) + 0.0j)
        w_next = (1.0 - damping) * w + damping * rhs
        if abs(w_next - w) <= tol:
            return complex(w_next)
        w = w_next
    raise NonConvergenceError(f"no convergence in {max_iter} iterations")


@dataclass(frozen=True)
class PauliPerturbation:
    """Raising/lowering/diagonal perturbation amplitudes for the generic two-band model."""

    delta_plus: complex = 0.0
    delta_minus: complex = 0.0
    delta_3: complex = 0.0
    hermitian_variant: bool = False

    def __post_init__(self) -> None:
        for name in ("delta_plus", "delta_minus", "delta_3"):
            if not np.isfinite(complex(getattr(self, name))):
                raise ValueError(f"{name} must be finite")


def two_band_generic(pert: PauliPerturbation) -> tuple[np.ndarray, tuple[complex, complex]]:
    """Generic perturbed two-band model and its closed-form eigenvalues.

    The raising/lowering amplitudes enter the matrix with weight 2 and the
    defective base block is [[0, 2], [0, 0]], so that the closed forms hold
    exactly:

    * non-Hermitian variant: H = base + dH with eigenvalues
      ``+- sqrt(4 d_minus (1 + d_plus) + d3^2)``,
    * Hermitian variant: H = dH alone with eigenvalues
      ``+- sqrt(4 d_minus d_plus + d3^2)`` (Hermitian whenever d3 is real
      and d_minus equals the conjugate of d_plus).

    A first-order d_minus forces a square-root dispersion; only when
    d_minus is second order (d_minus = delta^2 with delta real, of the same
    order as d3) does the splitting become conical.
    """
    dp, dm, d3 = complex(pert.delta_plus), complex(pert.delta_minus), complex(pert.delta_3)
    dh = np.array([[d3, 2.0 * dp], [2.0 * dm, -d3]])
    if pert.hermitian_variant:
        h = dh
        radicand = 4.0 * dm * dp + d3 * d3
    else:
        h = np.array([[0.0, 2.0], [0.0, 0.0]]) + dh
        radicand = 4.0 * dm * (1.0 + dp) + d3 * d3
    if not np.iscomplexobj(h) or np.all(h.imag == 0.0):
        h = h.real
    root = complex(np.sqrt(radicand + 0.0j))
    return h, (root, -root)


def build_imag_cone(k: float, g: float) -> np.ndarray:
    """Three-band model [[ik, g, 1], [g, 1, g], [0, g, -ik]] with a cone in Im(w).

    Characteristic equation: w^3 - w^2 + (k^2 - 2 g^2) w - (k^2 + g^2) = 0,
    real coefficients for all real (k, g); the coalesced pair at the origin
    disperses as +- i sqrt(k^2 + g^2) to leading order.
    """
    return np.array(
        [
            [1j * k, g, 1.0],
            [g, 1.0, g],
            [0.0, g, -1j * k],
        ]
    )


def char_poly_imag_cone(k: float, g: float) -> CubicCoeffs:
    """Characteristic cubic of the imaginary-cone model."""
    return CubicCoeffs(1.0, -1.0, k * k - 2.0 * g * g, -(k * k + g * g))


@dataclass(frozen=True)
class BlockStackSpec:
    """Block-diagonal stacking: strictly increasing energy shifts, kind 'A' or 'B'."""

    shifts: tuple[float, ...]
    kind: str

    def __post_init__(self) -> None:
        if len(self.shifts) == 0:
            raise ValueError("shifts must be nonempty")
        if any(b <= a for a, b in zip(self.shifts, self.shifts[1:])):
            raise ValueError("shifts must be strictly increasing")
        if self.kind not in ("A", "B"):
            raise ValueError("kind must be 'A' (non-Hermitian) or 'B' (Hermitian)")


def build_block_stack(spec: BlockStackSpec, p: ModelParams) -> np.ndarray:
    """Stack shifted two-band blocks into one block-diagonal Hamiltonian.

    The m-th block is the kind-A (defective at tau=1, k=0) or kind-B
    (Hermitian) two-band model with its identity-part energy replaced by
    the shift: (shift_m + t2) I + coupling block.  Kind A and kind B stacks
    are isospectral for every (tau, k).
    """
    t2 = p.t2
    blocks = []
    for shift in spec.shifts:
        if spec.kind == "A":
            e = shift + t2
            blocks.append(
                np.array([[e - 2.0 * p.k, p.t_minus**2], [p.t_plus**2, e + 2.0 * p.k]])
            )
        else:
            blocks.append(
                np.array([[shift + 2.0 * t2, -2.0 * p.k], [-2.0 * p.k, shift]])
            )
    return block_diag(*blocks)


@dataclass(frozen=True)
class HamiltonianFamily:
    """A named map from a 2-d parameter plane to a dense square matrix.

    ``axes`` names the two plane coordinates in order (for example
    ("tau", "k") or ("k", "g")); ``builder`` evaluates the matrix at one
    plane point.  Pure and stateless, safe for concurrent use.
    """

    name: str
    dim: int
    axes: tuple[str, str]
    builder: Callable[[float, float], np.ndarray]

    def matrix(self, x1: float, x2: float) -> np.ndarray:
        return self.builder(x1, x2)


def h3_family(v0: float = 1.0) -> HamiltonianFamily:
    return HamiltonianFamily(
        "h3", 3, ("tau", "k"), lambda tau, k: build_h3(ModelParams(v0, tau, k))
    )


def ha_prime_family(v0: float = 1.0) -> HamiltonianFamily:
    return HamiltonianFamily(
        "haprime", 2, ("tau", "k"), lambda tau, k: build_ha_prime(ModelParams(v0, tau, k))
    )


def hb_prime_family(v0: float = 1.0) -> HamiltonianFamily:
    return HamiltonianFamily(
        "hbprime", 2, ("tau", "k"), lambda tau, k: build_hb_prime(ModelParams(v0, tau, k))
    )


def ha_double_prime_family(v0: float = 1.0) -> HamiltonianFamily:
    return HamiltonianFamily(
        "haddprime",
        2,
        ("tau", "k"),
        lambda tau, k: build_ha_double_prime(ModelParams(v0, tau, k)),
    )


def imag_cone_family() -> HamiltonianFamily:
    return HamiltonianFamily("imagcone", 3, ("k", "g"), lambda k, g: build_imag_cone(k, g))


def block_stack_family(
    kind: str, shifts: tuple[float, ...], v0: float = 1.0
) -> HamiltonianFamily:
    spec = BlockStackSpec(tuple(shifts), kind)
    name = "stack-a" if kind == "A" else "stack-b"
    return HamiltonianFamily(
        name,
        2 * len(spec.shifts),
        ("tau", "k"),
        lambda tau, k: build_block_stack(spec, ModelParams(v0, tau, k)),
    )


def two_band_family(kind: str) -> HamiltonianFamily:
    """Two-band perturbation families over a (d1, d2) parameter plane.

    * ``"linear"``: d_minus = d1, d3 = d2 (non-Hermitian, first order),
    * ``"cone"``: d_minus = d1^2, d3 = d2 (non-Hermitian, second order),
    * ``"hermitian"``: d_plus = d_minus = d1, d3 = d2 (Hermitian variant).
    """
    if kind == "linear":
        def build(d1: float, d2: float) -> np.ndarray:
            return two_band_generic(PauliPerturbation(0.0, d1, d2))[0]
        name = "twoband"
    elif kind == "cone":
        def build(d1: float, d2: float) -> np.ndarray:
            return two_band_generic(PauliPerturbation(0.0, d1 * d1, d2))[0]
        name = "twoband-cone"
    elif kind == "hermitian":
        def build(d1: float, d2: float) -> np.ndarray:
            return two_band_generic(
                PauliPerturbation(d1, d1, d2, hermitian_variant=True)
            )[0]
        name = "twoband-hermitian"
    else:
        raise ValueError(f"unknown two-band kind {kind!r}")
    return HamiltonianFamily(name, 2, ("d1", "d2"), build)


def make_family(
    model: str,
    v0: float = 1.0,
    trunc_m: int = 8,
    shifts: tuple[float, ...] = (1.0, 2.0, 3.0),
) -> HamiltonianFamily:
    """Family registry used by the CLI and the analysis drivers."""
    # Imported here to avoid a models <-> bloch import cycle.
    from epbands.bloch import bloch_family

    registry: dict[str, Callable[[], HamiltonianFamily]] = {
        "h3": lambda: h3_family(v0),
        "haprime": lambda: ha_prime_family(v0),
        "hbprime": lambda: hb_prime_family(v0),
        "haddprime": lambda: ha_double_prime_family(v0),
        "imagcone": imag_cone_family,
        "bloch": lambda: bloch_family(v0, trunc_m),
        "stack-a": lambda: block_stack_family("A", shifts, v0),
        "stack-b": lambda: block_stack_family("B", shifts, v0),
        "twoband": lambda: two_band_family("linear"),
        "twoband-cone": lambda: two_band_family("cone"),
        "twoband-hermitian": lambda: two_band_family("hermitian"),
    }
    if model not in registry:
        raise ValueError(f"unknown model {model!r}; choose from {sorted(registry)}")
    return registry[model]()


MODEL_NAMES = (
    "h3",
    "haprime",
    "hbprime",
    "haddprime",
    "imagcone",
    "bloch",
    "stack-a",
    "stack-b",
    "twoband",
    "twoband-cone",
    "twoband-hermitian",
)
