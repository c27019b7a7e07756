"""Expected absolute determinants of Gaussian frames vs mixed volumes.

For a random m x k frame Gamma whose columns are independent integrable
random vectors, E sqrt(det(Gamma^T Gamma)) equals
``m!/((m-k)! kappa_{m-k}) * MV(K_1, ..., K_k, B[m-k])`` where K_j is the
zonoid of column j, B the unit ball, and MV the mixed volume normalized so
that MV(K, ..., K) = vol(K).  For Gaussian columns M_j (c_j + xi) the zonoid
slots carry a common (2 pi)^(-1/2) scale, absorbed into
:func:`mixed_volume_coeff`; for centered columns the identity is an equality
against the outer ellipsoids, and for shifted columns it brackets the
expectation between the ellipsoid value and its inradius^k shrinkage.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .geometry import GaussianVector, limit_body_inradius
from .kernels import axial_stretch, ball_volume
from .montecarlo import EstimateWithCI, MCConfig, mc_mean

__all__ = [
    "FrameSpec",
    "mixed_volume_coeff",
    "expected_absdet_mc",
    "mixed_area",
    "ellipse_support_fn",
    "mixed_volume_ellipsoids_mc",
    "DeterminantBoundsReport",
    "check_determinant_bounds",
    "IIDSquareBounds",
    "iid_square_bounds",
]


@dataclass(frozen=True)
class FrameSpec:
    """m x k random frame: column j is columns[j].matrix @ (mean + xi)."""

    dim: int
    columns: tuple[GaussianVector, ...]

    def __init__(self, dim: int, columns: Sequence[GaussianVector]):
        cols = tuple(columns)
        if not 1 <= len(cols) <= dim:
            raise ValueError("need 1 <= k <= dim columns")
        for col in cols:
            if col.dim != dim:
                raise ValueError("column dimension mismatch")
        object.__setattr__(self, "dim", int(dim))
        object.__setattr__(self, "columns", cols)

    @property
    def k(self) -> int:
        return len(self.columns)


def mixed_volume_coeff(m: int, k: int) -> float:
    """Constant alpha(m, k) = m! / ((2 pi)^(k/2) (m-k)! kappa_{m-k}) linking
    E sqrt(det(Gamma^T Gamma)) to the mixed volume of the outer ellipsoids."""
    if not 1 <= k <= m:
        raise ValueError("need 1 <= k <= m")
    return math.factorial(m) / (
        (2 * math.pi) ** (k / 2) * math.factorial(m - k) * ball_volume(m - k)
    )


def expected_absdet_mc(frame: FrameSpec, cfg: MCConfig) -> EstimateWithCI:
    """Monte Carlo estimate of E sqrt(det(Gamma^T Gamma)).

    Each sample builds the m x k matrix and takes the product of |R_ii| from
    a QR factorization, which is the k-volume of the column parallelotope and
    avoids forming the (condition-squared) Gram matrix.
    """
    m, k = frame.dim, frame.k
    mats = np.stack([col.matrix.T for col in frame.columns])  # (k, m, m)
    means = np.stack([col.mean for col in frame.columns])  # (k, m)

    def sample(rng: np.random.Generator, n: int) -> np.ndarray:
        xi = rng.standard_normal((n, k, m)) + means  # (n, k, m)
        cols = np.einsum("nkm,kmj->njk", xi, mats)  # (n, m, k)
        r = np.linalg.qr(cols, mode="r")
        diag = np.abs(np.diagonal(r, axis1=-2, axis2=-1))
        return np.prod(diag, axis=-1)

    return mc_mean(sample, cfg)


def mixed_area(h_k: Callable, h_l: Callable, n_nodes: int = 4096) -> float:
    """Mixed area of two planar convex bodies from their support functions.

    MV(K, L) = (area(K+L) - area(K) - area(L)) / 2 with
    area(C) = (1/2) int (h^2 - h'^2) dtheta; the derivative is spectral and
    the quadrature is the trapezoid rule on the periodic grid, so smooth
    supports converge exponentially in n_nodes.  Raises if any computed area
    is negative (non-convex input).
    """
    if n_nodes < 64:
        raise ValueError("n_nodes must be >= 64")
    theta = np.arange(n_nodes) * (2 * math.pi / n_nodes)
    freqs = 1j * np.fft.rfftfreq(n_nodes, 1.0 / n_nodes)

    def area(values: np.ndarray, label: str) -> float:
        deriv = np.fft.irfft(np.fft.rfft(values) * freqs, n_nodes)
        a = float(0.5 * np.mean(values**2 - deriv**2) * 2 * math.pi)
        if a < -1e-9 * max(1.0, float(np.max(np.abs(values))) ** 2):
            raise ValueError(f"negative area for {label}: input is not a support function")
        return a

    vk = np.asarray(h_k(theta), dtype=float)
    vl = np.asarray(h_l(theta), dtype=float)
    if vk.shape != theta.shape or vl.shape != theta.shape:
        raise ValueError("support callables must return one value per node")
    return 0.5 * (area(vk + vl, "K+L") - area(vk, "K") - area(vl, "L"))


def ellipse_support_fn(shape: np.ndarray) -> Callable:
    """Support function theta -> |shape^T u(theta)| of the ellipse shape@B."""
    mat = np.asarray(shape, dtype=float)
    if mat.shape != (2, 2) or not np.all(np.isfinite(mat)):
        raise ValueError("shape must be a finite 2x2 matrix")

    def h(theta):
        u = np.stack([np.cos(theta), np.sin(theta)])
        return np.linalg.norm(mat.T @ u, axis=0)

    return h


def mixed_volume_ellipsoids_mc(
    shapes: Sequence[np.ndarray], dim: int, cfg: MCConfig
) -> EstimateWithCI:
    """Estimate MV(shape_1@B, ..., shape_k@B, B[m-k]) by Monte Carlo.

    The ball slots are realized by appending m-k standard centered Gaussian
    columns; the full m-column determinant identity then gives
    MV = E|det| * (2 pi)^(m/2) / m!.
    """
    k = len(shapes)
    if not 1 <= k <= dim:
        raise ValueError("need 1 <= len(shapes) <= dim")
    zero = np.zeros(dim)
    cols = [GaussianVector(np.asarray(a, dtype=float), zero) for a in shapes]
    cols += [GaussianVector(np.eye(dim), zero) for _ in range(dim - k)]
    est = expected_absdet_mc(FrameSpec(dim, cols), cfg)
    scale = (2 * math.pi) ** (dim / 2) / math.factorial(dim)
    return EstimateWithCI(est.mean * scale, est.std_error * scale, est.n_samples)


@dataclass(frozen=True)
class DeterminantBoundsReport:
    dim: int
    k: int
    estimate: EstimateWithCI
    mixed_volume: EstimateWithCI
    coeff: float
    lower: float
    upper: float
    se_lower: float
    se_upper: float
    passed: bool

    def as_dict(self) -> dict:
        d = self.__dict__.copy()
        d["estimate"] = self.estimate._asdict()
        d["mixed_volume"] = self.mixed_volume._asdict()
        return d


def check_determinant_bounds(
    frame: FrameSpec, cfg: MCConfig, n_nodes: int = 4096
) -> DeterminantBoundsReport:
    """Check the two-sided mixed-volume bracket on E sqrt(det(Gamma^T Gamma)).

    The outer-ellipsoid mixed volume is computed exactly by
    :func:`mixed_area` when the frame is planar with k = 2, and by
    :func:`mixed_volume_ellipsoids_mc` (independent seed) otherwise.  The
    verdict allows 4 pooled standard errors on each side.
    """
    m, k = frame.dim, frame.k
    shapes = [col.ellipsoid_matrix() for col in frame.columns]
    if m == 2 and k == 2:
        mv = EstimateWithCI(
            mixed_area(ellipse_support_fn(shapes[0]), ellipse_support_fn(shapes[1]), n_nodes),
            0.0,
            0,
        )
    else:
        mv_cfg = MCConfig(samples=cfg.samples, seed=cfg.seed + 1, chunk=cfg.chunk)
        mv = mixed_volume_ellipsoids_mc(shapes, m, mv_cfg)
    est = expected_absdet_mc(frame, cfg)
    alpha = mixed_volume_coeff(m, k)
    b = limit_body_inradius()
    lower = b**k * alpha * mv.mean
    upper = alpha * mv.mean
    se_lower = math.hypot(est.std_error, b**k * alpha * mv.std_error)
    se_upper = math.hypot(est.std_error, alpha * mv.std_error)
    passed = (est.mean >= lower - 4 * se_lower) and (est.mean <= upper + 4 * se_upper)
    return DeterminantBoundsReport(
        dim=m,
        k=k,
        estimate=est,
        mixed_volume=mv,
        coeff=alpha,
        lower=lower,
        upper=upper,
        se_lower=se_lower,
        se_upper=se_upper,
        passed=passed,
    )


class IIDSquareBounds(NamedTuple):
    lower: float
    upper: float
    asymptote: float


def iid_square_bounds(dim: int, matrix, s) -> IIDSquareBounds:
    """Closed-form bracket for E|det Gamma| when all m columns are
    matrix @ (c + xi) with a common offset |c| = s.

    E|det| = m! |det matrix| vol(gaussian body), so the volume bounds scale
    through; ``asymptote`` is the limit of E|det|/s as s -> inf.
    """
    m = int(dim)
    if m < 1:
        raise ValueError("dim must be >= 1")
    mat = np.asarray(matrix, dtype=float)
    if mat.shape != (m, m) or not np.all(np.isfinite(mat)):
        raise ValueError("matrix must be a finite m x m map")
    d = abs(float(np.linalg.det(mat)))
    lam = float(axial_stretch(s))
    base = math.factorial(m) * d * lam / (2 * math.pi) ** (m / 2)
    lower = base * 2.0 * ball_volume(m - 1) / math.sqrt(m)
    upper = base * ball_volume(m)
    asym = (
        math.factorial(m)
        * d
        * ball_volume(m - 1)
        / (math.sqrt(m) * (2 * math.pi) ** ((m - 1) / 2))
    )
    return IIDSquareBounds(lower=lower, upper=upper, asymptote=asym)
