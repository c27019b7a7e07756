"""Bodies of revolution attached to Gaussian vectors.

The zonoid of an integrable random vector X in R^m is the centered convex
body with support function h(u) = (1/2) E|<u, X>|.  For X = c + xi with xi
standard Gaussian, the zonoid is a body of revolution about the axis c, so
every quantity reduces to the plane spanned by (axis, radial) coordinates.
Directions are therefore passed as pairs (x, yr): x along the mean axis,
yr >= 0 the radial part.

Four bodies are exposed, named by the ``kind`` of :class:`RevolutionBody`:

* ``"gaussian"``   -- the zonoid of c + xi, with s = |c|;
* ``"ellipsoid"``  -- the outer ellipsoid: unit ball scaled by 1/sqrt(2 pi)
  and stretched by ``axial_stretch(s)`` along the axis;
* ``"normalized"`` -- the gaussian body pulled back through the inverse
  stretch map and rescaled by sqrt(2 pi), so it touches the unit sphere at
  the poles and the equator;
* ``"limit"``      -- the limit of the normalized bodies as s -> inf, whose
  support function is :func:`gausszonoids.kernels.limit_support`.

The normalized bodies shrink strictly with s and are sandwiched between the
limit body and the unit ball; rescaling back gives the two-sided ellipsoid
sandwich checked by :func:`check_inclusion`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy import integrate, optimize, special

from .kernels import (
    SQRT_2PI,
    SQRT_PI,
    axial_stretch,
    ball_volume,
    limit_support,
)
from .montecarlo import stream

__all__ = [
    "Direction",
    "KINDS",
    "RevolutionBody",
    "gaussian_support",
    "ellipsoid_support",
    "normalized_support",
    "limit_support",
    "gaussian_gradient",
    "boundary_profile",
    "volume",
    "VolumeBounds",
    "volume_bounds",
    "volume_asymptote",
    "limit_boundary_radius",
    "compute_b_infinity",
    "limit_body_inradius",
    "limit_inradius_angle",
    "limit_inradius_grid",
    "mean_stretch_matrix",
    "GaussianVector",
    "InclusionReport",
    "check_inclusion",
]

KINDS = ("gaussian", "normalized", "limit", "ellipsoid")


class Direction(NamedTuple):
    """Reduced direction: component along the mean axis and radial norm."""

    x: float
    yr: float


def _check_dir(x, yr):
    x = np.asarray(x, dtype=float)
    yr = np.asarray(yr, dtype=float)
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(yr))):
        raise ValueError("directions must be finite")
    if np.any(yr < 0):
        raise ValueError("radial component yr must be nonnegative")
    return np.broadcast_arrays(x, yr)


def _check_s(s, positive=False):
    s = float(s)
    if not math.isfinite(s):
        raise ValueError("mean offset s must be finite")
    if positive and s <= 0:
        raise ValueError("mean offset s must be positive")
    if s < 0:
        raise ValueError("mean offset s must be nonnegative")
    return s


def gaussian_support(s, x, yr):
    """Support function of the Gaussian zonoid with mean offset s >= 0.

    In reduced coordinates, with sigma = hypot(x, yr)::

        h(x, yr) = sigma/sqrt(2 pi) * exp(-x^2 s^2 / (2 sigma^2))
                   + (x s / 2) * erf(x s / (sqrt(2) sigma))

    This is half the folded-normal mean of <u, c + xi>.  The zero direction
    returns 0.  At s = 0 the body is the ball of radius 1/sqrt(2 pi).
    """
    s = _check_s(s)
    x, yr = _check_dir(x, yr)
    sigma = np.hypot(x, yr)
    safe = np.where(sigma > 0, sigma, 1.0)
    w = x * s / safe
    h = sigma / SQRT_2PI * np.exp(-0.5 * w * w) + 0.5 * x * s * special.erf(
        w / math.sqrt(2.0)
    )
    out = np.where(sigma > 0, h, 0.0)
    return out if out.ndim else float(out)


def ellipsoid_support(s, x, yr):
    """Support of the outer ellipsoid: axis semi-length axial_stretch(s)/sqrt(2 pi),
    radial semi-length 1/sqrt(2 pi)."""
    s = _check_s(s)
    x, yr = _check_dir(x, yr)
    lam = float(axial_stretch(s))
    out = np.hypot(lam * x, yr) / SQRT_2PI
    return out if out.ndim else float(out)


def normalized_support(s, x, yr):
    """Support of the normalized zonoid (inverse-stretched, rescaled), s > 0.

    Equals ``sqrt(2 pi) * gaussian_support(s, x/axial_stretch(s), yr)``; takes
    the value 1 at the poles (x, 0) and on the equator (0, yr) for unit
    directions, decreases strictly in s, and converges to
    :func:`gausszonoids.kernels.limit_support` as s -> inf.
    """
    s = _check_s(s, positive=True)
    x, yr = _check_dir(x, yr)
    lam = float(axial_stretch(s))
    d = np.hypot(x, lam * yr)
    safe = np.where(d > 0, d, 1.0)
    beta = x * s / safe
    out = np.where(d > 0, d / lam * axial_stretch(beta), 0.0)
    return out if out.ndim else float(out)


def gaussian_gradient(s, x, yr):
    """Gradient (d h/d x, d h/d yr) of :func:`gaussian_support`.

    The cross terms of the raw differentiation cancel exactly, leaving::

        h_x = (x/sigma) * exp(-w^2/2)/sqrt(2 pi) + (s/2) * erf(w/sqrt(2))
        h_yr = (yr/sigma) * exp(-w^2/2)/sqrt(2 pi),       w = x s / sigma

    so the boundary point with outer normal (x, yr) is (h_x, h_yr).  Requires
    (x, yr) != 0.
    """
    s = _check_s(s)
    x, yr = _check_dir(x, yr)
    sigma = np.hypot(x, yr)
    if np.any(sigma == 0):
        raise ValueError("gradient undefined at the zero direction")
    w = x * s / sigma
    e = np.exp(-0.5 * w * w) / SQRT_2PI
    gx = x / sigma * e + 0.5 * s * special.erf(w / math.sqrt(2.0))
    gy = yr / sigma * e
    return gx, gy


def _boundary_gaussian(s, theta):
    return gaussian_gradient(s, np.cos(theta), np.sin(theta))


def _boundary_ellipsoid(s, theta):
    lam = float(axial_stretch(s))
    x, yr = np.cos(theta), np.sin(theta)
    d = np.hypot(lam * x, yr)
    return lam * lam * x / (SQRT_2PI * d), yr / (SQRT_2PI * d)


def _boundary_normalized(s, theta):
    # gradients are 0-homogeneous, so evaluate the gaussian gradient at the
    # pulled-back (non-unit) direction and apply the chain rule of the
    # inverse stretch map.
    lam = float(axial_stretch(s))
    gx, gy = gaussian_gradient(s, np.cos(theta) / lam, np.sin(theta))
    return SQRT_2PI * gx / lam, SQRT_2PI * gy


def _boundary_limit(theta):
    x, z = np.cos(theta), np.sin(theta)
    pole = z == 0
    safe = np.where(pole, 1.0, z)
    ax = np.where(pole, np.sign(x), special.erf(x / (SQRT_PI * safe)))
    rad = np.where(pole, 0.0, np.exp(-x * x / (math.pi * safe * safe)))
    return ax, rad


@dataclass(frozen=True)
class RevolutionBody:
    """A body of revolution in R^dim described in reduced coordinates."""

    kind: str
    dim: int
    s: float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not isinstance(self.dim, (int, np.integer)) or self.dim < 1:
            raise ValueError("dim must be an integer >= 1")
        if self.kind == "limit":
            if self.s is not None:
                raise ValueError("limit body takes no mean offset")
        else:
            if self.s is None:
                raise ValueError(f"{self.kind} body requires a mean offset s")
            _check_s(self.s, positive=(self.kind == "normalized"))

    def support(self, x, yr):
        if self.kind == "gaussian":
            return gaussian_support(self.s, x, yr)
        if self.kind == "ellipsoid":
            return ellipsoid_support(self.s, x, yr)
        if self.kind == "normalized":
            return normalized_support(self.s, x, yr)
        return limit_support(x, yr)

    def boundary(self, theta):
        """Boundary points (axial, radial) with outer normal (cos t, sin t)."""
        theta = np.asarray(theta, dtype=float)
        if self.kind == "gaussian":
            return _boundary_gaussian(self.s, theta)
        if self.kind == "ellipsoid":
            return _boundary_ellipsoid(self.s, theta)
        if self.kind == "normalized":
            return _boundary_normalized(self.s, theta)
        return _boundary_limit(theta)


def boundary_profile(body: RevolutionBody, n_points: int = 181) -> np.ndarray:
    """Sample the boundary meridian at angles theta in [0, pi].

    Returns an (n_points, 3) array with columns (theta, axial, radial); the
    radial column is 0 at both poles and the axial column decreases strictly,
    which is how convexity shows up in this parametrization.
    """
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    theta = np.linspace(0.0, math.pi, n_points)
    ax, rad = body.boundary(theta)
    return np.column_stack([theta, ax, rad])


def _quad(f, a, b, points=None):
    val, err = integrate.quad(
        f, a, b, epsabs=1e-13, epsrel=1e-12, limit=400, points=points
    )
    return val


def volume(body: RevolutionBody) -> float:
    """Volume of the body, by quadrature of the meridian profile.

    The generic formula is vol = ball_volume(dim-1) * integral R^(dim-1) dA
    along the boundary (R radial, A axial).  Each kind carries a closed-form
    integrand:

    * gaussian: the support parametrization gives
      ``kappa_{m-1}/(2 pi)^(m/2) * int_0^pi sin^m t (1 + s^2 sin^2 t)
      exp(-m s^2 cos^2 t / 2) dt``;
    * ellipsoid: same with the ellipse meridian (exactly
      axial_stretch(s) * kappa_m / (2 pi)^(m/2));
    * normalized: image of the gaussian body under the inverse stretch map,
      volume scales by (2 pi)^(m/2)/axial_stretch(s);
    * limit: radial profile exp(-erf_inv(A)^2); substituting A = erf(u)
      removes the endpoint flatness and leaves a Gaussian integrand
      (closed form 2*kappa_{m-1}/sqrt(m)).
    """
    m = body.dim
    km1 = ball_volume(m - 1)
    if body.kind == "gaussian":
        s = float(body.s)

        def f(t):
            sn = math.sin(t)
            return (
                sn**m
                * (1.0 + s * s * sn * sn)
                * math.exp(-0.5 * m * s * s * math.cos(t) ** 2)
            )

        pts = [math.pi / 2]
        if s > 10:  # integrand concentrates near the equator at width ~1/s
            pts = sorted(math.pi / 2 + c / s for c in (-4, -2, 0, 2, 4))
        return km1 / (2 * math.pi) ** (m / 2) * _quad(f, 0.0, math.pi, points=pts)
    if body.kind == "ellipsoid":
        lam = float(axial_stretch(body.s))
        val = _quad(lambda t: math.sin(t) ** m, 0.0, math.pi)
        return km1 * lam / (2 * math.pi) ** (m / 2) * val
    if body.kind == "normalized":
        inner = volume(RevolutionBody("gaussian", m, body.s))
        return (2 * math.pi) ** (m / 2) / float(axial_stretch(body.s)) * inner
    # limit body
    u_max = 9.0 / math.sqrt(m)
    val = _quad(lambda u: math.exp(-m * u * u), -u_max, u_max, points=[0.0])
    return km1 * 2.0 / SQRT_PI * val


class VolumeBounds(NamedTuple):
    lower: float
    lower_sharp: float
    upper: float


def volume_bounds(dim: int, s) -> VolumeBounds:
    """Closed-form two-sided bounds for the gaussian body volume.

    ``upper`` is the outer-ellipsoid volume; ``lower`` shrinks it by
    inradius^dim of the limit body; ``lower_sharp`` is the sharper bound
    axial_stretch(s) * 2*kappa_{m-1} / (sqrt(m) (2 pi)^(m/2)) coming from the
    limit-body volume, and dominates ``lower`` for every dim.
    """
    s = _check_s(s)
    m = int(dim)
    lam = float(axial_stretch(s))
    upper = lam * ball_volume(m) / (2 * math.pi) ** (m / 2)
    b = limit_body_inradius()
    lower = b**m * upper
    lower_sharp = lam * 2.0 * ball_volume(m - 1) / (
        math.sqrt(m) * (2 * math.pi) ** (m / 2)
    )
    return VolumeBounds(lower=lower, lower_sharp=lower_sharp, upper=upper)


def volume_asymptote(dim: int) -> float:
    """Slope of vol(gaussian body) in s as s -> inf:
    kappa_{m-1} / (sqrt(m) (2 pi)^((m-1)/2))."""
    m = int(dim)
    if m < 1:
        raise ValueError("dim must be >= 1")
    return ball_volume(m - 1) / (math.sqrt(m) * (2 * math.pi) ** ((m - 1) / 2))


def limit_boundary_radius(x):
    """Radial coordinate of the limit-body boundary at axial coordinate x.

    ``f(x) = exp(-erf_inv(x)^2)`` for |x| < 1, extended by f(+-1) = 0.  The
    boundary of the limit body is exactly {(x, f(x) w): |x| <= 1, |w| = 1}.
    """
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("x must be finite")
    if np.any(np.abs(x) > 1):
        raise ValueError("limit profile is defined for |x| <= 1")
    interior = np.abs(x) < 1
    safe = np.where(interior, x, 0.0)
    out = np.where(interior, np.exp(-(special.erfinv(safe) ** 2)), 0.0)
    return out if out.ndim else float(out)


def _limit_ring(t):
    return float(limit_support(math.cos(t), math.sin(t)))


@lru_cache(maxsize=8)
def _inradius_search(tol: float) -> tuple[float, float]:
    grid = np.linspace(0.0, math.pi / 2, 1001)
    vals = limit_support(np.cos(grid), np.sin(grid))
    i = int(np.argmin(vals))
    res = optimize.minimize_scalar(
        _limit_ring,
        bracket=(grid[i - 1], grid[i], grid[i + 1]),
        method="golden",
        options={"xtol": tol},
    )
    return float(res.x), float(res.fun)


def limit_body_inradius(tol: float = 1e-10) -> float:
    """Radius of the largest centered ball inside the limit body.

    The limit body is origin symmetric, so the inradius is the minimum of its
    support function over the unit circle; by symmetry the scan is restricted
    to the first quadrant.  A 1000-point bracket is refined by golden-section
    search down to an angular tolerance ``tol``; the value is accurate to
    O(tol^2) and sits near 0.91035.
    """
    return _inradius_search(tol)[1]


def limit_inradius_angle(tol: float = 1e-10) -> float:
    """Angle on the unit circle where the limit support attains its minimum."""
    return _inradius_search(tol)[0]


# the constant is usually written b-infinity; same computation
compute_b_infinity = limit_body_inradius


def limit_inradius_grid(n: int = 1_000_000) -> float:
    """Independent check of :func:`limit_body_inradius`: plain minimum of the
    limit support over an n-point first-quadrant grid."""
    t = np.linspace(0.0, math.pi / 2, n)
    return float(np.min(limit_support(np.cos(t), np.sin(t))))


def mean_stretch_matrix(c: np.ndarray) -> np.ndarray:
    """Symmetric map stretching the c-axis by axial_stretch(|c|), identity on
    the orthogonal complement.  Returns the identity for c = 0."""
    c = np.asarray(c, dtype=float)
    if c.ndim != 1:
        raise ValueError("c must be a vector")
    if not np.all(np.isfinite(c)):
        raise ValueError("c must be finite")
    m = c.shape[0]
    norm = float(np.linalg.norm(c))
    eye = np.eye(m)
    if norm == 0.0:
        return eye
    unit = c / norm
    return eye + (float(axial_stretch(norm)) - 1.0) * np.outer(unit, unit)


@dataclass(frozen=True)
class GaussianVector:
    """X = matrix @ (mean + xi) with xi standard Gaussian in R^m.

    The zonoid of X is the image of the gaussian body under ``matrix``; its
    support function at u reduces to the axial pair of matrix^T u relative to
    the mean direction.
    """

    matrix: np.ndarray
    mean: np.ndarray

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=float)
        mu = np.array(self.mean, dtype=float)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("matrix must be square")
        if mu.shape != (mat.shape[0],):
            raise ValueError("mean must be a vector matching the matrix size")
        if not (np.all(np.isfinite(mat)) and np.all(np.isfinite(mu))):
            raise ValueError("matrix and mean must be finite")
        sv = np.linalg.svd(mat, compute_uv=False)
        if sv[-1] <= 1e-12 * sv[0]:
            raise ValueError("matrix is numerically singular")
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "mean", mu)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def mean_norm(self) -> float:
        return float(np.linalg.norm(self.mean))

    def support(self, u):
        """Zonoid support function (1/2) E|<u, X>| at u (vector or batch)."""
        u = np.asarray(u, dtype=float)
        if not np.all(np.isfinite(u)):
            raise ValueError("u must be finite")
        v = u @ self.matrix
        s = self.mean_norm
        if s == 0.0:
            h = np.linalg.norm(np.atleast_2d(v), axis=-1) / SQRT_2PI
            return float(h[0]) if u.ndim == 1 else h.reshape(u.shape[:-1])
        unit = self.mean / s
        x = v @ unit
        yr = np.linalg.norm(np.atleast_2d(v - np.multiply.outer(x, unit)), axis=-1)
        h = gaussian_support(s, np.atleast_1d(x), yr)
        return float(h[0]) if u.ndim == 1 else np.asarray(h).reshape(u.shape[:-1])

    def ellipsoid_matrix(self) -> np.ndarray:
        """Shape matrix of the outer ellipsoid (unit-ball image), before the
        common 1/sqrt(2 pi) scale."""
        return self.matrix @ mean_stretch_matrix(self.mean)


@dataclass(frozen=True)
class InclusionReport:
    """Outcome of a randomized two-sided sandwich check."""

    dim: int
    s: float
    n_dirs: int
    seed: int
    min_ratio_lower: float
    max_ratio_upper: float
    worst_direction: Direction
    limit_inradius: float
    slack: float
    passed: bool

    def as_dict(self) -> dict:
        d = self.__dict__.copy()
        d["worst_direction"] = {"x": self.worst_direction.x, "yr": self.worst_direction.yr}
        return d


def check_inclusion(
    dim: int,
    s,
    n_dirs: int = 10_000,
    seed: int = 0,
    chunk: int = 1 << 17,
    slack: float = 1e-12,
) -> InclusionReport:
    """Verify the two-sided ellipsoid sandwich on random unit directions.

    For each sampled direction u the ratio gaussian/ellipsoid support must lie
    in [inradius - slack, 1 + slack].  Directions are drawn in chunks from
    counter-based substreams, so the report is deterministic for a fixed
    (seed, n_dirs, chunk).  A violation does not raise; it is returned as a
    failing report carrying the worst direction as witness.
    """
    s = _check_s(s)
    if dim < 1:
        raise ValueError("dim must be >= 1")
    if n_dirs < 1:
        raise ValueError("n_dirs must be >= 1")
    b = limit_body_inradius()
    min_ratio = np.inf
    max_ratio = -np.inf
    worst = Direction(1.0, 0.0)
    worst_margin = np.inf
    done = 0
    index = 0
    while done < n_dirs:
        n = min(chunk, n_dirs - done)
        rng = stream(seed, index)
        u = rng.standard_normal((n, dim))
        norms = np.linalg.norm(u, axis=1)
        ok = norms > 0  # zero-norm draws have probability 0; drop defensively
        u = u[ok] / norms[ok, None]
        x = u[:, 0]
        yr = np.linalg.norm(u[:, 1:], axis=1) if dim > 1 else np.zeros_like(x)
        ratio = np.asarray(gaussian_support(s, x, yr)) / np.asarray(
            ellipsoid_support(s, x, yr)
        )
        lo = int(np.argmin(ratio))
        hi = int(np.argmax(ratio))
        min_ratio = min(min_ratio, float(ratio[lo]))
        max_ratio = max(max_ratio, float(ratio[hi]))
        margin_lo = float(ratio[lo]) - b
        margin_hi = 1.0 - float(ratio[hi])
        if margin_lo < worst_margin:
            worst_margin = margin_lo
            worst = Direction(float(x[lo]), float(yr[lo]))
        if margin_hi < worst_margin:
            worst_margin = margin_hi
            worst = Direction(float(x[hi]), float(yr[hi]))
        done += n
        index += 1
    passed = (min_ratio >= b - slack) and (max_ratio <= 1.0 + slack)
    return InclusionReport(
        dim=int(dim),
        s=s,
        n_dirs=int(n_dirs),
        seed=int(seed),
        min_ratio_lower=min_ratio,
        max_ratio_upper=max_ratio,
        worst_direction=worst,
        limit_inradius=b,
        slack=slack,
        passed=passed,
    )
