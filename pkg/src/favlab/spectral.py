"""Fourier-side objects: exponential sums, telescoping products, small values.

The transform of the depth-n multiplicity profile factors as a box-kernel
times the product prod_{k=1..n} phi(L^-k x) of one normalized exponential
sum phi at geometric scales.  phi comes in two parameterizations:

* angle form: phi_theta(x) = (1/L) sum_l exp(-i f_l x) with frequencies
  f_l = L * proj_theta(center_l), the level-1 centers rescaled to the unit
  region;
* slope form: phi_t(x) = (1/L)(1 + e^{ix} + e^{itx} + sum e^{i(a_l+b_l t)x}),
  available once the system is put in normalized coordinates where three
  rescaled centers sit at (0,0), (1,0), (0,1).  `t_form` computes the
  normalized data and `theta_to_t` maps an angle to (t, x-scale) such that
  |phi_theta(x)| = |phi_t(t, xscale*x)|.

The product over scales splits into blocks: with 1 <= k <= n, the low block
P2 takes k = n-m..n, the rest is P1 = Psharp * Pflat with the medium block
Pflat on k = n-m-ell..n-m-1 and the high block Psharp on k = 1..n-m-ell-1.
(The scale k = n-m is assigned to the low block; the three blocks multiply
back exactly to the full product.)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import ifs, shadow
from .errors import FavlabError, SpecInvalid
from .ifs import SimilaritySystem
from .shadow import IntervalUnion, interval_union


@dataclass(frozen=True)
class ExpPoly:
    """Normalized exponential sum: normalization * sum_j coeff_j e^{lambda_j z}."""

    lambdas: tuple[complex, ...]
    coefficients: tuple[complex, ...]
    normalization: float = 1.0

    def __post_init__(self):
        if len(self.lambdas) != len(self.coefficients):
            raise FavlabError("frequency/coefficient length mismatch")

    def __call__(self, z):
        z = np.asarray(z)
        acc = np.zeros(z.shape, dtype=complex)
        for lam, c in zip(self.lambdas, self.coefficients):
            acc += c * np.exp(lam * z)
        return self.normalization * acc

    def derivative_bound(self, im_radius: float = 0.0) -> float:
        """Upper bound for |d/dz| on the strip |Im z| <= im_radius."""
        return abs(self.normalization) * sum(
            abs(c) * abs(lam) * math.exp(abs(lam) * im_radius)
            for lam, c in zip(self.lambdas, self.coefficients)
        )


def phi_frequencies(system: SimilaritySystem, theta: float) -> np.ndarray:
    """Frequencies of the angle form: L * Re(center_l e^{-i theta})."""
    return system.branching * (system.centers() * np.exp(-1j * theta)).real


def phi_theta_poly(system: SimilaritySystem, theta: float) -> ExpPoly:
    freqs = phi_frequencies(system, theta)
    return ExpPoly(
        lambdas=tuple(-1j * f for f in freqs),
        coefficients=(1.0 + 0.0j,) * system.branching,
        normalization=1.0 / system.branching,
    )


@dataclass(frozen=True)
class TForm:
    """Slope-form data: branching L and the (a_l, b_l) rows for l >= 4."""

    branching: int
    extra: tuple[tuple[float, float], ...] = ()

    def poly(self, t: float) -> ExpPoly:
        lams = [0.0j, 1j, 1j * t] + [1j * (a + b * t) for a, b in self.extra]
        return ExpPoly(
            lambdas=tuple(lams),
            coefficients=(1.0 + 0.0j,) * self.branching,
            normalization=1.0 / self.branching,
        )


def t_form(
    system: SimilaritySystem, anchors: tuple[int, int, int] = (0, 1, 2)
) -> TForm:
    """Normalized slope-form of a system.

    The rescaled centers u_l = L*center_l are shifted by u_{anchors[0]} and
    expressed in the basis (u_{a2}-u_{a1}, u_{a3}-u_{a1}); the first three
    rows become (0,0), (1,0), (0,1) and the rest give the extra (a, b) pairs.
    """
    u = system.branching * system.centers()
    i1, i2, i3 = anchors
    v2 = u[i2] - u[i1]
    v3 = u[i3] - u[i1]
    basis = np.array([[v2.real, v3.real], [v2.imag, v3.imag]])
    if abs(np.linalg.det(basis)) < 1e-12:
        raise FavlabError("anchor centers are collinear; pick another triple")
    rest = [l for l in range(system.branching) if l not in anchors]
    extra = []
    for l in rest:
        w = u[l] - u[i1]
        ab = np.linalg.solve(basis, np.array([w.real, w.imag]))
        extra.append((float(ab[0]), float(ab[1])))
    return TForm(branching=system.branching, extra=tuple(extra))


def theta_to_t(
    system: SimilaritySystem, theta: float, anchors: tuple[int, int, int] = (0, 1, 2)
) -> tuple[float, float]:
    """Map an angle to (t, xscale) with |phi_theta(x)| = |phi_t(t, xscale*x)|."""
    u = system.branching * system.centers()
    i1, i2, i3 = anchors
    v2 = u[i2] - u[i1]
    v3 = u[i3] - u[i1]
    d = np.exp(-1j * theta)
    p2 = (v2 * d).real
    p3 = (v3 * d).real
    if abs(p2) < 1e-14:
        raise FavlabError("direction is orthogonal to the first basis vector")
    return float(p3 / p2), float(-p2)


def _phi_poly(system, theta=None, t=None) -> ExpPoly:
    if (theta is None) == (t is None):
        raise FavlabError("pass exactly one of theta= or t=")
    if theta is not None:
        return phi_theta_poly(system, theta)
    tf = system if isinstance(system, TForm) else t_form(system)
    return tf.poly(t)


def phi_eval(system, x, theta: float | None = None, t: float | None = None):
    """Evaluate phi at x (scalar or array), in angle or slope form."""
    return _phi_poly(system, theta, t)(x)


def _scale_product(poly: ExpPoly, ratio: float, ks: range, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    acc = np.ones(x.shape, dtype=complex)
    for k in ks:
        acc *= poly(ratio**k * x)
    return acc


def nu_hat_eval(system, theta: float | None = None, depth: int = 0, x=0.0, *, t: float | None = None):
    """prod_{k=1..depth} phi(L^-k x): the transform of the depth-n measure."""
    poly = _phi_poly(system, theta, t)
    L = system.branching
    return _scale_product(poly, 1.0 / L, range(1, depth + 1), x)


@dataclass(frozen=True)
class ProductSpec:
    """Block sizes for the product split: total depth n, low size m, medium ell."""

    n: int
    m: int
    ell: int

    def __post_init__(self):
        if self.n < 1 or self.m < 0 or self.ell < 0:
            raise SpecInvalid("need n >= 1, m >= 0, ell >= 0")
        if self.m + self.ell >= self.n:
            raise SpecInvalid(f"need m + ell < n, got {self.m}+{self.ell} >= {self.n}")

    @property
    def alpha(self) -> float:
        return self.ell / self.m if self.m else math.inf


def split_products(
    spec: ProductSpec, system, x, theta: float | None = None, t: float | None = None
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Evaluate (P1, P2, Psharp, Pflat) at x; P1 = Psharp*Pflat, P1*P2 = full."""
    poly = _phi_poly(system, theta, t)
    L = system.branching
    r = 1.0 / L
    n, m, ell = spec.n, spec.m, spec.ell
    p_sharp = _scale_product(poly, r, range(1, n - m - ell), x)
    p_flat = _scale_product(poly, r, range(n - m - ell, n - m), x)
    p2 = _scale_product(poly, r, range(n - m, n + 1), x)
    return p_sharp * p_flat, p2, p_sharp, p_flat


@dataclass(frozen=True)
class SsvCover:
    """Grid-detected small-value set of P2 on I = [L^(n-m), L^n]."""

    intervals: IntervalUnion
    threshold: float
    component_count: int
    grid_step: float


def ssv_scan(
    system,
    spec: ProductSpec,
    threshold: float,
    grid_size: int,
    theta: float | None = None,
    t: float | None = None,
) -> SsvCover:
    """Scan |P2| <= threshold on a uniform grid over I, padded one grid step."""
    if grid_size < 1000:
        raise FavlabError("grid_size must be at least 1000")
    poly = _phi_poly(system, theta, t)
    L = system.branching
    lo, hi = float(L) ** (spec.n - spec.m), float(L) ** spec.n
    xs = np.linspace(lo, hi, grid_size)
    step = xs[1] - xs[0]
    p2 = _scale_product(poly, 1.0 / L, range(spec.n - spec.m, spec.n + 1), xs)
    small = np.abs(p2) <= threshold
    cover = interval_union(
        (xs[i] - step, xs[i] + step) for i in np.flatnonzero(small)
    )
    return SsvCover(
        intervals=cover,
        threshold=float(threshold),
        component_count=cover.count,
        grid_step=float(step),
    )


def ssv_small_points(
    system,
    spec: ProductSpec,
    threshold: float,
    grid_size: int,
    focus: Sequence[float] = (),
    focus_halfwidth: float = 0.05,
    focus_points: int = 10000,
    theta: float | None = None,
    t: float | None = None,
) -> np.ndarray:
    """Sample points of I where |P2| dips below threshold.

    The uniform grid is augmented with dense windows around the given focus
    abscissas (typically certified zero locations), so dips far narrower
    than the global grid step are still detected.
    """
    poly = _phi_poly(system, theta, t)
    L = system.branching
    lo, hi = float(L) ** (spec.n - spec.m), float(L) ** spec.n
    parts = [np.linspace(lo, hi, grid_size)]
    for c in focus:
        a = max(lo, c - focus_halfwidth)
        b = min(hi, c + focus_halfwidth)
        if b > a:
            parts.append(np.linspace(a, b, focus_points))
    xs = np.concatenate(parts)
    p2 = _scale_product(poly, 1.0 / L, range(spec.n - spec.m, spec.n + 1), xs)
    return xs[np.abs(p2) <= threshold]


def parseval_check(
    system: SimilaritySystem,
    theta: float,
    depth: int,
    radius: float,
    grid: int,
    cap: int = ifs.ENUMERATION_CAP,
) -> float:
    """Relative gap between the transform-side and space-side L2 masses.

    Transform side: (1/pi) * Simpson integral over [0, radius] of
    |2 h L^n sinc(h x / pi) * prod phi|^2, h the single-shadow half-length.
    Space side: exact L2 norm of the multiplicity profile.
    """
    L = system.branching
    if radius < float(L) ** (depth + 2):
        raise FavlabError("radius must cover [L^(n+2)] for a meaningful tail")
    npts = grid + 1 if grid % 2 == 0 else grid
    xs = np.linspace(0.0, radius, npts)
    h = shadow.shadow_half_length(system, depth, theta)
    box = 2.0 * h * np.sinc(h * xs / np.pi)
    fhat = (L**depth) * box * nu_hat_eval(system, theta=theta, depth=depth, x=xs)
    integrand = np.abs(fhat) ** 2
    step = xs[1] - xs[0]
    simpson = (
        step
        / 3.0
        * (integrand[0] + integrand[-1] + 4 * integrand[1:-1:2].sum() + 2 * integrand[2:-2:2].sum())
    )
    fourier_side = simpson / np.pi
    space_side = shadow.l2_norm_sq(shadow.multiplicity(system, depth, theta, cap))
    return float(abs(fourier_side - space_side) / space_side)


def key_obs_gap(x, y, a: float):
    """Pointwise gap |1+e^{ix}+e^{iy}|^2 - a(|4cos^2 x - 1|^2 + |4cos^2 y - 1|^2)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    lhs = np.abs(1.0 + np.exp(1j * x) + np.exp(1j * y)) ** 2
    px = 4.0 * np.cos(x) ** 2 - 1.0
    py = 4.0 * np.cos(y) ** 2 - 1.0
    return lhs - a * (px**2 + py**2)


def key_obs_check(a: float, grid: int) -> float:
    """Minimum gap over a (grid x grid) lattice on [0, 2pi]^2.

    An even grid count is bumped so that the lattice contains (0, pi), where
    the gap vanishes for a = 1/18.
    """
    if a <= 0:
        raise FavlabError("a must be positive")
    side = grid if grid % 2 == 1 else grid + 1
    xs = np.linspace(0.0, 2.0 * np.pi, side)
    best = math.inf
    for x0 in xs:
        gaps = key_obs_gap(x0, xs, a)
        best = min(best, float(gaps.min()))
    return best


def _sin_triple(x: np.ndarray) -> np.ndarray:
    """sin(3x) with the argument tripled in double-double arithmetic.

    3x is split exactly into hi + lo (2x is exact, and the residual of the
    final add is recovered), then sin(hi + lo) ~ sin hi + lo cos hi.  This
    keeps full relative accuracy even where sin(3x) nearly vanishes.
    """
    a = 2.0 * x
    s = a + x
    lo = x - (s - a)
    return np.sin(s) + lo * np.cos(s)


def sine_identity_check(grid: int, exclude: float = 1e-8) -> float:
    """Max over a grid on [0, 2pi] of |sin 3x / sin x - (4cos^2 x - 1)|.

    Points with |sin x| below `exclude` are skipped (the polynomial side is
    the defined value there).
    """
    xs = np.linspace(0.0, 2.0 * np.pi, grid)
    sx = np.sin(xs)
    keep = np.abs(sx) >= exclude
    ratio = _sin_triple(xs[keep]) / sx[keep]
    poly = 4.0 * np.cos(xs[keep]) ** 2 - 1.0
    return float(np.max(np.abs(ratio - poly)))


def lattice_phi(tform: TForm, y1, y2):
    """The 2pi-scaled two-variable sum whose unimodular locus is Z^2."""
    y1 = np.asarray(y1, dtype=float)
    y2 = np.asarray(y2, dtype=float)
    acc = 1.0 + np.exp(2j * np.pi * y1) + np.exp(2j * np.pi * y2)
    for a, b in tform.extra:
        acc = acc + np.exp(2j * np.pi * (a * y1 + b * y2))
    return acc / tform.branching


def dist_bound_fit(system, grid: int, exclusion: float = 0.05) -> float:
    """Largest b with |Phi(y)| <= 1 - b*dist(y, Z^2) on the sampled domain.

    Near the lattice the left side is tangent to 1 only to second order, so
    the ratio (1-|Phi|)/dist degenerates there; points with dist below
    `exclusion` are left out to make the fit refinement-stable.
    """
    tf = system if isinstance(system, TForm) else t_form(system)
    ys = np.linspace(0.0, 1.0, grid, endpoint=False)
    d1 = np.minimum(ys, 1.0 - ys)
    best = math.inf
    for i, y1 in enumerate(ys):
        dist = np.hypot(d1[i], d1)
        keep = dist >= exclusion
        if not np.any(keep):
            continue
        vals = np.abs(lattice_phi(tf, y1, ys[keep]))
        ratio = (1.0 - vals) / dist[keep]
        best = min(best, float(ratio.min()))
    return best


@dataclass(frozen=True)
class ErgodicSample:
    """Orbit statistics of a_k = 2(1 + cos(4^k lam))."""

    values: np.ndarray
    running_average: np.ndarray
    classification: str


def _rational_angle(lam: float, max_den: int = 10**4, tol: float = 1e-9):
    mu = (lam / (2.0 * np.pi)) % 1.0
    frac = Fraction(mu).limit_denominator(max_den)
    if abs(mu - float(frac)) <= tol:
        return frac
    return None


def ergodic_sample(lam: float, count: int) -> ErgodicSample:
    """Sample a_k = 2(1 + cos(4^k lam)) for k = 1..count and classify the orbit.

    When lam/(2pi) is (numerically) a small-denominator rational p/q, the
    orbit 4^k p/q mod 1 is evaluated in exact modular arithmetic: it lands on
    0 forever when the odd part of q is 1 ("terminates", value 4), otherwise
    it cycles ("periodic").  Anything else is iterated in floating point and
    reported as "equidistributed"; the iteration x -> 4x mod 2pi is chaotic,
    but its sampling statistics are what the classification is about.
    """
    if count < 1:
        raise FavlabError("count must be at least 1")
    frac = _rational_angle(lam)
    if frac is not None:
        p, q = frac.numerator, frac.denominator
        residues = np.empty(count, dtype=np.int64)
        r = p % q
        for k in range(count):
            r = (4 * r) % q
            residues[k] = r
        odd = q
        while odd % 2 == 0:
            odd //= 2
        kind = "terminates" if odd == 1 else "periodic"
        angles = 2.0 * np.pi * residues / q
    else:
        kind = "equidistributed"
        angles = np.empty(count)
        x = float(lam % (2.0 * np.pi))
        for k in range(count):
            x = (4.0 * x) % (2.0 * np.pi)
            angles[k] = x
    values = 2.0 * (1.0 + np.cos(angles))
    running = np.cumsum(values) / np.arange(1, count + 1)
    return ErgodicSample(values=values, running_average=running, classification=kind)
