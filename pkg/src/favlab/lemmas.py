"""Verification toolbox for the analysis layer.

Argument-principle zero counting with quadrisection localization, the
Blaschke-type zero/sup bound, the small-value neighborhood cover, Turan-type
supremum ratios for exponential sums, box doubling ratios, and the
frequency-cluster L2 bound.  Everything works on plain callables
f(np.ndarray[complex]) -> np.ndarray[complex]; ExpPoly instances qualify.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import shadow, spectral
from .errors import (
    ContourThroughZero,
    DeltaOutOfRange,
    FavlabError,
    PreconditionUnmet,
)
from .shadow import Interval, IntervalUnion, interval_union
from .spectral import ExpPoly, ProductSpec, TForm

ZERO_TOLERANCE = 1e-9
RESIDUAL_TOLERANCE = 1e-6
BOUNDARY_TOLERANCE = 1e-6
MAX_JITTER_ATTEMPTS = 8


@dataclass(frozen=True)
class ZeroCertificate:
    """Winding count plus localized zeros for f on a disc.

    sup_bound is the max of |f| over the sampled contour and base_value is
    |f(center)|; every zero carries its multiplicity by repetition.
    """

    count: int
    zeros: tuple[complex, ...]
    sup_bound: float
    base_value: float


def _phase_winding(vals: np.ndarray) -> tuple[bool, float]:
    """Total winding of a closed loop of nonzero values; ok=False if jumps
    exceed pi/2 (sampling too coarse to trust)."""
    args = np.angle(vals)
    d = np.diff(np.concatenate([args, args[:1]]))
    d = (d + np.pi) % (2.0 * np.pi) - np.pi
    return bool(np.max(np.abs(d)) < 0.5 * np.pi), float(d.sum() / (2.0 * np.pi))


def _winding_on_loop(
    f: Callable, loop: Callable[[np.ndarray], np.ndarray], boundary_tol: float = 0.0
) -> int:
    """Winding number of f along a closed loop.

    Samples are doubled until every phase step is below pi/2; an exact zero
    on the contour, a value below boundary_tol, or failure to settle raises
    ContourThroughZero.
    """
    n = 64
    while n <= 1 << 16:
        pts = loop(np.arange(n) / n)
        vals = np.asarray(f(pts))
        low = float(np.min(np.abs(vals)))
        if low <= boundary_tol or low == 0.0:
            raise ContourThroughZero("contour passes too close to a zero")
        ok, w = _phase_winding(vals)
        if ok:
            k = round(w)
            if abs(w - k) > 0.05:
                raise FavlabError(f"winding {w} is not close to an integer")
            return int(k)
        n *= 2
    raise ContourThroughZero("phase steps stay too large; zero on contour?")


def _circle_winding(f, center: complex, radius: float, boundary_tol: float) -> int:
    return _winding_on_loop(
        f, lambda s: center + radius * np.exp(2j * np.pi * s), boundary_tol
    )


def _rect_winding(f, x0, x1, y0, y1) -> int:
    def loop(s: np.ndarray) -> np.ndarray:
        # Perimeter parameterized by arc fraction, counterclockwise.
        w, h = x1 - x0, y1 - y0
        per = 2.0 * (w + h)
        d = s * per
        out = np.empty(d.shape, dtype=complex)
        m1 = d < w
        m2 = (d >= w) & (d < w + h)
        m3 = (d >= w + h) & (d < 2 * w + h)
        m4 = d >= 2 * w + h
        out[m1] = x0 + d[m1] + 1j * y0
        out[m2] = x1 + 1j * (y0 + (d[m2] - w))
        out[m3] = x1 - (d[m3] - w - h) + 1j * y1
        out[m4] = x0 + 1j * (y1 - (d[m4] - 2 * w - h))
        return out

    return _winding_on_loop(f, loop)


_SPLIT_FRACTIONS = (0.5, 0.53, 0.47, 0.57, 0.43, 0.61, 0.39, 0.65)


def _best_split(f, x0, x1, y0, y1) -> tuple[float, float]:
    """Pick the quadrisection cross whose lines stay farthest from zeros."""
    ts = np.linspace(0.0, 1.0, 33)
    best, best_val = (0.5, 0.5), -1.0
    for frac in _SPLIT_FRACTIONS:
        xm = x0 + frac * (x1 - x0)
        ym = y0 + frac * (y1 - y0)
        vert = xm + 1j * (y0 + ts * (y1 - y0))
        horiz = (x0 + ts * (x1 - x0)) + 1j * ym
        low = float(
            min(np.min(np.abs(np.asarray(f(vert)))), np.min(np.abs(np.asarray(f(horiz)))))
        )
        if low > best_val:
            best_val = low
            best = (frac, frac)
    return best


def _newton_polish(f, z0: complex, box_size: float) -> complex | None:
    """Refine a simple zero by Newton steps with a numeric derivative."""
    z = complex(z0)
    h = max(box_size * 1e-3, 1e-12)
    for _ in range(60):
        fz = complex(np.asarray(f(np.array([z])))[0])
        if abs(fz) == 0.0:
            return z
        dfz = complex(
            (np.asarray(f(np.array([z + h])))[0] - np.asarray(f(np.array([z - h])))[0])
        ) / (2.0 * h)
        if dfz == 0:
            return None
        step = fz / dfz
        z -= step
        if abs(z - z0) > 4.0 * box_size:
            return None
        if abs(step) < 1e-14 * max(1.0, abs(z)):
            break
        h = max(abs(step) * 1e-2, 1e-13)
    return z


def _localize(f, x0, x1, y0, y1, tol, out: list, depth: int = 0):
    """Recursive quadrisection: push (zero, multiplicity) pairs into out.

    The outer contour is assumed validated by the caller; split lines are
    chosen per box to stay away from zeros, so child contours are sound.
    """
    w = _rect_winding(f, x0, x1, y0, y1)
    if w == 0:
        return
    size = max(x1 - x0, y1 - y0)
    if size <= tol:
        out.append((complex(0.5 * (x0 + x1), 0.5 * (y0 + y1)), w))
        return
    if w == 1 and size < 0.02:
        z = _newton_polish(f, complex(0.5 * (x0 + x1), 0.5 * (y0 + y1)), size)
        if (
            z is not None
            and x0 - tol <= z.real <= x1 + tol
            and y0 - tol <= z.imag <= y1 + tol
            and abs(np.asarray(f(np.array([z])))[0]) < RESIDUAL_TOLERANCE
        ):
            out.append((z, 1))
            return
    if depth > 80:
        raise ContourThroughZero("quadrisection failed to separate zeros")
    fx, fy = _best_split(f, x0, x1, y0, y1)
    xm = x0 + fx * (x1 - x0)
    ym = y0 + fy * (y1 - y0)
    _localize(f, x0, xm, y0, ym, tol, out, depth + 1)
    _localize(f, xm, x1, y0, ym, tol, out, depth + 1)
    _localize(f, x0, xm, ym, y1, tol, out, depth + 1)
    _localize(f, xm, x1, ym, y1, tol, out, depth + 1)


def _dedupe(zeros: Sequence[tuple[complex, int]], tol: float) -> list[tuple[complex, int]]:
    kept: list[tuple[complex, int]] = []
    for z, m in zeros:
        for i, (zk, mk) in enumerate(kept):
            if abs(z - zk) <= 10.0 * tol:
                kept[i] = (zk, max(mk, m))
                break
        else:
            kept.append((z, m))
    return kept


def zeros_in_rect(
    f,
    x0: float,
    x1: float,
    y0: float,
    y1: float,
    zero_tol: float = ZERO_TOLERANCE,
) -> list[complex]:
    """All zeros of f in the rectangle, localized to zero_tol (with multiplicity).

    The rectangle is padded slightly (retrying a few pad sizes if a zero sits
    on the boundary), so zeros marginally outside may be reported too.
    """
    last: Exception | None = None
    for k in range(MAX_JITTER_ATTEMPTS):
        pad = (0.0031 + 0.0097 * k) * max(x1 - x0, y1 - y0)
        try:
            found: list[tuple[complex, int]] = []
            _localize(f, x0 - pad, x1 + pad, y0 - pad, y1 + pad, zero_tol, found)
            out: list[complex] = []
            for z, m in _dedupe(found, zero_tol):
                out.extend([z] * m)
            return out
        except ContourThroughZero as exc:
            last = exc
    raise ContourThroughZero(f"no admissible rectangle after padding: {last}")


def count_zeros(
    f,
    center: complex = 0.0,
    radius: float = 0.5,
    zero_tol: float = ZERO_TOLERANCE,
    boundary_tol: float = BOUNDARY_TOLERANCE,
    jitter_sign: int = -1,
) -> ZeroCertificate:
    """Argument-principle zero count on the disc |z - center| < radius.

    If the circle runs too close to a zero the radius is nudged by up to
    MAX_JITTER_ATTEMPTS steps of 0.2% in the direction of jitter_sign
    (inward by default, so the count never gains spurious boundary zeros).
    """
    center = complex(center)
    last_exc: Exception | None = None
    for attempt in range(MAX_JITTER_ATTEMPTS):
        r = radius * (1.0 + jitter_sign * 0.002 * attempt)
        try:
            m = _circle_winding(f, center, r, boundary_tol)
            pad = r * 0.0137
            raw: list[tuple[complex, int]] = []
            _localize(
                f,
                center.real - r - pad,
                center.real + r + pad,
                center.imag - r - pad,
                center.imag + r + pad,
                zero_tol,
                raw,
            )
            inside = [
                (z, mult)
                for z, mult in _dedupe(raw, zero_tol)
                if abs(z - center) <= r * (1.0 + 1e-9)
            ]
            if sum(mult for _, mult in inside) != m:
                raise ContourThroughZero("disc/box zero count mismatch near rim")
            zeros: list[complex] = []
            for z, mult in inside:
                zeros.extend([z] * mult)
            vals = np.abs(np.asarray(f(np.array(zeros, dtype=complex)))) if zeros else np.empty(0)
            if zeros and np.max(vals) > RESIDUAL_TOLERANCE:
                raise FavlabError("localized point is not a zero; function too wild")
            circle = center + r * np.exp(2j * np.pi * np.arange(512) / 512)
            sup = float(np.max(np.abs(np.asarray(f(circle)))))
            base = float(abs(np.asarray(f(np.array([center])))[0]))
            return ZeroCertificate(
                count=m, zeros=tuple(zeros), sup_bound=max(sup, base), base_value=base
            )
        except ContourThroughZero as exc:
            last_exc = exc
    raise ContourThroughZero(f"no admissible contour after jitters: {last_exc}")


@dataclass(frozen=True)
class BlaschkeReport:
    zero_count: int
    sup_bound: float
    bound: float
    passed: bool
    certificate: ZeroCertificate


def blaschke_check(f, sup_samples: int = 4096) -> BlaschkeReport:
    """Zero count in the half-disc against log2 of the sup on the unit disc.

    Requires |f(0)| >= 1.  The sup is sampled on |z| = 1 (max modulus) and
    floored by |f(0)|.
    """
    base = float(abs(np.asarray(f(np.array([0.0 + 0.0j])))[0]))
    if base < 1.0:
        raise PreconditionUnmet(f"|f(0)| = {base} < 1")
    cert = count_zeros(f, 0.0, 0.5)
    circle = np.exp(2j * np.pi * np.arange(sup_samples) / sup_samples)
    sup = max(float(np.max(np.abs(np.asarray(f(circle))))), base)
    bound = math.log2(sup)
    return BlaschkeReport(
        zero_count=cert.count,
        sup_bound=sup,
        bound=bound,
        passed=cert.count <= bound,
        certificate=cert,
    )


@dataclass(frozen=True)
class CoverReport:
    zero_count: int
    eps: float
    small_samples: int
    worst_margin: float
    passed: bool


def _quarter_disc_grid(points: int) -> np.ndarray:
    k = max(8, int(math.sqrt(points)))
    radii = 0.25 * np.sqrt(np.linspace(0.0, 1.0, k))
    angles = np.linspace(0.0, 2.0 * np.pi, k, endpoint=False)
    return (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()


def small_value_cover_check(f, delta: float, grid: int = 40000) -> CoverReport:
    """Check that {|f| < delta} inside the quarter disc hugs the zeros.

    With M zeros in the half disc, the admissible neighborhood radius is
    eps = (9/16)(3 delta)^(1/M); every sampled point with |f| < delta must
    lie within eps of a zero.  Requires delta in (0, 1/3) and |f(0)| >= 1.
    """
    if not 0.0 < delta < 1.0 / 3.0:
        raise DeltaOutOfRange(f"delta = {delta} outside (0, 1/3)")
    base = float(abs(np.asarray(f(np.array([0.0 + 0.0j])))[0]))
    if base < 1.0:
        raise PreconditionUnmet(f"|f(0)| = {base} < 1")
    cert = count_zeros(f, 0.0, 0.5, jitter_sign=+1)
    pts = _quarter_disc_grid(grid)
    vals = np.abs(np.asarray(f(pts)))
    small = pts[vals < delta]
    m = cert.count
    if m == 0:
        return CoverReport(
            zero_count=0,
            eps=0.0,
            small_samples=small.size,
            worst_margin=-math.inf if small.size == 0 else math.inf,
            passed=small.size == 0,
        )
    eps = (9.0 / 16.0) * (3.0 * delta) ** (1.0 / m)
    if small.size == 0:
        return CoverReport(m, eps, 0, -math.inf, True)
    zs = np.array(cert.zeros)
    dist = np.min(np.abs(small[:, None] - zs[None, :]), axis=1)
    worst = float(np.max(dist) - eps)
    return CoverReport(m, eps, int(small.size), worst, worst <= 0.0)


def supremum_on_interval(f, lo: float, hi: float, density: float = 1000.0) -> float:
    """Max of |f| on [lo, hi]: dense grid plus golden-section refinement."""
    if hi < lo:
        raise FavlabError("empty interval")
    n = max(9, int(density * (hi - lo)) + 1)
    xs = np.linspace(lo, hi, n)
    vals = np.abs(np.asarray(f(xs)))
    i = int(np.argmax(vals))
    best = float(vals[i])
    a = xs[max(i - 1, 0)]
    b = xs[min(i + 1, n - 1)]
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    c, d = b - phi * (b - a), a + phi * (b - a)
    fc = float(abs(np.asarray(f(np.array([c])))[0]))
    fd = float(abs(np.asarray(f(np.array([d])))[0]))
    for _ in range(60):
        if fc < fd:
            a, c, fc = c, d, fd
            d = a + phi * (b - a)
            fd = float(abs(np.asarray(f(np.array([d])))[0]))
        else:
            b, d, fd = d, c, fc
            c = b - phi * (b - a)
            fc = float(abs(np.asarray(f(np.array([c])))[0]))
        if b - a < 1e-13 * max(1.0, abs(b)):
            break
    return max(best, fc, fd)


@dataclass(frozen=True)
class TuranTrial:
    """One supremum-comparison trial: exponential sum, interval, subset."""

    poly: ExpPoly
    interval: Interval
    subset: IntervalUnion

    def __post_init__(self):
        if self.subset.measure <= 0:
            raise FavlabError("subset must have positive measure")
        for iv in self.subset.intervals:
            if iv.lo < self.interval.lo - 1e-12 or iv.hi > self.interval.hi + 1e-12:
                raise FavlabError("subset must sit inside the interval")


def turan_ratio(trial: TuranTrial, density: float = 1000.0) -> float:
    """Smallest A making sup_I |f| <= e^(max|Re lam| |I|) (A|I|/|E|)^L sup_E |f|."""
    f = trial.poly
    big = supremum_on_interval(f, trial.interval.lo, trial.interval.hi, density)
    small = max(
        supremum_on_interval(f, iv.lo, iv.hi, density) for iv in trial.subset.intervals
    )
    if small <= 0:
        raise FavlabError("sup over subset vanished")
    n_terms = len(f.lambdas)
    growth = math.exp(
        max(abs(lam.real) for lam in f.lambdas) * trial.interval.length
    )
    ratio = big / (growth * small)
    return (trial.subset.measure / trial.interval.length) * ratio ** (1.0 / n_terms)


def box_sup(f, x0: float, x1: float, y0: float, y1: float, density: float = 60.0) -> float:
    """Max of |f| on a closed box: coarse grid, then a refined local patch."""
    nx = max(9, int(density * (x1 - x0)) + 1)
    ny = max(9, int(density * (y1 - y0)) + 1)
    xs = np.linspace(x0, x1, nx)
    ys = np.linspace(y0, y1, ny)
    z = xs[None, :] + 1j * ys[:, None]
    vals = np.abs(np.asarray(f(z.ravel()))).reshape(z.shape)
    j, i = np.unravel_index(int(np.argmax(vals)), vals.shape)
    best = float(vals[j, i])
    hx = (x1 - x0) / (nx - 1)
    hy = (y1 - y0) / (ny - 1)
    fx0, fx1 = max(x0, xs[i] - hx), min(x1, xs[i] + hx)
    fy0, fy1 = max(y0, ys[j] - hy), min(y1, ys[j] + hy)
    fxs = np.linspace(fx0, fx1, 33)
    fys = np.linspace(fy0, fy1, 33)
    fz = fxs[None, :] + 1j * fys[:, None]
    return max(best, float(np.max(np.abs(np.asarray(f(fz.ravel()))))))


def doubling_ratio(
    system, t: float, x_prime: float, k: int = 0, density: float = 60.0
) -> float:
    """sup over [x'-1,x'+1]x[-1,1] of |phi_t(L^-k z)| divided by the sup over
    the concentric half box.  Always >= 1 because the half-box maximum is a
    lower bound for the full-box maximum."""
    tf = system if isinstance(system, TForm) else spectral.t_form(system)
    base = tf.poly(t)
    scale = (1.0 / tf.branching) ** k
    poly = ExpPoly(
        lambdas=tuple(lam * scale for lam in base.lambdas),
        coefficients=base.coefficients,
        normalization=base.normalization,
    )
    half = box_sup(poly, x_prime - 0.5, x_prime + 0.5, -0.5, 0.5, density)
    full = max(box_sup(poly, x_prime - 1.0, x_prime + 1.0, -1.0, 1.0, density), half)
    return full / half


def cetsq_ratio(
    frequencies: Sequence[float],
    coefficients: Sequence[complex] | None = None,
    delta: float = 1.0,
    grid: int = 20001,
) -> tuple[float, float, float]:
    """Frequency-cluster L2 bound data.

    lhs  = integral over [0, 1/delta] of |sum c_a e^{i a y}|^2 (Simpson),
    S    = exact integral of (sum of indicator boxes [a-delta, a+delta])^2,
    ratio = lhs / (S / delta^2).
    """
    freqs = np.asarray(frequencies, dtype=float)
    if coefficients is None:
        coeffs = np.ones(freqs.size, dtype=complex)
    else:
        coeffs = np.asarray(coefficients, dtype=complex)
        if not np.allclose(np.abs(coeffs), 1.0, atol=1e-12):
            raise FavlabError("coefficients must be unimodular")
    if delta <= 0:
        raise FavlabError("delta must be positive")
    npts = grid if grid % 2 == 1 else grid + 1
    ys = np.linspace(0.0, 1.0 / delta, npts)
    vals = coeffs[None, :] * np.exp(1j * freqs[None, :] * ys[:, None])
    integrand = np.abs(vals.sum(axis=1)) ** 2
    step = ys[1] - ys[0]
    lhs = (
        step
        / 3.0
        * (integrand[0] + integrand[-1] + 4 * integrand[1:-1:2].sum() + 2 * integrand[2:-2:2].sum())
    )
    positions = np.concatenate([freqs - delta, freqs + delta])
    deltas = np.concatenate(
        [np.ones(freqs.size, dtype=np.int64), -np.ones(freqs.size, dtype=np.int64)]
    )
    boxes = shadow.from_events(positions, deltas)
    s_exact = shadow.l2_norm_sq(boxes)
    return float(lhs), float(s_exact), float(lhs * delta**2 / s_exact)


def ssv_certified_cover(
    system,
    spec: ProductSpec,
    t: float | None = None,
    theta: float | None = None,
    zero_tol: float = 1e-6,
    interval_radius: float | None = None,
) -> tuple[IntervalUnion, tuple[complex, ...]]:
    """Interval cover of the small-value set built from localized zeros.

    Zeros of phi in the strip around [L^-m/2, L^m + 1] x [-1, 1] are found by
    contour subdivision; rescaling by L^(n-m+j), j = 0..m, maps them to the
    zeros of the low-frequency block P2 over I = [L^(n-m), L^n].  Each zero
    contributes the interval Re +- L^(n-m-ell).
    """
    poly = spectral._phi_poly(system, theta, t)
    L = system.branching
    m, n, ell = spec.m, spec.n, spec.ell
    lo = 0.5 * float(L) ** (-m)
    hi = float(L) ** m + 1.0
    width = 2.0
    edges = [lo]
    while edges[-1] < hi:
        edges.append(min(edges[-1] + width, hi))
    zeros: list[complex] = []
    for a, b in zip(edges[:-1], edges[1:]):
        pad = 0.05 * (b - a)
        zeros.extend(
            zeros_in_rect(poly, a - pad, b + pad, -1.0, 1.0, zero_tol=zero_tol)
        )
    deduped: list[complex] = []
    for z in zeros:
        if all(abs(z - w) > 100.0 * zero_tol for w in deduped):
            deduped.append(z)
    radius = float(L) ** (n - m - ell) if interval_radius is None else interval_radius
    i_lo, i_hi = float(L) ** (n - m), float(L) ** n
    raw = []
    for z in deduped:
        for j in range(m + 1):
            lam = z * float(L) ** (n - m + j)
            if i_lo - radius <= lam.real <= i_hi + radius:
                raw.append((lam.real - radius, lam.real + radius))
    return interval_union(raw), tuple(deduped)
