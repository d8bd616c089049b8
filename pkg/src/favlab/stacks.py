"""Combinatorial stacking checks on multiplicity profiles.

Level sets of the maximal profile drive four empirical reports: the
product inequality for stacked level sets, the scan for directions whose
high-multiplicity set is abnormally small, the L2 bound on those
directions, and the depth-bootstrap decay of the shadow measure.  A fifth
scan measures the set of directions where the medium-frequency block of
the transform product stays large.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import ifs, shadow, spectral
from ._parallel import ordered_map
from .errors import FavlabError
from .ifs import SimilaritySystem
from .spectral import ProductSpec


@dataclass(frozen=True)
class EScanConfig:
    """Parameters of the small-level-set direction scan.

    A direction belongs to the exceptional set when the measure of
    {max profile >= K} is at most K^(-K_exponent).  The maximal profile is
    taken over depths 1..N; depth 0 is the root shadow and would make the
    K = 1 case vacuous.
    """

    N: int
    K: int
    theta_grid: tuple[float, ...]
    K_exponent: float = 3.0

    def __post_init__(self):
        if self.K < 1:
            raise FavlabError("K must be at least 1")
        if not self.theta_grid:
            raise FavlabError("theta grid must be nonempty")


@dataclass(frozen=True)
class ProductCheckReport:
    pairs: tuple[tuple[int, int], ...]
    thetas: tuple[float, ...]
    worst_ratio: float
    worst_at: tuple[float, int, int] | None
    ratios: tuple[tuple[float, ...], ...]  # per theta, per pair; nan = vacuous
    checked: int


@dataclass(frozen=True)
class EScanReport:
    config: EScanConfig
    membership: tuple[bool, ...]
    level_measures: tuple[float, ...]
    measure_estimate: float


@dataclass(frozen=True)
class L2BoundReport:
    K: int
    max_ratio: float
    per_theta: tuple[tuple[float, float], ...]  # (theta, max_n l2/K)
    vacuous: bool


@dataclass(frozen=True)
class BootstrapReport:
    theta: float
    base_depth: int
    depths: tuple[int, ...]
    measures: tuple[float, ...]
    geom_a: float
    geom_rho: float
    residual: float


@dataclass(frozen=True)
class BadDirectionReport:
    spec: ProductSpec
    tau: float
    threshold: float
    t_grid: tuple[float, ...]
    offenders: tuple[bool, ...]
    h_measure: float
    bound: float


def product_inequality_report(
    system: SimilaritySystem,
    max_depth: int,
    theta_grid: Sequence[float],
    pairs: Sequence[tuple[int, int]],
    cap: int = ifs.ENUMERATION_CAP,
    threads: int | None = None,
) -> ProductCheckReport:
    """Measure |{f* > 4KM}| against K |{f* > K}| |{f* > M}| per direction.

    Level sets use the strict inequality.  A ratio is recorded only when the
    stacked set is nonempty and both denominators are positive; empty stacked
    sets pass vacuously (ratio 0), empty denominators are skipped as nan.
    """
    pairs = tuple((int(k), int(m)) for k, m in pairs)
    thetas = tuple(float(t) for t in theta_grid)

    def one_theta(theta: float) -> list[float]:
        fstar = shadow.maximal_profile(system, max_depth, theta, min_depth=1, cap=cap)
        out = []
        for k, m in pairs:
            big = shadow.level_measure(fstar, 4 * k * m, strict=True)
            if big == 0.0:
                out.append(0.0)
                continue
            fk = shadow.level_measure(fstar, k, strict=True)
            fm = shadow.level_measure(fstar, m, strict=True)
            if fk <= 0.0 or fm <= 0.0:
                out.append(math.nan)
                continue
            out.append(big / (k * fk * fm))
        return out

    rows = ordered_map(one_theta, thetas, threads)
    worst = 0.0
    worst_at = None
    checked = 0
    for theta, row in zip(thetas, rows):
        for (k, m), r in zip(pairs, row):
            if math.isnan(r):
                continue
            checked += 1
            if r > worst:
                worst = r
                worst_at = (theta, k, m)
    return ProductCheckReport(
        pairs=pairs,
        thetas=thetas,
        worst_ratio=worst,
        worst_at=worst_at,
        ratios=tuple(tuple(row) for row in rows),
        checked=checked,
    )


def e_scan(
    cfg: EScanConfig,
    system: SimilaritySystem,
    cap: int = ifs.ENUMERATION_CAP,
    threads: int | None = None,
) -> EScanReport:
    """Per-direction membership in the exceptional set and its grid measure."""

    def one_theta(theta: float) -> float:
        fstar = shadow.maximal_profile(system, cfg.N, theta, min_depth=1, cap=cap)
        return shadow.level_measure(fstar, cfg.K)

    measures = ordered_map(one_theta, cfg.theta_grid, threads)
    cut = float(cfg.K) ** (-cfg.K_exponent)
    member = tuple(m <= cut for m in measures)
    span = max(cfg.theta_grid) - min(cfg.theta_grid) if len(cfg.theta_grid) > 1 else 0.0
    estimate = span * sum(member) / len(member) if member else 0.0
    return EScanReport(
        config=cfg,
        membership=member,
        level_measures=tuple(float(m) for m in measures),
        measure_estimate=float(estimate),
    )


def l2_bound_report(
    system: SimilaritySystem,
    cfg: EScanConfig,
    sample_thetas: Sequence[float] | None = None,
    cap: int = ifs.ENUMERATION_CAP,
    threads: int | None = None,
) -> L2BoundReport:
    """max over sampled exceptional directions and depths of ||f_n||^2 / K.

    When sample_thetas is None, the exceptional directions found by e_scan
    on the config grid are used; an empty sample yields a vacuous report.
    """
    if sample_thetas is None:
        scan = e_scan(cfg, system, cap, threads)
        sample_thetas = [
            t for t, ok in zip(cfg.theta_grid, scan.membership) if ok
        ]
    sample_thetas = list(sample_thetas)
    if not sample_thetas:
        return L2BoundReport(K=cfg.K, max_ratio=0.0, per_theta=(), vacuous=True)

    def one_theta(theta: float) -> float:
        best = 0.0
        for n in range(1, cfg.N + 1):
            best = max(
                best, shadow.l2_norm_sq(shadow.multiplicity(system, n, theta, cap))
            )
        return best / cfg.K

    ratios = ordered_map(one_theta, sample_thetas, threads)
    per = tuple((float(t), float(r)) for t, r in zip(sample_thetas, ratios))
    return L2BoundReport(
        K=cfg.K, max_ratio=float(max(ratios)), per_theta=per, vacuous=False
    )


def _fit_geometric(ls: np.ndarray, ys: np.ndarray) -> tuple[float, float, float]:
    """Least squares for y_l ~ a (1-rho^l)/(1-rho) + b rho^l over rho in (0,1).

    rho is scanned on a grid, the amplitudes solve a small linear system per
    candidate; returns (a, rho, rms residual) of the best candidate.
    """
    best = (0.0, 0.5, math.inf)
    for rho in np.linspace(0.001, 0.999, 999):
        tail = rho**ls
        geom = (1.0 - tail) / (1.0 - rho)
        design = np.column_stack([geom, tail])
        coef, *_ = np.linalg.lstsq(design, ys, rcond=None)
        fit = design @ coef
        resid = float(np.sqrt(np.mean((fit - ys) ** 2)))
        if resid < best[2]:
            best = (float(coef[0]), float(rho), resid)
    return best


def bootstrap_report(
    system: SimilaritySystem,
    theta: float,
    base_depth: int,
    l_max: int,
    cap: int = ifs.ENUMERATION_CAP,
) -> BootstrapReport:
    """Shadow measures at depths l*N for l = 1..l_max, with a two-term fit.

    The fitted model is a geometric series plus an exponential remainder,
    the shape produced by iterating the one-step covering estimate.
    """
    if l_max < 1:
        raise FavlabError("l_max must be at least 1")
    depths = tuple(l * base_depth for l in range(1, l_max + 1))
    ifs.check_cap(system, depths[-1], cap)
    measures = tuple(
        shadow.support_measure(shadow.multiplicity(system, d, theta, cap))
        for d in depths
    )
    ls = np.arange(1, l_max + 1, dtype=float)
    ys = np.array(measures) / max(measures[0], 1e-300)
    a, rho, resid = _fit_geometric(ls, ys)
    return BootstrapReport(
        theta=float(theta),
        base_depth=base_depth,
        depths=depths,
        measures=measures,
        geom_a=a,
        geom_rho=rho,
        residual=resid,
    )


def bad_direction_scan(
    system,
    spec: ProductSpec,
    tau: float,
    t_grid: Sequence[float],
    x_grid: int = 0,
    threads: int | None = None,
) -> BadDirectionReport:
    """Directions where the medium-frequency block exceeds e^(-tau*ell).

    The block prod_{j=1..ell} phi_t(L^j y) is scanned over y in [1, L^m]
    (the x in [L^(n-m), L^n] range collapses to this after rescaling, so the
    scan is depth-independent).  x_grid = 0 picks the density from the
    derivative bound so each cell oscillates by under a tenth of the
    threshold.
    """
    spec = spec if isinstance(spec, ProductSpec) else ProductSpec(*spec)
    tf = system if isinstance(system, spectral.TForm) else spectral.t_form(system)
    L = tf.branching
    thr = math.exp(-tau * spec.ell)
    y_lo, y_hi = 1.0, float(L) ** spec.m
    if x_grid <= 0:
        slope = sum(
            float(L) ** j * 2.0 for j in range(1, spec.ell + 1)
        )  # crude |d/dy| bound for unit-size frequencies
        x_grid = int((y_hi - y_lo) * slope / (thr / 10.0)) + 2
        x_grid = min(max(x_grid, 1000), 2_000_000)
    ys = np.linspace(y_lo, y_hi, x_grid)

    def one_t(t: float) -> bool:
        poly = tf.poly(t)
        acc = np.ones_like(ys, dtype=complex)
        for j in range(1, spec.ell + 1):
            acc *= poly(float(L) ** j * ys)
        return bool(np.max(np.abs(acc)) > thr)

    offenders = ordered_map(one_t, [float(t) for t in t_grid], threads)
    span = max(t_grid) - min(t_grid) if len(t_grid) > 1 else 0.0
    h_measure = span * sum(offenders) / len(offenders)
    return BadDirectionReport(
        spec=spec,
        tau=float(tau),
        threshold=thr,
        t_grid=tuple(float(t) for t in t_grid),
        offenders=tuple(bool(o) for o in offenders),
        h_measure=float(h_measure),
        bound=float(L) ** (-spec.ell / 2.0),
    )
