"""Directional shadows and exact multiplicity profiles.

Projecting the depth-n pieces of a system onto the line with angle theta
gives L^n intervals; their indicator sum is an integer-valued step function
(the multiplicity profile).  Everything here is exact interval algebra: a
single sweep over the 2 L^n endpoint events builds the profile, and measures,
level sets and L2 norms are plain sums over its cells.

Projection convention: the coordinate of a point c on the line of angle
theta in [0, pi) is Re(c * e^{-i theta}).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import ifs
from .errors import FavlabError
from .ifs import Piece, SimilaritySystem

MERGE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if self.hi < self.lo:
            raise FavlabError(f"interval [{self.lo}, {self.hi}] is reversed")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class IntervalUnion:
    """Sorted, pairwise-disjoint intervals (gaps above merge tolerance)."""

    intervals: tuple[Interval, ...]

    @property
    def measure(self) -> float:
        return float(sum(iv.length for iv in self.intervals))

    @property
    def count(self) -> int:
        return len(self.intervals)

    def contains(self, x: float) -> bool:
        return any(iv.contains(x) for iv in self.intervals)


def interval_union(
    raw: Iterable[tuple[float, float]], merge_tolerance: float = MERGE_TOLERANCE
) -> IntervalUnion:
    """Merge arbitrary (lo, hi) pairs into a canonical disjoint union."""
    items = sorted((lo, hi) for lo, hi in raw if hi >= lo)
    merged: list[list[float]] = []
    for lo, hi in items:
        if merged and lo <= merged[-1][1] + merge_tolerance:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return IntervalUnion(tuple(Interval(lo, hi) for lo, hi in merged))


class StepFunction:
    """Piecewise-constant nonnegative-integer function, canonical form.

    breakpoints: strictly increasing array of m+1 floats (empty for the zero
    function); values: m integers, one per cell [b_i, b_{i+1}).  The value is
    0 outside the hull, adjacent cells hold distinct values, and the first and
    last cells are nonzero.
    """

    __slots__ = ("breakpoints", "values")

    def __init__(self, breakpoints: np.ndarray, values: np.ndarray):
        self.breakpoints = breakpoints
        self.values = values

    @property
    def is_zero(self) -> bool:
        return self.values.size == 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, StepFunction)
            and np.array_equal(self.breakpoints, other.breakpoints)
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self) -> str:
        return f"StepFunction({self.values.size} cells, mass={mass(self):.6g})"


# A maximal profile is itself a step function; the alias marks intent.
MaximalProfile = StepFunction


def step_function(
    breakpoints: Sequence[float],
    values: Sequence[int],
    merge_tolerance: float = MERGE_TOLERANCE,
) -> StepFunction:
    """Canonicalize raw cell data: drop slivers, merge equal neighbors, trim zeros."""
    bp = np.asarray(breakpoints, dtype=float)
    vals = np.asarray(values, dtype=np.int64)
    if bp.size != vals.size + 1 and not (bp.size == 0 and vals.size == 0):
        raise FavlabError("need len(breakpoints) == len(values) + 1")
    if bp.size and np.any(np.diff(bp) < 0):
        raise FavlabError("breakpoints must be nondecreasing")
    out_bp: list[float] = []
    out_vals: list[int] = []
    for i, v in enumerate(vals):
        lo, hi = bp[i], bp[i + 1]
        if not out_vals:
            if hi - lo <= merge_tolerance:
                continue
            out_bp = [lo, hi]
            out_vals = [int(v)]
        elif hi - out_bp[-1] <= merge_tolerance:
            continue
        elif v == out_vals[-1]:
            out_bp[-1] = hi
        else:
            out_bp.append(hi)
            out_vals.append(int(v))
    while out_vals and out_vals[0] == 0:
        out_vals.pop(0)
        out_bp.pop(0)
    while out_vals and out_vals[-1] == 0:
        out_vals.pop()
        out_bp.pop()
    if not out_vals:
        return StepFunction(np.empty(0), np.empty(0, dtype=np.int64))
    b = np.array(out_bp, dtype=float)
    v = np.array(out_vals, dtype=np.int64)
    b.setflags(write=False)
    v.setflags(write=False)
    return StepFunction(b, v)


def from_events(
    positions: np.ndarray,
    deltas: np.ndarray,
    merge_tolerance: float = MERGE_TOLERANCE,
) -> StepFunction:
    """Build a profile from +-1 endpoint events by one sweep.

    Events closer than merge_tolerance collapse to a single breakpoint, so
    exact endpoint coincidences become genuine stacking instead of slivers.
    """
    if positions.size == 0:
        return StepFunction(np.empty(0), np.empty(0, dtype=np.int64))
    order = np.argsort(positions, kind="stable")
    pos = positions[order]
    del_ = deltas[order]
    fresh = np.empty(pos.size, dtype=bool)
    fresh[0] = True
    np.greater(np.diff(pos), merge_tolerance, out=fresh[1:])
    cluster_id = np.cumsum(fresh) - 1
    bp = pos[fresh]
    delta_per_bp = np.zeros(bp.size, dtype=np.int64)
    np.add.at(delta_per_bp, cluster_id, del_)
    vals = np.cumsum(delta_per_bp)[:-1]
    return step_function(bp, vals, merge_tolerance)


def project_piece(piece: Piece, theta: float, shape: str) -> Interval:
    """Shadow of one piece on the line of angle theta.

    Discs: center +- size.  Squares: center +- size*(|cos| + |sin|), the
    support radius of an axis-parallel square in that direction.
    """
    c = (piece.center * np.exp(-1j * theta)).real
    if shape == ifs.SQUARE:
        half = piece.size * (abs(np.cos(theta)) + abs(np.sin(theta)))
    else:
        half = piece.size
    return Interval(c - half, c + half)


def shadow_half_length(system: SimilaritySystem, depth: int, theta: float) -> float:
    """Half-length of a single depth-n shadow interval."""
    size = ifs.piece_size(system, depth)
    if system.shape == ifs.SQUARE:
        return size * (abs(np.cos(theta)) + abs(np.sin(theta)))
    return size


def projected_centers(
    system: SimilaritySystem, depth: int, theta: float, cap: int = ifs.ENUMERATION_CAP
) -> np.ndarray:
    centers = ifs.piece_centers(system, depth, cap)
    return (centers * np.exp(-1j * theta)).real


def multiplicity(
    system: SimilaritySystem,
    depth: int,
    theta: float,
    cap: int = ifs.ENUMERATION_CAP,
    merge_tolerance: float = MERGE_TOLERANCE,
) -> StepFunction:
    """Multiplicity profile: how many depth-n shadows cover each point."""
    proj = projected_centers(system, depth, theta, cap)
    half = shadow_half_length(system, depth, theta)
    positions = np.concatenate([proj - half, proj + half])
    deltas = np.concatenate(
        [np.ones(proj.size, dtype=np.int64), -np.ones(proj.size, dtype=np.int64)]
    )
    return from_events(positions, deltas, merge_tolerance)


def maximal_profile(
    system: SimilaritySystem,
    max_depth: int,
    theta: float,
    min_depth: int = 0,
    cap: int = ifs.ENUMERATION_CAP,
) -> MaximalProfile:
    """Pointwise maximum of the profiles at depths min_depth..max_depth."""
    profiles = [
        multiplicity(system, n, theta, cap) for n in range(min_depth, max_depth + 1)
    ]
    return pointwise_max(profiles)


def pointwise_max(profiles: Sequence[StepFunction]) -> StepFunction:
    nonzero = [f for f in profiles if not f.is_zero]
    if not nonzero:
        return StepFunction(np.empty(0), np.empty(0, dtype=np.int64))
    all_bp = np.unique(np.concatenate([f.breakpoints for f in nonzero]))
    keep = np.empty(all_bp.size, dtype=bool)
    keep[0] = True
    np.greater(np.diff(all_bp), MERGE_TOLERANCE, out=keep[1:])
    bp = all_bp[keep]
    mids = 0.5 * (bp[:-1] + bp[1:])
    best = np.zeros(mids.size, dtype=np.int64)
    for f in nonzero:
        np.maximum(best, values_at(f, mids), out=best)
    return step_function(bp, best)


def values_at(f: StepFunction, xs: np.ndarray) -> np.ndarray:
    """Profile values at the given points (0 outside the hull)."""
    xs = np.asarray(xs, dtype=float)
    if f.is_zero:
        return np.zeros(xs.shape, dtype=np.int64)
    idx = np.searchsorted(f.breakpoints, xs, side="right") - 1
    inside = (idx >= 0) & (idx < f.values.size)
    out = np.zeros(xs.shape, dtype=np.int64)
    out[inside] = f.values[idx[inside]]
    # Right hull endpoint belongs to the last cell.
    on_edge = xs == f.breakpoints[-1]
    if np.any(on_edge):
        out[on_edge] = f.values[-1]
    return out


def value_at(f: StepFunction, x: float) -> int:
    return int(values_at(f, np.array([x]))[0])


def _cell_lengths(f: StepFunction) -> np.ndarray:
    return np.diff(f.breakpoints) if not f.is_zero else np.empty(0)


def mass(f: StepFunction) -> float:
    """Integral of f (sum of value * cell length)."""
    return float(np.dot(f.values, _cell_lengths(f)))


def support_measure(f: StepFunction) -> float:
    """Measure of {f >= 1}."""
    return level_measure(f, 1)


def level_measure(f: StepFunction, k: int, strict: bool = False) -> float:
    """Measure of {f >= k}, or {f > k} when strict."""
    if f.is_zero:
        return 0.0
    sel = f.values > k if strict else f.values >= k
    return float(np.sum(_cell_lengths(f)[sel]))


def level_intervals(f: StepFunction, k: int, strict: bool = False) -> IntervalUnion:
    """The level set {f >= k} (or {f > k}) as an interval union."""
    if f.is_zero:
        return IntervalUnion(())
    sel = f.values > k if strict else f.values >= k
    raw = [
        (f.breakpoints[i], f.breakpoints[i + 1]) for i in np.flatnonzero(sel)
    ]
    return interval_union(raw)


def l2_norm_sq(f: StepFunction) -> float:
    """Integral of f^2."""
    return float(np.dot(f.values.astype(float) ** 2, _cell_lengths(f)))


def max_value(f: StepFunction) -> int:
    return int(f.values.max()) if not f.is_zero else 0


def support_intervals(f: StepFunction) -> IntervalUnion:
    return level_intervals(f, 1)


def write_step_csv(
    stream, f: StepFunction, theta: float, depth: int, label: str
) -> None:
    """CSV rows (cell_lo, cell_hi, value); header comment carries the context."""
    stream.write(f"# system={label} n={depth} theta={theta:.17g}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["cell_lo", "cell_hi", "value"])
    for i, v in enumerate(f.values):
        writer.writerow(
            [
                format(f.breakpoints[i], ".17g"),
                format(f.breakpoints[i + 1], ".17g"),
                int(v),
            ]
        )


def read_step_csv(stream) -> tuple[StepFunction, dict]:
    """Inverse of write_step_csv; returns the profile and the header fields."""
    header = stream.readline().strip()
    meta: dict = {}
    if header.startswith("#"):
        for part in header[1:].split():
            if "=" in part:
                key, val = part.split("=", 1)
                meta[key] = val
    rows = list(csv.reader(io.StringIO(stream.read())))
    body = [r for r in rows if r and r[0] != "cell_lo"]
    bp: list[float] = []
    vals: list[int] = []
    for lo, hi, v in body:
        if not bp:
            bp.append(float(lo))
        bp.append(float(hi))
        vals.append(int(v))
    return step_function(bp, vals), meta
