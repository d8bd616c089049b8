"""Self-similar systems of discs or squares inside a root region.

A system is a list of L homothety maps z -> center_l + ratio*z applied to a
root region (disc of radius root_size, or axis-parallel square of half-side
root_size, both centered at the origin).  The depth-n set is the union of the
L^n images of the root under n-fold compositions; pieces are enumerated in
lexicographic word order over the alphabet 0..L-1.
"""

from __future__ import annotations

import functools
import json
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    ContainmentViolation,
    EmptySystem,
    EnumerationCapExceeded,
    MixedShapes,
    UnknownPreset,
)

CONTAINMENT_TOLERANCE = 1e-9
ENUMERATION_CAP = 2**26

DISC = "disc"
SQUARE = "square"


@dataclass(frozen=True)
class GeneratorMap:
    """One homothety: z -> center + ratio*z, with a region shape tag."""

    center: complex
    ratio: float
    shape: str = DISC


@dataclass(frozen=True)
class SimilaritySystem:
    """Validated tuple of maps sharing one ratio and shape.

    root_size is the radius (disc) or half-side (square) of the root region.
    The four-corner preset uses root_size 1/2 so its depth-n sets follow the
    unit-square convention; everything downstream scales with this field.
    """

    maps: tuple[GeneratorMap, ...]
    label: str = ""
    root_size: float = 1.0

    @property
    def branching(self) -> int:
        return len(self.maps)

    @property
    def ratio(self) -> float:
        return self.maps[0].ratio

    @property
    def shape(self) -> str:
        return self.maps[0].shape

    def centers(self) -> np.ndarray:
        return np.array([m.center for m in self.maps], dtype=complex)


@dataclass(frozen=True)
class Word:
    """Index word of one depth-n piece; letters in [0, L)."""

    letters: tuple[int, ...]


@dataclass(frozen=True)
class Piece:
    """Depth-n image of the root: center, size (radius or half-side), depth."""

    center: complex
    size: float
    depth: int


def _center_norm(center: complex, shape: str) -> float:
    # Squares are axis-parallel, so containment is a sup-norm condition;
    # Euclidean norm would wrongly reject corner placements.
    if shape == SQUARE:
        return max(abs(center.real), abs(center.imag))
    return abs(center)


def build_system(
    maps: Sequence[GeneratorMap],
    label: str = "",
    root_size: float = 1.0,
    tolerance: float = CONTAINMENT_TOLERANCE,
) -> SimilaritySystem:
    """Validate maps and assemble a system.

    Raises EmptySystem, MixedShapes, or ContainmentViolation.  Containment
    requires each first-level piece to stay inside the root region up to
    `tolerance` (strict containment is not load-bearing downstream).
    """
    maps = tuple(maps)
    if not maps:
        raise EmptySystem("system has no maps")
    shape = maps[0].shape
    ratio = maps[0].ratio
    if shape not in (DISC, SQUARE):
        raise MixedShapes(f"unknown shape {shape!r}")
    for i, m in enumerate(maps):
        if m.shape != shape:
            raise MixedShapes(f"map {i} has shape {m.shape!r}, expected {shape!r}")
        if m.ratio != ratio:
            raise MixedShapes(f"map {i} has ratio {m.ratio}, expected {ratio}")
        if not (0.0 < m.ratio < 1.0):
            raise ContainmentViolation(f"map {i}: ratio {m.ratio} outside (0, 1)")
        reach = _center_norm(m.center, shape) + m.ratio * root_size
        if reach > root_size + tolerance:
            raise ContainmentViolation(
                f"map {i}: center {m.center} with ratio {m.ratio} "
                f"escapes the root region by {reach - root_size:.3g}"
            )
    if len(maps) < 2:
        raise EmptySystem("system needs at least two maps")
    return SimilaritySystem(maps=maps, label=label, root_size=float(root_size))


def gasket_system() -> SimilaritySystem:
    """Three discs of radius 1/3 whose centers sit at (1/3)e^{i pi(1/2 + 2a/3)}.

    Letters 0, 1, 2 correspond to a = -1 (lower right), a = 0 (top),
    a = 1 (lower left).
    """
    centers = [np.exp(1j * np.pi * (0.5 + 2.0 * a / 3.0)) / 3.0 for a in (-1, 0, 1)]
    maps = [GeneratorMap(center=c, ratio=1.0 / 3.0, shape=DISC) for c in centers]
    return build_system(maps, label="gasket")


def corner4_system() -> SimilaritySystem:
    """Four squares of ratio 1/4 at the corners of a unit square.

    Root half-side is 1/2 (unit-square convention), children have half-side
    1/8 centered at (+-3/8, +-3/8).  Letters 0..3 run through quadrants
    (-,-), (+,-), (-,+), (+,+).
    """
    offs = [(-1, -1), (1, -1), (-1, 1), (1, 1)]
    maps = [
        GeneratorMap(center=complex(0.375 * sx, 0.375 * sy), ratio=0.25, shape=SQUARE)
        for sx, sy in offs
    ]
    return build_system(maps, label="corner4", root_size=0.5)


_RANDOM_PRESET = re.compile(r"^random-(\d+)-seed(\d+)$")


def random_system(branching: int, seed: int) -> SimilaritySystem:
    """L discs of radius 1/L with centers drawn from a Philox stream.

    Centers are uniform in the disc of radius 1 - 1/L, so containment always
    holds; the draw is reproducible across platforms.
    """
    if branching < 2:
        raise EmptySystem("random system needs at least two maps")
    rng = np.random.Generator(np.random.Philox(seed))
    ratio = 1.0 / branching
    rmax = 1.0 - ratio
    radii = rmax * np.sqrt(rng.uniform(size=branching))
    angles = rng.uniform(0.0, 2.0 * np.pi, size=branching)
    centers = radii * np.exp(1j * angles)
    maps = [GeneratorMap(center=complex(c), ratio=ratio, shape=DISC) for c in centers]
    return build_system(maps, label=f"random-{branching}-seed{seed}")


def preset(name: str) -> SimilaritySystem:
    """Return a canned system: "gasket", "corner4", or "random-L-seedS"."""
    if name == "gasket":
        return gasket_system()
    if name == "corner4":
        return corner4_system()
    m = _RANDOM_PRESET.match(name)
    if m:
        return random_system(int(m.group(1)), int(m.group(2)))
    raise UnknownPreset(f"unknown preset {name!r}")


def piece_center(system: SimilaritySystem, word: Word | Sequence[int]) -> complex:
    """Center of the piece indexed by `word`: sum_k ratio^(k-1) * center_{w_k}.

    Equals the n-fold map composition applied to 0; the empty word gives the
    root center 0.
    """
    letters = word.letters if isinstance(word, Word) else tuple(word)
    L = system.branching
    z = 0.0 + 0.0j
    scale = 1.0
    for k, letter in enumerate(letters):
        if not 0 <= letter < L:
            raise IndexError(f"letter {letter} at position {k} outside [0, {L})")
        z += scale * system.maps[letter].center
        scale *= system.ratio
    return z


def piece_size(system: SimilaritySystem, depth: int) -> float:
    return system.root_size * system.ratio**depth


def check_cap(system: SimilaritySystem, depth: int, cap: int = ENUMERATION_CAP) -> int:
    count = system.branching**depth
    if count > cap:
        raise EnumerationCapExceeded(
            f"{system.branching}^{depth} = {count} pieces exceeds cap {cap}"
        )
    return count


@functools.lru_cache(maxsize=64)
def _centers_cached(system: SimilaritySystem, depth: int) -> np.ndarray:
    if depth == 0:
        out = np.zeros(1, dtype=complex)
    else:
        prev = _centers_cached(system, depth - 1)
        step = system.ratio ** (depth - 1) * system.centers()
        out = (prev[:, None] + step[None, :]).ravel()
    out.setflags(write=False)
    return out


def piece_centers(
    system: SimilaritySystem, depth: int, cap: int = ENUMERATION_CAP
) -> np.ndarray:
    """All L^depth piece centers in lexicographic word order (read-only array)."""
    check_cap(system, depth, cap)
    if system.branching**depth <= 2**20:
        return _centers_cached(system, depth)
    prev = piece_centers(system, depth - 1, cap)
    step = system.ratio ** (depth - 1) * system.centers()
    return (prev[:, None] + step[None, :]).ravel()


def enumerate_pieces(
    system: SimilaritySystem, depth: int, cap: int = ENUMERATION_CAP
) -> Iterator[Piece]:
    """Yield the L^depth pieces of the given depth in lexicographic word order."""
    check_cap(system, depth, cap)
    size = piece_size(system, depth)
    centers = piece_centers(system, depth, cap)
    for c in centers:
        yield Piece(center=complex(c), size=size, depth=depth)


def system_to_json(system: SimilaritySystem) -> str:
    """Serialize per the system-definition schema (17 significant digits)."""
    obj = {
        "label": system.label,
        "shape": system.shape,
        "ratio": system.ratio,
        "centers": [[m.center.real, m.center.imag] for m in system.maps],
        "root_size": system.root_size,
    }
    return json.dumps(obj, sort_keys=True, default=float)


def system_from_json(text: str) -> SimilaritySystem:
    """Parse a system-definition JSON document and validate it."""
    obj = json.loads(text)
    maps = [
        GeneratorMap(center=complex(re_, im), ratio=float(obj["ratio"]), shape=obj["shape"])
        for re_, im in obj["centers"]
    ]
    return build_system(
        maps, label=obj.get("label", ""), root_size=float(obj.get("root_size", 1.0))
    )
