"""favlab: projections of self-similar Cantor-type sets at desk scale.

Modules:
    ifs       similarity systems, presets, piece enumeration
    shadow    directional multiplicity profiles (exact interval algebra)
    favard    direction-averaged shadow length, needle Monte Carlo, decay fits
    spectral  exponential-sum products, small-value scans, identity checks
    lemmas    zero counting, disc bounds, supremum ratios, cluster L2 bounds
    stacks    stacked-level-set reports and direction scans
    verify    named verification suites
    cli       command-line interface (favlab ...)
"""

from . import favard, ifs, lemmas, shadow, spectral, stacks, verify
from .errors import FavlabError

__version__ = "0.1.0"

__all__ = [
    "FavlabError",
    "favard",
    "ifs",
    "lemmas",
    "shadow",
    "spectral",
    "stacks",
    "verify",
]
