#!/usr/bin/env python3
"""Average the shadow measure over directions and watch it decay.

Two independent estimators: trapezoid quadrature over the angle (with
refinement-based error control) and a Buffon-style Monte Carlo needle drop
with a counter-based generator (Philox), reproducible bit for bit.
"""

import math

from favlab import favard, ifs

cfg = favard.QuadratureConfig(grid_size=128, refinement_limit=4, target_rel_error=1e-5)

print("== quadrature vs needle drop, gasket ==")
g = ifs.preset("gasket")
for n in range(4):
    quad = favard.favard_length(g, n, cfg)
    est, err = favard.buffon_estimate(g, n, 200_000, seed=42)
    print(f"  n={n}: quadrature {quad.value:.6f} (+-{quad.error_estimate:.1e})   "
          f"needle {est:.6f} (+-{err:.1e})")

print("\n== decay fits, corner4 n = 1..7 ==")
c4 = ifs.preset("corner4")
series = [(n, favard.favard_length(c4, n, cfg).value) for n in range(1, 8)]
for n, v in series:
    print(f"  n={n}: {v:.6f}   n*value/log(n) = {v*n/math.log(n) if n > 1 else float('nan'):.4f}")
power = favard.fit_decay(series, "power")
sqrtlog = favard.fit_decay([(n, v) for n, v in series if n >= 2], "sqrtlog")
lower = favard.fit_decay([(n, v) for n, v in series if n >= 2], "loglower")
print(f"power fit:    value ~ {power.params[0]:.3f} * n^-{power.params[1]:.3f} "
      f"(residual {power.residual:.2e})")
print(f"sqrt-log fit: value ~ {sqrtlog.params[0]:.3f} * exp(-{sqrtlog.params[1]:.3f} sqrt(log n))")
print(f"log-lower:    mean of value*n/log n = {lower.params[0]:.4f}, inf = {lower.params[1]:.4f}")
print("the infimum staying positive is the expected floor at desk scale.")

print("\nsame seed, same answer (bit for bit):")
a = favard.buffon_estimate(c4, 2, 100_000, seed=7)
b = favard.buffon_estimate(c4, 2, 100_000, seed=7)
print(f"  {a} == {b}: {a == b}")
