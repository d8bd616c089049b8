#!/usr/bin/env python3
"""Build self-similar systems and walk their piece tree.

A system is L homothety maps applied to a root disc or square.  The two
canned systems are the three-disc gasket (radius-1/3 discs in the unit
disc) and the four-corner square set (ratio-1/4 squares in a unit square).
"""

from favlab import ifs

print("== presets ==")
for name in ("gasket", "corner4", "random-5-seed11"):
    system = ifs.preset(name)
    print(f"{name}: L={system.branching} shape={system.shape} "
          f"ratio={system.ratio:.4f} root_size={system.root_size}")

g = ifs.preset("gasket")
print("\ngasket level-1 centers (letters 0,1,2 <-> lower right, top, lower left):")
for i, m in enumerate(g.maps):
    print(f"  {i}: {m.center:.6f}")

print("\npiece centers are nested affine sums: center(w) = sum ratio^(k-1) c_{w_k}")
for word in ([], [1], [1, 1], [1, 0, 2]):
    print(f"  word {word}: {ifs.piece_center(g, word):.6f}")

print("\ndepth-n enumeration is lexicographic; counts are exactly L^n:")
for n in range(4):
    pieces = list(ifs.enumerate_pieces(g, n))
    print(f"  n={n}: {len(pieces)} pieces of size {pieces[0].size:.6f}")

print("\nsystems serialize to a small JSON document:")
print(" ", ifs.system_to_json(ifs.preset("corner4")))

print("\ncontainment is validated; a map escaping the root region is rejected:")
try:
    ifs.build_system([ifs.GeneratorMap(center=0.9 + 0j, ratio=0.5)])
except Exception as exc:
    print(f"  {type(exc).__name__}: {exc}")
