"""Complex lines through the ball, and the factor that controls the bound
along them.

The affine line L(z) = p + z(q - p) meets B_n in a disk D(c, r) whose
center and radius have closed forms. The quantity r / (r^2 - |c|^2) is at
most |q - p| / (1 - |p|^2), with equality exactly when p and q - p are
collinear in the Hermitian sense.
"""

import numpy as np

from holoball import bound_factor, disk_slice

p = np.array([0.5, 0.0])
q = np.array([0.0, 0.5])

ds = disk_slice(p, q)
print(f"p = {p}, q = {q}")
print(f"slice disk: c = {ds.c:.6f}, r = {ds.r:.6f}")

# the boundary circle of the slice lands on the unit sphere
angles = np.exp(2j * np.pi * np.arange(8) / 8)
vals = ds.line().eval_many((ds.c + ds.r * angles)[:, None])
norms = np.sqrt((np.abs(vals) ** 2).sum(axis=1))
print(f"|L(c + r e^(i theta))| over 8 angles: max dev from 1 = "
      f"{np.abs(norms - 1).max():.2e}")

bf = bound_factor(p, q)
print(f"\nnon-collinear pair:  factor = {bf.factor:.6f}  rhs = {bf.rhs:.6f}  "
      f"collinear = {bf.collinear}")

q2 = p * 1.5
bf2 = bound_factor(p, q2)
print(f"collinear pair:      factor = {bf2.factor:.6f}  rhs = {bf2.rhs:.6f}  "
      f"collinear = {bf2.collinear}  (equality)")

# the factor degrades continuously as q rotates away from the ray through p
print("\nrotating q around p:")
for t in (0.0, 0.1, 0.3, 0.6, 1.0):
    qt = p + 0.25 * np.array([np.cos(t), np.sin(t)])
    bft = bound_factor(p, qt)
    print(f"  angle {t:.1f}: factor = {bft.factor:.6f}  rhs = {bft.rhs:.6f}  "
          f"gap = {bft.rhs - bft.factor:.2e}")
