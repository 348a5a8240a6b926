"""Gradient of the modulus: the two branches of the closed form.

Away from the zero set of f the gradient of z -> |f(z)| has modulus
|A|/|f(z)| with A_j = <df/dz_j, f>; on the zero set |f| is not
differentiable but the sharp one-sided slope is the largest singular
value of the Jacobian. Both branches come out of mod_grad, with a flag
for points so close to the zero set that the branch choice is numerically
ambiguous.
"""

import numpy as np

from holoball import PolyMap, mod_grad, mod_grad_fd

f = PolyMap(2, 2, {
    (0, 0): [0.1, 0.0],
    (1, 0): [0.4, 0.1],
    (0, 1): [0.0, 0.35],
    (1, 1): [0.05, -0.1],
})

print("map: polynomial B_2 -> C^2 with", len(f.terms), "terms")

z = np.array([0.3, -0.2 + 0.1j])
g = mod_grad(f, z)
print(f"\nat z = {z}: |f(z)| = {np.sqrt((np.abs(f.eval(z))**2).sum()):.6f}")
print(f"  branch    = {g.branch}")
print(f"  |grad|f|| = {g.value:.12f}")
print(f"  A         = {g.A}")

fd = mod_grad_fd(f, z, seed=1)
print(f"  FD oracle = {fd:.12f}   (dev {abs(g.value - fd):.2e})")

g0 = PolyMap(2, 2, {(1, 0): [0.4, 0.0], (0, 1): [0.0, 0.3], (2, 0): [0.1, 0.1]})
z0 = np.zeros(2)
g = mod_grad(g0, z0)
print(f"\nat a zero of the map (f(0) = 0):")
print(f"  branch    = {g.branch}")
print(f"  value     = {g.value:.12f}   (largest singular value of Df)")
print(f"  top dir   = {g.top_dir}")
fd = mod_grad_fd(g0, z0, seed=2)
print(f"  FD oracle = {fd:.12f}   (dev {abs(g.value - fd):.2e})")

# push |f| just above the branch threshold: the result is flagged and both
# candidate values are reported
eps = 5e-14
h = PolyMap(1, 2, {(0,): [eps, 0.0], (1,): [1.0, 1.0]})
g = mod_grad(h, 0.0)
print(f"\nnear-zero point, |f| = {eps:.0e}:")
print(f"  branch = {g.branch}, ambiguous = {g.ambiguous}")
print(f"  singular-value branch: {g.value:.6f}")
print(f"  quotient branch:        {g.alt_value:.6f}")
