"""Equality cases: constructing maps that attain the bound, and checking a
given map against the canonical form.

Two families attain equality at a point p. If f(p) = 0 the map is a unit
vector times a Moebius function of <w, u> with u a unit vector along p;
if f(p) = a != 0 it is a Moebius quotient of the same variable pushed in
the direction a/|a|. The diagnostic fits this shape along a slice and
reports the fitted parameters.
"""

import numpy as np

from holoball import (
    ExtremalSpec,
    PolyMap,
    diagnose_equality_form,
    equality_gap,
    extremal_nonzero_case,
    extremal_zero_case,
    mod_grad,
    sp_bound,
)

p = np.array([0.5, 0.0])
u = np.array([1.0, 0.0])

fz = extremal_zero_case(ExtremalSpec.zero(p, u, [1.0]))
print("zero case at p = (0.5, 0):")
print(f"  |f(p)|       = {np.abs(fz.eval(p)).max():.1e}")
print(f"  |grad|f||(p) = {mod_grad(fz, p).value:.12f}")
print(f"  rhs at p     = {sp_bound(fz, p).rhs:.12f}")
print(f"  equality gap = {equality_gap(fz, p):.2e}")

a = np.array([0.3, 0.4j])
fn = extremal_nonzero_case(ExtremalSpec.nonzero(p, u, a, theta=np.pi / 3))
print("\nnonzero case, f(p) = (0.3, 0.4i), theta = pi/3:")
print(f"  |f(p)|       = {np.sqrt((np.abs(fn.eval(p))**2).sum()):.6f}")
print(f"  equality gap = {equality_gap(fn, p):.2e}")

d = diagnose_equality_form(fn, p, [0.75, 0.0])
print(f"  diagnose:     matches = {d.matches}, residual = {d.max_residual:.2e}")
print(f"                fitted theta = {d.fitted_theta:.12f} (pi/3 = {np.pi/3:.12f})")

# a map that attains equality at 0 but is NOT of the canonical form
s = PolyMap.from_scalar_coeffs([0.0, -1.0, 1e-3])
print("\nperturbed map -z + 0.001 z^2:")
print(f"  equality gap at 0 = {equality_gap(s, 0.0):.2e}")
d = diagnose_equality_form(s, [0.0], [0.5])
print(f"  diagnose:  matches = {d.matches}, residual = {d.max_residual:.2e}")
print("  equality at the point does not survive along the slice")
