"""Gradient of the modulus of a holomorphic ball map and its sharp bound.

For holomorphic ``f`` from the unit ball of C^n into the unit ball of C^m,
the gradient of ``|f|`` (defined directionally as the supremum over unit
directions beta of the one-sided derivative of ``t -> |f(z + t beta)|``)
has the closed form

    |grad|f||(z) = |A| / |f(z)|          if f(z) != 0,
                   sigma_max(Df(z))      if f(z) == 0,

where ``A_j = herm_inner(df/dz_j, f(z))``. It satisfies the sharp
Schwarz-Pick-type bound

    |grad|f||(z) <= (1 - |f(z)|^2) / (1 - |z|^2),

which survives vector-valued targets where the classical bound on
``|f'(z)|`` fails (witness ``f(z) = (z, 1)/sqrt(2)`` at 0). On a disk
D(c, r) the bound scales to ``r (1 - |g|^2) / (r^2 - |z - c|^2)``.

``mod_grad_fd`` realizes the directional definition numerically and serves
as an independent oracle for the closed form: one-sided difference
quotients, Richardson-extrapolated to step 0, maximized over sampled unit
directions plus the analytic maximizer candidates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexcore import (
    sample_unit_sphere,
    spectral_norm,
    vector_to_pairs,
    vnorm,
)
from .errors import CertificationError, InputError
from .holomap import HoloMap, _as_batch

__all__ = [
    "ZERO_BRANCH_TOL",
    "GradResult",
    "BoundReport",
    "mod_grad",
    "mod_grad_fd",
    "sp_bound",
    "sp_bound_slice",
    "equality_gap",
]

# |f(z)| at or below this is treated as a zero of f; the decade just below it
# is reported as ambiguous
ZERO_BRANCH_TOL = 1e-13

DEFAULT_FD_STEPS = (1e-4, 5e-5)
DEFAULT_FD_DIRS = 64
DEFAULT_BOUND_TOL = 1e-9


@dataclass(eq=False)
class GradResult:
    """Value of |grad|f|| at a point, with the branch that produced it.

    ``A`` is present exactly on the nonzero branch, ``top_dir`` (a maximizing
    unit direction) exactly on the zero branch. ``ambiguous`` marks |f(z)|
    inside (tol/10, tol]; there the zero-branch value is reported as ``value``
    (an upper bound for the nonzero reading) and the nonzero-branch quotient
    |A|/|f(z)| as ``alt_value``.
    """

    value: float
    branch: str
    A: np.ndarray | None = None
    top_dir: np.ndarray | None = None
    ambiguous: bool = False
    alt_value: float | None = None

    def to_dict(self) -> dict:
        return {
            "value": float(self.value),
            "branch": self.branch,
            "A": None if self.A is None else vector_to_pairs(self.A),
            "top_dir": None if self.top_dir is None else vector_to_pairs(self.top_dir),
            "ambiguous": bool(self.ambiguous),
            "alt_value": None if self.alt_value is None else float(self.alt_value),
        }


@dataclass(eq=False)
class BoundReport:
    """One bound check: lhs = |grad|f||(z), rhs = (1-|f(z)|^2)/(1-|z|^2)."""

    point: np.ndarray
    lhs: float
    rhs: float
    slack: float
    holds: bool
    tol: float
    branch: str

    def to_dict(self) -> dict:
        return {
            "point": vector_to_pairs(self.point),
            "lhs": float(self.lhs),
            "rhs": float(self.rhs),
            "slack": float(self.slack),
            "holds": bool(self.holds),
            "branch": self.branch,
        }


def _grad_from_parts(v: np.ndarray, J: np.ndarray, zero_tol: float) -> GradResult:
    fn = vnorm(v)
    if fn > zero_tol:
        A = J.T @ np.conj(v)
        return GradResult(value=vnorm(A) / fn, branch="nonzero", A=A)
    sigma, top = spectral_norm(J)
    res = GradResult(value=sigma, branch="zero", top_dir=top)
    if fn > zero_tol / 10.0:
        res.ambiguous = True
        res.alt_value = vnorm(J.T @ np.conj(v)) / fn
    return res


def mod_grad(f: HoloMap, z, zero_tol: float = ZERO_BRANCH_TOL) -> GradResult:
    """Closed-form |grad|f||(z) with branch selection on |f(z)|."""
    if zero_tol <= 0:
        raise InputError("zero_tol must be positive")
    Z = _as_batch(z, f.n)
    if Z.shape[0] != 1:
        raise InputError("mod_grad takes a single point")
    v = f.eval_many(Z)[0]
    J = f.jac_many(Z)[0]
    return _grad_from_parts(v, J, zero_tol)


def _extrapolate_to_zero(ts: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Neville polynomial extrapolation of ``ys`` (last axis indexed by the
    steps ``ts``) to step 0."""
    p = [ys[..., i] for i in range(ts.shape[0])]
    t = list(ts)
    for level in range(1, len(t)):
        nxt = []
        for i in range(len(t) - level):
            ti, tj = t[i], t[i + level]
            nxt.append((ti * p[i + 1] - tj * p[i]) / (ti - tj))
        p = nxt
    return p[0]


def mod_grad_fd(
    f: HoloMap,
    z,
    steps=DEFAULT_FD_STEPS,
    dirs: int = DEFAULT_FD_DIRS,
    seed: int = 0,
) -> float:
    """Finite-difference realization of the directional definition of
    |grad|f||(z): the maximum over unit directions of the one-sided
    difference quotient of ``|f|``, Richardson-extrapolated over ``steps``.

    Directions are ``dirs`` seeded uniform samples of the unit sphere plus
    the analytic maximizer candidates: the direction conjugate to A/|A| when
    A != 0, and the top singular direction of the Jacobian when the zero
    branch is in play.
    """
    ts = np.asarray(steps, dtype=float)
    if ts.ndim != 1 or ts.size == 0:
        raise InputError("steps must be a non-empty sequence")
    if (ts <= 0).any() or (np.diff(ts) >= 0).any():
        raise InputError("steps must be positive and strictly decreasing")
    if dirs < 64:
        raise InputError("dirs must be at least 64")
    Z = _as_batch(z, f.n)
    if Z.shape[0] != 1:
        raise InputError("mod_grad_fd takes a single point")
    zv = Z[0]

    v = f.eval_many(Z)[0]
    J = f.jac_many(Z)[0]
    base = vnorm(v)
    D = sample_unit_sphere(f.n, dirs, seed)
    cands = [D]
    A = J.T @ np.conj(v)
    nA = vnorm(A)
    if nA > 0:
        cands.append(np.conj(A)[None, :] / nA)
    if base <= ZERO_BRANCH_TOL:
        cands.append(spectral_norm(J).direction[None, :])
    B = np.concatenate(cands, axis=0)

    # all (direction, step) evaluations in one batch
    pts = zv[None, None, :] + ts[None, :, None] * B[:, None, :]
    vals = f.eval_many(pts.reshape(-1, f.n))
    mods = np.sqrt((np.abs(vals) ** 2).sum(axis=1)).reshape(B.shape[0], ts.shape[0])
    quotients = (mods - base) / ts[None, :]
    extrapolated = _extrapolate_to_zero(ts, quotients)
    return float(extrapolated.max())


def _one_minus_sq(x: float) -> float:
    # compensated 1 - x^2 to keep accuracy near the boundary
    return (1.0 - x) * (1.0 + x)


def sp_bound(f: HoloMap, z, tol: float = DEFAULT_BOUND_TOL) -> BoundReport:
    """Check the bound |grad|f||(z) <= (1 - |f(z)|^2) / (1 - |z|^2)."""
    if tol <= 0:
        raise InputError("tol must be positive")
    Z = _as_batch(z, f.n)
    if Z.shape[0] != 1:
        raise InputError("sp_bound takes a single point")
    zv = Z[0]
    nz = vnorm(zv)
    if nz >= 1.0:
        raise InputError(f"point must lie strictly inside the unit ball, |z| = {nz}")
    v = f.eval_many(Z)[0]
    nv = vnorm(v)
    if nv >= 1.0:
        raise CertificationError(f"map value leaves the unit ball at the point, |f(z)| = {nv}")
    g = _grad_from_parts(v, f.jac_many(Z)[0], ZERO_BRANCH_TOL)
    rhs = _one_minus_sq(nv) / _one_minus_sq(nz)
    slack = rhs - g.value
    return BoundReport(
        point=zv.copy(),
        lhs=g.value,
        rhs=float(rhs),
        slack=float(slack),
        holds=bool(slack >= -tol),
        tol=float(tol),
        branch=g.branch,
    )


def sp_bound_slice(g: HoloMap, xi, c, r: float, tol: float = DEFAULT_BOUND_TOL) -> BoundReport:
    """Check the scaled bound |grad|g||(xi) <= r (1 - |g(xi)|^2) / (r^2 - |xi - c|^2)
    for ``g`` holomorphic on the disk D(c, r) into the unit ball.

    With c = 0, r = 1 this is exactly ``sp_bound`` on the unit disk.
    """
    if g.n != 1:
        raise InputError("sp_bound_slice expects a map of one complex variable")
    if tol <= 0:
        raise InputError("tol must be positive")
    r = float(r)
    if not np.isfinite(r) or r <= 0:
        raise InputError("r must be a positive real")
    xi = complex(np.asarray(xi, dtype=np.complex128).reshape(-1)[0])
    c = complex(c)
    dist = abs(xi - c)
    if dist >= r:
        raise InputError(f"xi must lie strictly inside D(c, r), |xi - c| = {dist} >= {r}")
    Z = np.array([[xi]], dtype=np.complex128)
    v = g.eval_many(Z)[0]
    nv = vnorm(v)
    if nv >= 1.0:
        raise CertificationError(f"map value leaves the unit ball at xi, |g(xi)| = {nv}")
    gr = _grad_from_parts(v, g.jac_many(Z)[0], ZERO_BRANCH_TOL)
    rhs = r * _one_minus_sq(nv) / ((r - dist) * (r + dist))
    slack = rhs - gr.value
    return BoundReport(
        point=np.array([xi], dtype=np.complex128),
        lhs=gr.value,
        rhs=float(rhs),
        slack=float(slack),
        holds=bool(slack >= -tol),
        tol=float(tol),
        branch=gr.branch,
    )


def equality_gap(f: HoloMap, p) -> float:
    """Slack of the bound at p; zero exactly on the equality cases."""
    return sp_bound(f, p).slack
