"""Equality cases of the modulus-gradient bound: construction and diagnosis.

The bound |grad|f||(p) <= (1 - |f(p)|^2) / (1 - |p|^2) is attained exactly
by maps that factor through a disk automorphism of a complex line through p.
With ``u`` a unit vector collinear with p (any unit vector when p = 0) and
``z0 = herm_inner(p, u)``:

* zero case, ``f(p) = 0``: ``f(w) = beta * phi_z0(herm_inner(w, u))`` with
  ``|beta| = 1`` and ``phi_z0`` the disk automorphism swapping z0 and 0;
* nonzero case, ``f(p) = a != 0``: ``f(w) = M(herm_inner(w, u)) * a/|a|``
  where ``M(zeta) = (|a| + e^{i theta} phi_z0(zeta))
  / (1 + |a| e^{i theta} phi_z0(zeta))``.

Collinearity of u with p is what makes |z0| = |p|; any other choice of u
produces a strictly smaller gradient at p.

``diagnose_equality_form`` inverts the construction: given a map attaining
equality at p and a second point q with q - p collinear with p, it restricts
f to the line through p and q, fits the free parameter of the canonical form
on the slice disk D(c, r) (beta from one sample in the zero case, e^{i theta}
from the derivative at the slice origin in the nonzero case), and reports the
worst residual over sampled slice points. The choice of q is the caller's;
any admissible q tests the same canonical form. In the nonzero case only the
projection onto a/|a| is pinned down by equality, so the diagnosis checks
that projection and reports the largest orthogonal component seen without
judging it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexcore import as_cvector, herm_inner, vector_to_pairs, vnorm
from .errors import InputError, PreconditionError
from .geometry import bound_factor, disk_slice
from .holomap import (
    AffineScalar,
    HoloMap,
    LinearFunctional,
    LineEmbed,
    MobiusDisk,
    MobiusQuotient,
    Pipeline,
    ScalarTimesVector,
)
from .schwarzpick import ZERO_BRANCH_TOL, equality_gap

__all__ = [
    "ExtremalSpec",
    "extremal_zero_case",
    "extremal_nonzero_case",
    "Diagnosis",
    "diagnose_equality_form",
    "UNIT_TOL",
]

UNIT_TOL = 1e-12


@dataclass(eq=False)
class ExtremalSpec:
    """Parameters of an equality-case construction.

    ``case`` is "zero" or "nonzero"; ``p`` the equality point, ``u`` a unit
    direction collinear with p (free when p = 0). The zero case carries a
    unit target direction ``beta``; the nonzero case carries the target value
    ``a`` (0 < |a| < 1) and a rotation angle ``theta``.
    """

    case: str
    p: np.ndarray
    u: np.ndarray
    beta: np.ndarray | None = None
    a: np.ndarray | None = None
    theta: float | None = None

    @classmethod
    def zero(cls, p, u, beta) -> "ExtremalSpec":
        return cls(case="zero", p=as_cvector(p, "p"), u=as_cvector(u, "u"),
                   beta=as_cvector(beta, "beta"))

    @classmethod
    def nonzero(cls, p, u, a, theta: float) -> "ExtremalSpec":
        return cls(case="nonzero", p=as_cvector(p, "p"), u=as_cvector(u, "u"),
                   a=as_cvector(a, "a"), theta=float(theta))


def _checked_direction(p: np.ndarray, u) -> np.ndarray:
    uv = as_cvector(u, "u")
    if uv.shape != p.shape:
        raise InputError("u must have the same dimension as p")
    nu = vnorm(uv)
    if abs(nu - 1.0) > UNIT_TOL:
        raise InputError(f"u must be a unit vector, |u| = {nu}")
    uv = uv / nu
    npv = vnorm(p)
    if npv > 0.0:
        cosine = abs(herm_inner(uv, p)) / npv
        if cosine < 1.0 - UNIT_TOL:
            raise InputError(
                f"u must be collinear with p (|<u, p/|p|>| = {cosine}); "
                "a non-collinear direction cannot attain equality at p"
            )
    return uv


def _checked_p(spec: ExtremalSpec) -> np.ndarray:
    p = as_cvector(spec.p, "p")
    if vnorm(p) >= 1.0:
        raise InputError("p must lie strictly inside the unit ball")
    return p


def extremal_zero_case(spec: ExtremalSpec) -> Pipeline:
    """Equality witness with f(p) = 0; |grad|f||(p) = 1 / (1 - |p|^2)."""
    if spec.case != "zero":
        raise InputError(f"spec.case must be 'zero', got {spec.case!r}")
    if spec.beta is None:
        raise InputError("zero case requires beta")
    p = _checked_p(spec)
    u = _checked_direction(p, spec.u)
    beta = as_cvector(spec.beta, "beta")
    nb = vnorm(beta)
    if abs(nb - 1.0) > UNIT_TOL:
        raise InputError(f"beta must be a unit vector, |beta| = {nb}")
    z0 = herm_inner(p, u)
    return Pipeline([LinearFunctional(u), MobiusDisk(z0), ScalarTimesVector(beta / nb)])


def extremal_nonzero_case(spec: ExtremalSpec) -> Pipeline:
    """Equality witness with f(p) = a != 0;
    |grad|f||(p) = (1 - |a|^2) / (1 - |p|^2)."""
    if spec.case != "nonzero":
        raise InputError(f"spec.case must be 'nonzero', got {spec.case!r}")
    if spec.a is None or spec.theta is None:
        raise InputError("nonzero case requires a and theta")
    p = _checked_p(spec)
    u = _checked_direction(p, spec.u)
    a = as_cvector(spec.a, "a")
    na = vnorm(a)
    if na == 0.0:
        raise InputError("a must be nonzero; use the zero case for f(p) = 0")
    if na >= 1.0:
        raise InputError(f"|a| must be < 1, got {na}")
    theta = float(spec.theta)
    if not np.isfinite(theta):
        raise InputError("theta must be finite")
    z0 = herm_inner(p, u)
    return Pipeline(
        [
            LinearFunctional(u),
            MobiusDisk(z0),
            MobiusQuotient(na, theta),
            ScalarTimesVector(a / na),
        ]
    )


@dataclass(eq=False)
class Diagnosis:
    """Result of fitting the canonical equality form along a slice.

    ``matches`` holds when the worst residual over the sampled slice points
    is within tolerance. The fitted parameter is ``fitted_beta`` in the zero
    case and ``fitted_theta`` (with ``fitted_a = f(p)``) in the nonzero case,
    where ``orthogonal_max`` additionally reports the largest component of f
    orthogonal to a/|a| seen on the samples (not judged).
    """

    matches: bool
    max_residual: float
    points_tested: int
    fitted_theta: float | None = None
    fitted_a: np.ndarray | None = None
    fitted_beta: np.ndarray | None = None
    orthogonal_max: float | None = None

    def to_dict(self) -> dict:
        return {
            "matches": bool(self.matches),
            "max_residual": float(self.max_residual),
            "points_tested": int(self.points_tested),
            "fitted_theta": None if self.fitted_theta is None else float(self.fitted_theta),
            "fitted_a": None if self.fitted_a is None else vector_to_pairs(self.fitted_a),
            "fitted_beta": None if self.fitted_beta is None else vector_to_pairs(self.fitted_beta),
            "orthogonal_max": None if self.orthogonal_max is None else float(self.orthogonal_max),
        }


def diagnose_equality_form(
    f: HoloMap, p, q, samples: int = 64, tol: float = 1e-10
) -> Diagnosis:
    """Fit the canonical equality form to f along the line through p and q.

    Requires |equality_gap(f, p)| <= tol (the equality hypothesis) and q - p
    collinear with p; both are verified. Samples sit on the circle of radius
    0.9 r about c in the slice disk.
    """
    if samples < 2:
        raise InputError("samples must be at least 2")
    if tol <= 0:
        raise InputError("tol must be positive")
    pv = as_cvector(p, "p")
    qv = as_cvector(q, "q")
    if pv.shape[0] != f.n or qv.shape[0] != f.n:
        raise InputError(f"p and q must have dimension {f.n}")
    gap = equality_gap(f, pv)
    if abs(gap) > tol:
        raise PreconditionError(
            f"equality hypothesis fails at p: |gap| = {abs(gap)} > tol = {tol}"
        )
    bf = bound_factor(pv, qv)
    if not bf.collinear:
        raise InputError("q - p must be collinear with p for a diagnosable slice")
    ds = disk_slice(pv, qv)
    g = Pipeline([LineEmbed(pv, qv), f])
    # canonical disk factor on the slice: w(z) = phi_{-c/r}((z - c)/r)
    canonical = Pipeline(
        [AffineScalar(1.0 / ds.r, -ds.c / ds.r), MobiusDisk(-ds.c / ds.r)]
    )
    zs = ds.c + 0.9 * ds.r * np.exp(2j * np.pi * np.arange(samples) / samples)
    W = canonical.eval_many(zs[:, None])[:, 0]
    G = g.eval_many(zs[:, None])

    fp = f.eval(pv)
    nfp = vnorm(fp)
    if nfp <= ZERO_BRANCH_TOL:
        k = int(np.argmax(np.abs(W)))
        beta_fit = G[k] / W[k]
        resid = float(np.sqrt((np.abs(G - W[:, None] * beta_fit[None, :]) ** 2).sum(axis=1)).max())
        return Diagnosis(
            matches=bool(resid <= tol),
            max_residual=resid,
            points_tested=int(samples),
            fitted_beta=beta_fit,
        )

    unit_a = fp / nfp
    h = G @ np.conj(unit_a)
    gprime = g.jac_many(np.array([[0.0 + 0.0j]]))[0][:, 0]
    hprime = complex(gprime @ np.conj(unit_a))
    wprime = -ds.r / ((ds.r - abs(ds.c)) * (ds.r + abs(ds.c)))
    efit = hprime / (((1.0 - nfp) * (1.0 + nfp)) * wprime)
    theta_fit = float(np.angle(efit))
    rot = complex(np.exp(1j * theta_fit))
    model = (nfp + rot * W) / (1.0 + nfp * rot * W)
    resid = float(np.abs(h - model).max())
    orth_sq = (np.abs(G) ** 2).sum(axis=1) - np.abs(h) ** 2
    orth = float(np.sqrt(np.maximum(orth_sq, 0.0)).max())
    return Diagnosis(
        matches=bool(resid <= tol),
        max_residual=resid,
        points_tested=int(samples),
        fitted_theta=theta_fit,
        fitted_a=fp,
        orthogonal_max=orth,
    )
