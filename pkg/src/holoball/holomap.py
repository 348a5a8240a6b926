"""Holomorphic map algebra and its JSON document format.

Every map kind evaluates by plain arithmetic on its description and
differentiates exactly: term by term for polynomials, rational-derivative
formulas for the Moebius kinds, chain rule for pipelines. No numerical
differentiation happens in this module.

Maps are immutable after construction. Domain membership is not enforced at
evaluation time; a map may be evaluated anywhere its poles permit (slices of
the ball live on disks larger than the unit disk). Ball containment is
asserted by the bound-checking and harness layers instead.

Document format (``parse_spec`` / ``emit_spec``): a JSON object with a
``kind`` field. Complex scalars are ``[re, im]`` pairs, vectors lists of
pairs. Kinds:

* ``poly``: ``{n, m, terms: [{alpha: [int, ...], coef: [[re, im], ...]}]}``,
  multi-indices in lexicographic order, coefficients kept exactly as given.
* ``mobius_scalar``: ``{z0}`` for ``z -> (z0 - z) / (1 - conj(z0) z)``.
* ``mobius_quotient``: ``{a_abs, theta}`` for
  ``z -> (a_abs + e^{i theta} z) / (1 + a_abs e^{i theta} z)``.
* ``line_embed``: ``{p, q}`` for ``z -> p + z (q - p)``.
* ``linear_functional``: ``{u}`` for ``w -> herm_inner(w, u)``.
* ``scalar_times_vector``: ``{beta}`` for ``z -> z * beta``.
* ``affine_scalar``: ``{r, c}`` for ``z -> r z + c``.
* ``pipeline``: ``{stages: [...]}``, applied first to last.
"""

from __future__ import annotations

import itertools

import numpy as np

from .complexcore import as_cvector, complex_to_pair, vector_to_pairs, vnorm
from .errors import DomainError, InputError, SchemaError

__all__ = [
    "HoloMap",
    "PolyMap",
    "MobiusDisk",
    "MobiusQuotient",
    "LineEmbed",
    "LinearFunctional",
    "ScalarTimesVector",
    "AffineScalar",
    "Pipeline",
    "parse_spec",
    "emit_spec",
    "POLE_TOL",
]

POLE_TOL = 1e-15


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _as_batch(Z, n: int) -> np.ndarray:
    """Coerce evaluation points to a finite ``(B, n)`` complex batch."""
    A = np.asarray(Z, dtype=np.complex128)
    if A.ndim == 0:
        A = A.reshape(1, 1)
    elif A.ndim == 1:
        if A.shape[0] == n:
            A = A.reshape(1, n)
        elif n == 1:
            A = A.reshape(-1, 1)
        else:
            raise InputError(f"point has dimension {A.shape[0]}, map expects {n}")
    if A.ndim != 2 or A.shape[1] != n:
        raise InputError(f"points must have shape (B, {n}), got {A.shape}")
    if not np.isfinite(A).all():
        raise InputError("points contain non-finite entries")
    return A


class HoloMap:
    """Base class: a holomorphic map C^n -> C^m given by exact formulas."""

    n: int
    m: int

    def eval_many(self, Z) -> np.ndarray:
        """Evaluate at a batch of points, ``(B, n) -> (B, m)``."""
        raise NotImplementedError

    def jac_many(self, Z) -> np.ndarray:
        """Complex Jacobians at a batch of points, ``(B, n) -> (B, m, n)``;
        column j holds the partial derivatives with respect to z_j."""
        raise NotImplementedError

    def eval(self, z) -> np.ndarray:
        """Evaluate at one point, returns a vector of length m."""
        return self.eval_many(_as_batch(z, self.n))[0]

    def jacobian(self, z) -> np.ndarray:
        """Complex Jacobian at one point, shape ``(m, n)``."""
        return self.jac_many(_as_batch(z, self.n))[0]

    def frechet_apply(self, z, beta) -> np.ndarray:
        """Directional derivative ``Df(z) . beta``."""
        b = as_cvector(beta, "beta")
        if b.shape[0] != self.n:
            raise InputError(f"direction has dimension {b.shape[0]}, map expects {self.n}")
        return self.jacobian(z) @ b


def _eval_terms(Z: np.ndarray, alphas: np.ndarray, coefs: np.ndarray, m: int) -> np.ndarray:
    B = Z.shape[0]
    T = alphas.shape[0]
    if T == 0:
        return np.zeros((B, m), dtype=np.complex128)
    mono = np.ones((B, T), dtype=np.complex128)
    for j in range(Z.shape[1]):
        dj = int(alphas[:, j].max())
        if dj == 0:
            continue
        P = np.empty((B, dj + 1), dtype=np.complex128)
        P[:, 0] = 1.0
        for k in range(1, dj + 1):
            P[:, k] = P[:, k - 1] * Z[:, j]
        mono *= P[:, alphas[:, j]]
    return mono @ coefs


class PolyMap(HoloMap):
    """Polynomial map C^n -> C^m with explicit multi-index terms.

    ``terms`` maps a multi-index tuple (length n, non-negative ints) to a
    coefficient vector of length m; an iterable of ``(alpha, coef)`` pairs is
    also accepted. Terms are stored in lexicographic multi-index order and
    coefficients are kept exactly as given.
    """

    def __init__(self, n: int, m: int, terms):
        if not isinstance(n, (int, np.integer)) or n < 1:
            raise InputError("n must be a positive integer")
        if not isinstance(m, (int, np.integer)) or m < 1:
            raise InputError("m must be a positive integer")
        self.n = int(n)
        self.m = int(m)
        items = terms.items() if hasattr(terms, "items") else list(terms)
        seen = {}
        for alpha, coef in items:
            key = tuple(int(a) for a in np.asarray(alpha).reshape(-1))
            if len(key) != self.n:
                raise InputError(f"multi-index {key} has length {len(key)}, expected {self.n}")
            if any(a < 0 for a in key):
                raise InputError(f"multi-index {key} has a negative entry")
            if key in seen:
                raise InputError(f"duplicate multi-index {key}")
            vec = np.asarray(coef, dtype=np.complex128).reshape(-1)
            if vec.shape[0] != self.m:
                raise InputError(
                    f"coefficient for {key} has length {vec.shape[0]}, expected {self.m}"
                )
            if not np.isfinite(vec).all():
                raise InputError(f"coefficient for {key} is not finite")
            seen[key] = vec
        order = sorted(seen)
        self._alphas = _freeze(np.array(order, dtype=np.int64).reshape(len(order), self.n))
        self._coefs = _freeze(
            np.array([seen[k] for k in order], dtype=np.complex128).reshape(len(order), self.m)
        )
        self._derivs: dict[int, tuple[np.ndarray, np.ndarray]] = {}

    @classmethod
    def identity(cls, n: int) -> "PolyMap":
        terms = {}
        for j in range(n):
            alpha = [0] * n
            alpha[j] = 1
            coef = np.zeros(n, dtype=np.complex128)
            coef[j] = 1.0
            terms[tuple(alpha)] = coef
        return cls(n, n, terms)

    @classmethod
    def from_scalar_coeffs(cls, coeffs) -> "PolyMap":
        """One-variable scalar polynomial ``sum_k coeffs[k] z^k``."""
        return cls(1, 1, {(k,): [c] for k, c in enumerate(coeffs)})

    @property
    def terms(self) -> dict:
        return {
            tuple(int(a) for a in alpha): self._coefs[i].copy()
            for i, alpha in enumerate(self._alphas)
        }

    def __repr__(self):
        return f"PolyMap(n={self.n}, m={self.m}, terms={self._alphas.shape[0]})"

    def eval_many(self, Z) -> np.ndarray:
        Z = _as_batch(Z, self.n)
        return _eval_terms(Z, self._alphas, self._coefs, self.m)

    def _deriv_arrays(self, j: int):
        cached = self._derivs.get(j)
        if cached is not None:
            return cached
        rows = self._alphas[:, j] >= 1
        alphas = self._alphas[rows].copy()
        coefs = self._coefs[rows] * alphas[:, j][:, None]
        alphas[:, j] -= 1
        pair = (_freeze(alphas), _freeze(coefs))
        self._derivs[j] = pair
        return pair

    def jac_many(self, Z) -> np.ndarray:
        Z = _as_batch(Z, self.n)
        cols = []
        for j in range(self.n):
            alphas, coefs = self._deriv_arrays(j)
            cols.append(_eval_terms(Z, alphas, coefs, self.m))
        return np.stack(cols, axis=2)


class MobiusDisk(HoloMap):
    """Disk automorphism ``z -> (z0 - z) / (1 - conj(z0) z)`` with |z0| < 1.

    Swaps z0 and 0 and is its own inverse. Derivative
    ``(|z0|^2 - 1) / (1 - conj(z0) z)^2``.
    """

    n = 1
    m = 1

    def __init__(self, z0):
        z0 = complex(z0)
        if not (np.isfinite(z0.real) and np.isfinite(z0.imag)):
            raise InputError("z0 must be finite")
        if abs(z0) >= 1:
            raise InputError(f"|z0| must be < 1, got {abs(z0)}")
        self.z0 = z0

    def __repr__(self):
        return f"MobiusDisk(z0={self.z0})"

    def _den(self, Z: np.ndarray) -> np.ndarray:
        den = 1.0 - np.conj(self.z0) * Z
        if (np.abs(den) < POLE_TOL).any():
            raise DomainError(f"evaluation at a pole of the Moebius factor z0={self.z0}")
        return den

    def eval_many(self, Z) -> np.ndarray:
        Z = _as_batch(Z, 1)
        return (self.z0 - Z) / self._den(Z)

    def jac_many(self, Z) -> np.ndarray:
        Z = _as_batch(Z, 1)
        den = self._den(Z)
        return ((abs(self.z0) ** 2 - 1.0) / den**2)[:, :, None]


class MobiusQuotient(HoloMap):
    """Scalar quotient ``z -> (a + e^{i theta} z) / (1 + a e^{i theta} z)``
    with real ``a = a_abs`` in [0, 1). Maps the unit disk into itself;
    derivative ``e^{i theta} (1 - a^2) / (1 + a e^{i theta} z)^2``.
    """

    n = 1
    m = 1

    def __init__(self, a_abs: float, theta: float):
        a_abs = float(a_abs)
        theta = float(theta)
        if not np.isfinite(a_abs) or not (0.0 <= a_abs < 1.0):
            raise InputError(f"a_abs must lie in [0, 1), got {a_abs}")
        if not np.isfinite(theta):
            raise InputError("theta must be finite")
        self.a_abs = a_abs
        self.theta = theta
        self._rot = complex(np.exp(1j * theta))

    def __repr__(self):
        return f"MobiusQuotient(a_abs={self.a_abs}, theta={self.theta})"

    def _den(self, Z: np.ndarray) -> np.ndarray:
        den = 1.0 + self.a_abs * self._rot * Z
        if (np.abs(den) < POLE_TOL).any():
            raise DomainError("evaluation at a pole of the Moebius quotient")
        return den

    def eval_many(self, Z) -> np.ndarray:
        Z = _as_batch(Z, 1)
        return (self.a_abs + self._rot * Z) / self._den(Z)

    def jac_many(self, Z) -> np.ndarray:
        Z = _as_batch(Z, 1)
        den = self._den(Z)
        return (self._rot * (1.0 - self.a_abs**2) / den**2)[:, :, None]


class LineEmbed(HoloMap):
    """Affine embedding of a complex line, ``z -> p + z (q - p)``; L(0) = p,
    L(1) = q."""

    n = 1

    def __init__(self, p, q):
        self.p = _freeze(as_cvector(p, "p").copy())
        self.q = _freeze(as_cvector(q, "q").copy())
        if self.p.shape != self.q.shape:
            raise InputError("p and q must have the same dimension")
        self._d = _freeze(self.q - self.p)
        if vnorm(self._d) < 1e-14:
            raise InputError("q must differ from p")
        self.m = self.p.shape[0]

    def __repr__(self):
        return f"LineEmbed(dim={self.m})"

    def eval_many(self, Z) -> np.ndarray:
        Z = _as_batch(Z, 1)
        return self.p[None, :] + Z * self._d[None, :]

    def jac_many(self, Z) -> np.ndarray:
        Z = _as_batch(Z, 1)
        return np.broadcast_to(self._d[None, :, None], (Z.shape[0], self.m, 1)).copy()


class LinearFunctional(HoloMap):
    """Inner product against a fixed vector, ``w -> herm_inner(w, u)``."""

    m = 1

    def __init__(self, u):
        self.u = _freeze(as_cvector(u, "u").copy())
        self.n = self.u.shape[0]
        self._cu = _freeze(np.conj(self.u))

    def __repr__(self):
        return f"LinearFunctional(dim={self.n})"

    def eval_many(self, Z) -> np.ndarray:
        Z = _as_batch(Z, self.n)
        return (Z @ self._cu)[:, None]

    def jac_many(self, Z) -> np.ndarray:
        Z = _as_batch(Z, self.n)
        return np.broadcast_to(self._cu[None, None, :], (Z.shape[0], 1, self.n)).copy()


class ScalarTimesVector(HoloMap):
    """Scale a fixed vector by the scalar argument, ``z -> z * beta``."""

    n = 1

    def __init__(self, beta):
        self.beta = _freeze(as_cvector(beta, "beta").copy())
        self.m = self.beta.shape[0]

    def __repr__(self):
        return f"ScalarTimesVector(dim={self.m})"

    def eval_many(self, Z) -> np.ndarray:
        Z = _as_batch(Z, 1)
        return Z * self.beta[None, :]

    def jac_many(self, Z) -> np.ndarray:
        Z = _as_batch(Z, 1)
        return np.broadcast_to(self.beta[None, :, None], (Z.shape[0], self.m, 1)).copy()


class AffineScalar(HoloMap):
    """Scalar affine map ``z -> r z + c``."""

    n = 1
    m = 1

    def __init__(self, r, c):
        r = complex(r)
        c = complex(c)
        for name, v in (("r", r), ("c", c)):
            if not (np.isfinite(v.real) and np.isfinite(v.imag)):
                raise InputError(f"{name} must be finite")
        self.r = r
        self.c = c

    def __repr__(self):
        return f"AffineScalar(r={self.r}, c={self.c})"

    def eval_many(self, Z) -> np.ndarray:
        Z = _as_batch(Z, 1)
        return self.r * Z + self.c

    def jac_many(self, Z) -> np.ndarray:
        Z = _as_batch(Z, 1)
        return np.full((Z.shape[0], 1, 1), self.r, dtype=np.complex128)


class Pipeline(HoloMap):
    """Composition of maps, applied first to last; the Jacobian is the
    (batched) chain-rule product of the stage Jacobians."""

    def __init__(self, stages):
        stages = tuple(stages)
        if not stages:
            raise InputError("pipeline needs at least one stage")
        for s in stages:
            if not isinstance(s, HoloMap):
                raise InputError(f"pipeline stage {s!r} is not a map")
        for a, b in itertools.pairwise(stages):
            if a.m != b.n:
                raise InputError(
                    f"stage output dimension {a.m} does not match next input dimension {b.n}"
                )
        self.stages = stages
        self.n = stages[0].n
        self.m = stages[-1].m

    def __repr__(self):
        inner = ", ".join(repr(s) for s in self.stages)
        return f"Pipeline([{inner}])"

    def eval_many(self, Z) -> np.ndarray:
        X = _as_batch(Z, self.n)
        for stage in self.stages:
            X = stage.eval_many(X)
        return X

    def jac_many(self, Z) -> np.ndarray:
        X = _as_batch(Z, self.n)
        J = None
        for stage in self.stages:
            Ji = stage.jac_many(X)
            J = Ji if J is None else np.matmul(Ji, J)
            X = stage.eval_many(X)
        return J


# ---------------------------------------------------------------------------
# document format


def _expect_object(doc, path, keys):
    if not isinstance(doc, dict):
        raise SchemaError(path, f"expected an object, got {type(doc).__name__}")
    extra = set(doc) - set(keys)
    if extra:
        raise SchemaError(path, f"unexpected field(s) {sorted(extra)}")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise SchemaError(path, f"missing field(s) {missing}")


def _real(v, path) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise SchemaError(path, f"expected a number, got {type(v).__name__}")
    f = float(v)
    if not np.isfinite(f):
        raise SchemaError(path, "number must be finite")
    return f


def _int(v, path, minimum=None) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(path, f"expected an integer, got {type(v).__name__}")
    if minimum is not None and v < minimum:
        raise SchemaError(path, f"must be >= {minimum}, got {v}")
    return v


def _pair(v, path) -> complex:
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise SchemaError(path, "expected a [re, im] pair")
    return complex(_real(v[0], f"{path}/0"), _real(v[1], f"{path}/1"))


def _pairs(v, path) -> np.ndarray:
    if not isinstance(v, (list, tuple)) or len(v) == 0:
        raise SchemaError(path, "expected a non-empty list of [re, im] pairs")
    return np.array([_pair(x, f"{path}/{i}") for i, x in enumerate(v)], dtype=np.complex128)


def _parse_poly(doc, path):
    _expect_object(doc, path, ("kind", "n", "m", "terms"))
    n = _int(doc["n"], f"{path}/n", minimum=1)
    m = _int(doc["m"], f"{path}/m", minimum=1)
    raw = doc["terms"]
    if not isinstance(raw, list):
        raise SchemaError(f"{path}/terms", "expected a list")
    terms = []
    seen = set()
    for i, t in enumerate(raw):
        tp = f"{path}/terms/{i}"
        _expect_object(t, tp, ("alpha", "coef"))
        alpha = t["alpha"]
        if not isinstance(alpha, list) or len(alpha) != n:
            raise SchemaError(f"{tp}/alpha", f"expected a list of {n} integers")
        key = tuple(_int(a, f"{tp}/alpha/{j}", minimum=0) for j, a in enumerate(alpha))
        if key in seen:
            raise SchemaError(f"{tp}/alpha", f"duplicate multi-index {list(key)}")
        seen.add(key)
        coef = _pairs(t["coef"], f"{tp}/coef")
        if coef.shape[0] != m:
            raise SchemaError(f"{tp}/coef", f"expected {m} pairs, got {coef.shape[0]}")
        terms.append((key, coef))
    return PolyMap(n, m, terms)


def _parse(doc, path) -> HoloMap:
    if not isinstance(doc, dict):
        raise SchemaError(path, f"expected an object, got {type(doc).__name__}")
    kind = doc.get("kind")
    if kind == "poly":
        return _parse_poly(doc, path)
    if kind == "mobius_scalar":
        _expect_object(doc, path, ("kind", "z0"))
        z0 = _pair(doc["z0"], f"{path}/z0")
        if abs(z0) >= 1:
            raise SchemaError(f"{path}/z0", f"|z0| must be < 1, got {abs(z0)}")
        return MobiusDisk(z0)
    if kind == "mobius_quotient":
        _expect_object(doc, path, ("kind", "a_abs", "theta"))
        a_abs = _real(doc["a_abs"], f"{path}/a_abs")
        if not (0.0 <= a_abs < 1.0):
            raise SchemaError(f"{path}/a_abs", f"must lie in [0, 1), got {a_abs}")
        return MobiusQuotient(a_abs, _real(doc["theta"], f"{path}/theta"))
    if kind == "line_embed":
        _expect_object(doc, path, ("kind", "p", "q"))
        p = _pairs(doc["p"], f"{path}/p")
        q = _pairs(doc["q"], f"{path}/q")
        if p.shape != q.shape:
            raise SchemaError(f"{path}/q", "p and q must have the same dimension")
        if vnorm(q - p) < 1e-14:
            raise SchemaError(f"{path}/q", "q must differ from p")
        return LineEmbed(p, q)
    if kind == "linear_functional":
        _expect_object(doc, path, ("kind", "u"))
        return LinearFunctional(_pairs(doc["u"], f"{path}/u"))
    if kind == "scalar_times_vector":
        _expect_object(doc, path, ("kind", "beta"))
        return ScalarTimesVector(_pairs(doc["beta"], f"{path}/beta"))
    if kind == "affine_scalar":
        _expect_object(doc, path, ("kind", "r", "c"))
        return AffineScalar(_pair(doc["r"], f"{path}/r"), _pair(doc["c"], f"{path}/c"))
    if kind == "pipeline":
        _expect_object(doc, path, ("kind", "stages"))
        raw = doc["stages"]
        if not isinstance(raw, list) or len(raw) == 0:
            raise SchemaError(f"{path}/stages", "expected a non-empty list")
        stages = [_parse(s, f"{path}/stages/{i}") for i, s in enumerate(raw)]
        try:
            return Pipeline(stages)
        except InputError as e:
            raise SchemaError(f"{path}/stages", str(e)) from e
    raise SchemaError(f"{path}/kind", f"unknown kind {kind!r}")


def parse_spec(doc) -> HoloMap:
    """Build a map from its (already JSON-decoded) document."""
    return _parse(doc, "")


def emit_spec(f: HoloMap) -> dict:
    """Serialize a map to its document; inverse of ``parse_spec``."""
    if isinstance(f, PolyMap):
        return {
            "kind": "poly",
            "n": f.n,
            "m": f.m,
            "terms": [
                {
                    "alpha": [int(a) for a in f._alphas[i]],
                    "coef": vector_to_pairs(f._coefs[i]),
                }
                for i in range(f._alphas.shape[0])
            ],
        }
    if isinstance(f, MobiusDisk):
        return {"kind": "mobius_scalar", "z0": complex_to_pair(f.z0)}
    if isinstance(f, MobiusQuotient):
        return {"kind": "mobius_quotient", "a_abs": f.a_abs, "theta": f.theta}
    if isinstance(f, LineEmbed):
        return {"kind": "line_embed", "p": vector_to_pairs(f.p), "q": vector_to_pairs(f.q)}
    if isinstance(f, LinearFunctional):
        return {"kind": "linear_functional", "u": vector_to_pairs(f.u)}
    if isinstance(f, ScalarTimesVector):
        return {"kind": "scalar_times_vector", "beta": vector_to_pairs(f.beta)}
    if isinstance(f, AffineScalar):
        return {"kind": "affine_scalar", "r": complex_to_pair(f.r), "c": complex_to_pair(f.c)}
    if isinstance(f, Pipeline):
        return {"kind": "pipeline", "stages": [emit_spec(s) for s in f.stages]}
    raise InputError(f"cannot serialize {type(f).__name__}")
