"""Randomized stress harness: certified map generation, ball sampling, and
deterministic fuzz campaigns with a JSONL audit log.

Generated polynomial maps carry an l1 containment certificate: after the
global rescale, ``sum_k (sum_alpha |c_{k,alpha}|)^2 <= (1 - margin)^2``,
which forces ``|f(z)| <= 1 - margin`` on the closed ball since every
monomial has modulus at most 1 there.

Campaigns derive one sub-seed per (trial, purpose, point) by splitmix64
hashing of the config seed, so trials are independent and the whole run is
reproducible; identical configs produce byte-identical JSONL (the summary's
``runtime_ms`` is the only non-deterministic output). Each log line is

    {"trial": int, "point": [[re, im], ...], "lhs": real, "rhs": real,
     "slack": real, "branch": "zero"|"nonzero", "fd": real, "fd_dev": real}

with ``fd`` fields null when the finite-difference oracle is disabled. The
pinned witness trial (the map ``(z, 1)/sqrt(2)`` at 0, where the classical
derivative bound fails while the modulus-gradient bound holds) is logged
with trial index -1.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .complexcore import sample_unit_sphere, spectral_norm, vector_to_pairs
from .errors import InputError
from .holomap import PolyMap
from .schwarzpick import (
    DEFAULT_FD_STEPS,
    BoundReport,
    mod_grad_fd,
    sp_bound,
)

__all__ = [
    "FuzzConfig",
    "CampaignReport",
    "gen_random_polymap",
    "force_zero_at",
    "sample_ball_points",
    "fuzz_campaign",
    "counterexample_map",
]

_MASK = (1 << 64) - 1
# FD sample exceeding the closed form by more than this is counted as an
# anomaly instead of silently accepted
FD_ANOMALY_TOL = 1e-6
_RADIUS_CAP = 0.999


def _mix(*parts: int) -> int:
    """splitmix64 over the parts; stable non-negative sub-seed."""
    x = 0x9E3779B97F4A7C15
    for part in parts:
        x = (x ^ (int(part) & _MASK)) & _MASK
        x = (x + 0x9E3779B97F4A7C15) & _MASK
        z = x
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        x = z ^ (z >> 31)
    return x >> 1


def _multi_indices(n: int, max_degree: int) -> list[tuple[int, ...]]:
    return [
        alpha
        for alpha in itertools.product(range(max_degree + 1), repeat=n)
        if sum(alpha) <= max_degree
    ]


def gen_random_polymap(n: int, m: int, max_degree: int, margin: float, seed: int) -> PolyMap:
    """Seeded Gaussian polynomial map rescaled to the l1 containment
    certificate ``sum_k (sum_alpha |c_{k,alpha}|)^2 <= (1 - margin)^2``."""
    if n < 1 or m < 1:
        raise InputError("n and m must be positive")
    if max_degree < 0:
        raise InputError("max_degree must be non-negative")
    if not (0.0 < margin < 1.0):
        raise InputError("margin must lie in (0, 1)")
    alphas = _multi_indices(n, max_degree)
    rng = np.random.default_rng(_mix(seed))
    raw = rng.standard_normal((len(alphas), m)) + 1j * rng.standard_normal((len(alphas), m))
    cert = float(np.sqrt(((np.abs(raw).sum(axis=0)) ** 2).sum()))
    # tiny deflation keeps the certificate strict under rounding
    scale = (1.0 - margin) / cert * (1.0 - 1e-13)
    return PolyMap(n, m, zip(alphas, raw * scale))


def force_zero_at(f: PolyMap, p, margin: float) -> PolyMap:
    """Shift ``f`` by ``-f(p)`` and rescale so the containment certificate is
    restored; the result vanishes at p (up to roundoff well below the
    zero-branch threshold)."""
    if not (0.0 < margin < 1.0):
        raise InputError("margin must lie in (0, 1)")
    terms = f.terms
    zero_alpha = (0,) * f.n
    const = terms.get(zero_alpha, np.zeros(f.m, dtype=np.complex128)).copy()
    const -= f.eval(p)
    terms[zero_alpha] = const
    mat = np.array(list(terms.values()), dtype=np.complex128)
    cert = float(np.sqrt(((np.abs(mat).sum(axis=0)) ** 2).sum()))
    if cert == 0.0:
        return PolyMap(f.n, f.m, terms)
    scale = (1.0 - margin) / cert * (1.0 - 1e-13)
    return PolyMap(f.n, f.m, {a: c * scale for a, c in terms.items()})


def sample_ball_points(n: int, count: int, seed: int) -> np.ndarray:
    """Uniform samples of the unit ball of C^n: uniform sphere direction
    times inverse-CDF radius ``U^(1/(2n))``; radii above 0.999 are redrawn."""
    if n < 1:
        raise InputError("n must be positive")
    if count < 1:
        raise InputError("count must be positive")
    dirs = sample_unit_sphere(n, count, _mix(seed, 0xD12))
    rng = np.random.default_rng(_mix(seed, 0x2AD))
    radii = rng.random(count) ** (1.0 / (2 * n))
    while (radii > _RADIUS_CAP).any():
        bad = radii > _RADIUS_CAP
        radii[bad] = rng.random(int(bad.sum())) ** (1.0 / (2 * n))
    return dirs * radii[:, None]


def counterexample_map() -> PolyMap:
    """The map ``f(z) = (z, 1)/sqrt(2)``: |f'(0)| exceeds 1 - |f(0)|^2 while
    the modulus gradient at 0 is 0."""
    s = 1.0 / np.sqrt(2.0)
    return PolyMap(1, 2, {(0,): [0.0, s], (1,): [s, 0.0]})


@dataclass
class FuzzConfig:
    """Configuration of one campaign; defaults give the standard 10^5-point
    run. ``fd_dirs = 0`` disables the per-point finite-difference oracle."""

    trials: int = 1000
    points_per_trial: int = 100
    n: int = 2
    m: int = 2
    max_degree: int = 3
    margin: float = 0.25
    seed: int = 20250817
    tol: float = 1e-9
    fd_dirs: int = 64
    fd_steps: tuple = DEFAULT_FD_STEPS
    pin_counterexample: bool = False

    def validate(self) -> None:
        if self.trials < 0:
            raise InputError("trials must be non-negative")
        if self.points_per_trial < 1:
            raise InputError("points_per_trial must be positive")
        if self.n < 1 or self.m < 1:
            raise InputError("n and m must be positive")
        if self.max_degree < 0:
            raise InputError("max_degree must be non-negative")
        if not (0.0 < self.margin < 1.0):
            raise InputError("margin must lie in (0, 1)")
        if self.tol <= 0:
            raise InputError("tol must be positive")
        if self.fd_dirs != 0 and self.fd_dirs < 64:
            raise InputError("fd_dirs must be 0 (disabled) or at least 64")


@dataclass
class CampaignReport:
    """Aggregate of one campaign. ``violations`` holds the failing bound
    reports; ``worst_slack`` and ``oracle_max_dev`` are None when no point
    was checked (or the FD oracle was off)."""

    trials_run: int
    points_checked: int
    violations: list[BoundReport] = field(default_factory=list)
    worst_slack: float | None = None
    oracle_max_dev: float | None = None
    fd_anomalies: int = 0
    runtime_ms: float = 0.0
    counterexample: dict | None = None

    def to_dict(self) -> dict:
        return {
            "trials_run": int(self.trials_run),
            "points_checked": int(self.points_checked),
            "violations": [v.to_dict() for v in self.violations],
            "worst_slack": None if self.worst_slack is None else float(self.worst_slack),
            "oracle_max_dev": (
                None if self.oracle_max_dev is None else float(self.oracle_max_dev)
            ),
            "fd_anomalies": int(self.fd_anomalies),
            "runtime_ms": float(self.runtime_ms),
            "counterexample": self.counterexample,
        }


def _record_line(trial: int, rep: BoundReport, fd: float | None) -> str:
    rec = {
        "trial": trial,
        "point": vector_to_pairs(rep.point),
        "lhs": rep.lhs,
        "rhs": rep.rhs,
        "slack": rep.slack,
        "branch": rep.branch,
        "fd": None if fd is None else float(fd),
        "fd_dev": None if fd is None else abs(rep.lhs - float(fd)),
    }
    return json.dumps(rec)


def fuzz_campaign(cfg: FuzzConfig, log_path: str | Path | None = None) -> CampaignReport:
    """Run a campaign: per trial, generate one certified map and check the
    bound (plus the FD oracle when enabled) at sampled ball points, streaming
    one JSONL record per point to ``log_path`` in trial order."""
    cfg.validate()
    t0 = time.perf_counter()
    report = CampaignReport(trials_run=0, points_checked=0)

    out = open(log_path, "w", encoding="utf-8") if log_path is not None else None
    try:
        if cfg.pin_counterexample:
            ce = counterexample_map()
            zero = np.zeros(1, dtype=np.complex128)
            rep = sp_bound(ce, zero, cfg.tol)
            fd = (
                mod_grad_fd(ce, zero, cfg.fd_steps, cfg.fd_dirs, seed=_mix(cfg.seed, 0xCE))
                if cfg.fd_dirs
                else None
            )
            classical = spectral_norm(ce.jacobian(zero)).value
            report.counterexample = {
                "classical_lhs": float(classical),
                "rhs": rep.rhs,
                "classical_violated": bool(classical > rep.rhs),
                "modulus_lhs": rep.lhs,
                "holds": rep.holds,
            }
            if out is not None:
                out.write(_record_line(-1, rep, fd) + "\n")
            _absorb(report, rep, fd)

        for trial in range(cfg.trials):
            f = gen_random_polymap(
                cfg.n, cfg.m, cfg.max_degree, cfg.margin, _mix(cfg.seed, trial, 0)
            )
            points = sample_ball_points(cfg.n, cfg.points_per_trial, _mix(cfg.seed, trial, 1))
            for idx in range(points.shape[0]):
                z = points[idx]
                rep = sp_bound(f, z, cfg.tol)
                fd = (
                    mod_grad_fd(
                        f, z, cfg.fd_steps, cfg.fd_dirs, seed=_mix(cfg.seed, trial, 2, idx)
                    )
                    if cfg.fd_dirs
                    else None
                )
                if out is not None:
                    out.write(_record_line(trial, rep, fd) + "\n")
                _absorb(report, rep, fd)
            report.trials_run += 1
    finally:
        if out is not None:
            out.close()

    report.runtime_ms = (time.perf_counter() - t0) * 1e3
    return report


def _absorb(report: CampaignReport, rep: BoundReport, fd: float | None) -> None:
    report.points_checked += 1
    if report.worst_slack is None or rep.slack < report.worst_slack:
        report.worst_slack = rep.slack
    if not rep.holds:
        report.violations.append(rep)
    if fd is not None:
        dev = abs(rep.lhs - fd)
        if report.oracle_max_dev is None or dev > report.oracle_max_dev:
            report.oracle_max_dev = dev
        if fd > rep.lhs + FD_ANOMALY_TOL:
            report.fd_anomalies += 1
