"""Gaussian ensembles, Gibbs weights and Monte Carlo estimators.

The sampling convention (the classic factor-of-2 trap, so spelled out):
coefficient n of a sample is c_n = (a_n + i b_n)/sqrt(4n+d) with a_n, b_n
independent standard normals, i.e. E|c_n|^2 = 2/(4n+d).  This realises the
density exp(-lam_n^2 |c_n|^2 / 2) on each complex mode.

Reproducibility: Philox counter-based streams keyed by (seed, sample index).
Modes are a prefix of the per-sample stream, so an ensemble is bit-identical
regardless of execution order and extends consistently in N.
"""

from __future__ import annotations

import datetime as _dt
import math
from dataclasses import dataclass, field as _field

import numpy as np

from .basis import BasisSpec, RadialGrid, SpectralField, eigenvalues_sq, lp_norm
from .params import ModelParams

__all__ = [
    "Ensemble",
    "WeightedEstimate",
    "TailFit",
    "sample_ensemble",
    "sample_mode_gaussians",
    "gibbs_weight",
    "estimate_weighted_measure",
    "tail_fit",
    "moment_growth_check",
    "lq_ball_predicate",
]


@dataclass(frozen=True)
class WeightedEstimate:
    """Monte Carlo estimate with its standard error."""

    value: float
    std_error: float
    count: int
    degenerate: bool = False  # zero sample variance (flagged, not fatal)


@dataclass(frozen=True)
class TailFit:
    """Least-squares fit of log P(X > lam) ~ log C - c lam^2 over tail quantiles."""

    C: float
    c: float
    levels: np.ndarray
    thresholds: np.ndarray

    @property
    def gaussian_tail(self) -> bool:
        return self.c > 0


@dataclass(frozen=True)
class Ensemble:
    """A matrix of sampled coefficient vectors plus provenance."""

    coeffs: np.ndarray  # (count, N+1) complex
    seeds: np.ndarray  # (count,) uint64 per-sample stream indices
    seed: int
    spec: BasisSpec
    meta: dict = _field(default_factory=dict)

    def __post_init__(self):
        if self.coeffs.ndim != 2 or self.coeffs.shape[1] != self.spec.N + 1:
            raise ValueError("coefficient matrix shape mismatch")
        if self.coeffs.shape[0] < 1:
            raise ValueError("ensemble needs at least one sample")
        if len(np.unique(self.seeds)) != len(self.seeds):
            raise ValueError("per-sample seeds must be pairwise distinct")

    @property
    def count(self) -> int:
        return self.coeffs.shape[0]

    @property
    def N(self) -> int:
        return self.spec.N

    def field(self, i: int) -> SpectralField:
        return SpectralField(self.coeffs[i], self.spec)

    @property
    def samples(self) -> list[SpectralField]:
        return [self.field(i) for i in range(self.count)]


def sample_mode_gaussians(seed: int, index: int, nmodes: int) -> np.ndarray:
    """Complex standard Gaussians g_n = a_n + i b_n for one sample stream."""
    key = np.array([np.uint64(seed), np.uint64(index)], dtype=np.uint64)
    rng = np.random.Generator(np.random.Philox(key=key))
    g = rng.standard_normal(2 * nmodes)
    return g[0::2] + 1j * g[1::2]


def sample_ensemble(N: int, d: int, count: int, seed: int,
                    spec: BasisSpec | None = None,
                    params: ModelParams | None = None) -> Ensemble:
    """Draw ``count`` independent samples of the truncated Gaussian ensemble."""
    if count < 1:
        raise ValueError("count must be >= 1")
    spec = spec or BasisSpec(d=d, N=N)
    if spec.N != N or spec.d != d:
        raise ValueError("spec inconsistent with N, d")
    lam = np.sqrt(eigenvalues_sq(N, d))
    coeffs = np.empty((count, N + 1), dtype=complex)
    for i in range(count):
        coeffs[i] = sample_mode_gaussians(seed, i, N + 1) / lam
    coeffs.setflags(write=False)
    meta = {"created": _dt.datetime.now(_dt.timezone.utc).isoformat()}
    if params is not None:
        meta["params"] = params.as_dict()
    return Ensemble(coeffs=coeffs, seeds=np.arange(count, dtype=np.uint64),
                    seed=seed, spec=spec, meta=meta)


def gibbs_weight(field, t: float, params: ModelParams, grid: RadialGrid,
                 lpp1: np.ndarray | None = None) -> float | np.ndarray:
    """exp(-cos(2t)^{-alpha}/(p+1) * ||u||_{L^{p+1}}^{p+1}), in (0, 1].

    ``lpp1`` short-circuits with precomputed L^{p+1} norms (batch use).  The
    field is assumed already truncated at the working N (the projector is the
    identity there).
    """
    if not abs(t) < math.pi / 4:
        raise ValueError("|t| must be < pi/4")
    q = params.p + 1.0
    if lpp1 is None:
        lpp1 = lp_norm(field, grid, q)
    fac = math.cos(2.0 * t) ** (-params.alpha) / q
    return np.exp(-fac * np.asarray(lpp1) ** q)


def _mc_estimate(values: np.ndarray) -> WeightedEstimate:
    n = values.size
    mean = float(np.sum(values) / n)
    if n > 1:
        var = float(np.sum((values - mean) ** 2) / (n - 1))
    else:
        var = 0.0
    se = math.sqrt(var / n)
    return WeightedEstimate(value=mean, std_error=se, count=n, degenerate=(var == 0.0))


def estimate_weighted_measure(ensemble: Ensemble, predicate, t: float,
                              params: ModelParams, grid: RadialGrid,
                              coeffs: np.ndarray | None = None) -> WeightedEstimate:
    """Monte Carlo estimate of the Gibbs-weighted measure of a set.

    ``predicate`` maps a coefficient batch (count, N+1) and grid to a boolean
    vector.  ``coeffs`` substitutes propagated states for the weight while the
    indicator stays on the original samples (measure-transport estimators).
    """
    ind = np.asarray(predicate(ensemble.coeffs, grid), dtype=float)
    if ind.shape != (ensemble.count,):
        raise ValueError("predicate must return one boolean per sample")
    wc = ensemble.coeffs if coeffs is None else coeffs
    w = gibbs_weight(wc, t, params, grid)
    return _mc_estimate(ind * w)


def lq_ball_predicate(q: float, radius: float):
    """Predicate factory: {u : ||u||_{L^q} <= radius}."""

    def pred(coeffs: np.ndarray, grid: RadialGrid) -> np.ndarray:
        return lp_norm(coeffs, grid, q) <= radius

    return pred


def tail_fit(values_or_ensemble, functional=None, grid: RadialGrid | None = None,
             tail_fraction: float = 0.05, npoints: int = 24) -> TailFit:
    """Fit C, c in P(X > lam) ~ C exp(-c lam^2) from empirical tail quantiles.

    ``values_or_ensemble`` is either a 1-d sample vector or an Ensemble, in
    which case ``functional(coeffs, grid) -> (count,)`` supplies the samples.
    Levels span the top ``tail_fraction`` of the empirical distribution.
    """
    if isinstance(values_or_ensemble, Ensemble):
        values = np.asarray(functional(values_or_ensemble.coeffs, grid), dtype=float)
    else:
        values = np.asarray(values_or_ensemble, dtype=float)
    n = values.size
    if n < 1000:
        raise ValueError("tail fit needs at least 1e3 samples")
    levels = 1.0 - tail_fraction * np.logspace(0.0, -1.3, npoints)
    thresholds = np.quantile(values, levels)
    probs = 1.0 - levels
    keep = np.concatenate([[True], np.diff(thresholds) > 0])
    thresholds, probs, levels = thresholds[keep], probs[keep], levels[keep]
    if thresholds.size < 4:
        raise ValueError("insufficient tail mass for a fit")
    A = np.vstack([np.ones_like(thresholds), -thresholds ** 2]).T
    sol, *_ = np.linalg.lstsq(A, np.log(probs), rcond=None)
    return TailFit(C=float(np.exp(sol[0])), c=float(sol[1]),
                   levels=levels, thresholds=thresholds)


def moment_growth_check(coeff_vector: np.ndarray, p0: int, count: int, seed: int) -> float:
    """Ratio ||sum c_n g_n||_{L^{p0}_omega} / (sqrt(p0) ||c||_2) by Monte Carlo.

    Stays below an absolute constant (about 1 at p0 = 2, decreasing in p0)
    when the Gaussian chaos moments grow like sqrt(p0).
    """
    if p0 < 2:
        raise ValueError("p0 must be >= 2")
    c = np.asarray(coeff_vector, dtype=complex)
    key = np.array([np.uint64(seed), np.uint64(0)], dtype=np.uint64)
    rng = np.random.Generator(np.random.Philox(key=key))
    g = rng.standard_normal((count, c.size)) + 1j * rng.standard_normal((count, c.size))
    z = np.abs(g @ c)
    moment = float(np.mean(z ** p0) ** (1.0 / p0))
    return moment / (math.sqrt(p0) * float(np.linalg.norm(c)))
