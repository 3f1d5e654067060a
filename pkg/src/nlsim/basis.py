"""Radial harmonic-oscillator eigenbasis in dimension d.

Conventions (fixed once, validated by the orthonormality tests):

* eigenvalues of H = -Laplacian + |x|^2 on radial functions: lam_n^2 = 4n + d;
* eigenfunctions e_n(r) = c_{n,d} L_n^{(d/2-1)}(r^2) exp(-r^2/2), normalised
  in L^2(R^d) and positive at r = 0 for every n (classical Laguerre sign);
* radial integrals carry the sphere factor omega_{d-1} = 2 pi^{d/2}/Gamma(d/2),
  so <f, g> = omega_{d-1} * integral f g r^{d-1} dr.

Evaluation never touches raw Laguerre polynomials: the exponentially weighted
functions psi_n(u) = l_n(u) e^{-u/2} (l_n orthonormal w.r.t. u^{d/2-1} e^{-u})
satisfy the same three-term recurrence and stay O(1) in the oscillatory
region, with a power-of-two rescaling guard for the deep exponential tails.
Quadrature weights come from the Christoffel identity w_i e^{u_i} =
1 / sum_k psi_k(u_i)^2, which is overflow-free at any practical node count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaln

__all__ = [
    "BasisSpec",
    "RadialGrid",
    "SpectralField",
    "GridError",
    "surface_measure",
    "eigenvalue_sq",
    "eigenvalues_sq",
    "eval_eigenfunction",
    "eigenfunction_rows",
    "build_grid",
    "synthesize",
    "analyze",
    "lp_norm",
    "lp_norm_values",
    "sobolev_norm",
    "wsp_norm",
    "project_sharp",
    "project_smooth",
    "smooth_taper",
    "random_field",
]


class GridError(RuntimeError):
    """Quadrature construction failed to converge."""


def surface_measure(d: int) -> float:
    """Surface measure of the unit sphere S^{d-1}: 2 pi^{d/2} / Gamma(d/2)."""
    return 2.0 * math.pi ** (d / 2) / math.gamma(d / 2)


def eigenvalue_sq(n: int, d: int) -> float:
    """lam_n^2 = 4n + d."""
    if n < 0 or d < 2:
        raise ValueError("need n >= 0 and d >= 2")
    return float(4 * n + d)


def eigenvalues_sq(N: int, d: int) -> np.ndarray:
    """Vector (4n + d) for n = 0..N."""
    return (4.0 * np.arange(N + 1) + d).astype(float)


def _weighted_laguerre_rows(u: np.ndarray, nmax: int, a: float) -> np.ndarray:
    """psi_n(u) for n = 0..nmax at the points u >= 0, shape (nmax+1, len(u)).

    Three-term recurrence on the weighted functions with per-point binary
    rescaling; exact tails below the double range round to zero gracefully.
    """
    u = np.atleast_1d(np.asarray(u, dtype=float))
    out = np.empty((nmax + 1, u.size))
    log0 = -0.5 * u - 0.5 * gammaln(a + 1.0)
    expo = np.floor(log0 / math.log(2.0)).astype(np.int64)
    p_prev = np.zeros_like(u)
    p_curr = np.exp(log0 - expo * math.log(2.0))  # mantissa in [1, 2)
    out[0] = np.ldexp(p_curr, expo)
    for n in range(nmax):
        b_n = 2.0 * n + a + 1.0
        a_nm1 = math.sqrt(n * (n + a)) if n else 0.0
        a_n = math.sqrt((n + 1.0) * (n + 1.0 + a))
        p_prev, p_curr = p_curr, ((b_n - u) * p_curr - a_nm1 * p_prev) / a_n
        mag = np.maximum(np.abs(p_prev), np.abs(p_curr))
        big = mag > 2.0 ** 500
        if big.any():
            p_prev[big] = np.ldexp(p_prev[big], -500)
            p_curr[big] = np.ldexp(p_curr[big], -500)
            expo[big] += 500
        small = (mag < 2.0 ** -500) & (mag > 0.0)
        if small.any():
            p_prev[small] = np.ldexp(p_prev[small], 500)
            p_curr[small] = np.ldexp(p_curr[small], 500)
            expo[small] -= 500
        out[n + 1] = np.ldexp(p_curr, expo)
    return out


def eigenfunction_rows(d: int, nmax: int, r: np.ndarray) -> np.ndarray:
    """e_n(r) for n = 0..nmax at arbitrary radii; shape (nmax+1, len(r))."""
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if (r < 0).any():
        raise ValueError("radii must be >= 0")
    scale = math.sqrt(2.0 / surface_measure(d))
    vals = scale * _weighted_laguerre_rows(r * r, nmax, d / 2 - 1.0)
    if not np.isfinite(vals).all():
        raise OverflowError("eigenfunction recurrence produced non-finite values")
    return vals


def eval_eigenfunction(n: int, d: int, r) -> np.ndarray | float:
    """e_n at radius r (scalar or array)."""
    scalar = np.isscalar(r)
    vals = eigenfunction_rows(d, n, np.atleast_1d(np.asarray(r, dtype=float)))[n]
    return float(vals[0]) if scalar else vals


@dataclass(frozen=True)
class BasisSpec:
    """Dimension, truncation index and quadrature size for one basis."""

    d: int
    N: int
    M: int = 0  # 0 means the default 4 (N+1) oversampling

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("d must be >= 2")
        if self.N < 0:
            raise ValueError("N must be >= 0")
        if self.M == 0:
            object.__setattr__(self, "M", 4 * (self.N + 1))
        if self.M < self.N + 1:
            raise ValueError("M must be >= N+1")

    @property
    def lam2(self) -> np.ndarray:
        return eigenvalues_sq(self.N, self.d)


@dataclass(frozen=True)
class RadialGrid:
    """Gauss quadrature on (0, inf) for Gaussian-weighted radial integrands.

    ``weights`` absorb the r^{d-1} factor: sum_i w_i g(r_i) approximates
    integral_0^inf g(r) r^{d-1} dr whenever g carries exp(-r^2) decay, and is
    exact for g = (poly of degree <= 2M-1 in r^2) * exp(-r^2).  ``eigen``
    holds e_n(r_i) for n <= N; the complex copies avoid per-call dtype
    promotion in the transform matmuls (the flow's hot path).
    """

    spec: BasisSpec
    nodes: np.ndarray
    weights: np.ndarray
    eigen: np.ndarray
    omega: float
    eigen_c: np.ndarray = None
    eigen_cT: np.ndarray = None

    def __post_init__(self):
        if self.eigen_c is None:
            ec = self.eigen.astype(complex)
            ect = np.ascontiguousarray(ec.T)
            for arr in (ec, ect):
                arr.setflags(write=False)
            object.__setattr__(self, "eigen_c", ec)
            object.__setattr__(self, "eigen_cT", ect)

    def eigen_rows_at(self, radii: np.ndarray, nmax: int | None = None) -> np.ndarray:
        """Eigenfunction values at off-grid radii (used by the lens maps)."""
        return eigenfunction_rows(self.spec.d, self.spec.N if nmax is None else nmax, radii)


def build_grid(spec: BasisSpec) -> RadialGrid:
    """Generalized Gauss-Laguerre grid in u = r^2 mapped to radii."""
    a = spec.d / 2 - 1.0
    k = np.arange(spec.M)
    try:
        u = eigh_tridiagonal(2.0 * k + a + 1.0,
                             np.sqrt((k[:-1] + 1.0) * (k[:-1] + 1.0 + a)),
                             eigvals_only=True)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise GridError(f"quadrature nodes failed to converge for M={spec.M}") from exc
    if (u <= 0).any() or not np.all(np.diff(u) > 0):
        raise GridError("quadrature nodes not positive strictly increasing")
    psi = _weighted_laguerre_rows(u, spec.M - 1, a)
    w = 0.5 / np.sum(psi * psi, axis=0)
    scale = math.sqrt(2.0 / surface_measure(spec.d))
    eigen = scale * psi[: spec.N + 1]
    for arr in (u, w, eigen):
        arr.setflags(write=False)
    nodes = np.sqrt(u)
    nodes.setflags(write=False)
    return RadialGrid(spec=spec, nodes=nodes, weights=w, eigen=eigen,
                      omega=surface_measure(spec.d))


@dataclass(frozen=True)
class SpectralField:
    """Complex coefficient vector on the radial eigenbasis."""

    coeffs: np.ndarray
    spec: BasisSpec

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != (self.spec.N + 1,):
            raise ValueError(f"expected {self.spec.N + 1} coefficients, got {c.shape}")
        if not np.isfinite(c).all():
            raise ValueError("non-finite coefficients")
        object.__setattr__(self, "coeffs", c)

    @property
    def l2_norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def __add__(self, other: "SpectralField") -> "SpectralField":
        return SpectralField(self.coeffs + other.coeffs, self.spec)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        return SpectralField(self.coeffs - other.coeffs, self.spec)

    def __mul__(self, z) -> "SpectralField":
        return SpectralField(self.coeffs * z, self.spec)

    __rmul__ = __mul__


def _coeffs_of(field) -> np.ndarray:
    return field.coeffs if isinstance(field, SpectralField) else np.asarray(field)


def synthesize(field, grid: RadialGrid) -> np.ndarray:
    """Physical values sum_n c_n e_n(r_i) at the grid nodes.

    Accepts a SpectralField or a batch array (..., N+1); returns (..., M).
    """
    c = _coeffs_of(field)
    return c @ (grid.eigen_c if np.iscomplexobj(c) else grid.eigen)


def analyze(values: np.ndarray, grid: RadialGrid, N: int | None = None):
    """Coefficients c_n = omega sum_i w_i v(r_i) e_n(r_i) for n <= N.

    Returns a SpectralField for 1-d input with the default truncation, a raw
    coefficient array when N is given explicitly or the input is batched.
    """
    want_field = np.ndim(values) == 1 and N is None
    N = grid.spec.N if N is None else N
    v = np.asarray(values) * grid.weights
    mat = grid.eigen_cT if np.iscomplexobj(v) else grid.eigen.T
    coeffs = grid.omega * (v @ mat[:, : N + 1])
    if want_field:
        return SpectralField(coeffs, grid.spec)
    return coeffs


def lp_norm_values(values: np.ndarray, grid: RadialGrid, q: float) -> float | np.ndarray:
    """L^q(R^d) norm of already-synthesized node values (..., M)."""
    if q < 1:
        raise ValueError("q must be >= 1")
    v = np.abs(values)
    if math.isinf(q):
        out = v.max(axis=-1)
    else:
        out = (grid.omega * np.sum(grid.weights * v ** q, axis=-1)) ** (1.0 / q)
    return float(out) if np.ndim(out) == 0 else out


def lp_norm(field, grid: RadialGrid, q: float) -> float | np.ndarray:
    """L^q(R^d) norm via quadrature; q = inf gives the max over nodes."""
    return lp_norm_values(synthesize(field, grid), grid, q)


def sobolev_norm(field, sigma: float, d: int | None = None) -> float | np.ndarray:
    """Harmonic Sobolev norm (sum (4n+d)^sigma |c_n|^2)^{1/2}."""
    if isinstance(field, SpectralField):
        c, d = field.coeffs, field.spec.d
    else:
        c = np.asarray(field)
        if d is None:
            raise ValueError("d required for raw coefficient arrays")
    lam2 = eigenvalues_sq(c.shape[-1] - 1, d)
    out = np.sqrt(np.sum(lam2 ** sigma * np.abs(c) ** 2, axis=-1))
    return float(out) if np.ndim(out) == 0 else out


def wsp_norm(field, grid: RadialGrid, sigma: float, q: float) -> float | np.ndarray:
    """W^{sigma,q} norm: L^q norm of the field with coefficients (4n+d)^{sigma/2} c_n."""
    c = _coeffs_of(field)
    lam2 = eigenvalues_sq(c.shape[-1] - 1, grid.spec.d)
    return lp_norm(c * lam2 ** (0.5 * sigma), grid, q)


def smooth_taper(x: np.ndarray) -> np.ndarray:
    """Taper theta: 1 on [0,1], exp(1 - 1/(1-(x-1)^2)) on (1,2), 0 beyond.

    Monotone, theta <= 1; only boundedness is load-bearing.
    """
    x = np.asarray(x, dtype=float)
    out = np.ones_like(x)
    mid = (x > 1.0) & (x < 2.0)
    s = (x[mid] - 1.0) ** 2
    out[mid] = np.exp(1.0 - 1.0 / (1.0 - s))
    out[x >= 2.0] = 0.0
    return out


def _proj_weights(spec: BasisSpec, K: int, kind: str) -> np.ndarray:
    if not 0 <= K <= spec.N:
        raise ValueError("projection index K must be in [0, N]")
    lam2 = spec.lam2
    if kind == "sharp":
        return (np.arange(spec.N + 1) <= K).astype(float)
    if kind == "smooth":
        return smooth_taper(lam2 / lam2[K])
    raise ValueError(f"unknown projector kind {kind!r}")


def project_sharp(field, K: int):
    """Zero all coefficients above mode K."""
    c = _coeffs_of(field)
    if isinstance(field, SpectralField):
        return SpectralField(c * _proj_weights(field.spec, K, "sharp"), field.spec)
    mask = np.zeros(c.shape[-1])
    mask[: K + 1] = 1.0
    return c * mask


def project_smooth(field, K: int):
    """Multiply c_n by the taper evaluated at lam_n^2 / lam_K^2."""
    if isinstance(field, SpectralField):
        return SpectralField(field.coeffs * _proj_weights(field.spec, K, "smooth"), field.spec)
    raise TypeError("project_smooth needs a SpectralField (for d, N context)")


def random_field(spec: BasisSpec, rng: np.random.Generator, scale: str = "flat") -> SpectralField:
    """Convenience random field; 'flat' unit-variance or 'measure' 1/lam_n decay."""
    g = rng.standard_normal(2 * (spec.N + 1))
    c = g[0::2] + 1j * g[1::2]
    if scale == "measure":
        c = c / np.sqrt(spec.lam2)
    return SpectralField(c, spec)
