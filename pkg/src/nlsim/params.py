"""Model parameters: exponents, thresholds, admissibility arithmetic.

Everything here is a closed-form (or root-found) scalar quantity attached to
the nonlinearity exponent p and the dimension d.  All functions are pure and
cheap; ``ModelParams`` bundles the derived values used across the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

PI4 = math.pi / 4

__all__ = [
    "PI4",
    "ModelParams",
    "alpha",
    "sigma_max",
    "p_max",
    "delta_polynomial",
    "delta_tilde_polynomial",
    "cubic_pmax_polynomial",
    "delta_exponents",
    "duhamel_gamma",
    "admissible",
    "sigma_admissible",
    "strichartz_pairs",
    "tail_regularity",
    "sigma_admissible_lower_p",
    "lwp_time",
    "horizon",
]


def alpha(p: float, d: int) -> float:
    """Exponent of the cos(2t) coefficient: 2 - (d/2)(p-1).

    Zero at the mass-critical power p = 1 + 4/d.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    return 2.0 - 0.5 * d * (p - 1.0)


def sigma_max(p: float, d: int) -> float:
    """Regularity ceiling sigma(p, d), piecewise in p.

    Equals 1/2 while p <= 1 + 3/(d-2) (always, in d = 2) and
    2 - (d-2)(p-1)/2 beyond; the two branches agree at the junction.
    """
    if p <= 1.0:
        raise ValueError("sigma_max needs p > 1")
    if d == 2 or p <= 1.0 + 3.0 / (d - 2):
        return 0.5
    val = 2.0 - 0.5 * (d - 2) * (p - 1.0)
    if val <= 0.0:
        raise ValueError(f"no positive regularity ceiling at p={p}, d={d}")
    return val


def cubic_pmax_polynomial(d: int, x: float) -> float:
    """(d-2)x^3 + (d-4)x^2 - 6x - 2d - 4, whose first positive root is p_max for d >= 8."""
    return ((d - 2) * x + (d - 4)) * x * x - 6.0 * x - 2.0 * d - 4.0


def p_max(d: int) -> float:
    """Largest power for which the log-growth L^{p+1} bound is available.

    Closed form (5-d+sqrt(9d^2-2d+9))/(2(d-1)) for d <= 7; for d >= 8 the
    unique positive root of the cubic, found by sign scan plus bisection.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    if d <= 7:
        return (5.0 - d + math.sqrt(9.0 * d * d - 2.0 * d + 9.0)) / (2.0 * (d - 1))
    lo = None
    x = 1e-3
    prev = cubic_pmax_polynomial(d, x)
    while x < 8.0:
        nxt = cubic_pmax_polynomial(d, x + 1e-3)
        if prev <= 0.0 <= nxt:
            lo = x
            break
        x += 1e-3
        prev = nxt
    if lo is None:
        raise ArithmeticError(f"no sign change for the p_max cubic in (0, 8], d={d}")
    hi = lo + 1e-3
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if cubic_pmax_polynomial(d, mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def delta_polynomial(d: int, p: float) -> float:
    """2p^3 + dp^2 + (d-6)p - 2d - 4; positive sign <=> scattering rate delta > 0."""
    return ((2.0 * p + d) * p + (d - 6.0)) * p - 2.0 * d - 4.0


def delta_tilde_polynomial(d: int, p: float) -> float:
    """p^2 + (d/2)p - d/2 - 3; positive sign <=> the companion rate is > 0.

    Its positive root is -d/4 + sqrt(d^2 + 8d + 48)/4.
    """
    return p * p + 0.5 * d * p - 0.5 * d - 3.0


def delta_exponents(p: float, d: int, gamma: float) -> tuple[float, float]:
    """Scattering-rate exponents (delta, delta_tilde) for a Hoelder split gamma.

    delta = -(p+2)/2 * alpha + 1/gamma, delta_tilde = -(p+3)/2 * alpha + 1/gamma;
    their difference is exactly -alpha/2 at fixed gamma.
    """
    if gamma < 1:
        raise ValueError("gamma must be >= 1")
    a = alpha(p, d)
    return (-0.5 * (p + 2.0) * a + 1.0 / gamma, -0.5 * (p + 3.0) * a + 1.0 / gamma)


def duhamel_gamma(p: float, d: int, sigma: float) -> float:
    """Canonical Hoelder exponent gamma for the horizon-window Duhamel estimate.

    Chosen so that (p*gamma', p+1) is sigma-admissible: 1/gamma' =
    (p/2)(d/2 - sigma - d/(p+1)).  Raises if the split is infeasible.
    """
    inv_gp = 0.5 * p * (0.5 * d - sigma - d / (p + 1.0))
    if not 0.0 < inv_gp < 1.0:
        raise ValueError("no valid Hoelder split for these (p, d, sigma)")
    inv_g = 1.0 - inv_gp
    if p / inv_gp < 2.0:
        raise ValueError("companion exponent p*gamma' below 2")
    return 1.0 / inv_g


def admissible(q: float, r: float, d: int, tol: float = 1e-12) -> bool:
    """Schroedinger admissibility: 2/q + d/r = d/2, q, r >= 2, not (2, inf, 2)."""
    if q < 2 or r < 2:
        return False
    if d == 2 and q == 2 and math.isinf(r):
        return False
    lhs = (0.0 if math.isinf(q) else 2.0 / q) + (0.0 if math.isinf(r) else d / r)
    return abs(lhs - 0.5 * d) <= tol


def sigma_admissible(q: float, r: float, d: int, sigma: float, tol: float = 1e-12) -> bool:
    """Shifted admissibility 2/q + d/r = d/2 - sigma with q >= 2, r >= 1."""
    if q < 2 or r < 1:
        return False
    lhs = (0.0 if math.isinf(q) else 2.0 / q) + (0.0 if math.isinf(r) else d / r)
    return abs(lhs - (0.5 * d - sigma)) <= tol


def strichartz_pairs(p: float, d: int, sigma: float) -> tuple[tuple[float, float], tuple[float, float]]:
    """The two space-time exponent pairs defining the working Strichartz norm.

    Returns ((q2, r2), (A, B)): (q2, r2) is Schroedinger admissible and
    case-dependent; (A, B) is sigma-admissible with B <= 2d/(d-2).  Concretely
    B = 2d/(d-2), A = 2/(1-sigma) for d >= 3 and (A, B) = (4, 4/(1-2sigma))
    in d = 2 where the generic B degenerates to infinity.
    """
    smax = sigma_max(p, d)
    if not 0.0 < sigma < smax:
        raise ValueError(f"sigma={sigma} outside (0, {smax})")
    # the Hoelder feasibility 1 - (d/4 - sigma/2)(p-1) > 0 behind this
    # selection holds strictly throughout p <= 1+4/d, sigma > 0
    if d == 2 or p <= 1.0 + 3.0 / (d - 2):
        q2, r2 = 4.0, 2.0 * d / (d - 1)
    else:
        q2 = 4.0 / ((d - 2) * (p - 1.0) - 2.0)
        r2 = 2.0 * d / (d + 2.0 - (d - 2) * (p - 1.0))
    if d == 2:
        pair2 = (4.0, 4.0 / (1.0 - 2.0 * sigma))
    else:
        pair2 = (2.0 / (1.0 - sigma), 2.0 * d / (d - 2))
    return (q2, r2), pair2


def tail_regularity(r: float, d: int) -> float:
    """Largest regularity s_r with Gaussian tails in the W^{s,r} scale.

    d(1/2 - 1/r) up to r = 2d/(d-1), then 1 - d(1/2 - 1/r) up to 2d/(d-2).
    """
    if not 2.0 < r <= (math.inf if d == 2 else 2.0 * d / (d - 2)):
        raise ValueError("r outside (2, 2d/(d-2)]")
    if r <= 2.0 * d / (d - 1):
        return d * (0.5 - 1.0 / r)
    return 1.0 - d * (0.5 - 1.0 / r)


def sigma_admissible_lower_p(d: int) -> float:
    """Lower power threshold (-d+4+sqrt(9d^2-16d))/(2(d-2)) for the d >= 8 split.

    The printed source is typographically garbled; this is the evident
    intended expression (flagged "inferred" in reports).
    """
    if d <= 2:
        raise ValueError("defined for d >= 3")
    return (-d + 4.0 + math.sqrt(9.0 * d * d - 16.0 * d)) / (2.0 * (d - 2))


def lwp_time(lam: float, t0: float, K: float = 1.0, L: float = 2.0, c: float = 1.0) -> float:
    """Heuristic local time-of-validity c * lam^{-L} (pi/4 - t0)^K.

    K and L are not pinned by theory (only K >= 1, L > 0); used for adaptive
    stepping and experiment scheduling, never as a certified bound.
    """
    if lam <= 0 or not 0.0 <= t0 < PI4:
        raise ValueError("need lam > 0 and t0 in [0, pi/4)")
    return c * lam ** (-L) * (PI4 - t0) ** K


def horizon(j: float) -> float:
    """Diagnostic horizon T_j = (pi/4)(1 - e^{-j}); increases to pi/4."""
    if j < 0:
        raise ValueError("j must be >= 0")
    return PI4 * (1.0 - math.exp(-j))


@dataclass(frozen=True)
class ModelParams:
    """Nonlinearity power p and dimension d plus every derived exponent."""

    d: int
    p: float
    alpha: float = field(init=False)
    sigma_max: float = field(init=False)
    p_max: float = field(init=False)
    case: int = field(init=False)

    def __post_init__(self):
        if self.d < 2 or int(self.d) != self.d:
            raise ValueError("d must be an integer >= 2")
        if self.p <= 1.0:
            raise ValueError("p must be > 1")
        sigma_max(self.p, self.d)  # rejects powers with no regularity window
        object.__setattr__(self, "alpha", alpha(self.p, self.d))
        object.__setattr__(self, "sigma_max", sigma_max(self.p, self.d))
        object.__setattr__(self, "p_max", p_max(self.d))
        case = 1 if (self.d == 2 or self.p <= 1 + 3 / (self.d - 2)) else 2
        object.__setattr__(self, "case", case)

    @property
    def mass_critical(self) -> bool:
        return abs(self.p - (1.0 + 4.0 / self.d)) < 1e-12

    @property
    def scattering_range(self) -> bool:
        """True when p > 1 + 2/d, the regime where scattering is asserted."""
        return self.p > 1.0 + 2.0 / self.d

    def as_dict(self) -> dict:
        return {
            "d": self.d,
            "p": self.p,
            "alpha": self.alpha,
            "sigma_max": self.sigma_max,
            "p_max": self.p_max,
            "case": self.case,
            "mass_critical": self.mass_critical,
            "scattering_range": self.scattering_range,
        }
