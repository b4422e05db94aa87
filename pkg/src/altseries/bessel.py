"""Bessel J evaluation and J0 zeros, self-contained and accuracy-audited.

The Hankel-quadrature route integrates J0 against a smooth weight over many
oscillations, so J0 must be trustworthy to ~1e-12 absolute over a wide range.
Two regimes are stitched together:

* power series (DLMF 10.2.2) in double-double arithmetic below the cutoff,
  where cancellation would otherwise destroy plain-double accuracy;
* the large-argument Hankel expansion (DLMF 10.17.3) above the cutoff, with
  adaptive truncation at the smallest term.

``log_gamma`` uses the Stirling series with Bernoulli-number coefficients and
upward recursion below x = 12; the dominant (x - 1/2) log x - x part is done
in double-double so the absolute error stays at the final-rounding level even
when the result is large.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _dd
from .core import DomainError, RangeError

__all__ = [
    "BesselEvalConfig",
    "log_gamma",
    "bessel_j_series",
    "bessel_j0",
    "j0_zeros",
]


@dataclass(frozen=True)
class BesselEvalConfig:
    """Tuning knobs for J0 evaluation.

    ``series_cutoff`` is the |u| at which evaluation switches from the power
    series to the asymptotic expansion.  Both regimes hold their accuracy in
    [5, 30]; 16 keeps the asymptotic truncation error below 1e-13 while the
    double-double series is still cheap.
    """

    series_cutoff: float = 16.0
    series_tol: float = 1e-30

    def __post_init__(self):
        if not 5.0 <= self.series_cutoff <= 30.0:
            raise DomainError("series_cutoff must lie in [5, 30]")
        if not self.series_tol > 0:
            raise DomainError("series_tol must be positive")


_DEFAULT_CFG = BesselEvalConfig()

_HALF_LN2PI_HI = 9.18938533204672781e-01
_HALF_LN2PI_LO = -3.87829415806724145e-17

# Stirling series coefficients B_{2k} / (2k (2k-1)), k = 1..8.
# Bernoulli numbers B_2..B_16 from DLMF 24.2 (1/6, -1/30, 1/42, -1/30,
# 5/66, -691/2730, 7/6, -3617/510); the ratios below are exact.
_STIRLING_C = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)

_STIRLING_MIN_X = 12.0


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0, absolute error below 1e-13 on [0.5, 200]."""
    if not x > 0 or math.isnan(x):
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    shift_terms = []
    y = x
    while y < _STIRLING_MIN_X:
        shift_terms.append(math.log(y))
        y += 1.0

    # Dominant part (y - 1/2) ln y - y + ln(2 pi)/2 in double-double.
    lnh, lnl = _dd.dd_log_d(y)
    s, e = _dd.two_sum(y, -0.5)
    ah, al = _dd.dd_mul_d(lnh, lnl, s)
    ah, al = _dd.dd_add_d(ah, al, e * lnh)
    ah, al = _dd.dd_add_d(ah, al, -y)
    ah, al = _dd.dd_add(ah, al, _HALF_LN2PI_HI, _HALF_LN2PI_LO)

    w = 1.0 / (y * y)
    tail = 0.0
    for c in reversed(_STIRLING_C):
        tail = tail * w + c
    tail /= y

    ah, al = _dd.dd_add_d(ah, al, tail)
    if shift_terms:
        ah, al = _dd.dd_add_d(ah, al, -math.fsum(shift_terms))
    return float(ah + al)


def _j0_series_dd(u):
    """Power series for J0 at |u| <= 30, double-double throughout."""
    u = np.asarray(u, dtype=float)
    qh, ql = _dd.two_prod(u, u)
    qh, ql = _dd.dd_mul_d(qh, ql, 0.25)  # u^2/4
    sh = np.ones_like(u)
    sl = np.zeros_like(u)
    th = np.ones_like(u)
    tl = np.zeros_like(u)
    for k in range(1, 81):
        th, tl = _dd.dd_mul(th, tl, qh, ql)
        th, tl = _dd.dd_div_d(th, tl, float(k * k))
        if k % 2:
            sh, sl = _dd.dd_add(sh, sl, -th, -tl)
        else:
            sh, sl = _dd.dd_add(sh, sl, th, tl)
        if np.all(np.abs(th) <= _DEFAULT_CFG.series_tol * np.maximum(np.abs(sh), 1e-3)):
            break
    return sh + sl


# Hankel expansion coefficients A_k = ((2k-1)!!)^2 / (k! 8^k); the sign
# pattern over k mod 4 is (+cos, +sin, -cos, -sin), see DLMF 10.17.3 at nu=0.
_MAX_ASYM_TERMS = 40


def _j0_asymptotic(u):
    u = np.asarray(u, dtype=float)
    # omega = u - pi/4 carried as a double-double so the phase stays exact.
    wh, we = _dd.two_sum(u, -_dd.PI4_HI)
    wl = we - _dd.PI4_LO
    c = np.cos(wh)
    s = np.sin(wh)
    cosw = c - wl * s
    sinw = s + wl * c

    inv = 1.0 / u
    acc = np.array(cosw, copy=True)
    a_k = 1.0
    powu = np.ones_like(u)
    prev = np.full_like(u, np.inf)
    for k in range(1, _MAX_ASYM_TERMS):
        a_k = a_k * (2 * k - 1) ** 2 / (8.0 * k)
        powu = powu * inv
        mag = a_k * powu
        if np.all(mag >= prev):
            break
        trig = sinw if k % 2 else cosw
        sign = 1.0 if k % 4 in (0, 1) else -1.0
        acc = acc + sign * mag * trig
        prev = mag
        if np.all(mag <= 1e-18):
            break
    return np.sqrt(2.0 / (np.pi * u)) * acc


def bessel_j0(u, cfg: BesselEvalConfig | None = None):
    """J0(u) for real u (vectorized), absolute error <= 1e-12 on [0, 200].

    Even symmetry is applied first; the series/asymptotic switch sits at
    ``cfg.series_cutoff``.
    """
    cfg = cfg or _DEFAULT_CFG
    scalar = np.isscalar(u) or np.ndim(u) == 0
    au = np.abs(np.atleast_1d(np.asarray(u, dtype=float)))
    if np.any(np.isnan(au)):
        raise DomainError("bessel_j0 requires finite real u")
    out = np.empty_like(au)
    low = au <= cfg.series_cutoff
    if np.any(low):
        out[low] = _j0_series_dd(au[low])
    if np.any(~low):
        out[~low] = _j0_asymptotic(au[~low])
    return float(out[0]) if scalar else out


def bessel_j_series(nu: float, u: float, tol: float = 1e-15,
                    cfg: BesselEvalConfig | None = None) -> float:
    """J_nu(u) by the ascending power series (DLMF 10.2.2).

    Terms are added until one falls below ``tol`` times the running magnitude;
    the alternating tail then bounds the remainder by the first omitted term.
    The series is only reliable while the largest term stays small enough for
    the working precision, so arguments beyond the safe range raise
    :class:`RangeError` (for nu = 0 use :func:`bessel_j0`, which switches to
    the asymptotic form automatically).
    """
    cfg = cfg or _DEFAULT_CFG
    if nu < 0 or math.isnan(nu):
        raise DomainError(f"bessel_j_series requires nu >= 0, got {nu}")
    if u < 0 or math.isnan(u):
        raise DomainError(f"bessel_j_series requires u >= 0, got {u}")
    if not tol > 0:
        raise DomainError("tol must be positive")
    if nu == 0.0:
        if u > 30.0:
            raise RangeError(
                "series unreliable for u > 30; call bessel_j0 instead")
        return float(_j0_series_dd(np.float64(u)))
    if u > 18.0:
        raise RangeError(
            "series for nu > 0 loses accuracy beyond u = 18; for nu = 0 "
            "bessel_j0 covers large arguments")
    if u == 0.0:
        return 0.0

    lead = math.exp(nu * math.log(0.5 * u) - log_gamma(nu + 1.0))
    q = 0.25 * u * u
    term = lead
    total = lead
    for k in range(1, 300):
        term *= -q / (k * (nu + k))
        total += term
        if abs(term) <= tol * max(abs(total), lead * 1e-8):
            break
    return total


# McMahon's expansion for the k-th positive zero of J0 (A&S 9.5.12).
def _mcmahon_j0_zero(k: np.ndarray) -> np.ndarray:
    beta = (k - 0.25) * np.pi
    m = 8.0 * beta
    return beta + 1.0 / m - 124.0 / (3.0 * m ** 3) + 120928.0 / (15.0 * m ** 5)


_zero_cache: list[float] = []


def j0_zeros(k_max: int, cfg: BesselEvalConfig | None = None) -> list[float]:
    """First ``k_max`` positive zeros of J0, each to ~1e-12 absolute.

    McMahon seeds bracket each zero (they are good to ~1e-3 already and the
    zeros are ~pi apart), then a vectorized bisection on :func:`bessel_j0`
    tightens every bracket to ~1e-15 relative.  Results are cached.
    """
    if not isinstance(k_max, int) or k_max < 1:
        raise DomainError("k_max must be a positive integer")
    if k_max > 10_000:
        raise DomainError("k_max capped at 10000")
    if len(_zero_cache) >= k_max:
        return _zero_cache[:k_max]

    cfg = cfg or _DEFAULT_CFG
    ks = np.arange(len(_zero_cache) + 1, k_max + 1, dtype=float)
    guess = _mcmahon_j0_zero(ks)
    lo = guess - 0.6
    hi = guess + 0.6
    flo = bessel_j0(lo, cfg)
    if np.any(flo * bessel_j0(hi, cfg) >= 0):
        raise RangeError("failed to bracket a J0 zero from the McMahon seed")

    for _ in range(52):
        mid = 0.5 * (lo + hi)
        fmid = bessel_j0(mid, cfg)
        left = flo * fmid <= 0
        hi = np.where(left, mid, hi)
        lo = np.where(left, lo, mid)
        flo = np.where(left, flo, fmid)

    roots = 0.5 * (lo + hi)
    _zero_cache.extend(float(r) for r in roots)
    return _zero_cache[:k_max]
