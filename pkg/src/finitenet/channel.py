"""Fading channel models: Nakagami power gains and the exponential-polynomial
CDF family that the reference-link-power framework accepts."""

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as _sp

from .errors import (InvalidParameterError, ModelInconsistencyError,
                     UnsupportedModelError)

_CDF_CLAMP = 1e-14
_INTEGER_TOL = 1e-9


@dataclass(frozen=True)
class NakagamiChannel:
    """Nakagami fading on both link types; power gains are unit-mean Gamma.

    m0: shape of the reference link, m: shape of every interferer link.
    approximates: set when the channel was built as a stand-in for another
    fading family ("hoyt" or "rice"); such channels are approximations.
    """
    m0: float
    m: float
    approximates: str = None

    def __post_init__(self):
        if not (self.m0 >= 0.5 and self.m >= 0.5):
            raise InvalidParameterError(
                f"Nakagami shapes need m >= 0.5, got m0={self.m0} m={self.m}")

    @staticmethod
    def from_hoyt(q0, q):
        """Approximate a Hoyt(q) channel; valid mapping for q in (0, 1]."""
        return NakagamiChannel(m0=_hoyt_shape(q0), m=_hoyt_shape(q),
                               approximates="hoyt")

    @staticmethod
    def from_rice(n0, n):
        """Approximate a Rice(n) channel (n is the LOS/diffuse ratio)."""
        return NakagamiChannel(m0=_rice_shape(n0), m=_rice_shape(n),
                               approximates="rice")


def _hoyt_shape(q):
    if not 0 < q <= 1:
        raise InvalidParameterError(f"Hoyt parameter must be in (0, 1], got {q}")
    return (1 + q * q) ** 2 / (2.0 * (1 + 2 * q ** 4))


def _rice_shape(n):
    if n < 0:
        raise InvalidParameterError(f"Rice parameter must be >= 0, got {n}")
    return (1 + n * n) ** 2 / (1 + 2 * n * n)


def nakagami_power_gain_pdf(m, g):
    """Density of the unit-mean Gamma power gain: m^m g^(m-1) e^(-m g)/Gamma(m)."""
    if m < 0.5:
        raise InvalidParameterError(f"shape must be >= 0.5, got {m}")
    g_arr = np.asarray(g, dtype=float)
    out = np.zeros(np.atleast_1d(g_arr).shape)
    ga = np.atleast_1d(g_arr)
    pos = ga > 0
    out[pos] = np.exp(m * math.log(m) + (m - 1.0) * np.log(ga[pos])
                      - m * ga[pos] - math.lgamma(m))
    if m == 1.0:
        out[ga == 0] = 1.0
    return out if g_arr.ndim else float(out[0])


def nakagami_reference_cdf(m0, x):
    """CDF of the reference power gain: regularized lower gamma P(m0, m0 x)."""
    if m0 < 0.5:
        raise InvalidParameterError(f"shape must be >= 0.5, got {m0}")
    x_arr = np.asarray(x, dtype=float)
    return _sp.gammainc(m0, m0 * np.clip(x_arr, 0.0, None))


@dataclass(frozen=True)
class GeneralFadingCdf:
    """Reference gain CDF of the form F(g) = 1 - sum_n e^(-n g) sum_k a_nk g^k.

    terms: tuple of (n, k, a_nk) with decay rates n > 0, integer powers
    k >= 0. The family covers integer-shape Nakagami exactly and many other
    fading laws; coefficients are validated to give a monotone CDF in [0, 1].
    """
    terms: tuple


def general_fading_cdf(terms, check_grid=None):
    """Validate coefficients and build a GeneralFadingCdf."""
    cleaned = []
    for n, k, a in terms:
        if not n > 0 or abs(n - round(n)) > _INTEGER_TOL:
            raise ModelInconsistencyError(
                f"decay rate must be a positive integer, got {n}")
        if k != int(k) or k < 0:
            raise ModelInconsistencyError(f"power must be integer >= 0, got {k}")
        cleaned.append((float(round(n)), int(k), float(a)))
    cdf = GeneralFadingCdf(terms=tuple(cleaned))
    if check_grid is None:
        n_min = min(n for n, _, _ in cleaned)
        check_grid = np.linspace(0.0, 50.0 / n_min, 2001)
    vals = general_cdf_eval(cdf, check_grid)
    if np.any(np.diff(vals) < -1e-12):
        raise ModelInconsistencyError("coefficients give a decreasing CDF")
    if abs(vals[-1] - 1.0) > 1e-6:
        raise ModelInconsistencyError(
            f"CDF does not approach 1 (tail value {vals[-1]:.6g})")
    return cdf


def general_cdf_eval(cdf, g):
    """Evaluate the exponential-polynomial CDF, guarding round-off.

    Values in [-1e-14, 0) clamp to 0 and values in (1, 1+1e-14] clamp to 1;
    anything farther outside [0, 1] raises ModelInconsistencyError."""
    g_arr = np.atleast_1d(np.asarray(g, dtype=float))
    if np.any(g_arr < 0):
        raise InvalidParameterError("power gain argument must be >= 0")
    acc = np.zeros(g_arr.shape)
    for n, k, a in cdf.terms:
        acc += a * np.exp(-n * g_arr) * g_arr ** k
    vals = 1.0 - acc
    if np.any(vals < -_CDF_CLAMP) or np.any(vals > 1.0 + _CDF_CLAMP):
        bad = vals[(vals < -_CDF_CLAMP) | (vals > 1.0 + _CDF_CLAMP)][0]
        raise ModelInconsistencyError(
            f"CDF value {bad!r} outside [0, 1]: coefficients are inconsistent")
    vals = np.clip(vals, 0.0, 1.0)
    return vals if np.ndim(g) else float(vals[0])


def nakagami_as_general_cdf(m0):
    """Integer-shape Nakagami reference CDF as an exponential-polynomial law.

    P(m0, m0 g) = 1 - e^(-m0 g) sum_{k<m0} (m0 g)^k / k!; needs integer m0."""
    if abs(m0 - round(m0)) > _INTEGER_TOL or m0 < 1:
        raise UnsupportedModelError(
            f"the exponential-polynomial family needs integer shape, got {m0}")
    mi = int(round(m0))
    terms = [(float(mi), k, float(mi) ** k / math.factorial(k))
             for k in range(mi)]
    return general_fading_cdf(terms)
