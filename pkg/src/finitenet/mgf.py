"""Outage probability for real-valued fading shapes via Laplace inversion.

The distribution of the noise-plus-interference functional is recovered from
its Laplace transform by Euler-summed Bromwich sampling (the Abate-Whitt
method). This route works for any fading shape >= 0.5 on both the reference
link and the interferers, at the price of a double quadrature per transform
node.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, NumericFailure
from .quadrature import adaptive_rows_quad
from .scenario import OutageResult
from .specfun import gauss_2f1, ln_gamma

_LN10 = math.log(10.0)

# Gain values whose images u = g/(1+g) seed the outer panels; the gamma
# weight can concentrate anywhere in this span depending on the shape.
_G0_KNOTS = (1e-4, 1e-3, 1e-2, 0.1, 0.3, 1.0, 3.0, 10.0, 30.0)


@dataclass(frozen=True)
class EulerInversionParams:
    """Knobs of the Euler-summed inversion.

    A fixes the discretization error (roughly e^{-A}), C is the plain
    truncation of the Bromwich series and B the order of the binomial tail
    average. For a target absolute accuracy of 10^{-digits} use
    ``from_accuracy_digits``; the defaults aim at 1e-8.
    """

    A: float = 8.0 * _LN10
    B: int = 11
    C: int = 14

    def __post_init__(self):
        if not (np.isfinite(self.A) and self.A > 0):
            raise InvalidParameterError(
                f"discretization parameter must be positive, got {self.A}")
        for name in ("B", "C"):
            v = getattr(self, name)
            if v != int(v) or v < 1:
                raise InvalidParameterError(
                    f"{name} must be a positive integer, got {v}")
            object.__setattr__(self, name, int(v))

    @classmethod
    def from_accuracy_digits(cls, digits):
        if not digits > 0:
            raise InvalidParameterError(
                f"accuracy digits must be positive, got {digits}")
        return cls(A=digits * _LN10,
                   B=max(1, math.ceil(1.243 * digits - 1.0)),
                   C=max(1, math.ceil(1.467 * digits)))

    @property
    def accuracy_digits(self):
        return self.A / _LN10


def _bromwich_nodes(z, params):
    c = np.arange(params.B + params.C + 1)
    return (params.A + 2j * np.pi * c) / (2.0 * z)


def _euler_cdf_from_samples(vals, s, z, params):
    """Assemble the binomially averaged alternating sum from transform
    samples vals[c] = L_f(s_c). The c=0 term carries half weight."""
    h = (vals / s).real
    h = h.copy()
    h[0] *= 0.5
    signs = np.where(np.arange(h.size) % 2 == 0, 1.0, -1.0)
    partial = np.cumsum(signs * h)
    binom = np.array([math.comb(params.B, b) for b in range(params.B + 1)],
                     dtype=float)
    avg = float((binom * partial[params.C:]).sum()) * 0.5 ** params.B
    est = math.exp(0.5 * params.A) / z * avg
    if not math.isfinite(est):
        raise NumericFailure("inversion sum is not finite")
    return min(1.0, max(0.0, est))


def euler_invert_cdf(laplace_of_pdf, z, params=None):
    """Evaluate a CDF at z > 0 given the Laplace transform of its density.

    ``laplace_of_pdf`` must be analytic for Re(s) > 0. It is called once per
    distinct Bromwich node s_c = (A + 2*pi*i*c) / (2z), c = 0..B+C.
    """
    if params is None:
        params = EulerInversionParams()
    if not (np.isfinite(z) and z > 0):
        raise InvalidParameterError(f"evaluation point must be positive, got {z}")
    s = _bromwich_nodes(z, params)
    vals = np.array([complex(laplace_of_pdf(sc)) for sc in s])
    if not np.all(np.isfinite(vals)):
        raise NumericFailure("Laplace transform returned non-finite values")
    return _euler_cdf_from_samples(vals, s, z, params)


def _radial_mixture_rows(profile, m, alpha, q, rel_tol, abs_tol=1e-14):
    """E_R{ m^m R^{alpha m} (m R^alpha + q)^{-m} } for a batch of complex q.

    This is the fading-averaged attenuation kernel: averaging the gamma gain
    analytically leaves this single radial integral. Log-space evaluation
    keeps very large shapes (m -> infinity limit checks) from overflowing;
    the principal branch is safe because Re(q) >= 0 keeps the base away from
    the negative real axis.
    """
    qcol = np.asarray(q, dtype=complex).reshape(-1, 1)

    def rows(r):
        rrow = r[None, :]
        logw = m * (math.log(m) + alpha * np.log(rrow)
                    - np.log(m * rrow ** alpha + qcol))
        return np.exp(logw) * profile.pdf(r)[None, :]

    vals, _ = adaptive_rows_quad(rows, 0.0, profile.r_max,
                                 breakpoints=profile.breakpoints,
                                 rel_tol=rel_tol, abs_tol=abs_tol)
    return vals.reshape(np.shape(q))


def inner_expectation(profile, m, alpha, r0, s, g0, rel_tol=1e-10):
    """Average of exp(-s G (R/r0)^{-alpha} / g0) over interferer distance R
    and its unit-mean gamma gain G with shape m.

    The gain average has a closed form, so only the distance integral is
    done numerically (split at the profile's breakpoints). The modulus is
    at most 1 for Re(s) >= 0.
    """
    if not g0 > 0:
        raise InvalidParameterError(
            f"conditioning gain must be positive, got {g0}")
    s = complex(s)
    if s.real < 0:
        raise InvalidParameterError("transform point must satisfy Re(s) >= 0")
    if s == 0:
        return 1.0 + 0.0j
    q = (r0 ** alpha) * s / g0
    return complex(_radial_mixture_rows(profile, m, alpha, [q], rel_tol)[0])


def phi_closed_form(theta, upsilon, m, alpha, r0, s, g0, area):
    """Closed form of the radial kernel integral over a piece [0, upsilon]
    of the distance density where the in-region arc angle is the constant
    theta (density theta*r/area there).

    Raises NumericFailure if the hypergeometric evaluation fails; callers
    fall back to quadrature on the same piece.
    """
    if upsilon == 0.0:
        return 0.0 + 0.0j
    q = (r0 ** alpha) * complex(s) / g0
    am = alpha * m
    f21 = gauss_2f1(m, 2.0 / alpha + m, 1.0 + 2.0 / alpha + m,
                    -m * upsilon ** alpha / q)
    logw = m * math.log(m) + (2.0 + am) * math.log(upsilon) - m * np.log(q)
    return theta / (area * (2.0 + am)) * np.exp(logw) * f21


def outage_mgf(scenario, params=None, rel_tol=1e-10):
    """Outage probability by inverting the Laplace transform of the
    noise-plus-interference functional at 1/beta.

    Valid for any fading shapes m0, m >= 0.5. Each Bromwich node needs one
    outer integral over the reference gain (substituted onto (0,1), where
    the integrand vanishes at both ends) whose integrand carries the M-th
    power of the inner distance expectation; inner values are computed for
    all outer nodes of a panel batch in one vectorized call.
    """
    if params is None:
        params = EulerInversionParams()
    prof = scenario.profile()
    m0 = scenario.channel.m0
    m = scenario.channel.m
    alpha = scenario.alpha
    r0 = scenario.r0
    num_interferers = scenario.num_interferers
    rho0 = scenario.rho0
    z = 1.0 / scenario.beta

    svals = _bromwich_nodes(z, params)
    # Inner errors are amplified by ~e^{A/2} in the Euler sum, so keep the
    # inner tolerance two orders below the outer one.
    inner_rel = min(1e-12, rel_tol * 1e-2)
    u_breaks = tuple(g / (1.0 + g) for g in _G0_KNOTS)
    lgamma_m0 = ln_gamma(m0)
    log_m0 = math.log(m0)

    transforms = np.empty(svals.size, dtype=complex)
    for idx, s in enumerate(svals):

        def grand(u, s=s):
            g0 = u / (1.0 - u)
            logw = ((m0 - 1.0) * np.log(g0) + m0 * log_m0 - m0 * g0
                    - lgamma_m0 - 2.0 * np.log1p(-u))
            vals = np.exp(logw - s / (rho0 * g0))
            if num_interferers:
                q = (r0 ** alpha) * s / g0
                inner = _radial_mixture_rows(prof, m, alpha, q, inner_rel)
                vals = vals * inner ** num_interferers
            return vals[None, :]

        val, _ = adaptive_rows_quad(grand, 0.0, 1.0, breakpoints=u_breaks,
                                    rel_tol=rel_tol, abs_tol=1e-13)
        transforms[idx] = val[0]

    cdf = _euler_cdf_from_samples(transforms, svals, z, params)
    eps = min(1.0, max(0.0, 1.0 - cdf))
    return OutageResult(outage=eps, method="mgf",
                        abs_error=10.0 ** (-params.accuracy_digits))
