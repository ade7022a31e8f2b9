"""Outage probability via the reference-link power-gain expansion.

When the reference link's fading shape is a positive integer, the gain's CDF
is an exponential polynomial, and averaging it over the aggregate
interference reduces the outage probability to a finite combination of
per-interferer moments E{Omega_t}. Each moment is a single radial integral
against the distance density: closed form (Gauss hypergeometric) on pieces
where the in-region arc angle is constant, adaptive quadrature elsewhere.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, NumericFailure, UnsupportedModelError
from .geometry import _as_xy
from .quadrature import adaptive_rows_quad
from .scenario import OutageResult
from .specfun import enumerate_weighted_partitions, gauss_2f1, ln_gamma

_INTEGER_TOL = 1e-9
_CLAMP_SLACK = 1e-9
_OMEGA_REL_TOL = 1e-11
# Conservative absolute-accuracy figure for the assembled result: the moment
# integrals are solved to 1e-11 relative and the combinatorial assembly is
# exact, so round-off in the alternating-sign assembly dominates.
_RLPG_ABS_ERROR = 1e-9


@dataclass(frozen=True)
class OmegaExpectationTable:
    """Per-scenario cache of the interferer moments.

    values[t] = E{ exp(-c G R^{-alpha}) (G R^{-alpha})^t } for the scenario
    identified by ``fingerprint``; every entry is positive and finite and
    values[0] never exceeds 1.
    """
    values: tuple
    fingerprint: str


def _kernel_rows(r, ts, m, alpha, c):
    """Gamma-averaged moment kernel, one row per exponent t.

    Log-space form of Gamma(m+t)/Gamma(m) m^m r^{alpha m} (m r^alpha + c)
    ^{-(m+t)}; the raw r^{-alpha t} form is hostile near r=0.
    """
    rrow = r[None, :]
    tcol = ts[:, None]
    lg = np.array([ln_gamma(m + t) - ln_gamma(m) for t in ts])[:, None]
    logw = (lg + m * math.log(m) + alpha * m * np.log(rrow)
            - (m + tcol) * np.log(m * rrow ** alpha + c))
    return np.exp(logw)


def _psi_core(theta, upsilon, tau, m, alpha, c, area):
    """Moment contribution of a constant-angle piece [0, upsilon]."""
    if upsilon <= 0.0:
        return 0.0
    am = alpha * m
    f21 = gauss_2f1(2.0 / alpha + m, m + tau, 1.0 + 2.0 / alpha + m,
                    -m * upsilon ** alpha / c)
    logw = (ln_gamma(m + tau) - ln_gamma(m) + m * math.log(m)
            + (2.0 + am) * math.log(upsilon) - (m + tau) * math.log(c))
    return theta / (area * (2.0 + am)) * math.exp(logw) * f21.real


def _piece_quadrature(theta, lo, hi, ts, m, alpha, c, area, rel_tol):
    def rows(r):
        return _kernel_rows(r, ts, m, alpha, c) * (theta * r / area)[None, :]

    vals, _ = adaptive_rows_quad(rows, lo, hi, rel_tol=rel_tol)
    return vals


def psi_closed_form(theta, upsilon, tau, m, m0, alpha, r0, beta, area):
    """Closed form of the moment integral over a piece [0, upsilon] of the
    distance density where the in-region arc angle is the constant theta
    (density theta*r/area there). Falls back to direct quadrature of the
    same piece if the hypergeometric evaluation fails."""
    if upsilon < 0.0:
        raise InvalidParameterError(f"piece radius must be >= 0, got {upsilon}")
    c = beta * r0 ** alpha * m0
    try:
        return _psi_core(theta, upsilon, tau, m, alpha, c, area)
    except NumericFailure:
        if upsilon == 0.0:
            return 0.0
        vals = _piece_quadrature(theta, 0.0, upsilon, np.array([tau]), m,
                                 alpha, c, area, _OMEGA_REL_TOL)
        return float(vals[0])


def _omega_values(profile, ts, m, alpha, c, rel_tol=_OMEGA_REL_TOL):
    """E{Omega_t} for each exponent in ts, sharing one pass over the profile.

    Constant-angle pieces are evaluated as differences of the closed form;
    the remaining intervals (arccos-shaped angle) go through adaptive
    quadrature. The two kinds partition [0, r_max] exactly.
    """
    ts = np.asarray(list(ts), dtype=int)
    total = np.zeros(ts.size)
    pieces = profile.constant_arc_pieces
    for lo, hi, theta in pieces:
        if theta == 0.0:
            continue
        for i, t in enumerate(ts):
            try:
                v = (_psi_core(theta, hi, t, m, alpha, c, profile.area)
                     - _psi_core(theta, lo, t, m, alpha, c, profile.area))
            except NumericFailure:
                v = float(_piece_quadrature(theta, lo, hi,
                                            np.array([t]), m, alpha, c,
                                            profile.area, rel_tol)[0])
            total[i] += v

    edges = np.concatenate([[0.0], profile.breakpoints])

    def covered(a, b):
        mid = 0.5 * (a + b)
        return any(lo <= mid <= hi for lo, hi, _ in pieces)

    # merge contiguous uncovered intervals into single quadrature calls
    run_start = None
    run_breaks = []
    spans = []
    for a, b in zip(edges[:-1], edges[1:]):
        if covered(a, b):
            if run_start is not None:
                spans.append((run_start, a, tuple(run_breaks)))
                run_start = None
                run_breaks = []
        else:
            if run_start is None:
                run_start = a
            else:
                run_breaks.append(a)
    if run_start is not None:
        spans.append((run_start, edges[-1], tuple(run_breaks)))

    for a, b, inner in spans:
        def rows(r):
            return _kernel_rows(r, ts, m, alpha, c) * profile.pdf(r)[None, :]

        vals, _ = adaptive_rows_quad(rows, a, b, breakpoints=inner,
                                     rel_tol=rel_tol)
        total += vals.real if np.iscomplexobj(vals) else vals
    return total


def expectation_omega(profile, t, m, m0, alpha, r0, beta):
    """E{ exp(-m0 beta r0^alpha G R^{-alpha}) (G R^{-alpha})^t } for one
    interferer at distance R with gamma gain G of shape m."""
    if t != int(t) or t < 0:
        raise InvalidParameterError(f"moment order must be integer >= 0, got {t}")
    if m0 != int(m0) or m0 < 1:
        raise InvalidParameterError(
            f"reference shape must be a positive integer, got {m0}")
    if t > m0 - 1:
        raise InvalidParameterError(
            f"moment order {t} exceeds reference shape bound {int(m0) - 1}")
    if not beta > 0:
        raise InvalidParameterError(f"threshold must be positive, got {beta}")
    c = beta * r0 ** alpha * m0
    return float(_omega_values(profile, [int(t)], m, alpha, c)[0])


def _fingerprint(scenario, c):
    reg = scenario.region
    x, y = _as_xy(scenario.receiver)
    ch = scenario.channel
    return (f"kind={reg.kind} area={reg.area:.17g} y0=({x:.17g},{y:.17g}) "
            f"r0={scenario.r0:.17g} M={scenario.num_interferers} "
            f"m0={ch.m0:.17g} m={ch.m:.17g} alpha={scenario.alpha:.17g} "
            f"beta={scenario.beta:.17g} c={c:.17g}")


def omega_expectation_table(scenario):
    """Moment table for an integer-shape scenario, computed once and reused
    across every term of the outage assembly."""
    ch = scenario.channel
    if abs(ch.m0 - round(ch.m0)) > _INTEGER_TOL or ch.m0 < 0.999999999:
        raise UnsupportedModelError(
            f"reference fading shape {ch.m0} is not a positive integer; "
            "use outage_mgf for real-valued shapes")
    m0 = int(round(ch.m0))
    c = scenario.beta * scenario.r0 ** scenario.alpha * m0
    vals = _omega_values(scenario.profile(), range(m0), ch.m,
                         scenario.alpha, c)
    if not np.all(np.isfinite(vals)) or np.any(vals <= 0.0):
        raise NumericFailure(f"moment table is not positive finite: {vals}")
    return OmegaExpectationTable(values=tuple(float(v) for v in vals),
                                 fingerprint=_fingerprint(scenario, c))


def _interference_moment_sums(values, num_interferers, max_j):
    """S_j = E{ exp(-c I) I^j } decomposed per node, I the aggregate of
    num_interferers i.i.d. terms: sum over partitions of j of the number of
    node assignments times the multinomial weight times the moment product
    (nodes with exponent zero contribute values[0] each)."""
    e0 = values[0]
    out = []
    for j in range(max_j + 1):
        s = 0.0
        for term in enumerate_weighted_partitions(j, num_interferers):
            prod = 1.0
            for t in term.parts:
                prod *= values[t]
            s += (term.arrangement_count * term.multinomial_weight * prod
                  * e0 ** (num_interferers - len(term.parts)))
        out.append(s)
    return out


def _threshold_powers_sum(s_values, k, beta_over_rho0, beta_r0_alpha):
    tot = 0.0
    for j in range(k + 1):
        tot += (math.comb(k, j) * beta_over_rho0 ** (k - j)
                * beta_r0_alpha ** j * s_values[j])
    return tot


def _clamp_unit(raw, context):
    if raw < 0.0:
        if raw >= -_CLAMP_SLACK:
            warnings.warn(f"{context}: {raw:.3e} clipped to 0 (round-off)")
            return 0.0
        raise NumericFailure(f"{context} produced {raw}, beyond round-off")
    if raw > 1.0:
        if raw <= 1.0 + _CLAMP_SLACK:
            warnings.warn(f"{context}: {raw!r} clipped to 1 (round-off)")
            return 1.0
        raise NumericFailure(f"{context} produced {raw}, beyond round-off")
    return raw


def outage_rlpg(scenario):
    """Outage probability for integer reference shape m0.

    The exponential-polynomial CDF of the reference gain turns the outage
    average into m0 threshold powers, each a binomial combination of the
    aggregate-interference moments S_j; those reduce to the per-node table
    via exchangeability.
    """
    table = omega_expectation_table(scenario)
    m0 = int(round(scenario.channel.m0))
    br = scenario.beta / scenario.rho0
    ba = scenario.beta * scenario.r0 ** scenario.alpha
    svals = _interference_moment_sums(table.values,
                                      scenario.num_interferers, m0 - 1)
    acc = 0.0
    kfact = 1.0
    for k in range(m0):
        if k:
            kfact *= k
        acc += m0 ** k / kfact * _threshold_powers_sum(svals, k, br, ba)
    raw = 1.0 - math.exp(-m0 * br) * acc
    return OutageResult(outage=_clamp_unit(raw, "outage assembly"),
                        method="rlpg", abs_error=_RLPG_ABS_ERROR)


def outage_rlpg_for_counts(scenario, counts):
    """Outage at several interferer counts, reusing one moment table (the
    table does not depend on the count). Returns a list of floats."""
    table = omega_expectation_table(scenario)
    m0 = int(round(scenario.channel.m0))
    br = scenario.beta / scenario.rho0
    ba = scenario.beta * scenario.r0 ** scenario.alpha
    out = []
    for num in counts:
        if num != int(num) or num < 0:
            raise InvalidParameterError(
                f"interferer count must be integer >= 0, got {num}")
        svals = _interference_moment_sums(table.values, int(num), m0 - 1)
        acc = 0.0
        kfact = 1.0
        for k in range(m0):
            if k:
                kfact *= k
            acc += m0 ** k / kfact * _threshold_powers_sum(svals, k, br, ba)
        out.append(_clamp_unit(1.0 - math.exp(-m0 * br) * acc,
                               "outage assembly"))
    return out


def outage_disk_center(W, r0, M, m0, m, alpha, beta, rho0):
    """Receiver at the center of a disk of radius W: every moment is a single
    closed-form evaluation (the arc angle is 2*pi over the whole range), no
    distance-profile machinery involved."""
    if not W > 0:
        raise InvalidParameterError(f"disk radius must be positive, got {W}")
    if not r0 > 0:
        raise InvalidParameterError(f"link distance must be positive, got {r0}")
    if M != int(M) or M < 0:
        raise InvalidParameterError(f"interferer count must be integer >= 0, got {M}")
    if m0 != int(m0) or m0 < 1:
        raise UnsupportedModelError(
            f"reference fading shape {m0} is not a positive integer; "
            "use outage_mgf for real-valued shapes")
    if not (beta > 0 and rho0 > 0):
        raise InvalidParameterError("threshold and SNR must be positive")
    m0 = int(m0)
    M = int(M)
    area = math.pi * W * W
    values = [psi_closed_form(2.0 * math.pi, W, t, m, m0, alpha, r0, beta, area)
              for t in range(m0)]
    br = beta / rho0
    ba = beta * r0 ** alpha
    svals = _interference_moment_sums(values, M, m0 - 1)
    acc = 0.0
    kfact = 1.0
    for k in range(m0):
        if k:
            kfact *= k
        acc += m0 ** k / kfact * _threshold_powers_sum(svals, k, br, ba)
    raw = 1.0 - math.exp(-m0 * br) * acc
    return OutageResult(outage=_clamp_unit(raw, "outage assembly"),
                        method="rlpg", abs_error=_RLPG_ABS_ERROR)


def outage_general_family(scenario, reference_cdf):
    """Outage when the reference gain follows an exponential-polynomial CDF
    1 - sum_n e^{-n g} sum_k a_nk g^k; interferers keep the scenario's gamma
    fading. One moment table per decay rate n (the moments depend on n
    through the exponential tilt)."""
    prof = scenario.profile()
    m = scenario.channel.m
    alpha = scenario.alpha
    r0 = scenario.r0
    br = scenario.beta / scenario.rho0
    ba = scenario.beta * r0 ** alpha

    groups = {}
    for n, k, a in reference_cdf.terms:
        groups.setdefault(n, []).append((k, a))

    acc = 0.0
    for n in sorted(groups):
        terms_n = groups[n]
        kmax = max(k for k, _ in terms_n)
        c = scenario.beta * r0 ** alpha * n
        values = _omega_values(prof, range(kmax + 1), m, alpha, c)
        svals = _interference_moment_sums(values, scenario.num_interferers,
                                          kmax)
        part = sum(a * _threshold_powers_sum(svals, k, br, ba)
                   for k, a in terms_n)
        acc += math.exp(-n * br) * part
    raw = 1.0 - acc
    return OutageResult(outage=_clamp_unit(raw, "outage assembly"),
                        method="rlpg", abs_error=_RLPG_ABS_ERROR)
