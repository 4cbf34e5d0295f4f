# ------------------------------------------------------------------------------
# approximation.py
# Closed-form approximations of the Y-probabilities
#   Y(a, b, n) = int_a^b f_G(x) Q_n(x) dx
# obtained by replacing Q_n with its tangent ramp U_n around the decoding
# threshold, against the Gaussian (CLT) law, the moment matched Gamma law or
# the exact Rayleigh sum law; the infinite blocklength (step function)
# metrics; and whole-link metrics evaluated with any of these approximations.
#
# Gaussian form, z(x) = (x - N_r zeta) / s, s = sqrt(N_r nu^2), A = 1/2 + mu alpha,
# lo/hi = a/b clamped to [c, d]:
#   Phi(z(min(b, c))) - Phi(z(min(a, c)))
#     + (A - mu N_r zeta) (Phi(z(hi)) - Phi(z(lo))) + mu s (phi(z(hi)) - phi(z(lo)))
#
# Rayleigh form, S(x) = e^{-x/omega} sum_{i<N_r} (x/omega)^i / i!:
#   S(min(a, c)) - S(min(b, c)) + A (S(lo) - S(hi))
#     - mu omega / (N_r - 1)! (Gamma(N_r + 1, lo/omega) - Gamma(N_r + 1, hi/omega))
# ------------------------------------------------------------------------------

import math
import logging

import numpy as np
from scipy import special

from . import analysis, channel, fbl, power, quadrature, specFun
from .rayleighFading import rayleighFading
from .harqErrors import unsupportedConfigError

logger = logging.getLogger(__name__)

METHODS = ('clt', 'gamma', 'linearized')


def linearizationConstants(n, cfg, pa, pCons):
    return fbl.linearizationConstants(n, cfg.code, power.outputPower(pa, pCons))


def _checkInterval(a, b):
    if a < 0 or b < a:
        raise ValueError('need 0 <= a <= b, got a={}, b={}'.format(a, b))


def _clamp(x, lc):
    return min(max(x, lc.c), lc.d)


def _phi(z):
    if math.isinf(z):
        return 0.0

    return math.exp(-0.5 * z * z) / math.sqrt(2.0 * math.pi)


# ------------------------------------------------------------------------------
# yLinearGaussian
# param gauss - channel.GaussianApprox of the sum gain
# param a, b - gain interval
# param n, cfg, pa, pCons - round, configuration and power fixing the ramp
# return approximate Y(a, b, n)
# ------------------------------------------------------------------------------
def yLinearGaussian(gauss, a, b, n, cfg, pa, pCons):
    _checkInterval(a, b)
    if a == b:
        return 0.0

    lc = linearizationConstants(n, cfg, pa, pCons)
    mean, s = gauss.mean, gauss.std
    z = lambda x: (x - mean) / s

    lo, hi = _clamp(a, lc), _clamp(b, lc)
    offset = 0.5 + lc.mu * lc.alpha

    plateau = special.ndtr(z(min(b, lc.c))) - special.ndtr(z(min(a, lc.c)))
    ramp = ((offset - lc.mu * mean) * (special.ndtr(z(hi)) - special.ndtr(z(lo)))
            + lc.mu * s * (_phi(z(hi)) - _phi(z(lo))))

    return float(plateau + ramp)


# ------------------------------------------------------------------------------
# yLinearRayleigh
# Ramp against the exact Rayleigh sum law, endpoints clamped at 0
# param model - rayleighFading
# param nR - receive antennas
# ------------------------------------------------------------------------------
def yLinearRayleigh(model, nR, a, b, n, cfg, pa, pCons):
    if not isinstance(model, rayleighFading):
        raise unsupportedConfigError('the finite-sum ramp integral needs Rayleigh fading')

    _checkInterval(a, b)
    if a == b:
        return 0.0

    lc = linearizationConstants(n, cfg, pa, pCons)
    omega = model.omega
    tail = lambda x: float(model.sumSf(max(x, 0.0), nR))

    c = max(lc.c, 0.0)
    lo, hi = max(_clamp(a, lc), 0.0), max(_clamp(b, lc), 0.0)
    offset = 0.5 + lc.mu * lc.alpha

    upperGammaAt = lambda x: 0.0 if math.isinf(x) else specFun.upperGamma(nR + 1, x / omega)
    firstMoment = omega / math.factorial(nR - 1) * (upperGammaAt(lo) - upperGammaAt(hi))

    plateau = tail(min(a, c)) - tail(min(b, c))
    ramp = offset * (tail(lo) - tail(hi)) - lc.mu * firstMoment

    return plateau + ramp


# ------------------------------------------------------------------------------
# yLinearGamma
# Ramp against a Gamma(shape, rate) law, non-integer shapes allowed
# param gamma - channel.GammaApprox
# ------------------------------------------------------------------------------
def yLinearGamma(gamma, a, b, n, cfg, pa, pCons):
    _checkInterval(a, b)
    if a == b:
        return 0.0

    lc = linearizationConstants(n, cfg, pa, pCons)
    shape, rate = gamma.shape, gamma.rate

    cdf = lambda x, s: 1.0 if math.isinf(x) else float(special.gammainc(s, rate * max(x, 0.0)))

    c = max(lc.c, 0.0)
    lo, hi = max(_clamp(a, lc), 0.0), max(_clamp(b, lc), 0.0)
    offset = 0.5 + lc.mu * lc.alpha

    plateau = cdf(min(b, c), shape) - cdf(min(a, c), shape)
    mass = cdf(hi, shape) - cdf(lo, shape)
    firstMoment = shape / rate * (cdf(hi, shape + 1) - cdf(lo, shape + 1))

    return plateau + offset * mass - lc.mu * firstMoment


def _yLinearQuadrature(d, a, b, lc):
    upper = min(b, max(lc.d, a))
    if not math.isfinite(upper):
        upper = max(a, d.truncation)

    integrand = lambda x: channel.pdfSumGain(d, x) * lc.ramp(x)
    return quadrature.integratePanels(integrand, a, upper, (lc.c, lc.alpha, lc.d))


# ------------------------------------------------------------------------------
# asymptoticMetrics
# Link metrics with every round error replaced by the step function; the
# error probability is F_G((e^{K/(ML)} - 1) / P)
# ------------------------------------------------------------------------------
def asymptoticMetrics(d, b, cfg, pa, pCons):
    return analysis.LinkSystem(dist=d, pa=pa, cfg=cfg, asymptotic=True).metrics(b, pCons)


# ------------------------------------------------------------------------------
# asymptoticErrorApprox
# param method - 'clt': Q((N_r zeta - t_M) / sqrt(N_r nu^2)),
# 'gamma': 1 - Gamma(s1, s0 t_M) / Gamma(s1), with t_M = (e^{K/(ML)} - 1) / P
# ------------------------------------------------------------------------------
def asymptoticErrorApprox(d, cfg, pa, pCons, method='clt'):
    threshold = cfg.code.threshold(cfg.mMax, power.outputPower(pa, pCons))

    if method == 'clt':
        gauss = channel.cltParams(d.model, d.nR)
        if math.isinf(threshold):
            return 1.0
        return specFun.qFunction((gauss.mean - threshold) / gauss.std)

    if method == 'gamma':
        gamma = channel.gammaParams(d.model, d.nR)
        if math.isinf(threshold):
            return 1.0
        return float(special.gammainc(gamma.shape, gamma.rate * threshold))

    raise ValueError('unknown asymptotic approximation {!r}'.format(method))


def _approximateY(system, method):
    d, cfg, pa = system.dist, system.cfg, system.pa

    if method == 'clt':
        gauss = channel.cltParams(d.model, d.nR)

        def y(a, b, n, pCons):
            if n == 0:
                return float(gauss.cdf(b) - gauss.cdf(a))
            return yLinearGaussian(gauss, a, b, n, cfg, pa, pCons)

    elif method == 'gamma':
        gamma = channel.gammaParams(d.model, d.nR)

        def y(a, b, n, pCons):
            if n == 0:
                return float(gamma.cdf(b) - gamma.cdf(a))
            return yLinearGamma(gamma, a, b, n, cfg, pa, pCons)

    elif method == 'linearized':
        exactRayleigh = isinstance(d.model, rayleighFading)

        def y(a, b, n, pCons):
            if n == 0:
                return system.yIntegral(a, b, 0, pCons)
            if exactRayleigh:
                return yLinearRayleigh(d.model, d.nR, a, b, n, cfg, pa, pCons)
            if a == b:
                return 0.0
            return _yLinearQuadrature(d, a, b, linearizationConstants(n, cfg, pa, pCons))

    else:
        raise ValueError('unknown approximation method {!r}, expected one of {}'.format(method, METHODS))

    return y


# ------------------------------------------------------------------------------
# approximateMetrics
# Whole-link metrics with every Y-probability taken from an approximation
# param system - analysis.LinkSystem
# param b - Boundaries
# param pCons - consumed power
# param method - 'clt' (Gaussian law + ramp), 'gamma' (Gamma law + ramp) or
# 'linearized' (exact law + ramp)
# return analysis.LinkMetrics
# ------------------------------------------------------------------------------
def approximateMetrics(system, b, pCons, method):
    y = _approximateY(system, method)
    cfg = system.cfg
    mMax = cfg.mMax

    if b.mMax != mMax:
        raise ValueError('boundaries and configuration disagree on M')

    theta = np.zeros((mMax + 1, mMax + 1))
    for m in range(1, mMax + 1):
        for i in range(mMax + 1):
            theta[i, m] = min(max(y(b.q[m], b.q[m - 1], i, pCons), 0.0), 1.0)

    errorProb = y(0.0, math.inf, mMax, pCons)
    logger.debug('%s approximation: error %.6g', method, errorProb)

    return analysis.metricsFromTable(cfg, theta, errorProb, strict=False)

# ------------------------------------ EOF -------------------------------------
