# ------------------------------------------------------------------------------
# analysis.py
# Link metrics of fast HARQ over a quasi-static fading channel: quantization
# region probabilities, the joint probabilities theta_i^m of "gain in region m
# and not decoded after round i", error probability, expected delay,
# throughput, success-conditioned delay, unnecessary transmissions and the
# pilot based imperfect-CSIR delay.
#
# Joint round events follow the monotone decoding convention: a packet that
# is decodable after round n stays decodable after every later round, so
# P(G in S^m, first success at round i) = theta_{i-1}^m - theta_i^m.
# ------------------------------------------------------------------------------

import math
import logging
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import channel, fbl, power, quadrature
from .estimate import runningStats
from .harqErrors import degenerateSuccessError, quadratureError

logger = logging.getLogger(__name__)

# Largest negative first-success probability blamed on quadrature round-off
NEGATIVE_SLACK = 1e-9
MIN_SUCCESS = 1e-12


@dataclass(frozen=True)
class LinearDecodeDelay:
    c: float = 0.0

    def __post_init__(self):
        if not self.c >= 0:
            raise ValueError('decoding delay coefficient must be nonnegative')

    def __call__(self, length):
        return self.c * length


@dataclass(frozen=True)
class HarqConfig:
    mMax: int
    code: fbl.CodeSpec
    dFb: float = 0.0
    decodeDelay: Callable = field(default_factory=LinearDecodeDelay)

    def __post_init__(self):
        if int(self.mMax) != self.mMax or self.mMax < 1:
            raise ValueError('maximum number of rounds must be a positive integer')

        if not self.dFb >= 0:
            raise ValueError('feedback delay must be nonnegative')

        profile = [self.decodeDelay(j * self.code.subLen) for j in range(self.mMax + 1)]

        if profile[0] != 0:
            raise ValueError('decoding delay of an empty codeword must be zero')

        if any(b < a for a, b in zip(profile[:-1], profile[1:])):
            raise ValueError('decoding delay must be nondecreasing in the codeword length')

    # --------------------------------------------------------------------------
    # cumulativeDecodeCost
    # return array C with C[j] = sum_{r <= j} decodeDelay(r L), j = 0..M
    # --------------------------------------------------------------------------
    def cumulativeDecodeCost(self):
        return np.cumsum([self.decodeDelay(j * self.code.subLen) for j in range(self.mMax + 1)])


@dataclass(frozen=True)
class Boundaries:
    q: tuple

    def __post_init__(self):
        q = tuple(float(x) for x in self.q)
        object.__setattr__(self, 'q', q)

        if len(q) < 2:
            raise ValueError('boundaries need at least q^0 and q^M')

        if q[0] != math.inf or q[-1] != 0.0:
            raise ValueError('boundaries must start at +inf and end at 0')

        if any(math.isnan(x) for x in q) or any(b > a for a, b in zip(q[:-1], q[1:])):
            raise ValueError('boundaries must be nonincreasing: {}'.format(q))

    @classmethod
    def standard(cls, mMax):
        return cls((math.inf,) + (0.0,) * mMax)

    # --------------------------------------------------------------------------
    # fromInterior
    # param interior - q^1 >= ... >= q^{M-1}
    # --------------------------------------------------------------------------
    @classmethod
    def fromInterior(cls, interior):
        return cls((math.inf, *interior, 0.0))

    # --------------------------------------------------------------------------
    # fromQuantiles
    # param d - sum gain distribution
    # param levels - M-1 CDF levels in [0, 1], any order; the smallest level
    # becomes q^{M-1}
    # --------------------------------------------------------------------------
    @classmethod
    def fromQuantiles(cls, d, levels):
        gains = [channel.quantileSumGain(d, u) for u in sorted(levels, reverse=True)]
        return cls.fromInterior(gains)

    @classmethod
    def uniform(cls, d, mMax):
        return cls.fromQuantiles(d, [1.0 - i / mMax for i in range(1, mMax)])

    @property
    def mMax(self):
        return len(self.q) - 1

    @property
    def interior(self):
        return self.q[1:-1]

    @property
    def isStandard(self):
        return all(x == 0 for x in self.interior)

    # --------------------------------------------------------------------------
    # regionOf
    # param g - gains, scalar or array
    # return m with q^m <= g < q^{m-1}
    # --------------------------------------------------------------------------
    def regionOf(self, g):
        ascending = np.asarray(self.q[::-1])
        index = np.searchsorted(ascending, np.asarray(g, dtype=float), side='right') - 1
        region = self.mMax - np.minimum(index, self.mMax - 1)

        if region.ndim == 0:
            return int(region)

        return region


@dataclass(frozen=True)
class LinkMetrics:
    errorProb: float
    expectedDelay: float
    throughput: float
    constrainedDelay: float = None

    def __post_init__(self):
        if not 0 <= self.errorProb <= 1:
            raise ValueError('error probability out of [0, 1]: {}'.format(self.errorProb))


# ------------------------------------------------------------------------------
# packetDelay
# Channel uses spent by a packet scheduled to region m that stops at round i:
#   i L + sum_{j=m}^{i} decodeDelay(j L) + f D,
# f = i - m + 1 feedback messages when i < M and M - m at the last round.
# param cfg - HarqConfig
# param stop - stop round i (scalar or array)
# param region - region m (scalar or array), m <= i
# ------------------------------------------------------------------------------
def packetDelay(cfg, stop, region):
    stop = np.asarray(stop)
    region = np.asarray(region)
    cost = cfg.cumulativeDecodeCost()

    feedback = np.where(stop < cfg.mMax, stop - region + 1, cfg.mMax - region)
    delay = stop * cfg.code.subLen + cost[stop] - cost[region - 1] + feedback * cfg.dFb

    if delay.ndim == 0:
        return float(delay)

    return delay


@dataclass(frozen=True)
class LinkSystem:
    dist: channel.SumGainDistribution
    pa: power.PaConfig
    cfg: HarqConfig
    asymptotic: bool = False

    def outputPower(self, pCons):
        return power.outputPower(self.pa, pCons)

    # --------------------------------------------------------------------------
    # roundError
    # Q_n(x): error after n rounds, Q_0 = 1; the step function when asymptotic
    # --------------------------------------------------------------------------
    def roundError(self, x, n, pCons):
        if n == 0:
            return np.ones_like(np.asarray(x, dtype=float)) if np.ndim(x) else 1.0

        p = self.outputPower(pCons)

        if self.asymptotic:
            failed = np.logical_not(fbl.asymptoticDecodable(x, n, self.cfg.code, p))
            return failed.astype(float) if np.ndim(x) else float(failed)

        return fbl.roundErrorProb(x, n, self.cfg.code, p)

    def _breakpoints(self, n, p):
        if not p > 0:
            return ()

        lc = fbl.linearizationConstants(n, self.cfg.code, p)
        return (lc.c, lc.alpha, lc.d)

    # --------------------------------------------------------------------------
    # yIntegral
    # param a, b - gain interval, 0 <= a <= b, b may be +inf
    # param n - rounds combined, 0 gives the plain interval probability
    # param pCons - consumed power
    # return integral of f_G(x) Q_n(x) over [a, b]
    # --------------------------------------------------------------------------
    def yIntegral(self, a, b, n, pCons):
        if a < 0 or b < a:
            raise ValueError('need 0 <= a <= b, got a={}, b={}'.format(a, b))

        if a == b:
            return 0.0

        if n == 0:
            return channel.sfSumGain(self.dist, a) - channel.sfSumGain(self.dist, b)

        p = self.outputPower(pCons)

        if self.asymptotic:
            t = self.cfg.code.threshold(n, p)
            return max(0.0, channel.cdfSumGain(self.dist, min(b, t)) - channel.cdfSumGain(self.dist, min(a, t)))

        code = self.cfg.code
        integrand = lambda x: channel.pdfSumGain(self.dist, x) * fbl.roundErrorProb(x, n, code, p)

        upper = b if math.isfinite(b) else max(a, self.dist.truncation)
        value = quadrature.integratePanels(integrand, a, upper, self._breakpoints(n, p))

        if not math.isfinite(b):
            value += channel.sfSumGain(self.dist, upper) * fbl.roundErrorProb(upper, n, code, p)

        return min(max(value, 0.0), 1.0)

    def tailIntegral(self, x, n, pCons):
        return self.yIntegral(x, math.inf, n, pCons)

    def errorProb(self, pCons):
        return self.yIntegral(0.0, math.inf, self.cfg.mMax, pCons)

    # --------------------------------------------------------------------------
    # thetaTable
    # param b - Boundaries with the same M as the configuration
    # param pCons - consumed power
    # param tails - optional T(x, n) = yIntegral(x, inf, n) to build the
    # table from cached tail integrals
    # return array theta[i, m], i = 0..M, m = 1..M (column 0 unused),
    # theta[0, m] the region probability
    # --------------------------------------------------------------------------
    def thetaTable(self, b, pCons, tails=None):
        mMax = self.cfg.mMax
        checkBoundaries(b, self.cfg)

        theta = np.zeros((mMax + 1, mMax + 1))

        for m in range(1, mMax + 1):
            lo, hi = b.q[m], b.q[m - 1]

            for i in range(mMax + 1):
                if tails is None:
                    theta[i, m] = self.yIntegral(lo, hi, i, pCons)
                else:
                    theta[i, m] = max(0.0, tails(lo, i) - tails(hi, i))

        return theta

    def metrics(self, b, pCons):
        theta = self.thetaTable(b, pCons)
        return metricsFromTable(self.cfg, theta, self.errorProb(pCons))


def checkBoundaries(b, cfg):
    if b.mMax != cfg.mMax:
        raise ValueError('boundaries define {} regions, configuration has M = {}'.format(
            b.mMax, cfg.mMax))


def _system(d, pa, cfg, asymptotic):
    return LinkSystem(dist=d, pa=pa, cfg=cfg, asymptotic=asymptotic)


# ------------------------------------------------------------------------------
# firstSuccessTable
# param theta - table from LinkSystem.thetaTable
# param strict - raise when a probability is negative beyond round-off
# return s[i, m] = P(G in S^m, first success at round i), m <= i <= M
# ------------------------------------------------------------------------------
def firstSuccessTable(cfg, theta, strict=True):
    mMax = cfg.mMax
    success = np.zeros_like(theta)

    for m in range(1, mMax + 1):
        for i in range(m, mMax + 1):
            before = theta[0, m] if i == m else theta[i - 1, m]
            success[i, m] = before - theta[i, m]

    if strict and success.min() < -NEGATIVE_SLACK:
        raise quadratureError('first-success probabilities are negative, min {:g}'.format(
            success.min()))

    return np.maximum(success, 0.0)


def delayFromTable(cfg, theta):
    mMax, subLen, dFb = cfg.mMax, cfg.code.subLen, cfg.dFb
    lam = [cfg.decodeDelay(j * subLen) for j in range(mMax + 1)]

    total = 0.0
    for m in range(1, mMax + 1):
        total += theta[0, m] * (m * subLen + lam[m])

        if m == mMax:
            continue

        total += dFb * theta[0, m]
        total += sum((subLen + lam[i]) * theta[i - 1, m] for i in range(m + 1, mMax + 1))
        total += dFb * sum(theta[i - 1, m] for i in range(m + 1, mMax))

    return total


def _constrainedFromTable(cfg, theta, strict=True):
    success = firstSuccessTable(cfg, theta, strict)
    total = success.sum()

    if total < MIN_SUCCESS:
        raise degenerateSuccessError('success probability {:g} is too small to condition on'.format(total))

    mMax = cfg.mMax
    weighted = sum(success[i, m] * packetDelay(cfg, i, m)
                   for m in range(1, mMax + 1) for i in range(m, mMax + 1))

    return weighted / total


def _unnecessaryFromTable(cfg, theta, pCons):
    mMax = cfg.mMax
    probability = 0.0
    energy = 0.0

    for m in range(2, mMax + 1):
        probability += theta[0, m] - theta[m - 1, m]

        for i in range(1, m):
            energy += (m - i) * pCons * max(0.0, theta[i - 1, m] - theta[i, m])

    return max(0.0, probability), energy


def throughput(bigK, errorProb, expectedDelay):
    if not expectedDelay > 0:
        raise ValueError('expected delay must be positive')

    return bigK * (1.0 - errorProb) / expectedDelay


# ------------------------------------------------------------------------------
# metricsFromTable
# Assemble LinkMetrics from a theta table and the error probability; the
# constrained delay is left empty when nothing is ever decoded
# ------------------------------------------------------------------------------
def metricsFromTable(cfg, theta, errorProb, strict=True):
    errorProb = min(max(errorProb, 0.0), 1.0)
    delay = delayFromTable(cfg, theta)

    try:
        constrained = _constrainedFromTable(cfg, theta, strict)
    except degenerateSuccessError:
        constrained = None

    return LinkMetrics(errorProb=errorProb, expectedDelay=delay,
                       throughput=throughput(cfg.code.bigK, errorProb, delay),
                       constrainedDelay=constrained)


# ------------------------------------------------------------------------------
# Operations on (distribution, boundaries, PA, consumed power, configuration)
# ------------------------------------------------------------------------------

def regionProb(d, b, m):
    if not 1 <= m <= b.mMax:
        raise ValueError('region index must lie in 1..M')

    return max(0.0, channel.sfSumGain(d, b.q[m]) - channel.sfSumGain(d, b.q[m - 1]))


def thetaIm(d, b, pa, pCons, cfg, i, m, asymptotic=False):
    if not 1 <= m <= b.mMax:
        raise ValueError('region index must lie in 1..M')

    if i < 0:
        raise ValueError('round index must be nonnegative')

    return _system(d, pa, cfg, asymptotic).yIntegral(b.q[m], b.q[m - 1], i, pCons)


def errorProb(d, pa, pCons, cfg, asymptotic=False):
    return _system(d, pa, cfg, asymptotic).errorProb(pCons)


def expectedDelay(d, b, pa, pCons, cfg, asymptotic=False):
    theta = _system(d, pa, cfg, asymptotic).thetaTable(b, pCons)
    return delayFromTable(cfg, theta)


def yIntegral(d, a, b, n, cfg, pa, pCons, asymptotic=False):
    return _system(d, pa, cfg, asymptotic).yIntegral(a, b, n, pCons)


def constrainedDelay(d, b, pa, pCons, cfg, asymptotic=False):
    theta = _system(d, pa, cfg, asymptotic).thetaTable(b, pCons)
    return _constrainedFromTable(cfg, theta)


# ------------------------------------------------------------------------------
# unnecessaryTxStats
# return (probability that the packet was decodable before its scheduled
# first decoding round, mean wasted energy L p_cons (m - i_first) / L)
# ------------------------------------------------------------------------------
def unnecessaryTxStats(d, b, pa, pCons, cfg, asymptotic=False):
    theta = _system(d, pa, cfg, asymptotic).thetaTable(b, pCons)
    firstSuccessTable(cfg, theta)
    return _unnecessaryFromTable(cfg, theta, pCons)


def metrics(d, b, pa, pCons, cfg, asymptotic=False):
    return _system(d, pa, cfg, asymptotic).metrics(b, pCons)


# ------------------------------------------------------------------------------
# conditionalDelay
# Expected packet delay given the true gain and the scheduled region
# param system - LinkSystem
# param gain - true sum gains, array
# param region - scheduled first decoding round per gain, array
# param pCons - consumed power
# ------------------------------------------------------------------------------
def conditionalDelay(system, gain, region, pCons):
    cfg = system.cfg
    mMax = cfg.mMax
    errors = np.vstack([system.roundError(gain, n, pCons) for n in range(mMax + 1)])
    delay = np.zeros(gain.shape)

    for m in range(1, mMax + 1):
        mask = region == m
        if not mask.any():
            continue

        q = errors[:, mask]
        if m == mMax:
            delay[mask] = packetDelay(cfg, mMax, mMax)
            continue

        total = (1.0 - q[m]) * packetDelay(cfg, m, m)
        for i in range(m + 1, mMax):
            total += (q[i - 1] - q[i]) * packetDelay(cfg, i, m)
        total += q[mMax - 1] * packetDelay(cfg, mMax, m)

        delay[mask] = total

    return delay


# ------------------------------------------------------------------------------
# expectedDelayImperfectCsir
# Monte Carlo integration over (G, G_est): the region is scheduled from the
# pilot estimate G_est, decoding depends on the true G. Each draw contributes
# its exact conditional delay.
# param pilot - channel.PilotModel
# param rng - numpy Generator; reuse the same seed across pilot counts for
# common random numbers
# param nSamples - number of (G, G_est) draws
# return estimate.SimEstimate
# ------------------------------------------------------------------------------
def expectedDelayImperfectCsir(d, pilot, b, pa, pCons, cfg, rng, nSamples=10 ** 6, blockSize=1 << 16):
    if nSamples < 1:
        raise ValueError('at least one sample is required')

    system = _system(d, pa, cfg, False)
    checkBoundaries(b, cfg)

    stats = runningStats()
    remaining = nSamples

    while remaining > 0:
        size = min(blockSize, remaining)
        gain, gainEst = channel.sampleJointGainEstimate(d, pilot, rng, size)
        stats.update(conditionalDelay(system, gain, b.regionOf(gainEst), pCons))
        remaining -= size

    result = stats.estimate()
    logger.debug('imperfect CSIR delay %.6g +- %.3g with %d pilots', result.mean, result.stdError, pilot.nPilots)
    return result


def relativeGain(tauStd, tauFast):
    if not tauStd > 0:
        raise ValueError('standard HARQ delay must be positive')

    return (tauStd - tauFast) / tauStd


# ------------------------------------------------------------------------------
# lowSnrGainLimit
# Relative delay gain of fast over standard HARQ as the SNR vanishes with a
# linear decoding delay c L: c (M - 1) / (2 + c (M + 1))
# ------------------------------------------------------------------------------
def lowSnrGainLimit(mMax, c):
    if mMax < 1 or c < 0:
        raise ValueError('need M >= 1 and c >= 0')

    return c * (mMax - 1) / (2.0 + c * (mMax + 1))

# ------------------------------------ EOF -------------------------------------
