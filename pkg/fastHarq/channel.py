# ------------------------------------------------------------------------------
# channel.py
# Sum channel gain G over N_r receive antennas: exact density and CDF, the
# Gaussian and Gamma moment approximations, sampling, and the pilot based
# imperfect-CSIR model (SISO Rayleigh, linear MMSE estimate).
# ------------------------------------------------------------------------------

import math
import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import optimize, special

from .fadingAbstract import fadingAbstract
from .rayleighFading import rayleighFading
from .harqErrors import unsupportedConfigError

logger = logging.getLogger(__name__)

# Mass left beyond the truncation point of every infinite integral
TAIL_MASS = 1e-15
QUANTILE_TOL = 1e-10


@dataclass(frozen=True)
class SumGainDistribution:
    model: fadingAbstract
    nR: int = 1

    def __post_init__(self):
        if int(self.nR) != self.nR or self.nR < 1:
            raise ValueError('nR must be a positive integer')

        if not isinstance(self.model, fadingAbstract):
            raise ValueError('model must implement fadingAbstract')

    @cached_property
    def mean(self):
        zeta, _ = self.model.momentsPerAntenna()
        return self.nR * zeta

    @cached_property
    def std(self):
        _, nu2 = self.model.momentsPerAntenna()
        return math.sqrt(self.nR * nu2)

    # --------------------------------------------------------------------------
    # truncation
    # Finite stand-in for +inf in the quadratures: mean + 12 std, pushed out
    # until the remaining tail mass is below TAIL_MASS
    # --------------------------------------------------------------------------
    @cached_property
    def truncation(self):
        upper = self.mean + 12.0 * self.std

        while float(self.model.sumSf(upper, self.nR)) > TAIL_MASS:
            upper *= 1.5

        logger.debug('sum gain truncated at %g for %s', upper, self)
        return upper


@dataclass(frozen=True)
class GaussianApprox:
    mean: float
    variance: float

    def __post_init__(self):
        if not self.variance > 0:
            raise ValueError('GaussianApprox variance must be positive')

    @property
    def std(self):
        return math.sqrt(self.variance)

    def pdf(self, x):
        z = (x - self.mean) / self.std
        return math.exp(-0.5 * z * z) / (self.std * math.sqrt(2.0 * math.pi))

    def cdf(self, x):
        return float(special.ndtr((np.asarray(x, dtype=float) - self.mean) / self.std))


@dataclass(frozen=True)
class GammaApprox:
    rate: float
    shape: float

    def __post_init__(self):
        if not (self.rate > 0 and self.shape > 0):
            raise ValueError('GammaApprox rate and shape must be positive')

    def pdf(self, x):
        if x <= 0:
            return 1.0 * self.rate if (x == 0 and self.shape == 1) else 0.0

        return math.exp(self.shape * math.log(self.rate) + (self.shape - 1) * math.log(x)
                        - self.rate * x - special.gammaln(self.shape))

    def cdf(self, x):
        return special.gammainc(self.shape, self.rate * np.maximum(np.asarray(x, dtype=float), 0.0))


@dataclass(frozen=True)
class PilotModel:
    nPilots: int = 1
    pPilot: float = 1.0

    def __post_init__(self):
        if self.nPilots < 1:
            raise ValueError('at least one pilot symbol is required')

        if not self.pPilot > 0:
            raise ValueError('pilot power must be positive')


# ------------------------------------------------------------------------------
# pdfSumGain
# param d - sum gain distribution
# param x - gain, x >= 0
# return exact f_G(x)
# ------------------------------------------------------------------------------
def pdfSumGain(d, x):
    if x < 0:
        raise ValueError('sum gain is nonnegative')

    if x == 0:
        return d.model.sumPdfAtZero(d.nR)

    if math.isinf(x):
        return 0.0

    return math.exp(d.model.logSumPdf(x, d.nR))


def cdfSumGain(d, x):
    if x < 0:
        raise ValueError('sum gain is nonnegative')

    if math.isinf(x):
        return 1.0

    return float(d.model.sumCdf(x, d.nR))


def sfSumGain(d, x):
    if math.isinf(x):
        return 0.0

    return float(d.model.sumSf(x, d.nR))


# ------------------------------------------------------------------------------
# quantileSumGain
# Inverse CDF by bracketed root finding. The upper half is solved on the
# survival function to keep resolution close to u = 1.
# param d - sum gain distribution
# param u - probability level in [0, 1]
# return x with F_G(x) = u, 0 for u = 0 and +inf for u = 1
# ------------------------------------------------------------------------------
def quantileSumGain(d, u):
    if u <= 0.0:
        return 0.0

    if u >= 1.0:
        return math.inf

    if u <= 0.5:
        target = lambda x: cdfSumGain(d, x) - u
    else:
        target = lambda x: (1.0 - u) - sfSumGain(d, x)

    hi = d.mean + d.std
    while target(hi) < 0:
        hi *= 2.0

    return optimize.brentq(target, 0.0, hi, xtol=QUANTILE_TOL, rtol=4 * np.finfo(float).eps)


# ------------------------------------------------------------------------------
# cltParams
# Gaussian approximation N(N_r zeta, N_r nu^2) of the sum gain
# ------------------------------------------------------------------------------
def cltParams(model, nR):
    zeta, nu2 = model.momentsPerAntenna()
    return GaussianApprox(mean=nR * zeta, variance=nR * nu2)


# ------------------------------------------------------------------------------
# gammaParams
# Moment matched Gamma approximation: rate zeta/nu^2, shape N_r zeta^2/nu^2.
# Exact for Rayleigh (rate 1/omega, shape N_r).
# ------------------------------------------------------------------------------
def gammaParams(model, nR):
    if isinstance(model, rayleighFading):
        return GammaApprox(rate=1.0 / model.omega, shape=float(nR))

    zeta, nu2 = model.momentsPerAntenna()
    return GammaApprox(rate=zeta / nu2, shape=nR * zeta ** 2 / nu2)


# ------------------------------------------------------------------------------
# sampleSumGain
# param d - sum gain distribution
# param rng - caller owned numpy Generator
# param size - number of draws, None for a single float
# ------------------------------------------------------------------------------
def sampleSumGain(d, rng, size=None):
    shape = (d.nR,) if size is None else (size, d.nR)
    gains = d.model.sampleAntennaGains(rng, shape).sum(axis=-1)

    if size is None:
        return float(gains)

    return gains


# ------------------------------------------------------------------------------
# sampleJointGainEstimate
# Draw the true gain and its pilot based estimate. n_p pilots of power p_pilot
# are averaged and the linear MMSE estimate of h is formed; the estimation
# error variance is omega / (1 + n_p p_pilot omega).
# param d - SISO Rayleigh sum gain distribution
# param pilot - PilotModel
# param rng - caller owned numpy Generator
# param size - number of pairs, None for a single pair
# return (G, G_est)
# ------------------------------------------------------------------------------
def sampleJointGainEstimate(d, pilot, rng, size=None):
    if d.nR != 1 or not isinstance(d.model, rayleighFading):
        raise unsupportedConfigError('imperfect CSIR is modelled for SISO Rayleigh links only')

    omega = d.model.omega
    shape = () if size is None else (size,)

    h = math.sqrt(omega / 2.0) * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
    noise = math.sqrt(1.0 / (2.0 * pilot.nPilots)) * (
        rng.standard_normal(shape) + 1j * rng.standard_normal(shape))

    root = math.sqrt(pilot.pPilot)
    observation = root * h + noise
    hEst = root * omega / (pilot.pPilot * omega + 1.0 / pilot.nPilots) * observation

    gain = np.abs(h) ** 2
    gainEst = np.abs(hEst) ** 2

    if size is None:
        return float(gain), float(gainEst)

    return gain, gainEst

# ------------------------------------ EOF -------------------------------------
