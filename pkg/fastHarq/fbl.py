# ------------------------------------------------------------------------------
# fbl.py
# Finite-blocklength decoding error of the first n rounds of an incremental
# redundancy codeword, conditioned on the sum channel gain, its step function
# limit for long codes, and its tangent ramp around the decoding threshold.
# ------------------------------------------------------------------------------

import math
from dataclasses import dataclass

import numpy as np

from . import specFun


@dataclass(frozen=True)
class CodeSpec:
    bigK: float
    subLen: int
    thirdOrder: bool = False

    def __post_init__(self):
        if not self.bigK > 0:
            raise ValueError('number of information nats must be positive')

        if int(self.subLen) != self.subLen or self.subLen < 1:
            raise ValueError('sub-codeword length must be a positive integer')

    # --------------------------------------------------------------------------
    # rate
    # param n - rounds received
    # return equivalent rate K / (n L) in npcu
    # --------------------------------------------------------------------------
    def rate(self, n):
        return self.bigK / (n * self.subLen)

    def threshold(self, n, p):
        if p <= 0:
            return math.inf

        return math.expm1(self.rate(n)) / p


# ------------------------------------------------------------------------------
# roundErrorProb
# Normal approximation of the decoding error after n rounds,
#   Q( sqrt(nL) (log(1 + g p) - K/(nL)) / sqrt(1 - (1 + g p)^-2) ),
# with the optional log(nL)/(2nL) third order term. g = 0 gives 1.
# param g - sum channel gain, scalar or array
# param n - rounds combined
# param code - CodeSpec
# param p - radiated power
# return error probability, same shape as g
# ------------------------------------------------------------------------------
def roundErrorProb(g, n, code, p):
    if n < 1:
        raise ValueError('at least one round must be combined')

    g = np.asarray(g, dtype=float)
    snr = g * p
    blockLen = n * code.subLen

    capacity = np.log1p(snr)
    dispersion = -np.expm1(-2.0 * capacity)

    margin = capacity - code.rate(n)
    if code.thirdOrder:
        margin = margin + math.log(blockLen) / (2.0 * blockLen)

    with np.errstate(divide='ignore', invalid='ignore'):
        arg = math.sqrt(blockLen) * margin / np.sqrt(dispersion)

    arg = np.where(snr > 0, arg, -np.inf)
    result = np.asarray(specFun.qFunction(arg))

    if result.ndim == 0:
        return float(result)

    return result


# ------------------------------------------------------------------------------
# asymptoticDecodable
# return True where g exceeds (e^{K/(nL)} - 1) / p, the threshold itself is
# not decodable
# ------------------------------------------------------------------------------
def asymptoticDecodable(g, n, code, p):
    decodable = np.asarray(g, dtype=float) > code.threshold(n, p)

    if decodable.ndim == 0:
        return bool(decodable)

    return decodable


@dataclass(frozen=True)
class LinearizationConstants:
    alpha: float
    mu: float

    def __post_init__(self):
        if not self.mu > 0:
            raise ValueError('ramp slope mu must be positive')

    @property
    def c(self):
        return self.alpha - 0.5 / self.mu

    @property
    def d(self):
        return self.alpha + 0.5 / self.mu

    # --------------------------------------------------------------------------
    # ramp
    # U(x) = 1 below c, 0 above d, 1/2 - mu (x - alpha) in between
    # param x - gain, scalar or array
    # --------------------------------------------------------------------------
    def ramp(self, x):
        value = np.clip(0.5 - self.mu * (np.asarray(x, dtype=float) - self.alpha), 0.0, 1.0)

        if value.ndim == 0:
            return float(value)

        return value


# ------------------------------------------------------------------------------
# linearizationConstants
# Tangent of the round error at its midpoint alpha = (e^{K/(nL)} - 1) / p,
# where the slope is -mu = -p sqrt(nL / (2 pi (e^{2K/(nL)} - 1)))
# param n - rounds combined
# param code - CodeSpec
# param p - radiated power, > 0
# ------------------------------------------------------------------------------
def linearizationConstants(n, code, p):
    if n < 1:
        raise ValueError('at least one round must be combined')

    if not p > 0:
        raise ValueError('linearization needs a positive radiated power')

    rate = code.rate(n)
    blockLen = n * code.subLen

    return LinearizationConstants(
        alpha=math.expm1(rate) / p,
        mu=p * math.sqrt(blockLen / (2.0 * math.pi * math.expm1(2.0 * rate))))

# ------------------------------------ EOF -------------------------------------
