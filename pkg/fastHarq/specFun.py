# ------------------------------------------------------------------------------
# specFun.py
# Scalar special functions used by every analytical formula: the Gaussian
# Q-function, modified Bessel functions of the first kind, Kummer's confluent
# hypergeometric function and the upper incomplete gamma function.
#
# The heavy lifting is done by scipy.special; this module adds the domain
# checks, the overflow signalling and the log-domain fallbacks the sum-gain
# density needs for hundreds of antennas.
# ------------------------------------------------------------------------------

import math
import logging
from dataclasses import dataclass

import numpy as np
from scipy import special

from .harqErrors import specialFunctionError

logger = logging.getLogger(__name__)

MAX_TERMS = 10_000

# Smallest scaled Bessel value trusted before switching to the log series
_TINY = 1e-280


@dataclass(frozen=True)
class Accuracy:
    absTol: float = 1e-12
    relTol: float = 1e-10

    def __post_init__(self):
        if not (self.absTol > 0 and self.relTol > 0):
            raise ValueError('Accuracy tolerances must be strictly positive')


DEFAULT_ACCURACY = Accuracy()


def _toOutput(x, result):
    if np.ndim(x) == 0:
        return float(result)

    return result


# ------------------------------------------------------------------------------
# qFunction
# Gaussian tail probability Q(x) = P(N(0,1) > x), array safe
# param x - scalar or array of finite reals
# return probability in [0, 1], same shape as x
# ------------------------------------------------------------------------------
def qFunction(x):
    x = np.asarray(x, dtype=float)

    return _toOutput(x, 0.5 * special.erfc(x / math.sqrt(2.0)))


# ------------------------------------------------------------------------------
# besselI
# Modified Bessel function of the first kind I_n(x)
# param n - nonnegative integer order
# param x - nonnegative argument
# param scaled - return e^{-x} I_n(x) instead
# return I_n(x), raises specialFunctionError if the unscaled value overflows
# ------------------------------------------------------------------------------
def besselI(n, x, scaled=False):
    if n < 0 or int(n) != n:
        raise ValueError('Bessel order must be a nonnegative integer')

    if x < 0:
        raise ValueError('Bessel argument must be nonnegative')

    if scaled:
        return float(special.ive(n, x))

    value = float(special.iv(n, x))

    if not math.isfinite(value):
        raise specialFunctionError(
            'I_{}({}) exceeds the representable range, use scaled=True'.format(n, x),
            partialSum=float(special.ive(n, x)))

    return value


# ------------------------------------------------------------------------------
# logBesselI
# log I_n(x) without overflow for large x or underflow for large n
# param n - nonnegative integer order
# param x - nonnegative argument
# param accuracy - series tolerance
# return log I_n(x), -inf when I_n(x) = 0
# ------------------------------------------------------------------------------
def logBesselI(n, x, accuracy=DEFAULT_ACCURACY):
    if x < 0:
        raise ValueError('Bessel argument must be nonnegative')

    if x == 0:
        return 0.0 if n == 0 else -math.inf

    scaledValue = float(special.ive(n, x))

    if scaledValue > _TINY:
        return math.log(scaledValue) + x

    # small argument against a large order: power series around zero
    quarterSq = 0.25 * x * x
    term = 1.0
    total = 1.0

    for k in range(1, MAX_TERMS):
        term *= quarterSq / (k * (n + k))
        total += term

        if term <= accuracy.relTol * total:
            return n * math.log(0.5 * x) - special.gammaln(n + 1) + math.log(total)

    raise specialFunctionError('log I_{}({}) series did not converge'.format(n, x),
                               partialSum=total)


def _kummerSeries(a, b, x, accuracy):
    term = 1.0
    total = 1.0

    for k in range(MAX_TERMS):
        if a + k == 0:
            return total

        term *= (a + k) / (b + k) * x / (k + 1)
        total += term

        if k + 1 > abs(x) and abs(term) <= accuracy.absTol + accuracy.relTol * abs(total):
            return total

    raise specialFunctionError(
        '1F1({}; {}; {}) did not converge in {} terms'.format(a, b, x, MAX_TERMS),
        partialSum=total)


# ------------------------------------------------------------------------------
# kummer1F1
# Confluent hypergeometric function 1F1(a; b; x) by its Taylor series. The
# Kummer transform 1F1(a;b;x) = e^x 1F1(b-a;b;-x) is used whenever it removes
# the sign alternation of the direct series or turns it into a polynomial.
# param a, b, x - real parameters, b not a nonpositive integer
# param accuracy - series tolerance
# return 1F1(a; b; x)
# ------------------------------------------------------------------------------
def kummer1F1(a, b, x, accuracy=DEFAULT_ACCURACY):
    if b <= 0 and float(b).is_integer():
        raise ValueError('1F1 is undefined for nonpositive integer b')

    if x == 0:
        return 1.0

    transformedTerminates = (b - a) <= 0 and float(b - a).is_integer()
    directTerminates = a <= 0 and float(a).is_integer()

    if not directTerminates and (x < 0 or transformedTerminates):
        return math.exp(x) * _kummerSeries(b - a, b, -x, accuracy)

    return _kummerSeries(a, b, x, accuracy)


# ------------------------------------------------------------------------------
# upperGamma
# Upper incomplete gamma function Gamma(s, x) = int_x^inf t^{s-1} e^{-t} dt
# param s - positive shape
# param x - nonnegative lower limit
# param regularized - divide by Gamma(s)
# ------------------------------------------------------------------------------
def upperGamma(s, x, regularized=False):
    if s <= 0:
        raise ValueError('upperGamma needs s > 0')

    if x < 0:
        raise ValueError('upperGamma needs x >= 0')

    tail = float(special.gammaincc(s, x))

    if regularized:
        return tail

    return tail * float(special.gamma(s))

# ------------------------------------ EOF -------------------------------------
