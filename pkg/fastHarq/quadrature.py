# ------------------------------------------------------------------------------
# quadrature.py
# Adaptive Gauss-Kronrod integration (QUADPACK through scipy) over a finite
# interval split into smooth panels. Failures to reach the tolerance are
# reported as quadratureError instead of warnings.
# ------------------------------------------------------------------------------

import math
import logging

from scipy import integrate

from .harqErrors import quadratureError

logger = logging.getLogger(__name__)

ABS_TOL = 1e-10
REL_TOL = 1e-10
SUBINTERVAL_LIMIT = 200

# Error estimate still accepted when QUADPACK flags round-off
_ACCEPTED_ERROR = 1e-8


# ------------------------------------------------------------------------------
# integratePanels
# param func - scalar integrand
# param a, b - finite limits, a <= b
# param points - breakpoints where the integrand has a kink or a sharp slope
# return integral estimate
# ------------------------------------------------------------------------------
def integratePanels(func, a, b, points=()):
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError('integration limits must be finite, truncate first')

    if b <= a:
        return 0.0

    edges = sorted({a, b, *(p for p in points if a < p < b)})
    total = 0.0

    for lo, hi in zip(edges[:-1], edges[1:]):
        result = integrate.quad(func, lo, hi, epsabs=ABS_TOL, epsrel=REL_TOL,
                                limit=SUBINTERVAL_LIMIT, full_output=1)
        value, error = result[0], result[1]

        if len(result) > 3 and error > _ACCEPTED_ERROR:
            raise quadratureError(
                'quadrature on [{}, {}] did not converge: {}'.format(lo, hi, result[3]),
                interval=(lo, hi), estimate=value)

        if len(result) > 3:
            logger.debug('accepted panel [%g, %g] with error %g: %s', lo, hi, error, result[3])

        total += value

    return total

# ------------------------------------ EOF -------------------------------------
