# ------------------------------------------------------------------------------
# power.py
# Power amplifier efficiency model mapping the consumed power to the radiated
# power at each antenna, and the search for the consumed power that meets an
# error probability target.
# ------------------------------------------------------------------------------

import math
import logging
from dataclasses import dataclass

from .harqErrors import infeasibleError, nonBracketedError

logger = logging.getLogger(__name__)

DEFAULT_BRACKET = (1e-6, 1e6)
TARGET_REL_TOL = 1e-6
LOG_BRACKET_TOL = 1e-10


@dataclass(frozen=True)
class PaConfig:
    epsilon: float = 1.0
    theta: float = 0.0
    pMax: float = math.inf

    def __post_init__(self):
        if not 0 < self.epsilon <= 1:
            raise ValueError('PA efficiency epsilon must lie in (0, 1]')

        if not 0 <= self.theta < 1:
            raise ValueError('PA class parameter theta must lie in [0, 1)')

        if not self.pMax > 0:
            raise ValueError('PA maximum output power must be positive')

        if self.theta > 0 and not math.isfinite(self.pMax):
            raise ValueError('PA class parameter theta > 0 needs a finite maximum output power')

    @property
    def isIdeal(self):
        return self.epsilon == 1 and self.theta == 0


# ------------------------------------------------------------------------------
# outputPower
# P = (epsilon p_cons / p_max^theta)^(1 / (1 - theta)), not clamped at p_max
# param pa - PaConfig
# param pCons - consumed power, >= 0
# return radiated power
# ------------------------------------------------------------------------------
def outputPower(pa, pCons):
    if pCons < 0:
        raise ValueError('consumed power must be nonnegative')

    if pa.theta == 0:
        return pa.epsilon * pCons

    return (pa.epsilon * pCons / pa.pMax ** pa.theta) ** (1.0 / (1.0 - pa.theta))


def pConsAtMaxOutput(pa):
    return pa.pMax / pa.epsilon


# ------------------------------------------------------------------------------
# solvePConsForBeta
# Bisection on log10(p_cons) for the consumed power whose error probability
# equals beta. The bracket is widened by one decade per side once before
# giving up.
# param system - anything with errorProb(pCons), strictly decreasing in pCons
# param beta - target error probability in (0, 1)
# param bracket - initial (low, high) consumed power
# return consumed power
# ------------------------------------------------------------------------------
def solvePConsForBeta(system, beta, bracket=DEFAULT_BRACKET):
    if not 0 < beta < 1:
        raise ValueError('target error probability must lie in (0, 1)')

    pa = system.pa
    saturation = pConsAtMaxOutput(pa)

    if math.isfinite(saturation) and system.errorProb(saturation) > beta:
        raise infeasibleError(
            'error probability {:g} is unreachable below P_max = {:g}'.format(beta, pa.pMax))

    lo, hi = math.log10(bracket[0]), math.log10(bracket[1])
    excess = lambda x: system.errorProb(10.0 ** x) - beta

    fLo, fHi = excess(lo), excess(hi)

    if not (fLo > 0 > fHi):
        lo, hi = lo - 1.0, hi + 1.0
        fLo, fHi = excess(lo), excess(hi)
        logger.debug('widened power bracket to [1e%g, 1e%g]', lo, hi)

        if not (fLo > 0 > fHi):
            raise nonBracketedError(
                'error probability does not cross {:g} on the power bracket'.format(beta),
                bracket=(10.0 ** lo, 10.0 ** hi), values=(fLo + beta, fHi + beta))

    while True:
        mid = 0.5 * (lo + hi)
        fMid = excess(mid)

        if abs(fMid) < TARGET_REL_TOL * beta or hi - lo < LOG_BRACKET_TOL:
            break

        if fMid > 0:
            lo = mid
        else:
            hi = mid

    pCons = 10.0 ** mid

    if outputPower(pa, pCons) > pa.pMax * (1.0 + 1e-9):
        raise infeasibleError('output power {:g} exceeds P_max = {:g}'.format(
            outputPower(pa, pCons), pa.pMax))

    logger.info('p_cons %.6g meets error target %g', pCons, beta)
    return pCons

# ------------------------------------ EOF -------------------------------------
