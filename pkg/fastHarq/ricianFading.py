# ------------------------------------------------------------------------------
# ricianFading.py
# Rician fading with factor k and mean power omega. The sum gain over N_r
# antennas is a scaled non-central chi-square law,
#   G = omega / (2 (k + 1)) * chi'^2(2 N_r, 2 N_r k),
# whose density is evaluated in the Bessel form with the exponentials
# recombined in log space.
# ------------------------------------------------------------------------------

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from . import specFun
from .fadingAbstract import fadingAbstract
from .rayleighFading import rayleighFading


@dataclass(frozen=True)
class ricianFading(fadingAbstract):
    k: float = 0.0
    omega: float = 1.0

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError('Rician omega must be positive')

        if not self.k >= 0:
            raise ValueError('Rician factor k must be nonnegative')

    @property
    def name(self):
        return 'rician'

    def _rayleigh(self):
        return rayleighFading(self.omega)

    # --------------------------------------------------------------------------
    # rawMoment
    # S(n) = (omega/(k+1))^n Gamma(1+n) e^{-k} 1F1(n+1; 1; k)
    # param n - moment order
    # return E[g^n] of one antenna gain
    # --------------------------------------------------------------------------
    def rawMoment(self, n):
        scale = (self.omega / (self.k + 1.0)) ** n
        return scale * math.gamma(1 + n) * math.exp(-self.k) * specFun.kummer1F1(n + 1, 1, self.k)

    def momentsPerAntenna(self):
        zeta = self.rawMoment(1)
        nu2 = self.rawMoment(2) - zeta ** 2
        return zeta, nu2

    def sampleAntennaGains(self, rng, size):
        los = math.sqrt(self.k * self.omega / (self.k + 1.0))
        s = math.sqrt(self.omega / (2.0 * (self.k + 1.0)))

        re = los + s * rng.standard_normal(size)
        im = s * rng.standard_normal(size)

        return re * re + im * im

    def logSumPdf(self, x, nR):
        if self.k == 0:
            return self._rayleigh().logSumPdf(x, nR)

        kp1 = self.k + 1.0
        z = 2.0 * math.sqrt(self.k * kp1 * nR * x / self.omega)

        return (math.log(kp1) - self.k * nR - math.log(self.omega)
                + 0.5 * (nR - 1) * math.log(kp1 * x / (self.k * nR * self.omega))
                - kp1 * x / self.omega
                + specFun.logBesselI(nR - 1, z))

    def sumPdfAtZero(self, nR):
        if nR > 1:
            return 0.0

        return (self.k + 1.0) * math.exp(-self.k) / self.omega

    def _chiSquareArgs(self, x, nR):
        scaled = 2.0 * (self.k + 1.0) * np.asarray(x, dtype=float) / self.omega
        return scaled, 2 * nR, 2.0 * nR * self.k

    def sumCdf(self, x, nR):
        if self.k == 0:
            return self._rayleigh().sumCdf(x, nR)

        return stats.ncx2.cdf(*self._chiSquareArgs(x, nR))

    def sumSf(self, x, nR):
        if self.k == 0:
            return self._rayleigh().sumSf(x, nR)

        return stats.ncx2.sf(*self._chiSquareArgs(x, nR))

# ------------------------------------ EOF -------------------------------------
