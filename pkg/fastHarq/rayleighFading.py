# ------------------------------------------------------------------------------
# rayleighFading.py
# Rayleigh fading: exponential antenna gains with mean omega, Gamma(N_r, omega)
# sum gain.
# ------------------------------------------------------------------------------

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .fadingAbstract import fadingAbstract


@dataclass(frozen=True)
class rayleighFading(fadingAbstract):
    omega: float = 1.0

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError('Rayleigh omega must be positive')

    @property
    def name(self):
        return 'rayleigh'

    def momentsPerAntenna(self):
        return self.omega, self.omega ** 2

    def sampleAntennaGains(self, rng, size):
        return rng.exponential(scale=self.omega, size=size)

    def logSumPdf(self, x, nR):
        return ((nR - 1) * math.log(x) - x / self.omega
                - nR * math.log(self.omega) - special.gammaln(nR))

    def sumPdfAtZero(self, nR):
        return 1.0 / self.omega if nR == 1 else 0.0

    # closed form 1 - e^{-x/omega} sum_{i<N_r} (x/omega)^i / i!
    def sumCdf(self, x, nR):
        return special.gammainc(nR, np.asarray(x, dtype=float) / self.omega)

    def sumSf(self, x, nR):
        return special.gammaincc(nR, np.asarray(x, dtype=float) / self.omega)

# ------------------------------------ EOF -------------------------------------
