# ------------------------------------------------------------------------------
# estimate.py
# Sample mean estimates with their standard error, accumulated block by block
# with the pairwise mean/variance update so that the merged result depends on
# the block order only.
# ------------------------------------------------------------------------------

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SimEstimate:
    mean: float
    stdError: float
    nSamples: int

    def __post_init__(self):
        if self.nSamples < 1:
            raise ValueError('an estimate needs at least one sample')

    # --------------------------------------------------------------------------
    # within
    # param value - reference value
    # param sigmas - band width in standard errors
    # param floor - absolute slack added to the band
    # return True if value lies inside mean +- sigmas * stdError
    # --------------------------------------------------------------------------
    def within(self, value, sigmas=3.0, floor=0.0):
        return abs(self.mean - value) <= sigmas * self.stdError + floor


class runningStats:

    def __init__(self):
        self.count = 0
        self.mean = 0.0
        self._m2 = 0.0

    # --------------------------------------------------------------------------
    # update
    # Merge a block of observations into the running moments
    # param values - 1-D array of observations, may be empty
    # --------------------------------------------------------------------------
    def update(self, values):
        values = np.asarray(values, dtype=float)
        n = values.size

        if n == 0:
            return

        blockMean = float(values.mean())
        blockM2 = float(((values - blockMean) ** 2).sum())

        total = self.count + n
        delta = blockMean - self.mean

        self.mean += delta * n / total
        self._m2 += blockM2 + delta * delta * self.count * n / total
        self.count = total

    def variance(self):
        if self.count < 2:
            return 0.0

        return self._m2 / (self.count - 1)

    def estimate(self):
        if self.count == 0:
            return None

        return SimEstimate(mean=self.mean,
                           stdError=math.sqrt(self.variance() / self.count),
                           nSamples=self.count)

# ------------------------------------ EOF -------------------------------------
