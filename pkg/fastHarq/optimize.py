# ------------------------------------------------------------------------------
# optimize.py
# Quantization boundary optimization. Boundaries are searched as CDF levels
# 0 <= u^{M-1} <= ... <= u^1 <= 1 of the sum gain and mapped through the
# inverse CDF, so the ordering constraint is a sort. Both searches include the
# standard HARQ tuple (all levels 0), so the result is never worse than
# standard HARQ.
#
# Candidates are scored from cached tail integrals T_n(x) = Y(x, inf, n); the
# returned objective is a fresh evaluation at the winning boundaries.
# ------------------------------------------------------------------------------

import math
import logging
import itertools
from dataclasses import dataclass

import numpy as np

from . import analysis, channel, power

logger = logging.getLogger(__name__)

OBJECTIVES = ('delay', 'throughput')
METHODS = ('exhaustive', 'queen')

# Lattice resolution of the queen search levels
QUEEN_LATTICE = 4096
TIE_REL_TOL = 1e-12


@dataclass(frozen=True)
class OptimizeSpec:
    objective: str = 'delay'
    gridPoints: int = 64
    queenPopulation: int = 20
    queenIterations: int = 200
    queenMutationScale: float = 0.05
    refreshFraction: float = 0.25
    seed: int = 0
    method: str = 'exhaustive'

    def __post_init__(self):
        if self.objective not in OBJECTIVES:
            raise ValueError('objective must be one of {}'.format(OBJECTIVES))

        if self.method not in METHODS:
            raise ValueError('method must be one of {}'.format(METHODS))

        if self.gridPoints < 2:
            raise ValueError('the quantile grid needs at least 2 points')

        if self.queenPopulation < 4:
            raise ValueError('the queen population needs at least 4 members')

        if not 0 < self.queenMutationScale < 1:
            raise ValueError('mutation scale must lie in (0, 1)')

        if not 0 <= self.refreshFraction < 1:
            raise ValueError('refresh fraction must lie in [0, 1)')


@dataclass(frozen=True)
class OptimResult:
    boundaries: analysis.Boundaries
    objectiveValue: float
    method: str
    evaluations: int


# ------------------------------------------------------------------------------
# _tailCache
# Memoised quantiles and tail integrals keyed by CDF level
# ------------------------------------------------------------------------------
class _tailCache:

    def __init__(self, system, pCons):
        self._system = system
        self._pCons = pCons
        self._gain = {}
        self._tail = {}

    def gain(self, u):
        if u not in self._gain:
            self._gain[u] = channel.quantileSumGain(self._system.dist, u)

        return self._gain[u]

    def tail(self, x, n):
        key = (x, n)
        if key not in self._tail:
            self._tail[key] = self._system.tailIntegral(x, n, self._pCons)

        return self._tail[key]


class _scorer:

    def __init__(self, system, pCons, objective):
        self.system = system
        self.pCons = pCons
        self.objective = objective
        self.cache = _tailCache(system, pCons)
        self.errorProb = system.errorProb(pCons)
        self.evaluations = 0

    def boundaries(self, levels):
        return analysis.Boundaries.fromInterior(
            [self.cache.gain(u) for u in sorted(levels, reverse=True)])

    # --------------------------------------------------------------------------
    # score
    # param levels - M-1 CDF levels
    # return value to minimise: delay, or minus the throughput
    # --------------------------------------------------------------------------
    def score(self, levels):
        self.evaluations += 1
        b = self.boundaries(levels)
        theta = self.system.thetaTable(b, self.pCons, tails=self.cache.tail)
        delay = analysis.delayFromTable(self.system.cfg, theta)

        if self.objective == 'delay':
            return delay

        return -analysis.throughput(self.system.cfg.code.bigK, self.errorProb, delay)

    def result(self, levels, method):
        b = self.boundaries(levels)
        delay = analysis.expectedDelay(self.system.dist, b, self.system.pa, self.pCons,
                                       self.system.cfg, asymptotic=self.system.asymptotic)

        value = delay
        if self.objective == 'throughput':
            value = analysis.throughput(self.system.cfg.code.bigK, self.errorProb, delay)

        return OptimResult(boundaries=b, objectiveValue=value, method=method,
                           evaluations=self.evaluations)


def _improves(candidate, best):
    return candidate < best - TIE_REL_TOL * abs(best)


# ------------------------------------------------------------------------------
# exhaustiveSearch
# Scores every ordered tuple of M-1 levels on linspace(0, 1, gridPoints); the
# level 1 maps to q = +inf, which empties the regions above it
# param system - analysis.LinkSystem
# param pCons - consumed power
# param opt - OptimizeSpec
# return OptimResult
# ------------------------------------------------------------------------------
def exhaustiveSearch(system, pCons, opt):
    mMax = system.cfg.mMax
    scorer = _scorer(system, pCons, opt.objective)

    if mMax == 1:
        return scorer.result((), 'exhaustive')

    grid = np.linspace(0.0, 1.0, opt.gridPoints)
    total = math.comb(opt.gridPoints + mMax - 2, mMax - 1)
    report = max(1, total // 10)

    best, bestLevels = math.inf, None

    for count, index in enumerate(itertools.combinations_with_replacement(range(opt.gridPoints), mMax - 1)):
        levels = tuple(float(grid[k]) for k in index)
        value = scorer.score(levels)

        if bestLevels is None or _improves(value, best):
            best, bestLevels = value, levels

        if (count + 1) % report == 0:
            logger.info('exhaustive search %d/%d, best %.6g', count + 1, total, best)

    return scorer.result(bestLevels, 'exhaustive')


def _snap(levels):
    return tuple(sorted(float(round(u * QUEEN_LATTICE)) / QUEEN_LATTICE for u in np.clip(levels, 0.0, 1.0)))


# ------------------------------------------------------------------------------
# queenSearch
# Population search around the best candidate found so far (the queen):
# every generation perturbs the queen's levels with Gaussian noise of scale
# queenMutationScale and replaces refreshFraction of the population with
# fresh uniform tuples. Deterministic for a given seed.
# ------------------------------------------------------------------------------
def queenSearch(system, pCons, opt):
    mMax = system.cfg.mMax
    scorer = _scorer(system, pCons, opt.objective)

    if mMax == 1:
        return scorer.result((), 'queen')

    rng = np.random.default_rng(opt.seed)
    width = mMax - 1

    population = [(0.0,) * width] + [_snap(rng.random(width)) for _ in range(opt.queenPopulation - 1)]

    queen, queenValue = None, math.inf
    for levels in population:
        value = scorer.score(levels)
        if queen is None or _improves(value, queenValue):
            queen, queenValue = levels, value

    nFresh = int(round(opt.refreshFraction * (opt.queenPopulation - 1)))
    nMutants = opt.queenPopulation - 1 - nFresh

    for generation in range(opt.queenIterations):
        mutants = np.asarray(queen) + opt.queenMutationScale * rng.standard_normal((nMutants, width))
        fresh = rng.random((nFresh, width))

        for levels in itertools.chain(mutants, fresh):
            levels = _snap(levels)
            value = scorer.score(levels)

            if _improves(value, queenValue):
                queen, queenValue = levels, value

        logger.info('queen generation %d: best %.6g at levels %s', generation, queenValue, queen)

    return scorer.result(queen, 'queen')


def optimize(system, pCons, opt):
    if opt.method == 'queen':
        return queenSearch(system, pCons, opt)

    return exhaustiveSearch(system, pCons, opt)


# ------------------------------------------------------------------------------
# solveConstrained
# Find the consumed power meeting the error target, then optimize the
# boundaries at that power; the error probability does not depend on them
# param beta - target error probability
# return (pCons, OptimResult)
# ------------------------------------------------------------------------------
def solveConstrained(system, beta, opt):
    pCons = power.solvePConsForBeta(system, beta)
    return pCons, optimize(system, pCons, opt)

# ------------------------------------ EOF -------------------------------------
