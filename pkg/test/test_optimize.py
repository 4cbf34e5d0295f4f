import math
import unittest

from fastHarq import analysis, channel, fbl, optimize, power
from fastHarq.rayleighFading import rayleighFading
from fastHarq.ricianFading import ricianFading
from fastHarq.harqErrors import infeasibleError


def linkSystem(model, nR, mMax, subLen=1000, bigK=500, dFb=40.0, c=0.5, pa=None):
    cfg = analysis.HarqConfig(mMax=mMax, code=fbl.CodeSpec(bigK=bigK, subLen=subLen), dFb=dFb,
                              decodeDelay=analysis.LinearDecodeDelay(c))
    return analysis.LinkSystem(dist=channel.SumGainDistribution(model, nR), pa=pa or power.PaConfig(), cfg=cfg)


def dbToLinear(db):
    return 10.0 ** (db / 10.0)


class Test_OptimizeSpec(unittest.TestCase):
    def test_defaults(self):
        opt = optimize.OptimizeSpec()
        self.assertEqual(opt.objective, 'delay')
        self.assertEqual(opt.method, 'exhaustive')

    def test_invalid(self):
        for kwargs in ({'objective': 'energy'}, {'method': 'annealing'}, {'gridPoints': 1},
                       {'queenPopulation': 3}, {'queenMutationScale': 0.0}, {'refreshFraction': 1.0}):
            with self.assertRaises(ValueError):
                optimize.OptimizeSpec(**kwargs)


class Test_Exhaustive(unittest.TestCase):
    def setUp(self):
        self.opt = optimize.OptimizeSpec(gridPoints=16)

        return super().setUp()

    def test_singleRound(self):
        system = linkSystem(rayleighFading(1.0), 2, 1)
        result = optimize.exhaustiveSearch(system, 1.0, self.opt)

        self.assertEqual(result.boundaries.interior, ())
        self.assertAlmostEqual(result.objectiveValue, 1500.0, places=9)
        self.assertEqual(result.evaluations, 0)

    def test_neverWorseThanStandard(self):
        for model in (rayleighFading(1.0), ricianFading(k=0.01, omega=1.0)):
            for mMax in (2, 3):
                system = linkSystem(model, 3, mMax, c=3.0)

                for snrDb in (-4.0, 2.0, 8.0):
                    pCons = dbToLinear(snrDb)
                    result = optimize.exhaustiveSearch(system, pCons, optimize.OptimizeSpec(gridPoints=8))
                    standard = analysis.expectedDelay(system.dist, analysis.Boundaries.standard(mMax),
                                                      system.pa, pCons, system.cfg)

                    self.assertLessEqual(result.objectiveValue, standard * (1 + 1e-7))

    def test_lowSnrGain(self):
        system = linkSystem(rayleighFading(1.0), 1, 3, c=3.0)
        pCons = dbToLinear(-30.0)

        result = optimize.exhaustiveSearch(system, pCons, optimize.OptimizeSpec(gridPoints=8))
        standard = analysis.expectedDelay(system.dist, analysis.Boundaries.standard(3), system.pa, pCons, system.cfg)

        # every packet fails: 21080 with standard HARQ, 12000 when all rounds are sent blind
        self.assertAlmostEqual(standard, 21080.0, delta=1e-3)
        self.assertAlmostEqual(result.objectiveValue, 12000.0, delta=1e-3)
        self.assertAlmostEqual(analysis.relativeGain(standard, result.objectiveValue), 9080 / 21080, places=6)

    def test_lowSnrGainLimit(self):
        pCons = dbToLinear(-30.0)
        opt = optimize.OptimizeSpec(gridPoints=5)

        for model in (rayleighFading(1.0), ricianFading(k=0.01, omega=1.0)):
            for mMax in (2, 3, 4, 5):
                system = linkSystem(model, 3, mMax, bigK=1000, dFb=40.0, c=3.0)
                result = optimize.exhaustiveSearch(system, pCons, opt)
                standard = analysis.expectedDelay(system.dist, analysis.Boundaries.standard(mMax),
                                                  system.pa, pCons, system.cfg)

                gain = analysis.relativeGain(standard, result.objectiveValue)
                self.assertAlmostEqual(gain, analysis.lowSnrGainLimit(mMax, 3.0), delta=0.01)

    def test_highSnrKeepsStandard(self):
        system = linkSystem(ricianFading(k=0.01, omega=1.0), 3, 2)
        result = optimize.exhaustiveSearch(system, dbToLinear(30.0), self.opt)

        self.assertEqual(result.boundaries.interior, (0.0,))
        self.assertTrue(result.boundaries.isStandard)

    def test_throughputAgreesWithDelay(self):
        system = linkSystem(ricianFading(k=0.01, omega=1.0), 3, 2, bigK=250, subLen=500, dFb=0.0)
        pCons = dbToLinear(2.0)

        byDelay = optimize.exhaustiveSearch(system, pCons, self.opt)
        byThroughput = optimize.exhaustiveSearch(system, pCons, optimize.OptimizeSpec(objective='throughput',
                                                                                      gridPoints=16))

        self.assertEqual(byDelay.boundaries, byThroughput.boundaries)
        self.assertAlmostEqual(byThroughput.objectiveValue,
                               analysis.throughput(250, system.errorProb(pCons), byDelay.objectiveValue),
                               places=12)

    def test_evaluationCount(self):
        system = linkSystem(rayleighFading(1.0), 2, 3)
        result = optimize.exhaustiveSearch(system, 1.0, optimize.OptimizeSpec(gridPoints=5))

        self.assertEqual(result.evaluations, math.comb(5 + 1, 2))


class Test_Queen(unittest.TestCase):
    def setUp(self):
        self.system = linkSystem(ricianFading(k=0.01, omega=1.0), 3, 2, c=3.0)
        self.pCons = dbToLinear(6.0)
        self.opt = optimize.OptimizeSpec(method='queen', queenIterations=40, seed=11)

        return super().setUp()

    def test_matchesExhaustive(self):
        queen = optimize.optimize(self.system, self.pCons, self.opt)
        exhaustive = optimize.optimize(self.system, self.pCons, optimize.OptimizeSpec())

        self.assertEqual(queen.method, 'queen')
        self.assertEqual(exhaustive.method, 'exhaustive')
        self.assertLess(abs(queen.objectiveValue - exhaustive.objectiveValue) / exhaustive.objectiveValue, 0.005)

    def test_deterministic(self):
        first = optimize.queenSearch(self.system, self.pCons, self.opt)
        second = optimize.queenSearch(self.system, self.pCons, self.opt)

        self.assertEqual(first, second)

    def test_singleRound(self):
        system = linkSystem(rayleighFading(1.0), 2, 1)
        self.assertEqual(optimize.queenSearch(system, 1.0, self.opt).boundaries.interior, ())


class Test_Constrained(unittest.TestCase):
    def test_recoversPower(self):
        system = linkSystem(ricianFading(k=0.01, omega=1.0), 3, 2)
        beta = system.errorProb(1.0)

        pCons, result = optimize.solveConstrained(system, beta, optimize.OptimizeSpec(gridPoints=8))

        self.assertAlmostEqual(pCons, 1.0, places=4)
        self.assertEqual(result.boundaries.mMax, 2)

    def test_infeasible(self):
        system = linkSystem(ricianFading(k=0.01, omega=1.0), 3, 2, pa=power.PaConfig(pMax=1e-2))

        with self.assertRaises(infeasibleError):
            optimize.solveConstrained(system, 1e-6, optimize.OptimizeSpec(gridPoints=8))


if __name__ == '__main__':
    unittest.main()
