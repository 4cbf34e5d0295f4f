import math
import unittest

import numpy as np

from fastHarq import analysis, channel, fbl, power
from fastHarq.rayleighFading import rayleighFading
from fastHarq.ricianFading import ricianFading
from fastHarq.harqErrors import degenerateSuccessError, unsupportedConfigError


def harqConfig(mMax, subLen=1000, bigK=500, dFb=40.0, c=0.5):
    return analysis.HarqConfig(mMax=mMax, code=fbl.CodeSpec(bigK=bigK, subLen=subLen), dFb=dFb,
                               decodeDelay=analysis.LinearDecodeDelay(c))


class Test_Configuration(unittest.TestCase):
    def test_decodeDelayMustStartAtZero(self):
        with self.assertRaises(ValueError):
            analysis.HarqConfig(mMax=2, code=fbl.CodeSpec(bigK=500, subLen=1000),
                                decodeDelay=lambda length: length + 1.0)

    def test_decodeDelayMustBeMonotone(self):
        with self.assertRaises(ValueError):
            analysis.HarqConfig(mMax=3, code=fbl.CodeSpec(bigK=500, subLen=1000),
                                decodeDelay=lambda length: 0.0 if length == 0 else 1.0 / length)

    def test_invalidRounds(self):
        with self.assertRaises(ValueError):
            harqConfig(0)

    def test_negativeFeedback(self):
        with self.assertRaises(ValueError):
            harqConfig(2, dFb=-1.0)

    def test_cumulativeCost(self):
        np.testing.assert_allclose(harqConfig(3, c=0.5).cumulativeDecodeCost(), [0, 500, 1500, 3000])


class Test_Boundaries(unittest.TestCase):
    def setUp(self):
        self.d = channel.SumGainDistribution(ricianFading(k=0.01, omega=1.0), 12)

        return super().setUp()

    def test_standard(self):
        b = analysis.Boundaries.standard(3)
        self.assertEqual(b.q, (math.inf, 0.0, 0.0, 0.0))
        self.assertTrue(b.isStandard)
        self.assertEqual(b.mMax, 3)

    def test_ordering(self):
        with self.assertRaises(ValueError):
            analysis.Boundaries((math.inf, 1.0, 2.0, 0.0))

        with self.assertRaises(ValueError):
            analysis.Boundaries((5.0, 1.0, 0.0))

        with self.assertRaises(ValueError):
            analysis.Boundaries.fromInterior([math.nan])

    def test_regionOf(self):
        b = analysis.Boundaries.fromInterior([10.0, 5.0])

        self.assertEqual(b.regionOf(20.0), 1)
        self.assertEqual(b.regionOf(10.0), 1)
        self.assertEqual(b.regionOf(7.0), 2)
        self.assertEqual(b.regionOf(5.0), 2)
        self.assertEqual(b.regionOf(0.0), 3)
        np.testing.assert_array_equal(b.regionOf(np.array([0.0, 6.0, 12.0])), [3, 2, 1])

    def test_standardRegion(self):
        self.assertEqual(analysis.Boundaries.standard(2).regionOf(3.0), 1)
        self.assertEqual(analysis.Boundaries.standard(2).regionOf(0.0), 1)

    def test_uniformRegions(self):
        for mMax in (2, 3, 4):
            b = analysis.Boundaries.uniform(self.d, mMax)
            for m in range(1, mMax + 1):
                self.assertAlmostEqual(analysis.regionProb(self.d, b, m), 1.0 / mMax, places=8)

    def test_partition(self):
        b = analysis.Boundaries.fromInterior([15.0, 11.0, 4.0])
        total = sum(analysis.regionProb(self.d, b, m) for m in range(1, 5))
        self.assertAlmostEqual(total, 1.0, places=12)

    def test_emptyRegion(self):
        b = analysis.Boundaries.fromInterior([8.0, 8.0])
        self.assertEqual(analysis.regionProb(self.d, b, 2), 0.0)

        with self.assertRaises(ValueError):
            analysis.regionProb(self.d, b, 4)


class Test_PacketDelay(unittest.TestCase):
    def test_singleShot(self):
        cfg = harqConfig(1)
        self.assertEqual(analysis.packetDelay(cfg, 1, 1), 1000 + 500)

    def test_earlyStop(self):
        cfg = harqConfig(3)
        # silent round 1, decode round 2, success: 2L + c 2L + D
        self.assertEqual(analysis.packetDelay(cfg, 2, 2), 2000 + 1000 + 40)
        # decode rounds 1..3, last round feeds nothing back
        self.assertEqual(analysis.packetDelay(cfg, 3, 1), 3000 + 500 + 1000 + 1500 + 80)

    def test_vectorised(self):
        cfg = harqConfig(2)
        delays = analysis.packetDelay(cfg, np.array([1, 2, 2]), np.array([1, 1, 2]))
        np.testing.assert_allclose(delays, [1540, 3540, 3000])


class Test_LinkMetrics(unittest.TestCase):
    def setUp(self):
        self.d = channel.SumGainDistribution(rayleighFading(1.0), 3)
        self.pa = power.PaConfig()
        self.cfg = harqConfig(2)

        return super().setUp()

    def test_emptyRegionTheta(self):
        b = analysis.Boundaries.fromInterior([2.0])
        self.assertEqual(analysis.yIntegral(self.d, 2.0, 2.0, 1, self.cfg, self.pa, 1.0), 0.0)
        self.assertEqual(analysis.thetaIm(self.d, analysis.Boundaries.fromInterior([0.0]), self.pa, 1.0,
                                          self.cfg, 1, 2), 0.0)
        self.assertGreater(analysis.thetaIm(self.d, b, self.pa, 1.0, self.cfg, 0, 2), 0.0)

    def test_fullRangeTheta(self):
        b = analysis.Boundaries.standard(2)
        theta = analysis.thetaIm(self.d, b, self.pa, 1.0, self.cfg, 2, 1)

        self.assertAlmostEqual(theta, analysis.errorProb(self.d, self.pa, 1.0, self.cfg), places=12)

    def test_thetaNonincreasingInRounds(self):
        b = analysis.Boundaries.fromInterior([1.5])
        for pCons in (0.1, 0.3, 1.0):
            for m in (1, 2):
                values = [analysis.thetaIm(self.d, b, self.pa, pCons, self.cfg, i, m) for i in range(3)]
                for before, after in zip(values[:-1], values[1:]):
                    self.assertLessEqual(after, before + 1e-12)

    def test_highPowerError(self):
        self.assertLess(analysis.errorProb(self.d, self.pa, 1e6, self.cfg), 1e-6)

    def test_errorIndependentOfBoundaries(self):
        rng = np.random.default_rng(4)
        system = analysis.LinkSystem(dist=self.d, pa=self.pa, cfg=harqConfig(3))
        reference = system.errorProb(1.0)

        for _ in range(5):
            b = analysis.Boundaries.fromInterior(sorted(rng.uniform(0.0, 6.0, 2), reverse=True))
            theta = system.thetaTable(b, 1.0)

            self.assertEqual(system.metrics(b, 1.0).errorProb, reference)
            self.assertAlmostEqual(theta[3, 1:].sum(), reference, delta=1e-9)

    def test_singleShotDelay(self):
        cfg = harqConfig(1)
        b = analysis.Boundaries.standard(1)

        self.assertAlmostEqual(analysis.expectedDelay(self.d, b, self.pa, 1.0, cfg), 1500.0, places=9)
        self.assertAlmostEqual(analysis.constrainedDelay(self.d, b, self.pa, 1.0, cfg), 1500.0, places=9)

    def test_lowSnrStandardDelay(self):
        mMax, subLen, c, dFb = 3, 1000, 0.5, 40.0
        cfg = harqConfig(mMax, c=c, dFb=dFb)
        b = analysis.Boundaries.standard(mMax)

        expected = mMax * subLen + mMax * (mMax + 1) * c * subLen / 2 + (mMax - 1) * dFb
        delay = analysis.expectedDelay(self.d, b, self.pa, 1e-4, cfg)

        self.assertAlmostEqual(delay / expected, 1.0, places=6)

    def test_lowSnrFastDelay(self):
        mMax, subLen, c = 3, 1000, 0.5
        cfg = harqConfig(mMax, c=c)
        b = analysis.Boundaries.fromInterior([math.inf, math.inf])

        delay = analysis.expectedDelay(self.d, b, self.pa, 1e-4, cfg)
        self.assertAlmostEqual(delay / (mMax * subLen + c * mMax * subLen), 1.0, places=6)

    def test_highSnrDelay(self):
        cfg = harqConfig(3, dFb=0.0)
        b = analysis.Boundaries.standard(3)

        delay = analysis.expectedDelay(self.d, b, self.pa, 1e3, cfg)
        constrained = analysis.constrainedDelay(self.d, b, self.pa, 1e3, cfg)

        self.assertAlmostEqual(delay / 1500.0, 1.0, places=4)
        self.assertAlmostEqual(constrained / 1500.0, 1.0, places=4)

    def test_delayMatchesStopDistribution(self):
        cfg = harqConfig(3)
        system = analysis.LinkSystem(dist=self.d, pa=self.pa, cfg=cfg)
        b = analysis.Boundaries.fromInterior([2.0, 1.0])
        theta = system.thetaTable(b, 0.3)
        success = analysis.firstSuccessTable(cfg, theta)

        total = 0.0
        for m in range(1, 4):
            for i in range(m, 3):
                total += success[i, m] * analysis.packetDelay(cfg, i, m)
            reachLast = theta[0, 3] if m == 3 else theta[2, m]
            total += reachLast * analysis.packetDelay(cfg, 3, m)

        self.assertAlmostEqual(analysis.delayFromTable(cfg, theta) / total, 1.0, places=12)

    def test_throughput(self):
        self.assertEqual(analysis.throughput(500, 0.0, 1500.0), 500 / 1500.0)
        self.assertEqual(analysis.throughput(500, 1.0, 1500.0), 0.0)

        with self.assertRaises(ValueError):
            analysis.throughput(500, 0.0, 0.0)

    def test_metricsBundle(self):
        b = analysis.Boundaries.fromInterior([1.0])
        result = analysis.metrics(self.d, b, self.pa, 0.5, self.cfg)

        self.assertAlmostEqual(result.expectedDelay, analysis.expectedDelay(self.d, b, self.pa, 0.5, self.cfg))
        self.assertAlmostEqual(result.throughput, 500 * (1 - result.errorProb) / result.expectedDelay)
        self.assertIsNotNone(result.constrainedDelay)

    def test_neverDecoded(self):
        cfg = harqConfig(2)
        theta = np.zeros((3, 3))
        theta[:, 1] = 1.0

        with self.assertRaises(degenerateSuccessError):
            analysis._constrainedFromTable(cfg, theta)

        self.assertIsNone(analysis.metricsFromTable(cfg, theta, 1.0).constrainedDelay)

    def test_unnecessaryAtStandard(self):
        prob, energy = analysis.unnecessaryTxStats(self.d, analysis.Boundaries.standard(2), self.pa, 1.0, self.cfg)
        self.assertEqual((prob, energy), (0.0, 0.0))

        cfg = harqConfig(1)
        prob, energy = analysis.unnecessaryTxStats(self.d, analysis.Boundaries.standard(1), self.pa, 1.0, cfg)
        self.assertEqual((prob, energy), (0.0, 0.0))

    def test_unnecessaryPositive(self):
        b = analysis.Boundaries.fromInterior([3.0])
        prob, energy = analysis.unnecessaryTxStats(self.d, b, self.pa, 1.0, self.cfg)

        self.assertGreater(prob, 0.0)
        self.assertAlmostEqual(energy, prob * 1.0, places=12)

    def test_mismatchedBoundaries(self):
        with self.assertRaises(ValueError):
            analysis.expectedDelay(self.d, analysis.Boundaries.standard(3), self.pa, 1.0, self.cfg)


class Test_LongCodes(unittest.TestCase):
    def test_finiteApproachesAsymptotic(self):
        d = channel.SumGainDistribution(ricianFading(k=0.01, omega=1.0), 10)
        cfg = harqConfig(2, subLen=10 ** 5, bigK=10 ** 5, c=0.0)
        pa, pCons = power.PaConfig(), 10 ** (-0.5)

        finite = analysis.errorProb(d, pa, pCons, cfg)
        step = analysis.errorProb(d, pa, pCons, cfg, asymptotic=True)

        self.assertLess(abs(finite - step) / step, 0.01)

    def test_rayleighOutage(self):
        d = channel.SumGainDistribution(rayleighFading(1.0), 1)
        cfg = harqConfig(1, bigK=1000)

        outage = analysis.errorProb(d, power.PaConfig(), math.e - 1, cfg, asymptotic=True)
        self.assertAlmostEqual(outage, 1 - math.exp(-1), places=10)


class Test_DelayGain(unittest.TestCase):
    def test_relativeGain(self):
        self.assertEqual(analysis.relativeGain(100.0, 100.0), 0.0)
        self.assertEqual(analysis.relativeGain(100.0, 50.0), 0.5)

        with self.assertRaises(ValueError):
            analysis.relativeGain(0.0, 1.0)

    def test_lowSnrLimit(self):
        self.assertAlmostEqual(analysis.lowSnrGainLimit(2, 3.0), 3 / 11)
        self.assertAlmostEqual(analysis.lowSnrGainLimit(5, 3.0), 0.6)
        self.assertEqual(analysis.lowSnrGainLimit(1, 3.0), 0.0)

    def test_lowSnrLimitMatchesDelays(self):
        d = channel.SumGainDistribution(rayleighFading(1.0), 3)
        pa = power.PaConfig()

        for mMax in (2, 3, 4):
            cfg = harqConfig(mMax, bigK=1000, c=3.0, dFb=0.0)
            standard = analysis.expectedDelay(d, analysis.Boundaries.standard(mMax), pa, 1e-3, cfg)
            fast = analysis.expectedDelay(d, analysis.Boundaries.fromInterior([math.inf] * (mMax - 1)),
                                          pa, 1e-3, cfg)

            self.assertAlmostEqual(analysis.relativeGain(standard, fast),
                                   analysis.lowSnrGainLimit(mMax, 3.0), places=3)


class Test_ImperfectCsir(unittest.TestCase):
    def setUp(self):
        self.d = channel.SumGainDistribution(rayleighFading(1.0), 1)
        self.pa = power.PaConfig()
        self.cfg = harqConfig(2, c=1.0)
        self.b = analysis.Boundaries.fromInterior([0.25])
        self.pCons = 10 ** 0.5

        return super().setUp()

    def _delay(self, nPilots, nSamples=100000):
        return analysis.expectedDelayImperfectCsir(
            self.d, channel.PilotModel(nPilots=nPilots), self.b, self.pa, self.pCons, self.cfg,
            np.random.default_rng(21), nSamples=nSamples)

    def test_nonincreasingInPilots(self):
        estimates = [self._delay(n) for n in (1, 2, 4, 8, 16)]

        for before, after in zip(estimates[:-1], estimates[1:]):
            self.assertLessEqual(after.mean, before.mean + 2 * before.stdError)

    def test_convergesToPerfectCsir(self):
        perfect = analysis.expectedDelay(self.d, self.b, self.pa, self.pCons, self.cfg)
        estimate = self._delay(1000)

        self.assertTrue(estimate.within(perfect, sigmas=4.0, floor=1.0))

    def test_conditionalDelayMeanIsExpectedDelay(self):
        system = analysis.LinkSystem(dist=self.d, pa=self.pa, cfg=self.cfg)
        gain = channel.sampleSumGain(self.d, np.random.default_rng(8), 200000)
        delays = analysis.conditionalDelay(system, gain, self.b.regionOf(gain), self.pCons)

        expected = analysis.expectedDelay(self.d, self.b, self.pa, self.pCons, self.cfg)
        stdError = delays.std(ddof=1) / math.sqrt(delays.size)

        self.assertLess(abs(delays.mean() - expected), 4 * stdError + 1e-6)

    def test_sisoOnly(self):
        d = channel.SumGainDistribution(rayleighFading(1.0), 2)

        with self.assertRaises(unsupportedConfigError):
            analysis.expectedDelayImperfectCsir(d, channel.PilotModel(), self.b, self.pa, 1.0, self.cfg,
                                                np.random.default_rng(0), nSamples=10)


if __name__ == '__main__':
    unittest.main()
