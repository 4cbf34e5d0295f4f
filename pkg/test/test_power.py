import math
import unittest

from hypothesis import given
from hypothesis import strategies as st

from fastHarq import analysis, channel, fbl, power
from fastHarq.ricianFading import ricianFading
from fastHarq.harqErrors import infeasibleError, nonBracketedError


class exponentialLink:
    def __init__(self, pa=power.PaConfig()):
        self.pa = pa

    def errorProb(self, pCons):
        return math.exp(-pCons)


class flatLink:
    pa = power.PaConfig()

    def errorProb(self, pCons):
        return 0.5


class Test_PaModel(unittest.TestCase):
    def test_ideal(self):
        pa = power.PaConfig()
        self.assertTrue(pa.isIdeal)
        self.assertEqual(power.outputPower(pa, 3.2), 3.2)
        self.assertEqual(power.outputPower(pa, 0.0), 0.0)

    def test_classParameter(self):
        pMax = 10 ** 4.8
        pa = power.PaConfig(epsilon=0.75, theta=0.5, pMax=pMax)

        self.assertFalse(pa.isIdeal)
        self.assertAlmostEqual(power.outputPower(pa, 1000.0) / (0.75 * 1000.0 / math.sqrt(pMax)) ** 2, 1.0,
                               places=12)

    @given(st.floats(min_value=0.0, max_value=1e4), st.floats(min_value=0.0, max_value=1e3))
    def test_monotone(self, pCons, step):
        pa = power.PaConfig(epsilon=0.75, theta=0.5, pMax=10 ** 4.8)
        self.assertLessEqual(power.outputPower(pa, pCons), power.outputPower(pa, pCons + step))

    def test_invalid(self):
        with self.assertRaises(ValueError):
            power.PaConfig(epsilon=0.0)

        with self.assertRaises(ValueError):
            power.PaConfig(theta=1.0)

        with self.assertRaises(ValueError):
            power.PaConfig(epsilon=0.75, theta=0.5)

        with self.assertRaises(ValueError):
            power.outputPower(power.PaConfig(), -1.0)

    def test_saturation(self):
        self.assertEqual(power.pConsAtMaxOutput(power.PaConfig(epsilon=0.5, pMax=10.0)), 20.0)


class Test_SolvePower(unittest.TestCase):
    def test_roundTrip(self):
        pCons = power.solvePConsForBeta(exponentialLink(), math.exp(-1.0))
        self.assertAlmostEqual(pCons, 1.0, places=5)

    def test_roundTripOnLink(self):
        d = channel.SumGainDistribution(ricianFading(k=0.01, omega=1.0), 3)
        cfg = analysis.HarqConfig(mMax=2, code=fbl.CodeSpec(bigK=500, subLen=1000))
        system = analysis.LinkSystem(dist=d, pa=power.PaConfig(), cfg=cfg)

        beta = system.errorProb(1.0)
        self.assertAlmostEqual(power.solvePConsForBeta(system, beta), 1.0, places=4)

    def test_notBracketed(self):
        with self.assertRaises(nonBracketedError) as ctx:
            power.solvePConsForBeta(flatLink(), 0.1)

        low, high = ctx.exception.values
        self.assertAlmostEqual(low, 0.5, places=12)
        self.assertAlmostEqual(high, 0.5, places=12)
        self.assertEqual(len(ctx.exception.bracket), 2)

    def test_infeasible(self):
        with self.assertRaises(infeasibleError):
            power.solvePConsForBeta(exponentialLink(power.PaConfig(pMax=1.0)), 1e-3)

    def test_badTarget(self):
        with self.assertRaises(ValueError):
            power.solvePConsForBeta(exponentialLink(), 1.0)

    def test_retransmissionSavesPower(self):
        d = channel.SumGainDistribution(ricianFading(k=0.01, omega=1.0), 40)
        required = []

        for mMax in (1, 2):
            cfg = analysis.HarqConfig(mMax=mMax, code=fbl.CodeSpec(bigK=1000, subLen=1000))
            system = analysis.LinkSystem(dist=d, pa=power.PaConfig(), cfg=cfg, asymptotic=True)
            required.append(10 * math.log10(power.solvePConsForBeta(system, 1e-3)))

        self.assertGreater(required[0] - required[1], 3.0)
        self.assertLess(required[0] - required[1], 5.0)


if __name__ == '__main__':
    unittest.main()
