# ------------------------------------------------------------------------------
# example_analyzeLink.py
# Delay of standard and fast HARQ on a 12 antenna Rician link, exact and with
# the closed form approximations, at a few SNR values.
# ------------------------------------------------------------------------------

from fastHarq import analysis, approximation, channel, fbl, power
from fastHarq.ricianFading import ricianFading


if __name__ == "__main__":
    dist = channel.SumGainDistribution(ricianFading(k=0.01, omega=1.0), 12)
    cfg = analysis.HarqConfig(mMax=3, code=fbl.CodeSpec(bigK=500, subLen=1000), dFb=40,
                              decodeDelay=analysis.LinearDecodeDelay(0.5))
    system = analysis.LinkSystem(dist=dist, pa=power.PaConfig(), cfg=cfg)

    fast = analysis.Boundaries.uniform(dist, cfg.mMax)
    standard = analysis.Boundaries.standard(cfg.mMax)

    for snrDb in (-10.0, -5.0, 0.0):
        pCons = 10 ** (snrDb / 10)
        exact = system.metrics(fast, pCons)
        tauStd = system.metrics(standard, pCons).expectedDelay

        print('SNR {:5.1f} dB  error {:.3e}  delay {:8.1f} cu  standard {:8.1f} cu  gain {:5.1%}'.format(
            snrDb, exact.errorProb, exact.expectedDelay, tauStd,
            analysis.relativeGain(tauStd, exact.expectedDelay)))

        for method in approximation.METHODS:
            approx = approximation.approximateMetrics(system, fast, pCons, method)
            print('    {:<10s} error {:.3e}  delay {:8.1f} cu'.format(method, approx.errorProb, approx.expectedDelay))

# ------------------------------------ EOF -------------------------------------
