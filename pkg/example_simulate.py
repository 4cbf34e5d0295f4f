# ------------------------------------------------------------------------------
# example_simulate.py
# Packet level simulation next to the analytical metrics for optimized
# boundaries, plus a handful of single packet traces.
# ------------------------------------------------------------------------------

import numpy as np

from fastHarq import analysis, channel, fbl, monteCarlo, optimize, power
from fastHarq.rayleighFading import rayleighFading


if __name__ == "__main__":
    dist = channel.SumGainDistribution(rayleighFading(omega=1.0), 3)
    cfg = analysis.HarqConfig(mMax=2, code=fbl.CodeSpec(bigK=1000, subLen=1000), dFb=40,
                              decodeDelay=analysis.LinearDecodeDelay(3.0))
    pa = power.PaConfig()
    pCons = 10 ** (4.0 / 10)

    system = analysis.LinkSystem(dist=dist, pa=pa, cfg=cfg)
    best = optimize.optimize(system, pCons, optimize.OptimizeSpec(gridPoints=32))
    print('boundaries {}  expected delay {:.1f} cu'.format(best.boundaries.interior, best.objectiveValue))

    sim = monteCarlo.estimateMetrics(dist, best.boundaries, pa, pCons, cfg, 10 ** 6, seed=1)
    exact = system.metrics(best.boundaries, pCons)

    print('delay      sim {:.2f} +- {:.2f}  exact {:.2f}'.format(sim.delay.mean, sim.delay.stdError, exact.expectedDelay))
    print('error      sim {:.3e} +- {:.1e}  exact {:.3e}'.format(sim.error.mean, sim.error.stdError, exact.errorProb))
    print('wasted     sim {:.3e} +- {:.1e}'.format(sim.unnecessaryProb.mean, sim.unnecessaryProb.stdError))

    rng = np.random.default_rng(7)
    for _ in range(5):
        print(monteCarlo.simulatePacket(dist, best.boundaries, pa, pCons, cfg, rng))

# ------------------------------------ EOF -------------------------------------
