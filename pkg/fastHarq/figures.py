# ------------------------------------------------------------------------------
# figures.py
# Named table bundles. Every bundle is a list of tables; a table is one command
# run over one or more run configurations whose rows are concatenated (the
# m_max, n_r, sub_len columns tell them apart).
#
# Uniform quantization (Pr(G in S^m) = 1/M) is used where boundaries are not
# the object of study, optimized boundaries where they are.
# ------------------------------------------------------------------------------

from dataclasses import dataclass

import numpy as np

from .optimize import OptimizeSpec
from .runConfig import RunConfig


@dataclass(frozen=True)
class FigureTable:
    name: str
    command: str
    configs: tuple


def _grid(lo, hi, step):
    return tuple(float(x) for x in np.arange(lo, hi + 0.5 * step, step))


def fig3():
    approx = ('clt', 'gamma', 'linearized')
    tables = []

    for thirdOrder, name in ((False, 'fig3_second_order'), (True, 'fig3_third_order')):
        configs = tuple(
            RunConfig(fadingModel='rician', k=0.01, nR=50, mMax=m, subLen=1000, bigK=500,
                      thirdOrder=thirdOrder, approximations=approx, sweepValues=_grid(-25, -12, 1))
            for m in (1, 2))
        tables.append(FigureTable(name, 'analyze', configs))

    return tables


def fig4():
    configs = tuple(
        RunConfig(nR=12, mMax=m, subLen=1000, bigK=500, dFb=40, c=0.5, boundaries='uniform',
                  approximations=('clt', 'gamma', 'linearized'), sweepValues=(0.0,))
        for m in range(1, 6))

    return [FigureTable('fig4', 'analyze', configs)]


def fig5():
    return [
        FigureTable('fig5_l{}'.format(subLen), 'analyze', (
            RunConfig(mMax=3, subLen=subLen, bigK=500, dFb=40, c=0.5, boundaries='uniform',
                      snrDb=4.0, sweepAxis='nR', sweepValues=tuple(range(1, 9)),
                      approximations=('clt', 'gamma', 'linearized')),))
        for subLen in (500, 1000)
    ]


def fig6():
    configs = tuple(
        RunConfig(nR=40, mMax=m, subLen=1000, bigK=1000, boundaries='uniform',
                  approximations=('asymptotic',), sweepValues=_grid(-20, -10, 1))
        for m in (1, 2))

    return [FigureTable('fig6', 'analyze', configs)]


def fig7():
    config = RunConfig(nR=10, mMax=2, subLen=1000, c=0.5, asymptotic=True, boundaries='uniform',
                       snrDb=2.0, sweepAxis='bigK', sweepValues=_grid(250, 2500, 250))

    return [FigureTable('fig7', 'analyze', (config,))]


def fig8():
    # rate fixed at 1 nat per channel use: K follows L
    lengths = (100, 200, 500, 1000, 2000, 5000, 10000, 20000, 50000, 100000)
    configs = tuple(
        RunConfig(nR=10, mMax=2, subLen=n, bigK=float(n), dFb=40, c=0.0, boundaries='uniform',
                  snrDb=-5.0, sweepAxis='subLen', sweepValues=(n,), approximations=('asymptotic',))
        for n in lengths)

    return [FigureTable('fig8', 'analyze', configs)]


def fig9():
    return [
        FigureTable('fig9_k{}'.format(bigK), 'analyze', (
            RunConfig(nR=6, mMax=2, subLen=1000, bigK=bigK, dFb=40, c=3.0, boundaries='optimized',
                      sweepValues=_grid(-10, 6, 2)),))
        for bigK in (500, 1000)
    ]


def fig10():
    pa = dict(epsilon=0.75, theta=0.5, pMaxDb=48.0)
    common = dict(nR=5, mMax=3, subLen=1000, bigK=1000, dFb=40, c=0.5, **pa)

    return [
        FigureTable('fig10', 'optimize', (RunConfig(sweepValues=_grid(26, 44, 2), **common),)),
        FigureTable('fig10_target', 'optimize', (
            RunConfig(sweepAxis='nR', sweepValues=(3, 4, 5, 6), beta=1e-3,
                      **common),)),
    ]


def fig11():
    spec = OptimizeSpec(objective='throughput')
    configs = tuple(
        RunConfig(nR=3, mMax=m, subLen=500, bigK=250, dFb=0.0, c=0.5, boundaries='optimized',
                  optimizeSpec=spec, sweepValues=_grid(-6, 10, 2))
        for m in (1, 2))

    return [FigureTable('fig11', 'analyze', configs)]


def fig12():
    configs = tuple(
        RunConfig(fadingModel='rician', k=0.01, nR=3, mMax=m, subLen=1000, bigK=1000, dFb=40, c=3.0,
                  boundaries='optimized', sweepValues=_grid(0, 12, 2))
        for m in (2, 3))

    return [FigureTable('fig12', 'analyze', configs)]


def fig13():
    return [
        FigureTable('fig13_nr{}'.format(nR), 'analyze', (
            RunConfig(nR=nR, mMax=3, subLen=1000, bigK=1000, dFb=40, c=3.0, boundaries='optimized',
                      sweepValues=_grid(-4, 12, 2)),))
        for nR in (3, 6)
    ]


def fig14():
    return [
        FigureTable('fig14_nr{}'.format(nR), 'analyze', (
            RunConfig(nR=nR, mMax=2, subLen=1000, bigK=500, dFb=40, c=0.5, boundaries='optimized',
                      sweepValues=_grid(-6, 10, 2)),))
        for nR in (3, 4)
    ]


def fig15():
    config = RunConfig(nR=3, mMax=2, subLen=1000, bigK=1000, dFb=40, c=3.0, boundaries='optimized',
                       sweepValues=_grid(0, 12, 2))

    return [
        FigureTable('fig15', 'analyze', (config,)),
        FigureTable('fig15_sim', 'simulate', (config,)),
    ]


def fig16():
    return [
        FigureTable('fig16_snr{:g}'.format(snrDb), 'analyze', (
            RunConfig(nR=1, mMax=2, subLen=1000, bigK=500, dFb=40, c=1.0, boundaries=(0.25,),
                      snrDb=snrDb, sweepAxis='nPilots', sweepValues=(1, 2, 4, 8, 16), pPilot=1.0),))
        for snrDb in (0.0, 5.0, 10.0)
    ]


FIGURES = {
    'fig3': fig3, 'fig4': fig4, 'fig5': fig5, 'fig6': fig6, 'fig7': fig7,
    'fig8': fig8, 'fig9': fig9, 'fig10': fig10, 'fig11': fig11, 'fig12': fig12,
    'fig13': fig13, 'fig14': fig14, 'fig15': fig15, 'fig16': fig16,
}

# ------------------------------------ EOF -------------------------------------
