# ------------------------------------------------------------------------------
# example_queuedSweep.py
# Custom sweep worker: points are queued while a background thread optimizes
# them, and finished rows are collected in a queue for the main thread.
# ------------------------------------------------------------------------------

import queue
import threading

from fastHarq import analysis, channel, fbl, optimize, power, sweepThread
from fastHarq.ricianFading import ricianFading


# Optimize every queued SNR point and post the result
class boundarySweep(sweepThread.sweepThread):
    def __init__(self, system, resultQueue):
        super().__init__()
        self.system = system
        self.resultQueue = resultQueue
        self.opt = optimize.OptimizeSpec(gridPoints=32)

    def _evaluatePoint(self, snrDb):
        return optimize.optimize(self.system, 10 ** (snrDb / 10), self.opt)

    def _processResult(self, index, snrDb, result):
        self.resultQueue.put((index, snrDb, result))


if __name__ == "__main__":
    dist = channel.SumGainDistribution(ricianFading(k=0.01, omega=1.0), 3)
    cfg = analysis.HarqConfig(mMax=3, code=fbl.CodeSpec(bigK=1000, subLen=1000), dFb=40,
                              decodeDelay=analysis.LinearDecodeDelay(3.0))
    system = analysis.LinkSystem(dist=dist, pa=power.PaConfig(), cfg=cfg)

    resultQueue = queue.Queue()
    worker = boundarySweep(system, resultQueue)

    snrGrid = [0.0, 4.0, 8.0, 12.0]
    for index, snrDb in enumerate(snrGrid):
        worker.queuePoint(index, snrDb)

    thread = threading.Thread(target=worker.loop)
    thread.daemon = True
    thread.start()

    try:
        while thread.is_alive() or not resultQueue.empty():
            try:
                index, snrDb, result = resultQueue.get(timeout=0.5)
            except queue.Empty:
                continue

            print('SNR {:5.1f} dB  q {}  delay {:.1f} cu'.format(
                snrDb, tuple(round(q, 3) for q in result.boundaries.interior), result.objectiveValue))

    # Close on keyboard interrupt
    except KeyboardInterrupt:
        worker.stopLoop()

    thread.join()

    if worker.failure is not None:
        raise worker.failure

# ------------------------------------ EOF -------------------------------------
