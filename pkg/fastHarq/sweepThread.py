# ------------------------------------------------------------------------------
# sweepThread.py
# Threaded evaluation of parameter sweeps. Sweep points wait in a priority
# queue keyed by their sweep index; one or more worker threads drain it and
# hand every result to a user defined hook. runSweep collects the rows and
# returns them in sweep order whatever the completion order was.
# ------------------------------------------------------------------------------

import abc
import queue
import logging
import threading

logger = logging.getLogger(__name__)


# ------------------------------------------------------------------------------
# sweepThread
# Worker loop over queued sweep points. _evaluatePoint and _processResult must
# be overloaded; the loop ends when the queue is empty or stopLoop is called.
# ------------------------------------------------------------------------------
class sweepThread(abc.ABC):

    def __init__(self):
        self._pointQueue = queue.PriorityQueue()
        self._seq = 0
        self._seqLock = threading.Lock()

        self._intentionallyExit = False
        self.failure = None

    # --------------------------------------------------------------------------
    # stopLoop
    # Ask every worker to exit after its current point
    # --------------------------------------------------------------------------
    def stopLoop(self):
        self._intentionallyExit = True

    # --------------------------------------------------------------------------
    # queuePoint
    # param index - position of the point in the sweep, also its priority
    # param point - object handed to _evaluatePoint
    # --------------------------------------------------------------------------
    def queuePoint(self, index, point):
        with self._seqLock:
            self._pointQueue.put((index, self._seq, point))
            self._seq += 1

    def pending(self):
        return self._pointQueue.qsize()

    # --------------------------------------------------------------------------
    # loop
    # Worker body, safe to run from several threads at once. A failing point
    # stops all workers; the exception is kept in self.failure for the caller
    # --------------------------------------------------------------------------
    def loop(self):
        while not self._intentionallyExit:
            try:
                if not self._loopInternals():
                    break

            except KeyboardInterrupt:
                self.stopLoop()
                break

            except Exception as e:
                logger.exception('sweep worker stopped on a failing point')
                self.failure = self.failure or e
                self.stopLoop()
                break

        logger.debug('sweep worker %s finished', threading.current_thread().name)

    def _loopInternals(self):
        try:
            index, _, point = self._pointQueue.get_nowait()
        except queue.Empty:
            return False

        try:
            self._processResult(index, point, self._evaluatePoint(point))
        finally:
            self._pointQueue.task_done()

        return True

    @abc.abstractmethod
    def _evaluatePoint(self, point):
        raise NotImplementedError('_evaluatePoint is not implemented')

    @abc.abstractmethod
    def _processResult(self, index, point, result):
        raise NotImplementedError('_processResult is not implemented')


class _sweepCollector(sweepThread):

    def __init__(self, evaluate):
        super().__init__()
        self._evaluate = evaluate
        self._rows = {}
        self._rowsLock = threading.Lock()

    def _evaluatePoint(self, point):
        return self._evaluate(point)

    def _processResult(self, index, point, result):
        with self._rowsLock:
            self._rows[index] = result

    def rows(self):
        return [self._rows[i] for i in sorted(self._rows)]


# ------------------------------------------------------------------------------
# runSweep
# param points - sweep points in order
# param evaluate - callable point -> row
# param workers - number of worker threads
# return list of rows in the order of points
# ------------------------------------------------------------------------------
def runSweep(points, evaluate, workers=1):
    if workers < 1:
        raise ValueError('at least one worker thread is required')

    collector = _sweepCollector(evaluate)
    for index, point in enumerate(points):
        collector.queuePoint(index, point)

    threads = [threading.Thread(target=collector.loop, name='sweep-{}'.format(i), daemon=True)
               for i in range(min(workers, max(1, collector.pending())))]

    for t in threads:
        t.start()

    for t in threads:
        t.join()

    if collector.failure is not None:
        raise collector.failure

    return collector.rows()

# ------------------------------------ EOF -------------------------------------
