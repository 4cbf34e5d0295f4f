import time
import random
import threading
import unittest

from fastHarq import sweepThread


class Test_RunSweep(unittest.TestCase):
    def test_orderPreserved(self):
        jitter = random.Random(3)
        delays = [jitter.uniform(0.0, 0.01) for _ in range(40)]

        def evaluate(i):
            time.sleep(delays[i])
            return {'index': i, 'square': i * i}

        rows = sweepThread.runSweep(range(40), evaluate, workers=4)
        self.assertEqual([row['index'] for row in rows], list(range(40)))
        self.assertEqual(rows[7]['square'], 49)

    def test_usesThreads(self):
        names = set()
        lock = threading.Lock()

        def evaluate(i):
            time.sleep(0.005)
            with lock:
                names.add(threading.current_thread().name)
            return i

        sweepThread.runSweep(range(16), evaluate, workers=4)
        self.assertGreater(len(names), 1)

    def test_singleWorkerMatchesMany(self):
        evaluate = lambda x: x * 0.5
        self.assertEqual(sweepThread.runSweep(range(10), evaluate, workers=1),
                         sweepThread.runSweep(range(10), evaluate, workers=3))

    def test_emptySweep(self):
        self.assertEqual(sweepThread.runSweep([], lambda x: x, workers=2), [])

    def test_failureReraised(self):
        def evaluate(i):
            if i == 5:
                raise ArithmeticError('point {} failed'.format(i))
            return i

        with self.assertRaises(ArithmeticError):
            sweepThread.runSweep(range(10), evaluate, workers=2)

    def test_noWorkers(self):
        with self.assertRaises(ValueError):
            sweepThread.runSweep(range(3), lambda x: x, workers=0)


class Test_SweepThread(unittest.TestCase):
    class doubler(sweepThread.sweepThread):
        def __init__(self):
            super().__init__()
            self.results = []

        def _evaluatePoint(self, point):
            return 2 * point

        def _processResult(self, index, point, result):
            self.results.append((index, point, result))

    def test_priorityOrder(self):
        worker = self.doubler()
        for index, point in ((2, 'c'), (0, 'a'), (1, 'b')):
            worker.queuePoint(index, point)

        self.assertEqual(worker.pending(), 3)
        worker.loop()

        self.assertEqual(worker.results, [(0, 'a', 'aa'), (1, 'b', 'bb'), (2, 'c', 'cc')])
        self.assertEqual(worker.pending(), 0)
        self.assertIsNone(worker.failure)

    def test_stopLoop(self):
        worker = self.doubler()
        worker.queuePoint(0, 1)
        worker.stopLoop()
        worker.loop()

        self.assertEqual(worker.results, [])
        self.assertEqual(worker.pending(), 1)

    def test_failureKept(self):
        worker = self.doubler()
        worker.queuePoint(0, None)
        worker.queuePoint(1, 3)
        worker.loop()

        self.assertIsInstance(worker.failure, TypeError)
        self.assertEqual(worker.results, [])

    def test_abstract(self):
        with self.assertRaises(TypeError):
            sweepThread.sweepThread()


if __name__ == '__main__':
    unittest.main()
