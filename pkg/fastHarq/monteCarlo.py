# ------------------------------------------------------------------------------
# monteCarlo.py
# Packet level simulator of fast and standard HARQ. Each packet draws its sum
# gain and one latent uniform U; it is decodable after round n iff
# U >= Q_n(G). The receiver stays silent until the round fixed by the
# quantization region of G, then decodes and feeds back every round until
# success or the last round.
#
# Packets are simulated in vectorised blocks. Block b draws from
# Philox(key=seed) jumped b times, and block statistics are merged in block
# order, so estimates depend on (seed, block size, packet count) only.
# ------------------------------------------------------------------------------

import logging
from dataclasses import dataclass

import numpy as np

from . import analysis, channel
from .estimate import runningStats

logger = logging.getLogger(__name__)

DEFAULT_BLOCK = 1 << 16


@dataclass(frozen=True)
class PacketTrace:
    gain: float
    region: int
    stopRound: int
    decoded: bool
    delay: float
    feedbackCount: int
    wastedRounds: int

    def recomputeDelay(self, cfg):
        return analysis.packetDelay(cfg, self.stopRound, self.region)


@dataclass(frozen=True)
class SimMetrics:
    error: object
    delay: object
    throughput: float
    constrainedDelay: object
    unnecessaryProb: object
    unnecessaryEnergy: object


# ------------------------------------------------------------------------------
# blockStream
# param seed - integer key of the run
# param block - block index
# return independent numpy Generator for the block
# ------------------------------------------------------------------------------
def blockStream(seed, block):
    return np.random.Generator(np.random.Philox(key=seed).jumped(block))


def _simulateBlock(system, b, pCons, rng, size):
    cfg = system.cfg
    mMax = cfg.mMax

    gain = channel.sampleSumGain(system.dist, rng, size)
    latent = rng.random(size)

    region = b.regionOf(gain)
    errors = np.vstack([system.roundError(gain, n, pCons) for n in range(1, mMax + 1)])
    decodable = latent >= errors

    # first decodable round, M + 1 when never decodable
    anyDecodable = decodable.any(axis=0)
    firstDecodable = np.where(anyDecodable, decodable.argmax(axis=0) + 1, mMax + 1)

    stop = np.minimum(np.maximum(region, firstDecodable), mMax)
    decoded = firstDecodable <= mMax

    delay = analysis.packetDelay(cfg, stop, region)
    feedback = np.where(stop < mMax, stop - region + 1, mMax - region)
    wasted = np.maximum(0, region - firstDecodable)

    return gain, region, stop, decoded, np.atleast_1d(delay), feedback, wasted


# ------------------------------------------------------------------------------
# simulatePacket
# param d, b, pa, pCons, cfg - link under test
# param rng - numpy Generator owned by the caller
# return PacketTrace of one packet
# ------------------------------------------------------------------------------
def simulatePacket(d, b, pa, pCons, cfg, rng, asymptotic=False):
    system = analysis.LinkSystem(dist=d, pa=pa, cfg=cfg, asymptotic=asymptotic)
    analysis.checkBoundaries(b, cfg)

    gain, region, stop, decoded, delay, feedback, wasted = _simulateBlock(system, b, pCons, rng, 1)

    return PacketTrace(gain=float(gain[0]), region=int(region[0]), stopRound=int(stop[0]),
                       decoded=bool(decoded[0]), delay=float(delay[0]),
                       feedbackCount=int(feedback[0]), wastedRounds=int(wasted[0]))


# ------------------------------------------------------------------------------
# estimateMetrics
# param nPackets - packets to simulate, >= 1
# param seed - key of the counter based streams
# param blockSize - packets per vectorised block
# return SimMetrics; constrainedDelay is None when no packet was decoded
# ------------------------------------------------------------------------------
def estimateMetrics(d, b, pa, pCons, cfg, nPackets, seed=0, blockSize=DEFAULT_BLOCK, asymptotic=False):
    if nPackets < 1:
        raise ValueError('at least one packet must be simulated')

    system = analysis.LinkSystem(dist=d, pa=pa, cfg=cfg, asymptotic=asymptotic)
    analysis.checkBoundaries(b, cfg)

    error, delay, decodedDelay = runningStats(), runningStats(), runningStats()
    unnecessary, energy = runningStats(), runningStats()

    for block, start in enumerate(range(0, nPackets, blockSize)):
        size = min(blockSize, nPackets - start)
        _, _, _, decoded, packetDelays, _, wasted = _simulateBlock(
            system, b, pCons, blockStream(seed, block), size)

        error.update(~decoded)
        delay.update(packetDelays)
        decodedDelay.update(packetDelays[decoded])
        unnecessary.update(wasted > 0)
        energy.update(wasted * pCons)

        logger.debug('block %d: %d packets, running delay %.6g', block, size, delay.mean)

    successFraction = 1.0 - error.mean

    return SimMetrics(error=error.estimate(), delay=delay.estimate(),
                      throughput=cfg.code.bigK * successFraction / delay.mean,
                      constrainedDelay=decodedDelay.estimate(),
                      unnecessaryProb=unnecessary.estimate(),
                      unnecessaryEnergy=energy.estimate())

# ------------------------------------ EOF -------------------------------------
