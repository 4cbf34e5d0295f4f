import abc

# ------------------------------------------------------------------------------
# fadingAbstract
# Interface for per-antenna fading laws. Every law knows its per-antenna
# moments, how to draw antenna gains, and the exact law of the sum gain
# G = g^1 + ... + g^{N_r} over independent identically faded antennas.
# ------------------------------------------------------------------------------

class fadingAbstract(abc.ABC):

    # --------------------------------------------------------------------------
    # momentsPerAntenna
    # return (zeta, nu2) - mean and variance of one antenna gain
    # --------------------------------------------------------------------------
    @abc.abstractmethod
    def momentsPerAntenna(self):
        pass

    # --------------------------------------------------------------------------
    # sampleAntennaGains
    # param rng - numpy Generator owned by the caller
    # param size - output shape
    # return array of independent antenna gains |h|^2
    # --------------------------------------------------------------------------
    @abc.abstractmethod
    def sampleAntennaGains(self, rng, size):
        pass

    # --------------------------------------------------------------------------
    # logSumPdf
    # param x - sum gain, x > 0
    # param nR - number of receive antennas
    # return log f_G(x)
    # --------------------------------------------------------------------------
    @abc.abstractmethod
    def logSumPdf(self, x, nR):
        pass

    @abc.abstractmethod
    def sumPdfAtZero(self, nR):
        pass

    # --------------------------------------------------------------------------
    # sumCdf / sumSf
    # param x - sum gain (array safe)
    # return F_G(x) / 1 - F_G(x)
    # --------------------------------------------------------------------------
    @abc.abstractmethod
    def sumCdf(self, x, nR):
        pass

    @abc.abstractmethod
    def sumSf(self, x, nR):
        pass

    @property
    @abc.abstractmethod
    def name(self):
        pass

# ------------------------------------ EOF -------------------------------------
