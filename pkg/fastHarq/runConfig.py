# ------------------------------------------------------------------------------
# runConfig.py
# JSON run configuration: parsing with line level diagnostics, validation,
# flag overrides, canonical serialisation and the configuration hash, plus
# the builders turning a configuration into channel, PA and HARQ objects.
#
# Powers are given in dB in the file (noise normalised, SNR = 10 log10 p_cons)
# and converted here; everything past this module works in linear units.
# ------------------------------------------------------------------------------

import json
import math
import hashlib
import logging
import dataclasses
from dataclasses import dataclass, field

from . import analysis, channel, fbl, optimize, power
from .rayleighFading import rayleighFading
from .ricianFading import ricianFading
from .harqErrors import configError

logger = logging.getLogger(__name__)

SWEEP_AXES = ('snrDb', 'subLen', 'bigK', 'nR', 'nPilots')
BOUNDARY_MODES = ('standard', 'uniform', 'optimized')
APPROXIMATIONS = ('clt', 'gamma', 'linearized', 'asymptotic')
FORMATS = ('csv', 'json')

_TOP_KEYS = {'fading', 'nR', 'pa', 'harq', 'boundaries', 'sweep', 'snrDb', 'pilot',
             'optimize', 'approximations', 'packets', 'seed', 'output', 'workers'}


def dbToLinear(db):
    return 10.0 ** (db / 10.0)


def linearToDb(x):
    if x <= 0:
        return -math.inf

    return 10.0 * math.log10(x)


@dataclass(frozen=True)
class RunConfig:
    fadingModel: str = 'rayleigh'
    k: float = 0.0
    omega: float = 1.0
    nR: int = 1
    epsilon: float = 1.0
    theta: float = 0.0
    pMaxDb: float = None
    mMax: int = 2
    subLen: int = 1000
    bigK: float = 500.0
    dFb: float = 0.0
    c: float = 0.0
    thirdOrder: bool = False
    asymptotic: bool = False
    boundaries: object = 'standard'
    sweepAxis: str = 'snrDb'
    sweepValues: tuple = ()
    snrDb: float = 0.0
    nPilots: int = 1
    pPilot: float = 1.0
    optimizeSpec: optimize.OptimizeSpec = field(default_factory=optimize.OptimizeSpec)
    beta: float = None
    approximations: tuple = ()
    packets: int = 100000
    seed: int = 0
    outputPath: str = None
    outputFormat: str = 'csv'
    workers: int = 1

    def __post_init__(self):
        if self.fadingModel not in ('rayleigh', 'rician'):
            raise configError('unknown fading model {!r}'.format(self.fadingModel), key='fading.model')

        if self.sweepAxis not in SWEEP_AXES:
            raise configError('sweep axis must be one of {}'.format(SWEEP_AXES), key='sweep')

        if len(self.sweepValues) == 0:
            raise configError('sweep list is empty', key='sweep')

        if isinstance(self.boundaries, str):
            if self.boundaries not in BOUNDARY_MODES:
                raise configError('boundaries must be one of {} or a list'.format(BOUNDARY_MODES),
                                  key='boundaries')
        elif len(self.boundaries) != self.mMax - 1:
            raise configError('explicit boundaries need M - 1 = {} values'.format(self.mMax - 1),
                              key='boundaries')

        for name in self.approximations:
            if name not in APPROXIMATIONS:
                raise configError('unknown approximation {!r}'.format(name), key='approximations')

        if self.packets < 1:
            raise configError('packets must be at least 1', key='packets')

        if self.seed < 0:
            raise configError('seed must be a nonnegative integer', key='seed')

        if self.outputFormat not in FORMATS:
            raise configError('output format must be one of {}'.format(FORMATS), key='output.format')

        if self.workers < 1:
            raise configError('workers must be at least 1', key='workers')

        if self.beta is not None and not 0 < self.beta < 1:
            raise configError('beta must lie in (0, 1)', key='optimize.beta')

        # build once so value type invariants surface at load time
        try:
            self.paConfig()
            if not isinstance(self.boundaries, str):
                self.fixedBoundaries(None)
            for value in self.sweepValues:
                self.harqConfig(**self._axisOverride(value))
                self.sumGain(**self._axisOverride(value))
                self.pilotModel(**self._axisOverride(value))
        except ValueError as e:
            raise configError(str(e)) from e

    # --------------------------------------------------------------------------
    # Builders
    # --------------------------------------------------------------------------

    def fading(self):
        if self.fadingModel == 'rician':
            return ricianFading(k=self.k, omega=self.omega)

        return rayleighFading(omega=self.omega)

    def sumGain(self, nR=None, **_):
        return channel.SumGainDistribution(self.fading(), self.nR if nR is None else int(nR))

    def paConfig(self):
        pMax = math.inf if self.pMaxDb is None else dbToLinear(self.pMaxDb)
        return power.PaConfig(epsilon=self.epsilon, theta=self.theta, pMax=pMax)

    def harqConfig(self, subLen=None, bigK=None, **_):
        code = fbl.CodeSpec(bigK=self.bigK if bigK is None else bigK,
                            subLen=self.subLen if subLen is None else int(subLen),
                            thirdOrder=self.thirdOrder)
        return analysis.HarqConfig(mMax=self.mMax, code=code, dFb=self.dFb,
                                   decodeDelay=analysis.LinearDecodeDelay(self.c))

    def pilotModel(self, nPilots=None, **_):
        return channel.PilotModel(nPilots=self.nPilots if nPilots is None else int(nPilots),
                                  pPilot=self.pPilot)

    def _axisOverride(self, value):
        return {self.sweepAxis: value}

    # --------------------------------------------------------------------------
    # sweepPoints
    # return list of dicts, one per sweep value, with the axis value, snrDb,
    # pCons and the objects the point is evaluated with
    # --------------------------------------------------------------------------
    def sweepPoints(self):
        points = []

        for value in self.sweepValues:
            override = self._axisOverride(value)
            snrDb = value if self.sweepAxis == 'snrDb' else self.snrDb
            dist = self.sumGain(**override)
            cfg = self.harqConfig(**override)
            pa = self.paConfig()

            points.append({
                'axis': self.sweepAxis,
                'value': value,
                'snrDb': snrDb,
                'pCons': dbToLinear(snrDb),
                'dist': dist,
                'cfg': cfg,
                'pa': pa,
                'pilot': self.pilotModel(**override),
                'system': analysis.LinkSystem(dist=dist, pa=pa, cfg=cfg, asymptotic=self.asymptotic),
            })

        return points

    def fixedBoundaries(self, dist):
        if self.boundaries == 'standard':
            return analysis.Boundaries.standard(self.mMax)

        if self.boundaries == 'uniform':
            return analysis.Boundaries.uniform(dist, self.mMax)

        if self.boundaries == 'optimized':
            return None

        return analysis.Boundaries.fromInterior(sorted(self.boundaries, reverse=True))

    # --------------------------------------------------------------------------
    # Serialisation
    # --------------------------------------------------------------------------

    def toDict(self):
        fading = {'model': self.fadingModel, 'omega': self.omega}
        if self.fadingModel == 'rician':
            fading['k'] = self.k

        opt = dataclasses.asdict(self.optimizeSpec)
        opt['beta'] = self.beta

        return {
            'fading': fading,
            'nR': self.nR,
            'pa': {'epsilon': self.epsilon, 'theta': self.theta, 'pMaxDb': self.pMaxDb},
            'harq': {'mMax': self.mMax, 'subLen': self.subLen, 'bigK': self.bigK, 'dFb': self.dFb,
                     'c': self.c, 'thirdOrder': self.thirdOrder, 'asymptotic': self.asymptotic},
            'boundaries': self.boundaries if isinstance(self.boundaries, str) else list(self.boundaries),
            'sweep': {self.sweepAxis: list(self.sweepValues)},
            'snrDb': self.snrDb,
            'pilot': {'nPilots': self.nPilots, 'pPilot': self.pPilot},
            'optimize': opt,
            'approximations': list(self.approximations),
            'packets': self.packets,
            'seed': self.seed,
            'output': {'path': self.outputPath, 'format': self.outputFormat},
            'workers': self.workers,
        }

    def toJson(self):
        return json.dumps(self.toDict(), indent=2, sort_keys=True)

    # --------------------------------------------------------------------------
    # configHash
    # SHA-256 of the canonical configuration without seed and output, so
    # runs differing only in those share the hash
    # --------------------------------------------------------------------------
    def configHash(self):
        content = self.toDict()
        for key in ('seed', 'output', 'workers'):
            content.pop(key)

        canonical = json.dumps(content, sort_keys=True, separators=(',', ':'))
        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()[:16]

    def withOverrides(self, **overrides):
        overrides = {k: v for k, v in overrides.items() if v is not None}

        if not overrides:
            return self

        return dataclasses.replace(self, **overrides)

    @classmethod
    def fromDict(cls, content, text=None):
        return _parse(content, text)


def _lineOf(text, key):
    if text is None or key is None:
        return None

    needle = '"{}"'.format(key.split('.')[-1])
    for number, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return number

    return None


def _section(content, key, text):
    value = content.get(key, {})

    if not isinstance(value, dict):
        raise configError('{} must be an object'.format(key), key=key, line=_lineOf(text, key))

    return value


def _unknownKeys(section, allowed, prefix, text):
    for key in section:
        if key not in allowed:
            name = '{}.{}'.format(prefix, key) if prefix else key
            raise configError('unknown key {!r}'.format(name), key=name, line=_lineOf(text, key))


def _parse(content, text):
    if not isinstance(content, dict):
        raise configError('configuration must be a JSON object', line=1)

    _unknownKeys(content, _TOP_KEYS, '', text)

    fading = _section(content, 'fading', text)
    pa = _section(content, 'pa', text)
    harq = _section(content, 'harq', text)
    sweep = _section(content, 'sweep', text)
    pilot = _section(content, 'pilot', text)
    opt = dict(_section(content, 'optimize', text))
    output = _section(content, 'output', text)

    _unknownKeys(fading, {'model', 'k', 'omega'}, 'fading', text)
    _unknownKeys(pa, {'epsilon', 'theta', 'pMaxDb'}, 'pa', text)
    _unknownKeys(harq, {'mMax', 'subLen', 'bigK', 'dFb', 'c', 'thirdOrder', 'asymptotic'}, 'harq', text)
    _unknownKeys(sweep, set(SWEEP_AXES), 'sweep', text)
    _unknownKeys(pilot, {'nPilots', 'pPilot'}, 'pilot', text)
    _unknownKeys(output, {'path', 'format'}, 'output', text)

    if len(sweep) != 1:
        raise configError('exactly one sweep axis is required, got {}'.format(sorted(sweep)),
                          key='sweep', line=_lineOf(text, 'sweep'))

    (axis, values), = sweep.items()
    if not isinstance(values, list):
        raise configError('sweep values must be a list', key='sweep.' + axis, line=_lineOf(text, axis))

    beta = opt.pop('beta', None)

    try:
        optSpec = optimize.OptimizeSpec(**opt)
    except (TypeError, ValueError) as e:
        raise configError(str(e), key='optimize', line=_lineOf(text, 'optimize')) from e

    boundaries = content.get('boundaries', 'standard')
    if isinstance(boundaries, list):
        boundaries = tuple(float(x) for x in boundaries)

    values = dict(
        fadingModel=fading.get('model', 'rayleigh'),
        k=fading.get('k', 0.0),
        omega=fading.get('omega', 1.0),
        nR=content.get('nR', 1),
        epsilon=pa.get('epsilon', 1.0),
        theta=pa.get('theta', 0.0),
        pMaxDb=pa.get('pMaxDb'),
        mMax=harq.get('mMax', 2),
        subLen=harq.get('subLen', 1000),
        bigK=harq.get('bigK', 500.0),
        dFb=harq.get('dFb', 0.0),
        c=harq.get('c', 0.0),
        thirdOrder=bool(harq.get('thirdOrder', False)),
        asymptotic=bool(harq.get('asymptotic', False)),
        boundaries=boundaries,
        sweepAxis=axis,
        sweepValues=tuple(values),
        snrDb=content.get('snrDb', 0.0),
        nPilots=pilot.get('nPilots', 1),
        pPilot=pilot.get('pPilot', 1.0),
        optimizeSpec=optSpec,
        beta=beta,
        approximations=tuple(content.get('approximations', ())),
        packets=content.get('packets', 100000),
        seed=content.get('seed', 0),
        outputPath=output.get('path'),
        outputFormat=output.get('format', 'csv'),
        workers=content.get('workers', 1),
    )

    try:
        return RunConfig(**values)
    except configError as e:
        if e.line is None and e.key is not None:
            raise configError(str(e), key=e.key, line=_lineOf(text, e.key)) from e
        raise
    except (TypeError, ValueError) as e:
        raise configError(str(e)) from e


# ------------------------------------------------------------------------------
# parseRunConfig
# param text - JSON document
# return RunConfig, configError with the offending line on failure
# ------------------------------------------------------------------------------
def parseRunConfig(text):
    try:
        content = json.loads(text)
    except json.JSONDecodeError as e:
        raise configError('invalid JSON: {}'.format(e.msg), line=e.lineno) from e

    config = RunConfig.fromDict(content, text)
    logger.debug('loaded configuration %s', config.configHash())
    return config


def loadRunConfig(path):
    with open(path, 'r', encoding='utf-8') as f:
        return parseRunConfig(f.read())

# ------------------------------------ EOF -------------------------------------
