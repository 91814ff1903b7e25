"""
Módulo de modelos de datos.
"""
from .schemas import (
    Subsystem,
    Verdict,
    OrthogonalityClass,
    Command,
    OutputFormat,
    Suite,
    BipartiteShape,
    HermitianSpectrum,
    PureState,
    DensityMatrix,
    SchmidtDecomposition,
    BoundReport,
    Lemma1Report,
    ConcavityReport,
    EnvelopeCurve,
    SuperpositionInput,
    SuperpositionReport,
    RoofEstimate,
    SuiteResult,
    SelfTestReport,
    RunConfig
)

__all__ = [
    'Subsystem',
    'Verdict',
    'OrthogonalityClass',
    'Command',
    'OutputFormat',
    'Suite',
    'BipartiteShape',
    'HermitianSpectrum',
    'PureState',
    'DensityMatrix',
    'SchmidtDecomposition',
    'BoundReport',
    'Lemma1Report',
    'ConcavityReport',
    'EnvelopeCurve',
    'SuperpositionInput',
    'SuperpositionReport',
    'RoofEstimate',
    'SuiteResult',
    'SelfTestReport',
    'RunConfig'
]
