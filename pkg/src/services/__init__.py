"""
Módulo de servicios: estados, monótonos, criterios, estados isotrópicos,
superposiciones, techo convexo y suites de propiedades.
"""
from .convex_roof import ConvexRoofEstimator, roof_estimate
from .selftest import SelfTestService

__all__ = ['ConvexRoofEstimator', 'roof_estimate', 'SelfTestService']
