"""
Módulo de rutas.
"""
from .routes import Router

__all__ = ['Router']
