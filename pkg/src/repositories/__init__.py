"""
Módulo de repositorios.
"""
from .repository import StateFileRepository

__all__ = ['StateFileRepository']
