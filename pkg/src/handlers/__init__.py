"""
Módulo de handlers.
"""
from .handler import CommandHandler

__all__ = ['CommandHandler']
