"""
Paquete principal de la librería de q-concurrencia.
"""
__version__ = '0.1.0'
__author__ = 'Equipo q-concurrencia'
