"""
Módulo de configuración para cargar variables de entorno.
"""
import logging
import os
from typing import Callable, Dict, TypeVar

from dotenv import load_dotenv

# Cargar variables de entorno desde el archivo .env
load_dotenv()

T = TypeVar('T', int, float)

# Variables con valores que no se pudieron convertir: nombre -> valor crudo
INVALID_ENV: Dict[str, str] = {}


def read_env(name: str, default: str, cast: Callable[[str], T]) -> T:
    """
    Lee y convierte una variable de entorno numérica.

    Un valor mal formado no se lanza al importar: se registra en INVALID_ENV
    y se usa el default, para que validate_config lo reporte como error de uso.

    Args:
        name: nombre de la variable
        default: valor por defecto (como texto)
        cast: int o float

    Returns:
        Valor convertido
    """
    raw = os.getenv(name)
    if raw is None:
        return cast(default)
    try:
        return cast(raw)
    except ValueError:
        INVALID_ENV[name] = raw
        return cast(default)


class Config:
    """
    Clase de configuración que carga y expone las variables de entorno.

    Precedencia: flag de la CLI > variable de entorno > valor por defecto.
    """

    # Tolerancias numéricas
    TOL = read_env('QC_TOL', '1e-9', float)
    HERMITIAN_TOL = read_env('QC_HERMITIAN_TOL', '1e-9', float)
    PSD_TOL = read_env('QC_PSD_TOL', '1e-9', float)
    TRACE_TOL = read_env('QC_TRACE_TOL', '1e-9', float)

    # Reproducibilidad y paralelismo
    SEED = read_env('QC_SEED', '2024', int)
    WORKERS = read_env('QC_WORKERS', '4', int)

    # Logging
    LOG_LEVEL = os.getenv('QC_LOG_LEVEL', 'WARNING').upper()

    # Estimador de techo convexo
    ROOF_ITERATIONS = read_env('QC_ROOF_ITERATIONS', '2000', int)
    ROOF_RESTARTS = read_env('QC_ROOF_RESTARTS', '10', int)

    # Envolvente convexa de estados isotrópicos
    GRID_POINTS = read_env('QC_GRID_POINTS', '2001', int)

    # Formato de salida
    SIGNIFICANT_DIGITS = 9
    FIG1_SIGNIFICANT_DIGITS = 6

    @classmethod
    def get_tolerance(cls) -> float:
        """
        Lee QC_TOL en el momento de la llamada (no al importar).

        Returns:
            Tolerancia por defecto para veredictos y propiedades

        Raises:
            ValueError: si QC_TOL no es un número
        """
        raw = os.getenv('QC_TOL')
        if raw is None:
            return cls.TOL
        try:
            return float(raw)
        except ValueError:
            raise ValueError(f"Variables de entorno inválidas: QC_TOL={raw!r}") from None

    @classmethod
    def get_log_level(cls) -> int:
        """
        Nivel de logging numérico; WARNING si QC_LOG_LEVEL no es un nivel conocido.
        """
        level = logging.getLevelName(cls.LOG_LEVEL)
        return level if isinstance(level, int) else logging.WARNING

    @classmethod
    def validate_config(cls):
        """
        Valida que las variables de entorno numéricas sean coherentes.
        """
        checks = [
            ('QC_TOL', cls.TOL > 0),
            ('QC_HERMITIAN_TOL', cls.HERMITIAN_TOL > 0),
            ('QC_PSD_TOL', cls.PSD_TOL > 0),
            ('QC_TRACE_TOL', cls.TRACE_TOL > 0),
            ('QC_WORKERS', cls.WORKERS >= 1),
            ('QC_ROOF_ITERATIONS', cls.ROOF_ITERATIONS >= 1),
            ('QC_ROOF_RESTARTS', cls.ROOF_RESTARTS >= 1),
            ('QC_GRID_POINTS', cls.GRID_POINTS >= 101),
            ('QC_LOG_LEVEL', isinstance(logging.getLevelName(cls.LOG_LEVEL), int)),
        ]

        invalid_vars = [f"{name}={raw!r}" for name, raw in INVALID_ENV.items()]
        invalid_vars += [name for name, ok in checks if not ok and name not in INVALID_ENV]

        if invalid_vars:
            raise ValueError(f"Variables de entorno inválidas: {', '.join(invalid_vars)}")

        return True
