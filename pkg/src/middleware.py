"""
Middleware para validar la configuración de una ejecución antes de enrutarla.
"""
import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Optional

from .models.schemas import Command, RunConfig

# Configurar logging
logger = logging.getLogger(__name__)

# Comandos que evalúan monótonos y exigen q >= 2
MONOTONE_COMMANDS = {
    Command.EVAL_PURE,
    Command.BOUND,
    Command.ISOTROPIC,
    Command.SUPERPOSE,
    Command.ROOF,
}

# Campos obligatorios por comando
REQUIRED_FIELDS = {
    Command.EVAL_PURE: ['input_path'],
    Command.BOUND: ['input_path'],
    Command.ISOTROPIC: ['d'],
    Command.FIG: ['n'],
    Command.SUPERPOSE: ['phi_path', 'psi_path', 'alpha', 'beta'],
    Command.SELFTEST: [],
    Command.ROOF: ['input_path'],
}

FLAG_NAMES = {
    'input_path': '--input',
    'phi_path': '--phi',
    'psi_path': '--psi',
    'output_path': '--output',
}


class RunConfigMiddleware:
    """
    Middleware que valida un RunConfig.

    Revisa los campos obligatorios de cada comando, los rangos numéricos y
    que las rutas de entrada sean legibles y la de salida escribible.
    """

    MIN_GRID_POINTS = 101

    @classmethod
    def validate_run_config(cls, config: RunConfig) -> tuple[bool, Optional[str]]:
        """
        Valida una configuración de ejecución.

        Args:
            config: configuración construida a partir de los flags

        Returns:
            Tupla (is_valid, error_message)
            - is_valid: True si la configuración es válida
            - error_message: Mensaje de error si la validación falla, None si es exitosa
        """
        errors: List[str] = []

        missing = [
            FLAG_NAMES.get(name, f"--{name}")
            for name in REQUIRED_FIELDS[config.command]
            if getattr(config, name) is None
        ]
        if missing:
            errors.append(f"Faltan flags obligatorios: {', '.join(missing)}")

        if config.command in MONOTONE_COMMANDS and config.q < 2:
            errors.append(f"--q debe ser >= 2, se recibió {config.q}")
        if config.tol <= 0:
            errors.append(f"--tol debe ser positivo, se recibió {config.tol}")
        if config.d is not None and config.d < 2:
            errors.append(f"--d debe ser >= 2, se recibió {config.d}")
        if config.f is not None and not 0.0 <= config.f <= 1.0:
            errors.append(f"--f debe estar en [0, 1], se recibió {config.f}")
        if config.grid is not None and config.grid < cls.MIN_GRID_POINTS:
            errors.append(f"--grid debe ser >= {cls.MIN_GRID_POINTS}, se recibió {config.grid}")
        if config.n is not None and config.n not in (1, 2, 3, 4):
            errors.append(f"--n debe ser 1, 2, 3 o 4, se recibió {config.n}")
        if config.resolution is not None and config.resolution < 2:
            errors.append(f"--resolution debe ser >= 2, se recibió {config.resolution}")
        for name in ('k', 'iterations', 'restarts'):
            value = getattr(config, name)
            if value is not None and value < 1:
                errors.append(f"--{name} debe ser >= 1, se recibió {value}")

        for name in ('input_path', 'phi_path', 'psi_path'):
            path = getattr(config, name)
            if path is not None and not os.access(path, os.R_OK):
                errors.append(f"{FLAG_NAMES[name]}: no se puede leer {path}")

        if config.output_path is not None:
            parent = Path(config.output_path).resolve().parent
            if not parent.is_dir() or not os.access(parent, os.W_OK):
                errors.append(f"--output: no se puede escribir en {parent}")

        if errors:
            message = '; '.join(errors)
            logger.warning(f"Configuración inválida: {message}")
            return False, message

        return True, None

    @classmethod
    def create_usage_error_response(cls, error_message: str = None) -> Dict[str, Any]:
        """
        Crea una respuesta de error de uso (código de salida 1).

        Args:
            error_message: Mensaje de error personalizado

        Returns:
            Diccionario con la respuesta de error
        """
        return {
            'status': 1,
            'body': {
                'success': False,
                'message': error_message or 'Uso inválido',
                'error': 'usage_error',
                'hint': 'Ejecute main.py <comando> --help para ver los flags disponibles'
            },
            'table': None
        }
