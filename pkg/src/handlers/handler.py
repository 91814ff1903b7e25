"""
Handlers para procesar los comandos de la CLI.

Cada handler recibe un RunConfig ya validado y devuelve un diccionario
{'status': código de salida, 'body': dict, 'table': tabla CSV opcional}.
"""
import logging
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from ..config import Config
from ..models.errors import (
    BadRangeError,
    InvalidDensityMatrixError,
    NonFiniteError,
    NotNormalizedError,
    ParseError,
    QConcurrenceError,
    ShapeMismatchError,
)
from ..models.schemas import Command, OutputFormat, RunConfig, SuperpositionInput
from ..repositories.repository import StateFileRepository
from ..services import convex_roof, criteria, isotropic, monotone, states, superposition
from ..services.selftest import SelfTestService

# Configurar logging
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID_INPUT = 2
EXIT_SELFTEST_FAILED = 3

# Errores de archivos o de estados inválidos
INPUT_ERRORS = (
    ParseError,
    NotNormalizedError,
    InvalidDensityMatrixError,
    ShapeMismatchError,
    NonFiniteError,
)

# Tolerancia de normalización de α, β en la CLI
CLI_WEIGHT_TOL = 1e-6

FIG1_D_RANGE = range(3, 11)


def _table(header: List[str], rows: List[List[Any]], digits: Optional[int] = None) -> Dict[str, Any]:
    return {'header': header, 'rows': rows, 'digits': digits}


class CommandHandler:
    """
    Handler para los comandos de la CLI.
    """

    def __init__(self, repository: StateFileRepository):
        """
        Inicializa el handler con el repositorio de archivos.

        Args:
            repository: Instancia de StateFileRepository
        """
        self.repository = repository

    def execute(self, action: Callable[[RunConfig], Dict[str, Any]], config: RunConfig) -> Dict[str, Any]:
        """
        Ejecuta un handler traduciendo las excepciones a códigos de salida.
        """
        try:
            logger.info(f"Ejecutando comando {config.command.value}")
            return action(config)
        except INPUT_ERRORS as e:
            logger.error(f"Entrada inválida: {e}")
            return self._error_response(EXIT_INVALID_INPUT, e)
        except QConcurrenceError as e:
            logger.error(f"Parámetros inválidos: {e}")
            return self._error_response(EXIT_USAGE, e)
        except Exception as e:
            logger.error(f"Error en el handler: {e}", exc_info=True)
            return self._error_response(EXIT_USAGE, e)

    @staticmethod
    def _error_response(status: int, error: Exception) -> Dict[str, Any]:
        body = {'success': False, 'message': str(error), 'error': type(error).__name__}
        violations = getattr(error, 'violations', None)
        if violations:
            body['violations'] = violations
        return {'status': status, 'body': body, 'table': None}

    @staticmethod
    def _ok(body: Dict[str, Any], table: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        return {'status': EXIT_OK, 'body': body, 'table': table}

    # =========================================================================
    # COMANDOS
    # =========================================================================
    def handle_eval_pure(self, config: RunConfig) -> Dict[str, Any]:
        """
        q-concurrencia, coeficientes de Schmidt y concurrencia de un estado puro.
        """
        psi = self.repository.load_pure_state(config.input_path)
        coefficients = states.schmidt(psi).coefficients
        body = {
            'shape': psi.shape.as_list(),
            'q': config.q,
            'c_q': monotone.q_concurrence_pure(psi, config.q),
            'concurrence': monotone.concurrence_pure(psi),
            'schmidt_coefficients': coefficients,
        }
        table = _table(
            ['q', 'c_q', 'concurrence', 'schmidt_coefficients'],
            [[config.q, body['c_q'], body['concurrence'],
              ';'.join(self.repository.format_number(c) for c in coefficients)]]
        )
        return self._ok(body, table)

    def handle_bound(self, config: RunConfig) -> Dict[str, Any]:
        """
        Normas PPT y realineada, cota inferior y veredictos.
        """
        rho = self.repository.load_density_matrix(config.input_path)
        report = criteria.classify(rho, config.tol, config.q)
        body = report.model_dump(mode='json')
        return self._ok(body, _table(list(body.keys()), [list(body.values())]))

    def handle_isotropic(self, config: RunConfig) -> Dict[str, Any]:
        """
        Envolvente convexa co(ξ) para estados isotrópicos.
        """
        curve = isotropic.envelope(config.q, config.d, config.grid)
        body = {
            'd': curve.d,
            'q': curve.q,
            'grid_points': len(curve.grid),
            'grid': [list(point) for point in curve.grid],
        }
        if config.f is not None:
            body['f'] = config.f
            body['value'] = curve.value_at(config.f)
        return self._ok(body, _table(['F', 'value'], body['grid']))

    def handle_fig(self, config: RunConfig) -> Dict[str, Any]:
        """
        Datos de las figuras 1-4 (siempre en CSV).
        """
        resolution = config.resolution
        if config.n == 1:
            rows = isotropic.fig1_data(FIG1_D_RANGE, resolution or 201)
            table = _table(['d', 'F', 'c2_exact', 'lower_bound'], rows, Config.FIG1_SIGNIFICANT_DIGITS)
        else:
            example = f"ex{config.n}"
            rows = superposition.figure_data(example, resolution or 41)
            table = _table(superposition.FIGURE_HEADERS[example], rows)
        return self._ok({'figure': config.n, 'rows': len(table['rows'])}, table)

    def handle_superpose(self, config: RunConfig) -> Dict[str, Any]:
        """
        Reporte de la superposición de dos estados puros.
        """
        phi = self.repository.load_pure_state(config.phi_path)
        psi = self.repository.load_pure_state(config.psi_path)
        alpha, beta = self._normalized_coefficients(config.alpha, config.beta)
        data = SuperpositionInput(phi=phi, psi=psi, alpha=alpha, beta=beta)
        report = superposition.build_report(data, config.q, config.tol)
        body = report.model_dump(mode='json')
        return self._ok(body, _table(list(body.keys()), [list(body.values())]))

    def handle_selftest(self, config: RunConfig) -> Dict[str, Any]:
        """
        Ejecuta las suites de propiedades; código 3 si alguna falla.
        """
        service = SelfTestService(seed=config.seed, tol=config.tol)
        report = service.run(config.suite)
        body = {
            'seed': report.seed,
            'passed': report.passed,
            'total_checked': report.total_checked,
            'total_failures': report.total_failures,
            'suites': [s.model_dump() for s in report.suites],
        }
        rows = [[s.name, s.checked, s.failures] for s in report.suites]
        status = EXIT_OK if report.passed else EXIT_SELFTEST_FAILED
        return {'status': status, 'body': body, 'table': _table(['suite', 'checked', 'failures'], rows)}

    def handle_roof(self, config: RunConfig) -> Dict[str, Any]:
        """
        Estimación superior del techo convexo de un estado.
        """
        rho = self.repository.load_density_matrix(config.input_path)
        estimator = convex_roof.ConvexRoofEstimator(
            q=config.q,
            decomposition_size=config.k,
            iterations=config.iterations,
            restarts=config.restarts,
            seed=config.seed
        )
        estimate = estimator.estimate(rho)
        body = estimate.model_dump(mode='json', exclude={'trace'})
        body['lower_bound'] = criteria.q_concurrence_lower_bound(rho, config.q) if rho.shape.min_dim >= 2 else 0.0
        return self._ok(body, _table(list(body.keys()), [list(body.values())]))

    @staticmethod
    def _normalized_coefficients(alpha: complex, beta: complex):
        """
        Renormaliza α, β si |α|² + |β|² está a menos de 1e-6 de 1.
        """
        weight = abs(alpha) ** 2 + abs(beta) ** 2
        if abs(weight - 1.0) > CLI_WEIGHT_TOL:
            raise BadRangeError(f"|α|² + |β|² = {weight:.9f}, se esperaba 1")
        if weight != 1.0:
            logger.warning(f"Renormalizando α, β (|α|² + |β|² = {weight:.12f})")
            scale = np.sqrt(weight)
            alpha, beta = alpha / scale, beta / scale
        return alpha, beta


def wants_csv(config: RunConfig) -> bool:
    """El comando fig siempre emite CSV; el resto respeta --format."""
    return config.format == OutputFormat.CSV or config.command == Command.FIG
