"""
Estimador superior del techo convexo de la q-concurrencia.

Toda descomposición {p_i, ψ_i} de tamaño k de ρ = Σ_j λ_j |e_j⟩⟨e_j| se
obtiene como ψ̃_i = Σ_j U_ij √λ_j |e_j⟩ con U una isometría k×r
(r = rango de ρ), p_i = ‖ψ̃_i‖². El estimador recorre isometrías con
rotaciones de Givens aleatorias y acepta sólo mejoras; el mejor promedio
encontrado es una cota superior de C_q(ρ).
"""
import concurrent.futures
import logging
from typing import List, Optional, Tuple

import numpy as np
from scipy.linalg import qr

from ..config import Config
from ..models.errors import BadDecompositionSizeError
from ..models.schemas import DensityMatrix, RoofEstimate
from ..utils.linalg import hermitian_eigh
from .monotone import require_exponent
from .states import crandn

# Configurar logging
logger = logging.getLogger(__name__)

# Autovalores por debajo de esto no cuentan para el rango
RANK_TOL = 1e-10
# Pesos p_i por debajo de esto no aportan
WEIGHT_FLOOR = 1e-15
INITIAL_SCALE = 0.3
FINAL_SCALE = 0.01
CHECK_EVERY = 100
CONVERGENCE_WINDOW = 0.2
CONVERGENCE_TOL = 1e-7


class _RestartResult:
    """Resultado de un reinicio individual."""

    def __init__(self, value: float, trace: List[float], reconstruction_error: float, converged: bool):
        self.value = value
        self.trace = trace
        self.reconstruction_error = reconstruction_error
        self.converged = converged


class ConvexRoofEstimator:
    """
    Búsqueda local aleatoria sobre descomposiciones en estados puros.
    """

    def __init__(
        self,
        q: float,
        decomposition_size: Optional[int] = None,
        iterations: Optional[int] = None,
        restarts: Optional[int] = None,
        seed: Optional[int] = None,
        workers: Optional[int] = None
    ):
        """
        Inicializa el estimador.

        Args:
            q: exponente >= 2
            decomposition_size: k (default 2·rango)
            iterations: iteraciones por reinicio (default Config.ROOF_ITERATIONS)
            restarts: reinicios independientes (default Config.ROOF_RESTARTS)
            seed: semilla raíz (default Config.SEED)
            workers: hilos para los reinicios (default Config.WORKERS)
        """
        self.q = require_exponent(q)
        self.decomposition_size = decomposition_size
        self.iterations = iterations or Config.ROOF_ITERATIONS
        self.restarts = restarts or Config.ROOF_RESTARTS
        self.seed = Config.SEED if seed is None else seed
        self.workers = workers or Config.WORKERS

    # =========================================================================
    # API PÚBLICA
    # =========================================================================
    def estimate(self, rho: DensityMatrix) -> RoofEstimate:
        """
        Estima C_q(ρ) desde arriba.

        Args:
            rho: estado bipartito

        Returns:
            RoofEstimate con el mejor promedio de todos los reinicios

        Raises:
            BadDecompositionSizeError: si k < rango(ρ)
        """
        shape = rho.require_shape()
        values, vectors = hermitian_eigh(rho.matrix)
        rank = max(int(np.sum(values > RANK_TOL)), 1)
        k = self.decomposition_size or 2 * rank
        if k < rank:
            raise BadDecompositionSizeError(
                f"El tamaño de la descomposición ({k}) es menor que el rango del estado ({rank})"
            )

        # Columnas √λ_j |e_j⟩
        weighted = vectors[:, :rank] * np.sqrt(np.clip(values[:rank], 0.0, None))
        seeds = np.random.SeedSequence(self.seed).spawn(self.restarts)
        logger.info(
            f"Estimando techo convexo: rango={rank}, k={k}, iteraciones={self.iterations}, "
            f"reinicios={self.restarts}"
        )

        results: List[_RestartResult] = [None] * self.restarts
        with concurrent.futures.ThreadPoolExecutor(max_workers=self.workers) as executor:
            futures = {
                executor.submit(self._run_restart, rho.matrix, weighted, shape.dim_a, shape.dim_b, k,
                                np.random.default_rng(child), idx == 0): idx
                for idx, child in enumerate(seeds)
            }
            for fut in concurrent.futures.as_completed(futures):
                results[futures[fut]] = fut.result()

        best_index = min(range(self.restarts), key=lambda i: (results[i].value, i))
        best = results[best_index]
        if not best.converged:
            logger.warning(f"El estimador no convergió en {self.iterations} iteraciones (valor {best.value:.6e})")

        return RoofEstimate(
            value=best.value,
            q=self.q,
            decomposition_size=k,
            iterations=self.iterations,
            restarts=self.restarts,
            seed=self.seed,
            converged=best.converged,
            best_restart=best_index,
            reconstruction_error=best.reconstruction_error,
            trace=best.trace
        )

    # =========================================================================
    # INTERNOS
    # =========================================================================
    def _row_value(self, row: np.ndarray, dim_a: int, dim_b: int) -> float:
        """p_i · C_q(ψ_i) para el vector no normalizado ψ̃_i."""
        weight = float(np.real(np.vdot(row, row)))
        if weight < WEIGHT_FLOOR:
            return 0.0
        singular = np.linalg.svd(row.reshape(dim_a, dim_b) / np.sqrt(weight), compute_uv=False)
        return weight * max(1.0 - float(np.sum((singular ** 2) ** self.q)), 0.0)

    def _run_restart(self, rho: np.ndarray, weighted: np.ndarray, dim_a: int, dim_b: int, k: int,
                     rng: np.random.Generator, from_eigenbasis: bool) -> _RestartResult:
        rank = weighted.shape[1]
        if from_eigenbasis:
            isometry = np.eye(k, rank, dtype=complex)
        else:
            isometry, _ = qr(crandn((k, rank), rng), mode='economic')

        # Filas ψ̃_i
        rows = isometry @ weighted.T
        contributions = np.array([self._row_value(r, dim_a, dim_b) for r in rows])
        current = float(contributions.sum())

        trace: List[float] = []
        reconstruction_error = self._reconstruction_error(rows, rho)
        decay = (FINAL_SCALE / INITIAL_SCALE) ** (1.0 / max(self.iterations - 1, 1))

        for step in range(self.iterations):
            if k > 1:
                scale = INITIAL_SCALE * decay ** step
                a, b = rng.choice(k, size=2, replace=False)
                angle = rng.normal(0.0, scale)
                phase = np.exp(1j * rng.uniform(0.0, 2 * np.pi))
                cos_t, sin_t = np.cos(angle), np.sin(angle)
                new_a = cos_t * rows[a] - phase * sin_t * rows[b]
                new_b = np.conj(phase) * sin_t * rows[a] + cos_t * rows[b]
                value_a = self._row_value(new_a, dim_a, dim_b)
                value_b = self._row_value(new_b, dim_a, dim_b)
                candidate = current - contributions[a] - contributions[b] + value_a + value_b
                if candidate < current:
                    rows[a], rows[b] = new_a, new_b
                    contributions[a], contributions[b] = value_a, value_b
                    # Recalcular para no acumular error de redondeo
                    current = float(contributions.sum())
            trace.append(current)

            if (step + 1) % CHECK_EVERY == 0:
                reconstruction_error = max(reconstruction_error, self._reconstruction_error(rows, rho))

        return _RestartResult(current, trace, reconstruction_error, self._converged(trace))

    @staticmethod
    def _reconstruction_error(rows: np.ndarray, rho: np.ndarray) -> float:
        """max |Σ ψ̃_i ψ̃_i† - ρ|."""
        rebuilt = rows.T @ rows.conj()
        return float(np.max(np.abs(rebuilt - rho)))

    @staticmethod
    def _converged(trace: List[float]) -> bool:
        if not trace:
            return True
        start = trace[int(len(trace) * (1.0 - CONVERGENCE_WINDOW))] if len(trace) > 1 else trace[0]
        end = trace[-1]
        if start <= WEIGHT_FLOOR:
            return True
        return (start - end) / start < CONVERGENCE_TOL


def roof_estimate(
    rho: DensityMatrix,
    q: float,
    decomposition_size: Optional[int] = None,
    iterations: Optional[int] = None,
    seed: Optional[int] = None,
    restarts: Optional[int] = None
) -> RoofEstimate:
    """
    Atajo funcional sobre ConvexRoofEstimator.
    """
    estimator = ConvexRoofEstimator(
        q=q,
        decomposition_size=decomposition_size,
        iterations=iterations,
        restarts=restarts,
        seed=seed
    )
    return estimator.estimate(rho)
