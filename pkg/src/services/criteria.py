"""
Criterios de separabilidad PPT y de realineamiento, y la cota inferior
analítica de la q-concurrencia para estados mixtos arbitrarios.
"""
import concurrent.futures
import logging
from typing import List, Sequence

from ..config import Config
from ..models.errors import BadDimensionError
from ..models.schemas import BoundReport, DensityMatrix, Verdict
from ..utils.linalg import partial_transpose_a, realign, trace_norm
from .monotone import require_exponent

# Configurar logging
logger = logging.getLogger(__name__)

# Formas donde PPT es necesario y suficiente
PPT_SUFFICIENT_SHAPES = {(2, 2), (2, 3), (3, 2)}


def ppt_trace_norm(rho: DensityMatrix) -> float:
    """
    ‖ρ^{T_A}‖₁.
    """
    return trace_norm(partial_transpose_a(rho.matrix, rho.require_shape()))


def realignment_trace_norm(rho: DensityMatrix) -> float:
    """
    ‖R(ρ)‖₁.
    """
    return trace_norm(realign(rho.matrix, rho.require_shape()))


def bound_from_norm(norm: float, q: float, m: int) -> float:
    """
    (N^{q-1} - 1)² / (m^{2q-2} - m^{q-1}), 0 si N <= 1, acotado por 1 - m^{1-q}.

    Args:
        norm: norma de traza (PPT o realineada)
        q: exponente >= 2
        m: dimensión mínima de los subsistemas (>= 2)

    Returns:
        Valor de la cota, >= 0
    """
    require_exponent(q)
    if m < 2:
        raise BadDimensionError(f"La cota requiere min(m, n) >= 2, se recibió {m}")
    if norm <= 1.0:
        return 0.0
    value = (norm ** (q - 1) - 1.0) ** 2 / (m ** (2 * q - 2) - m ** (q - 1))
    return float(min(value, 1.0 - m ** (1 - q)))


def q_concurrence_lower_bound(rho: DensityMatrix, q: float) -> float:
    """
    Cota inferior de C_q(ρ) a partir del máximo de ambas normas.
    """
    shape = rho.require_shape()
    norm = max(ppt_trace_norm(rho), realignment_trace_norm(rho))
    return bound_from_norm(norm, q, shape.min_dim)


def classify(rho: DensityMatrix, tol: float = None, q: float = 2.0) -> BoundReport:
    """
    Evalúa ambos criterios, la cota inferior y el veredicto.

    Un flag verdadero certifica entrelazamiento. Con ambos flags falsos el
    veredicto es separable sólo en las formas (2,2), (2,3) y (3,2).

    Args:
        rho: estado bipartito
        tol: tolerancia de los veredictos (default Config.get_tolerance())
        q: exponente de la cota

    Returns:
        BoundReport completo
    """
    tol = Config.get_tolerance() if tol is None else tol
    shape = rho.require_shape()
    m = shape.min_dim

    ppt_norm = ppt_trace_norm(rho)
    realign_norm = realignment_trace_norm(rho)
    ppt_bound = bound_from_norm(ppt_norm, q, m)
    realign_bound = bound_from_norm(realign_norm, q, m)

    entangled_by_ppt = ppt_norm > 1.0 + tol
    entangled_by_realignment = realign_norm > 1.0 + tol

    if entangled_by_ppt or entangled_by_realignment:
        verdict = Verdict.ENTANGLED
    elif (shape.dim_a, shape.dim_b) in PPT_SUFFICIENT_SHAPES:
        verdict = Verdict.SEPARABLE
    else:
        verdict = Verdict.INCONCLUSIVE

    return BoundReport(
        ppt_norm=ppt_norm,
        realign_norm=realign_norm,
        ppt_bound=ppt_bound,
        realign_bound=realign_bound,
        lower_bound=max(ppt_bound, realign_bound),
        entangled_by_ppt=entangled_by_ppt,
        entangled_by_realignment=entangled_by_realignment,
        verdict=verdict,
        m_used=m,
        q=q,
        tol=tol
    )


def classify_batch(rhos: Sequence[DensityMatrix], q: float = 2.0, tol: float = None,
                   workers: int = None) -> List[BoundReport]:
    """
    Clasifica un ensamble en paralelo; el resultado respeta el orden de entrada.
    """
    workers = workers or Config.WORKERS
    logger.info(f"Clasificando {len(rhos)} estados con {workers} workers")
    results: List[BoundReport] = [None] * len(rhos)
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        futures = {executor.submit(classify, rho, tol, q): idx for idx, rho in enumerate(rhos)}
        for fut in concurrent.futures.as_completed(futures):
            results[futures[fut]] = fut.result()
    return results
