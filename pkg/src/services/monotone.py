"""
La q-concurrencia, su función generadora F_q, el término de mezcla binaria
h_q, la entropía de Tsallis y los predicados de F_q (positividad,
simetría, subaditividad, concavidad y cuasi-convexidad de F_q).
"""
import logging
from typing import Sequence, Tuple, Union

import numpy as np

from ..config import Config
from ..models.errors import BadExponentError, BadRangeError, DimensionMismatchError
from ..models.schemas import (
    ConcavityReport,
    DensityMatrix,
    Lemma1Report,
    PureState,
    Subsystem,
)
from ..utils.linalg import partial_trace, trace_power
from .states import schmidt, validate_probabilities

# Configurar logging
logger = logging.getLogger(__name__)

# F_q en [-CLAMP, 0) se considera 0 exacto
CLAMP = 1e-12


def require_exponent(q: float, minimum: float = 2.0) -> float:
    """
    Valida el exponente q.

    Raises:
        BadExponentError: si q < minimum o no es finito
    """
    if not np.isfinite(q) or q < minimum:
        raise BadExponentError(f"El exponente debe ser >= {minimum:g}, se recibió {q}")
    return float(q)


def _clamp_nonnegative(value: float) -> float:
    if -CLAMP <= value < 0:
        return 0.0
    return float(value)


def f_q(rho: Union[DensityMatrix, np.ndarray], q: float) -> float:
    """
    F_q(ρ) = 1 - Tr ρ^q.

    Args:
        rho: matriz densidad
        q: exponente >= 2

    Returns:
        Valor en [0, 1), 0 sólo para estados puros
    """
    require_exponent(q)
    return _clamp_nonnegative(1.0 - trace_power(rho, q))


def q_concurrence_from_coefficients(coefficients: Sequence[float], q: float) -> float:
    """
    1 - Σ λ_i^q para coeficientes de Schmidt λ_i.
    """
    require_exponent(q)
    lam = np.clip(np.asarray(coefficients, dtype=float), 0.0, None)
    return _clamp_nonnegative(1.0 - float(np.sum(lam ** q)))


def q_concurrence_pure(psi: PureState, q: float) -> float:
    """
    C_q(|ψ⟩) = 1 - Tr ρ_A^q, calculada desde los coeficientes de Schmidt.

    Args:
        psi: estado puro bipartito
        q: exponente >= 2

    Returns:
        Valor en [0, 1 - m^{1-q}] con m la dimensión mínima
    """
    require_exponent(q)
    return q_concurrence_from_coefficients(schmidt(psi).coefficients, q)


def concurrence_pure(psi: PureState) -> float:
    """
    Concurrencia estándar C = √(2 (1 - Tr ρ_A²)).
    """
    return float(np.sqrt(2.0 * q_concurrence_pure(psi, 2.0)))


def tsallis_entropy(rho: Union[DensityMatrix, np.ndarray], q: float) -> float:
    """
    T_q(ρ) = (1 - Tr ρ^q)/(q - 1) para q > 1.
    """
    if not np.isfinite(q) or q <= 1:
        raise BadExponentError(f"La entropía de Tsallis requiere q > 1, se recibió {q}")
    return _clamp_nonnegative(1.0 - trace_power(rho, q)) / (q - 1.0)


def h_q(t: float, q: float) -> float:
    """
    h_q(t) = 1 - t^q - (1 - t)^q.

    Args:
        t: valor en [0, 1]
        q: exponente >= 2

    Returns:
        Valor en [0, 1 - 2^{1-q}]
    """
    require_exponent(q)
    if t < -CLAMP or t > 1 + CLAMP:
        raise BadRangeError(f"h_q requiere t en [0, 1], se recibió {t}")
    t = min(max(t, 0.0), 1.0)
    return _clamp_nonnegative(1.0 - t ** q - (1.0 - t) ** q)


def reduced_states(rho: DensityMatrix) -> Tuple[np.ndarray, np.ndarray]:
    """
    Marginales (ρ_A, ρ_B) de un estado bipartito.
    """
    shape = rho.require_shape()
    return (
        partial_trace(rho.matrix, shape, Subsystem.B),
        partial_trace(rho.matrix, shape, Subsystem.A),
    )


def is_pure(rho: Union[DensityMatrix, np.ndarray], tol: float = 1e-9) -> bool:
    """Tr ρ² = 1 dentro de la tolerancia."""
    return abs(1.0 - trace_power(rho, 2.0)) <= tol


# =============================================================================
# PREDICADOS DE F_q
# =============================================================================
def check_lemma1(rho_ab: DensityMatrix, q: float, tol: float = None) -> Lemma1Report:
    """
    Evalúa positividad, simetría (para ρ_AB puro) y ambas direcciones de la
    subaditividad de F_q, junto con la forma en normas de Schatten.

    Args:
        rho_ab: estado bipartito
        q: exponente >= 2
        tol: tolerancia (default Config.get_tolerance())

    Returns:
        Lemma1Report con los tres valores de F_q y el resultado de cada desigualdad
    """
    tol = Config.get_tolerance() if tol is None else tol
    require_exponent(q)
    rho_a, rho_b = reduced_states(rho_ab)

    tr_a = trace_power(rho_a, q)
    tr_b = trace_power(rho_b, q)
    tr_ab = trace_power(rho_ab, q)
    f_a = _clamp_nonnegative(1.0 - tr_a)
    f_b = _clamp_nonnegative(1.0 - tr_b)
    f_ab = _clamp_nonnegative(1.0 - tr_ab)

    lower_gap = f_ab - abs(f_a - f_b)
    upper_gap = f_a + f_b - f_ab
    schatten_gap = 1.0 + tr_ab - tr_a - tr_b

    symmetric = None
    if abs(1.0 - tr_ab) <= tol:
        symmetric = abs(f_a - f_b) <= tol

    report = Lemma1Report(
        q=q,
        tol=tol,
        f_a=f_a,
        f_b=f_b,
        f_ab=f_ab,
        nonnegative=min(f_a, f_b, f_ab) >= -tol,
        symmetric=symmetric,
        lower_holds=lower_gap >= -tol,
        upper_holds=upper_gap >= -tol,
        schatten_holds=schatten_gap >= -tol,
        lower_gap=lower_gap,
        upper_gap=upper_gap
    )
    if not report.passed:
        logger.debug(f"Predicados de F_q no se cumplen: {report.model_dump()}")
    return report


def check_concavity(rhos: Sequence[DensityMatrix], probs: Sequence[float], q: float,
                    tol: float = None) -> ConcavityReport:
    """
    Concavidad Σ p_i F_q(ρ_i) <= F_q(Σ p_i ρ_i) y cuasi-convexidad
    F_q(Σ p_i ρ_i) <= Σ p_i^q F_q(ρ_i) + 1 - Σ p_i^q.

    Args:
        rhos: ensamble de matrices de igual dimensión
        probs: probabilidades (suman 1)
        q: exponente >= 2
        tol: tolerancia

    Returns:
        ConcavityReport con ambos lados de cada desigualdad
    """
    tol = Config.get_tolerance() if tol is None else tol
    require_exponent(q)
    dims = {r.dim for r in rhos}
    if len(dims) != 1:
        raise DimensionMismatchError(f"Las matrices del ensamble tienen dimensiones {sorted(dims)}")
    p = validate_probabilities(probs, len(rhos))

    mixed = sum(pi * r.matrix for pi, r in zip(p, rhos))
    mixture_f = f_q(mixed, q)
    individual = np.array([f_q(r, q) for r in rhos])
    average_f = float(np.dot(p, individual))
    p_q = p ** q
    quasi_convex_rhs = float(np.dot(p_q, individual) + 1.0 - p_q.sum())

    return ConcavityReport(
        q=q,
        tol=tol,
        mixture_f=mixture_f,
        average_f=average_f,
        quasi_convex_rhs=quasi_convex_rhs,
        concave_holds=mixture_f - average_f >= -tol,
        quasi_convex_holds=quasi_convex_rhs - mixture_f >= -tol,
        concavity_gap=mixture_f - average_f,
        quasi_convexity_gap=quasi_convex_rhs - mixture_f
    )


def characteristic_identity_residual(rho: Union[DensityMatrix, np.ndarray]) -> float:
    """
    |Σ_j a_j Tr ρ^{d-j}| con a_j los coeficientes del polinomio característico.

    Por Cayley-Hamilton el residuo es 0; como Tr ρ_A^j = 1 - C_j(ψ) para
    j >= 2, esto es una relación lineal entre q-concurrencias enteras.
    """
    mat = rho.matrix if hasattr(rho, 'matrix') else np.asarray(rho, dtype=complex)
    d = mat.shape[0]
    coefficients = np.poly(mat)
    traces = [np.trace(np.linalg.matrix_power(mat, d - j)) for j in range(d + 1)]
    return float(abs(np.dot(coefficients, traces)))
