"""
Álgebra lineal compleja densa: espectros, normas y operaciones de índices
bipartitos (traza parcial, transpuesta parcial, realineamiento).

Convención de índices: para la forma (m, n) la etiqueta (i, k), con i en A y
k en B, corresponde al índice plano i·n + k. Todas las operaciones bipartitas
reacomodan la matriz como tensor (m, n, m, n) con ejes (i, k, j, l) donde
(i, k) es la fila y (j, l) la columna.
"""
import logging
from typing import List, Optional, Tuple, Union

import numpy as np

from ..config import Config
from ..models.errors import (
    BadExponentError,
    InvalidDensityMatrixError,
    NonFiniteError,
    NotHermitianError,
    NotPSDError,
    NotSquareError,
    ShapeMismatchError,
)
from ..models.schemas import BipartiteShape, HermitianSpectrum, Subsystem

# Configurar logging
logger = logging.getLogger(__name__)

# Negativos más grandes que esto (pero dentro de la tolerancia) se registran
CLAMP_WARNING_LEVEL = 1e-12
# Residuo relativo máximo de V diag(λ) V† frente a la matriz original
RECONSTRUCTION_TOL = 1e-10


# =============================================================================
# VALIDACIONES
# =============================================================================
def _as_matrix(matrix) -> np.ndarray:
    """
    Acepta un array-like o un DensityMatrix y devuelve un ndarray complejo finito.
    """
    if hasattr(matrix, 'matrix'):
        matrix = matrix.matrix
    mat = np.asarray(matrix, dtype=complex)
    if not np.all(np.isfinite(mat)):
        raise NonFiniteError("La matriz contiene valores no finitos")
    return mat


def _require_square(mat: np.ndarray) -> None:
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise NotSquareError(f"Se esperaba una matriz cuadrada, forma recibida {mat.shape}")


def _require_bipartite(mat: np.ndarray, shape: BipartiteShape) -> Tuple[int, int]:
    if mat.ndim != 2 or mat.shape != (shape.total, shape.total):
        raise ShapeMismatchError(
            f"Matriz de forma {mat.shape} incompatible con (m, n) = {shape.as_list()}"
        )
    return shape.dim_a, shape.dim_b


def asymmetry(matrix) -> float:
    """
    max |M - M†| de una matriz cuadrada.
    """
    mat = _as_matrix(matrix)
    _require_square(mat)
    if mat.size == 0:
        return 0.0
    return float(np.max(np.abs(mat - mat.conj().T)))


def density_matrix_violations(
    matrix,
    hermitian_tol: Optional[float] = None,
    psd_tol: Optional[float] = None,
    trace_tol: Optional[float] = None,
    raise_on_violation: bool = False
) -> List[str]:
    """
    Lista los invariantes de matriz densidad que la matriz viola.

    Args:
        matrix: matriz cuadrada
        hermitian_tol: tolerancia de hermiticidad (default Config.HERMITIAN_TOL)
        psd_tol: tolerancia de positividad (default Config.PSD_TOL)
        trace_tol: tolerancia de traza (default Config.TRACE_TOL)
        raise_on_violation: lanza InvalidDensityMatrixError si hay violaciones

    Returns:
        Lista (posiblemente vacía) de descripciones de violaciones
    """
    hermitian_tol = Config.HERMITIAN_TOL if hermitian_tol is None else hermitian_tol
    psd_tol = Config.PSD_TOL if psd_tol is None else psd_tol
    trace_tol = Config.TRACE_TOL if trace_tol is None else trace_tol

    mat = _as_matrix(matrix)
    _require_square(mat)

    violations = []
    asym = asymmetry(mat)
    if asym > hermitian_tol:
        violations.append(f"no hermítica (max|M - M†| = {asym:.3e})")

    eigenvalues = np.linalg.eigvalsh((mat + mat.conj().T) / 2)
    min_eig = float(eigenvalues.min()) if eigenvalues.size else 0.0
    if min_eig < -psd_tol:
        violations.append(f"no semidefinida positiva (autovalor mínimo {min_eig:.3e})")

    trace = complex(np.trace(mat))
    if abs(trace - 1.0) > trace_tol:
        violations.append(f"traza {trace.real:.12f}{trace.imag:+.3e}j distinta de 1")

    if violations and raise_on_violation:
        raise InvalidDensityMatrixError(violations)
    return violations


# =============================================================================
# ESPECTROS Y NORMAS
# =============================================================================
def hermitian_eigh(matrix, tol: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    Autodescomposición de una matriz hermítica.

    Args:
        matrix: matriz hermítica
        tol: tolerancia de hermiticidad

    Returns:
        Tupla (autovalores descendentes, autovectores en columnas en el mismo orden)
    """
    tol = Config.HERMITIAN_TOL if tol is None else tol
    mat = _as_matrix(matrix)
    _require_square(mat)

    asym = asymmetry(mat)
    if asym > tol:
        raise NotHermitianError(asym, tol)

    # Simetrizar para que eigh vea exactamente una matriz hermítica
    values, vectors = np.linalg.eigh((mat + mat.conj().T) / 2)
    order = np.argsort(values)[::-1]
    return values[order], vectors[:, order]


def hermitian_eigenvalues(matrix, tol: Optional[float] = None) -> HermitianSpectrum:
    """
    Autovalores reales de una matriz hermítica, en orden descendente.

    Args:
        matrix: matriz hermítica (ndarray o DensityMatrix)
        tol: tolerancia de hermiticidad (default Config.HERMITIAN_TOL)

    Returns:
        HermitianSpectrum con los autovalores ordenados y el residuo relativo
        de la reconstrucción

    Raises:
        NotSquareError: si la matriz no es cuadrada
        NotHermitianError: si max|M - M†| supera la tolerancia
    """
    values, vectors = hermitian_eigh(matrix, tol)
    mat = _as_matrix(matrix)
    residual = reconstruction_residual((mat + mat.conj().T) / 2, values, vectors)
    if residual > RECONSTRUCTION_TOL:
        logger.warning(f"Residuo de la autodescomposición {residual:.3e} supera {RECONSTRUCTION_TOL:.0e}")
    return HermitianSpectrum(eigenvalues=[float(v) for v in values], residual=residual)


def reconstruction_residual(matrix, values: np.ndarray, vectors: np.ndarray) -> float:
    """
    ‖V diag(λ) V† - M‖_F / ‖M‖_F (absoluto si M es nula).
    """
    mat = _as_matrix(matrix)
    rebuilt = (vectors * values) @ vectors.conj().T
    scale = np.linalg.norm(mat)
    error = np.linalg.norm(rebuilt - mat)
    return float(error / scale) if scale > 0 else float(error)


def singular_values(matrix) -> np.ndarray:
    """
    Valores singulares en orden descendente (min(filas, columnas) valores).
    """
    mat = _as_matrix(matrix)
    if mat.size == 0:
        return np.zeros(0)
    return np.linalg.svd(mat, compute_uv=False)


def trace_norm(matrix) -> float:
    """
    ‖X‖₁ = Tr √(X X†), suma de los valores singulares.
    """
    return float(np.sum(singular_values(matrix)))


def _clamped_spectrum(matrix, psd_tol: Optional[float] = None) -> np.ndarray:
    """
    Espectro de una matriz semidefinida positiva con los negativos
    de redondeo llevados a 0.
    """
    psd_tol = Config.PSD_TOL if psd_tol is None else psd_tol
    values = hermitian_eigenvalues(matrix).as_array()
    if values.size and values[-1] < -psd_tol:
        raise NotPSDError(float(values[-1]), psd_tol)
    if values.size and values[-1] < -CLAMP_WARNING_LEVEL:
        logger.warning(f"Autovalor negativo {values[-1]:.3e} llevado a 0")
    return np.clip(values, 0.0, None)


def schatten_q_norm(matrix, q: float) -> float:
    """
    Norma de Schatten ‖A‖_q = (Tr A^q)^{1/q} para A semidefinida positiva.

    Args:
        matrix: matriz hermítica PSD
        q: exponente real >= 1

    Returns:
        (Σ λ_i^q)^{1/q}
    """
    if q < 1:
        raise BadExponentError(f"La norma de Schatten requiere q >= 1, se recibió {q}")
    values = _clamped_spectrum(matrix)
    return float(np.sum(values ** q) ** (1.0 / q))


def trace_power(rho, q: float) -> float:
    """
    Tr ρ^q calculado espectralmente, para cualquier q real >= 1.

    Args:
        rho: matriz densidad (ndarray o DensityMatrix)
        q: exponente real >= 1

    Returns:
        Σ max(λ_i, 0)^q, en [0, 1]
    """
    if q < 1:
        raise BadExponentError(f"Tr ρ^q requiere q >= 1, se recibió {q}")
    values = _clamped_spectrum(rho)
    return float(min(np.sum(values ** q), 1.0))


# =============================================================================
# OPERACIONES BIPARTITAS
# =============================================================================
def _as_tensor(matrix, shape: BipartiteShape) -> np.ndarray:
    mat = _as_matrix(matrix)
    m, n = _require_bipartite(mat, shape)
    return mat.reshape(m, n, m, n)


def partial_trace(matrix, shape: BipartiteShape, over: Union[Subsystem, str]) -> np.ndarray:
    """
    Traza parcial sobre el subsistema indicado.

    Args:
        matrix: matriz (m·n)×(m·n)
        shape: forma bipartita
        over: subsistema a trazar (A o B)

    Returns:
        Matriz n×n si se traza A, m×m si se traza B
    """
    tensor = _as_tensor(matrix, shape)
    if Subsystem(over) == Subsystem.B:
        return np.einsum('ikjk->ij', tensor)
    return np.einsum('ikil->kl', tensor)


def partial_transpose_a(matrix, shape: BipartiteShape) -> np.ndarray:
    """
    Transpuesta parcial sobre A: el elemento (i,k),(j,l) pasa a (j,k),(i,l).
    """
    tensor = _as_tensor(matrix, shape)
    return tensor.transpose(2, 1, 0, 3).reshape(shape.total, shape.total)


def partial_transpose_b(matrix, shape: BipartiteShape) -> np.ndarray:
    """
    Transpuesta parcial sobre B: el elemento (i,k),(j,l) pasa a (i,l),(j,k).
    """
    tensor = _as_tensor(matrix, shape)
    return tensor.transpose(0, 3, 2, 1).reshape(shape.total, shape.total)


def realign(matrix, shape: BipartiteShape) -> np.ndarray:
    """
    Matriz realineada R(ρ) de tamaño m²×n².

    El elemento de fila (i, j) y columna (k, l) es el elemento de ρ en la
    fila (i, k) y la columna (j, l).
    """
    tensor = _as_tensor(matrix, shape)
    m, n = shape.dim_a, shape.dim_b
    return tensor.transpose(0, 2, 1, 3).reshape(m * m, n * n)


def swap_subsystems(matrix, shape: BipartiteShape) -> np.ndarray:
    """
    Intercambia los factores: la matriz resultante se interpreta con la forma (n, m).
    """
    tensor = _as_tensor(matrix, shape)
    return tensor.transpose(1, 0, 3, 2).reshape(shape.total, shape.total)
