"""
Construcción de estados: descomposición de Schmidt, familias con nombre
(máximamente entrelazado, isotrópico) y generadores aleatorios.
"""
import logging
from typing import Optional, Sequence, Union

import numpy as np
from scipy.linalg import qr

from ..models.errors import (
    BadDimensionError,
    BadFidelityError,
    BadProbabilitiesError,
    BadRankError,
    DimensionMismatchError,
    ShapeMismatchError,
)
from ..models.schemas import BipartiteShape, DensityMatrix, PureState, SchmidtDecomposition

# Configurar logging
logger = logging.getLogger(__name__)

SeedLike = Union[None, int, np.random.SeedSequence, np.random.Generator]


def make_rng(seed: SeedLike) -> np.random.Generator:
    """
    Devuelve un Generator; si ya se recibe uno, se reutiliza.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def crandn(size, rng: np.random.Generator) -> np.ndarray:
    """
    Muestras de la normal compleja estándar.
    """
    return (rng.normal(size=size) + 1j * rng.normal(size=size)) / np.sqrt(2)


# =============================================================================
# SCHMIDT
# =============================================================================
def schmidt(psi: PureState) -> SchmidtDecomposition:
    """
    Descomposición de Schmidt vía SVD de la matriz de amplitudes m×n.

    Args:
        psi: estado puro bipartito

    Returns:
        SchmidtDecomposition con λ_i = s_i² en orden descendente
    """
    u, s, vh = np.linalg.svd(psi.amplitude_matrix(), full_matrices=False)
    coefficients = [float(x) for x in s ** 2]
    return SchmidtDecomposition(
        coefficients=coefficients,
        left_basis=u,
        right_basis=vh.T,
        shape=psi.shape
    )


def canonical_phase(vector: np.ndarray) -> np.ndarray:
    """
    Fija la fase global: la amplitud de mayor módulo queda real positiva.
    """
    vec = np.asarray(vector, dtype=complex)
    idx = int(np.argmax(np.abs(vec)))
    if abs(vec[idx]) == 0:
        return vec
    return vec * (abs(vec[idx]) / vec[idx])


# =============================================================================
# FAMILIAS CON NOMBRE
# =============================================================================
def maximally_entangled(d: int) -> PureState:
    """
    |Ψ⁺⟩ = (1/√d) Σ_i |ii⟩ en forma (d, d).
    """
    if d < 2:
        raise BadDimensionError(f"El estado máximamente entrelazado requiere d >= 2, se recibió {d}")
    vec = np.zeros(d * d, dtype=complex)
    vec[[i * d + i for i in range(d)]] = 1.0 / np.sqrt(d)
    return PureState(amplitudes=vec, shape=BipartiteShape(dim_a=d, dim_b=d))


def maximally_mixed(shape: BipartiteShape) -> DensityMatrix:
    """I/(m·n)."""
    return DensityMatrix(matrix=np.eye(shape.total) / shape.total, shape=shape)


def product_state(a, b) -> PureState:
    """
    |a⟩ ⊗ |b⟩ con ambos factores normalizados.
    """
    va = np.asarray(a, dtype=complex).reshape(-1)
    vb = np.asarray(b, dtype=complex).reshape(-1)
    vec = np.kron(va / np.linalg.norm(va), vb / np.linalg.norm(vb))
    return PureState(amplitudes=vec, shape=BipartiteShape(dim_a=va.size, dim_b=vb.size))


def schmidt_state(coefficients: Sequence[float], shape: BipartiteShape, offset_a: int = 0,
                  offset_b: int = 0) -> PureState:
    """
    Σ_i √λ_i |i + offset_a⟩|i + offset_b⟩.

    Args:
        coefficients: λ_i (se normalizan a suma 1)
        shape: forma bipartita
        offset_a: primer índice usado en A
        offset_b: primer índice usado en B

    Returns:
        PureState en forma de Schmidt
    """
    lam = np.asarray(coefficients, dtype=float)
    if offset_a + lam.size > shape.dim_a or offset_b + lam.size > shape.dim_b:
        raise ShapeMismatchError(
            f"{lam.size} coeficientes con desplazamientos ({offset_a}, {offset_b}) no caben en "
            f"{shape.as_list()}"
        )
    lam = lam / lam.sum()
    vec = np.zeros(shape.total, dtype=complex)
    for i, value in enumerate(lam):
        vec[(i + offset_a) * shape.dim_b + (i + offset_b)] = np.sqrt(value)
    return PureState(amplitudes=vec, shape=shape)


def isotropic_state(fidelity: float, d: int) -> DensityMatrix:
    """
    ρ_F = (1-F)/(d²-1) (I - P) + F P con P = |Ψ⁺⟩⟨Ψ⁺|.

    Args:
        fidelity: F en [0, 1]
        d: dimensión local >= 2

    Returns:
        DensityMatrix de forma (d, d)
    """
    if not 0.0 <= fidelity <= 1.0:
        raise BadFidelityError(f"La fidelidad debe estar en [0, 1], se recibió {fidelity}")
    projector = maximally_entangled(d).projector()
    identity = np.eye(d * d)
    matrix = (1.0 - fidelity) / (d * d - 1) * (identity - projector) + fidelity * projector
    return DensityMatrix(matrix=matrix, shape=BipartiteShape(dim_a=d, dim_b=d))


def fidelity_with_max_entangled(rho: DensityMatrix) -> float:
    """
    F = ⟨Ψ⁺|ρ|Ψ⁺⟩ para ρ de forma (d, d).
    """
    shape = rho.require_shape()
    if shape.dim_a != shape.dim_b:
        raise ShapeMismatchError(
            f"La fidelidad con |Ψ⁺⟩ requiere m = n, se recibió {shape.as_list()}"
        )
    vec = maximally_entangled(shape.dim_a).amplitudes
    value = float(np.real(np.vdot(vec, rho.matrix @ vec)))
    return float(np.clip(value, 0.0, 1.0))


def mixture(rhos: Sequence[DensityMatrix], probs: Sequence[float]) -> DensityMatrix:
    """
    Σ p_i ρ_i. Valida dimensiones y probabilidades.
    """
    p = validate_probabilities(probs, len(rhos))
    dims = {r.dim for r in rhos}
    if len(dims) != 1:
        raise DimensionMismatchError(f"Las matrices del ensamble tienen dimensiones {sorted(dims)}")
    matrix = sum(pi * r.matrix for pi, r in zip(p, rhos))
    return DensityMatrix(matrix=matrix, shape=rhos[0].shape)


def validate_probabilities(probs: Sequence[float], expected: Optional[int] = None,
                           tol: float = 1e-9) -> np.ndarray:
    """
    Verifica que probs sea no negativo, sume 1 y tenga el largo esperado.
    """
    p = np.asarray(probs, dtype=float).reshape(-1)
    if expected is not None and p.size != expected:
        raise BadProbabilitiesError(f"Se esperaban {expected} probabilidades, se recibieron {p.size}")
    if p.size == 0 or np.any(p < -tol) or abs(p.sum() - 1.0) > tol:
        raise BadProbabilitiesError(f"Probabilidades inválidas: suma {p.sum():.12f}")
    return np.clip(p, 0.0, None)


# =============================================================================
# GENERADORES ALEATORIOS
# =============================================================================
def random_unitary(d: int, seed: SeedLike = None) -> np.ndarray:
    """
    Unitaria Haar d×d: QR de una matriz de Ginibre con la diagonal de R
    llevada a fases unitarias.
    """
    rng = make_rng(seed)
    z = crandn((d, d), rng)
    q, r = qr(z)
    diag = np.diag(r)
    phases = diag / np.abs(diag)
    return q * phases


def random_pure_state(shape: BipartiteShape, seed: SeedLike = None) -> PureState:
    """
    Estado puro Haar: vector gaussiano complejo normalizado.
    """
    rng = make_rng(seed)
    vec = crandn(shape.total, rng)
    return PureState.from_vector(vec, shape, normalize=True)


def random_density_matrix(shape: BipartiteShape, rank: int, seed: SeedLike = None) -> DensityMatrix:
    """
    Construcción de Ginibre G G† / Tr(G G†) con G de ancho rank.

    Args:
        shape: forma bipartita
        rank: rango en [1, m·n]
        seed: semilla o Generator

    Returns:
        DensityMatrix de rango rank (con probabilidad 1)
    """
    if not 1 <= rank <= shape.total:
        raise BadRankError(f"El rango debe estar en [1, {shape.total}], se recibió {rank}")
    rng = make_rng(seed)
    g = crandn((shape.total, rank), rng)
    matrix = g @ g.conj().T
    matrix /= np.trace(matrix).real
    # Hermiticidad exacta
    matrix = (matrix + matrix.conj().T) / 2
    return DensityMatrix(matrix=matrix, shape=shape)


def random_product_density(shape: BipartiteShape, seed: SeedLike = None) -> DensityMatrix:
    """
    ρ_A ⊗ ρ_B con ambos factores de rango completo aleatorios.
    """
    rng = make_rng(seed)
    rho_a = random_density_matrix(BipartiteShape(dim_a=shape.dim_a, dim_b=1), shape.dim_a, rng)
    rho_b = random_density_matrix(BipartiteShape(dim_a=shape.dim_b, dim_b=1), shape.dim_b, rng)
    return DensityMatrix(matrix=np.kron(rho_a.matrix, rho_b.matrix), shape=shape)


def random_separable_state(shape: BipartiteShape, terms: int, seed: SeedLike = None) -> DensityMatrix:
    """
    Mezcla aleatoria de terms productos puros.
    """
    rng = make_rng(seed)
    probs = rng.dirichlet(np.ones(terms))
    matrix = np.zeros((shape.total, shape.total), dtype=complex)
    for p in probs:
        a = crandn(shape.dim_a, rng)
        b = crandn(shape.dim_b, rng)
        matrix += p * product_state(a, b).projector()
    return DensityMatrix(matrix=(matrix + matrix.conj().T) / 2, shape=shape)


def apply_local_unitaries(psi: PureState, u_a: np.ndarray, u_b: np.ndarray) -> PureState:
    """
    (U_A ⊗ U_B)|ψ⟩, calculado sobre la matriz de amplitudes como U_A M U_Bᵀ.
    """
    mat = u_a @ psi.amplitude_matrix() @ u_b.T
    return PureState.from_vector(mat.reshape(-1), psi.shape, normalize=True)
