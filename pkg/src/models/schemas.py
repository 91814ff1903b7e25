"""
Modelos de datos usando Pydantic para validación y estructuración de datos.

Los modelos que transportan matrices o vectores guardan arrays de numpy
(complejos) y habilitan arbitrary_types_allowed. Los reportes sólo guardan
floats nativos para que model_dump(mode='json') los serialice directo.
"""
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .errors import (
    BadDimensionError,
    BadRangeError,
    NonFiniteError,
    NotNormalizedError,
    NotSquareError,
    ShapeMismatchError,
)

# Tolerancia de normalización de vectores de estado
NORM_TOL = 1e-9


# =============================================================================
# ENUMERACIONES
# =============================================================================
class Subsystem(str, Enum):
    """Selector de subsistema para trazas parciales."""
    A = 'A'
    B = 'B'


class Verdict(str, Enum):
    """Veredicto de los criterios de separabilidad."""
    ENTANGLED = 'entangled'
    SEPARABLE = 'separable'
    INCONCLUSIVE = 'inconclusive'


class OrthogonalityClass(str, Enum):
    """
    Clasificación de un par de estados puros según la ortogonalidad de sus
    marginales. one_sided_A significa marginales ortogonales sólo en A.
    """
    BI_ORTHOGONAL = 'bi_orthogonal'
    ONE_SIDED_A = 'one_sided_A'
    ONE_SIDED_B = 'one_sided_B'
    ORTHOGONAL_ONLY = 'orthogonal_only'
    GENERAL = 'general'


class Command(str, Enum):
    """Subcomandos de la CLI."""
    EVAL_PURE = 'eval-pure'
    BOUND = 'bound'
    ISOTROPIC = 'isotropic'
    FIG = 'fig'
    SUPERPOSE = 'superpose'
    SELFTEST = 'selftest'
    ROOF = 'roof'


class OutputFormat(str, Enum):
    JSON = 'json'
    CSV = 'csv'


class Suite(str, Enum):
    """Suites de propiedades de selftest."""
    LEMMA1 = 'lemma1'
    CRITERIA = 'criteria'
    ISOTROPIC = 'isotropic'
    SUPERPOSITION = 'superposition'
    ROOF = 'roof'
    ALL = 'all'


# =============================================================================
# FORMAS Y ESPECTROS
# =============================================================================
class BipartiteShape(BaseModel):
    """
    Dimensiones (m, n) de los subsistemas A y B.

    Convención de índices compuestos: la etiqueta (i, k) con i en A y k en B
    corresponde al índice plano i·n + k.
    """
    model_config = ConfigDict(frozen=True)

    dim_a: int = Field(..., description="Dimensión m del subsistema A")
    dim_b: int = Field(..., description="Dimensión n del subsistema B")

    @field_validator('dim_a', 'dim_b')
    @classmethod
    def validate_dimension(cls, v):
        if int(v) < 1:
            raise BadDimensionError(f"Las dimensiones deben ser >= 1, se recibió {v}")
        return int(v)

    @property
    def total(self) -> int:
        return self.dim_a * self.dim_b

    @property
    def min_dim(self) -> int:
        return min(self.dim_a, self.dim_b)

    def swapped(self) -> 'BipartiteShape':
        """Forma con los subsistemas intercambiados (n, m)."""
        return BipartiteShape(dim_a=self.dim_b, dim_b=self.dim_a)

    def as_list(self) -> List[int]:
        return [self.dim_a, self.dim_b]


class HermitianSpectrum(BaseModel):
    """
    Autovalores reales ordenados de mayor a menor.
    """
    eigenvalues: List[float] = Field(..., description="Autovalores en orden descendente")
    residual: float = Field(0.0, description="‖V diag(λ) V† - M‖_F / ‖M‖_F de la autodescomposición")

    def as_array(self) -> np.ndarray:
        return np.asarray(self.eigenvalues, dtype=float)


# =============================================================================
# ESTADOS
# =============================================================================
class PureState(BaseModel):
    """
    Vector de estado bipartito normalizado de largo m·n.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    amplitudes: np.ndarray = Field(..., description="Amplitudes complejas, índice plano i·n + k")
    shape: BipartiteShape

    @field_validator('amplitudes', mode='before')
    @classmethod
    def coerce_amplitudes(cls, v):
        vec = np.asarray(v, dtype=complex).reshape(-1)
        if not np.all(np.isfinite(vec)):
            raise NonFiniteError("El vector de estado contiene valores no finitos")
        return vec

    @model_validator(mode='after')
    def validate_state(self):
        if self.amplitudes.size != self.shape.total:
            raise ShapeMismatchError(
                f"El vector tiene {self.amplitudes.size} amplitudes pero la forma "
                f"{self.shape.as_list()} exige {self.shape.total}"
            )
        norm = float(np.linalg.norm(self.amplitudes))
        if abs(norm - 1.0) > NORM_TOL:
            raise NotNormalizedError(f"Norma del estado = {norm:.12f}, se esperaba 1")
        return self

    @classmethod
    def from_vector(cls, vector, shape: BipartiteShape, normalize: bool = False) -> 'PureState':
        """
        Crea un estado a partir de un vector, normalizándolo si se pide.

        Args:
            vector: amplitudes (cualquier array-like)
            shape: forma bipartita
            normalize: divide por la norma antes de validar

        Returns:
            PureState validado
        """
        vec = np.asarray(vector, dtype=complex).reshape(-1)
        if normalize:
            norm = np.linalg.norm(vec)
            if norm == 0:
                raise NotNormalizedError("No se puede normalizar el vector nulo")
            vec = vec / norm
        return cls(amplitudes=vec, shape=shape)

    def amplitude_matrix(self) -> np.ndarray:
        """Reacomoda las amplitudes como matriz m×n (fila = A, columna = B)."""
        return self.amplitudes.reshape(self.shape.dim_a, self.shape.dim_b)

    def projector(self) -> np.ndarray:
        """|ψ⟩⟨ψ| como matriz densa."""
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def to_density_matrix(self) -> 'DensityMatrix':
        return DensityMatrix(matrix=self.projector(), shape=self.shape)


class DensityMatrix(BaseModel):
    """
    Matriz hermítica, semidefinida positiva y de traza unitaria.

    shape es opcional para marginales de un solo sistema.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    matrix: np.ndarray = Field(..., description="Matriz densidad compleja")
    shape: Optional[BipartiteShape] = None

    @field_validator('matrix', mode='before')
    @classmethod
    def coerce_matrix(cls, v):
        mat = np.asarray(v, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise NotSquareError(f"Se esperaba una matriz cuadrada, forma recibida {mat.shape}")
        if not np.all(np.isfinite(mat)):
            raise NonFiniteError("La matriz contiene valores no finitos")
        return mat

    @model_validator(mode='after')
    def validate_density(self):
        # Import local: linalg depende de este módulo
        from ..utils.linalg import density_matrix_violations

        if self.shape is not None and self.matrix.shape[0] != self.shape.total:
            raise ShapeMismatchError(
                f"Matriz {self.matrix.shape[0]}×{self.matrix.shape[0]} incompatible con la forma "
                f"{self.shape.as_list()}"
            )
        density_matrix_violations(self.matrix, raise_on_violation=True)
        return self

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def require_shape(self) -> BipartiteShape:
        """Devuelve la forma bipartita o falla si el estado no la tiene."""
        if self.shape is None:
            raise ShapeMismatchError("La operación requiere un estado bipartito con forma (m, n)")
        return self.shape


class SchmidtDecomposition(BaseModel):
    """
    Descomposición |ψ⟩ = Σ √λ_i |a_i⟩|b_i⟩.

    left_basis y right_basis guardan los vectores como columnas.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    coefficients: List[float] = Field(..., description="λ_i en orden descendente")
    left_basis: np.ndarray
    right_basis: np.ndarray
    shape: BipartiteShape

    @property
    def rank(self) -> int:
        return int(sum(1 for c in self.coefficients if c > NORM_TOL))

    def reconstruct(self) -> np.ndarray:
        """Reconstruye el vector de amplitudes."""
        vec = np.zeros(self.shape.total, dtype=complex)
        for i, lam in enumerate(self.coefficients):
            vec += np.sqrt(lam) * np.kron(self.left_basis[:, i], self.right_basis[:, i])
        return vec


# =============================================================================
# REPORTES
# =============================================================================
class BoundReport(BaseModel):
    """
    Normas de los criterios PPT y realineamiento, la cota inferior de la
    q-concurrencia y los veredictos para un estado.
    """
    ppt_norm: float = Field(..., description="‖ρ^{T_A}‖₁")
    realign_norm: float = Field(..., description="‖R(ρ)‖₁")
    ppt_bound: float = Field(..., description="Cota a partir de la norma PPT")
    realign_bound: float = Field(..., description="Cota a partir de la norma realineada")
    lower_bound: float = Field(..., description="Máximo de ambas cotas, >= 0")
    entangled_by_ppt: bool
    entangled_by_realignment: bool
    verdict: Verdict
    m_used: int = Field(..., description="Dimensión mínima de los subsistemas")
    q: float
    tol: float


class Lemma1Report(BaseModel):
    """
    Valores de F_q para ρ_A, ρ_B y ρ_AB y el resultado de la
    subaditividad en ambas direcciones.
    """
    q: float
    tol: float
    f_a: float
    f_b: float
    f_ab: float
    nonnegative: bool
    symmetric: Optional[bool] = Field(None, description="F_q(ρ_A) = F_q(ρ_B); sólo para ρ_AB puro")
    lower_holds: bool = Field(..., description="|F_q(ρ_A) - F_q(ρ_B)| <= F_q(ρ_AB)")
    upper_holds: bool = Field(..., description="F_q(ρ_AB) <= F_q(ρ_A) + F_q(ρ_B)")
    schatten_holds: bool = Field(..., description="1 + ‖ρ_AB‖_q^q >= ‖ρ_A‖_q^q + ‖ρ_B‖_q^q")
    lower_gap: float
    upper_gap: float

    @property
    def passed(self) -> bool:
        return (
            self.nonnegative
            and self.lower_holds
            and self.upper_holds
            and self.schatten_holds
            and self.symmetric is not False
        )


class ConcavityReport(BaseModel):
    """
    Ambos lados de la concavidad y de la cuasi-convexidad de F_q.
    """
    q: float
    tol: float
    mixture_f: float = Field(..., description="F_q(Σ p_i ρ_i)")
    average_f: float = Field(..., description="Σ p_i F_q(ρ_i)")
    quasi_convex_rhs: float = Field(..., description="Σ p_i^q F_q(ρ_i) + 1 - Σ p_i^q")
    concave_holds: bool
    quasi_convex_holds: bool
    concavity_gap: float
    quasi_convexity_gap: float

    @property
    def passed(self) -> bool:
        return self.concave_holds and self.quasi_convex_holds


class EnvelopeCurve(BaseModel):
    """
    Envolvente convexa inferior co(ξ) muestreada en una grilla uniforme de F.
    """
    d: int
    q: float
    grid: List[Tuple[float, float]] = Field(..., description="Pares (F, valor) con F ascendente")
    hull_vertices: List[Tuple[float, float]] = Field(default_factory=list)

    def fidelities(self) -> np.ndarray:
        return np.array([f for f, _ in self.grid])

    def values(self) -> np.ndarray:
        return np.array([v for _, v in self.grid])

    def value_at(self, fidelity: float) -> float:
        """Interpolación lineal entre vértices del casco."""
        xs = np.array([f for f, _ in self.hull_vertices])
        ys = np.array([v for _, v in self.hull_vertices])
        return float(np.interp(fidelity, xs, ys))


class SuperpositionInput(BaseModel):
    """
    Par de estados puros de igual forma y coeficientes α, β con
    |α|² + |β|² = 1.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    phi: PureState
    psi: PureState
    alpha: complex
    beta: complex

    @field_validator('alpha', 'beta', mode='before')
    @classmethod
    def coerce_complex(cls, v):
        if isinstance(v, (list, tuple)):
            if len(v) != 2:
                raise BadRangeError("Los coeficientes complejos se escriben como [re, im]")
            return complex(float(v[0]), float(v[1]))
        return complex(v)

    @model_validator(mode='after')
    def validate_input(self):
        if self.phi.shape != self.psi.shape:
            raise ShapeMismatchError(
                f"Los estados tienen formas distintas: {self.phi.shape.as_list()} y "
                f"{self.psi.shape.as_list()}"
            )
        weight = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(weight - 1.0) > NORM_TOL:
            raise BadRangeError(f"|α|² + |β|² = {weight:.12f}, se esperaba 1")
        return self

    @property
    def shape(self) -> BipartiteShape:
        return self.phi.shape

    @property
    def overlap(self) -> complex:
        """⟨Φ|Ψ⟩."""
        return complex(np.vdot(self.phi.amplitudes, self.psi.amplitudes))

    @property
    def same_ray(self) -> bool:
        return abs(self.overlap) >= 1.0 - NORM_TOL


class SuperpositionReport(BaseModel):
    """
    Reporte completo de la superposición Γ = αΦ + βΨ.
    """
    orthogonality_class: OrthogonalityClass
    q: float
    alpha: List[float] = Field(..., description="[re, im]")
    beta: List[float] = Field(..., description="[re, im]")
    c_plus: float
    c_minus: float
    cq_gamma: float = Field(..., description="C_q(Γ'₊)")
    cq_gamma_minus: Optional[float] = Field(None, description="C_q(Γ'₋), ausente si c₋ ≈ 0")
    cq_phi: float
    cq_psi: float
    h_term: float
    f_a: float = Field(..., description="F_q(ρ_A) de la mezcla")
    f_b: float = Field(..., description="F_q(ρ_B) de la mezcla")
    marginal_gap: float
    delta_cq: float
    theorem_rhs: Optional[float] = None
    theorem_equality_holds: Optional[bool] = None
    sigma_ppt_norm: Optional[float] = Field(None, description="‖σ^{T_A}‖₁ con σ = |Γ'₋⟩⟨Γ'₋|")
    bound_eq58: float
    bound_eq59: Optional[float] = None
    bound_eq58_clipped: float
    corollary3_lhs: float
    corollary3_rhs: float
    corollary3_rhs_refined: Optional[float] = None


class RoofEstimate(BaseModel):
    """
    Mejor promedio Σ p_i C_q(ψ_i) encontrado: cota superior del techo convexo.
    """
    value: float
    q: float
    decomposition_size: int
    iterations: int
    restarts: int
    seed: int
    converged: bool
    best_restart: int
    reconstruction_error: float = Field(..., description="Máximo error de reconstrucción muestreado")
    trace: List[float] = Field(default_factory=list, description="Mejor valor por iteración")


class SuiteResult(BaseModel):
    """Resultado de una suite de propiedades."""
    name: str
    checked: int = 0
    failures: int = 0
    messages: List[str] = []

    @property
    def passed(self) -> bool:
        return self.failures == 0


class SelfTestReport(BaseModel):
    seed: int
    suites: List[SuiteResult]

    @property
    def total_checked(self) -> int:
        return sum(s.checked for s in self.suites)

    @property
    def total_failures(self) -> int:
        return sum(s.failures for s in self.suites)

    @property
    def passed(self) -> bool:
        return self.total_failures == 0


# =============================================================================
# CLI
# =============================================================================
class RunConfig(BaseModel):
    """
    Configuración de una ejecución de la CLI. Campos desconocidos se rechazan.
    """
    model_config = ConfigDict(extra='forbid', arbitrary_types_allowed=True)

    command: Command
    input_path: Optional[str] = None
    phi_path: Optional[str] = None
    psi_path: Optional[str] = None
    q: float = 2.0
    d: Optional[int] = None
    f: Optional[float] = None
    n: Optional[int] = Field(None, description="Número de figura para el comando fig")
    grid: Optional[int] = None
    resolution: Optional[int] = None
    alpha: Optional[complex] = None
    beta: Optional[complex] = None
    seed: Optional[int] = None
    tol: float = 1e-9
    output_path: Optional[str] = None
    format: OutputFormat = OutputFormat.JSON
    suite: Suite = Suite.ALL
    k: Optional[int] = None
    iterations: Optional[int] = None
    restarts: Optional[int] = None

    @field_validator('alpha', 'beta', mode='before')
    @classmethod
    def coerce_complex(cls, v):
        if v is None:
            return None
        if isinstance(v, (list, tuple)):
            return complex(float(v[0]), float(v[1]) if len(v) > 1 else 0.0)
        return complex(v)

