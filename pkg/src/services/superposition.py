"""
Entrelazamiento de superposiciones Γ = αΦ + βΨ: clasificación del par según
la ortogonalidad de sus marginales, valores exactos para pares
bi-ortogonales y ortogonales de un lado, cotas superiores para pares
arbitrarios, el incremento ΔC_q y los ejemplos con forma cerrada.
"""
import concurrent.futures
import logging
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..config import Config
from ..models.errors import (
    BadRangeError,
    DegenerateSuperpositionError,
    ShapeMismatchError,
    WrongClassError,
)
from ..models.schemas import (
    BipartiteShape,
    OrthogonalityClass,
    PureState,
    Subsystem,
    SuperpositionInput,
    SuperpositionReport,
)
from ..utils.linalg import partial_trace, partial_transpose_a, trace_norm
from .monotone import f_q, h_q, q_concurrence_pure, require_exponent
from .states import (
    SeedLike,
    apply_local_unitaries,
    make_rng,
    random_pure_state,
    random_unitary,
    schmidt_state,
)

# Configurar logging
logger = logging.getLogger(__name__)

# Norma por debajo de la cual Γ± se considera nula
DEGENERATE_NORM = 1e-9

ONE_SIDED = (OrthogonalityClass.ONE_SIDED_A, OrthogonalityClass.ONE_SIDED_B)


# =============================================================================
# CLASIFICACIÓN Y SUPERPOSICIÓN
# =============================================================================
def marginal_overlaps(phi: PureState, psi: PureState) -> Tuple[float, float]:
    """
    (t_A, t_B) con t_A = Tr[Tr_B Φ · Tr_B Ψ] y t_B = Tr[Tr_A Φ · Tr_A Ψ].
    """
    if phi.shape != psi.shape:
        raise ShapeMismatchError(
            f"Los estados tienen formas distintas: {phi.shape.as_list()} y {psi.shape.as_list()}"
        )
    shape = phi.shape
    phi_rho, psi_rho = phi.projector(), psi.projector()
    t_a = np.trace(partial_trace(phi_rho, shape, Subsystem.B) @ partial_trace(psi_rho, shape, Subsystem.B))
    t_b = np.trace(partial_trace(phi_rho, shape, Subsystem.A) @ partial_trace(psi_rho, shape, Subsystem.A))
    return float(abs(t_a)), float(abs(t_b))


def classify_pair(phi: PureState, psi: PureState, tol: float = None) -> OrthogonalityClass:
    """
    Clasifica el par según la ortogonalidad de sus marginales.

    one_sided_A indica que sólo las marginales en A son ortogonales.

    Args:
        phi: primer estado
        psi: segundo estado (misma forma)
        tol: tolerancia de ortogonalidad

    Returns:
        OrthogonalityClass del par
    """
    tol = Config.get_tolerance() if tol is None else tol
    t_a, t_b = marginal_overlaps(phi, psi)
    if t_a <= tol and t_b <= tol:
        return OrthogonalityClass.BI_ORTHOGONAL
    if t_a <= tol:
        return OrthogonalityClass.ONE_SIDED_A
    if t_b <= tol:
        return OrthogonalityClass.ONE_SIDED_B
    if abs(np.vdot(phi.amplitudes, psi.amplitudes)) <= tol:
        return OrthogonalityClass.ORTHOGONAL_ONLY
    return OrthogonalityClass.GENERAL


def superpose(data: SuperpositionInput) -> Tuple[PureState, Optional[PureState], float, float]:
    """
    Γ± = αΦ ± βΨ normalizados junto con c± = ‖Γ±‖.

    Returns:
        Tupla (Γ'₊, Γ'₋ o None si c₋ ≈ 0, c₊, c₋)

    Raises:
        DegenerateSuperpositionError: si c₊ ≈ 0
    """
    plus = data.alpha * data.phi.amplitudes + data.beta * data.psi.amplitudes
    minus = data.alpha * data.phi.amplitudes - data.beta * data.psi.amplitudes
    c_plus = float(np.linalg.norm(plus))
    c_minus = float(np.linalg.norm(minus))
    if c_plus <= DEGENERATE_NORM:
        raise DegenerateSuperpositionError("La superposición αΦ + βΨ tiene norma nula")

    gamma_plus = PureState.from_vector(plus, data.shape, normalize=True)
    gamma_minus = None
    if c_minus > DEGENERATE_NORM:
        gamma_minus = PureState.from_vector(minus, data.shape, normalize=True)
    return gamma_plus, gamma_minus, c_plus, c_minus


def mixture_marginal_f(data: SuperpositionInput, q: float) -> Tuple[float, float]:
    """
    F_q(ρ_A) y F_q(ρ_B) de ρ_AB = |α|²|Φ⟩⟨Φ| + |β|²|Ψ⟩⟨Ψ|.
    """
    rho = abs(data.alpha) ** 2 * data.phi.projector() + abs(data.beta) ** 2 * data.psi.projector()
    f_a = f_q(partial_trace(rho, data.shape, Subsystem.B), q)
    f_b = f_q(partial_trace(rho, data.shape, Subsystem.A), q)
    return f_a, f_b


def _weighted_terms(data: SuperpositionInput, q: float) -> Tuple[float, float, float]:
    """
    (|α|^{2q} C_q(Φ) + |β|^{2q} C_q(Ψ), h_q(|α|²), |α|²) compartidos por los teoremas.
    """
    require_exponent(q)
    weight = abs(data.alpha) ** 2
    weighted = (
        weight ** q * q_concurrence_pure(data.phi, q)
        + (abs(data.beta) ** 2) ** q * q_concurrence_pure(data.psi, q)
    )
    return weighted, h_q(weight, q), weight


def _rhs(data: SuperpositionInput, q: float) -> float:
    weighted, h_term, _ = _weighted_terms(data, q)
    f_a, f_b = mixture_marginal_f(data, q)
    return weighted + h_term - abs(f_a - f_b)


# =============================================================================
# TEOREMAS
# =============================================================================
def theorem2_value(data: SuperpositionInput, q: float, tol: float = None) -> float:
    """
    |α|^{2q} C_q(Φ) + |β|^{2q} C_q(Ψ) + h_q(|α|²) para pares bi-ortogonales.

    Raises:
        WrongClassError: si el par no es bi-ortogonal
    """
    pair_class = classify_pair(data.phi, data.psi, tol)
    if pair_class != OrthogonalityClass.BI_ORTHOGONAL:
        raise WrongClassError(f"Se requiere un par bi-ortogonal, el par es {pair_class.value}")
    weighted, h_term, _ = _weighted_terms(data, q)
    return weighted + h_term


def theorem3_value(data: SuperpositionInput, q: float, tol: float = None) -> float:
    """
    |α|^{2q} C_q(Φ) + |β|^{2q} C_q(Ψ) + h_q(|α|²) - |F_q(ρ_A) - F_q(ρ_B)|
    para pares ortogonales de un lado (también acepta bi-ortogonales,
    donde la brecha es 0).

    Raises:
        WrongClassError: si ninguna de las marginales es ortogonal
    """
    pair_class = classify_pair(data.phi, data.psi, tol)
    if pair_class not in ONE_SIDED and pair_class != OrthogonalityClass.BI_ORTHOGONAL:
        raise WrongClassError(f"Se requiere un par ortogonal de un lado, el par es {pair_class.value}")
    return _rhs(data, q)


def _norm_term(norm: float, q: float, m: int) -> float:
    """(N^{q-1} - 1)² / (m^{2q-2} - m^{q-1}), 0 si N <= 1."""
    if norm <= 1.0:
        return 0.0
    return (norm ** (q - 1) - 1.0) ** 2 / (m ** (2 * q - 2) - m ** (q - 1))


def theorem4_bounds_from_norm(data: SuperpositionInput, q: float, sigma_norm: Optional[float],
                              c_plus: float = None, c_minus: float = None) -> Tuple[float, Optional[float]]:
    """
    Par de cotas superiores de C_q(Γ'₊) para una norma ‖σ^{T_A}‖₁ dada.

    Args:
        data: par y coeficientes
        q: exponente >= 2
        sigma_norm: ‖σ^{T_A}‖₁; None omite la segunda cota
        c_plus: ‖Γ₊‖ (se calcula si no se pasa)
        c_minus: ‖Γ₋‖ (se calcula si no se pasa)

    Returns:
        Tupla (cota simple, cota refinada o None)
    """
    if c_plus is None or c_minus is None:
        _, _, c_plus, c_minus = superpose(data)
    bound_simple = 2.0 / c_plus ** 2 * _rhs(data, q)
    if sigma_norm is None:
        return bound_simple, None
    m = data.shape.min_dim
    refined = bound_simple - c_minus ** 2 / c_plus ** 2 * _norm_term(sigma_norm, q, m)
    return bound_simple, refined


def theorem4_bounds(data: SuperpositionInput, q: float, tol: float = None) -> Tuple[float, Optional[float]]:
    """
    Cotas superiores de C_q(Γ'₊) para cualquier par.

    La cota refinada usa σ = |Γ'₋⟩⟨Γ'₋| y sólo se emite si C_q(Γ'₋) > tol.
    Ambas se devuelven sin recortar.
    """
    tol = Config.get_tolerance() if tol is None else tol
    _, gamma_minus, c_plus, c_minus = superpose(data)
    sigma_norm = _sigma_norm(gamma_minus, q, tol)
    return theorem4_bounds_from_norm(data, q, sigma_norm, c_plus, c_minus)


def _sigma_norm(gamma_minus: Optional[PureState], q: float, tol: float) -> Optional[float]:
    if gamma_minus is None or q_concurrence_pure(gamma_minus, q) <= tol:
        return None
    return trace_norm(partial_transpose_a(gamma_minus.projector(), gamma_minus.shape))


def delta_cq(data: SuperpositionInput, q: float) -> float:
    """
    ΔC_q = C_q(Γ'₊) - |α|² C_q(Φ) - |β|² C_q(Ψ).
    """
    gamma_plus, _, _, _ = superpose(data)
    return (
        q_concurrence_pure(gamma_plus, q)
        - abs(data.alpha) ** 2 * q_concurrence_pure(data.phi, q)
        - abs(data.beta) ** 2 * q_concurrence_pure(data.psi, q)
    )


def corollary3_bounds(data: SuperpositionInput, q: float, tol: float = None) -> Dict[str, Optional[float]]:
    """
    Cota del incremento para pares arbitrarios con a = 2/c₊².

    Returns:
        Diccionario con lhs = C_q(Γ') - a(|α|² C_q(Φ) + |β|² C_q(Ψ)),
        rhs = a(h_q(|α|²) - |F_q(ρ_A) - F_q(ρ_B)|) y rhs_refined (o None)
    """
    tol = Config.get_tolerance() if tol is None else tol
    gamma_plus, gamma_minus, c_plus, c_minus = superpose(data)
    a = 2.0 / c_plus ** 2
    weight = abs(data.alpha) ** 2
    f_a, f_b = mixture_marginal_f(data, q)

    lhs = q_concurrence_pure(gamma_plus, q) - a * (
        weight * q_concurrence_pure(data.phi, q) + abs(data.beta) ** 2 * q_concurrence_pure(data.psi, q)
    )
    rhs = a * (h_q(weight, q) - abs(f_a - f_b))

    rhs_refined = None
    sigma_norm = _sigma_norm(gamma_minus, q, tol)
    if sigma_norm is not None:
        rhs_refined = rhs - a * c_minus ** 2 * _norm_term(sigma_norm, q, data.shape.min_dim) / 2.0
    return {'lhs': lhs, 'rhs': rhs, 'rhs_refined': rhs_refined}


def build_report(data: SuperpositionInput, q: float, tol: float = None) -> SuperpositionReport:
    """
    Reporte completo: clase, valores exactos cuando la clase lo permite y
    cotas superiores en todos los casos.
    """
    tol = Config.get_tolerance() if tol is None else tol
    require_exponent(q)
    pair_class = classify_pair(data.phi, data.psi, tol)
    gamma_plus, gamma_minus, c_plus, c_minus = superpose(data)
    logger.info(f"Superposición de clase {pair_class.value}: c+={c_plus:.6f}, c-={c_minus:.6f}")

    cq_gamma = q_concurrence_pure(gamma_plus, q)
    cq_gamma_minus = q_concurrence_pure(gamma_minus, q) if gamma_minus is not None else None
    f_a, f_b = mixture_marginal_f(data, q)

    theorem_rhs = None
    equality = None
    if pair_class == OrthogonalityClass.BI_ORTHOGONAL:
        theorem_rhs = theorem2_value(data, q, tol)
    elif pair_class in ONE_SIDED:
        theorem_rhs = theorem3_value(data, q, tol)
    if theorem_rhs is not None:
        equality = abs(cq_gamma - theorem_rhs) <= max(tol, 1e-10)

    sigma_norm = _sigma_norm(gamma_minus, q, tol)
    simple, refined = theorem4_bounds_from_norm(data, q, sigma_norm, c_plus, c_minus)
    corollary = corollary3_bounds(data, q, tol)

    return SuperpositionReport(
        orthogonality_class=pair_class,
        q=q,
        alpha=[data.alpha.real, data.alpha.imag],
        beta=[data.beta.real, data.beta.imag],
        c_plus=c_plus,
        c_minus=c_minus,
        cq_gamma=cq_gamma,
        cq_gamma_minus=cq_gamma_minus,
        cq_phi=q_concurrence_pure(data.phi, q),
        cq_psi=q_concurrence_pure(data.psi, q),
        h_term=h_q(abs(data.alpha) ** 2, q),
        f_a=f_a,
        f_b=f_b,
        marginal_gap=abs(f_a - f_b),
        delta_cq=delta_cq(data, q),
        theorem_rhs=theorem_rhs,
        theorem_equality_holds=equality,
        sigma_ppt_norm=sigma_norm,
        bound_eq58=simple,
        bound_eq59=refined,
        bound_eq58_clipped=min(simple, 1.0),
        corollary3_lhs=corollary['lhs'],
        corollary3_rhs=corollary['rhs'],
        corollary3_rhs_refined=corollary['rhs_refined']
    )


# =============================================================================
# EJEMPLOS CON FORMA CERRADA
# =============================================================================
def _basis(index: int, size: int) -> np.ndarray:
    vec = np.zeros(size, dtype=complex)
    vec[index] = 1.0
    return vec


def _state(terms: List[Tuple[float, int, int]], shape: BipartiteShape) -> PureState:
    """Σ c |i⟩|k⟩ a partir de tripletas (c, i, k)."""
    vec = np.zeros(shape.total, dtype=complex)
    for coefficient, i, k in terms:
        vec += coefficient * _basis(i * shape.dim_b + k, shape.total)
    return PureState.from_vector(vec, shape, normalize=True)


def example2_states(theta: float, phi: float) -> Tuple[PureState, PureState]:
    """Φ = cosθ|00⟩ + sinθ|11⟩, Ψ = cosφ|22⟩ + sinφ|33⟩ en 4⊗4."""
    shape = BipartiteShape(dim_a=4, dim_b=4)
    return (
        _state([(np.cos(theta), 0, 0), (np.sin(theta), 1, 1)], shape),
        _state([(np.cos(phi), 2, 2), (np.sin(phi), 3, 3)], shape),
    )


def example3_states(theta: float, phi: float) -> Tuple[PureState, PureState]:
    """Φ = cosθ|00⟩ + sinθ|11⟩, Ψ = cosφ|02⟩ + sinφ|13⟩ en 2⊗4."""
    shape = BipartiteShape(dim_a=2, dim_b=4)
    return (
        _state([(np.cos(theta), 0, 0), (np.sin(theta), 1, 1)], shape),
        _state([(np.cos(phi), 0, 2), (np.sin(phi), 1, 3)], shape),
    )


def example4_states(theta: float, phi: float) -> Tuple[PureState, PureState]:
    """
    Φ = cosθ|00⟩ + sinθ(|11⟩ + |22⟩)/√2 y Ψ = cosφ|03⟩ + sinφ(|11⟩ + |22⟩)/√2 en 3⊗4.
    """
    shape = BipartiteShape(dim_a=3, dim_b=4)
    s = 1.0 / np.sqrt(2.0)
    return (
        _state([(np.cos(theta), 0, 0), (s * np.sin(theta), 1, 1), (s * np.sin(theta), 2, 2)], shape),
        _state([(np.cos(phi), 0, 3), (s * np.sin(phi), 1, 1), (s * np.sin(phi), 2, 2)], shape),
    )


def example_input(example: str, theta: float, phi: float, alpha: complex = None,
                  beta: complex = None) -> SuperpositionInput:
    """
    Entrada de superposición para 'ex2', 'ex3' o 'ex4' (α = β = 1/√2 por defecto).
    """
    builders = {'ex2': example2_states, 'ex3': example3_states, 'ex4': example4_states}
    if example not in builders:
        raise BadRangeError(f"Ejemplo desconocido: {example}")
    alpha = 1.0 / np.sqrt(2.0) if alpha is None else alpha
    beta = 1.0 / np.sqrt(2.0) if beta is None else beta
    state_phi, state_psi = builders[example](theta, phi)
    return SuperpositionInput(phi=state_phi, psi=state_psi, alpha=alpha, beta=beta)


def example2_closed_form(theta: float, phi: float, alpha: complex, beta: complex, q: float) -> Dict[str, float]:
    """
    Valores analíticos del par bi-ortogonal de la familia ex2.
    """
    a2, b2 = abs(alpha) ** 2, abs(beta) ** 2
    s_theta = np.cos(theta) ** (2 * q) + np.sin(theta) ** (2 * q)
    s_phi = np.cos(phi) ** (2 * q) + np.sin(phi) ** (2 * q)
    return {
        'cq_phi': 1.0 - s_theta,
        'cq_psi': 1.0 - s_phi,
        'cq_gamma': 1.0 - a2 ** q * s_theta - b2 ** q * s_phi,
        'h_term': 1.0 - a2 ** q - b2 ** q,
        'delta_cq': (a2 - a2 ** q) * s_theta + (b2 - b2 ** q) * s_phi,
    }


def example3_closed_form(theta: float, phi: float, alpha: complex, beta: complex, q: float) -> Dict[str, float]:
    """
    Valores analíticos del par ortogonal en B de la familia ex3.
    """
    a2, b2 = abs(alpha) ** 2, abs(beta) ** 2
    cos_t, sin_t = np.cos(theta) ** 2, np.sin(theta) ** 2
    cos_p, sin_p = np.cos(phi) ** 2, np.sin(phi) ** 2
    f_a = 1.0 - (a2 * cos_t + b2 * cos_p) ** q - (a2 * sin_t + b2 * sin_p) ** q
    f_b = 1.0 - a2 ** q * (cos_t ** q + sin_t ** q) - b2 ** q * (cos_p ** q + sin_p ** q)
    return {
        'cq_phi': 1.0 - cos_t ** q - sin_t ** q,
        'cq_psi': 1.0 - cos_p ** q - sin_p ** q,
        'cq_gamma': f_a,
        'f_a': f_a,
        'f_b': f_b,
        'h_term': 1.0 - a2 ** q - b2 ** q,
    }


def example4_closed_form(theta: float, phi: float, q: float) -> Dict[str, float]:
    """
    Valores analíticos de la familia general ex4 con α = β = 1/√2.
    """
    cos_sum = np.cos(theta) ** 2 + np.cos(phi) ** 2
    sin_sq_sum = np.sin(theta) ** 2 + np.sin(phi) ** 2
    overlap = np.sin(theta) * np.sin(phi)
    c_plus = np.sqrt(1.0 + overlap)
    c_minus = np.sqrt(1.0 - overlap)

    def _cq_gamma(sign: float, c: float) -> float:
        if c <= DEGENERATE_NORM:
            return 0.0
        numerator = 2 ** q * cos_sum ** q + 2 * (np.sin(theta) + sign * np.sin(phi)) ** (2 * q)
        return 1.0 - numerator / (4 ** q * c ** (2 * q))

    return {
        'c_plus': float(c_plus),
        'c_minus': float(c_minus),
        'cq_phi': 1.0 - np.cos(theta) ** (2 * q) - 2 ** (1 - q) * np.sin(theta) ** (2 * q),
        'cq_psi': 1.0 - np.cos(phi) ** (2 * q) - 2 ** (1 - q) * np.sin(phi) ** (2 * q),
        'cq_gamma_plus': _cq_gamma(1.0, c_plus),
        'cq_gamma_minus': _cq_gamma(-1.0, c_minus),
        'f_a': 1.0 - cos_sum ** q / 2 ** q - sin_sq_sum ** q / 2 ** (2 * q - 1),
        'f_b': 1.0 - (np.cos(theta) ** (2 * q) + np.cos(phi) ** (2 * q)) / 2 ** q
        - sin_sq_sum ** q / 2 ** (2 * q - 1),
        'h_term': 1.0 - 2 ** (1 - q),
    }


# =============================================================================
# DATOS DE FIGURAS
# =============================================================================
FIGURE_HEADERS = {
    'ex2': ['theta', 'phi', 'delta_cq'],
    'ex3': ['theta', 'phi', 'delta_cq'],
    'ex4': ['q', 'theta', 'cq_exact', 'bound58_clipped'],
}


def figure_data(example: str, resolution: int = 41, workers: int = None) -> List[List[float]]:
    """
    Datos de las figuras de los ejemplos.

    ex2 y ex3: superficie (θ, φ, ΔC_q) con α = β = 1/√2 y q = 4 y 6.
    ex4: (q, θ, C_q(Γ'₊), cota simple recortada en 1) con φ = θ,
    q en [2, 4] y θ en una grilla abierta de (0, π/2).

    Args:
        example: 'ex2', 'ex3' o 'ex4'
        resolution: puntos por eje (>= 2)
        workers: hilos para recorrer la grilla

    Returns:
        Filas ordenadas por el índice de la grilla
    """
    if example not in FIGURE_HEADERS:
        raise BadRangeError(f"Figura desconocida: {example}")
    if resolution < 2:
        raise BadRangeError(f"La resolución debe ser >= 2, se recibió {resolution}")

    if example == 'ex4':
        outer = np.linspace(2.0, 4.0, resolution)
        inner = (np.arange(resolution) + 0.5) * (np.pi / 2) / resolution

        def _row_block(q_value: float) -> List[List[float]]:
            rows = []
            for theta in inner:
                data = example_input('ex4', theta, theta)
                gamma_plus, _, c_plus, c_minus = superpose(data)
                simple, _ = theorem4_bounds_from_norm(data, q_value, None, c_plus, c_minus)
                rows.append([float(q_value), float(theta), q_concurrence_pure(gamma_plus, q_value),
                             min(simple, 1.0)])
            return rows
    else:
        q_fixed = 4.0 if example == 'ex2' else 6.0
        outer = np.linspace(0.0, np.pi / 2, resolution)
        inner = np.linspace(0.0, np.pi / 2, resolution)

        def _row_block(theta: float) -> List[List[float]]:
            return [
                [float(theta), float(phi), delta_cq(example_input(example, theta, phi), q_fixed)]
                for phi in inner
            ]

    workers = workers or Config.WORKERS
    logger.info(f"Generando datos de {example} con resolución {resolution}")
    blocks: List[List[List[float]]] = [None] * len(outer)
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        futures = {executor.submit(_row_block, value): idx for idx, value in enumerate(outer)}
        for fut in concurrent.futures.as_completed(futures):
            blocks[futures[fut]] = fut.result()
    return [row for block in blocks for row in block]


# =============================================================================
# GENERADORES ALEATORIOS DE PARES
# =============================================================================
def random_coefficients(rng: np.random.Generator) -> Tuple[complex, complex]:
    """α, β con |α|² + |β|² = 1 y fases aleatorias."""
    t = rng.uniform(0.05, np.pi / 2 - 0.05)
    phases = rng.uniform(0.0, 2 * np.pi, size=2)
    return complex(np.cos(t) * np.exp(1j * phases[0])), complex(np.sin(t) * np.exp(1j * phases[1]))


def _random_schmidt(size: int, rng: np.random.Generator) -> np.ndarray:
    return rng.dirichlet(np.ones(size))


def _local_rotation(phi: PureState, psi: PureState, rng: np.random.Generator) -> Tuple[PureState, PureState]:
    """Aplica la misma U_A ⊗ U_B a ambos estados."""
    u_a = random_unitary(phi.shape.dim_a, rng)
    u_b = random_unitary(phi.shape.dim_b, rng)
    return apply_local_unitaries(phi, u_a, u_b), apply_local_unitaries(psi, u_a, u_b)


def random_bi_orthogonal_pair(shape: BipartiteShape, seed: SeedLike = None) -> SuperpositionInput:
    """
    Par bi-ortogonal: bloques de Schmidt disjuntos en ambos lados, seguido de
    una unitaria local común.
    """
    if shape.min_dim < 2:
        raise BadRangeError("Un par bi-ortogonal requiere min(m, n) >= 2")
    rng = make_rng(seed)
    d1 = int(rng.integers(1, shape.min_dim))
    d2 = int(rng.integers(1, shape.min_dim - d1 + 1))
    phi = schmidt_state(_random_schmidt(d1, rng), shape)
    psi = schmidt_state(_random_schmidt(d2, rng), shape, offset_a=d1, offset_b=d1)
    phi, psi = _local_rotation(phi, psi, rng)
    alpha, beta = random_coefficients(rng)
    return SuperpositionInput(phi=phi, psi=psi, alpha=alpha, beta=beta)


def random_one_sided_pair(shape: BipartiteShape, orthogonal_side: Subsystem = Subsystem.B,
                          seed: SeedLike = None) -> SuperpositionInput:
    """
    Par ortogonal de un lado: Φ = Σ a_i|i⟩|i⟩ y Ψ = Σ b_i|i⟩|i + d₁⟩ cuando el
    lado ortogonal es B (y el análogo con los papeles invertidos para A).
    """
    rng = make_rng(seed)
    side = Subsystem(orthogonal_side)
    # Dimensión del lado ortogonal y del lado compartido
    wide = shape.dim_b if side == Subsystem.B else shape.dim_a
    narrow = shape.dim_a if side == Subsystem.B else shape.dim_b
    if wide < 2:
        raise BadRangeError(f"Un par ortogonal en {side.value} requiere dimensión >= 2 en ese lado")
    d1 = int(rng.integers(1, min(narrow, wide - 1) + 1))
    d2 = int(rng.integers(1, min(narrow, wide - d1) + 1))
    phi = schmidt_state(_random_schmidt(d1, rng), shape)
    if side == Subsystem.B:
        psi = schmidt_state(_random_schmidt(d2, rng), shape, offset_b=d1)
    else:
        psi = schmidt_state(_random_schmidt(d2, rng), shape, offset_a=d1)
    phi, psi = _local_rotation(phi, psi, rng)
    alpha, beta = random_coefficients(rng)
    return SuperpositionInput(phi=phi, psi=psi, alpha=alpha, beta=beta)


def random_general_pair(shape: BipartiteShape, seed: SeedLike = None) -> SuperpositionInput:
    """
    Par Haar aleatorio (distinto con probabilidad 1) y coeficientes aleatorios.
    """
    rng = make_rng(seed)
    phi = random_pure_state(shape, rng)
    psi = random_pure_state(shape, rng)
    alpha, beta = random_coefficients(rng)
    return SuperpositionInput(phi=phi, psi=psi, alpha=alpha, beta=beta)
