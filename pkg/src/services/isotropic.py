"""
q-concurrencia de estados isotrópicos: la función ξ(F, q, d), su
envolvente convexa co(ξ), la forma cerrada para q = 2, el oráculo de
minimización por vértices y los datos de la figura de la cota.
"""
import concurrent.futures
import logging
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from ..config import Config
from ..models.errors import (
    BadDimensionError,
    BadFidelityError,
    BadGridError,
    BadRangeError,
    NoFeasibleVertexError,
)
from ..models.schemas import EnvelopeCurve
from .criteria import bound_from_norm
from .monotone import require_exponent

# Configurar logging
logger = logging.getLogger(__name__)

MIN_GRID_POINTS = 101
# Holgura para la condición n <= F·d
VERTEX_SLACK = 1e-12


def _validate(fidelity: float, d: int) -> None:
    if d < 2:
        raise BadDimensionError(f"Los estados isotrópicos requieren d >= 2, se recibió {d}")
    if not 0.0 <= fidelity <= 1.0:
        raise BadFidelityError(f"La fidelidad debe estar en [0, 1], se recibió {fidelity}")


def _xi_array(fidelities: np.ndarray, q: float, d: int) -> np.ndarray:
    """
    ξ vectorizada; 0 para F <= 1/d.
    """
    f = np.asarray(fidelities, dtype=float)
    gamma = (np.sqrt(f) + np.sqrt((d - 1) * np.clip(1.0 - f, 0.0, None))) / np.sqrt(d)
    delta = (np.sqrt(f) - np.sqrt(np.clip(1.0 - f, 0.0, None) / (d - 1))) / np.sqrt(d)
    values = 1.0 - gamma ** (2 * q) - (d - 1) * np.abs(delta) ** (2 * q)
    values = np.where(f <= 1.0 / d, 0.0, values)
    return np.clip(values, 0.0, None)


def xi(fidelity: float, q: float, d: int) -> float:
    """
    ξ(F, q, d) = 1 - γ^{2q} - (d-1) δ^{2q} con
    γ = (√F + √((d-1)(1-F)))/√d y δ = (√F - √((1-F)/(d-1)))/√d.

    Args:
        fidelity: F en [0, 1]; para F <= 1/d el valor es 0
        q: exponente >= 2
        d: dimensión local >= 2

    Returns:
        Valor de ξ
    """
    require_exponent(q)
    _validate(fidelity, d)
    return float(_xi_array(np.array([fidelity]), q, d)[0])


def xi_oracle(fidelity: float, q: float, d: int) -> float:
    """
    Minimiza 1 - nγ^{2q} - mδ^{2q} sobre todos los vértices enteros (n, m)
    del ansatz de dos valores con nγ² + mδ² = 1 y nγ + mδ = √(F·d).

    Es un cálculo independiente de xi: ambos deben coincidir.

    Args:
        fidelity: F en (1/d, 1]
        q: exponente >= 2
        d: dimensión local >= 2

    Returns:
        Mínimo sobre los vértices factibles

    Raises:
        NoFeasibleVertexError: si ningún vértice es factible
    """
    require_exponent(q)
    _validate(fidelity, d)
    if fidelity <= 1.0 / d:
        return 0.0

    fd = fidelity * d
    best = None
    n_max = int(np.floor(fd + VERTEX_SLACK))
    for n in range(1, n_max + 1):
        for m in range(1, d - n + 1):
            discriminant = n * m * (n + m - fd)
            if discriminant < -VERTEX_SLACK:
                continue
            gamma = (n * np.sqrt(fd) + np.sqrt(max(discriminant, 0.0))) / (n * (n + m))
            delta = (np.sqrt(fd) - n * gamma) / m
            if delta < -VERTEX_SLACK:
                continue
            delta = max(delta, 0.0)
            value = 1.0 - n * gamma ** (2 * q) - m * delta ** (2 * q)
            logger.debug(f"Vértice (n={n}, m={m}): γ={gamma:.6f}, δ={delta:.6f}, valor={value:.9f}")
            if best is None or value < best:
                best = value

    if best is None:
        raise NoFeasibleVertexError(f"Ningún vértice factible para F={fidelity}, d={d}")
    return float(max(best, 0.0))


# =============================================================================
# ENVOLVENTE CONVEXA
# =============================================================================
def _cross(o: Tuple[float, float], a: Tuple[float, float], b: Tuple[float, float]) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points: Iterable[Tuple[float, float]]) -> List[Tuple[float, float]]:
    """
    Casco convexo inferior por cadena monótona.

    Args:
        points: pares (x, y)

    Returns:
        Vértices del casco inferior con x ascendente
    """
    # Un punto por abscisa, el de menor ordenada
    lowest = {}
    for x, y in points:
        x, y = float(x), float(y)
        if x not in lowest or y < lowest[x]:
            lowest[x] = y
    ordered = sorted(lowest.items())
    hull: List[Tuple[float, float]] = []
    for p in ordered:
        while len(hull) > 1 and _cross(hull[-2], hull[-1], p) <= 0.0:
            hull.pop()
        hull.append(p)
    return hull


def _sample(fidelities: np.ndarray, q: float, d: int) -> List[Tuple[float, float]]:
    values = _xi_array(fidelities, q, d)
    return list(zip(fidelities.tolist(), values.tolist()))


def envelope(q: float, d: int, grid_points: int = None) -> EnvelopeCurve:
    """
    Envolvente convexa inferior de {0 en [0, 1/d], ξ en (1/d, 1]}.

    Se muestrea una grilla uniforme, se calcula el casco inferior y se
    refina una vez alrededor de los segmentos largos del casco.

    Args:
        q: exponente >= 2
        d: dimensión local >= 2
        grid_points: puntos de la grilla (>= 101, default Config.GRID_POINTS)

    Returns:
        EnvelopeCurve con la envolvente evaluada en la grilla
    """
    require_exponent(q)
    grid_points = Config.GRID_POINTS if grid_points is None else grid_points
    if grid_points < MIN_GRID_POINTS:
        raise BadGridError(f"La grilla requiere al menos {MIN_GRID_POINTS} puntos, se recibió {grid_points}")
    if d < 2:
        raise BadDimensionError(f"Los estados isotrópicos requieren d >= 2, se recibió {d}")

    grid = np.linspace(0.0, 1.0, grid_points)
    points = _sample(grid, q, d)
    points.append((0.0, 0.0))
    points.append((1.0, 1.0 - d ** (1.0 - q)))
    hull = lower_hull(points)

    # Refinamiento: muestreo denso alrededor de los extremos de segmentos largos
    spacing = 1.0 / (grid_points - 1)
    extra = []
    for (x0, _), (x1, _) in zip(hull[:-1], hull[1:]):
        if x1 - x0 > 2.0 / grid_points:
            for center in (x0, x1):
                local = np.linspace(max(center - spacing, 0.0), min(center + spacing, 1.0), 21)
                extra.extend(_sample(local, q, d))
    if extra:
        logger.debug(f"Refinando envolvente con {len(extra)} puntos adicionales")
        hull = lower_hull(points + extra)

    xs = np.array([x for x, _ in hull])
    ys = np.array([y for _, y in hull])
    values = np.interp(grid, xs, ys)
    return EnvelopeCurve(
        d=d,
        q=q,
        grid=list(zip(grid.tolist(), values.tolist())),
        hull_vertices=hull
    )


def isotropic_q_concurrence(fidelity: float, q: float, d: int, grid_points: int = None) -> float:
    """
    C_q(ρ_F) = co(ξ)(F) evaluada por interpolación sobre el casco.
    """
    _validate(fidelity, d)
    return envelope(q, d, grid_points).value_at(fidelity)


def c2_isotropic_closed_form(fidelity: float, d: int) -> float:
    """
    Forma cerrada de C_2(ρ_F) en tres tramos:
    0 para F <= 1/d, ξ(F, 2, d) hasta 4(d-1)/d² y (dF-d)/(d-1) + (d-1)/d después.
    """
    _validate(fidelity, d)
    if fidelity <= 1.0 / d:
        return 0.0
    if fidelity <= 4.0 * (d - 1) / d ** 2:
        return xi(fidelity, 2.0, d)
    return (d * fidelity - d) / (d - 1) + (d - 1) / d


def isotropic_lower_bound(fidelity: float, q: float, d: int) -> float:
    """
    Cota inferior para ρ_F usando ‖ρ_F^{T_A}‖₁ = ‖R(ρ_F)‖₁ = dF.
    """
    _validate(fidelity, d)
    return bound_from_norm(d * fidelity, q, d)


def fig1_data(d_range: Sequence[int] = range(3, 11), resolution: int = 201,
              workers: int = None) -> List[List[float]]:
    """
    Filas (d, F, c2_exact, lower_bound) con F uniforme en [1/d, 1].

    Args:
        d_range: dimensiones, cada una en [2, 10]
        resolution: puntos de F por dimensión
        workers: hilos para recorrer las dimensiones

    Returns:
        Lista de filas ordenadas por d y luego por F
    """
    d_values = list(d_range)
    if resolution < 2:
        raise BadGridError(f"La resolución debe ser >= 2, se recibió {resolution}")
    bad = [d for d in d_values if not 2 <= d <= 10]
    if bad:
        raise BadRangeError(f"Dimensiones fuera de [2, 10]: {bad}")

    def _rows_for(d: int) -> List[List[float]]:
        rows = []
        for fidelity in np.linspace(1.0 / d, 1.0, resolution):
            f = float(fidelity)
            rows.append([d, f, c2_isotropic_closed_form(f, d), isotropic_lower_bound(f, 2.0, d)])
        return rows

    workers = workers or Config.WORKERS
    logger.info(f"Generando datos de la figura 1 para d={d_values}")
    results: List[List[List[float]]] = [None] * len(d_values)
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        futures = {executor.submit(_rows_for, d): idx for idx, d in enumerate(d_values)}
        for fut in concurrent.futures.as_completed(futures):
            results[futures[fut]] = fut.result()
    return [row for rows in results for row in rows]
