"""
Jerarquía de errores de la librería.

Todas las excepciones heredan de QConcurrenceError. La base no hereda de
ValueError: así, cuando se lanzan dentro de un validador de Pydantic,
llegan al llamador con su tipo original en lugar de envolverse en un
ValidationError.
"""
from typing import List, Optional


class QConcurrenceError(Exception):
    """
    Error base de la librería.
    """


# =============================================================================
# ERRORES NUMÉRICOS (matrix_core)
# =============================================================================
class NotSquareError(QConcurrenceError):
    """La matriz no es cuadrada."""


class NotHermitianError(QConcurrenceError):
    """
    La matriz no es hermítica dentro de la tolerancia.

    Attributes:
        asymmetry: max |M - M†| encontrado
    """

    def __init__(self, asymmetry: float, tol: float):
        self.asymmetry = asymmetry
        self.tol = tol
        super().__init__(
            f"Matriz no hermítica: max|M - M†| = {asymmetry:.3e} supera la tolerancia {tol:.1e}"
        )


class NotPSDError(QConcurrenceError):
    """
    La matriz tiene un autovalor por debajo de -tol.

    Attributes:
        min_eigenvalue: menor autovalor encontrado
    """

    def __init__(self, min_eigenvalue: float, tol: float):
        self.min_eigenvalue = min_eigenvalue
        self.tol = tol
        super().__init__(
            f"Matriz no semidefinida positiva: autovalor mínimo {min_eigenvalue:.3e} < -{tol:.1e}"
        )


class NonFiniteError(QConcurrenceError):
    """La matriz contiene NaN o Inf."""


class ShapeMismatchError(QConcurrenceError):
    """Las dimensiones no son compatibles con la forma bipartita."""


class BadExponentError(QConcurrenceError):
    """El exponente q está fuera del rango permitido."""


# =============================================================================
# ERRORES DE ESTADOS Y FAMILIAS
# =============================================================================
class BadDimensionError(QConcurrenceError):
    """Dimensión de subsistema inválida."""


class BadFidelityError(QConcurrenceError):
    """La fidelidad F está fuera de [0, 1] o del dominio de la operación."""


class BadRankError(QConcurrenceError):
    """Rango pedido fuera de [1, m·n]."""


class BadRangeError(QConcurrenceError):
    """Parámetro fuera de su rango."""


class BadProbabilitiesError(QConcurrenceError):
    """El vector de probabilidades no es válido."""


class DimensionMismatchError(QConcurrenceError):
    """Las matrices de un ensamble tienen dimensiones distintas."""


class BadGridError(QConcurrenceError):
    """Grilla con muy pocos puntos."""


class NoFeasibleVertexError(QConcurrenceError):
    """Ningún vértice (n, m) es factible; indica un bug."""


# =============================================================================
# ERRORES DE SUPERPOSICIÓN Y TECHO CONVEXO
# =============================================================================
class WrongClassError(QConcurrenceError):
    """El par de estados no pertenece a la clase que exige el teorema."""


class DegenerateSuperpositionError(QConcurrenceError):
    """La superposición tiene norma nula."""


class BadDecompositionSizeError(QConcurrenceError):
    """El tamaño de la descomposición es menor que el rango del estado."""


# =============================================================================
# ERRORES DE ENTRADA (CLI / archivos)
# =============================================================================
class ParseError(QConcurrenceError):
    """
    Archivo de estado mal formado.

    Attributes:
        field: campo JSON problemático (si se conoce)
        line: línea del error de sintaxis (si se conoce)
    """

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        self.field = field
        self.line = line
        location = []
        if line is not None:
            location.append(f"línea {line}")
        if field is not None:
            location.append(f"campo '{field}'")
        suffix = f" ({', '.join(location)})" if location else ""
        super().__init__(f"{message}{suffix}")


class NotNormalizedError(QConcurrenceError):
    """El vector de estado no tiene norma 1."""


class InvalidDensityMatrixError(QConcurrenceError):
    """
    La matriz no es una matriz densidad válida.

    Attributes:
        violations: lista de invariantes violados
    """

    def __init__(self, violations: List[str]):
        self.violations = violations
        super().__init__(f"Matriz densidad inválida: {'; '.join(violations)}")
