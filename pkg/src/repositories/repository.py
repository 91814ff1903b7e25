"""
Capa de repositorio: lectura de archivos de estado JSON y escritura de
resultados en JSON o CSV.

Formato de archivo de estado:
    {"shape": [m, n], "kind": "pure" | "mixed", "data": [[re, im], ...]}
Los estados mixtos se guardan en orden fila por fila.
"""
import csv
import io
import json
import logging
import math
from pathlib import Path
from typing import Any, List, Optional, Sequence, Union

import numpy as np

from ..config import Config
from ..models.errors import ParseError
from ..models.schemas import BipartiteShape, DensityMatrix, PureState

# Configurar logging
logger = logging.getLogger(__name__)

State = Union[PureState, DensityMatrix]

VALID_KINDS = ('pure', 'mixed')


class StateFileRepository:
    """
    Repositorio para leer y escribir estados y resultados en disco.
    """

    def __init__(self, significant_digits: int = None):
        """
        Inicializa el repositorio.

        Args:
            significant_digits: dígitos significativos de la salida (default Config.SIGNIFICANT_DIGITS)
        """
        self.significant_digits = significant_digits or Config.SIGNIFICANT_DIGITS

    # =========================================================================
    # LECTURA DE ESTADOS
    # =========================================================================
    def load_state(self, path: Union[str, Path]) -> State:
        """
        Lee un archivo de estado.

        Args:
            path: ruta del archivo JSON

        Returns:
            PureState o DensityMatrix según el campo kind

        Raises:
            ParseError: archivo ilegible o mal formado
            NotNormalizedError: vector puro sin norma 1
            InvalidDensityMatrixError: matriz mixta inválida
        """
        logger.info(f"Leyendo estado desde {path}")
        try:
            text = Path(path).read_text(encoding='utf-8')
        except OSError as e:
            raise ParseError(f"No se pudo leer el archivo {path}: {e}")

        try:
            document = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"JSON inválido: {e.msg}", line=e.lineno)

        if not isinstance(document, dict):
            raise ParseError("El documento debe ser un objeto JSON")

        shape = self._parse_shape(document.get('shape'))
        kind = document.get('kind')
        if kind not in VALID_KINDS:
            raise ParseError(f"kind debe ser 'pure' o 'mixed', se recibió {kind!r}", field='kind')

        expected = shape.total if kind == 'pure' else shape.total ** 2
        values = self._parse_data(document.get('data'), expected)

        if kind == 'pure':
            return PureState(amplitudes=values, shape=shape)
        return DensityMatrix(matrix=values.reshape(shape.total, shape.total), shape=shape)

    def load_pure_state(self, path: Union[str, Path]) -> PureState:
        """
        Lee un archivo que debe contener un estado puro.
        """
        state = self.load_state(path)
        if not isinstance(state, PureState):
            raise ParseError("Se esperaba un estado puro", field='kind')
        return state

    def load_density_matrix(self, path: Union[str, Path]) -> DensityMatrix:
        """
        Lee un estado como matriz densidad; los estados puros se convierten en proyectores.
        """
        state = self.load_state(path)
        if isinstance(state, PureState):
            return state.to_density_matrix()
        return state

    def _parse_shape(self, raw: Any) -> BipartiteShape:
        if (
            not isinstance(raw, list)
            or len(raw) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) and v >= 1 for v in raw)
        ):
            raise ParseError(f"shape debe ser [m, n] con enteros positivos, se recibió {raw!r}", field='shape')
        return BipartiteShape(dim_a=raw[0], dim_b=raw[1])

    def _parse_data(self, raw: Any, expected: int) -> np.ndarray:
        if not isinstance(raw, list):
            raise ParseError("data debe ser una lista de pares [re, im]", field='data')
        if len(raw) != expected:
            raise ParseError(f"data tiene {len(raw)} entradas, se esperaban {expected}", field='data')
        values = np.empty(expected, dtype=complex)
        for idx, entry in enumerate(raw):
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in entry)
            ):
                raise ParseError(f"La entrada {idx} no es un par numérico [re, im]", field=f"data[{idx}]")
            if not all(math.isfinite(v) for v in entry):
                raise ParseError(f"La entrada {idx} no es finita", field=f"data[{idx}]")
            values[idx] = complex(entry[0], entry[1])
        return values

    # =========================================================================
    # ESCRITURA
    # =========================================================================
    def save_state(self, state: State, path: Union[str, Path]) -> None:
        """
        Guarda un estado en el formato de archivo de estado.
        """
        if isinstance(state, PureState):
            kind, flat, shape = 'pure', state.amplitudes, state.shape
        else:
            kind, flat, shape = 'mixed', state.matrix.reshape(-1), state.require_shape()
        document = {
            'shape': shape.as_list(),
            'kind': kind,
            'data': [[float(v.real), float(v.imag)] for v in flat],
        }
        Path(path).write_text(json.dumps(document, indent=2), encoding='utf-8')
        logger.info(f"Estado guardado en {path}")

    def format_number(self, value: Any, digits: Optional[int] = None) -> str:
        """
        Formatea un número con dígitos significativos y punto decimal.
        """
        digits = digits or self.significant_digits
        if isinstance(value, (bool, np.bool_)):
            return str(bool(value)).lower()
        if isinstance(value, (int, np.integer)):
            return str(int(value))
        if isinstance(value, (float, np.floating)):
            return f"{float(value):.{digits}g}"
        return str(value)

    def _round(self, value: Any, digits: int) -> Any:
        if isinstance(value, dict):
            return {k: self._round(v, digits) for k, v in value.items()}
        if isinstance(value, (list, tuple)):
            return [self._round(v, digits) for v in value]
        if isinstance(value, (bool, np.bool_)):
            return bool(value)
        if isinstance(value, (float, np.floating)):
            return float(f"{float(value):.{digits}g}")
        if isinstance(value, np.integer):
            return int(value)
        return value

    def render_json(self, payload: Any, digits: Optional[int] = None) -> str:
        """
        Serializa a JSON con los floats redondeados a dígitos significativos.
        """
        digits = digits or self.significant_digits
        return json.dumps(self._round(payload, digits), indent=2, ensure_ascii=False) + '\n'

    def render_csv(self, header: Sequence[str], rows: Sequence[Sequence[Any]], digits: Optional[int] = None) -> str:
        """
        Serializa filas a CSV con encabezado, independiente de la configuración regional.
        """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(list(header))
        for row in rows:
            writer.writerow([self.format_number(v, digits) for v in row])
        return buffer.getvalue()

    def write_output(self, text: str, output_path: Optional[Union[str, Path]] = None) -> Optional[str]:
        """
        Escribe el texto en el archivo indicado o lo devuelve para stdout.

        Returns:
            None si se escribió a disco, el texto en caso contrario
        """
        if output_path is None:
            return text
        Path(output_path).write_text(text, encoding='utf-8')
        logger.info(f"Salida escrita en {output_path}")
        return None
