"""
Fixtures compartidas por las suites de pruebas.
"""
import json

import numpy as np
import pytest

from src.models import BipartiteShape
from src.services import states


def write_state_file(path, shape, kind, data):
    """Escribe un archivo de estado con el formato del repositorio."""
    flat = np.asarray(data, dtype=complex).reshape(-1)
    document = {
        'shape': list(shape),
        'kind': kind,
        'data': [[float(v.real), float(v.imag)] for v in flat],
    }
    path.write_text(json.dumps(document), encoding='utf-8')
    return path


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def two_qubits():
    return BipartiteShape(dim_a=2, dim_b=2)


@pytest.fixture
def bell_state():
    return states.maximally_entangled(2)


@pytest.fixture
def product_pure():
    return states.product_state([1.0, 0.0], [0.0, 1.0])


@pytest.fixture
def bell_file(tmp_path, bell_state):
    return write_state_file(tmp_path / 'bell.json', (2, 2), 'pure', bell_state.amplitudes)


@pytest.fixture
def product_file(tmp_path, product_pure):
    return write_state_file(tmp_path / 'product.json', (2, 2), 'pure', product_pure.amplitudes)


@pytest.fixture
def bell_projector_file(tmp_path, bell_state):
    return write_state_file(tmp_path / 'bell_rho.json', (2, 2), 'mixed', bell_state.projector())


@pytest.fixture
def isotropic_file(tmp_path):
    rho = states.isotropic_state(0.9, 3)
    return write_state_file(tmp_path / 'iso.json', (3, 3), 'mixed', rho.matrix)


@pytest.fixture
def example4_files(tmp_path):
    from src.services import superposition

    phi, psi = superposition.example4_states(np.pi / 3, np.pi / 6)
    return (
        write_state_file(tmp_path / 'ex4_phi.json', (3, 4), 'pure', phi.amplitudes),
        write_state_file(tmp_path / 'ex4_psi.json', (3, 4), 'pure', psi.amplitudes),
    )


@pytest.fixture
def example2_files(tmp_path):
    from src.services import superposition

    phi, psi = superposition.example2_states(0.4, 1.1)
    return (
        write_state_file(tmp_path / 'ex2_phi.json', (4, 4), 'pure', phi.amplitudes),
        write_state_file(tmp_path / 'ex2_psi.json', (4, 4), 'pure', psi.amplitudes),
    )


@pytest.fixture
def state_file(tmp_path):
    """Fábrica de archivos de estado en tmp_path."""
    def _write(name, shape, kind, data):
        return write_state_file(tmp_path / name, shape, kind, data)
    return _write
