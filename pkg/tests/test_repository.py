"""
Pruebas de src/repositories/repository.py.
"""
import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.models import BipartiteShape, DensityMatrix, PureState
from src.models.errors import InvalidDensityMatrixError, NotNormalizedError, ParseError
from src.repositories import StateFileRepository
from src.services import states


@pytest.fixture
def repository():
    return StateFileRepository()


class TestLoad:
    def test_load_pure_state(self, repository, bell_file, bell_state):
        psi = repository.load_state(bell_file)
        assert isinstance(psi, PureState)
        assert_allclose(psi.amplitudes, bell_state.amplitudes)

    def test_load_mixed_state(self, repository, isotropic_file):
        rho = repository.load_density_matrix(isotropic_file)
        assert isinstance(rho, DensityMatrix)
        assert rho.shape.as_list() == [3, 3]

    def test_pure_file_as_density_matrix(self, repository, bell_file):
        rho = repository.load_density_matrix(bell_file)
        assert np.trace(rho.matrix @ rho.matrix).real == pytest.approx(1.0)

    def test_load_pure_rejects_mixed(self, repository, isotropic_file):
        with pytest.raises(ParseError) as exc:
            repository.load_pure_state(isotropic_file)
        assert exc.value.field == 'kind'

    def test_invalid_json_reports_line(self, repository, tmp_path):
        path = tmp_path / 'broken.json'
        path.write_text('{\n  "shape": [2, 2],\n  "kind": \n}', encoding='utf-8')
        with pytest.raises(ParseError) as exc:
            repository.load_state(path)
        assert exc.value.line == 4

    def test_missing_file(self, repository, tmp_path):
        with pytest.raises(ParseError):
            repository.load_state(tmp_path / 'missing.json')

    @pytest.mark.parametrize('shape', [[2], [2, 0], [2, 'a'], None])
    def test_bad_shape(self, repository, tmp_path, shape):
        path = tmp_path / 'state.json'
        path.write_text(json.dumps({'shape': shape, 'kind': 'pure', 'data': []}), encoding='utf-8')
        with pytest.raises(ParseError) as exc:
            repository.load_state(path)
        assert exc.value.field == 'shape'

    def test_bad_kind(self, repository, tmp_path):
        path = tmp_path / 'state.json'
        path.write_text(json.dumps({'shape': [1, 1], 'kind': 'thermal', 'data': [[1, 0]]}), encoding='utf-8')
        with pytest.raises(ParseError) as exc:
            repository.load_state(path)
        assert exc.value.field == 'kind'

    def test_wrong_data_length(self, repository, state_file):
        path = state_file('short.json', (2, 2), 'pure', [1.0, 0.0, 0.0])
        with pytest.raises(ParseError) as exc:
            repository.load_state(path)
        assert exc.value.field == 'data'

    def test_bad_entry_names_index(self, repository, tmp_path):
        path = tmp_path / 'state.json'
        data = [[1, 0], [0, 0], 'x', [0, 0]]
        path.write_text(json.dumps({'shape': [2, 2], 'kind': 'pure', 'data': data}), encoding='utf-8')
        with pytest.raises(ParseError) as exc:
            repository.load_state(path)
        assert exc.value.field == 'data[2]'

    def test_unnormalized_pure_state(self, repository, state_file):
        path = state_file('big.json', (2, 2), 'pure', [1.0, 1.0, 0.0, 0.0])
        with pytest.raises(NotNormalizedError):
            repository.load_state(path)

    def test_invalid_density_matrix(self, repository, state_file):
        path = state_file('bad.json', (1, 2), 'mixed', np.diag([1.2, -0.2]))
        with pytest.raises(InvalidDensityMatrixError) as exc:
            repository.load_state(path)
        assert exc.value.violations


class TestSave:
    def test_save_and_load(self, repository, tmp_path):
        rho = states.random_density_matrix(BipartiteShape(dim_a=2, dim_b=3), 2, seed=4)
        path = tmp_path / 'rho.json'
        repository.save_state(rho, path)
        loaded = repository.load_density_matrix(path)
        assert_allclose(loaded.matrix, rho.matrix, atol=1e-15)


class TestRender:
    def test_format_number(self, repository):
        assert repository.format_number(1 / 3) == '0.333333333'
        assert repository.format_number(1 / 3, 6) == '0.333333'
        assert repository.format_number(True) == 'true'
        assert repository.format_number(7) == '7'

    def test_render_json_rounds_nested(self, repository):
        text = repository.render_json({'a': [2 / 3, {'b': 1 / 7}], 'ok': True})
        payload = json.loads(text)
        assert payload['a'][0] == 0.666666667
        assert payload['a'][1]['b'] == 0.142857143
        assert payload['ok'] is True

    def test_render_csv(self, repository):
        text = repository.render_csv(['x', 'y'], [[1, 0.5], [2, 1 / 3]])
        assert text == 'x,y\n1,0.5\n2,0.333333333\n'

    def test_write_output(self, repository, tmp_path):
        path = tmp_path / 'out.csv'
        assert repository.write_output('a\n', path) is None
        assert path.read_text(encoding='utf-8') == 'a\n'
        assert repository.write_output('a\n') == 'a\n'
