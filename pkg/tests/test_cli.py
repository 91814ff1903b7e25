"""
Pruebas de la CLI: main.py, middleware, router, handlers y configuración.
"""
import json
import logging

import numpy as np
import pytest
from pydantic import ValidationError

import main
from src import config as config_module
from src.config import Config
from src.handlers import CommandHandler
from src.handlers.handler import EXIT_INVALID_INPUT, EXIT_OK, EXIT_USAGE
from src.middleware import RunConfigMiddleware
from src.models import BipartiteShape, Command, OutputFormat, RunConfig
from src.repositories import StateFileRepository
from src.routes import Router
from src.services import states


def run_cli(capsys, *argv):
    status = main.main(list(argv))
    return status, capsys.readouterr().out


def run_json(capsys, *argv):
    status, out = run_cli(capsys, *argv)
    return status, json.loads(out)


class TestEvalPure:
    def test_bell_q2(self, capsys, bell_file):
        status, body = run_json(capsys, 'eval-pure', '--input', str(bell_file))
        assert status == EXIT_OK
        assert body['c_q'] == pytest.approx(0.5)
        assert body['concurrence'] == pytest.approx(1.0)
        assert body['schmidt_coefficients'] == pytest.approx([0.5, 0.5])

    def test_bell_q3(self, capsys, bell_file):
        _, body = run_json(capsys, 'eval-pure', '--input', str(bell_file), '--q', '3')
        assert body['c_q'] == pytest.approx(0.75)

    def test_product_state(self, capsys, product_file):
        _, body = run_json(capsys, 'eval-pure', '--input', str(product_file))
        assert body['c_q'] == 0.0

    def test_csv_output(self, capsys, bell_file):
        status, out = run_cli(capsys, 'eval-pure', '--input', str(bell_file), '--format', 'csv')
        assert status == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == 'q,c_q,concurrence,schmidt_coefficients'
        assert lines[1] == '2,0.5,1,0.5;0.5'

    def test_malformed_file_exits_with_input_error(self, capsys, tmp_path):
        path = tmp_path / 'broken.json'
        path.write_text('{"shape": [2, 2], "kind": "pure", "data": [[1, 0]]}', encoding='utf-8')
        status, body = run_json(capsys, 'eval-pure', '--input', str(path))
        assert status == EXIT_INVALID_INPUT
        assert body['error'] == 'ParseError'

    def test_unnormalized_file(self, capsys, state_file):
        path = state_file('big.json', (2, 2), 'pure', [1.0, 1.0, 0.0, 0.0])
        status, body = run_json(capsys, 'eval-pure', '--input', str(path))
        assert status == EXIT_INVALID_INPUT
        assert body['error'] == 'NotNormalizedError'

    def test_exponent_below_two_is_usage_error(self, capsys, bell_file):
        status, body = run_json(capsys, 'eval-pure', '--input', str(bell_file), '--q', '1.5')
        assert status == EXIT_USAGE
        assert body['error'] == 'usage_error'

    def test_missing_file_is_usage_error(self, capsys, tmp_path):
        status, _ = run_json(capsys, 'eval-pure', '--input', str(tmp_path / 'none.json'))
        assert status == EXIT_USAGE

    def test_unknown_flag(self, bell_file):
        with pytest.raises(SystemExit) as exc:
            main.main(['eval-pure', '--input', str(bell_file), '--verbose'])
        assert exc.value.code == EXIT_USAGE

    def test_output_file(self, capsys, bell_file, tmp_path):
        target = tmp_path / 'out.json'
        status, out = run_cli(capsys, 'eval-pure', '--input', str(bell_file), '--output', str(target))
        assert status == EXIT_OK
        assert out == ''
        assert json.loads(target.read_text(encoding='utf-8'))['c_q'] == pytest.approx(0.5)


class TestBound:
    def test_isotropic_state(self, capsys, isotropic_file):
        status, body = run_json(capsys, 'bound', '--input', str(isotropic_file))
        assert status == EXIT_OK
        assert body['lower_bound'] == pytest.approx(0.48167, abs=1e-5)
        assert body['verdict'] == 'entangled'

    def test_maximally_mixed(self, capsys, state_file):
        path = state_file('mixed.json', (2, 2), 'mixed', np.eye(4) / 4)
        _, body = run_json(capsys, 'bound', '--input', str(path))
        assert body['lower_bound'] == 0.0
        assert body['entangled_by_ppt'] is False
        assert body['entangled_by_realignment'] is False

    def test_bell_projector(self, capsys, bell_projector_file):
        _, body = run_json(capsys, 'bound', '--input', str(bell_projector_file))
        assert body['lower_bound'] == pytest.approx(0.5)
        assert body['entangled_by_ppt'] is True
        assert body['entangled_by_realignment'] is True

    def test_invalid_density_matrix_lists_violations(self, capsys, state_file):
        path = state_file('bad.json', (2, 2), 'mixed', np.eye(4) / 2)
        status, body = run_json(capsys, 'bound', '--input', str(path))
        assert status == EXIT_INVALID_INPUT
        assert body['violations']


class TestIsotropic:
    def test_two_qubit_value(self, capsys):
        status, body = run_json(capsys, 'isotropic', '--d', '2', '--q', '2', '--grid', '2001', '--f', '0.8')
        assert status == EXIT_OK
        assert body['grid_points'] == 2001
        assert body['value'] == pytest.approx(0.18, abs=1e-6)

    def test_coarse_grid_is_usage_error(self, capsys):
        status, _ = run_json(capsys, 'isotropic', '--d', '3', '--grid', '50')
        assert status == EXIT_USAGE


class TestFig:
    def test_fig1(self, capsys):
        status, out = run_cli(capsys, 'fig', '--n', '1', '--resolution', '11')
        assert status == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == 'd,F,c2_exact,lower_bound'
        assert len(lines) == 1 + 8 * 11
        for line in lines[1:]:
            _, _, exact, bound = (float(v) for v in line.split(','))
            assert bound <= exact + 1e-6

    def test_fig4_clipped(self, capsys):
        status, out = run_cli(capsys, 'fig', '--n', '4', '--resolution', '3')
        assert status == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == 'q,theta,cq_exact,bound58_clipped'
        assert all(float(line.split(',')[3]) <= 1.0 for line in lines[1:])

    def test_deterministic(self, capsys):
        _, first = run_cli(capsys, 'fig', '--n', '2', '--resolution', '5')
        _, second = run_cli(capsys, 'fig', '--n', '2', '--resolution', '5')
        assert first == second

    def test_rejects_unknown_figure(self):
        with pytest.raises(SystemExit) as exc:
            main.main(['fig', '--n', '7'])
        assert exc.value.code == EXIT_USAGE


class TestSuperpose:
    def test_example4(self, capsys, example4_files):
        phi, psi = example4_files
        status, body = run_json(capsys, 'superpose', '--phi', str(phi), '--psi', str(psi),
                                '--alpha', '0.70710678', '--beta', '0.70710678', '--q', '2')
        assert status == EXIT_OK
        assert body['orthogonality_class'] == 'general'
        assert body['cq_gamma'] == pytest.approx(0.6663, abs=5e-4)
        assert body['bound_eq59'] is not None

    def test_example2_equality(self, capsys, example2_files):
        phi, psi = example2_files
        status, body = run_json(capsys, 'superpose', '--phi', str(phi), '--psi', str(psi),
                                '--alpha', '0.6,0', '--beta', '0,0.8', '--q', '4')
        assert status == EXIT_OK
        assert body['orthogonality_class'] == 'bi_orthogonal'
        assert body['theorem_equality_holds'] is True
        assert body['beta'] == pytest.approx([0.0, 0.8])

    def test_identical_files(self, capsys, bell_file):
        _, body = run_json(capsys, 'superpose', '--phi', str(bell_file), '--psi', str(bell_file),
                           '--alpha', '1', '--beta', '0')
        assert body['delta_cq'] == pytest.approx(0.0, abs=1e-9)

    def test_unnormalized_weights(self, capsys, example4_files):
        phi, psi = example4_files
        status, body = run_json(capsys, 'superpose', '--phi', str(phi), '--psi', str(psi),
                                '--alpha', '0.9', '--beta', '0.9')
        assert status == EXIT_USAGE
        assert body['error'] == 'BadRangeError'

    def test_shape_mismatch(self, capsys, bell_file, example4_files):
        status, body = run_json(capsys, 'superpose', '--phi', str(bell_file), '--psi', str(example4_files[0]),
                                '--alpha', '1', '--beta', '0')
        assert status == EXIT_INVALID_INPUT
        assert body['error'] == 'ShapeMismatchError'

    def test_bad_complex_literal(self, example4_files):
        phi, psi = example4_files
        with pytest.raises(SystemExit) as exc:
            main.main(['superpose', '--phi', str(phi), '--psi', str(psi), '--alpha', '1,2,3', '--beta', '0'])
        assert exc.value.code == EXIT_USAGE


class TestSelftestAndRoof:
    def test_lemma1_suite(self, capsys):
        status, body = run_json(capsys, 'selftest', '--suite', 'lemma1', '--seed', '7')
        assert status == EXIT_OK
        assert body['passed'] is True
        assert body['suites'][0]['checked'] >= 500
        assert body['total_failures'] == 0

    @pytest.mark.slow
    def test_all_suites(self, capsys):
        status, body = run_json(capsys, 'selftest')
        assert status == EXIT_OK
        assert body['seed'] == Config.SEED
        assert [s['name'] for s in body['suites']] == ['lemma1', 'criteria', 'isotropic', 'superposition', 'roof']

    def test_roof_pure_state(self, capsys, bell_file):
        status, body = run_json(capsys, 'roof', '--input', str(bell_file), '--iterations', '20',
                                '--restarts', '1', '--seed', '3')
        assert status == EXIT_OK
        assert body['value'] == pytest.approx(0.5)
        assert body['lower_bound'] == pytest.approx(0.5)
        assert 'trace' not in body


class TestConfiguration:
    def test_tolerance_from_environment(self, monkeypatch, bell_file):
        monkeypatch.setenv('QC_TOL', '1e-6')
        args = main.build_parser().parse_args(['bound', '--input', str(bell_file)])
        assert main.build_run_config(args).tol == 1e-6

    def test_flag_overrides_environment(self, monkeypatch, bell_file):
        monkeypatch.setenv('QC_TOL', '1e-6')
        args = main.build_parser().parse_args(['bound', '--input', str(bell_file), '--tol', '1e-3'])
        assert main.build_run_config(args).tol == 1e-3

    def test_seed_default(self):
        args = main.build_parser().parse_args(['selftest'])
        assert main.build_run_config(args).seed == Config.SEED

    def test_validate_config(self, monkeypatch):
        assert Config.validate_config()
        monkeypatch.setattr(Config, 'WORKERS', 0)
        with pytest.raises(ValueError, match='QC_WORKERS'):
            Config.validate_config()

    def test_malformed_variable_is_recorded(self, monkeypatch):
        monkeypatch.setattr(config_module, 'INVALID_ENV', {})
        monkeypatch.setenv('QC_WORKERS', 'cuatro')
        assert config_module.read_env('QC_WORKERS', '4', int) == 4
        assert config_module.INVALID_ENV == {'QC_WORKERS': 'cuatro'}
        with pytest.raises(ValueError, match='QC_WORKERS'):
            Config.validate_config()

    def test_unknown_log_level(self, monkeypatch):
        monkeypatch.setattr(Config, 'LOG_LEVEL', 'VERBOSO')
        assert Config.get_log_level() == logging.WARNING
        with pytest.raises(ValueError, match='QC_LOG_LEVEL'):
            Config.validate_config()

    def test_malformed_tolerance_is_usage_error(self, monkeypatch, capsys, bell_file):
        monkeypatch.setenv('QC_TOL', 'abc')
        status, body = run_json(capsys, 'bound', '--input', str(bell_file))
        assert status == EXIT_USAGE
        assert body['error'] == 'usage_error'
        assert 'QC_TOL' in body['message']

    def test_parse_complex(self):
        assert main.parse_complex('0.6') == 0.6
        assert main.parse_complex('0.6,-0.8') == complex(0.6, -0.8)


class TestMiddleware:
    def test_missing_required_flags(self):
        config = RunConfig(command=Command.SUPERPOSE)
        is_valid, message = RunConfigMiddleware.validate_run_config(config)
        assert not is_valid
        assert '--phi' in message and '--alpha' in message

    def test_valid_fig(self):
        assert RunConfigMiddleware.validate_run_config(RunConfig(command=Command.FIG, n=2)) == (True, None)

    @pytest.mark.parametrize('overrides', [
        {'d': 1},
        {'tol': 0.0},
        {'grid': 100},
        {'f': 1.5},
    ])
    def test_ranges(self, overrides):
        config = RunConfig(**{'command': Command.ISOTROPIC, 'd': 3, **overrides})
        is_valid, _ = RunConfigMiddleware.validate_run_config(config)
        assert not is_valid

    def test_selftest_ignores_exponent(self):
        config = RunConfig(command=Command.SELFTEST, q=1.0)
        assert RunConfigMiddleware.validate_run_config(config)[0]

    def test_unwritable_output(self, tmp_path):
        config = RunConfig(command=Command.FIG, n=1, output_path=str(tmp_path / 'missing' / 'out.csv'))
        is_valid, message = RunConfigMiddleware.validate_run_config(config)
        assert not is_valid
        assert '--output' in message

    def test_usage_response(self):
        response = RunConfigMiddleware.create_usage_error_response('mal')
        assert response['status'] == EXIT_USAGE
        assert response['body']['message'] == 'mal'

    def test_run_config_rejects_unknown_fields(self):
        with pytest.raises(ValidationError):
            RunConfig(command=Command.FIG, n=1, colour='red')


class TestRouter:
    def test_routes_every_command(self):
        router = Router(CommandHandler(StateFileRepository()))
        assert set(router.routes) == set(Command)

    def test_dispatch(self, bell_file):
        router = Router(CommandHandler(StateFileRepository()))
        response = router.route_command(RunConfig(command=Command.EVAL_PURE, input_path=str(bell_file), q=2.0))
        assert response['status'] == EXIT_OK
        assert response['table']['header'][0] == 'q'

    def test_handler_errors_become_status(self, tmp_path):
        router = Router(CommandHandler(StateFileRepository()))
        rho = states.maximally_mixed(BipartiteShape(dim_a=2, dim_b=2))
        path = tmp_path / 'mixed.json'
        StateFileRepository().save_state(rho, path)
        response = router.route_command(RunConfig(command=Command.EVAL_PURE, input_path=str(path)))
        assert response['status'] == EXIT_INVALID_INPUT
        assert response['table'] is None

    def test_fig_always_csv(self):
        from src.handlers.handler import wants_csv

        assert wants_csv(RunConfig(command=Command.FIG, n=1))
        assert not wants_csv(RunConfig(command=Command.BOUND, input_path='x'))
        assert wants_csv(RunConfig(command=Command.BOUND, input_path='x', format=OutputFormat.CSV))
