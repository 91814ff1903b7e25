"""
Archivo principal de la CLI de q-concurrencia.
"""
import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from src.config import Config
from src.handlers import CommandHandler
from src.handlers.handler import EXIT_USAGE, wants_csv
from src.middleware import RunConfigMiddleware
from src.models import Command, OutputFormat, RunConfig, Suite
from src.repositories import StateFileRepository
from src.routes import Router

# Configurar logging
logger = logging.getLogger(__name__)


class CliArgumentParser(argparse.ArgumentParser):
    """
    ArgumentParser que termina con código 1 ante flags desconocidos o inválidos.
    """

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(EXIT_USAGE)


def parse_complex(text: str) -> complex:
    """
    Convierte 'RE' o 'RE,IM' en un número complejo.
    """
    parts = text.split(',')
    if len(parts) > 2:
        raise argparse.ArgumentTypeError(f"se esperaba RE[,IM], se recibió {text!r}")
    try:
        real = float(parts[0])
        imag = float(parts[1]) if len(parts) == 2 else 0.0
    except ValueError:
        raise argparse.ArgumentTypeError(f"se esperaba RE[,IM], se recibió {text!r}")
    return complex(real, imag)


def build_parser() -> argparse.ArgumentParser:
    """
    Define los subcomandos y sus flags.
    """
    parser = CliArgumentParser(prog='main.py', description='q-concurrencia de estados bipartitos')
    subparsers = parser.add_subparsers(dest='command', required=True, parser_class=CliArgumentParser)

    def add_output(sub, with_format: bool = True):
        sub.add_argument('--output', dest='output_path', help='archivo de salida (default: stdout)')
        if with_format:
            sub.add_argument('--format', choices=[f.value for f in OutputFormat], default=OutputFormat.JSON.value)

    def add_q(sub):
        sub.add_argument('--q', type=float, default=2.0, help='exponente q >= 2')

    def add_tol(sub):
        sub.add_argument('--tol', type=float, default=None, help='tolerancia (default: QC_TOL)')

    # =========================================================================
    # SUBCOMANDOS
    # =========================================================================
    eval_pure = subparsers.add_parser(Command.EVAL_PURE.value, help='C_q de un estado puro')
    eval_pure.add_argument('--input', dest='input_path', required=True)
    add_q(eval_pure)
    add_output(eval_pure)

    bound = subparsers.add_parser(Command.BOUND.value, help='cota inferior PPT / realineamiento')
    bound.add_argument('--input', dest='input_path', required=True)
    add_q(bound)
    add_tol(bound)
    add_output(bound)

    iso = subparsers.add_parser(Command.ISOTROPIC.value, help='envolvente para estados isotrópicos')
    iso.add_argument('--d', type=int, required=True)
    iso.add_argument('--f', type=float, default=None, help='fidelidad donde evaluar la envolvente')
    iso.add_argument('--grid', type=int, default=None, help='puntos de la grilla (default: QC_GRID_POINTS)')
    add_q(iso)
    add_output(iso)

    fig = subparsers.add_parser(Command.FIG.value, help='datos de las figuras (CSV)')
    fig.add_argument('--n', type=int, required=True, choices=[1, 2, 3, 4])
    fig.add_argument('--resolution', type=int, default=None)
    add_output(fig, with_format=False)

    superpose = subparsers.add_parser(Command.SUPERPOSE.value, help='superposición de dos estados puros')
    superpose.add_argument('--phi', dest='phi_path', required=True)
    superpose.add_argument('--psi', dest='psi_path', required=True)
    superpose.add_argument('--alpha', type=parse_complex, required=True)
    superpose.add_argument('--beta', type=parse_complex, required=True)
    add_q(superpose)
    add_tol(superpose)
    add_output(superpose)

    selftest = subparsers.add_parser(Command.SELFTEST.value, help='suites de propiedades')
    selftest.add_argument('--suite', choices=[s.value for s in Suite], default=Suite.ALL.value)
    selftest.add_argument('--seed', type=int, default=None)
    add_tol(selftest)
    add_output(selftest)

    roof = subparsers.add_parser(Command.ROOF.value, help='cota superior del techo convexo')
    roof.add_argument('--input', dest='input_path', required=True)
    roof.add_argument('--k', type=int, default=None)
    roof.add_argument('--iterations', type=int, default=None)
    roof.add_argument('--restarts', type=int, default=None)
    roof.add_argument('--seed', type=int, default=None)
    add_q(roof)
    add_output(roof)

    return parser


def build_run_config(args: argparse.Namespace) -> RunConfig:
    """
    Construye el RunConfig aplicando la precedencia flag > entorno > default.
    """
    values: Dict[str, Any] = {
        key: value for key, value in vars(args).items() if value is not None
    }
    values.setdefault('tol', Config.get_tolerance())
    if values['command'] in (Command.SELFTEST.value, Command.ROOF.value):
        values.setdefault('seed', Config.SEED)
    return RunConfig(**values)


def initialize_dependencies() -> Router:
    """
    Inicializa todas las dependencias de la aplicación.

    Returns:
        Instancia del Router configurado
    """
    Config.validate_config()
    repository = StateFileRepository()
    command_handler = CommandHandler(repository)
    return Router(command_handler)


def render_response(response: Dict[str, Any], config: Optional[RunConfig],
                    repository: StateFileRepository) -> str:
    """
    Serializa la respuesta como CSV (si hay tabla y se pidió) o JSON.
    """
    table = response.get('table')
    if table is not None and config is not None and wants_csv(config):
        return repository.render_csv(table['header'], table['rows'], table.get('digits'))
    return repository.render_json(response['body'])


def main(argv: Optional[List[str]] = None) -> int:
    """
    Punto de entrada de la CLI.

    Returns:
        Código de salida (0 éxito, 1 uso, 2 entrada inválida, 3 self-test fallido)
    """
    logging.basicConfig(
        level=Config.get_log_level(),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr
    )

    args = build_parser().parse_args(argv)
    repository = StateFileRepository()

    try:
        config = build_run_config(args)
        router = initialize_dependencies()
    except (ValidationError, ValueError) as e:
        logger.error(f"Error en la configuración: {e}")
        response = RunConfigMiddleware.create_usage_error_response(str(e))
        sys.stdout.write(render_response(response, None, repository))
        return response['status']

    # =========================================================================
    # VALIDAR CONFIGURACIÓN (MIDDLEWARE)
    # =========================================================================
    is_valid, error_message = RunConfigMiddleware.validate_run_config(config)
    if not is_valid:
        response = RunConfigMiddleware.create_usage_error_response(error_message)
        sys.stdout.write(render_response(response, config, repository))
        return response['status']

    response = router.route_command(config)
    text = render_response(response, config, repository)

    if response.get('table') is not None:
        text = repository.write_output(text, config.output_path)
    if text is not None:
        sys.stdout.write(text)
    return response['status']


if __name__ == '__main__':
    sys.exit(main())
