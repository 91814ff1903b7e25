"""
Definición de rutas de la CLI: nombre de comando -> handler.
"""
import logging
from typing import Any, Callable, Dict

from ..handlers.handler import EXIT_USAGE, CommandHandler
from ..models.schemas import Command, RunConfig

# Configurar logging
logger = logging.getLogger(__name__)


class Router:
    """
    Router para despachar cada comando a su handler.
    """

    def __init__(self, command_handler: CommandHandler):
        """
        Inicializa el router con los handlers necesarios.

        Args:
            command_handler: Instancia de CommandHandler
        """
        self.command_handler = command_handler
        self.routes = self._define_routes()

    def _define_routes(self) -> Dict[Command, Callable[[RunConfig], Dict[str, Any]]]:
        """
        Define los comandos disponibles y sus handlers.

        Returns:
            Diccionario comando -> método del handler
        """
        return {
            Command.EVAL_PURE: self.command_handler.handle_eval_pure,
            Command.BOUND: self.command_handler.handle_bound,
            Command.ISOTROPIC: self.command_handler.handle_isotropic,
            Command.FIG: self.command_handler.handle_fig,
            Command.SUPERPOSE: self.command_handler.handle_superpose,
            Command.SELFTEST: self.command_handler.handle_selftest,
            Command.ROOF: self.command_handler.handle_roof,
        }

    def route_command(self, config: RunConfig) -> Dict[str, Any]:
        """
        Enruta una ejecución al handler correspondiente.

        Args:
            config: configuración validada

        Returns:
            Diccionario con status, body y tabla opcional
        """
        logger.info(f"Enrutando comando: {config.command.value}")

        if config.command not in self.routes:
            logger.warning(f"Comando no encontrado: {config.command}")
            return {
                'status': EXIT_USAGE,
                'body': {
                    'success': False,
                    'message': 'Comando no encontrado',
                    'command': str(config.command)
                },
                'table': None
            }

        return self.command_handler.execute(self.routes[config.command], config)
