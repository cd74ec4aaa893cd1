from __future__ import annotations

import argparse
import logging

from django.core.management.base import BaseCommand, CommandError

from sentilex.lexicon.exceptions import ComputationError, SentilexError, ValidationError
from sentilex.toolkit.utils import capture_warnings, load_run_config, resolve_config

logger = logging.getLogger(__name__)

EXIT_RUNTIME = 1
EXIT_VALIDATION = 2


class ToolkitCommand(BaseCommand):
    """Shared plumbing: ``--config`` merging, warning capture and exit codes.

    Subclasses implement :meth:`run` and list the run-config keys their flags
    map onto in ``config_keys``.
    """

    config_keys: tuple[str, ...] = ()
    algorithms = None

    def add_arguments(self, parser):
        parser.add_argument("--config", help="Flat key=value run configuration file")
        # effective configuration handed over by the replay command
        parser.add_argument("--preset", default=None, help=argparse.SUPPRESS)
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def resolve(self, options) -> dict:
        file_values = load_run_config(options["config"]) if options.get("config") else {}
        if options.get("preset"):
            file_values = {**file_values, **options["preset"]}
        overrides = {key: options.get(key) for key in self.config_keys}
        return resolve_config(file_values, overrides, algorithms=self.algorithms)

    def handle(self, *args, **options):
        with capture_warnings() as warnings:
            self.warnings = warnings
            try:
                return self.run(*args, **options)
            except ValidationError as e:
                raise CommandError(str(e), returncode=EXIT_VALIDATION) from e
            except (ComputationError, OSError) as e:
                raise CommandError(str(e), returncode=EXIT_RUNTIME) from e
            except SentilexError as e:
                raise CommandError(str(e), returncode=EXIT_RUNTIME) from e

    def run(self, *args, **options):
        raise NotImplementedError
