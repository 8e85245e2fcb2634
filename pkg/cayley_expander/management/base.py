"""Shared plumbing for the ``expander_*`` management commands"""
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional

from django.core.management.base import BaseCommand, CommandError
from pydantic import BaseModel, ValidationError

from ..config import expander_config
from ..enums import ExitCode, GraphFormat
from ..exceptions import ConsistencyError, ConvergenceError, GraphError
from ..graphs import Graph, GraphDocument, read_graph
from ..utils import VERBOSITY_LEVELS, set_verbose


class ExpanderCommand(BaseCommand):
    """Base command: parse errors and domain errors become ``CommandError`` with the
    matching :class:`ExitCode` instead of exiting the interpreter."""

    requires_system_checks: list = []

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        # argparse errors raise CommandError(returncode=1) instead of SystemExit(2)
        parser.called_from_command_line = False
        return parser

    def execute(self, *args, **options):
        verbosity = options.get("verbosity", 1)
        # the default verbosity defers to the configured level
        set_verbose(
            expander_config.log_level
            if verbosity == 1
            else VERBOSITY_LEVELS.get(verbosity, "DEBUG")
        )
        with self.exit_codes():
            return super().execute(*args, **options)

    @contextmanager
    def exit_codes(self) -> Iterator[None]:
        try:
            yield
        except CommandError:
            raise
        except (ConsistencyError, ConvergenceError) as e:
            raise CommandError(str(e), returncode=ExitCode.CONSISTENCY)
        except OSError as e:
            raise CommandError(str(e), returncode=ExitCode.IO)
        except (GraphError, ValueError, RuntimeError, ArithmeticError) as e:
            raise CommandError(str(e), returncode=ExitCode.USAGE)

    def add_graph_argument(self, parser) -> None:
        parser.add_argument("graph", type=str, help="GraphFile path (edge list or JSON)")
        parser.add_argument(
            "--format",
            choices=GraphFormat.values(),
            default=None,
            help="GraphFile format, inferred from the suffix when omitted",
        )

    def load_graph(self, options) -> Graph:
        try:
            document: GraphDocument = read_graph(options["graph"], options.get("format"))
            return document.to_graph()
        except OSError as e:
            raise CommandError(f"cannot read {options['graph']}: {e}", returncode=ExitCode.IO)
        except (ValidationError, GraphError, ValueError) as e:
            raise CommandError(
                f"malformed graph file {options['graph']}: {e}", returncode=ExitCode.IO
            )

    def emit(self, report: BaseModel, out: Optional[str] = None) -> None:
        """Write the report once, to ``out`` or stdout"""
        text = report.json(indent=2)
        if out:
            Path(out).write_text(text + "\n")
        else:
            self.stdout.write(text)


def main(argv=None) -> None:
    """Console entry point running the ``expander_*`` commands without a Django project.

    A project configured through ``DJANGO_SETTINGS_MODULE`` is used when present and
    must list ``cayley_expander`` in ``INSTALLED_APPS``.
    """
    import os

    import django
    from django.conf import settings
    from django.core.management import ManagementUtility

    argv = list(sys.argv if argv is None else argv)
    if not settings.configured and "DJANGO_SETTINGS_MODULE" not in os.environ:
        settings.configure(INSTALLED_APPS=["cayley_expander"])
    django.setup()
    try:
        ManagementUtility(argv).execute()
    except CommandError as e:
        sys.stderr.write(f"CommandError: {e}\n")
        sys.exit(e.returncode)
