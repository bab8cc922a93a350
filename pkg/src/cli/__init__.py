from .version import __version__

from .cli_error import CliError
from .command_types import Command, ExitCode, OutputFormat
from .logging_setup import configure_logging
from .run_config import RunConfig, build_parser, parse_args
from .runner import run
