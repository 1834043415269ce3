"""pyteich.cli runs the series identities and the spectrum statistics from
the command line and writes machine-readable reports. The run parameters
are read from an INI file (:class:`RunConfig`), overridden by the
environment and by the command line flags.
"""
from .run_config import RunConfig
from .commands import CommandOutput, build_parser, main, make_report, run_command, write_csv
