# vortexgas/main.py
from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from typing import NoReturn

from pydantic import ValidationError

from vortexgas import __version__
from vortexgas.errors import ConfigError
from vortexgas.schemas import COMMANDS, RunConfig
from vortexgas.settings import S
from vortexgas.services.export.manifest import write_error_record
from vortexgas.workers.tasks import error_record, execute

logger = logging.getLogger(__name__)


def configure_logging(level: str | None = None) -> None:
    logging.basicConfig(
        level=(level or S.log_level).upper(),
        format="[%(name)s] %(message)s",
        stream=sys.stderr,
    )


class CliParser(argparse.ArgumentParser):
    """Raises ConfigError instead of exiting, so bad flags still leave an error record."""

    def error(self, message: str) -> NoReturn:
        raise ConfigError(f"invalid arguments: {message}", usage=self.format_usage().strip())


def build_parser() -> argparse.ArgumentParser:
    parser = CliParser(
        prog="vortexgas",
        description="Quantized point-vortex gas: dynamics, flow potentials, Landau-Ginzburg sweeps, Metropolis sampling.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    helps = {
        "simulate": "integrate the equations of motion",
        "sample": "one Metropolis chain at fixed beta",
        "scan": "independent chains over ensemble.betas",
        "field": "flow-field grid, Chern class and contour circulations",
        "order-parameter": "Landau-Ginzburg order parameter over temperature",
        "check": "conservation audit of a stored or fresh trajectory",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("--config", type=str, default=None, help="JSON run document")
        p.add_argument("--out", type=str, default="out", help="output directory")
        p.add_argument("--seed", type=int, default=None, help="overrides the document seed")
        p.add_argument(
            "--set",
            dest="overrides",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="override a scalar field by dotted path (repeatable)",
        )
    return parser


def run_config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        config=args.config,
        out=args.out,
        seed=args.seed,
        overrides=args.overrides,
    )


def out_dir_from_argv(argv: Sequence[str]) -> str | None:
    """The --out value as typed, when there is one."""
    for k, arg in enumerate(argv):
        if arg == "--out" and k + 1 < len(argv):
            return argv[k + 1]
        if arg.startswith("--out="):
            return arg.split("=", 1)[1]
    return None


def reject_arguments(exc: Exception, argv: Sequence[str]) -> int:
    if isinstance(exc, ValidationError):
        first = exc.errors()[0]
        key = ".".join(str(p) for p in first["loc"])
        exc = ConfigError(f"invalid arguments: {key}: {first['msg']}", key=key)
    command = next((a for a in argv if a in COMMANDS), None)
    record = error_record(exc, command)
    logger.error("%s", record["message"])
    write_error_record(out_dir_from_argv(argv), record)
    return record["exit_code"]


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    configure_logging()
    try:
        rc = run_config_from_args(build_parser().parse_args(argv))
    except (ConfigError, ValidationError) as e:
        return reject_arguments(e, argv)
    return execute(rc)


if __name__ == "__main__":
    sys.exit(main())
