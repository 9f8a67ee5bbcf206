import argparse
import importlib
import logging
import sys

import settings
from cyclemine.errors import CycleMineError

logger = logging.getLogger("cyclemine")

EXTENSIONS = (
    "cyclemine.commands.mine",
    "cyclemine.commands.update",
    "cyclemine.commands.rules",
    "cyclemine.commands.find",
    "cyclemine.commands.bench",
    "cyclemine.commands.gen",
)


class CommandLine:
    """Subcommand registry; every command module registers itself through setup()."""

    def __init__(self):
        self.parser = argparse.ArgumentParser(
            prog="mine.py",
            description="Mine cyclic association rules and keep them current as data is appended.",
        )
        self.parser.add_argument("--log-level", default=settings.LOG_LEVEL,
                                 choices=("DEBUG", "INFO", "WARNING", "ERROR"))
        self.subparsers = self.parser.add_subparsers(dest="command", metavar="COMMAND")
        self.subparsers.required = True
        self.commands = {}

    def add_command(self, command):
        command.register(self.subparsers)
        self.commands[command.name] = command

    def load_extension(self, name):
        module = importlib.import_module(name)
        module.setup(self)


def build_cli() -> CommandLine:
    cli = CommandLine()
    for name in EXTENSIONS:
        cli.load_extension(name)
    return cli


def main(argv=None) -> int:
    cli = build_cli()
    try:
        args = cli.parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 on --help
        return e.code if isinstance(e.code, int) else settings.EXIT_CODES["OK"]

    logging.basicConfig(level=args.log_level, format=settings.LOG_FORMAT)
    try:
        return args.handler(args)
    except CycleMineError as e:
        print(f"❌ Error: {e}")
        logger.debug("Command %s failed", args.command, exc_info=True)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
