import argparse
from dataclasses import replace

from cyclemine.commands.common import positive_int
from cyclemine.storage.generator import PlantedPattern, default_spec, generate_records
from cyclemine.storage.transactions import save_transactions


def planted_pattern(text: str) -> PlantedPattern:
    """ITEMS:OFFSET:LENGTH[:PROBABILITY], e.g. 1,2:1:2:0.9"""
    parts = text.split(":")
    if len(parts) not in (3, 4):
        raise argparse.ArgumentTypeError(f"expected ITEMS:OFFSET:LENGTH[:P], got {text!r}")
    try:
        items = [int(item) for item in parts[0].split(",") if item]
        probability = float(parts[3]) if len(parts) == 4 else 1.0
        return PlantedPattern(tuple(items), int(parts[1]), int(parts[2]), probability)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def noise_rate(text: str) -> float:
    value = float(text)
    if not 0 <= value <= 1:
        raise argparse.ArgumentTypeError(f"noise rate {value} must lie in [0, 1]")
    return value


class Gen:
    """Write a synthetic dataset with planted cyclic itemsets."""

    name = "gen"

    def __init__(self, cli):
        self.cli = cli

    def register(self, subparsers):
        parser = subparsers.add_parser(self.name, help="generate a synthetic transaction file")
        parser.add_argument("output", help="transaction file to write")
        parser.add_argument("--units", type=positive_int, default=None)
        parser.add_argument("--items", type=positive_int, default=None, help="alphabet size")
        parser.add_argument("--plant", type=planted_pattern, action="append", default=None,
                            metavar="ITEMS:OFFSET:LENGTH[:P]")
        parser.add_argument("--noise", type=noise_rate, default=None)
        parser.add_argument("--seed", type=int, default=None)
        parser.set_defaults(handler=self.run)

    def run(self, args) -> int:
        spec = default_spec(units=args.units, seed=args.seed)
        overrides = {}
        if args.items is not None:
            overrides["items"] = args.items
        if args.plant is not None:
            overrides["planted"] = tuple(args.plant)
        if args.noise is not None:
            overrides["noise"] = args.noise
        spec = replace(spec, **overrides)

        written = save_transactions(generate_records(spec), args.output)
        print(f"✅ Wrote {written} transactions ({len(spec.planted)} planted patterns, seed {spec.seed}) "
              f"to {args.output}")
        return 0


def setup(cli):
    cli.add_command(Gen(cli))
