import settings
from cyclemine.bench.harness import UPDATE, format_reports, sweep
from cyclemine.commands.common import (add_report_arg, fraction_value, min_sup_value, positive_int,
                                      print_json)
from cyclemine.core.model import CycleConfig, ThresholdConfig
from cyclemine.errors import ConfigError
from cyclemine.storage.generator import default_spec, generate
from cyclemine.storage.transactions import load_transactions


class Bench:
    """Full rerun against incremental update over increment fractions and a min_sup grid."""

    name = "bench"

    def __init__(self, cli):
        self.cli = cli

    def register(self, subparsers):
        parser = subparsers.add_parser(self.name, help="compare a PCAR rerun with an incremental update")
        parser.add_argument("database", nargs="?", help="transaction file (omit for synthetic data)")
        parser.add_argument("--synthetic-units", type=positive_int, default=None,
                            help="generate this many units in-process")
        parser.add_argument("--seed", type=int, default=None)
        parser.add_argument("--cycle-length", "-l", type=positive_int,
                            default=settings.MINER_SETTINGS["CYCLE_LENGTH"])
        parser.add_argument("--min-sup", type=min_sup_value, action="append", default=None,
                            help="repeat to build the grid")
        parser.add_argument("--inc-fraction", type=fraction_value, action="append", default=None,
                            help="share of the units used as increment; repeatable")
        parser.add_argument("--partitions", type=positive_int, default=1)
        parser.add_argument("--repeats", type=positive_int, default=settings.BENCH_SETTINGS["REPEATS"])
        parser.add_argument("--grouping", type=positive_int, default=1)
        add_report_arg(parser)
        parser.set_defaults(handler=self.run)

    def _dataset(self, args):
        if args.database:
            return load_transactions(args.database, grouping=args.grouping)
        return generate(default_spec(units=args.synthetic_units, seed=args.seed))

    def run(self, args) -> int:
        if args.database and args.synthetic_units:
            raise ConfigError("Give either a database or --synthetic-units, not both")
        db = self._dataset(args)
        cycle = CycleConfig(args.cycle_length)
        grid = args.min_sup or settings.BENCH_SETTINGS["MIN_SUP_GRID"]
        fractions = args.inc_fraction or settings.BENCH_SETTINGS["INC_FRACTIONS"]

        result = sweep(db, cycle, ThresholdConfig(min_sup=grid[0]), grid, fractions,
                       partitions=args.partitions, repeats=args.repeats,
                       progress=args.report == "text")

        if args.report == "json":
            print_json({
                "reports": [report.to_dict() for report in result.reports],
                "monotone": {str(f): result.is_monotone(f) for f in fractions},
            })
            return 0

        print(f"📊 Benchmark over {db.unit_count} units, l={cycle.length}")
        for line in format_reports(result.reports):
            print(line)
        for fraction in fractions:
            mark = "✅" if result.is_monotone(fraction) else "❌"
            work = "✅" if result.is_monotone(fraction, key="candidates") else "❌"
            print(f"{mark} update time non-increasing in min_sup at inc={fraction} "
                  f"({work} candidates counted)")
        updates = [r for r in result.reports if r.algorithm == UPDATE]
        print(f"📖 Original-database reads during updates: {sum(r.original_reads for r in updates)}")
        return 0


def setup(cli):
    cli.add_command(Bench(cli))
