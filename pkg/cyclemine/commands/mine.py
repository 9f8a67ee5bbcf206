from cyclemine.commands.common import (add_cycle_args, add_report_arg, add_threshold_args,
                                      cycle_from_args, print_json, thresholds_from_args)
from cyclemine.core.model import ScanStats, describe_thresholds
from cyclemine.incremental.status import ItemsetStatus
from cyclemine.incremental.updater import initial_mine
from cyclemine.storage.state_store import StateStore
from cyclemine.storage.transactions import load_transactions


class Mine:
    """Initial mining: classify the database and write the state file."""

    name = "mine"

    def __init__(self, cli):
        self.cli = cli

    def register(self, subparsers):
        parser = subparsers.add_parser(self.name, help="mine a database and write its state")
        parser.add_argument("database", help="transaction file")
        parser.add_argument("--state", required=True, help="state file to write")
        add_cycle_args(parser)
        add_threshold_args(parser, with_expected_inc=True)
        add_report_arg(parser)
        parser.set_defaults(handler=self.run)

    def run(self, args) -> int:
        db = load_transactions(args.database, grouping=args.grouping)
        thresholds = thresholds_from_args(args)
        cycle = cycle_from_args(args)
        stats = ScanStats()

        state = initial_mine(db, cycle, thresholds, args.partitions, stats)
        StateStore(args.state).save(state)

        by_status = state.counts_by_status()
        if args.report == "json":
            print_json({
                "units": db.unit_count,
                "cycle_length": cycle.length,
                "fc": by_status[ItemsetStatus.FC],
                "fpc": by_status[ItemsetStatus.FPC],
                "transactions_read": stats.transactions_read,
                "state": args.state,
            })
        else:
            print(f"✅ Mined {db.unit_count} units (l={cycle.length}, {describe_thresholds(thresholds)})")
            print(f"📊 FC: {by_status[ItemsetStatus.FC]}  FPC: {by_status[ItemsetStatus.FPC]}")
            print(f"💾 State written to {args.state}")
        return 0


def setup(cli):
    cli.add_command(Mine(cli))
