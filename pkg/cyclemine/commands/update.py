from cyclemine.commands.common import add_report_arg, positive_int, print_json
from cyclemine.core.model import CycleConfig, ScanStats
from cyclemine.incremental.status import ItemsetStatus
from cyclemine.incremental.updater import update_state
from cyclemine.storage.state_store import StateStore
from cyclemine.storage.transactions import load_transactions


class Update:
    """Fold an increment into a stored state without touching the original data."""

    name = "update"

    def __init__(self, cli):
        self.cli = cli

    def register(self, subparsers):
        parser = subparsers.add_parser(self.name, help="apply an increment to a state file")
        parser.add_argument("increment", help="transaction file holding the appended data")
        parser.add_argument("--state", required=True, help="state file to read")
        parser.add_argument("--out", help="state file to write (defaults to --state)")
        parser.add_argument("--cycle-length", "-l", type=positive_int, default=None,
                            help="checked against the state's cycle length")
        parser.add_argument("--partitions", type=positive_int, default=1)
        parser.add_argument("--grouping", type=positive_int, default=None,
                            help="defaults to the grouping stored in the state")
        add_report_arg(parser)
        parser.set_defaults(handler=self.run)

    def run(self, args) -> int:
        store = StateStore(args.state)
        state = store.load()
        grouping = args.grouping if args.grouping is not None else state.grouping
        inc = load_transactions(args.increment, grouping=grouping)
        cycle = CycleConfig(args.cycle_length) if args.cycle_length is not None else None
        stats = ScanStats()

        outcome = update_state(state, inc, cycle, args.partitions, stats)
        out = args.out or args.state
        StateStore(out).save(outcome.state)

        by_status = outcome.state.counts_by_status()
        tallies = outcome.tallies()
        if args.report == "json":
            print_json({
                "increment_units": outcome.increment_units,
                "db_units": outcome.state.db_units,
                "min_fpc": str(outcome.min_fpc),
                "cases": tallies,
                "transactions_read": stats.transactions_read,
                "fc": by_status[ItemsetStatus.FC],
                "fpc": by_status[ItemsetStatus.FPC],
                "state": out,
            })
        else:
            print(f"✅ Applied {outcome.increment_units} units; state now covers {outcome.state.db_units}")
            print("📊 Cases: " + "  ".join(f"{letter}={count}" for letter, count in tallies.items()))
            print(f"📖 Transactions read: {stats.transactions_read}")
            print(f"📊 FC: {by_status[ItemsetStatus.FC]}  FPC: {by_status[ItemsetStatus.FPC]}")
            print(f"💾 State written to {out}")
        return 0


def setup(cli):
    cli.add_command(Update(cli))
