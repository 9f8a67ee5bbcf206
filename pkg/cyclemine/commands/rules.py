import settings
from cyclemine.commands.common import (add_confidence_arg, add_report_arg, min_conf_value,
                                      positive_int)
from cyclemine.rules.rule_engine import format_rule, rule_record, rules_from_state
from cyclemine.storage.state_store import StateStore
from cyclemine.storage.transactions import load_transactions


class Rules:
    """Cyclic association rules of the FC itemsets held in a state file."""

    name = "rules"

    def __init__(self, cli):
        self.cli = cli

    def register(self, subparsers):
        parser = subparsers.add_parser(self.name, help="print the rules of a state file")
        parser.add_argument("--state", required=True)
        parser.add_argument("--min-conf", type=min_conf_value, default=None,
                            help="defaults to the threshold stored in the state")
        parser.add_argument("--increment", help="latest increment, counted for antecedents the state lacks")
        parser.add_argument("--grouping", type=positive_int, default=None,
                            help="defaults to the grouping stored in the state")
        add_confidence_arg(parser)
        add_report_arg(parser)
        parser.set_defaults(handler=self.run)

    def run(self, args) -> int:
        state = StateStore(args.state).load()
        increment = None
        if args.increment:
            grouping = args.grouping if args.grouping is not None else state.grouping
            increment = load_transactions(args.increment, grouping=grouping)

        rules = rules_from_state(state, args.min_conf, increment, args.confidence)
        for rule in rules:
            if args.report == "json":
                print(rule_record(rule))
            else:
                print(format_rule(rule, settings.REPORT_SETTINGS["DECIMALS"]))
        return 0


def setup(cli):
    cli.add_command(Rules(cli))
