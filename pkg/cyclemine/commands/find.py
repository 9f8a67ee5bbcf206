import json

import settings
from cyclemine.commands.common import (add_confidence_arg, add_cycle_args, add_report_arg,
                                      add_threshold_args, cycle_from_args, thresholds_from_args)
from cyclemine.core.model import ScanStats, format_itemset
from cyclemine.mining.interleaved import mine_interleaved
from cyclemine.mining.pcar import mine_pcar
from cyclemine.mining.sequential import mine_sequential
from cyclemine.rules.rule_engine import format_rule, rule_record, rules_from_database
from cyclemine.storage.transactions import load_transactions

ALGORITHMS = ("sequential", "interleaved", "pcar")


class Find:
    """Batch extraction with one of the baselines, no state involved."""

    name = "find"

    def __init__(self, cli):
        self.cli = cli

    def register(self, subparsers):
        parser = subparsers.add_parser(self.name, help="list frequent cyclic itemsets and rules")
        parser.add_argument("database")
        parser.add_argument("--algorithm", choices=ALGORITHMS, default="pcar")
        add_cycle_args(parser)
        add_threshold_args(parser)
        add_confidence_arg(parser)
        add_report_arg(parser)
        parser.set_defaults(handler=self.run)

    def _extract(self, args, db, cycle, thresholds, stats):
        if args.algorithm == "sequential":
            return mine_sequential(db, cycle, thresholds, stats)
        if args.algorithm == "interleaved":
            return mine_interleaved(db, cycle, thresholds, stats)
        return mine_pcar(db, cycle, thresholds, args.partitions, stats)

    def run(self, args) -> int:
        db = load_transactions(args.database, grouping=args.grouping)
        cycle = cycle_from_args(args)
        thresholds = thresholds_from_args(args)
        stats = ScanStats()

        results = sorted(self._extract(args, db, cycle, thresholds, stats),
                         key=lambda r: (len(r.itemset), r.itemset))
        rules = rules_from_database(results, db, cycle, thresholds.min_conf, args.confidence)

        if args.report == "json":
            for result in results:
                print(json.dumps({"itemset": list(result.itemset), "support": result.support,
                                  "offset": result.best_offset}))
            for rule in rules:
                print(rule_record(rule))
            return 0

        print(f"✅ {args.algorithm}: {len(results)} frequent cyclic itemsets, "
              f"{stats.transactions_read} transactions read")
        for result in results:
            print(f"  {format_itemset(result.itemset)} sup={result.support} offset={result.best_offset}")
        for rule in rules:
            print(format_rule(rule, settings.REPORT_SETTINGS["DECIMALS"]))
        return 0


def setup(cli):
    cli.add_command(Find(cli))
