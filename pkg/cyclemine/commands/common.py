"""Argument types and option groups shared by the subcommands."""
import argparse
import json
from fractions import Fraction

import settings
from cyclemine.core.model import CycleConfig, ThresholdConfig, parse_ratio
from cyclemine.errors import ConfigError

DEFAULTS = settings.MINER_SETTINGS


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if value < 1:
        raise argparse.ArgumentTypeError(f"{value} must be at least 1")
    return value


def min_sup_value(text: str):
    try:
        value = parse_ratio(text)
        ThresholdConfig(min_sup=value)
    except ConfigError as e:
        raise argparse.ArgumentTypeError(str(e))
    return value


def min_conf_value(text: str) -> Fraction:
    try:
        value = Fraction(parse_ratio(text))
    except ConfigError as e:
        raise argparse.ArgumentTypeError(str(e))
    if not 0 < value <= 1:
        raise argparse.ArgumentTypeError(f"min_conf must lie in (0, 1], got {text}")
    return value


def fraction_value(text: str) -> float:
    value = float(parse_ratio(text)) if text.endswith("%") else float(text)
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError(f"{text} must lie strictly between 0 and 1")
    return value


def add_cycle_args(parser, required_default: bool = True):
    default = DEFAULTS["CYCLE_LENGTH"] if required_default else None
    parser.add_argument("--cycle-length", "-l", type=positive_int, default=default,
                        help="cycle length l in time units")


def add_threshold_args(parser, with_expected_inc: bool = False):
    parser.add_argument("--min-sup", type=min_sup_value, default=DEFAULTS["MIN_SUP"],
                        help="count (2), percent (50%%) or fraction (0.5)")
    parser.add_argument("--min-conf", type=min_conf_value, default=DEFAULTS["MIN_CONF"])
    parser.add_argument("--partitions", type=positive_int, default=DEFAULTS["PARTITIONS"])
    parser.add_argument("--grouping", type=positive_int, default=DEFAULTS["GROUPING"],
                        help="transactions per time unit")
    if with_expected_inc:
        parser.add_argument("--expected-inc", type=positive_int, default=DEFAULTS["EXPECTED_INC"],
                            help="increment size assumed before the first update")
        parser.add_argument("--paper-literal", "--absolute-fpc", dest="absolute_fpc",
                            action="store_true",
                            help="compare absolute support with MinFPC")


def add_report_arg(parser):
    parser.add_argument("--report", choices=("text", "json"), default="text")


def add_confidence_arg(parser):
    parser.add_argument("--confidence", choices=("offset", "global"), default=DEFAULTS["CONFIDENCE_MODE"],
                        help="confidence on the rule's offset or from cyclic supports")


def thresholds_from_args(args) -> ThresholdConfig:
    return ThresholdConfig(
        min_sup=args.min_sup,
        min_conf=args.min_conf,
        expected_increment_size=getattr(args, "expected_inc", 1),
        absolute_fpc=getattr(args, "absolute_fpc", False),
    )


def cycle_from_args(args) -> CycleConfig:
    return CycleConfig(args.cycle_length)


def print_json(payload) -> None:
    print(json.dumps(payload, indent=2, default=str))
