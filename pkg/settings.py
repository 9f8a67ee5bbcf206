import os
from dotenv import load_dotenv

# Load environment overrides (.env next to the working directory)
load_dotenv()


def _env(name, default):
    return os.getenv(f"CYCLEMINE_{name}", default)


# Mining defaults (command-line flags win over these)
MINER_SETTINGS = {
    "CYCLE_LENGTH": int(_env("CYCLE_LENGTH", 2)),
    "MIN_SUP": _env("MIN_SUP", "2"),            # count ("2"), percent ("50%") or fraction ("0.5")
    "MIN_CONF": _env("MIN_CONF", "0.5"),
    "PARTITIONS": int(_env("PARTITIONS", 1)),
    "EXPECTED_INC": int(_env("EXPECTED_INC", 1)),  # increment size assumed before one exists
    "GROUPING": int(_env("GROUPING", 1)),          # transactions per time unit
    "CONFIDENCE_MODE": _env("CONFIDENCE_MODE", "offset"),
}

# State persistence
STATE_SETTINGS = {
    "FORMAT": "cyclemine-state",
    "FORMAT_VERSION": 1,
}

# Benchmark harness
BENCH_SETTINGS = {
    "INC_FRACTIONS": (0.1, 0.2, 0.3),   # db = 10%, 20%, 30% of the dataset
    "REPEATS": int(_env("BENCH_REPEATS", 3)),
    "MIN_SUP_GRID": ("5%", "10%", "25%", "50%"),
    "SYNTHETIC": {
        "UNITS": 5000,
        "ITEMS": 40,
        "NOISE": 0.01,
        "SEED": 7,
        # (items, offset, cycle length, firing probability)
        "PLANTED": (
            ((1, 2), 1, 2, 0.9),
            ((3, 4, 5), 0, 2, 0.8),
            ((6, 7), 1, 2, 0.6),
            ((8,), 0, 2, 0.5),
        ),
    },
}

# Reports
REPORT_SETTINGS = {
    "TIMEZONE": _env("REPORT_TIMEZONE", "UTC"),
    "DECIMALS": 4,
}

# Logging
LOG_LEVEL = _env("LOG_LEVEL", "WARNING").upper()
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

# Command exit codes
EXIT_CODES = {
    "OK": 0,
    "ARGUMENT": 2,
    "DATA": 3,
    "STATE": 4,
}
