"""Configuration for hopfkit."""

from pathlib import Path

VERSION = "1.0.0"

# Groups above this order are refused by every group oracle
ORDER_CAP = 60

# Upper bound on enumerated lower series / recursion branches per query
MAX_SERIES_ENUMERATION = 64

# Seed for randomized helpers when the caller does not pass one
DEFAULT_SEED = 20240517

# Paths
PACKAGE_DIR = Path(__file__).resolve().parent
FIXTURE_DIR = PACKAGE_DIR / "fixtures"

FIXTURE_FILES = [
    "sweedler.hopf.json",
    "a5-demo.group.json",
    "s3-bismash.mp.json",
    "s4-v4.series.json",
    "s4-a4.series.json",
    "s4-v4.sub.json",
    "s4-a4.sub.json",
]

# Reports
DEFAULT_REPORT = "json"
REPORT_FORMATS = ["json", "text"]
JSON_INDENT = 2

# Exit codes
EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# Inline group names accepted by groups.named()
NAMED_GROUPS = {
    "Cn": "cyclic group of order n",
    "Sn": "symmetric group on n points (n <= 5)",
    "An": "alternating group on n points (n <= 5)",
    "Dn": "dihedral group of order n (n even, n >= 4)",
    "V4": "Klein four-group",
}

# Builders exposed by `hopfkit build`
CONSTRUCTIONS = {
    "group-algebra": {
        "name": "Group algebra kG",
        "desc": "basis = group elements, grouplike comultiplication",
    },
    "dual-group-algebra": {
        "name": "Dual group algebra k^G",
        "desc": "indicator functions, pointwise product",
    },
    "drinfeld-double": {
        "name": "Drinfeld double D(G)",
        "desc": "k^G # kG with adjoint action, trivial cocycles",
    },
    "abelian-extension": {
        "name": "Abelian extension",
        "desc": "bicrossed product k^Gamma # kF from a matched-pair file",
    },
}
