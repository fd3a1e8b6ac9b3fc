"""Borel-Weil-Bott cohomology, zero loci and Hodge numbers on G/P."""

from ._bwbforge import (
    BwbforgeError,
    __version__,
    classify,
    cohomology,
    hodge,
    normalize_bundle,
    rank_dex,
    restricted_cohomology,
    run_cli,
    space_info,
)

__all__ = [
    "BwbforgeError",
    "__version__",
    "classify",
    "cohomology",
    "hodge",
    "normalize_bundle",
    "rank_dex",
    "restricted_cohomology",
    "run_cli",
    "space_info",
]
