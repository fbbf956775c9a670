"""Construction, verification and search of large degree/diameter graphs."""

from .cayley import (
    ConnectionSet,
    build_cayley_explicit,
    cayley_bfs,
    cayley_diameter_implicit,
    close_connection_set,
)
from .constructions import (
    PairingMap,
    edge_pairing_graph,
    foster_graph,
    lcf_graph,
    moore_bound,
    validate_pairing,
)
from .graphcore import (
    CompactGraph,
    GraphStats,
    average_distance,
    bfs_eccentricity,
    diameter,
    girth,
    stats,
)
from .groups import (
    SemidirectGroup,
    SemidirectSpec,
    TableGroup,
    TwoCoordGroup,
    TwoCoordSpec,
    sd_inv,
    sd_mul,
    sd_validate,
    table_group_load,
)
from .records import RecordEntry, VerificationReport, table, verify_all, verify_entry
from .search import SearchConfig, search_generators, search_pairing

__version__ = "0.1.0"
