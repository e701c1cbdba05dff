"""capforge: graph constructions whose strong-power independence series jumps,
with certified solvers, series reports, and an experiment CLI."""

from .analysis import (
    BoundsRecord,
    ClassProfile,
    SeriesEntry,
    SeriesReport,
    alpha_threshold,
    class_index,
    edge_probability,
    edge_probability_floor,
    filter_representatives,
    first_moment_bound,
    independence_series,
    pair_profile,
    purge_full_classes,
    theoretical_bounds,
)
from .constructions import (
    ConstructedGraph,
    EdgeClass,
    JumpParams,
    MultiJumpSpec,
    certificate_for,
    certificate_size_for,
    equivalence_classes,
    expected_class_count,
    explicit_power_set,
    explicit_power_set_size,
    multi_jump_product,
    product_certificate,
    sample_jump_graph,
    sample_simple_jump_graph,
    simple_explicit_set,
)
from .graphs import (
    DEFAULT_CAP,
    CapExceeded,
    Graph,
    PowerGraphView,
    complete_graph,
    cycle_graph,
    empty_graph,
    index_to_tuple,
    is_independent,
    make_graph,
    power_view,
    strong_power,
    strong_product,
    tuple_to_index,
)
from .io import GraphFormatError, read_graph, read_metadata, write_graph
from .solver import (
    MISResult,
    SolverBudget,
    brute_force_mis,
    clique_cover_upper_bound,
    local_search_lower_bound,
    max_independent_set,
    mitm_mis,
)

__version__ = "0.1.0"

__all__ = [
    "BoundsRecord",
    "CapExceeded",
    "ClassProfile",
    "ConstructedGraph",
    "DEFAULT_CAP",
    "EdgeClass",
    "Graph",
    "GraphFormatError",
    "JumpParams",
    "MISResult",
    "MultiJumpSpec",
    "PowerGraphView",
    "SeriesEntry",
    "SeriesReport",
    "SolverBudget",
    "alpha_threshold",
    "brute_force_mis",
    "certificate_for",
    "certificate_size_for",
    "class_index",
    "clique_cover_upper_bound",
    "complete_graph",
    "cycle_graph",
    "edge_probability",
    "edge_probability_floor",
    "empty_graph",
    "equivalence_classes",
    "expected_class_count",
    "explicit_power_set",
    "explicit_power_set_size",
    "filter_representatives",
    "first_moment_bound",
    "independence_series",
    "index_to_tuple",
    "is_independent",
    "local_search_lower_bound",
    "make_graph",
    "max_independent_set",
    "mitm_mis",
    "multi_jump_product",
    "pair_profile",
    "power_view",
    "product_certificate",
    "purge_full_classes",
    "read_graph",
    "read_metadata",
    "sample_jump_graph",
    "sample_simple_jump_graph",
    "simple_explicit_set",
    "strong_power",
    "strong_product",
    "theoretical_bounds",
    "tuple_to_index",
    "write_graph",
]
