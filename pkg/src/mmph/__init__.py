"""MMP hypergraphs: parsing, 0/1 assignments, exact coordinatizations and
random generation of critical non-KS sets."""
from .coordinatize import (
    OrthoReport,
    complete_hyperedge,
    inner_product,
    master_components,
    vecfind_master,
    verify_coordinatization,
)
from .core import (
    EmptyResult,
    LoopReport,
    connected_components,
    delete_vertices,
    drop_m1_vertices,
    fill,
    keep_edges,
    max_loop_order,
    multiplicities,
    strip_edges,
)
from .exact import Coordinatization, ExactScalar, parse_scalar, vector
from .generate import (
    Distribution,
    Filters,
    GenerationConfig,
    collect_distribution,
    generate,
    run_m1,
    run_m2,
    run_m3,
)
from .lang import (
    Mmph,
    MmphSyntaxError,
    ValidationReport,
    parse_coordinatization,
    parse_mmph,
    parse_mmph_lines,
    serialize_coordinatization,
    serialize_mmph,
    validate,
)
from .solver import (
    Classification,
    classify,
    criticalize,
    enumerate_assignments,
    filter_full_edge_no_m1,
    find_assignment,
    has_parity_proof,
    is_binary,
    is_critical,
    parity_certificate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
