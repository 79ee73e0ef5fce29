"""Sandpile dynamics and graphical parking functions on rooted multigraphs."""

from .errors import (
    DisconnectedGraphError,
    DuplicateVertexError,
    GraphError,
    LoopEdgeError,
    SandparkError,
    SizeCapError,
    TooFewVerticesError,
    ToppleLimitError,
    UnknownVertexError,
)
from .graph import (
    RootedMultigraph,
    build_graph,
    graph_from_dict,
    graph_to_dict,
    load_graph,
    save_graph,
)
from .sandpile import (
    StabilisationTrace,
    MarkovRun,
    add_sink_grains,
    burning_sequence,
    burning_starts,
    config_from_dict,
    config_to_dict,
    drain_except,
    is_minimal_recurrent,
    is_recurrent,
    is_recurrent_burning,
    is_recurrent_orientation,
    is_stable,
    is_strongly_recurrent,
    load_config,
    markov_run,
    max_forbidden_set,
    orientation_indegrees,
    orientation_recurrent_set,
    stabilize,
    topple,
    trace_to_csv,
    write_trace_csv,
)
from .parking import (
    boost_except,
    burning_starts_pf,
    config_from_pf,
    decomposing_partition,
    delete_one_vertex,
    failing_boost_vertex,
    is_decomposable,
    is_g_parking,
    is_g_parking_naive,
    is_prime,
    is_prime_bruteforce,
    is_sink_twin,
    load_parking,
    parking_from_dict,
    parking_violation,
    pf_from_config,
    prime_decompositions,
    restrict_partition,
)
from .classical import (
    ParkOutcome,
    StepPath,
    breakpoints,
    from_path,
    is_parking_function,
    is_pf_by_condition,
    is_prime_classical,
    prime_bijection_classical,
    prime_bijection_classical_inverse,
    simulate_park,
    split_at_breakpoint,
    to_path,
    value_counts,
)
from .families import (
    FamilySpec,
    MonotonePath,
    bipartite_graph,
    bipartite_prime_bijection,
    bipartite_prime_bijection_inverse,
    catalan,
    closed_form_count,
    complete_graph,
    family_parts,
    is_pq_parking,
    is_prime_pq,
    make_family,
    path_with_e_heights,
    path_with_n_positions,
    pq_paths,
    split_graph,
    split_prime_bijection,
    split_prime_bijection_inverse,
    tripartite_graph,
    wheel_graph,
    wheel_recurrent,
    wheel_strongly_recurrent,
)
from .enumeration import (
    EnumerationReport,
    GapWitness,
    OracleReport,
    class_count,
    count_class,
    cross_validate_oracles,
    default_suite,
    expected_count,
    find_nonunique_decomposition_witness,
    find_quantifier_gap_witness,
    gap_witness_from_dict,
    iter_class,
    random_connected_multigraph,
    reports_to_csv,
    reports_to_json,
    verify_counts,
)

__version__ = "0.1.0"
