"""LNS solver for the multi-source capacitated facility location problem
with customer incompatibilities."""

from ._core import (
    ConstructError,
    Instance,
    ParseError,
    RunResult,
    Solution,
    compute_gap,
    construct_amortized_greedy,
    construct_sorted_cost,
    default_profile,
    evaluate,
    generate_instance,
    load_instance,
    parse_instance,
    run_lns,
    serialize_instance,
    solve_exact,
    solve_exact_small,
    updated_weight,
    validate_feasibility_bound,
)

__all__ = [
    "ConstructError",
    "Instance",
    "ParseError",
    "RunResult",
    "Solution",
    "compute_gap",
    "construct_amortized_greedy",
    "construct_sorted_cost",
    "default_profile",
    "evaluate",
    "generate_instance",
    "load_instance",
    "parse_instance",
    "run_lns",
    "serialize_instance",
    "solve_exact",
    "solve_exact_small",
    "updated_weight",
    "validate_feasibility_bound",
]
