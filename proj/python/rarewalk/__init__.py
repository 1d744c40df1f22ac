"""Exact and Monte Carlo statistics of rarely visited edges of the simple
random walk on Z.

The heavy lifting lives in the compiled ``_core`` extension; this package
just re-exports it.
"""

from ._core import (  # noqa: F401
    __version__,
    biased_walk_summary,
    double_factorial,
    enum_distribution_alpha,
    enum_event_probability,
    enum_expectation_alpha,
    enum_expectation_f1,
    enum_moment_alpha_k,
    estimate_expectation,
    estimate_f1,
    estimate_tail,
    expectation_alpha_ladder,
    expectation_alpha_recursion,
    expected_alpha_k,
    flip_after_last_visit,
    hitting_time,
    limsup_probe,
    prob_c1,
    prob_c2,
    prob_d1,
    prob_d2,
    prob_return_zero,
    rare_edge_count,
    rare_site_count,
    reflect_before_first_hit,
    simulate_replica,
    simulate_replica_random,
    verify_injection_sets,
)
