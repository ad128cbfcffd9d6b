"""Entropy and average swap distance of frequency distributions on the permutohedron."""

from ._core import (
    OrderDistribution,
    Permutohedron,
    analyze_file,
    automorphism_count,
    avg_swap_distance,
    build,
    conditional_mean,
    delta_n3,
    die_rolling_sample,
    distance_spectrum,
    dominance,
    entropy_plugin,
    expected_H_die_rolling,
    expected_d_die_rolling,
    expected_d_random_permutation,
    export_dot,
    hamiltonian_enumeration,
    holm_correct,
    inversion_count,
    left_pvalue_exact_rp,
    mahonian,
    multiset_counterexample,
    null_expectation,
    pa,
    p_equal_exact,
    permutation_of_rank,
    pm_of_mask,
    pm_table,
    polya_urn_sample,
    random_permutation_sample,
    random_walk_sample,
    rank_of,
    renyi_entropy,
    shifted_eigenvalues,
    simpson,
    swap_distance,
    wilcoxon_left,
)

__all__ = [
    "OrderDistribution",
    "Permutohedron",
    "analyze_file",
    "automorphism_count",
    "avg_swap_distance",
    "build",
    "conditional_mean",
    "delta_n3",
    "die_rolling_sample",
    "distance_spectrum",
    "dominance",
    "entropy_plugin",
    "expected_H_die_rolling",
    "expected_d_die_rolling",
    "expected_d_random_permutation",
    "export_dot",
    "hamiltonian_enumeration",
    "holm_correct",
    "inversion_count",
    "left_pvalue_exact_rp",
    "mahonian",
    "multiset_counterexample",
    "null_expectation",
    "pa",
    "p_equal_exact",
    "permutation_of_rank",
    "pm_of_mask",
    "pm_table",
    "polya_urn_sample",
    "random_permutation_sample",
    "random_walk_sample",
    "rank_of",
    "renyi_entropy",
    "shifted_eigenvalues",
    "simpson",
    "swap_distance",
    "wilcoxon_left",
]
