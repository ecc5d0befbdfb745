#!/usr/bin/env python3
"""
Default caps for ritt-kit.

Every cap can be overridden per call or per CLI flag. Nothing is read from
the environment.
"""

# Polynomial arithmetic
ALGEBRA_CAPS = {
    "degree_cap": 10_000,          # max degree produced by compose/iterate
    "decompose_degree_cap": 64,    # max degree accepted by complete_decompositions
    "curve_degree_cap": 96,        # max total degree of a pushed-forward curve
    "hint_max_order": 24,          # largest cyclotomic order tried for extension hints
}

# Semiconjugacy search
SEARCH_CAPS = {
    "n_max": 4,
    "deg_cap": 32,
    "solve_p_deg_bound": 3,
    "oracle_height": 2,
}

# Constant calculators
BOUND_CONFIG = {
    "exact_bits_threshold": 1_000_000,
}

# Dynamical Mordell-Lang harness
DML_CONFIG = {
    "height_cap_bits": 4096,
    "horizon": 12,
    "primes": [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47],
    "escape_recheck": 5,
}
