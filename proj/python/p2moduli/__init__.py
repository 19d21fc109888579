"""Exact numerics for sheaves on the projective plane.

Exceptional bundles and their dyadic tree, the delta/delta' existence
boundaries for semistable sheaves, the classification of generic prioritary
sheaves, and Kronecker-module moduli numerology. Everything is computed in
exact rational / quadratic-irrational arithmetic; values cross the boundary
as strings ("a/b") or JSON-shaped dicts matching the CLI schema.
"""

from ._core import (
    candidate_walls,
    check_module,
    classify,
    compose,
    delta,
    delta_prime,
    epsilon,
    euler_char,
    euler_form,
    exists_prioritary,
    family_invariants,
    find_triangle,
    in_region_s,
    left_series,
    locate,
    moduli_dim,
    qapprox,
    run_cli,
    sample_curves,
    semistable_status,
    slope_disc,
    tiling_spotcheck,
    x_width,
)

__all__ = [
    "candidate_walls",
    "check_module",
    "classify",
    "compose",
    "delta",
    "delta_prime",
    "epsilon",
    "euler_char",
    "euler_form",
    "exists_prioritary",
    "family_invariants",
    "find_triangle",
    "in_region_s",
    "left_series",
    "locate",
    "moduli_dim",
    "qapprox",
    "run_cli",
    "sample_curves",
    "semistable_status",
    "slope_disc",
    "tiling_spotcheck",
    "x_width",
]
