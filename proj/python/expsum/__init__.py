"""Exponential sums over multiplicative subgroups of F_p.

Thin python surface over the C++ core: exact measures and convolutions,
finite Fourier spectra, large-coefficient sets, BGS extraction, and the
set-construction certificate pipeline.
"""

from ._core import (  # noqa: F401
    ExpsumError,
    FieldContext,
    Measure,
    SubgroupSpec,
    __version__,
    assemble_contradiction,
    bgs_extract,
    build_H1,
    check_incomplete_smear,
    check_lambda_bounds,
    check_smear_out,
    check_statistical_mult,
    check_translate_inequality,
    complete_sum_bound_check,
    convolve,
    exp_sum,
    k_fold_nu,
    lambda_delta,
    make_field_context,
    max_nontrivial_fourier,
    phi_values,
    point_mass,
    productset,
    reflect,
    run_pipeline,
    run_scan,
    segment,
    select_k_delta,
    subgroup,
    subgroup_measure,
    sum_product_score,
    sumset,
    uniform_on,
    verify_hypotheses,
)
