"""Smoke tests for the python surface; the heavy verification lives in C++."""

import math

import pytest

import expsum


def test_field_context():
    ctx = expsum.make_field_context(7)
    assert ctx.p == 7
    assert ctx.g == 3
    assert ctx.discrete_log(6) == 3
    with pytest.raises(expsum.ExpsumError):
        expsum.make_field_context(9)


def test_subgroup_and_exp_sum():
    ctx = expsum.make_field_context(7)
    H = expsum.subgroup(ctx, 2)
    assert H.elements == [1, 2, 4]
    r = expsum.exp_sum(ctx, H, 1)
    assert r["magnitude"] == pytest.approx(math.sqrt(2.0), abs=1e-12)
    bound = expsum.max_nontrivial_fourier(ctx, H)
    assert bound["max_nontrivial"] == pytest.approx(math.sqrt(2.0) / 3.0, abs=1e-9)
    assert expsum.complete_sum_bound_check(ctx, H)


def test_exact_measures():
    mu = expsum.uniform_on(5, [0, 1])
    nu = expsum.convolve(mu, expsum.reflect(mu))
    assert nu.mass(0) == "1/2"
    assert nu.mass(1) == "1/4"
    assert nu.mass(4) == "1/4"
    nu2 = expsum.k_fold_nu(mu, 2)
    assert sum(nu2.masses()) == pytest.approx(1.0, abs=1e-12)
    phi = expsum.phi_values(expsum.uniform_on(7, [1, 2, 4]))
    assert phi[0] == "7/3"


def test_spectrum_and_selection():
    ctx = expsum.make_field_context(7)
    mu = expsum.subgroup_measure(ctx, expsum.subgroup(ctx, 2))
    assert expsum.lambda_delta(mu, "3/10") == [0]
    assert expsum.lambda_delta(mu, "1/2") == [0, 1, 2, 3, 4, 5, 6]
    report = expsum.select_k_delta(expsum.point_mass(101, 0), "1/10")
    assert report["k"] == 4
    assert report["delta"] == "1/161"


def test_sets_and_extraction():
    assert expsum.sumset([1, 2, 4], [1, 2, 4], 7) == [1, 2, 3, 4, 5, 6]
    assert expsum.productset([1, 2, 4], [1, 2, 4], 7) == [1, 2, 4]
    score = expsum.sum_product_score([1, 2, 4], 7)
    assert score["score"] == 9
    A = list(range(10))
    G = [(a, b) for a in A for b in A]
    result = expsum.bgs_extract(101, A, A, G, "19", "100/361")
    assert result["certified"]


def test_pipeline_certificate():
    mu = expsum.uniform_on(101, list(range(101)))
    cert = expsum.run_pipeline(mu, "1/2")
    assert cert["schema"] == "cert/1"
    assert cert["all_pass"]
    assert cert["sets"]["S4"] == [1]


def test_contradiction_report():
    ctx = expsum.make_field_context(101)
    report = expsum.assemble_contradiction(ctx, expsum.subgroup(ctx, 1), "1/4")
    assert report["branch"] == "bound_holds"


def test_scan():
    result = expsum.run_scan(7, 23, index_list=[2])
    assert result["row_count"] == 6
    again = expsum.run_scan(7, 23, index_list=[2])
    assert result["determinism_hash"] == again["determinism_hash"]
