import math

import numpy as np
import pytest

from parwhit import (PoleAssignment, SeriesConfig, SpectralData, auto_contour,
                     enumerate_terms, eval_mb, eval_residue_series,
                     leading_asymptotic, residue_term)
from parwhit.errors import ConfigError, DomainError, GenericityError
from parwhit.logcomplex import rescaled_sum


def make(m, N, lam, hbar=1.0, x=-3.0):
    return SpectralData(m=m, N=N, lam=lam, hbar=hbar, x=x)


class TestEnumerate:
    def test_m1_order0(self):
        s = make(1, 2, (0.5, 0.0))
        terms = enumerate_terms(s, SeriesConfig(max_order=0))
        assert [(a.j, a.n) for a in terms] == [((1,), (0,)), ((2,), (0,))]

    def test_m2_order0_count(self):
        s = make(2, 3, (0.8, 0.1, -0.7))
        terms = enumerate_terms(s, SeriesConfig(max_order=0))
        assert len(terms) == 6  # ordered pairs of distinct indices

    def test_count_formula_per_order(self):
        s = make(2, 4, (0.9, 0.4, -0.3, -1.15))
        terms = enumerate_terms(s, SeriesConfig(max_order=3))
        per_order = {}
        for a in terms:
            per_order[a.order] = per_order.get(a.order, 0) + 1
        base = math.factorial(2) * math.comb(4, 2)
        for k, count in per_order.items():
            assert count == base * math.comb(k + 1, 1)  # compositions of k into 2 parts

    def test_ordering(self):
        s = make(1, 3, (0.7, 0.0, -0.9))
        terms = enumerate_terms(s, SeriesConfig(max_order=2))
        keys = [(a.order, a.j, a.n) for a in terms]
        assert keys == sorted(keys)

    def test_genericity_rejected_with_pair_named(self):
        s = make(2, 4, (0.9, 0.4, -0.3, -1.1))  # 0.9 - (-1.1) = 2.0 = 2*hbar
        with pytest.raises(GenericityError, match="lambda_1 - lambda_4"):
            enumerate_terms(s, SeriesConfig(max_order=0))

    def test_repeated_j_rejected_at_construction(self):
        with pytest.raises(ConfigError):
            PoleAssignment(j=(1, 1), n=(0, 0))


class TestResidueTerm:
    def test_order0_matches_coset_closed_form(self):
        # the order-0 terms re-sum to the leading asymptotic coset expression
        s = make(2, 4, (0.9, 0.4, -0.3, -1.15), hbar=0.8, x=-2.0)
        terms = [residue_term(a, s) for a in enumerate_terms(s, SeriesConfig(max_order=0))]
        total = rescaled_sum(terms)
        asym = leading_asymptotic(s)
        assert abs((total / asym).to_complex() - 1.0) <= 1e-12

    def test_order1_relative_factor(self):
        # order-1 terms carry e^x relative to order 0, up to lambda-dependent constants
        s = make(1, 2, (0.5, 0.0), hbar=1.0, x=-2.0)
        t0 = residue_term(PoleAssignment((1,), (0,)), s)
        t1 = residue_term(PoleAssignment((1,), (1,)), s)
        s2 = make(1, 2, (0.5, 0.0), hbar=1.0, x=-4.0)
        u0 = residue_term(PoleAssignment((1,), (0,)), s2)
        u1 = residue_term(PoleAssignment((1,), (1,)), s2)
        ratio_x2 = (t1 / t0).to_complex()
        ratio_x4 = (u1 / u0).to_complex()
        assert ratio_x4 / ratio_x2 == pytest.approx(math.exp(-2.0), rel=1e-12)


class TestSeries:
    def test_domain_error_for_nonnegative_x(self):
        s = make(1, 2, (0.5, 0.0), x=1.0)
        with pytest.raises(DomainError):
            eval_residue_series(s)
        with pytest.raises(DomainError):
            eval_residue_series(make(1, 2, (0.5, 0.0), x=0.0))

    def test_matches_quadrature_m1(self):
        s = make(1, 2, (0.5, 0.0), x=-3.0)
        mb = eval_mb(s, auto_contour(s, 1e-9))
        rs = eval_residue_series(s)
        assert abs((rs.value / mb.value).to_complex() - 1.0) <= 1e-8

    def test_matches_quadrature_m2_various_hbar(self):
        for hbar in (1.0, 0.83):
            s = make(2, 4, (0.9, 0.4, -0.3, -1.15), hbar=hbar, x=-4.0)
            mb = eval_mb(s, auto_contour(s, 1e-9))
            rs = eval_residue_series(s)
            assert abs((rs.value / mb.value).to_complex() - 1.0) <= 1e-6

    def test_order_decay_beyond_order3(self):
        # for x <= -2 hbar the per-order partial sums decay monotonically past order 3
        s = make(2, 4, (0.9, 0.4, -0.3, -1.15), x=-2.5)
        import itertools
        from parwhit.residues import _compositions
        mags = []
        for order in range(8):
            terms = []
            for js in itertools.permutations(range(1, 5), 2):
                for ns in _compositions(order, 2):
                    terms.append(residue_term(PoleAssignment(js, ns), s))
            mags.append(rescaled_sum(terms).log_mag)
        for k in range(3, 7):
            assert mags[k + 1] < mags[k]

    def test_permutation_symmetry_exact(self):
        rng = np.random.default_rng(3)
        lam = (0.9, 0.4, -0.3, -1.15)
        s1 = make(2, 4, lam, x=-3.0)
        v1 = eval_residue_series(s1).value
        for _ in range(5):
            perm = tuple(rng.permutation(lam))
            v2 = eval_residue_series(make(2, 4, perm, x=-3.0)).value
            assert v2.log_mag == v1.log_mag and v2.phase == v1.phase

    def test_tail_estimate_reported(self):
        s = make(1, 3, (0.7, 0.0, -0.9), x=-3.0)
        res = eval_residue_series(s)
        assert res.tail_estimate <= 1e-10
        assert res.orders_summed >= 4

    def test_series_config_caps(self):
        with pytest.raises(ConfigError):
            SeriesConfig(max_order=61)
        with pytest.raises(ConfigError):
            SeriesConfig(tol=0.0)


class TestExtremeRegimes:
    def test_log_space_pathway_beyond_double_range(self):
        # value ~ e^85; everything stays in log space until the final ratio
        s = make(1, 2, (2.13, 0.0), x=-40.0)
        mb = eval_mb(s, auto_contour(s, 1e-9), max_rel_err=None)
        rs = eval_residue_series(s)
        assert mb.value.log_mag > 80.0
        assert abs((mb.value / rs.value).to_complex() - 1.0) <= 1e-8
        # at x = -40 the order-0 term is the whole series to double precision
        la = leading_asymptotic(s)
        assert abs((rs.value / la).to_complex() - 1.0) <= 1e-15

    def test_cross_method_at_nonunit_hbar_n5(self):
        s = make(2, 5, (1.17, 0.55, -0.02, -0.73, -1.38), hbar=1.3, x=-4.0)
        mb = eval_mb(s, auto_contour(s, 1e-9), max_rel_err=None)
        rs = eval_residue_series(s)
        assert abs((mb.value / rs.value).to_complex() - 1.0) <= 1e-8

    def test_cross_method_mild_x(self):
        s = make(1, 3, (0.7, 0.0, -0.9), x=-1.0)
        mb = eval_mb(s, auto_contour(s, 1e-9))
        rs = eval_residue_series(s)
        assert abs((mb.value / rs.value).to_complex() - 1.0) <= 1e-8
