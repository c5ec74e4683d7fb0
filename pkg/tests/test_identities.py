"""Unit tests for the identity checkers and the suite runner.

Closed-form values pinned here were derived by hand from small cases
(k = 2, 3, 4, 6) and double-checked by naive summation in the fixtures,
so the checkers are exercised against numbers they did not produce.
"""

import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ramsum.arith import euler_phi, factorize, jordan_totient
from ramsum.csum import csum_moebius
from ramsum.errors import ResourceLimitError
from ramsum.exactnum import bernoulli_number
from ramsum.identities import (
    ALL_IDENTITIES,
    CheckResult,
    SuiteConfig,
    WeightFunctionSpec,
    build_grid,
    check_alkan_classical,
    check_alkan_generalized,
    check_bernoulli_weight,
    check_binomial_weight,
    check_coprime_power_sum,
    check_exp_weight,
    check_g_multiplicative,
    check_gamma_weight,
    check_gauss_product,
    check_gcd_weight,
    check_log_weight,
    check_mu_log_lemma,
    check_multisection,
    check_multivariate,
    check_power_sum,
    g_divisor_sum,
    is_finding,
    parse_weight,
    render_report,
    resolve_identities,
    run_suite,
    weight_value,
)
from ramsum.logspace import LogLinear


class TestWeightSpecs:
    def test_parse_tokens(self):
        assert parse_weight("power:2") == WeightFunctionSpec("power", t=2)
        assert parse_weight("jordan:3") == WeightFunctionSpec("jordan", t=3)
        assert parse_weight("phi") == WeightFunctionSpec("phi")
        assert parse_weight("tau") == WeightFunctionSpec("tau")
        assert parse_weight("sigma") == WeightFunctionSpec("sigma")

    @pytest.mark.parametrize("token", ["power", "jordan:x", "phi:3", "bogus", "power:-1"])
    def test_parse_rejects(self, token):
        with pytest.raises(ValueError):
            parse_weight(token)

    def test_values_against_brute(self):
        for x in range(1, 60):
            divs = [d for d in range(1, x + 1) if x % d == 0]
            assert weight_value(WeightFunctionSpec("power", t=3), x) == x**3
            assert weight_value(WeightFunctionSpec("phi"), x) == sum(
                1 for j in range(1, x + 1) if math.gcd(j, x) == 1
            )
            assert weight_value(WeightFunctionSpec("tau"), x) == len(divs)
            assert weight_value(WeightFunctionSpec("sigma"), x) == sum(divs)

    def test_table_weight(self):
        spec = WeightFunctionSpec("table", table=((1, 10), (4, 40)))
        assert weight_value(spec, 4) == 40
        with pytest.raises(ValueError):
            weight_value(spec, 2)

    def test_labels(self):
        assert WeightFunctionSpec("power", t=2).label == "power(2)"
        assert WeightFunctionSpec("sigma").label == "sigma"

    def test_rejects_nonpositive_argument(self):
        with pytest.raises(ValueError):
            weight_value(WeightFunctionSpec("phi"), 0)


class TestPowerWeight:
    def test_classical_pinned_point(self):
        out = check_alkan_classical(2, 1)
        assert out.lhs == Fraction(1, 4)
        assert out.rhs == Fraction(1, 4)
        assert out.passed and out.classification == "verified"

    def test_generalized_pinned_point(self):
        out = check_alkan_generalized(2, 2, 2)
        assert out.lhs == out.rhs == Fraction(17, 32)
        assert out.passed

    @given(st.integers(min_value=1, max_value=40), st.integers(min_value=1, max_value=5))
    def test_holds_on_grid(self, k, r):
        assert check_alkan_classical(k, r).passed

    @given(st.integers(min_value=1, max_value=40), st.integers(min_value=1, max_value=5))
    def test_s1_reduces_to_classical(self, k, r):
        a = check_alkan_generalized(k, 1, r)
        b = check_alkan_classical(k, r)
        assert a.lhs == b.lhs and a.rhs == b.rhs

    def test_cap_refusal(self):
        with pytest.raises(ResourceLimitError):
            check_alkan_generalized(400, 2, 1, cap=100_000)

    def test_rejects_r0(self):
        with pytest.raises(ValueError):
            check_alkan_classical(5, 0)


class TestLogWeight:
    def test_s1_exact_small(self):
        out = check_log_weight(2, 1)
        assert out.passed
        assert out.lhs == LogLinear({2: Fraction(1, 2)})

    @given(st.integers(min_value=1, max_value=80))
    def test_s1_always_exact(self, k):
        out = check_log_weight(k, 1)
        assert out.passed and out.classification == "verified"

    def test_s2_finding_at_k4(self):
        out = check_log_weight(4, 2)
        assert not out.passed
        assert out.classification == "finding-mismatch"
        assert out.lhs == LogLinear({2: -2})
        assert out.rhs == LogLinear({2: 2})
        assert is_finding(out)

    def test_s2_sporadic_exact_point(self):
        # every mu-surviving divisor d of 48 has d^2 > 48, so the defect
        # collapses to 48 * Lambda(48) = 0: both sides vanish identically
        out = check_log_weight(48, 2)
        assert out.passed
        assert out.lhs.is_zero and out.rhs.is_zero

    def test_findings_are_not_failures(self):
        report = run_suite(SuiteConfig(identities=("log-weight",), k_min=4, k_max=4, s=2))
        assert (report.passed, report.failed, report.findings) == (0, 0, 1)


class TestGcdWeight:
    @given(
        st.integers(min_value=1, max_value=40),
        st.integers(min_value=1, max_value=2),
        st.sampled_from(["power:1", "power:2", "phi", "tau", "sigma", "jordan:2"]),
    )
    def test_holds_on_grid(self, k, s, token):
        if k**s > 1600:
            return
        assert check_gcd_weight(k, s, parse_weight(token)).passed

    def test_pinned_point(self):
        # k=2, s=1, f = identity: f(1) c(1) + f(2) c(0) summed over the period
        out = check_gcd_weight(2, 1, parse_weight("power:1"))
        assert out.lhs == 1 * (-1) + 2 * 1 == 1
        assert out.passed


class TestGammaWeight:
    def test_pinned_k2(self):
        out = check_gamma_weight(2, 1)
        assert abs(out.lhs - (-0.5 * math.log(math.pi))) < 1e-12
        assert out.passed and out.mode == "float"

    def test_rejects_k1(self):
        with pytest.raises(ValueError):
            check_gamma_weight(1, 1)

    @given(st.integers(min_value=2, max_value=40), st.integers(min_value=1, max_value=2))
    def test_holds_on_grid(self, k, s):
        if k**s > 1600:
            return
        out = check_gamma_weight(k, s)
        assert out.passed and out.classification == "numerical-pass"

    def test_tolerance_is_relative(self):
        out = check_gamma_weight(6, 1, tol=1e-30)
        assert not out.passed and out.classification == "finding-mismatch"


class TestGaussProduct:
    def test_pinned_n2(self):
        out = check_gauss_product(2)
        assert abs(out.lhs - 0.5 * math.log(math.pi)) < 1e-12
        assert out.passed

    @given(st.integers(min_value=1, max_value=200))
    def test_holds_on_grid(self, N):
        assert check_gauss_product(N).passed

    def test_domain(self):
        with pytest.raises(ValueError):
            check_gauss_product(0)
        with pytest.raises(ValueError):
            check_gauss_product(501)


class TestBernoulliWeight:
    @given(
        st.integers(min_value=1, max_value=20),
        st.integers(min_value=1, max_value=2),
        st.integers(min_value=0, max_value=8),
    )
    def test_holds_on_grid(self, k, s, m):
        assert check_bernoulli_weight(k, s, m).passed

    def test_m1_is_half_phi_over_k(self):
        for k in range(1, 30):
            out = check_bernoulli_weight(k, 1, 1)
            assert out.rhs == Fraction(-euler_phi(factorize(k)), 2 * k)
            assert out.passed

    def test_m0_is_unit_indicator(self):
        assert check_bernoulli_weight(1, 1, 0).rhs == 1
        assert check_bernoulli_weight(7, 2, 0).rhs == 0


class TestBinomialWeight:
    def test_pinned_small(self):
        assert check_binomial_weight(1, 1).lhs == 2
        assert check_binomial_weight(2, 1).lhs == 0

    @given(st.integers(min_value=1, max_value=64), st.integers(min_value=1, max_value=3))
    def test_holds_below_hard_bound(self, k, s):
        if k**s > 256:
            return
        out = check_binomial_weight(k, s)
        assert out.passed and out.mode == "exact"

    def test_hard_bound(self):
        with pytest.raises(ResourceLimitError):
            check_binomial_weight(17, 2)


class TestMultisection:
    def test_pinned_points(self):
        assert check_multisection(4, 2).lhs == 8
        assert check_multisection(5, 1).lhs == 32
        assert check_multisection(6, 4).lhs == 16

    @given(st.integers(min_value=1, max_value=120))
    def test_holds_on_grid(self, n):
        for r in range(1, min(n, 9) + 1):
            assert check_multisection(n, r).passed

    def test_domain(self):
        with pytest.raises(ValueError):
            check_multisection(4, 5)
        with pytest.raises(ResourceLimitError):
            check_multisection(300, 2)


class TestExpWeight:
    def test_pinned_point(self):
        out = check_exp_weight(4, 1, 2)
        assert out.rhs == 0
        assert abs(out.lhs) < 1e-12

    @given(
        st.integers(min_value=1, max_value=20),
        st.integers(min_value=1, max_value=2),
        st.integers(min_value=0, max_value=30),
    )
    def test_holds_on_grid(self, k, s, n):
        out = check_exp_weight(k, s, n)
        assert out.passed
        assert out.rhs in (0, 1)


class TestMuLogLemma:
    @given(st.integers(min_value=1, max_value=200), st.integers(min_value=1, max_value=4))
    def test_holds_on_grid(self, k, s):
        out = check_mu_log_lemma(k, s)
        assert out.passed and out.classification == "verified"


class TestMultivariate:
    def test_pinned_pair(self):
        out = check_multivariate([2, 3], 1, 1)
        assert out.lhs == out.rhs == Fraction(1, 6)
        assert out.passed

    def test_singleton_matches_univariate(self):
        for k, s, r in [(6, 1, 2), (4, 2, 1), (9, 1, 3)]:
            a = check_multivariate([k], s, r)
            b = check_alkan_generalized(k, s, r)
            assert a.lhs == b.lhs and a.rhs == b.rhs

    @given(
        st.lists(st.integers(min_value=1, max_value=8), min_size=2, max_size=3),
        st.integers(min_value=1, max_value=2),
        st.integers(min_value=1, max_value=3),
    )
    def test_holds_on_grid(self, ks, s, r):
        if reduce_lcm(ks) ** s > 4000:
            return
        assert check_multivariate(ks, s, r).passed

    def test_g_reduces_to_jordan_at_n1(self):
        for k in range(1, 30):
            fac = factorize(k)
            assert g_divisor_sum([k], 1, 1) == jordan_totient(2, fac)
            assert g_divisor_sum([k], 2, 1) == jordan_totient(4, fac)
            assert g_divisor_sum([k], 1, 0) == (1 if k == 1 else 0)

    def test_corollary_constant_is_m0_sum(self):
        # at r = 1 the closed form must coincide with the two-term corollary
        # built from the m = 0 divisor sum; the m = 1 sum breaks it
        ks, s = [2, 3], 1
        out = check_multivariate(ks, s, 1)
        prod_j = jordan_totient(s, factorize(2)) * jordan_totient(s, factorize(3))
        K = 6
        good = Fraction(prod_j, 2 * K) + g_divisor_sum(ks, s, 0) / 2
        bad = Fraction(prod_j, 2 * K) + g_divisor_sum(ks, s, 1) / 2
        assert good == out.rhs == out.lhs == Fraction(1, 6)
        assert bad != out.rhs
        assert g_divisor_sum(ks, s, 1) == 24

    def test_domain(self):
        with pytest.raises(ValueError):
            check_multivariate([1, 2, 3, 4, 5], 1, 1)
        with pytest.raises(ValueError):
            check_multivariate([2, 3], 1, 0)
        with pytest.raises(ValueError):
            g_divisor_sum([], 1, 0)


class TestGMultiplicative:
    def test_pinned(self):
        out = check_g_multiplicative([2, 4], [3, 9], 1, 1)
        assert out.passed

    @given(
        st.lists(st.integers(min_value=1, max_value=9), min_size=1, max_size=3),
        st.integers(min_value=1, max_value=2),
        st.integers(min_value=0, max_value=2),
    )
    def test_coprime_splits(self, ks, s, m):
        prod = 1
        for k in ks:
            prod *= k
        ks2 = [v for v in range(1, 12) if math.gcd(v, prod) == 1][: len(ks)]
        if len(ks2) < len(ks):
            return
        assert check_g_multiplicative(ks, ks2, s, m).passed

    def test_domain(self):
        with pytest.raises(ValueError):
            check_g_multiplicative([2], [4], 1, 0)
        with pytest.raises(ValueError):
            check_g_multiplicative([2], [3, 5], 1, 0)


class TestScalarSums:
    @given(st.integers(min_value=1, max_value=300), st.integers(min_value=0, max_value=8))
    def test_power_sum(self, N, r):
        assert check_power_sum(N, r).passed

    @given(st.integers(min_value=1, max_value=200), st.integers(min_value=0, max_value=5))
    def test_coprime_power_sum(self, n, r):
        assert check_coprime_power_sum(n, r).passed


def reduce_lcm(values):
    out = 1
    for v in values:
        out = math.lcm(out, v)
    return out


class TestSuiteRunner:
    def test_resolve_all(self):
        assert resolve_identities(("all",)) == list(ALL_IDENTITIES)
        assert resolve_identities(("alkan", "alkan")) == ["alkan"]
        with pytest.raises(ValueError):
            resolve_identities(("nonsense",))

    def test_grid_counts(self):
        cfg = SuiteConfig(identities=("alkan",), k_max=10, s_max=2, r_max=3)
        assert len(build_grid(cfg)) == 60
        cfg = SuiteConfig(identities=("log-weight",), k_max=0)
        assert build_grid(cfg) == []

    def test_weight_grid_resolves_s_placeholder(self):
        cfg = SuiteConfig(identities=("gcd-weight",), k_max=3, s_max=2, weights=("power:s",))
        points = build_grid(cfg)
        tokens = {(p[1]["s"], p[1]["weight"]) for p in points}
        assert tokens == {(1, "power:1"), (2, "power:2")}

    def test_small_sweep_all_pass(self):
        report = run_suite(SuiteConfig(identities=("alkan",), k_max=12, s_max=2, r_max=3))
        assert report.failed == 0 and report.findings == 0
        assert report.passed == len(report.results) == 72

    def test_log_weight_sweep_counts_findings(self):
        report = run_suite(SuiteConfig(identities=("log-weight",), k_max=10, s_max=2))
        assert report.passed + report.findings == len(report.results) == 20
        assert report.failed == 0
        # s=2 findings start at k=2: none of 2..10 clears rad(k)^2 < k
        assert report.findings == 9

    def test_empty_report_renders(self):
        report = run_suite(SuiteConfig(identities=("log-weight",), k_max=0))
        text = render_report(report, "human")
        assert "summary pass=0 fail=0 findings=0" in text

    def test_deterministic_bytes_and_jobs(self):
        cfg = SuiteConfig(identities=("multisection", "gauss-product"), n_max=30)
        a = render_report(run_suite(cfg), "json")
        b = render_report(run_suite(cfg), "json")
        cfg2 = SuiteConfig(identities=("multisection", "gauss-product"), n_max=30, jobs=2)
        c = render_report(run_suite(cfg2), "json")
        assert a == b == c

    def test_json_schema(self):
        report = run_suite(SuiteConfig(identities=("power-sum",), n_max=5, r_max=2))
        doc = json.loads(render_report(report, "json"))
        assert set(doc) == {"suite", "results", "summary"}
        assert doc["summary"] == {"pass": 10, "fail": 0, "findings": 0}
        row = doc["results"][0]
        assert set(row) == {
            "identity",
            "params",
            "lhs",
            "rhs",
            "residual",
            "mode",
            "pass",
            "classification",
            "elapsed_ms",
        }
        assert row["elapsed_ms"] == 0

    def test_csv_render(self):
        report = run_suite(SuiteConfig(identities=("power-sum",), n_max=3, r_max=1))
        text = render_report(report, "csv")
        lines = text.splitlines()
        assert lines[0] == "identity,params,lhs,rhs,residual,mode,pass,classification,elapsed_ms"
        assert len(lines) == 4
        assert all(line.startswith("power-sum") for line in lines[1:])

    def test_render_rejects_unknown_format(self):
        report = run_suite(SuiteConfig(identities=("power-sum",), n_max=1, r_max=1))
        with pytest.raises(ValueError):
            render_report(report, "xml")

    def test_is_finding_scope(self):
        bad = CheckResult("alkan", {"k": 3, "s": 2, "r": 1}, 0, 1, 1.0, "exact", False, "finding-mismatch")
        assert not is_finding(bad)
        log_bad = CheckResult("log-weight", {"k": 4, "s": 2}, 0, 1, 1.0, "exact", False, "finding-mismatch")
        assert is_finding(log_bad)
        log_s1 = CheckResult("log-weight", {"k": 4, "s": 1}, 0, 1, 1.0, "exact", False, "finding-mismatch")
        assert not is_finding(log_s1)

    def test_g_multiplicative_grid_respects_seed(self):
        cfg = SuiteConfig(identities=("g-multiplicative",), tuples=10, seed=5)
        assert build_grid(cfg) == build_grid(cfg)
        other = SuiteConfig(identities=("g-multiplicative",), tuples=10, seed=6)
        assert build_grid(cfg) != build_grid(other)
        report = run_suite(cfg)
        assert report.passed == 10
