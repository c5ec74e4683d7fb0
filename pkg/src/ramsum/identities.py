"""Identity checkers: weighted averages of generalized Ramanujan sums.

Each checker computes one left-hand side by literal summation over j, using
the csum tables, and one right-hand side from the matching closed form, so
the two sides never share a derivation.  Exact checkers compare canonical
Rational or LogLinear values; floating checkers carry explicit tolerances.
The suite runner sweeps parameter grids, optionally in parallel, and renders
byte-deterministic reports.
"""

from __future__ import annotations

import json
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations_with_replacement, product

import numpy as np

from .arith import divisors, euler_phi, factorize, jordan_totient, moebius, tau_sigma, von_mangoldt
from .csum import DEFAULT_CAP, _block_fsum, _trig_table, csum_moebius, csum_table, theta
from .errors import InternalConsistencyError, ResourceLimitError
from .exactnum import bernoulli_number, binomial, coprime_power_sum, power_sum, rat_str
from .logspace import TWO_PI, LogLinear, float_value, log_factorial, mu_log_lemma_sides

DEFAULT_SWEEP_CAP = 100_000
DEFAULT_FLOAT_TOL = 1e-8
GAUSS_TOL = 1e-9
COSINE_TOL = 1e-9


@dataclass(frozen=True)
class WeightFunctionSpec:
    """Arithmetic weight f fed the s-power gcd value: power(t) is x^t,
    jordan(t) is J_t, table is an explicit (x, f(x)) lookup."""

    kind: str
    t: int | None = None
    table: tuple[tuple[int, int], ...] | None = None

    @property
    def label(self) -> str:
        if self.kind in ("power", "jordan"):
            return f"{self.kind}({self.t})"
        return self.kind


def weight_value(spec: WeightFunctionSpec, x: int) -> int:
    if x < 1:
        raise ValueError("weights are evaluated at positive integers")
    if spec.kind == "power":
        return x**spec.t
    if spec.kind == "phi":
        return euler_phi(factorize(x))
    if spec.kind == "jordan":
        return jordan_totient(spec.t, factorize(x))
    if spec.kind == "tau":
        return tau_sigma(factorize(x))[0]
    if spec.kind == "sigma":
        return tau_sigma(factorize(x))[1]
    if spec.kind == "table":
        for key, val in spec.table or ():
            if key == x:
                return val
        raise ValueError(f"weight table has no entry for {x}")
    raise ValueError(f"unknown weight kind {spec.kind!r}")


def parse_weight(token: str) -> WeightFunctionSpec:
    """Parse CLI weight tokens: power:T, jordan:T, phi, tau, sigma."""
    name, _, arg = token.partition(":")
    if name in ("power", "jordan"):
        if not arg.lstrip("-").isdigit():
            raise ValueError(f"weight {name!r} needs an integer parameter, got {token!r}")
        t = int(arg)
        if t < 0:
            raise ValueError(f"weight parameter must be nonnegative in {token!r}")
        return WeightFunctionSpec(name, t=t)
    if name in ("phi", "tau", "sigma") and not arg:
        return WeightFunctionSpec(name)
    raise ValueError(f"unknown weight token {token!r}")


@dataclass
class CheckResult:
    """Outcome of one identity check at one parameter point."""

    identity: str
    params: dict
    lhs: object
    rhs: object
    residual: float
    mode: str
    passed: bool
    classification: str


def _result(identity: str, params: dict, lhs, rhs, residual: float, mode: str, passed: bool) -> CheckResult:
    if passed:
        classification = "verified" if mode == "exact" else "numerical-pass"
    else:
        classification = "finding-mismatch"
    return CheckResult(identity, params, lhs, rhs, float(residual), mode, bool(passed), classification)


def _check_ks(k: int, s: int, cap: int, what: str) -> int:
    if k < 1 or s < 1:
        raise ValueError("k and s must be positive")
    K = k**s
    if K > cap:
        raise ResourceLimitError(f"k^s = {K} exceeds cap {cap} for {what}")
    return K


# ---------------------------------------------------------------- weighted averages


def check_alkan_classical(k: int, r: int, cap: int = DEFAULT_SWEEP_CAP) -> CheckResult:
    """(1/k^(r+1)) sum_{j<=k} j^r c_k(j) against the totient-Bernoulli form."""
    if r < 1:
        raise ValueError("r must be positive")
    _check_ks(k, 1, cap, "the classical power-weight sum")
    vals = csum_table(k, 1, cap).values
    total = sum(j**r * vals[j] for j in range(1, k) if vals[j]) + k**r * vals[0]
    lhs = Fraction(total, k ** (r + 1))
    fac = factorize(k)
    rhs = Fraction(euler_phi(fac), 2 * k)
    acc = Fraction(0)
    for m in range(r // 2 + 1):
        acc += binomial(r + 1, 2 * m) * bernoulli_number(2 * m) * Fraction(jordan_totient(2 * m, fac), k ** (2 * m))
    rhs += acc / (r + 1)
    return _result("alkan-classical", {"k": k, "r": r}, lhs, rhs, abs(float(lhs - rhs)), "exact", lhs == rhs)


def check_alkan_generalized(k: int, s: int, r: int, cap: int = DEFAULT_SWEEP_CAP) -> CheckResult:
    """(1/k^(s(r+1))) sum_{j<=k^s} j^r c_k^(s)(j) against the J_s closed form."""
    if r < 1:
        raise ValueError("r must be positive")
    K = _check_ks(k, s, cap, "the generalized power-weight sum")
    vals = csum_table(k, s, cap).values
    total = sum(j**r * vals[j] for j in range(1, K) if vals[j]) + K**r * vals[0]
    lhs = Fraction(total, K ** (r + 1))
    fac = factorize(k)
    rhs = Fraction(jordan_totient(s, fac), 2 * k**s)
    acc = Fraction(0)
    for m in range(r // 2 + 1):
        acc += binomial(r + 1, 2 * m) * bernoulli_number(2 * m) * Fraction(
            jordan_totient(2 * m * s, fac), k ** (2 * m * s)
        )
    rhs += acc / (r + 1)
    return _result("alkan", {"k": k, "r": r, "s": s}, lhs, rhs, abs(float(lhs - rhs)), "exact", lhs == rhs)


def check_log_weight(k: int, s: int) -> CheckResult:
    """(1/k) sum_{j<=k} log(j) c_k^(s)(j) against s*Lambda(k) plus the
    mu-weighted log-factorial divisor sum, both as exact log vectors.

    At s = 1 the two sides agree identically.  For s >= 2 the closed form's
    counting step assumes d^s | k for every divisor d, which fails at least
    at d = k, so a nonzero residual is recorded as a finding rather than a
    hard failure.
    """
    if k < 1 or s < 1:
        raise ValueError("k and s must be positive")
    num: dict[int, int] = {}
    for j in range(2, k + 1):
        c = csum_moebius(k, j, s)
        if not c:
            continue
        for p, e in factorize(j).factors:
            num[p] = num.get(p, 0) + c * e
    lhs = LogLinear({p: Fraction(v, k) for p, v in num.items()})
    fac = factorize(k)
    rhs = s * von_mangoldt(fac)
    for d in divisors(fac):
        arg = k // d**s
        mu = moebius(factorize(k // d))
        if mu and arg >= 2:
            rhs = rhs + Fraction(d**s, k) * mu * log_factorial(arg)
    diff = lhs - rhs
    return _result("log-weight", {"k": k, "s": s}, lhs, rhs, abs(float_value(diff)), "exact", diff.is_zero)


def check_gcd_weight(k: int, s: int, f: WeightFunctionSpec, cap: int = DEFAULT_SWEEP_CAP) -> CheckResult:
    """sum_{j<=k^s} f(gengcd^s) c_k^(s)(j) against J_s(k) [(f o N^s) * (mu o N^s)](k)."""
    K = _check_ks(k, s, cap, "the gcd-weight sum")
    vals = np.asarray(csum_table(k, s, cap).values, dtype=np.int64)
    fac = factorize(k)
    divs = divisors(fac)
    gg = np.full(K, 1, dtype=np.int64)
    for d in divs[1:]:
        gg[:: d**s] = d
    lhs = 0
    for g in divs:
        fg = weight_value(f, g**s)
        lhs += fg * int(vals[gg == g].sum())
    rhs = jordan_totient(s, fac) * sum(
        weight_value(f, d**s) * moebius(factorize(k // d)) for d in divs
    )
    params = {"k": k, "s": s, "weight": f.label}
    return _result("gcd-weight", params, lhs, rhs, abs(float(lhs - rhs)), "exact", lhs == rhs)


def check_gamma_weight(k: int, s: int, cap: int = DEFAULT_SWEEP_CAP, tol: float | None = None) -> CheckResult:
    """(1/J_s(k)) sum_{j<=k^s} logGamma(j/k^s) c_k^(s)(j) against the prime form.

    The right side is built twice, once as an exact log vector and once in
    plain floating point; the two renderings must agree to 1e-12 before the
    comparison proceeds.
    """
    if k < 2:
        raise ValueError("k must be at least 2, the k = 1 case degenerates")
    K = _check_ks(k, s, cap, "the log-Gamma sum")
    tol = DEFAULT_FLOAT_TOL if tol is None else tol
    vals = csum_table(k, s, cap).values
    terms = [math.lgamma(j / K) * vals[j] for j in range(1, K) if vals[j]]
    fac = factorize(k)
    lhs = math.fsum(terms) / jordan_totient(s, fac)
    coeffs: dict = {p: Fraction(s, 2 * (p**s - 1)) for p in fac.primes()}
    coeffs[TWO_PI] = Fraction(-1, 2)
    rhs = float_value(LogLinear(coeffs))
    direct = math.fsum(0.5 * s * math.log(p) / (p**s - 1) for p in fac.primes()) - 0.5 * math.log(math.tau)
    if abs(rhs - direct) > 1e-12 * max(1.0, abs(rhs)):
        raise InternalConsistencyError(f"two renderings of the Gamma closed form disagree at k={k}, s={s}")
    residual = abs(lhs - rhs)
    return _result("gamma-weight", {"k": k, "s": s}, lhs, rhs, residual, "float", residual <= tol * max(1.0, abs(rhs)))


def check_gauss_product(N: int, tol: float | None = None) -> CheckResult:
    """sum_{j<=N} logGamma(j/N) against ((N-1)/2) log(2 pi) - (1/2) log N."""
    if not 1 <= N <= 500:
        raise ValueError("N must be in [1, 500]")
    tol = GAUSS_TOL if tol is None else tol
    lhs = math.fsum(math.lgamma(j / N) for j in range(1, N + 1))
    rhs = (N - 1) / 2 * math.log(math.tau) - 0.5 * math.log(N)
    residual = abs(lhs - rhs)
    return _result("gauss-product", {"N": N}, lhs, rhs, residual, "float", residual <= tol * N)


def check_bernoulli_weight(k: int, s: int, m: int, cap: int = DEFAULT_SWEEP_CAP) -> CheckResult:
    """(1/k^s) sum_{j<k^s} B_m(j/k^s) c_k^(s)(j) against (B_m/k^(sm)) J_(sm)(k).

    B_m(j/K) is evaluated through an integer Horner pass: the polynomial is
    rescaled by the common denominator of its coefficients so the j loop
    stays in plain integer arithmetic.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    K = _check_ks(k, s, cap, "the Bernoulli-weight sum")
    vals = csum_table(k, s, cap).values
    coeff = [binomial(m, i) * bernoulli_number(i) * Fraction(K) ** i for i in range(m + 1)]
    den = reduce(math.lcm, (c.denominator for c in coeff), 1)
    ints = [int(c * den) for c in coeff]
    total = 0
    for j in range(K):
        c = vals[j]
        if not c:
            continue
        acc = 0
        for a in ints:
            acc = acc * j + a
        total += acc * c
    lhs = Fraction(total, den * K**m * K)
    fac = factorize(k)
    rhs = bernoulli_number(m) * Fraction(jordan_totient(s * m, fac), k ** (s * m))
    params = {"k": k, "m": m, "s": s}
    return _result("bernoulli-weight", params, lhs, rhs, abs(float(lhs - rhs)), "exact", lhs == rhs)


def check_binomial_weight(k: int, s: int, tol: float | None = None) -> CheckResult:
    """sum_{j=0..k^s} C(k^s, j) c_k^(s)(j), exactly via series multisection and
    in floating point via the signed cosine-power form."""
    if k < 1 or s < 1:
        raise ValueError("k and s must be positive")
    K = k**s
    if K > 256:
        raise ResourceLimitError(f"k^s = {K} exceeds 256, binomials grow as 2^(k^s)")
    tol = COSINE_TOL if tol is None else tol
    vals = csum_table(k, s, DEFAULT_CAP).values
    lhs = sum(binomial(K, j) * vals[j % K] for j in range(K + 1))
    fac = factorize(k)
    rhs_exact = 0
    outer = []
    for d in divisors(fac):
        mu = moebius(factorize(k // d))
        if not mu:
            continue
        ds = d**s
        rhs_exact += mu * ds * sum(binomial(K, i * ds) for i in range(K // ds + 1))
        inner = []
        for l in range(1, ds + 1):
            sign = -1.0 if (l * (K // ds)) % 2 else 1.0
            inner.append(sign * math.cos(math.pi * l / ds) ** K)
        outer.append(mu * math.fsum(inner))
    rhs_float = 2.0**K * math.fsum(outer)
    rel = abs(rhs_float - float(lhs)) / max(1.0, abs(float(lhs)))
    residual = max(rel, float(abs(lhs - rhs_exact)))
    passed = lhs == rhs_exact and rel <= tol
    return _result("binomial-weight", {"k": k, "s": s}, lhs, rhs_exact, residual, "exact", passed)


def check_multisection(n: int, r: int, tol: float | None = None) -> CheckResult:
    """sum_m C(n, mr) against (2^n/r) sum_l cos^n(l pi/r) cos(n l pi/r)."""
    if not 1 <= r <= n:
        raise ValueError("need 1 <= r <= n")
    if n > 256:
        raise ResourceLimitError(f"n = {n} exceeds 256 for the multisection check")
    tol = COSINE_TOL if tol is None else tol
    lhs = sum(binomial(n, m * r) for m in range(n // r + 1))
    terms = []
    for l in range(1, r + 1):
        # reduce n*l mod 2r before touching pi so large arguments stay exact
        a = (n * l) % (2 * r)
        terms.append(math.cos(math.pi * l / r) ** n * math.cos(math.pi * a / r))
    rhs = 2.0**n / r * math.fsum(terms)
    residual = abs(rhs - float(lhs)) / max(1.0, float(lhs))
    return _result("multisection", {"n": n, "r": r}, lhs, rhs, residual, "float", residual <= tol)


def check_exp_weight(k: int, s: int, n: int, cap: int = DEFAULT_SWEEP_CAP, tol: float | None = None) -> CheckResult:
    """(1/k^s) sum_j e(jn/k^s) c_k^(s)(j) against the indicator theta_k^(s)(n)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    K = _check_ks(k, s, cap, "the exponential-weight sum")
    tol = COSINE_TOL if tol is None else tol
    vals = np.asarray(csum_table(k, s, cap).values, dtype=np.float64)
    cos_t, sin_t = _trig_table(K)
    idx = (n % K) * np.arange(K, dtype=np.int64) % K
    lhs = complex(_block_fsum(cos_t[idx] * vals) / K, _block_fsum(sin_t[idx] * vals) / K)
    rhs = theta(k, n, s)
    residual = max(abs(lhs.real - rhs), abs(lhs.imag))
    params = {"k": k, "n": n, "s": s}
    return _result("exp-weight", params, lhs, rhs, residual, "float", residual <= tol)


def g_divisor_sum(ks, s: int, m: int) -> Fraction:
    """g_m^(s)(k_1..k_n): the signed divisor-tuple sum with lcm^((1-2m)s)
    in the denominator.  Reduces to J_(2ms) at n = 1."""
    if not ks or any(k < 1 for k in ks):
        raise ValueError("ks must be positive integers")
    if s < 1 or m < 0:
        raise ValueError("need s >= 1 and m >= 0")
    per_axis = []
    for k in ks:
        fac = factorize(k)
        per_axis.append([(d, d**s * moebius(factorize(k // d))) for d in divisors(fac)])
    e = (1 - 2 * m) * s
    total = Fraction(0)
    for combo in product(*per_axis):
        num = 1
        for _, w in combo:
            num *= w
        if not num:
            continue
        ell = reduce(math.lcm, (d for d, _ in combo), 1)
        total += Fraction(num, ell**e) if e >= 0 else num * Fraction(ell) ** (-e)
    return total


def check_multivariate(ks, s: int, r: int, cap: int = DEFAULT_SWEEP_CAP) -> CheckResult:
    """Multivariate power-weight average against the g_m Bernoulli form.

    The left side is (1/k^(s(r+1))) sum_{j<=k^s} j^r prod_i c_(k_i)^(s)(j)
    with k = lcm(k_i), the unique reading that collapses to the univariate
    identity at n = 1.  At r = 1 the corollary form (first term over 2k^s,
    E the m = 0 divisor sum) is required to match as well.
    """
    ks = list(ks)
    if not 1 <= len(ks) <= 4:
        raise ValueError("between 1 and 4 moduli")
    if r < 1:
        raise ValueError("r must be positive")
    k = reduce(math.lcm, ks, 1)
    K = _check_ks(k, s, cap, "the multivariate power-weight sum")
    tables = [csum_table(ki, s, cap).values for ki in ks]
    bound = 1
    for t in tables:
        bound *= max(max(t), -min(t), 1)
    if bound < 2**62:
        arr = np.ones(K, dtype=np.int64)
        for ki, t in zip(ks, tables):
            arr *= np.tile(np.asarray(t, dtype=np.int64), K // ki**s)
        prods = arr.tolist()
    else:
        periods = [ki**s for ki in ks]
        prods = [reduce(lambda a, b: a * b, (t[j % P] for t, P in zip(tables, periods)), 1) for j in range(K)]
    total = sum(j**r * prods[j] for j in range(1, K) if prods[j]) + K**r * prods[0]
    lhs = Fraction(total, K ** (r + 1))
    prod_j = 1
    for ki in ks:
        prod_j *= jordan_totient(s, factorize(ki))
    rhs = Fraction(prod_j, 2 * K)
    acc = Fraction(0)
    for m in range(r // 2 + 1):
        acc += binomial(r + 1, 2 * m) * bernoulli_number(2 * m) * g_divisor_sum(ks, s, m) / Fraction(k) ** (2 * m * s)
    rhs += acc / (r + 1)
    passed = lhs == rhs
    if r == 1:
        corollary = Fraction(prod_j, 2 * K) + g_divisor_sum(ks, s, 0) / 2
        passed = passed and corollary == rhs
    params = {"ks": ks, "r": r, "s": s}
    return _result("multivariate", params, lhs, rhs, abs(float(lhs - rhs)), "exact", passed)


def check_g_multiplicative(ks, ks2, s: int, m: int) -> CheckResult:
    """g_m^(s) is multiplicative across componentwise-coprime tuples."""
    ks, ks2 = list(ks), list(ks2)
    if len(ks) != len(ks2):
        raise ValueError("tuples must have equal length")
    prod_a = reduce(lambda a, b: a * b, ks, 1)
    prod_b = reduce(lambda a, b: a * b, ks2, 1)
    if math.gcd(prod_a, prod_b) != 1:
        raise ValueError("tuples must be coprime")
    lhs = g_divisor_sum([a * b for a, b in zip(ks, ks2)], s, m)
    rhs = g_divisor_sum(ks, s, m) * g_divisor_sum(ks2, s, m)
    params = {"ks": ks, "ks2": ks2, "m": m, "s": s}
    return _result("g-multiplicative", params, lhs, rhs, abs(float(lhs - rhs)), "exact", lhs == rhs)


def check_power_sum(N: int, r: int) -> CheckResult:
    """Bernoulli closed form of sum j^r against direct summation."""
    if N < 1 or r < 0:
        raise ValueError("need N >= 1 and r >= 0")
    lhs = power_sum(N, r)
    rhs = sum(j**r for j in range(1, N + 1))
    return _result("power-sum", {"N": N, "r": r}, lhs, rhs, abs(float(lhs - rhs)), "exact", lhs == rhs)


def check_coprime_power_sum(n: int, r: int) -> CheckResult:
    """Coprime power-sum closed form against direct gcd-filtered summation."""
    if n < 1 or r < 0:
        raise ValueError("need n >= 1 and r >= 0")
    lhs = coprime_power_sum(n, r)
    rhs = sum(j**r for j in range(1, n + 1) if math.gcd(j, n) == 1)
    return _result("coprime-power-sum", {"n": n, "r": r}, lhs, rhs, abs(float(lhs - rhs)), "exact", lhs == rhs)


def check_mu_log_lemma(k: int, s: int) -> CheckResult:
    """Both sides of the mu(d) log(d)/d^s lemma as exact log vectors."""
    lhs, rhs = mu_log_lemma_sides(k, s)
    diff = lhs - rhs
    return _result("mu-log-lemma", {"k": k, "s": s}, lhs, rhs, abs(float_value(diff)), "exact", diff.is_zero)


# ---------------------------------------------------------------- suite runner

ALL_IDENTITIES = (
    "alkan",
    "alkan-classical",
    "log-weight",
    "gcd-weight",
    "gamma-weight",
    "gauss-product",
    "bernoulli-weight",
    "binomial-weight",
    "multisection",
    "exp-weight",
    "mu-log-lemma",
    "multivariate",
    "g-multiplicative",
    "power-sum",
    "coprime-power-sum",
)

DEFAULT_WEIGHTS = ("power:s", "phi", "jordan:2", "tau", "sigma")


@dataclass
class SuiteConfig:
    """Parameter grid and execution options for one verification run."""

    identities: tuple = ("all",)
    k_min: int = 1
    k_max: int | None = None
    s: int | None = None
    s_max: int | None = None
    r_max: int | None = None
    m_max: int | None = None
    n_max: int | None = None
    ks: tuple | None = None
    weights: tuple | None = None
    tuples: int = 20
    seed: int = 91
    cap: int = DEFAULT_SWEEP_CAP
    tolerance: float | None = None
    jobs: int = 1
    strict_findings: bool = False


@dataclass
class IdentityReport:
    suite: dict
    results: list
    passed: int
    failed: int
    findings: int


def _svals(cfg: SuiteConfig, default: int) -> list[int]:
    if cfg.s is not None:
        return [cfg.s]
    return list(range(1, (cfg.s_max if cfg.s_max is not None else default) + 1))


def _kvals(cfg: SuiteConfig, default: int, lo: int = 1):
    return range(max(lo, cfg.k_min), (cfg.k_max if cfg.k_max is not None else default) + 1)


def _rvals(cfg: SuiteConfig, default: int) -> range:
    return range(1, (cfg.r_max if cfg.r_max is not None else default) + 1)


def _nmax(cfg: SuiteConfig, default: int) -> int:
    return cfg.n_max if cfg.n_max is not None else default


def _grid_alkan_classical(cfg):
    return [{"k": k, "r": r} for k in _kvals(cfg, 30) if k <= cfg.cap for r in _rvals(cfg, 4)]


def _grid_alkan(cfg):
    return [
        {"k": k, "r": r, "s": s}
        for k in _kvals(cfg, 20)
        for s in _svals(cfg, 2)
        if k**s <= cfg.cap
        for r in _rvals(cfg, 4)
    ]


def _grid_log_weight(cfg):
    return [{"k": k, "s": s} for k in _kvals(cfg, 50) for s in _svals(cfg, 2)]


def _grid_gcd_weight(cfg):
    weights = cfg.weights if cfg.weights is not None else DEFAULT_WEIGHTS
    out = []
    for k in _kvals(cfg, 25):
        for s in _svals(cfg, 2):
            if k**s > cfg.cap:
                continue
            for token in weights:
                resolved = token.replace(":s", f":{s}") if token.endswith(":s") else token
                parse_weight(resolved)
                out.append({"k": k, "s": s, "weight": resolved})
    return out


def _grid_gamma_weight(cfg):
    return [
        {"k": k, "s": s}
        for k in _kvals(cfg, 30, lo=2)
        for s in _svals(cfg, 2)
        if k**s <= cfg.cap
    ]


def _grid_gauss_product(cfg):
    return [{"N": n} for n in range(1, min(_nmax(cfg, 100), 500) + 1)]


def _grid_bernoulli_weight(cfg):
    mmax = cfg.m_max if cfg.m_max is not None else 6
    return [
        {"k": k, "m": m, "s": s}
        for k in _kvals(cfg, 12)
        for s in _svals(cfg, 2)
        if k**s <= cfg.cap
        for m in range(mmax + 1)
    ]


def _grid_binomial_weight(cfg):
    # default sweep stays at k^s <= 64; explicit ranges may reach the hard 256
    hard = 64 if cfg.k_max is None and cfg.s is None and cfg.s_max is None else 256
    bound = min(hard, cfg.cap)
    svals = [cfg.s] if cfg.s is not None else list(range(1, (cfg.s_max or 6) + 1))
    return [{"k": k, "s": s} for k in _kvals(cfg, 64) for s in svals if k**s <= bound]


def _grid_multisection(cfg):
    nmax = min(_nmax(cfg, 40), 256)
    rmax = cfg.r_max if cfg.r_max is not None else 8
    return [{"n": n, "r": r} for n in range(1, nmax + 1) for r in range(1, min(n, rmax) + 1)]


def _grid_exp_weight(cfg):
    out = []
    for k in _kvals(cfg, 12):
        for s in _svals(cfg, 2):
            K = k**s
            if K > cfg.cap:
                continue
            for n in range(min(K, _nmax(cfg, 25)) + 1):
                out.append({"k": k, "n": n, "s": s})
    return out


def _grid_mu_log_lemma(cfg):
    return [{"k": k, "s": s} for k in _kvals(cfg, 100) for s in _svals(cfg, 4)]


DEFAULT_TUPLES = tuple(combinations_with_replacement(range(1, 9), 2)) + tuple(
    combinations_with_replacement(range(1, 6), 3)
)


def _grid_multivariate(cfg):
    tuples = cfg.ks if cfg.ks is not None else DEFAULT_TUPLES
    out = []
    for ks in tuples:
        k = reduce(math.lcm, ks, 1)
        for s in _svals(cfg, 2):
            if k**s > cfg.cap:
                continue
            for r in _rvals(cfg, 3):
                out.append({"ks": list(ks), "r": r, "s": s})
    return out


def _grid_g_multiplicative(cfg):
    rng = random.Random(cfg.seed)
    svals = _svals(cfg, 2)
    mmax = cfg.m_max if cfg.m_max is not None else 2
    out = []
    for _ in range(cfg.tuples):
        n = rng.randint(1, 3)
        a = [rng.randint(1, 10) for _ in range(n)]
        prod_a = reduce(lambda x, y: x * y, a, 1)
        pool = [v for v in range(1, 13) if math.gcd(v, prod_a) == 1]
        b = [rng.choice(pool) for _ in range(n)]
        out.append({"ks": a, "ks2": b, "m": rng.randint(0, mmax), "s": rng.choice(svals)})
    return out


def _grid_power_sum(cfg):
    rmax = cfg.r_max if cfg.r_max is not None else 6
    return [{"N": n, "r": r} for n in range(1, _nmax(cfg, 200) + 1) for r in range(1, rmax + 1)]


def _grid_coprime_power_sum(cfg):
    rmax = cfg.r_max if cfg.r_max is not None else 4
    return [{"n": n, "r": r} for n in range(1, _nmax(cfg, 100) + 1) for r in range(1, rmax + 1)]


_GRIDS = {
    "alkan": _grid_alkan,
    "alkan-classical": _grid_alkan_classical,
    "log-weight": _grid_log_weight,
    "gcd-weight": _grid_gcd_weight,
    "gamma-weight": _grid_gamma_weight,
    "gauss-product": _grid_gauss_product,
    "bernoulli-weight": _grid_bernoulli_weight,
    "binomial-weight": _grid_binomial_weight,
    "multisection": _grid_multisection,
    "exp-weight": _grid_exp_weight,
    "mu-log-lemma": _grid_mu_log_lemma,
    "multivariate": _grid_multivariate,
    "g-multiplicative": _grid_g_multiplicative,
    "power-sum": _grid_power_sum,
    "coprime-power-sum": _grid_coprime_power_sum,
}

_DISPATCH = {
    "alkan": lambda p, cap, tol: check_alkan_generalized(p["k"], p["s"], p["r"], cap=cap),
    "alkan-classical": lambda p, cap, tol: check_alkan_classical(p["k"], p["r"], cap=cap),
    "log-weight": lambda p, cap, tol: check_log_weight(p["k"], p["s"]),
    "gcd-weight": lambda p, cap, tol: check_gcd_weight(p["k"], p["s"], parse_weight(p["weight"]), cap=cap),
    "gamma-weight": lambda p, cap, tol: check_gamma_weight(p["k"], p["s"], cap=cap, tol=tol),
    "gauss-product": lambda p, cap, tol: check_gauss_product(p["N"], tol=tol),
    "bernoulli-weight": lambda p, cap, tol: check_bernoulli_weight(p["k"], p["s"], p["m"], cap=cap),
    "binomial-weight": lambda p, cap, tol: check_binomial_weight(p["k"], p["s"], tol=tol),
    "multisection": lambda p, cap, tol: check_multisection(p["n"], p["r"], tol=tol),
    "exp-weight": lambda p, cap, tol: check_exp_weight(p["k"], p["s"], p["n"], cap=cap, tol=tol),
    "mu-log-lemma": lambda p, cap, tol: check_mu_log_lemma(p["k"], p["s"]),
    "multivariate": lambda p, cap, tol: check_multivariate(p["ks"], p["s"], p["r"], cap=cap),
    "g-multiplicative": lambda p, cap, tol: check_g_multiplicative(p["ks"], p["ks2"], p["s"], p["m"]),
    "power-sum": lambda p, cap, tol: check_power_sum(p["N"], p["r"]),
    "coprime-power-sum": lambda p, cap, tol: check_coprime_power_sum(p["n"], p["r"]),
}


def resolve_identities(names) -> list[str]:
    out = []
    for name in names:
        if name == "all":
            out.extend(ALL_IDENTITIES)
        elif name in _GRIDS:
            out.append(name)
        else:
            raise ValueError(f"unknown identity id {name!r}")
    seen = set()
    return [n for n in out if not (n in seen or seen.add(n))]


def build_grid(cfg: SuiteConfig) -> list:
    """Expand the config into (identity, params, cap, tol) work items.

    Points whose k^s would exceed the sweep cap are left out of default
    grids; explicitly requested single points past the cap raise instead.
    """
    points = []
    for identity in resolve_identities(cfg.identities):
        for params in _GRIDS[identity](cfg):
            points.append((identity, params, cfg.cap, cfg.tolerance))
    return points


def _run_point(point) -> CheckResult:
    identity, params, cap, tol = point
    return _DISPATCH[identity](params, cap, tol)


def is_finding(result: CheckResult) -> bool:
    """Non-fatal expected mismatch: the log-weight family at s >= 2."""
    return (not result.passed) and result.identity == "log-weight" and result.params.get("s", 1) >= 2


def run_suite(cfg: SuiteConfig) -> IdentityReport:
    """Run every grid point and aggregate a canonical, order-independent report."""
    points = build_grid(cfg)
    if cfg.jobs > 1 and len(points) > 1:
        chunk = max(1, len(points) // (cfg.jobs * 8))
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_run_point, points, chunksize=chunk))
    else:
        results = [_run_point(pt) for pt in points]
    results.sort(key=lambda r: r.identity)
    suite = asdict(cfg)
    suite.pop("jobs")
    suite["identities"] = resolve_identities(cfg.identities)
    passed = sum(r.passed for r in results)
    findings = sum(1 for r in results if is_finding(r))
    failed = len(results) - passed - findings
    return IdentityReport(suite, results, passed, failed, findings)


# ---------------------------------------------------------------- rendering


def _render_exact(v) -> object:
    if isinstance(v, (int, Fraction)):
        return rat_str(v)
    if isinstance(v, LogLinear):
        return str(v)
    if isinstance(v, complex):
        return repr(v)
    return v


def _result_row(r: CheckResult) -> dict:
    return {
        "identity": r.identity,
        "params": r.params,
        "lhs": _render_exact(r.lhs),
        "rhs": _render_exact(r.rhs),
        "residual": r.residual,
        "mode": r.mode,
        "pass": r.passed,
        "classification": r.classification,
        "elapsed_ms": 0,
    }


def render_report(report: IdentityReport, fmt: str = "human") -> str:
    """Serialize a report; bytes depend only on the config and the results."""
    summary = {"pass": report.passed, "fail": report.failed, "findings": report.findings}
    if fmt == "json":
        doc = {
            "suite": report.suite,
            "results": [_result_row(r) for r in report.results],
            "summary": summary,
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        import csv as _csv
        import io

        buf = io.StringIO()
        writer = _csv.writer(buf, lineterminator="\n")
        writer.writerow(["identity", "params", "lhs", "rhs", "residual", "mode", "pass", "classification", "elapsed_ms"])
        for r in report.results:
            row = _result_row(r)
            writer.writerow(
                [
                    row["identity"],
                    json.dumps(row["params"], sort_keys=True, separators=(",", ":")),
                    row["lhs"] if isinstance(row["lhs"], str) else repr(row["lhs"]),
                    row["rhs"] if isinstance(row["rhs"], str) else repr(row["rhs"]),
                    repr(row["residual"]),
                    row["mode"],
                    "true" if row["pass"] else "false",
                    row["classification"],
                    "0",
                ]
            )
        return buf.getvalue()
    if fmt == "human":
        rows = []
        for r in report.results:
            row = _result_row(r)
            rows.append(
                (
                    row["identity"],
                    json.dumps(row["params"], sort_keys=True, separators=(",", ":")),
                    row["lhs"] if isinstance(row["lhs"], str) else repr(row["lhs"]),
                    row["rhs"] if isinstance(row["rhs"], str) else repr(row["rhs"]),
                    repr(row["residual"]),
                    row["classification"],
                )
            )
        header = ("identity", "params", "lhs", "rhs", "residual", "classification")
        widths = [max(len(header[i]), *(len(row[i]) for row in rows)) if rows else len(header[i]) for i in range(6)]
        lines = ["  ".join(header[i].ljust(widths[i]) for i in range(6)).rstrip()]
        for row in rows:
            lines.append("  ".join(row[i].ljust(widths[i]) for i in range(6)).rstrip())
        lines.append(f"summary pass={report.passed} fail={report.failed} findings={report.findings}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")
