"""Generalized Ramanujan sums c_k^(s)(j) and their direct evaluation.

Three independent routes are provided.  The Moebius route sums d^s mu(k/d)
over divisors d of the generalized gcd; the Hoelder route uses the closed
form J_s(k) mu(k/e) / J_s(k/e); the direct route adds the k^s-th roots of
unity over the s-coprime residues with compensated floating point.  Exact
routes agree by theorem, so any disagreement raises instead of returning.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .arith import Factorization, divisors, factorize, gen_gcd, jordan_totient, moebius
from .errors import InternalConsistencyError, ResourceLimitError

DEFAULT_CAP = 1_000_000


@dataclass(frozen=True)
class CsumEvaluation:
    """One evaluated sum c_k^(s)(j) tagged with the route that produced it."""

    k: int
    s: int
    j: int
    value: int
    method: str


def _check_args(k: int, s: int) -> None:
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if s < 1:
        raise ValueError(f"s must be positive, got {s}")


@lru_cache(maxsize=64)
def _context(k: int, s: int):
    """Divisor data for (k, s): factorization, mu and J_s tables, and the
    cumulative map val[g] = c_k^(s)(j) for gen_gcd(j, k, s) = g."""
    fac = factorize(k)
    divs = divisors(fac)
    mu = {d: moebius(factorize(k // d)) for d in divs}
    js = {d: jordan_totient(s, factorize(d)) for d in divs}
    val = {}
    for g in divs:
        acc = 0
        for d in divisors(factorize(g)):
            acc += d**s * mu[d]
        val[g] = acc
    return fac, divs, mu, js, val


def csum_moebius(k: int, j: int, s: int = 1) -> int:
    """c_k^(s)(j) via sum of d^s mu(k/d) over d dividing gen_gcd(j, k, s)."""
    _check_args(k, s)
    _, _, _, _, val = _context(k, s)
    return val[gen_gcd(j % k**s, k, s)]


def csum_hoelder(k: int, j: int, s: int = 1) -> int:
    """c_k^(s)(j) via the closed form J_s(k) mu(k/e) / J_s(k/e)."""
    _check_args(k, s)
    _, _, mu, js, _ = _context(k, s)
    e = gen_gcd(j % k**s, k, s)
    m = mu[e]
    if m == 0:
        return 0
    num = js[k] * m
    den = js[k // e]
    if num % den != 0:
        raise InternalConsistencyError(
            f"Hoelder quotient J_{s}({k})*mu/J_{s}({k // e}) not integral for j={j}"
        )
    return num // den


@lru_cache(maxsize=8)
def _trig_table(n: int):
    """cos and sin of 2*pi*t/n for t in range(n), shared across j."""
    t = np.arange(n, dtype=np.float64)
    ang = (2.0 * np.pi / n) * t
    return np.cos(ang), np.sin(ang)


@lru_cache(maxsize=4)
def _direct_context(k: int, s: int):
    """Residues m in [1, k^s] with (m, k^s)_s = 1, as a numpy index array."""
    fac = factorize(k)
    K = k**s
    keep = np.ones(K + 1, dtype=bool)
    keep[0] = False
    for p, _ in fac.factors:
        keep[p**s :: p**s] = False
    m = np.nonzero(keep)[0].astype(np.int64)
    if len(m) != jordan_totient(s, fac):
        raise InternalConsistencyError(f"s-coprime residue count mismatch for k={k}, s={s}")
    return m


def _block_fsum(arr: np.ndarray, block: int = 1024) -> float:
    """Exactly-rounded sum of block partial sums; blocks keep the numpy speed."""
    size = arr.size
    if size == 0:
        return 0.0
    partials = np.add.reduceat(arr, np.arange(0, size, block))
    return math.fsum(partials.tolist())


def csum_direct(k: int, j: int, s: int = 1, cap: int = DEFAULT_CAP) -> complex:
    """c_k^(s)(j) summed term by term over the unit circle.

    Costs J_s(k) table lookups; refuses once k^s exceeds cap rather than
    silently truncating the range.
    """
    _check_args(k, s)
    K = k**s
    if K > cap:
        raise ResourceLimitError(f"k^s = {K} exceeds cap {cap} for direct summation")
    m = _direct_context(k, s)
    cos_t, sin_t = _trig_table(K)
    idx = (j % K) * m % K
    return complex(_block_fsum(cos_t[idx]), _block_fsum(sin_t[idx]))


def csum_eval(k: int, j: int, s: int = 1, method: str = "moebius", cap: int = DEFAULT_CAP) -> CsumEvaluation:
    """Evaluate one sum by the named route; the direct route is rounded to the
    nearest integer and cross-checked against its own residual."""
    if method == "moebius":
        return CsumEvaluation(k, s, j, csum_moebius(k, j, s), method)
    if method == "hoelder":
        return CsumEvaluation(k, s, j, csum_hoelder(k, j, s), method)
    if method == "direct":
        z = csum_direct(k, j, s, cap)
        v = round(z.real)
        residual = max(abs(z.real - v), abs(z.imag))
        if residual >= 0.5:
            raise InternalConsistencyError(
                f"direct sum for (k={k}, j={j}, s={s}) is not near an integer: {z}"
            )
        if residual > 1e-6:
            warnings.warn(
                f"direct sum residual {residual:.3e} for (k={k}, j={j}, s={s})",
                RuntimeWarning,
                stacklevel=2,
            )
        return CsumEvaluation(k, s, j, int(v), method)
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class CsumTable:
    """One period of j -> c_k^(s)(j) for j in range(k^s)."""

    k: int
    s: int
    values: tuple


@lru_cache(maxsize=8)
def _table_values(k: int, s: int, cap: int) -> tuple:
    _check_args(k, s)
    K = k**s
    if K > cap:
        raise ResourceLimitError(f"k^s = {K} exceeds cap {cap} for a full period table")
    _, divs, _, _, val = _context(k, s)
    arr = np.full(K, val[1], dtype=np.int64)
    for d in divs[1:]:
        arr[:: d**s] = val[d]
    return tuple(int(v) for v in arr)


def csum_table(k: int, s: int = 1, cap: int = DEFAULT_CAP) -> CsumTable:
    """Full period of c_k^(s), filled by overwriting along divisor strides.

    Index j holds c_k^(s)(j); j = 0 holds the value at gen_gcd = k, which is
    J_s(k) mu(1) = J_s(k).
    """
    return CsumTable(k, s, _table_values(k, s, cap))


def theta(k: int, n: int, s: int = 1) -> int:
    """Indicator that gen_gcd(n mod k^s, k, s) = 1.

    Equals the normalized exponential average (1/k^s) sum_j e(jn/k^s) c_k^(s)(j).
    """
    _check_args(k, s)
    K = k**s
    r = n % K
    if r == 0:
        return 1 if k == 1 else 0
    fac = factorize(k)
    for p, _ in fac.factors:
        if r % p**s == 0:
            return 0
    return 1


def fourier_coefficients(samples) -> np.ndarray:
    """Discrete Fourier coefficients g(m) = (1/k) sum_j f(j) e(-jm/k) of a
    k-periodic sequence given as its values on one period."""
    k = len(samples)
    if k < 1:
        raise ValueError("samples must hold at least one value")
    if k > 4096:
        raise ResourceLimitError(f"dense DFT declined for period {k} > 4096")
    f = np.asarray(samples, dtype=np.complex128)
    jm = np.outer(np.arange(k), np.arange(k)) % k
    w = np.exp(-2j * np.pi * jm / k)
    return w.T @ f / k
