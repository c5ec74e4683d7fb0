"""Integer arithmetic kernel: factorization, divisors, multiplicative functions.

Every multiplicative-function evaluator here takes an explicit
:class:`Factorization` rather than a raw integer, so a sweep over many moduli
factors each one exactly once and every value stays an exact Python int.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from math import gcd, isqrt

import numpy as np

DEFAULT_SIEVE_LIMIT = 1_000_000
SIEVE_LIMIT_ENV = "RAMSUM_SIEVE_LIMIT"


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of a positive integer.

    ``factors`` is a tuple of (prime, exponent) pairs sorted by prime, with
    every exponent at least 1.  ``Factorization(1, ())`` represents n = 1.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.value < 1:
            raise ValueError("factorization value must be positive")
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError("factors must be sorted by prime with exponents >= 1")
            last = p
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factors do not multiply back to {self.value}")

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def radical(self) -> int:
        out = 1
        for p in self.primes():
            out *= p
        return out


class PrimeSieve:
    """Smallest-prime-factor table for every n up to ``limit``."""

    def __init__(self, limit: int):
        if limit < 2:
            raise ValueError("sieve limit must be at least 2")
        self.limit = int(limit)
        spf = np.arange(self.limit + 1, dtype=np.int64)
        for p in range(2, isqrt(self.limit) + 1):
            if spf[p] == p:
                idx = np.arange(p * p, self.limit + 1, p)
                unclaimed = spf[idx] == idx
                spf[idx[unclaimed]] = p
        self._spf = spf

    def smallest_factor(self, n: int) -> int:
        if not 2 <= n <= self.limit:
            raise ValueError(f"n={n} outside sieve range [2, {self.limit}]")
        return int(self._spf[n])

    def factorize(self, n: int) -> Factorization:
        if not 1 <= n <= self.limit:
            raise ValueError(f"n={n} outside sieve range [1, {self.limit}]")
        m = n
        factors = []
        while m > 1:
            p = int(self._spf[m])
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        return Factorization(n, tuple(factors))


_default_sieve: PrimeSieve | None = None
_sieve_lock = threading.Lock()


def default_sieve() -> PrimeSieve:
    """Shared sieve, built lazily at the env-configurable default limit."""
    global _default_sieve
    if _default_sieve is None:
        with _sieve_lock:
            if _default_sieve is None:
                limit = int(os.environ.get(SIEVE_LIMIT_ENV, DEFAULT_SIEVE_LIMIT))
                _default_sieve = PrimeSieve(max(limit, 2))
    return _default_sieve


def configure_default_sieve(limit: int) -> PrimeSieve:
    """Replace the shared sieve (used by the CLI's --sieve-limit flag)."""
    global _default_sieve
    with _sieve_lock:
        _default_sieve = PrimeSieve(max(int(limit), 2))
    return _default_sieve


def _trial_factorize(n: int) -> Factorization:
    m = n
    factors = []
    for p in (2, 3):
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            factors.append((p, e))
    f = 5
    while f * f <= m:
        for p in (f, f + 2):
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            if e:
                factors.append((p, e))
        f += 6
    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


def factorize(n: int, sieve: PrimeSieve | None = None) -> Factorization:
    """Factor a positive integer, preferring the sieve when n is in range."""
    if n < 1:
        raise ValueError(f"cannot factor n={n}, need n >= 1")
    if n == 1:
        return Factorization(1, ())
    if sieve is None:
        sieve = default_sieve()
    if n <= sieve.limit:
        return sieve.factorize(n)
    return _trial_factorize(n)


def primes_up_to(limit: int) -> list[int]:
    if limit < 2:
        return []
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.nonzero(mask)[0].tolist()


def divisors(fac: Factorization) -> list[int]:
    """All positive divisors, ascending.  Length is prod(e_i + 1)."""
    out = [1]
    for p, e in fac.factors:
        out = [d * p**i for d in out for i in range(e + 1)]
    return sorted(out)


def moebius(fac: Factorization) -> int:
    if any(e > 1 for _, e in fac.factors):
        return 0
    return -1 if len(fac.factors) % 2 else 1


def jordan_totient(s: int, fac: Factorization) -> int:
    """J_s(n) = n^s * prod_{p|n} (1 - p^{-s}), as an exact integer.

    Multiplicative, equal to sum_{d|n} d^s mu(n/d), and J_1 is Euler's phi.
    s = 0 is allowed and gives the convolution identity element
    (1 at n = 1, else 0), consistently under both characterizations.
    """
    if s < 0:
        raise ValueError("jordan_totient needs s >= 0")
    total = 1
    for p, e in fac.factors:
        total *= p ** (s * e) - p ** (s * (e - 1))
    return total


def euler_phi(fac: Factorization) -> int:
    return jordan_totient(1, fac)


def von_mangoldt(fac: Factorization):
    """Lambda(n) as an exact log vector: log p on prime powers p^e, else 0."""
    # imported here, not at module top: logspace builds on this module
    from .logspace import LogLinear

    if len(fac.factors) == 1:
        return LogLinear({fac.factors[0][0]: 1})
    return LogLinear()


def tau_sigma(fac: Factorization) -> tuple[int, int]:
    """(number of divisors, sum of divisors)."""
    tau = 1
    sigma = 1
    for p, e in fac.factors:
        tau *= e + 1
        sigma *= (p ** (e + 1) - 1) // (p - 1)
    return tau, sigma


def _gen_gcd_factors(j: int, factors: tuple[tuple[int, int], ...], s: int) -> int:
    # largest d built prime-by-prime: p may enter d with exponent a only if
    # p^(a*s) divides j, and a is capped by p's exponent in k
    g = 1
    for p, e in factors:
        cap = e * s
        m, v = j, 0
        while v < cap and m % p == 0:
            m //= p
            v += 1
        g *= p ** (v // s)
    return g


def gen_gcd(j: int, k: int, s: int = 1) -> int:
    """Largest d with d | k and d^s | j; the s-generalized gcd (j, k^s)_s.

    gen_gcd(0, k, s) = k since every d^s divides 0, and s = 1 reduces to the
    ordinary gcd.  Negative j is treated by absolute value (divisibility is
    sign-blind), which makes the k^s-periodic callers uniform.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if s < 1:
        raise ValueError("s must be positive")
    j = abs(j)
    if j == 0:
        return k
    if s == 1:
        return gcd(j, k)
    return _gen_gcd_factors(j, factorize(k).factors, s)


def dirichlet_convolve(f_table, g_table, n: int):
    """(f * g)(n) = sum_{d|n} f(d) g(n/d) from explicit value tables.

    Tables are mappings from divisor to value; values only need + and *
    (ints, Fractions, and LogLinear vectors all work).  A missing divisor
    entry is a domain error.
    """
    if n < 1:
        raise ValueError("n must be positive")
    total = None
    for d in divisors(factorize(n)):
        try:
            term = f_table[d] * g_table[n // d]
        except KeyError:
            raise ValueError(f"missing divisor value for n={n}: need f({d}) and g({n // d})") from None
        total = term if total is None else total + term
    return total
