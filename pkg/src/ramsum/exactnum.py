"""Exact rational layer: binomials, Bernoulli numbers and polynomials, power sums.

Everything here is Fraction or int arithmetic; nothing rounds.  Closed forms
that promise integers (power sums) check integrality before returning.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb

from .arith import factorize
from .errors import InternalConsistencyError

Rational = Fraction


def rat_str(q) -> str:
    """Canonical string for a rational: "p/q" in lowest terms, "p" for integers."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def binomial(n: int, k: int) -> int:
    """C(n, k) for nonnegative arguments, 0 when k > n.  Exact at any size."""
    return comb(n, k)


_bern: list[Fraction] = [Fraction(1), Fraction(-1, 2)]
_bern_lock = threading.Lock()


def bernoulli_number(m: int) -> Fraction:
    """B_m with B_1 = -1/2, from the solved recurrence, memoized.

    For n >= 2 the symmetric relation B_n = sum_k C(n,k) B_k pins
    B_{n-1} = -(1/n) sum_{k<n-1} C(n,k) B_k.  Odd entries past B_1 must
    come out zero; that is asserted rather than assumed.
    """
    if m < 0:
        raise ValueError("Bernoulli index must be nonnegative")
    with _bern_lock:
        while len(_bern) <= m:
            n = len(_bern)
            acc = sum(comb(n + 1, i) * _bern[i] for i in range(n))
            value = -acc / Fraction(n + 1)
            if n > 1 and n % 2 and value:
                raise InternalConsistencyError(f"odd Bernoulli number B_{n} came out nonzero")
            _bern.append(value)
        return _bern[m]


def bernoulli_poly(m: int, x) -> Fraction:
    """B_m(x) = sum_i C(m,i) B_i x^(m-i), evaluated exactly by Horner."""
    if m < 0:
        raise ValueError("Bernoulli index must be nonnegative")
    x = Fraction(x)
    acc = Fraction(0)
    for i in range(m + 1):
        acc = acc * x + comb(m, i) * bernoulli_number(i)
    return acc


def power_sum(n_max: int, r: int) -> int:
    """Sum of n^r for n = 1..n_max via the even-index Bernoulli closed form.

    The r >= 1 form is n^r/2 + (1/(r+1)) sum_m C(r+1, 2m) B_{2m} n^{r+1-2m};
    r = 0 is the plain count.  The total must be integral.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r == 0:
        return n_max
    total = Fraction(n_max**r, 2)
    for m in range(r // 2 + 1):
        term = comb(r + 1, 2 * m) * bernoulli_number(2 * m) * n_max ** (r + 1 - 2 * m)
        total += term / (r + 1)
    if total.denominator != 1:
        raise InternalConsistencyError(f"power_sum({n_max}, {r}) not integral: {total}")
    return total.numerator


def coprime_power_sum(n: int, r: int) -> int:
    """Sum of j^r over 1 <= j <= n with gcd(j, n) = 1.

    Uses the closed form
        (n^{r+1}/(r+1)) sum_m C(r+1, 2m) (B_{2m}/n^{2m}) prod_{p|n} (1 - p^{2m-1})
    for n > 1; n = 1 is the single term j = 1.  Integrality of the result is
    an internal invariant, violated only by a bug.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if r < 0:
        raise ValueError("r must be nonnegative")
    if n == 1:
        return 1
    fac = factorize(n)
    total = Fraction(0)
    for m in range(r // 2 + 1):
        prod = Fraction(1)
        for p in fac.primes():
            prod *= 1 - Fraction(p) ** (2 * m - 1)
        total += comb(r + 1, 2 * m) * bernoulli_number(2 * m) * prod / Fraction(n) ** (2 * m)
    total *= Fraction(n ** (r + 1), r + 1)
    if total.denominator != 1:
        raise InternalConsistencyError(f"coprime_power_sum({n}, {r}) not integral: {total}")
    return total.numerator
