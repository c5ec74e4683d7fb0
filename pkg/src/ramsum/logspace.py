"""Exact log-space vectors over {log p : p prime} together with log(2*pi).

A LogLinear value is a finite rational combination c_1*log(p_1) + ... with an
optional c*log(2pi) term.  The symbols are linearly independent over Q, so
coefficient-wise equality decides identities between the closed forms arising
here with no floating point involved.  log(2pi) is kept atomic: it is never
split into log 2 plus a transcendental remainder.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

from .arith import factorize, jordan_totient, primes_up_to
from .exactnum import rat_str

TWO_PI = "2pi"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _check_symbol(sym) -> None:
    if sym == TWO_PI:
        return
    if not isinstance(sym, int) or not _is_prime(sym):
        raise ValueError(f"LogLinear symbols are primes or {TWO_PI!r}, got {sym!r}")


def _sort_key(sym):
    return (1, 0) if sym == TWO_PI else (0, sym)


class LogLinear:
    """Immutable rational-coefficient combination of log symbols."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        clean: dict = {}
        if coeffs:
            for sym, c in coeffs.items():
                c = Fraction(c)
                if c:
                    _check_symbol(sym)
                    clean[sym] = c
        self._c = clean

    @classmethod
    def _raw(cls, clean: dict) -> "LogLinear":
        out = cls.__new__(cls)
        out._c = clean
        return out

    def coefficients(self) -> dict:
        """Copy of the symbol -> Fraction mapping (zero terms never stored)."""
        return dict(self._c)

    @property
    def is_zero(self) -> bool:
        return not self._c

    def __add__(self, other):
        if not isinstance(other, LogLinear):
            return NotImplemented
        c = dict(self._c)
        for sym, v in other._c.items():
            nv = c.get(sym, 0) + v
            if nv:
                c[sym] = nv
            else:
                c.pop(sym, None)
        return LogLinear._raw(c)

    def __neg__(self):
        return LogLinear._raw({sym: -v for sym, v in self._c.items()})

    def __sub__(self, other):
        if not isinstance(other, LogLinear):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        scalar = Fraction(scalar)
        if not scalar:
            return LogLinear._raw({})
        return LogLinear._raw({sym: v * scalar for sym, v in self._c.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LogLinear):
            return NotImplemented
        return self._c == other._c

    __hash__ = None

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for sym in sorted(self._c, key=_sort_key):
            parts.append(f"{rat_str(self._c[sym])}*log({sym})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LogLinear({self})"


def render(x: LogLinear) -> str:
    """Canonical text form: terms ordered by prime, log(2pi) last."""
    return str(x)


def float_value(x: LogLinear) -> float:
    """Numeric value via exactly-rounded summation of the terms."""
    terms = []
    for sym, c in x._c.items():
        base = math.log(math.tau) if sym == TWO_PI else math.log(sym)
        terms.append(float(c) * base)
    return math.fsum(terms)


def log_of_integer(n: int) -> LogLinear:
    """log n as an exact vector: the prime exponents of n."""
    fac = factorize(n)
    return LogLinear._raw({p: Fraction(e) for p, e in fac.factors})


def log_factorial(n: int) -> LogLinear:
    """log n! assembled from prime valuations of n! (Legendre's count)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    coeffs = {}
    for p in primes_up_to(n):
        e = 0
        q = p
        while q <= n:
            e += n // q
            q *= p
        coeffs[p] = Fraction(e)
    return LogLinear._raw(coeffs)


def mu_log_lemma_sides(k: int, s: int) -> tuple[LogLinear, LogLinear]:
    """Both sides of sum_{d|k} mu(d) log(d)/d^s = -(J_s(k)/k^s) sum_{p|k} log(p)/(p^s - 1).

    The left side keeps only squarefree divisors (mu kills the rest), built
    directly from subsets of the prime support; the right side is the closed
    form.  Both are exact LogLinear vectors over the primes dividing k.
    """
    if k < 1 or s < 1:
        raise ValueError("k and s must be positive")
    fac = factorize(k)
    primes = fac.primes()
    lhs_coeffs: dict = {p: Fraction(0) for p in primes}
    for t in range(1, len(primes) + 1):
        for subset in combinations(primes, t):
            d = 1
            for p in subset:
                d *= p
            w = Fraction((-1) ** t, d**s)
            for p in subset:
                lhs_coeffs[p] += w
    lhs = LogLinear(lhs_coeffs)
    scale = -Fraction(jordan_totient(s, fac), k**s)
    rhs = LogLinear({p: scale / (p**s - 1) for p in primes})
    return lhs, rhs
