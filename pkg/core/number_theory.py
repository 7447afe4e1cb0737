"""
Module: number_theory.py
Description: Primality, integer factorization, square roots modulo a prime
             and square-freeness, as needed to split the odd part b of a
             walk-matrix invariant factor into its primes.

core/number_theory.py - Number Theory Helpers

Factorization is trial division up to a bound, then Brent's variant of
Pollard rho on the cofactor. Primality is Miller-Rabin with the first
thirteen prime bases, which is deterministic below 3.3e24.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd, isqrt

from core.errors import ArgumentError
from utils.logger import get_logger

log = get_logger(__name__)

TRIAL_DIVISION_BOUND = 1_000_000
RHO_SEED = 1
MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981


@dataclass(frozen=True)
class PrimeFactorization:
    """value = prod(p ** e for p, e in factors), primes strictly increasing."""

    value: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return '1'
        return ' x '.join(f'{p}^{e}' if e > 1 else str(p) for p, e in self.factors)


# ---------------------------------------------------------------------------
# Primality
# ---------------------------------------------------------------------------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in MR_BASES:
        if n % p == 0:
            return n == p
    if n >= MR_DETERMINISTIC_LIMIT:
        log.warning('primality of %d is only probable: beyond the deterministic witness range', n)
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# Factorization
# ---------------------------------------------------------------------------

def factorize(v: int, *, trial_bound: int = TRIAL_DIVISION_BOUND,
              seed: int = RHO_SEED) -> PrimeFactorization:
    """Complete factorization of a positive integer."""
    if v < 1:
        raise ArgumentError(f'factorize needs a positive integer, got {v}')
    counts: dict[int, int] = {}
    rest = v
    for p in _small_primes(min(trial_bound, isqrt(v) + 1)):
        while rest % p == 0:
            counts[p] = counts.get(p, 0) + 1
            rest //= p
        if p * p > rest:
            break
    if rest > 1:
        rng = random.Random(seed)
        for p in _split_completely(rest, rng):
            counts[p] = counts.get(p, 0) + 1
    factors = tuple(sorted(counts.items()))
    return PrimeFactorization(value=v, factors=factors)


def odd_prime_factors(v: int, **kwargs) -> tuple[int, ...]:
    return tuple(p for p in factorize(v, **kwargs).primes if p != 2)


def is_square_free(v: int, **kwargs) -> bool:
    return all(e == 1 for _, e in factorize(v, **kwargs).factors)


# ---------------------------------------------------------------------------
# Square roots modulo p
# ---------------------------------------------------------------------------

def legendre_symbol(a: int, p: int) -> int:
    ls = pow(a % p, (p - 1) // 2, p)
    return -1 if ls == p - 1 else ls


def sqrt_mod_p(a: int, p: int) -> tuple[int, int] | None:
    """Both square roots (c0, p - c0) of a modulo an odd prime, c0 the smaller.

    Returns None for a non-residue and (0, 0) for a = 0.
    """
    if p == 2 or not is_prime(p):
        raise ArgumentError(f'square roots need an odd prime modulus, got {p}')
    a %= p
    if a == 0:
        return 0, 0
    if legendre_symbol(a, p) != 1:
        return None
    r = _tonelli_shanks(a, p)
    c0 = min(r, p - r)
    return c0, p - c0


# ---------------------------------------------------------------------------
# Internal helpers
# ---------------------------------------------------------------------------

def _small_primes(limit: int) -> list[int]:
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b'\x00\x00'
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def _split_completely(n: int, rng: random.Random) -> list[int]:
    if n == 1:
        return []
    if is_prime(n):
        return [n]
    d = _brent_rho(n, rng)
    return _split_completely(d, rng) + _split_completely(n // d, rng)


def _brent_rho(n: int, rng: random.Random) -> int:
    """A nontrivial factor of the composite n."""
    if n % 2 == 0:
        return 2
    r = isqrt(n)
    if r * r == n:
        return r
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = q = step = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(step):
                y = (y * y + c) % n
            k = 0
            while k < step and g == 1:
                ys = y
                for _ in range(min(m, step - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            step *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def _tonelli_shanks(a: int, p: int) -> int:
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = next(z for z in range(2, p) if legendre_symbol(z, p) == -1)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r
