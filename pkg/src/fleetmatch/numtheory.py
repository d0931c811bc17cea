"""Number-theory helpers: primality testing, prime sampling, extended Euclid."""

import random

_SMALL_PRIMES = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
    71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149,
    151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229,
]

# First 12 primes as witnesses make Miller-Rabin exact for n < 3.3e24.
_DETERMINISTIC_BASES = _SMALL_PRIMES[:12]

MR_ROUNDS = 40


def _trial_division(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _mr_witness(a, n, d, s):
    """True if ``a`` proves ``n`` composite."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n, rng=None, rounds=MR_ROUNDS):
    """Primality test.

    Exact below 2**64 (trial division under 2**32, fixed-witness
    Miller-Rabin above). Larger inputs get ``rounds`` random-base
    Miller-Rabin rounds, so a composite slips through with probability
    at most 4**-rounds.
    """
    if n < 2**32:
        return _trial_division(n)
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < 2**64:
        return not any(_mr_witness(a, n, d, s) for a in _DETERMINISTIC_BASES)
    rng = rng or random.SystemRandom()
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        if _mr_witness(a, n, d, s):
            return False
    return True


def random_prime(bits, rng=None):
    """Uniformly sample candidates of exactly ``bits`` bits until one is prime."""
    if bits < 2:
        raise ValueError("a prime needs at least 2 bits")
    rng = rng or random.SystemRandom()
    lo, hi = 1 << (bits - 1), 1 << bits
    while True:
        cand = rng.randrange(lo, hi)
        if bits > 2:
            cand |= 1
        if is_prime(cand, rng):
            return cand


def bezout(a, b):
    """Extended Euclid: return ``(x, y, g)`` with ``a*x + b*y == g == gcd(a, b)``.

    For positive, unequal inputs the coefficients are the minimal pair,
    ``|x| < b/g`` and ``|y| < a/g``. Coefficients may be negative.
    """
    if a < 0 or b < 0:
        raise ValueError("bezout expects natural numbers")
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        quot = old_r // r
        old_r, r = r, old_r - quot * r
        old_x, x = x, old_x - quot * x
        old_y, y = y, old_y - quot * y
    return old_x, old_y, old_r
