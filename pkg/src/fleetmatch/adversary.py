"""Attacker-side tooling for bounding what a crafted query can reveal.

A dishonest enquirer may encrypt arbitrary coefficients instead of an
indicator vector. Decrypting the response then gives one linear
congruence in the unknown masked memberships xi_i = v_i z_i. This
module predicts that value, counts the congruence's solutions by brute
force at toy moduli, and runs the two-bit extraction that uses the
enquirer's knowledge of p and q.
"""

import math
import random
from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np

from . import matchmaking, paillier
from .matchmaking import QueryVector
from .numtheory import bezout

ENUM_BUDGET = 17_000_000
MAX_ENUM_MODULUS = 64


class BudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class MaliciousQuery:
    coefficients: tuple
    randomizers: tuple
    query: QueryVector


def craft_query(pk, coefficients, rng=None):
    """Encrypt arbitrary coefficients, one fresh randomizer each."""
    rng = rng or random.SystemRandom()
    coefficients = tuple(coefficients)
    for c in coefficients:
        if not 0 <= c < pk.n:
            raise ValueError(f"coefficient {c} outside Z_N")
    rs = tuple(paillier.sample_unit(pk, rng) for _ in coefficients)
    entries = tuple(paillier.encrypt(pk, c, r) for c, r in zip(coefficients, rs))
    return MaliciousQuery(coefficients, rs, QueryVector(pk, entries))


def predict_decryption(n, coefficients, multipliers, memberships):
    """Closed-form D(y) = sum_i c_i * (sum_j m_i^j z_i^j) mod n.

    Pass flat sequences for a single responder, or mappings
    fleet -> sequence for several responders on a walk.
    """
    if not isinstance(multipliers, Mapping):
        multipliers, memberships = {0: multipliers}, {0: memberships}
    total = 0
    for fleet, mult in multipliers.items():
        z = memberships[fleet]
        if not len(coefficients) == len(mult) == len(z):
            raise ValueError("inconsistent dimensions")
        total += sum(c * m * zi for c, m, zi in zip(coefficients, mult, z))
    return total % n


# -- solution counting ---------------------------------------------------------

@dataclass(frozen=True)
class SolutionSet:
    modulus: int
    target: int
    coefficients: tuple
    count: int
    tuples: np.ndarray = None

    def satisfies(self, xi):
        return sum(c * x for c, x in zip(self.coefficients, xi)) % self.modulus == self.target


def enumerate_solutions(n, coefficients, target, keep_tuples=False, budget=ENUM_BUDGET):
    """Count every xi in Z_n^t with sum(c_i xi_i) = target (mod n), by enumeration."""
    coefficients = tuple(int(c) % n for c in coefficients)
    t = len(coefficients)
    if n > MAX_ENUM_MODULUS:
        raise BudgetExceeded(f"modulus {n} above the enumeration cap {MAX_ENUM_MODULUS}")
    if n ** t > budget:
        raise BudgetExceeded(f"{n}^{t} tuples exceeds the enumeration budget {budget}")
    target %= n
    digits = np.arange(n, dtype=np.int64)
    sums = np.zeros(1, dtype=np.uint8)  # n <= 64 keeps partial sums below 128
    for c in coefficients:
        contrib = (c * digits % n).astype(np.uint8)
        sums = ((sums[:, None] + contrib[None, :]) % n).ravel()
    hits = sums == target
    tuples = None
    if keep_tuples:
        idx = np.flatnonzero(hits)
        tuples = np.stack(np.unravel_index(idx, (n,) * t), axis=1) if t else np.empty((int(hits.sum()), 0))
    return SolutionSet(n, target, coefficients, int(hits.sum()), tuples)


def enumerate_solutions_distributed(n, coefficients, target, num_fleets, **kw):
    """Same count with every coefficient repeated once per responding fleet.

    Variables are ordered xi_1^1 .. xi_1^m, xi_2^1, ...
    """
    if num_fleets < 1:
        raise ValueError("need at least one responding fleet")
    tiled = [c for c in coefficients for _ in range(num_fleets)]
    return enumerate_solutions(n, tiled, target, **kw)


def solution_bound(n, coefficients, num_fleets=1):
    """Lower bound on the solution count for the given crafted coefficients.

    With a unit coefficient and t > 1 nonzero ones the bound is
    m (N-1)^(t-1); with no unit and t > 2 it is 2 m^2 (N-1)^(t-2), where
    m is the number of responding fleets. Returns ``(bound, regime)``;
    ``(None, None)`` when neither regime applies.
    """
    nonzero = [c % n for c in coefficients if c % n]
    t = len(nonzero)
    m = num_fleets
    if any(math.gcd(c, n) == 1 for c in nonzero):
        if t > 1:
            return m * (n - 1) ** (t - 1), "unit"
        return None, None
    if t > 2:
        return 2 * m * m * (n - 1) ** (t - 2), "no-unit"
    return None, None


# -- two-bit extraction --------------------------------------------------------

@dataclass(frozen=True)
class BezoutSplit:
    alpha_bar: int
    beta_bar: int
    alpha: int
    beta: int


def bezout_split(p, q, d):
    """Split D(y) into its q- and p-weighted parts with alpha_bar q + beta_bar p = 1."""
    a_bar, b_bar, g = bezout(q, p)
    if g != 1:
        raise ValueError("p and q must be coprime")
    n = p * q
    return BezoutSplit(a_bar, b_bar, d * a_bar % n, d * b_bar % n)


def decode_pair(d, p, q):
    """Membership bits for the q-weighted and p-weighted slots.

    D = q v1 z1 + p v2 z2 (mod pq), so D mod p is nonzero iff z1 (unless
    p | v1) and D mod q likewise for z2.
    """
    return d % p != 0, d % q != 0


@dataclass(frozen=True)
class AttackResult:
    targets: tuple
    decoded: tuple
    ground_truth: tuple
    key_bits: int
    error_bound: float  # chance a random multiplier hides a true bit

    def to_dict(self):
        return {"mode": "bezout", "targets": list(self.targets),
                "decoded": list(self.decoded), "ground_truth": list(self.ground_truth),
                "key_bits": self.key_bits}


def bezout_attack(pk, sk, w1, w2, interests, rng=None):
    """Learn two membership bits from one query by weighting w1 with q and w2 with p."""
    if w1 == w2:
        raise ValueError("the two targets must differ")
    world = interests.world
    world.check(w1)
    world.check(w2)
    rng = rng or random.SystemRandom()
    coeffs = [0] * world.size
    coeffs[w1 - 1] = sk.q
    coeffs[w2 - 1] = sk.p
    crafted = craft_query(pk, coeffs, rng)
    response = matchmaking.return_response(pk, crafted.query, interests, rng)
    d = paillier.decrypt(sk, pk, response.y)
    decoded = decode_pair(d, sk.p, sk.q)
    # v uniform on 1..N-1 is divisible by p for q-1 of the N-1 values
    err = (sk.q - 1) / (pk.n - 1) + (sk.p - 1) / (pk.n - 1)
    return AttackResult((w1, w2), decoded, (w1 in interests, w2 in interests),
                        pk.key_bits, err)
