"""Paillier cryptosystem over Python integers.

Plaintexts live in Z_N, ciphertexts in Z_{N^2}. Ciphertexts are plain
value objects; every operation takes the key it needs explicitly.

This is a research artifact: no constant-time arithmetic, no CCA hardening.
"""

import json
import math
import random
from dataclasses import dataclass, field

from .numtheory import bezout, is_prime, random_prime

__all__ = [
    "PublicKey", "PrivateKey", "Ciphertext", "DecryptionError", "KeyGenerationError",
    "generate_keys", "keys_from_primes", "sample_unit", "encrypt", "decrypt",
    "add_cipher", "scalar_mul", "bezout", "ciphertext_width",
    "keys_to_dict", "keys_from_dict", "save_keys", "load_keys",
]

MAX_KEYGEN_ATTEMPTS = 1000
MAX_UNIT_ATTEMPTS = 10_000


class DecryptionError(ValueError):
    """Ciphertext failed the exactness check in L(x) = (x - 1) / N."""


class KeyGenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class PublicKey:
    n: int
    key_bits: int
    n_squared: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 15:
            raise ValueError(f"modulus {self.n} is below the smallest valid N = 15")
        object.__setattr__(self, "n_squared", self.n * self.n)


@dataclass(frozen=True)
class PrivateKey:
    p: int
    q: int
    lam: int
    mu: int


@dataclass(frozen=True)
class Ciphertext:
    value: int


def keys_from_primes(p, q, key_bits=None):
    """Build a key pair from chosen primes (used for toy keys such as 5, 7)."""
    if p == q:
        raise ValueError("p and q must be distinct")
    for x in (p, q):
        if not is_prime(x):
            raise ValueError(f"{x} is not prime")
    n = p * q
    if math.gcd(n, (p - 1) * (q - 1)) != 1:
        raise ValueError(f"gcd(pq, (p-1)(q-1)) != 1 for p={p}, q={q}")
    lam = math.lcm(p - 1, q - 1)
    mu = pow(lam, -1, n)
    if key_bits is None:
        key_bits = max(p.bit_length(), q.bit_length())
    return PublicKey(n, key_bits), PrivateKey(p, q, lam, mu)


def generate_keys(key_bits, rng=None):
    """Sample two distinct ``key_bits``-bit primes and return ``(pk, sk)``."""
    if key_bits < 3:
        raise ValueError("key_bits must be at least 3")
    rng = rng or random.SystemRandom()
    for _ in range(MAX_KEYGEN_ATTEMPTS):
        p = random_prime(key_bits, rng)
        q = random_prime(key_bits, rng)
        if p != q and math.gcd(p * q, (p - 1) * (q - 1)) == 1:
            return keys_from_primes(p, q, key_bits)
    raise KeyGenerationError(
        f"no valid prime pair after {MAX_KEYGEN_ATTEMPTS} attempts at {key_bits} bits")


def sample_unit(pk, rng=None):
    """Uniform draw from Z*_N by rejection."""
    rng = rng or random.SystemRandom()
    for _ in range(MAX_UNIT_ATTEMPTS):
        r = rng.randrange(1, pk.n)
        if math.gcd(r, pk.n) == 1:
            return r
    raise RuntimeError("rejection sampling of a unit did not terminate")


def _check_cipher(pk, c):
    if not 0 <= c.value < pk.n_squared:
        raise ValueError("ciphertext outside Z_{N^2}")


def encrypt(pk, t, r):
    """E(t; r) = (N+1)^t r^N mod N^2."""
    if not 0 <= t < pk.n:
        raise ValueError(f"plaintext {t} outside Z_N")
    if not 0 < r < pk.n or math.gcd(r, pk.n) != 1:
        raise ValueError("randomizer must be a unit of Z_N")
    # (N+1)^t == 1 + tN (mod N^2) by the binomial theorem
    g_t = (1 + t * pk.n) % pk.n_squared
    return Ciphertext(g_t * pow(r, pk.n, pk.n_squared) % pk.n_squared)


def decrypt(sk, pk, c):
    _check_cipher(pk, c)
    x = pow(c.value, sk.lam, pk.n_squared)
    quot, rem = divmod(x - 1, pk.n)
    if rem:
        raise DecryptionError("c^lambda mod N^2 is not 1 mod N; ciphertext corrupted")
    return quot * sk.mu % pk.n


def add_cipher(pk, c1, c2):
    """Homomorphic addition: decrypts to (t1 + t2) mod N."""
    _check_cipher(pk, c1)
    _check_cipher(pk, c2)
    return Ciphertext(c1.value * c2.value % pk.n_squared)


def scalar_mul(pk, c, k):
    """Homomorphic scaling: decrypts to (k * t) mod N."""
    _check_cipher(pk, c)
    if not 0 <= k < pk.n:
        raise ValueError(f"scalar {k} outside Z_N")
    return Ciphertext(pow(c.value, k, pk.n_squared))


def ciphertext_width(pk):
    """Fixed byte width of one serialized ciphertext."""
    return ((pk.n_squared - 1).bit_length() + 7) // 8


# -- key files ---------------------------------------------------------------

def keys_to_dict(pk, sk=None):
    d = {"n": format(pk.n, "x")}
    if sk is not None:
        d.update(p=format(sk.p, "x"), q=format(sk.q, "x"),
                 **{"lambda": format(sk.lam, "x")}, mu=format(sk.mu, "x"))
    d["key_bits"] = pk.key_bits
    return d


def keys_from_dict(d):
    """Inverse of :func:`keys_to_dict`. Returns ``(pk, sk)``; ``sk`` is None for public files."""
    pk = PublicKey(int(d["n"], 16), int(d["key_bits"]))
    if "p" not in d:
        return pk, None
    sk = PrivateKey(int(d["p"], 16), int(d["q"], 16), int(d["lambda"], 16), int(d["mu"], 16))
    if sk.p * sk.q != pk.n or sk.lam * sk.mu % pk.n != 1:
        raise ValueError("key file is inconsistent")
    return pk, sk


def save_keys(path, pk, sk=None, force=False):
    mode = "w" if force else "x"
    try:
        with open(path, mode) as fh:
            json.dump(keys_to_dict(pk, sk), fh)
            fh.write("\n")
    except FileExistsError:
        raise FileExistsError(f"{path}: refusing to overwrite existing key file") from None


def load_keys(path):
    with open(path) as fh:
        return keys_from_dict(json.load(fh))
