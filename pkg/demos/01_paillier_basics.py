"""
Paillier in a few lines
=======================

Toy keys with p = 5, q = 7 make every number small enough to check by hand.
"""

import random

from fleetmatch import paillier

pk, sk = paillier.keys_from_primes(5, 7)
print(f"N = {pk.n}, lambda = {sk.lam}, mu = {sk.mu}")

# encryption is randomized: the same plaintext gives different ciphertexts
for r in (1, 2, 3):
    print(f"E(0; {r}) = {paillier.encrypt(pk, 0, r).value}")

rng = random.Random(0)
a = paillier.encrypt(pk, 30, paillier.sample_unit(pk, rng))
b = paillier.encrypt(pk, 10, paillier.sample_unit(pk, rng))
print("D(E(30) * E(10)) =", paillier.decrypt(sk, pk, paillier.add_cipher(pk, a, b)), "(40 mod 35)")
print("D(E(30) ^ 3)     =", paillier.decrypt(sk, pk, paillier.scalar_mul(pk, a, 3)), "(90 mod 35)")

# a realistic key
pk, sk = paillier.generate_keys(512, rng)
c = paillier.encrypt(pk, 123456789, paillier.sample_unit(pk, rng))
print(f"\n512-bit primes: N has {pk.n.bit_length()} bits, ciphertexts take "
      f"{paillier.ciphertext_width(pk)} bytes; round trip ->", paillier.decrypt(sk, pk, c))
