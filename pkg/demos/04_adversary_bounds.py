"""
How much can a cheating enquirer learn?
=======================================

With p and q in hand, the enquirer can weight two slots by q and p and read
two membership bits from one answer. Beyond that, the congruence it has to
solve has far too many solutions; we count them at toy moduli.
"""

import random

from fleetmatch import adversary, paillier
from fleetmatch.matchmaking import InterestSet, World

rng = random.Random(4)
pk, sk = paillier.generate_keys(64, rng)
world = World(1, 20)
responder = InterestSet(world, [4, 9, 15])
for w1, w2 in [(4, 9), (4, 10), (5, 15), (1, 2)]:
    res = adversary.bezout_attack(pk, sk, w1, w2, responder, rng)
    print(f"targets {res.targets}: decoded {res.decoded}, truth {res.ground_truth}")

print()
for n, coeffs in [(15, (1, 1)), (15, (1, 2, 4)), (15, (3, 5, 6)), (35, (1, 2, 3))]:
    target = sum(c * rng.randrange(n) for c in coeffs) % n
    sols = adversary.enumerate_solutions(n, coeffs, target)
    bound, regime = adversary.solution_bound(n, coeffs)
    print(f"N={n} coeffs={coeffs} target={target}: {sols.count} solutions, bound {bound} ({regime})")

sols = adversary.enumerate_solutions_distributed(15, (1, 4), 6, num_fleets=2)
print("two fleets, N=15, coeffs (1, 4):", sols.count, "solutions, bound",
      adversary.solution_bound(15, (1, 4), num_fleets=2)[0])
