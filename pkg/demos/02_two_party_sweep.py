"""
Two fleets, one encrypted question
==================================

Ten roads by 24 hourly slots. The responder runs trucks in slots 1, 6, 21
and 50. The enquirer asks about every slot in turn and only learns yes/no.
"""

import random

from fleetmatch import experiments, matchmaking, paillier
from fleetmatch.matchmaking import InterestSet, World

rng = random.Random(1)
world = World(10, 24)
pk, sk = paillier.generate_keys(128, rng)
responder = InterestSet(world, [1, 6, 21, 50])

x = matchmaking.submit_query(pk, world, 50, rng)
print(f"query for w=50: {len(x)} ciphertexts, {matchmaking.query_message_bytes(x)} bytes on the wire")
y = matchmaking.return_response(pk, x, responder, rng)
print("responder uses road/slot", world.road_slot(50), "->", matchmaking.interpret(sk, pk, y))

records = experiments.sweep(pk, sk, responder, rng)
print("slots answered yes:", [r.w for r in records if r.answered])
