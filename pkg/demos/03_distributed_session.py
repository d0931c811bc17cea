"""
Asking a ring of fleets
=======================

Five fleets on a ring with one chord. Fleet 1 asks; the query walks
through every other fleet and comes back as a single ciphertext.
"""

import random

from fleetmatch import network, paillier
from fleetmatch.network import CommGraph, Scenario

g = CommGraph(range(1, 6), [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (2, 4)])
print("2-connected:", network.is_two_connected(g))

scenario = Scenario.from_dict({"roads": 2, "slots": 6, "fleets": [
    {"id": 1, "interests": [1]}, {"id": 2, "interests": [3]}, {"id": 3, "interests": []},
    {"id": 4, "interests": [3, 7]}, {"id": 5, "interests": [12]}]})

walk = network.find_query_loop(g, 1)
print("walk:", walk.sequence)

rng = random.Random(2)
keys = paillier.generate_keys(64, rng)
for w in (1, 3, 7, 9, 12):
    answer, transcript = network.run_session(g, 1, w, scenario, rng=rng, keys=keys)
    print(f"w={w:2d} -> {answer}  ({len(transcript)} hops, {sum(h.bytes for h in transcript)} bytes)")

# fleet 1's own slot 1 is not reported: only the other fleets answer
