"""
Cost versus key length
======================

Message size grows linearly with the key length; compute time grows
polynomially. Takes about a minute at 1024-bit primes.
"""

import random

from fleetmatch import experiments

records = experiments.bench([128, 256, 512, 1024], trials=3, world_size=240, rng=random.Random(5))
print("bits   total_ms   query_kB")
for r in records:
    print(f"{r.key_bits:5d} {r.total_time_ns / 1e6:10.1f} {r.query_bytes / 1024:10.1f}")
slopes = experiments.bench_slopes(records)
print(f"log-log slopes: time {slopes['time']:.2f}, bytes {slopes['bytes']:.2f}")
