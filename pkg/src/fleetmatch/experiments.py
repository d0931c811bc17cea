"""Correctness sweep and key-length scaling benchmark."""

import random
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields

import numpy as np

from . import matchmaking, paillier
from .matchmaking import InterestSet, World

SWEEP_SCHEMA = "# fleetmatch sweep v1"
BENCH_SCHEMA = "# fleetmatch bench v1"

# interest set of the responder in the reference 10 x 24 scenario
REFERENCE_INTERESTS = (1, 6, 21, 50)


@dataclass(frozen=True)
class SweepRecord:
    w: int
    answered: bool


@dataclass(frozen=True)
class BenchRecord:
    key_bits: int
    submit_time_ns: int
    respond_time_ns: int
    interpret_time_ns: int
    query_bytes: int
    response_bytes: int
    trials: int

    @property
    def total_time_ns(self):
        return self.submit_time_ns + self.respond_time_ns + self.interpret_time_ns


def sweep(pk, sk, interests, rng=None):
    """Query every index of the world against one responder."""
    rng = rng or random.SystemRandom()
    out = []
    for w in range(1, interests.world.size + 1):
        x = matchmaking.submit_query(pk, interests.world, w, rng)
        y = matchmaking.return_response(pk, x, interests, rng)
        out.append(SweepRecord(w, matchmaking.interpret(sk, pk, y)))
    return out


def _one_trial(pk, sk, interests, rng):
    world = interests.world
    w = rng.randrange(1, world.size + 1)
    t0 = time.perf_counter_ns()
    x = matchmaking.submit_query(pk, world, w, rng)
    t1 = time.perf_counter_ns()
    y = matchmaking.return_response(pk, x, interests, rng)
    t2 = time.perf_counter_ns()
    matchmaking.interpret(sk, pk, y)
    t3 = time.perf_counter_ns()
    return t1 - t0, t2 - t1, t3 - t2, matchmaking.query_message_bytes(x)


def bench_key_length(key_bits, trials=3, world_size=240, rng=None, parallel=1, interests=None):
    """Median timings of the two-party protocol at one key length.

    Key generation is not timed; one warm-up run is discarded. With
    ``parallel > 1`` trials run on threads, each with its own seeded RNG.
    """
    if key_bits < 32:
        raise ValueError("benchmark key lengths start at 32 bits")
    if trials < 3:
        raise ValueError("need at least 3 trials for a median")
    rng = rng or random.SystemRandom()
    world = World(1, world_size)
    members = interests if interests is not None else [w for w in REFERENCE_INTERESTS if w <= world_size]
    interests = InterestSet(world, members)
    pk, sk = paillier.generate_keys(key_bits, rng)
    _one_trial(pk, sk, interests, rng)

    seeds = [rng.getrandbits(64) for _ in range(trials)]
    if parallel > 1:
        with ThreadPoolExecutor(parallel) as pool:
            runs = list(pool.map(lambda s: _one_trial(pk, sk, interests, random.Random(s)), seeds))
    else:
        runs = [_one_trial(pk, sk, interests, random.Random(s)) for s in seeds]

    sub, resp, interp, qbytes = zip(*runs)
    return BenchRecord(
        key_bits=key_bits,
        submit_time_ns=int(statistics.median(sub)),
        respond_time_ns=int(statistics.median(resp)),
        interpret_time_ns=int(statistics.median(interp)),
        query_bytes=qbytes[0],
        response_bytes=matchmaking.response_message_bytes(pk),
        trials=trials,
    )


def bench(bit_list, trials=3, world_size=240, rng=None, parallel=1):
    rng = rng or random.SystemRandom()
    return [bench_key_length(b, trials, world_size, rng, parallel) for b in bit_list]


def loglog_slope(xs, ys):
    """Least-squares slope of log(y) against log(x)."""
    slope, _ = np.polyfit(np.log(xs), np.log(ys), 1)
    return float(slope)


def bench_slopes(records):
    bits = [r.key_bits for r in records]
    return {
        "time": loglog_slope(bits, [r.total_time_ns for r in records]),
        "bytes": loglog_slope(bits, [r.query_bytes for r in records]),
    }


def csv_lines(schema, records, cls):
    cols = [f.name for f in fields(cls)]
    yield schema
    yield ",".join(cols)
    for r in records:
        vals = (getattr(r, c) for c in cols)
        yield ",".join(str(v).lower() if isinstance(v, bool) else str(v) for v in vals)
