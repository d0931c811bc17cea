"""Exit criteria for the package. Each test reports one PASS/FAIL line."""

import math
import random
import time
from unittest import mock

import pytest

from fleetmatch import adversary, experiments, matchmaking, network, paillier
from fleetmatch.matchmaking import InterestSet, World
from fleetmatch.network import Scenario

from conftest import record_criterion
from graph_oracles import deletion_oracle, random_graph, random_two_connected

UNITS_35 = [r for r in range(1, 35) if math.gcd(r, 35) == 1]


def test_ac01_exhaustive_round_trip(keys35):
    pk, sk = keys35
    start = time.perf_counter()
    ok = sum(paillier.decrypt(sk, pk, paillier.encrypt(pk, t, r)) == t
             for t in range(35) for r in UNITS_35)
    elapsed = time.perf_counter() - start
    passed = ok == 840 and elapsed < 1.0
    record_criterion(1, "exhaustive Paillier round trip at N=35", passed, f"{ok}/840 in {elapsed:.3f}s")
    assert passed


def test_ac02_homomorphic_identities(keys35):
    pk, sk = keys35
    start = time.perf_counter()
    bad = 0
    enc = {(t, r): paillier.encrypt(pk, t, r) for t in range(35) for r in UNITS_35}
    for t in range(35):
        for u in range(35):
            for i, r in enumerate(UNITS_35):
                s = UNITS_35[(i + t + u) % 24]
                c = paillier.add_cipher(pk, enc[t, r], enc[u, s])
                bad += paillier.decrypt(sk, pk, c) != (t + u) % 35
                bad += c != paillier.encrypt(pk, (t + u) % 35, r * s % 35)
    for t in range(35):
        for r in UNITS_35:
            for k in range(35):
                c = paillier.scalar_mul(pk, enc[t, r], k)
                bad += paillier.decrypt(sk, pk, c) != k * t % 35
                if k:
                    bad += c != paillier.encrypt(pk, k * t % 35, pow(r, k, 35))
    elapsed = time.perf_counter() - start
    passed = bad == 0 and elapsed < 10.0
    record_criterion(2, "homomorphic add/scale identities at N=35", passed,
                     f"{bad} mismatches in {elapsed:.2f}s")
    assert passed


def test_ac03_reference_sweep():
    rng = random.Random(3)
    pk, sk = paillier.generate_keys(128, rng)
    interests = InterestSet(World(10, 24), experiments.REFERENCE_INTERESTS)
    start = time.perf_counter()
    records = experiments.sweep(pk, sk, interests, rng)
    elapsed = time.perf_counter() - start
    correct = sum(r.answered == (r.w in {1, 6, 21, 50}) for r in records)
    passed = len(records) == 240 and correct == 240 and elapsed < 300
    record_criterion(3, "10x24 sweep answers true exactly at 1,6,21,50", passed,
                     f"{correct}/240 in {elapsed:.1f}s")
    assert passed


@pytest.fixture(scope="module")
def scaling_records():
    return experiments.bench([128, 256, 512, 1024], trials=3, world_size=48, rng=random.Random(5))


def test_ac04_communication_linear(scaling_records):
    ratios = []
    for a, b in zip(scaling_records, scaling_records[1:]):
        ratios.append(b.query_bytes / a.query_bytes)
        ratios.append(b.response_bytes / a.response_bytes)
    passed = all(1.98 <= x <= 2.02 for x in ratios)
    record_criterion(4, "message bytes double per key-length doubling", passed,
                     "ratios " + ", ".join(f"{x:.4f}" for x in ratios))
    assert passed


def test_ac05_computation_exponent(scaling_records):
    slope = experiments.bench_slopes(scaling_records)["time"]
    passed = 2.0 <= slope <= 3.5
    record_criterion(5, "log-log time exponent in [2.0, 3.5]", passed, f"slope {slope:.3f}")
    assert passed


def _realized_target(n, coeffs, rng):
    xi = [rng.randrange(n) for _ in coeffs]
    return sum(c * x for c, x in zip(coeffs, xi)) % n


def test_ac06_unit_coefficient_bound():
    rng = random.Random(6)
    start = time.perf_counter()
    checked = failures = 0
    for n in (15, 35):
        units = [c for c in range(1, n) if math.gcd(c, n) == 1]
        for t in (2, 3):
            for _ in range(20):
                coeffs = [rng.choice(units)] + [rng.randrange(1, n) for _ in range(t - 1)]
                rng.shuffle(coeffs)
                target = _realized_target(n, coeffs, rng)
                count = adversary.enumerate_solutions(n, coeffs, target).count
                bound, regime = adversary.solution_bound(n, coeffs)
                assert regime == "unit" and bound == (n - 1) ** (t - 1)
                checked += 1
                failures += count < bound
    elapsed = time.perf_counter() - start
    passed = failures == 0 and checked == 80 and elapsed < 30
    record_criterion(6, "|Xi| >= (N-1)^(t-1) with a unit coefficient", passed,
                     f"{checked - failures}/{checked} in {elapsed:.2f}s")
    assert passed


def test_ac07_no_unit_bound():
    rng = random.Random(7)
    nonunits = [c for c in range(1, 15) if math.gcd(c, 15) != 1]
    start = time.perf_counter()
    failures = 0
    for _ in range(10):
        coeffs = [rng.choice(nonunits) for _ in range(3)]
        target = _realized_target(15, coeffs, rng)
        count = adversary.enumerate_solutions(15, coeffs, target).count
        bound, regime = adversary.solution_bound(15, coeffs)
        assert regime == "no-unit" and bound == 2 * 14
        failures += count < bound
    elapsed = time.perf_counter() - start
    passed = failures == 0 and elapsed < 60
    record_criterion(7, "|Xi| >= 2(N-1)^(t-2) without a unit coefficient", passed,
                     f"{10 - failures}/10 in {elapsed:.2f}s")
    assert passed


def test_ac08_distributed_bound():
    rng = random.Random(8)
    units = [c for c in range(1, 15) if math.gcd(c, 15) == 1]
    m = 2
    start = time.perf_counter()
    failures = 0
    for _ in range(10):
        coeffs = [rng.choice(units), rng.randrange(1, 15)]
        rng.shuffle(coeffs)
        tiled = [c for c in coeffs for _ in range(m)]
        target = _realized_target(15, tiled, rng)
        count = adversary.enumerate_solutions_distributed(15, coeffs, target, m).count
        bound, _ = adversary.solution_bound(15, coeffs, num_fleets=m)
        assert bound == m * 14
        failures += count < bound
    elapsed = time.perf_counter() - start
    passed = failures == 0 and elapsed < 120
    record_criterion(8, "distributed |Xi| >= m(N-1)^(t-1), m=2", passed,
                     f"{10 - failures}/10 in {elapsed:.2f}s")
    assert passed


def test_ac09_distributed_correctness(keys35):
    rng = random.Random(9)
    correct = 0
    for _ in range(500):
        g = random_two_connected(rng, 4, 6)
        world = World(rng.randint(1, 2), rng.randint(1, 4))
        scenario = Scenario(world, {
            v: InterestSet(world, [w for w in range(1, world.size + 1) if rng.random() < 0.2])
            for v in g.vertices})
        ell = rng.choice(sorted(g.vertices))
        w = rng.randint(1, world.size)
        answer, _ = network.run_session(g, ell, w, scenario, rng=rng, keys=keys35)
        expected = any(w in scenario.interests[v] for v in g.vertices if v != ell)
        correct += answer == expected
    passed = correct == 500
    record_criterion(9, "distributed sessions match union membership", passed, f"{correct}/500")
    assert passed


def test_ac10_bezout_attack(keys64):
    rng = random.Random(10)
    pk, sk = keys64
    world = World(2, 8)
    w1, w2 = 3, 11
    correct = 0
    for z1 in (False, True):
        for z2 in (False, True):
            members = [w for w, z in ((w1, z1), (w2, z2)) if z] + [1, 16]
            interests = InterestSet(world, members)
            for _ in range(100):
                res = adversary.bezout_attack(pk, sk, w1, w2, interests, rng)
                correct += res.decoded == (z1, z2) == res.ground_truth
    per_trial = (sk.q - 1 + sk.p - 1) / (pk.n - 1)
    passed = correct == 400 and per_trial < 2 ** -60
    record_criterion(10, "Bezout two-bit extraction at 64-bit keys", passed,
                     f"{correct}/400, per-trial failure <= 2^{math.log2(per_trial):.1f}")
    assert passed


def test_ac11_two_connectivity_oracle():
    rng = random.Random(11)
    agree = 0
    positives = 0
    for _ in range(1000):
        g = random_graph(rng, rng.randint(3, 7), rng.uniform(0.2, 0.95))
        truth = deletion_oracle(g)
        positives += truth
        agree += network.is_two_connected(g) == truth
    passed = agree == 1000
    record_criterion(11, "2-connectivity checker vs deletion oracle", passed,
                     f"{agree}/1000 ({positives} 2-connected)")
    assert passed
    assert 100 < positives < 900  # both classes well represented


def test_ac12_operation_counts():
    rng = random.Random(12)
    pk, _ = paillier.keys_from_primes(5, 7)
    ok = 0
    for _ in range(50):
        world = World(rng.randint(1, 5), rng.randint(1, 12))
        interests = InterestSet(world, rng.sample(range(1, world.size + 1), rng.randint(0, world.size)))
        w = rng.randint(1, world.size)
        with mock.patch.object(paillier, "encrypt", wraps=paillier.encrypt) as enc:
            x = matchmaking.submit_query(pk, world, w, rng)
        with mock.patch.object(paillier, "scalar_mul", wraps=paillier.scalar_mul) as exp:
            matchmaking.return_response(pk, x, interests, rng)
        ok += enc.call_count == world.size and exp.call_count == len(interests)
    passed = ok == 50
    record_criterion(12, "encryptions = |W|, exponentiations = |interest set|", passed, f"{ok}/50 scenarios")
    assert passed
