"""Command-line entry point: ``fleetmatch {keygen,demo,bench,dist-demo,attack}``."""

import argparse
import json
import random
import sys

from . import adversary, experiments, network, paillier
from .matchmaking import InterestSet, World


def _ints(s):
    return [int(v) for v in s.split(",") if v.strip()] if s else []


def _rng(args):
    return random.Random(args.seed) if args.seed is not None else random.SystemRandom()


def _keys(args, rng):
    if args.keys:
        pk, sk = paillier.load_keys(args.keys)
        if sk is None:
            raise ValueError(f"{args.keys}: private key required")
        return pk, sk
    return paillier.generate_keys(args.bits, rng)


def _emit(lines, out):
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_keygen(args):
    if args.bits < 3:
        raise ValueError("--bits must be at least 3")
    if not args.out:
        raise ValueError("keygen needs --out")
    pk, sk = paillier.generate_keys(args.bits, _rng(args))
    paillier.save_keys(args.out, pk, sk, force=args.force)
    print(f"wrote {args.out}: N has {pk.n.bit_length()} bits")


def cmd_demo(args):
    world = World(args.roads, args.slots)
    interests = InterestSet(world, _ints(args.interests))  # validates before any crypto
    rng = _rng(args)
    pk, sk = _keys(args, rng)
    records = experiments.sweep(pk, sk, interests, rng)
    _emit(experiments.csv_lines(experiments.SWEEP_SCHEMA, records, experiments.SweepRecord), args.out)


def cmd_bench(args):
    bit_list = _ints(args.bits)
    if not bit_list or min(bit_list) < 32:
        raise ValueError("--bits must list key lengths of at least 32")
    if args.trials < 3:
        raise ValueError("--trials must be at least 3")
    records = experiments.bench(bit_list, args.trials, args.world_size, _rng(args), args.parallel)
    lines = list(experiments.csv_lines(experiments.BENCH_SCHEMA, records, experiments.BenchRecord))
    if len(records) > 1:
        s = experiments.bench_slopes(records)
        lines.append(f"# loglog slope time={s['time']:.3f} bytes={s['bytes']:.3f}")
    _emit(lines, args.out)


def cmd_dist_demo(args):
    g = network.load_graph(args.graph)
    if len(g.vertices) < 3 or not network.is_two_connected(g):
        cuts = sorted(network.cut_vertices(g)) if len(g.vertices) >= 3 else []
        raise ValueError(f"graph is not 2-connected; cut vertex: {', '.join(map(str, cuts)) or 'n/a'}")
    scenario = network.load_scenario(args.scenario)
    rng = _rng(args)
    answer, transcript = network.run_session(g, args.enquirer, args.w, scenario,
                                             rng=rng, keys=_keys(args, rng))
    print(json.dumps({"enquirer": args.enquirer, "w": args.w, "answer": answer}))
    if args.out:
        network.write_transcript(args.out, transcript)
    else:
        for hop in transcript:
            print(json.dumps(hop.to_dict()))


def cmd_attack(args):
    rng = _rng(args)
    if args.mode == "freevar":
        if args.modulus:
            n = args.modulus
        else:
            if args.bits is None:
                raise ValueError("freevar needs --modulus or --bits")
            pk, _ = paillier.generate_keys(args.bits, rng)
            n = pk.n
        if n > adversary.MAX_ENUM_MODULUS:
            raise ValueError(f"modulus {n} too large: freevar enumeration budget "
                             f"allows N <= {adversary.MAX_ENUM_MODULUS}")
        coeffs = _ints(args.coefficients)
        sols = adversary.enumerate_solutions(n, coeffs, args.target)
        bound, regime = adversary.solution_bound(n, coeffs)
        holds = bound is None or sols.count >= bound
        report = {"mode": "freevar", "modulus": n, "coefficients": coeffs,
                  "target": sols.target, "count": sols.count, "bound": bound,
                  "regime": regime, "verdict": "bound holds" if holds else "bound violated"}
        print(json.dumps(report))
        return 0 if holds else 1

    if args.w1 is None or args.w2 is None or args.w1 == args.w2:
        raise ValueError("bezout needs distinct --w1 and --w2")
    scenario = network.load_scenario(args.scenario)
    fleet = args.fleet if args.fleet is not None else min(scenario.interests)
    pk, sk = _keys(args, rng)
    result = adversary.bezout_attack(pk, sk, args.w1, args.w2, scenario.interests_of(fleet), rng)
    print(json.dumps(result.to_dict()))
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="seed for every random draw")
    common.add_argument("--keys", help="JSON key file to use instead of generating keys")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--force", action="store_true", help="overwrite existing files")

    p = argparse.ArgumentParser(prog="fleetmatch", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("keygen", parents=[common])
    s.add_argument("--bits", type=int, required=True, help="bits per prime")
    s.set_defaults(func=cmd_keygen)

    s = sub.add_parser("demo", parents=[common])
    s.add_argument("--roads", type=int, default=10)
    s.add_argument("--slots", type=int, default=24)
    s.add_argument("--interests", default="1,6,21,50")
    s.add_argument("--bits", type=int, default=128)
    s.set_defaults(func=cmd_demo)

    s = sub.add_parser("bench", parents=[common])
    s.add_argument("--bits", default="128,256,512,1024", help="comma-separated key lengths")
    s.add_argument("--trials", type=int, default=3)
    s.add_argument("--world-size", type=int, default=240)
    s.add_argument("--parallel", type=int, default=1, help="threads for independent trials")
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("dist-demo", parents=[common])
    s.add_argument("--graph", required=True)
    s.add_argument("--scenario", required=True)
    s.add_argument("--enquirer", type=int, required=True)
    s.add_argument("--w", type=int, required=True)
    s.add_argument("--bits", type=int, default=128)
    s.set_defaults(func=cmd_dist_demo)

    s = sub.add_parser("attack", parents=[common])
    s.add_argument("--mode", choices=["bezout", "freevar"], required=True)
    s.add_argument("--scenario")
    s.add_argument("--fleet", type=int, help="responding fleet id (default: lowest)")
    s.add_argument("--bits", type=int)
    s.add_argument("--w1", type=int)
    s.add_argument("--w2", type=int)
    s.add_argument("--modulus", type=int, help="toy modulus for freevar")
    s.add_argument("--coefficients", default="1,1")
    s.add_argument("--target", type=int, default=0)
    s.set_defaults(func=cmd_attack)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "attack" and args.mode == "bezout":
        if not args.scenario:
            print("fleetmatch: error: bezout needs --scenario", file=sys.stderr)
            return 2
        if args.bits is None and not args.keys:
            args.bits = 128
    try:
        return args.func(args) or 0
    except (ValueError, OSError, KeyError) as exc:
        print(f"fleetmatch: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
