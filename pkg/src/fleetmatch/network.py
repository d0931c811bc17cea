"""Multi-fleet coordination over a communication graph.

The enquirer's query travels along a closed walk that leaves and returns
to the enquirer without passing through it in between. Each distinct
fleet on the walk folds its interests into a travelling response
ciphertext, so the enquirer only ever receives the final aggregate.
"""

import json
import random
import time
from collections import deque
from dataclasses import dataclass, field

from . import matchmaking, paillier
from .matchmaking import InterestSet, Response, World
from .paillier import Ciphertext


@dataclass(frozen=True)
class CommGraph:
    vertices: frozenset
    edges: frozenset  # of frozenset({u, v})

    def __init__(self, vertices, edges):
        vertices = frozenset(vertices)
        norm = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if u not in vertices or v not in vertices:
                raise ValueError(f"edge ({u}, {v}) references an unknown vertex")
            norm.add(frozenset((u, v)))
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", frozenset(norm))

    def neighbors(self, v):
        return sorted(u for e in self.edges if v in e for u in e if u != v)

    def adjacency(self):
        adj = {v: [] for v in self.vertices}
        for e in self.edges:
            u, v = tuple(e)
            adj[u].append(v)
            adj[v].append(u)
        for v in adj:
            adj[v].sort()
        return adj

    def has_edge(self, u, v):
        return frozenset((u, v)) in self.edges

    @classmethod
    def from_dict(cls, d):
        return cls(d["vertices"], [tuple(e) for e in d["edges"]])

    def to_dict(self):
        return {"vertices": sorted(self.vertices),
                "edges": sorted(sorted(e) for e in self.edges)}


def load_graph(path):
    with open(path) as fh:
        return CommGraph.from_dict(json.load(fh))


def cut_vertices(g):
    """Articulation points, via iterative Tarjan low-link DFS."""
    adj = g.adjacency()
    disc, low = {}, {}
    cuts = set()
    counter = 0
    for root in sorted(g.vertices):
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        root_children = 0
        stack = [(root, None, iter(adj[root]))]
        while stack:
            v, parent, it = stack[-1]
            for u in it:
                if u == parent:
                    continue
                if u in disc:
                    low[v] = min(low[v], disc[u])
                else:
                    disc[u] = low[u] = counter
                    counter += 1
                    stack.append((u, v, iter(adj[u])))
                    break
            else:
                stack.pop()
                if parent is not None:
                    low[parent] = min(low[parent], low[v])
                    if parent == root:
                        root_children += 1
                    elif low[v] >= disc[parent]:
                        cuts.add(parent)
        if root_children > 1:
            cuts.add(root)
    return cuts


def _connected(adj, vertices):
    if not vertices:
        return True
    start = min(vertices)
    seen = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        for u in adj[v]:
            if u in vertices and u not in seen:
                seen.add(u)
                todo.append(u)
    return len(seen) == len(vertices)


def is_two_connected(g):
    """Connected, and still connected after deleting any one vertex."""
    if len(g.vertices) < 3:
        raise ValueError("2-connectivity is defined here for graphs with at least 3 vertices")
    return _connected(g.adjacency(), g.vertices) and not cut_vertices(g)


# -- loop walks ----------------------------------------------------------------

@dataclass(frozen=True)
class LoopWalk:
    sequence: tuple

    @property
    def enquirer(self):
        return self.sequence[0]

    @property
    def interior(self):
        return self.sequence[1:-1]

    def responders(self):
        """Distinct interior fleets in order of first visit."""
        return list(dict.fromkeys(self.interior))

    def __len__(self):
        return len(self.sequence)

    def validate(self, g):
        seq = self.sequence
        if len(seq) < 3:
            raise ValueError("a loop walk needs at least one responding fleet")
        if seq[0] != seq[-1]:
            raise ValueError("walk is not closed")
        if seq[0] in seq[1:-1]:
            raise ValueError("walk revisits the enquirer before closing")
        for u, v in zip(seq, seq[1:]):
            if not g.has_edge(u, v):
                raise ValueError(f"({u}, {v}) is not an edge")


def _bfs_path(adj, allowed, src, dst):
    """Shortest path src -> dst inside ``allowed``; ties break on smaller ids."""
    prev = {src: None}
    todo = deque([src])
    while todo:
        v = todo.popleft()
        if v == dst:
            break
        for u in adj[v]:
            if u in allowed and u not in prev:
                prev[u] = v
                todo.append(u)
    if dst not in prev:
        return None
    path = [dst]
    while path[-1] != src:
        path.append(prev[path[-1]])
    return path[::-1]


def _bfs_dist(adj, allowed, src):
    dist = {src: 0}
    todo = deque([src])
    while todo:
        v = todo.popleft()
        for u in adj[v]:
            if u in allowed and u not in dist:
                dist[u] = dist[v] + 1
                todo.append(u)
    return dist


def find_query_loop(g, enquirer, targets=None):
    """Closed walk from ``enquirer`` whose interior visits every target.

    The interior stays inside G - enquirer. It enters through the
    enquirer's neighbour nearest the first target, tours the targets in
    sorted order along shortest paths, and leaves through the nearest
    neighbour other than the entry one when the enquirer has two.
    Deterministic for a given graph.
    """
    if enquirer not in g.vertices:
        raise ValueError(f"enquirer {enquirer} is not a vertex")
    if targets is None:
        targets = g.vertices - {enquirer}
    targets = sorted(set(targets))
    if enquirer in targets:
        raise ValueError("the enquirer cannot be its own target")
    for t in targets:
        if t not in g.vertices:
            raise ValueError(f"target {t} is not a vertex")

    adj = g.adjacency()
    allowed = g.vertices - {enquirer}
    entries = [u for u in adj[enquirer] if u in allowed]
    if not entries:
        raise ValueError(f"enquirer {enquirer} has no neighbours")

    if targets:
        dist = _bfs_dist(adj, allowed, targets[0])
        reachable = [u for u in entries if u in dist]
        if not reachable:
            raise ValueError(f"target {targets[0]} unreachable without passing the enquirer")
        start = min(reachable, key=lambda u: (dist[u], u))
    else:
        start = entries[0]

    interior = [start]
    for t in targets:
        if t in interior:
            continue
        path = _bfs_path(adj, allowed, interior[-1], t)
        if path is None:
            raise ValueError(f"target {t} unreachable without passing the enquirer")
        interior.extend(path[1:])

    dist = _bfs_dist(adj, allowed, interior[-1])
    exits = [u for u in entries if u in dist]
    others = [u for u in exits if u != start] or exits
    end = min(others, key=lambda u: (dist[u], u))
    interior.extend(_bfs_path(adj, allowed, interior[-1], end)[1:])

    walk = LoopWalk((enquirer, *interior, enquirer))
    walk.validate(g)
    return walk


# -- distributed response ------------------------------------------------------

def multiplier_bound(pk, walk):
    """Upper end of the per-fleet multiplier range.

    The range is {1, ..., floor(N / (|L| - 2))}. If |L| - 2 divides N
    the top value is dropped, so the summed multiplier can never reach
    N exactly. With one responder this gives {1, ..., N-1}; otherwise
    only toy moduli trigger it.
    """
    m = len(walk) - 2
    if m < 1:
        raise ValueError("walk has no interior positions")
    bound = pk.n // m
    if pk.n % m == 0:
        bound -= 1
    if bound < 1:
        raise ValueError(f"floor(N / {m}) < 1: walk too long for this modulus")
    return bound


def fold_interests(pk, x, y, interests, bound, rng, multipliers=None):
    """One fleet's step: y <- y * prod_{i in interests} x_i^{omega_i} mod N^2."""
    for i in interests:
        omega = multipliers[i] if multipliers is not None else rng.randrange(1, bound + 1)
        y = paillier.add_cipher(pk, y, paillier.scalar_mul(pk, x[i], omega))
    return y


def dist_response(pk, x, walk, interests_by_fleet, rng=None, multipliers=None):
    """Accumulate the response along the walk.

    ``multipliers`` maps fleet -> {index: omega} to replay exact draws.
    Each distinct interior fleet contributes its interest set once.
    """
    rng = rng or random.SystemRandom()
    bound = multiplier_bound(pk, walk)
    y = Ciphertext(1)
    for fleet in walk.responders():
        interests = interests_by_fleet[fleet]
        if len(x) != interests.world.size:
            raise ValueError("query length does not match the world size")
        y = fold_interests(pk, x, y, interests, bound, rng,
                           None if multipliers is None else multipliers.get(fleet, {}))
    return Response(y)


# -- simulated message passing -------------------------------------------------

@dataclass(frozen=True)
class Scenario:
    world: World
    interests: dict  # fleet id -> InterestSet

    @classmethod
    def from_dict(cls, d):
        world = World(int(d["roads"]), int(d["slots"]))
        interests = {int(f["id"]): InterestSet(world, f.get("interests", []))
                     for f in d["fleets"]}
        return cls(world, interests)

    def to_dict(self):
        return {"roads": self.world.num_roads, "slots": self.world.num_slots,
                "fleets": [{"id": k, "interests": sorted(v.members)}
                           for k, v in sorted(self.interests.items())]}

    def interests_of(self, fleet):
        return self.interests.get(fleet, InterestSet(self.world))


def load_scenario(path):
    with open(path) as fh:
        return Scenario.from_dict(json.load(fh))


@dataclass
class FleetNode:
    id: int
    interests: InterestSet
    inbox: deque = field(default_factory=deque)
    outbox: deque = field(default_factory=deque)


@dataclass(frozen=True)
class Hop:
    src: int
    dst: int
    bytes: int
    elapsed_ns: int

    def to_dict(self):
        return {"from": self.src, "to": self.dst, "bytes": self.bytes,
                "elapsed_ns": self.elapsed_ns}


def write_transcript(path, hops):
    with open(path, "w") as fh:
        for hop in hops:
            fh.write(json.dumps(hop.to_dict()) + "\n")


def run_session(g, enquirer, w, scenario, key_bits=None, rng=None, keys=None, targets=None):
    """Run one enquiry end to end over in-process queues.

    Returns ``(answer, transcript)`` where the transcript lists one
    :class:`Hop` per edge traversed. Intermediate hops carry the encoded
    query plus the running response; the last hop carries the response only.
    Pass ``keys=(pk, sk)`` to skip key generation.
    """
    rng = rng or random.SystemRandom()
    if not is_two_connected(g):
        raise ValueError(f"graph is not 2-connected (cut vertices: {sorted(cut_vertices(g))})")
    if keys is None:
        if key_bits is None:
            raise ValueError("need key_bits or keys")
        keys = paillier.generate_keys(key_bits, rng)
    pk, sk = keys
    walk = find_query_loop(g, enquirer, targets)
    bound = multiplier_bound(pk, walk)
    nodes = {v: FleetNode(v, scenario.interests_of(v)) for v in g.vertices}

    transcript = []
    t0 = time.monotonic_ns()
    x = matchmaking.submit_query(pk, scenario.world, w, rng)
    y = Response(Ciphertext(1))
    folded = set()
    seq = walk.sequence
    for hop, (src, dst) in enumerate(zip(seq, seq[1:])):
        node = nodes[src]
        if src != enquirer:
            query_blob, resp_blob = node.inbox.popleft()
            x = matchmaking.decode_query(pk, query_blob)
            y = matchmaking.decode_response(pk, resp_blob)
            if src not in folded:
                folded.add(src)
                y = Response(fold_interests(pk, x, y.y, node.interests, bound, rng))
        last = hop == len(seq) - 2
        if last:
            payload = (None, matchmaking.encode_response(pk, y))
        else:
            payload = (matchmaking.encode_query(x), matchmaking.encode_response(pk, y))
        node.outbox.append(payload)
        nodes[dst].inbox.append(node.outbox.popleft())
        size = sum(len(p) for p in payload if p is not None)
        now = time.monotonic_ns()
        transcript.append(Hop(src, dst, size, now - t0))
        t0 = now

    _, resp_blob = nodes[enquirer].inbox.popleft()
    answer = matchmaking.interpret(sk, pk, matchmaking.decode_response(pk, resp_blob))
    return answer, transcript
