"""Independent graph oracles shared by the network tests."""

import itertools

from fleetmatch.network import CommGraph


def bfs_connected(vertices, edges):
    vertices = set(vertices)
    if not vertices:
        return True
    start = next(iter(vertices))
    seen, todo = {start}, [start]
    while todo:
        v = todo.pop()
        for a, b in edges:
            for u, w in ((a, b), (b, a)):
                if u == v and w in vertices and w not in seen:
                    seen.add(w)
                    todo.append(w)
    return seen == vertices


def deletion_oracle(g):
    """2-connected iff connected and connected after every single-vertex deletion."""
    edges = [tuple(e) for e in g.edges]
    if not bfs_connected(g.vertices, edges):
        return False
    for v in g.vertices:
        rest = g.vertices - {v}
        if not bfs_connected(rest, [e for e in edges if v not in e]):
            return False
    return True


def random_graph(rng, n, p):
    verts = range(1, n + 1)
    edges = [e for e in itertools.combinations(verts, 2) if rng.random() < p]
    return CommGraph(verts, edges)


def random_two_connected(rng, lo=4, hi=6):
    while True:
        g = random_graph(rng, rng.randint(lo, hi), rng.uniform(0.4, 0.9))
        if deletion_oracle(g):
            return g


def cycle(n):
    return CommGraph(range(1, n + 1), [(i, i % n + 1) for i in range(1, n + 1)])


def path(n):
    return CommGraph(range(1, n + 1), [(i, i + 1) for i in range(1, n)])
