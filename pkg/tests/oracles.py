"""Independent brute-force oracles; nothing here imports the code under test's algorithms."""

from __future__ import annotations

import math
import random
from collections import deque


def subsets_closure(facets):
    """All non-empty subsets of the given vertex sets, by bitmask enumeration."""
    out = set()
    for f in facets:
        f = sorted(f)
        for mask in range(1, 1 << len(f)):
            out.add(tuple(v for i, v in enumerate(f) if mask >> i & 1))
    return out


def all_cliques(edges):
    verts = sorted({v for e in edges for v in e})
    adj = {(min(a, b), max(a, b)) for a, b in edges}
    out = set()
    for mask in range(1, 1 << len(verts)):
        s = tuple(v for i, v in enumerate(verts) if mask >> i & 1)
        if all((a, b) in adj for i, a in enumerate(s) for b in s[i + 1:]):
            out.add(s)
    return out


def f_vector(simplices):
    d = max(len(s) for s in simplices)
    return tuple(sum(1 for s in simplices if len(s) == k) for k in range(1, d + 1))


def expand(*polys):
    out = [1]
    for p in polys:
        new = [0] * (len(out) + len(p) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(p):
                new[i + j] += a * b
        out = new
    return tuple(out)


def bfs(adjacency, src):
    dist = {src: 0}
    todo = deque([src])
    while todo:
        u = todo.popleft()
        for v in adjacency[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                todo.append(v)
    return dist


def facet_adjacency(facets):
    """Facets sharing all but one vertex."""
    adj = {f: [] for f in facets}
    for f in facets:
        for g in facets:
            if f != g and len(set(f) & set(g)) == len(f) - 1:
                adj[f].append(g)
    return adj


def apex_swap(facets, frame):
    """Partner frame computed from the facet list directly."""
    wall = set(frame[1:])
    hosts = [f for f in facets if wall <= set(f)]
    for f in hosts:
        (apex,) = set(f) - wall
        if apex != frame[0]:
            return (apex,) + tuple(frame[1:])
    return tuple(frame)


def single_particle_map(facets, frames):
    """T on a lone positive particle: cross the wall, then rotate left by -1."""
    out = {}
    for p in frames:
        x = apex_swap(facets, p)
        out[p] = x[-1:] + x[:-1]
    return out


def cycles(perm):
    seen, out = set(), []
    for p in perm:
        if p in seen:
            continue
        cyc = [p]
        seen.add(p)
        x = perm[p]
        while x != p:
            cyc.append(x)
            seen.add(x)
            x = perm[x]
        out.append(cyc)
    return out


def order(perm):
    return math.lcm(*(len(c) for c in cycles(perm)))


def random_configuration(rng: random.Random, frames, max_particles=6, min_particles=0):
    from framegas.dynamics import Configuration
    n = rng.randint(min_particles, max_particles)
    parts = [(rng.choice((1, -1)), rng.choice(frames)) for _ in range(n)]
    return Configuration.from_particles(parts)


def labeled_step(facets, particles, mode="rotation"):
    """One step on a list of (sign, frame), keeping list order, written from the rules alone."""
    def cross(ps):
        return [(-s, apex_swap(facets, p)) for s, p in ps]

    def net(ps, signed):
        tally = {}
        for s, p in ps:
            key = frozenset(p)
            tally[key] = tally.get(key, 0) + (s if signed else 1)
        return tally

    if mode == "rotation":
        mid = cross(particles)
        t = net(mid, True)
        return [(-s, p[t[frozenset(p)] % len(p):] + p[:t[frozenset(p)] % len(p)]) for s, p in mid]
    t = net(particles, False)
    return cross([(s, tuple(reversed(p)) if t[frozenset(p)] % 2 else p) for s, p in particles])
