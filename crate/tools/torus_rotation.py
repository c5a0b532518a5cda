#!/usr/bin/env python3
"""Finds a torus embedding (n - e + f = 0) of a graph given in graph6 by
local search over rotation systems, and prints it as JSON."""
import json
import random
import sys

import networkx as nx

sys.path.insert(0, str(__import__("pathlib").Path(__file__).resolve().parent))
from gen_catalog import faces  # noqa: E402


def search(g, target, seed=1):
    rng = random.Random(seed)
    rot = {v: sorted(g[v]) for v in g}
    for v in rot:
        rng.shuffle(rot[v])
    best = len(faces(rot))
    while best < target:
        v = rng.choice(list(rot))
        old = rot[v]
        new = old[:]
        i, j = rng.sample(range(len(new)), 2)
        new[i], new[j] = new[j], new[i]
        rot[v] = new
        f = len(faces(rot))
        if f >= best or rng.random() < 0.02:
            best = max(best, f) if f >= best else f
        else:
            rot[v] = old
    return rot


def main():
    line = sys.argv[1]
    g = nx.from_graph6_bytes(line.encode())
    n, e = g.number_of_nodes(), g.number_of_edges()
    target = e - n
    rot = search(g, target)
    assert n - e + len(faces(rot)) == 0
    print(json.dumps({"graph6": line, "genus": 1, "rotation": [rot[v] for v in range(n)]}))


if __name__ == "__main__":
    main()
