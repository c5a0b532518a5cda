#!/usr/bin/env python3
"""Regenerates crates/core/data/catalog/catalog.json and its checksum.

Platonic graphs come from networkx; Archimedean graphs are derived from
them by truncation, ambo, expansion and snub on the combinatorial
embedding, then cross-checked for isomorphism against graphs built from
vertex coordinates. Rotations are networkx planar embeddings.
"""
import hashlib
import itertools
import json
import math
import pathlib
import sys

import networkx as nx

OUT = pathlib.Path(__file__).resolve().parent.parent / "crates/core/data/catalog"


def rotation(g):
    ok, emb = nx.check_planarity(g)
    assert ok
    return {v: list(reversed(list(emb.neighbors_cw_order(v)))) for v in g}


def faces(rot):
    # successor of dart (u, v) is (v, w) with w following u in rot[v]
    seen, out = set(), []
    for u in rot:
        for v in rot[u]:
            if (u, v) in seen:
                continue
            face, d = [], (u, v)
            while d not in seen:
                seen.add(d)
                face.append(d[0])
                a, b = d
                nb = rot[b]
                d = (b, nb[(nb.index(a) + 1) % len(nb)])
            out.append(face)
    return out


def relabel(g):
    return nx.convert_node_labels_to_integers(g, ordering="sorted")


def truncate(g):
    rot = rotation(g)
    h = nx.Graph()
    for u in rot:
        nb = rot[u]
        for i, v in enumerate(nb):
            h.add_edge((u, v), (v, u))
            h.add_edge((u, v), (u, nb[(i + 1) % len(nb)]))
    return relabel(h)


def ambo(g):
    rot = rotation(g)
    h = nx.Graph()
    for u in rot:
        nb = rot[u]
        for i, v in enumerate(nb):
            w = nb[(i + 1) % len(nb)]
            h.add_edge(frozenset((u, v)), frozenset((u, w)))
    return relabel(nx.relabel_nodes(h, {x: tuple(sorted(x)) for x in h}))


def corners(g, snub):
    rot = rotation(g)
    fs = faces(rot)
    face_of = {}
    for i, f in enumerate(fs):
        for j, u in enumerate(f):
            face_of[(u, f[(j + 1) % len(f)])] = i
    h = nx.Graph()
    for i, f in enumerate(fs):
        for j, u in enumerate(f):
            h.add_edge((i, u), (i, f[(j + 1) % len(f)]))
    for (u, v), i in face_of.items():
        k = face_of[(v, u)]
        h.add_edge((i, u), (k, u))
        if snub:
            h.add_edge((i, u), (k, v))
    return relabel(h)


def expand(g):
    return corners(g, snub=False)


def snub(g):
    return corners(g, snub=True)


def from_points(points):
    pts = [tuple(p) for p in points]
    pts = sorted(set(tuple(round(x, 9) for x in p) for p in pts))
    dist = lambda a, b: math.dist(a, b)
    m = min(dist(a, b) for a, b in itertools.combinations(pts, 2))
    g = nx.Graph()
    g.add_nodes_from(range(len(pts)))
    for i, j in itertools.combinations(range(len(pts)), 2):
        if abs(dist(pts[i], pts[j]) - m) < 1e-6:
            g.add_edge(i, j)
    return g


def signs(p):
    for s in itertools.product((1, -1), repeat=3):
        yield tuple(a * b for a, b in zip(s, p))


def all_perms(p):
    for q in itertools.permutations(p):
        yield from signs(q)


def even_perms(p):
    for i in range(3):
        yield from signs(p[i:] + p[:i])


PHI = (1 + 5 ** 0.5) / 2
R2 = 2 ** 0.5
TRIB = 1.839286755214161


def snub_cube_points():
    out = []
    for q in itertools.permutations(range(3)):
        parity = sum(1 for a, b in itertools.combinations(q, 2) if a > b) % 2
        for s in itertools.product((1, -1), repeat=3):
            plus = s.count(1)
            if plus % 2 == parity:
                base = (1, 1 / TRIB, TRIB)
                out.append(tuple(s[k] * base[q[k]] for k in range(3)))
    return out


COORDINATE_CHECKS = {
    "(3,6,6)-solid": [p for p in all_perms((3, 1, 1)) if sum(x < 0 for x in p) % 2 == 0],
    "(3,4,3,4)-solid": list(all_perms((1, 1, 0))),
    "(3,8,8)-solid": list(all_perms((R2 - 1, 1, 1))),
    "(4,6,6)-solid": list(all_perms((0, 1, 2))),
    "(3,4,4,4)-solid": list(all_perms((1, 1, 1 + R2))),
    "(4,6,8)-solid": list(all_perms((1, 1 + R2, 1 + 2 * R2))),
    "(3,3,3,3,4)-solid": snub_cube_points(),
    "(3,5,3,5)-solid": list(all_perms((0, 0, PHI))) + list(even_perms((0.5, PHI / 2, PHI ** 2 / 2))),
    "(3,10,10)-solid": [p for t in [(0, 1 / PHI, 2 + PHI), (1 / PHI, PHI, 2 * PHI), (PHI, 2, PHI + 1)] for p in even_perms(t)],
    "(5,6,6)-solid": [p for t in [(0, 1, 3 * PHI), (1, 2 + PHI, 2 * PHI), (PHI, 2, PHI ** 3)] for p in even_perms(t)],
    "(3,4,5,4)-solid": [p for t in [(1, 1, PHI ** 3), (PHI ** 2, PHI, 2 * PHI), (2 + PHI, 0, PHI ** 2)] for p in even_perms(t)],
    "(4,6,10)-solid": [p for t in [(1 / PHI, 1 / PHI, 3 + PHI), (2 / PHI, PHI, 1 + 2 * PHI), (1 / PHI, PHI ** 2, -1 + 3 * PHI), (2 * PHI - 1, 2, 2 + PHI), (PHI, 3, 2 * PHI)] for p in even_perms(t)],
}


def layered_rhombicuboctahedron(shift):
    """Square cupola, octagonal prism, square cupola; `shift` rotates the
    bottom cupola by 45 degrees."""
    g = nx.Graph()
    T = [("T", j) for j in range(4)]
    U = [("U", i) for i in range(8)]
    L = [("L", i) for i in range(8)]
    B = [("B", j) for j in range(4)]
    for j in range(4):
        g.add_edge(T[j], T[(j + 1) % 4])
        g.add_edge(B[j], B[(j + 1) % 4])
        g.add_edge(T[j], U[2 * j])
        g.add_edge(T[j], U[2 * j + 1])
        g.add_edge(B[j], L[(2 * j + shift) % 8])
        g.add_edge(B[j], L[(2 * j + 1 + shift) % 8])
    for i in range(8):
        g.add_edge(U[i], U[(i + 1) % 8])
        g.add_edge(L[i], L[(i + 1) % 8])
        g.add_edge(U[i], L[i])
    return relabel(nx.relabel_nodes(g, {v: f"{v[0]}{v[1]}" for v in g}))


def symbol_of(rot, fs, v):
    length = {}
    for f in fs:
        for j, u in enumerate(f):
            length[(u, f[(j + 1) % len(f)])] = len(f)
    r = [length[(v, w)] for w in rot[v]]
    cands = []
    for seq in (r, r[::-1]):
        for i in range(len(seq)):
            cands.append(tuple(seq[i:] + seq[:i]))
    return min(cands)


def entry(name, g, symbol, walk_regular=True):
    g = relabel(g)
    rot = rotation(g)
    fs = faces(rot)
    n, e = g.number_of_nodes(), g.number_of_edges()
    assert n - e + len(fs) == 2, name
    syms = {symbol_of(rot, fs, v) for v in g}
    assert syms == {tuple(symbol)}, (name, syms)
    assert nx.node_connectivity(g) >= 3, name
    return {
        "name": name,
        "n": n,
        "edges": sorted([min(u, v), max(u, v)] for u, v in g.edges()),
        "rotation": [rot[v] for v in range(n)],
        "expected_symbol": list(symbol),
        "expected_walk_regular": walk_regular,
    }


def main():
    T = nx.tetrahedral_graph()
    C = nx.cubical_graph()
    O = nx.octahedral_graph()
    D = nx.dodecahedral_graph()
    I = nx.icosahedral_graph()
    solids = [
        ("tetrahedron", T, (3, 3, 3)),
        ("cube", C, (4, 4, 4)),
        ("octahedron", O, (3, 3, 3, 3)),
        ("dodecahedron", D, (5, 5, 5)),
        ("icosahedron", I, (3, 3, 3, 3, 3)),
        ("(3,6,6)-solid", truncate(T), (3, 6, 6)),
        ("(3,4,3,4)-solid", ambo(C), (3, 4, 3, 4)),
        ("(3,8,8)-solid", truncate(C), (3, 8, 8)),
        ("(4,6,6)-solid", truncate(O), (4, 6, 6)),
        ("(3,4,4,4)-solid", expand(C), (3, 4, 4, 4)),
        ("(4,6,8)-solid", truncate(ambo(C)), (4, 6, 8)),
        ("(3,3,3,3,4)-solid", snub(C), (3, 3, 3, 3, 4)),
        ("(3,5,3,5)-solid", ambo(D), (3, 5, 3, 5)),
        ("(3,10,10)-solid", truncate(D), (3, 10, 10)),
        ("(5,6,6)-solid", truncate(I), (5, 6, 6)),
        ("(3,4,5,4)-solid", expand(D), (3, 4, 5, 4)),
        ("(4,6,10)-solid", truncate(ambo(D)), (4, 6, 10)),
        ("(3,3,3,3,5)-solid", snub(D), (3, 3, 3, 3, 5)),
    ]
    for name, g, _ in solids:
        if name in COORDINATE_CHECKS:
            assert nx.is_isomorphic(g, from_points(COORDINATE_CHECKS[name])), name
    assert nx.is_isomorphic(layered_rhombicuboctahedron(0), expand(C))
    twisted = layered_rhombicuboctahedron(1)
    assert not nx.is_isomorphic(twisted, expand(C))
    entries = [entry(name, g, s) for name, g, s in solids]
    entries.append(entry("twisted-(3,4,4,4)", twisted, (3, 4, 4, 4), walk_regular=False))
    text = "[\n" + ",\n".join(json.dumps(e, separators=(",", ":")) for e in entries) + "\n]\n"
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "catalog.json").write_text(text)
    digest = hashlib.sha256(text.encode()).hexdigest()
    (OUT / "catalog.sha256").write_text(f"{digest}  catalog.json\n")
    print(f"wrote {len(entries)} entries, sha256 {digest}", file=sys.stderr)


if __name__ == "__main__":
    main()
