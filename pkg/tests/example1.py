"""The labelled local patch of the worked 72-qubit example, embedded in our lattice.

Labels follow the worked example; ``embed`` finds a color-preserving copy of
the patch in ``TorusLattice(2)`` and returns label -> vertex id.
"""

import networkx as nx
from networkx.algorithms import isomorphism

from colorcode_pcwd.lattice import Color

COLORS = {
    **{v: Color.R for v in (2, 5, 6, 8, 13)},
    **{v: Color.G for v in (1, 4, 7, 10, 12)},
    **{v: Color.B for v in (3, 9, 11, 14, 15)},
}

FACES = [
    (3, 4, 5), (4, 8, 9), (5, 9, 10), (12, 13, 15), (1, 2, 3), (1, 2, 15),
    (6, 11, 12), (6, 10, 11), (7, 8, 14), (7, 13, 14), (4, 5, 9),
]

ERROR_FACES = [(3, 4, 5), (4, 8, 9), (5, 9, 10), (12, 13, 15)]
SYNDROME = [3, 8, 10, 12, 13, 15]

# (path as a vertex walk, weight, endpoint set, edge color)
PATHS = [
    ((12, 15), 0.7405, {12, 15}, Color.R),
    ((3, 1, 15), 0.2196, {3, 15}, Color.R),
    ((10, 11, 12), 0.2196, {10, 12}, Color.R),
    ((3, 4, 9, 10), 0.2002, {3, 10}, Color.R),
    ((12, 13), 0.7405, {12, 13}, Color.B),
    ((8, 7, 13), 0.2196, {8, 13}, Color.B),
    ((10, 6, 12), 0.2196, {10, 12}, Color.B),
    ((8, 4, 5, 10), 0.2002, {8, 10}, Color.B),
    ((13, 15), 0.7405, {13, 15}, Color.G),
    ((3, 2, 15), 0.2196, {3, 15}, Color.G),
    ((8, 14, 13), 0.2196, {8, 13}, Color.G),
    ((3, 5, 9, 8), 0.2002, {3, 8}, Color.G),
]

# generalized paths of the worked example: (faces, cost, unsatisfied checks)
CANDIDATES = [
    ([(1, 2, 3), (1, 2, 15)], 2, {3, 15}),
    ([(6, 11, 12), (6, 10, 11)], 2, {10, 12}),
    ([(7, 8, 14), (7, 13, 14)], 2, {8, 13}),
    ([(12, 13, 15)], 1, {12, 13, 15}),
    ([(3, 4, 5), (4, 8, 9), (5, 9, 10)], 3, {3, 8, 10}),
]


def pattern_graph():
    g = nx.Graph()
    for v, c in COLORS.items():
        g.add_node(v, color=int(c))
    for a, b, c in FACES:
        g.add_edges_from([(a, b), (a, c), (b, c)])
    for walk, *_ in PATHS:
        g.add_edges_from(zip(walk, walk[1:]))
    return g


def lattice_graph(lat):
    g = nx.Graph()
    for v in range(lat.n_vertices):
        g.add_node(v, color=int(lat.vertex_color[v]))
    g.add_edges_from((int(a), int(b)) for a, b in lat.edge_vertices)
    return g


def embed(lat):
    matcher = isomorphism.GraphMatcher(
        lattice_graph(lat), pattern_graph(), node_match=lambda a, b: a["color"] == b["color"]
    )
    for mapping in matcher.subgraph_monomorphisms_iter():
        label = {pat: host for host, pat in mapping.items()}
        faces = {frozenset(map(int, f)): i for i, f in enumerate(lat.face_vertices)}
        if all(frozenset(label[x] for x in f) in faces for f in FACES):
            return label
    raise LookupError("patch does not embed")


def face(lat, label, triple):
    target = {label[x] for x in triple}
    for i, f in enumerate(lat.face_vertices):
        if set(map(int, f)) == target:
            return i
    raise KeyError(triple)


def edge(lat, label, a, b):
    return lat.edge(label[a], label[b])
