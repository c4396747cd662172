"""Greedy decomposition of a cycle-code pseudocodeword into weighted paths."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Tuple

import numpy as np

from .lattice import Color, CycleGraph

TOL = 1e-9
FALLBACK_WEIGHT = 1e-9


@dataclass(frozen=True)
class DecomposedPath:
    """A walk between two unsatisfied checks, in global lattice ids.

    ``vertices`` has one more entry than ``edges``; ``vertices[0]`` is the
    check the walk started from.
    """

    edges: Tuple[int, ...]
    vertices: Tuple[int, ...]
    weight: float
    color: Color

    @property
    def endpoints(self) -> FrozenSet[int]:
        return frozenset((self.vertices[0], self.vertices[-1]))

    def __len__(self) -> int:
        return len(self.edges)


@dataclass
class Decomposition:
    paths: List[DecomposedPath]
    residual: np.ndarray
    iterations: int
    stranded: Tuple[int, ...]  # checks (global ids) covered only by fallback paths


def _walk(graph: CycleGraph, w: np.ndarray, start: int, targets: set) -> Optional[Tuple[List[int], List[int]]]:
    """Follow the heaviest unused edge from ``start`` until a target is hit."""
    adj = graph.adjacency
    cur = start
    used = set()
    edges: List[int] = []
    verts = [start]
    while True:
        best = None
        for e, nb in adj[cur]:
            if e in used or w[e] <= TOL:
                continue
            if best is None or w[e] > w[best[0]] or (w[e] == w[best[0]] and e < best[0]):
                best = (e, nb)
        if best is None:
            return None
        e, cur = best
        used.add(e)
        edges.append(e)
        verts.append(cur)
        if cur in targets:
            return edges, verts


def decompose_full(omega, syndrome_C, graph: CycleGraph) -> Decomposition:
    """Run the decomposition loop and report paths, residual and loop count."""
    w = np.array(omega, dtype=float)
    syndrome_C = np.asarray(syndrome_C)
    if w.shape != (graph.n_edges,) or syndrome_C.shape != (graph.n_vertices,):
        raise ValueError("omega / syndrome do not match the cycle graph")
    unsatisfied = [int(j) for j in np.flatnonzero(syndrome_C)]
    J = list(unsatisfied)
    kept: List[Tuple[List[int], List[int], float]] = []
    iterations = 0

    while J:
        iterations += 1
        targets = set(J)
        best = None  # (cost, j, edges, verts, weight)
        dead = set()
        for j in J:
            walk = _walk(graph, w, j, targets)
            if walk is None:
                dead.add(j)
                continue
            edges, verts = walk
            wbar = float(min(w[e] for e in edges))
            cost = (1.0 - wbar) * len(edges)
            if best is None or cost < best[0]:
                best = (cost, j, edges, verts, wbar)
        if best is not None:
            _, j, edges, verts, wbar = best
            w[edges] -= wbar
            if verts[-1] != j:
                kept.append((edges, verts, wbar))
        J = [j for j in J if j not in dead]

    covered = {v for _, verts, _ in kept for v in (verts[0], verts[-1])}
    stranded = [j for j in unsatisfied if j not in covered]
    for edges, verts in _pair_stranded(graph, stranded, unsatisfied):
        kept.append((edges, verts, FALLBACK_WEIGHT))

    paths = [
        DecomposedPath(
            edges=tuple(int(graph.edges[e]) for e in edges),
            vertices=tuple(int(graph.vertices[v]) for v in verts),
            weight=wbar,
            color=graph.color,
        )
        for edges, verts, wbar in kept
    ]
    return Decomposition(
        paths=paths,
        residual=w,
        iterations=iterations,
        stranded=tuple(int(graph.vertices[j]) for j in stranded),
    )


def decompose(omega, syndrome_C, graph: CycleGraph) -> List[DecomposedPath]:
    return decompose_full(omega, syndrome_C, graph).paths


def _bfs_path(graph: CycleGraph, src: int, targets: set) -> Optional[Tuple[List[int], List[int]]]:
    prev = {src: None}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u in targets and u != src:
            edges, verts = [], [u]
            while prev[u] is not None:
                e, u = prev[u]
                edges.append(e)
                verts.append(u)
            return edges[::-1], verts[::-1]
        for e, nb in graph.adjacency[u]:
            if nb not in prev:
                prev[nb] = (e, u)
                queue.append(nb)
    return None


def _pair_stranded(graph: CycleGraph, stranded: List[int], unsatisfied: List[int]):
    """Shortest paths joining stranded checks pairwise, nearest first.

    A leftover odd check is joined to its nearest other unsatisfied check.
    """
    open_ = list(stranded)
    while open_:
        src = open_.pop(0)
        walk = _bfs_path(graph, src, set(open_))
        if walk is None:
            walk = _bfs_path(graph, src, set(unsatisfied) - {src})
            if walk is None:
                continue
        else:
            open_.remove(walk[1][-1])
        yield walk
