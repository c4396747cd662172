"""The 3-colored triangulation of the torus behind the hexagonal color code.

Vertices are the sites ``(r, c)`` of a ``3L x 3L`` periodic grid; each grid
cell is cut along the ``(r, c+1)``--``(r+1, c)`` diagonal into an "up" and a
"down" triangle. Qubits live on the ``18 L^2`` triangles (faces), X checks on
the ``9 L^2`` vertices. Vertex ``(r, c)`` has color ``(c - r) mod 3`` and every
edge takes the one color that neither endpoint has.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Dict, List, Tuple

import numpy as np

from . import gf2


class Color(enum.IntEnum):
    R = 0
    G = 1
    B = 2


# Neighbour offsets in rotational order; face k of a vertex sits between
# neighbours k and k+1.
_ROTATION = ((0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1), (1, 0))


@dataclass(frozen=True)
class CycleGraph:
    """Subgraph of the triangulation induced by the edges of one color."""

    color: Color
    vertices: np.ndarray  # global vertex ids, sorted
    edges: np.ndarray  # global edge ids, sorted
    H: np.ndarray  # vertex-edge incidence, len(vertices) x len(edges)
    M: np.ndarray  # edge-face incidence, len(edges) x n_faces
    adjacency: Tuple[Tuple[Tuple[int, int], ...], ...]  # local vertex -> ((local edge, local nbr), ...)
    vertex_local: Dict[int, int] = field(repr=False)
    edge_local: Dict[int, int] = field(repr=False)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)


class TorusLattice:
    """Colored triangulated torus for a given ``L`` (immutable after build)."""

    def __init__(self, L: int):
        if int(L) != L or L < 1:
            raise ValueError(f"L must be a positive integer, got {L!r}")
        self.L = L = int(L)
        N = self.N = 3 * L
        self.n_vertices = N * N
        self.n_faces = 2 * N * N

        self.vertex_color = np.array(
            [(c - r) % 3 for r in range(N) for c in range(N)], dtype=np.int8
        )

        faces = []
        for r in range(N):
            for c in range(N):
                faces.append((self.vid(r, c), self.vid(r, c + 1), self.vid(r + 1, c)))
                faces.append((self.vid(r, c + 1), self.vid(r + 1, c), self.vid(r + 1, c + 1)))
        self.face_vertices = np.array([sorted(f) for f in faces], dtype=np.int64)

        pairs = set()
        for r in range(N):
            for c in range(N):
                for a, b in (((r, c), (r, c + 1)), ((r, c), (r + 1, c)), ((r, c + 1), (r + 1, c))):
                    u, v = self.vid(*a), self.vid(*b)
                    pairs.add((min(u, v), max(u, v)))
        self.edge_vertices = np.array(sorted(pairs), dtype=np.int64)
        self.edge_index: Dict[Tuple[int, int], int] = {
            (int(u), int(v)): i for i, (u, v) in enumerate(self.edge_vertices)
        }
        self.n_edges = len(self.edge_vertices)
        self.edge_color = np.array(
            [3 - self.vertex_color[u] - self.vertex_color[v] for u, v in self.edge_vertices],
            dtype=np.int8,
        )

        # face -> edge of each color
        self.face_edges = np.zeros((self.n_faces, 3), dtype=np.int64)
        for f, (a, b, c) in enumerate(self.face_vertices):
            for u, v in ((a, b), (a, c), (b, c)):
                e = self.edge(u, v)
                self.face_edges[f, self.edge_color[e]] = e

        # rotation system around each vertex
        rot_edges = np.zeros((self.n_vertices, 6), dtype=np.int64)
        rot_faces = np.zeros((self.n_vertices, 6), dtype=np.int64)
        for r in range(N):
            for c in range(N):
                u = self.vid(r, c)
                for k, (dr, dc) in enumerate(_ROTATION):
                    rot_edges[u, k] = self.edge(u, self.vid(r + dr, c + dc))
                rot_faces[u] = [
                    self.face_id(r - 1, c, 1),
                    self.face_id(r - 1, c, 0),
                    self.face_id(r - 1, c - 1, 1),
                    self.face_id(r, c - 1, 0),
                    self.face_id(r, c - 1, 1),
                    self.face_id(r, c, 0),
                ]
        self.rot_edges = rot_edges
        self.rot_faces = rot_faces
        self._rot_pos = [{int(e): k for k, e in enumerate(row)} for row in rot_edges]

    def __repr__(self) -> str:
        return f"TorusLattice(L={self.L})"

    # -- indexing ---------------------------------------------------------

    def vid(self, r: int, c: int) -> int:
        return (r % self.N) * self.N + (c % self.N)

    def coords(self, v: int) -> Tuple[int, int]:
        return divmod(int(v), self.N)

    def face_id(self, r: int, c: int, down: int) -> int:
        return 2 * self.vid(r, c) + down

    def edge(self, u: int, v: int) -> int:
        u, v = int(u), int(v)
        return self.edge_index[(u, v) if u < v else (v, u)]

    def other_end(self, e: int, u: int) -> int:
        a, b = self.edge_vertices[e]
        return int(b if a == u else a)

    def rotation_position(self, u: int, e: int) -> int:
        """Position (0..5) of edge ``e`` in the rotation around vertex ``u``."""
        try:
            return self._rot_pos[u][int(e)]
        except KeyError:
            raise ValueError(f"edge {e} is not incident on vertex {u}") from None

    # -- matrices ---------------------------------------------------------

    @cached_property
    def H(self) -> np.ndarray:
        """Vertex-face incidence matrix (``9L^2 x 18L^2``)."""
        H = np.zeros((self.n_vertices, self.n_faces), dtype=np.uint8)
        for f, vs in enumerate(self.face_vertices):
            H[vs, f] = 1
        H.setflags(write=False)
        return H

    @cached_property
    def rowspace(self) -> gf2.RowSpace:
        return gf2.RowSpace(self.H)

    @cached_property
    def projections(self) -> Tuple[CycleGraph, CycleGraph, CycleGraph]:
        return tuple(self._projection(C) for C in Color)

    def _projection(self, C: Color) -> CycleGraph:
        vertices = np.flatnonzero(self.vertex_color != C)
        edges = np.flatnonzero(self.edge_color == C)
        vloc = {int(v): i for i, v in enumerate(vertices)}
        eloc = {int(e): i for i, e in enumerate(edges)}
        H = np.zeros((len(vertices), len(edges)), dtype=np.uint8)
        adj: List[List[Tuple[int, int]]] = [[] for _ in vertices]
        for j, e in enumerate(edges):
            u, v = (int(x) for x in self.edge_vertices[e])
            H[vloc[u], j] = H[vloc[v], j] = 1
            adj[vloc[u]].append((j, vloc[v]))
            adj[vloc[v]].append((j, vloc[u]))
        M = np.zeros((len(edges), self.n_faces), dtype=np.uint8)
        for f in range(self.n_faces):
            M[eloc[int(self.face_edges[f, C])], f] = 1
        for a in (H, M):
            a.setflags(write=False)
        return CycleGraph(
            color=C,
            vertices=vertices,
            edges=edges,
            H=H,
            M=M,
            adjacency=tuple(tuple(a) for a in adj),
            vertex_local=vloc,
            edge_local=eloc,
        )

    def cycle_projection(self, C: Color) -> CycleGraph:
        return self.projections[Color(C)]

    def syndrome(self, v: np.ndarray) -> np.ndarray:
        return gf2.mat_vec(self.H, v)

    def lift(self, v: np.ndarray) -> np.ndarray:
        """Concatenation of ``f_C(v) = M_C v`` for C = R, G, B."""
        v = np.asarray(v)
        if v.shape != (self.n_faces,):
            raise ValueError(f"expected a face vector of length {self.n_faces}, got {v.shape}")
        return np.concatenate([gf2.mat_vec(g.M, v) for g in self.projections])

    def restrict_syndrome(self, s: np.ndarray, C: Color) -> np.ndarray:
        s = np.asarray(s)
        if s.shape != (self.n_vertices,):
            raise ValueError(f"expected a syndrome of length {self.n_vertices}, got {s.shape}")
        return s[self.cycle_projection(C).vertices].astype(np.uint8)

    def face_indicator(self, faces) -> np.ndarray:
        v = np.zeros(self.n_faces, dtype=np.uint8)
        for f in faces:
            v[f] ^= 1
        return v

    def is_logical_success(self, error: np.ndarray, estimate: np.ndarray) -> bool:
        """True iff ``error + estimate`` is a stabilizer (row span of ``H``)."""
        if len(error) != len(estimate):
            raise ValueError("error and estimate lengths differ")
        residual = np.bitwise_xor(np.asarray(error, dtype=np.uint8), np.asarray(estimate, dtype=np.uint8))
        return self.rowspace.contains(residual)

    # -- export -----------------------------------------------------------

    def write_matrices(self, out_dir) -> List[Path]:
        """Write ``H`` and each ``H_C`` as 0/1 text files plus a metadata file."""
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        written = [write_matrix(out / "H.txt", self.H)]
        for g in self.projections:
            written.append(write_matrix(out / f"H_{g.color.name}.txt", g.H))
        meta = out / "meta.txt"
        meta.write_text(
            f"L={self.L}\nn={self.n_faces}\nchecks={self.n_vertices}\n"
            f"edges={self.n_edges}\nrank_H={self.rowspace.rank}\n"
            f"k={self.n_faces - 2 * self.rowspace.rank}\n"
        )
        written.append(meta)
        return written


def write_matrix(path, m: np.ndarray) -> Path:
    path = Path(path)
    path.write_text("".join("".join("1" if b else "0" for b in row) + "\n" for row in np.asarray(m)))
    return path


def read_matrix(path) -> np.ndarray:
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    return np.array([[int(ch) for ch in ln] for ln in lines], dtype=np.uint8)


@lru_cache(maxsize=None)
def build(L: int) -> TorusLattice:
    return TorusLattice(L)
