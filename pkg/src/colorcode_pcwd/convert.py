"""Turn decomposed cycle-code paths into face sets ("generalized paths").

Two edges meeting at a vertex are joined by the fan of faces swept between
them in the rotation around that vertex. Same-color paths are cut into
length-2 pieces and replaced piece by piece; a pair of odd paths with three
distinct, differently colored endpoints is joined through the fan at the
endpoint they share.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, List, Sequence, Tuple

import numpy as np

from .lattice import TorusLattice
from .pcwd import DecomposedPath


class ConversionError(RuntimeError):
    """A converted face set does not produce its advertised syndrome."""


@dataclass(frozen=True)
class GeneralizedPath:
    support: FrozenSet[int]  # faces
    unsatisfied: FrozenSet[int]  # checks flipped by the support
    origin: Tuple[int, ...]  # indices of the source paths

    @property
    def cost(self) -> int:
        return len(self.support)


def _fan_sides(lat: TorusLattice, u: int, a: int, b: int) -> Tuple[List[int], List[int]]:
    if a == b:
        raise ValueError("fan needs two distinct edges")
    i = lat.rotation_position(u, a)
    j = lat.rotation_position(u, b)
    faces = lat.rot_faces[u]
    fwd = (j - i) % 6
    forward = [int(faces[(i + k) % 6]) for k in range(fwd)]
    backward = [int(faces[(j + k) % 6]) for k in range(6 - fwd)]
    return forward, backward


def fan_between(lat: TorusLattice, u: int, a: int, b: int) -> FrozenSet[int]:
    """Faces between edges ``a`` and ``b`` around vertex ``u`` on the smaller side.

    For opposite edges (3 faces either way) the side swept from ``a`` to ``b``
    in the rotational direction is returned.
    """
    forward, backward = _fan_sides(lat, u, a, b)
    return frozenset(forward if len(forward) <= len(backward) else backward)


def _xor(*sets) -> FrozenSet[int]:
    out = set()
    for s in sets:
        out ^= set(s)
    return frozenset(out)


def _even_walk_faces(lat: TorusLattice, edges: Sequence[int], verts: Sequence[int]) -> FrozenSet[int]:
    # edges[2k], edges[2k+1] meet at verts[2k+1]
    acc: FrozenSet[int] = frozenset()
    for k in range(0, len(edges), 2):
        acc = _xor(acc, fan_between(lat, verts[k + 1], edges[k], edges[k + 1]))
    return acc


def _checks_of(lat: TorusLattice, faces) -> FrozenSet[int]:
    return frozenset(int(x) for x in np.flatnonzero(lat.syndrome(lat.face_indicator(faces))))


def convert_same_color(lat: TorusLattice, p: DecomposedPath, origin: Tuple[int, ...] = ()) -> GeneralizedPath:
    if len(p) % 2:
        raise ValueError(f"same-color conversion needs an even-length path, got length {len(p)}")
    support = _even_walk_faces(lat, p.edges, p.vertices)
    return GeneralizedPath(support, p.endpoints, origin)


def _oriented_away_from(p: DecomposedPath, shared: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    if p.vertices[-1] == shared:
        return p.edges, p.vertices
    return p.edges[::-1], p.vertices[::-1]


def convert_pair(
    lat: TorusLattice, p: DecomposedPath, q: DecomposedPath, origin: Tuple[int, ...] = ()
) -> GeneralizedPath:
    ends = p.endpoints | q.endpoints
    shared = p.endpoints & q.endpoints
    colors = {int(lat.vertex_color[v]) for v in ends}
    if len(ends) != 3 or len(shared) != 1 or len(colors) != 3:
        raise ValueError("paths must share exactly one endpoint and span three colored checks")
    if len(p) % 2 == 0 or len(q) % 2 == 0:
        raise ValueError("pair conversion needs two odd-length paths")
    (u,) = shared
    pe, pv = _oriented_away_from(p, u)
    qe, qv = _oriented_away_from(q, u)
    prefix = _xor(_even_walk_faces(lat, pe[:-1], pv[:-1]), _even_walk_faces(lat, qe[:-1], qv[:-1]))
    a, b = pe[-1], qe[-1]
    if a == b:
        support = prefix
    else:
        forward, backward = _fan_sides(lat, u, a, b)
        options = [_xor(prefix, side) for side in (forward, backward) if len(side) <= 3]
        support = min(options, key=len)  # stable: forward side wins ties
    return GeneralizedPath(support, frozenset(ends), origin)


def pair_admissible(lat: TorusLattice, p: DecomposedPath, q: DecomposedPath) -> bool:
    sp, sq = p.endpoints, q.endpoints
    union = sp | sq
    color = lat.vertex_color
    return (
        len({color[v] for v in sp}) == 2
        and len({color[v] for v in sq}) == 2
        and len(union) == 3
        and len({color[v] for v in union}) == 3
    )


def enumerate_candidates(lat: TorusLattice, paths: Sequence[DecomposedPath]) -> List[GeneralizedPath]:
    """Every same-color path and every admissible pair, deduplicated by support.

    Each candidate's syndrome is recomputed from ``H`` and must equal its
    endpoint set.
    """
    seen = set()
    out: List[GeneralizedPath] = []
    color = lat.vertex_color

    def add(gp: GeneralizedPath):
        if gp.support in seen:
            return
        checks = _checks_of(lat, gp.support)
        if checks != gp.unsatisfied or not gp.support:
            raise ConversionError(
                f"candidate from paths {gp.origin} flips {sorted(checks)}, expected {sorted(gp.unsatisfied)}"
            )
        seen.add(gp.support)
        out.append(gp)

    two_colored = []
    for i, p in enumerate(paths):
        ends = p.endpoints
        if len(ends) != 2:
            continue
        if len({color[v] for v in ends}) == 1:
            add(convert_same_color(lat, p, (i,)))
        else:
            two_colored.append(i)

    for i, j in combinations(two_colored, 2):
        if pair_admissible(lat, paths[i], paths[j]):
            add(convert_pair(lat, paths[i], paths[j], (i, j)))
    return out
