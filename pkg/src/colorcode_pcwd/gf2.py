"""Binary linear algebra.

Vectors and matrices are plain ``numpy`` arrays of 0/1 values (``uint8``).
Gaussian elimination packs each row into a Python ``int`` so that row
additions are single big-integer XORs.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

import numpy as np


def as_bits(x) -> np.ndarray:
    """Coerce ``x`` to a ``uint8`` array reduced mod 2."""
    return (np.asarray(x, dtype=np.int64) & 1).astype(np.uint8)


def mat_vec(m: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Return ``m @ v`` over GF(2)."""
    m = np.asarray(m)
    v = np.asarray(v)
    if m.ndim != 2 or v.ndim != 1 or m.shape[1] != v.shape[0]:
        raise ValueError(f"dimension mismatch: matrix {m.shape} vs vector {v.shape}")
    return ((m.astype(np.int64) @ v.astype(np.int64)) & 1).astype(np.uint8)


def pack_rows(m: np.ndarray) -> List[int]:
    """Pack each row of ``m`` into an int; bit ``j`` holds column ``j``."""
    m = np.asarray(m, dtype=np.uint8)
    if m.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    weights = [1 << j for j in range(m.shape[1])]
    return [sum(w for w, b in zip(weights, row) if b) for row in m.tolist()]


def pack_vector(v: np.ndarray) -> int:
    return sum(1 << j for j, b in enumerate(np.asarray(v).tolist()) if b & 1)


def unpack(x: int, length: int) -> np.ndarray:
    return np.array([(x >> j) & 1 for j in range(length)], dtype=np.uint8)


def _lowest_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


def echelon(m: np.ndarray) -> Tuple[List[int], List[int]]:
    """Reduced row echelon form of ``m`` as packed rows.

    Pivots are taken at the first (lowest-index) nonzero column remaining;
    candidate rows are scanned in index order, so the result is deterministic.
    Returns ``(rows, pivots)`` with ``rows[i]`` having its pivot at column
    ``pivots[i]``.
    """
    rows = pack_rows(m)
    n_cols = np.asarray(m).shape[1]
    pivots: List[int] = []
    r = 0
    for col in range(n_cols):
        bit = 1 << col
        sel = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(m: np.ndarray) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return len(echelon(m)[1])


class RowSpace:
    """Precomputed echelon basis for repeated row-span membership tests."""

    def __init__(self, m: np.ndarray):
        m = np.asarray(m, dtype=np.uint8)
        self.n_cols = m.shape[1]
        self.rows, self.pivots = echelon(m) if m.size else ([], [])

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v) -> int:
        x = v if isinstance(v, int) else pack_vector(v)
        for row, col in zip(self.rows, self.pivots):
            if (x >> col) & 1:
                x ^= row
        return x

    def contains(self, v) -> bool:
        if not isinstance(v, int) and len(v) != self.n_cols:
            raise ValueError(f"dimension mismatch: {len(v)} vs {self.n_cols} columns")
        return self.reduce(v) == 0


def in_rowspan(m: np.ndarray, v: np.ndarray) -> bool:
    """True iff ``v`` is a GF(2) combination of the rows of ``m``."""
    m = np.asarray(m)
    if m.ndim != 2 or len(v) != m.shape[1]:
        raise ValueError(f"dimension mismatch: matrix {m.shape} vs vector of length {len(v)}")
    return RowSpace(m).contains(v)


def nullspace_basis(m: np.ndarray) -> List[np.ndarray]:
    """Basis of ``{x : m x = 0}``, one vector per free column."""
    m = np.asarray(m, dtype=np.uint8)
    n = m.shape[1]
    rows, pivots = echelon(m) if m.size else ([], [])
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        x = 1 << free
        for row, col in zip(rows, pivots):
            if (row >> free) & 1:
                x |= 1 << col
        basis.append(unpack(x, n))
    return basis


def span(vectors: Sequence[np.ndarray]) -> List[int]:
    """All 2^k combinations of ``vectors`` as packed ints (Gray-code order)."""
    packed = [pack_vector(v) for v in vectors]
    out = [0]
    cur = 0
    for i in range(1, 1 << len(packed)):
        cur ^= packed[_lowest_bit(i)]
        out.append(cur)
    return out
