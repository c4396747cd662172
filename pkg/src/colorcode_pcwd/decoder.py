"""Two-stage decoder: SPA on the color code, then path decomposition + ILP."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .convert import enumerate_candidates
from .lattice import Color, TorusLattice
from .pcwd import decompose
from .selection import DEFAULT_TRIANGLE_LIMIT, Infeasible, ResourceExhausted, build_problem, solve
from .spa import SumProduct, depolarizing_prior

DEFAULT_MAX_ITERS = 100


class Stage(str, enum.Enum):
    SPA = "spa"
    PCWD_LP = "pcwd_lp"


class Status(str, enum.Enum):
    MATCHED = "matched"
    INFEASIBLE = "infeasible"
    RESOURCE_EXHAUSTED = "resource_exhausted"


@dataclass
class DecodeOutcome:
    estimate: np.ndarray
    stage: Stage
    status: Status
    spa_iterations: int = 0
    n_paths: int = 0
    n_candidates: int = 0
    fractional: bool = False

    @property
    def matched(self) -> bool:
        return self.status is Status.MATCHED


class Decoder:
    """Decoder bound to one lattice; holds the prepared message-passing graphs."""

    def __init__(
        self,
        lat: TorusLattice,
        max_iters: int = DEFAULT_MAX_ITERS,
        parity: str = "gf2",
        triangle_limit: int = DEFAULT_TRIANGLE_LIMIT,
    ):
        self.lat = lat
        self.max_iters = max_iters
        self.parity = parity
        self.triangle_limit = triangle_limit
        self._color_spa = SumProduct(lat.H)
        self._cycle_spa = [SumProduct(g.H) for g in lat.projections]

    def decode(self, syndrome, p: float) -> DecodeOutcome:
        lat = self.lat
        s = np.asarray(syndrome, dtype=np.uint8)
        if s.shape != (lat.n_vertices,):
            raise ValueError(f"syndrome must have length {lat.n_vertices}, got {s.shape}")
        if not 0.0 <= p < 0.75:
            raise ValueError(f"p must lie in [0, 0.75), got {p}")
        if not s.any():
            return DecodeOutcome(np.zeros(lat.n_faces, dtype=np.uint8), Stage.SPA, Status.MATCHED, 1)
        if p == 0.0:
            raise ValueError("a nonzero syndrome needs p > 0")
        prior = depolarizing_prior(p)

        first = self._color_spa.decode(s, prior, self.max_iters)
        if first.matched:
            return DecodeOutcome(first.hard, Stage.SPA, Status.MATCHED, first.iterations_used)
        out = self.second_stage(s, p)
        out.spa_iterations = first.iterations_used
        return out

    def second_stage(self, syndrome, p: float) -> DecodeOutcome:
        """Cycle-code SPA, path decomposition, conversion and selection."""
        lat = self.lat
        s = np.asarray(syndrome, dtype=np.uint8)
        prior = depolarizing_prior(p)
        paths = []
        for C, g, sp in zip(Color, lat.projections, self._cycle_spa):
            s_C = lat.restrict_syndrome(s, C)
            if not s_C.any():
                continue
            res = sp.decode(s_C, prior, self.max_iters)
            paths.extend(decompose(res.omega, s_C, g))

        candidates = enumerate_candidates(lat, paths)
        problem = build_problem(candidates, np.flatnonzero(s), self.parity, self.triangle_limit)
        zero = np.zeros(lat.n_faces, dtype=np.uint8)
        diag = dict(n_paths=len(paths), n_candidates=len(candidates))
        try:
            sel = solve(problem)
        except Infeasible:
            return DecodeOutcome(zero, Stage.PCWD_LP, Status.INFEASIBLE, **diag)
        except ResourceExhausted:
            return DecodeOutcome(zero, Stage.PCWD_LP, Status.RESOURCE_EXHAUSTED, **diag)

        estimate = zero.copy()
        for j in sel.chosen:
            estimate[list(candidates[j].support)] ^= 1
        if not np.array_equal(lat.syndrome(estimate), s):
            raise AssertionError("selected candidates do not reproduce the syndrome")
        return DecodeOutcome(estimate, Stage.PCWD_LP, Status.MATCHED, fractional=sel.fractional, **diag)


@lru_cache(maxsize=None)
def _decoder(lat: TorusLattice, max_iters: int) -> Decoder:
    return Decoder(lat, max_iters)


def decode(lat: TorusLattice, s, p: float, max_iters: int = DEFAULT_MAX_ITERS) -> DecodeOutcome:
    return _decoder(lat, max_iters).decode(s, p)


def is_logical_success(lat: TorusLattice, error, estimate) -> bool:
    return lat.is_logical_success(error, estimate)
