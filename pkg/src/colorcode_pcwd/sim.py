"""Monte Carlo estimation of logical error rates under depolarizing noise."""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

import numpy as np

from .decoder import DEFAULT_MAX_ITERS, Decoder, Stage, Status
from .lattice import build
from .spa import depolarizing_prior

SWEEP_FIELDS = ["L", "p", "trials", "failures", "rate", "stderr", "avg_fail_weight", "min_fail_weight", "seed"]
TRIAL_FIELDS = ["trial", "seed", "weight", "stage", "status", "success"]


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    seed: int
    error_weight: int
    stage: Stage
    status: Status
    success: bool


@dataclass
class SweepResult:
    L: int
    p: float
    trials: int
    failures: int
    seed: int
    failure_weights: List[int] = field(default_factory=list, repr=False)
    records: Optional[List[TrialRecord]] = field(default=None, repr=False)

    @property
    def logical_error_rate(self) -> float:
        return self.failures / self.trials

    @property
    def stderr(self) -> float:
        r = self.logical_error_rate
        return math.sqrt(r * (1.0 - r) / self.trials)

    @property
    def avg_failure_weight(self) -> Optional[float]:
        return float(np.mean(self.failure_weights)) if self.failure_weights else None

    @property
    def min_failure_weight(self) -> Optional[int]:
        return min(self.failure_weights) if self.failure_weights else None

    def row(self) -> dict:
        avg, mn = self.avg_failure_weight, self.min_failure_weight
        return {
            "L": self.L,
            "p": repr(self.p),
            "trials": self.trials,
            "failures": self.failures,
            "rate": f"{self.logical_error_rate:.6g}",
            "stderr": f"{self.stderr:.6g}",
            "avg_fail_weight": "" if avg is None else f"{avg:.6g}",
            "min_fail_weight": "" if mn is None else mn,
            "seed": self.seed,
        }


def sample_x_error(n: int, p: float, rng: np.random.Generator) -> np.ndarray:
    """X part of ``n`` independent depolarizing errors: each bit flips w.p. ``2p/3``."""
    if not 0.0 <= p <= 0.75:
        raise ValueError(f"depolarizing probability must lie in [0, 0.75], got {p}")
    return (rng.random(n) < depolarizing_prior(p)).astype(np.uint8)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream per (master seed, trial index)."""
    return np.random.default_rng(np.random.SeedSequence([seed, trial]))


def _run_block(L: int, p: float, seed: int, start: int, stop: int, max_iters: int) -> List[TrialRecord]:
    lat = build(L)
    dec = Decoder(lat, max_iters)
    out = []
    for t in range(start, stop):
        error = sample_x_error(lat.n_faces, p, trial_rng(seed, t))
        weight = int(error.sum())
        outcome = dec.decode(lat.syndrome(error), p)
        ok = outcome.matched and lat.is_logical_success(error, outcome.estimate)
        out.append(TrialRecord(t, seed, weight, outcome.stage, outcome.status, ok))
    return out


def _blocks(n: int, jobs: int) -> List[range]:
    size = max(1, math.ceil(n / (4 * jobs)))
    return [range(a, min(a + size, n)) for a in range(0, n, size)]


def run_trials(
    L: int,
    p: float,
    trials: int,
    seed: int = 0,
    max_iters: int = DEFAULT_MAX_ITERS,
    jobs: int = 1,
    keep_records: bool = False,
) -> SweepResult:
    if trials < 1:
        raise ValueError("need at least one trial")
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            futures = [
                pool.submit(_run_block, L, p, seed, b.start, b.stop, max_iters) for b in _blocks(trials, jobs)
            ]
            records = [r for f in futures for r in f.result()]
    else:
        records = _run_block(L, p, seed, 0, trials, max_iters)
    failures = [r.error_weight for r in records if not r.success]
    return SweepResult(
        L=L,
        p=p,
        trials=trials,
        failures=len(failures),
        seed=seed,
        failure_weights=failures,
        records=records if keep_records else None,
    )


def sweep(
    Ls: Sequence[int],
    ps: Sequence[float],
    trials: int,
    seed: int = 0,
    max_iters: int = DEFAULT_MAX_ITERS,
    jobs: int = 1,
    keep_records: bool = False,
) -> List[SweepResult]:
    return [run_trials(L, p, trials, seed, max_iters, jobs, keep_records) for L in Ls for p in ps]


def write_sweep_csv(results: Iterable[SweepResult], path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=SWEEP_FIELDS)
        w.writeheader()
        for r in results:
            w.writerow(r.row())
    return path


def write_trials_csv(results: Iterable[SweepResult], path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["L", "p"] + TRIAL_FIELDS)
        for res in results:
            for r in res.records or ():
                w.writerow([res.L, repr(res.p), r.trial, r.seed, r.error_weight, r.stage.value, r.status.value, int(r.success)])
    return path


def crossing_point(ps: Sequence[float], rates_small: Sequence[float], rates_large: Sequence[float]) -> Optional[float]:
    """First ``p`` where the larger code stops beating the smaller one.

    Linear interpolation of the rate difference between neighbouring points;
    ``None`` if the curves never cross on the grid.
    """
    diff = np.asarray(rates_large, float) - np.asarray(rates_small, float)
    for i in range(len(ps) - 1):
        d0, d1 = diff[i], diff[i + 1]
        if d0 == 0:
            return float(ps[i])
        if d0 < 0 <= d1:
            return float(ps[i] + (ps[i + 1] - ps[i]) * (-d0) / (d1 - d0))
    if len(ps) and diff[-1] == 0:
        return float(ps[-1])
    return None
