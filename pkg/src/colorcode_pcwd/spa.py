"""Syndrome-based sum-product decoding in the log-likelihood-ratio domain."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

LLR_CLIP = 30.0
_TINY = 1e-12


@dataclass(frozen=True)
class SpaResult:
    hard: np.ndarray
    omega: np.ndarray  # posterior P(bit = 1) per variable node
    matched: bool
    iterations_used: int


def _phi(x: np.ndarray) -> np.ndarray:
    # phi(x) = -log tanh(x/2), its own inverse on (0, inf)
    x = np.clip(x, _TINY, LLR_CLIP)
    return -np.log(np.tanh(0.5 * x))


class SumProduct:
    """Flooding-schedule sum-product decoder prepared for one parity-check matrix."""

    def __init__(self, pcm: np.ndarray):
        pcm = np.asarray(pcm, dtype=np.uint8)
        self.m, self.n = pcm.shape
        self.check_idx, self.var_idx = np.nonzero(pcm)
        self.pcm = pcm

    def decode(self, syndrome, prior_flip_prob: float, max_iters: int = 100) -> SpaResult:
        if not 0.0 < prior_flip_prob < 0.5:
            raise ValueError(f"prior_flip_prob must lie in (0, 0.5), got {prior_flip_prob}")
        syndrome = np.asarray(syndrome, dtype=np.uint8)
        if syndrome.shape != (self.m,):
            raise ValueError(f"syndrome length {syndrome.shape} does not match {self.m} checks")
        ci, vi, m, n = self.check_idx, self.var_idx, self.m, self.n
        llr0 = np.log((1.0 - prior_flip_prob) / prior_flip_prob)
        c2v = np.zeros(len(ci))
        s_edge = syndrome[ci].astype(bool)

        for it in range(1, max_iters + 1):
            post = llr0 + np.bincount(vi, weights=c2v, minlength=n)
            hard = (post < 0).astype(np.uint8)
            if np.array_equal(np.bincount(ci, weights=hard[vi], minlength=m).astype(np.int64) & 1, syndrome):
                return SpaResult(hard, _posterior(post), True, it)
            v2c = np.clip(post[vi] - c2v, -LLR_CLIP, LLR_CLIP)
            c2v = self._check_update(v2c, s_edge)

        post = llr0 + np.bincount(vi, weights=c2v, minlength=n)
        hard = (post < 0).astype(np.uint8)
        matched = np.array_equal(np.bincount(ci, weights=hard[vi], minlength=m).astype(np.int64) & 1, syndrome)
        return SpaResult(hard, _posterior(post), bool(matched), max_iters)

    def _check_update(self, v2c: np.ndarray, s_edge: np.ndarray) -> np.ndarray:
        ci, m = self.check_idx, self.m
        mag = _phi(np.abs(v2c))
        extrinsic = np.bincount(ci, weights=mag, minlength=m)[ci] - mag
        neg = v2c < 0
        parity = (np.bincount(ci, weights=neg, minlength=m).astype(np.int64) & 1).astype(bool)
        flip = parity[ci] ^ neg ^ s_edge
        out = _phi(np.maximum(extrinsic, _TINY))
        return np.where(flip, -out, out)


def _posterior(post_llr: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(np.clip(post_llr, -700, 700)))


def run_spa(pcm, syndrome, prior_flip_prob: float, max_iters: int = 100) -> SpaResult:
    return SumProduct(pcm).decode(syndrome, prior_flip_prob, max_iters)


def depolarizing_prior(p: float) -> float:
    """Marginal X-flip probability of a depolarizing channel (X or Y occurs)."""
    return 2.0 * p / 3.0
