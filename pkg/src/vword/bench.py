"""Timing harness for the decider and log-log slope fitting."""

from __future__ import annotations

import random
import statistics
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .decider import wp_decide
from .group import GeneratingSet, compose, is_identity

DEFAULT_LENGTHS = (128, 256, 512, 1024, 2048, 4096)


@dataclass
class Row:
    n: int
    mean: float
    median: float
    trials: int
    best: float = 0.0


@dataclass
class BenchResult:
    rows: list[Row] = field(default_factory=list)
    slope: Optional[float] = None
    family: str = "wp"
    backend: str = ""

    def to_dict(self):
        return {
            "family": self.family,
            "backend": self.backend,
            "slope": self.slope,
            "rows": [vars(r) for r in self.rows],
        }


def all_involutions(gamma: GeneratingSet) -> bool:
    return all(is_identity(compose(g, g)) for _, g in gamma.items)


def make_word(rng: random.Random, gamma: GeneratingSet, n: int, family: str) -> list[str]:
    """A random word of length n.

    ``family="wp"`` draws ``u`` at random and returns ``u reverse(u)``, which is
    trivial when every generator is an involution; these force the decider
    through every rotation and every recognizer.  ``family="random"`` is
    uniform over Γ^n.
    """
    names = gamma.names
    if family == "wp":
        if not all_involutions(gamma):
            raise ValueError("the wp family needs a generating set of involutions")
        if n % 2:
            raise ValueError("the wp family needs even lengths")
        u = [rng.choice(names) for _ in range(n // 2)]
        return u + u[::-1]
    if family == "random":
        return [rng.choice(names) for _ in range(n)]
    raise ValueError(f"unknown word family {family!r}")


def fit_slope(ns: Sequence[float], times: Sequence[float]) -> Optional[float]:
    if len(ns) < 2:
        return None
    slope, _ = np.polyfit(np.log(ns), np.log(times), 1)
    return float(slope)


def time_decider(gamma: GeneratingSet, lengths: Sequence[int] = DEFAULT_LENGTHS, trials: int = 3,
                 seed: int = 0, family: str = "wp", backend: Optional[str] = None) -> BenchResult:
    """Mean/median wall time of :func:`wp_decide` per length.

    Each length gets one discarded warm-up call.  Trials are interleaved
    across lengths (round robin) so a slow stretch on a shared machine
    does not land on a single length.
    """
    from .kernels import default_backend

    res = BenchResult(family=family, backend=backend or default_backend())
    if trials <= 0:
        return res
    rng = random.Random(seed)
    words = {n: [make_word(rng, gamma, n, family) for _ in range(trials)] for n in lengths}
    times: dict[int, list[float]] = {n: [] for n in lengths}
    for n in lengths:
        wp_decide(gamma, words[n][0], backend=backend)
    for t in range(trials):
        for n in lengths:
            t0 = time.perf_counter()
            wp_decide(gamma, words[n][t], backend=backend)
            times[n].append(time.perf_counter() - t0)
    for n in lengths:
        ts = times[n]
        res.rows.append(Row(n, statistics.fmean(ts), statistics.median(ts), trials, min(ts)))
    res.slope = fit_slope([r.n for r in res.rows], [r.mean for r in res.rows])
    return res


def compare_backends(gamma: GeneratingSet, lengths: Sequence[int] = (16, 32, 64, 128),
                     trials: int = 3, seed: int = 0, family: str = "wp") -> list[dict]:
    """Time the compiled and interpreted kernels on the same words."""
    jit = time_decider(gamma, lengths, trials, seed, family, backend="jit")
    py = time_decider(gamma, lengths, trials, seed, family, backend="numpy")
    return [
        {"n": a.n, "jit": a.mean, "numpy": b.mean, "speedup": b.mean / a.mean if a.mean else None}
        for a, b in zip(jit.rows, py.rows)
    ]
