"""Quadratic-time word problem for V.

A word is non-trivial iff some cyclic rotation of it lies in some L_z with
``|z| = maxlen(Γ)``.  The sweep runs every rotation against each of the
``2^maxlen(Γ)`` recognizers; each run is linear, so the whole test is
O(n^2) for a fixed generating set.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Optional, Sequence

import numpy as np

from .group import ENDMARKER, GeneratingSet
from .kernels import MachineBank
from .lz import build_lz


@dataclass(frozen=True, order=True)
class Witness:
    rotation_index: int
    z: str


def rotate(w: Sequence, j: int) -> list:
    """Move the first ``j`` letters to the end."""
    if not 0 <= j <= len(w):
        raise IndexError(f"rotation {j} out of range for a word of length {len(w)}")
    w = list(w)
    return w[j:] + w[:j]


def z_values(gamma: GeneratingSet) -> list[str]:
    return ["".join(b) for b in product("01", repeat=gamma.maxlen)]


@lru_cache(maxsize=32)
def machine_bank(gamma: GeneratingSet) -> MachineBank:
    return MachineBank([build_lz(z, gamma).dpda for z in z_values(gamma)])


def cowp_decide(gamma: GeneratingSet, w: Sequence[str], *, workers: int = 1,
                backend: Optional[str] = None) -> Optional[Witness]:
    """Smallest (rotation, z) witnessing ``w != 1``, or None if ``w`` is trivial."""
    gamma.check_word(w)
    if not w or gamma.maxlen == 0:
        return None
    bank = machine_bank(gamma)
    zs = z_values(gamma)
    codes = bank.encode(w)
    end = bank.label_id[ENDMARKER]
    n = len(w)
    if workers <= 1 or n < 2 * workers:
        hit = bank.sweep(codes, end, 0, n, backend)
    else:
        bounds = np.linspace(0, n, workers + 1).astype(int)
        with ThreadPoolExecutor(workers) as pool:
            hits = list(pool.map(lambda lh: bank.sweep(codes, end, lh[0], lh[1], backend),
                                 zip(bounds[:-1], bounds[1:])))
        # chunks are in rotation order, so the first hit is the smallest
        hit = next((h for h in hits if h is not None), None)
    if hit is None:
        return None
    return Witness(hit[0], zs[hit[1]])


def wp_decide(gamma: GeneratingSet, w: Sequence[str], *, workers: int = 1,
              backend: Optional[str] = None) -> bool:
    return cowp_decide(gamma, w, workers=workers, backend=backend) is None
