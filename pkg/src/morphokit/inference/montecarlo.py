"""Seeded Monte Carlo estimate of ``P_F{sum of g squared draws > t}``."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .distributions import DegreesOfFreedom, as_dof
from .models import ContaminationModel, ModelKind

#: Samples per substream. Fixed so that estimates do not depend on worker count.
CHUNK = 1 << 16


def _count_chunk(seed_seq: np.random.SeedSequence, m: int, t: float, g: int, F: ContaminationModel) -> int:
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    z = rng.standard_normal((m, g))
    if F.kind is not ModelKind.NORMAL and F.epsilon > 0.0:
        hit = rng.random((m, g)) < F.epsilon
        if F.kind is ModelKind.SCN:
            z = np.where(hit, z * F.nu, z)
        else:
            z = np.where(hit, z + F.theta, z)
    return int(np.count_nonzero(np.einsum("ij,ij->i", z, z) > t))


def mc_oracle(
    t: float,
    dof: DegreesOfFreedom | int,
    F: ContaminationModel,
    n_samples: int = 100_000,
    seed: int = 0,
    workers: int = 1,
) -> tuple[float, float]:
    """Fraction of simulated ``sum_i Z_i^2`` exceeding ``t`` and its binomial standard error.

    Samples are drawn in fixed-size chunks, each from its own PCG64 substream
    spawned from ``seed``; ``workers`` only changes scheduling, never the result.
    """
    if n_samples < 1000:
        raise ValueError(f"n_samples must be at least 1000, got {n_samples}")
    g = as_dof(dof)
    if t <= 0:
        return 1.0, 0.0
    sizes = [CHUNK] * (n_samples // CHUNK)
    if n_samples % CHUNK:
        sizes.append(n_samples % CHUNK)
    streams = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = list(zip(streams, sizes))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(lambda job: _count_chunk(job[0], job[1], t, g, F), jobs))
    else:
        counts = [_count_chunk(s, m, t, g, F) for s, m in jobs]
    p = sum(counts) / n_samples
    return p, math.sqrt(p * (1.0 - p) / n_samples)
