"""Seeded random graph generators: G(n, p), its uniformly oriented variant, and
the planted-feedback-set digraph model.

Reproducibility contract
------------------------
All randomness comes from ``numpy.random.Generator(PCG64(seed))``. Unordered
pairs {u, v}, u < v, are indexed lexicographically; the pair at linear index
``t`` is decoded arithmetically. Two sampling methods draw the per-pair
Bernoulli inclusions:

* ``naive``: one uniform per pair, consumed in lexicographic order (the
  reference mode).
* ``skip``: geometric gaps between included pairs. Same distribution as
  ``naive`` (a Bernoulli process is a geometric renewal process) but a
  different stream, used automatically above ``_SKIP_THRESHOLD`` pairs.

After the inclusion draws of a block, orientation coins (one uniform per
included pair, in pair order) are drawn where the model needs them. The
planted model consumes three blocks in order: inclusions for pairs touching
the planted set, orientation coins for those, then inclusions for the
remaining forward pairs.

Identical ``(model, n, p, delta, seed)`` always yield identical instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import Digraph, Graph

_SKIP_THRESHOLD = 1 << 22  # pair-count above which the skip sampler kicks in
_CHUNK = 1 << 22


@dataclass(frozen=True)
class ModelParams:
    """Parameters of one random instance; ``delta`` and ``k`` apply to the planted model only."""

    n: int
    p: float
    delta: float | None = None
    k: int | None = None
    seed: int = 0

    def validate(self, model: str) -> None:
        if self.n <= 0:
            raise ValueError("n must be positive")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if model == "dnp" and 2 * self.p > 1.0:
            raise ValueError("oriented model requires 2p <= 1")
        if model == "planted":
            if self.delta is None or not 0.0 < self.delta <= 1.0:
                raise ValueError("planted model requires delta in (0, 1]")
            if math.floor(self.delta * self.n) < 1:
                raise ValueError("planted model requires floor(delta * n) >= 1")
        if self.k is not None and self.k < 3:
            raise ValueError("k must be at least 3")


@dataclass(frozen=True)
class PlantedInstance:
    """A digraph with ground truth: removing ``planted`` leaves a DAG ordered by ``dag_order``."""

    digraph: Digraph
    planted: list[int]
    params: ModelParams
    dag_order: np.ndarray


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _bernoulli_indices(rng: np.random.Generator, count: int, prob: float, method: str) -> np.ndarray:
    """Indices t in [0, count) with independent inclusion probability ``prob``."""
    if count == 0 or prob <= 0.0:
        return np.empty(0, dtype=np.int64)
    if prob >= 1.0:
        return np.arange(count, dtype=np.int64)
    if method == "auto":
        method = "naive" if count <= _SKIP_THRESHOLD else "skip"
    if method == "naive":
        picked = []
        for start in range(0, count, _CHUNK):
            size = min(_CHUNK, count - start)
            hits = np.flatnonzero(rng.random(size) < prob)
            picked.append(hits.astype(np.int64) + start)
        return np.concatenate(picked)
    if method == "skip":
        picked = []
        pos = -1
        gap_chunk = max(1024, min(_CHUNK, int(count * prob * 1.1) + 64))
        while True:
            gaps = rng.geometric(prob, size=gap_chunk)
            cum = np.cumsum(gaps) + pos
            if cum[-1] >= count:
                picked.append(cum[cum < count])
                break
            picked.append(cum)
            pos = int(cum[-1])
        return np.concatenate(picked)
    raise ValueError(f"unknown sampling method: {method!r}")


def _decode_pairs(n: int, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Lexicographic pair index -> (u, v) with u < v."""

    def offset(u: np.ndarray) -> np.ndarray:
        return u * (2 * n - u - 1) // 2

    nf = float(n)
    u = np.floor(nf - 0.5 - np.sqrt((nf - 0.5) ** 2 - 2.0 * t)).astype(np.int64)
    np.clip(u, 0, n - 2, out=u)
    o = offset(u)
    # float decode can be off by one at block boundaries
    while True:
        bad = o > t
        if not bad.any():
            break
        u[bad] -= 1
        o[bad] = offset(u[bad])
    while True:
        bad = offset(u + 1) <= t
        if not bad.any():
            break
        u[bad] += 1
        o[bad] = offset(u[bad])
    v = t - o + u + 1
    return u, v


def gen_gnp(params: ModelParams, method: str = "auto") -> Graph:
    """G(n, p): each unordered pair included independently with probability p."""
    params.validate("gnp")
    n = params.n
    rng = _rng(params.seed)
    total = n * (n - 1) // 2
    t = _bernoulli_indices(rng, total, params.p, method)
    u, v = _decode_pairs(n, t)
    return Graph(n, np.stack([u, v], axis=1))


def gen_dnp(params: ModelParams, method: str = "auto") -> Digraph:
    """Uniformly oriented random digraph: pairs included w.p. 2p, then a fair coin
    picks the arc direction. Never produces antiparallel arcs."""
    params.validate("dnp")
    n = params.n
    rng = _rng(params.seed)
    total = n * (n - 1) // 2
    t = _bernoulli_indices(rng, total, 2 * params.p, method)
    u, v = _decode_pairs(n, t)
    coins = rng.random(t.size) < 0.5
    src = np.where(coins, u, v)
    dst = np.where(coins, v, u)
    return Digraph(n, np.stack([src, dst], axis=1))


def gen_planted(params: ModelParams, method: str = "auto") -> PlantedInstance:
    """Planted model: P = {0..floor(delta*n)-1}; pairs touching P appear with
    probability min(1, 2p) and get a uniform orientation; the complement keeps
    only identity-order forward arcs, each with probability p, so V minus P is
    a DAG by construction.

    2p is clamped at 1 so that edge probabilities above 1/2 (used by the
    recovery experiments) remain meaningful for the cross pairs.
    """
    params.validate("planted")
    n = params.n
    s = math.floor(params.delta * n)
    rng = _rng(params.seed)
    # pairs (u, v) with u < v and u < s are exactly the first `cross` lex indices
    cross = s * (2 * n - s - 1) // 2
    total = n * (n - 1) // 2

    t_cross = _bernoulli_indices(rng, cross, min(1.0, 2 * params.p), method)
    u, v = _decode_pairs(n, t_cross)
    coins = rng.random(t_cross.size) < 0.5
    src = np.where(coins, u, v)
    dst = np.where(coins, v, u)

    t_fwd = _bernoulli_indices(rng, total - cross, params.p, method) + cross
    fu, fv = _decode_pairs(n, t_fwd)

    arcs = np.stack([np.concatenate([src, fu]), np.concatenate([dst, fv])], axis=1)
    return PlantedInstance(
        digraph=Digraph(n, arcs),
        planted=list(range(s)),
        params=params,
        dag_order=np.arange(s, n, dtype=np.int64),
    )
