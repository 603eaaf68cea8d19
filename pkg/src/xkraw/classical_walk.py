"""Generalized birth-and-death process on the states ``{0, ..., N, N+3}``.

Jumps reach up to three neighbours, except that state ``N+3`` only talks to
``N``. Internally states occupy dense positions ``0..N+1`` with position
``N+1`` standing for label ``N+3``; everything public is keyed by label.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ._parallel import ordered_map
from .errors import InvalidConfig, NegativeRate
from .krawtchouk import (
    ModelConfig,
    build_table,
    eigenvalue_classical,
    krawtchouk_eval,
    pochhammer,
    recurrence_coeffs,
)

__all__ = [
    "RateMatrix",
    "TransitionMatrix",
    "EmpiricalDistribution",
    "rate_matrix",
    "transition_matrix",
    "stationary",
    "matexp_oracle",
    "gillespie_sample",
    "total_variation",
]


@dataclass(frozen=True)
class RateMatrix:
    """Exact generator; ``entries[i][j]`` is the rate from position i to j."""

    cfg: ModelConfig
    entries: tuple[tuple[Fraction, ...], ...]

    @property
    def labels(self) -> tuple[int, ...]:
        return self.cfg.labels

    def rate(self, src: int, dst: int) -> Fraction:
        """Rate between two state labels."""
        return self.entries[self.cfg.label_index(src)][self.cfg.label_index(dst)]

    def to_array(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.entries])


@dataclass(frozen=True)
class TransitionMatrix:
    entries: np.ndarray
    time: float
    labels: tuple[int, ...] = ()

    def row(self, label: int) -> np.ndarray:
        return self.entries[self.labels.index(label)]


@dataclass(frozen=True)
class EmpiricalDistribution:
    counts: np.ndarray
    trajectories: int
    horizon: float
    seed: int
    labels: tuple[int, ...] = field(default=())

    @property
    def frequencies(self) -> np.ndarray:
        return self.counts / self.trajectories


@lru_cache(maxsize=128)
def rate_matrix(cfg: ModelConfig) -> RateMatrix:
    """Seven-diagonal generator with the rates of the exceptional recurrence."""
    if cfg.ell != 2:
        raise InvalidConfig("the walk is defined for ell = 2 only")
    labels = cfg.labels
    size = len(labels)
    A = [[Fraction(0)] * size for _ in range(size)]
    for i, n in enumerate(labels):
        coeffs = recurrence_coeffs(cfg, n)
        for offset, rate in coeffs.by_offset().items():
            if rate == 0:
                continue
            if n + offset not in labels:
                raise AssertionError(f"rate {rate} from {n} leaves the state space")
            A[i][cfg.label_index(n + offset)] = rate
        A[i][i] = -coeffs.total
    negative = [(labels[i], labels[j]) for i in range(size) for j in range(size)
                if i != j and A[i][j] < 0]
    if negative or cfg.p > Fraction(1, 2):
        raise NegativeRate(
            f"p = {cfg.p} > 1/2 does not define a Markov generator "
            f"(negative rates at {negative[:4]})")
    return RateMatrix(cfg, tuple(tuple(row) for row in A))


@lru_cache(maxsize=128)
def _spectral_terms(cfg: ModelConfig):
    """Spectral data for the closed form, modes sorted by decreasing eigenvalue.

    Returns ``lam`` (floats), ``coef[x, i, j] = w_x K_i(x) K_j(x) / h_j``
    rounded once from exact products, and ``heads[k]``, the exactly summed
    coefficients of the first ``k`` modes (``heads[-1]`` is the identity).
    """
    tab = build_table(cfg)
    V, w, h = tab.values, tab.weights, tab.norms
    size = len(V)
    lam_exact = [eigenvalue_classical(cfg, x) for x in cfg.grid]
    order = sorted(range(len(w)), key=lambda x: -lam_exact[x])
    coef = np.empty((len(w), size, size))
    heads = [np.zeros((size, size))]
    acc = [[Fraction(0)] * size for _ in range(size)]
    for k, x in enumerate(order):
        for i in range(size):
            wi = w[x] * V[i][x]
            for j in range(size):
                c = wi * V[j][x] / h[j]
                coef[k, i, j] = float(c)
                acc[i][j] += c
        heads.append(np.array([[float(v) for v in row] for row in acc]))
    lam = np.array([float(lam_exact[x]) for x in order])
    return lam, coef, heads


def transition_matrix(cfg: ModelConfig, t: float) -> TransitionMatrix:
    """Closed-form ``P(t) = sum_x w_x K_i(x) K_j(x) exp(lambda_x t) / h_j``.

    Slowly decaying modes (``exp(lambda_x t) >= 1/2``) are summed as
    ``C_x + C_x expm1(lambda_x t)`` with the ``C_x`` part added exactly, which
    removes the cancellation between large coefficients at small ``t``.
    """
    if t < 0:
        raise ValueError("time must be nonnegative")
    rate_matrix(cfg)  # validates the model
    lam, coef, heads = _spectral_terms(cfg)
    t = float(t)
    k = int(np.count_nonzero(lam * t >= -math.log(2)))
    P = (heads[k] + np.einsum("xij,x->ij", coef[:k], np.expm1(lam[:k] * t))
         + np.einsum("xij,x->ij", coef[k:], np.exp(lam[k:] * t)))
    return TransitionMatrix(P, t, cfg.labels)


def stationary(cfg: ModelConfig) -> tuple[Fraction, ...]:
    """Exact limiting distribution, ordered like ``cfg.labels``."""
    rate_matrix(cfg)
    N, p, q = cfg.N, cfg.p, cfg.q
    den = pochhammer(Fraction(N + 2), 2) * krawtchouk_eval(2, -N - 2, Fraction(-N - 1), p)
    return tuple(
        math.comb(N + 3, j) * pochhammer(Fraction(N - j + 1), 2)
        * p ** (j - 2) * q ** (N - j + 3) / den
        for j in cfg.labels)


def matexp_oracle(A, t: float, terms: int = 20) -> TransitionMatrix:
    """``exp(tA)`` by scaling and squaring a truncated Taylor series.

    The argument is halved until its infinity norm is at most 1/2.
    """
    labels = A.labels if isinstance(A, RateMatrix) else ()
    arr = A.to_array() if isinstance(A, RateMatrix) else np.asarray(A, dtype=float)
    if t < 0:
        raise ValueError("time must be nonnegative")
    B = arr * float(t)
    nrm = np.abs(B).sum(axis=1).max() if B.size else 0.0
    s = max(0, math.ceil(math.log2(nrm / 0.5))) if nrm > 0.5 else 0
    B = B / 2.0 ** s
    eye = np.eye(len(B))
    E, term = eye.copy(), eye.copy()
    for k in range(1, terms + 1):
        term = term @ B / k
        E = E + term
    for _ in range(s):
        E = E @ E
    return TransitionMatrix(E, float(t), labels)


_BLOCK = 8192


def _simulate_block(args):
    start, horizon, size, seed_seq, cum, targets = args
    rng = np.random.Generator(np.random.Philox(seed_seq))
    state = np.full(size, start, dtype=np.int64)
    clock = np.zeros(size)
    active = np.arange(size)
    total = cum[:, -1]
    while active.size:
        s = state[active]
        rate = total[s]
        with np.errstate(divide="ignore"):
            dt = rng.standard_exponential(active.size) / rate
        clock[active] += dt
        jumping = clock[active] <= horizon
        active, s, rate = active[jumping], s[jumping], rate[jumping]
        u = rng.random(active.size) * rate
        choice = (u[:, None] >= cum[s]).sum(axis=1)
        state[active] = targets[s, choice]
    return np.bincount(state, minlength=len(cum))


def gillespie_sample(cfg: ModelConfig, start: int, horizon: float,
                     trajectories: int, seed: int) -> EmpiricalDistribution:
    """Simulate the chain and histogram the state occupied at ``horizon``.

    Holding times are exponential with rate ``S_n``; the next state is picked
    by inverse CDF over the ordered rates (up 3, 2, 1, down 1, 2, 3).
    Trajectories run in fixed blocks, each with its own Philox stream spawned
    from ``seed``, so counts do not depend on the thread count.
    """
    if trajectories < 1:
        raise ValueError("need at least one trajectory")
    A = rate_matrix(cfg)
    labels = cfg.labels
    size = len(labels)
    offsets = (3, 2, 1, -1, -2, -3)
    cum = np.zeros((size, len(offsets)))
    targets = np.zeros((size, len(offsets)), dtype=np.int64)
    for i, n in enumerate(labels):
        acc = 0.0
        for k, off in enumerate(offsets):
            dst = n + off
            if dst in labels:
                acc += float(A.entries[i][cfg.label_index(dst)])
                targets[i, k] = cfg.label_index(dst)
            else:
                targets[i, k] = i
            cum[i, k] = acc
    begin = cfg.label_index(start)
    counts = np.zeros(size, dtype=np.int64)
    if horizon <= 0:
        counts[begin] = trajectories
    else:
        sizes = [_BLOCK] * (trajectories // _BLOCK)
        if trajectories % _BLOCK:
            sizes.append(trajectories % _BLOCK)
        seeds = np.random.SeedSequence(seed).spawn(len(sizes))
        jobs = [(begin, float(horizon), n, ss, cum, targets) for n, ss in zip(sizes, seeds)]
        for c in ordered_map(_simulate_block, jobs):
            counts += c
    return EmpiricalDistribution(counts, trajectories, float(horizon), seed, labels)


def total_variation(a, b) -> float:
    return 0.5 * float(np.abs(np.asarray(a, float) - np.asarray(b, float)).sum())
