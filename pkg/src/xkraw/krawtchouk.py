"""Ordinary and exceptional (X_l) Krawtchouk polynomials in exact arithmetic.

The exceptional family is indexed by ``n`` in ``{0, ..., N, N+l+1}`` and lives
on the grid ``x in {-1, 0, ..., N}``. Everything here returns
:class:`fractions.Fraction` values; the top-degree member is obtained as an
``eps -> 0`` limit computed with :class:`~xkraw.exactnum.LaurentSeries`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import NamedTuple, Union

from .errors import (
    DivisionByZeroPochhammer,
    IndexOutOfRange,
    InvalidConfig,
    SingularEvaluationPoint,
)
from .exactnum import EPS, LaurentSeries, as_rational, laurent_constant_term

Scalar = Union[int, Fraction, LaurentSeries]

__all__ = [
    "ModelConfig",
    "XPolynomialTable",
    "RecurrenceCoefficients",
    "SturmLiouvilleReport",
    "pochhammer",
    "krawtchouk_eval",
    "f_factor",
    "xl_eval",
    "xl_eval_at",
    "weight",
    "norm",
    "norm_laurent_limit",
    "build_table",
    "recurrence_coeffs",
    "eigenvalue_classical",
    "eigenvalue_quantum",
    "verify_sturm_liouville",
]


@dataclass(frozen=True)
class ModelConfig:
    """Problem parameters ``(N, p, ell)``.

    ``p`` is stored as an exact Fraction; strings such as ``"1/4"`` are accepted.
    """

    N: int
    p: Fraction
    ell: int = 2

    def __post_init__(self):
        object.__setattr__(self, "p", as_rational(self.p))
        if not isinstance(self.N, int) or self.N < 1:
            raise InvalidConfig(f"N must be a positive integer, got {self.N!r}")
        if not isinstance(self.ell, int) or self.ell < 1:
            raise InvalidConfig(f"ell must be a positive integer, got {self.ell!r}")
        if not 0 < self.p < 1:
            raise InvalidConfig(f"p must lie in (0, 1), got {self.p}")

    @property
    def q(self) -> Fraction:
        return 1 - self.p

    @property
    def top(self) -> int:
        """The gap-closing index ``N + ell + 1``."""
        return self.N + self.ell + 1

    @property
    def labels(self) -> tuple[int, ...]:
        """Index set ``{0, ..., N, N+ell+1}``."""
        return tuple(range(self.N + 1)) + (self.top,)

    @property
    def grid(self) -> tuple[int, ...]:
        """Grid ``{-1, 0, ..., N}``."""
        return tuple(range(-1, self.N + 1))

    @property
    def size(self) -> int:
        return self.N + 2

    @property
    def positive_weights(self) -> bool:
        return self.ell % 2 == 0

    @property
    def walk_ok(self) -> bool:
        """Whether the stochastic and quantum walks are defined for this config."""
        return self.ell == 2 and self.p <= Fraction(1, 2)

    def require_walk(self) -> None:
        if self.ell != 2:
            raise InvalidConfig("walks are only defined for ell = 2")
        if self.p > Fraction(1, 2):
            raise InvalidConfig(f"walks require 0 < p <= 1/2, got p = {self.p}")

    def label_index(self, n: int) -> int:
        """Dense position of label ``n`` (``N+ell+1`` maps to ``N+1``)."""
        if 0 <= n <= self.N:
            return n
        if n == self.top:
            return self.N + 1
        raise IndexOutOfRange(f"{n} is not in the index set {self.labels}")

    def swap_p(self) -> "ModelConfig":
        return ModelConfig(self.N, self.q, self.ell)


def pochhammer(a: Scalar, k: int) -> Scalar:
    """Rising factorial ``a (a+1) ... (a+k-1)``."""
    out: Scalar = Fraction(1)
    for j in range(k):
        out = out * (a + j)
    return out


def _is_exact_zero(v: Scalar) -> bool:
    return v.is_zero() if isinstance(v, LaurentSeries) else v == 0


def krawtchouk_eval(n: int, N: Scalar, x: Scalar, p) -> Scalar:
    """Evaluate ``K_n^N(x; p) = 2F1(-n, -x; -N; 1/p)`` as a terminating sum.

    ``N`` may be any rational (including negative integers) or a
    :class:`LaurentSeries`, which is how vanishing denominators are regularized.
    """
    if n < 0:
        raise IndexOutOfRange("degree must be nonnegative")
    p = as_rational(p)
    term: Scalar = Fraction(1)
    total: Scalar = Fraction(1)
    for k in range(n):
        num = (k - n) * (k - x)
        if _is_exact_zero(num):
            break
        den = k - N
        if _is_exact_zero(den):
            raise DivisionByZeroPochhammer(
                f"(-N)_{k + 1} vanishes for N = {N}; pass a LaurentSeries perturbation")
        term = term * num / den / ((k + 1) * p)
        total = total + term
    return total


def f_factor(cfg: ModelConfig, x: Scalar) -> Scalar:
    """``f(x) = K_ell^{-N-2}(x - N - 1; p)``."""
    return krawtchouk_eval(cfg.ell, -cfg.N - 2, x - cfg.N - 1, cfg.p)


def _darboux(cfg: ModelConfig, n: int, x: Scalar, M: Scalar) -> Scalar:
    f = f_factor
    return ((M - x) * f(cfg, x) * krawtchouk_eval(n, M, x + 1, cfg.p)
            + (1 + x) * f(cfg, x + 1) * krawtchouk_eval(n, M, x, cfg.p))


def xl_eval_at(cfg: ModelConfig, n: int, x) -> Fraction:
    """Exceptional polynomial at an arbitrary rational ``x``.

    For ``n = N+ell+1`` the limit only exists on the grid; off the grid a
    :class:`~xkraw.errors.NonvanishingPole` is raised.
    """
    x = as_rational(x)
    if 0 <= n <= cfg.N:
        return _darboux(cfg, n, x, cfg.N)
    if n == cfg.top:
        # only K_n^M sees M = N + eps; f keeps parameter N
        return laurent_constant_term(_darboux(cfg, n, x, cfg.N + EPS))
    raise IndexOutOfRange(f"n = {n} is not in {cfg.labels}")


def xl_eval(cfg: ModelConfig, n: int, x: int) -> Fraction:
    """Exceptional Krawtchouk polynomial ``hat K_n^{(ell)}(x; p)`` on the grid."""
    if x not in range(-1, cfg.N + 1):
        raise IndexOutOfRange(f"x = {x} is not in the grid -1..{cfg.N}")
    return xl_eval_at(cfg, n, x)


def weight(cfg: ModelConfig, x: int) -> Fraction:
    N, p, q = cfg.N, cfg.p, cfg.q
    return (comb(N + 1, x + 1) * p ** (x + 1) * q ** (N - x)
            / (f_factor(cfg, x) * f_factor(cfg, x + 1)))


def norm(cfg: ModelConfig, n: int) -> Fraction:
    """Closed-form norm, valid for ``0 <= n <= N``."""
    if not 0 <= n <= cfg.N:
        raise IndexOutOfRange("closed-form norm only covers 0 <= n <= N")
    N, p, q, ell = cfg.N, cfg.p, cfg.q, cfg.ell
    return ((-1) ** n * factorial(n) / pochhammer(Fraction(-N), n) * (q / p) ** n
            * (N + 1) * (N + ell - n + 1))


def norm_laurent_limit(cfg: ModelConfig) -> Fraction:
    """The closed-form norm at ``n = N+ell+1`` taken as an ``M -> N`` limit.

    The formula is 0/0 there; with ``M = N + eps`` the simple pole of
    ``1/(-M)_n`` meets the simple zero of ``M + ell - n + 1``.
    """
    n, p, q, ell = cfg.top, cfg.p, cfg.q, cfg.ell
    M = cfg.N + EPS
    expr = ((-1) ** n * factorial(n) * (q / p) ** n
            * (M + 1) * (M + ell - n + 1) / pochhammer(-M, n))
    return laurent_constant_term(expr)


@dataclass(frozen=True)
class XPolynomialTable:
    """Exact values of the exceptional family on the grid, with weights and norms.

    ``values[i][j]`` is the polynomial with label ``cfg.labels[i]`` at
    ``cfg.grid[j]``.
    """

    cfg: ModelConfig
    values: tuple[tuple[Fraction, ...], ...]
    weights: tuple[Fraction, ...]
    norms: tuple[Fraction, ...]

    def value(self, n: int, x: int) -> Fraction:
        return self.values[self.cfg.label_index(n)][x + 1]

    def weight(self, x: int) -> Fraction:
        return self.weights[x + 1]

    def norm(self, n: int) -> Fraction:
        return self.norms[self.cfg.label_index(n)]

    def gram(self) -> list[list[Fraction]]:
        """Matrix of weighted inner products ``sum_x w_x K_m(x) K_n(x)``."""
        V, w = self.values, self.weights
        size = len(V)
        G = [[Fraction(0)] * size for _ in range(size)]
        for a in range(size):
            wa = [wx * v for wx, v in zip(w, V[a])]
            for b in range(a, size):
                G[a][b] = G[b][a] = sum((u * v for u, v in zip(wa, V[b])), Fraction(0))
        return G

    def is_orthogonal(self) -> bool:
        G = self.gram()
        return all(G[a][b] == (self.norms[a] if a == b else 0)
                   for a in range(len(G)) for b in range(len(G)))


@lru_cache(maxsize=256)
def build_table(cfg: ModelConfig) -> XPolynomialTable:
    """Tabulate values, weights and norms for ``cfg``.

    The top norm is computed by exact quadrature since the closed form is
    indeterminate there.
    """
    values = tuple(tuple(xl_eval(cfg, n, x) for x in cfg.grid) for n in cfg.labels)
    weights = tuple(weight(cfg, x) for x in cfg.grid)
    norms = [norm(cfg, n) for n in range(cfg.N + 1)]
    norms.append(sum((w * v * v for w, v in zip(weights, values[-1])), Fraction(0)))
    return XPolynomialTable(cfg, values, weights, tuple(norms))


class RecurrenceCoefficients(NamedTuple):
    """Coefficients of the seven-term recurrence for ``ell = 2``.

    ``alpha, beta, gamma`` multiply the terms ``n+3, n+2, n+1``;
    ``delta, epsilon, zeta`` multiply ``n-1, n-2, n-3``.
    """

    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    delta: Fraction
    epsilon: Fraction
    zeta: Fraction

    @property
    def total(self) -> Fraction:
        """``S_n``, the sum of all six."""
        return sum(self, Fraction(0))

    def by_offset(self) -> dict[int, Fraction]:
        return {3: self.alpha, 2: self.beta, 1: self.gamma,
                -1: self.delta, -2: self.epsilon, -3: self.zeta}


def recurrence_coeffs(cfg: ModelConfig, n: int) -> RecurrenceCoefficients:
    if cfg.ell != 2:
        raise InvalidConfig("explicit recurrence coefficients need ell = 2")
    N, p, q = cfg.N, cfg.p, cfg.q
    D = pochhammer(Fraction(N + 1), 3)
    pq = p * q
    alpha = (N - n + 3) * pochhammer(N - n - 2, 2) / D
    beta = 3 * (N - n + 3) * pochhammer(N - n - 1, 2) * (q - p) / (p * D)
    gamma = 3 * (N - n + 3) * (N - n) * (N - n + 1 - (4 * N - 5 * n + 2) * pq) / (p ** 2 * D)
    delta = 3 * n * (N - n + 3) * q * (N - n + 2 - (4 * N - 5 * n + 7) * pq) / (p ** 3 * D)
    epsilon = 3 * (N - n + 3) * pochhammer(n - 1, 2) * (q - p) * q ** 2 / (p ** 3 * D)
    zeta = pochhammer(n - 2, 3) * q ** 3 / (p ** 3 * D)
    return RecurrenceCoefficients(*(Fraction(c) for c in
                                    (alpha, beta, gamma, delta, epsilon, zeta)))


def eigenvalue_quantum(cfg: ModelConfig, x: int) -> Fraction:
    """``-K_3^{-N-1}(x - N; p)``."""
    return -krawtchouk_eval(3, -cfg.N - 1, Fraction(x - cfg.N), cfg.p)


def eigenvalue_classical(cfg: ModelConfig, x: int) -> Fraction:
    """Generator eigenvalue, shifted so that ``x = -1`` gives zero."""
    return eigenvalue_quantum(cfg, x) - eigenvalue_quantum(cfg, -1)


@dataclass(frozen=True)
class SturmLiouvilleReport:
    """Per-label outcome of the check ``F_N B_N K_n = (N + ell + 1 - n) K_n``.

    ``points`` lists the rational points used for ``n <= N``; the top label
    is checked on the grid, the only place it is defined.
    """

    results: dict[int, bool]
    points: tuple[Fraction, ...]

    @property
    def ok(self) -> bool:
        return all(self.results.values())

    def __bool__(self) -> bool:
        return self.ok


def _apply_fb(cfg: ModelConfig, g, x: Fraction) -> Fraction:
    """``(F_N o B_N)[g](x)`` with ``B_N = (p I + q T^{-1}) / f``."""
    p, q, N = cfg.p, cfg.q, cfg.N
    f0, f1 = f_factor(cfg, x), f_factor(cfg, x + 1)
    out = Fraction(0)
    if x != N:
        out += (N - x) * f0 * (p * g(x + 1) + q * g(x)) / f1
    if x != -1:
        out += (1 + x) * f1 * (p * g(x) + q * g(x - 1)) / f0
    return out


def _sample_points(cfg: ModelConfig, count: int, pool: int) -> tuple[Fraction, ...]:
    pts: list[Fraction] = []
    for k in range(pool):
        # f must be nonzero at both x and x + 1
        x = Fraction(2 * k + 1, 3) - 1
        if f_factor(cfg, x) == 0 or f_factor(cfg, x + 1) == 0:
            continue
        pts.append(x)
        if len(pts) == count:
            return tuple(pts)
    raise SingularEvaluationPoint(
        f"only {len(pts)} of {count} admissible evaluation points in a pool of {pool}")


def verify_sturm_liouville(cfg: ModelConfig) -> SturmLiouvilleReport:
    """Check the second-order difference equation for every label.

    Cleared of the denominators ``f(x) f(x+1)`` both sides are polynomials of
    degree at most ``n + 3 ell + 1``, so that many plus one distinct points
    settle the identity for ``n <= N``.
    """
    if not cfg.positive_weights:
        raise InvalidConfig("the Sturm-Liouville check is run for even ell")
    count = max(cfg.N + cfg.ell + 3, cfg.N + 3 * cfg.ell + 2)
    points = _sample_points(cfg, count, pool=4 * count)
    results = {}
    for n in range(cfg.N + 1):
        g = lambda x, n=n: xl_eval_at(cfg, n, x)
        eig = cfg.top - n
        results[n] = all(_apply_fb(cfg, g, x) == eig * g(x) for x in points)
    table = build_table(cfg)
    g = lambda x: table.value(cfg.top, int(x))
    results[cfg.top] = all(_apply_fb(cfg, g, Fraction(x)) == 0 for x in cfg.grid)
    return SturmLiouvilleReport(results, points)
