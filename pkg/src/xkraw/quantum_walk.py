"""Continuous-time quantum walk generated by the orthonormal exceptional recurrence.

The Hamiltonian is the symmetrized generator of the classical walk shifted by
the lowest quantum eigenvalue. Its eigenvectors are known in closed form, so
no numerical eigensolver appears anywhere; amplitudes are spectral sums.

Sites are numbered ``0..N+1`` as dense positions, site ``N+1`` carrying
label ``N+3``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Union

import numpy as np

from ._parallel import ordered_map
from .classical_walk import rate_matrix
from .errors import DegenerateSpectrum, IndexOutOfRange, NegativeUnderRoot
from .exactnum import PiMultiple, rational_gcd
from .krawtchouk import ModelConfig, build_table, eigenvalue_quantum

__all__ = [
    "Hamiltonian",
    "SpectralTable",
    "AmplitudeMatrix",
    "Parity",
    "RevivalReport",
    "PSTReport",
    "hamiltonian",
    "spectral_table",
    "amplitude_matrix",
    "perfect_return_time",
    "mu_gap",
    "n0_value",
    "support_parity",
    "theorem_parity",
    "revival_report",
    "pst_scan",
]

Time = Union[float, int, PiMultiple]

ZERO_TOL = 1e-9
SUPPORT_TOL = 1e-6


@dataclass(frozen=True)
class Hamiltonian:
    """Symmetric walk Hamiltonian.

    ``diagonal`` keeps the exact diagonal and ``squares`` the exact squares of
    the nonzero upper-triangle couplings, keyed by site pair.
    """

    cfg: ModelConfig
    entries: np.ndarray
    diagonal: tuple[Fraction, ...]
    squares: dict[tuple[int, int], Fraction]


@lru_cache(maxsize=128)
def hamiltonian(cfg: ModelConfig) -> Hamiltonian:
    A = rate_matrix(cfg).entries
    size = cfg.size
    shift = eigenvalue_quantum(cfg, -1)
    diagonal = tuple(A[i][i] + shift for i in range(size))
    H = np.diag([float(d) for d in diagonal])
    squares = {}
    for i in range(size):
        for j in range(i + 1, size):
            sq = A[i][j] * A[j][i]
            if sq < 0:
                raise NegativeUnderRoot(f"coupling square {sq} at sites ({i}, {j})")
            if sq:
                squares[(i, j)] = sq
                H[i, j] = H[j, i] = math.sqrt(sq)
    return Hamiltonian(cfg, H, diagonal, squares)


@dataclass(frozen=True)
class SpectralTable:
    """Closed-form eigensystem: column ``x + 1`` of ``vectors`` belongs to ``eigenvalues[x + 1]``."""

    cfg: ModelConfig
    eigenvalues: tuple[Fraction, ...]
    vectors: np.ndarray

    @property
    def eigenvalues_float(self) -> np.ndarray:
        return np.array([float(v) for v in self.eigenvalues])

    def residuals(self, H: Optional[Hamiltonian] = None) -> np.ndarray:
        """``max |M v_x - lambda_x v_x|`` for each x."""
        H = H or hamiltonian(self.cfg)
        R = H.entries @ self.vectors - self.vectors * self.eigenvalues_float
        return np.abs(R).max(axis=0)


@lru_cache(maxsize=128)
def spectral_table(cfg: ModelConfig) -> SpectralTable:
    cfg.require_walk()
    tab = build_table(cfg)
    size = cfg.size
    V = np.empty((size, size))
    for n in range(size):
        for x in range(size):
            k = tab.values[n][x]
            # sign(K) * sqrt(w K^2 / h), radicand exact
            V[n, x] = math.copysign(math.sqrt(tab.weights[x] * k * k / tab.norms[n]), k)
    eig = tuple(eigenvalue_quantum(cfg, x) for x in cfg.grid)
    return SpectralTable(cfg, eig, V)


@dataclass(frozen=True)
class AmplitudeMatrix:
    """``entries[i, j] = c_ij(t)``, the amplitude to go from site i to site j."""

    entries: np.ndarray
    time: Time

    @property
    def magnitudes(self) -> np.ndarray:
        return np.abs(self.entries)


def _phases(eig: tuple[Fraction, ...], t: Time) -> np.ndarray:
    """``exp(-i lambda t)``; for ``t = r pi`` the angle is reduced mod 2 pi exactly."""
    if isinstance(t, PiMultiple):
        turns = [(lam * t.coef) % 2 for lam in eig]
        return np.exp(-1j * np.pi * np.array([float(u) for u in turns]))
    lam = np.array([float(v) for v in eig])
    return np.exp(-1j * lam * float(t))


def amplitude_matrix(cfg: ModelConfig, t: Time) -> AmplitudeMatrix:
    """``c_ij(t) = sum_x T_i(x) T_j(x) exp(-i lambda_x t)``."""
    spec = spectral_table(cfg)
    V = spec.vectors
    C = (V * _phases(spec.eigenvalues, t)) @ V.T
    return AmplitudeMatrix(C, t)


def perfect_return_time(cfg: ModelConfig) -> PiMultiple:
    """Smallest ``t0`` at which every phase difference is a multiple of ``2 pi``."""
    cfg.require_walk()
    eig = [eigenvalue_quantum(cfg, x) for x in cfg.grid]
    gaps = [lam - eig[0] for lam in eig]
    if all(g == 0 for g in gaps):
        raise DegenerateSpectrum("all eigenvalues coincide")
    return PiMultiple(2 / rational_gcd(gaps))


def mu_gap(N: int, x: int) -> Fraction:
    """Closed form of consecutive eigenvalue gaps at ``p = 1/2``."""
    if not -1 <= x <= N - 1:
        raise IndexOutOfRange(f"x = {x} outside -1..{N - 1}")
    return -Fraction(N * N - 4 * N * x + 4 * x * x - 3 * N + 8 * x + 6, math.comb(N + 3, 3))


def n0_value(N: int) -> Fraction:
    b = math.comb(N + 3, 3)
    r = N % 8
    if r in (0, 3, 4, 7):
        return Fraction(b, 2)
    if r in (1, 2, 6):
        return Fraction(b, 4)
    return Fraction(b, 8)


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"
    MIXED = "mixed"
    INDETERMINATE = "indeterminate"


def support_parity(row: np.ndarray, zero_tol: float = ZERO_TOL,
                   support_tol: float = SUPPORT_TOL) -> Parity:
    """Classify which site parities carry amplitude.

    Magnitudes between the two tolerances are neither clearly zero nor clearly
    occupied and make the result ``INDETERMINATE``.
    """
    mags = np.abs(np.asarray(row))
    if np.any((mags >= zero_tol) & (mags <= support_tol)):
        return Parity.INDETERMINATE
    parities = {j % 2 for j in np.flatnonzero(mags > support_tol)}
    if parities == {0}:
        return Parity.EVEN
    if parities == {1}:
        return Parity.ODD
    return Parity.MIXED


def theorem_parity(N: int, start: int) -> Parity:
    """Predicted half-period support at ``p = 1/2``.

    For ``N = 6 mod 8`` amplitudes vanish when ``i + j`` is odd, otherwise
    when ``i + j + N`` is even.
    """
    keep = start % 2 if N % 8 == 6 else (start + N + 1) % 2
    return Parity.EVEN if keep == 0 else Parity.ODD


@dataclass(frozen=True)
class RevivalReport:
    """Perfect return and half-period revival for one start site.

    ``t0`` is the minimal return time. ``theorem_t0`` is ``2 n0 pi``, the
    period the parity prediction refers to, and ``theorem_support`` the
    parity actually observed at ``theorem_t0 / 2``; both are ``None`` unless
    ``p = 1/2``.
    """

    cfg: ModelConfig
    start: int
    t0: PiMultiple
    return_fidelity: float
    half_time_support: Parity
    theorem_prediction: Optional[Parity]
    theorem_t0: Optional[PiMultiple] = None
    theorem_support: Optional[Parity] = None

    @property
    def agreement(self) -> Optional[bool]:
        if self.theorem_prediction is None:
            return None
        return self.theorem_support == self.theorem_prediction


def _check_site(cfg: ModelConfig, site: int) -> None:
    if not 0 <= site < cfg.size:
        raise IndexOutOfRange(f"site {site} outside 0..{cfg.size - 1}")


def revival_report(cfg: ModelConfig, start: int) -> RevivalReport:
    _check_site(cfg, start)
    t0 = perfect_return_time(cfg)
    fidelity = float(abs(amplitude_matrix(cfg, t0).entries[start, start]))
    half = support_parity(amplitude_matrix(cfg, t0 / 2).entries[start])
    pred = theorem_t0 = seen = None
    if cfg.p == Fraction(1, 2):
        pred = theorem_parity(cfg.N, start)
        theorem_t0 = PiMultiple(2 * n0_value(cfg.N))
        seen = (half if theorem_t0 == t0
                else support_parity(amplitude_matrix(cfg, theorem_t0 / 2).entries[start]))
    return RevivalReport(cfg, start, t0, min(fidelity, 1.0), half, pred, theorem_t0, seen)


@dataclass(frozen=True)
class PSTReport:
    """Largest off-diagonal modulus per scanned time."""

    times: tuple[Time, ...]
    max_offdiag: np.ndarray
    argmax: tuple[tuple[int, int], ...]
    threshold: float

    @property
    def pst(self) -> bool:
        return bool(np.any(self.max_offdiag > self.threshold))

    @property
    def overall_max(self) -> float:
        return float(self.max_offdiag.max()) if len(self.max_offdiag) else 0.0


def pst_scan(cfg: ModelConfig, times: Iterable[Time], threshold: float = 1 - 1e-6) -> PSTReport:
    """Look for perfect state transfer, ``|c_ij(t)| ~ 1`` with ``i != j``."""
    times = tuple(times)
    spec = spectral_table(cfg)
    V = spec.vectors
    mask = ~np.eye(cfg.size, dtype=bool)

    def one(t):
        mags = np.abs((V * _phases(spec.eigenvalues, t)) @ V.T)
        mags[~mask] = 0.0
        k = int(np.argmax(mags))
        return mags.flat[k], divmod(k, cfg.size)

    results = ordered_map(one, times)
    return PSTReport(times, np.array([r[0] for r in results]),
                     tuple(r[1] for r in results), threshold)
