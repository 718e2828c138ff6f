"""Irreducible tensor multipoles of shell density matrices.

The rank-K tensors T_Kq on a spin-S shell are built from exact
Clebsch-Gordan coefficients,

    T_Kq[m', m] = sqrt((2K+1)/(2S+1)) <S m, K q | S m'>,

so they form an orthonormal (Hilbert-Schmidt) operator basis.  A state's
multipole components rho_Kq = Tr[rho T_Kq^dagger] carry all polarization
information: the rank strengths W_K = sum_q |rho_Kq|^2 are rotation
invariants, their cumulative sums A_K (monopole excluded) measure the
information up to order K, and the degrees P_K normalize A_K by the spin
coherent-state value, which is the attainable maximum.  A state is
K-th-order unpolarized when A_K vanishes.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .angmom import HalfInt, clebsch_gordan, half, m_range
from .states import SpinSector, as_shells

__all__ = [
    "TensorOperator",
    "tensor_operator",
    "tensor_matrix",
    "MultipoleSpectrum",
    "state_multipoles",
    "strengths",
    "cumulative",
    "coherent_cumulative_max",
    "degree",
    "unpolarization_order",
    "AxialProfile",
    "axial_profile",
    "ShellReport",
    "PolarizationReport",
    "analyze",
    "DEFAULT_ORDER_TOL",
]

DEFAULT_ORDER_TOL = 1e-10

# (2S, K, q) -> read-only float matrix; idempotent fill, safe for concurrent readers
_TENSOR_CACHE: dict[tuple[int, int, int], np.ndarray] = {}
_TENSOR_LOCK = threading.Lock()


@dataclass(frozen=True)
class TensorOperator:
    """Irreducible tensor T_Kq on a spin-S shell (unit Hilbert-Schmidt norm)."""

    spin: HalfInt
    rank: int
    component: int
    matrix: np.ndarray


def _check_rank(S: HalfInt, K: int, q: int | None = None) -> None:
    if not isinstance(K, (int, np.integer)) or not 0 <= K <= S.twice:
        raise ValueError(f"rank K must be an integer in [0, 2S] = [0, {S.twice}], got {K}")
    if q is not None and (not isinstance(q, (int, np.integer)) or abs(q) > K):
        raise ValueError(f"component q must be an integer with |q| <= K = {K}, got {q}")


def tensor_matrix(S, K: int, q: int) -> np.ndarray:
    """Matrix of T_Kq (cached, read-only)."""
    S = half(S)
    _check_rank(S, K, q)
    key = (S.twice, int(K), int(q))
    mat = _TENSOR_CACHE.get(key)
    if mat is not None:
        return mat
    t = S.twice
    scale = math.sqrt((2 * K + 1) / (t + 1))
    out = np.zeros((t + 1, t + 1))
    ms = m_range(S)
    for col, m in enumerate(ms):
        tmp = m.twice + 2 * q
        if abs(tmp) > t:
            continue
        row = (t - tmp) // 2
        out[row, col] = scale * float(
            clebsch_gordan(S, m, K, q, S, HalfInt(tmp))
        )
    out.setflags(write=False)
    with _TENSOR_LOCK:
        return _TENSOR_CACHE.setdefault(key, out)


def tensor_operator(S, K: int, q: int) -> TensorOperator:
    """Irreducible tensor operator T_Kq with its labels."""
    S = half(S)
    return TensorOperator(S, int(K), int(q), tensor_matrix(S, K, q))


def tensor_stack(S, K: int) -> tuple[list[tuple[int, int]], np.ndarray]:
    """All (rank, component) labels with rank <= K and the stacked matrices."""
    S = half(S)
    _check_rank(S, K)
    labels = [(k, q) for k in range(K + 1) for q in range(-k, k + 1)]
    mats = np.stack([tensor_matrix(S, k, q) for k, q in labels])
    return labels, mats


@dataclass(frozen=True)
class MultipoleSpectrum:
    """Multipole decomposition of one shell: components, strengths, and degrees.

    `strengths[K]` is W_K for K = 0..2S; `cumulative_all[K-1]` is A_K and
    `degrees_all[K-1]` is P_K for K = 1..2S.  `unpol_order` is the largest K
    with A_K <= tol (0 if the dipole already survives, 2S if fully
    unpolarized).
    """

    spin: HalfInt
    components: dict[tuple[int, int], complex]
    strengths: np.ndarray
    cumulative_all: np.ndarray
    degrees_all: np.ndarray
    unpol_order: int
    tol: float

    def component(self, K: int, q: int) -> complex:
        return self.components[(int(K), int(q))]

    @property
    def max_rank(self) -> int:
        return self.spin.twice


def _order_from_cumulative(cum: np.ndarray, tol: float) -> int:
    order = 0
    for i, a in enumerate(cum):
        if a <= tol:
            order = i + 1
        else:
            break
    return order


def state_multipoles(sector: SpinSector, *, tol: float = DEFAULT_ORDER_TOL) -> MultipoleSpectrum:
    """Full multipole spectrum rho_Kq = Tr[rho T_Kq^dagger] of one shell."""
    S = sector.spin
    rho = sector.rho
    comps: dict[tuple[int, int], complex] = {}
    W = np.zeros(S.twice + 1)
    for K in range(S.twice + 1):
        wk = 0.0
        for q in range(-K, K + 1):
            c = complex(np.vdot(tensor_matrix(S, K, q), rho))
            comps[(K, q)] = c
            wk += abs(c) ** 2
        W[K] = wk
    A = np.cumsum(W[1:])
    P = np.array([
        math.sqrt(max(0.0, A[K - 1]) / coherent_cumulative_max(S, K))
        for K in range(1, S.twice + 1)
    ])
    order = _order_from_cumulative(A, tol)
    return MultipoleSpectrum(S, comps, W, A, P, order, tol)


def strengths(spectrum: MultipoleSpectrum) -> np.ndarray:
    """Multipole strengths W_K, K = 0..2S."""
    return spectrum.strengths.copy()


def cumulative(spectrum: MultipoleSpectrum, K: int) -> float:
    """Cumulative distribution A_K = W_1 + ... + W_K (monopole excluded)."""
    _check_rank(spectrum.spin, K)
    if K < 1:
        raise ValueError("A_K starts at K = 1; the monopole is excluded")
    return float(spectrum.cumulative_all[K - 1])


def coherent_cumulative_max(S, K: int) -> float:
    """A_K of a spin coherent state: 2S/(2S+1) - [(2S)!]^2 / [(2S-K-1)!(2S+K+1)!].

    This is the largest A_K attainable on the shell.  At K = 2S the second
    term vanishes (its Gamma-function form hits 1/Gamma(0) = 0) and the value
    is 2S/(2S+1).
    """
    S = half(S)
    _check_rank(S, K)
    if K < 1:
        raise ValueError("A_K starts at K = 1; the monopole is excluded")
    t = S.twice
    val = Fraction(t, t + 1)
    if K < t:
        val -= Fraction(
            math.factorial(t) ** 2,
            math.factorial(t - K - 1) * math.factorial(t + K + 1),
        )
    return float(val)


def degree(spectrum: MultipoleSpectrum, K: int) -> float:
    """Degree of polarization of order K, P_K = sqrt(A_K / A_K,coherent)."""
    _check_rank(spectrum.spin, K)
    if K < 1:
        raise ValueError("P_K starts at K = 1")
    return float(spectrum.degrees_all[K - 1])


def unpolarization_order(spectrum: MultipoleSpectrum, tol: float = DEFAULT_ORDER_TOL) -> int:
    """Largest K with A_K <= tol; 0 if the dipole survives, 2S if fully unpolarized."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    return _order_from_cumulative(spectrum.cumulative_all, tol)


@dataclass(frozen=True)
class AxialProfile:
    """Axial-symmetry diagnostics of a shell state."""

    axial_about_z: bool
    off_axis_residual: float  # max |rho_Kq|, q != 0
    even_ranks_only: bool     # all odd-K rho_K0 vanish (z-reversal symmetry)
    odd_rank_residual: float
    tol: float


def axial_profile(sector: SpinSector, tol: float = DEFAULT_ORDER_TOL) -> AxialProfile:
    """Check for axial symmetry about z (only q = 0 multipoles) and z-reversal parity."""
    spec = state_multipoles(sector)
    off = 0.0
    odd = 0.0
    for (K, q), c in spec.components.items():
        if q != 0:
            off = max(off, abs(c))
        elif K % 2 == 1:
            odd = max(odd, abs(c))
    return AxialProfile(off <= tol, off, odd <= tol, odd, tol)


@dataclass(frozen=True)
class ShellReport:
    """Per-shell slice of a polarization analysis."""

    weight: float
    spectrum: MultipoleSpectrum
    purity: float


@dataclass(frozen=True)
class PolarizationReport:
    """Shell-wise multipole analysis plus P_S-weighted aggregates.

    The per-shell spectra are the primary result.  `aggregate_cumulative[K-1]`
    is the convention-level aggregate A-bar_K = sum_S P_S A_K^(S) (with A_K
    saturating at A_2S on shells of lower spin), and `aggregate_order` is the
    largest K with A-bar_K <= tol.
    """

    shells: tuple[ShellReport, ...]
    aggregate_cumulative: np.ndarray
    aggregate_order: int
    block_purity: float
    tol: float


def analyze(obj, *, tol: float = DEFAULT_ORDER_TOL) -> PolarizationReport:
    """Analyze a SpinSector or PolarizationState shell-wise."""
    shells = as_shells(obj)
    reports = tuple(
        ShellReport(w, state_multipoles(sec, tol=tol), sec.purity())
        for w, sec in shells
    )
    k_top = max(sec.spin.twice for _, sec in shells)
    agg = np.zeros(k_top)
    for rep in reports:
        cum = rep.spectrum.cumulative_all
        for K in range(1, k_top + 1):
            agg[K - 1] += rep.weight * (cum[min(K, len(cum)) - 1] if len(cum) else 0.0)
    block = float(sum(w * w * rep.purity for (w, _), rep in zip(shells, reports)))
    return PolarizationReport(reports, agg, _order_from_cumulative(agg, tol), block, tol)
