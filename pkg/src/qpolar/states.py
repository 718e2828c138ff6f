"""Polarization-sector density matrices on fixed photon-number shells.

A shell with photon number N = 2S is the (2S+1)-dimensional spin-S space
spanned by |S, m> (m descending).  :class:`SpinSector` wraps one validated
density matrix on such a shell; :class:`PolarizationState` is the
block-diagonal combination over shells with photon-number weights P_S, the
only part of a two-mode state visible to polarization measurements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .angmom import EulerAngles, HalfInt, dim, half, m_range, wigner_D

__all__ = [
    "DEFAULT_TOL",
    "Direction",
    "ValidationReport",
    "SpinSector",
    "PolarizationState",
    "validate",
    "fock_sector",
    "coherent_amplitudes",
    "su2_coherent",
    "diag_sector",
    "pure_sector",
    "maximally_mixed",
    "rotate",
    "mix",
    "purity",
    "assemble",
    "random_sector",
    "random_pure_sector",
    "random_direction",
    "random_angles",
]

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Direction:
    """Point on the Poincare sphere: polar theta in [0, pi], azimuth phi in [0, 2pi)."""

    theta: float
    phi: float

    def __post_init__(self):
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise ValueError("direction angles must be finite")
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if not 0.0 <= self.phi < 2.0 * math.pi:
            raise ValueError(f"phi must lie in [0, 2*pi), got {self.phi}")

    @classmethod
    def from_vector(cls, v) -> "Direction":
        v = np.asarray(v, dtype=float)
        n = np.linalg.norm(v)
        if n == 0:
            raise ValueError("zero vector has no direction")
        theta = math.acos(min(1.0, max(-1.0, v[2] / n)))
        phi = math.atan2(v[1], v[0]) % (2.0 * math.pi)
        return cls(theta, phi)

    @property
    def unit_vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([
            st * math.cos(self.phi),
            st * math.sin(self.phi),
            math.cos(self.theta),
        ])


@dataclass(frozen=True)
class ValidationReport:
    """Hermiticity / trace / positivity diagnostics for a candidate density matrix."""

    hermiticity_deviation: float
    trace_deviation: float
    min_eigenvalue: float
    tol: float

    @property
    def hermitian_ok(self) -> bool:
        return self.hermiticity_deviation <= self.tol

    @property
    def trace_ok(self) -> bool:
        return self.trace_deviation <= self.tol

    @property
    def positive_ok(self) -> bool:
        return self.min_eigenvalue >= -self.tol

    @property
    def ok(self) -> bool:
        return self.hermitian_ok and self.trace_ok and self.positive_ok

    def message(self) -> str:
        problems = []
        if not self.hermitian_ok:
            problems.append(f"hermiticity deviation {self.hermiticity_deviation:.3e}")
        if not self.trace_ok:
            problems.append(f"trace deviation {self.trace_deviation:.3e}")
        if not self.positive_ok:
            problems.append(f"negative eigenvalue {self.min_eigenvalue:.3e}")
        if not problems:
            return "ok"
        return "; ".join(problems)


def _diagnose(rho: np.ndarray, tol: float) -> ValidationReport:
    herm = float(np.max(np.abs(rho - rho.conj().T))) if rho.size else 0.0
    trace = abs(complex(np.trace(rho)) - 1.0)
    sym = 0.5 * (rho + rho.conj().T)
    min_eig = float(np.linalg.eigvalsh(sym)[0])
    return ValidationReport(herm, float(trace), min_eig, tol)


class SpinSector:
    """Density matrix on one photon-number shell (spin S, basis |S,m>, m descending).

    Validated on construction by default (Hermitian, unit trace, positive
    semidefinite, each within `tol`); pass ``validate=False`` to skip, e.g.
    for matrices known valid by construction.  Immutable once built.
    """

    __slots__ = ("spin", "rho")

    def __init__(self, spin, rho, *, validate: bool = True, tol: float = DEFAULT_TOL):
        spin = half(spin)
        if spin.twice < 0:
            raise ValueError("spin must be non-negative")
        rho = np.array(rho, dtype=complex)
        d = dim(spin)
        if rho.shape != (d, d):
            raise ValueError(f"expected a {d}x{d} matrix for spin {spin}, got {rho.shape}")
        if validate:
            report = _diagnose(rho, tol)
            if not report.ok:
                raise ValueError(f"invalid density matrix: {report.message()}")
        rho.setflags(write=False)
        self.spin = spin
        self.rho = rho

    @property
    def dim(self) -> int:
        return self.rho.shape[0]

    def purity(self) -> float:
        return float(np.vdot(self.rho, self.rho).real)

    def expect(self, op: np.ndarray) -> complex:
        return complex(np.trace(self.rho @ op))

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(0.5 * (self.rho + self.rho.conj().T))

    def __repr__(self):
        return f"SpinSector(spin={self.spin}, dim={self.dim})"


def validate(sector: SpinSector, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Diagnostic report for a sector's density matrix (never raises)."""
    return _diagnose(np.asarray(sector.rho), tol)


def fock_sector(S, m) -> SpinSector:
    """Pure basis state |S,m><S,m|."""
    S, m = half(S), half(m)
    if abs(m.twice) > S.twice or (S.twice - m.twice) % 2 != 0:
        raise ValueError(f"m = {m} is not a valid projection for S = {S}")
    rho = np.zeros((dim(S), dim(S)), dtype=complex)
    idx = (S.twice - m.twice) // 2
    rho[idx, idx] = 1.0
    return SpinSector(S, rho, validate=False)


def coherent_amplitudes(S, direction: Direction) -> np.ndarray:
    """Amplitudes of the spin coherent state pointing along `direction`.

    The state is defined by (n.S)|theta,phi> = +S|theta,phi>: the north pole
    gives |S,S>.  Component on |S,m> is
    sqrt(C(2S, S+m)) cos(theta/2)^(S+m) sin(theta/2)^(S-m) exp(-i m phi),
    i.e. the rotation of |S,S> by Euler angles (phi, theta, 0).
    """
    S = half(S)
    t = S.twice
    ch, sh = math.cos(direction.theta / 2.0), math.sin(direction.theta / 2.0)
    amps = np.empty(t + 1, dtype=complex)
    for i, m in enumerate(m_range(S)):
        k = (t + m.twice) // 2  # S+m
        mag = math.sqrt(math.comb(t, k)) * ch ** k * sh ** (t - k)
        amps[i] = mag * np.exp(-1j * (m.twice / 2.0) * direction.phi)
    return amps


def su2_coherent(S, direction: Direction) -> SpinSector:
    """Pure spin coherent state along `direction` (eigenstate of n.S, eigenvalue +S)."""
    amps = coherent_amplitudes(S, direction)
    return SpinSector(half(S), np.outer(amps, amps.conj()), validate=False)


def diag_sector(S, eigenvalues, *, tol: float = DEFAULT_TOL) -> SpinSector:
    """Diagonal sector diag(p_m) in the |S,m> basis (axially symmetric about z)."""
    S = half(S)
    p = np.asarray(eigenvalues, dtype=float)
    if p.shape != (dim(S),):
        raise ValueError(f"expected {dim(S)} eigenvalues for spin {S}, got {p.shape}")
    if np.any(p < -tol):
        raise ValueError(f"negative entry {p.min()} in eigenvalue list")
    if abs(p.sum() - 1.0) > tol:
        raise ValueError(f"eigenvalues sum to {p.sum()}, expected 1")
    return SpinSector(S, np.diag(p.astype(complex)), validate=False)


def pure_sector(S, amplitudes) -> SpinSector:
    """Normalized pure state |psi><psi| from amplitudes in the |S,m> basis."""
    S = half(S)
    v = np.asarray(amplitudes, dtype=complex)
    if v.shape != (dim(S),):
        raise ValueError(f"expected {dim(S)} amplitudes for spin {S}, got {v.shape}")
    n = np.linalg.norm(v)
    if n == 0:
        raise ValueError("zero amplitude vector")
    v = v / n
    return SpinSector(S, np.outer(v, v.conj()), validate=False)


def maximally_mixed(S) -> SpinSector:
    """The fully unpolarized shell state, identity / (2S+1)."""
    d = dim(half(S))
    return SpinSector(S, np.eye(d, dtype=complex) / d, validate=False)


def rotate(sector: SpinSector, angles: EulerAngles) -> SpinSector:
    """Rotated sector D rho D^dagger (spectrum and purity preserved)."""
    D = wigner_D(sector.spin, angles)
    return SpinSector(sector.spin, D @ sector.rho @ D.conj().T, validate=False)


def mix(entries, *, tol: float = DEFAULT_TOL) -> SpinSector:
    """Convex combination of same-spin sectors."""
    entries = list(entries)
    if not entries:
        raise ValueError("empty mixture")
    spin = entries[0][1].spin
    total = 0.0
    rho = np.zeros_like(entries[0][1].rho)
    for w, sec in entries:
        if sec.spin != spin:
            raise ValueError(f"mixed spins in mixture: {sec.spin} vs {spin}")
        if w < -tol:
            raise ValueError(f"negative mixture weight {w}")
        rho = rho + w * sec.rho
        total += w
    if abs(total - 1.0) > tol:
        raise ValueError(f"mixture weights sum to {total}, expected 1")
    return SpinSector(spin, rho, validate=False)


class PolarizationState:
    """Block-diagonal polarization sector: weighted shells (P_S, rho^(S)).

    Weights are the photon-number distribution; they must be non-negative and
    sum to 1, with at most one sector per spin.  Immutable.
    """

    __slots__ = ("entries",)

    def __init__(self, entries, *, tol: float = DEFAULT_TOL):
        entries = tuple((float(w), sec) for w, sec in entries)
        if not entries:
            raise ValueError("polarization state needs at least one shell")
        seen = set()
        total = 0.0
        for w, sec in entries:
            if not isinstance(sec, SpinSector):
                raise ValueError("entries must be (weight, SpinSector) pairs")
            if w < -tol:
                raise ValueError(f"negative shell weight {w}")
            if sec.spin.twice in seen:
                raise ValueError(f"duplicate shell for spin {sec.spin}")
            seen.add(sec.spin.twice)
            total += w
        if abs(total - 1.0) > tol:
            raise ValueError(f"shell weights sum to {total}, expected 1")
        self.entries = entries

    @property
    def spins(self) -> list[HalfInt]:
        return [sec.spin for _, sec in self.entries]

    def weight(self, S) -> float:
        S = half(S)
        for w, sec in self.entries:
            if sec.spin == S:
                return w
        raise KeyError(f"no shell with spin {S}")

    def sector(self, S) -> SpinSector:
        S = half(S)
        for _, sec in self.entries:
            if sec.spin == S:
                return sec
        raise KeyError(f"no shell with spin {S}")

    def purity(self) -> float:
        """Purity of the block-diagonal state, sum_S P_S^2 Tr[rho_S^2]."""
        return float(sum(w * w * sec.purity() for w, sec in self.entries))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __repr__(self):
        shells = ", ".join(f"S={sec.spin}:{w:g}" for w, sec in self.entries)
        return f"PolarizationState({shells})"


def assemble(entries, *, tol: float = DEFAULT_TOL) -> PolarizationState:
    """Build a PolarizationState from (weight, sector) pairs."""
    return PolarizationState(entries, tol=tol)


def as_shells(obj) -> list[tuple[float, SpinSector]]:
    """Uniform shell view: a bare sector counts as a single shell of weight 1."""
    if isinstance(obj, SpinSector):
        return [(1.0, obj)]
    if isinstance(obj, PolarizationState):
        return list(obj.entries)
    raise TypeError(f"expected SpinSector or PolarizationState, got {type(obj).__name__}")


def purity(obj) -> float:
    """Tr rho^2 of a sector, or the block purity of a PolarizationState."""
    if isinstance(obj, SpinSector):
        return obj.purity()
    if isinstance(obj, PolarizationState):
        return obj.purity()
    raise TypeError(f"expected SpinSector or PolarizationState, got {type(obj).__name__}")


def random_sector(S, rng: np.random.Generator, rank: int | None = None) -> SpinSector:
    """Random full(ish)-rank density matrix from the Ginibre ensemble."""
    d = dim(half(S))
    k = d if rank is None else int(rank)
    g = rng.standard_normal((d, k)) + 1j * rng.standard_normal((d, k))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    return SpinSector(S, rho, validate=False)


def random_pure_sector(S, rng: np.random.Generator) -> SpinSector:
    """Haar-random pure state on the shell."""
    d = dim(half(S))
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return pure_sector(S, v)


def random_direction(rng: np.random.Generator) -> Direction:
    """Uniform random point on the sphere."""
    z = rng.uniform(-1.0, 1.0)
    phi = rng.uniform(0.0, 2.0 * math.pi)
    return Direction(math.acos(z), phi)


def random_angles(rng: np.random.Generator) -> EulerAngles:
    """Haar-ish random Euler angles (uniform alpha/gamma, cos-uniform beta)."""
    return EulerAngles(
        rng.uniform(0.0, 2.0 * math.pi),
        math.acos(rng.uniform(-1.0, 1.0)),
        rng.uniform(0.0, 2.0 * math.pi),
    )
