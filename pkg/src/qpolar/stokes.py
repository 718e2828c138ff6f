"""Stokes operators on a shell, directional moments, and moment-based tomography.

On the spin-S shell the Stokes vector acts as the standard angular-momentum
triple (Sz diagonal with entries m, ladder action for S+/S-).  Directional
moments <(n.S)^l> probe the multipoles of rank <= l, so isotropy of all
moments up to order K is equivalent to K-th-order unpolarization, and
moments measured along enough directions determine the multipole components
up to a chosen rank by linear least squares.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .angmom import HalfInt, half
from .multipole import coherent_cumulative_max, tensor_matrix
from .states import Direction, SpinSector, as_shells

__all__ = [
    "StokesTriple",
    "stokes_matrices",
    "spin_along",
    "directional_moment",
    "total_variance",
    "isotropy_order",
    "fibonacci_directions",
    "MomentSample",
    "sample_moments",
    "ReconstructionResult",
    "moments_to_multipoles",
    "IllConditionedError",
    "read_moments",
    "write_moments",
]


class IllConditionedError(ValueError):
    """Moment-to-multipole system is rank deficient for the given directions."""


@dataclass(frozen=True)
class StokesTriple:
    """The three Stokes (spin) matrices on one shell, basis |S,m> descending."""

    spin: HalfInt
    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray

    @property
    def vector(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (self.sx, self.sy, self.sz)


@lru_cache(maxsize=None)
def _stokes_arrays(twice_s: int):
    S = twice_s / 2.0
    ms = np.arange(twice_s, -twice_s - 1, -2) / 2.0  # m descending
    sz = np.diag(ms.astype(complex))
    sp = np.zeros((twice_s + 1, twice_s + 1), dtype=complex)
    for i in range(1, twice_s + 1):
        m = ms[i]  # S+ |S,m> = sqrt(S(S+1) - m(m+1)) |S,m+1>
        sp[i - 1, i] = math.sqrt(S * (S + 1) - m * (m + 1))
    sm = sp.conj().T
    sx = 0.5 * (sp + sm)
    sy = -0.5j * (sp - sm)
    for a in (sx, sy, sz):
        a.setflags(write=False)
    return sx, sy, sz


def stokes_matrices(S) -> StokesTriple:
    """Stokes operator matrices (Sx, Sy, Sz) on the spin-S shell."""
    S = half(S)
    if S.twice < 0:
        raise ValueError("spin must be non-negative")
    sx, sy, sz = _stokes_arrays(S.twice)
    return StokesTriple(S, sx, sy, sz)


def spin_along(S, direction: Direction) -> np.ndarray:
    """Matrix of n . S for the unit vector n of `direction`."""
    ops = stokes_matrices(S)
    n = direction.unit_vector
    return n[0] * ops.sx + n[1] * ops.sy + n[2] * ops.sz


def directional_moment(obj, direction: Direction, ell: int) -> float:
    """Moment <(n.S)^ell>; shell results are weighted by P_S for multi-shell states."""
    if not isinstance(ell, (int, np.integer)) or ell < 1:
        raise ValueError(f"moment order must be a positive integer, got {ell}")
    total = 0.0
    for w, sec in as_shells(obj):
        sn = spin_along(sec.spin, direction)
        total += w * float(np.trace(sec.rho @ np.linalg.matrix_power(sn, int(ell))).real)
    return total


def _moments_up_to(sector: SpinSector, direction: Direction, max_ell: int) -> np.ndarray:
    sn = spin_along(sector.spin, direction)
    out = np.empty(max_ell)
    acc = sector.rho
    for ell in range(1, max_ell + 1):
        acc = acc @ sn
        out[ell - 1] = float(np.trace(acc).real)
    return out


def total_variance(obj) -> float:
    """Total Stokes variance, sum_i (<S_i^2> - <S_i>^2); >= S on a fixed shell."""
    shells = as_shells(obj)
    sq = 0.0
    mean = np.zeros(3)
    for w, sec in shells:
        ops = stokes_matrices(sec.spin)
        for i, s in enumerate(ops.vector):
            sq += w * float(np.trace(sec.rho @ s @ s).real)
            mean[i] += w * float(np.trace(sec.rho @ s).real)
    return sq - float(np.dot(mean, mean))


def fibonacci_directions(n: int) -> list[Direction]:
    """Deterministic low-discrepancy spiral of n directions on the sphere."""
    if n < 1:
        raise ValueError("need at least one direction")
    golden = math.pi * (3.0 - math.sqrt(5.0))
    out = []
    for i in range(n):
        z = 1.0 - 2.0 * (i + 0.5) / n
        out.append(Direction(math.acos(z), (i * golden) % (2.0 * math.pi)))
    return out


def tomography_directions(n: int) -> list[Direction]:
    """Well-spread deterministic directions for minimal moment tomography.

    The plain spiral is too symmetric for exactly-determined systems (points
    paired across the equator share one azimuth for their vector sums, which
    makes small sets rank deficient); a quadratic azimuth offset breaks the
    arithmetic progression while keeping the set deterministic.
    """
    golden = math.pi * (3.0 - math.sqrt(5.0))
    out = []
    for i in range(n):
        z = 1.0 - 2.0 * (i + 0.5) / n
        out.append(Direction(math.acos(z), (i * golden + 0.05 * i * i) % (2.0 * math.pi)))
    return out


def isotropy_order(
    sector: SpinSector,
    max_ell: int,
    tol: float = 1e-8,
    n_directions: int = 50,
    extra_directions: list[Direction] | None = None,
) -> int:
    """Largest l* <= max_ell with <(n.S)^l> direction-independent for all l <= l*.

    Counts orders the same way as the multipole classifier: a state with
    <n.S> identically zero is isotropic at l = 1 and scores at least 1.
    Directions are a deterministic spiral (plus any user extras) so the
    verdict is reproducible.  Pass a SpinSector; multi-shell states should be
    classified shell by shell, where isotropy and vanishing multipoles are
    equivalent.
    """
    if not isinstance(sector, SpinSector):
        raise TypeError("isotropy_order classifies one shell at a time")
    if max_ell < 1:
        raise ValueError("max_ell must be >= 1")
    if n_directions < 2 * max_ell + 1:
        raise ValueError(
            f"need at least 2*max_ell+1 = {2 * max_ell + 1} directions, got {n_directions}"
        )
    dirs = fibonacci_directions(n_directions) + list(extra_directions or [])
    table = np.stack([_moments_up_to(sector, d, max_ell) for d in dirs])
    order = 0
    for ell in range(1, max_ell + 1):
        col = table[:, ell - 1]
        if col.max() - col.min() > tol:
            break
        order = ell
    return order


@dataclass(frozen=True)
class MomentSample:
    """One measured directional moment <(n.S)^ell>."""

    direction: Direction
    ell: int
    value: float


def sample_moments(sector: SpinSector, directions, max_ell: int) -> list[MomentSample]:
    """Forward-compute noiseless moments l = 1..max_ell along each direction."""
    out = []
    for d in directions:
        vals = _moments_up_to(sector, d, max_ell)
        out.extend(MomentSample(d, ell, float(vals[ell - 1])) for ell in range(1, max_ell + 1))
    return out


@dataclass(frozen=True)
class ReconstructionResult:
    """Multipoles recovered from directional moments by least squares."""

    spin: HalfInt
    k_max: int
    components: dict[tuple[int, int], complex]
    strengths: np.ndarray       # W_K for K = 0..k_max (monopole value fixed by trace)
    cumulative: np.ndarray      # A_K for K = 1..k_max
    degrees: np.ndarray         # P_K for K = 1..k_max
    condition_number: float
    residual: float
    n_samples: int


def _real_unknowns(k_max: int) -> list[tuple[int, int, int]]:
    # (K, q, part): q = 0 real; q > 0 contributes (re, im); q < 0 fixed by hermiticity
    out = []
    for K in range(1, k_max + 1):
        out.append((K, 0, 0))
        for q in range(1, K + 1):
            out.append((K, q, 0))
            out.append((K, q, 1))
    return out


def moments_to_multipoles(samples, S, k_max: int, *, rank_rtol: float = 1e-10) -> ReconstructionResult:
    """Solve the linear moment map for the multipole components up to rank k_max.

    Each sample (direction n, order l, value <(n.S)^l>) is linear in the
    rho_Kq with K <= l, because (n.S)^l expands over tensors of rank <= l.
    Needs moments up to l = k_max on at least 2*k_max+1 distinct directions;
    raises IllConditionedError when the assembled system is rank deficient.
    """
    S = half(S)
    if not 1 <= k_max <= S.twice:
        raise ValueError(f"k_max must lie in [1, 2S] = [1, {S.twice}], got {k_max}")
    samples = [
        s if isinstance(s, MomentSample) else MomentSample(s[0], int(s[1]), float(s[2]))
        for s in samples
    ]
    if not samples:
        raise ValueError("no moment samples given")
    dirs = {(round(s.direction.theta, 12), round(s.direction.phi, 12)) for s in samples}
    if len(dirs) < 2 * k_max + 1:
        raise IllConditionedError(
            f"{len(dirs)} distinct directions cannot span rank {k_max}; "
            f"need at least {2 * k_max + 1}"
        )
    unknowns = _real_unknowns(k_max)
    d = S.twice + 1
    a = np.zeros((len(samples), len(unknowns)))
    b = np.empty(len(samples))
    for i, s in enumerate(samples):
        if s.ell < 1:
            raise ValueError("moment order must be >= 1")
        sn = spin_along(S, s.direction)
        snl = np.linalg.matrix_power(sn, s.ell)
        b[i] = s.value - float(np.trace(snl).real) / d  # remove the fixed monopole part
        for col, (K, q, part) in enumerate(unknowns):
            t = complex(np.trace(tensor_matrix(S, K, q) @ snl))
            if q == 0:
                a[i, col] = t.real
            else:
                a[i, col] = 2.0 * t.real if part == 0 else -2.0 * t.imag
    sol, res, rank, sing = np.linalg.lstsq(a, b, rcond=None)
    if sing[0] == 0 or sing[-1] < rank_rtol * sing[0]:
        raise IllConditionedError(
            "direction set is rank deficient: singular values span "
            f"[{sing[-1]:.3e}, {sing[0]:.3e}] over {len(dirs)} directions"
        )
    cond = float(sing[0] / sing[-1])
    residual = float(np.linalg.norm(a @ sol - b))

    comps: dict[tuple[int, int], complex] = {(0, 0): 1.0 / math.sqrt(d)}
    for col, (K, q, part) in enumerate(unknowns):
        if q == 0:
            comps[(K, 0)] = complex(sol[col])
        elif part == 0:  # the re column precedes the im column for each (K, q)
            comps[(K, q)] = complex(sol[col], 0.0)
        else:
            comps[(K, q)] = complex(comps[(K, q)].real, sol[col])
    for K in range(1, k_max + 1):
        for q in range(1, K + 1):
            comps[(K, -q)] = (-1) ** q * comps[(K, q)].conjugate()

    W = np.zeros(k_max + 1)
    W[0] = 1.0 / d
    for K in range(1, k_max + 1):
        W[K] = sum(abs(comps[(K, q)]) ** 2 for q in range(-K, K + 1))
    A = np.cumsum(W[1:])
    P = np.array([
        math.sqrt(max(0.0, A[K - 1]) / coherent_cumulative_max(S, K))
        for K in range(1, k_max + 1)
    ])
    return ReconstructionResult(S, k_max, comps, W, A, P, cond, residual, len(samples))


def write_moments(samples, path) -> None:
    """Write moment samples as CSV rows theta,phi,ell,value."""
    with open(path, "w") as fh:
        fh.write("theta,phi,ell,value\n")
        for s in samples:
            fh.write(f"{s.direction.theta!r},{s.direction.phi!r},{s.ell},{s.value!r}\n")


def read_moments(path) -> list[MomentSample]:
    """Read moment samples from CSV (theta,phi,ell,value; header optional)."""
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or line.startswith("theta"):
                continue
            parts = line.split(",")
            if len(parts) != 4:
                raise ValueError(f"malformed moments row: {line!r}")
            theta, phi, ell, value = float(parts[0]), float(parts[1]), int(parts[2]), float(parts[3])
            out.append(MomentSample(Direction(theta, phi), ell, value))
    return out
