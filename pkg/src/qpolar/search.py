"""Extremal unpolarized states: purity maximization and anticoherent search.

Three solvers cover the constraint classes:

* diagonal / axially symmetric — the constraints are linear in the
  eigenvalues, the feasible set is a polytope, and Tr rho^2 is convex, so
  the maximum sits at a vertex; vertices are enumerated exactly.
* general mixed — projected ascent: inflate the state along the purity
  gradient (which is rho itself) and re-project onto the intersection of
  the multipole-vanishing affine subspace with the PSD cone by alternating
  projections, from many random restarts.
* pure — gradient descent of A_K on the normalized amplitude manifold with
  random restarts; convergence to A_K < 1e-10 is an existence certificate
  for an anticoherent state of that order, a reported minimum otherwise.
"""

from __future__ import annotations

import hashlib
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .angmom import HalfInt, half
from .multipole import state_multipoles, tensor_matrix
from .states import SpinSector, diag_sector, maximally_mixed

__all__ = [
    "CONSTRAINT_CLASSES",
    "SearchProblem",
    "RestartRecord",
    "SearchResult",
    "InfeasibleError",
    "max_purity_unpolarized",
    "pure_anticoherent_search",
    "anticoherence_objective",
    "anticoherence_gradient",
    "project_multipole_free",
    "TwoPhotonRow",
    "scan_two_photon_family",
    "ThreePhotonRow",
    "scan_three_photon_family",
]

CONSTRAINT_CLASSES = ("general", "diagonal-in-z-basis", "axially-symmetric", "pure")

_CLASS_ALIASES = {
    "general": "general",
    "diagonal": "diagonal-in-z-basis",
    "diagonal-in-z-basis": "diagonal-in-z-basis",
    "axial": "axially-symmetric",
    "axially-symmetric": "axially-symmetric",
    "pure": "pure",
}


class InfeasibleError(ValueError):
    """The requested constraint class / order combination has no feasible state."""


@dataclass(frozen=True)
class SearchProblem:
    """Search setup: shell spin, unpolarization order, constraint class, solver knobs."""

    spin: HalfInt
    order: int
    constraint_class: str = "general"
    objective: str = "maximize purity"
    restarts: int = 64
    seed: int = 0
    feas_tol: float = 1e-12
    max_iter: int = 400

    def __post_init__(self):
        object.__setattr__(self, "spin", half(self.spin))
        cls = _CLASS_ALIASES.get(self.constraint_class)
        if cls is None:
            raise ValueError(
                f"unknown constraint class {self.constraint_class!r}; "
                f"choose from {CONSTRAINT_CLASSES}"
            )
        object.__setattr__(self, "constraint_class", cls)
        if not 1 <= self.order <= self.spin.twice:
            raise ValueError(
                f"order must lie in [1, 2S] = [1, {self.spin.twice}], got {self.order}"
            )


@dataclass(frozen=True)
class RestartRecord:
    index: int
    objective: float
    residual: float
    iterations: int


@dataclass(frozen=True)
class SearchResult:
    """Best state found, with the per-restart certificate digest."""

    problem: SearchProblem
    state: SpinSector
    objective: float
    residual: float           # A_K at the solution
    digest: str
    history: tuple[RestartRecord, ...]
    feasible_start_purity: float

    @property
    def is_anticoherent(self) -> bool:
        """For pure searches: the minimum qualifies as A_K = 0 at numerical precision."""
        return self.residual < 1e-10


def _digest(history) -> str:
    h = hashlib.sha256()
    for rec in history:
        h.update(
            f"{rec.index}:{rec.objective.hex()}:{rec.residual.hex()}:{rec.iterations}\n".encode()
        )
    return h.hexdigest()


def _constraint_tensors(S: HalfInt, order: int) -> list[np.ndarray]:
    return [
        tensor_matrix(S, K, q)
        for K in range(1, order + 1)
        for q in range(-K, K + 1)
    ]


def _residual_a_k(sector: SpinSector, order: int) -> float:
    spec = state_multipoles(sector)
    return float(spec.cumulative_all[order - 1])


def project_multipole_free(rho: np.ndarray, S, order: int) -> np.ndarray:
    """Orthogonal projection onto {rho: Tr rho = 1, rho_Kq = 0 for 1 <= K <= order}."""
    S = half(S)
    d = S.twice + 1
    out = np.array(rho, dtype=complex)
    for t in _constraint_tensors(S, order):
        c = np.vdot(t, out)
        out -= c * t
    out += (1.0 - np.trace(out)) / d * np.eye(d)
    return out


def _project_psd(rho: np.ndarray) -> np.ndarray:
    sym = 0.5 * (rho + rho.conj().T)
    vals, vecs = np.linalg.eigh(sym)
    vals = np.clip(vals, 0.0, None)
    return (vecs * vals) @ vecs.conj().T


def _feasible_point(rho: np.ndarray, S: HalfInt, order: int, tol: float, max_iter: int = 2000) -> np.ndarray:
    tensors = _constraint_tensors(S, order)
    out = np.array(rho, dtype=complex)
    for _ in range(max_iter):
        out = project_multipole_free(out, S, order)
        sym = 0.5 * (out + out.conj().T)
        vals, vecs = np.linalg.eigh(sym)
        mp_res = max((abs(np.vdot(t, out)) for t in tensors), default=0.0)
        if vals[0] >= -tol and mp_res <= tol:
            return out
        out = (vecs * np.clip(vals, 0.0, None)) @ vecs.conj().T
    raise InfeasibleError(
        f"alternating projections failed to reach feasibility at order {order}"
    )


def _ascend_general(problem: SearchProblem, rho0: np.ndarray):
    S, order = problem.spin, problem.order
    rho = _feasible_point(rho0, S, order, problem.feas_tol)
    best = float(np.vdot(rho, rho).real)
    step = 0.5
    iters = 0
    while step > 1e-10 and iters < problem.max_iter:
        iters += 1
        cand = _feasible_point((1.0 + step) * rho, S, order, problem.feas_tol)
        p = float(np.vdot(cand, cand).real)
        if p > best + 1e-15:
            rho, best = cand, p
        else:
            step *= 0.5
    rho = _feasible_point(rho, S, order, 1e-13, max_iter=20000)
    return rho, float(np.vdot(rho, rho).real), iters


def _diag_constraint_rows(S: HalfInt, order: int) -> np.ndarray:
    # on diagonal states only q = 0 multipoles are nonzero; constrain those
    rows = [np.diag(tensor_matrix(S, K, 0)).real for K in range(1, order + 1)]
    rows.append(np.ones(S.twice + 1))
    return np.stack(rows)


def _diag_vertices(S: HalfInt, order: int) -> list[np.ndarray]:
    c = _diag_constraint_rows(S, order)
    n_eq, d = c.shape
    rhs = np.zeros(n_eq)
    rhs[-1] = 1.0
    verts: list[np.ndarray] = []
    for size in range(1, min(n_eq, d) + 1):
        for support in itertools.combinations(range(d), size):
            sub = c[:, support]
            sol, res, rank, _ = np.linalg.lstsq(sub, rhs, rcond=None)
            if rank < size:
                continue
            if np.linalg.norm(sub @ sol - rhs) > 1e-10 or np.any(sol < -1e-12):
                continue
            v = np.zeros(d)
            v[list(support)] = np.clip(sol, 0.0, None)
            if not any(np.allclose(v, u, atol=1e-10) for u in verts):
                verts.append(v)
    return verts


def _solve_diagonal(problem: SearchProblem):
    verts = _diag_vertices(problem.spin, problem.order)
    if not verts:
        raise InfeasibleError(
            f"no feasible diagonal state at order {problem.order} for spin {problem.spin}"
        )
    history = []
    best_v, best_p = None, -1.0
    for i, v in enumerate(verts):
        p = float(np.dot(v, v))
        sec = diag_sector(problem.spin, v / v.sum())
        history.append(RestartRecord(i, p, _residual_a_k(sec, problem.order), 1))
        if p > best_p + 1e-15:
            best_v, best_p = v, p
    state = diag_sector(problem.spin, best_v / best_v.sum())
    return state, best_p, tuple(history)


def max_purity_unpolarized(problem: SearchProblem) -> SearchResult:
    """Maximize Tr rho^2 over states with vanishing multipoles up to the order.

    Diagonal and axially-symmetric classes are solved exactly by vertex
    enumeration of the eigenvalue polytope (an axially symmetric state is a
    rotated diagonal one, and purity and multipole strengths are rotation
    invariant, so the two classes share an optimum).  The general class runs
    multi-restart projected ascent and is locally optimal only.
    """
    if problem.constraint_class == "pure":
        raise ValueError("use pure_anticoherent_search for the pure class")
    d = problem.spin.twice + 1
    if problem.constraint_class in ("diagonal-in-z-basis", "axially-symmetric"):
        state, best, history = _solve_diagonal(problem)
        return SearchResult(
            problem, state, best, _residual_a_k(state, problem.order),
            _digest(history), history, 1.0 / d,
        )

    rng = np.random.default_rng(problem.seed)
    history = []
    best_state, best_p = maximally_mixed(problem.spin), 1.0 / d
    for i in range(problem.restarts):
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        start = g @ g.conj().T
        start /= np.trace(start).real
        rho, p, iters = _ascend_general(problem, start)
        sec = SpinSector(problem.spin, rho, validate=False)
        history.append(RestartRecord(i, p, _residual_a_k(sec, problem.order), iters))
        if p > best_p + 1e-15:
            best_state, best_p = sec, p
    history = tuple(history)
    return SearchResult(
        problem, best_state, best_p, _residual_a_k(best_state, problem.order),
        _digest(history), history, 1.0 / d,
    )


def anticoherence_objective(psi: np.ndarray, S, order: int) -> float:
    """A_order of the normalized pure state with amplitudes psi."""
    S = half(S)
    v = psi / np.linalg.norm(psi)
    tensors = _constraint_tensors(S, order)
    return float(sum(abs(np.vdot(v, t.conj().T @ v)) ** 2 for t in tensors))


def anticoherence_gradient(x: np.ndarray, S, order: int) -> np.ndarray:
    """Gradient of A_order in the 2(2S+1) real coordinates (re, im) of psi.

    The objective is evaluated on psi/|psi| (degree-4 homogeneous over the
    raw amplitudes divided by |psi|^4); the gradient below is exact at
    |psi| = 1 and is what central finite differences of the normalized
    objective must reproduce.
    """
    S = half(S)
    d = S.twice + 1
    psi = x[:d] + 1j * x[d:]
    norm = np.linalg.norm(psi)
    v = psi / norm
    gc = np.zeros(d, dtype=complex)
    f = 0.0
    for t in _constraint_tensors(S, order):
        a = t.conj().T
        u = complex(np.vdot(v, a @ v))
        f += abs(u) ** 2
        gc += u.conjugate() * (a @ v) + u * (a.conj().T @ v)
    grad_v = np.concatenate([2.0 * gc.real, 2.0 * gc.imag]) - 4.0 * f * np.concatenate([v.real, v.imag])
    return grad_v / norm  # chain rule through the normalization at general |psi|


def _descend_pure(S: HalfInt, order: int, x0: np.ndarray, max_iter: int, gtol: float):
    d = S.twice + 1
    x = x0 / np.linalg.norm(x0)
    f = anticoherence_objective(x[:d] + 1j * x[d:], S, order)
    for it in range(max_iter):
        g = anticoherence_gradient(x, S, order)
        gn = float(np.linalg.norm(g))
        if gn < gtol or f < 1e-24:
            return x, f, it
        t = 0.25
        for _ in range(60):
            y = x - t * g
            y /= np.linalg.norm(y)
            fy = anticoherence_objective(y[:d] + 1j * y[d:], S, order)
            if fy <= f - 1e-4 * t * gn * gn:
                break
            t *= 0.5
        else:
            return x, f, it
        x, f = y, fy
    return x, f, max_iter


def pure_anticoherent_search(
    S,
    order: int,
    restarts: int = 64,
    seed: int = 0,
    max_iter: int = 4000,
    gtol: float = 1e-13,
) -> SearchResult:
    """Minimize A_order over pure states; certifies anticoherence when it hits 0.

    Non-existence is a reported outcome (a strictly positive minimum), not an
    error: e.g. every pure spin-1/2 state is coherent, so the order-1 minimum
    is 1/2.
    """
    problem = SearchProblem(
        half(S), order, constraint_class="pure", objective="minimize A_K",
        restarts=restarts, seed=seed,
    )
    d = problem.spin.twice + 1
    rng = np.random.default_rng(seed)
    history = []
    best_x, best_f = None, math.inf
    for i in range(restarts):
        x0 = rng.standard_normal(2 * d)
        x, f, iters = _descend_pure(problem.spin, order, x0, max_iter, gtol)
        history.append(RestartRecord(i, f, f, iters))
        if f < best_f:
            best_x, best_f = x, f
    history = tuple(history)
    psi = best_x[:d] + 1j * best_x[d:]
    psi /= np.linalg.norm(psi)
    state = SpinSector(problem.spin, np.outer(psi, psi.conj()), validate=False)
    return SearchResult(
        problem, state, best_f, best_f, _digest(history), history, 1.0 / d,
    )


@dataclass(frozen=True)
class TwoPhotonRow:
    lam: float
    purity: float
    p2: float


def scan_two_photon_family(lams) -> list[TwoPhotonRow]:
    """Scan diag(lam, 1-2lam, lam) on the two-photon shell.

    These are the first-order unpolarized axially symmetric states; positivity
    restricts lam to [0, 1/2].  Purity and the second-order degree are
    computed through the multipole machinery, not from closed forms.
    """
    from .multipole import degree  # local import to keep module load light

    rows = []
    for lam in lams:
        lam = float(lam)
        if not 0.0 <= lam <= 0.5:
            raise ValueError(f"lam = {lam} outside [0, 1/2] (positivity)")
        sec = diag_sector(1, [lam, 1.0 - 2.0 * lam, lam])
        spec = state_multipoles(sec)
        rows.append(TwoPhotonRow(lam, sec.purity(), degree(spec, 2)))
    return rows


@dataclass(frozen=True)
class ThreePhotonRow:
    lam3: float
    lam4: float
    feasible: bool
    purity: float | None
    a1: float | None
    a2: float | None
    a3: float | None


def _three_photon_eigs(lam3: float, lam4: float) -> np.ndarray:
    return np.array([
        lam3 + 2.0 * lam4 - 0.5,
        -2.0 * lam3 - 3.0 * lam4 + 1.5,
        lam3,
        lam4,
    ])


def scan_three_photon_family(kind: str, grid) -> list[ThreePhotonRow]:
    """Scan the diagonal three-photon families without first-order polarization.

    kind = "first-order": grid holds (lam3, lam4) pairs; the eigenvalues are
    (lam3+2lam4-1/2, -2lam3-3lam4+3/2, lam3, lam4).  kind = "second-order"
    adds the quadrupole-killing constraint lam3 = 1-3lam4 and grid holds
    lam4 values.  Grid points violating positivity are flagged, not errors.
    """
    if kind not in ("first-order", "second-order"):
        raise ValueError(f"kind must be 'first-order' or 'second-order', got {kind!r}")
    rows = []
    for point in grid:
        if kind == "first-order":
            lam3, lam4 = float(point[0]), float(point[1])
        else:
            lam4 = float(point)
            lam3 = 1.0 - 3.0 * lam4
        eigs = _three_photon_eigs(lam3, lam4)
        if np.any(eigs < -1e-12) or np.any(eigs > 1.0 + 1e-12):
            rows.append(ThreePhotonRow(lam3, lam4, False, None, None, None, None))
            continue
        p = np.clip(eigs, 0.0, None)
        sec = diag_sector(1.5, p / p.sum())
        spec = state_multipoles(sec)
        a = spec.cumulative_all
        rows.append(ThreePhotonRow(lam3, lam4, True, sec.purity(), a[0], a[1], a[2]))
    return rows
