"""Named benchmark states and the CLI preset vocabulary.

The constructors build the small family of states used throughout the test
suite and demos: spin coherent states, the pure and diagonal unpolarized
families on the one-, two-, and three-photon shells, and the two
maximal-purity diagonal states.
"""

from __future__ import annotations

import math

import numpy as np

from .states import Direction, SpinSector, diag_sector, pure_sector

__all__ = [
    "two_photon_pure_unpolarized",
    "two_photon_diag_unpolarized",
    "three_photon_pole_superposition",
    "three_photon_first_order_diag",
    "three_photon_second_order_diag",
    "max_purity_first_order_diag",
    "max_purity_second_order_diag",
    "PRESETS",
    "preset_state",
]


def two_photon_pure_unpolarized(alpha: float = 0.0, beta: float = math.pi / 2) -> SpinSector:
    """Pure S=1 state with zero dipole: the rotated |1,0> family.

    Amplitudes (e^{i a} sin b / sqrt2, cos b, -e^{-i a} sin b / sqrt2); every
    member has W_1 = 0 and W_2 = 2/3, saturating the second-order degree.
    """
    s = math.sin(beta) / math.sqrt(2.0)
    return pure_sector(1, [np.exp(1j * alpha) * s, math.cos(beta), -np.exp(-1j * alpha) * s])


def two_photon_diag_unpolarized(lam: float) -> SpinSector:
    """diag(lam, 1-2lam, lam) on the S=1 shell, lam in [0, 1/2]."""
    if not 0.0 <= lam <= 0.5:
        raise ValueError(f"lam = {lam} outside [0, 1/2]")
    return diag_sector(1, [lam, 1.0 - 2.0 * lam, lam])


def three_photon_pole_superposition() -> SpinSector:
    """(|3/2,3/2> + |3/2,-3/2>)/sqrt2: first-order unpolarized but not second."""
    r = 1.0 / math.sqrt(2.0)
    return pure_sector(1.5, [r, 0.0, 0.0, r])


def three_photon_first_order_diag(lam3: float, lam4: float) -> SpinSector:
    """Diagonal S=3/2 state with zero dipole, parametrized by its two low eigenvalues."""
    return diag_sector(1.5, [
        lam3 + 2.0 * lam4 - 0.5,
        -2.0 * lam3 - 3.0 * lam4 + 1.5,
        lam3,
        lam4,
    ])


def three_photon_second_order_diag(lam4: float) -> SpinSector:
    """Diagonal S=3/2 state with zero dipole and quadrupole; lam4 in [1/6, 1/3]."""
    return diag_sector(1.5, [
        0.5 - lam4,
        3.0 * lam4 - 0.5,
        1.0 - 3.0 * lam4,
        lam4,
    ])


def max_purity_first_order_diag() -> SpinSector:
    """diag(0, 3/4, 0, 1/4): purity 5/8, the diagonal first-order-unpolarized maximum."""
    return diag_sector(1.5, [0.0, 0.75, 0.0, 0.25])


def max_purity_second_order_diag() -> SpinSector:
    """diag(1/3, 0, 1/2, 1/6): purity 7/18, the axially symmetric second-order maximum."""
    return diag_sector(1.5, [1 / 3, 0.0, 0.5, 1 / 6])


def _preset_coherent(args) -> dict:
    theta = args.get("theta", math.pi / 3)
    phi = args.get("phi", math.pi / 6)
    two_s = args.get("two_s", 3)
    Direction(theta, phi)  # validate early
    return {"two_S": int(two_s), "weight": 1.0, "form": "coherent",
            "data": {"theta": float(theta), "phi": float(phi)}}


def _preset_pson(args) -> dict:
    alpha = args.get("alpha", 0.0)
    beta = args.get("beta", math.pi / 2)
    s = math.sin(beta) / math.sqrt(2.0)
    amps = [complex(np.exp(1j * alpha) * s), complex(math.cos(beta)), complex(-np.exp(-1j * alpha) * s)]
    return {"two_S": 2, "weight": 1.0, "form": "pure",
            "data": [[z.real, z.imag] for z in amps]}


def _preset_3p(args) -> dict:
    r = 1.0 / math.sqrt(2.0)
    return {"two_S": 3, "weight": 1.0, "form": "pure",
            "data": [[r, 0.0], [0.0, 0.0], [0.0, 0.0], [r, 0.0]]}


def _preset_diag2(args) -> dict:
    lam = args.get("lam", 0.25)
    if not 0.0 <= lam <= 0.5:
        raise ValueError(f"lam = {lam} outside [0, 1/2]")
    return {"two_S": 2, "weight": 1.0, "form": "diag",
            "data": [float(lam), float(1.0 - 2.0 * lam), float(lam)]}


def _preset_diag32nd(args) -> dict:
    lam4 = args.get("lam", 0.2)
    eigs = [0.5 - lam4, 3.0 * lam4 - 0.5, 1.0 - 3.0 * lam4, lam4]
    if any(e < 0 for e in eigs):
        raise ValueError(f"lam = {lam4} outside [1/6, 1/3]")
    return {"two_S": 3, "weight": 1.0, "form": "diag", "data": [float(e) for e in eigs]}


def _preset_fig4_left(args) -> dict:
    return {"two_S": 3, "weight": 1.0, "form": "diag", "data": [0.0, 0.75, 0.0, 0.25]}


def _preset_fig4_right(args) -> dict:
    return {"two_S": 3, "weight": 1.0, "form": "diag", "data": [1 / 3, 0.0, 0.5, 1 / 6]}


# preset name -> (builder(args) -> sector entry, description)
PRESETS = {
    "eq15-coherent": (_preset_coherent, "spin coherent state along (theta, phi)"),
    "eq23-pson": (_preset_pson, "pure two-photon dipole-free state (rotated |1,0>)"),
    "eq27-3p": (_preset_3p, "equal superposition of the two S=3/2 pole states"),
    "eq24-diag2": (_preset_diag2, "two-photon diag(lam, 1-2lam, lam)"),
    "eq29-diag32nd": (_preset_diag32nd, "three-photon second-order diagonal family"),
    "fig4-left": (_preset_fig4_left, "diag(0, 3/4, 0, 1/4), purity 5/8"),
    "fig4-right": (_preset_fig4_right, "diag(1/3, 0, 1/2, 1/6), purity 7/18"),
}


def preset_state(name: str, **args) -> dict:
    """State-file dict for a named preset; raises KeyError for unknown names."""
    builder, _ = PRESETS[name]
    return {"sectors": [builder(args)]}
