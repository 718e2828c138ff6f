"""Multipole hierarchy of polarization states
=============================================

A shell with N photons carries a spin S = N/2 density matrix.  Expanding it
over irreducible tensors T_Kq gives the multipole components rho_Kq; their
rank strengths W_K and cumulative sums A_K = W_1 + ... + W_K quantify how
much polarization information the state carries up to each order, and the
degrees P_K = sqrt(A_K / A_K,coherent) normalize that against the spin
coherent state, which is the most polarized state at every order.

This script walks through the hierarchy for a few two- and three-photon
states and shows that the scalars are rotation invariant while individual
components are not.
"""

import numpy as np

from qpolar import (
    Direction,
    EulerAngles,
    coherent_cumulative_max,
    degree,
    maximally_mixed,
    rotate,
    state_multipoles,
    su2_coherent,
)
from qpolar.catalog import (
    three_photon_pole_superposition,
    two_photon_diag_unpolarized,
    two_photon_pure_unpolarized,
)


def show(name, sec):
    spec = state_multipoles(sec)
    print(f"\n{name}  (S = {sec.spin}, purity = {sec.purity():.6f})")
    print("  K     W_K         A_K         P_K")
    for K in range(spec.max_rank + 1):
        if K == 0:
            print(f"  {K}     {spec.strengths[0]:<11.6f} {'-':<11} -")
        else:
            print(
                f"  {K}     {spec.strengths[K]:<11.6f} "
                f"{spec.cumulative_all[K-1]:<11.6f} {spec.degrees_all[K-1]:.6f}"
            )
    print(f"  unpolarization order: {spec.unpol_order}")
    return spec


# A coherent state scores P_K = 1 at every order: it is the reference.
coherent = su2_coherent(1.5, Direction(0.8, 0.3))
show("spin coherent state along (0.8, 0.3)", coherent)
for K in (1, 2, 3):
    assert abs(degree(state_multipoles(coherent), K) - 1.0) < 1e-9

# The maximally mixed shell is unpolarized to every order.
show("maximally mixed three-photon shell", maximally_mixed(1.5))

# The pure two-photon family with no dipole: every member has W_2 = 2/3,
# the largest value a two-photon state can reach, so P_2 = 1 at purity 1.
show("pure two-photon state, zero dipole", two_photon_pure_unpolarized(0.4, 1.1))

# Its diagonal (mixed) relatives interpolate down to the fully mixed point.
for lam in (0.0, 0.25, 1 / 3, 0.5):
    spec = show(f"diag(lam, 1-2lam, lam) at lam = {lam:.4f}", two_photon_diag_unpolarized(lam))

# Equal superposition of the two three-photon pole states: the dipole is
# gone but rank 2 and 3 survive.
show("equal pole superposition (three photons)", three_photon_pole_superposition())

# Rotations shuffle the components within each rank but leave every W_K,
# A_K, P_K, and the classification untouched.
rng = np.random.default_rng(0)
sec = three_photon_pole_superposition()
spec0 = state_multipoles(sec)
print("\nrotating the pole superposition by random Euler angles:")
for _ in range(3):
    ang = EulerAngles(*rng.uniform(0, 2 * np.pi, size=3))
    spec1 = state_multipoles(rotate(sec, ang))
    c0 = spec1.component(2, 0)
    print(
        f"  alpha={ang.alpha:.3f} beta={ang.beta:.3f}: rho_20 = {c0.real:+.4f}{c0.imag:+.4f}i"
        f"   W = {np.round(spec1.strengths, 10)}"
    )
    assert np.allclose(spec1.strengths, spec0.strengths, atol=1e-12)
print("  -> components moved, strengths did not")

# The coherent-state cumulative values are the ceiling of the hierarchy.
print("\ncoherent ceiling A_K for the three-photon shell:",
      [round(coherent_cumulative_max(1.5, K), 6) for K in (1, 2, 3)])
