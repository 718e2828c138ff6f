"""Exact angular-momentum algebra: Clebsch-Gordan coefficients and Wigner rotations.

Spins and magnetic quantum numbers are carried as :class:`HalfInt` (twice the
value, stored as an exact integer), so half-integer bookkeeping never touches
floats.  Clebsch-Gordan coefficients are evaluated with the Racah factorial
sum in arbitrary-precision rational arithmetic and returned exactly as
:class:`SignedSqrtRational`; conversion to float happens only at the caller's
request.

All matrices produced here index both rows and columns by m in *descending*
order (m = j at row 0).  Euler angles follow the active z-y-z convention,
D(alpha, beta, gamma) = exp(-i alpha Jz) exp(-i beta Jy) exp(-i gamma Jz).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

__all__ = [
    "HalfInt",
    "half",
    "m_range",
    "SignedSqrtRational",
    "clebsch_gordan",
    "wigner_small_d",
    "wigner_D",
    "EulerAngles",
    "rotation_matrix",
]


class HalfInt:
    """An integer or half-integer quantum number, stored exactly as twice its value."""

    __slots__ = ("twice",)

    def __init__(self, twice: int):
        if isinstance(twice, bool) or not isinstance(twice, (int, np.integer)):
            raise ValueError(f"twice must be an integer, got {twice!r}")
        self.twice = int(twice)

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __float__(self) -> float:
        return self.twice / 2.0

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __add__(self, other):
        return HalfInt(self.twice + half(other).twice)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt(self.twice - half(other).twice)

    def __rsub__(self, other):
        return HalfInt(half(other).twice - self.twice)

    def __neg__(self):
        return HalfInt(-self.twice)

    def __abs__(self):
        return HalfInt(abs(self.twice))

    def __eq__(self, other):
        try:
            return self.twice == half(other).twice
        except (ValueError, TypeError):
            return NotImplemented

    def __lt__(self, other):
        return self.twice < half(other).twice

    def __le__(self, other):
        return self.twice <= half(other).twice

    def __gt__(self, other):
        return self.twice > half(other).twice

    def __ge__(self, other):
        return self.twice >= half(other).twice

    def __hash__(self):
        return hash(self.twice)

    def __repr__(self):
        if self.is_integer:
            return f"HalfInt({self.twice // 2})"
        return f"HalfInt({self.twice}/2)"

    def __str__(self):
        return str(self.twice // 2) if self.is_integer else f"{self.twice}/2"


def half(value) -> HalfInt:
    """Coerce an int, float, Fraction, or HalfInt to a HalfInt."""
    if isinstance(value, HalfInt):
        return value
    if isinstance(value, bool):
        raise ValueError("bool is not a valid half-integer")
    if isinstance(value, (int, np.integer)):
        return HalfInt(2 * int(value))
    if isinstance(value, Fraction):
        twice = 2 * value
        if twice.denominator != 1:
            raise ValueError(f"{value} is not an integer or half-integer")
        return HalfInt(twice.numerator)
    if isinstance(value, (float, np.floating)):
        twice = 2.0 * float(value)
        if twice != round(twice):
            raise ValueError(f"{value} is not an integer or half-integer")
        return HalfInt(int(round(twice)))
    raise ValueError(f"cannot interpret {value!r} as a half-integer")


def m_range(j) -> list[HalfInt]:
    """Magnetic quantum numbers m = j, j-1, ..., -j (descending; the index contract)."""
    tj = half(j).twice
    if tj < 0:
        raise ValueError("spin magnitude must be non-negative")
    return [HalfInt(tm) for tm in range(tj, -tj - 1, -2)]


def dim(j) -> int:
    """Dimension 2j+1 of the spin-j representation."""
    return half(j).twice + 1


def _check_jm(j: HalfInt, m: HalfInt, names: str) -> None:
    if j.twice < 0:
        raise ValueError(f"{names}: spin magnitude must be non-negative, got {j}")
    if (j.twice - m.twice) % 2 != 0:
        raise ValueError(f"{names}: m = {m} and j = {j} must differ by an integer")
    if abs(m.twice) > j.twice:
        raise ValueError(f"{names}: |m| = {abs(m)} exceeds j = {j}")


@dataclass(frozen=True)
class SignedSqrtRational:
    """Exact value sign * sqrt(numerator / denominator), fraction in lowest terms."""

    sign: int
    numerator: int
    denominator: int

    @classmethod
    def zero(cls) -> "SignedSqrtRational":
        return cls(0, 0, 1)

    @classmethod
    def from_fraction(cls, sign: int, square: Fraction) -> "SignedSqrtRational":
        if square == 0:
            return cls.zero()
        return cls(sign, square.numerator, square.denominator)

    @property
    def square(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __float__(self) -> float:
        return self.sign * math.sqrt(self.numerator / self.denominator)

    def __repr__(self):
        pre = {1: "+", 0: "0*", -1: "-"}[self.sign]
        return f"{pre}sqrt({self.numerator}/{self.denominator})"


@lru_cache(maxsize=None)
def _fact(n: int) -> int:
    return math.factorial(n)


def _cg_parts(tj1: int, tm1: int, tj2: int, tm2: int, tJ: int, tM: int):
    """Racah decomposition of a Clebsch-Gordan coefficient.

    Returns (R, F, G) with CG = R * sqrt(F * G), where R is the rational Racah
    sum carrying the sign, F collects the m-dependent factorials
    (j1+-m1)!(j2+-m2)!, and G the m-independent ones (triangle coefficient,
    2J+1, and (J+-M)!).  The split is what makes orthogonality sums over
    (m1, m2) exactly rational.
    """
    a = (tj1 + tj2 - tJ) // 2  # j1+j2-J
    b = (tj1 - tm1) // 2       # j1-m1
    c = (tj2 + tm2) // 2       # j2+m2
    d = (tJ - tj2 + tm1) // 2  # J-j2+m1
    e = (tJ - tj1 - tm2) // 2  # J-j1-m2
    kmin = max(0, -d, -e)
    kmax = min(a, b, c)
    r = Fraction(0)
    for k in range(kmin, kmax + 1):
        r += Fraction(
            (-1) ** k,
            _fact(k) * _fact(a - k) * _fact(b - k) * _fact(c - k)
            * _fact(d + k) * _fact(e + k),
        )
    f = (
        _fact((tj1 + tm1) // 2) * _fact(b) * _fact(c) * _fact((tj2 - tm2) // 2)
    )
    g = Fraction(
        (tJ + 1) * _fact(a) * _fact((tj1 - tj2 + tJ) // 2)
        * _fact((-tj1 + tj2 + tJ) // 2),
        _fact((tj1 + tj2 + tJ) // 2 + 1),
    ) * _fact((tJ + tM) // 2) * _fact((tJ - tM) // 2)
    return r, f, g


def clebsch_gordan(j1, m1, j2, m2, J, M) -> SignedSqrtRational:
    """Exact Clebsch-Gordan coefficient <j1 m1, j2 m2 | J M> (Condon-Shortley).

    Evaluated with the Racah factorial sum in exact rational arithmetic.
    Returns zero when M != m1+m2 or the triangle rule fails; raises
    ValueError for malformed half-integers (parity of 2m vs 2j, |m| > j,
    negative spin).
    """
    j1, m1, j2, m2, J, M = (half(x) for x in (j1, m1, j2, m2, J, M))
    _check_jm(j1, m1, "j1/m1")
    _check_jm(j2, m2, "j2/m2")
    _check_jm(J, M, "J/M")
    if (j1.twice + j2.twice + J.twice) % 2 != 0:
        raise ValueError("j1, j2, J must couple to an integer-parity triple")
    if m1.twice + m2.twice != M.twice:
        return SignedSqrtRational.zero()
    if J.twice < abs(j1.twice - j2.twice) or J.twice > j1.twice + j2.twice:
        return SignedSqrtRational.zero()
    r, f, g = _cg_parts(j1.twice, m1.twice, j2.twice, m2.twice, J.twice, M.twice)
    if r == 0:
        return SignedSqrtRational.zero()
    sign = 1 if r > 0 else -1
    return SignedSqrtRational.from_fraction(sign, r * r * f * g)


def _small_d_element(tj: int, tmp: int, tm: int, cos_hb: float, sin_hb: float) -> float:
    pref = math.sqrt(float(
        _fact((tj + tmp) // 2) * _fact((tj - tmp) // 2)
        * _fact((tj + tm) // 2) * _fact((tj - tm) // 2)
    ))
    smin = max(0, (tm - tmp) // 2)
    smax = min((tj + tm) // 2, (tj - tmp) // 2)
    terms = []
    for s in range(smin, smax + 1):
        k = (tmp - tm) // 2 + s
        denom = (
            _fact((tj + tm) // 2 - s) * _fact(s) * _fact(k)
            * _fact((tj - tmp) // 2 - s)
        )
        terms.append(
            (-1) ** k * cos_hb ** ((2 * tj + tm - tmp) // 2 - 2 * s)
            * sin_hb ** (k + s) / denom
        )
    return pref * math.fsum(terms)


def wigner_small_d(j, beta: float) -> np.ndarray:
    """Wigner small-d matrix d^j_{m'm}(beta) by the factorial sum formula.

    Real orthogonal (2j+1)x(2j+1) array, rows/columns indexed by m', m
    descending from +j.
    """
    j = half(j)
    if j.twice < 0:
        raise ValueError("spin magnitude must be non-negative")
    beta = float(beta)
    if not math.isfinite(beta):
        raise ValueError("beta must be finite")
    cos_hb, sin_hb = math.cos(beta / 2.0), math.sin(beta / 2.0)
    n = j.twice + 1
    out = np.empty((n, n))
    tms = [m.twice for m in m_range(j)]
    for a, tmp in enumerate(tms):
        for b, tm in enumerate(tms):
            out[a, b] = _small_d_element(j.twice, tmp, tm, cos_hb, sin_hb)
    return out


@dataclass(frozen=True)
class EulerAngles:
    """Active z-y-z Euler angles (alpha, beta, gamma), in radians."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v}")


def wigner_D(j, angles: EulerAngles) -> np.ndarray:
    """Wigner D-matrix D^j_{m'm} = exp(-i m' alpha) d^j_{m'm}(beta) exp(-i m gamma)."""
    j = half(j)
    d = wigner_small_d(j, angles.beta)
    ms = np.array([m.twice for m in m_range(j)]) / 2.0
    return (
        np.exp(-1j * ms[:, None] * angles.alpha)
        * d
        * np.exp(-1j * ms[None, :] * angles.gamma)
    )


def rotation_matrix(angles: EulerAngles) -> np.ndarray:
    """The 3x3 orthogonal matrix Rz(alpha) Ry(beta) Rz(gamma) of the same rotation."""

    def rz(t):
        c, s = math.cos(t), math.sin(t)
        return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])

    def ry(t):
        c, s = math.cos(t), math.sin(t)
        return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])

    return rz(angles.alpha) @ ry(angles.beta) @ rz(angles.gamma)
