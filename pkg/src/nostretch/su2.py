"""Exact half-integer angular momentum and SU(2) rotations.

Spins and magnetic numbers are passed around as *twice-values*: the spin
``j = 3/2`` is the integer ``3`` and ``m = -1/2`` is ``-1``.  Every basis
ordering in the package is ``|j, j>, |j, j-1>, ..., |j, -j>`` (m descending).

Rotations use the z-y-z Euler convention with active rotations,
``D(alpha, beta, gamma) = exp(-i alpha Jz) exp(-i beta Jy) exp(-i gamma Jz)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# twice-value helpers


def check_spin(two_j: int) -> int:
    if int(two_j) != two_j or two_j < 0:
        raise ValueError(f"spin twice-value must be a non-negative integer, got {two_j!r}")
    return int(two_j)


def check_magnetic(two_j: int, two_m: int) -> int:
    """Validate ``two_m`` as a magnetic index of spin ``two_j``."""
    check_spin(two_j)
    if int(two_m) != two_m:
        raise ValueError(f"magnetic twice-value must be an integer, got {two_m!r}")
    if abs(two_m) > two_j:
        raise ValueError(f"|m| exceeds j: 2m={two_m}, 2j={two_j}")
    if (two_j - two_m) % 2:
        raise ValueError(f"parity mismatch between 2j={two_j} and 2m={two_m}")
    return int(two_m)


def dimension(two_j: int) -> int:
    return check_spin(two_j) + 1


def magnetic_values(two_j: int) -> list[int]:
    """Twice-values of m in basis order (descending)."""
    return list(range(two_j, -two_j - 1, -2))


def basis_index(two_j: int, two_m: int) -> int:
    """Position of ``|j, m>`` in the m-descending basis."""
    return (two_j - two_m) // 2


def spin_label(two_x: int) -> str:
    """Render a twice-value as ``"10"`` or ``"21/2"``."""
    return str(two_x // 2) if two_x % 2 == 0 else f"{two_x}/2"


def highest_weight(two_j: int) -> np.ndarray:
    """The north-pole state ``|j, j>``."""
    v = np.zeros(dimension(two_j), dtype=complex)
    v[0] = 1.0
    return v


# ---------------------------------------------------------------------------
# Clebsch-Gordan coefficients in exact arithmetic


@dataclass(frozen=True)
class SignedRoot:
    """An exact real number ``sign * sqrt(square)`` with rational ``square``."""

    sign: int
    square: Fraction

    def __float__(self) -> float:
        return self.sign * math.sqrt(self.square)

    def __bool__(self) -> bool:
        return self.sign != 0 and self.square != 0

    def __neg__(self) -> SignedRoot:
        return SignedRoot(-self.sign, self.square)


ZERO = SignedRoot(0, Fraction(0))


def _fact(n: int) -> int:
    return math.factorial(n)


@lru_cache(maxsize=None)
def cg_coefficient(two_J: int, two_M: int, two_j1: int, two_m1: int,
                   two_j2: int, two_m2: int) -> SignedRoot:
    """Condon-Shortley coefficient ``<J, M | j1, m1; j2, m2>``, exactly.

    Uses the Racah closed form with integer factorials, so the result is
    a sign together with the exact rational square of the coefficient.
    Coefficients forbidden by the selection rules come back as exact zero.

    Raises
    ------
    ValueError
        If any magnetic index has the wrong parity or range for its spin.
    """
    for two_s, two_ms in ((two_J, two_M), (two_j1, two_m1), (two_j2, two_m2)):
        check_magnetic(two_s, two_ms)
    if two_M != two_m1 + two_m2:
        return ZERO
    if not abs(two_j1 - two_j2) <= two_J <= two_j1 + two_j2:
        return ZERO
    if (two_j1 + two_j2 + two_J) % 2:
        return ZERO

    # all of these are integers once the selection rules hold
    a = (two_J + two_j1 - two_j2) // 2
    b = (two_J - two_j1 + two_j2) // 2
    c = (two_j1 + two_j2 - two_J) // 2
    d = (two_j1 + two_j2 + two_J) // 2 + 1
    J_p, J_m = (two_J + two_M) // 2, (two_J - two_M) // 2
    j1_p, j1_m = (two_j1 + two_m1) // 2, (two_j1 - two_m1) // 2
    j2_p, j2_m = (two_j2 + two_m2) // 2, (two_j2 - two_m2) // 2

    prefactor = Fraction(
        (two_J + 1) * _fact(a) * _fact(b) * _fact(c)
        * _fact(J_p) * _fact(J_m) * _fact(j1_p) * _fact(j1_m) * _fact(j2_p) * _fact(j2_m),
        _fact(d),
    )

    # k runs where every factorial argument below is non-negative
    e = (two_J - two_j2 + two_m1) // 2
    f = (two_J - two_j1 - two_m2) // 2
    k_min = max(0, -e, -f)
    k_max = min(c, j1_m, j2_p)
    total = Fraction(0)
    for k in range(k_min, k_max + 1):
        den = (_fact(k) * _fact(c - k) * _fact(j1_m - k) * _fact(j2_p - k)
               * _fact(e + k) * _fact(f + k))
        total += Fraction((-1) ** k, den)

    if total == 0:
        return ZERO
    return SignedRoot(1 if total > 0 else -1, total * total * prefactor)


def cg(two_J, two_M, two_j1, two_m1, two_j2, two_m2) -> float:
    """Floating-point view of :func:`cg_coefficient`."""
    return float(cg_coefficient(two_J, two_M, two_j1, two_m1, two_j2, two_m2))


# ---------------------------------------------------------------------------
# angular momentum matrices


def jz(two_j: int) -> np.ndarray:
    return np.diag([m / 2 for m in magnetic_values(two_j)]).astype(complex)


def j_plus(two_j: int) -> np.ndarray:
    """Raising operator, Condon-Shortley (real, non-negative entries)."""
    j = two_j / 2
    ms = [m / 2 for m in magnetic_values(two_j)]
    out = np.zeros((two_j + 1, two_j + 1), dtype=complex)
    for col in range(1, two_j + 1):
        m = ms[col]
        out[col - 1, col] = math.sqrt(j * (j + 1) - m * (m + 1))
    return out


def jy(two_j: int) -> np.ndarray:
    jp = j_plus(two_j)
    return (jp - jp.conj().T) / 2j


# ---------------------------------------------------------------------------
# group elements


def _spinor(alpha: float, beta: float, gamma: float) -> np.ndarray:
    c, s = math.cos(beta / 2), math.sin(beta / 2)
    return np.array([
        [np.exp(-0.5j * (alpha + gamma)) * c, -np.exp(-0.5j * (alpha - gamma)) * s],
        [np.exp(0.5j * (alpha - gamma)) * s, np.exp(0.5j * (alpha + gamma)) * c],
    ])


def _euler_from_spinor(u: np.ndarray) -> tuple[float, float, float]:
    a, b = u[0, 0], u[1, 0]
    ca, sb = abs(a), abs(b)
    beta = 2.0 * math.atan2(sb, ca)
    beta = min(max(beta, 0.0), math.pi)
    if sb < 1e-14:
        alpha, gamma = -2.0 * np.angle(a), 0.0
    elif ca < 1e-14:
        alpha, gamma = 2.0 * np.angle(b), 0.0
    else:
        plus = -2.0 * np.angle(a)   # alpha + gamma
        minus = 2.0 * np.angle(b)   # alpha - gamma
        alpha, gamma = (plus + minus) / 2, (plus - minus) / 2
    return float(alpha % TWO_PI), beta, float(gamma % TWO_PI)


@dataclass(frozen=True)
class GroupElement:
    """An SU(2) rotation in z-y-z Euler angles (radians).

    With ``alpha, gamma`` reduced to ``[0, 2pi)`` the angles only reach one
    sheet of the double cover, so ``sheet = +-1`` records the overall sign
    of the spin-1/2 matrix.  Integer-spin representations ignore it.
    """

    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0
    sheet: int = 1

    def __post_init__(self):
        alpha, gamma = float(self.alpha), float(self.gamma)
        # each 2pi shift of alpha or gamma flips the spinor sign
        wraps = math.floor(alpha / TWO_PI) + math.floor(gamma / TWO_PI)
        sheet = (1 if self.sheet >= 0 else -1) * (-1 if wraps % 2 else 1)
        object.__setattr__(self, "alpha", alpha % TWO_PI)
        object.__setattr__(self, "beta", min(max(float(self.beta), 0.0), math.pi))
        object.__setattr__(self, "gamma", gamma % TWO_PI)
        object.__setattr__(self, "sheet", sheet)

    @classmethod
    def identity(cls) -> GroupElement:
        return cls(0.0, 0.0, 0.0)

    @classmethod
    def from_spinor(cls, u: np.ndarray) -> GroupElement:
        u = np.asarray(u)
        alpha, beta, gamma = _euler_from_spinor(u)
        rebuilt = _spinor(alpha, beta, gamma)
        sheet = 1 if np.abs(rebuilt - u).max() <= np.abs(rebuilt + u).max() else -1
        return cls(alpha, beta, gamma, sheet)

    def spinor(self) -> np.ndarray:
        """Spin-1/2 matrix of this element."""
        return self.sheet * _spinor(self.alpha, self.beta, self.gamma)

    def compose(self, other: GroupElement) -> GroupElement:
        """The product ``self * other`` (``other`` acts first)."""
        return compose(self, other)

    def inverse(self) -> GroupElement:
        return inverse(self)


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    return GroupElement.from_spinor(g.spinor() @ h.spinor())


def inverse(g: GroupElement) -> GroupElement:
    return GroupElement.from_spinor(g.spinor().conj().T)


def second_euler_angle(g: GroupElement) -> float:
    return g.beta


def haar_sample(rng: np.random.Generator) -> GroupElement:
    """Draw one Haar-random element: uniform alpha, gamma, cos(beta) and sheet."""
    alpha, cos_beta, gamma = rng.uniform(0.0, TWO_PI), rng.uniform(-1.0, 1.0), rng.uniform(0.0, TWO_PI)
    sheet = 1 if rng.integers(2) else -1
    return GroupElement(alpha, math.acos(cos_beta), gamma, sheet)


def haar_samples(rng: np.random.Generator, n: int) -> list[GroupElement]:
    return [haar_sample(rng) for _ in range(n)]


def haar_angles(rng: np.random.Generator, n: int) -> np.ndarray:
    """Vectorized Haar draw of rotations; rows are ``(alpha, beta, gamma)``.

    No sheet is drawn, so this is only suitable where the double-cover
    sign drops out (conjugations, overlap moduli).
    """
    alpha = rng.uniform(0.0, TWO_PI, n)
    beta = np.arccos(rng.uniform(-1.0, 1.0, n))
    gamma = rng.uniform(0.0, TWO_PI, n)
    return np.column_stack([alpha, beta, gamma])


# ---------------------------------------------------------------------------
# Wigner matrices


@lru_cache(maxsize=None)
def _small_d_terms(two_j: int) -> tuple:
    """Per-entry lists of (coefficient, cos power, sin power) for d^j."""
    ms = magnetic_values(two_j)
    terms = []
    for two_mp in ms:
        row = []
        for two_m in ms:
            jpm, jmm = (two_j + two_m) // 2, (two_j - two_m) // 2
            jpmp, jmmp = (two_j + two_mp) // 2, (two_j - two_mp) // 2
            diff = (two_mp - two_m) // 2
            root = math.sqrt(_fact(jpmp) * _fact(jmmp) * _fact(jpm) * _fact(jmm))
            entry = []
            for k in range(max(0, -diff), min(jpm, jmmp) + 1):
                den = _fact(jpm - k) * _fact(k) * _fact(jmmp - k) * _fact(k + diff)
                sign = -1 if (k + diff) % 2 else 1
                entry.append((sign * root / den, two_j - 2 * k - diff, 2 * k + diff))
            row.append(tuple(entry))
        terms.append(tuple(row))
    return tuple(terms)


def wigner_small_d(two_j: int, beta: float) -> np.ndarray:
    """Real matrix ``d^j_{m'm}(beta) = <j m'| exp(-i beta Jy) |j m>``."""
    c, s = math.cos(beta / 2), math.sin(beta / 2)
    n = dimension(two_j)
    out = np.zeros((n, n))
    for r, row in enumerate(_small_d_terms(two_j)):
        for col, entry in enumerate(row):
            out[r, col] = sum(coef * c ** pc * s ** ps for coef, pc, ps in entry)
    return out


def wigner_D(two_j: int, g: GroupElement) -> np.ndarray:
    """Unitary ``D^j(g)`` in the m-descending basis."""
    ms = np.array(magnetic_values(two_j)) / 2
    left = np.exp(-1j * g.alpha * ms)
    right = np.exp(-1j * g.gamma * ms)
    sign = g.sheet if two_j % 2 else 1
    return sign * left[:, None] * wigner_small_d(two_j, g.beta) * right[None, :]


def coherent_state(two_j: int, g: GroupElement) -> np.ndarray:
    """``D^j(g) |j, j>``, the first column of the Wigner matrix."""
    return wigner_D(two_j, g)[:, 0]


def coherent_overlap_modulus(two_x: int, g: GroupElement, h: GroupElement) -> float:
    """``|<x,x| D(h)^dag D(g) |x,x>|``; depends only on beta of ``h^-1 g``."""
    val = np.vdot(coherent_state(two_x, h), coherent_state(two_x, g))
    return float(min(abs(val), 1.0))


def conjugation_intertwiner(two_j: int) -> np.ndarray:
    """Unitary ``C`` with ``C|j,m> = (-1)^(j-m) |j,-m>``; ``conj(D) = C D C^dag``."""
    n = dimension(two_j)
    out = np.zeros((n, n))
    for two_m in magnetic_values(two_j):
        sign = -1.0 if ((two_j - two_m) // 2) % 2 else 1.0
        out[basis_index(two_j, -two_m), basis_index(two_j, two_m)] = sign
    return out
