"""Exact arithmetic on rank-2 intersection lattices Z[H] + Z[L].

A basis (g, r, d) fixes the Gram matrix [[2g-2, d], [d, 2r-2]], i.e.
H^2 = 2g-2, H.L = d, L^2 = 2r-2.  Everything here is plain Python
integer arithmetic, so pairings stay exact at any size.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt


@dataclass(frozen=True)
class LatticeClass:
    """An integer class a*H + b*L."""

    a: int
    b: int

    def __add__(self, other: "LatticeClass") -> "LatticeClass":
        return LatticeClass(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "LatticeClass") -> "LatticeClass":
        return LatticeClass(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "LatticeClass":
        return LatticeClass(-self.a, -self.b)

    def __mul__(self, n: int) -> "LatticeClass":
        return LatticeClass(n * self.a, n * self.b)

    __rmul__ = __mul__

    def key(self) -> tuple[int, int]:
        return (self.a, self.b)

    @property
    def xy(self) -> tuple[int, int]:
        """The same class written xH - yL (so x = a, y = -b)."""
        return (self.a, -self.b)

    def __str__(self) -> str:
        if self.a == 0 and self.b == 0:
            return "0"
        parts = []
        if self.a:
            parts.append({1: "H", -1: "-H"}.get(self.a, f"{self.a}H"))
        if self.b:
            sign = "+" if (self.b > 0 and parts) else ""
            parts.append(sign + {1: "L", -1: "-L"}.get(self.b, f"{self.b}L"))
        return "".join(parts)


H = LatticeClass(1, 0)
L = LatticeClass(0, 1)
ZERO = LatticeClass(0, 0)


@dataclass(frozen=True)
class LatticeBasis:
    """The lattice Z[H] + Z[L] with H^2 = 2g-2, H.L = d, L^2 = 2r-2."""

    g: int
    r: int
    d: int

    def __post_init__(self):
        if self.g < 2 or self.r < 0 or self.d < 0:
            raise ValueError(f"invalid lattice basis ({self.g}, {self.r}, {self.d})")

    @property
    def h_square(self) -> int:
        return 2 * self.g - 2

    @property
    def l_square(self) -> int:
        return 2 * self.r - 2

    @property
    def hl(self) -> int:
        return self.d

    @property
    def discriminant(self) -> int:
        return delta(self.g, self.r, self.d)

    def gram(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.h_square, self.d), (self.d, self.l_square))

    def __str__(self) -> str:
        return f"Lambda^{self.r}_({self.g},{self.d})"


def delta(g: int, r: int, d: int) -> int:
    """4(g-1)(r-1) - d^2; a K3 with this Picard lattice and nef H exists iff < 0."""
    return 4 * (g - 1) * (r - 1) - d * d


def pair(basis: LatticeBasis, u: LatticeClass, v: LatticeClass) -> int:
    """Intersection pairing u.v under the Gram matrix of ``basis``."""
    return (
        u.a * v.a * basis.h_square
        + (u.a * v.b + u.b * v.a) * basis.d
        + u.b * v.b * basis.l_square
    )


def self_int(basis: LatticeBasis, u: LatticeClass) -> int:
    """Self-intersection u.u."""
    return pair(basis, u, u)


def find_classes_with_square(
    basis: LatticeBasis, square: int, box_a: int = 10, box_b: int = 10
) -> list[LatticeClass]:
    """All nonzero classes aH + bL with |a| <= box_a, |b| <= box_b and
    self-intersection ``square``, sorted lexicographically by (a, b).

    Both a class and its negative are reported; callers wanting effective
    representatives filter by the sign of the H-degree.
    """
    if box_a < 1 or box_b < 1:
        raise ValueError("box bounds must be >= 1")
    found = []
    for a in range(-box_a, box_a + 1):
        for b in range(-box_b, box_b + 1):
            if a == 0 and b == 0:
                continue
            c = LatticeClass(a, b)
            if self_int(basis, c) == square:
                found.append(c)
    return found


def floor_sqrt_ratio(num: int, den: int) -> int:
    """Largest integer m >= 0 with m*m*den <= num (num >= 0, den >= 1).

    Exact integer bracketing; no floating point anywhere.
    """
    if num < 0:
        raise ValueError("num must be >= 0")
    m = isqrt(num // den)
    while (m + 1) * (m + 1) * den <= num:
        m += 1
    while m * m * den > num:
        m -= 1
    return m
