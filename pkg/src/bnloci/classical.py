"""Classical numerical rules: genus bounds, gonality statements and secant
dimension counts that yield containments or non-containments of loci
without any K3 input.

Rules that produce relations return ``None`` when their hypotheses fail;
the poset engine discards relations whose endpoints are not enumerated
proper loci.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .loci import BNLocus, RelKind, Relation, rho, kappa


@dataclass(frozen=True)
class CastelnuovoData:
    m: int
    epsilon: int
    bound: int


def castelnuovo_bound(r: int, d: int) -> CastelnuovoData:
    """Castelnuovo's genus bound for a basepoint-free, birationally very
    ample g^r_d: g <= m(m-1)(r-1)/2 + m*epsilon with m = floor((d-1)/(r-1))."""
    if r < 2 or d < r:
        raise ValueError("need r >= 2 and d >= r")
    m = (d - 1) // (r - 1)
    eps = d - 1 - m * (r - 1)
    bound = m * (m - 1) * (r - 1) // 2 + m * eps
    return CastelnuovoData(m, eps, bound)


def castelnuovo_severi(d1: int, g1: int, d2: int, g2: int) -> int:
    """Genus bound for a curve with independent covers of degrees d1, d2
    onto curves of genus g1, g2."""
    if d1 < 2 or d2 < 2 or g1 < 0 or g2 < 0:
        raise ValueError("need d1, d2 >= 2 and g1, g2 >= 0")
    return (d1 - 1) * (d2 - 1) + d1 * g1 + d2 * g2


def lange_bound(g: int, r: int, d: int, k: int, gamma: int) -> bool:
    """True iff a degree-k map to a genus-gamma curve is dimensionally
    permitted for a general member of M^r_{g,d}:
    3g-3+rho <= 2g-2-(2k-3)(gamma-1)."""
    if k < 2 or gamma < 1:
        raise ValueError("need k >= 2 and gamma >= 1")
    return 3 * g - 3 + rho(g, r, d) <= 2 * g - 2 - (2 * k - 3) * (gamma - 1)


def plane_projection_rule(g: int, d: int) -> Relation | None:
    """Projection from a singular point of a plane model: if
    g < (d-1)(d-2)/2 then M^2_{g,d} is contained in M^1_{g,d-2}."""
    if d < 4 or rho(g, 2, d) >= 0:
        raise ValueError("need d >= 4 and rho(g,2,d) < 0")
    if 2 * g < (d - 1) * (d - 2):
        return Relation(
            BNLocus(g, 2, d), BNLocus(g, 1, d - 2), RelKind.LE, "plane-projection"
        )
    return None


def coppens_noncontainment(g: int, d: int) -> Relation | None:
    """Coppens: the normalization of a general nodal plane curve of degree d
    and genus g has gonality d-2 when rho(g,1,d-3) < 0, so
    M^2_{g,d} is not contained in M^1_{g,d-3}.

    Needs a nonnegative node count (d-1)(d-2)/2 - g; returns None when the
    hypotheses fail.
    """
    if d < 5:
        return None
    if (d - 1) * (d - 2) // 2 - g < 0:
        return None
    if d - 3 < 2 or rho(g, 1, d - 3) >= 0:
        return None
    return Relation(BNLocus(g, 2, d), BNLocus(g, 1, d - 3), RelKind.NLE, "coppens")


def ci_gonality(degrees: list[int]) -> int:
    """Lower bound (a1-1)*a2*...*a_{r-1} for the gonality of a smooth
    complete intersection of the given multidegree (sorted ascending)."""
    if not degrees or any(a < 2 for a in degrees):
        raise ValueError("need degrees >= 2")
    if sorted(degrees) != list(degrees):
        raise ValueError("degrees must be sorted ascending")
    out = degrees[0] - 1
    for a in degrees[1:]:
        out *= a
    return out


def secant_expected_dim(r: int, d: int, s: int, e: int) -> int:
    """Expected dimension of the cycle of (d-e)-divisors imposing at most
    r-s conditions on a g^r_d; equals r - s - (d-e-r+s)s."""
    if not (r > s >= 1) or not (d > e):
        raise ValueError("need r > s >= 1 and d > e")
    return r - s - (d - e - r + s) * s


def secant_containment(g: int, r: int, d: int, s: int, e: int) -> Relation | None:
    """Containment M^r_{g,d} <= M^s_{g,e} from secant divisors, emitted only
    when the expected dimension of the secant cycle is strictly positive.

    At expected dimension exactly zero nothing is emitted: the virtual count
    can vanish, so existence is not guaranteed (for s = 2 and r odd the
    threshold e >= d-2r+2+floor((r+3)/2) is the same as positivity).
    """
    if not (r >= s + 1 >= 2):
        raise ValueError("need r >= s+1 >= 2")
    if d > g - 1 or e > g - 1:
        raise ValueError("expects normalized degrees (<= g-1)")
    if e >= d:
        return None
    if secant_expected_dim(r, d, s, e) > 0:
        return Relation(BNLocus(g, r, d), BNLocus(g, s, e), RelKind.LE, "secant")
    return None


def four_secant_count(g: int, d: int) -> int:
    """Cayley's virtual count of 4-secant lines to a degree-d genus-g space
    curve: (d-2)(d-3)^2(d-4)/12 - g(d^2-7d+13-g)/2.  Exact; raises if the
    rational value is not an integer (invalid pairing)."""
    if d < 5:
        raise ValueError("need d >= 5")
    val = Fraction((d - 2) * (d - 3) ** 2 * (d - 4), 12) - Fraction(
        g * (d * d - 7 * d + 13 - g), 2
    )
    if val.denominator != 1:
        raise ValueError(f"virtual count is not an integer for (g,d)=({g},{d})")
    return int(val)


@dataclass(frozen=True)
class ConjectureThresholds:
    """Informational degree thresholds above which containments into larger-
    dimension series (threshold_a, for r < s) or into nets (threshold_b, for
    s = 2 <= r-1) are conjectured.  Never used to emit relations."""

    threshold_a: Fraction | None
    threshold_b: int | None


def conjecture_thresholds(g: int, r: int, d: int, s: int) -> ConjectureThresholds:
    if r < 2:
        raise ValueError("need r >= 2")
    ta = None
    if r < s:
        ta = (
            Fraction(d - 2 * r + s)
            + Fraction(g - d + r + 1, 2)
            + Fraction((s - 2) * (r - 1) - 1, s - 1)
        )
    tb = None
    if s == 2 and r >= 3:
        tb = d - 2 * r + 2 + (r + 3) // 2
    return ConjectureThresholds(ta, tb)


def gonality_bounds(g: int, r: int, d: int) -> tuple[int, int]:
    """(certified lower bound, heuristic expected value) for the minimal k
    with M^r_{g,d} <= M^1_{g,k}: the pair (kappa, min(d-2r+2, floor((g+3)/2))).

    The heuristic can fail in both directions; lattices carrying elliptic
    pencils give curves of much lower gonality than d-2r+2.
    """
    return (kappa(g, r, d), min(d - 2 * r + 2, (g + 3) // 2))
