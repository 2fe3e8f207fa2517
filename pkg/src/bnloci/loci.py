"""Brill-Noether loci as (g, r, d) data and their numerical invariants.

The locus M^r_{g,d} is the closure in the moduli of genus-g curves of the
curves carrying a g^r_d.  We only ever track loci that are proper
subvarieties (rho < 0), normalized by Serre duality so that d <= g-1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import isqrt


class RelKind(str, enum.Enum):
    EQ = "eq"
    LE = "subset"
    NLE = "not_subset"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class BNLocus:
    """The Brill-Noether locus M^r_{g,d}."""

    g: int
    r: int
    d: int

    def __post_init__(self):
        if self.g < 3 or self.r < 1 or self.d < 2:
            raise ValueError(f"invalid locus (g={self.g}, r={self.r}, d={self.d})")

    @property
    def key(self) -> tuple[int, int]:
        return (self.r, self.d)

    def __str__(self) -> str:
        return f"M^{self.r}_{{{self.g},{self.d}}}"


@dataclass(frozen=True)
class Relation:
    """A typed claim between two loci of the same genus, with provenance."""

    lhs: BNLocus
    rhs: BNLocus
    kind: RelKind
    provenance: str

    def __post_init__(self):
        if self.lhs.g != self.rhs.g:
            raise ValueError("relations must stay within one genus")

    def __str__(self) -> str:
        sym = {RelKind.EQ: "=", RelKind.LE: "<=", RelKind.NLE: "!<="}[self.kind]
        return f"{self.lhs} {sym} {self.rhs}  [{self.provenance}]"


def rho(g: int, r: int, d: int) -> int:
    """The Brill-Noether number g - (r+1)(g-d+r)."""
    return g - (r + 1) * (g - d + r)


def clifford_index(locus: BNLocus) -> int:
    """Clifford index d - 2r of the defining series."""
    return locus.d - 2 * locus.r


def serre_dual(locus: BNLocus) -> BNLocus:
    """M^r_{g,d} = M^{g-d+r-1}_{g,2g-2-d}; an involution."""
    g = locus.g
    r2 = g - locus.d + locus.r - 1
    d2 = 2 * g - 2 - locus.d
    if r2 < 1 or d2 < 2:
        raise ValueError(f"Serre dual of {locus} is not a valid locus")
    return BNLocus(g, r2, d2)


def normalize(locus: BNLocus) -> BNLocus:
    """Return the Serre-dual representative with d <= g-1."""
    if locus.d <= locus.g - 1:
        return locus
    return serre_dual(locus)


def enumerate_loci(g: int) -> list[BNLocus]:
    """All normalized proper loci at genus g: rho < 0, 2 <= d <= g-1,
    d >= 2 for r = 1 and d >= 2r for r >= 2, sorted by (r, d).

    Loci with d = 2r are kept here; the poset engine merges them into
    M^1_{g,2} via the Clifford collapse.
    """
    if g < 3:
        raise ValueError("need g >= 3")
    result = []
    for r in range(1, (g - 1) // 2 + 1):
        dmin = 2 if r == 1 else 2 * r
        for d in range(dmin, g):
            if rho(g, r, d) < 0:
                result.append(BNLocus(g, r, d))
    result.sort(key=lambda x: x.key)
    return result


def rho_k(g: int, k: int, r: int, d: int) -> int:
    """Gonality-refined Brill-Noether number: the general k-gonal curve
    of genus g carries a g^r_d iff this is >= 0."""
    rp = min(r, g - d + r - 1)
    rp = max(rp, 0)
    coeff = g - k - d + 2 * r + 1
    best = max(coeff * l - l * l for l in range(rp + 1))
    return rho(g, r, d) + best


def _floor_neg_two_sqrt(n: int) -> int:
    # floor(-2*sqrt(n)) for n >= 0, by exact integer square-root bracketing
    m = 4 * n
    s = isqrt(m)
    return -s if s * s == m else -(s + 1)


def _check_kappa_domain(g: int, r: int, d: int) -> None:
    if rho(g, r, d) >= 0:
        raise ValueError(f"kappa undefined: rho({g},{r},{d}) >= 0")
    if d > g - 1:
        raise ValueError("kappa expects a normalized locus (d <= g-1)")
    if r >= 2 and d < 2 * r:
        raise ValueError("kappa undefined: d < 2r gives an empty locus (Clifford)")


def kappa(g: int, r: int, d: int) -> int:
    """Largest k with M^1_{g,k} contained in M^r_{g,d}, by closed form."""
    _check_kappa_domain(g, r, d)
    fl = d // r
    if g + 1 > fl + d:
        return fl
    return g + 1 - d + 2 * r + _floor_neg_two_sqrt(-rho(g, r, d))


def kappa_bruteforce(g: int, r: int, d: int) -> int:
    """Largest k >= 2 with rho_k(g,k,r,d) >= 0, by direct scan up to
    floor((g+3)/2).  Independent oracle for :func:`kappa`."""
    _check_kappa_domain(g, r, d)
    best = None
    for k in range(2, (g + 3) // 2 + 1):
        if rho_k(g, k, r, d) >= 0:
            best = k
    if best is None:
        raise ValueError(f"no gonality stratum meets M^{r}_{{{g},{d}}}")
    return best


def trivial_relations(g: int) -> list[Relation]:
    """Containments from adding a base point (d -> d+1) and removing a
    non-base point (r,d -> r-1,d-1), restricted to enumerated loci."""
    loci = enumerate_loci(g)
    lset = set(loci)
    out = []
    for x in loci:
        targets = []
        # adding a base point; d+1 = g falls back to the Serre-normal form
        if x.d + 1 <= g - 1:
            targets.append((x.r, x.d + 1))
        elif x.r >= 2:
            targets.append((x.r - 1, g - 2))
        if x.r >= 2:
            targets.append((x.r - 1, x.d - 1))
        seen = set()
        for r2, d2 in targets:
            if (r2, d2) in seen:
                continue
            seen.add((r2, d2))
            try:
                y = BNLocus(g, r2, d2)
            except ValueError:
                continue
            if y in lset and y != x:
                out.append(Relation(x, y, RelKind.LE, "trivial"))
    return out


def clifford_collapse(g: int) -> list[Relation]:
    """Equalities M^r_{g,2r} = M^1_{g,2} (all g), and M^r_{g,2r+1} = M^1_{g,2}
    for g >= 7, over enumerated loci with r >= 2."""
    loci = enumerate_loci(g)
    lset = set(loci)
    hyper = BNLocus(g, 1, 2)
    out = []
    for x in loci:
        if x.r < 2:
            continue
        if x.d == 2 * x.r or (x.d == 2 * x.r + 1 and g >= 7):
            if hyper in lset:
                out.append(Relation(x, hyper, RelKind.EQ, "clifford"))
    return out
