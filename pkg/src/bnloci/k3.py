"""Lazarsfeld-Mukai bundle filtration analysis on rank-2 K3 lattices.

On a K3 surface S with Pic(S) = Z[H] + Z[L] (Gram matrix from a
:class:`~bnloci.lattice.LatticeBasis`), a g^s_e on a smooth curve C in |H|
with rho(g,s,e) < 0 forces its rank-(s+1) Lazarsfeld-Mukai bundle E to be
non-simple, hence to carry a terminal filtration: stable torsion-free
factors with slopes interlacing like a Gelfand-Tsetlin pattern.

This module enumerates all candidate first-Chern-class data for such
filtrations ("assignments"), computes the exact rational lower bound each
one imposes on c_2(E) = e, and turns "every assignment needs c_2 > e"
into certified non-existence of a g^s_e on C.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .lattice import H, ZERO, LatticeBasis, LatticeClass, floor_sqrt_ratio, pair, self_int
from .loci import BNLocus, RelKind, Relation, rho


@dataclass(frozen=True)
class FilterConfig:
    """Optional exclusion rules for assignments that provably never arise
    from genuine terminal filtrations.

    dm_filter: drop type 1 < s+1 with c1(E_1) = H - L when s > r; the series
    would then lie inside |L (x) O_C|, impossible for dimension reasons.

    elliptic_filter: drop assignments whose top quotient has rank >= 2 and
    square-zero first Chern class; such a quotient is a direct sum of copies
    of an elliptic-pencil line bundle, hence not stable.

    Filters only ever remove assignments, so the unfiltered minimum is the
    safe bound for non-containment certificates.
    """

    dm_filter: bool = False
    elliptic_filter: bool = False


BOTH_FILTERS = FilterConfig(dm_filter=True, elliptic_filter=True)


@dataclass(frozen=True)
class LMInvariants:
    """Numerical invariants of the Lazarsfeld-Mukai bundle of a g^s_e on a
    smooth genus-g curve in |H|; c1 is always H."""

    rank: int
    c2: int
    chi: int


def lm_invariants(g: int, s: int, e: int) -> LMInvariants:
    return LMInvariants(rank=s + 1, c2=e, chi=g - e + 2 * s + 1)


def enumerate_filtration_types(s: int) -> list[tuple[int, ...]]:
    """All strictly increasing rank sequences r_1 < ... < r_n = s+1 with
    n >= 2, i.e. nonempty subsets of {1..s} capped by s+1; 2^s - 1 of them,
    sorted by length then lexicographically."""
    if s < 1:
        raise ValueError("need s >= 1")
    types = []
    for size in range(1, s + 1):
        for combo in itertools.combinations(range(1, s + 1), size):
            types.append(combo + (s + 1,))
    types.sort(key=lambda t: (len(t), t))
    return types


@dataclass(frozen=True)
class Assignment:
    """Candidate filtration datum: ranks r_1 < ... < r_n = s+1 and the first
    Chern classes c1(E_1), ..., c1(E_n) = H, with its exact rational lower
    bound on c_2(E).

    ``filtered_by`` records which optional filters would discard it; the
    tags are annotations, the discarding is done by the active config.
    """

    ranks: tuple[int, ...]
    chern: tuple[LatticeClass, ...]
    c2_bound: Fraction
    filtered_by: tuple[str, ...] = field(default=())

    @property
    def type_str(self) -> str:
        return "<".join(str(r) for r in self.ranks)

    def sort_key(self):
        return (len(self.ranks), self.ranks, tuple(c.key() for c in self.chern))


@dataclass(frozen=True)
class GTPattern:
    """Triangular array x_{i,j} (1 <= j <= i <= n) of exact rationals."""

    entries: tuple[tuple[Fraction, ...], ...]

    def is_valid(self) -> bool:
        """The interlacing conditions x_{i,j} >= x_{i+1,j+1} >= x_{i+1,j}."""
        n = len(self.entries)
        for i in range(1, n):  # rows i and i+1, 1-based i = index+1
            upper = self.entries[i - 1]
            lower = self.entries[i]
            for j in range(1, i + 1):
                if not (upper[j - 1] >= lower[j] >= lower[j - 1]):
                    return False
        return True


def gt_pattern(basis: LatticeBasis, assignment: Assignment) -> GTPattern:
    """Slope pattern x_{i,j} = mu(E_i / E_{i-j}) of an assignment."""
    rk = (0,) + assignment.ranks
    hdeg = [0] + [pair(basis, H, c) for c in assignment.chern]
    rows = []
    for i in range(1, len(rk)):
        row = tuple(
            Fraction(hdeg[i] - hdeg[i - j], rk[i] - rk[i - j]) for j in range(1, i + 1)
        )
        rows.append(row)
    return GTPattern(tuple(rows))


def gt_check(basis: LatticeBasis, assignment: Assignment) -> bool:
    """True iff the slope data of the assignment is a Gelfand-Tsetlin
    pattern; equivalent to mu(E_j/E_i) >= mu(E_k/E_i) >= mu(E_k/E_j) for all
    triples i < j < k (the all-triples form is the test oracle)."""
    return gt_pattern(basis, assignment).is_valid()


def quotient_checks(basis: LatticeBasis, assignment: Assignment) -> bool:
    """Quotient non-negativity c1(E/E_i)^2 >= 0, quotient slope-positivity
    H.c1(E/E_i) > 0, and the slope sandwich mu(E_i) >= mu(E), for 0 < i < n."""
    rk = (0,) + assignment.ranks
    n = len(assignment.ranks)
    mu_total = Fraction(basis.h_square, rk[-1])
    for i in range(1, n):
        ci = assignment.chern[i - 1]
        q = H - ci
        if self_int(basis, q) < 0:
            return False
        if pair(basis, H, q) <= 0:
            return False
        if Fraction(pair(basis, H, ci), rk[i]) < mu_total:
            return False
    return True


def destab_box(basis: LatticeBasis) -> tuple[int, int]:
    """Integer bounds (X, Y) with |x| <= X, |y| <= Y for the quotient class
    c1(E/M) = xH - yL of any destabilizing step: the floors of
    1 + d/sqrt(|Delta|) and (2g-2)/sqrt(|Delta|), computed by exact
    squared-integer comparison.

    For r = 1 the lemma gives x in {0, 1} and |y| < 2(g-1)/d instead.
    Raises when Delta >= 0 (no K3 with this Picard lattice and nef H).
    """
    disc = basis.discriminant
    if disc >= 0:
        raise ValueError(
            f"Delta({basis.g},{basis.r},{basis.d}) = {disc} >= 0: no such K3 surface"
        )
    if basis.r == 0:
        raise ValueError("rule not applicable to r = 0 lattices")
    if basis.r == 1:
        ymax = (2 * (basis.g - 1) - 1) // basis.d  # strict: |y|*d < 2(g-1)
        return (1, ymax)
    s = -disc
    return (
        1 + floor_sqrt_ratio(basis.d * basis.d, s),
        floor_sqrt_ratio(basis.h_square * basis.h_square, s),
    )


def candidate_subsheaf_classes(basis: LatticeBasis) -> list[LatticeClass]:
    """Candidate values of c1(E_i) for intermediate filtration steps: the
    classes H - Q where Q = xH - yL runs over the destabilizing-lemma box
    (two sign branches, exact integer bounds) and already satisfies
    Q^2 >= 0, H.Q > 0.  Sorted by (a, b) of the subsheaf class."""
    disc = basis.discriminant
    if disc >= 0:
        raise ValueError("need Delta < 0")
    quots = []
    if basis.r == 1:
        # x = 0 branch: Q = mL with 0 < m*d < 2(g-1); x = 1: Q = H - yL, y*d < g-1
        m = 1
        while m * basis.d < 2 * (basis.g - 1):
            quots.append(LatticeClass(0, m))
            m += 1
        y = 1
        while y * basis.d < basis.g - 1:
            quots.append(LatticeClass(1, -y))
            y += 1
    else:
        s = -disc
        d2 = basis.d * basis.d
        ymax = floor_sqrt_ratio(basis.h_square * basis.h_square, s)
        xmax = 1 + floor_sqrt_ratio(d2, s)
        for x in range(1, xmax + 1):
            # branch x > 0, y > 0, with (x-1)^2 |Delta| <= d^2
            if (x - 1) * (x - 1) * s > d2:
                continue
            for y in range(1, ymax + 1):
                quots.append(LatticeClass(x, -y))
        xmin = 1 - floor_sqrt_ratio(d2, s)  # x >= 1 - d/sqrt|Delta|
        for x in range(xmin, 1):
            for y in range(-ymax, 0):
                quots.append(LatticeClass(x, -y))
    cands = []
    for q in quots:
        if self_int(basis, q) < 0 or pair(basis, H, q) <= 0:
            continue
        cands.append(H - q)
    cands.sort(key=lambda c: c.key())
    return cands


def c2_lower_bound(basis: LatticeBasis, assignment: Assignment) -> Fraction:
    """Exact rational lower bound on c_2(E) for the assignment, from the
    Chern-class recursion over the filtration steps plus the moduli-space
    bound c_2(F) >= (rk-1) c1(F)^2 / (2 rk) + rk - 1/rk for each stable
    factor F (zero for line-bundle factors)."""
    return _c2_bound(basis, (0,) + assignment.ranks, assignment.chern)


def _c2_bound(
    basis: LatticeBasis, rk: tuple[int, ...], chern: tuple[LatticeClass, ...]
) -> Fraction:
    total = Fraction(0)
    prev = ZERO
    for i in range(1, len(rk)):
        cur = chern[i - 1]
        f = cur - prev
        rho_i = rk[i] - rk[i - 1]
        stable = Fraction((rho_i - 1) * self_int(basis, f), 2 * rho_i) + rho_i - Fraction(
            1, rho_i
        )
        total += stable + pair(basis, f, prev)
        prev = cur
    return total


def _filter_flags(
    basis: LatticeBasis, s: int, ranks: tuple[int, ...], chern: tuple[LatticeClass, ...]
) -> tuple[str, ...]:
    flags = []
    if ranks == (1, s + 1) and chern[0] == H - LatticeClass(0, 1) and s > basis.r:
        flags.append("dm")
    top = H - chern[-2] if len(chern) >= 2 else H
    top_rank = ranks[-1] - (ranks[-2] if len(ranks) >= 2 else 0)
    if len(chern) >= 2 and top_rank >= 2 and self_int(basis, top) == 0:
        flags.append("elliptic")
    return tuple(flags)


def _assignments_for_type(
    basis: LatticeBasis,
    s: int,
    ranks: tuple[int, ...],
    cands: list[tuple[LatticeClass, int]],
) -> list[Assignment]:
    n = len(ranks)
    rk = (0,) + ranks
    htot = basis.h_square
    out = []

    # hdeg[i] = H.c1(E_i); level n is E itself.  Slope comparisons are done
    # by integer cross-multiplication (all rank differences are positive).
    hdeg = [0] * (n + 1)
    hdeg[n] = htot
    chosen: list[LatticeClass] = []

    def admissible_step(m: int) -> bool:
        # all slope triples whose indices lie in {0..m} u {n}
        rm, hm = rk[m], hdeg[m]
        for i in range(m - 1):
            ri, hi = rk[i], hdeg[i]
            for j in range(i + 1, m):
                rj, hj = rk[j], hdeg[j]
                if (hj - hi) * (rm - ri) < (hm - hi) * (rj - ri):
                    return False
                if (hm - hi) * (rm - rj) < (hm - hj) * (rm - ri):
                    return False
        rn = rk[n]
        for i in range(m):
            ri, hi = rk[i], hdeg[i]
            if (hm - hi) * (rn - ri) < (htot - hi) * (rm - ri):
                return False
            if (htot - hi) * (rn - rm) < (htot - hm) * (rn - ri):
                return False
        return True

    def dfs(level: int) -> None:
        if level == n:
            chern = tuple(chosen) + (H,)
            a = Assignment(
                ranks=ranks,
                chern=chern,
                c2_bound=_c2_bound(basis, rk, chern),
                filtered_by=_filter_flags(basis, s, ranks, chern),
            )
            # redundant cross-check via the triangle form of the conditions
            assert gt_check(basis, a) and quotient_checks(basis, a)
            out.append(a)
            return
        rl, rn = rk[level], rk[n]
        prev_h, prev_r = hdeg[level - 1], rk[level - 1]
        for cls, hc in cands:
            # mu(E_level) >= mu(E) is necessary (triple (0, level, n))
            if hc * rn < htot * rl:
                continue
            # slopes of the E_i decrease along the filtration; candidates are
            # sorted by H-degree, so the first failure ends the loop
            if level >= 2 and hc * prev_r > prev_h * rl:
                break
            hdeg[level] = hc
            chosen.append(cls)
            if admissible_step(level):
                dfs(level + 1)
            chosen.pop()

    dfs(1)
    return out


def enumerate_assignments(
    basis: LatticeBasis,
    s: int,
    config: FilterConfig | None = None,
    workers: int = 1,
) -> list[Assignment]:
    """All admissible assignments for a rank-(s+1) Lazarsfeld-Mukai bundle on
    the given lattice, with config filters applied, sorted canonically
    (type length, type, then chern classes lexicographically).

    ``workers`` > 1 partitions the filtration types across a thread pool;
    the canonical final sort makes the output independent of scheduling.
    """
    config = config or FilterConfig()
    if basis.discriminant >= 0:
        raise ValueError(
            f"Delta({basis.g},{basis.r},{basis.d}) >= 0: no such K3 surface"
        )
    if s < 1:
        raise ValueError("need s >= 1")
    cand_cls = candidate_subsheaf_classes(basis)
    cands = sorted(
        ((c, pair(basis, H, c)) for c in cand_cls), key=lambda t: (t[1], t[0].key())
    )
    types = enumerate_filtration_types(s)

    if workers > 1:
        parts: list[list[tuple[int, ...]]] = [[] for _ in range(workers)]
        for i, t in enumerate(types):
            parts[i % workers].append(t)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = pool.map(
                lambda ts: [
                    a for t in ts for a in _assignments_for_type(basis, s, t, cands)
                ],
                parts,
            )
            results = [a for chunk in chunks for a in chunk]
    else:
        results = [a for t in types for a in _assignments_for_type(basis, s, t, cands)]

    if config.dm_filter:
        results = [a for a in results if "dm" not in a.filtered_by]
    if config.elliptic_filter:
        results = [a for a in results if "elliptic" not in a.filtered_by]
    results.sort(key=Assignment.sort_key)
    return results


@lru_cache(maxsize=4096)
def _min_bound_cached(basis: LatticeBasis, s: int, config: FilterConfig) -> Fraction | None:
    best = None
    for a in enumerate_assignments(basis, s, config):
        if best is None or a.c2_bound < best:
            best = a.c2_bound
    return best


def min_series_degree(
    basis: LatticeBasis, s: int, config: FilterConfig | None = None
) -> Fraction | None:
    """Minimum c_2 lower bound over all (filtered) assignments, or None when
    no assignment exists.  A smooth curve in |H| admits no g^s_e for any
    integer e strictly below this value (and none at all when None)."""
    return _min_bound_cached(basis, s, config or FilterConfig())


def k3_noncontainment(
    g: int, r: int, d: int, s: int, e: int, config: FilterConfig | None = None
) -> Relation | None:
    """Certified non-containment M^r_{g,d} !<= M^s_{g,e} from the lattice
    Lambda^r_{g,d}: emitted when Delta < 0 and every admissible assignment
    for a rank-(s+1) bundle forces c_2 > e (or none exists at all).

    Filters default to off so the certificate never relies on them; when a
    filter-enabled config is decisive, the provenance records it.
    """
    for (rr, dd) in ((r, d), (s, e)):
        if rho(g, rr, dd) >= 0 or dd > g - 1:
            raise ValueError(f"expected a normalized proper locus, got ({g},{rr},{dd})")
    basis = LatticeBasis(g, r, d)
    if basis.discriminant >= 0:
        return None
    cfg = config or FilterConfig()
    m = min_series_degree(basis, s, cfg)
    if not (m is None or m > e):
        return None
    provenance = "k3"
    if cfg.dm_filter or cfg.elliptic_filter:
        m0 = min_series_degree(basis, s, FilterConfig())
        if not (m0 is None or m0 > e):
            used = [
                name
                for name, on in (("dm", cfg.dm_filter), ("elliptic", cfg.elliptic_filter))
                if on
            ]
            provenance = "k3[" + ",".join(used) + "]"
    return Relation(BNLocus(g, r, d), BNLocus(g, s, e), RelKind.NLE, provenance)


@dataclass(frozen=True)
class K3Expectation:
    """A potential containment M^r_{g,d} <= M^s_{g,e} that holds for smooth
    hyperplane sections of general K3s with Picard lattice Lambda^r_{g,d},
    witnessed by an assignment with c_2 bound <= e.  An expectation, not a
    proof: witnesses need not come from genuine filtrations."""

    g: int
    r: int
    d: int
    s: int
    e: int
    witness: Assignment


def k3_expected(
    g: int, r: int, d: int, s: int, e: int, config: FilterConfig | None = None
) -> K3Expectation | None:
    """Flag M^r_{g,d} <= M^s_{g,e} as K3-expected when a filtered assignment
    with c_2 bound <= e survives; filters default to on here, matching how
    expectations are read off in practice.  Never emits a Relation."""
    for (rr, dd) in ((r, d), (s, e)):
        if rho(g, rr, dd) >= 0 or dd > g - 1:
            raise ValueError(f"expected a normalized proper locus, got ({g},{rr},{dd})")
    basis = LatticeBasis(g, r, d)
    if basis.discriminant >= 0:
        return None
    cfg = config if config is not None else BOTH_FILTERS
    witnesses = [a for a in enumerate_assignments(basis, s, cfg) if a.c2_bound <= e]
    if not witnesses:
        return None
    witnesses.sort(key=lambda a: (a.c2_bound, a.sort_key()))
    return K3Expectation(g, r, d, s, e, witnesses[0])
