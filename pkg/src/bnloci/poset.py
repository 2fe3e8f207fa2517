"""Assemble rule outputs and external facts into a closed relation matrix
over the proper loci of one genus, detect contradictions, and extract the
non-trivial cover diagram.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .classical import coppens_noncontainment, plane_projection_rule, secant_containment
from .k3 import FilterConfig, k3_noncontainment
from .lattice import delta
from .loci import (
    BNLocus,
    RelKind,
    Relation,
    clifford_collapse,
    enumerate_loci,
    kappa,
    rho_k,
    trivial_relations,
)


class ContradictionError(RuntimeError):
    """A pair of loci claimed both contained and not contained."""

    def __init__(self, lhs: BNLocus, rhs: BNLocus, prov_le: str, prov_nle: str):
        self.lhs, self.rhs = lhs, rhs
        self.prov_le, self.prov_nle = prov_le, prov_nle
        super().__init__(
            f"contradiction: {lhs} <= {rhs} via [{prov_le}] "
            f"but {lhs} !<= {rhs} via [{prov_nle}]"
        )


@dataclass(frozen=True)
class Fact:
    """An externally supplied relation (a result proved by construction),
    ingested from a data file with a non-empty citation string."""

    lhs: BNLocus
    rhs: BNLocus
    kind: RelKind
    source: str

    def __post_init__(self):
        if not self.source:
            raise ValueError("facts must carry a citation string")
        if self.lhs.g != self.rhs.g:
            raise ValueError("facts must stay within one genus")

    def to_relation(self) -> Relation:
        return Relation(self.lhs, self.rhs, self.kind, f"fact:{self.source}")


def trivially_implied(x: BNLocus, y: BNLocus) -> bool:
    """x <= y by trivial moves alone (base-point additions d -> d+1 and
    point removals (r,d) -> (r-1,d-1), with Serre normalization): holds iff
    y.r <= x.r and x.d - y.d <= x.r - y.r."""
    return y.r <= x.r and x.d - y.d <= x.r - y.r


def _merge_prov(p1: str, p2: str) -> str:
    # keeps the most compact provenance for a cell that several rules hit
    return min((p1, p2), key=lambda p: (len(p), p))


class RelationMatrix:
    """Closed matrix of pairwise claims at a fixed genus.

    Loci are grouped into equivalence classes (equal loci); cells live on
    ordered pairs of class representatives.  Instances are immutable once
    built and safe to share.
    """

    def __init__(
        self,
        genus: int,
        loci: tuple[BNLocus, ...],
        parent: dict[BNLocus, BNLocus],
        le: dict[tuple[BNLocus, BNLocus], str],
        nle: dict[tuple[BNLocus, BNLocus], str],
    ):
        self.genus = genus
        self.loci = loci
        self._parent = parent
        self._le = dict(le)
        self._nle = dict(nle)
        classes: dict[BNLocus, list[BNLocus]] = {}
        for x in loci:
            classes.setdefault(parent[x], []).append(x)
        self.classes = tuple(
            tuple(sorted(v, key=lambda l: l.key))
            for _, v in sorted(classes.items(), key=lambda kv: kv[0].key)
        )

    def class_of(self, x: BNLocus) -> BNLocus:
        return self._parent[x]

    def representatives(self) -> list[BNLocus]:
        return [c[0] for c in self.classes]

    def relation(self, x: BNLocus, y: BNLocus) -> tuple[str, str | None]:
        """(kind, provenance) with kind one of eq/subset/not_subset/unknown."""
        rx, ry = self._parent[x], self._parent[y]
        if rx == ry:
            return (RelKind.EQ.value, "class")
        if (rx, ry) in self._le:
            return (RelKind.LE.value, self._le[(rx, ry)])
        if (rx, ry) in self._nle:
            return (RelKind.NLE.value, self._nle[(rx, ry)])
        return ("unknown", None)

    def unknown_pairs(self) -> list[tuple[BNLocus, BNLocus]]:
        reps = self.representatives()
        out = []
        for x in reps:
            for y in reps:
                if x != y and self.relation(x, y)[0] == "unknown":
                    out.append((x, y))
        return out

    def all_relations(self) -> list[Relation]:
        """Every known class-level cell as a Relation, sorted."""
        out = []
        for cls in self.classes:
            rep = cls[0]
            for member in cls[1:]:
                out.append(Relation(member, rep, RelKind.EQ, "class"))
        for (a, b), p in self._le.items():
            out.append(Relation(a, b, RelKind.LE, p))
        for (a, b), p in self._nle.items():
            out.append(Relation(a, b, RelKind.NLE, p))
        out.sort(key=lambda r: (r.lhs.key, r.rhs.key, r.kind.value))
        return out


def closure_relations(
    genus: int, loci: Iterable[BNLocus], relations: Iterable[Relation]
) -> RelationMatrix:
    """Least fixed point of the given relations under transitivity, equality
    merging, and non-containment propagation:

        A <= B and A !<= C   gives   B !<= C
        B <= C and A !<= C   gives   A !<= B

    Raises :class:`ContradictionError` when a pair ends up both ways.
    """
    loci = tuple(sorted(set(loci), key=lambda l: l.key))
    lset = set(loci)
    parent: dict[BNLocus, BNLocus] = {x: x for x in loci}

    def find(x: BNLocus) -> BNLocus:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: BNLocus, y: BNLocus) -> None:
        rx, ry = find(x), find(y)
        if rx == ry:
            return
        lo, hi = sorted((rx, ry), key=lambda l: l.key)
        parent[hi] = lo

    raw_le: list[tuple[BNLocus, BNLocus, str]] = []
    raw_nle: list[tuple[BNLocus, BNLocus, str]] = []
    for rel in relations:
        if rel.lhs.g != genus or rel.rhs.g != genus:
            raise ValueError(f"relation {rel} is not at genus {genus}")
        if rel.lhs not in lset or rel.rhs not in lset:
            raise ValueError(f"relation {rel} references a locus outside the poset")
        if rel.kind is RelKind.EQ:
            union(rel.lhs, rel.rhs)
        elif rel.kind is RelKind.LE:
            raw_le.append((rel.lhs, rel.rhs, rel.provenance))
        else:
            raw_nle.append((rel.lhs, rel.rhs, rel.provenance))

    le: dict[tuple[BNLocus, BNLocus], str] = {}
    nle: dict[tuple[BNLocus, BNLocus], str] = {}

    def put(table, a, b, prov):
        key = (a, b)
        if key in table:
            table[key] = _merge_prov(table[key], prov)
            return False
        table[key] = prov
        return True

    for a, b, p in raw_le:
        ra, rb = find(a), find(b)
        if ra != rb:
            put(le, ra, rb, p)
    for a, b, p in raw_nle:
        put(nle, find(a), find(b), p)

    while True:
        # re-canonicalize after any merges
        new_le: dict[tuple[BNLocus, BNLocus], str] = {}
        new_nle: dict[tuple[BNLocus, BNLocus], str] = {}
        for (a, b), p in sorted(le.items(), key=lambda kv: (kv[0][0].key, kv[0][1].key)):
            ra, rb = find(a), find(b)
            if ra == rb:
                continue
            put(new_le, ra, rb, p)
        for (a, b), p in sorted(nle.items(), key=lambda kv: (kv[0][0].key, kv[0][1].key)):
            ra, rb = find(a), find(b)
            if ra == rb:
                raise ContradictionError(a, b, "equality chain", p)
            put(new_nle, ra, rb, p)
        le, nle = new_le, new_nle

        for key in sorted(le.keys() & nle.keys(), key=lambda k: (k[0].key, k[1].key)):
            raise ContradictionError(key[0], key[1], le[key], nle[key])

        merged = False
        for (a, b) in sorted(le, key=lambda k: (k[0].key, k[1].key)):
            if (b, a) in le:
                union(a, b)
                merged = True
        if merged:
            continue

        changed = False
        items = sorted(le.items(), key=lambda kv: (kv[0][0].key, kv[0][1].key))
        for (a, b), p1 in items:
            for (b2, c), p2 in items:
                if b2 == b and c != a and (a, c) not in le:
                    changed |= put(le, a, c, f"closure({p1},{p2})")
        nle_items = sorted(nle.items(), key=lambda kv: (kv[0][0].key, kv[0][1].key))
        le_items = sorted(le.items(), key=lambda kv: (kv[0][0].key, kv[0][1].key))
        for (a, c), pn in nle_items:
            for (x, y), pl in le_items:
                # A <= B, A !<= C  =>  B !<= C
                if x == a and y != c and (y, c) not in nle:
                    changed |= put(nle, y, c, f"closure({pl},{pn})")
                # B <= C, A !<= C  =>  A !<= B
                if y == c and x != a and (a, x) not in nle:
                    changed |= put(nle, a, x, f"closure({pl},{pn})")
        if not changed:
            break

    for x in loci:
        find(x)
    rep = {x: find(x) for x in loci}
    return RelationMatrix(genus, loci, rep, le, nle)


def closure(matrix: RelationMatrix) -> RelationMatrix:
    """Re-close a matrix; idempotent."""
    return closure_relations(matrix.genus, matrix.loci, matrix.all_relations())


def assemble(
    genus: int,
    facts: Iterable[Fact] = (),
    k3_config: FilterConfig | None = None,
) -> RelationMatrix:
    """Seed the matrix with every rule family plus the supplied facts, then
    close.  Rule families: trivial containments, Clifford collapses, the
    gonality theorem (both directions), the kappa comparison, plane
    projection, Coppens' gonality theorem, positive-dimensional secant
    cycles, and K3 filtration non-containments.
    """
    loci = enumerate_loci(genus)
    lset = set(loci)
    rels: list[Relation] = []
    rels += trivial_relations(genus)
    rels += clifford_collapse(genus)

    # refined Brill-Noether for fixed gonality: exact criterion both ways
    for src in loci:
        if src.r != 1:
            continue
        for tgt in loci:
            if tgt == src:
                continue
            if rho_k(genus, src.d, tgt.r, tgt.d) >= 0:
                rels.append(Relation(src, tgt, RelKind.LE, "gonality"))
            else:
                rels.append(Relation(src, tgt, RelKind.NLE, "gonality"))

    kap = {x: kappa(genus, x.r, x.d) for x in loci}
    for x in loci:
        for y in loci:
            if x != y and kap[x] > kap[y]:
                rels.append(Relation(x, y, RelKind.NLE, "kappa"))

    for x in loci:
        if x.r == 2:
            rel = plane_projection_rule(genus, x.d)
            if rel is not None and rel.rhs in lset:
                rels.append(rel)
            rel = coppens_noncontainment(genus, x.d)
            if rel is not None and rel.rhs in lset:
                rels.append(rel)

    for x in loci:
        for y in loci:
            if x.r >= y.r + 1 >= 2 and y.d < x.d:
                rel = secant_containment(genus, x.r, x.d, y.r, y.d)
                if rel is not None:
                    rels.append(rel)

    for x in loci:
        if delta(genus, x.r, x.d) >= 0:
            continue
        for y in loci:
            if x == y:
                continue
            rel = k3_noncontainment(genus, x.r, x.d, y.r, y.d, k3_config)
            if rel is not None:
                rels.append(rel)

    for fact in facts:
        if fact.lhs.g != genus:
            raise ValueError(f"fact {fact} is not at genus {genus}")
        if fact.lhs not in lset or fact.rhs not in lset:
            raise ValueError(f"fact {fact} references a locus outside the poset")
        rels.append(fact.to_relation())

    return closure_relations(genus, loci, rels)


def covers(matrix: RelationMatrix) -> list[Relation]:
    """Strict-containment cover relations between equivalence classes, with
    covers implied by trivial containments alone removed; sorted by the
    (r, d) of source then target."""
    reps = matrix.representatives()
    le = {
        (a, b)
        for a in reps
        for b in reps
        if a != b and matrix.relation(a, b)[0] == RelKind.LE.value
    }
    members = {cls[0]: cls for cls in matrix.classes}
    out = []
    for (a, b) in sorted(le, key=lambda k: (k[0].key, k[1].key)):
        if any((a, c) in le and (c, b) in le for c in reps):
            continue
        if any(trivially_implied(x, y) for x in members[a] for y in members[b]):
            continue
        out.append(Relation(a, b, RelKind.LE, matrix.relation(a, b)[1] or ""))
    return out


@dataclass(frozen=True)
class DiffCell:
    lhs: BNLocus
    rhs: BNLocus
    got: str
    want: str

    def __str__(self) -> str:
        return f"{self.lhs} vs {self.rhs}: computed {self.got}, expected {self.want}"


def compare(matrix: RelationMatrix, expected: RelationMatrix) -> list[DiffCell]:
    """Cells (over ordered pairs of loci) where the two matrices differ,
    including unknown-vs-known gaps.  Empty diff means exact agreement."""
    if matrix.genus != expected.genus:
        raise ValueError("matrices are at different genera")
    if matrix.loci != expected.loci:
        raise ValueError("matrices are over different loci sets")
    diffs = []
    for x in matrix.loci:
        for y in matrix.loci:
            if x == y:
                continue
            got = matrix.relation(x, y)[0]
            want = expected.relation(x, y)[0]
            if got != want:
                diffs.append(DiffCell(x, y, got, want))
    return diffs
