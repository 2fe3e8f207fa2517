"""Relative positions of Brill-Noether loci.

Exact-arithmetic tooling for deciding containments, equalities and
non-containments of the loci M^r_{g,d} inside the moduli of genus-g curves:
numerical invariants, classical genus/gonality rules, Lazarsfeld-Mukai
filtration bounds on rank-2 K3 lattices, and a provenance-tracking poset
engine that reproduces the full genus 7-12 classification.
"""

from .lattice import (
    H,
    L,
    LatticeBasis,
    LatticeClass,
    delta,
    find_classes_with_square,
    pair,
    self_int,
)
from .loci import (
    BNLocus,
    RelKind,
    Relation,
    clifford_collapse,
    clifford_index,
    enumerate_loci,
    kappa,
    kappa_bruteforce,
    normalize,
    rho,
    rho_k,
    serre_dual,
    trivial_relations,
)
from .classical import (
    CastelnuovoData,
    castelnuovo_bound,
    castelnuovo_severi,
    ci_gonality,
    conjecture_thresholds,
    coppens_noncontainment,
    four_secant_count,
    gonality_bounds,
    lange_bound,
    plane_projection_rule,
    secant_containment,
    secant_expected_dim,
)
from .k3 import (
    Assignment,
    FilterConfig,
    GTPattern,
    K3Expectation,
    LMInvariants,
    c2_lower_bound,
    candidate_subsheaf_classes,
    destab_box,
    enumerate_assignments,
    enumerate_filtration_types,
    gt_check,
    gt_pattern,
    k3_expected,
    k3_noncontainment,
    lm_invariants,
    min_series_degree,
    quotient_checks,
)
from .poset import (
    ContradictionError,
    DiffCell,
    Fact,
    RelationMatrix,
    assemble,
    closure,
    closure_relations,
    compare,
    covers,
    trivially_implied,
)

__version__ = "0.1.0"
