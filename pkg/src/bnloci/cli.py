"""Command-line surface: `bn invariants`, `bn k3`, `bn poset`, `bn verify`.

Exit statuses: 0 success, 1 domain error (invalid locus, Delta >= 0 where a
lattice is required, verification diff), 2 contradiction, 3 I/O or parse
error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .classical import gonality_bounds
from .k3 import (
    FilterConfig,
    destab_box,
    enumerate_assignments,
    min_series_degree,
)
from .lattice import LatticeBasis, delta
from .loci import (
    BNLocus,
    RelKind,
    clifford_index,
    enumerate_loci,
    kappa,
    kappa_bruteforce,
    normalize,
    rho,
    serre_dual,
)
from .poset import (
    ContradictionError,
    Fact,
    RelationMatrix,
    assemble,
    closure_relations,
    compare,
    covers,
)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_CONTRADICTION = 2
EXIT_IO = 3

_RECORD_KEYS = {"genus", "lhs", "rhs", "relation", "source"}
_POINT_KEYS = {"r", "d"}
_RELATIONS = {k.value for k in RelKind}


class FactsError(ValueError):
    """Malformed facts or fixture file."""


def _parse_point(genus: int, obj, where: str) -> BNLocus:
    if not isinstance(obj, dict) or set(obj) != _POINT_KEYS:
        raise FactsError(f"{where}: locus must be an object with keys r, d")
    try:
        return BNLocus(genus, int(obj["r"]), int(obj["d"]))
    except (TypeError, ValueError) as exc:
        raise FactsError(f"{where}: {exc}") from exc


def parse_fact_records(text: str, genus: int | None = None) -> list[Fact]:
    """Parse a JSON array of fact records, validating every record against
    the enumerated loci of its genus.  Raises FactsError with the index of
    the offending record."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FactsError(f"not valid JSON: {exc}") from exc
    if not isinstance(data, list):
        raise FactsError("top level must be a JSON array of records")
    facts = []
    valid_cache: dict[int, set[BNLocus]] = {}
    for i, rec in enumerate(data):
        where = f"record {i}"
        if not isinstance(rec, dict) or set(rec) != _RECORD_KEYS:
            raise FactsError(
                f"{where}: expected exactly the keys genus, lhs, rhs, relation, source"
            )
        try:
            g = int(rec["genus"])
        except (TypeError, ValueError) as exc:
            raise FactsError(f"{where}: bad genus") from exc
        if genus is not None and g != genus:
            raise FactsError(f"{where}: genus {g} does not match requested genus {genus}")
        if rec["relation"] not in _RELATIONS:
            raise FactsError(f"{where}: relation must be one of {sorted(_RELATIONS)}")
        if not isinstance(rec["source"], str) or not rec["source"]:
            raise FactsError(f"{where}: source citation must be a non-empty string")
        lhs = _parse_point(g, rec["lhs"], where)
        rhs = _parse_point(g, rec["rhs"], where)
        if g not in valid_cache:
            valid_cache[g] = set(enumerate_loci(g))
        for pt in (lhs, rhs):
            if pt not in valid_cache[g]:
                raise FactsError(f"{where}: {pt} is not an enumerated proper locus")
        facts.append(Fact(lhs, rhs, RelKind(rec["relation"]), rec["source"]))
    return facts


def load_facts(path: str | Path, genus: int | None = None) -> list[Fact]:
    return parse_fact_records(Path(path).read_text(encoding="utf-8"), genus)


def _packaged(name: str) -> str:
    return resources.files("bnloci.data").joinpath(name).read_text(encoding="utf-8")


def packaged_facts(genus: int) -> list[Fact]:
    return parse_fact_records(_packaged(f"genus{genus}.json"), genus)


def packaged_fixture_matrix(genus: int) -> RelationMatrix:
    facts = parse_fact_records(_packaged(f"fixture_genus{genus}.json"), genus)
    return closure_relations(
        genus, enumerate_loci(genus), [f.to_relation() for f in facts]
    )


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------- invariants


def cmd_invariants(args) -> int:
    g, r, d = args.g, args.r, args.d
    locus = BNLocus(g, r, d)
    lines = []
    norm = normalize(locus)
    if norm != locus:
        lines.append(f"note: {locus} normalized to {norm} by Serre duality")
        locus = norm
    lines.append(f"locus: {locus}")
    rv = rho(locus.g, locus.r, locus.d)
    lines.append(f"rho: {rv}")
    lines.append(f"clifford index: {clifford_index(locus)}")
    try:
        lines.append(f"serre dual: {serre_dual(locus)}")
    except ValueError:
        lines.append("serre dual: (out of range)")
    lines.append(f"delta: {delta(locus.g, locus.r, locus.d)}")
    if rv >= 0:
        lines.append("rho >= 0: not Brill-Noether special; kappa and gonality "
                     "bounds are undefined")
        print("\n".join(lines))
        return EXIT_DOMAIN
    k = kappa(locus.g, locus.r, locus.d)
    kb = kappa_bruteforce(locus.g, locus.r, locus.d)
    lines.append(f"kappa: {k} (brute-force cross-check: {kb})")
    lo, hi = gonality_bounds(locus.g, locus.r, locus.d)
    lines.append(f"gonality bounds: kappa lower bound {lo}, heuristic K {hi}")
    lines.append("note: the heuristic K can fail when the K3 lattice carries "
                 "elliptic pencils; it is not a certificate")
    print("\n".join(lines))
    return EXIT_OK if k == kb else EXIT_DOMAIN


# ------------------------------------------------------------------------ k3


def cmd_k3(args) -> int:
    basis = LatticeBasis(args.g, args.r, args.d)
    if basis.discriminant >= 0:
        print(
            f"inapplicable: Delta({args.g},{args.r},{args.d}) = "
            f"{basis.discriminant} >= 0, no K3 surface with this Picard lattice"
        )
        return EXIT_DOMAIN
    config = FilterConfig(True, True) if args.filters == "on" else FilterConfig()
    assignments = enumerate_assignments(basis, args.series, config)
    minimum = min_series_degree(basis, args.series, config)
    if args.json:
        payload = {
            "lattice": {"g": args.g, "r": args.r, "d": args.d},
            "series_dim": args.series,
            "filters": args.filters,
            "box": list(destab_box(basis)),
            "assignments": [
                {
                    "type": a.type_str,
                    "chern": [str(c) for c in a.chern],
                    "chern_xy": [list(c.xy) for c in a.chern],
                    "c2_bound": _frac_str(a.c2_bound),
                    "filters": list(a.filtered_by),
                }
                for a in assignments
            ],
            "min_c2_bound": None if minimum is None else _frac_str(minimum),
        }
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
        return EXIT_OK
    print(f"lattice {basis}  series dimension s = {args.series}  filters {args.filters}")
    print(f"destabilizing box |x| <= {destab_box(basis)[0]}, |y| <= {destab_box(basis)[1]}")
    if not assignments:
        print("no admissible assignments: no such series on any smooth curve in |H|")
        return EXIT_OK
    print(f"{'type':<10} {'c1(E_i)':<28} {'(x,y) of c1(E_i)':<22} {'c2 bound':<12} flags")
    for a in assignments:
        chern = ", ".join(str(c) for c in a.chern[:-1]) or "-"
        xy = ", ".join(str(c.xy) for c in a.chern[:-1]) or "-"
        bound = _frac_str(a.c2_bound)
        if a.c2_bound.denominator != 1:
            bound += f" ({float(a.c2_bound):.2f})"
        flags = ",".join(a.filtered_by) or "-"
        print(f"{a.type_str:<10} {chern:<28} {xy:<22} {bound:<12} {flags}")
    print(f"minimum c2 bound: {_frac_str(minimum)}")
    return EXIT_OK


# --------------------------------------------------------------------- poset


def _locus_json(x: BNLocus) -> list[int]:
    return [x.r, x.d]


def matrix_to_json(matrix: RelationMatrix) -> str:
    reps = matrix.representatives()
    relations = []
    for x in reps:
        for y in reps:
            if x == y:
                continue
            kind, prov = matrix.relation(x, y)
            if kind == "unknown" or kind == RelKind.EQ.value:
                continue
            relations.append(
                {
                    "lhs": _locus_json(x),
                    "rhs": _locus_json(y),
                    "relation": kind,
                    "provenance": prov,
                }
            )
    payload = {
        "genus": matrix.genus,
        "classes": [[_locus_json(m) for m in cls] for cls in matrix.classes],
        "relations": relations,
        "covers": [
            {"lhs": _locus_json(c.lhs), "rhs": _locus_json(c.rhs)}
            for c in covers(matrix)
        ],
        "unknown": [
            [_locus_json(x), _locus_json(y)] for (x, y) in matrix.unknown_pairs()
        ],
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _node_id(rep: BNLocus) -> str:
    return f"M_{rep.r}_{rep.d}"


def matrix_to_dot(matrix: RelationMatrix) -> str:
    """Deterministic DOT: nodes sorted, one node per equality class, grid by
    r (horizontal) and Clifford index (vertical rank constraints)."""
    g = matrix.genus
    lines = [f"digraph brill_noether_genus_{g} {{", '  rankdir="BT";', '  node [shape=box];']
    reps = matrix.representatives()
    members = {cls[0]: cls for cls in matrix.classes}
    for rep in reps:
        label = " = ".join(str(m) for m in members[rep])
        lines.append(f'  {_node_id(rep)} [label="{label}"];')
    levels = sorted({clifford_index(rep) for rep in reps})
    for lev in levels:
        row = [
            _node_id(rep)
            for rep in sorted(reps, key=lambda x: x.key)
            if clifford_index(rep) == lev
        ]
        lines.append("  { rank=same; " + "; ".join(row) + "; }")
    firsts = []
    for lev in levels:
        row = [rep for rep in reps if clifford_index(rep) == lev]
        firsts.append(_node_id(sorted(row, key=lambda x: x.key)[0]))
    for lower, upper in zip(firsts, firsts[1:]):
        lines.append(f"  {lower} -> {upper} [style=invis];")
    for cov in covers(matrix):
        lines.append(
            f"  {_node_id(cov.lhs)} -> {_node_id(cov.rhs)} [style=solid];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_poset(args) -> int:
    facts = load_facts(args.facts, args.g) if args.facts else []
    matrix = assemble(args.g, facts)
    text = matrix_to_dot(matrix) if args.format == "dot" else matrix_to_json(matrix) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -------------------------------------------------------------------- verify


def parse_genus_range(spec: str) -> list[int]:
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(spec)]


def cmd_verify(args) -> int:
    genera = parse_genus_range(args.range)
    failed = False
    for g in genera:
        facts = packaged_facts(g)
        expected = packaged_fixture_matrix(g)
        computed = assemble(g, facts)
        diffs = compare(computed, expected)
        unknown = computed.unknown_pairs()
        if diffs or unknown:
            failed = True
            print(f"genus {g}: FAIL ({len(diffs)} differing cells, "
                  f"{len(unknown)} unknown)")
            for diff in diffs:
                print(f"  {diff}")
            for x, y in unknown:
                print(f"  unknown: {x} vs {y}")
        else:
            print(f"genus {g}: PASS ({len(computed.classes)} classes, "
                  f"{len(computed.all_relations())} closed relations)")
    return EXIT_DOMAIN if failed else EXIT_OK


# ---------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="bn",
        description="Relative positions of Brill-Noether loci: invariants, "
        "K3 lattice bounds, and containment posets.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    pi = sub.add_parser("invariants", help="numerical invariants of one locus")
    pi.add_argument("g", type=int)
    pi.add_argument("r", type=int)
    pi.add_argument("d", type=int)
    pi.set_defaults(func=cmd_invariants)

    pk = sub.add_parser("k3", help="admissible assignments and c2 bounds")
    pk.add_argument("g", type=int)
    pk.add_argument("r", type=int)
    pk.add_argument("d", type=int)
    pk.add_argument("--series", type=int, required=True, metavar="S",
                    help="dimension s of the series g^s_e being tested")
    pk.add_argument("--filters", choices=("on", "off"), default="off")
    pk.add_argument("--json", action="store_true")
    pk.set_defaults(func=cmd_k3)

    pp = sub.add_parser("poset", help="relation matrix and cover diagram")
    pp.add_argument("g", type=int)
    pp.add_argument("--facts", metavar="PATH")
    pp.add_argument("--format", choices=("dot", "json"), default="dot")
    pp.add_argument("--output", metavar="PATH")
    pp.set_defaults(func=cmd_poset)

    pv = sub.add_parser("verify", help="check computed matrices against fixtures")
    pv.add_argument("range", help="a genus (9) or range (7..12)")
    pv.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        # downstream consumer (head, less) closed the pipe: not our error
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return EXIT_OK
    except ContradictionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTRADICTION
    except (FactsError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
