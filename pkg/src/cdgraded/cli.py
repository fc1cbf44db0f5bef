"""Command line entry point: ``cdgraded <subcommand> ...``.

Exit codes: 0 success / true, 1 checked false (non-identity, non-member,
deficit, failed criterion), 2 usage or parse error, 3 internal invariant breach.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .cd_algebra import CayleyDickson
from .parsing import ParseError, format_poly, parse

GRADINGS = {"z2_3": 3, "z2_2": 2}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers


def load_config(path: str) -> dict:
    """key=value lines: rank, alpha1..alpha3, grading.  '#' starts a comment."""
    cfg: dict = {}
    with open(path) as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected key=value")
            k, v = (s.strip() for s in line.split("=", 1))
            cfg[k] = v
    unknown = set(cfg) - {"rank", "alpha1", "alpha2", "alpha3", "grading"}
    if unknown:
        raise UsageError(f"{path}: unknown keys {sorted(unknown)}")
    return cfg


def algebra_from(args) -> CayleyDickson:
    cfg = load_config(args.algebra) if getattr(args, "algebra", None) else {}
    rank = int(cfg.get("rank", 3))
    if not 1 <= rank <= 3:
        raise UsageError("rank must be 1, 2 or 3")
    try:
        alphas = tuple(Fraction(cfg.get(f"alpha{i + 1}", "1")) for i in range(rank))
    except ValueError as e:
        raise UsageError(f"bad alpha: {e}") from None
    if "grading" in cfg and getattr(args, "grading", None) is None:
        args.grading = cfg["grading"]
    return CayleyDickson(alphas)


def grading_rank(args, default="z2_2") -> int:
    g = getattr(args, "grading", None) or default
    if g not in GRADINGS:
        raise UsageError(f"unknown grading {g!r} (use z2_3 or z2_2)")
    return GRADINGS[g]


def parse_expr(text: str, rank: int):
    f = parse(text)
    for v in f.variables():
        if v.grade.k != rank:
            raise UsageError(f"x{v.id}:{v.grade} is not a Z2^{rank} degree")
    return f


def emit_table(header: list[str], rows: list[list], pretty: bool, out=None):
    out = out or sys.stdout
    rows = [[str(c) for c in r] for r in rows]
    if not pretty:
        out.write("\t".join(header) + "\n")
        for r in rows:
            out.write("\t".join(r) + "\n")
        return
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    out.write("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip() + "\n")
    out.write("  ".join("-" * w for w in widths) + "\n")
    for r in rows:
        out.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")


# ---------------------------------------------------------------------------
# subcommands


def cmd_normalize(args) -> int:
    rank = grading_rank(args, None)
    f = parse_expr(args.expr, rank)
    if rank == 3:
        from .free import Poly
        from .rewrite import normalize_z2_3

        out = Poly()
        trace = []
        for c, t in f:
            s, w = normalize_z2_3(t, trace)
            out = out + Poly.from_term(w, c * s)
        print(format_poly(out))
        normal = True
    else:
        from .rewrite import rewrite_modulo_I

        alg = algebra_from(args)
        res = rewrite_modulo_I(f, budget=args.budget, algebra=alg)
        print(format_poly(res.poly))
        trace = res.trace
        normal = res.normal
    if args.trace:
        for name, pos in trace:
            print(f"{name} @ {pos}")
    if not normal:
        print(f"budget of {args.budget} steps exhausted; result is not normal", file=sys.stderr)
        return 1
    return 0


def cmd_check_identity(args) -> int:
    from .identities import is_identity, recheck_witness

    alg = algebra_from(args)
    rank = grading_rank(args)
    if rank > alg.k:
        raise UsageError(f"the algebra has rank {alg.k}, cannot carry a Z2^{rank} grading")
    f = parse_expr(args.expr, rank)
    res = is_identity(f, alg, alg.grading(rank))
    print(res.describe(alg))
    if not res.holds and res.witness is not None and not recheck_witness(f, res, alg):
        print("witness does not reproduce", file=sys.stderr)
        return 3
    return 0 if res.holds else 1


def _gens(name: str):
    from .rules import derived_rules, ruleset_I, ruleset_z2_3

    table = {
        "I": (ruleset_I, 2),
        "I+derived": (lambda: ruleset_I() + derived_rules(), 2),
        "z2_3": (ruleset_z2_3, 3),
    }
    if name not in table:
        raise UsageError(f"unknown generator set {name!r} (use I, I+derived or z2_3)")
    fn, rank = table[name]
    return fn(), rank


def cmd_member(args) -> int:
    from .tideal import membership

    gens, rank = _gens(args.gens)
    f = parse_expr(args.expr, rank)
    n = max((t.size for t in f.terms()), default=0)
    if n > args.max_degree:
        raise UsageError(f"degree {n} exceeds --max-degree {args.max_degree}")
    alg = algebra_from(args)
    ok = membership(f, gens, alg, alg.grading(rank), allow_degree5=args.max_degree >= 5)
    print("member" if ok else "not a member")
    return 0 if ok else 1


def cmd_certify(args) -> int:
    from .tideal import certify_all

    rank = grading_rank(args)
    gens, grank = _gens(args.gens or ("z2_3" if rank == 3 else "I"))
    if grank != rank:
        raise UsageError("generator set and grading disagree")
    if args.max_degree > 5 or (args.max_degree == 5 and not args.allow_degree5):
        raise UsageError("degree cap is 4 (5 with --allow-degree5)")
    alg = algebra_from(args)
    certs = certify_all(gens, alg, alg.grading(rank), args.max_degree, args.allow_degree5)
    header = ["grades", "dim_ambient", "dim_cons", "dim_id", "equal"]
    rows = [c.tsv_row().split("\t") for c in certs]
    if args.out:
        with open(args.out, "w") as fh:
            emit_table(header, rows, False, fh)
    emit_table(header, rows, args.pretty)
    return 0 if all(c.equal for c in certs) else 1


def cmd_mult_table(args) -> int:
    alg = algebra_from(args)
    rank = GRADINGS[args.grading] if args.grading else alg.k
    if rank > alg.k:
        raise UsageError(f"the algebra has rank {alg.k}, cannot carry a Z2^{rank} grading")
    gr = alg.grading(rank)
    rows = []
    for i, a in enumerate(alg.labels):
        row = [f"{a}:{gr.degrees[i]}"]
        for j in range(alg.dim):
            c, k = alg.table[i][j]
            row.append(("-" if c < 0 else "") + (f"{abs(c)}" if abs(c) != 1 else "") + alg.labels[k])
        rows.append(row)
    emit_table(["*"] + alg.labels, rows, args.pretty)
    return 0


def cmd_derive_m2(args) -> int:
    from .matrices import (
        check_m2_identities,
        rederive_restricted,
        restricted_instance_counts,
        restricted_rules,
        split_quaternion_iso,
    )

    counts = restricted_instance_counts()
    rows = [[lab, r.text(), counts[lab]] for lab, r in restricted_rules().items()]
    emit_table(["rule", "relation", "z2_instances"], rows, args.pretty)
    print()
    m2 = check_m2_identities()
    rows = [[r.label, ",".join(f"{k}={v}" for k, v in r.grades.items()),
             "gated" if r.gated else ("holds" if r.ok else "FAILS")] for r in m2]
    emit_table(["identity", "grades", "verdict"], rows, args.pretty)
    print()
    ders = rederive_restricted()
    emit_table(["target", "assignments", "members"], [[d.label, d.assignments, d.members] for d in ders], args.pretty)
    print()
    iso = split_quaternion_iso()
    rows = [[lab, "[" + "; ".join(" ".join(str(c) for c in row) for row in m) + "]"] for lab, m in iso.table()]
    emit_table(["quaternion", "matrix"], rows, args.pretty)
    ok = all(r.ok for r in m2) and all(d.ok for d in ders) and iso.multiplicative() and iso.grade_compatible()
    return 0 if ok else 1


def cmd_selftest(args) -> int:
    from .acceptance import run_all

    results = run_all(seed=args.seed)
    return 0 if all(c.passed and c.in_time for c in results) else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks (default 0)")
    common.add_argument("--pretty", action="store_true", help="aligned tables instead of TSV")
    common.add_argument("--algebra", metavar="CONFIG", help="key=value file: rank, alpha1..alpha3, grading")

    p = argparse.ArgumentParser(prog="cdgraded", description="Graded identities of Cayley-Dickson algebras.",
                                parents=[common])
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("normalize", parents=[common], help="normal form of an expression")
    s.add_argument("--grading", choices=sorted(GRADINGS), required=True)
    s.add_argument("--expr", required=True)
    s.add_argument("--trace", action="store_true", help="print 'rule @ position' per step")
    s.add_argument("--budget", type=int, default=10_000)
    s.set_defaults(fn=cmd_normalize)

    s = sub.add_parser("check-identity", parents=[common], help="is the expression a graded identity?")
    s.add_argument("--grading", choices=sorted(GRADINGS))
    s.add_argument("--expr", required=True)
    s.set_defaults(fn=cmd_check_identity)

    s = sub.add_parser("member", parents=[common], help="membership in a T-ideal at the expression's multidegree")
    s.add_argument("--gens", default="I")
    s.add_argument("--expr", required=True)
    s.add_argument("--max-degree", type=int, default=4)
    s.set_defaults(fn=cmd_member)

    s = sub.add_parser("certify", parents=[common], help="consequence space vs identity space, per multidegree")
    s.add_argument("--grading", choices=sorted(GRADINGS))
    s.add_argument("--gens")
    s.add_argument("--max-degree", type=int, default=3)
    s.add_argument("--allow-degree5", action="store_true")
    s.add_argument("--out", help="also write the TSV here")
    s.set_defaults(fn=cmd_certify)

    s = sub.add_parser("mult-table", parents=[common], help="basis multiplication table")
    s.add_argument("--grading", choices=sorted(GRADINGS))
    s.set_defaults(fn=cmd_mult_table)

    s = sub.add_parser("derive-m2", parents=[common], help="the Z2-graded M_2 coda")
    s.set_defaults(fn=cmd_derive_m2)

    s = sub.add_parser("selftest", parents=[common], help="run the acceptance suite")
    s.set_defaults(fn=cmd_selftest)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.fn(args)
    except (UsageError, ParseError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except AssertionError as e:
        print(f"internal invariant breached: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
