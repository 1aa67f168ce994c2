"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails, 2 on usage, input or
scale errors.
"""
from __future__ import annotations

import argparse
import math
import sys
import warnings
from fractions import Fraction

from . import __version__
from .codes import dual_greene_check, dual_weight_enumerator, greene_check, macwilliams_check, weight_enumerator
from .critical import ENUMERATION_CAP, verify_crapo_rota
from .exceptions import ConsistencyError, GroupMatroidError, ScaleError, ValidationError
from .exactlinalg import poly_str
from .groups import construct_group, mask_to_coords, parse_product_spec
from .hypergraph import (
    chromatic_value,
    components,
    count_colorings,
    count_nzflows,
    flow_value,
    star_graph,
)
from .io import dumps_report, load_hypergraph, load_subgroup, write_report
from .laplacian import build_quotient, euler_check, laplacian_spectrum, verify_top_homology
from .polymatroid import a_dual, char_poly, check_axioms, flats, mobius, rank_table, tutte
from .reports import Report, exact_json
from .reptheory import dual_crapo_rota, r_spectrum
from .suite import run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _subset(mask: int) -> list[int]:
    return [i + 1 for i in mask_to_coords(mask)]


def _fmt_subset(mask: int) -> str:
    return "{" + ",".join(map(str, _subset(mask))) + "}"


def _base(arg: str | None):
    if arg is None or arg == "group":
        return None
    try:
        return Fraction(arg)
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"--b must be a positive rational or 'group', got {arg!r}") from None


def _int_list(text: str, flag: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ValidationError(f"{flag} expects comma-separated integers, got {text!r}") from None


def _subgroup(args):
    if not args.gens:
        raise ValidationError("--gens is required for this command")
    return load_subgroup(args.gens, args.group)


def _table(args):
    H = _subgroup(args)
    return H, rank_table(H, _base(args.b))


def _rank_rows(P) -> list[str]:
    lb = math.log(P.base)
    return [f"  {_fmt_subset(S):<14} card {str(c):>8}   r = {math.log(c) / lb:.6f}" for S, c in enumerate(P.card)]


# ---------------------------------------------------------------------------
# commands: each returns (result dict, text lines, ok)
# ---------------------------------------------------------------------------


def cmd_rank(args):
    H, P = _table(args)
    ax = check_axioms(P)
    lines = [f"|H| = {H.order}, b = {P.base}", *_rank_rows(P),
             f"polymatroid: {ax.polymatroid}, matroid: {ax.matroid}"]
    return {"rank_table": P.to_json(), "axioms": ax.to_json(), "order": H.order}, lines, True


def cmd_flats(args):
    _, P = _table(args)
    if args.dual:
        P = a_dual(P)
    F = flats(P)
    mu = mobius(P)
    lines = [f"  {_fmt_subset(f):<14} μ(∅,F) = {mu.get((0, f), 0)}" for f in F]
    result = {"dual": bool(args.dual), "flats": [_subset(f) for f in F],
              "mobius_from_empty": [mu.get((0, f), 0) for f in F]}
    return result, lines, True


def cmd_charpoly(args):
    _, P = _table(args)
    if args.dual:
        P = a_dual(P)
    chi = char_poly(P)
    ks = _int_list(args.k, "--k") if args.k else []
    values = {str(k): chi.eval_at_power(k) for k in ks}
    lines = [f"χ(t) = {chi}", *(f"χ(b^{k}) = {v}" for k, v in values.items())]
    return {"dual": bool(args.dual), "terms": chi.to_json(), "text": str(chi), "values": values}, lines, True


def cmd_dual(args):
    _, P = _table(args)
    A = _int_list(args.capacities, "--capacities") if args.capacities else None
    D = a_dual(P, A)
    return {"dual_rank_table": D.to_json()}, ["a-dual:", *_rank_rows(D)], True


def cmd_tutte(args):
    _, P = _table(args)
    T = tutte(P)
    lines = [f"  {c:+d} · (u−1)^(log_b {m1}) (v−1)^(log_b {m2})" for (m1, m2), c in T.terms.items()]
    return {"terms": T.to_json(), "b": exact_json(P.base)}, ["T(u, v) ="] + lines, True


def cmd_weights(args):
    H = _subgroup(args)
    W, WR = weight_enumerator(H), dual_weight_enumerator(H)
    return ({"W_H": W.to_json(), "W_R": WR.to_json()},
            [f"W_H(t) = {W}", f"W_R(t) = {WR}"], True)


def cmd_rep_spectrum(args):
    H = _subgroup(args)
    spec = r_spectrum(H)
    lines = [f"  {e.name:<20} dim {e.dim:>3}  mult {e.mult:>3}  triv {_fmt_subset(e.triv)}" for e in spec.entries]
    return spec.to_json(), [f"R(H): {len(spec.entries)} irreducibles, Σ mult·dim = {spec.total()}"] + lines, True


def _report_lines(rep: Report) -> list[str]:
    k = f" k={rep.k}" if rep.k is not None else ""
    status = "PASS" if rep.match else "FAIL"
    lhs = exact_json(rep.lhs)
    rhs = exact_json(rep.rhs)
    out = [f"{rep.name}{k}: lhs = {lhs}  rhs = {rhs}  {status}"]
    out += [f"warning: {w}" for w in rep.warnings]
    return out


def cmd_verify(args):
    what = args.identity
    if what == "axioms":
        _, P = _table(args)
        ax = check_axioms(P)
        lines = [f"{k}: {v}" for k, v in ax.to_json().items() if k != "counterexamples"]
        lines += [f"counterexample {k}: {v}" for k, v in ax.to_json()["counterexamples"].items()]
        return {"axioms": ax.to_json(), "polymatroid": ax.polymatroid}, lines, ax.polymatroid
    H = _subgroup(args)
    reps = []
    if what == "crapo-rota":
        for k in _int_list(args.k or "1", "--k"):
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                rep = verify_crapo_rota(H, k, _base(args.b), cap=args.cap or ENUMERATION_CAP)
            if rep.lhs is None:
                raise ScaleError("|H|^k", H.order**k, args.cap or ENUMERATION_CAP)
            reps.append(rep)
    elif what == "dual-crapo-rota":
        for k in _int_list(args.k or "1", "--k"):
            reps.append(dual_crapo_rota(H, k, source=args.source))
    elif what in ("greene", "dual-greene"):
        fn = greene_check if what == "greene" else dual_greene_check
        a_values = tuple(_int_list(args.a, "--a")) if args.a else (-1, 0, 1, 2)
        reps.append(fn(H, a_values=a_values, float_samples=args.samples, seed=args.seed))
    elif what == "macwilliams":
        reps.append(macwilliams_check(H))
    ok = all(r.match for r in reps)
    lines = [ln for r in reps for ln in _report_lines(r)]
    return {"reports": [r.to_json() for r in reps], "match": ok}, lines, ok


def _flow_group(spec: str):
    if "," in spec:
        return parse_product_spec(spec).as_finite_group()
    return construct_group(spec)


def cmd_hypergraph(args):
    if not args.hypergraph:
        raise ValidationError("--hypergraph is required")
    Hg = load_hypergraph(args.hypergraph)
    cap = args.cap or 10**8
    if args.which == "chromatic":
        lams = _int_list(args.lam or "2", "--lambda")
        rows, ok = [], True
        for lam in lams:
            brute = count_colorings(Hg, lam, cap=cap)
            formula = chromatic_value(Hg, lam)
            ok &= brute == formula
            rows.append({"lambda": lam, "brute_force": brute, "formula": formula, "match": brute == formula})
        lines = [f"κ(H) = {components(Hg)}"]
        lines += [f"λ={r['lambda']}: brute force {r['brute_force']}, λ^κ χ(λ) = {r['formula']}"
                  f"  {'PASS' if r['match'] else 'FAIL'}" for r in rows]
        return {"kappa": components(Hg), "values": rows,
                "matrix": star_graph(Hg).to_json()}, lines, ok
    if not args.group:
        raise ValidationError("--group is required for flow counting")
    G = _flow_group(args.group)
    brute = count_nzflows(Hg, G, cap=cap)
    formula = flow_value(Hg, G)
    ok = brute == formula
    lines = [f"|Γ| = {G.order}: brute force {brute}, χ_(P*a)(|Γ|) = {formula}  {'PASS' if ok else 'FAIL'}"]
    return {"order": G.order, "brute_force": brute, "formula": formula, "match": ok}, lines, ok


def cmd_laplacian(args):
    H = _subgroup(args)
    C = build_quotient(H)
    if args.which == "spectrum":
        j = H.n - 1 if args.dim is None else args.dim
        rep = laplacian_spectrum(C, j, augmented=args.augmented, cap=args.cap or 300)
        roots = ", ".join(f"{r}^{m}" if m > 1 else str(r) for r, m in sorted(rep.integer_roots.items(), reverse=True))
        lines = [f"Δ_{j}{_aug_label(rep) if j == 0 else ''}, {C.num_faces(j)} faces",
                 f"char poly: {poly_str(rep.char_poly)}",
                 f"integer eigenvalues: {roots or 'none'}"]
        if not rep.splits:
            lines.append(f"irreducible remainder: {poly_str(rep.residual_factor)}")
        return rep.to_json(), lines, True
    if args.which == "betti":
        rep = verify_top_homology(H, C)
    else:
        rep = euler_check(C)
    lines = _report_lines(rep) + [f"  {k}: {exact_json(v)}" for k, v in rep.details.items()]
    return rep.to_json(), lines, bool(rep.match)


def cmd_paper_suite(args):
    checks = run_suite()
    ok = all(c.ok for c in checks)
    width = max(len(c.name) for c in checks)
    lines = [f"{'PASS' if c.ok else 'FAIL'}  {c.name:<{width}}" for c in checks]
    lines.append(f"{sum(c.ok for c in checks)}/{len(checks)} passed")
    return {"checks": [c.to_json() for c in checks], "passed": ok}, lines, ok


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, gens: bool = True):
    if gens:
        p.add_argument("--group", help='product spec such as "symmetric:3,symmetric:3" '
                                        "(default: the '# group:' header of the generator file)")
        p.add_argument("--gens", help="generator file, or builtin:<name> for a bundled fixture")
        p.add_argument("--b", help="base b: a positive rational, or 'group' (default) for the factor order")
    p.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-': stdout, replacing the text output)")
    p.add_argument("--cap", type=int, help="override the enumeration or dimension cap")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="groupmatroid",
                                     description="Polymatroids of subgroups of products of finite groups.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", help="rank table and axiom summary")
    _common(p)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("flats", help="flats and Möbius values μ(∅, F)")
    _common(p)
    p.add_argument("--dual", action="store_true", help="use the a-dual polymatroid")
    p.set_defaults(func=cmd_flats)

    p = sub.add_parser("charpoly", help="characteristic polynomial")
    _common(p)
    p.add_argument("--dual", action="store_true", help="use the a-dual polymatroid")
    p.add_argument("--k", help="comma-separated k: also evaluate at t = b^k")
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("dual", help="a-dual rank table")
    _common(p)
    p.add_argument("--capacities", help="comma-separated A_x = b^(a_x) (default: factor orders)")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("tutte", help="Tutte polynomial terms")
    _common(p)
    p.set_defaults(func=cmd_tutte)

    p = sub.add_parser("weights", help="weight enumerators of H and of R(H)")
    _common(p)
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("rep-spectrum", help="the irreducibles of R(H) with multiplicities")
    _common(p)
    p.set_defaults(func=cmd_rep_spectrum)

    p = sub.add_parser("verify", help="check an identity exactly")
    p.add_argument("identity", choices=["crapo-rota", "dual-crapo-rota", "greene", "dual-greene",
                                        "macwilliams", "axioms"])
    _common(p)
    p.add_argument("--k", help="comma-separated k values (default 1)")
    p.add_argument("--a", help="comma-separated integer a for the exact Greene points")
    p.add_argument("--source", choices=["orders", "spectrum"], default="orders",
                   help="dual Crapo–Rota: triv-distribution from orders or from R(H)")
    p.add_argument("--samples", type=int, default=20, help="random float points for Greene checks")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hypergraph", help="coloring and flow counts of a hypergraph")
    p.add_argument("which", choices=["chromatic", "flow"])
    p.add_argument("--hypergraph", help="hypergraph file, or builtin:example")
    p.add_argument("--lambda", dest="lam", help="comma-separated numbers of colors (default 2)")
    p.add_argument("--group", help="abelian group for flows, e.g. cyclic:3 or abelian:2x2")
    _common(p, gens=False)
    p.set_defaults(func=cmd_hypergraph)

    p = sub.add_parser("laplacian", help="Laplacians and homology of the quotient complex")
    p.add_argument("which", choices=["spectrum", "betti", "euler"])
    _common(p)
    p.add_argument("--dim", type=int, help="dimension j (default: top, n − 1)")
    aug = p.add_mutually_exclusive_group()
    aug.add_argument("--augmented", dest="augmented", action="store_true", default=None,
                     help="include the empty face in Δ_0 (default only when 0 is the top dimension)")
    aug.add_argument("--unaugmented", dest="augmented", action="store_false",
                     help="use the graph Laplacian for Δ_0")
    p.set_defaults(func=cmd_laplacian)

    p = sub.add_parser("paper-suite", help="recompute every bundled worked example")
    _common(p, gens=False)
    p.set_defaults(func=cmd_paper_suite)
    return parser


def _aug_label(rep) -> str:
    return " (augmented)" if rep.augmented else " (unaugmented)"


def _inputs(args) -> dict:
    skip = {"func", "json", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result, lines, ok = args.func(args)
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (GroupMatroidError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json != "-":
        for line in lines:
            print(line)
    if args.json:
        command = args.command
        if command in ("verify", "hypergraph", "laplacian"):
            command += " " + (args.identity if command == "verify" else args.which)
        write_report(args.json, dumps_report(command, _inputs(args), exact_json(result)))
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
