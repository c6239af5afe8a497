"""Command-line interface: parse, compute, and emit deterministic reports.

Subcommands: alg, etale, microloc, fm, oracle.  Exit codes: 0 when all
checks pass, 1 when a check fails (the report is still emitted), 2 on
usage, parse, or budget errors.  `--json -` writes the report to
standard output (the default); any other value names an output file.
NCF_BUDGET caps oracle instance sizes.
"""

import argparse
import json
import random
import sys

from .words import NcPoly
from .truncated import build_truncated, AlgebraError, InconsistentPresentation
from .filtration import nc_filtration, quotient_rd
from .microloc import (FilteredAlgebra, gr_n, associated_graded,
                       graded_iso_report, localize_deg0, lift_independence,
                       ZeroSymbol, BadLift, NotFiltered)
from .groups import FiniteAbGroup
from .fmkernel import (Kernel, poincare, inverse_kernel, transform_kernel,
                       inverse_transform_kernel, quasi_special_algebra,
                       transform_algebra_report, GradedModule,
                       module_transform_report, random_kernel, random_module,
                       NORMALIZATION, KernelError)
from .dsl import (parse_presentation, parse_group, parse_poly, parse_fm_gens,
                  print_poly, print_presentation, ParseError, ZeroModulus,
                  diagram_from_json, morphism_from_json)
from .report import make_report, dump_report
from .oracles import (filtration_oracle, orthogonality_oracle, assoc_oracle,
                      BudgetExceeded)


class UsageError(Exception):
    pass


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _read_json(path):
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise UsageError(f"bad JSON in {path}: {exc}") from None


def _emit(report, dest):
    if dest == "-":
        dump_report(report, sys.stdout)
    else:
        with open(dest, "w", encoding="utf-8") as fh:
            dump_report(report, fh)


def _check(name, ok, witness=None):
    entry = {"name": name, "status": "pass" if ok else "fail"}
    if witness is not None and not ok:
        entry["witness"] = witness
    return entry


# -- alg ---------------------------------------------------------------------

def _cmd_alg(args):
    text = _read_text(args.pres) if args.pres else args.spec
    if text is None:
        raise UsageError("alg needs --pres FILE or --spec TEXT")
    pres = parse_presentation(text)
    alg = build_truncated(pres)
    checks = []
    for k, rel in enumerate(pres.relations):
        nf = alg.normal_form(rel)
        checks.append(_check(f"relation_{k}_normal_form_zero", nf.is_zero(),
                             witness=print_poly(nf, pres.gens)))
    dims_by_degree = {}
    for w in alg.basis:
        dims_by_degree[len(w)] = dims_by_degree.get(len(w), 0) + 1
    depth = min(pres.bound, args.depth)
    filtration_dims = {d: nc_filtration(alg, d).dim
                       for d in range(depth + 1)}
    checks.append(_check(
        "filtration_decreasing",
        all(filtration_dims[d] >= filtration_dims[d + 1]
            for d in range(depth))))
    try:
        r0 = quotient_rd(alg, 0)
        comm = all(r0.mul(NcPoly.gen(i), NcPoly.gen(j))
                   == r0.mul(NcPoly.gen(j), NcPoly.gen(i))
                   for i in range(len(pres.gens))
                   for j in range(i + 1, len(pres.gens)))
    except InconsistentPresentation:
        comm = True  # the commutator ideal is everything: zero ring
    checks.append(_check("commutative_quotient_commutes", comm))
    extra = {
        "basis": [list(w) for w in alg.basis],
        "basis_words": ["*".join(pres.gens[i] for i in w) if w else "1"
                        for w in alg.basis],
        "dim": alg.dim,
        "dims_by_degree": dims_by_degree,
        "filtration_dims": filtration_dims,
    }
    return make_report("alg", {"presentation": print_presentation(pres)},
                       checks, extra)


# -- etale -------------------------------------------------------------------

def _cmd_etale_lift(args):
    from .etale import solve_lifts
    diag = diagram_from_json(_read_json(args.diagram))
    checks = [_check("diagram_commutes", diag.commutes())]
    problems = diag.verify()
    checks.append(_check("diagram_valid", not problems, witness=problems))
    sol = solve_lifts(diag)
    checks.append(_check("lift_exists", sol.exists))
    checks.append(_check("lift_unique", sol.unique,
                         witness={"lift_space_dim": sol.nullspace_dim}))
    extra = {"solution": sol.as_report(), "label": diag.label}
    if sol.morphism is not None:
        extra["lift_images"] = [print_poly(p, diag.Aprime.pres.gens)
                                for p in sol.morphism.images]
    return make_report("etale lift", {"diagram": args.diagram}, checks, extra)


def _cmd_etale_check(args):
    from .etale import check_formally_etale
    alpha = morphism_from_json(_read_json(args.alpha))
    family_obj = _read_json(args.family)
    family = [diagram_from_json(d) for d in family_obj["diagrams"]]
    result = check_formally_etale(alpha, family)
    checks = [
        _check("all_diagrams_lift", result["formally_etale_over_family"],
               witness=[c for c in result["cases"]
                        if not (c.get("exists") and c.get("unique"))]),
        _check("family_nonempty", result["diagrams_checked"] > 0),
    ]
    return make_report("etale check",
                       {"alpha": args.alpha, "family": args.family},
                       checks, {"result": result})


# -- microloc ---------------------------------------------------------------

def _cmd_microloc(args):
    pres = parse_presentation(_read_text(args.pres))
    fa = FilteredAlgebra(build_truncated(pres))
    n = args.n
    mg = gr_n(fa, n)
    checks = []
    tflags = mg.check_t()
    for key, val in sorted(tflags.items()):
        checks.append(_check(f"t_{key}", bool(val)))
    iso = graded_iso_report(mg.mod_t_view(), associated_graded(fa))
    checks.append(_check("mod_t_matches_graded", iso["ok"], witness=iso))
    extra = {
        "n": n,
        "dims_per_grade": mg.dims(),
        "filtration_layer_dims": [fa.layer(i).dim
                                  for i in range(fa.top + 1)],
    }
    if args.localize:
        lhs, _, rhs = args.localize.partition("=")
        if lhs.strip() != "f" or not rhs.strip():
            raise UsageError("--localize expects f=<poly>")
        f = parse_poly(rhs, pres.gens)
        lift = parse_poly(args.lift, pres.gens) if args.lift else None
        try:
            loc = localize_deg0(mg, f, lift=lift)
        except (ZeroSymbol, BadLift) as exc:
            checks.append(_check("localization_input", False,
                                 witness=str(exc)))
            return make_report("microloc grn", _microloc_inputs(args, pres),
                               checks, extra)
        checks.append(_check("localization_input", True))
        extra["localization"] = {
            "dim": loc.alg.dim,
            "dim_grade_zero": loc.dim0,
            "grade_dims": loc.grade_dims(),
            "deg0_words": [list(w) for w in loc.deg0_words()],
        }
        if args.lifts:
            lifts = [parse_poly(s, pres.gens) for s in args.lifts]
            rep = lift_independence(mg, f, lifts)
            checks.append(_check("lift_independent", rep["ok"], witness=rep))
            extra["lift_independence"] = {
                "lifts": len(lifts), "dims": rep["dims"],
                "pairs": len(rep["pairs"]),
            }
    return make_report("microloc grn", _microloc_inputs(args, pres),
                       checks, extra)


def _microloc_inputs(args, pres):
    inputs = {"presentation": print_presentation(pres), "n": args.n}
    if args.localize:
        inputs["localize"] = args.localize
    if args.lift:
        inputs["lift"] = args.lift
    if args.lifts:
        inputs["lifts"] = list(args.lifts)
    return inputs


# -- fm ----------------------------------------------------------------------

def _fm_inversion_checks(group):
    P, Q = poincare(group), inverse_kernel(group)
    pq = P.circle(Q) == Kernel.delta(group)
    qp = Q.circle(P) == Kernel.delta(group.dual())
    return [_check("pairing_times_inverse_is_identity", pq),
            _check("inverse_times_pairing_is_identity", qp)]


def _fm_transform_checks(algebra, rng):
    group = FiniteAbGroup(algebra.group.moduli)
    out, rep = transform_algebra_report(algebra, group)
    checks = [
        _check("transform_closed_form_matches_matrix",
               rep["closed_form_matches_matrix"]),
        _check("transform_multiplicative_on_basis", rep["multiplicative"]),
        _check("transformed_algebra_associative", rep["associativity"]),
    ]
    dense_ok = True
    witness = None
    for k in range(8):
        a = random_kernel(algebra.group, rng)
        b = random_kernel(algebra.group, rng)
        lhs = transform_kernel(a.circle(b), group)
        rhs = transform_kernel(a, group).circle(transform_kernel(b, group))
        if lhs != rhs or inverse_transform_kernel(
                transform_kernel(a, group)) != a:
            dense_ok = False
            witness = {"instance": k}
            break
    checks.append(_check("transform_multiplicative_on_dense_kernels",
                         dense_ok, witness))
    exchange = [{"shift": list(algebra.pairs[k][0]),
                 "twist": list(algebra.pairs[k][1]),
                 "image_shift": list(out.pairs[k][0]) if k < out.rank else None}
                for k in range(min(algebra.rank, out.rank))]
    return checks, {"transform_rank": out.rank, "exchange_sample": exchange}


def _fm_cocycle_checks(algebra):
    g = algebra.group
    ok = True
    witness = None
    for (i, j), (k, c) in algebra.structure.items():
        si, ti = algebra.pairs[i]
        sj, tj = algebra.pairs[j]
        if c != g.char(tj, si):
            ok = False
            witness = {"pair": [i, j]}
            break
    assoc = algebra.associativity_report()
    return [_check("composition_scalar_is_twist_of_shift", ok, witness),
            _check("structure_constants_associative", assoc["ok"],
                   witness=assoc["violations"][:3] or None)]


def _fm_module_checks(algebra, rng):
    m = GradedModule.delta(algebra.group, algebra.group.zero)
    reports = [module_transform_report(algebra, m)]
    for _ in range(3):
        reports.append(module_transform_report(
            algebra, random_module(algebra.group, rng)))
    return [
        _check("module_action_consistent",
               all(r["action_pairs_checked"] for r in reports)),
        _check("module_transform_functorial",
               all(r["ok"] for r in reports)),
        _check("module_round_trip_identity",
               all(r["round_trip_identity"] for r in reports)),
    ]


_FM_CHECKS = ("inversion", "transform", "cocycle", "module")


def _cmd_fm(args):
    group = parse_group(args.group)
    pairs = parse_fm_gens(args.algebra, group)
    algebra = quasi_special_algebra(group, pairs, max_rank=args.max_rank)
    wanted = (_FM_CHECKS if args.check == "all"
              else tuple(args.check.split(",")))
    for w in wanted:
        if w not in _FM_CHECKS:
            raise UsageError(f"unknown check {w!r}; choose from "
                             f"{', '.join(_FM_CHECKS)} or all")
    rng = random.Random(args.seed)
    checks = []
    extra = {
        "normalization": NORMALIZATION,
        "group": args.group,
        "rank": algebra.rank,
        "commutative": algebra.is_commutative(),
        "seed": args.seed,
    }
    if "inversion" in wanted:
        checks.extend(_fm_inversion_checks(group))
    if "transform" in wanted:
        tchecks, textra = _fm_transform_checks(algebra, rng)
        checks.extend(tchecks)
        extra.update(textra)
    if "cocycle" in wanted:
        checks.extend(_fm_cocycle_checks(algebra))
    if "module" in wanted:
        checks.extend(_fm_module_checks(algebra, rng))
    return make_report("fm", {"group": args.group, "algebra": args.algebra,
                              "check": args.check, "seed": args.seed},
                       checks, extra)


# -- oracle -------------------------------------------------------------------

def _cmd_oracle(args):
    if args.kind == "filtration":
        data = filtration_oracle(args.gens, args.bound, args.depth)
        inputs = {"kind": "filtration", "gens": args.gens,
                  "bound": args.bound, "depth": args.depth}
        checks = [_check("oracle_completed", True)]
    elif args.kind == "orthogonality":
        if not args.group:
            raise UsageError("orthogonality oracle needs --group")
        group = parse_group(args.group)
        data = orthogonality_oracle(group.moduli)
        inputs = {"kind": "orthogonality", "group": args.group}
        checks = [_check("character_sums_diagonal", data["ok"],
                         witness=[e for e in data["entries"]
                                  if not e["ok"]][:3] or None)]
        data = {k: v for k, v in data.items() if k != "entries"}
    elif args.kind == "assoc":
        if not args.group:
            raise UsageError("assoc oracle needs --group")
        group = parse_group(args.group)
        data = assoc_oracle(group.moduli, args.seed, args.count)
        inputs = {"kind": "assoc", "group": args.group,
                  "seed": args.seed, "count": args.count}
        checks = [_check("composition_laws_hold", data["ok"],
                         witness=[e for e in data["instances"]
                                  if not (e["associative"]
                                          and e["unit_laws"])][:3] or None)]
    else:
        raise UsageError(f"unknown oracle kind {args.kind!r}")
    return make_report("oracle", inputs, checks, {"oracle": data})


# -- dispatch -----------------------------------------------------------------

def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", default="-", metavar="DEST",
                        help="report destination; '-' for stdout (default)")
    top = argparse.ArgumentParser(
        prog="ncfourier",
        parents=[common],
        description="Exact computations for truncated noncommutative "
                    "algebras, microlocalizations, and finite-abelian "
                    "kernel transforms.")
    sub = top.add_subparsers(dest="subcommand", required=True)

    p_alg = sub.add_parser("alg", parents=[common],
                           help="build a presented algebra")
    p_alg.add_argument("--pres", help="presentation file ('-' for stdin)")
    p_alg.add_argument("--spec", help="inline presentation text")
    p_alg.add_argument("--depth", type=int, default=4,
                       help="max filtration depth to report")

    p_et = sub.add_parser("etale", help="central extensions and lifting")
    et_sub = p_et.add_subparsers(dest="etale_cmd", required=True)
    p_lift = et_sub.add_parser("lift", parents=[common],
                              help="solve one lifting diagram")
    p_lift.add_argument("--diagram", required=True)
    p_chk = et_sub.add_parser("check", parents=[common],
                              help="lifting over a family of extensions")
    p_chk.add_argument("--alpha", required=True)
    p_chk.add_argument("--family", required=True)

    p_ml = sub.add_parser("microloc", help="graded and microlocal views")
    ml_sub = p_ml.add_subparsers(dest="microloc_cmd", required=True)
    p_grn = ml_sub.add_parser("grn", parents=[common],
                               help="level-n graded algebra")
    p_grn.add_argument("--pres", required=True)
    p_grn.add_argument("--n", type=int, default=1)
    p_grn.add_argument("--localize", metavar="f=<poly>")
    p_grn.add_argument("--lift", metavar="<poly>")
    p_grn.add_argument("--lifts", nargs="*", metavar="<poly>",
                       help="extra lifts for independence comparison")

    p_fm = sub.add_parser("fm", parents=[common],
                          help="finite-abelian kernel transforms")
    p_fm.add_argument("--group", required=True)
    p_fm.add_argument("--algebra", required=True,
                      help="generators, e.g. shift=(1,0);twist=(0,1)")
    p_fm.add_argument("--check", default="all")
    p_fm.add_argument("--seed", type=int, default=0)
    p_fm.add_argument("--max-rank", type=int, default=512)

    p_or = sub.add_parser("oracle", parents=[common],
                          help="brute-force oracle runners")
    p_or.add_argument("--kind", required=True,
                      choices=("filtration", "orthogonality", "assoc"))
    p_or.add_argument("--gens", type=int, default=2)
    p_or.add_argument("--bound", type=int, default=4)
    p_or.add_argument("--depth", type=int, default=4)
    p_or.add_argument("--group")
    p_or.add_argument("--seed", type=int, default=1)
    p_or.add_argument("--count", type=int, default=10)
    return top


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.subcommand == "alg":
            report = _cmd_alg(args)
        elif args.subcommand == "etale":
            report = (_cmd_etale_lift(args) if args.etale_cmd == "lift"
                      else _cmd_etale_check(args))
        elif args.subcommand == "microloc":
            report = _cmd_microloc(args)
        elif args.subcommand == "fm":
            report = _cmd_fm(args)
        else:
            report = _cmd_oracle(args)
    except (UsageError, ParseError, ZeroModulus, BudgetExceeded) as exc:
        print(f"ncfourier: error: {exc}", file=sys.stderr)
        return 2
    except (AlgebraError, KernelError, NotFiltered) as exc:
        print(f"ncfourier: error: {exc}", file=sys.stderr)
        return 2
    _emit(report, args.json)
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
