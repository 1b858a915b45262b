"""Command-line surface.

    hallinv parse --in presentation.txt
    hallinv abelianize --fixture deleted_b3
    hallinv alexander --fixture rp:3
    hallinv beta --p 2 --q 3 --fixture horizontal:31425
    hallinv delta --target mpq:3,2 --fixture braid_arrangement
    hallinv cover --order 3 --images 1,1,0,2 --q 0 --in pres.txt
    hallinv census --k 3 --normal --abelian-quotient --conjugacy --in pres.txt
    hallinv arr --perm 31425
    hallinv oracle --target s3 --mode delta --fixture free:2
    hallinv table1 [--rows F2,F3]
    hallinv table2

Exit codes: 0 success, 1 bad input, 2 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .braids import fixture
from .census import census
from .charvar import beta_distribution, b1_cover_cyclic
from .foxcalc import abelianization, alexander_matrix
from .hall import construct_mpqs
from .oracle import (BudgetExceeded, FiniteGroupTable, aut_order, cover_b1,
                     cover_homology, hom_count, regular_cyclic_action)
from .presentations import ParseError, parse_presentation, render_presentation
from .tables import delta_of, render_table, table1, table2


def _add_input_options(sub):
    sub.add_argument("--in", dest="infile", metavar="FILE",
                     help="presentation file")
    sub.add_argument("--fixture", metavar="NAME",
                     help="built-in fixture (e.g. free:3, deleted_b3)")


def _load_presentation(args):
    if getattr(args, "infile", None):
        with open(args.infile, encoding="utf-8") as fh:
            return parse_presentation(fh.read())
    if getattr(args, "fixture", None):
        return fixture(args.fixture)
    raise ValueError("supply a presentation with --in or --fixture")


def _emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _parse_target(spec):
    """ab:2,4 | mpq:3,2 | s3 | a4 | sym:4 | cyclic:6 | table:file.json"""
    if spec == "s3":
        spec = "mpq:2,3"
    elif spec == "a4":
        spec = "mpq:3,2"
    kind, _, arg = spec.partition(":")
    if kind == "ab":
        return "ab", tuple(int(x) for x in arg.split(","))
    if kind == "mpq":
        p, q = (int(x) for x in arg.split(","))
        return "mpq", (p, q)
    if kind == "sym":
        return "sym", (int(arg),)
    if kind == "cyclic":
        return "cyclic", (int(arg),)
    if kind == "table":
        return "table", (arg,)
    raise ValueError(f"unknown target {spec!r}")


def _target_table(kind, params):
    if kind == "ab":
        return FiniteGroupTable.abelian(list(params))
    if kind == "mpq":
        return construct_mpqs(*params).table
    if kind == "sym":
        return FiniteGroupTable.symmetric(params[0])
    if kind == "cyclic":
        return FiniteGroupTable.cyclic(params[0])
    if kind == "table":
        with open(params[0], encoding="utf-8") as fh:
            return FiniteGroupTable(json.load(fh)["mul"])
    raise ValueError(f"no table for target kind {kind!r}")


def _cmd_parse(args):
    P = _load_presentation(args)
    text = render_presentation(P)
    _emit(args, {"generators": list(P.generators),
                 "relators": text.splitlines()[1][len("rels: "):]},
          text.rstrip("\n"))


def _cmd_abelianize(args):
    P = _load_presentation(args)
    abel = abelianization(P)
    payload = {"free_rank": abel.free_rank, "torsion": abel.torsion,
               "b1": {str(q): abel.b1(q) for q in (0, 2, 3, 5, 7)}}
    _emit(args, payload, repr(abel))


def _cmd_alexander(args):
    P = _load_presentation(args)
    A = alexander_matrix(P)
    _emit(args, {"entries": A.dump().splitlines(),
                 "shape": [A.num_relators, A.num_generators]}, A.dump())


def _cmd_beta(args):
    P = _load_presentation(args)
    b = beta_distribution(P, args.p, args.q, jobs=args.jobs,
                          check_orbits=args.check_orbits)
    payload = {"p": b.p, "q": b.q, "n_p": b.n_p,
               "beta": {str(d): c for d, c in sorted(b.counts.items())}}
    _emit(args, payload, repr(b) + f"   (n_p = {b.n_p})")


def _cmd_delta(args):
    P = _load_presentation(args)
    kind, params = _parse_target(args.target)
    if kind not in ("ab", "mpq"):
        raise ValueError("delta targets are ab:... or mpq:p,q")
    A = alexander_matrix(P) if kind == "mpq" else None
    payload = {"target": args.target}
    if kind == "mpq":
        p, q = params
        b = beta_distribution(P, p, q, A=A, jobs=args.jobs)
        value, method = delta_of(P, kind, params, A=A, jobs=args.jobs)
        payload["beta"] = {str(d): c for d, c in sorted(b.counts.items())}
    else:
        value, method = delta_of(P, kind, params)
    payload.update({"delta": value, "method": method})
    _emit(args, payload, f"delta = {value}   [{method}]")


def _cmd_cover(args):
    P = _load_presentation(args)
    images = [int(x) for x in args.images.split(",")]
    value = b1_cover_cyclic(P, args.order, images, args.q)
    payload = {"order": args.order, "images": images, "q": args.q,
               "b1": value}
    _emit(args, payload, f"b1^({args.q}) of the cover = {value}")


def _cmd_census(args):
    P = _load_presentation(args)
    report = census(P, args.k,
                    want_normal=args.normal or args.all_counts,
                    want_alpha=args.abelian_quotient or args.all_counts,
                    want_conjugacy=args.conjugacy,
                    budget=args.budget)
    d = report.as_dict()
    text = "\n".join(f"{k} = {v}" for k, v in d.items() if not
                     k.endswith("_method"))
    _emit(args, d, text)


def _cmd_arr(args):
    if args.perm:
        P = fixture("horizontal:" + args.perm)
    elif args.fixture:
        P = fixture(args.fixture)
    else:
        raise ValueError("supply --perm or --fixture")
    text = render_presentation(P)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    _emit(args, {"presentation": text}, text.rstrip("\n"))


def _cmd_oracle(args):
    P = _load_presentation(args)
    if args.cover_order:
        images = [int(x) for x in args.cover_images.split(",")]
        action = regular_cyclic_action(args.cover_order, images)
        betti, torsion = cover_homology(P, action)
        payload = {"betti": betti, "torsion": torsion,
                   "b1_q": cover_b1(P, action, args.q)}
        _emit(args, payload,
              f"H1(K) = Z^{betti} + {torsion}; b1^({args.q}) = {payload['b1_q']}")
        return
    kind, params = _parse_target(args.target)
    T = _target_table(kind, params)
    if args.mode == "delta":
        epi = hom_count(P, T, "epi", args.budget)
        aut = aut_order(T)
        assert epi % aut == 0
        payload = {"target": args.target, "epi": epi, "aut": aut,
                   "delta": epi // aut}
        _emit(args, payload, f"delta = {payload['delta']} "
                             f"(epi {epi} / aut {aut})")
    else:
        value = hom_count(P, T, args.mode, args.budget)
        _emit(args, {"target": args.target, "mode": args.mode,
                     "count": value}, f"{args.mode} count = {value}")


def _cmd_table(args, builder):
    rows = args.rows.split(",") if args.rows else None
    t = builder(rows, jobs=args.jobs)
    _emit(args, {"table": t}, render_table(t))


def main(argv=None):
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=False,
                        help="emit JSON instead of text")
    common.add_argument("--jobs", type=int, default=1,
                        help="parallel workers for character enumeration")
    common.add_argument("--deterministic-profile", action="store_true",
                        default=False, help="force single-worker enumeration")
    common.add_argument("--budget", type=int, default=10 ** 8,
                        help="partial-assignment budget for enumerations")
    parser = argparse.ArgumentParser(
        prog="hallinv",
        parents=[common],
        description="Hall invariants and homology of finite-index subgroups"
                    " of finitely presented groups")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    s = add_parser("parse", help="parse and normalize a presentation")
    _add_input_options(s)
    s.set_defaults(func=_cmd_parse)

    s = add_parser("abelianize", help="H_1 structure and Betti numbers")
    _add_input_options(s)
    s.set_defaults(func=_cmd_abelianize)

    s = add_parser("alexander", help="dump the Alexander matrix")
    _add_input_options(s)
    s.set_defaults(func=_cmd_alexander)

    s = add_parser("beta", help="Betti distribution of index-p covers")
    _add_input_options(s)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--check-orbits", action="store_true",
                   help="verify depth constancy on power orbits")
    s.set_defaults(func=_cmd_beta)

    s = add_parser("delta", help="Hall invariant")
    _add_input_options(s)
    s.add_argument("--target", required=True,
                   help="ab:2,4 or mpq:3,2 (aliases s3, a4)")
    s.set_defaults(func=_cmd_delta)

    s = add_parser("cover", help="b1 of a finite cyclic cover")
    _add_input_options(s)
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--images", required=True,
                   help="comma-separated generator images in Z_N")
    s.add_argument("--q", type=int, default=0)
    s.set_defaults(func=_cmd_cover)

    s = add_parser("census", help="index-k subgroup counts")
    _add_input_options(s)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--normal", action="store_true")
    s.add_argument("--abelian-quotient", dest="abelian_quotient",
                   action="store_true")
    s.add_argument("--conjugacy", action="store_true")
    s.add_argument("--all-counts", dest="all_counts", action="store_true",
                   help="report every count")
    s.set_defaults(func=_cmd_census)

    s = add_parser("arr", help="emit an arrangement presentation")
    s.add_argument("--perm", help="horizontal arrangement permutation")
    s.add_argument("--fixture", help="named fixture")
    s.add_argument("--out", help="write the presentation to a file")
    s.set_defaults(func=_cmd_arr)

    s = add_parser("oracle", help="brute-force checks")
    _add_input_options(s)
    s.add_argument("--target", help="s3 | a4 | mpq:p,q | ab:... | sym:k"
                                    " | cyclic:n | table:file")
    s.add_argument("--mode", choices=("all", "epi", "delta"), default="all")
    s.add_argument("--cover-order", dest="cover_order", type=int,
                   help="cyclic cover order for homology via coset action")
    s.add_argument("--cover-images", dest="cover_images",
                   help="generator images for the cyclic cover")
    s.add_argument("--q", type=int, default=0)
    s.set_defaults(func=_cmd_oracle)

    s = add_parser("table1", help="Hall invariants of standard groups")
    s.add_argument("--rows", help="comma-separated row labels")
    s.set_defaults(func=lambda a: _cmd_table(a, table1))

    s = add_parser("table2", help="Hall invariants of 2-arrangements")
    s.add_argument("--rows", help="comma-separated row labels")
    s.set_defaults(func=lambda a: _cmd_table(a, table2))

    args = parser.parse_args(argv)
    if args.deterministic_profile:
        args.jobs = 1
    try:
        args.func(args)
    except BudgetExceeded as e:
        print(f"infeasible: {e}", file=sys.stderr)
        return 2
    except (ParseError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
