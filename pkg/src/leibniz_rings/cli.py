"""Command-line front end.

Exit codes: 0 success, 1 a mathematical mismatch or an invalid ring,
2 usage or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import acceptance as A
from . import census as C
from . import fg_abelian as ab
from . import families as F
from . import ring as R
from .errors import BadParameters, BudgetExceeded, FactorOne, IllDefinedBracket, InfiniteGroup, RingFileError
from .ringfile import census_to_file, dump_ring, load_ring, ring_to_doc

OK, MISMATCH, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _sub_doc(s: ab.Subgroup) -> dict:
    return {"gens": [list(x) for x in s.gens], "order": s.order}


def _emit_json(doc) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def _load(path):
    """Ring file or UsageError; an ill-defined table is returned as the exception."""
    try:
        return load_ring(path)
    except IllDefinedBracket as exc:
        return exc
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from exc
    except RingFileError as exc:
        raise UsageError(f"{path}: {exc}") from exc


# -- subcommands ----------------------------------------------------------------


def cmd_check(args) -> int:
    r = _load(args.file)
    if isinstance(r, IllDefinedBracket):
        if args.json:
            _emit_json({"well_defined": False, "error": str(r)})
        else:
            print("well-defined: no")
            print(f"  {r}")
        return MISMATCH
    v = R.validate(r)
    if args.json:
        _emit_json(
            {
                "ring": ring_to_doc(r),
                "well_defined": v.well_defined,
                "left": v.left_leibniz,
                "right": v.right_leibniz,
                "symmetric": v.symmetric,
                "lie": v.lie,
                "witnesses": [
                    {"kind": kind, "triple": list(t), "defect": list(d)} for kind, t, d in v.witnesses
                ],
            }
        )
    else:
        print(v.summary())
    return OK if v.left_leibniz else MISMATCH


def _invariant_doc(r, rep) -> dict:
    return {
        "ring": ring_to_doc(r),
        "leib": _sub_doc(rep.leibniz_kernel),
        "derived": _sub_doc(rep.derived_ideal),
        "left_center": _sub_doc(rep.left_center),
        "right_center": _sub_doc(rep.right_center),
        "center": _sub_doc(rep.center),
        "anticenter": _sub_doc(rep.anticenter),
        "torsion": _sub_doc(rep.torsion_ideal),
        "primary": {str(p): _sub_doc(s) for p, s in rep.primary_ideals.items()},
        "lower_central": [_sub_doc(s) for s in rep.lower_central],
        "stabilized": rep.stabilized,
    }


def cmd_invariants(args) -> int:
    r = _load(args.file)
    if isinstance(r, IllDefinedBracket):
        print(f"not a ring: {r}", file=sys.stderr)
        return MISMATCH
    if not R.is_left_leibniz(r):
        print("not a left Leibniz ring", file=sys.stderr)
        print(r.validation.summary(), file=sys.stderr)
        return MISMATCH
    rep = R.invariant_report(r)
    if args.json:
        _emit_json(_invariant_doc(r, rep))
    else:
        print(r)
        for ln in rep.lines():
            print(ln)
    return OK


def _parse_factors(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"--group expects comma-separated integers, got {text!r}") from exc


def cmd_census(args) -> int:
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    factors = _parse_factors(args.group)
    try:
        g = ab.make_group(factors)
        cen = C.classify(g, budget=args.budget, jobs=args.jobs)
    except (FactorOne, InfiniteGroup, BudgetExceeded, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    try:
        census_to_file(cen, args.out)
    except OSError as exc:
        raise UsageError(f"{args.out}: {exc.strerror or exc}") from exc
    unmatched = [c for c in cen.unmatched]
    if args.json:
        _emit_json(
            {
                "group": list(g.factors),
                "total_valid": cen.total_valid,
                "automorphisms": cen.aut_order,
                "classes": [
                    {"family": c.family, "orbit_size": c.orbit_size, "ring": ring_to_doc(c.ring)} for c in cen.classes
                ],
                "unmatched": len(unmatched),
            }
        )
    else:
        print(f"group {g}: {cen.total_valid} left Leibniz tables, |Aut| = {cen.aut_order}")
        print(f"{len(cen.classes)} isomorphism classes")
        for i, c in enumerate(cen.classes):
            print(f"  class {i}: {c.family} (orbit {c.orbit_size})")
        print(f"unmatched: {len(unmatched)}")
        print(f"written to {args.out}")
    return MISMATCH if unmatched and cen.family_covered else OK


def cmd_family(args) -> int:
    spec = F.FamilySpec(
        args.name,
        p=args.p,
        m=args.m,
        s=args.s,
        k=args.k,
        alpha=args.alpha,
        beta=args.beta,
        sigma=args.sigma,
        alpha1=args.alpha1,
        alpha2=args.alpha2,
    )
    try:
        rep = F.verify_family(spec)
    except BadParameters as exc:
        raise UsageError(str(exc)) from exc
    if args.emit:
        try:
            dump_ring(rep.ring, args.emit)
        except OSError as exc:
            raise UsageError(f"{args.emit}: {exc.strerror or exc}") from exc
    if args.json:
        _emit_json(
            {
                "family": spec.tag(),
                "ring": ring_to_doc(rep.ring),
                "left": rep.left_leibniz,
                "computed": {k: _sub_doc(v) for k, v in rep.computed.items()},
                "stated": {k: _sub_doc(v) for k, v in rep.claimed.items()},
                "matches": rep.matches,
            }
        )
    else:
        for ln in rep.lines():
            print(ln)
        if args.emit:
            print(f"written to {args.emit}")
    return OK if rep.ok else MISMATCH


def cmd_verify(args) -> int:
    cfg = A.SuiteConfig(max_p=args.max_p, max_m=args.max_m, max_k=args.max_k, seed=args.seed, jobs=args.jobs)
    print(f"seed: {cfg.seed}")

    def echo(res):
        print(res.line(), flush=True)
        if args.verbose or not res.passed:
            for n in res.notes:
                print(f"      {n}")

    results = A.run_suite(cfg, echo=echo)
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed" + (f"; failed: {failed}" if failed else ""))
    return MISMATCH if failed else OK


# -- parser -----------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="leibniz-rings", description="Leibniz rings over the integers: checks, invariants, censuses.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="validate a ring file")
    c.add_argument("file")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("invariants", help="ideals and centers of a left Leibniz ring")
    c.add_argument("file")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_invariants)

    c = sub.add_parser("census", help="classify all left Leibniz rings on a finite group")
    c.add_argument("--group", required=True, help="factor orders, e.g. 9,3")
    c.add_argument("--out", required=True)
    c.add_argument("--budget", type=int, default=C.DEFAULT_BUDGET)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_census)

    c = sub.add_parser("family", help="build a named family member and compare with its closed forms")
    c.add_argument("name", choices=F.FAMILIES)
    for flag in ("p", "m", "s", "k", "alpha", "beta", "sigma", "alpha1", "alpha2"):
        c.add_argument(f"--{flag}", type=int)
    c.add_argument("--emit", metavar="FILE")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_family)

    c = sub.add_parser("verify-paper", help="run the acceptance suite")
    c.add_argument("--max-p", type=int, default=5)
    c.add_argument("--max-m", type=int, default=4)
    c.add_argument("--max-k", type=int, default=24)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--verbose", "-v", action="store_true")
    c.set_defaults(func=cmd_verify)
    return p


def _validate_verify(args):
    if args.command == "verify-paper":
        for name in ("max_p", "max_m", "max_k", "jobs"):
            if getattr(args, name) < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be at least 1")


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else USAGE
    try:
        _validate_verify(args)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
