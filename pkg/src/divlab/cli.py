"""Command-line entry point: ``divlab <command> ...``.

Each run prints exactly one JSON envelope on stdout; diagnostics go to
stderr. Exit status is 0 on success, 2 on bad input or infeasible
parameters, 3 when a resource cap is hit.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from fractions import Fraction
from functools import lru_cache

from divlab import __version__
from divlab import core, families, numtheory, poset, search
from divlab.errors import DivlabError, ResourceCapError

EXIT_OK, EXIT_USAGE, EXIT_CAP = 0, 2, 3


class _UsageError(DivlabError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog.removeprefix('divlab').strip() or 'usage'}: {message}")


def _int_range(text: str) -> list[int]:
    """``"4"``, ``"2-6"`` or ``"2,3,7"``."""
    out = []
    for part in text.split(","):
        lo, sep, hi = part.strip().partition("-")
        try:
            out.extend(range(int(lo), int(hi) + 1) if sep else [int(lo)])
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad integer range {text!r}") from None
    return out


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _rat(x) -> str:
    return core.format_rational(Fraction(x))


def _mask_values(A: core.GroundSet, mask: core.SubsetMask) -> list[str]:
    return [_rat(v) for v in mask.values(A)]


# -- command handlers ----------------------------------------------------------


def cmd_count(args):
    A = core.GroundSet.parse(args.set)
    rep = core.count_divisors(A, args.k, args.s, list_witnesses=args.list)
    out = {
        "set": str(A),
        "n": rep.n,
        "count": rep.count,
        "target": str(rep.binom_target),
        "exceeds": rep.exceeds,
        "anti_pencil": rep.is_anti_pencil,
    }
    if args.list:
        out["witnesses"] = [_mask_values(A, w) for w in rep.witnesses]
    return out


def cmd_antipencil(args):
    if args.action == "check":
        A = core.GroundSet.parse(args.set)
        rep = core.count_divisors(A, args.k, args.s)
        return {"set": str(A), "anti_pencil": rep.is_anti_pencil, "count": rep.count, "target": str(rep.binom_target)}
    prefix = core.GroundSet.parse(args.prefix)
    built = families.build_anti_pencil(prefix, args.k, args.s, args.max_multiplier)
    rep = core.count_divisors(built.ground_set, args.k, args.s)
    if not built.strict:
        print(f"no strict anti-pencil with multiplier <= {args.max_multiplier}; returning the divisor-guarantee set",
              file=sys.stderr)
    return {
        "set": str(built.ground_set),
        "total": str(built.total),
        "multiplier": built.multiplier,
        "strict": built.strict,
        "count": rep.count,
        "target": str(rep.binom_target),
    }


def cmd_family(args):
    if args.variant == "k1":
        A = families.gen_k1_exception(args.n)
        return families_json(families.family_summary(A, 1, 1))
    if args.variant == "s-exception":
        A = families.gen_s_exception(args.s, args.n, args.filler)
        return families_json(families.family_summary(A, A.n - 1, args.s))
    return families_json(families.family_summary(families.huynh_counterexample(), 2, 1))


def families_json(summary: dict) -> dict:
    return {**summary, "sum": _rat(summary["sum"]), "target": str(summary["target"])}


def cmd_chain(args):
    A = core.GroundSet.parse(args.set)
    chain = core.divisor_chain(A, args.k, args.s)
    out = {"set": str(A), "length": len(chain), "chain": [_mask_values(A, B) for B in chain]}
    if chain:
        check = core.check_chain_bound(A, chain, args.s)
        out["bound"] = {"holds": check.holds, "m": check.m, "q": str(check.q), "detail": check.detail}
    return out


def cmd_width(args):
    if args.kind == "cube":
        prof = poset.cube_rank_profile(args.n, args.d)
        return {"profile": list(prof.sizes), "width": prof.width, "total": str(prof.total)}
    prof = poset.dominance_rank_profile(args.n, args.d)
    out = {"profile": list(prof.sizes), "width": prof.width, "total": str(prof.total)}
    if args.oracle:
        w = poset.dilworth_width(poset.all_subsets(args.n, args.d))
        out.update(oracle=w, agree=w == prof.width)
    return out


def _bound_json(b: poset.BoundComparison) -> dict:
    return {
        "n": b.n,
        "d": b.d,
        "width": b.exact_width,
        "lhs": str(b.bound_squared_lhs),
        "rhs": str(b.bound_squared_rhs),
        "holds": b.holds,
        "equality": b.equality,
    }


def cmd_lemma(args):
    which = args.which
    if which == "1":
        rows = [_bound_json(poset.lemma1_check(n, d)) for d in range(1, args.d_max + 1) for n in range(2, args.n_max + 1)]
        return {"all_hold": all(r["holds"] for r in rows), "rows": rows}
    if which == "2":
        rows = []
        for d in range(2, args.d_max + 1):
            th = poset.lemma2_threshold(d, args.n_max)
            rows.append({"d": d, "n_max": th.n_max, "threshold": th.threshold, "failures": list(th.failures)})
        return {"rows": rows}
    if which == "3":
        scan = numtheory.lemma3_scan(args.k, args.n_max)
        return {"k": scan.k, "limit": scan.limit, "ratio": _rat(scan.ratio), "argmax": scan.argmax}
    if args.grid:
        checked = mismatches = 0
        for m in range(1, args.grid + 1):
            for n in range(1, args.grid + 1):
                if math.gcd(m, n) != 1:
                    continue
                for a in range(1, args.grid + 1):
                    for b in range(1, args.grid + 1):
                        inst = numtheory.FracPairInstance(m, n, a, b)
                        checked += 1
                        mismatches += numtheory.frac_pair_solutions(inst) != numtheory.frac_pair_oracle(inst)
        return {"grid": args.grid, "instances": checked, "mismatches": mismatches}
    counts = numtheory.lemma4_counts(args.m, args.a, args.b, args.n_max)
    return {"m": args.m, "a": args.a, "b": args.b, "counts": {str(n): c for n, c in counts.items()},
            "max_count": max(counts.values(), default=0)}


def cmd_fracpairs(args):
    inst = numtheory.FracPairInstance(args.m, args.n, args.a, args.b)
    sols = numtheory.frac_pair_solutions(inst)
    out = {"solutions": [[str(s.x), str(s.y)] for s in sols], "count": len(sols)}
    if args.oracle:
        out["oracle_agrees"] = sols == numtheory.frac_pair_oracle(inst)
    return out


def _mms_json(rep: core.MMSReport) -> dict:
    return {"n": rep.n, "k": rep.k, "count": rep.count, "target": str(rep.target),
            "applies": rep.applies, "conjecture_holds": rep.conjecture_holds}


def cmd_mms(args):
    if args.random_trials is None:
        if args.seed is not None:
            raise _UsageError("--seed is only meaningful with --random-trials")
        if args.values is None:
            raise _UsageError("mms needs --values or --random-trials")
        return _mms_json(core.mms_count(args.values.split(","), args.k))
    if args.n is None:
        raise _UsageError("--random-trials needs --n")
    rng = random.Random(args.seed)
    violations = []
    for _ in range(args.random_trials):
        values = random_nonnegative_total(rng, args.n)
        rep = core.mms_count(values, args.k)
        if rep.conjecture_holds is False:
            violations.append([_rat(v) for v in values])
    return {"trials": args.random_trials, "n": args.n, "k": args.k, "seed": args.seed, "violations": violations}


def random_nonnegative_total(rng: random.Random, n: int, span: int = 20) -> list[Fraction]:
    """n random rationals with small denominators, shifted so the total is >= 0."""
    values = [Fraction(rng.randint(-span * 6, span * 6), rng.randint(1, 6)) for _ in range(n)]
    total = sum(values)
    if total < 0:
        values[rng.randrange(n)] -= total
    return values


def cmd_search(args):
    cfg = search.SearchConfig(
        n=args.n, k=args.k, s=args.s, sum_bound=args.sum_bound, jobs=args.jobs,
        checkpoint_path=args.checkpoint,
    )
    result = search.exhaustive_search(cfg)
    if args.csv:
        search.write_csv(result, args.csv)
    if args.records:
        search.write_records_jsonl(result, args.records)
    return {"summary": result.summary(), "records": [r.to_json() for r in result.records]}


def cmd_verify_grid(args):
    rows = search.verify_theorem_grid(args.n, args.k, args.s, args.sum_bound, args.jobs)
    return {
        "rows": [
            {"n": r.n, "k": r.k, "s": r.s, "target": str(r.target), "max_count": r.max_count,
             "sets_scanned": r.sets_scanned, "violations": [list(v.elements) for v in r.violations]}
            for r in rows
        ]
    }


# -- parser --------------------------------------------------------------------


@lru_cache(maxsize=1)
def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="divlab", description="Subset-divisor combinatorics toolkit.")
    p.add_argument("--version", action="version", version=f"divlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("count", help="count k-subset s-divisors")
    c.add_argument("--set", required=True, help="comma-separated integers or p/q rationals")
    c.add_argument("--k", type=_positive, required=True)
    c.add_argument("--s", type=_positive, default=1)
    c.add_argument("--list", action="store_true", help="also list the divisors")
    c.set_defaults(func=cmd_count)

    ap = sub.add_parser("antipencil", help="check or build anti-pencils")
    ap_sub = ap.add_subparsers(dest="action", required=True, parser_class=_Parser)
    chk = ap_sub.add_parser("check")
    chk.add_argument("--set", required=True)
    chk.add_argument("--k", type=_positive, required=True)
    chk.add_argument("--s", type=_positive, default=1)
    bld = ap_sub.add_parser("build")
    bld.add_argument("--prefix", required=True)
    bld.add_argument("--k", type=_positive, required=True)
    bld.add_argument("--s", type=_positive, default=1)
    bld.add_argument("--max-multiplier", type=_positive, default=families.MAX_MULTIPLIER)
    ap.set_defaults(func=cmd_antipencil)

    fam = sub.add_parser("family", help="generate an exception family")
    fam_sub = fam.add_subparsers(dest="variant", required=True, parser_class=_Parser)
    k1 = fam_sub.add_parser("k1")
    k1.add_argument("--n", type=_positive, required=True)
    se = fam_sub.add_parser("s-exception")
    se.add_argument("--s", type=_positive, required=True)
    se.add_argument("--n", type=_positive, required=True)
    se.add_argument("--filler", choices=families.FILLER_STRATEGIES, default="geometric")
    fam_sub.add_parser("huynh")
    fam.set_defaults(func=cmd_family)

    ch = sub.add_parser("chain", help="longest dominance chain of s-divisors")
    ch.add_argument("--set", required=True)
    ch.add_argument("--k", type=_positive, required=True)
    ch.add_argument("--s", type=_positive, default=1)
    ch.set_defaults(func=cmd_chain)

    w = sub.add_parser("width", help="rank profile and width")
    w.add_argument("kind", choices=("cube", "dominance"))
    w.add_argument("--n", type=_positive, required=True)
    w.add_argument("--d", type=_positive, required=True)
    w.add_argument("--oracle", action="store_true", help="cross-check with the Dilworth oracle (dominance)")
    w.set_defaults(func=cmd_width)

    lm = sub.add_parser("lemma", help="bound scans")
    lm.add_argument("which", choices=("1", "2", "3", "4"))
    lm.add_argument("--n-max", type=_positive, default=40)
    lm.add_argument("--d-max", type=_positive, default=8)
    lm.add_argument("--k", type=_positive, default=1)
    lm.add_argument("--m", type=_positive, default=1)
    lm.add_argument("--a", type=_positive, default=1)
    lm.add_argument("--b", type=_positive, default=1)
    lm.add_argument("--grid", type=_positive, help="lemma 4: oracle equivalence on m,n,a,b <= GRID")
    lm.set_defaults(func=cmd_lemma)

    fp = sub.add_parser("fracpairs", help="solve m/n = a/x + b/y")
    for name in ("m", "n", "a", "b"):
        fp.add_argument(f"--{name}", type=_positive, required=True)
    fp.add_argument("--oracle", action="store_true")
    fp.set_defaults(func=cmd_fracpairs)

    mm = sub.add_parser("mms", help="count nonnegative k-subsets")
    mm.add_argument("--values", help="comma-separated rationals")
    mm.add_argument("--k", type=_positive, required=True)
    mm.add_argument("--random-trials", type=_positive)
    mm.add_argument("--n", type=_positive)
    mm.add_argument("--seed", type=int)
    mm.set_defaults(func=cmd_mms)

    for name, func in (("search", cmd_search), ("verify-grid", cmd_verify_grid)):
        sp = sub.add_parser(name)
        ranged = name == "verify-grid"
        sp.add_argument("--n", type=_int_range if ranged else _positive, required=True)
        sp.add_argument("--k", type=_int_range if ranged else _positive, required=True)
        sp.add_argument("--s", type=_positive, default=1)
        sp.add_argument("--sum-bound", type=_positive, required=True)
        sp.add_argument("--jobs", type=_positive, default=1)
        if not ranged:
            sp.add_argument("--checkpoint")
            sp.add_argument("--csv")
            sp.add_argument("--records", help="write records as JSON lines")
        sp.set_defaults(func=func)
    return p


def _params(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "command")}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    envelope = {"command": argv[0] if argv else None, "params": {}, "result": None, "version": __version__}
    try:
        args = build_parser().parse_args(argv)
        envelope["command"] = args.command
        envelope["params"] = _params(args)
        envelope["result"] = args.func(args)
        code = EXIT_OK
    except DivlabError as exc:
        envelope["error"] = str(exc)
        code = EXIT_USAGE
    except ResourceCapError as exc:
        envelope["error"] = str(exc)
        code = EXIT_CAP
    if "error" in envelope:
        print(f"divlab: {envelope['error']}", file=sys.stderr)
    json.dump(envelope, sys.stdout, sort_keys=True, default=str)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
