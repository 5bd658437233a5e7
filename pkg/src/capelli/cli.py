"""Command-line surface: verdicts, tower generation, probabilities, benchmarks.

Exit codes: 0 = irreducible outcome / successful query, 1 = reducible
outcome or rejected tower step, 2 = usage or precondition error.

JSON reports are byte-identical across runs for fixed inputs and seeds:
they carry deterministic work counts (coefficient multiplications), never
wall-clock times. Human-readable output adds timings. All numbers inside
JSON are decimal strings, since group orders outgrow fixed-width integers.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Optional

from .criterion import (
    DEFAULT_CANDIDATE_BOUND,
    FourthPowerTest,
    ResidueTest,
    Shortcut,
    Verdict,
    ZeroRootEvidence,
    decide_b_xd,
    grow_tower,
)
from .errors import (
    CapelliError,
    NoViableStepError,
    PolyParseError,
    ReducibleInputError,
    TowerStepRejectedError,
)
from .ff import Poly, PrimeField, compose_power, count_mults
from .intops import primes_up_to
from .oracle import DEFAULT_ENUMERATION_BOUND, DEFAULT_WORK_BOUND, rabin_test
from .polytext import parse_coeff_array, parse_poly, render_poly
from .prob import Convention, exact_probability, exhaustive_census, monte_carlo_estimate, union_lower_bound

__all__ = ["main", "run"]


# ---------------------------------------------------------------------------
# report helpers
# ---------------------------------------------------------------------------


def _fraction_json(v: Fraction) -> dict:
    return {"rational": str(v), "decimal": f"{float(v):.6f}"}


def _evidence_json(ev) -> Optional[dict]:
    if ev is None:
        return None
    if isinstance(ev, ResidueTest):
        return {
            "kind": "prime-residue",
            "dprime": str(ev.dprime),
            "exponent": str(ev.exponent),
            "result": [str(c) for c in ev.result],
            "is_power": ev.is_power,
        }
    if isinstance(ev, FourthPowerTest):
        return {
            "kind": "fourth-power",
            "exponent": str(ev.exponent),
            "result": [str(c) for c in ev.result],
            "is_power": ev.is_power,
        }
    if isinstance(ev, Shortcut):
        return {
            "kind": "shortcut",
            "dprime": None if ev.dprime is None else str(ev.dprime),
        }
    if isinstance(ev, ZeroRootEvidence):
        return {"kind": "zero-root", "dprime": str(ev.dprime)}
    raise TypeError(f"unknown evidence {ev!r}")  # pragma: no cover


def _verdict_json(v: Verdict) -> dict:
    return {
        "verdict": "irreducible" if v.irreducible else "reducible",
        "reason": v.reason.value,
        "evidence": _evidence_json(v.evidence),
        "tests": [_evidence_json(t) for t in v.tests],
    }


def _emit_json(report: dict) -> None:
    sys.stdout.write(json.dumps(report, indent=2) + "\n")


def _parse_input_poly(args, field: PrimeField) -> Poly:
    if getattr(args, "coeffs", None) is not None:
        return parse_coeff_array(args.coeffs, field)
    if getattr(args, "poly", None) is not None:
        return parse_poly(args.poly, field)
    raise PolyParseError("no polynomial given (use --poly or --coeffs)")


def _work_bound(args) -> Optional[int]:
    return None if args.work_bound == 0 else args.work_bound


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_test(args) -> int:
    field = PrimeField(args.p)
    b = _parse_input_poly(args, field)
    t0 = time.perf_counter()
    with count_mults() as criterion_work:
        verdict = decide_b_xd(b, args.d, work_bound=_work_bound(args))
    criterion_ms = (time.perf_counter() - t0) * 1000
    criterion_mults = criterion_work()

    report = {
        "p": str(args.p),
        "input": render_poly(b),
        "d": str(args.d),
    }
    report.update(_verdict_json(verdict))
    report["work"] = {"criterion_mults": str(criterion_mults)}

    oracle_line = ""
    agrees = True
    if args.oracle:
        composed = compose_power(b, args.d)
        t1 = time.perf_counter()
        with count_mults() as oracle_work:
            oracle = rabin_test(composed, work_bound=_work_bound(args))
        oracle_ms = (time.perf_counter() - t1) * 1000
        agrees = oracle.irreducible == verdict.irreducible
        report["oracle"] = {
            "verdict": "irreducible" if oracle.irreducible else "reducible",
            "agrees": agrees,
            "oracle_mults": str(oracle_work()),
        }
        oracle_line = (
            f"oracle: {'agrees' if agrees else 'DISAGREES'} "
            f"({report['oracle']['verdict']}), {report['oracle']['oracle_mults']} mults, "
            f"{oracle_ms:.2f} ms"
        )

    if args.json:
        _emit_json(report)
    else:
        word = "irreducible" if verdict.irreducible else "reducible"
        print(f"{word}: b(x^{args.d}) for b = {report['input']} over GF({args.p})")
        print(f"reason: {verdict.reason.value}")
        print(f"criterion work: {criterion_mults} mults, {criterion_ms:.2f} ms")
        if oracle_line:
            print(oracle_line)
    if not agrees:
        print("error: criterion and oracle disagree", file=sys.stderr)
        return 2
    return 0 if verdict.irreducible else 1


def _auto_start(field: PrimeField, candidate_bound: int) -> Poly:
    """First degree-2 monic irreducible (by index) admitting a certified step."""
    p = field.p
    for idx in range(p * p):
        cand = Poly.monic_from_index(field, 2, idx)
        if not rabin_test(cand).irreducible:
            continue
        for r in primes_up_to(candidate_bound):
            if pow(p, 2, r) != 1:
                continue
            if decide_b_xd(cand, r, trusted=True).irreducible:
                return cand
    raise NoViableStepError(
        f"no degree-2 start over GF({p}) admits a certified step", degree=2
    )


def cmd_generate(args) -> int:
    field = PrimeField(args.p)
    if args.start is not None:
        start = parse_poly(args.start, field)
    else:
        start = _auto_start(field, args.candidate_bound)

    if args.schedule is not None and args.target_degree is not None:
        raise CapelliError("give either --schedule or --target-degree, not both")
    kwargs = dict(
        candidate_bound=args.candidate_bound,
        paranoid=args.paranoid,
        work_bound=_work_bound(args),
        paranoid_work_bound=None,
    )
    t0 = time.perf_counter()
    with count_mults() as work:
        if args.schedule is not None:
            schedule = [int(x) for x in args.schedule.split(",") if x]
            cert = grow_tower(start, schedule, **kwargs)
        else:
            cert = grow_tower(start, target_degree=args.target_degree, **kwargs)
    elapsed_ms = (time.perf_counter() - t0) * 1000
    final = cert.final_polynomial()

    cert_dict = cert.to_json_dict()
    if args.cert_out is not None:
        with open(args.cert_out, "w", encoding="utf-8") as fh:
            json.dump(cert_dict, fh, indent=2)
            fh.write("\n")

    report = {
        "p": str(args.p),
        "input": render_poly(start),
        "schedule": args.schedule,
        "target_degree": None if args.target_degree is None else str(args.target_degree),
        "final": {
            "poly": render_poly(final),
            "degree": str(final.degree),
            "terms": str(final.term_count()),
        },
        "work": {"criterion_mults": str(work())},
        "certificate": cert_dict,
    }
    if args.json:
        _emit_json(report)
    else:
        print(f"final: {report['final']['poly']}")
        print(
            f"degree {final.degree}, {report['final']['terms']} terms, "
            f"{len(cert.steps)} steps, {elapsed_ms:.1f} ms"
        )
        print("steps: " + ", ".join(f"d={s.d}" for s in cert.steps))
        if args.cert_out is not None:
            print(f"certificate written to {args.cert_out}")
    return 0


def _census_report(args, convention: Convention) -> dict:
    census = exhaustive_census(
        args.p,
        args.k,
        args.d,
        convention,
        seed=args.seed,
        bound=args.census_bound,
    )
    return {
        "irreducible_count": str(census.irreducible_count),
        "total": str(census.total),
        "fraction": _fraction_json(census.fraction),
    }


def cmd_prob(args) -> int:
    modes = [m for m in ("exact", "bound", "census") if getattr(args, m)]
    if args.sample is not None:
        modes.append("sample")
    if len(modes) != 1:
        raise CapelliError("choose exactly one of --exact, --bound, --census, --sample N")
    mode = modes[0]
    if args.include_zero and mode in ("bound", "sample"):
        # the bound is convention-free and sampling draws from the units
        raise CapelliError(f"--include-zero does not combine with --{mode}")
    convention = Convention.INCLUDE_ZERO if args.include_zero else Convention.UNITS_ONLY
    if mode != "bound" and (args.p is None or args.k is None):
        raise CapelliError(f"--{mode} requires -p and -k")

    report = {
        "p": None if args.p is None else str(args.p),
        "k": None if args.k is None else str(args.k),
        "d": str(args.d),
        "mode": mode,
        "convention": convention.value,
    }
    human: list[str] = []
    if mode == "exact":
        value = exact_probability(args.p, args.k, args.d, convention)
        report["value"] = _fraction_json(value)
        human.append(
            f"exact probability: {value} = {float(value):.6f} ({convention.value})"
        )
    elif mode == "bound":
        value = union_lower_bound(args.d)
        report["value"] = _fraction_json(value)
        human.append(f"union lower bound: {value} = {float(value):.6f}")
    elif mode == "census":
        counts = _census_report(args, convention)
        report["census"] = counts
        human.append(
            f"census: {counts['irreducible_count']}/{counts['total']} irreducible "
            f"= {counts['fraction']['decimal']} (q={args.p**args.k}, {convention.value})"
        )
    else:
        mc = monte_carlo_estimate(args.p, args.k, args.d, args.sample, args.seed)
        report["sample"] = {
            "trials": str(mc.trials),
            "successes": str(mc.successes),
            "estimate": _fraction_json(mc.estimate),
            "stderr": f"{mc.stderr:.6f}",
            "seed": str(args.seed),
            "modulus": None if mc.modulus is None else render_poly(mc.modulus),
        }
        human.append(
            f"estimate: {float(mc.estimate):.4f} +/- {mc.stderr:.4f} "
            f"(successes {mc.successes}/{mc.trials}, seed {args.seed})"
        )
    if args.json:
        _emit_json(report)
    else:
        for line in human:
            print(line)
    return 0


def cmd_bench(args) -> int:
    field = PrimeField(args.p)
    b = parse_poly(args.start, field)
    base_check = rabin_test(b, work_bound=_work_bound(args))
    if not base_check.irreducible:
        raise ReducibleInputError(f"start polynomial is reducible over GF({args.p})")
    schedule = [int(x) for x in args.schedule.split(",") if x]
    if not schedule:
        raise CapelliError("empty schedule")

    rows = []
    rejected = False
    for i, d in enumerate(schedule):
        t0 = time.perf_counter()
        with count_mults() as criterion_work:
            verdict = decide_b_xd(b, d, trusted=True)
        criterion_ms = (time.perf_counter() - t0) * 1000
        criterion_mults = criterion_work()

        composed = compose_power(b, d)
        t1 = time.perf_counter()
        with count_mults() as oracle_work:
            oracle = rabin_test(composed, work_bound=_work_bound(args))
        oracle_ms = (time.perf_counter() - t1) * 1000
        oracle_mults = oracle_work()

        if d == 1 or criterion_mults == 0:
            ratio = 1.0
        else:
            ratio = oracle_mults / criterion_mults
        rows.append(
            {
                "step": str(i),
                "d": str(d),
                "degree": str(composed.degree),
                "verdict": "irreducible" if verdict.irreducible else "reducible",
                "criterion_mults": str(criterion_mults),
                "oracle_mults": str(oracle_mults),
                "speedup": f"{ratio:.3f}",
                "_times": (criterion_ms, oracle_ms),
            }
        )
        if not verdict.irreducible:
            rejected = True
            break
        b = composed

    report = {
        "p": str(args.p),
        "input": args.start,
        "schedule": args.schedule,
        "complete": not rejected,
        "steps": [{k: v for k, v in row.items() if k != "_times"} for row in rows],
    }
    if args.json:
        _emit_json(report)
    else:
        header = f"{'step':>4} {'d':>3} {'degree':>7} {'verdict':>12} {'criterion':>12} {'oracle':>12} {'speedup':>9} {'crit ms':>9} {'orc ms':>9}"
        print(header)
        for row in rows:
            cms, oms = row["_times"]
            print(
                f"{row['step']:>4} {row['d']:>3} {row['degree']:>7} {row['verdict']:>12} "
                f"{row['criterion_mults']:>12} {row['oracle_mults']:>12} {row['speedup']:>9} "
                f"{cms:>9.2f} {oms:>9.2f}"
            )
        if rejected:
            print("stopped: step rejected")
    return 1 if rejected else 0


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="capelli",
        description="Irreducibility of b(x^d) by power-residue tests, sparse "
        "irreducible towers, and exact irreducibility probabilities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--json", action="store_true", help="machine-readable report")
        p.add_argument(
            "--work-bound",
            type=int,
            default=DEFAULT_WORK_BOUND,
            help="oracle work budget in multiplications; 0 = unlimited",
        )

    t = sub.add_parser("test", help="decide whether b(x^d) is irreducible")
    t.add_argument("-p", type=int, required=True, help="field characteristic (prime)")
    t.add_argument("--poly", help='b in text form, e.g. "x^2+x+1"')
    t.add_argument("--coeffs", help="b as a JSON array of little-endian coefficients")
    t.add_argument("-d", type=int, required=True, help="composition power")
    t.add_argument("--oracle", action="store_true", help="also run the Rabin oracle on b(x^d)")
    add_common(t)
    t.set_defaults(func=cmd_test)

    g = sub.add_parser("generate", help="grow a certified sparse irreducible tower")
    g.add_argument("-p", type=int, required=True)
    g.add_argument("--target-degree", type=int, help="grow until the degree reaches this")
    g.add_argument("--schedule", help="comma-separated step sizes, e.g. 3,3")
    g.add_argument("--start", help="starting polynomial (default: first viable degree-2)")
    g.add_argument("--paranoid", action="store_true", help="re-run the oracle at every step")
    g.add_argument("--cert-out", help="write the tower certificate to this JSON file")
    g.add_argument(
        "--candidate-bound",
        type=int,
        default=DEFAULT_CANDIDATE_BOUND,
        help="largest prime step size the auto policy will try",
    )
    add_common(g)
    g.set_defaults(func=cmd_generate)

    pr = sub.add_parser("prob", help="probability that x^d - alpha is irreducible")
    pr.add_argument("-p", type=int)
    pr.add_argument("-k", type=int)
    pr.add_argument("-d", type=int, required=True)
    pr.add_argument("--exact", action="store_true", help="closed-form exact probability")
    pr.add_argument("--bound", action="store_true", help="union lower bound (needs only -d)")
    pr.add_argument("--census", action="store_true", help="exhaustive count over the field")
    pr.add_argument("--sample", type=int, metavar="N", help="Monte Carlo with N trials")
    pr.add_argument("--seed", type=int, default=0, help="seed for all randomness")
    pr.add_argument("--include-zero", action="store_true", help="draw alpha from the whole field")
    pr.add_argument(
        "--census-bound",
        type=int,
        default=DEFAULT_ENUMERATION_BOUND,
        help="largest field order the census will enumerate",
    )
    add_common(pr)
    pr.set_defaults(func=cmd_prob)

    b = sub.add_parser("bench", help="criterion vs oracle work along a tower")
    b.add_argument("-p", type=int, required=True)
    b.add_argument("--start", required=True)
    b.add_argument("--schedule", required=True)
    add_common(b)
    b.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TowerStepRejectedError as exc:
        report = {
            "error": "step-rejected",
            "step": str(exc.step_index),
            "d": str(exc.d),
        }
        if exc.verdict is not None:
            report.update(_verdict_json(exc.verdict))
        if getattr(args, "json", False):
            _emit_json(report)
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 1
    except NoViableStepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ReducibleInputError as exc:
        print(f"error: reducible input polynomial: {exc}", file=sys.stderr)
        return 2
    except (CapelliError, ValueError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:  # console-script entry point
    sys.exit(main())


if __name__ == "__main__":
    run()
