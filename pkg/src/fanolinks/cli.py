"""Command-line front end.

Subcommands:

    wps-info   weights/degrees summary
    replicate  run the whole verification pipeline on a triplet
    qsmooth    stratum-by-stratum quasismoothness of a weighted variety

Exit codes: 0 success, 1 a check failed, 2 bad input, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

from . import __version__
from .exclusion import (check_isolation, curve_exclusion_verdict, gamma_chain, random_point,
                        special_curve_conditions)
from .fano_family import (DEFAULT_PRIMES, ConditionReport, SamplingError, Triplet, build_X1, build_X2,
                          build_Xprime, detect_cAx2_via_sextic, find_symmetry_heuristic, load_triplet,
                          member_qsm_outside, monomial_family_ci, monomial_family_prime, sample_verified,
                          sampling_primes, verify_condition)
from .groebner import DEFAULT_BUDGET
from .links import flop_vs_divisorial_test, verify_link_suite
from .polycore import Field, ParseError, WeightedRing
from .wps import (NOT_DETERMINED, MonomialSet, VarietySpec, coordinate_point_inventory,
                  coordinate_point_quotient_type, degree_and_index, general_member_report, is_terminal_quotient, is_well_formed)

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3

SCHEMA_PATH = Path(__file__).with_name("report.schema.json")

DISCREPANCIES = [
    "isolation bound: sets are accepted when l <= 4/(A^3), i.e. 6 on X' and 8 on X1, X2; "
    "the product 4*(A^3) would give 8/3 and 2 and reject every isolating set",
    "singularity type at the s0- and s1-points of X1, X2 is computed as 1/4(1,1,3); "
    "the label 1/4(1,1,4) is not an isolated cyclic quotient type",
    "germ identification used for the cAx/2 points: (X2, y-point) ~ (X', y0-point) via a6, "
    "(X1, y-point) ~ (X', y1-point) via b6",
    "isolating sets on X' use xi1*x0 - xi0*x1 and the cubic generator xi^3*z - zeta*x^3",
    "symmetry isomorphism X1 -> X2 scales y by gamma/alpha and s0, s1 by alpha*beta/gamma",
    "a proportional pair b6 = lambda*a6 always admits the witness (identity, 1/lambda, lambda, 1)",
    "the contradiction in the curve chain is read as L^2 < 0; the grid also certifies L^2 < -1/2",
    "quasismoothness of X1, X2 is required outside the y-point (the cAx/2 point)",
]


class InputError(Exception):
    pass


def _frac(x) -> str:
    return str(Fraction(x))


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()


# ---------------------------------------------------------------------------
# wps-info
# ---------------------------------------------------------------------------


def wps_info(weights: Sequence[int], degrees: Sequence[int]) -> dict:
    if not weights or any(w < 1 for w in weights) or any(d < 1 for d in degrees):
        raise InputError("weights and degrees must be positive integers")
    out = {
        "weights": list(weights),
        "degrees": list(degrees),
        "well_formed": is_well_formed(weights),
        "A3": None,
        "fano_index": sum(weights) - sum(degrees),
        "coordinate_points": coordinate_point_inventory(weights, degrees),
    }
    if len(weights) - len(degrees) == 4:
        a3, idx = degree_and_index(weights, degrees)
        out["A3"] = _frac(a3)
        out["fano_index"] = idx
    return out


def _print_wps_info(info: dict, out) -> None:
    print(f"weights {info['weights']}  degrees {info['degrees']}", file=out)
    print(f"well-formed: {info['well_formed']}", file=out)
    print(f"A^3: {info['A3'] if info['A3'] is not None else 'n/a (not a threefold)'}", file=out)
    print(f"Fano index: {info['fano_index']}", file=out)
    for p in info["coordinate_points"]:
        where = "on the general member" if p["on_general_member"] else "avoided"
        print(f"  point {p['index']} (weight {p['weight']}): {where}", file=out)


# ---------------------------------------------------------------------------
# replicate
# ---------------------------------------------------------------------------


def _section_singularities(t: Triplet) -> dict:
    # which sextic governs each cAx/2 point
    governing = {("X'", "y0"): "a", ("X'", "y1"): "b", ("X1", "y"): "b", ("X2", "y"): "a"}
    sextic = {}
    for w in ("a", "b"):
        try:
            sextic[w] = detect_cAx2_via_sextic(t, w)
        except ValueError:
            sextic[w] = None
    rows = []
    ok = True
    for V in (build_Xprime(t), build_X1(t), build_X2(t)):
        for i, (name, w) in enumerate(zip(V.ring.names, V.ring.weights)):
            if w == 1 or not V.contains(V.coordinate_point(i)):
                continue
            q = coordinate_point_quotient_type(V, i)
            if q == NOT_DETERMINED:
                cert = sextic.get(governing.get((V.name, name), ""), None)
                rows.append({"variety": V.name, "point": name, "type": NOT_DETERMINED,
                             "terminal": None, "cAx2_sextic_certified": cert})
                ok = ok and bool(cert)
            else:
                term = is_terminal_quotient(q)
                rows.append({"variety": V.name, "point": name, "type": str(q), "terminal": term,
                             "cAx2_sextic_certified": None})
                ok = ok and term
    return {"verdict": "verified" if ok else "failed", "points": rows}


def _section_exclusion(t: Triplet, seed: int, points: int, prime: int) -> dict:
    rng = random.Random(f"points:{seed}")
    checks = []
    for which in ("prime", "1", "2"):
        for kind in ("torus", "axis"):
            for _ in range(points):
                try:
                    V, pt = random_point(t, which, rng, kind, prime=prime)
                    checks.append(check_isolation(V, pt).to_dict())
                except RuntimeError as exc:
                    checks.append({"variety": which, "passed": False, "note": str(exc)})
    Xp, X1 = build_Xprime(t), build_X1(t)
    curves = [
        {"variety": "X'", "degree": "2/3", "verdict": curve_exclusion_verdict(Xp, Fraction(2, 3), False)},
        {"variety": "X'", "degree": "1/2", "verdict": curve_exclusion_verdict(Xp, Fraction(1, 2), False)},
        {"variety": "X1", "degree": "1/2", "verdict": curve_exclusion_verdict(X1, Fraction(1, 2), False)},
    ]
    grid = [Fraction(1) + Fraction(k, 8) for k in range(1, 25)]
    chain = [gamma_chain(g) for g in grid]
    chain_ok = all(c.below_minus_half for c in chain)
    try:
        special = special_curve_conditions(t).to_dict()
    except ValueError as exc:
        special = {"error": str(exc)}
    special_ok = special.get("coefficients_not_x1_divisible") is not False
    ok = all(c.get("passed") for c in checks) and chain_ok and special_ok
    return {
        "verdict": "verified" if ok else "failed",
        "isolation": checks,
        "curves": curves,
        "gamma_chain": {"grid": "gamma in (1, 4], step 1/8, Gamma^2 = -3/2",
                        "all_below_minus_half": chain_ok,
                        "max_L2": str(max(c.L2 for c in chain))},
        "special_curve": special,
    }


def replicate(t: Triplet, *, seed: int = 0, primes: Optional[Sequence[int]] = None, exact: bool = False,
              budget: int = DEFAULT_BUDGET, jobs: int = 1, points: int = 2, source: Optional[dict] = None,
              attempts: Optional[int] = None, condition: Optional[ConditionReport] = None) -> dict:
    """Full report for one triplet; ``condition`` reuses a report computed with the same settings."""
    fld = t.field
    primes = tuple(primes) if primes else DEFAULT_PRIMES
    inputs = {"triplet": t.to_dict(), "primes": list(primes) if not (exact or fld.characteristic) else [],
              "exact": exact, "budget": budget, "points": points, "source": source or {"kind": "file"}}
    sections = {}
    sections["wellformed"] = {
        "verdict": "verified" if is_well_formed((1, 1, 2, 2, 3)) and is_well_formed((1, 1, 2, 3, 4, 4))
        else "failed",
        "X'": is_well_formed((1, 1, 2, 2, 3)), "X1": is_well_formed((1, 1, 2, 3, 4, 4)),
    }
    a3p, ip = degree_and_index((1, 1, 2, 2, 3), (8,))
    a3i, ii = degree_and_index((1, 1, 2, 3, 4, 4), (6, 8))
    sections["degrees"] = {
        "verdict": "verified" if (a3p, ip, a3i, ii) == (Fraction(2, 3), 1, Fraction(1, 2), 1) else "failed",
        "X'": {"A3": _frac(a3p), "index": ip}, "X1": {"A3": _frac(a3i), "index": ii},
    }
    gm_prime = general_member_report(monomial_family_prime())
    gm_ci = general_member_report(monomial_family_ci())
    fails_p = [list(gm_prime.stratum_names(I)) for I in gm_prime.failed]
    fails_c = [list(gm_ci.stratum_names(I)) for I in gm_ci.failed]
    sections["general_member"] = {
        "verdict": "verified" if fails_p == [["y0"], ["y1"]] and fails_c == [["y"]] else "failed",
        "X'": {"passed": len(gm_prime.passed), "failed": fails_p},
        "X1": {"passed": len(gm_ci.passed), "failed": fails_c},
    }
    cond = condition or verify_condition(t, primes=primes, exact=exact, budget=budget, jobs=jobs)
    cdict = cond.to_dict()
    sections["condition"] = {"verdict": cond.verdict.value, **cdict}
    if cond.overall:
        sections["singularities"] = _section_singularities(t)
        witness = find_symmetry_heuristic(t)
        sections["symmetry"] = {
            "verdict": "verified",
            "witness": witness.to_dict() if witness else None,
            "status": "witness verified" if witness else "no witness found in search family",
            "flop_vs_divisorial": flop_vs_divisorial_test(t),
        }
        links = verify_link_suite(t, witness=witness, budget=budget)
        sections["links"] = links.to_dict()
        sections["exclusion"] = _section_exclusion(t, seed, points, primes[0])
    else:
        witness = None
        for name in ("singularities", "symmetry", "links", "exclusion"):
            sections[name] = {"verdict": "skipped", "reason": "condition not verified"}

    verdicts = {k: v["verdict"] for k, v in sections.items()}
    good = {"verified", "certified"}
    if all(v in good for v in verdicts.values()):
        status = "replicated"
    elif any(v == "failed" for v in verdicts.values()):
        status = "failed"
    else:
        status = "inconclusive"
    evidence = None
    if status == "replicated":
        evidence = "2 (witness verified)" if witness else "3 (no symmetry witness found)"
    summary = {"status": status, "section_verdicts": verdicts, "structure_count_evidence": evidence}
    if attempts is not None:
        summary["sampling_attempts"] = attempts
    return {
        "tool": "fanolinks",
        "version": __version__,
        "input": inputs,
        "input_digest": _digest(inputs),
        "sections": sections,
        "summary": summary,
        "discrepancies": DISCREPANCIES,
    }


def _print_report(rep: dict, out) -> None:
    print(f"fanolinks {rep['version']}  input {rep['input_digest'][:16]}", file=out)
    t = rep["input"]["triplet"]
    print(f"field {t['field']}", file=out)
    for k in ("a6", "b6", "c8"):
        print(f"  {k} = {t[k]}", file=out)
    for name, sec in rep["sections"].items():
        print(f"[{sec['verdict']}] {name}", file=out)
        if name == "condition" and "item1" in sec:
            for i in range(1, 5):
                item = sec[f"item{i}"]
                print(f"    item{i}: {item['verdict']} - {item['evidence']}", file=out)
        elif name == "general_member":
            for v in ("X'", "X1"):
                print(f"    {v}: {sec[v]['passed']} strata pass, failing {sec[v]['failed']}", file=out)
        elif name == "singularities" and "points" in sec:
            for p in sec["points"]:
                extra = (f"terminal {p['terminal']}" if p["terminal"] is not None
                         else f"sextic certified {p['cAx2_sextic_certified']}")
                print(f"    {p['variety']} {p['point']}-point: {p['type']} ({extra})", file=out)
        elif name == "symmetry" and "status" in sec:
            print(f"    {sec['status']}; flop/divisorial test: {sec['flop_vs_divisorial']}", file=out)
        elif name == "links" and "maps" in sec:
            for m in sec["maps"].values():
                print(f"    {m['name']}: {m['verdict']}", file=out)
            print(f"    involution identity: {sec['involution_identity']}", file=out)
        elif name == "exclusion" and "isolation" in sec:
            for c in sec["isolation"]:
                if "l" in c:
                    print(f"    isolation on {c['variety']} at {c['point']}: l={c['l']} bound={c['bound']} "
                          f"dim={c['cone_dimension']} passed={c['passed']}", file=out)
                else:
                    print(f"    isolation on {c['variety']}: passed={c['passed']} {c['note']}", file=out)
            for c in sec["curves"]:
                print(f"    curve of degree {c['degree']} on {c['variety']}: {c['verdict']}", file=out)
            g = sec["gamma_chain"]
            print(f"    gamma chain ({g['grid']}): all L^2 < -1/2 {g['all_below_minus_half']}", file=out)
            print(f"    special curve: {sec['special_curve']}", file=out)
        elif "reason" in sec:
            print(f"    {sec['reason']}", file=out)
    s = rep["summary"]
    print(f"summary: {s['status']}", file=out)
    if s["structure_count_evidence"]:
        print(f"structure-count evidence: {s['structure_count_evidence']}", file=out)
    print("notes:", file=out)
    for d in rep["discrepancies"]:
        print(f"  - {d}", file=out)


def _exit_for(status: str) -> int:
    return {"replicated": EXIT_OK, "verified": EXIT_OK, "failed": EXIT_FAILED}.get(status, EXIT_INCONCLUSIVE)


# ---------------------------------------------------------------------------
# qsmooth
# ---------------------------------------------------------------------------

POINT_ALIASES = {
    ("x0", "x1", "y0", "y1", "z"): {"p'1": "y0", "p'2": "y1", "p'3": "z"},
    ("x0", "x1", "y", "z", "s0", "s1"): {"p1": "s0", "p2": "s1", "p3": "y"},
}


def load_variety(path: str) -> VarietySpec:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    try:
        ring = WeightedRing(tuple(data["variables"]), tuple(data["weights"]),
                            Field.from_descriptor(data.get("field", "QQ")))
        eqs = [ring.parse(e) for e in data["equations"]]
        eqs.sort(key=lambda e: e.is_homogeneous() if isinstance(e.is_homogeneous(), int) else 0)
        return VarietySpec(ring, tuple(eqs), data.get("name", ""))
    except KeyError as exc:
        raise InputError(f"variety file lacks field {exc}") from exc
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc


def qsmooth_general(V: VarietySpec) -> dict:
    sets = [MonomialSet.of(e) for e in V.equations]
    rep = general_member_report(sets)
    rows = []
    for I, v in rep.verdicts.items():
        rows.append({"stratum": list(rep.stratum_names(I)), "passed": v.passed, "rule": v.rule,
                     "witnesses": [list(m) for m in v.witnesses]})
    return {
        "mode": "general",
        "verdict": "verified" if not rep.failed else "failed",
        "passed": len(rep.passed),
        "failed": [list(rep.stratum_names(I)) for I in rep.failed],
        "linear_cone": list(rep.linear_cone),
        "strata": rows,
    }


def qsmooth_member(V: VarietySpec, allow: Sequence[str], *, primes, exact, budget, jobs) -> dict:
    aliases = POINT_ALIASES.get(V.ring.names, {})
    names = []
    for a in allow:
        a = aliases.get(a, a)
        if a not in V.ring.names:
            raise InputError(f"unknown coordinate point {a}")
        names.append(a)
    rep = member_qsm_outside(V, names, primes=primes, exact=exact, budget=budget, jobs=jobs)
    return {"mode": "member", "allowed": names, **rep.to_dict()}


def _print_qsmooth(res: dict, out) -> None:
    if res["mode"] == "general":
        for row in res["strata"]:
            tag = f"pass({row['rule']})" if row["passed"] else "fail"
            print(f"  {{{','.join(row['stratum'])}}}: {tag}", file=out)
        print(f"{res['passed']} pass / {len(res['failed'])} fail; linear cone {res['linear_cone']}", file=out)
    else:
        for row in res["strata"]:
            print(f"  {{{','.join(row['stratum'])}}}: {row['status']} {row['per_field']}", file=out)
        print(f"fields {res['fields']}", file=out)
    print(f"verdict: {res['verdict']}", file=out)


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fanolinks", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"fanolinks {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    w = sub.add_parser("wps-info", help="well-formedness, A^3, Fano index, coordinate points")
    w.add_argument("--weights", type=_int_list, required=True)
    w.add_argument("--degrees", type=_int_list, required=True)
    w.add_argument("--json", metavar="PATH")

    def common(sp):
        sp.add_argument("--exact", action="store_true", help="Groebner bases over QQ instead of mod primes")
        sp.add_argument("--primes", type=_int_list, help="comma-separated primes for modular checks")
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--json", metavar="PATH", help="write the JSON report ('-' for stdout)")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="S-pair budget per basis")

    r = sub.add_parser("replicate", help="verify a triplet end to end")
    r.add_argument("triplet", nargs="?", help="JSON file with field, a6, b6, c8")
    r.add_argument("--sample", type=int, metavar="SEED")
    r.add_argument("--symmetric", action="store_true")
    r.add_argument("--points", type=int, default=2, help="random points per isolation case")
    r.add_argument("--max-attempts", type=int, default=10)
    common(r)

    q = sub.add_parser("qsmooth", help="quasismoothness stratum table")
    q.add_argument("spec", help="JSON file with weights, variables, equations")
    mode = q.add_mutually_exclusive_group()
    mode.add_argument("--general", action="store_true", help="criterion for the general member (default)")
    mode.add_argument("--member", action="store_true", help="check this exact member")
    q.add_argument("--allow", default="", help="coordinate points allowed to be non-quasismooth")
    common(q)
    return p


def _emit_json(obj: dict, dest: Optional[str], out) -> None:
    if not dest:
        return
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if dest == "-":
        out.write(text)
    else:
        Path(dest).write_text(text)


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return _dispatch(args, out)
    except (InputError, ParseError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def _dispatch(args, out) -> int:
    text_out = sys.stderr if getattr(args, "json", None) == "-" else out
    if args.command == "wps-info":
        info = wps_info(args.weights, args.degrees)
        _print_wps_info(info, text_out)
        _emit_json(info, args.json, out)
        return EXIT_OK if info["well_formed"] else EXIT_FAILED

    if args.jobs < 1 or args.budget < 1:
        raise InputError("--jobs and --budget must be positive")
    if args.command == "replicate":
        kw = dict(exact=args.exact, budget=args.budget, jobs=args.jobs)
        if args.sample is not None:
            if args.triplet:
                raise InputError("give either a triplet file or --sample, not both")
            mode = "symmetric" if args.symmetric else "general"
            primes = args.primes or sampling_primes(args.sample)
            try:
                t, cond, attempts = sample_verified(args.sample, mode, primes=primes,
                                                 max_attempts=args.max_attempts, **kw)
            except SamplingError as exc:
                print(f"sampling failed: {exc}", file=sys.stderr)
                return EXIT_FAILED
            source = {"kind": "sample", "seed": args.sample, "mode": mode}
            rep = replicate(t, seed=args.sample, primes=primes, points=args.points, source=source,
                            attempts=attempts, condition=cond, **kw)
        else:
            if not args.triplet:
                raise InputError("a triplet file or --sample is required")
            try:
                t = load_triplet(args.triplet)
            except OSError as exc:
                raise InputError(f"cannot read {args.triplet}: {exc.strerror}") from exc
            except json.JSONDecodeError as exc:
                raise InputError(f"{args.triplet} is not valid JSON: {exc}") from exc
            except ValueError as exc:
                raise InputError(str(exc)) from exc
            rep = replicate(t, primes=args.primes, points=args.points, **kw)
        _print_report(rep, text_out)
        _emit_json(rep, args.json, out)
        return _exit_for(rep["summary"]["status"])

    V = load_variety(args.spec)
    if args.member:
        allow = [a.strip() for a in args.allow.split(",") if a.strip()]
        res = qsmooth_member(V, allow, primes=args.primes, exact=args.exact, budget=args.budget, jobs=args.jobs)
    else:
        res = qsmooth_general(V)
    _print_qsmooth(res, text_out)
    _emit_json(res, args.json, out)
    return _exit_for(res["verdict"])


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
