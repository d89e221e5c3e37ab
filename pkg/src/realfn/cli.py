"""Command-line front end.

Exit codes: 0 success, 1 self-check mismatch, 2 invalid input, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from .divisor import critical_values, sigma_divisor
from .errors import ConsistencyError, InvalidInput, ModeError, NumericalFailure
from .generate import scramble
from .geometry import Involution
from .monodromy import (BlockSystem, block_closure, genus, passport_stability,
                        quotient_constellation, validate)
from .numkernel import DEFAULT_TOL, Mode
from .reality import divisor_criterion, reality_test
from .serialize import (Instance, constellation_from_json, constellation_to_json,
                        dumps, instance_from_json, instance_to_json, mobius_to_json,
                        point_to_json, scalar_to_json, verdict_to_json)

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_NUMERICAL = 0, 1, 2, 3


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: invalid JSON ({exc})") from exc


def _emit(obj, path: str | None):
    text = dumps(obj)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_instance(args) -> Instance:
    return instance_from_json(_read_json(args.instance), tau=args.tau, mode=args.mode,
                              tol=args.tol, seed=args.seed)


def cmd_test(args) -> int:
    inst = _load_instance(args)
    v = reality_test(inst.f, inst.tau, inst.tol, inst.seed)
    _emit(verdict_to_json(v), args.json_out)
    return EXIT_OK


def cmd_divisor(args) -> int:
    inst = _load_instance(args)
    f = inst.f
    out = {"degree": f.degree}
    if f.degree >= 1:
        D = sigma_divisor(f, inst.tol, support=args.support)
        out["critical_values"] = [point_to_json(p) for p in critical_values(f, inst.tol)]
        out["sigma_divisor"] = [{"point": point_to_json(p), "multiplicity": k} for p, k in D]
        stable, _ = divisor_criterion(f, inst.tau, inst.tol)
        out["tau_stable"] = stable
    _emit(out, args.json_out)
    return EXIT_OK


def cmd_scramble(args) -> int:
    tau = Involution(args.tau or "conj")
    mode = Mode(args.mode or "float")
    s = scramble(args.seed, args.degree, tau, args.kind, mode, noise=args.noise)
    inst = Instance(s.f, tau, mode, args.tol if args.tol is not None else DEFAULT_TOL,
                    args.seed)
    obj = instance_to_json(inst)
    obj["ground_truth"] = {
        "class": {"perturbed": "not_equivalent"}.get(s.kind, s.kind),
        "h": mobius_to_json(s.h),
        "seed_map": {"numerator": [scalar_to_json(c) for c in s.seed_map.P.coeffs],
                     "denominator": [scalar_to_json(c) for c in s.seed_map.Q.coeffs]},
    }
    _emit(obj, args.json_out)
    return EXIT_OK


def _selfcheck_case(rng, tau: Involution, index: int, max_degree: int) -> tuple[str, int]:
    kinds = ["real", "perturbed"] + (["pseudoreal"] if tau is Involution.ANTIPODAL else [])
    kind = kinds[index % len(kinds)]
    d = int(rng.integers(1, max_degree + 1))
    if kind == "pseudoreal" and d % 2 == 0:
        d -= 1
    if kind == "real" and tau is Involution.ANTIPODAL and d % 2:
        d = d + 1 if d + 1 <= max_degree else d - 1
    if kind == "perturbed" and d < 2:
        kind = "real" if tau is Involution.CONJ else "pseudoreal"
    if kind == "real" and d == 0:
        kind, d = "pseudoreal", 1
    return kind, d


def run_selfcheck(count: int, max_degree: int, seed: int = 0, mode: Mode = Mode.FLOAT,
                  tol: float = DEFAULT_TOL, noise: float = 1e-3) -> dict:
    """Check criterion and construction agree on generated instances of both kinds."""
    if count < 1 or max_degree < 1:
        raise InvalidInput("count and max_degree must be at least 1")
    report = {"count": count, "max_degree": max_degree, "seed": seed, "mode": mode.value,
              "results": {}, "max_residual": 0.0}
    for t, tau in enumerate(Involution):
        res = {"agree": 0, "mismatch": 0, "numerical_failure": 0, "class_mismatch": 0,
               "failures": []}
        for i in range(count):
            rng = np.random.default_rng([seed, t, i])
            kind, d = _selfcheck_case(rng, tau, i, max_degree)
            s = scramble(rng, d, tau, kind, mode, noise=noise)
            expected = {"perturbed": "not_equivalent"}.get(kind, kind)
            try:
                stable, _ = divisor_criterion(s.f, tau, tol)
                v = reality_test(s.f, tau, tol, seed)
            except NumericalFailure as exc:
                key = "mismatch" if isinstance(exc, ConsistencyError) else "numerical_failure"
                res[key] += 1
                res["failures"].append({"index": i, "class": kind, "degree": d, "error": str(exc)})
                continue
            if stable != v.equivalent:
                res["mismatch"] += 1
                res["failures"].append({"index": i, "class": kind, "degree": d,
                                        "error": "criterion and construction disagree"})
                continue
            res["agree"] += 1
            if v.kind.value != expected:
                res["class_mismatch"] += 1
                res["failures"].append({"index": i, "class": kind, "degree": d,
                                        "error": f"verdict {v.kind.value}, expected {expected}"})
            if v.residual is not None:
                report["max_residual"] = max(report["max_residual"], v.residual)
        report["results"][tau.value] = res
    report["passed"] = all(r["agree"] == count and r["class_mismatch"] == 0
                           for r in report["results"].values())
    return report


def cmd_selfcheck(args) -> int:
    t0 = time.perf_counter()
    report = run_selfcheck(args.count, args.max_degree, args.seed, Mode(args.mode or "float"),
                           args.tol if args.tol is not None else DEFAULT_TOL, args.noise)
    if args.json_out:
        _emit(report, args.json_out)
    for tau, r in report["results"].items():
        print(f"{tau}: {r['agree']}/{report['count']} agree, {r['mismatch']} mismatches, "
              f"{r['numerical_failure']} numerical failures, {r['class_mismatch']} wrong classes")
        for fail in r["failures"]:
            print(f"  instance {fail['index']} ({fail['class']}, degree {fail['degree']}): "
                  f"{fail['error']}")
    print(f"max residual {report['max_residual']:.3g}; {time.perf_counter() - t0:.1f} s")
    print("PASS" if report["passed"] else "FAIL")
    return EXIT_OK if report["passed"] else EXIT_MISMATCH


def _json_arg(text: str | None, what: str):
    if text is None:
        return None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"--{what}: invalid JSON ({exc})") from exc


def cmd_monodromy(args) -> int:
    c = constellation_from_json(_read_json(args.constellation))
    validate(c)
    out: dict = {"degree": c.degree, "valid": True}
    if args.action == "genus":
        out["genus"] = genus(c)
    elif args.action == "passport":
        out["passport"] = [list(t) for t in c.passport().types]
        pairing = _json_arg(args.pairing, "pairing")
        if pairing is not None:
            out["stable"] = passport_stability(c, pairing)
    elif args.action in ("blocks", "quotient"):
        blocks = _json_arg(args.blocks, "blocks")
        if blocks is not None:
            if not isinstance(blocks, list) or not all(isinstance(b, list) for b in blocks):
                raise InvalidInput("--blocks must be a list of lists")
            B = BlockSystem(tuple(sorted(tuple(sorted(b)) for b in blocks)))
        else:
            words = _json_arg(args.words, "words") or []
            if not isinstance(words, list) or not all(isinstance(w, list) for w in words):
                raise InvalidInput("--words must be a list of lists of signed generator indices")
            B = block_closure(c, args.basepoint, words)
        out["blocks"] = [list(b) for b in B.blocks]
        if args.action == "quotient":
            q = quotient_constellation(c, B)
            out["quotient"] = constellation_to_json(q)
            out["quotient_genus"] = genus(q)
    _emit(out, args.json_out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="realfn",
        description="Decide whether a rational function is equivalent to a real or "
                    "pseudoreal one.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, instance=True):
        if instance:
            p.add_argument("instance", help="instance JSON file, or - for stdin")
        p.add_argument("--tau", choices=[t.value for t in Involution], default=None)
        p.add_argument("--mode", choices=[m.value for m in Mode], default=None)
        p.add_argument("--tol", type=float, default=None,
                       help=f"numerical tolerance (default {DEFAULT_TOL:g})")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--json-out", default=None, help="write JSON here instead of stdout")

    p = sub.add_parser("test", help="classify an instance and print the verdict")
    common(p)
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("divisor", help="print the sigma divisor and critical values")
    common(p)
    p.add_argument("--support", choices=["preimage", "critical"], default="preimage")
    p.set_defaults(func=cmd_divisor)

    p = sub.add_parser("scramble", help="generate an instance with known class")
    common(p, instance=False)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--class", dest="kind", choices=["real", "pseudoreal", "perturbed"],
                   default="real")
    p.add_argument("--noise", type=float, default=1e-3)
    p.set_defaults(func=cmd_scramble)

    p = sub.add_parser("selfcheck", help="check criterion against construction in bulk")
    common(p, instance=False)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--noise", type=float, default=1e-3)
    p.set_defaults(func=cmd_selfcheck)

    p = sub.add_parser("monodromy", help="constellation utilities")
    p.add_argument("action", choices=["validate", "genus", "passport", "blocks", "quotient"])
    p.add_argument("constellation", help="constellation JSON file, or - for stdin")
    p.add_argument("--basepoint", type=int, default=1)
    p.add_argument("--words", default=None, help='JSON list of words, e.g. "[[1, 1]]"')
    p.add_argument("--blocks", default=None, help='JSON block list, e.g. "[[1, 3], [2, 4]]"')
    p.add_argument("--pairing", default=None, help='JSON branch pairing, e.g. "[2, 1, 3]"')
    p.add_argument("--json-out", default=None)
    p.set_defaults(func=cmd_monodromy)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", 0) is None and args.command in ("scramble", "selfcheck"):
        args.seed = 0
    try:
        return args.func(args)
    except (InvalidInput, ModeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
