"""JSON round-trips for instances, verdicts and constellations.

Scalars are written as ``{"re": str, "im": str}``: ``"a/b"`` rationals in
exact mode and shortest round-trip decimals (at most 17 significant digits)
in float mode, so both modes survive a round-trip unchanged. Float strings
always contain "." or "e", which keeps the two kinds apart when reading.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .divisor import Divisor, StabilityWitness
from .errors import InvalidInput, RealfnError
from .geometry import Involution, Mobius
from .maps import RationalMap
from .monodromy import Constellation
from .numkernel import DEFAULT_TOL, BinaryForm, GaussianRational, Mode, SpherePoint
from .reality import Verdict, VerdictKind


def _fmt_real(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    # shortest repr that round-trips (at most 17 digits); always shows "." or "e"
    return repr(float(x))


def scalar_to_json(x) -> dict:
    if isinstance(x, GaussianRational):
        return {"re": _fmt_real(x.re), "im": _fmt_real(x.im)}
    x = complex(x)
    return {"re": _fmt_real(x.real), "im": _fmt_real(x.imag)}


def _parse_real(s, mode: Mode):
    if not isinstance(s, str):
        raise InvalidInput(f"expected a string, got {type(s).__name__}")
    try:
        if mode is Mode.EXACT:
            return Fraction(s.strip())
        if "/" in s:
            return float(Fraction(s.strip()))
        return float(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"cannot parse {s!r} as a number") from exc


def scalar_from_json(obj, mode: Mode):
    if not isinstance(obj, dict) or set(obj) - {"re", "im"} or "re" not in obj:
        raise InvalidInput(f"expected {{'re': ..., 'im': ...}}, got {obj!r}")
    re = _parse_real(obj["re"], mode)
    im = _parse_real(obj.get("im", "0"), mode)
    if mode is Mode.EXACT:
        return GaussianRational(re, im)
    return complex(re, im)


def point_to_json(p: SpherePoint) -> dict:
    return {"X": scalar_to_json(p.X), "Z": scalar_to_json(p.Z)}


def point_from_json(obj, mode: Mode) -> SpherePoint:
    try:
        return SpherePoint(scalar_from_json(obj["X"], mode), scalar_from_json(obj["Z"], mode))
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed point {obj!r}") from exc


# ---------------------------------------------------------------------------
# instances
# ---------------------------------------------------------------------------

@dataclass
class Instance:
    f: RationalMap
    tau: Involution
    mode: Mode
    tol: float = DEFAULT_TOL
    seed: int = 0
    extra: dict = field(default_factory=dict)


def _coeff_array(obj, key: str, mode: Mode) -> list:
    arr = obj.get(key)
    if not isinstance(arr, list) or not arr:
        raise InvalidInput(f"{key!r} must be a nonempty array")
    out = []
    for i, c in enumerate(arr):
        try:
            out.append(scalar_from_json(c, mode))
        except InvalidInput as exc:
            raise InvalidInput(f"{key}[{i}]: {exc}") from exc
    return out


def _enum(cls, value, what):
    try:
        return cls(value)
    except ValueError:
        choices = ", ".join(repr(m.value) for m in cls)
        raise InvalidInput(f"{what} must be one of {choices}, got {value!r}") from None


def instance_from_json(obj: Any, *, tau=None, mode=None, tol=None, seed=None) -> Instance:
    """Parse an instance object; keyword arguments override the file's fields."""
    if not isinstance(obj, dict):
        raise InvalidInput("instance must be a JSON object")
    mode = _enum(Mode, mode if mode is not None else obj.get("mode", "float"), "mode")
    tau = _enum(Involution, tau if tau is not None else obj.get("tau"), "tau")
    tol = float(tol if tol is not None else obj.get("tol", DEFAULT_TOL))
    if not tol > 0:
        raise InvalidInput("tol must be positive")
    seed = seed if seed is not None else obj.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
        raise InvalidInput("seed must be a nonnegative integer")
    num = _coeff_array(obj, "numerator", mode)
    den = _coeff_array(obj, "denominator", mode)
    n = max(len(num), len(den))
    zero = GaussianRational(0) if mode is Mode.EXACT else 0j
    num += [zero] * (n - len(num))
    den += [zero] * (n - len(den))
    f = RationalMap(BinaryForm(num, mode), BinaryForm(den, mode), tol=tol)
    known = {"numerator", "denominator", "tau", "mode", "tol", "seed"}
    return Instance(f, tau, mode, tol, seed, {k: v for k, v in obj.items() if k not in known})


def instance_to_json(inst: Instance) -> dict:
    out = {
        "numerator": [scalar_to_json(c) for c in inst.f.P.coeffs],
        "denominator": [scalar_to_json(c) for c in inst.f.Q.coeffs],
        "tau": inst.tau.value,
        "mode": inst.mode.value,
        "tol": inst.tol,
        "seed": inst.seed,
    }
    out.update(inst.extra)
    return out


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------

def mobius_to_json(g: Mobius) -> list:
    return [[scalar_to_json(g.a), scalar_to_json(g.b)],
            [scalar_to_json(g.c), scalar_to_json(g.d)]]


def mobius_from_json(obj, mode: Mode) -> Mobius:
    try:
        return Mobius.from_matrix([[scalar_from_json(x, mode) for x in row] for row in obj])
    except (TypeError, IndexError) as exc:
        raise InvalidInput(f"malformed Möbius matrix {obj!r}") from exc


def verdict_to_json(v: Verdict) -> dict:
    out: dict = {"verdict": v.kind.value}
    if v.g is not None:
        out["g"] = mobius_to_json(v.g)
    out["residual"] = v.residual
    out["sigma_divisor"] = [{"point": point_to_json(p), "multiplicity": k} for p, k in v.sigma]
    w = v.witness
    if w is None:
        out["stability"] = None
    elif w.stable:
        out["stability"] = {"kind": "matching",
                            "pairs": [[i + 1, j + 1] for i, j in w.matching]}
    else:
        out["stability"] = {"kind": "failure", "index": w.failure + 1,
                            "point": point_to_json(v.sigma.support[w.failure])}
    out["lambda_sign"] = v.lambda_sign
    return out


def verdict_from_json(obj: dict) -> Verdict:
    try:
        kind = _enum(VerdictKind, obj["verdict"], "verdict")
        entries = obj["sigma_divisor"]
        g = mobius_from_json(obj["g"], _guess_mode(obj["g"])) if "g" in obj else None
        sigma = Divisor(tuple((point_from_json(e["point"], _guess_mode(e["point"])),
                               int(e["multiplicity"])) for e in entries))
        st = obj.get("stability")
        if st is None:
            witness = None
        elif st["kind"] == "matching":
            witness = StabilityWitness(matching=tuple((i - 1, j - 1) for i, j in st["pairs"]))
        else:
            witness = StabilityWitness(failure=int(st["index"]) - 1)
        return Verdict(kind, g=g, witness=witness, sigma=sigma,
                       residual=obj.get("residual"), lambda_sign=obj.get("lambda_sign"))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, RealfnError):
            raise
        raise InvalidInput(f"malformed verdict: {exc}") from exc


def _guess_mode(obj) -> Mode:
    """Exact iff every string in the object is an integer or a fraction."""
    strings = []

    def walk(o):
        if isinstance(o, dict):
            for v in o.values():
                walk(v)
        elif isinstance(o, list):
            for v in o:
                walk(v)
        elif isinstance(o, str):
            strings.append(o)
    walk(obj)

    def is_rational(s):
        return all(part.lstrip("-").isdigit() for part in s.split("/")) and s.count("/") <= 1
    return Mode.EXACT if strings and all(is_rational(s) for s in strings) else Mode.FLOAT


# ---------------------------------------------------------------------------
# constellations
# ---------------------------------------------------------------------------

def constellation_to_json(c: Constellation) -> dict:
    return {"degree": c.degree, "sigma": c.cycles()}


def constellation_from_json(obj: Any) -> Constellation:
    if not isinstance(obj, dict) or "degree" not in obj or "sigma" not in obj:
        raise InvalidInput("constellation needs 'degree' and 'sigma'")
    n = obj["degree"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise InvalidInput("degree must be an integer")
    sigma = obj["sigma"]
    if not isinstance(sigma, list) or not all(
            isinstance(s, list) and all(isinstance(cyc, list) and all(
                isinstance(x, int) and not isinstance(x, bool) for x in cyc) for cyc in s)
            for s in sigma):
        raise InvalidInput("sigma must be a list of permutations given as lists of cycles")
    return Constellation.from_cycles(n, sigma)


def dumps(obj) -> str:
    """Canonical JSON text (stable key order, trailing newline)."""
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"
