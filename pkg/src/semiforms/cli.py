"""Command-line surface.

One JSON problem spec drives each run::

    semiforms delta --spec problem.json --out reports/

Verbs: ``delta`` (distributive constant), ``verify`` (finiteness
hypotheses), ``search`` (inequality solution classes), ``equation``
(exact equation solutions), ``audit`` (Weil-sum inequality audit),
``heights`` (norm/height table), ``stability`` (class counts along a
bound ladder).

Spec keys (rationals are integers or ``"p/q"`` strings; floats are
rejected so specs cannot drift):

=============  =====================================================
``num_vars``   number of variables (forms use ``x0..x{n-1}``)
``family``     list of form strings, e.g. ``["x0", "x0^2-2*x1^2"]``
``variety``    list of form strings cutting the variety (default: none,
               i.e. the full projective space)
``S``          list of finite primes (the archimedean place is always
               included), default ``[]``
``f``          the searched form (default: product of ``family``)
``c``          inequality constant, default ``1``
``lambda``     inequality exponent, default ``0``
``epsilon``    audit slack, required for ``audit``
``mode``       audit mode ``"linear"`` or ``"square"`` (default)
``bound``      height bound for ``search``/``equation``
``bounds``     increasing bound ladder for ``audit``/``stability``
``rhs``        equation right-hand side: rational or polynomial string
``tuple``      coordinates for ``heights``
``poly``       polynomial for ``heights``
=============  =====================================================

Exit codes: 0 success, 1 input error, 2 budget exhausted, 3 internal
error.  Reports embed the fully resolved spec under ``"spec"``; passing
a report file back via ``--spec`` reproduces the run byte for byte.
Run metadata (timing, backend) goes to the diagnostic stream only.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Tuple

from . import kernels, serialize
from .delta import distributive_constant
from .errors import BudgetExceededError, SpecError
from .groebner import Budget, Ideal, ProjectiveVariety
from .heights import (
    PlaceSet,
    log_exact,
    norm_at,
    poly_height_exact,
    poly_norm_at,
    proj_height_exact,
    s_height,
    tuple_norm_at,
)
from .poly import (
    HomogeneousPoly,
    PolyFamily,
    Polynomial,
    parse_poly,
    parse_polynomial,
)
from .search import (
    AuditMode,
    SearchParams,
    equation_search,
    growth_stability,
    hypothesis_verdict,
    search_solutions,
    subspace_audit,
)

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")

_ALLOWED_KEYS = {
    "delta": {"verb", "num_vars", "family", "variety"},
    "verify": {"verb", "num_vars", "family", "variety", "lambda"},
    "search": {"verb", "num_vars", "family", "f", "S", "c", "lambda", "bound"},
    "equation": {"verb", "num_vars", "family", "f", "rhs", "S", "bound"},
    "audit": {"verb", "num_vars", "family", "variety", "S", "epsilon", "mode", "bounds"},
    "stability": {"verb", "num_vars", "family", "f", "S", "c", "lambda", "bounds"},
    "heights": {"verb", "tuple", "poly", "num_vars", "S"},
}

_DEFAULT_MAX_POINTS = 1_000_000


# ------------------------------------------------------------ spec input


def load_spec(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError(f"cannot read spec file: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"spec file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SpecError("the spec must be a JSON object")
    if isinstance(data.get("spec"), dict):
        data = data["spec"]  # a previously emitted report: reuse its spec
    return data


def _check_keys(spec: dict, verb: str) -> None:
    allowed = _ALLOWED_KEYS[verb]
    unknown = sorted(set(spec) - allowed)
    if unknown:
        raise SpecError(
            f"unknown spec key(s) for '{verb}': {', '.join(unknown)} "
            f"(allowed: {', '.join(sorted(allowed))})"
        )
    declared = spec.get("verb")
    if declared is not None and declared != verb:
        raise SpecError(f"spec declares verb {declared!r} but {verb!r} was invoked")


def _rational(value, what: str) -> Fraction:
    if isinstance(value, bool):
        raise SpecError(f"{what} must be a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise SpecError(f"{what} must be exact; write it as a \"p/q\" string")
    if isinstance(value, str) and _RATIONAL_RE.match(value.strip()):
        return Fraction(value.strip())
    raise SpecError(f"{what} must be an integer or \"p/q\" string, got {value!r}")


def _num_vars(spec: dict) -> int:
    value = spec.get("num_vars")
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise SpecError("num_vars must be a positive integer")
    return value


def _poly_list(spec: dict, key: str, num_vars: int, *, required: bool) -> List[HomogeneousPoly]:
    value = spec.get(key)
    if value is None:
        if required:
            raise SpecError(f"the spec needs a '{key}' list of polynomial strings")
        return []
    if not isinstance(value, list) or not all(isinstance(t, str) for t in value):
        raise SpecError(f"'{key}' must be a list of polynomial strings")
    if required and not value:
        raise SpecError(f"'{key}' must not be empty")
    return [parse_poly(text, num_vars) for text in value]


def _family(spec: dict, num_vars: int) -> PolyFamily:
    return PolyFamily(_poly_list(spec, "family", num_vars, required=True))


def _variety(spec: dict, num_vars: int, budget: Optional[Budget]) -> ProjectiveVariety:
    generators = _poly_list(spec, "variety", num_vars, required=False)
    return ProjectiveVariety(Ideal(num_vars, generators), budget)


def _places(spec: dict) -> PlaceSet:
    value = spec.get("S", [])
    if not isinstance(value, list) or not all(
        isinstance(p, int) and not isinstance(p, bool) for p in value
    ):
        raise SpecError("'S' must be a list of primes (integers)")
    return PlaceSet(value)


def _searched_form(spec: dict, num_vars: int, family: Optional[PolyFamily]) -> HomogeneousPoly:
    text = spec.get("f")
    if text is not None:
        if not isinstance(text, str):
            raise SpecError("'f' must be a polynomial string")
        return parse_poly(text, num_vars)
    if family is None or not len(family):
        raise SpecError("the spec needs 'f' or a nonempty 'family' to multiply")
    return family.product()


def _optional_family(spec: dict, num_vars: int) -> Optional[PolyFamily]:
    if "family" in spec:
        return _family(spec, num_vars)
    return None


def _mode(spec: dict) -> AuditMode:
    value = spec.get("mode", "square")
    try:
        return AuditMode(value)
    except ValueError:
        raise SpecError("'mode' must be \"linear\" or \"square\"") from None


def _ladder(spec: dict) -> List[Fraction]:
    value = spec.get("bounds")
    if not isinstance(value, list) or not value:
        raise SpecError("the spec needs a nonempty 'bounds' ladder")
    return [_rational(b, "bounds entry") for b in value]


def _single_bound(spec: dict) -> Fraction:
    if "bound" not in spec:
        raise SpecError("the spec needs a 'bound'")
    return _rational(spec["bound"], "bound")


def _coords(spec: dict) -> List[Fraction]:
    value = spec.get("tuple")
    if not isinstance(value, list) or not value:
        raise SpecError("the spec needs a nonempty 'tuple' of rationals")
    return [_rational(v, "tuple entry") for v in value]


# -------------------------------------------------------- resolved specs


def _strs(polys) -> List[str]:
    return [str(p) for p in polys]


# ----------------------------------------------------------------- verbs


def _cmd_delta(spec: dict, args) -> Tuple[dict, bytes]:
    num_vars = _num_vars(spec)
    family = _family(spec, num_vars)
    budget = _make_budget(args)
    variety = _variety(spec, num_vars, budget)
    report = distributive_constant(
        family, variety, budget=budget, workers=args.workers
    )
    resolved = {
        "verb": "delta",
        "num_vars": num_vars,
        "family": _strs(family),
        "variety": _strs(variety.ideal.generators),
    }
    return serialize.delta_payload(report, resolved), serialize.delta_csv(report)


def _cmd_verify(spec: dict, args) -> Tuple[dict, bytes]:
    num_vars = _num_vars(spec)
    family = _family(spec, num_vars)
    budget = _make_budget(args)
    variety = _variety(spec, num_vars, budget)
    lam = _rational(spec.get("lambda", 0), "lambda")
    verdict = hypothesis_verdict(
        family, variety, lam, budget=budget, workers=args.workers
    )
    resolved = {
        "verb": "verify",
        "num_vars": num_vars,
        "family": _strs(family),
        "variety": _strs(variety.ideal.generators),
        "lambda": serialize.frac_str(lam),
    }
    return serialize.verdict_payload(verdict, resolved), serialize.verdict_csv(verdict)


def _cmd_search(spec: dict, args) -> Tuple[dict, bytes]:
    num_vars = _num_vars(spec)
    family = _optional_family(spec, num_vars)
    form = _searched_form(spec, num_vars, family)
    s = _places(spec)
    params = SearchParams(
        s=s,
        c=_rational(spec.get("c", 1), "c"),
        lam=_rational(spec.get("lambda", 0), "lambda"),
        height_bound=_single_bound(spec),
    )
    classes = search_solutions(
        form, params, max_points=_max_points(args), backend=args.backend
    )
    resolved = {
        "verb": "search",
        "num_vars": num_vars,
        "f": str(form),
        "S": list(s.primes),
        "c": serialize.frac_str(params.c),
        "lambda": serialize.frac_str(params.lam),
        "bound": serialize.frac_str(params.height_bound),
    }
    if family is not None:
        resolved["family"] = _strs(family)
    return serialize.classes_payload(classes, resolved), serialize.classes_csv(classes)


def _cmd_equation(spec: dict, args) -> Tuple[dict, bytes]:
    num_vars = _num_vars(spec)
    family = _optional_family(spec, num_vars)
    form = _searched_form(spec, num_vars, family)
    s = _places(spec)
    rhs_raw = spec.get("rhs", 1)
    if isinstance(rhs_raw, str) and not _RATIONAL_RE.match(rhs_raw.strip()):
        rhs: Polynomial = parse_polynomial(rhs_raw, num_vars)
    else:
        rhs = Polynomial.constant(num_vars, _rational(rhs_raw, "rhs"))
    bound = _single_bound(spec)
    classes = equation_search(
        form, rhs, s, bound, max_points=_max_points(args), backend=args.backend
    )
    resolved = {
        "verb": "equation",
        "num_vars": num_vars,
        "f": str(form),
        "rhs": str(rhs),
        "S": list(s.primes),
        "bound": serialize.frac_str(bound),
    }
    if family is not None:
        resolved["family"] = _strs(family)
    return serialize.classes_payload(classes, resolved), serialize.classes_csv(classes)


def _cmd_audit(spec: dict, args) -> Tuple[dict, bytes]:
    num_vars = _num_vars(spec)
    family = _family(spec, num_vars)
    budget = _make_budget(args)
    variety = _variety(spec, num_vars, budget)
    s = _places(spec)
    if "epsilon" not in spec:
        raise SpecError("the audit needs an 'epsilon'")
    epsilon = _rational(spec["epsilon"], "epsilon")
    mode = _mode(spec)
    ladder = _ladder(spec)
    report = subspace_audit(
        family,
        variety,
        s,
        epsilon,
        mode,
        ladder,
        max_points=_max_points(args),
        backend=args.backend,
        budget=budget,
        workers=args.workers,
    )
    resolved = {
        "verb": "audit",
        "num_vars": num_vars,
        "family": _strs(family),
        "variety": _strs(variety.ideal.generators),
        "S": list(s.primes),
        "epsilon": serialize.frac_str(epsilon),
        "mode": mode.value,
        "bounds": [serialize.frac_str(b) for b in ladder],
    }
    return serialize.audit_payload(report, resolved), serialize.audit_csv(report)


def _cmd_stability(spec: dict, args) -> Tuple[dict, bytes]:
    num_vars = _num_vars(spec)
    family = _optional_family(spec, num_vars)
    form = _searched_form(spec, num_vars, family)
    s = _places(spec)
    ladder = _ladder(spec)
    params = SearchParams(
        s=s,
        c=_rational(spec.get("c", 1), "c"),
        lam=_rational(spec.get("lambda", 0), "lambda"),
        height_bound=ladder[-1],
    )
    table = growth_stability(
        form, params, ladder, max_points=_max_points(args), backend=args.backend
    )
    resolved = {
        "verb": "stability",
        "num_vars": num_vars,
        "f": str(form),
        "S": list(s.primes),
        "c": serialize.frac_str(params.c),
        "lambda": serialize.frac_str(params.lam),
        "bounds": [serialize.frac_str(b) for b in ladder],
    }
    if family is not None:
        resolved["family"] = _strs(family)
    return serialize.stability_payload(table, resolved), serialize.stability_csv(table)


def _cmd_heights(spec: dict, args) -> Tuple[dict, bytes]:
    if args.point is not None:
        text = args.point.strip().strip("()")
        spec = dict(spec)
        spec["tuple"] = [part.strip() for part in text.split(",") if part.strip()]
    if args.poly is not None:
        spec = dict(spec)
        spec["poly"] = args.poly
    if args.s_primes is not None:
        spec = dict(spec)
        spec["S"] = [int(p) for p in args.s_primes.split(",") if p.strip()]
    s = _places(spec)
    table: dict = {}
    resolved: dict = {"verb": "heights", "S": list(s.primes)}
    if "tuple" not in spec and "poly" not in spec:
        raise SpecError("heights needs a 'tuple' and/or a 'poly'")
    if "tuple" in spec:
        coords = _coords(spec)
        if not any(coords):
            raise SpecError("the tuple must have a nonzero coordinate")
        resolved["tuple"] = [serialize.frac_str(v) for v in coords]
        table["tuple_norms"] = {
            str(v): serialize.frac_str(tuple_norm_at(coords, v)) for v in s.places
        }
        table["height_s"] = serialize.frac_str(s_height(coords, s))
        height = proj_height_exact(coords)
        table["proj_height"] = serialize.frac_str(height)
        table["h_log"] = serialize.log_str(log_exact(Fraction(height)))
    if "poly" in spec:
        if not isinstance(spec["poly"], str):
            raise SpecError("'poly' must be a polynomial string")
        num_vars = spec.get("num_vars")
        if num_vars is None:
            num_vars = len(spec.get("tuple", [])) or None
        if num_vars is None:
            raise SpecError("heights needs 'num_vars' to parse 'poly'")
        if not isinstance(num_vars, int) or num_vars < 1:
            raise SpecError("num_vars must be a positive integer")
        poly = parse_polynomial(spec["poly"], num_vars)
        if poly.is_zero:
            raise SpecError("the zero polynomial has no height")
        resolved["poly"] = str(poly)
        resolved["num_vars"] = num_vars
        table["poly_norms"] = {
            str(v): serialize.frac_str(poly_norm_at(poly, v)) for v in s.places
        }
        height_q = poly_height_exact(poly)
        table["poly_height"] = serialize.frac_str(height_q)
        table["poly_h_log"] = serialize.log_str(log_exact(height_q))
    return serialize.heights_payload(table, resolved), serialize.heights_csv(table)


# ------------------------------------------------------------- plumbing


def _make_budget(args) -> Optional[Budget]:
    if args.budget is None:
        return None
    if args.budget < 1:
        raise SpecError("--budget must be positive")
    return Budget(max_steps=args.budget)


def _max_points(args) -> int:
    if args.budget is None:
        return _DEFAULT_MAX_POINTS
    if args.budget < 1:
        raise SpecError("--budget must be positive")
    return args.budget


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semiforms",
        description="Exact distributive constants, heights, and bounded searches "
        "for families of forms.",
    )
    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")

    def add(verb: str, helptext: str, needs_spec: bool = True):
        p = sub.add_parser(verb, help=helptext)
        p.add_argument("--spec", required=needs_spec, help="JSON problem spec file")
        p.add_argument("--out", help="directory for <verb>.json and <verb>.csv")
        p.add_argument("--workers", type=int, default=1, help="parallel workers")
        p.add_argument(
            "--budget",
            type=int,
            default=None,
            help="step budget (delta/verify) or result budget (searches/audit)",
        )
        p.add_argument(
            "--format", choices=("json", "csv"), default="json", help="stdout format"
        )
        p.add_argument(
            "--backend",
            choices=kernels.available_backends(),
            default=None,
            help="scan backend (default: fastest available)",
        )
        p.add_argument("--verbose", action="store_true", help="timing to stderr")
        return p

    add("delta", "distributive constant of a family on a variety")
    add("verify", "finiteness-hypothesis verdict")
    add("search", "bounded-height inequality search")
    add("equation", "bounded-box equation search")
    add("audit", "Weil-sum inequality audit along a bound ladder")
    add("stability", "solution-class counts along a bound ladder")
    ph = add("heights", "norm and height table for a tuple or polynomial", needs_spec=False)
    ph.add_argument("point", nargs="?", help="tuple such as '(6,4)'")
    ph.add_argument("--poly", help="polynomial string")
    ph.add_argument("--s-primes", help="comma-separated primes, e.g. '2,3'")
    return parser


_DISPATCH = {
    "delta": _cmd_delta,
    "verify": _cmd_verify,
    "search": _cmd_search,
    "equation": _cmd_equation,
    "audit": _cmd_audit,
    "stability": _cmd_stability,
    "heights": _cmd_heights,
}


def _emit(args, payload: dict, csv_blob: bytes) -> None:
    json_bytes = serialize.to_json_bytes(payload)
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / f"{args.verb}.json").write_bytes(json_bytes)
        (out_dir / f"{args.verb}.csv").write_bytes(csv_blob)
    else:
        blob = json_bytes if args.format == "json" else csv_blob
        sys.stdout.buffer.write(blob)
        sys.stdout.buffer.flush()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    try:
        if args.verb == "heights":
            spec = load_spec(args.spec) if args.spec else {}
        else:
            spec = load_spec(args.spec)
        _check_keys(spec, args.verb)
        payload, csv_blob = _DISPATCH[args.verb](spec, args)
        _emit(args, payload, csv_blob)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    if args.verbose:
        elapsed = time.monotonic() - started
        print(
            f"# {args.verb} finished in {elapsed:.2f}s (backend={kernels.BACKEND})",
            file=sys.stderr,
        )
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
