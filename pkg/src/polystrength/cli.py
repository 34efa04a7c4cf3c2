"""Command line interface.

Each invocation prints one JSON envelope on stdout.  Exit status: 0 success,
2 when a reported property is falsified, 1 on usage or parse errors.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from filelock import FileLock

from . import __version__
from .fields import UndecidedError, parse_field_spec
from .glcase import ns_example_check, shift_decompose
from .groebner import buchberger
from .poly import parse_poly
from .strength import (
    Form,
    PreconditionError,
    astr_report,
    extension_lift_search,
    str_bounds,
    str_exact_finite_field,
)
from .torsor import (
    SymShiftModel,
    TorsorAlgebra,
    delta,
    directional_derivative,
    embed_witness,
    filtration_level,
    frobenius_descend,
    init,
)

CACHE_ENV = "POLYSTRENGTH_CACHE_DIR"
DEFAULT_CACHE = Path.home() / ".cache" / "polystrength"

OK, USAGE, FALSIFIED = 0, 1, 2


class UsageError(Exception):
    pass


def cache_dir() -> Path:
    return Path(os.environ.get(CACHE_ENV) or DEFAULT_CACHE)


def _cache_key(command, inputs):
    blob = json.dumps([__version__, command, inputs], sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _cached(command, inputs, compute, use_cache):
    """(payload, exit code, cache hit) with an advisory lock per entry."""
    if not use_cache:
        payload, code = compute()
        return payload, code, False
    root = cache_dir()
    root.mkdir(parents=True, exist_ok=True)
    key = _cache_key(command, inputs)
    path = root / f"{key}.json"
    with FileLock(str(root / f"{key}.lock")):
        if path.exists():
            try:
                entry = json.loads(path.read_text())
                return entry["payload"], entry["code"], True
            except (ValueError, KeyError):
                path.unlink()
        payload, code = compute()
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps({"payload": payload, "code": code}, sort_keys=True))
        tmp.replace(path)
    return payload, code, False


# ----------------------------------------------------------------------------
# argument helpers


def _field(spec):
    try:
        return parse_field_spec(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _names(text):
    if text is None:
        return None
    return [v.strip() for v in text.split(",") if v.strip()]


def _assignments(text, K):
    """'x1=1,x2=-1/2' -> {name: field element}."""
    out = {}
    for part in _names(text) or []:
        if "=" not in part:
            raise UsageError(f"expected name=value, got {part!r}")
        k, v = part.split("=", 1)
        try:
            out[k.strip()] = K(v.strip())
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return out


def _phi(text, K):
    """'u1:e1=1;u2:e2=1,e1=1' -> {u: {e: value}}."""
    out = {}
    for block in text.split(";"):
        block = block.strip()
        if not block:
            continue
        if ":" not in block:
            raise UsageError(f"expected u:e=value,..., got {block!r}")
        u, rest = block.split(":", 1)
        out[u.strip()] = _assignments(rest, K)
    return out


def _form(args):
    K = _field(args.field)
    try:
        return Form.parse(args.form, K, _names(args.vars))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _poly_dict(p):
    return str(p)


# ----------------------------------------------------------------------------
# commands; each returns (field spec, form text, cache inputs, compute)


def cmd_strength(args):
    f = _form(args)
    inputs = {"field": f.field.spec, "form": str(f), "vars": list(f.vars), "mode": args.mode,
              "max_s": args.max_s, "budget": args.budget}
    if args.mode == "exact" and not f.field.is_finite():
        raise UsageError("--mode exact needs a finite field")

    def compute():
        if args.mode == "astr":
            try:
                r = astr_report(f, max_s=args.max_s)
            except PreconditionError as exc:
                return {"astr": None, "exceeds_max_s": True, "message": str(exc)}, OK
            return {"astr": r.value, "method": r.method,
                    "pattern": str(r.pattern) if r.pattern else None}, OK
        if args.mode == "exact":
            c = str_exact_finite_field(f, budget=args.budget)
        else:
            c = str_bounds(f, max_s=args.max_s, budget=args.budget)
        payload = c.to_dict()
        payload["verified"] = c.verify()
        return payload, OK if payload["verified"] else FALSIFIED

    return f.field.spec, str(f), inputs, compute


def cmd_extend(args):
    f = _form(args)
    inputs = {"field": f.field.spec, "form": str(f), "vars": list(f.vars), "s": args.target_s,
              "degree_budget": args.degree_budget, "budget": args.budget}

    def compute():
        try:
            lift = extension_lift_search(f, args.target_s, args.degree_budget, budget=args.budget)
        except PreconditionError as exc:
            return {"found": False, "precondition": str(exc)}, FALSIFIED
        if lift is None:
            return {"found": False, "inconclusive": True,
                    "message": "no extension found within the degree budget"}, OK
        out = lift.to_dict()
        out["found"] = True
        return out, OK

    return f.field.spec, str(f), inputs, compute


def _torsor(args):
    K = _field(args.field)
    try:
        T = TorsorAlgebra(K, _names(args.base) or [], _names(args.fiber) or [])
        f = T.poly(args.f)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return K, T, f


def cmd_torsor(args):
    if args.action == "witness":
        return _cmd_witness(args)
    K, T, f = _torsor(args)
    inputs = {"action": args.action, "field": K.spec, "base": list(T.base), "fiber": list(T.fiber),
              "f": str(f), "r": args.r}
    r = _assignments(args.r, K) if args.action == "derive" else None
    if args.action == "derive" and set(r) - set(T.fiber):
        raise UsageError("--r may only mention fiber variables")

    def compute():
        if args.action == "delta":
            D = delta(f, T)
            return {"components": D.to_dict(), "shadows": dict(T.shadow)}, OK
        if args.action == "derive":
            lvl = filtration_level(f, T)
            return {"derivative": str(directional_derivative(f, r, T)),
                    "level": lvl, "init": str(init(f, T)) if lvl is not None else None}, OK
        try:
            d = frobenius_descend(f, T)
        except ValueError as exc:
            return {"error": str(exc)}, FALSIFIED
        return d.to_dict(), OK

    return K.spec, str(f), inputs, compute


def _cmd_witness(args):
    K = _field(args.field)
    M = SymShiftModel(K, args.m, args.n)
    try:
        f = parse_poly(args.f, M.vars, K)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    phi = _phi(args.phi, K)
    r0 = _assignments(args.r0, K) if args.r0 else {v: K(1) for v in M.u_block[:1]}
    try:
        M.check_phi(phi)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    off = sorted((set(f.used_vars()) | set(r0)) - set(M.u_block))
    if off:
        raise UsageError(f"--f and --r0 may only use the coordinates {', '.join(M.u_block)}; got {', '.join(off)}")
    inputs = {"action": "witness", "field": K.spec, "m": args.m, "n": args.n, "f": str(f),
              "phi": args.phi, "r0": args.r0, "samples": args.samples}

    def compute():
        try:
            rep = embed_witness(f, r0, phi, M, buchberger(M.rank_one_ideal()), samples=args.samples)
        except ValueError as exc:
            return {"error": str(exc), "passed": False}, FALSIFIED
        out = rep.to_dict()
        out["coordinates"] = list(M.vars)
        return out, OK if rep.passed else FALSIFIED

    return K.spec, str(f), inputs, compute


def cmd_glcase(args):
    if args.action == "shift-dims":
        inputs = {"action": "shift-dims", "a": args.a, "m": args.m, "n": args.n}

        def compute():
            pieces = shift_decompose(args.a, args.m, args.n)
            return {"pieces": [{"u_degree": i, "dim": d} for i, d in pieces],
                    "total": sum(d for _, d in pieces)}, OK

        return None, None, inputs, compute
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    inputs = {"action": "ns-check", "n": args.n}

    def compute():
        rep = ns_example_check(args.n)
        return rep.to_dict(), OK if rep.passed else FALSIFIED

    return "GF(2)", None, inputs, compute


def cmd_verify(args):
    from . import acceptance

    numbers = [int(x) for x in _names(args.criteria)] if args.criteria else None
    if numbers and any(n not in range(1, 11) for n in numbers):
        raise UsageError("criteria are numbered 1 to 10")
    inputs = {"criteria": numbers}

    def compute():
        results = acceptance.run_all(numbers)
        for r in results:
            print(r.line(), file=sys.stderr)
        payload = {"results": [r.to_dict() for r in results], "passed": all(r.ok for r in results)}
        return payload, OK if payload["passed"] else FALSIFIED

    return None, None, inputs, compute


# ----------------------------------------------------------------------------


def _common(p):
    p.add_argument("--pretty", action="store_true", help="indented, human-oriented output")
    p.add_argument("--no-cache", action="store_true", help="bypass the result cache")


def build_parser():
    parser = argparse.ArgumentParser(prog="polystrength", description="Strength of forms and torsor calculus.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def form_args(p):
        p.add_argument("--field", required=True, help='field spec, e.g. "QQ", "GF(4)", "GF(2)(t1,t2)"')
        p.add_argument("--form", required=True, help="homogeneous polynomial")
        p.add_argument("--vars", help="comma-separated variable order (default: sorted names)")
        p.add_argument("--budget", type=int, default=200_000, help="enumeration budget over finite fields")

    p = sub.add_parser("strength", help="strength or absolute strength of a form")
    form_args(p)
    p.add_argument("--mode", choices=["astr", "exact", "bounds"], default="bounds")
    p.add_argument("--max-s", type=int)
    _common(p)

    p = sub.add_parser("extend", help="search for an extension where the strength drops to --target-s")
    form_args(p)
    p.add_argument("--target-s", type=int, required=True)
    p.add_argument("--degree-budget", type=int, default=2)
    _common(p)

    p = sub.add_parser("torsor", help="torsor calculus")
    tsub = p.add_subparsers(dest="action", required=True)
    for name, hlp in (("delta", "components of the coaction"), ("derive", "directional derivative"),
                      ("descend", "Frobenius descent")):
        q = tsub.add_parser(name, help=hlp)
        q.add_argument("--field", required=True)
        q.add_argument("--base", default="")
        q.add_argument("--fiber", required=True)
        q.add_argument("--f", required=True)
        if name == "derive":
            q.add_argument("--r", required=True, help="covector, e.g. x1=1,x2=0")
        else:
            q.set_defaults(r=None)
        _common(q)
    q = tsub.add_parser("witness", help="embedding witness in the Sym^2 shift model")
    q.add_argument("--field", required=True)
    q.add_argument("--m", type=int, default=2, help="dimension of the shift block U")
    q.add_argument("--n", type=int, default=2, help="dimension of the fiber block V")
    q.add_argument("--f", required=True, help="polynomial in the coordinates zu1u1, zu1u2, ...")
    q.add_argument("--phi", required=True, help='injective map U -> V, e.g. "u1:e1=1;u2:e2=1"')
    q.add_argument("--r0", help="vector on the Sym^2(U) coordinates, e.g. zu1u1=1")
    q.add_argument("--samples", type=int, default=5)
    _common(q)

    p = sub.add_parser("glcase", help="finite-level GL constructions")
    gsub = p.add_subparsers(dest="action", required=True)
    q = gsub.add_parser("shift-dims", help="dimensions of the pieces of Sym^a(K^m + K^n)")
    q.add_argument("--a", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    _common(q)
    q = gsub.add_parser("ns-check", help="injectivity and F-surjectivity of the characteristic 2 example")
    q.add_argument("--n", type=int, required=True)
    _common(q)

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument("--criteria", help="comma-separated subset, e.g. 1,2,8")
    _common(p)
    return parser


COMMANDS = {"strength": cmd_strength, "extend": cmd_extend, "torsor": cmd_torsor,
            "glcase": cmd_glcase, "verify": cmd_verify}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else USAGE
    t0 = time.perf_counter()
    try:
        field_spec, form_text, inputs, compute = COMMANDS[args.command](args)
        use_cache = not args.no_cache and args.command != "verify"
        command = args.command + ("/" + args.action if getattr(args, "action", None) else "")
        payload, code, hit = _cached(command, inputs, compute, use_cache)
    except UsageError as exc:
        print(f"polystrength: error: {exc}", file=sys.stderr)
        return USAGE
    except UndecidedError as exc:
        print(f"polystrength: undecided: {exc}", file=sys.stderr)
        return USAGE
    envelope = {
        "command": argv,
        "field": field_spec,
        "form": form_text,
        "payload": payload,
        "timing": {"seconds": round(time.perf_counter() - t0, 6)},
        "version": __version__,
        "cache_hit": hit,
    }
    print(json.dumps(envelope, sort_keys=True, indent=2 if args.pretty else None))
    return code


if __name__ == "__main__":
    sys.exit(main())
