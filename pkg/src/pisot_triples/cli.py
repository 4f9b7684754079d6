"""Command-line front end: ``pisot-triples <group> <command> [options]``.

Exit codes: 0 success, 2 bad input, 3 undecided / cap / budget / cancelled.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import signal
import sys
import threading
from decimal import ROUND_CEILING, ROUND_FLOOR, Context, Decimal
from fractions import Fraction

import mpmath

from .applicability import Status, theorem_applicability
from .cancel import CancelToken
from .errors import (
    BudgetExceeded,
    Cancelled,
    CapExceeded,
    DomainError,
    UndecidableError,
)
from .numberfield import DEFAULT_DEGREE_CAP
from .pisot import FAMILIES, certify_pisot, family_poly
from .poly import IntPoly, parse_poly
from .recurrence import (
    RecurrenceSpec,
    binet_coefficients,
    build_from_trace,
    dominance,
    eval_range,
    value_at,
    _require_pisot,
)
from .search import (
    DEFAULT_BUDGET_MS,
    dplus_extension,
    euler_quadruple,
    find_triples,
    gcd_scan,
)

ENV_CAP = "PISOT_TRIPLES_CAP"
ENV_BUDGET = "PISOT_TRIPLES_BUDGET_MS"

EXIT_OK, EXIT_DOMAIN, EXIT_UNDECIDED = 0, 2, 3


# ---------------------------------------------------------------------------
# formatting


def _dec(x: Fraction, digits: int = 25, up: bool = False) -> str:
    """Decimal string with ``digits`` significant digits, rounded outward."""
    ctx = Context(prec=digits, rounding=ROUND_CEILING if up else ROUND_FLOOR)
    return str(ctx.divide(Decimal(x.numerator), Decimal(x.denominator)))


def _interval(lo: Fraction, hi: Fraction, digits: int = 25) -> list[str]:
    return [_dec(lo, digits), _dec(hi, digits, up=True)]


def _plain(v):
    """Recursively turn numbers into decimal strings for serialization."""
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, (int, Fraction)):
        return str(v)
    if isinstance(v, mpmath.mpf):
        return mpmath.nstr(v, 30)
    if isinstance(v, dict):
        return {k: _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return str(v)


def _render(fmt: str, command: str, inputs: dict, result: dict, status: str,
            table: tuple[list[str], list[list]] | None) -> str:
    if fmt == "json":
        doc = {"command": command, "input": _plain(inputs), "result": _plain(result),
               "status": status}
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if table is not None:
            header, rows = table
            w.writerow(header)
            for row in rows:
                w.writerow([_csv_cell(c) for c in row])
        else:
            w.writerow(["key", "value"])
            for k, v in _flatten(_plain(result)):
                w.writerow([k, v])
        return buf.getvalue()
    lines = [f"{command}: {status}"]
    for k, v in _flatten(_plain(result)):
        lines.append(f"  {k}: {v}")
    return "\n".join(lines) + "\n"


def _csv_cell(c):
    if isinstance(c, (list, tuple)):
        return ";".join(str(_plain(x)) for x in c)
    return _plain(c)


def _flatten(v, prefix=""):
    if isinstance(v, dict):
        for k, x in v.items():
            yield from _flatten(x, f"{prefix}.{k}" if prefix else k)
    elif isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v):
        for i, x in enumerate(v):
            yield from _flatten(x, f"{prefix}[{i}]")
    elif isinstance(v, list):
        yield prefix, ",".join("" if x is None else str(x) for x in v)
    else:
        yield prefix, "" if v is None else v


# ---------------------------------------------------------------------------
# input parsing


def _int_list(text: str) -> list[int]:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        try:
            out.append(int(tok))
        except ValueError:
            raise DomainError(f"expected an integer, got token {tok!r}") from None
    return out


def _poly_arg(args) -> IntPoly:
    if args.poly is not None and args.coeffs is not None:
        raise DomainError("give either --poly or --coeffs, not both")
    if args.poly is not None:
        p = parse_poly(args.poly)
    elif args.coeffs is not None:
        p = IntPoly(_int_list(args.coeffs))
    else:
        raise DomainError("a polynomial is required (--poly or --coeffs)")
    if not isinstance(p, IntPoly):
        raise DomainError(f"polynomial {p} has non-integer coefficients")
    return p


def _spec_arg(args) -> RecurrenceSpec:
    if args.init is None:
        raise DomainError("initial values are required (--init)")
    return RecurrenceSpec(_poly_arg(args), tuple(_int_list(args.init)))


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"environment variable {name} must be an integer, got {raw!r}") from None


# ---------------------------------------------------------------------------
# commands; each returns (inputs, result, status, table)


def _cert_record(p, bits):
    cert = certify_pisot(p, bits)
    if not cert:
        return {"poly": str(p), "accepted": False, "reason": cert.reason.value,
                "detail": cert.detail}
    box = cert.dominant_box
    return {
        "poly": str(p),
        "accepted": True,
        "degree": cert.degree,
        "is_unit": cert.is_unit,
        "dominant_root": _interval(box.re_lo, box.re_hi),
        "max_conjugate_modulus_upper": _dec(cert.max_conjugate_modulus, 25, up=True),
        "precision_bits": cert.precision_bits,
    }


def cmd_pisot_certify(args):
    p = _poly_arg(args)
    return {"poly": str(p), "bits": args.bits}, _cert_record(p, args.bits), "ok", None


def cmd_pisot_family(args):
    p = family_poly(args.family, args.k)
    inputs = {"family": args.family, "k": args.k}
    return inputs, {"coeffs": list(p.coeffs), **_cert_record(p, args.bits)}, "ok", None


def cmd_rec_eval(args):
    spec = _spec_arg(args)
    _require_pisot(spec)
    inputs = {"poly": str(spec.char_poly), "init": list(spec.initial_values)}
    if args.n is not None:
        inputs["n"] = args.n
        v = value_at(spec, args.n)
        return inputs, {"values": [v]}, "ok", (["n", "value"], [[args.n, v]])
    bounds = _int_list(args.range)
    if len(bounds) != 2:
        raise DomainError(f"--range takes lo,hi, got {args.range!r}")
    lo, hi = bounds
    inputs["range"] = [lo, hi]
    vals = eval_range(spec, lo, hi)
    rows = [[lo + i, v] for i, v in enumerate(vals)]
    return inputs, {"values": vals}, "ok", (["n", "value"], rows)


def cmd_rec_binet(args):
    spec = _spec_arg(args)
    b = binet_coefficients(spec)
    dom = dominance(b)
    box = b.certificate.dominant_box
    result = {
        "f1": str(b.f1),
        "f1_coords": list(b.f1.coords),
        "d": b.d,
        "f_coords": list(b.f.coords),
        "alpha": _interval(box.re_lo, box.re_hi),
        "c1": _interval(dom.c1.lo, dom.c1.hi),
        "tail_bound": _dec(dom.tail_bound, 25, up=True),
    }
    inputs = {"poly": str(spec.char_poly), "init": list(spec.initial_values)}
    return inputs, result, "ok", None


def cmd_rec_from_trace(args):
    p = _poly_arg(args)
    f = _int_list(args.f)
    spec = build_from_trace(p, f, args.d)
    inputs = {"poly": str(p), "f": f, "d": args.d}
    return inputs, {"init": list(spec.initial_values)}, "ok", None


def _sq_record(v):
    if v is None:
        return None
    rec = {"status": v.status.value, "element": str(v.element)}
    if v.witness is not None:
        rec["witness"] = str(v.witness)
    if v.obstruction is not None:
        rec["obstruction"] = v.obstruction.value
    rec["reason"] = v.reason
    return rec


def cmd_hyp_check(args, token=None):
    spec = _spec_arg(args)
    cap = args.cap if args.cap is not None else _env_int(ENV_CAP, DEFAULT_DEGREE_CAP)
    r = theorem_applicability(spec, cap, force_squareness=args.force_squareness, token=token)
    result = {
        "k": r.k,
        "alpha_is_unit": r.alpha_is_unit,
        "f1": str(r.binet.f1),
        "verdict": r.verdict.value,
        "clauses": list(r.clause_citations),
        "splitting_degree": r.splitting_degree,
        "nonsquare_f1": _sq_record(r.nonsquare_f1),
        "nonsquare_f1alpha": _sq_record(r.nonsquare_f1alpha),
    }
    inputs = {"poly": str(spec.char_poly), "init": list(spec.initial_values), "cap": cap,
              "force_squareness": args.force_squareness}
    undecided = any(v is not None and v.status is Status.UNDECIDED
                    for v in (r.nonsquare_f1, r.nonsquare_f1alpha))
    return inputs, result, "undecided" if undecided else "ok", None


TRIPLE_HEADER = ["a", "b", "c", "x", "y", "z", "increasing_witness"]
GCD_HEADER = ["y", "z", "g", "ratio"]


def cmd_search_triples(args, token=None):
    spec = _spec_arg(args)
    budget = args.budget_ms if args.budget_ms is not None else _env_int(ENV_BUDGET, DEFAULT_BUDGET_MS)
    inputs = {"poly": str(spec.char_poly), "init": list(spec.initial_values),
              "c_max": args.c_max, "a_min": args.a_min, "budget_ms": budget}
    hits = find_triples(spec, args.c_max, args.a_min, workers=args.workers,
                        budget_ms=budget, token=token)
    rows = [[h.a, h.b, h.c, list(h.x), list(h.y), list(h.z), h.has_increasing_witness]
            for h in hits]
    result = {"count": len(hits),
              "triples": [dict(zip(TRIPLE_HEADER, row)) for row in rows]}
    return inputs, result, "ok", (TRIPLE_HEADER, rows)


def cmd_search_gcd_scan(args):
    spec = _spec_arg(args)
    rep = gcd_scan(spec, args.y_lo, args.z_hi, workers=args.workers)
    inputs = {"poly": str(spec.char_poly), "init": list(spec.initial_values),
              "y_lo": args.y_lo, "z_hi": args.z_hi}
    result = {
        "pairs": len(rep.records),
        "kappa": rep.kappa,
        "max_ratio": rep.max_ratio,
        "fitted_slack": rep.fitted_slack,
    }
    if args.records:
        result["records"] = [[r.y, r.z, r.g, r.ratio] for r in rep.records]
    rows = [[r.y, r.z, r.g, r.ratio] for r in rep.records]
    return inputs, result, "ok", (GCD_HEADER, rows)


def cmd_quad_euler(args):
    q = euler_quadruple(args.a, args.b)
    return {"a": args.a, "b": args.b}, {"quadruple": list(q)}, "ok", None


def cmd_quad_dplus(args):
    d = dplus_extension(args.a, args.b, args.c)
    return {"a": args.a, "b": args.b, "c": args.c}, {"d_plus": d}, "ok", None


# ---------------------------------------------------------------------------
# parser


def _add_poly(p, init=False):
    p.add_argument("--poly", help='polynomial such as "x^3-x-1"')
    p.add_argument("--coeffs", help="ascending integer coefficients, e.g. -1,-1,0,1")
    if init:
        p.add_argument("--init", help="comma-separated initial values F_0..F_{k-1}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("plain", "json", "csv"), default="plain")
    common.add_argument("--out", help="write output to FILE instead of stdout")

    ap = argparse.ArgumentParser(prog="pisot-triples", description=__doc__.splitlines()[0])
    groups = ap.add_subparsers(dest="group", required=True)

    g = groups.add_parser("pisot").add_subparsers(dest="command", required=True)
    p = g.add_parser("certify", parents=[common], help="certify a Pisot polynomial")
    _add_poly(p)
    p.add_argument("--bits", type=int, default=64)
    p.set_defaults(func=cmd_pisot_certify)
    p = g.add_parser("family", parents=[common], help="expand and certify a family member")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--bits", type=int, default=64)
    p.set_defaults(func=cmd_pisot_family)

    g = groups.add_parser("rec").add_subparsers(dest="command", required=True)
    p = g.add_parser("eval", parents=[common], help="evaluate the recurrence")
    _add_poly(p, init=True)
    sel = p.add_mutually_exclusive_group(required=True)
    sel.add_argument("--range", help="lo,hi inclusive")
    sel.add_argument("--n", type=int, help="single index")
    p.set_defaults(func=cmd_rec_eval)
    p = g.add_parser("binet", parents=[common], help="leading Binet coefficient")
    _add_poly(p, init=True)
    p.set_defaults(func=cmd_rec_binet)
    p = g.add_parser("from-trace", parents=[common], help="initial values of d F_n = Tr(f a^n)")
    _add_poly(p)
    p.add_argument("--f", required=True, help="power-basis coordinates of f")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_rec_from_trace)

    g = groups.add_parser("hyp").add_subparsers(dest="command", required=True)
    p = g.add_parser("check", parents=[common], help="which finiteness clause applies")
    _add_poly(p, init=True)
    p.add_argument("--cap", type=int, help=f"splitting-field degree cap (env {ENV_CAP})")
    p.add_argument("--force-squareness", action="store_true",
                   help="run the squareness test even when a degree clause applies")
    p.set_defaults(func=cmd_hyp_check, cancellable=True)

    g = groups.add_parser("search").add_subparsers(dest="command", required=True)
    p = g.add_parser("triples", parents=[common], help="exhaustive triple search")
    _add_poly(p, init=True)
    p.add_argument("--c-max", type=int, required=True)
    p.add_argument("--a-min", type=int, choices=(1, 2), default=1)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--budget-ms", type=int, help=f"factorization budget (env {ENV_BUDGET})")
    p.set_defaults(func=cmd_search_triples, cancellable=True)
    p = g.add_parser("gcd-scan", parents=[common], help="gcd(F_y-1, F_z-1) scan")
    _add_poly(p, init=True)
    p.add_argument("--y-lo", type=int, required=True)
    p.add_argument("--z-hi", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--records", action="store_true", help="include every pair in json/plain")
    p.set_defaults(func=cmd_search_gcd_scan)

    g = groups.add_parser("quad").add_subparsers(dest="command", required=True)
    p = g.add_parser("euler", parents=[common], help="Euler's quadruple from a pair")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.set_defaults(func=cmd_quad_euler)
    p = g.add_parser("dplus", parents=[common], help="regular extension d_+ of a triple")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("c", type=int)
    p.set_defaults(func=cmd_quad_dplus)
    return ap


_LIST_FLAGS = ("--coeffs", "--init", "--f", "--range")


def _glue_lists(argv: list[str]) -> list[str]:
    """Let ``--coeffs -1,-1,0,1`` through; argparse would read -1,... as a flag."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _LIST_FLAGS and i + 1 < len(argv) and argv[i + 1][:1] == "-" \
                and argv[i + 1][1:2].isdigit():
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    ap = build_parser()
    argv = _glue_lists(list(sys.argv[1:] if argv is None else argv))
    args = ap.parse_args(argv)
    raw = {"argv": argv}
    command = f"{args.group} {args.command}"
    token = CancelToken()
    kwargs = {"token": token} if getattr(args, "cancellable", False) else {}
    prev = None
    if kwargs and _in_main_thread():
        prev = signal.signal(signal.SIGINT, lambda *_: token.cancel())
    try:
        inputs, result, status, table = args.func(args, **kwargs)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        _emit(args, _render(args.format, command, raw, {"error": str(exc)}, "domain-error", None))
        return EXIT_DOMAIN
    except (CapExceeded, UndecidableError) as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        _emit(args, _render(args.format, command, raw, {"error": str(exc)}, "undecided", None))
        return EXIT_UNDECIDED
    except BudgetExceeded as exc:
        rec = {"error": str(exc), "z": exc.z, "checkpoint": exc.checkpoint,
               "cofactor": exc.cofactor}
        print(f"budget exceeded: {exc}", file=sys.stderr)
        _emit(args, _render(args.format, command, raw, rec, "budget-exceeded", None))
        return EXIT_UNDECIDED
    except Cancelled as exc:
        rec = {"error": str(exc), "checkpoint": getattr(exc, "checkpoint", None)}
        print(f"cancelled; checkpoint {rec['checkpoint']}", file=sys.stderr)
        _emit(args, _render(args.format, command, raw, rec, "cancelled", None))
        return EXIT_UNDECIDED
    finally:
        if prev is not None:
            signal.signal(signal.SIGINT, prev)
    _emit(args, _render(args.format, command, inputs, result, status, table))
    return EXIT_OK if status == "ok" else EXIT_UNDECIDED


def _in_main_thread() -> bool:
    return threading.current_thread() is threading.main_thread()


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
