"""Command-line interface: ``rp2-triangle <command> ...``.

Exit status: 0 for YES / success, 1 for NO (or an invalid-but-computed
result), 2 for parse and domain errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple

from .blowup import (
    PeriodVector3,
    PeriodVector4,
    epsilon_supremum,
    fiber_class,
    fiber_partner,
    period_forward,
    period_inverse,
    sigma_class,
)
from .cone import KahlerClass, decompose_curve_class, positivity_certificate, tilde_cone_membership
from .decision import admits_lagrangian_rp2, audin_scan
from .errors import DomainError
from .lattice import LatticeClass, blowup_lattice, enumerate_classes, tilde_lattice
from .rationals import format_rational, parse_rational

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2
THREADS_ENV = "RP2_TRIANGLE_THREADS"


class CliResult(NamedTuple):
    code: int
    out: str
    err: str


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise DomainError(message)


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"


def _fracs(values):
    return ", ".join(str(v) for v in values)


def _lattice(name: str):
    if name == "B4":
        return tilde_lattice()
    if name in ("B0", "B1", "B2", "B3"):
        return blowup_lattice(int(name[1]))
    raise DomainError(f"unknown lattice {name!r}; use B1, B2, B3 or B4 (the rational blow-up)")


def _named_class(lat, name: str) -> LatticeClass:
    name = name.strip()
    if lat == tilde_lattice():
        if name in ("Sigma", "Σ"):
            return sigma_class(lat)
        if name == "F":
            return fiber_class(lat)
        if name in ("E~'1", "E~'2", "E~'3"):
            return fiber_partner(int(name[3:]), lat)
    try:
        return lat[name]
    except KeyError:
        raise DomainError(f"unknown class {name!r} in {lat.name}") from None


def _certificate_text(cert) -> str:
    mu = _fracs(cert.mu)
    if cert.yes:
        return (
            f"YES: B3({mu}) admits a Lagrangian RP²\n"
            f"epsilon_sup {cert.epsilon_sup} (not attained)\n"
            f"witness ε = {cert.witness_epsilon}: "
            f"μ̃ = ({_fracs(cert.witness_mu_tilde)})\n"
        )
    return f"NO: B3({mu}) has no Lagrangian RP²; {cert.violation}\n"


def cmd_decide(args):
    p = PeriodVector3(tuple(args.mu))
    cert = admits_lagrangian_rp2(p)
    out = _dump(cert.to_json()) if args.json else _certificate_text(cert)
    return (EXIT_OK if cert.yes else EXIT_NO), out


def _period4_payload(q: PeriodVector4):
    return {
        "lambda": format_rational(q.lam),
        "mu_tilde": [format_rational(x) for x in q.mu_tilde],
        "valid": q.valid,
        "violations": q.violations,
    }


def cmd_transform(args):
    p = PeriodVector3(tuple(args.mu))
    eps = parse_rational(args.eps)
    q = period_forward(p, eps)
    if args.json:
        payload = _period4_payload(q)
        payload["sigma_area"] = format_rational(q.sigma_area())
        payload["four_eps"] = format_rational(4 * eps)
        out = _dump(payload)
    else:
        status = "valid" if q.valid else "invalid: " + "; ".join(q.violations)
        out = (
            f"μ̃ = {_fracs(q.mu_tilde)}\n{status}\n"
            f"μ̃₀ − (μ̃₁ + μ̃₂ + μ̃₃) = {q.sigma_area()} = 4ε\n"
        )
    return (EXIT_OK if q.valid else EXIT_NO), out


def cmd_inverse(args):
    q = PeriodVector4(1, tuple(args.mu_tilde))
    back = period_inverse(q)
    ok = not back.flagged
    if args.json:
        out = _dump(
            {
                "mu": [format_rational(x) for x in back.periods.mu],
                "eps": format_rational(back.eps),
                "eps_positive": ok,
            }
        )
    else:
        out = f"μ = {_fracs(back.periods.mu)}\neps {back.eps}\n"
        if not ok:
            out += "flagged: ε ≤ 0, no rational blow-up of this size\n"
    return (EXIT_OK if ok else EXIT_NO), out


def cmd_epsilon_max(args):
    p = PeriodVector3(tuple(args.mu))
    sup = epsilon_supremum(p)
    if args.json:
        out = _dump({"epsilon_sup": format_rational(sup.value), "attained": sup.attained, "binding": sup.binding})
    else:
        tail = "empty interval" if sup.value == 0 else "not attained"
        out = f"epsilon_sup {sup.value} ({tail}; binding: {sup.binding})\n"
    return (EXIT_OK if sup.value > 0 else EXIT_NO), out


def cmd_enumerate(args):
    lat = _lattice(args.lattice)
    orth = [_named_class(lat, n) for n in args.orth.split(",")] if args.orth else []
    found = enumerate_classes(lat, args.square, args.c1, orth, args.h_degree, args.primitive)
    if args.json:
        out = _dump({"basis": list(lat.basis_labels), "classes": [list(c.coefficients) for c in found]})
    else:
        out = "".join(f"{str(c)}\n" for c in found)
    return EXIT_OK, out


def cmd_decompose(args):
    cls = LatticeClass(tilde_lattice(), tuple(args.coefficients))
    dec = decompose_curve_class(cls)
    if args.json:
        out = _dump({"d": dec.d, "m": dec.m, "n_prime": list(dec.n_prime)})
    else:
        n1, n2, n3 = dec.n_prime
        out = f"{cls} = {dec.d}·Σ + {dec.m}·F − ({n1}·E~'1 + {n2}·E~'2 + {n3}·E~'3)\n"
    return EXIT_OK, out


def cmd_kahler(args):
    w = KahlerClass(args.lam, tuple(args.mu_tilde))
    report = tilde_cone_membership(w)
    payload = {
        "member": report.holds,
        "failed": report.failed_groups,
        "checks": [
            {"group": c.group, "condition": c.name, "holds": c.holds, "margin": format_rational(c.margin)}
            for c in report.checks
        ],
    }
    lines = ["member of the Kähler cone" if report.holds else "not a member: " + ", ".join(report.failed_groups) + " fail"]
    if args.curve and report.holds:
        try:
            coeffs = tuple(int(x) for x in args.curve.split(","))
        except ValueError:
            raise DomainError(f"--curve expects comma-separated integers, got {args.curve!r}") from None
        verdict = positivity_certificate(LatticeClass(tilde_lattice(), coeffs), w)
        payload["curve"] = {
            "class": list(coeffs),
            "case": verdict.case,
            "area": format_rational(verdict.area),
            "reason": verdict.reason,
            "summands": [
                {"coefficient": s.coefficient, "base": s.label, "area": format_rational(s.area)}
                for s in verdict.summands
            ],
        }
        lines.append(f"curve {verdict.cls}: case {verdict.case or 'not covered'}, area {verdict.area}")
        lines.append(f"  {verdict.reason}")
        for s in verdict.summands:
            lines.append(f"  {s.coefficient}·[{s.label}] area {s.area}")
    out = _dump(payload) if args.json else "\n".join(lines) + "\n"
    return (EXIT_OK if report.holds else EXIT_NO), out


def cmd_audin(args):
    hits = audin_scan(args.n)
    if args.json:
        out = _dump({"n": args.n, "classes": [list(m.reduction) for m in hits]})
    else:
        out = "".join(f"{m} has Pontrjagin square 1 mod 4\n" for m in hits) or "no class with square 1 mod 4\n"
    return EXIT_OK, out


def cmd_verify(args):
    from .verify import run_all

    report = run_all()
    out = _dump(report.to_json()) if args.json else "".join(c.line() + "\n" for c in report.checks)
    if not args.json:
        out += "ALL CHECKS PASSED\n" if report.passed else "SOME CHECKS FAILED\n"
    return (EXIT_OK if report.passed else EXIT_NO), out


def _batch_threads() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return min(8, os.cpu_count() or 1)
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        raise DomainError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


def decide_row(index_row):
    index, row = index_row
    entry = {"row": index}
    if row.get("id") not in (None, ""):
        entry["id"] = row["id"]
    try:
        p = PeriodVector3(tuple(row.get(k) for k in ("mu1", "mu2", "mu3")))
        entry.update(admits_lagrangian_rp2(p).to_json())
    except (DomainError, TypeError) as exc:
        entry["error"] = str(exc)
    return entry


def cmd_batch(args):
    try:
        with open(args.input, newline="", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DomainError(f"cannot read {args.input}: {exc.strerror}") from exc
    reader = csv.DictReader(io.StringIO(text))
    header = reader.fieldnames or []
    missing = [k for k in ("mu1", "mu2", "mu3") if k not in header]
    if missing:
        raise DomainError(f"{args.input}: header must contain mu1,mu2,mu3 (missing {', '.join(missing)})")
    rows = list(enumerate(reader, start=1))
    with ThreadPoolExecutor(max_workers=_batch_threads()) as pool:
        entries = list(pool.map(decide_row, rows))
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(_dump(entries))
    yes = sum(e.get("verdict") == "YES" for e in entries)
    no = sum(e.get("verdict") == "NO" for e in entries)
    err = sum("error" in e for e in entries)
    summary = {"rows": len(entries), "yes": yes, "no": no, "errors": err}
    out = _dump(summary) if args.json else f"{len(entries)} rows: {yes} YES, {no} NO, {err} errors\n"
    return EXIT_OK, out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help="suppress standard output")

    parser = _Parser(prog="rp2-triangle", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--quiet", action="store_true", help="suppress standard output")
    cmds = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        p = cmds.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("decide", cmd_decide, "decide whether B3(mu1, mu2, mu3) has a Lagrangian RP^2")
    p.add_argument("mu", nargs=3, type=parse_rational)
    p = add("transform", cmd_transform, "periods of the rational blow-up of size 4*eps")
    p.add_argument("mu", nargs=3, type=parse_rational)
    p.add_argument("--eps", required=True)
    p = add("inverse", cmd_inverse, "recover (mu, eps) from the blown-up periods")
    p.add_argument("mu_tilde", nargs=4, type=parse_rational)
    p = add("epsilon-max", cmd_epsilon_max, "supremum of admissible eps")
    p.add_argument("mu", nargs=3, type=parse_rational)
    p = add("enumerate", cmd_enumerate, "list classes with given square, c1-degree and orthogonality")
    p.add_argument("--lattice", default="B4")
    p.add_argument("--square", type=int, required=True)
    p.add_argument("--c1", type=int, required=True)
    p.add_argument("--orth", default="", help="comma-separated names: H, Sigma, F, E~0.., E~'1..")
    p.add_argument("--h-degree", type=int, default=None)
    p.add_argument("--primitive", action="store_true")
    p = add("decompose", cmd_decompose, "coordinates of a class of X~4 in {Sigma, F, E~'i}")
    p.add_argument("coefficients", nargs=5, type=int, metavar="k")
    p = add("kahler", cmd_kahler, "Kähler cone membership of lam*H - sum mu~_i E~_i")
    p.add_argument("lam", type=parse_rational)
    p.add_argument("mu_tilde", nargs=4, type=parse_rational)
    p.add_argument("--curve", help="comma-separated coefficients of a curve class")
    p = add("audin", cmd_audin, "mod-2 classes with Pontrjagin square 1 mod 4")
    p.add_argument("n", type=int, choices=(1, 2, 3))
    add("verify", cmd_verify, "re-derive every lemma and print a report")
    p = add("batch", cmd_batch, "decide every row of a CSV file")
    p.add_argument("input")
    p.add_argument("output")
    return parser


def run(argv) -> CliResult:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        code, out = args.func(args)
    except DomainError as exc:
        return CliResult(EXIT_ERROR, "", f"error: {exc}\n")
    except SystemExit as exc:  # --help
        return CliResult(int(exc.code or 0), "", "")
    return CliResult(code, "" if args.quiet else out, "")


def main(argv=None) -> int:
    result = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.buffer.write(result.out.encode("utf-8"))
    sys.stderr.buffer.write(result.err.encode("utf-8"))
    sys.stdout.flush()
    return result.code


if __name__ == "__main__":
    sys.exit(main())
