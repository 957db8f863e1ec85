"""Command-line front end: parsing, grid orchestration, JSON/CSV output.

Exit codes: 0 success, 1 computation error (with a machine-readable error
document on stdout), 2 usage error, 3 at least one congruence report has
pass = false (inconclusive reports alone do not fail the run).

All documents carry "schema": "qpl/1" and are emitted with sorted keys, so
identical run specs produce byte-identical output.  Numeric payloads are
serialized PadicNumbers (digits plus certified precision) or exact fraction
strings; there are no bare floating digits.
"""

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction

from .errors import QplError
from .padic import PadicNumber, QContext
from .characters import DirichletCharacter, parse_char_spec
from .classical import bernoulli_number, gen_bernoulli_poly
from .qbernoulli import carlitz_beta_poly, multi_q_beta_poly
from .lfunctions import (
    LParams,
    Lpq_at_r,
    Lpq_eval,
    Lpq_special,
    choose_F,
)
from .congruences import (
    verify_binom_op_thm,
    verify_classical_kummer,
    verify_thm53,
    verify_thm54,
)
from .oracles import oracle_resolve_conventions
from .invariants import SUITES, run_suites

SCHEMA = "qpl/1"
PRECISION_ENV = "QPL_PRECISION"
DEFAULT_PRECISION = 12


@dataclass(frozen=True)
class RunSpec:
    """Fully parsed run description; round-trips through to_dict/from_dict."""

    subcommand: str
    p: int = None
    q: str = None
    prec: int = None
    r: int = None
    chi: str = None
    n: int = None
    n_list: tuple = None
    n_max: int = None
    s: str = None
    z: str = None
    F: int = None
    c: int = None
    k: int = None
    k2: int = None
    theorem: str = None
    convention: str = None
    grid: str = None
    base_power: int = None
    suites: tuple = None
    cases: int = None
    seed: int = None
    r_max: int = None
    output: str = "json"
    jobs: int = 1

    def to_dict(self) -> dict:
        return {k: (list(v) if isinstance(v, tuple) else v)
                for k, v in asdict(self).items() if v is not None}

    @classmethod
    def from_dict(cls, d: dict) -> "RunSpec":
        d = dict(d)
        for key in ("n_list", "suites"):
            if d.get(key) is not None:
                d[key] = tuple(d[key])
        return cls(**d)


def parse_q(text: str) -> Fraction:
    """q given exactly: "1+p^m" (or "1+p"), "num/den", or an integer."""
    text = text.strip().replace(" ", "")
    if text.startswith("1+p"):
        rest = text[3:]
        if rest == "":
            return None  # caller substitutes 1 + p
        if rest.startswith("^") and rest[1:].isdigit():
            return ("pow", int(rest[1:]))
        raise ValueError("malformed q spec %r" % text)
    return Fraction(text)


def _materialize_q(qspec: str, p: int) -> Fraction:
    parsed = parse_q(qspec)
    if parsed is None:
        return Fraction(1 + p)
    if isinstance(parsed, tuple):
        return Fraction(1 + p ** parsed[1])
    return parsed


def _parse_scalar(text: str) -> Fraction:
    return Fraction(text.strip())


def _context(spec: RunSpec) -> QContext:
    q = _materialize_q(spec.q, spec.p)
    convention = spec.convention or "pure_sum"
    return QContext(spec.p, q, spec.prec, convention)


def _padic_doc(x: PadicNumber) -> dict:
    d = x.to_dict()
    d["repr"] = repr(x)
    return d


def _emit(doc: dict, stream) -> None:
    doc = dict(doc)
    doc["schema"] = SCHEMA
    json.dump(doc, stream, sort_keys=True, indent=2)
    stream.write("\n")


# -- subcommand bodies -------------------------------------------------------


def _cmd_bernoulli(spec: RunSpec, stream) -> int:
    if spec.chi is not None:
        chi = parse_char_spec(spec.chi, spec.p)
        value = gen_bernoulli_poly(spec.n, chi)
        desc = {"n": spec.n, "chi": chi.to_dict(), "p": spec.p}
    else:
        value = bernoulli_number(spec.n)
        desc = {"n": spec.n}
    _emit({"params": desc, "value": str(value), "precision": "exact"}, stream)
    return 0


def _cmd_qbernoulli(spec: RunSpec, stream) -> int:
    ctx = _context(spec)
    z = _parse_scalar(spec.z) if spec.z is not None else 0
    if spec.r is not None:
        value = multi_q_beta_poly(ctx, spec.n, spec.r, z)
        kind = "multiple"
    else:
        value = carlitz_beta_poly(ctx, spec.n, z)
        kind = "carlitz"
    params = spec.to_dict()
    params["q_exact"] = str(ctx.q)
    _emit({"params": params, "kind": kind, "value": _padic_doc(value)}, stream)
    return 0


def _cmd_lp(spec: RunSpec, stream) -> int:
    if spec.s.strip() == "r":
        return _cmd_lp_at_r(spec, stream)
    ctx = _context(spec)
    chi = parse_char_spec(spec.chi, spec.p)
    F = spec.F or choose_F(chi.conductor, spec.p, spec.r, "interpolation")
    z = _parse_scalar(spec.z) if spec.z is not None else 0
    s = _parse_scalar(spec.s)
    if s.denominator == 1:
        s = int(s)
    params = LParams(r=spec.r, chi=chi, F=F, z=z, s=s)
    result = Lpq_eval(ctx, params)
    _emit({
        "params": dict(spec.to_dict(), F=F, q_exact=str(ctx.q)),
        "value": _padic_doc(result.value),
        "terms_used": result.terms_used,
        "tail_valuation_bound": result.tail_valuation_bound,
        "converged": result.converged,
        "convention": ctx.convention,
    }, stream)
    return 0


def _cmd_lp_at_r(spec: RunSpec, stream) -> int:
    ctx = _context(spec)
    chi = parse_char_spec(spec.chi, spec.p)
    z = _parse_scalar(spec.z) if spec.z is not None else 0
    result = Lpq_at_r(ctx, spec.r, chi, z, spec.F)
    _emit({
        "params": dict(spec.to_dict(), q_exact=str(ctx.q)),
        "value": _padic_doc(result.value),
        "terms_used": result.terms_used,
        "tail_valuation_bound": result.tail_valuation_bound,
        "converged": result.converged,
        "convention": ctx.convention,
    }, stream)
    return 0


def _cmd_lp_table(spec: RunSpec, stream) -> int:
    ctx = _context(spec)
    chi = parse_char_spec(spec.chi, spec.p)
    z = _parse_scalar(spec.z) if spec.z is not None else 0
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["p", "q", "prec", "r", "chi", "z", "n",
                     "valuation", "digits", "value"])
    for n in range(spec.n_max + 1):
        value = Lpq_special(ctx, n, spec.r, chi, z)
        d = value.to_dict()
        writer.writerow([
            spec.p, str(ctx.q), spec.prec, spec.r, spec.chi, str(z), n,
            d["val"], "".join(str(t) for t in d["digits"]), repr(value),
        ])
    return 0


def _grid_worker(task: dict) -> list:
    spec = RunSpec.from_dict(task["spec"])
    ctx = _context(spec)
    chi = parse_char_spec(task["chi"], spec.p)
    z = _parse_scalar(task["z"])
    if z.denominator == 1:
        z = int(z)
    if task["theorem"] == "53":
        reports = verify_thm53(ctx, chi, task["r"], task["n_list"],
                               task["c"], task["k"], z)
    elif task["theorem"] == "54":
        reports = [verify_thm54(ctx, chi, task["r"], task["n"],
                                task["c"], task["k"], task["k2"], z)]
    else:
        reports = verify_binom_op_thm(ctx, chi, task["r"], task["n_list"],
                                      task["c"], task["k"], z)
    return [r.to_dict() for r in reports]


def _default_grid(spec: RunSpec) -> list:
    """The stock verification grid at one prime: both characters used by the
    worked examples, r in {1,2}, k in {1,2}, two z samples per point."""
    from .congruences import _z_step

    tasks = []
    base = spec.to_dict()
    for chi_spec in ("principal", "omega^2"):
        for r in (1, 2):
            chi = parse_char_spec(chi_spec, spec.p)
            step = _z_step(spec.p, r, chi.conductor)
            for k in (1, 2):
                for z in (step, 2 * step):
                    tasks.append({
                        "spec": base, "theorem": spec.theorem,
                        "chi": chi_spec, "r": r, "n_list": [1, 2, 3, 4, 5],
                        "n": 2, "c": spec.p - 1, "k": k,
                        "k2": k + (spec.p - 1), "z": str(z),
                    })
    return tasks


def _cmd_kummer(spec: RunSpec, stream) -> int:
    if spec.theorem == "classical":
        chi = parse_char_spec(spec.chi, spec.p) if spec.chi else None
        report = verify_classical_kummer(spec.p, spec.n, spec.c, spec.k, chi)
        reports = [report.to_dict()]
    elif spec.grid == "default":
        tasks = _default_grid(spec)
        if spec.jobs > 1:
            with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
                chunks = list(pool.map(_grid_worker, tasks))
        else:
            chunks = [_grid_worker(t) for t in tasks]
        reports = [r for chunk in chunks for r in chunk]
    else:
        task = {
            "spec": spec.to_dict(), "theorem": spec.theorem,
            "chi": spec.chi, "r": spec.r,
            "n_list": list(spec.n_list or ()), "n": spec.n,
            "c": spec.c, "k": spec.k, "k2": spec.k2,
            "z": spec.z,
        }
        reports = _grid_worker(task)
    doc = {
        "reports": reports,
        "total": len(reports),
        "passed": sum(1 for r in reports if r["pass"]),
        "inconclusive": sum(1 for r in reports if r["inconclusive"]),
        "failed": sum(1 for r in reports
                      if not r["pass"] and not r["inconclusive"]),
    }
    _emit(doc, stream)
    return 3 if doc["failed"] else 0


def _cmd_oracle_certify(spec: RunSpec, stream) -> int:
    cert = oracle_resolve_conventions(r_max=spec.r_max or 1)
    _emit({"certificate": cert}, stream)
    return 0


def _cmd_identity_check(spec: RunSpec, stream) -> int:
    names = list(spec.suites) if spec.suites else None
    results = run_suites(names, cases=spec.cases, seed=spec.seed)
    doc = {"suites": [r.to_dict() for r in results],
           "failures": sum(r.failures for r in results)}
    _emit(doc, stream)
    return 1 if doc["failures"] else 0


# -- argument plumbing -------------------------------------------------------


def _int_list(text: str) -> tuple:
    return tuple(int(t) for t in text.split(",") if t.strip())


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qpl",
        description="Exact p-adic q-Bernoulli and q-L-function calculator",
    )
    default_prec = int(os.environ.get(PRECISION_ENV, DEFAULT_PRECISION))
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_context_args(sp, prec_required=False):
        sp.add_argument("--p", type=int, required=True, help="prime p")
        sp.add_argument("--q", default="1+p",
                        help='q as "1+p", "1+p^m", "num/den", or integer')
        sp.add_argument("--prec", type=int, default=default_prec,
                        help="working precision in p-adic digits")
        sp.add_argument("--convention", choices=("pure_sum", "carlitz"),
                        default=None, help="k=0 reading of the series layer")

    sp = sub.add_parser("bernoulli", help="classical Bernoulli numbers")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--chi", default=None, help="character spec (generalized)")
    sp.add_argument("--p", type=int, default=None,
                    help="prime (required with --chi)")

    sp = sub.add_parser("qbernoulli", help="q-Bernoulli numbers/polynomials")
    add_context_args(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--r", type=int, default=None,
                    help="evaluate the r-fold value instead of the single")
    sp.add_argument("--z", default=None, help="polynomial argument (rational)")

    sp = sub.add_parser("lp", help="series value of the two-variable function")
    add_context_args(sp)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--chi", required=True)
    sp.add_argument("--s", required=True, help="evaluation point (rational)")
    sp.add_argument("--z", default=None)
    sp.add_argument("--F", type=int, default=None)

    sp = sub.add_parser("lp-at-r", help="value at the near-pole point s = r")
    add_context_args(sp)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--chi", required=True)
    sp.add_argument("--z", default=None)
    sp.add_argument("--F", type=int, default=None)

    sp = sub.add_parser("lp-table", help="CSV of special values over n")
    add_context_args(sp)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--chi", required=True)
    sp.add_argument("--n-max", dest="n_max", type=int, default=6)
    sp.add_argument("--z", default=None)

    sp = sub.add_parser("kummer-verify", help="congruence verification grid")
    sp.add_argument("--theorem", required=True,
                    choices=("53", "54", "binop", "classical"))
    add_context_args(sp)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--chi", default=None)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--n-list", dest="n_list", type=_int_list, default=None)
    sp.add_argument("--c", type=int, default=None)
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--k2", type=int, default=None,
                    help="second operator power (theorem 54)")
    sp.add_argument("--z", default=None)
    sp.add_argument("--grid", choices=("default",), default=None)
    sp.add_argument("--jobs", type=int, default=1)

    sp = sub.add_parser("oracle-certify",
                        help="resolve the series conventions numerically")
    sp.add_argument("--r-max", dest="r_max", type=int, default=1)

    sp = sub.add_parser("identity-check", help="run randomized invariant suites")
    sp.add_argument("--suites", type=lambda t: tuple(t.split(",")),
                    default=None, help=",".join(sorted(SUITES)))
    sp.add_argument("--cases", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)

    return parser


def _spec_from_args(args: argparse.Namespace) -> RunSpec:
    fields = RunSpec.__dataclass_fields__
    data = {k: v for k, v in vars(args).items() if k in fields and v is not None}
    return RunSpec(**data)


_COMMANDS = {
    "bernoulli": _cmd_bernoulli,
    "qbernoulli": _cmd_qbernoulli,
    "lp": _cmd_lp,
    "lp-at-r": _cmd_lp_at_r,
    "lp-table": _cmd_lp_table,
    "kummer-verify": _cmd_kummer,
    "oracle-certify": _cmd_oracle_certify,
    "identity-check": _cmd_identity_check,
}


def _validate(parser: argparse.ArgumentParser, spec: RunSpec) -> None:
    if spec.subcommand == "bernoulli":
        if spec.chi is not None and spec.p is None:
            parser.error("--chi requires --p")
        if spec.n < 0:
            parser.error("--n must be >= 0")
    if spec.subcommand == "kummer-verify":
        if spec.theorem == "classical":
            if None in (spec.n, spec.c):
                parser.error("classical verification needs --n and --c")
            if spec.k is None:
                parser.error("classical verification needs --k")
        elif spec.grid is None:
            if spec.chi is None or spec.c is None or spec.k is None:
                parser.error("need --chi, --c, --k (or --grid default)")
            if spec.z is None:
                parser.error("need --z (admissible lattice point)")
            if spec.theorem == "54" and (spec.n is None or spec.k2 is None):
                parser.error("theorem 54 needs --n and --k2")
            if spec.theorem in ("53", "binop") and spec.n_list is None:
                parser.error("theorems 53/binop need --n-list")
    if spec.subcommand in ("lp", "lp-at-r", "lp-table") and spec.prec < 1:
        parser.error("--prec must be >= 1")
    if spec.jobs is not None and spec.jobs < 1:
        parser.error("--jobs must be >= 1")


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    spec = _spec_from_args(args)
    _validate(parser, spec)
    try:
        return _COMMANDS[spec.subcommand](spec, sys.stdout)
    except QplError as exc:
        doc = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        residuals = getattr(exc, "residuals", None)
        if residuals:
            doc["error"]["residuals"] = residuals
        _emit(doc, sys.stdout)
        return 1
    except (ValueError, OverflowError) as exc:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc)}},
              sys.stdout)
        return 1


if __name__ == "__main__":
    sys.exit(main())
