"""Command line interface: ``gammagerbe <command> ...``."""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import bernoulli as B
from . import hermitian as H
from . import lattice as L
from . import special as S
from . import wedge as W
from .checker import ConfigError, UnknownCheck, default_jobs, load_config, run_all, run_check
from .checks import REGISTRY

_COMPLEX_RE = re.compile(r"\s+")


def parse_complex(text: str) -> complex:
    """Accept ``1.5``, ``2i``, ``0.3+0.8i``, ``-1e-2-3j``."""
    t = _COMPLEX_RE.sub("", text).replace("i", "j")
    if t.endswith("j") and t[:-1] in ("", "+", "-"):
        t = t[:-1] + "1j"
    try:
        return complex(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def parse_int_vector(text: str) -> tuple[int, int, int]:
    try:
        v = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer triple: {text!r}") from None
    if len(v) != 3:
        raise argparse.ArgumentTypeError(f"expected three entries: {text!r}")
    return v  # type: ignore[return-value]


def parse_complex_vector(text: str) -> list[complex]:
    return [parse_complex(p) for p in text.split(",")]


def _cnum(z: complex) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


# --------------------------------------------------------------------------
# eval

def _eval(args) -> int:
    fn = args.function
    bound = None
    if fn == "theta":
        value, bound = S.theta0(args.z, args.tau, full_output=True)
    elif fn == "gamma":
        value, bound = S.elliptic_gamma(args.z, args.tau, args.sigma, full_output=True)
    elif fn == "multiple-gamma":
        value, bound = S.multiple_gamma(args.n, args.z, args.taus, full_output=True)
    elif fn == "h2":
        value = H.h2(args.z, args.tau)
    elif fn == "h3":
        value = H.h3(args.z, args.tau, args.sigma)
    elif fn == "wedge-gamma":
        _check_x(args.x)
        value, bound = 1 + 0j, 0.0
        W.wedge_gamma(args.a, args.b, args.w, args.x)  # domain checks
        if args.a != args.b:
            for z, tau, sigma in W.wedge_gamma_factors(args.a, args.b, args.w, args.x):
                v, b = S.elliptic_gamma(z, tau, sigma, full_output=True)
                value *= v
                bound += b
    elif fn == "h-ab":
        _check_x(args.x)
        value = H.h_ab(args.a, args.b, args.w, args.x)
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(fn)
    out = _cnum(value)
    out["tail_bound"] = bound
    _emit(out)
    return 0


def _check_x(x) -> None:
    if len(x) != 3:
        raise ValueError("--x needs three complex entries")


def _add_eval(sub) -> None:
    p = sub.add_parser("eval", help="evaluate a special function")
    fs = p.add_subparsers(dest="function", required=True)

    def zt(q, sigma=False):
        q.add_argument("--z", type=parse_complex, required=True)
        q.add_argument("--tau", type=parse_complex, required=True)
        if sigma:
            q.add_argument("--sigma", type=parse_complex, required=True)

    zt(fs.add_parser("theta", help="theta0(z, tau)"))
    zt(fs.add_parser("gamma", help="elliptic gamma(z, tau, sigma)"), sigma=True)
    q = fs.add_parser("multiple-gamma", help="G_n(z, tau_0..tau_n)")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--z", type=parse_complex, required=True)
    q.add_argument("--taus", type=parse_complex_vector, required=True)
    zt(fs.add_parser("h2", help="hermitian metric h2(z, tau)"))
    zt(fs.add_parser("h3", help="hermitian metric h3(z, tau, sigma)"), sigma=True)
    for name in ("wedge-gamma", "h-ab"):
        q = fs.add_parser(name, help=f"{name} of a wedge at (w, x)")
        q.add_argument("--a", type=parse_int_vector, required=True)
        q.add_argument("--b", type=parse_int_vector, required=True)
        q.add_argument("--w", type=parse_complex, required=True)
        q.add_argument("--x", type=parse_complex_vector, required=True)
    p.set_defaults(func=_eval)


# --------------------------------------------------------------------------
# lattice and polynomial queries

def _wedge_info(args) -> int:
    wd = L.Wedge(args.a, args.b)
    nf = wd.normal_form
    out = {
        "a": list(wd.a), "b": list(wd.b),
        "gamma": None if wd.gamma is None else list(wd.gamma),
        "modulus": wd.modulus,
        "normal_form": {"kind": nf.kind, "r": nf.r, "s": nf.s, "g": [list(r) for r in nf.g]},
    }
    if wd.general:
        al, be = wd.complements
        out["alpha"], out["beta"] = list(al), list(be)
        out["fundamental_set"] = [list(d) for d in wd.fundamental_set]
    _emit(out)
    return 0


def _normal_form(args) -> int:
    nf = L.normal_form(args.a, args.b)
    _emit({"kind": nf.kind, "r": nf.r, "s": nf.s, "g": [list(r) for r in nf.g],
           "g_a": list(L.apply(nf.g, args.a)), "g_b": list(L.apply(nf.g, args.b))})
    return 0


def _bernoulli(args) -> int:
    p = B.multi_bernoulli(args.r, args.n)
    if args.format == "json":
        _emit({"r": args.r, "n": args.n, "terms": p.to_table()})
    else:
        print(_poly_text(p))
    return 0


def _poly_text(p: B.MultiBernoulli) -> str:
    names = ["w"] + [f"x{i + 1}" for i in range(p.r)]
    parts = []
    for m, c in sorted(p.coefficients.items(), reverse=True):
        mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e)
        parts.append(f"({c})" + (f"*{mono}" if mono else ""))
    return " + ".join(parts) if parts else "0"


# --------------------------------------------------------------------------
# checks

def _check(args) -> int:
    rep = run_check(args.name, args.samples, args.seed, args.tol, args.jobs)
    _emit(rep.to_dict())
    return 0 if rep.passed else 1


def _check_all(args) -> int:
    if args.list:
        for spec in REGISTRY.values():
            print(f"{spec.name:28s} samples={spec.samples:<4d} tol={spec.tol:<8.0e} {spec.description}")
        return 0
    cfg = load_config(args.config)
    reports = run_all(cfg, args.seed, args.samples, args.only, args.jobs)
    _emit([r.to_dict() for r in reports])
    bad = [r for r in reports if not r.passed]
    for r in reports:
        print(f"{r.status:12s} {r.identity:28s} max_rel={r.max_rel_dev:.2e}", file=sys.stderr)
    print(f"{len(reports) - len(bad)}/{len(reports)} checks passed", file=sys.stderr)
    return 0 if not bad else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gammagerbe",
                                     description="Elliptic gamma functions of wedges and their identities")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_eval(sub)

    for name, func, help_ in (("wedge-info", _wedge_info, "invariants of a wedge"),
                              ("normal-form", _normal_form, "SL(3,Z) normal form of a wedge")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--a", type=parse_int_vector, required=True)
        p.add_argument("--b", type=parse_int_vector, required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("bernoulli", help="multiple Bernoulli polynomial B_{r,n}")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=_bernoulli)

    p = sub.add_parser("check", help="run one identity check")
    p.add_argument("name")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float)
    p.add_argument("--jobs", type=int, default=default_jobs())
    p.set_defaults(func=_check)

    p = sub.add_parser("check-all", help="run every registered check")
    p.add_argument("--config", help="JSON file of per-identity overrides {name: {samples, tol}}")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int)
    p.add_argument("--only", nargs="+", metavar="NAME")
    p.add_argument("--list", action="store_true", help="list registered checks and exit")
    p.add_argument("--jobs", type=int, default=default_jobs())
    p.set_defaults(func=_check_all)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnknownCheck as e:
        print(f"error: unknown check {e.args[0]!r}; see check-all --list", file=sys.stderr)
        return 2
    except (ConfigError, ValueError, ArithmeticError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
