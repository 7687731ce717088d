"""Command-line front end.  Every subcommand prints one JSON report.

Exit codes: 0 success, 1 domain error (failed identity, guard violation,
infeasible request), 2 usage error or malformed input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__
from ._util import EnumerationLimitError, fmt_q, parse_q, render_label
from .chains import ChainComplex, ChainError, lambda_membership_value
from .gamma import FiniteMonoid, GammaError, cyclic_group, ha_gamma_set, hb_gamma_set, UnitGammaSet
from .homotopy import DescentError, FunctorialityError, homology_gamma, pi_comb_quotient
from .simplicial import (SimplicialError, TruncatedSimplicialSet,
                         minimal_torus, point_space, sphere, standard_simplex, wedge_of_circles)
from .surfaces import (SurfaceError, build_surface, class_certificate, cyclic_cover_bound,
                       fundamental_normalized_cycle, lambda_threshold_decision, signed_pairing,
                       triangles, triangulation_cycle)
from .twosets import TwoSet, TwoSetError, classify, pi2_n, subobject_from_labels

DOMAIN_ERRORS = (SimplicialError, GammaError, TwoSetError, ChainError, SurfaceError,
                 EnumerationLimitError, DescentError, FunctorialityError, ValueError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- input handling ------------------------------------------------------------


class Inputs:
    """Reads input files once and remembers their digests for the report."""

    def __init__(self):
        self.digests: dict = {}

    def json(self, path: str):
        try:
            with open(path, "rb") as fh:
                raw = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
        self.digests[path] = hashlib.sha256(raw).hexdigest()
        try:
            return json.loads(raw.decode("utf-8"))
        except UnicodeDecodeError as exc:
            raise UsageError(f"{path}: not UTF-8 at byte {exc.start}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


BUILTIN_SPACES = {
    "sphere": lambda a: sphere(int(a or 1)),
    "simplex": lambda a: standard_simplex(int(a or 1)),
    "wedge": lambda a: wedge_of_circles(int(a or 2)),
    "torus": lambda a: minimal_torus(),
    "point": lambda a: point_space(),
}


def _schema_error(exc: Exception) -> bool:
    return "JSON" in str(exc)


def load_space(source: str, inputs: Inputs, dim_cap: int | None = None) -> TruncatedSimplicialSet:
    """A JSON file, or a built-in such as ``sphere:2``, ``wedge:2``, ``torus``, ``simplex:1``, ``point``."""
    if not os.path.exists(source):
        name, _, arg = source.partition(":")
        if name not in BUILTIN_SPACES:
            raise UsageError(f"no such file or built-in space: {source}")
        try:
            X = BUILTIN_SPACES[name](arg)
        except ValueError:
            raise UsageError(f"bad built-in space argument: {source}") from None
    else:
        data = inputs.json(source)
        if not isinstance(data, dict):
            raise UsageError(f"{source}: top-level value must be an object")
        try:
            X = TruncatedSimplicialSet.from_json(data, validate=False)
        except (SimplicialError, KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, SimplicialError) and not _schema_error(exc):
                raise
            raise UsageError(f"{source}: {exc}") from None
        X.validate()
    if dim_cap is not None and dim_cap > X.dim_cap:
        X = X.with_cap(dim_cap)
    return X


def load_coeff(source: str, inputs: Inputs):
    if source == "s":
        return UnitGammaSet()
    if source == "hb":
        return hb_gamma_set()
    if source.startswith("ha:"):
        arg = source[3:]
        if arg.startswith("Z/") and not os.path.exists(arg):
            try:
                return ha_gamma_set(cyclic_group(int(arg[2:])))
            except ValueError:
                raise UsageError(f"bad cyclic group {arg}") from None
        data = inputs.json(arg)
        try:
            return ha_gamma_set(FiniteMonoid.from_json(data, name=arg))
        except GammaError as exc:
            if _schema_error(exc):
                raise UsageError(f"{arg}: {exc}") from None
            raise
        except (TypeError, AttributeError) as exc:
            raise UsageError(f"{arg}: malformed monoid ({exc})") from None
    raise UsageError(f"unknown coefficient {source!r}; use s, hb, ha:Z/m or ha:monoid.json")


def load_twoset(path: str, inputs: Inputs) -> TwoSet:
    data = inputs.json(path)
    try:
        return TwoSet.from_json(data)
    except TwoSetError as exc:
        if _schema_error(exc):
            raise UsageError(f"{path}: {exc}") from None
        raise
    except (TypeError, AttributeError) as exc:
        raise UsageError(f"{path}: malformed 2-set ({exc})") from None


def _rational(text: str) -> Fraction:
    try:
        return parse_q(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


# -- subcommands ---------------------------------------------------------------


def cmd_homology(args, inputs: Inputs) -> dict:
    X = load_space(args.space, inputs, dim_cap=args.degree + 1)
    F = load_coeff(args.coeff, inputs)
    T = homology_gamma(X, F, args.degree, kmax=args.kmax, method=args.method)
    out = T.to_json()
    out["sizes"] = T.sizes()
    return out


def cmd_pi_comb(args, inputs: Inputs) -> dict:
    X = load_space(args.space, inputs, dim_cap=args.degree + 1)
    Q = pi_comb_quotient(X.to_levelwise(), args.degree)
    classes = Q.classes
    return {
        "size": len(classes),
        "classes": [render_label(c) for c in classes],
        "base": render_label(classes.base),
        "level_sizes": [Q.size0, Q.size1],
    }


def cmd_pi_two(args, inputs: Inputs) -> dict:
    X = load_space(args.space, inputs, dim_cap=args.degree + 1)
    T = pi2_n(X.to_levelwise(), args.degree)
    r = render_label
    return {
        "F0": [r(v) for v in T.F0],
        "F1": [r(e) for e in T.F1],
        "b0": {r(e): r(T.b0[e]) for e in T.F1},
        "b1": {r(e): r(T.b1[e]) for e in T.F1},
        "s": {r(v): r(T.s[v]) for v in T.F0},
        "base": r(T.base),
    }


def cmd_classify(args, inputs: Inputs) -> dict:
    G = load_twoset(args.twoset, inputs)
    try:
        labels = json.loads(args.sub)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--sub: malformed JSON at column {exc.colno}: {exc.msg}") from None
    if not isinstance(labels, list):
        raise UsageError("--sub must be a JSON array of labels")
    labels = [tuple(x) if isinstance(x, list) else x for x in labels]
    sub = subobject_from_labels(G, labels)
    f0, f1 = classify(G, sub)
    r = render_label
    return {
        "vertices": {r(v): f0[v] for v in G.F0},
        "edges": {r(e): f1[e] for e in G.F1},
    }


def cmd_norm(args, inputs: Inputs) -> dict:
    data = inputs.json(args.cycle)
    X = load_space(args.space, inputs)
    degree = data.get("degree") if isinstance(data, dict) else None
    if isinstance(degree, int) and degree + 1 > X.dim_cap:
        X = X.with_cap(degree + 1)
    C = ChainComplex(X.to_levelwise())
    c = C.chain_from_json(data)
    if args.mode == "l1":
        value, phi = C.l1_seminorm(c)
    else:
        value, phi = C.normalized_seminorm(c)
    out = {"mode": args.mode, "value": fmt_q(value), "witness": phi.to_json()}
    if args.lam is not None:
        member, total = lambda_membership_value(C, [c], args.lam) if args.mode == "nor" else (value < args.lam, value)
        out["lambda"] = fmt_q(args.lam)
        out["below_lambda"] = member
    return out


def cmd_surface(args, inputs: Inputs) -> dict:
    g = args.genus
    M = build_surface(g)
    C = M.complex
    c = fundamental_normalized_cycle(M)
    faces_zero = all(C.face(c, j).is_zero() for j in range(3))
    bounds = [{"n": n, "bound": fmt_q(cyclic_cover_bound(g, n))} for n in (1, 2, 4, 8)]
    out = {
        "genus": g,
        "norm_l1": fmt_q(c.norm()),
        "boundaries_zero": faces_zero,
        "class_multiplicity": 8,
        "signed_pairing": fmt_q(sum(signed_pairing(c, t) for t in triangles(M))),
        "upper_bounds": bounds,
        "witnesses": {},
    }
    if args.check_class:
        per = []
        for tri in triangles(M):
            cert = class_certificate(M, tri[1], tri[2])
            per.append({
                "triangle": list(tri),
                "literal_certificate": cert.literal_found,
                "literal_supports_tried": cert.literal_supports_tried,
                "corrected_certificate": cert.psi is not None,
                "support": cert.psi_support,
                "psi": cert.psi.to_json() if cert.psi is not None else None,
            })
        t, pairs, cyc = triangulation_cycle(M)
        psi = C.boundary_certificate(c - cyc.scale(8))
        out["witnesses"] = {
            "triangles": per,
            "reversed_pairs": [[render_label(a), render_label(b), fmt_q(v)] for a, b, v in pairs],
            "fundamental_minus_8t_is_boundary": psi is not None,
        }
    if args.lam is not None:
        lp_value = None
        if args.lp:
            lp_value, _ = C.normalized_seminorm(c.scale(Fraction(1, 8)))
            out["lp_normalized_seminorm"] = fmt_q(lp_value)
        d = lambda_threshold_decision(g, args.lam, args.nmax, lp_value=lp_value)
        out["decision"] = {
            "value": d.decision,
            "lambda": fmt_q(d.lam),
            "upper_bound": fmt_q(d.upper_bound),
            "upper_source": d.upper_source,
            "lower_bound": fmt_q(d.lower_bound),
            "lower_source": "cited bound, not computed",
            "explanation": d.explanation,
        }
    return out


def cmd_validate(args, inputs: Inputs) -> dict:
    out = {}
    if args.space:
        X = load_space(args.space, inputs)
        out["space"] = {"ok": True, "dim_cap": X.dim_cap,
                        "sizes": X.to_levelwise().sizes()}
    if args.twoset:
        T = load_twoset(args.twoset, inputs)
        out["twoset"] = {"ok": True, "vertices": len(T.F0), "edges": len(T.F1)}
    if args.monoid:
        load_coeff("ha:" + args.monoid, inputs)
        out["monoid"] = {"ok": True}
    if not out:
        raise UsageError("validate needs --space, --twoset or --monoid")
    return out


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gammahom", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--out", help="write the report to this file instead of stdout")
        sp.add_argument("--timing", action="store_true", help="include wall-clock timing (not reproducible)")
        return sp

    sp = add("homology", cmd_homology, "homology Γ-set H_n(X, F) on arities <= kmax")
    sp.add_argument("--space", required=True)
    sp.add_argument("--coeff", required=True, help="s, hb, ha:Z/m or ha:monoid.json")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--kmax", type=int, default=3)
    sp.add_argument("--method", choices=["auto", "direct", "segal"], default="auto")

    sp = add("pi-comb", cmd_pi_comb, "combinatorial homotopy set π^comb_n")
    sp.add_argument("--space", required=True)
    sp.add_argument("--degree", type=int, required=True)

    sp = add("pi-two", cmd_pi_two, "the 2-set built from Ω^n X")
    sp.add_argument("--space", required=True)
    sp.add_argument("--degree", type=int, required=True)

    sp = add("classify", cmd_classify, "classifying map of a sub-2-set")
    sp.add_argument("--twoset", required=True)
    sp.add_argument("--sub", required=True, help="JSON array of vertex and edge labels")

    sp = add("norm", cmd_norm, "ℓ¹ or normalized seminorm of a cycle by exact LP")
    sp.add_argument("--space", required=True)
    sp.add_argument("--cycle", required=True)
    sp.add_argument("--mode", choices=["l1", "nor"], default="nor")
    sp.add_argument("--lambda", dest="lam", type=_rational)

    sp = add("surface", cmd_surface, "genus-g surface cycle, certificates and λ decision")
    sp.add_argument("--genus", type=int, required=True)
    sp.add_argument("--check-class", action="store_true")
    sp.add_argument("--lambda", dest="lam", type=_rational)
    sp.add_argument("--nmax", type=int, default=1000)
    sp.add_argument("--lp", action="store_true", help="also use the LP seminorm of c/8 as an upper bound")

    sp = add("validate", cmd_validate, "load and check input files")
    sp.add_argument("--space")
    sp.add_argument("--twoset")
    sp.add_argument("--monoid")
    return p


def _normalized_argv(args) -> list:
    echo = [args.command]
    for key, val in sorted(vars(args).items()):
        if key in ("func", "command", "out", "timing") or val is None or val is False:
            continue
        flag = "lambda" if key == "lam" else key.replace("_", "-")
        echo.append(f"--{flag}" + ("" if val is True else f"={fmt_q(val) if isinstance(val, Fraction) else val}"))
    return echo


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("a subcommand is required")
        inputs = Inputs()
        t0 = time.perf_counter()
        results = args.func(args, inputs)
        elapsed = time.perf_counter() - t0
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except EnumerationLimitError as exc:
        print(f"error: {exc} (what={exc.what}, size={exc.size}, limit={exc.limit})", file=stderr)
        return 1
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    report = {
        "command": _normalized_argv(args),
        "inputs": dict(sorted(inputs.digests.items())),
        "results": results,
        "version": __version__,
    }
    if args.timing:
        report["timing_seconds"] = round(elapsed, 3)
    text = json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc.strerror}", file=stderr)
            return 2
    else:
        stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())
