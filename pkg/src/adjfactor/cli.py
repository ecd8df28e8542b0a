"""Command line front end.

Exit codes: 0 success, 1 parse or I/O error, 2 input outside the supported
hypotheses (or characteristic too small), 3 no separating section found,
4 internal verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .absolute import AbsoluteFactorization
from .adjoint import LocalData, adjoint_basis, read_aspace
from .errors import (AlgebraError, CharacteristicTooSmall, HprimeViolated, HypothesisError,
                     ParseError, RetryExhausted, UnsupportedField, VerificationFailed)
from .fields import ExtField, parse_field
from .parse import format_bipoly, parse_bipoly
from .pipeline import analyze, factor_absolute, factor_rational

EXIT_OK, EXIT_INPUT, EXIT_UNSUPPORTED, EXIT_RETRY, EXIT_INTERNAL = 0, 1, 2, 3, 4


def _scalar_json(K, c):
    if isinstance(K, ExtField):
        return [_scalar_json(K.base, b) for b in c]
    if isinstance(c, Fraction):
        return str(c)
    return int(c)


def _bipoly_json(F):
    K = F.field
    return [[i, j, _scalar_json(K, c)] for (i, j), c in sorted(F.terms().items(), key=lambda t: (-t[0][1], -t[0][0]))]


def _unipoly_json(f):
    K = f.field
    return [_scalar_json(K, c) for c in f.coeffs]


def _emit(out, args, records, lines):
    if args.json:
        for r in records:
            out.write(json.dumps(r, separators=(",", ":")) + "\n")
    else:
        for line in lines:
            out.write(line + "\n")


def _read_input(args) -> str:
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            return fh.read().strip()
    if args.poly is None or args.poly == "-":
        return sys.stdin.read().strip()
    return args.poly


def _load_A(args, K, d):
    if not args.adjoint_basis:
        return None
    with open(args.adjoint_basis, encoding="utf-8") as fh:
        return read_aspace(fh.read(), K, d)


def cmd_factor(args, K, F, out):
    A = _load_A(args, K, F.total_degree)
    if args.absolute:
        res: AbsoluteFactorization = factor_absolute(F, A, args.seed, args.trunc)
        recs = [{"unit": _scalar_json(K, res.unit)}]
        for q, Q in res.pairs:
            recs.append({"q": _unipoly_json(q), "Q": _bipoly_json(Q)})
        _emit(out, args, recs, res.lines())
        return EXIT_OK
    unit, factors = factor_rational(F, A, args.seed, args.trunc)
    recs = [{"unit": _scalar_json(K, unit)}] + [{"factor": _bipoly_json(G)} for G in factors]
    lines = [f"unit: {K.fmt(unit)}"] + [f"factor: {format_bipoly(G)}" for G in factors]
    _emit(out, args, recs, lines)
    return EXIT_OK


def cmd_analyze(args, K, F, out):
    A = _load_A(args, K, F.total_degree)
    an = analyze(F, A, args.seed, args.trunc)
    rec = {k: getattr(an, k) for k in ("d", "n", "s", "sbar", "dimA", "genus_report", "hypothesis")}
    _emit(out, args, [rec], [an.line()])
    return EXIT_OK


def cmd_adjoints(args, K, F, out):
    d = F.total_degree
    m = d - 2 if args.degree is None else args.degree
    basis = adjoint_basis(F, m, LocalData.compute(F, args.seed, args.trunc))
    polys = basis.polys()
    _emit(out, args, [{"adjoint": _bipoly_json(H)} for H in polys],
          [f"adjoint: {format_bipoly(H)}" for H in polys])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="adjfactor", description="Bivariate factorization via adjoint polynomials.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("poly", nargs="?", help="polynomial in x, y (or '-' for stdin)")
        sp.add_argument("--file", help="read the polynomial from a file")
        sp.add_argument("--field", default="q", help="'q' or 'fp:P' (default q)")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--json", action="store_true", help="one JSON record per line")
        sp.add_argument("--trunc", type=int, default=None, help="initial Puiseux truncation order")

    f = sub.add_parser("factor", help="factor over the base field or its algebraic closure")
    common(f)
    mode = f.add_mutually_exclusive_group()
    mode.add_argument("--rational", action="store_true", help="factor over the base field (default)")
    mode.add_argument("--absolute", action="store_true", help="factor over the algebraic closure")
    f.add_argument("--adjoint-basis", metavar="FILE", help="precomputed basis of A, one polynomial in y per line")
    f.set_defaults(func=cmd_factor)

    a = sub.add_parser("analyze", help="report d, n, s, sbar, dim A and dim Adj(d-3)")
    common(a)
    a.add_argument("--adjoint-basis", metavar="FILE")
    a.set_defaults(func=cmd_analyze)

    j = sub.add_parser("adjoints", help="basis of the adjoint polynomials of degree <= m")
    common(j)
    j.add_argument("--degree", type=int, default=None, help="m (default d-2)")
    j.set_defaults(func=cmd_adjoints)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        K = parse_field(args.field)
        F = parse_bipoly(_read_input(args), K)
        return args.func(args, K, F, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (HypothesisError, HprimeViolated) as exc:
        pts = ", ".join(exc.points)
        print(f"unsupported: {exc}" + (f" [points: {pts}]" if pts else ""), file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (CharacteristicTooSmall, UnsupportedField) as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except RetryExhausted as exc:
        print(f"retry exhausted: {exc}", file=sys.stderr)
        return EXIT_RETRY
    except VerificationFailed as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except AlgebraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
