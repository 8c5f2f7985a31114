"""``epstein`` command line: eval, verify and bench."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from typing import Sequence

from .eichler_integrals import theorem2_epstein
from .epstein_core import (
    METHODS,
    EvalResult,
    epstein_fourier,
    epstein_lattice_oracle,
    epstein_levelN,
    epstein_ramanujan_level1,
    epstein_ramanujan_level4,
)
from .errors import DomainError, PrecisionError
from .quadrature import QuadratureSpec

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_DOMAIN, EXIT_PRECISION, EXIT_USAGE = 0, 1, 2, 3, 64
TOL_RANGE = (1e-13, 1e-4)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(EXIT_USAGE)


def parse_complex(text: str) -> complex:
    """Parse ``a+bi``, ``bi``, ``a`` or bare ``i``; whitespace is ignored."""
    t = re.sub(r"\s+", "", text)
    if not t:
        raise argparse.ArgumentTypeError("empty complex literal")
    if t.endswith("i"):
        body = t[:-1]
        # "i", "+i", "-i", "2+i", "2-i" need an explicit unit coefficient
        if body == "" or body[-1] in "+-":
            body += "1"
        t = body + "j"
    try:
        return complex(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse complex value {text!r}") from None


def _tol(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid tolerance {text!r}") from None
    if not (TOL_RANGE[0] <= v <= TOL_RANGE[1]):
        raise argparse.ArgumentTypeError(f"tol must lie in [{TOL_RANGE[0]:g}, {TOL_RANGE[1]:g}]")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="epstein", description="Epstein zeta values and identity checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--tol", type=_tol, default=None)
        p.add_argument("--format", choices=("json", "csv", "text"), default="text")
        p.add_argument("--seed", type=int, default=0)

    ev = sub.add_parser("eval", help="evaluate E^{Gamma_0(N)}(z, s)")
    ev.add_argument("--z", type=parse_complex, required=True)
    ev.add_argument("--s", type=int, required=True)
    ev.add_argument("--N", type=int, default=1)
    ev.add_argument("--method", choices=METHODS, default="fourier")
    ev.add_argument("--radius", type=int, default=200)
    common(ev)

    ver = sub.add_parser("verify", help="run the identity registry")
    ver.add_argument("--only", default=None)
    common(ver)

    be = sub.add_parser("bench", help="convergence tables")
    common(be)
    return parser


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    # "--z -0.5+0.7i" would otherwise be read as an unknown flag.
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in ("--z", "--tol"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------


def evaluate(z: complex, s: int, N: int, method: str, radius: int = 200, tol: float | None = None) -> EvalResult:
    """``E^{Gamma_0(N)}(z, s)`` by the named method.

    The level-4 methods are stated at ``-1/(4w)``; they are called with
    ``w = -1/(4z)`` so the result always refers to ``z``.
    """
    if N < 1:
        raise DomainError("level N must be >= 1")
    if method == "mobius":
        return epstein_levelN(z, s, N)
    if method in ("ramanujan4", "eichler"):
        if N != 4:
            raise DomainError(f"method {method} evaluates level 4 only")
        w = -1.0 / (4.0 * z)
        if method == "ramanujan4":
            return epstein_ramanujan_level4(w, s - 1)
        spec = QuadratureSpec(tol=tol) if tol is not None else QuadratureSpec()
        return theorem2_epstein(w, s, spec)
    if N != 1:
        raise DomainError(f"method {method} evaluates level 1 only; use mobius for N > 1")
    if method == "lattice":
        return epstein_lattice_oracle(z, s, radius)
    if method == "ramanujan1":
        return epstein_ramanujan_level1(z, s - 1)
    return epstein_fourier(z, s)


def _eval_rows(args) -> list[dict]:
    r = evaluate(args.z, args.s, args.N, args.method, args.radius, args.tol)
    if args.tol is not None and r.err_estimate > args.tol:
        raise PrecisionError(f"err_estimate {r.err_estimate:.3g} above tol {args.tol:g}")
    return [
        {
            "id": "eval",
            "z": f"{args.z.real:g}{args.z.imag:+g}i",
            "s": args.s,
            "N": args.N,
            "method": r.method,
            "value": r.value,
            "err_estimate": r.err_estimate,
            "work": r.work,
        }
    ]


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _use_color(stream) -> bool:
    return "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


def render(command: str, rows: list[dict], fmt: str, extra: dict | None = None, stream=None) -> str:
    stream = stream or sys.stdout
    if fmt == "json":
        doc = {"schema": SCHEMA, "command": command, "results": rows}
        if extra:
            doc.update(extra)
        return json.dumps(doc, indent=2, sort_keys=False)
    if fmt == "csv":
        buf = io.StringIO()
        if rows:
            w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
        if extra:
            for k, v in extra.get("fits", {}).items():
                buf.write(f"# {k},{v!r}\n")
        return buf.getvalue().rstrip("\n")
    color = _use_color(stream)
    lines = []
    for row in rows:
        if "pass" in row:
            tag = "PASS" if row["pass"] else "FAIL"
            if color:
                tag = f"\033[32m{tag}\033[0m" if row["pass"] else f"\033[31m{tag}\033[0m"
            lines.append(f"{tag}  {row['id']:<30} residual={row['residual']:.3e} tol={row['tol']:.1e}")
        else:
            lines.append("  ".join(f"{k}={v}" for k, v in row.items()))
    if extra:
        for k, v in extra.get("fits", {}).items():
            lines.append(f"{k}={v:.6g}")
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(_join_negative_values(argv))
    try:
        if args.command == "eval":
            rows = _eval_rows(args)
            print(render("eval", rows, args.format))
            return EXIT_OK
        if args.command == "verify":
            from .verify import run_verify

            try:
                results = run_verify(args.only, args.tol, args.seed)
            except KeyError:
                parser.error(f"unknown identity id {args.only!r}")
            rows = [r.as_dict() for r in results]
            print(render("verify", rows, args.format))
            return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL
        from .bench import run_bench

        out = run_bench(args.seed)
        print(render("bench", out["rows"], args.format, {"fits": out["fits"]}))
        return EXIT_OK
    except DomainError as exc:
        print(f"epstein: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except PrecisionError as exc:
        print(f"epstein: precision failure: {exc}", file=sys.stderr)
        return EXIT_PRECISION


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
