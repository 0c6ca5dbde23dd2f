"""Command line front end: problem files, subcommands and JSON output."""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Sequence

from .ehrhart import EhrhartResult, generalized_ehrhart_series
from .genseries import _poly_str
from .integrate import integrate_over_polytope
from .mpoly import PolynomialSyntaxError, parse_factors
from .oracle import DEFAULT_BUDGET, BudgetExceeded, ConeOracle
from .polyhedra import ConeInput

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BUDGET = 3


class ProblemFormatError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass
class ProblemFile:
    cone: ConeInput
    tags: set[str] = field(default_factory=set)
    polynomial_text: str = "1"


def _int_row(text: str, lineno: int, n: int | None) -> list[int]:
    vals = []
    for m in re.finditer(r"\S+", text):
        try:
            vals.append(int(m.group()))
        except ValueError:
            raise ProblemFormatError(
                f"expected an integer, got {m.group()!r}", lineno, m.start() + 1
            ) from None
    if n is not None and len(vals) != n:
        raise ProblemFormatError(f"expected {n} integers, got {len(vals)}", lineno)
    return vals


def parse_problem(text: str) -> ProblemFile:
    """Parse the line-oriented problem format (``#`` starts a comment)."""
    lines = []
    for i, raw in enumerate(text.splitlines(), start=1):
        s = raw.split("#", 1)[0].rstrip()
        if s.strip():
            lines.append((i, s))
    pos = 0

    def need_line(what: str, after: int):
        nonlocal pos
        if pos >= len(lines):
            raise ProblemFormatError(f"missing {what}", after)
        item = lines[pos]
        pos += 1
        return item

    n = None
    rays = ineqs = lattice = grading = None
    poly_text, poly_line, poly_col = "1", 0, 1
    tags: set[str] = set()
    while pos < len(lines):
        lineno, s = lines[pos]
        pos += 1
        words = s.split()
        key = words[0]
        if key == "ambient_dim":
            if len(words) != 2 or not words[1].isdigit() or int(words[1]) < 1:
                raise ProblemFormatError("ambient_dim needs a positive integer", lineno)
            n = int(words[1])
        elif key in ("rays", "inequalities", "lattice"):
            if n is None:
                raise ProblemFormatError(f"{key} before ambient_dim", lineno)
            if len(words) != 2 or not words[1].isdigit():
                raise ProblemFormatError(f"{key} needs a row count", lineno)
            rows = []
            for _ in range(int(words[1])):
                ln, row = need_line(f"{key} row", lineno)
                rows.append(_int_row(row, ln, n))
            if key == "rays":
                rays = rows
            elif key == "inequalities":
                ineqs = rows
            else:
                lattice = rows
        elif key == "grading":
            if n is None:
                raise ProblemFormatError("grading before ambient_dim", lineno)
            rest = s.split(None, 1)[1] if len(words) > 1 else None
            if rest is None:
                ln, rest = need_line("grading row", lineno)
            else:
                ln = lineno
            grading = _int_row(rest, ln, n)
        elif key == "polynomial":
            rest = s.split(None, 1)[1] if len(words) > 1 else None
            if rest is None:
                poly_line, poly_text = need_line("polynomial line", lineno)
                poly_col = 1
            else:
                poly_line = lineno
                poly_text = rest
                poly_col = s.index(rest) + 1
        elif key == "compute":
            tags.update(words[1:])
        else:
            raise ProblemFormatError(f"unknown keyword {key!r}", lineno)
    if n is None:
        raise ProblemFormatError("missing ambient_dim", 1)
    if (rays is None) == (ineqs is None):
        raise ProblemFormatError("exactly one of 'rays' and 'inequalities' is required", 1)
    if grading is None:
        raise ProblemFormatError("missing grading", 1)
    try:
        factors = parse_factors(poly_text, n)
    except PolynomialSyntaxError as e:
        raise ProblemFormatError(str(e).rsplit(" at position", 1)[0], poly_line,
                                 poly_col + e.pos) from None
    kw = dict(weight_factors=tuple(factors), lattice=lattice)
    if ineqs is not None:
        cone = ConeInput.from_inequalities(n, ineqs, grading, **kw)
    else:
        cone = ConeInput(n, tuple(map(tuple, rays)), tuple(grading), **kw)
    return ProblemFile(cone, tags, poly_text.strip())


def corpus_names() -> list[str]:
    root = resources.files("genehrhart") / "corpus"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".in"))


def load_problem(path: str) -> ProblemFile:
    """Read a problem file; bare names fall back to the shipped corpus."""
    p = Path(path)
    if p.exists():
        text = p.read_text(encoding="utf-8")
    else:
        res = resources.files("genehrhart") / "corpus" / p.name
        if not res.is_file():
            raise FileNotFoundError(f"no such problem file: {path}")
        text = res.read_text(encoding="utf-8")
    return parse_problem(text)


# ---------------------------------------------------------------------------
# output


def q(x: Fraction | int | None) -> str | None:
    """Exact rational as a decimal string ``p/q`` (or ``p`` for integers)."""
    return None if x is None else str(Fraction(x))


def result_to_json(res: EhrhartResult, integral: Fraction | None = None) -> dict:
    out = {
        "series": {
            "numerator": [[i, q(c)] for i, c in enumerate(res.series.numerator) if c],
            "denominator": [[u, e] for u, e in res.series.denominator],
        },
        "quasipolynomial": {
            "period": res.quasi.period,
            "ell": res.quasi.ell,
            "components": [[q(c) for c in comp] for comp in res.quasi.components],
        },
        "expected_degree": res.expected_degree,
        "leading": q(res.leading),
        "leading_by_residue": [q(c) for c in res.leading_by_residue],
        "vmult": q(res.vmult),
        "grading_gcd": res.grading_gcd,
        "rank": res.rank,
    }
    if integral is not None:
        out["integral"] = q(integral)
    return out


def _format_series(res: EhrhartResult, integral) -> str:
    lines = [f"series: {res.series}"]
    lines.append(f"quasipolynomial: period {res.quasi.period} (divides {res.quasi.ell})")
    for j, comp in enumerate(res.quasi.components):
        lines.append(f"  q^({j})(k) = {_poly_str(comp, 'k')}")
    lines.append(f"expected degree: {res.expected_degree}")
    if res.leading is None:
        per = ", ".join(q(c) for c in res.leading_by_residue)
        lines.append(f"virtual leading coefficient: differs by residue class ({per})")
    else:
        lines.append(f"virtual leading coefficient: {q(res.leading)}")
        lines.append(f"virtual multiplicity: {q(res.vmult)}")
    if res.grading_gcd != 1:
        lines.append(f"warning: grading gcd on the lattice is {res.grading_gcd}")
    if integral is not None:
        lines.append(f"integral of top component: {q(integral)}")
    return "\n".join(lines)


def _dump(obj, args) -> None:
    if args.json:
        sys.stdout.write(json.dumps(obj, indent=1, sort_keys=True) + "\n")


def _cmd_series(args) -> int:
    prob = load_problem(args.file)
    res = generalized_ehrhart_series(prob.cone, threads=args.threads)
    integral = None
    if args.integral or "integral" in prob.tags:
        integral = integrate_over_polytope(prob.cone)
    if args.json:
        _dump(result_to_json(res, integral), args)
    else:
        print(_format_series(res, integral))
    return EXIT_OK


def _cmd_integrate(args) -> int:
    prob = load_problem(args.file)
    val = integrate_over_polytope(prob.cone, top_only=not args.full)
    if args.json:
        _dump({"integral": q(val)}, args)
    else:
        print(q(val))
    return EXIT_OK


def _cmd_rays(args) -> int:
    prob = load_problem(args.file)
    rays = [list(r) for r in prob.cone.rays]
    if args.json:
        _dump({"rays": rays}, args)
    else:
        for r in rays:
            print(" ".join(str(x) for x in r))
    return EXIT_OK


def _cmd_oracle(args) -> int:
    prob = load_problem(args.file)
    orc = ConeOracle(prob.cone, budget=args.budget)
    counts = [orc.weighted_count(k) for k in range(args.degree + 1)]
    if args.json:
        _dump({"counts": [q(c) for c in counts]}, args)
    else:
        print(", ".join(q(c) for c in counts))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="genehrhart",
        description="Weighted Ehrhart series, quasipolynomials and polytope integrals.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("file", help="problem file (or name of a shipped corpus file)")
        sp.add_argument("--json", action="store_true", help="emit JSON")

    sp = sub.add_parser("series", help="generalized Ehrhart series and quasipolynomial")
    common(sp)
    sp.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                    help="worker processes (default: all cores)")
    sp.add_argument("--integral", action="store_true",
                    help="also integrate the top component over the polytope")
    sp.set_defaults(func=_cmd_series)

    sp = sub.add_parser("integrate", help="integral of the weight's top component")
    common(sp)
    sp.add_argument("--full", action="store_true", help="integrate the whole weight")
    sp.add_argument("--threads", type=int, default=1, help=argparse.SUPPRESS)
    sp.set_defaults(func=_cmd_integrate)

    sp = sub.add_parser("rays", help="extreme rays of the cone")
    common(sp)
    sp.set_defaults(func=_cmd_rays)

    sp = sub.add_parser("oracle", help="brute-force weighted counts for degrees 0..K")
    common(sp)
    sp.add_argument("--degree", type=int, required=True, metavar="K")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                    help="maximum candidate scans per degree")
    sp.set_defaults(func=_cmd_oracle)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as e:
        print(f"genehrhart.oracle: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ProblemFormatError as e:
        print(f"{args.file}: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, ValueError) as e:
        where = type(e).__module__
        where = where if where.startswith("genehrhart") else "genehrhart"
        print(f"{where}: {e}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
