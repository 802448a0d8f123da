"""Command-line front end.

    cubehit formula -n 3 -x 110 --target adjacent
    cubehit solve   -n 2 -a 00 -b 01 -x 10 --method exact
    cubehit chain   -n 3 --kind adjacent --show u
    cubehit mc      -n 4 -a 0000 -b 0001 -x 1110 --trials 1000000 --seed 7
    cubehit dist    -n 3 -N 1 --variant simple --source formula
    cubehit compare -n 8 --suite adjacent

Every command accepts ``--format text|csv|json``, ``--output PATH`` and
``--exact/--no-exact``. Vertices are bit strings with ``x_1`` leftmost.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from datetime import datetime, timezone
from fractions import Fraction
from math import comb

from . import chain as chainmod
from .closed_form import adjacent_hitting_probability, antipodal_hitting_probability, u_sequence
from .cube import MAX_DIMENSION, Vertex, all_vertices, parse_vertex
from .mc import (
    MATRIX_MAX_DIMENSION,
    MATRIX_MAX_TIME,
    VARIANTS,
    empirical_occupation,
    occupation_formula,
    occupation_formula_distribution,
    occupation_matrix_power,
    simulate_hitting,
)
from .network import (
    EXACT_MAX_DIMENSION,
    FLOAT_MAX_DIMENSION,
    HittingProblem,
    boundary_value,
    solve_exact,
    solve_float,
)
from .report import FORMATS, Envelope, decimal, render

OCCUPATION_TOLERANCE = 1e-10
NORMALIZATION_TOLERANCE = 1e-12
TIME_CAP = 10_000


class CLIError(Exception):
    """User-facing failure; reported as one line with a nonzero exit."""


class CheckFailed(Exception):
    """A compare suite found a disagreement; the envelope is still printed."""

    def __init__(self, env: Envelope, message: str):
        super().__init__(message)
        self.env = env


def _dimension(n: int, cap: int = MAX_DIMENSION, what: str = "dimension") -> int:
    if not 1 <= n <= cap:
        raise CLIError(f"{what} cap is 1 <= n <= {cap}, got n={n}")
    return n


def _vertex(s: str, n: int, flag: str) -> Vertex:
    try:
        return parse_vertex(s, n)
    except ValueError as exc:
        raise CLIError(f"{flag} {s!r}: {exc}") from None


def _default_seed() -> int:
    raw = os.environ.get("CUBEHIT_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise CLIError(f"CUBEHIT_SEED must be an integer, got {raw!r}") from None


def _single_value_text(env: Envelope) -> list[str]:
    return [env.fmt(r["value"]) for r in env.results]


def _sequence_text(env: Envelope) -> list[str]:
    return [", ".join(env.fmt(r["value"]) for r in env.results)]


# ---------------------------------------------------------------------------


def cmd_formula(args) -> Envelope:
    n = _dimension(args.n)
    x = _vertex(args.x, n, "-x")
    exact = True if args.exact is None else args.exact
    if args.target == "adjacent":
        value = adjacent_hitting_probability(n, x)
    else:
        value = antipodal_hitting_probability(n, x)
    return Envelope(
        "formula",
        {"n": n, "x": str(x), "target": args.target},
        ["vertex", "target", "value", "decimal"],
        [{"vertex": str(x), "target": args.target, "value": value, "decimal": decimal(value)}],
        exact,
        text=_single_value_text,
    )


def cmd_solve(args) -> Envelope:
    cap = EXACT_MAX_DIMENSION if args.method == "exact" else FLOAT_MAX_DIMENSION
    n = _dimension(args.n, cap, f"{args.method} solver dimension")
    a = _vertex(args.a, n, "-a")
    b = _vertex(args.b, n, "-b")
    if a == b:
        raise CLIError("targets -a and -b must be distinct")
    x = _vertex(args.x, n, "-x") if args.x is not None else None
    if args.tol <= 0:
        raise CLIError(f"--tol must be positive, got {args.tol}")
    exact = (args.method == "exact") if args.exact is None else args.exact
    problem = HittingProblem(a, b)
    summary: dict = {"method": args.method}
    if x is not None and boundary_value(problem, x) is not None:
        rows = [(x, boundary_value(problem, x))]
    else:
        if args.method == "exact":
            sol = solve_exact(problem)
        else:
            sol = solve_float(problem, args.tol, args.max_sweeps)
            summary.update(sweeps=sol.sweeps, residual=sol.residual)
        rows = [(x, sol[x])] if x is not None else sol.rows()
    results = [{"vertex": str(v), "value": val, "decimal": decimal(val)} for v, val in rows]
    params = {"n": n, "a": str(a), "b": str(b), "x": None if x is None else str(x),
              "method": args.method, "tol": args.tol}
    env = Envelope("solve", params, ["vertex", "value", "decimal"], results, exact, summary)
    if x is not None:
        env.text = _single_value_text
    return env


def cmd_chain(args) -> Envelope:
    n = _dimension(args.n)
    if args.kind == "antipodal" and args.show != "w":
        raise CLIError(f"--show {args.show} is only defined for --kind adjacent")
    if args.show == "z" and n < 2:
        raise CLIError("--show z needs n >= 2")
    exact = True if args.exact is None else args.exact
    if args.kind == "antipodal":
        values = list(chainmod.antipodal_profile(n).w)
    else:
        profile = chainmod.adjacent_profile(n)
        if args.show == "w":
            values = list(profile.w)
        elif args.show == "u":
            values = list(chainmod.u_transform(profile))
        elif args.show == "z":
            values = chainmod.z_sequence(n)
        else:
            values = chainmod.induction_identity_residuals(chainmod.u_transform(profile))
    # residual i runs 1..n, everything else is 0-based
    base = 1 if args.show == "residuals" else 0
    results = [{"index": i + base, "value": v, "decimal": decimal(v)} for i, v in enumerate(values)]
    return Envelope(
        "chain",
        {"n": n, "kind": args.kind, "show": args.show},
        ["index", "value", "decimal"],
        results,
        exact,
        text=_sequence_text,
    )


def _mc_text(env: Envelope) -> list[str]:
    row = env.results[0]
    return [f"{c}: {env.fmt(row[c])}" for c in env.columns]


def cmd_mc(args) -> Envelope:
    n = _dimension(args.n)
    a = _vertex(args.a, n, "-a")
    b = _vertex(args.b, n, "-b")
    x = _vertex(args.x, n, "-x")
    if a == b:
        raise CLIError("targets -a and -b must be distinct")
    if args.trials < 1:
        raise CLIError(f"--trials must be >= 1, got {args.trials}")
    seed = _default_seed() if args.seed is None else args.seed
    exact = False if args.exact is None else args.exact
    started = datetime.now(timezone.utc)
    t0 = time.perf_counter()
    est = simulate_hitting(HittingProblem(a, b), x, args.trials, seed)
    elapsed = time.perf_counter() - t0
    row = {"vertex": str(x), **est.to_dict()}
    if exact:
        row["p_hat"] = Fraction(est.hits_b, est.trials)
    return Envelope(
        "mc",
        {"n": n, "a": str(a), "b": str(b), "x": str(x), "trials": args.trials, "seed": seed},
        ["vertex", "trials", "hits_b", "p_hat", "std_err", "seed", "max_steps_hit"],
        [row],
        exact,
        metadata={"started_at": started.isoformat(), "wall_clock_seconds": elapsed},
        text=_mc_text,
    )


def cmd_dist(args) -> Envelope:
    if args.source == "matrix":
        n = _dimension(args.n, MATRIX_MAX_DIMENSION, "matrix-power dimension")
    else:
        n = _dimension(args.n)
    if not 0 <= args.N <= TIME_CAP:
        raise CLIError(f"time cap is 0 <= N <= {TIME_CAP}, got N={args.N}")
    if args.trials < 1:
        raise CLIError(f"--trials must be >= 1, got {args.trials}")
    exact = False if args.exact is None else args.exact
    seed = _default_seed() if args.seed is None else args.seed
    params = {"n": n, "N": args.N, "variant": args.variant, "source": args.source}
    metadata = {}
    if args.source == "formula":
        dist = occupation_formula_distribution(n, args.N, args.variant, exact=exact)
    elif args.source == "matrix":
        dist = occupation_matrix_power(n, args.N, args.variant)
    else:
        params.update(trials=args.trials, seed=seed)
        started = datetime.now(timezone.utc)
        t0 = time.perf_counter()
        dist = empirical_occupation(n, args.N, args.variant, args.trials, seed)
        metadata = {"started_at": started.isoformat(), "wall_clock_seconds": time.perf_counter() - t0}
    results = []
    for k, (p, mass) in enumerate(zip(dist.probs, dist.level_mass)):
        results.append({"level": k, "vertices": comb(n, k), "per_vertex": p,
                        "level_mass": mass, "decimal": decimal(p)})
    return Envelope(
        "dist",
        params,
        ["level", "vertices", "per_vertex", "level_mass", "decimal"],
        results,
        exact,
        summary={"total_mass": decimal(dist.total_mass())},
        metadata=metadata,
    )


def _compare_vertices(n: int, suite: str) -> tuple[list[dict], Fraction, Vertex | None]:
    problem = HittingProblem.adjacent(n) if suite == "adjacent" else HittingProblem.antipodal(n)
    formula = adjacent_hitting_probability if suite == "adjacent" else antipodal_hitting_probability
    sol = solve_exact(problem)
    rows = []
    worst = Fraction(0)
    offender = None
    for x in all_vertices(n):
        f, o = formula(n, x), sol[x]
        d = abs(f - o)
        if d > worst:
            worst, offender = d, x
        rows.append({"vertex": str(x), "formula": f, "oracle": o, "discrepancy": d})
    return rows, worst, offender


def cmd_compare(args) -> Envelope:
    exact = True if args.exact is None else args.exact
    params = {"n": args.n, "suite": args.suite}
    if args.suite in ("adjacent", "antipodal"):
        n = _dimension(args.n, EXACT_MAX_DIMENSION, "exact solver dimension")
        rows, worst, offender = _compare_vertices(n, args.suite)
        ok = worst == 0
        message = (f"max discrepancy {worst.numerator}/{worst.denominator}; "
                   + (f"{len(rows)} vertices OK" if ok else f"mismatch at vertex {offender}"))
        env = Envelope("compare", params, ["vertex", "formula", "oracle", "discrepancy"], rows, exact,
                       summary={"ok": ok, "max_discrepancy": worst, "checked": len(rows), "message": message})
    else:
        n = _dimension(args.n, MATRIX_MAX_DIMENSION, "matrix-power dimension")
        if not 0 <= args.max_time <= TIME_CAP:
            raise CLIError(f"time cap is 0 <= N <= {TIME_CAP}, got --max-time {args.max_time}")
        params["max_time"] = args.max_time
        rows = []
        ok = True
        offender = None
        for variant in VARIANTS:
            worst = 0.0
            worst_norm = 0.0
            for N in range(args.max_time + 1):
                oracle = occupation_matrix_power(n, N, variant)
                formula = [occupation_formula(n, N, k, variant) for k in range(n + 1)]
                for k in range(n + 1):
                    d = abs(formula[k] - float(oracle.probs[k]))
                    if d > worst:
                        worst = d
                        if d > OCCUPATION_TOLERANCE:
                            offender = f"{variant} N={N} k={k}"
                norm = abs(sum(comb(n, k) * formula[k] for k in range(n + 1)) - 1)
                worst_norm = max(worst_norm, norm)
            passed = worst <= OCCUPATION_TOLERANCE and worst_norm <= NORMALIZATION_TOLERANCE
            ok &= passed
            rows.append({"variant": variant, "max_discrepancy": worst, "max_normalization_error": worst_norm,
                         "checked": (args.max_time + 1) * (n + 1), "ok": passed})
        message = "; ".join(
            f"{r['variant']}: max discrepancy {r['max_discrepancy']:.3g} "
            f"({'OK' if r['ok'] else 'FAIL'} at tol {OCCUPATION_TOLERANCE:g})" for r in rows)
        if offender:
            message += f"; first offender {offender}"
        env = Envelope("compare", params,
                       ["variant", "max_discrepancy", "max_normalization_error", "checked", "ok"], rows, exact,
                       summary={"ok": ok, "message": message})
    env.text = lambda e: [e.summary["message"]]
    if not env.summary["ok"]:
        raise CheckFailed(env, env.summary["message"])
    return env


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text", help="output format (default: text)")
    common.add_argument("--output", metavar="PATH", help="write output to PATH instead of stdout")
    common.add_argument("--exact", action=argparse.BooleanOptionalAction, default=None,
                        help="render rationals as p/q (default on for formula, chain, compare)")

    parser = argparse.ArgumentParser(prog="cubehit", description="Hitting probabilities of the hypercube random walk.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("formula", parents=[common], help="closed-form probability for adjacent or antipodal targets")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-x", required=True)
    p.add_argument("--target", choices=("adjacent", "antipodal"), default="adjacent")
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("solve", parents=[common], help="full-graph harmonic solve for arbitrary targets")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-a", required=True)
    p.add_argument("-b", required=True)
    p.add_argument("-x")
    p.add_argument("--method", choices=("exact", "float"), default="exact")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--max-sweeps", type=int, default=1_000_000)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("chain", parents=[common], help="lumped level chain and its substitution sequences")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--kind", choices=("adjacent", "antipodal"), default="adjacent")
    p.add_argument("--show", choices=("w", "u", "z", "residuals"), default="w")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("mc", parents=[common], help="Monte Carlo hitting estimate")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-a", required=True)
    p.add_argument("-b", required=True)
    p.add_argument("-x", required=True)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, help="master seed (default: $CUBEHIT_SEED or 0)")
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("dist", parents=[common], help="occupation probabilities at time N")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-N", type=int, required=True)
    p.add_argument("--variant", choices=VARIANTS, default="as-printed")
    p.add_argument("--source", choices=("formula", "matrix", "empirical"), default="formula")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, help="master seed (default: $CUBEHIT_SEED or 0)")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("compare", parents=[common], help="formula-vs-oracle agreement report")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--suite", choices=("adjacent", "antipodal", "occupation"), default="adjacent")
    p.add_argument("--max-time", type=int, default=200, help="largest N for the occupation suite")
    p.set_defaults(func=cmd_compare)
    return parser


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        env = args.func(args)
    except CheckFailed as exc:
        _emit(render(exc.env, args.format), args.output)
        print(f"cubehit: check failed: {exc}", file=sys.stderr)
        return 1
    except CLIError as exc:
        print(f"cubehit: error: {exc}", file=sys.stderr)
        return 2
    _emit(render(env, args.format), args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
