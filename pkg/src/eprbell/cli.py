"""Command-line front end.

Exit codes: 0 when a command ran (verdicts such as "inconsistent" or
"infeasible" are results), 2 for malformed input, 3 when the strategy
enumeration guard trips.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import io
from .errors import EPRBellError, TooLarge
from .lhv import chsh_value, local_polytope_membership, max_abs_chsh, two_part_argument
from .locality import PREMISES, epr_bell_derivation, factorization_check
from .quantum import sample_pairs, singlet_behavior, singlet_joint, sweep, write_sweep_csv
from .scenario import DEFAULT_TOL, Scenario, make_direction, planar_direction

EXIT_INPUT = 2
EXIT_GUARD = 3


def _fmt(v) -> str:
    return f"{v:.12g}"


def _emit(args, doc, text_lines):
    if args.json:
        print(io.dumps(doc))
    else:
        print("\n".join(text_lines))


def _single_pair(theta_deg: float) -> Scenario:
    return Scenario((make_direction(0, 0, 1),), (planar_direction(math.radians(theta_deg)),))


def _scenario_arg(args) -> Scenario:
    if getattr(args, "theta_deg", None) is not None:
        return Scenario(
            (make_direction(0, 0, 1),),
            tuple(planar_direction(math.radians(t)) for t in args.theta_deg),
        )
    if args.file is None:
        raise EPRBellError("give a scenario file or --theta-deg")
    return io.load_scenario(args.file)


def _behavior_arg(args):
    if args.singlet:
        return singlet_behavior(io.load_scenario(args.file))
    return io.load_behavior(args.file, args.tol)


def cmd_predict(args):
    s = _scenario_arg(args)
    rows, lines = [], ["i j theta_rad p_pp p_pm p_mp p_mm P(A=+) P(B=+) E"]
    m, n = s.shape
    for i in range(m):
        for j in range(n):
            p = singlet_joint(s.settings_a[i], s.settings_b[j])
            e = p.p_pp + p.p_mm - p.p_pm - p.p_mp
            row = {
                "i": i,
                "j": j,
                "theta_rad": s.angle(i, j),
                "p_pp": p.p_pp,
                "p_pm": p.p_pm,
                "p_mp": p.p_mp,
                "p_mm": p.p_mm,
                "p_a_plus": p.p_pp + p.p_pm,
                "p_b_plus": p.p_pp + p.p_mp,
                "E": e,
            }
            rows.append(row)
            lines.append(" ".join([str(i), str(j)] + [_fmt(row[k]) for k in list(row)[2:]]))
    _emit(args, rows, lines)


def cmd_sweep(args):
    if args.steps < 1:
        raise EPRBellError("--steps must be at least 1")
    rows = sweep(args.start, args.stop, args.steps)
    try:
        write_sweep_csv(args.out, rows)
    except OSError as exc:
        raise EPRBellError(f"{args.out}: cannot write ({exc.strerror})") from exc
    _emit(args, {"out": args.out, "rows": len(rows)}, [f"wrote {len(rows)} rows to {args.out}"])


def cmd_epr(args):
    s = _scenario_arg(args)
    r = epr_bell_derivation(s, args.tol)
    lines = [
        f"max_cell_deviation {_fmt(r.max_cell_deviation)}",
        f"inconsistent {str(r.inconsistent).lower()}",
    ]
    if r.inconsistent:
        i, j, a, b = r.worst_cell
        lines.append("premises:")
        lines.extend(f"  {tag}: {desc}" for tag, desc in PREMISES)
        lines.append(
            f"worst cell: pair ({i}, {j}) outcomes ({int(a):+d}, {int(b):+d}) "
            f"quantum {_fmt(r.qm_table.prob(a, b, i, j))} vs factorized "
            f"{_fmt(r.factorized_table.prob(a, b, i, j))}"
        )
    lines.append(r.verdict)
    _emit(args, io.derivation_to_dict(r), lines)


def cmd_check(args):
    s = io.load_scenario(args.scenario)
    model = io.load_model(args.model, s, args.tol)
    r = factorization_check(model, s, args.tol)
    k, i, j, a, b = r.worst_witness
    lines = [
        f"pi_deviation {_fmt(r.pi_deviation)}",
        f"oi_deviation {_fmt(r.oi_deviation)}",
        f"factorization_deviation {_fmt(r.factorization_deviation)}",
        f"worst_witness component {k} pair ({i}, {j}) outcomes ({int(a):+d}, {int(b):+d})",
        f"bell_local {str(r.bell_local).lower()}",
    ]
    _emit(args, io.locality_to_dict(r), lines)


def cmd_lhv(args):
    b = _behavior_arg(args)
    r = local_polytope_membership(b, args.tol)
    lines = [
        f"feasible {str(r.feasible).lower()}",
        f"l1_distance {_fmt(r.l1_distance)}",
        f"iterations {r.iterations}",
    ]
    if r.weights is not None:
        lines.append("weights " + " ".join(_fmt(w) for w in r.weights))
    _emit(args, io.lp_to_dict(r), lines)


def cmd_chsh(args):
    b = _behavior_arg(args)
    if args.indices is not None:
        idx = tuple(args.indices)
        s_value = chsh_value(b, *idx)
    else:
        _, idx = max_abs_chsh(b)
        s_value = chsh_value(b, *idx)
    doc = {"S": s_value, "abs_S": abs(s_value), "indices": list(idx)}
    _emit(args, doc, [f"indices {' '.join(map(str, idx))}", f"S {_fmt(s_value)}", f"|S| {_fmt(abs(s_value))}"])


def cmd_sample(args):
    s = _scenario_arg(args)
    i, j = args.pair
    c = sample_pairs(s, i, j, args.n, args.seed)
    doc = {"n": c.n, "seed": c.seed, "pp": c.pp, "pm": c.pm, "mp": c.mp, "mm": c.mm}
    _emit(args, doc, [f"n {c.n} seed {c.seed}", f"pp {c.pp} pm {c.pm} mp {c.mp} mm {c.mm}"])


def canonical_chsh_scenario() -> Scenario:
    """A at 0 and 90 degrees, B at 45 and 135 degrees, all in the x-z plane."""
    return Scenario.planar([0.0, math.pi / 2], [math.pi / 4, 3 * math.pi / 4])


def cmd_two_part(args):
    s_epr = io.load_scenario(args.epr) if args.epr else _single_pair(0.0)
    s_chsh = io.load_scenario(args.chsh) if args.chsh else canonical_chsh_scenario()
    v = two_part_argument(s_epr, s_chsh, args.tol)
    lines = [
        f"part 1 (EPR: completeness -> not Bell Locality): "
        f"{'established' if v.part1_established else 'not established'} "
        f"(max cell deviation {_fmt(v.part1.max_cell_deviation)})",
        f"part 2 (Bell: incompleteness -> not Bell Locality): "
        f"{'established' if v.part2_established else 'not established'} "
        f"(l1_distance {_fmt(v.part2.l1_distance)}, max |S| {_fmt(v.chsh)})",
        f"verdict: {v.conclusion}",
    ]
    _emit(args, io.verdict_to_dict(v), lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a flag given before the subcommand from being reset by the subparser
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="tolerance (default 1e-9)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="sampler seed (default 0)")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")

    parser = argparse.ArgumentParser(prog="eprbell", description=__doc__.splitlines()[0])
    parser.add_argument("--tol", type=float, default=DEFAULT_TOL)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--json", action="store_true", default=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("predict", parents=[common], help="singlet joint probabilities, marginals and E")
    p.add_argument("file", nargs="?", help="scenario JSON")
    p.add_argument("--theta-deg", type=float, action="append", help="relative angle in degrees (repeatable)")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("sweep", parents=[common], help="write a theta sweep CSV")
    p.add_argument("--start", type=float, default=0.0, help="first angle, radians")
    p.add_argument("--stop", type=float, default=math.pi, help="last angle, radians")
    p.add_argument("--steps", type=int, default=181)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("epr", parents=[common], help="completeness + factorization vs quantum predictions")
    p.add_argument("file", nargs="?", help="scenario JSON")
    p.add_argument("--theta-deg", type=float, action="append")
    p.set_defaults(func=cmd_epr)

    p = sub.add_parser("check", parents=[common], help="PI / OI / factorization of a hidden-variable model")
    p.add_argument("model")
    p.add_argument("scenario")
    p.set_defaults(func=cmd_check)

    for name, func, help_ in (
        ("lhv", cmd_lhv, "local polytope membership"),
        ("chsh", cmd_chsh, "CHSH value"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("file", help="behavior JSON, or scenario JSON with --singlet")
        p.add_argument("--singlet", action="store_true", help="use the singlet behavior on the scenario")
        if name == "chsh":
            p.add_argument("--indices", type=int, nargs=4, metavar=("I1", "I2", "J1", "J2"))
        p.set_defaults(func=func)

    p = sub.add_parser("sample", parents=[common], help="Monte Carlo outcome counts")
    p.add_argument("file", nargs="?", help="scenario JSON")
    p.add_argument("--theta-deg", type=float, action="append")
    p.add_argument("--pair", type=int, nargs=2, default=(0, 0), metavar=("I", "J"))
    p.add_argument("-n", "--n", type=int, default=100_000)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("two-part", parents=[common], help="compose the EPR and Bell parts")
    p.add_argument("--epr", help="scenario JSON for part 1 (default: one parallel pair)")
    p.add_argument("--chsh", help="2x2 scenario JSON for part 2 (default: canonical CHSH angles)")
    p.set_defaults(func=cmd_two_part)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.tol <= 0:
        print("eprbell: error: --tol must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        args.func(args)
    except TooLarge as exc:
        print(f"eprbell: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ValueError, IndexError) as exc:
        print(f"eprbell: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return 0


if __name__ == "__main__":
    sys.exit(main())
