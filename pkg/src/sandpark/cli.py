"""Command-line interface.

Exit codes: 0 when the command succeeds and every reported property holds,
1 when input is valid but a checked property is false, 2 on usage or
validation errors (malformed files, cap breaches, vectors outside their
domain).
"""

import argparse
import json
import sys
from typing import Optional, Sequence

from .errors import SandparkError
from .enumeration import (
    CLASSES,
    class_count,
    iter_class,
    reports_to_csv,
)
from .families import (
    FamilySpec,
    is_pq_parking,
    is_prime_pq,
    path_with_e_heights,
    path_with_n_positions,
)
from .graph import load_graph
from .parking import (
    decomposing_partition,
    failing_boost_vertex,
    is_g_parking,
    is_g_parking_naive,
    is_prime,
    is_prime_bruteforce,
    load_parking,
    parking_violation,
    prime_decompositions,
    PARTITION_MAX_NONSINK,
)
from .classical import breakpoints, is_parking_function, to_path
from .sandpile import (
    burning_sequence,
    burning_starts,
    drain_except,
    is_minimal_recurrent,
    is_recurrent,
    is_recurrent_burning,
    is_recurrent_orientation,
    is_stable,
    is_strongly_recurrent,
    load_config,
    markov_run,
    max_forbidden_set,
    write_trace_csv,
)

USAGE_ERROR = 2
PROPERTY_FALSE = 1
OK = 0


def _parse_vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}")


def _fmt_set(names: Sequence[str]) -> str:
    return "{" + ", ".join(names) + "}"


def _fmt_blocks(blocks: Sequence[Sequence[str]]) -> str:
    return "(" + ", ".join(_fmt_set(b) for b in blocks) + ")"


# ----------------------------------------------------------------------
# check


def _check_recurrent(g, c, oracle: str) -> bool:
    if oracle == "burning":
        return is_recurrent_burning(g, c)
    if oracle == "forbidden":
        return is_recurrent(g, c)
    if oracle == "orientation":
        return is_stable(g, c) and all(x >= 0 for x in c) \
            and is_recurrent_orientation(g, c)
    raise ValueError(f"oracle {oracle!r} does not test recurrence")


def cmd_check(args) -> int:
    g = load_graph(args.graph)
    values = load_config(g, args.input)
    prop = args.property

    if prop in ("parking", "prime"):
        if any(x < 1 for x in values):
            raise ValueError("parking values must be positive integers")
        oracle = args.oracle or "fast"
        if oracle not in ("fast", "bruteforce"):
            raise ValueError(f"oracle {oracle!r} does not test parking")
        parks = (is_g_parking(g, values) if oracle == "fast"
                 else is_g_parking_naive(g, values))
        if prop == "parking":
            print(f"parking={str(parks).lower()}")
            if not parks:
                witness = parking_violation(g, values)
                if witness is not None:
                    print(f"violating set: {_fmt_set(witness)}")
                return PROPERTY_FALSE
            return OK
        if not parks:
            raise ValueError("primality is only defined for parking functions")
        prime = (is_prime(g, values) if oracle == "fast"
                 else is_prime_bruteforce(g, values))
        print(f"prime={str(prime).lower()}")
        if not prime:
            v = failing_boost_vertex(g, values)
            if v is not None:
                print(f"failing boost vertex: {v}")
            if len(g.nonsink) <= PARTITION_MAX_NONSINK:
                parts = decomposing_partition(g, values)
                if parts is not None:
                    print(f"decomposing partition: {_fmt_blocks(parts)}")
            return PROPERTY_FALSE
        return OK

    oracle = args.oracle or "burning"
    if prop == "recurrent":
        verdict = _check_recurrent(g, c=values, oracle=oracle)
    elif prop == "strongly-recurrent":
        verdict = is_strongly_recurrent(g, values, args.quantifier)
    elif prop == "minimal-recurrent":
        verdict = is_minimal_recurrent(g, values)
    else:
        raise ValueError(f"unknown property {prop!r}")

    print(f"{prop}={str(verdict).lower()}")
    stable = is_stable(g, values)
    if not stable:
        print("configuration is not stable")
    if verdict and stable and all(x >= 0 for x in values):
        seq = burning_sequence(g, values)
        if seq is not None:
            print("burning sequence: " + " -> ".join(seq))
    if not verdict:
        forbidden = max_forbidden_set(g, values)
        if forbidden:
            print(f"forbidden set: {_fmt_set(forbidden)}")
        if prop == "strongly-recurrent" and is_recurrent(g, values):
            for v in burning_starts(g, values):
                if not is_recurrent(g, drain_except(g, values, v)):
                    print(f"draining start {v} leaves a non-recurrent state")
                    break
    return OK if verdict else PROPERTY_FALSE


# ----------------------------------------------------------------------
# enumerate


def _family_from_args(args) -> Optional[FamilySpec]:
    if not args.family:
        return None
    kwargs = {}
    for key in ("n", "p", "q", "m"):
        value = getattr(args, key)
        if value is not None:
            kwargs[key] = value
    return FamilySpec(args.family, **kwargs)


def cmd_enumerate(args) -> int:
    spec = _family_from_args(args)
    if spec is None and args.graph is None:
        raise ValueError("need either --family or --graph")
    target = spec if spec is not None else load_graph(args.graph)

    if args.output == "list":
        count = 0
        for item in iter_class(target, args.cls, cap=args.cap):
            print(",".join(str(x) for x in item))
            count += 1
        print(f"count={count}")
        return OK

    report = class_count(target, args.cls, jobs=args.jobs, cap=args.cap,
                         with_expected=args.expected)
    if args.output == "json":
        elements = [list(item) for item in iter_class(target, args.cls,
                                                      cap=args.cap)]
        payload = {"family": report.family, "params": report.params,
                   "class": report.cls, "count": report.count,
                   "expected": report.expected, "match": report.match,
                   "elements": elements}
        print(json.dumps(payload, indent=2))
    elif args.output == "csv":
        sys.stdout.write(reports_to_csv([report]))
    else:
        line = f"{report.family} {report.params} {report.cls}: count={report.count}"
        if args.expected:
            line += f" expected={report.expected} match={str(report.match).lower()}"
        print(line)
    if args.expected and not report.match:
        return PROPERTY_FALSE
    return OK


# ----------------------------------------------------------------------
# decompose


def cmd_decompose(args) -> int:
    g = load_graph(args.graph)
    values = load_parking(g, args.pf)
    if not is_g_parking(g, values):
        raise ValueError("input is not a parking function on this graph")
    decompositions = prime_decompositions(g, values)
    shown = decompositions if args.all else decompositions[:1]
    for blocks in shown:
        print(_fmt_blocks(blocks))
    print(f"decompositions={len(decompositions) if args.all else 1}"
          f" prime={str(len(decompositions[0]) == 1).lower()}")
    return OK


# ----------------------------------------------------------------------
# simulate


def _load_mu(g, path) -> dict[str, float]:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "values" not in data:
        raise ValueError("mu file must be a JSON object with a 'values' key")
    values = data["values"]
    if not isinstance(values, dict):
        raise ValueError("mu 'values' must map vertex names to weights")
    return {str(k): float(v) for k, v in values.items()}


def cmd_simulate(args) -> int:
    g = load_graph(args.graph)
    start = (load_config(g, args.start) if args.start
             else (0,) * len(g.nonsink))
    mu = _load_mu(g, args.mu) if args.mu else None
    run = markov_run(g, start, args.steps, args.seed, mu=mu)

    visited = list(run.visit_counts)
    recurrent = [c for c in visited if is_recurrent(g, c)]
    first_entry = None
    tail_recurrent = True
    for step, _, cfg in run.trace:
        if is_recurrent(g, cfg):
            if first_entry is None:
                first_entry = step
        elif first_entry is not None:
            tail_recurrent = False
    print(f"steps={args.steps} seed={args.seed}")
    print(f"distinct stable states visited: {len(visited)}")
    print(f"recurrent among visited: {len(recurrent)}")
    if first_entry is not None:
        print(f"first recurrent state at step {first_entry}; "
              f"all later states recurrent: {str(tail_recurrent).lower()}")
    if args.trace:
        write_trace_csv(g, run, args.trace)
        print(f"trace written to {args.trace}")
    return OK


# ----------------------------------------------------------------------
# paths


def _svg_from_polylines(polylines, width, height, unit=24, margin=12) -> str:
    w = width * unit + 2 * margin
    h = height * unit + 2 * margin

    def fmt(points):
        return " ".join(f"{margin + x * unit},{h - margin - y * unit}"
                        for x, y in points)

    colors = ("black", "firebrick")
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}">']
    for pts, color in zip(polylines, colors):
        lines.append(f'  <polyline points="{fmt(pts)}" fill="none" '
                     f'stroke="{color}" stroke-width="2"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _dyck_points(steps):
    points = [(0, 0)]
    x = y = 0
    for s in steps:
        x += 1
        y += 1 if s == "U" else -1
        points.append((x, y))
    return points


def cmd_paths(args) -> int:
    if (args.pf is None) == (args.pq is None):
        raise ValueError("give exactly one of --pf or --pq")

    if args.pf is not None:
        p = _parse_vector(args.pf)
        if not is_parking_function(p):
            raise ValueError("input is not a parking function")
        path = to_path(p, args.kind)
        print(f"{args.kind} word: {path.word}")
        touches = path.axis_touches()
        print("axis touches: " + ",".join(str(t) for t in touches))
        prime = touches == (len(p),)
        print(f"prime={str(prime).lower()}")
        if args.svg:
            if args.kind == "dyck":
                pts = _dyck_points(path.steps)
            else:
                pts = [(0, 0)]
                for i, r in enumerate(path.steps, start=1):
                    pts.append((i, pts[-1][1] + r))
            height = max(y for _, y in pts) - min(0, min(y for _, y in pts))
            with open(args.svg, "w", encoding="utf-8") as fh:
                fh.write(_svg_from_polylines([pts], len(pts) - 1, max(height, 1)))
            print(f"svg written to {args.svg}")
        return OK if prime else PROPERTY_FALSE

    a_text, _, b_text = args.pq.partition(";")
    if not b_text:
        raise ValueError("--pq expects 'a-vector;b-vector'")
    a = _parse_vector(a_text)
    b = _parse_vector(b_text)
    p, q = len(a), len(b)
    lower = path_with_e_heights(a, q)
    upper = path_with_n_positions(b, p)
    print(f"lower path: {lower.steps}")
    print(f"upper path: {upper.steps}")
    pp = tuple(x + 1 for x in a)
    pq_vals = tuple(x + 1 for x in b)
    parking = is_pq_parking(pp, pq_vals)
    print(f"weakly-above={str(parking).lower()}")
    prime = False
    if parking:
        prime = is_prime_pq(pp, pq_vals)
        meet = sorted(set(lower.points()) & set(upper.points()))
        print("intersection points: " +
              " ".join(f"({x},{y})" for x, y in meet))
        print(f"endpoint-only intersection={str(prime).lower()}")
    if args.svg:
        polylines = [lower.points(), upper.points()]
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(_svg_from_polylines(polylines, p, q))
        print(f"svg written to {args.svg}")
    return OK if parking and prime else PROPERTY_FALSE


# ----------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sandpark",
        description="Sandpile recurrence and parking functions on rooted "
                    "multigraphs")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="test one configuration or vector")
    check.add_argument("--graph", required=True, help="graph JSON file")
    check.add_argument("--input", required=True,
                       help="configuration/parking JSON file")
    check.add_argument("--property", required=True,
                       choices=["recurrent", "strongly-recurrent",
                                "minimal-recurrent", "parking", "prime"])
    check.add_argument("--quantifier", choices=["forall", "exists"],
                       default="forall")
    check.add_argument("--oracle",
                       choices=["burning", "forbidden", "orientation",
                                "bruteforce", "fast"])
    check.set_defaults(func=cmd_check)

    enum = sub.add_parser("enumerate", help="list or count a class")
    enum.add_argument("--family",
                      choices=["complete", "wheel", "tripartite",
                               "bipartite", "split"])
    enum.add_argument("--n", type=int)
    enum.add_argument("--p", type=int)
    enum.add_argument("--q", type=int)
    enum.add_argument("--m", type=int)
    enum.add_argument("--graph", help="graph JSON file (instead of --family)")
    enum.add_argument("--class", dest="cls", required=True, choices=CLASSES)
    enum.add_argument("--output", choices=["csv", "json", "list"])
    enum.add_argument("--expected", action="store_true",
                      help="compare against the known exact count")
    enum.add_argument("--jobs", type=int, default=1)
    enum.add_argument("--cap", type=int, default=100_000_000,
                      help="maximum candidate-space size")
    enum.set_defaults(func=cmd_enumerate)

    dec = sub.add_parser("decompose",
                         help="split a parking function into prime blocks")
    dec.add_argument("--graph", required=True)
    dec.add_argument("--pf", required=True, help="parking JSON file")
    dec.add_argument("--all", action="store_true",
                     help="print every ordered prime decomposition")
    dec.set_defaults(func=cmd_decompose)

    sim = sub.add_parser("simulate", help="run the grain-dropping chain")
    sim.add_argument("--graph", required=True)
    sim.add_argument("--steps", type=int, required=True)
    sim.add_argument("--seed", type=int, required=True)
    sim.add_argument("--mu", help="JSON file of drop weights per vertex")
    sim.add_argument("--start",
                     help="stable start configuration (default all zeros)")
    sim.add_argument("--trace", help="write the step trace to this CSV file")
    sim.set_defaults(func=cmd_simulate)

    paths = sub.add_parser("paths", help="lattice-path encodings")
    paths.add_argument("--pf", help="comma-separated parking function")
    paths.add_argument("--kind", choices=["dyck", "lukasiewicz"],
                       default="dyck")
    paths.add_argument("--pq",
                       help="semicolon-separated pair of lattice vectors, "
                            "e.g. '0,0,2,2,3;0,0,1,2'")
    paths.add_argument("--svg", help="write the path(s) as an SVG file")
    paths.set_defaults(func=cmd_paths)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SandparkError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
