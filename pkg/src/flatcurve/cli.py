"""Command-line front end: ``flatcurve <command> ...``.

Exit codes: 0 success, 1 verification or semantic failure, 2 usage or input
error, 3 internal error.  Summaries are printed one ``key: value`` per line.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .curve import CurveError, format_gauss_code, read_curve, write_curve
from .draw import to_dot, to_svg
from .generators import FamilyError, parse_family
from .moves import MoveError, Trace, verify_trace
from .reduction import ReductionError, reduce_p_family, reduce_pretzel, reduce_torus, reduce_two_bridge
from .search import SearchConfig, SearchError, census, rii_bounded

OK, FAILED, USAGE, INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InternalError(Exception):
    pass


def _load_curve(path):
    try:
        return read_curve(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except CurveError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _emit(pairs):
    for k, v in pairs:
        print(f"{k}: {v}")


def _family_trace(spec: str) -> Trace:
    name, _, rest = spec.strip().partition(":")
    name = name.strip().lower().replace("_", "").replace("-", "")
    try:
        args = [int(x) for x in rest.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"bad parameters in {spec!r}") from None
    parse_family(spec)  # validates the parameters
    if name == "trivial":
        return Trace(parse_family(spec), [])
    if name == "torus":
        return reduce_torus(*args)
    if name == "pretzel":
        return reduce_pretzel(args)
    if name == "twobridge":
        return reduce_two_bridge(args)
    if name == "pfamily":
        return reduce_p_family(*args)
    if name == "hy":
        return reduce_p_family(1, 4)
    raise UsageError(f"no reduction pipeline for {name!r}")


def _search_trace(path: str, state_cap: int) -> Trace:
    """Reduce an arbitrary curve file by a bounded search."""
    curve = _load_curve(path)
    res = rii_bounded(curve, SearchConfig(crossing_budget=curve.num_vertices + 4, state_cap=state_cap))
    if res.witness is None:
        raise ReductionError(f"no reduction found within the search limits ({res.outcome})")
    return res.witness


def cmd_generate(args) -> int:
    curve = parse_family(args.family)
    write_curve(curve, args.output)
    _emit([("family", args.family), ("crossings", curve.num_vertices),
           ("symbols", len(curve.word)), ("output", args.output)])
    return OK


def cmd_reduce(args) -> int:
    if os.path.isfile(args.source):
        trace = _search_trace(args.source, args.state_cap)
    else:
        trace = _family_trace(args.source)
    report = verify_trace(trace)
    if not report.valid or not trace.claimed_final.is_trivial:
        raise InternalError(f"reduction trace failed verification: {report.message}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(trace.dumps() + "\n")
    pairs = [("negative-2 moves", trace.cost), ("steps", len(trace)), ("verified", "true")]
    if args.out:
        pairs.append(("output", args.out))
    _emit(pairs)
    return OK


def cmd_verify(args) -> int:
    try:
        with open(args.trace) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {args.trace}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.trace}: malformed JSON: {exc}") from None
    try:
        trace = Trace.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, MoveError):
            # a step that cannot even be located is a verification failure
            _emit([("valid", "false"), ("message", str(exc))])
            return FAILED
        raise UsageError(f"{args.trace}: not a trace: {exc}") from None
    report = verify_trace(trace)
    print(report.summary())
    return OK if report.valid else FAILED


def cmd_search(args) -> int:
    curve = _load_curve(args.curve)
    budget = args.budget if args.budget is not None else curve.num_vertices + 4
    config = SearchConfig(crossing_budget=budget, state_cap=args.state_cap, cost_cap=args.cost_cap,
                          time_limit=args.time_limit)
    res = rii_bounded(curve, config)
    if res.witness is not None:
        report = verify_trace(res.witness)
        if not report.valid or report.cost != res.value:
            raise InternalError("search witness failed verification")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(res.to_json(), fh, indent=1)
            fh.write("\n")
    print(res.summary())
    return OK


def cmd_census(args) -> int:
    classes = census(args.max_crossings)
    counts: dict[int, int] = {}
    for _, c in classes:
        counts[c.num_vertices] = counts.get(c.num_vertices, 0) + 1
    if args.out:
        with open(args.out, "w") as fh:
            for _, c in classes:
                fh.write(format_gauss_code(c).replace("\n", " | ") + "\n")
    for v in range(args.max_crossings + 1):
        print(f"crossings {v}: {counts.get(v, 0)}")
    print(f"total: {len(classes)}")
    if args.rii:
        # record (not assert) the bounded RII value of every class
        tally: dict[tuple[int, str], int] = {}
        for _, c in classes:
            res = rii_bounded(c, SearchConfig(crossing_budget=c.num_vertices + args.slack, state_cap=args.state_cap))
            value = str(res.value) if res.value is not None else str(res.outcome)
            tally[(c.num_vertices, value)] = tally.get((c.num_vertices, value), 0) + 1
        for (v, value), n in sorted(tally.items()):
            print(f"rii crossings {v} value {value}: {n}")
    return OK


def cmd_export(args) -> int:
    curve = _load_curve(args.curve)
    text = to_svg(curve) if args.format == "svg" else to_dot(curve)
    with open(args.output, "w") as fh:
        fh.write(text)
    _emit([("format", args.format), ("crossings", curve.num_vertices), ("output", args.output)])
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flatcurve", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a family member as a Gauss code file")
    g.add_argument("family", help="trivial, kinks:k, torus:p, pretzel:a,..., twobridge:a,..., pfamily:m,n, hy")
    g.add_argument("-o", "--output", required=True)
    g.set_defaults(func=cmd_generate)

    r = sub.add_parser("reduce", help="reduce a family (or a curve file, by search) to the trivial curve")
    r.add_argument("source", help="family spec or Gauss code file")
    r.add_argument("-o", "--out", help="trace JSON output path")
    r.add_argument("--state-cap", type=int, default=200_000, help="state cap when reducing a curve file")
    r.set_defaults(func=cmd_reduce)

    v = sub.add_parser("verify", help="replay and check a trace JSON file")
    v.add_argument("trace")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="bounded searches")
    ss = s.add_subparsers(dest="search_command", required=True)
    rii = ss.add_parser("rii", help="fewest negative type 2 moves to the trivial curve")
    rii.add_argument("curve")
    rii.add_argument("--budget", type=int, help="crossing budget (default: crossings + 4)")
    rii.add_argument("--state-cap", type=int, default=1_000_000)
    rii.add_argument("--cost-cap", type=int)
    rii.add_argument("--time-limit", type=float)
    rii.add_argument("--threads", type=int, default=1, help="accepted for compatibility; the search runs in one thread")
    rii.add_argument("--out")
    rii.set_defaults(func=cmd_search)

    c = sub.add_parser("census", help="count curve classes by crossing number")
    c.add_argument("--max-crossings", type=int, default=4)
    c.add_argument("--out")
    c.add_argument("--rii", action="store_true", help="also record each class's bounded RII value")
    c.add_argument("--slack", type=int, default=4, help="crossing budget above each class's size for --rii")
    c.add_argument("--state-cap", type=int, default=200_000)
    c.set_defaults(func=cmd_census)

    e = sub.add_parser("export", help="draw a curve file as SVG or DOT")
    e.add_argument("curve")
    e.add_argument("--format", choices=("svg", "dot"), default="svg")
    e.add_argument("-o", "--output", required=True)
    e.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FamilyError, SearchError, CurveError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except ReductionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except Exception as exc:  # anything else is a broken invariant
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return INTERNAL


if __name__ == "__main__":
    sys.exit(main())
