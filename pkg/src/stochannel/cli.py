"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 numeric failure (no convergence,
decomposition failure). ``STOCHANNEL_TOL`` overrides the default tolerance.
"""

import argparse
import csv
import os
import sys
from typing import List, Optional

import numpy as np

from . import __version__
from .birkhoff import birkhoff_decompose, recompose
from .capacity import DEFAULT_MAX_ITER, DEFAULT_TOL, blahut_arimoto, divergence_bounds, grid_search
from .channel import z_channel
from .errors import InputError, NumericFailure, StochannelError
from .io import channel_to_json, dumps, fmt_float, load_channel_file, load_monoid_file
from .monoid import (
    as_transformation_monoid,
    convolve,
    haar,
    is_group,
    measure_to_channel,
    minimal_ideal,
    units,
)
from .polytope import canonical_form, equiv_M_polytope, equiv_M_rows, leq_M

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2


def default_tol() -> float:
    raw = os.environ.get("STOCHANNEL_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise InputError(f"STOCHANNEL_TOL={raw!r} is not a number") from None
    if not tol > 0:
        raise InputError("STOCHANNEL_TOL must be positive")
    return tol


def _emit(obj, out) -> None:
    out.write(dumps(obj) + "\n")


def cmd_capacity(args, out) -> int:
    c = load_channel_file(args.file)
    tol = args.tol if args.tol is not None else default_tol()
    if args.method == "ba":
        r = blahut_arimoto(c, tol=tol, max_iter=args.max_iter)
        result = {
            "capacity_bits": r.capacity,
            "argmax_input": r.argmax_input.tolist(),
            "iterations": r.iterations,
            "lower_bound": r.lower_bound,
            "upper_bound": r.upper_bound,
        }
    else:
        value, p, count = grid_search(c, args.resolution)
        _, upper = divergence_bounds(p, c)
        result = {
            "capacity_bits": value,
            "argmax_input": p.tolist(),
            "iterations": count,
            "lower_bound": value,
            "upper_bound": max(upper, value),
        }
    result["method"] = args.method
    _emit(result, out)
    return EXIT_OK


def cmd_compare(args, out) -> int:
    a, b = load_channel_file(args.a), load_channel_file(args.b)
    if a.n != b.n:
        raise InputError(f"output sizes differ: {a.n} and {b.n}")
    tol = default_tol()
    _emit({
        "leq_ab": leq_M(a, b),
        "leq_ba": leq_M(b, a),
        "equiv_polytope": equiv_M_polytope(a, b),
        "equiv_rows": a.shape == b.shape and equiv_M_rows(a, b),
        "capacity_a": blahut_arimoto(a, tol).capacity,
        "capacity_b": blahut_arimoto(b, tol).capacity,
        "canonical_a": canonical_form(a).as_array(),
        "canonical_b": canonical_form(b).as_array(),
    }, out)
    return EXIT_OK


def cmd_zsweep(args, out) -> int:
    if args.steps < 2:
        raise InputError("--steps must be at least 2")
    if args.n < 1 or not 0 <= args.k < args.n:
        raise InputError("need n >= 1 and 0 <= k < n")
    tol = default_tol()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["p", "capacity_bits"])
    for i in range(args.steps):
        p = i / (args.steps - 1)
        cap = blahut_arimoto(z_channel(args.n, args.k, p), tol).capacity
        writer.writerow([fmt_float(p), fmt_float(cap)])
    return EXIT_OK


def cmd_birkhoff(args, out) -> int:
    d = load_channel_file(args.file)
    terms = birkhoff_decompose(d)
    terms.sort(key=lambda t: (-t[0], t[1].mapping))
    err = float(np.max(np.abs(recompose(terms) - d.matrix)))
    _emit({
        "n": d.n,
        "terms": [{"weight": w, "permutation": p.one_line()} for w, p in terms],
        "recomposition_error": err,
    }, out)
    return EXIT_OK


def _named(measures, name):
    if name not in measures:
        raise InputError(f"no measure named {name!r}; have {sorted(measures)}")
    return measures[name]


def cmd_convolve(args, out) -> int:
    s, measures = load_monoid_file(args.monoid)
    mu = convolve(_named(measures, args.a), _named(measures, args.b))
    _emit({
        "a": args.a,
        "b": args.b,
        "weights": mu.weights.tolist(),
        "support": [s.elements[i] for i in sorted(mu.support())],
    }, out)
    return EXIT_OK


def cmd_monoid_info(args, out) -> int:
    s, _ = load_monoid_file(args.monoid)
    group = is_group(s)
    _emit({
        "size": s.size,
        "identity": s.elements[s.identity],
        "is_group": group,
        "units": [s.elements[i] for i in units(s)],
        "minimal_ideal": [s.elements[i] for i in minimal_ideal(s)],
        "haar_if_group": haar(s).weights.tolist() if group else None,
    }, out)
    return EXIT_OK


def cmd_lift(args, out) -> int:
    s, measures = load_monoid_file(args.monoid)
    try:
        as_transformation_monoid(s)
    except StochannelError as exc:
        raise InputError(f"not a transformation monoid: {exc}") from None
    _emit(channel_to_json(measure_to_channel(_named(measures, args.measure))), out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stochannel",
        description="Capacity, row-polytope order and convolution for finite classical channels.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("capacity", help="capacity of a channel file")
    p.add_argument("file")
    p.add_argument("--method", choices=("ba", "grid"), default="ba")
    p.add_argument("--tol", type=float, default=None,
                   help="stopping gap for ba (default 1e-9 or $STOCHANNEL_TOL)")
    p.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    p.add_argument("--resolution", type=int, default=1000, help="grid subdivisions per axis")
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("compare", help="order, equivalence and capacities of two channels")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser(
        "zsweep", help="capacity along p*I_n + (1-p)*O_k as CSV",
        description="The binary Z-channel [[1-e, e], [0, 1]] is n=2, k=1, p=1-e.")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.set_defaults(func=cmd_zsweep)

    p = sub.add_parser("birkhoff", help="decompose a doubly stochastic matrix")
    p.add_argument("file")
    p.set_defaults(func=cmd_birkhoff)

    p = sub.add_parser("convolve", help="convolve two named measures of a monoid file")
    p.add_argument("monoid")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_convolve)

    p = sub.add_parser("monoid-info", help="units, minimal ideal and Haar measure")
    p.add_argument("monoid")
    p.set_defaults(func=cmd_monoid_info)

    p = sub.add_parser("lift", help="channel of a measure on a transformation monoid")
    p.add_argument("monoid")
    p.add_argument("--measure", required=True)
    p.set_defaults(func=cmd_lift)
    return parser


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; those are input errors here
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args, out)
    except NumericFailure as exc:
        print(f"stochannel: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (StochannelError, ValueError) as exc:
        print(f"stochannel: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
