"""Command line front end: ``arakelov-h0 {h0,jump,reduce,sweep,info}``.

Field and divisor arguments accept a JSON file path, inline JSON, or the
names of the bundled examples (``ex1``, ``ex2``).  Sweep directions and
``--w`` are given in w = -log u coordinates.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from importlib import resources

from mpmath import mp

from . import kernels, pipeline
from .arakelov import ArakelovDivisor, degree, translate_to_degree_zero
from .errors import ArakelovError, ParameterError
from .field import field_from_spec
from .ideals import unit_ideal

PRECISION_ENV = "ARAKELOV_H0_PRECISION"
BUNDLED = ("ex1", "ex2")

log = logging.getLogger("arakelov_h0")


def _load_json(arg, kind):
    if arg in BUNDLED:
        text = resources.files("arakelov_h0").joinpath("data", f"{arg}_{kind}.json").read_text()
        return json.loads(text)
    stripped = arg.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        try:
            return json.loads(arg)
        except json.JSONDecodeError as exc:
            raise ParameterError(f"bad inline {kind} JSON: {exc}") from None
    try:
        with open(arg) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParameterError(f"cannot read {kind} file {arg!r}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParameterError(f"bad {kind} JSON in {arg!r}: {exc}") from None


def _precision(args):
    if args.precision_bits is not None:
        return args.precision_bits
    env = os.environ.get(PRECISION_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise ParameterError(f"{PRECISION_ENV} must be an integer") from None
    return None


def _real_list(text, name):
    try:
        return [s.strip() for s in text.split(",") if s.strip()]
    except AttributeError:
        raise ParameterError(f"{name} must be a comma separated list") from None


def _named_directions(field):
    """The orthonormal degree-0 bases used in the examples (w-coordinates)."""
    s2, s6 = mp.sqrt(2), mp.sqrt(6)
    out = {}
    if field.places == 2:
        out["e"] = (-1 / s2, 1 / s2)
    if field.places == 3:
        out["e1"] = (1 / s2, 0, -1 / s2)
        out["e2"] = (1 / s6, -2 / s6, 1 / s6)
    return out


def _divisor(args, field):
    """Divisor from --divisor, --logu or --w (exactly one)."""
    given = [x for x in (getattr(args, "divisor", None), getattr(args, "logu", None), getattr(args, "w", None)) if x]
    if len(given) != 1:
        raise ParameterError("give exactly one of --divisor, --logu, --w")
    with mp.workprec(field.precision_bits):
        if getattr(args, "divisor", None):
            return ArakelovDivisor.from_json(_load_json(args.divisor, "divisor"), field)
        if args.logu:
            vals = [mp.mpf(x) for x in _real_list(args.logu, "--logu")]
        else:
            vals = [-mp.mpf(x) for x in _real_list(args.w, "--w")]
        if len(vals) != field.places:
            raise ParameterError(f"need {field.places} log coordinates, got {len(vals)}")
        return ArakelovDivisor(unit_ideal(field.n), tuple(vals))


def _dec(x, digits=30):
    return mp.nstr(x, digits)


def _emit(obj, fmt, out):
    if fmt == "json":
        out.write(json.dumps(obj) + "\n")
    else:
        for key, val in obj.items():
            out.write(f"{key}: {val}\n")


def _outcome_json(outcome, field):
    return {
        "den": outcome.J.den,
        "hnf": [list(r) for r in outcome.J.hnf],
        "norm_Jinv": str(outcome.norm_Jinv),
        "log_s": [_dec(x) for x in outcome.log_s],
    }


def cmd_info(args, field, out):
    with mp.workprec(field.precision_bits):
        obj = {
            "n": field.n,
            "r1": field.r1,
            "r2": field.r2,
            "disc": str(field.disc),
            "precision_bits": field.precision_bits,
            "log_partial_F": _dec(field.log_partial_F),
            "log_big_D_F": _dec(field.log_big_D_F),
            "kernel": kernels.BACKEND,
        }
    _emit(obj, args.format, out)


def cmd_h0(args, field, out):
    W = _divisor(args, field)
    res = pipeline.h0(W, args.delta, field, split=not args.plain, M=args.M)
    _emit(res.to_json(), args.format, out)


def cmd_reduce(args, field, out):
    D = _divisor(args, field)
    with mp.workprec(field.precision_bits):
        D = translate_to_degree_zero(D, field)
    outcome = pipeline.reduce_divisor(D, field)
    _emit(_outcome_json(outcome, field), args.format, out)


def cmd_jump(args, field, out):
    D = _divisor(args, field)
    if D.ideal != unit_ideal(field.n):
        raise ParameterError("jump acts on divisors (O_F, u); use h0 or reduce for other ideals")
    with mp.workprec(field.precision_bits):
        if abs(degree(D, field)) > 1e-20 * (1 + sum(abs(x) for x in D.log_u)):
            log.info("translating input to degree 0")
            D = translate_to_degree_zero(D, field)
    outcome = pipeline.jump(D.log_u, field, trace=args.trace)
    if args.trace:
        for row in outcome.trace:
            out.write(json.dumps(row.to_json()) + "\n")
    else:
        _emit(_outcome_json(outcome, field), args.format, out)


def cmd_sweep(args, field, out):
    W = _divisor(args, field)
    if not args.dir:
        raise ParameterError("sweep needs at least one --dir")
    named = _named_directions(field)
    dirs = []
    with mp.workprec(field.precision_bits):
        for d in args.dir:
            w_dir = named.get(d) or tuple(mp.mpf(x) for x in _real_list(d, "--dir"))
            dirs.append(tuple(-x for x in w_dir))
    extents = args.extent or []
    samples = args.samples or []
    if len(extents) != len(dirs):
        raise ParameterError("need one --extent per --dir")
    if samples and len(samples) != len(dirs):
        raise ParameterError("need one --samples per --dir (or none)")
    if any(x < 0 for x in extents):
        raise ParameterError("extents must be non-negative")
    counts = samples or [int(round(x)) + 1 for x in extents]
    result = pipeline.sweep(W, dirs, list(zip(extents, counts)), args.delta, field, workers=args.workers)
    names = [d if d in named else f"t{i + 1}" for i, d in enumerate(args.dir)]
    csv_text = result.to_csv(names)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(csv_text)
        summary = {"rows": len(result.rows), "cache_size": len(result.cache), "out": args.out}
        _emit(summary, args.format if args.format != "csv" else "json", out)
    else:
        out.write(csv_text)
    log.info("cache size %d", len(result.cache))


COMMANDS = {"h0": cmd_h0, "jump": cmd_jump, "reduce": cmd_reduce, "sweep": cmd_sweep, "info": cmd_info}


def build_parser():
    p = argparse.ArgumentParser(prog="arakelov-h0", description="h0 of Arakelov divisors")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, divisor=True):
        sp.add_argument("--field", required=True, help="field JSON (path, inline, or ex1/ex2)")
        sp.add_argument("--precision-bits", type=int, default=None)
        sp.add_argument("--format", choices=("json", "csv", "text"), default="json")
        if divisor:
            sp.add_argument("--divisor", help="divisor JSON (path, inline, or ex1/ex2)")
            sp.add_argument("--logu", help="comma separated log u for (O_F, u)")
            sp.add_argument("--w", help="comma separated w = -log u for (O_F, u)")

    common(sub.add_parser("info", help="field constants"), divisor=False)

    sp = sub.add_parser("h0", help="approximate h0(W)")
    common(sp)
    sp.add_argument("--delta", type=float, default=1e-5)
    sp.add_argument("--M", type=float, default=None, help="expert override of the summation bound")
    sp.add_argument("--plain", action="store_true", help="skip the Poisson split")

    sp = sub.add_parser("reduce", help="LLL reduction of a divisor translated to degree 0")
    common(sp)

    sp = sub.add_parser("jump", help="reduced divisor close to (O_F, u)")
    common(sp)
    sp.add_argument("--trace", action="store_true", help="emit one JSON line per step")

    sp = sub.add_parser("sweep", help="h0 over a grid in the torus")
    common(sp)
    sp.add_argument("--dir", action="append", help="e, e1, e2 or a comma separated w-vector")
    sp.add_argument("--extent", action="append", type=float)
    sp.add_argument("--samples", action="append", type=int)
    sp.add_argument("--delta", type=float, default=1e-5)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out")
    return p


VECTOR_FLAGS = ("--logu", "--w", "--dir")


def _glue_vectors(argv):
    """Turn ``--logu -1,1`` into ``--logu=-1,1`` so argparse keeps negative vectors."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in VECTOR_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def dispatch(argv, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_vectors(list(argv)))
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        delta = getattr(args, "delta", None)
        if delta is not None and not 0 < delta < 1:
            raise ParameterError("--delta must lie in (0, 1)")
        field = field_from_spec(_load_json(args.field, "field"), _precision(args))
        COMMANDS[args.command](args, field, out)
    except ArakelovError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    return 0


def main():
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
