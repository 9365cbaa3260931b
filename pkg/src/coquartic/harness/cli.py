"""``co-quartic`` command line."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..beauville import PointPair, involution, prop_og_experiment
from ..cayley import FORWARD, certify_all, fixed_point_scan, loop_map, orbit
from ..errors import CoQuarticError, ParseError
from ..exactalg.hp import check_precision
from ..nslattice import RR_CASES, LatticeContext, lattice_report, lee_classify, rr_h0
from ..tritensor import QuarticSurface, random_tritensor, sample_points
from .io import emit_tritensor, parse_pair, parse_poly_file, parse_tritensor, point_to_json
from .suite import RunConfig, json_safe, run_full_suite


def _emit(data, out: str | None) -> None:
    text = json.dumps(json_safe(data), indent=1) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _tensor(args):
    if args.input:
        return parse_tritensor(args.input)
    return random_tritensor(args.seed, args.bound)


def cmd_gen(args) -> int:
    T = random_tritensor(args.seed, args.bound)
    if args.out:
        emit_tritensor(T, args.out)
    else:
        _emit(T.to_json(), None)
    return 0


def cmd_quartics(args) -> int:
    T = _tensor(args)
    ls = (args.l,) if args.l is not None else (0, 1, 2)
    lines = [f"{l}: {T.quartic_poly(l).to_text()}" if len(ls) > 1 else T.quartic_poly(l).to_text() for l in ls]
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_certify(args) -> int:
    certs = certify_all(_tensor(args))
    _emit([c.to_json() for c in certs.values()], args.out)
    return 1 if any(c.ambiguous for c in certs.values()) else 0


def cmd_orbit(args) -> int:
    T = _tensor(args)
    start = sample_points(T.quartic(0), args.seed, 1, args.precision).points[0]
    rep = orbit(loop_map(T, args.orientation), start, args.n, args.precision)
    _emit(
        {
            "orientation": args.orientation,
            "precision": args.precision,
            "tolerance": rep.tolerance,
            "residuals_log2": rep.residuals,
            "return_distances": rep.return_distances,
            "points": [point_to_json(p) for p in rep.points],
        },
        args.out,
    )
    return 0


def cmd_fixed_scan(args) -> int:
    T = _tensor(args)
    samples = sample_points(T.quartic(0), args.seed, args.samples, args.precision).points
    rep = fixed_point_scan(loop_map(T, args.orientation), samples, args.precision)
    _emit({"samples": rep.n_samples, "min_distance": rep.min_distance, "distances": rep.distances}, args.out)
    return 0


def cmd_beauville(args) -> int:
    if not args.surface or not args.pair:
        raise ParseError("beauville needs --surface and --pair")
    F = QuarticSurface(parse_poly_file(args.surface), str(args.surface))
    p, q = parse_pair(args.pair, args.exact, args.precision)
    pr = PointPair(p, q, args.precision)
    res = involution(F, pr, args.precision)
    back = involution(F, res, args.precision)
    data = {"input": [point_to_json(x) for x in pr], "residual": [point_to_json(x) for x in res]}
    if pr.is_exact:
        data["round_trip_exact"] = back == pr
    _emit(data, args.out)
    return 0


def cmd_prop_og(args) -> int:
    T = _tensor(args)
    rep = prop_og_experiment(T, tuple(range(1, args.seeds + 1)), args.precision, args.samples or 2)
    _emit(rep.to_json(), args.out)
    return 0


def cmd_lattice_report(args) -> int:
    _emit(lattice_report(args.m, args.a, args.n_range), args.out)
    return 0


def cmd_lee_classify(args) -> int:
    _emit({"m": args.m, "a": args.a, "classification": lee_classify(args.m, args.a).value}, args.out)
    return 0


def cmd_rr_check(args) -> int:
    if args.a not in RR_CASES:
        raise ParseError(f"--a must be one of {sorted(RR_CASES)}")
    gamma, H = RR_CASES[args.a]
    rr = rr_h0(LatticeContext(2, args.a), gamma, H)
    _emit(
        {
            "a": args.a,
            "gamma": [gamma.x, gamma.y],
            "H": [H.x, H.y],
            "H_sq": rr.h_sq,
            "gamma_H": rr.gamma_h,
            "gamma_sq": rr.gamma_sq,
            "degree_check": rr.degree_check,
            "h0": str(rr.h0),
            "bound_ok": rr.bound_ok,
            "negative_square_warning": rr.negative_square_warning,
        },
        args.out,
    )
    return 0 if rr.bound_ok else 1


def cmd_suite(args) -> int:
    cfg = RunConfig(
        command="suite",
        seed=args.seed,
        precision=args.precision,
        bound=args.bound,
        input=args.input,
        output=args.out,
    )
    if args.samples is not None:
        cfg.pair_samples = args.samples
    tensor = parse_tritensor(args.input) if args.input else None
    report = run_full_suite(cfg, tensor)
    _emit(report.to_json(), args.out)
    return report.exit_status


COMMANDS = {
    "gen": cmd_gen,
    "quartics": cmd_quartics,
    "certify": cmd_certify,
    "orbit": cmd_orbit,
    "fixed-scan": cmd_fixed_scan,
    "beauville": cmd_beauville,
    "prop-og": cmd_prop_og,
    "lattice-report": cmd_lattice_report,
    "lee-classify": cmd_lee_classify,
    "rr-check": cmd_rr_check,
    "suite": cmd_suite,
}


def _precision(text: str) -> int:
    try:
        return check_precision(int(text))
    except (ValueError, CoQuarticError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="co-quartic", description="Determinantal quartic toolkit.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--precision", type=_precision, default=256, help="working precision in bits (>= 64)")
    ap.add_argument("--bound", type=int, default=9, help="tensor entries drawn from [-bound, bound]")
    ap.add_argument("--samples", type=int, default=None)
    ap.add_argument("--in", dest="input", default=None, help="tensor JSON")
    ap.add_argument("--out", default=None)
    ap.add_argument("--l", type=int, choices=(0, 1, 2), default=None)
    ap.add_argument("--n", type=int, default=8, help="orbit length")
    ap.add_argument("--orientation", choices=("forward", "reverse"), default=FORWARD)
    ap.add_argument("--surface", default=None, help="quartic in polynomial text format")
    ap.add_argument("--pair", default=None, help="point pair JSON")
    ap.add_argument("--exact", action="store_true")
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--m", type=int, default=2)
    ap.add_argument("--a", type=int, default=1)
    ap.add_argument("--n-range", type=int, default=10)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.samples is None and args.command == "fixed-scan":
        args.samples = 5
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"co-quartic: parse error: {exc}", file=sys.stderr)
        return 2
    except (CoQuarticError, ValueError) as exc:
        print(f"co-quartic: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
