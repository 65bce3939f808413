"""Command-line front end.

Subcommands
-----------
pn      P_n of n copies of a channel (closed form or brute-force spectral method)
gain    capacities and causal gains as JSON
sweep   parameter sweeps written as CSV or JSON (modes: pauli, depol, bb84)
verify  closed form against the brute-force oracle
bb84    the two-copy private-communication protocol at one error rate

Exit codes: 0 success, 2 validation error, 3 verification failure,
4 enumeration cap exceeded.
"""

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from pathlib import Path

import numpy as np

from . import __version__
from .bb84 import crossover_scan, protocol_report
from .channels import DepolChannel, PauliChannel, channel_from_spec, channel_to_spec
from .depol import depol_branches, depol_gain_report
from .depol import branches_choi as depol_branches_choi
from .oracle import (DEFAULT_CAP, ControlState, EnumerationCapError, PermutationSet,
                     effective_switch, pn_exact)
from .pauli import (PnZeroClass, branches_choi, gain_report, pn_zero_classify,
                    switch_branches)

EXIT_OK, EXIT_INVALID, EXIT_VERIFY, EXIT_CAP = 0, 2, 3, 4

SWEEP_COLUMNS = {
    "pauli": ["p0", "p1", "p2", "p3", "n", "pn", "pn_zero", "pn_class",
              "capacity_composite", "capacity_switch", "delta_c",
              "coherent_composite", "coherent_switch", "delta_i"],
    "depol": ["d", "n", "p", "pn", "lambda1", "lambda2",
              "capacity_composite", "capacity_switch", "delta_c"],
    "bb84": ["q", "composite_upper_bound", "switch_coherent_info", "advantage"],
}

_EPILOG = "sweep CSV columns:\n" + "\n".join(
    f"  {mode}: {', '.join(cols)}" for mode, cols in SWEEP_COLUMNS.items()
)


class CliError(Exception):
    def __init__(self, message, code=EXIT_INVALID):
        super().__init__(message)
        self.code = code


# --------------------------------------------------------------------------- #
# argument helpers
# --------------------------------------------------------------------------- #

def _load_spec(text, seed):
    if text is None:
        raise CliError("--spec is required")
    if text == "random":
        rng = np.random.default_rng(seed)
        return PauliChannel(rng.dirichlet(np.ones(4)))
    path = Path(text)
    if not text.lstrip().startswith("{") and path.is_file():
        text = path.read_text()
    try:
        return channel_from_spec(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"spec is neither a file nor valid JSON: {exc}") from None


def _n_list(text):
    try:
        values = [int(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise CliError(f"invalid --n value {text!r}") from None
    if not values or any(v < 1 for v in values):
        raise CliError("--n needs positive integers")
    return values


def _single_n(text):
    values = _n_list(text)
    if len(values) != 1:
        raise CliError("this command takes a single --n")
    return values[0]


def _grid(text, step, lo_default=0.0, hi_default=1.0):
    lo, hi = lo_default, hi_default
    if text:
        try:
            lo, hi = (float(x) for x in text.split(":"))
        except ValueError:
            raise CliError(f"--grid must look like LO:HI, got {text!r}") from None
    if step <= 0:
        raise CliError("--step must be positive")
    if not lo_default <= lo <= hi <= hi_default:
        raise CliError(f"grid {lo}:{hi} outside [{lo_default}, {hi_default}]")
    count = int(round((hi - lo) / step))
    points = lo + step * np.arange(count + 1)
    return np.round(points[points <= hi + 1e-12], 12)


def _fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return "%.12g" % x
    return str(x)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    return obj


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj):
    return json.dumps(_jsonable(obj), indent=2, sort_keys=False) + "\n"


def _perms(n):
    if n < 2:
        raise CliError("the SWITCH needs n >= 2")
    return PermutationSet.forward_backward(n)


# --------------------------------------------------------------------------- #
# single evaluations
# --------------------------------------------------------------------------- #

def closed_form_pn(ch, n):
    if isinstance(ch, PauliChannel):
        return switch_branches(ch, n).pn
    if isinstance(ch, DepolChannel):
        return depol_branches(ch.d, ch.p, n).pn
    raise CliError("closed forms exist only for pauli and depolarizing specs; use --method exact")


def closed_form_choi(ch, n):
    if isinstance(ch, PauliChannel):
        return branches_choi(switch_branches(ch, n))
    if isinstance(ch, DepolChannel):
        return depol_branches_choi(depol_branches(ch.d, ch.p, n))
    raise CliError("closed forms exist only for pauli and depolarizing specs")


def cmd_pn(args):
    ch = _load_spec(args.spec, args.seed)
    n = _single_n(args.n)
    if args.method == "closed":
        value = closed_form_pn(ch, n)
    else:
        value = pn_exact([ch] * n, _perms(n), cap=args.cap)
    return {"spec": channel_to_spec(ch), "n": n, "method": args.method, "pn": value}


def gain_dict(ch, n):
    if isinstance(ch, PauliChannel):
        return gain_report(ch, n).to_dict()
    if isinstance(ch, DepolChannel):
        return depol_gain_report(ch.d, ch.p, n)
    raise CliError("gain reports need a pauli or depolarizing spec")


def cmd_gain(args):
    ch = _load_spec(args.spec, args.seed)
    n = _single_n(args.n)
    return {"spec": channel_to_spec(ch), "n": n, **gain_dict(ch, n)}


def cmd_bb84(args):
    return protocol_report(args.q).to_dict()


def verify_report(ch, n, tolerance, cap=DEFAULT_CAP):
    perms = _perms(n)
    oracle = effective_switch([ch] * n, perms, ControlState.uniform(2), cap=cap)
    closed = closed_form_choi(ch, n)
    dist = float(np.linalg.norm(oracle.choi - closed))
    pn_diff = abs(closed_form_pn(ch, n) - pn_exact([ch] * n, perms, cap=cap))
    return {
        "spec": channel_to_spec(ch),
        "n": n,
        "tolerance": tolerance,
        "choi_distance": dist,
        "pn_difference": pn_diff,
        "pass": bool(dist < tolerance and pn_diff < tolerance),
    }


def cmd_verify(args):
    ch = _load_spec(args.spec, args.seed)
    report = verify_report(ch, _single_n(args.n), args.tolerance, args.cap)
    if not report["pass"]:
        raise CliError(_dump(report), EXIT_VERIFY)
    return report


# --------------------------------------------------------------------------- #
# sweeps
# --------------------------------------------------------------------------- #

def simplex_grid(step, edges_only=False):
    """Points of the probability simplex on a lattice of spacing ``step``.

    Ordered lexicographically in (p1, p2, p3) with p0 = 1 - p1 - p2 - p3.
    With ``edges_only`` only points with at most two nonzero entries are kept.
    """
    m = int(round(1.0 / step))
    if m < 1 or abs(m * step - 1.0) > 1e-9:
        raise CliError("simplex --step must divide 1")
    pts = []
    for a in range(m + 1):
        for b in range(m + 1 - a):
            for c in range(m + 1 - a - b):
                k = (m - a - b - c, a, b, c)
                if edges_only and sum(x > 0 for x in k) > 2:
                    continue
                pts.append(tuple(x / m for x in k))
    return pts


def _pauli_row(point, n):
    ch = PauliChannel(point)
    rep = gain_report(ch, n)
    cls = pn_zero_classify(ch, n)
    return [*ch.p, n, rep.pn, cls is not PnZeroClass.NONZERO, cls.name,
            rep.capacity_composite, rep.capacity_switch, rep.delta_c,
            rep.coherent_composite, rep.coherent_switch, rep.delta_i]


def _depol_row(job):
    d, n, p = job
    rep = depol_gain_report(d, p, n)
    return [d, n, p] + [rep[k] for k in SWEEP_COLUMNS["depol"][3:]]


def _pauli_job(job):
    return _pauli_row(*job)


def _parallel_map(fn, jobs, workers):
    if workers <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def sweep_rows(args):
    """Rows and optional extra metadata for a sweep, in grid order."""
    ns = _n_list(args.n)
    if args.mode == "pauli":
        jobs = [(pt, n) for pt in simplex_grid(args.step, args.edges) for n in ns]
        return _parallel_map(_pauli_job, jobs, args.jobs), {}
    if args.mode == "depol":
        ds = _n_list(args.d)
        if any(d < 2 for d in ds):
            raise CliError("--d needs integers >= 2")
        grid = _grid(args.grid, args.step)
        jobs = [(d, n, float(p)) for d in ds for n in ns for p in grid]
        return _parallel_map(_depol_row, jobs, args.jobs), {}
    grid = _grid(args.grid, args.step)
    reports, interval = crossover_scan(grid)
    rows = [[r.q, r.composite_upper_bound, r.switch_coherent_info, r.advantage]
            for r in reports]
    return rows, {"interval": list(interval) if interval else None}


def _config_echo(args):
    keys = ("mode", "grid", "step", "n", "d", "edges", "seed")
    return {k: getattr(args, k, None) for k in keys}


def render_sweep(args, rows, extra):
    cols = SWEEP_COLUMNS[args.mode]
    config = _config_echo(args)
    if args.format == "json":
        body = {"tool": f"switchgain {__version__}", "config": config,
                "columns": cols, "rows": [dict(zip(cols, r)) for r in rows], **extra}
        return _dump(body)
    buf = io.StringIO()
    buf.write(f"# switchgain {__version__}\n")
    buf.write(f"# config: {json.dumps(_jsonable(config), sort_keys=True)}\n")
    for key, value in extra.items():
        buf.write(f"# {key}: {json.dumps(_jsonable(value))}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for r in rows:
        writer.writerow([_fmt(x) for x in r])
    return buf.getvalue()


def cmd_sweep(args):
    rows, extra = sweep_rows(args)
    return render_sweep(args, rows, extra)


# --------------------------------------------------------------------------- #
# parser
# --------------------------------------------------------------------------- #

def _common(p, spec=True):
    if spec:
        p.add_argument("--spec", help="ChannelSpec JSON, a path to one, or 'random'")
    p.add_argument("--n", default="2", help="number of channel copies")
    p.add_argument("--seed", type=int, default=0, help="seed for --spec random")
    p.add_argument("--cap", type=float, default=DEFAULT_CAP,
                   help="maximum number of enumerated terms for brute force")
    p.add_argument("--out", help="write output to this file instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="switchgain", description=__doc__.split("\n\n")[0],
        epilog=_EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"switchgain {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pn", help="P_n of the SWITCH")
    _common(p)
    p.add_argument("--method", choices=("closed", "exact"), default="closed")
    p.set_defaults(func=cmd_pn)

    p = sub.add_parser("gain", help="capacities and causal gains")
    _common(p)
    p.set_defaults(func=cmd_gain)

    p = sub.add_parser("verify", help="closed form against the brute-force oracle")
    _common(p)
    p.add_argument("--tolerance", type=float, default=1e-10)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bb84", help="private-communication protocol at error rate q")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bb84)

    p = sub.add_parser("sweep", help="parameter sweeps", epilog=_EPILOG,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("mode", choices=tuple(SWEEP_COLUMNS))
    _common(p, spec=False)
    p.add_argument("--grid", help="LO:HI range of p (depol) or q (bb84)")
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("--d", default="2", help="qudit dimensions for depol sweeps")
    p.add_argument("--edges", action="store_true", help="pauli: simplex edges only")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
        _emit(result if isinstance(result, str) else _dump(result), args.out)
    except CliError as exc:
        if exc.code == EXIT_VERIFY:
            _emit(str(exc), args.out)
        else:
            print(f"switchgain: error: {exc}", file=sys.stderr)
        return exc.code
    except EnumerationCapError as exc:
        print(f"switchgain: error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, OSError) as exc:
        print(f"switchgain: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
