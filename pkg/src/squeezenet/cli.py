"""``squeeze-net``: parameter sweeps and the verification suite from the command line.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

import argparse
import csv
import io
import itertools
import json
import math
import sys

import numpy as np

from . import fock
from .errors import SqueezeNetError
from .gaussian import photon_number
from .metrology import ProbeConfig, qfi_leading, qfi_terms
from .verify import REFERENCE_GAINS, run_all
from .zwm import (
    ZwmConfig,
    closed_form_covariance,
    coherence_gamma_closed,
    coherence_gamma_factorized,
    detected_state,
    photocurrents_closed,
    photocurrents_pipeline,
    signal_y,
    zwm_L,
    zwm_state,
)

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

DEFAULTS = {
    # None: the command picks its own default
    "g": None,
    "tmag": None,
    "theta_t": [0.0],
    "phi_s": None,
    "beta": [1.0],
    "theta": [math.pi / 2],
    "grid": None,
    "oracle": None,
    "format": "csv",
    "out": None,
}
LIST_KEYS = ("g", "tmag", "theta_t", "phi_s", "beta", "theta")


class UsageError(SqueezeNetError):
    pass


def _fmt(x):
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


class Table:
    def __init__(self, columns):
        self.columns = list(columns)
        self.rows = []
        self.notes = {}

    def add(self, *row):
        self.rows.append(list(row))

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow([_fmt(x) for x in row])
        for k, v in self.notes.items():
            buf.write(f"# {k}={_fmt(v)}\n")
        return buf.getvalue()

    def to_json(self):
        return json.dumps({"columns": self.columns, "rows": self.rows, **self.notes}, indent=2) + "\n"


def _load_config(path):
    with open(path, "rb") as fh:
        raw = fh.read()
    if path.endswith(".json"):
        data = json.loads(raw)
    else:
        data = tomllib.loads(raw.decode("utf-8"))
    cfg = {}
    for k, v in data.items():
        key = k.replace("-", "_")
        if key not in DEFAULTS:
            raise UsageError(f"unknown config key {k!r}")
        if key in LIST_KEYS and not isinstance(v, list):
            v = [v]
        cfg[key] = v
    return cfg


def resolve(args):
    """Merge defaults, config file and flags, in increasing priority."""
    opts = dict(DEFAULTS)
    if args.config:
        opts.update(_load_config(args.config))
    for k in DEFAULTS:
        v = getattr(args, k, None)
        if v is not None:
            opts[k] = v
    for k in LIST_KEYS:
        if opts[k] is not None and len(opts[k]) == 0:
            raise UsageError(f"--{k.replace('_', '-')} needs at least one value")
    if opts["grid"] is not None and opts["grid"] < 2:
        raise UsageError("--grid must be at least 2")
    if opts["format"] not in ("csv", "json"):
        raise UsageError("--format must be csv or json")
    return opts


def _linspace(a, b, n):
    return [float(x) for x in np.linspace(a, b, n)]


def _point_defaults(opts):
    return opts["g"] or [0.8], opts["tmag"] or [0.6]


def cmd_photocurrent(opts):
    gs, ts = _point_defaults(opts)
    phis = opts["phi_s"] or _linspace(0.0, 2 * math.pi, opts["grid"] or 201)
    cols = ["g", "t_mag", "theta_t", "phi_s", "nS1", "nS2", "nS1_pipeline", "nS2_pipeline"]
    if opts["oracle"]:
        cols += ["nS1_oracle", "nS2_oracle"]
    table = Table(cols)
    worst = oracle_worst = 0.0
    for g, t, th, ph in itertools.product(gs, ts, opts["theta_t"], phis):
        cfg = ZwmConfig(g, t, th, ph)
        c, p = photocurrents_closed(cfg), photocurrents_pipeline(cfg)
        worst = max(worst, abs(c[0] - p[0]), abs(c[1] - p[1]))
        row = [g, t, th, ph, c[0], c[1], p[0], p[1]]
        if opts["oracle"]:
            v, _ = fock.evolve_auto(zwm_L(cfg))
            w = fock.passive_unitary(v, signal_y(ph))
            o = fock.expectation_n(w, 0), fock.expectation_n(w, 1)
            oracle_worst = max(oracle_worst, abs(o[0] - c[0]), abs(o[1] - c[1]))
            row += list(o)
        table.add(*row)
    table.notes["max_discrepancy_closed_vs_pipeline"] = worst
    if opts["oracle"]:
        table.notes["max_discrepancy_closed_vs_oracle"] = oracle_worst
    return table


def cmd_coherence(opts):
    gs = opts["g"] or list(REFERENCE_GAINS)
    for g in gs:
        if not g > 0:
            raise UsageError(f"g must be positive, got {g} (the closed form is even in g; pass |g|)")
    ts = opts["tmag"] or _linspace(0.0, 1.0, opts["grid"] or 101)
    table = Table(["g", "t_mag", "gamma_closed", "gamma_factorized", "floor"])
    for g in gs:
        for t in ts:
            ZwmConfig(g, t)  # validates the domain
            table.add(g, t, coherence_gamma_closed(g, t), coherence_gamma_factorized(g, t), float(t))
    table.notes["note"] = "e^g = 0.37 is represented by g = |ln 0.37|; the coherence is even in g"
    return table


def cmd_qfi(opts):
    cols = ["g", "t_mag", "theta", "beta", "qfi_leading", "qfi_full", "qfi_second_term"]
    if opts["oracle"]:
        cols.append("qfi_oracle")
    table = Table(cols)
    gs, ts = _point_defaults(opts)
    for g, t, th, b in itertools.product(gs, ts, opts["theta"], opts["beta"]):
        pc = ProbeConfig.make(g, t, th, b)
        first, second = qfi_terms(pc)
        row = [g, t, th, b, qfi_leading(pc), first + second, second]
        if opts["oracle"]:
            row.append(fock.qfi_fd(pc))
        table.add(*row)
    return table


def cmd_covariance(opts):
    phi = (opts["phi_s"] or [0.0])[0]
    gs, ts = _point_defaults(opts)
    cfg = ZwmConfig(gs[0], ts[0], opts["theta_t"][0], phi)
    pre = zwm_state(cfg)
    post = detected_state(cfg)
    closed = closed_form_covariance(cfg)
    doc = {
        "config": {"g": cfg.g, "t_mag": cfg.t_mag, "theta_t": cfg.theta_t, "phi_s": cfg.phi_s},
        "pre_beamsplitter": pre.to_dict(),
        "post_beamsplitter": post.to_dict(),
        "closed_form_columns": closed.tolist(),
        "max_discrepancy": float(np.max(np.abs(closed - pre.cov))),
        "photon_numbers": [photon_number(pre, j) for j in range(4)],
    }
    return json.dumps(doc, indent=2) + "\n"


def cmd_verify(opts, wrong_convention=False):
    oracle = True if opts["oracle"] is None else opts["oracle"]
    results = run_all(oracle=oracle, wrong_convention=wrong_convention)
    report = {
        "passed": all(r.passed is not False for r in results),
        "checks": [r.to_dict() for r in results],
    }
    return results, report


def build_parser():
    p = argparse.ArgumentParser(prog="squeeze-net", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=["photocurrent", "coherence", "qfi", "covariance", "verify"])
    p.add_argument("--g", type=float, nargs="+", help="gain values")
    p.add_argument("--tmag", type=float, nargs="+", help="|T| values in [0, 1]")
    p.add_argument("--theta-t", dest="theta_t", type=float, nargs="+", help="idler phase(s), radians")
    p.add_argument("--phi-s", dest="phi_s", type=float, nargs="+", help="signal phase(s), radians")
    p.add_argument("--beta", type=float, nargs="+", help="seed amplitude(s)")
    p.add_argument("--theta", type=float, nargs="+", help="estimated phase(s), radians")
    p.add_argument("--grid", type=int, help="points of the default sweep axis")
    p.add_argument("--oracle", action=argparse.BooleanOptionalAction, default=None,
                   help="add Fock-oracle columns (verify: run oracle checks, on by default)")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--config", help="TOML or JSON file with default option values")
    p.add_argument("--debug-wrong-convention", action="store_true", help=argparse.SUPPRESS)
    return p


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        opts = resolve(args)
        if args.command == "verify":
            results, report = cmd_verify(opts, args.debug_wrong_convention)
            if opts["format"] == "json" or opts["out"]:
                _emit(json.dumps(report, indent=2) + "\n", opts["out"])
            if opts["format"] != "json" or opts["out"]:
                for r in results:
                    print(r.line())
            return 0 if report["passed"] else 1
        if args.command == "covariance":
            _emit(cmd_covariance(opts), opts["out"])
            return 0
        table = {"photocurrent": cmd_photocurrent, "coherence": cmd_coherence, "qfi": cmd_qfi}[args.command](opts)
        _emit(table.to_csv() if opts["format"] == "csv" else table.to_json(), opts["out"])
        return 0
    except (SqueezeNetError, ValueError, OSError) as exc:
        print(f"squeeze-net: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
