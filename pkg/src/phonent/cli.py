"""Command line scenario runner.

    phonent <scenario> [--config FILE] [--set key=value ...] [--out PATH]
                       [--tau-min X --tau-max X --samples N]

Scenarios: ``params``, ``fig2``, ``fig3``, ``fig4``, ``check``.  Exit codes:
0 success, 1 validation error, 2 failed check, 3 resource guard.
"""

import argparse
import math
import os
import sys
import tempfile

import numpy as np

from .checks import run_checks
from .entanglement import entangled_window, negativity_curve
from .errors import DomainError, ResourceError, TruncationError, ValidationError
from .evolution import DimensionlessConfig, ModeSumPolicy, config_from_device, p2_closed, p_mode_sum
from .model import DeviceParams, derive, device_from_mapping, load_key_values, parse_key_values

EXIT_OK, EXIT_VALIDATION, EXIT_CHECK, EXIT_RESOURCE = 0, 1, 2, 3

SCENARIOS = ("params", "fig2", "fig3", "fig4", "check")
DEVICE_KEYS = tuple(DeviceParams.__dataclass_fields__)
SCENARIO_KEYS = ("lambda", "sigma", "lambdas", "temperatures", "tol")

DEFAULT_LAMBDAS = (0.1, 0.2, 4 / math.pi ** 2, 1.0)
DEFAULT_TEMPERATURES = (0.01, 0.03, 0.1)
DEFAULT_GRIDS = {
    "fig2": (0.0, 4 * math.pi, 801),
    "fig3": (0.0, 4 * math.pi, 1001),
    "fig4": (2 * math.pi - 0.5, 2 * math.pi + 0.5, 2000),
}


def fmt(x):
    return "%.14e" % x


def _floats(text, key):
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise ValidationError("%s: expected comma-separated numbers, got %r" % (key, text))


def _settings(args):
    """Merge config file and ``--set`` overrides into (device, scenario) maps."""
    allowed = DEVICE_KEYS + SCENARIO_KEYS
    values = load_key_values(args.config, allowed) if args.config else {}
    inline = "\n".join(args.set or [])
    values.update(parse_key_values(inline, allowed))
    device = {k: v for k, v in values.items() if k in DEVICE_KEYS}
    scenario = {k: v for k, v in values.items() if k in SCENARIO_KEYS}
    return device_from_mapping(device), scenario


def _grid(args, scenario):
    lo, hi, n = DEFAULT_GRIDS[scenario]
    lo = lo if args.tau_min is None else args.tau_min
    hi = hi if args.tau_max is None else args.tau_max
    n = n if args.samples is None else args.samples
    if not (0 <= lo < hi) or n < 2:
        raise ValidationError("need 0 <= tau-min < tau-max and samples >= 2")
    return np.linspace(lo, hi, n)


def _policy(scen):
    tol = _floats(scen["tol"], "tol")[0] if "tol" in scen else 1e-10
    return ModeSumPolicy.tolerance(tol)


def _dimensionless(scen, lam=1.0, sigma=math.pi / 2):
    if "lambda" in scen:
        lam = _floats(scen["lambda"], "lambda")[0]
    if "sigma" in scen:
        sigma = _floats(scen["sigma"], "sigma")[0]
    return lam, sigma


def params_lines(dp):
    theta = "zero-temperature" if dp.theta is None else fmt(dp.theta)
    rows = [
        ("m", fmt(dp.m)),
        ("omega1", fmt(dp.omega1)),
        ("v_ph", fmt(dp.v_ph)),
        ("lambda", fmt(dp.lam)),
        ("sigma", fmt(dp.sigma)),
        ("Theta", theta),
        ("dt_causal", fmt(dp.dt_causal)),
        ("t_rephase", fmt(2 * math.pi / dp.omega1)),
    ]
    return ["%s = %s" % r for r in rows]


def fig2_rows(taus, lam, sigma):
    cfg = DimensionlessConfig(lam, sigma)
    rows = [("tau", "p2_exact", "p2_J1", "p2_J5")]
    exact = p2_closed(taus, cfg)
    for t, e in zip(taus, exact):
        rows.append((t, e, p_mode_sum("p2", t, cfg, 1), p_mode_sum("p2", t, cfg, 5)))
    return rows


def fig3_rows(taus, lambdas, sigma, policy):
    rows = [("lambda", "tau", "E_N")]
    for lam in lambdas:
        series = negativity_curve(DimensionlessConfig(lam, sigma), taus, policy=policy)
        rows.extend((lam, t, v) for t, v in zip(series.taus, series.values))
    return rows


def fig4_rows(taus, device, temperatures, policy):
    rows = [("temperature_K", "tau", "t_s", "E_N")]
    widths = []
    for temp in temperatures:
        dp = derive(device_from_mapping({"temperature": temp}, base=device))
        series = negativity_curve(config_from_device(dp), taus, policy=policy)
        rows.extend((temp, t, dp.time_of(t), v) for t, v in zip(series.taus, series.values))
        widths.append((temp, entangled_window(series, 2 * math.pi) / dp.omega1))
    return rows, widths


def _csv_text(rows):
    header, body = rows[0], rows[1:]
    lines = [",".join(header)]
    lines.extend(",".join(fmt(v) for v in row) for row in body)
    return "\n".join(lines) + "\n"


def _write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".phonent-", suffix=".part")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def build_parser():
    ap = argparse.ArgumentParser(prog="phonent", description=__doc__.split("\n\n")[0])
    ap.add_argument("scenario", choices=SCENARIOS)
    ap.add_argument("--config", metavar="FILE", help="name = value parameter file")
    ap.add_argument("--set", action="append", metavar="KEY=VALUE", help="override one parameter")
    ap.add_argument("--out", metavar="PATH", help="output file (default: <scenario>.csv)")
    ap.add_argument("--tau-min", type=float)
    ap.add_argument("--tau-max", type=float)
    ap.add_argument("--samples", type=int)
    return ap


def run(args, stdout=None):
    stdout = stdout or sys.stdout
    device, scen = _settings(args)
    name = args.scenario
    if name == "params":
        text = "\n".join(params_lines(derive(device))) + "\n"
        stdout.write(text)
        if args.out:
            _write_atomic(args.out, text)
        return EXIT_OK
    if name == "check":
        results = run_checks()
        for label, ok, detail in results:
            stdout.write("%s  %s  (%s)\n" % ("PASS" if ok else "FAIL", label, detail))
        return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_CHECK

    out = args.out or name + ".csv"
    taus = _grid(args, name)
    if name == "fig2":
        rows = fig2_rows(taus, *_dimensionless(scen))
    elif name == "fig3":
        lambdas = _floats(scen["lambdas"], "lambdas") if "lambdas" in scen else DEFAULT_LAMBDAS
        _, sigma = _dimensionless(scen)
        rows = fig3_rows(taus, lambdas, sigma, _policy(scen))
    else:
        temps = (
            _floats(scen["temperatures"], "temperatures")
            if "temperatures" in scen
            else DEFAULT_TEMPERATURES
        )
        rows, widths = fig4_rows(taus, device, temps, _policy(scen))
        for temp, width in widths:
            stdout.write("T = %g K: entangled window %.3g ns\n" % (temp, width * 1e9))
    _write_atomic(out, _csv_text(rows))
    stdout.write("wrote %s (%d rows)\n" % (out, len(rows) - 1))
    return EXIT_OK


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except (ValidationError, DomainError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_VALIDATION
    except (ResourceError, TruncationError) as exc:
        print("resource limit: %s" % exc, file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
