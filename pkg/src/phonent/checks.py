"""Quick self-checks run by ``phonent check``.

Each check returns ``(passed, detail)``; they use reduced sample counts so
the whole suite finishes in a few seconds.
"""

import math

import numpy as np

from . import specfun
from .entanglement import log_negativity, rephasing_negativity
from .evolution import (
    DimensionlessConfig,
    FockDensityMatrix,
    ModeSumPolicy,
    d1_zero_t,
    d2_zero_t,
    d_mode_sum,
    d_thermal,
    p1_closed,
    p2_closed,
    p_mode_sum,
    propagate,
)
from .model import REFERENCE_DEVICE, derive
from .oracle import BathTruncation, analytic_truncated_reference, evolve_and_reduce


def check_specfun():
    z3 = specfun.ZETA3
    pairs = [
        (specfun.sl2(0.0), math.pi ** 2 / 6),
        (specfun.sl2(math.pi), -math.pi ** 2 / 12),
        (specfun.cl3(0.0), z3),
        (specfun.cl3(math.pi), -0.75 * z3),
        (specfun.cl3(math.pi / 2), -3 * z3 / 32),
        (specfun.sl3(math.pi / 2), math.pi ** 3 / 32),
    ]
    err = max(abs(a - b) for a, b in pairs)
    return err < 1e-12, "max identity error %.2e" % err


def check_causality():
    cfg = DimensionlessConfig(1.0, math.pi / 2)
    taus = np.linspace(0.0, cfg.sigma, 1001)[1:-1]
    worst = float(np.max(np.abs(p2_closed(taus, cfg))))
    acausal = max(abs(p_mode_sum("p2", t, cfg, 1)) for t in taus)
    return worst < 1e-10 and acausal > 0.01, "max|p2| %.2e, single mode %.3f" % (worst, acausal)


def check_rephasing():
    worst = 0.0
    for theta in (None, 10.0, 1.0, 1e-5):
        cfg = DimensionlessConfig(1.0, math.pi / 2, theta)
        for j in (1, 2, 3):
            tau = 2 * math.pi * j
            if theta is None:
                vals = (d1_zero_t(tau, cfg), d2_zero_t(tau, cfg))
            else:
                vals = (d_thermal("d1", tau, cfg), d_thermal("d2", tau, cfg))
            worst = max(worst, *map(abs, vals))
    return worst < 1e-9, "max |d| at 2 pi j: %.2e" % worst


def check_mode_sums(points=5, terms=10 ** 5, seed=0):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(points):
        tau = rng.uniform(0.0, 4 * math.pi)
        cfg = DimensionlessConfig(1.0, rng.uniform(0.2, math.pi - 0.2))
        worst = max(
            worst,
            abs(p_mode_sum("p1", tau, cfg, terms, tail_correction=True) - p1_closed(tau, cfg)),
            abs(p_mode_sum("p2", tau, cfg, terms) - p2_closed(tau, cfg)),
            abs(d_mode_sum("d1", tau, cfg, terms) - d1_zero_t(tau, cfg)),
            abs(d_mode_sum("d2", tau, cfg, terms) - d2_zero_t(tau, cfg)),
        )
    return worst < 1e-8, "max closed-form vs mode-sum %.2e" % worst


def check_negativity_law():
    rho0 = FockDensityMatrix.plus_plus()
    worst = 0.0
    for lam in (0.1, 4 / math.pi ** 2, 1.0):
        cfg = DimensionlessConfig(lam, math.pi / 2)
        en = log_negativity(propagate(rho0, 2 * math.pi, cfg, ModeSumPolicy()))
        worst = max(worst, abs(en - rephasing_negativity(lam, cfg.sigma)))
    return worst < 1e-6, "max E_N(2 pi) deviation %.2e" % worst


def check_oracle():
    dp = derive(REFERENCE_DEVICE)
    trunc = BathTruncation.from_device(dp, 1, 14)
    rho0 = FockDensityMatrix.plus_plus()
    worst = 0.0
    for tau in (0.7, 2.9, 5.1):
        brute = evolve_and_reduce(np.full(4, 0.5), tau, trunc).matrix
        ref = analytic_truncated_reference(rho0, tau, trunc).matrix
        worst = max(worst, float(np.max(np.abs(brute - ref))))
    return worst < 1e-6, "max elementwise oracle deviation %.2e" % worst


CHECKS = {
    "specfun identities": check_specfun,
    "causality": check_causality,
    "rephasing": check_rephasing,
    "closed form vs mode sum": check_mode_sums,
    "rephasing negativity law": check_negativity_law,
    "brute-force oracle": check_oracle,
}


def run_checks():
    """Run every check; returns a list of ``(name, passed, detail)``."""
    results = []
    for name, fn in CHECKS.items():
        try:
            ok, detail = fn()
        except Exception as exc:  # report, do not abort the suite
            ok, detail = False, "%s: %s" % (type(exc).__name__, exc)
        results.append((name, bool(ok), detail))
    return results
