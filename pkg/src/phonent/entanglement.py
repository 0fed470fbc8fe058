"""Partial transpose and logarithmic negativity of two-oscillator states."""

import datetime
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .evolution import FockDensityMatrix, ModeSumPolicy, propagate

__all__ = [
    "NOISE_FLOOR",
    "NegativitySeries",
    "jacobi_eigvalsh",
    "partial_transpose",
    "trace_norm_hermitian",
    "log_negativity",
    "negativity_curve",
    "rephasing_negativity",
    "entangled_window",
]

NOISE_FLOOR = 1e-12


def _as_matrix(rho):
    if isinstance(rho, FockDensityMatrix):
        return rho.matrix, rho.cutoff + 1
    raise ValidationError("expected a FockDensityMatrix, got %s" % type(rho).__name__)


def partial_transpose(rho, subsystem="left"):
    """Transpose the indices of one oscillator.

    For ``subsystem="left"`` element ``((n1, n2), (n1', n2'))`` of the result
    is element ``((n1', n2), (n1, n2'))`` of ``rho``.
    """
    mat, d = _as_matrix(rho)
    t = mat.reshape(d, d, d, d)
    if subsystem == "left":
        t = t.transpose(2, 1, 0, 3)
    elif subsystem == "right":
        t = t.transpose(0, 3, 2, 1)
    else:
        raise ValidationError("subsystem must be 'left' or 'right', got %r" % (subsystem,))
    return t.reshape(d * d, d * d).copy()


def jacobi_eigvalsh(mat, rel_tol=1e-14, max_sweeps=60):
    """Eigenvalues of a small complex Hermitian matrix by cyclic Jacobi.

    Each rotation first removes the phase of the pivot, then applies the
    real symmetric Jacobi rotation.  Sweeps stop once the off-diagonal
    Frobenius norm is below ``rel_tol * ||mat||_F``.

    Returns
    -------
    ndarray
        Eigenvalues in ascending order.
    """
    a = np.array(mat, dtype=complex)
    n = a.shape[0]
    threshold = rel_tol * max(np.linalg.norm(a), np.finfo(float).tiny)
    for _ in range(max_sweeps):
        if np.linalg.norm(a - np.diag(np.diag(a))) <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= 1e-300:
                    continue
                phase = apq / mag
                zeta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                if abs(zeta) > 1e150:
                    t = 0.5 / zeta
                else:
                    t = math.copysign(1.0, zeta) / (abs(zeta) + math.sqrt(zeta * zeta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                g = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                cols = a[:, [p, q]] @ g
                a[:, p], a[:, q] = cols[:, 0], cols[:, 1]
                rows = g.conj().T @ a[[p, q], :]
                a[p, :], a[q, :] = rows[0], rows[1]
                a[p, q] = a[q, p] = 0.0
    else:
        raise ValidationError("Jacobi iteration did not converge")
    return np.sort(np.real(np.diag(a)))


def trace_norm_hermitian(mat, herm_tol=1e-10):
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValidationError("expected a square matrix")
    if np.max(np.abs(mat - mat.conj().T), initial=0.0) > herm_tol:
        raise ValidationError("matrix is not Hermitian")
    return float(np.sum(np.abs(jacobi_eigvalsh(0.5 * (mat + mat.conj().T)))))


def log_negativity(rho):
    """``log2`` of the trace norm of the left partial transpose.

    Values below :data:`NOISE_FLOOR` are reported as exactly 0.
    """
    en = math.log2(trace_norm_hermitian(partial_transpose(rho, "left")))
    return en if en >= NOISE_FLOOR else 0.0


@dataclass
class NegativitySeries:
    cfg: object
    taus: np.ndarray
    values: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.taus = np.asarray(self.taus, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.taus.shape != self.values.shape:
            raise ValidationError("taus and values differ in length")
        if np.any(np.diff(self.taus) <= 0):
            raise ValidationError("taus must be strictly increasing")
        if np.any(self.values < 0):
            raise ValidationError("negativity values must be >= 0")


def negativity_curve(cfg, taus, rho0=None, policy=ModeSumPolicy(), workers=None):
    """Logarithmic negativity of the evolved state on a grid of times.

    ``rho0`` defaults to ``(|0>+|1>)(|0>+|1>)/2``.  ``workers > 1``
    evaluates the grid on a thread pool; output order follows ``taus``.
    """
    taus = np.asarray(taus, dtype=float)
    if taus.ndim != 1 or taus.size == 0:
        raise ValidationError("taus must be a non-empty 1-D grid")
    if np.any(np.diff(taus) <= 0):
        raise ValidationError("taus must be strictly increasing")
    if rho0 is None:
        rho0 = FockDensityMatrix.plus_plus()
    rho0.validate()

    def one(tau):
        return log_negativity(propagate(rho0, tau, cfg, policy))

    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            values = list(pool.map(one, taus))
    else:
        values = [one(t) for t in taus]
    meta = {
        "policy": policy,
        "created": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    return NegativitySeries(cfg, taus, np.array(values), meta)


def rephasing_negativity(lam, sigma, j=1):
    """Negativity of the ``plus_plus`` initial state at ``tau = 2 pi j``.

    Dephasing vanishes there, the state is pure with cross phase
    ``2 p2 n1 n2`` and ``p2 = j lam pi (pi - sigma)^2 / 2``.
    """
    p2 = j * lam * math.pi * (math.pi - sigma) ** 2 / 2.0
    return math.log2(1.0 + abs(math.sin(p2)))


def entangled_window(series, center, threshold=1e-3):
    """Width in ``tau`` of the contiguous region around ``center`` with E_N > threshold.

    Edges are located by linear interpolation between grid points.  Returns
    0 if the grid point nearest ``center`` is not above threshold and
    ``inf`` if the region reaches the end of the grid.
    """
    taus, vals = series.taus, series.values
    i0 = int(np.argmin(np.abs(taus - center)))
    if vals[i0] <= threshold:
        return 0.0
    lo = i0
    while lo > 0 and vals[lo - 1] > threshold:
        lo -= 1
    hi = i0
    while hi < len(vals) - 1 and vals[hi + 1] > threshold:
        hi += 1
    if lo == 0 or hi == len(vals) - 1:
        return math.inf

    def crossing(a, b):
        f = (threshold - vals[a]) / (vals[b] - vals[a])
        return taus[a] + f * (taus[b] - taus[a])

    return float(crossing(hi, hi + 1) - crossing(lo - 1, lo))
