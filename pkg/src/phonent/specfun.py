"""Polylogarithms of order 2 and 3 on the unit circle.

For real ``theta`` the Fourier series

    Li_s(e^{i theta}) = sum_{n>=1} e^{i n theta} / n^s

split into cosine and sine parts.  The parts ``sl2`` (cosine, s=2) and
``sl3`` (sine, s=3) are Bernoulli-type polynomials on one period and are
evaluated exactly.  The transcendental parts ``cl3`` (cosine, s=3) and
``cl2`` (sine, s=2) are evaluated from their expansion about ``theta = 0``,
which converges geometrically with ratio ``(theta / 2 pi)^2 <= 1/4`` once
the argument is folded into ``[0, pi]``.

All functions accept scalars or numpy arrays and reduce the argument into
``[0, 2 pi)`` first.
"""

import math

import numpy as np
from scipy.special import zeta as _hurwitz_zeta

from .errors import DomainError

__all__ = [
    "ZETA3",
    "TWO_PI",
    "reduce_angle",
    "sl2",
    "sl3",
    "cl2",
    "cl3",
    "li_unit",
]

ZETA3 = 1.2020569031595942853997381615114499907649862923405
TWO_PI = 2.0 * math.pi

_NTERMS = 30
_ORDERS = np.arange(1, _NTERMS + 1, dtype=float)
_ZETA_EVEN = np.array([_hurwitz_zeta(2.0 * n, 1.0) for n in _ORDERS])
# theta^2 * sum_n c_n x^n, x = (theta / 2 pi)^2
_CL3_COEFFS = _ZETA_EVEN / (_ORDERS * (2 * _ORDERS + 1) * (2 * _ORDERS + 2))
_CL2_COEFFS = _ZETA_EVEN / (_ORDERS * (2 * _ORDERS + 1))


def _as_checked_array(theta):
    arr = np.asarray(theta, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("angle must be finite, got %r" % (theta,))
    return arr


def _out(arr):
    return float(arr) if arr.ndim == 0 else arr


def _reduce(arr):
    r = np.mod(arr, TWO_PI)
    # np.mod can round tiny negative inputs up to exactly 2 pi
    return np.where(r >= TWO_PI, 0.0, r)


def reduce_angle(theta):
    """Return ``theta`` modulo ``2 pi`` in the half-open interval ``[0, 2 pi)``.

    Raises
    ------
    DomainError
        If ``theta`` is NaN or infinite.
    """
    return _out(_reduce(_as_checked_array(theta)))


def sl2(theta):
    """Real part of Li_2(e^{i theta}), i.e. ``sum cos(n theta) / n^2``."""
    t = _reduce(_as_checked_array(theta))
    return _out(math.pi ** 2 / 6.0 - math.pi * t / 2.0 + t * t / 4.0)


def sl3(theta):
    """Imaginary part of Li_3(e^{i theta}), i.e. ``sum sin(n theta) / n^3``."""
    t = _reduce(_as_checked_array(theta))
    return _out(t * (math.pi ** 2 / 6.0 - math.pi * t / 4.0 + t * t / 12.0))


def _fold(theta):
    t = _reduce(_as_checked_array(theta))
    return t, np.minimum(t, TWO_PI - t)


def _power_series(coeffs, x):
    acc = np.zeros_like(x)
    for c in coeffs[::-1]:
        acc = acc * x + c
    return acc * x


def cl3(theta):
    """Real part of Li_3(e^{i theta}), i.e. ``sum cos(n theta) / n^3``.

    Uses ``zeta(3) + t^2/2 (log t - 3/2) - t^2 sum_n c_n (t / 2 pi)^{2n}``
    with ``c_n = zeta(2n) / (n (2n+1) (2n+2))`` on the folded angle
    ``t in [0, pi]``.  Thirty terms reach double precision.
    """
    _, t = _fold(theta)
    t2 = t * t
    with np.errstate(divide="ignore", invalid="ignore"):
        log_part = np.where(t > 0.0, 0.5 * t2 * (np.log(t) - 1.5), 0.0)
    series = t2 * _power_series(_CL3_COEFFS, t2 / TWO_PI ** 2)
    return _out(ZETA3 + log_part - series)


def cl2(theta):
    """Imaginary part of Li_2(e^{i theta}), the Clausen function Cl_2.

    Only used to complete :func:`li_unit` for ``s = 2``; odd about ``pi``.
    """
    r, t = _fold(theta)
    with np.errstate(divide="ignore", invalid="ignore"):
        head = np.where(t > 0.0, t - t * np.log(t), 0.0)
    val = head + t * _power_series(_CL2_COEFFS, t * t / TWO_PI ** 2)
    return _out(np.where(r > math.pi, -val, val))


def li_unit(s, theta):
    """Li_s(e^{i theta}) for ``s`` in {2, 3}.

    Callers obtain ``Li_s(-e^{i theta})`` by passing ``theta + pi``.

    Returns
    -------
    complex
        Python complex for scalar ``theta``, complex ndarray otherwise.
    """
    if s == 2:
        re, im = sl2(theta), cl2(theta)
    elif s == 3:
        re, im = cl3(theta), sl3(theta)
    else:
        raise DomainError("order s must be 2 or 3, got %r" % (s,))
    if np.ndim(re) == 0:
        return complex(re, im)
    return np.asarray(re) + 1j * np.asarray(im)
