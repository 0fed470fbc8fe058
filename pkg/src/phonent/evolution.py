"""Reduced dynamics of the two oscillators after tracing out the strip.

A density-matrix element between photon-number states ``(n1, n2)`` and
``(n1', n2')`` only picks up a factor

    exp( -i tau r (Dn1 + Dn2)
         + i p1 [S1 Dn1 + S2 Dn2] + i p2 [S1 Dn2 + S2 Dn1]
         - d1 [Dn1^2 + Dn2^2] - d2 Dn1 Dn2 )

with ``Dn = n - n'``, ``S = n + n' + 1`` and ``r = Omega_b / omega1``.
The phases ``p1, p2`` and dephasing exponents ``d1, d2`` are functions of
``tau`` only.  In the point-like coupling limit each is a mode sum over

    p:  lambda * sum_j (j tau - sin j tau) w_j / j^3
    d:  lambda * sum_j (1 - cos j tau) w_j coth(j Theta / 2) / j^3

with ``w_j = 1 - (-1)^j cos(j sigma)`` for the single-oscillator terms and
``w_j = cos(j sigma) - (-1)^j`` for the cross terms (``d2`` carries an
extra factor 2).  The phases and the zero-temperature dephasing resum into
polylogarithms on the unit circle, see :mod:`phonent.specfun`.
"""

import functools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import polygamma

from .errors import DomainError, TruncationError, ValidationError
from .specfun import ZETA3, cl3, sl2, sl3

__all__ = [
    "DimensionlessConfig",
    "config_from_device",
    "ModeSumPolicy",
    "EvolutionPhases",
    "FockDensityMatrix",
    "mode_weights",
    "p1_closed",
    "p2_closed",
    "p_mode_sum",
    "d1_zero_t",
    "d2_zero_t",
    "d_mode_sum",
    "thermal_tail_bound",
    "terms_for_tolerance",
    "d_thermal",
    "phases_at",
    "apply_phases",
    "propagate",
]

PI = math.pi
# exponents below -UNDERFLOW are set to an exact zero factor
UNDERFLOW = 700.0
_CHUNK = 1 << 20


@dataclass(frozen=True)
class DimensionlessConfig:
    """Complete dimensionless problem statement.

    ``theta`` (``hbar omega1 / k_B T``) is ``None`` for the vacuum bath.
    ``omega_ratio`` (``Omega_b / omega1``) only enters when
    ``include_free_phase`` is set.
    """

    lam: float
    sigma: float
    theta: float | None = None
    include_free_phase: bool = False
    omega_ratio: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise ValidationError("lambda must be > 0, got %r" % (self.lam,))
        if not 0 < self.sigma < PI:
            raise ValidationError("sigma must lie in (0, pi), got %r" % (self.sigma,))
        if self.theta is not None and not (math.isfinite(self.theta) and self.theta > 0):
            raise ValidationError("Theta must be > 0 or None, got %r" % (self.theta,))
        if self.include_free_phase and not math.isfinite(self.omega_ratio):
            raise ValidationError("omega_ratio must be finite")

    @property
    def zero_temperature(self):
        return self.theta is None


def config_from_device(dp, include_free_phase=False):
    """:class:`DimensionlessConfig` for a :class:`~phonent.model.DerivedParams`."""
    return DimensionlessConfig(
        lam=dp.lam,
        sigma=dp.sigma,
        theta=dp.theta,
        include_free_phase=include_free_phase,
        omega_ratio=dp.omega_ratio,
    )


@dataclass(frozen=True)
class ModeSumPolicy:
    """How many strip modes a thermal sum keeps.

    Either a fixed count ``terms`` or the smallest count whose analytic tail
    bound is below ``tol``, never more than ``max_terms``.
    """

    terms: int | None = None
    tol: float | None = 1e-10
    max_terms: int = 10 ** 7

    def __post_init__(self):
        if (self.terms is None) == (self.tol is None):
            raise ValidationError("give exactly one of terms or tol")
        if self.terms is not None and self.terms < 1:
            raise ValidationError("terms must be >= 1")
        if self.tol is not None and not self.tol > 0:
            raise ValidationError("tol must be > 0")
        if self.max_terms < (self.terms or 1):
            raise ValidationError("max_terms must be >= terms")

    @classmethod
    def fixed(cls, terms, max_terms=10 ** 7):
        return cls(terms=terms, tol=None, max_terms=max(max_terms, terms))

    @classmethod
    def tolerance(cls, tol, max_terms=10 ** 7):
        return cls(terms=None, tol=tol, max_terms=max_terms)


@dataclass(frozen=True)
class EvolutionPhases:
    tau: float
    p1: float
    p2: float
    d1: float
    d2: float


def _check_tau(tau):
    arr = np.asarray(tau, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr < 0):
        raise DomainError("tau must be finite and >= 0, got %r" % (tau,))
    return arr


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def mode_weights(j, sigma):
    """Per-mode weights ``(w_self, w_cross)`` for integer array ``j``.

    In units of ``lambda / j^3`` these are ``g_{1,j}^2 / omega_j^2`` and
    ``g_{1,j} g_{2,j} / omega_j^2`` of the point-like couplings.
    """
    j = np.asarray(j)
    parity = np.where(j % 2 == 0, 1.0, -1.0)
    c = np.cos(j * sigma)
    return 1.0 - parity * c, c - parity


# closed forms -------------------------------------------------------------


def p1_closed(tau, cfg):
    """Single-oscillator phase ``p1(tau)`` in closed form."""
    t = _check_tau(tau)
    s = cfg.sigma
    val = (
        PI ** 2 * t / 6.0
        - t * sl2(s + PI)
        + 0.5 * sl3(t + s + PI)
        + 0.5 * sl3(t - s + PI)
        - sl3(t)
    )
    return _out(cfg.lam * val)


def p2_closed(tau, cfg):
    """Cross phase ``p2(tau)`` in closed form; zero for ``tau <= sigma``."""
    t = _check_tau(tau)
    s = cfg.sigma
    # Im Li3(-e^{-i tau}) = sl3(pi - tau)
    val = PI ** 2 * t / 12.0 + t * sl2(s) - sl3(PI - t) - 0.5 * sl3(t - s) - 0.5 * sl3(t + s)
    return _out(cfg.lam * val)


def d1_zero_t(tau, cfg):
    """Single-oscillator dephasing exponent for the vacuum bath."""
    t = _check_tau(tau)
    s = cfg.sigma
    val = 0.5 * cl3(PI - t + s) + 0.5 * cl3(t + s + PI) - cl3(t) - cl3(s + PI) + ZETA3
    return _out(cfg.lam * val)


def d2_zero_t(tau, cfg):
    """Cross dephasing exponent for the vacuum bath."""
    t = _check_tau(tau)
    s = cfg.sigma
    val = cl3(PI - t) + cl3(s) - 0.5 * cl3(t - s) - 0.5 * cl3(t + s) + 0.75 * ZETA3
    return _out(2.0 * cfg.lam * val)


# mode sums ----------------------------------------------------------------


def _chunks(first, last):
    for start in range(first, last + 1, _CHUNK):
        yield np.arange(start, min(start + _CHUNK, last + 1), dtype=np.int64)


def _which(which, names):
    if which not in names:
        raise DomainError("which must be one of %s, got %r" % (names, which))
    return names.index(which)


def p_mode_sum(which, tau, cfg, terms, tail_correction=False):
    """Phase ``p1`` or ``p2`` truncated to the lowest ``terms`` strip modes.

    With ``tail_correction`` the omitted modes' share of the non-oscillating
    part of the ``p1`` weights, ``lambda tau sum_{j>J} 1/j^2``, is added
    back exactly (trigamma).  The remaining tail is ``O(tau / J^2)``.
    """
    idx = _which(which, ("p1", "p2"))
    if terms < 1:
        raise DomainError("terms must be >= 1, got %r" % (terms,))
    t = float(_check_tau(tau))
    total = 0.0
    for j in _chunks(1, int(terms)):
        w = mode_weights(j, cfg.sigma)[idx]
        jf = j.astype(float)
        total += float(np.sum((jf * t - np.sin(jf * t)) * w / jf ** 3))
    if tail_correction and idx == 0:
        total += t * float(polygamma(1, terms + 1))
    return cfg.lam * total


def _coth_half(j, theta):
    if theta is None:
        return 1.0
    return 1.0 / np.tanh(0.5 * j * theta)


@functools.lru_cache(maxsize=16)
def _d_kernel(idx, sigma, theta, terms):
    j = np.arange(1, terms + 1, dtype=np.int64)
    jf = j.astype(float)
    kernel = mode_weights(j, sigma)[idx] * _coth_half(jf, theta) / jf ** 3
    jf.flags.writeable = False
    kernel.flags.writeable = False
    return jf, kernel


def d_mode_sum(which, tau, cfg, terms):
    """Dephasing exponent ``d1`` or ``d2`` from the lowest ``terms`` modes.

    Uses ``coth(j Theta / 2)`` for a finite ``cfg.theta`` and 1 otherwise.
    """
    idx = _which(which, ("d1", "d2"))
    if terms < 1:
        raise DomainError("terms must be >= 1, got %r" % (terms,))
    t = float(_check_tau(tau))
    terms = int(terms)
    if terms <= _CHUNK:
        jf, kernel = _d_kernel(idx, cfg.sigma, cfg.theta, terms)
        total = float(np.dot(1.0 - np.cos(jf * t), kernel))
    else:
        total = 0.0
        for j in _chunks(1, terms):
            w = mode_weights(j, cfg.sigma)[idx]
            jf = j.astype(float)
            total += float(np.sum((1.0 - np.cos(jf * t)) * w * _coth_half(jf, cfg.theta) / jf ** 3))
    return (2.0 if idx else 1.0) * cfg.lam * total


def thermal_tail_bound(which, terms, cfg):
    """Upper bound on the modes beyond ``terms`` of a thermal ``d`` sum.

    Each term is at most ``2 |w_j| coth(j Theta/2) / j^3`` with
    ``|w_j| <= 2``; coth decreases so the tail is below
    ``4 c lambda coth(J Theta/2) / (2 J^2)``, ``c = 2`` for ``d2``.
    """
    idx = _which(which, ("d1", "d2"))
    pref = 2.0 if idx else 1.0
    return pref * 4.0 * cfg.lam * float(_coth_half(float(terms), cfg.theta)) / (2.0 * terms ** 2)


def terms_for_tolerance(which, cfg, policy):
    """Number of modes a ``policy`` prescribes for a thermal sum."""
    if policy.terms is not None:
        return int(policy.terms)
    cap = int(policy.max_terms)
    if thermal_tail_bound(which, cap, cfg) >= policy.tol:
        raise TruncationError(
            "tail bound %.3g >= tol %.3g with %d terms"
            % (thermal_tail_bound(which, cap, cfg), policy.tol, cap),
            achieved=thermal_tail_bound(which, cap, cfg),
            terms=cap,
        )
    lo, hi = 0, 1
    while hi < cap and thermal_tail_bound(which, hi, cfg) >= policy.tol:
        lo, hi = hi, min(2 * hi, cap)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if thermal_tail_bound(which, mid, cfg) < policy.tol:
            hi = mid
        else:
            lo = mid
    return hi


def d_thermal(which, tau, cfg, policy=ModeSumPolicy()):
    """Finite-temperature ``d1`` or ``d2`` as a truncated sum with bounded tail."""
    if cfg.zero_temperature:
        raise DomainError("zero-temperature bath: use d1_zero_t / d2_zero_t")
    _which(which, ("d1", "d2"))
    return d_mode_sum(which, tau, cfg, terms_for_tolerance(which, cfg, policy))


def phases_at(tau, cfg, policy=ModeSumPolicy()):
    """``(p1, p2, d1, d2)`` at a single dimensionless time."""
    tau = float(_check_tau(tau))
    if cfg.zero_temperature:
        d1, d2 = d1_zero_t(tau, cfg), d2_zero_t(tau, cfg)
    else:
        d1, d2 = d_thermal("d1", tau, cfg, policy), d_thermal("d2", tau, cfg, policy)
    return EvolutionPhases(tau, p1_closed(tau, cfg), p2_closed(tau, cfg), d1, d2)


# density matrices ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FockDensityMatrix:
    """Two-oscillator state in the Fock basis truncated at ``cutoff`` photons.

    Row/column index of ``(n1, n2)`` is ``n1 * (cutoff + 1) + n2``.
    """

    cutoff: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        dim = (self.cutoff + 1) ** 2
        if self.cutoff < 0 or mat.shape != (dim, dim):
            raise ValidationError(
                "matrix shape %s does not match cutoff %r" % (mat.shape, self.cutoff)
            )
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self):
        return (self.cutoff + 1) ** 2

    def numbers(self):
        """Photon numbers ``(n1, n2)`` of every basis index."""
        n = np.arange(self.dim)
        return n // (self.cutoff + 1), n % (self.cutoff + 1)

    def validate(self, herm_tol=1e-12, trace_tol=1e-12, psd_tol=1e-10):
        m = self.matrix
        if not np.all(np.isfinite(m)):
            raise ValidationError("density matrix has non-finite entries")
        if np.max(np.abs(m - m.conj().T)) > herm_tol:
            raise ValidationError("density matrix is not Hermitian")
        if abs(np.trace(m) - 1.0) > trace_tol:
            raise ValidationError("density matrix trace is %r" % np.trace(m))
        if np.linalg.eigvalsh(0.5 * (m + m.conj().T)).min() < -psd_tol:
            raise ValidationError("density matrix is not positive semidefinite")
        return self

    def purity(self):
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    @classmethod
    def from_ket(cls, psi, cutoff):
        psi = np.asarray(psi, dtype=complex).ravel()
        norm = np.linalg.norm(psi)
        if not abs(norm - 1.0) < 1e-12:
            raise ValidationError("state vector is not normalized (norm %r)" % norm)
        return cls(cutoff, np.outer(psi, psi.conj()))

    @classmethod
    def product(cls, left, right):
        """Pure product state from single-oscillator amplitude vectors."""
        left = np.asarray(left, dtype=complex)
        right = np.asarray(right, dtype=complex)
        if left.shape != right.shape:
            raise ValidationError("left and right amplitudes need the same cutoff")
        return cls.from_ket(np.kron(left, right), left.size - 1)

    @classmethod
    def plus_plus(cls):
        """``(|0> + |1>)(|0> + |1>) / 2`` with cutoff 1."""
        half = np.array([1.0, 1.0]) / math.sqrt(2.0)
        return cls.product(half, half)


def apply_phases(rho0, phases, free_phase_ratio=None):
    """Multiply every element of ``rho0`` by its evolution factor.

    ``free_phase_ratio`` is ``Omega_b / omega1``; ``None`` omits the free
    rotation.
    """
    n1, n2 = rho0.numbers()
    dn1 = n1[:, None] - n1[None, :]
    dn2 = n2[:, None] - n2[None, :]
    s1 = n1[:, None] + n1[None, :] + 1
    s2 = n2[:, None] + n2[None, :] + 1
    phase = phases.p1 * (s1 * dn1 + s2 * dn2) + phases.p2 * (s1 * dn2 + s2 * dn1)
    decay = phases.d1 * (dn1 ** 2 + dn2 ** 2) + phases.d2 * (dn1 * dn2)
    factor = np.where(decay > UNDERFLOW, 0.0, np.exp(-np.minimum(decay, UNDERFLOW) + 1j * phase))
    if free_phase_ratio is not None:
        # separate factor: the free angle is ~1e7 rad and would swamp p1, p2
        factor = factor * np.exp(-1j * (phases.tau * free_phase_ratio) * (dn1 + dn2))
    return FockDensityMatrix(rho0.cutoff, rho0.matrix * factor)


def propagate(rho0, tau, cfg, policy=ModeSumPolicy()):
    """Evolve ``rho0`` to dimensionless time ``tau``."""
    if not isinstance(rho0, FockDensityMatrix):
        raise ValidationError("rho0 must be a FockDensityMatrix")
    rho0.validate()
    phases = phases_at(tau, cfg, policy)
    ratio = cfg.omega_ratio if cfg.include_free_phase else None
    return apply_phases(rho0, phases, ratio)
