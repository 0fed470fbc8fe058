"""Brute-force check of the reduced dynamics.

The optomechanical Hamiltonian is built for the two oscillators and a few
strip modes, each mode truncated at ``n_max`` phonons, and diagonalised
exactly.  Starting from a system state times the phonon vacuum, the strip
is traced out and the result compared with the analytic evolution factor
evaluated with the same finite set of modes.

Everything is in units of ``hbar * omega1``; time is ``tau = omega1 t``.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import polygamma

from .errors import ResourceError, ValidationError
from .evolution import EvolutionPhases, FockDensityMatrix, apply_phases
from .model import POINT_LIKE, coupling

__all__ = [
    "MAX_DIM",
    "BathTruncation",
    "build_hamiltonian",
    "sector_eigensystems",
    "evolve_and_reduce",
    "truncated_phases",
    "analytic_truncated_reference",
]

MAX_DIM = 10 ** 5


@dataclass(frozen=True, eq=False)
class BathTruncation:
    """Finite set of strip modes for the brute-force evolution.

    Attributes
    ----------
    n_max : int
        Phonon cutoff per strip mode.
    g : ndarray, shape (2, J)
        Couplings ``g_{k,j} / omega1`` of both oscillators.
    omegas : ndarray, shape (J,)
        Mode frequencies ``omega_j / omega1``.
    cutoff : int
        Photon cutoff per oscillator.
    omega_ratio : float
        ``Omega_b / omega1``.
    scale : float
        Factor already applied to the device couplings.
    """

    n_max: int
    g: np.ndarray
    omegas: np.ndarray
    cutoff: int = 1
    omega_ratio: float = 0.0
    scale: float = 1.0

    def __post_init__(self):
        g = np.asarray(self.g, dtype=float)
        om = np.asarray(self.omegas, dtype=float)
        if g.ndim != 2 or g.shape[0] != 2 or g.shape[1] != om.size or om.size < 1:
            raise ValidationError("couplings must have shape (2, J) matching omegas")
        if np.any(om <= 0):
            raise ValidationError("mode frequencies must be positive")
        if self.n_max < 1 or self.cutoff < 0:
            raise ValidationError("n_max must be >= 1 and cutoff >= 0")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "omegas", om)

    @property
    def modes(self):
        return self.omegas.size

    @property
    def system_dim(self):
        return (self.cutoff + 1) ** 2

    @property
    def bath_dim(self):
        return (self.n_max + 1) ** self.modes

    @property
    def dim(self):
        return self.system_dim * self.bath_dim

    def max_displacement(self):
        return float(np.max(np.abs(self.g) / self.omegas))

    def check_guards(self):
        # the product overflows before the guard for many modes
        if self.modes * math.log(self.n_max + 1) + math.log(self.system_dim) > math.log(MAX_DIM):
            raise ResourceError("Hilbert space dimension exceeds %d" % MAX_DIM)
        if self.max_displacement() > 0.3 * math.sqrt(self.n_max):
            raise ValidationError("couplings too strong for phonon cutoff %d" % self.n_max)

    @classmethod
    def from_device(cls, dp, modes, n_max, cutoff=1, scale=None, omega_ratio=None):
        """Lowest ``modes`` point-like couplings of a device.

        ``scale=None`` shrinks couplings, if needed, until
        ``max |g/omega| * (cutoff + 1) <= 0.3 sqrt(n_max)``.
        """
        j = np.arange(1, modes + 1)
        g = np.array(
            [[coupling(k, int(jj), dp, POINT_LIKE) / dp.omega1 for jj in j] for k in (1, 2)]
        )
        if scale is None:
            worst = float(np.max(np.abs(g) / j)) * (cutoff + 1)
            scale = min(1.0, 0.3 * math.sqrt(n_max) / worst)
        ratio = dp.omega_ratio if omega_ratio is None else omega_ratio
        return cls(n_max, scale * g, j.astype(float), cutoff, ratio, scale)


def _ladder(n_max):
    return np.diag(np.sqrt(np.arange(1, n_max + 1, dtype=float)), 1)


def _bath_ops(trunc):
    """Position operators ``b_j + b_j^dag`` and the free bath Hamiltonian."""
    d = trunc.n_max + 1
    eye = np.eye(d)
    b = _ladder(trunc.n_max)
    x = b + b.T
    num = np.diag(np.arange(d, dtype=float))
    xs, h0 = [], np.zeros((trunc.bath_dim, trunc.bath_dim))
    for j, om in enumerate(trunc.omegas):
        left = np.eye(d ** j)
        right = np.eye(d ** (trunc.modes - j - 1))
        xs.append(np.kron(np.kron(left, x), right))
        h0 += om * np.kron(np.kron(left, num + 0.5 * eye), right)
    return xs, h0


def _sector_numbers(trunc):
    n = np.arange(trunc.system_dim)
    return n // (trunc.cutoff + 1), n % (trunc.cutoff + 1)


def _sector_blocks(trunc):
    """Bath Hamiltonian of every photon sector without its free LC energy."""
    trunc.check_guards()
    xs, h0 = _bath_ops(trunc)
    n1, n2 = _sector_numbers(trunc)
    blocks = []
    for a, b in zip(n1, n2):
        h = h0.copy()
        for j, x in enumerate(xs):
            h += (trunc.g[0, j] * (a + 0.5) + trunc.g[1, j] * (b + 0.5)) * x
        blocks.append(h)
    return blocks


def build_hamiltonian(trunc):
    """Full Hamiltonian matrix in units of ``hbar omega1``.

    Basis index is ``system_index * bath_dim + bath_index`` with the system
    index ordered as in :class:`~phonent.evolution.FockDensityMatrix` and
    strip mode 1 the slowest-varying bath digit.
    """
    blocks = _sector_blocks(trunc)
    n1, n2 = _sector_numbers(trunc)
    nb = trunc.bath_dim
    h = np.zeros((trunc.dim, trunc.dim))
    for s, blk in enumerate(blocks):
        free = trunc.omega_ratio * (n1[s] + n2[s] + 1.0)
        sl = slice(s * nb, (s + 1) * nb)
        h[sl, sl] = blk + free * np.eye(nb)
    return h


def sector_eigensystems(trunc):
    """``(energies, vectors, block)`` of every photon sector, free LC energy removed."""
    out = []
    for blk in _sector_blocks(trunc):
        e, v = np.linalg.eigh(blk)
        out.append((e, v, blk))
    return out


def evolve_and_reduce(psi0, tau, trunc):
    """Evolve ``psi0`` times the phonon vacuum exactly and trace out the strip.

    Parameters
    ----------
    psi0 : array_like
        Normalized system amplitudes of length ``(cutoff + 1)**2``.
    tau : float
        Dimensionless time ``omega1 t``.
    trunc : BathTruncation
    """
    psi0 = np.asarray(psi0, dtype=complex).ravel()
    if psi0.size != trunc.system_dim:
        raise ValidationError("system state has wrong dimension")
    if abs(np.linalg.norm(psi0) - 1.0) > 1e-12:
        raise ValidationError("system state is not normalized")
    n1, n2 = _sector_numbers(trunc)
    vacuum = np.zeros(trunc.bath_dim)
    vacuum[0] = 1.0
    branches = []
    for s, (e, v, _) in enumerate(sector_eigensystems(trunc)):
        phi = v @ (np.exp(-1j * e * tau) * (v.conj().T @ vacuum))
        free = np.exp(-1j * trunc.omega_ratio * (n1[s] + n2[s] + 1.0) * tau)
        branches.append(psi0[s] * free * phi)
    branches = np.array(branches)
    return FockDensityMatrix(trunc.cutoff, branches @ branches.conj().T)


def truncated_phases(tau, trunc, lam=None):
    """``p1, p2, d1, d2`` from the modes of ``trunc`` for a vacuum bath.

    If ``lam`` is given, ``lam * tau * sum_{j>J} 1/j^2`` is added to ``p1``,
    the non-oscillating share of the omitted point-like modes.
    """
    g1, g2 = trunc.g
    om = trunc.omegas
    if np.max(np.abs(g1 ** 2 - g2 ** 2)) > 1e-12 * max(np.max(g1 ** 2), 1e-300):
        raise ValidationError("analytic reference needs |g1| = |g2| mode by mode")
    phase_kernel = (om * tau - np.sin(om * tau)) / om ** 2
    decay_kernel = (1.0 - np.cos(om * tau)) / om ** 2
    p1 = float(np.sum(g1 ** 2 * phase_kernel))
    if lam is not None:
        p1 += lam * trunc.scale ** 2 * tau * float(polygamma(1, trunc.modes + 1))
    return EvolutionPhases(
        tau=tau,
        p1=p1,
        p2=float(np.sum(g1 * g2 * phase_kernel)),
        d1=float(np.sum(g1 ** 2 * decay_kernel)),
        d2=2.0 * float(np.sum(g1 * g2 * decay_kernel)),
    )


def analytic_truncated_reference(rho0, tau, trunc, lam=None):
    """Analytic evolution of ``rho0`` restricted to the modes of ``trunc``.

    Includes the free LC rotation so it is directly comparable with
    :func:`evolve_and_reduce`.  See :func:`truncated_phases` for ``lam``.
    """
    if rho0.cutoff != trunc.cutoff:
        raise ValidationError("state and truncation disagree on the photon cutoff")
    return apply_phases(rho0, truncated_phases(tau, trunc, lam), trunc.omega_ratio)
