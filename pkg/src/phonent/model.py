"""Device parameters, derived quantities and oscillator-strip couplings.

Two identical LC oscillators sit symmetrically about the centre of a
clamped elastic strip of length ``L``, a distance ``D`` apart.  Each couples
optomechanically to the transverse string modes ``omega_j = j * omega1``.
Everything downstream works in the dimensionless variables

    tau = omega1 * t,    sigma = pi * D / L,    Theta = hbar * omega1 / (k_B T),

together with the coupling constant
``lambda = Omega_b^2 hbar / (16 d^2 m omega1^3)``.
"""

import enum
import math
import warnings
from dataclasses import dataclass, fields

from scipy import constants as _const

from .errors import DomainError, ValidationError

__all__ = [
    "HBAR",
    "K_B",
    "DeviceParams",
    "DerivedParams",
    "CouplingMode",
    "CouplingSpec",
    "POINT_LIKE",
    "REFERENCE_DEVICE",
    "derive",
    "mode_frequency",
    "coupling",
    "parse_key_values",
    "load_key_values",
    "device_from_mapping",
]

HBAR = _const.hbar  # 1.054571817e-34 J s
K_B = _const.k  # 1.380649e-23 J/K


@dataclass(frozen=True)
class DeviceParams:
    """Physical strip and circuit quantities in SI units.

    Attributes
    ----------
    rho_m : float
        Strip mass density (kg/m^3).
    F : float
        Tensile force (N).
    W, T_thick, L : float
        Strip width, thickness and length (m).
    dL : float
        Length of each metallized capacitor segment (m).
    d_gap : float
        Capacitor vacuum gap (m).
    Omega_b : float
        Bare LC angular frequency (rad/s).
    D : float
        Capacitor separation (m).
    temperature : float
        Bath temperature (K); 0 selects the vacuum bath.
    """

    rho_m: float
    F: float
    W: float
    T_thick: float
    L: float
    dL: float
    d_gap: float
    Omega_b: float
    D: float
    temperature: float = 0.0

    def __post_init__(self):
        bad = []
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                bad.append(f.name)
            elif f.name == "temperature":
                if value < 0:
                    bad.append(f.name)
            elif value <= 0:
                bad.append(f.name)
        if bad:
            raise ValidationError("invalid device parameter(s): " + ", ".join(bad))
        if self.D >= self.L:
            raise ValidationError("invalid device parameter(s): D (must satisfy D < L)")
        if self.dL >= self.L / 100:
            warnings.warn("capacitor length dL is not small compared to L", stacklevel=3)


REFERENCE_DEVICE = DeviceParams(
    rho_m=1e3,
    F=1e-5,
    W=1e-6,
    T_thick=1e-7,
    L=0.02,
    dL=1e-6,
    d_gap=1e-7,
    Omega_b=2 * math.pi * 15e9,
    D=0.01,
)


@dataclass(frozen=True)
class DerivedParams:
    """Quantities derived from a :class:`DeviceParams`.

    ``theta`` is ``None`` for a zero-temperature bath.
    """

    device: DeviceParams
    m: float
    omega1: float
    v_ph: float
    lam: float
    sigma: float
    theta: float | None
    dt_causal: float

    @property
    def zero_temperature(self):
        return self.theta is None

    @property
    def omega_ratio(self):
        """``Omega_b / omega1``."""
        return self.device.Omega_b / self.omega1

    def time_of(self, tau):
        """Physical time (s) for dimensionless time ``tau``."""
        return tau / self.omega1


def derive(params):
    """Compute mass, frequencies, phonon speed and dimensionless constants."""
    p = params
    m = p.rho_m * p.W * p.T_thick * p.L / 2.0
    omega1 = math.pi * math.sqrt(p.F / (2.0 * m * p.L))
    v_ph = math.sqrt(p.F * p.L / (2.0 * m))
    lam = p.Omega_b ** 2 * HBAR / (16.0 * p.d_gap ** 2 * m * omega1 ** 3)
    theta = None if p.temperature == 0 else HBAR * omega1 / (K_B * p.temperature)
    return DerivedParams(
        device=p,
        m=m,
        omega1=omega1,
        v_ph=v_ph,
        lam=lam,
        sigma=math.pi * p.D / p.L,
        theta=theta,
        dt_causal=p.D / v_ph,
    )


def mode_frequency(j, dp):
    """Angular frequency of strip mode ``j`` (rad/s)."""
    if j < 1:
        raise DomainError("mode index must be >= 1, got %r" % (j,))
    return j * dp.omega1


class CouplingMode(enum.Enum):
    POINT_LIKE = "point_like"
    SINC_REGULATED = "sinc_regulated"


@dataclass(frozen=True)
class CouplingSpec:
    """Point-like couplings or sinc-regulated couplings with segment length ``dL``."""

    mode: CouplingMode = CouplingMode.POINT_LIKE
    dL: float = 0.0

    @classmethod
    def sinc_regulated(cls, dL):
        return cls(CouplingMode.SINC_REGULATED, dL)


POINT_LIKE = CouplingSpec()


def coupling(k, j, dp, spec=POINT_LIKE):
    """Coupling rate ``g_{k,j}`` (rad/s) of oscillator ``k`` to strip mode ``j``.

    Parameters
    ----------
    k : int
        1 for the left oscillator, 2 for the right one.
    j : int
        Strip mode index, ``j >= 1``.
    dp : DerivedParams
    spec : CouplingSpec
        ``POINT_LIKE`` drops the sinc cutoff and sets ``dL = 0``.
    """
    if k not in (1, 2):
        raise DomainError("oscillator index must be 1 or 2, got %r" % (k,))
    omega_j = mode_frequency(j, dp)
    dev = dp.device
    sign = -1.0 if k == 1 else 1.0
    if spec.mode is CouplingMode.SINC_REGULATED:
        if not spec.dL > 0:
            raise DomainError("sinc-regulated coupling needs dL > 0")
        dL = spec.dL
        omega_u = (2.0 / dL) * dp.v_ph
        x = omega_j / omega_u
        cutoff = math.sin(x) / x
    else:
        dL = 0.0
        cutoff = 1.0
    centre = (dev.L + sign * dev.D + sign * dL) / 2.0
    amp = -(dev.Omega_b / (2.0 * dev.d_gap)) * math.sqrt(HBAR / (2.0 * dp.m * omega_j))
    return amp * cutoff * math.sin(math.pi * j * centre / dev.L)


_DEVICE_KEYS = tuple(f.name for f in fields(DeviceParams))


def parse_key_values(text, allowed):
    """Parse ``name = value`` lines, ignoring blanks and ``#`` comments.

    Values are returned as stripped strings.  Unknown or repeated keys and
    lines without ``=`` raise :class:`ValidationError`.
    """
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError("line %d: expected 'name = value'" % lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in allowed:
            raise ValidationError("line %d: unknown key %r" % (lineno, key))
        if key in out:
            raise ValidationError("line %d: duplicate key %r" % (lineno, key))
        out[key] = value
    return out


def load_key_values(path, allowed=_DEVICE_KEYS):
    with open(path) as fh:
        return parse_key_values(fh.read(), allowed)


def device_from_mapping(mapping, base=REFERENCE_DEVICE):
    """Build :class:`DeviceParams` from ``base`` with string or float overrides."""
    values = {f: getattr(base, f) for f in _DEVICE_KEYS}
    for key, raw in mapping.items():
        if key not in values:
            raise ValidationError("unknown device parameter %r" % key)
        try:
            values[key] = float(raw)
        except (TypeError, ValueError):
            raise ValidationError("device parameter %s: not a number: %r" % (key, raw))
    return DeviceParams(**values)
