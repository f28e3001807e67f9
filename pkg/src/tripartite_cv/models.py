"""Analytic covariance matrices for three tripartite optical systems.

* ``OpaParams`` -- a single amplifier with three concurrent, equally pumped
  pair-creation processes (undepleted pump, interaction ``kt``).
* ``AokiParams`` -- three squeezed vacua mixed on two beamsplitters of
  reflectivities ``mu`` and ``nu``.
* ``AsymmetricParams`` -- downconversion into modes 1, 3 (``kappa1``) together
  with frequency conversion 3 -> 2 (``kappa2``), for ``kappa1 > kappa2``.

Each covariance is assembled entry by entry from closed-form second moments.
The matrix-exponential route in :mod:`tripartite_cv.oracle` is kept separate
so that the two can be compared.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .gaussian import DIM, CovarianceMatrix

# below this |zeta t|, sinh(z)/z and (cosh(z)-1)/z^2 come from their series
SERIES_THRESHOLD = 1e-2


class UnsupportedRegimeError(ValueError):
    """Parameters fall outside the regime the closed forms are valid for."""


def _finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class OpaParams:
    kt: float

    def __post_init__(self):
        kt = _finite("kt", self.kt)
        if kt < 0:
            raise ValueError(f"kt must be >= 0, got {kt}")
        object.__setattr__(self, "kt", kt)


@dataclass(frozen=True)
class AokiParams:
    r: float
    mu: float = 2.0 / 3.0
    nu: float = 0.5

    def __post_init__(self):
        r = _finite("r", self.r)
        mu = _finite("mu", self.mu)
        nu = _finite("nu", self.nu)
        if r < 0:
            raise ValueError(f"r must be >= 0, got {r}")
        if not 0.0 <= mu <= 1.0:
            raise ValueError(f"mu must lie in [0, 1], got {mu}")
        if not 0.0 <= nu <= 1.0:
            raise ValueError(f"nu must lie in [0, 1], got {nu}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "nu", nu)


@dataclass(frozen=True)
class AsymmetricParams:
    kappa1: float = 1.0
    kappa2: float = 0.6
    t: float = 0.0

    def __post_init__(self):
        k1 = _finite("kappa1", self.kappa1)
        k2 = _finite("kappa2", self.kappa2)
        t = _finite("t", self.t)
        if k2 < 0:
            raise ValueError(f"kappa2 must be >= 0, got {k2}")
        if t < 0:
            raise ValueError(f"t must be >= 0, got {t}")
        if k1 <= k2:
            raise UnsupportedRegimeError(
                f"kappa1 must exceed kappa2 (got kappa1={k1}, kappa2={k2}); "
                "the hyperbolic solutions only hold for kappa1 > kappa2, and the "
                "oscillatory kappa2 > kappa1 regime is not supported"
            )
        object.__setattr__(self, "kappa1", k1)
        object.__setattr__(self, "kappa2", k2)
        object.__setattr__(self, "t", t)

    @property
    def zeta(self) -> float:
        return math.sqrt((self.kappa1 - self.kappa2) * (self.kappa1 + self.kappa2))

    @property
    def zt(self) -> float:
        return self.zeta * self.t

    @classmethod
    def from_zt(cls, zt: float, kappa1: float = 1.0, kappa2: float = 0.6) -> "AsymmetricParams":
        probe = cls(kappa1, kappa2, 0.0)
        return cls(kappa1, kappa2, float(zt) / probe.zeta)


ModelParams = Union[OpaParams, AokiParams, AsymmetricParams]


def _fill(xx: np.ndarray, yy: np.ndarray) -> CovarianceMatrix:
    """Interleave decoupled 3x3 X and Y blocks into a 6x6 covariance."""
    m = np.zeros((DIM, DIM))
    m[0::2, 0::2] = xx
    m[1::2, 1::2] = yy
    return CovarianceMatrix(m)


# --- single amplifier -------------------------------------------------------

@dataclass(frozen=True)
class OpaCoefficients:
    A: float
    B: float
    C: float
    D: float


def opa_coefficients(p: OpaParams) -> OpaCoefficients:
    k = p.kt
    return OpaCoefficients(
        A=math.cosh(2 * k) + 2 * math.cosh(k),
        B=math.sinh(2 * k) - 2 * math.sinh(k),
        C=math.cosh(2 * k) - math.cosh(k),
        D=math.sinh(k) + math.sinh(2 * k),
    )


def opa_covariance(p: OpaParams) -> CovarianceMatrix:
    c = opa_coefficients(p)
    vx = ((c.A + c.B) ** 2 + 2 * (c.C + c.D) ** 2) / 9
    vy = ((c.A - c.B) ** 2 + 2 * (c.C - c.D) ** 2) / 9
    cx = (c.C + c.D) * (2 * c.A + 2 * c.B + c.C + c.D) / 9
    cy = (c.C - c.D) * (2 * c.A + c.C - 2 * c.B - c.D) / 9
    ones = np.ones((3, 3))
    xx = cx * ones + (vx - cx) * np.eye(3)
    yy = cy * ones + (vy - cy) * np.eye(3)
    return _fill(xx, yy)


# --- squeezed inputs on two beamsplitters -----------------------------------

def aoki_input_variances(r: float) -> tuple[np.ndarray, np.ndarray]:
    """(X, Y) variances of the three squeezed inputs: a1 is Y-squeezed, a2, a3 X-squeezed."""
    up, down = math.exp(r), math.exp(-r)
    return np.array([up, down, down]), np.array([down, up, up])


def aoki_mixing_matrix(mu: float, nu: float) -> np.ndarray:
    """Real 3x3 matrix taking input amplitudes a1..a3 to outputs b1..b3."""
    return np.array([
        [math.sqrt(1 - mu), math.sqrt(mu), 0.0],
        [math.sqrt(mu * (1 - nu)), -math.sqrt((1 - mu) * (1 - nu)), math.sqrt(nu)],
        [math.sqrt(mu * nu), -math.sqrt(nu * (1 - mu)), -math.sqrt(1 - nu)],
    ])


def _aoki_block(v: np.ndarray, mu: float, nu: float) -> np.ndarray:
    v1, v2, v3 = v
    out = np.empty((3, 3))
    out[0, 0] = (1 - mu) * v1 + mu * v2
    out[1, 1] = mu * (1 - nu) * v1 + (1 - nu) * (1 - mu) * v2 + nu * v3
    out[2, 2] = mu * nu * v1 + nu * (1 - mu) * v2 + (1 - nu) * v3
    out[0, 1] = out[1, 0] = math.sqrt(mu * (1 - mu) * (1 - nu)) * (v1 - v2)
    out[0, 2] = out[2, 0] = math.sqrt(mu * nu * (1 - mu)) * (v1 - v2)
    out[1, 2] = out[2, 1] = math.sqrt(nu * (1 - nu)) * (mu * v1 + (1 - mu) * v2 - v3)
    return out


def aoki_covariance(p: AokiParams) -> CovarianceMatrix:
    vx, vy = aoki_input_variances(p.r)
    return _fill(_aoki_block(vx, p.mu, p.nu), _aoki_block(vy, p.mu, p.nu))


@dataclass(frozen=True)
class AokiClosedForms:
    ds_plus: float
    ds_minus: float
    v_ij: float
    v_ijk: float
    steer_one: float
    steer_pair: float


def aoki_closed_forms(r: float) -> AokiClosedForms:
    """Criterion values for the symmetric splitting ``mu=2/3, nu=1/2``.

    ``v_ij`` uses the optimal gains; ``steer_one`` and ``steer_pair`` are the
    products for two-steer-one and one-steer-two inference.
    """
    r = _finite("r", r)
    if r < 0:
        raise ValueError(f"r must be >= 0, got {r}")
    ch, sh = math.cosh(r), math.sinh(r)
    e1, e2, e3 = math.exp(r), math.exp(2 * r), math.exp(3 * r)
    denom = 5 + 4 * math.cosh(2 * r)
    return AokiClosedForms(
        ds_plus=4 * ch + 8 / 3 * sh,
        ds_minus=4 * ch - 8 / 3 * sh,
        v_ij=(2 + 10 * e2) / (e1 + 2 * e3),
        v_ijk=4 * (ch - 2 * math.sqrt(2) / 3 * sh),
        steer_one=9 / denom,
        steer_pair=36 / denom,
    )


# --- asymmetric downconversion + frequency conversion -----------------------

@dataclass(frozen=True)
class AsymmetricCoefficients:
    alpha: float
    beta: float
    gamma: float
    delta: float
    epsilon: float
    eta: float
    # coefficient of a3 in the a2 solution; equals epsilon for the exact solution
    a2_a3: float


def _sinhc(z: float) -> float:
    """sinh(z)/z."""
    if abs(z) >= SERIES_THRESHOLD:
        return math.sinh(z) / z
    z2 = z * z
    return sum(z2 ** n / math.factorial(2 * n + 1) for n in range(6))


def _coshc(z: float) -> float:
    """(cosh(z) - 1)/z**2."""
    if abs(z) >= SERIES_THRESHOLD:
        return (math.cosh(z) - 1) / (z * z)
    z2 = z * z
    return sum(z2 ** n / math.factorial(2 * n + 2) for n in range(6))


def asymmetric_coefficients(p: AsymmetricParams, variant: str = "exact") -> AsymmetricCoefficients:
    """Solution coefficients of the asymmetric model.

    ``variant="exact"`` gives the solution of the equations of motion::

        a1(t) = alpha a1 - beta a2† + gamma a3†
        a2(t) = beta a1† + delta a2 + epsilon a3
        a3(t) = gamma a1† - epsilon a2 + eta a3

    with ``gamma = kappa1 sinh(zeta t)/zeta`` and
    ``epsilon = kappa2 sinh(zeta t)/zeta``. ``variant="zeta-squared"``
    reproduces a widely circulated form with ``zeta**2`` in those two
    denominators and ``gamma`` in place of ``epsilon`` in ``a2(t)``; it is kept
    only to demonstrate that it breaks the commutation relations (see
    docs/errata.md).
    """
    k1, k2, t = p.kappa1, p.kappa2, p.t
    z = p.zeta * t
    s1 = t * _sinhc(z)       # sinh(zeta t)/zeta
    s2 = t * t * _coshc(z)   # (cosh(zeta t) - 1)/zeta^2
    alpha = 1 + k1 * k1 * s2
    beta = k1 * k2 * s2
    delta = 1 - k2 * k2 * s2
    eta = math.cosh(z)
    if variant == "exact":
        gamma, epsilon = k1 * s1, k2 * s1
        return AsymmetricCoefficients(alpha, beta, gamma, delta, epsilon, eta, epsilon)
    if variant == "zeta-squared":
        zeta2 = p.zeta ** 2
        if zeta2 == 0:
            raise ValueError("zeta-squared variant is undefined at zeta = 0")
        gamma = k1 * math.sinh(z) / zeta2
        epsilon = k2 * math.sinh(z) / zeta2
        return AsymmetricCoefficients(alpha, beta, gamma, delta, epsilon, eta, gamma)
    raise ValueError(f"unknown variant {variant!r}; expected 'exact' or 'zeta-squared'")


def asymmetric_transfer_matrix(c: AsymmetricCoefficients) -> np.ndarray:
    """6x6 quadrature map induced by the coefficient set (interleaved order)."""
    xx = np.array([
        [c.alpha, -c.beta, c.gamma],
        [c.beta, c.delta, c.a2_a3],
        [c.gamma, -c.epsilon, c.eta],
    ])
    # conjugated inputs flip sign on the Y quadrature
    yy = np.array([
        [c.alpha, c.beta, -c.gamma],
        [-c.beta, c.delta, c.a2_a3],
        [-c.gamma, -c.epsilon, c.eta],
    ])
    s = np.zeros((DIM, DIM))
    s[0::2, 0::2] = xx
    s[1::2, 1::2] = yy
    return s


def asymmetric_covariance(p: AsymmetricParams, variant: str = "exact") -> CovarianceMatrix:
    c = asymmetric_coefficients(p, variant)
    a, b, g, d, e, h, f = c.alpha, c.beta, c.gamma, c.delta, c.epsilon, c.eta, c.a2_a3
    v1 = a * a + b * b + g * g
    v2 = b * b + d * d + f * f
    v3 = g * g + e * e + h * h
    x12 = a * b - b * d + g * f
    x13 = a * g + b * e + g * h
    x23 = b * g - d * e + f * h
    xx = np.array([[v1, x12, x13], [x12, v2, x23], [x13, x23, v3]])
    yy = np.array([[v1, -x12, -x13], [-x12, v2, x23], [-x13, x23, v3]])
    return _fill(xx, yy)


def covariance(model: ModelParams, **kwargs) -> CovarianceMatrix:
    """Dispatch to the analytic covariance for any model parameter set."""
    match model:
        case OpaParams():
            return opa_covariance(model)
        case AokiParams():
            return aoki_covariance(model)
        case AsymmetricParams():
            return asymmetric_covariance(model, **kwargs)
    raise TypeError(f"unknown model parameters {model!r}")


def model_name(model: ModelParams) -> str:
    return {OpaParams: "opa", AokiParams: "aoki", AsymmetricParams: "asym"}[type(model)]


# --- default grids -----------------------------------------------------------

def grid(start: float, stop: float, step: float) -> np.ndarray:
    """Inclusive grid ``start, start+step, ..., <= stop``, each point rounded to 12 decimals."""
    if not step > 0:
        raise ValueError(f"step must be > 0, got {step}")
    if start > stop:
        raise ValueError(f"start ({start}) must not exceed stop ({stop})")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return np.round(start + step * np.arange(n), 12)


DEFAULT_GRIDS = {
    "opa": (0.0, 2.0, 0.01),
    "aoki": (0.0, 3.0, 0.01),
    "asym": (0.0, 2.0, 0.01),
}

FIGURE_KAPPAS = (1.0, 0.6)


def default_grid(name: str) -> list[ModelParams]:
    """Parameter points for a model's default sweep (asym is swept in zeta*t)."""
    pts = grid(*DEFAULT_GRIDS[name])
    if name == "opa":
        return [OpaParams(float(k)) for k in pts]
    if name == "aoki":
        return [AokiParams(float(r)) for r in pts]
    if name == "asym":
        return [AsymmetricParams.from_zt(float(z), *FIGURE_KAPPAS) for z in pts]
    raise ValueError(f"unknown model {name!r}")


__all__ = [
    "AokiClosedForms", "AokiParams", "AsymmetricCoefficients", "AsymmetricParams",
    "ModelParams", "OpaCoefficients", "OpaParams",
    "UnsupportedRegimeError", "aoki_closed_forms", "aoki_covariance",
    "aoki_input_variances", "aoki_mixing_matrix", "asymmetric_coefficients",
    "asymmetric_covariance", "asymmetric_transfer_matrix", "covariance",
    "default_grid", "grid", "model_name", "opa_coefficients", "opa_covariance",
]
