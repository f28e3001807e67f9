"""Brute-force cross-check of the analytic models.

The oracle never touches the closed-form moments. It rebuilds each system
from its coupling constants:

* Hamiltonian models: pair-creation and exchange couplings give the linear
  Heisenberg equations ``da/dt = L a + S a†``, hence a 6x6 quadrature drift
  ``M``; the propagator is ``exp(M t)`` evaluated by scaling and squaring.
* the beamsplitter model: squeezers acting on vacuum, followed by two
  beamsplitters embedded in the 3-mode space.

The resulting symplectic map transports the input covariance, and
:func:`verify_model` reports the entrywise distance to the analytic result.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .gaussian import DIM, OMEGA, CovarianceMatrix
from .models import (
    DEFAULT_GRIDS,
    AokiParams,
    AsymmetricParams,
    ModelParams,
    OpaParams,
    covariance,
    default_grid,
    model_name,
)

EQUIVALENCE_TOL = 1e-10
# asymmetry of S V Sᵀ, relative to its largest entry, tolerated before symmetrising
ASYMMETRY_TOL = 1e-12


# --- matrix exponential -------------------------------------------------------

def expm(a: np.ndarray, tol: float = 1e-16) -> np.ndarray:
    """Matrix exponential by scaling and squaring around a truncated Taylor series.

    ``a`` is scaled by ``2**-s`` until its 1-norm is at most 1/2, the series is
    summed until the next term drops below ``tol`` relative to the partial
    sum, and the result is squared ``s`` times.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expm needs a square matrix, got shape {a.shape}")
    norm = np.linalg.norm(a, 1)
    s = max(0, int(math.ceil(math.log2(norm / 0.5)))) if norm > 0.5 else 0
    scaled = a / 2.0 ** s
    n = a.shape[0]
    result = np.eye(n)
    term = np.eye(n)
    for k in range(1, 40):
        term = term @ scaled / k
        result = result + term
        if np.linalg.norm(term, 1) <= tol * np.linalg.norm(result, 1):
            break
    for _ in range(s):
        result = result @ result
    return result


# --- drift matrices -------------------------------------------------------------

def hamiltonian_drift(pair_creation: dict, exchange: dict | None = None) -> np.ndarray:
    """Quadrature drift for ``H = iħ Σ κ_ij (a_i† a_j† - a_i a_j) + iħ Σ λ_ij (a_i† a_j - a_j† a_i)``.

    Args:
        pair_creation: ``{(i, j): kappa}`` for unordered mode pairs.
        exchange: ``{(i, j): lam}``; ``lam`` moves excitations from ``j`` into ``i``.

    Returns:
        6x6 ``M`` with ``d(X1, Y1, ..., Y3)/dt = M (X1, Y1, ..., Y3)``.
    """
    sq = np.zeros((3, 3))
    ex = np.zeros((3, 3))
    for (i, j), k in pair_creation.items():
        sq[i - 1, j - 1] += k
        sq[j - 1, i - 1] += k
    for (i, j), lam in (exchange or {}).items():
        ex[i - 1, j - 1] += lam
        ex[j - 1, i - 1] -= lam
    # da/dt = ex a + sq a†  =>  dX/dt = (ex + sq) X,  dY/dt = (ex - sq) Y
    m = np.zeros((DIM, DIM))
    m[0::2, 0::2] = ex + sq
    m[1::2, 1::2] = ex - sq
    return m


def opa_drift(kappa: float = 1.0) -> np.ndarray:
    return hamiltonian_drift({(1, 2): kappa, (1, 3): kappa, (2, 3): kappa})


def asymmetric_drift(kappa1: float, kappa2: float) -> np.ndarray:
    return hamiltonian_drift({(1, 3): kappa1}, {(2, 3): kappa2})


def drift_matrix(model: ModelParams) -> tuple[np.ndarray, float]:
    """``(M, t)`` for a Hamiltonian model; the propagator is ``exp(M t)``."""
    if isinstance(model, OpaParams):
        return opa_drift(1.0), model.kt
    if isinstance(model, AsymmetricParams):
        return asymmetric_drift(model.kappa1, model.kappa2), model.t
    raise TypeError(f"{type(model).__name__} has no Hamiltonian drift")


# --- passive optics ---------------------------------------------------------------

def beamsplitter(reflectivity: float, m: int, n: int) -> np.ndarray:
    """Real beamsplitter on modes ``m, n``: ``m' = √(1-R) m + √R n``, ``n' = √R m - √(1-R) n``."""
    t, r = math.sqrt(1 - reflectivity), math.sqrt(reflectivity)
    u = np.eye(3)
    a, b = m - 1, n - 1
    u[a, a], u[a, b] = t, r
    u[b, a], u[b, b] = r, -t
    # identical action on X and Y
    return np.kron(u, np.eye(2))


def squeezer(r: float, mode: int, quadrature: str) -> np.ndarray:
    """Single-mode squeezer that scales the variance of ``quadrature`` by ``e^-r``."""
    s = np.eye(DIM)
    lo = 2 * (mode - 1) + (0 if quadrature == "X" else 1)
    hi = 2 * (mode - 1) + (1 if quadrature == "X" else 0)
    s[lo, lo] = math.exp(-r / 2)
    s[hi, hi] = math.exp(r / 2)
    return s


def aoki_network(mu: float, nu: float) -> np.ndarray:
    """Passive map: BS1 mixes a1, a2 into (b1, b0); BS2 mixes b0, a3 into (b2, b3)."""
    return beamsplitter(nu, 2, 3) @ beamsplitter(mu, 1, 2)


def aoki_input_squeezers(r: float) -> np.ndarray:
    return squeezer(r, 1, "Y") @ squeezer(r, 2, "X") @ squeezer(r, 3, "X")


# --- propagation --------------------------------------------------------------------

def build_propagator(model: ModelParams) -> np.ndarray:
    """Symplectic map from input to output quadratures.

    For the beamsplitter model this is the passive network only; the squeezing
    lives in :func:`input_covariance`.
    """
    if isinstance(model, AokiParams):
        return aoki_network(model.mu, model.nu)
    m, t = drift_matrix(model)
    return expm(m * t)


def input_covariance(model: ModelParams) -> CovarianceMatrix:
    if isinstance(model, AokiParams):
        s = aoki_input_squeezers(model.r)
        return CovarianceMatrix(s @ s.T)
    return CovarianceMatrix.vacuum()


def propagate(s: np.ndarray, cov0: CovarianceMatrix | np.ndarray) -> CovarianceMatrix:
    """``S V Sᵀ``, symmetrised after checking that roundoff asymmetry is negligible."""
    v = np.asarray(cov0, dtype=float)
    out = s @ v @ s.T
    scale = max(1.0, float(np.max(np.abs(out))))
    if np.max(np.abs(out - out.T)) > ASYMMETRY_TOL * scale:
        raise RuntimeError("propagated covariance is not symmetric beyond roundoff")
    return CovarianceMatrix(0.5 * (out + out.T))


def oracle_covariance(model: ModelParams) -> CovarianceMatrix:
    return propagate(build_propagator(model), input_covariance(model))


def symplectic_defect(s: np.ndarray) -> float:
    """``max |S Ω Sᵀ - Ω|``; zero for a map that preserves the commutators."""
    return float(np.max(np.abs(s @ OMEGA @ s.T - OMEGA)))


def drift_defect(m: np.ndarray) -> float:
    """``max |M Ω + Ω Mᵀ|``; zero for the generator of a symplectic flow."""
    return float(np.max(np.abs(m @ OMEGA + OMEGA @ m.T)))


# --- verification -------------------------------------------------------------------

@dataclass(frozen=True)
class VerificationReport:
    model: str
    grid: str
    points: int
    max_abs_diff: float
    pure: bool
    physical: bool
    # parameter point where the largest difference occurred
    worst: dict

    @property
    def passed(self) -> bool:
        return self.max_abs_diff <= EQUIVALENCE_TOL and self.pure and self.physical

    def as_dict(self) -> dict:
        return asdict(self)


def verify_model(model: ModelParams, variant: str = "exact") -> VerificationReport:
    """Compare the analytic covariance of one parameter point with the oracle."""
    kwargs = {"variant": variant} if isinstance(model, AsymmetricParams) else {}
    analytic = covariance(model, **kwargs)
    oracle = oracle_covariance(model)
    diff = float(np.max(np.abs(analytic.entries - oracle.entries)))
    return VerificationReport(
        model=model_name(model),
        grid=repr(model),
        points=1,
        max_abs_diff=diff,
        pure=analytic.is_pure() and oracle.is_pure(),
        physical=analytic.is_physical() and oracle.is_physical(),
        worst=asdict(model),
    )


def verify_grid(name: str, variant: str = "exact", points: list | None = None) -> VerificationReport:
    """Reduce :func:`verify_model` over a grid (default: the model's default grid).

    The reduction runs in grid order, so the reported worst point is deterministic.
    """
    params = points if points is not None else default_grid(name)
    worst, max_diff = None, -1.0
    pure = physical = True
    for p in params:
        rep = verify_model(p, variant)
        pure &= rep.pure
        physical &= rep.physical
        if rep.max_abs_diff > max_diff:
            max_diff, worst = rep.max_abs_diff, rep.worst
    if points is None:
        start, stop, step = DEFAULT_GRIDS[name]
        axis = {"opa": "kt", "aoki": "r", "asym": "zt"}[name]
        label = f"{axis}={start:g}:{stop:g}:{step:g}"
    else:
        label = f"{len(params)} custom points"
    return VerificationReport(
        model=name, grid=label, points=len(params), max_abs_diff=max_diff,
        pure=pure, physical=physical, worst=worst,
    )
