"""Three-mode Gaussian covariance matrices and quadrature algebra.

Conventions used throughout the package:

* quadratures are ``X = a + a†`` and ``Y = -i(a - a†)``, so the vacuum
  variance is 1 and ``[X, Y] = 2i``;
* the flattened quadrature order is interleaved, ``(X1, Y1, X2, Y2, X3, Y3)``;
* all states have zero mean, so a state is fully described by its 6x6
  symmetric covariance matrix.

A linear combination of quadratures is just a length-6 numpy vector in the
same ordering; :func:`X` and :func:`Y` build the unit vectors, so
``X(1) - (X(2) + X(3)) / np.sqrt(2)`` is a valid combination.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

N_MODES = 3
DIM = 2 * N_MODES
MODES = (1, 2, 3)

# physicality / purity slack
PHYSICAL_TOL = 1e-9


class Quadrature(enum.Enum):
    X = 0
    Y = 1


class QuadIndex(NamedTuple):
    """A single quadrature of one mode, e.g. ``QuadIndex(2, Quadrature.Y)``."""

    mode: int
    quadrature: Quadrature

    @property
    def flat(self) -> int:
        check_mode(self.mode)
        return 2 * (self.mode - 1) + self.quadrature.value


def check_mode(mode: int) -> int:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    return mode


def unit(index: QuadIndex) -> np.ndarray:
    v = np.zeros(DIM)
    v[index.flat] = 1.0
    return v


def X(mode: int) -> np.ndarray:
    """Coefficient vector selecting the amplitude quadrature of ``mode``."""
    return unit(QuadIndex(mode, Quadrature.X))


def Y(mode: int) -> np.ndarray:
    """Coefficient vector selecting the phase quadrature of ``mode``."""
    return unit(QuadIndex(mode, Quadrature.Y))


def symplectic_form() -> np.ndarray:
    """Block-diagonal symplectic form with per-mode blocks ``[[0, 1], [-1, 0]]``."""
    return np.kron(np.eye(N_MODES), np.array([[0.0, 1.0], [-1.0, 0.0]]))


OMEGA = symplectic_form()
OMEGA.setflags(write=False)


@dataclass(frozen=True, eq=False)
class CovarianceMatrix:
    """Immutable 6x6 quadrature covariance matrix (vacuum = identity).

    Construction checks shape, finiteness, symmetry (to a relative 1e-12,
    after which the matrix is symmetrised exactly) and strictly positive
    diagonal. Physicality is *not* enforced, so that deliberately broken
    inputs can still be represented and diagnosed; use :meth:`is_physical`.
    """

    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=float)
        if m.shape != (DIM, DIM):
            raise ValueError(f"covariance must be {DIM}x{DIM}, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("covariance has non-finite entries")
        scale = max(1.0, float(np.max(np.abs(m))))
        if np.max(np.abs(m - m.T)) > 1e-12 * scale:
            raise ValueError("covariance is not symmetric")
        m = 0.5 * (m + m.T)
        if np.any(np.diag(m) <= 0):
            raise ValueError("covariance diagonal must be strictly positive")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @classmethod
    def vacuum(cls) -> "CovarianceMatrix":
        return cls(np.eye(DIM))

    def __getitem__(self, key):
        return self.entries[key]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    def __eq__(self, other):
        if not isinstance(other, CovarianceMatrix):
            return NotImplemented
        return bool(np.array_equal(self.entries, other.entries))

    def __hash__(self):
        return hash(self.entries.tobytes())

    def var(self, mode: int, quadrature: str | Quadrature) -> float:
        q = Quadrature[quadrature] if isinstance(quadrature, str) else quadrature
        i = QuadIndex(mode, q).flat
        return float(self.entries[i, i])

    def cov(self, mode_a: int, mode_b: int, quadrature: str | Quadrature) -> float:
        q = Quadrature[quadrature] if isinstance(quadrature, str) else quadrature
        i = QuadIndex(mode_a, q).flat
        j = QuadIndex(mode_b, q).flat
        return float(self.entries[i, j])

    def permuted(self, perm: tuple[int, int, int]) -> "CovarianceMatrix":
        """Relabel modes: mode ``k`` of the result is mode ``perm[k-1]`` of self."""
        if sorted(perm) != list(MODES):
            raise ValueError(f"not a permutation of {MODES}: {perm!r}")
        order = [2 * (p - 1) + q for p in perm for q in (0, 1)]
        return CovarianceMatrix(self.entries[np.ix_(order, order)])

    def is_physical(self, tol: float = PHYSICAL_TOL) -> bool:
        return is_physical(self, tol)

    def is_pure(self, tol: float = PHYSICAL_TOL) -> bool:
        return is_pure(self, tol)


CovLike = Union[CovarianceMatrix, np.ndarray]


def _as_array(cov: CovLike) -> np.ndarray:
    if isinstance(cov, CovarianceMatrix):
        return cov.entries
    m = np.asarray(cov, dtype=float)
    if m.shape != (DIM, DIM):
        raise ValueError(f"covariance must be {DIM}x{DIM}, got shape {m.shape}")
    return m


def _as_combination(c) -> np.ndarray:
    v = np.asarray(c, dtype=float)
    if v.shape != (DIM,):
        raise ValueError(f"linear combination must have {DIM} coefficients, got shape {v.shape}")
    return v


def variance_of(cov: CovLike, c) -> float:
    """Variance ``cᵀ V c`` of the quadrature combination ``c``."""
    v = _as_combination(c)
    if not np.any(v):
        raise ValueError("variance of an all-zero combination is undefined")
    m = _as_array(cov)
    return float(v @ m @ v)


def covariance_of(cov: CovLike, c1, c2) -> float:
    """Symmetrised covariance ``c1ᵀ V c2`` of two quadrature combinations."""
    m = _as_array(cov)
    return float(_as_combination(c1) @ m @ _as_combination(c2))


def is_physical(cov: CovLike, tol: float = PHYSICAL_TOL) -> bool:
    """Uncertainty principle ``V + iΩ >= 0``, checked on the Hermitian spectrum."""
    m = _as_array(cov)
    eig = np.linalg.eigvalsh(m + 1j * OMEGA)
    return bool(eig.min() >= -tol)


def symplectic_eigenvalues(cov: CovLike) -> np.ndarray:
    """Williamson spectrum of a 3-mode covariance, sorted in descending order.

    Physical states have every value >= 1; a pure state has all three equal
    to 1.

    Raises:
        ValueError: if ``cov`` is not symmetric.
    """
    m = _as_array(cov)
    scale = max(1.0, float(np.max(np.abs(m))))
    if np.max(np.abs(m - m.T)) > 1e-12 * scale:
        raise ValueError("symplectic eigenvalues need a symmetric matrix")
    m = 0.5 * (m + m.T)
    w, u = np.linalg.eigh(m)
    if w.min() > 0:
        # V^(1/2) iΩ V^(1/2) is Hermitian and isospectral with iΩV
        root = (u * np.sqrt(w)) @ u.T
        ev = np.linalg.eigvalsh(root @ (1j * OMEGA) @ root)
    else:
        ev = np.linalg.eigvals(1j * OMEGA @ m)
    mods = np.sort(np.abs(ev))[::-1]
    # eigenvalues come in ± pairs
    return mods[::2].copy()


def is_pure(cov: CovLike, tol: float = PHYSICAL_TOL) -> bool:
    nu = symplectic_eigenvalues(cov)
    return bool(np.all(np.abs(nu - 1.0) <= tol))
