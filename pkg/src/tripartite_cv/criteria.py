"""Bipartite and tripartite entanglement / EPR-steering criteria.

Every criterion is a "value below bound" test on a covariance matrix:

=============  ====================================================  =====
label          value                                                 bound
=============  ====================================================  =====
DS_PLUS        V(Xi + Xj) + V(Yi - Yj)                               4
DS_MINUS       V(Xi - Xj) + V(Yi + Yj)                               4
REID_PAIR      Vinf(Xi | Xj) * Vinf(Yi | Yj)                         1
VLF_PAIR       V(Xi - Xj) + V(Yi + Yj + gk Yk)                       4
VLF_SINGLE     V(Xi - (Xj+Xk)/√2) + V(Yi + (Yj+Yk)/√2)              4
STEER3_ONE     Vinf(Xi | Xj±Xk) * Vinf(Yi | Yj±Yk)                   1
STEER3_PAIR    Vinf(Xj±Xk | Xi) * Vinf(Yj±Yk | Yi)                   4
=============  ====================================================  =====

A result counts as a violation only when ``value < bound - VIOLATION_SLACK``,
so exact saturation (e.g. the vacuum) is never reported as entangled.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import NamedTuple

from .gaussian import MODES, CovLike, X, Y, _as_array, check_mode, covariance_of, variance_of

VIOLATION_SLACK = 1e-9
DEGENERATE_VARIANCE = 1e-12

SQRT2 = math.sqrt(2.0)


class Criterion(enum.Enum):
    DS_PLUS = "DS_PLUS"
    DS_MINUS = "DS_MINUS"
    REID_PAIR = "REID_PAIR"
    VLF_PAIR = "VLF_PAIR"
    VLF_SINGLE = "VLF_SINGLE"
    STEER3_ONE = "STEER3_ONE"
    STEER3_PAIR = "STEER3_PAIR"

    @property
    def bound(self) -> float:
        return BOUNDS[self]

    @property
    def arity(self) -> int:
        return 2 if self in (Criterion.DS_PLUS, Criterion.DS_MINUS,
                             Criterion.REID_PAIR, Criterion.VLF_PAIR) else 1


BOUNDS = {
    Criterion.DS_PLUS: 4.0,
    Criterion.DS_MINUS: 4.0,
    Criterion.REID_PAIR: 1.0,
    Criterion.VLF_PAIR: 4.0,
    Criterion.VLF_SINGLE: 4.0,
    Criterion.STEER3_ONE: 1.0,
    Criterion.STEER3_PAIR: 4.0,
}


@dataclass(frozen=True)
class CriterionResult:
    value: float
    bound: float
    label: Criterion
    indices: tuple[int, ...]
    # inference sign(s) actually used, where the criterion has a choice
    sign: str | None = None
    violated: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "violated", bool(self.value < self.bound - VIOLATION_SLACK))

    @property
    def slack(self) -> float:
        """``bound - value``; positive when the inequality is violated."""
        return self.bound - self.value


class GainVector(NamedTuple):
    g1: float
    g2: float
    g3: float

    def for_mode(self, mode: int) -> float:
        return self[check_mode(mode) - 1]


def _pair(i: int, j: int) -> tuple[int, int]:
    check_mode(i)
    check_mode(j)
    if i == j:
        raise ValueError(f"criterion needs two distinct modes, got {i} and {j}")
    return i, j


def _others(i: int) -> tuple[int, int]:
    check_mode(i)
    a, b = (m for m in MODES if m != i)
    return a, b


def _third(i: int, j: int) -> int:
    (k,) = set(MODES) - {i, j}
    return k


def _sign(sign: str) -> float:
    if sign in ("+", "plus", 1):
        return 1.0
    if sign in ("-", "minus", -1):
        return -1.0
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def _inferred(cov, target, source) -> float:
    """Residual variance of ``target`` after linear inference from ``source``."""
    denom = variance_of(cov, source)
    if denom <= 0:
        raise RuntimeError(f"non-positive inference variance {denom}; covariance is unphysical")
    return variance_of(cov, target) - covariance_of(cov, target, source) ** 2 / denom


def duan_simon(cov: CovLike, i: int, j: int, sign: str = "-") -> CriterionResult:
    """Sum-of-variances entanglement test for the pair ``(i, j)``.

    ``sign="+"`` gives V(Xi+Xj) + V(Yi-Yj); ``sign="-"`` gives V(Xi-Xj) + V(Yi+Yj).
    """
    i, j = _pair(i, j)
    s = _sign(sign)
    value = variance_of(cov, X(i) + s * X(j)) + variance_of(cov, Y(i) - s * Y(j))
    label = Criterion.DS_PLUS if s > 0 else Criterion.DS_MINUS
    return CriterionResult(value, label.bound, label, (i, j))


def reid_epr(cov: CovLike, steered: int, steerer: int) -> CriterionResult:
    """Inferred-variance product for mode ``steered`` given measurements on ``steerer``.

    The criterion is directional: ``reid_epr(cov, i, j)`` and
    ``reid_epr(cov, j, i)`` generally differ.
    """
    i, j = _pair(steered, steerer)
    value = _inferred(cov, X(i), X(j)) * _inferred(cov, Y(i), Y(j))
    return CriterionResult(value, 1.0, Criterion.REID_PAIR, (i, j))


def vlf_optimal_gains(cov: CovLike) -> GainVector:
    """Gains minimising each ``V(Yi + Yj + gk Yk)``: ``gk = -(V(Yk,Yi) + V(Yk,Yj)) / V(Yk)``."""
    m = _as_array(cov)
    gains = []
    for k in MODES:
        a, b = _others(k)
        yk = 2 * k - 1
        gains.append(-(m[yk, 2 * a - 1] + m[yk, 2 * b - 1]) / m[yk, yk])
    return GainVector(*gains)


def vlf_pairwise(cov: CovLike, i: int, j: int, gains: GainVector | tuple | None = None) -> CriterionResult:
    """``V(Xi - Xj) + V(Yi + Yj + gk Yk)``; ``gains=None`` uses :func:`vlf_optimal_gains`."""
    i, j = _pair(i, j)
    if gains is None:
        gains = vlf_optimal_gains(cov)
    gains = GainVector(*gains)
    k = _third(i, j)
    value = (variance_of(cov, X(i) - X(j))
             + variance_of(cov, Y(i) + Y(j) + gains.for_mode(k) * Y(k)))
    return CriterionResult(value, 4.0, Criterion.VLF_PAIR, tuple(sorted((i, j))))


def vlf_single(cov: CovLike, pivot: int) -> CriterionResult:
    a, b = _others(pivot)
    value = (variance_of(cov, X(pivot) - (X(a) + X(b)) / SQRT2)
             + variance_of(cov, Y(pivot) + (Y(a) + Y(b)) / SQRT2))
    return CriterionResult(value, 4.0, Criterion.VLF_SINGLE, (pivot, a, b))


def steering3_one_from_two(cov: CovLike, steered: int) -> CriterionResult:
    """Two modes jointly steer ``steered`` via the sums/differences of their quadratures.

    Each quadrature takes whichever of ``j + k`` and ``j - k`` infers it best;
    the chosen pair of signs is reported as ``"<X sign><Y sign>"``.
    """
    j, k = _others(steered)
    factors, signs = [], []
    for quad in (X, Y):
        best = None
        for label, s in (("+", 1.0), ("-", -1.0)):
            source = quad(j) + s * quad(k)
            if variance_of(cov, source) <= DEGENERATE_VARIANCE:
                continue
            v = _inferred(cov, quad(steered), source)
            if best is None or v < best[0]:
                best = (v, label)
        if best is None:
            raise RuntimeError("both inference branches are degenerate")
        factors.append(best[0])
        signs.append(best[1])
    return CriterionResult(factors[0] * factors[1], 1.0, Criterion.STEER3_ONE,
                           (steered, j, k), sign="".join(signs))


def steering3_two_from_one(cov: CovLike, steerer: int, sign: str | None = None) -> CriterionResult:
    """One mode steers the combined quadratures ``Xj±Xk``, ``Yj±Yk`` of the other two.

    The same sign is used for both quadratures (their commutator then carries
    the bound of 4). With ``sign=None`` both signs are tried and the smaller
    product is returned.
    """
    j, k = _others(steerer)
    if sign is None:
        options = [steering3_two_from_one(cov, steerer, s) for s in ("+", "-")]
        return min(options, key=lambda res: res.value)
    s = _sign(sign)
    value = 1.0
    for quad in (X, Y):
        value *= _inferred(cov, quad(j) + s * quad(k), quad(steerer))
    return CriterionResult(value, 4.0, Criterion.STEER3_PAIR, (steerer, j, k),
                           sign="+" if s > 0 else "-")


def evaluate(cov: CovLike, label: Criterion | str, indices: tuple[int, ...]) -> CriterionResult:
    """Evaluate any criterion by label; VLF_PAIR uses optimal gains, STEER3_PAIR the best sign."""
    label = Criterion(label)
    if len(indices) != label.arity:
        raise ValueError(f"{label.value} takes {label.arity} mode index(es), got {len(indices)}")
    if label is Criterion.DS_PLUS:
        return duan_simon(cov, *indices, sign="+")
    if label is Criterion.DS_MINUS:
        return duan_simon(cov, *indices, sign="-")
    if label is Criterion.REID_PAIR:
        return reid_epr(cov, *indices)
    if label is Criterion.VLF_PAIR:
        return vlf_pairwise(cov, *indices)
    if label is Criterion.VLF_SINGLE:
        return vlf_single(cov, *indices)
    if label is Criterion.STEER3_ONE:
        return steering3_one_from_two(cov, *indices)
    return steering3_two_from_one(cov, *indices)


PAIRS = tuple(itertools.combinations(MODES, 2))


@dataclass(frozen=True)
class StateClass:
    """Entanglement summary of a three-mode state.

    ``steerable_pairs`` holds ``(steered, steerer)`` tuples. The two routes to
    a tripartite verdict are kept apart in ``vlf_pairs_violated`` and
    ``vlf_single_violated``.
    """

    bipartite_pairs: frozenset
    tripartite: bool
    t_state: bool
    steerable_pairs: frozenset
    vlf_pairs_violated: frozenset
    vlf_single_violated: frozenset

    @property
    def regime(self) -> str:
        # a GHZ-like state needs infinite squeezing, so it is never returned
        if self.t_state:
            return "T-state"
        if self.tripartite:
            return "W-like"
        if self.bipartite_pairs:
            return "bipartite-only"
        return "separable"

    def as_dict(self) -> dict:
        return {
            "bipartite_pairs": sorted(list(p) for p in self.bipartite_pairs),
            "tripartite": self.tripartite,
            "t_state": self.t_state,
            "steerable_pairs": sorted(list(p) for p in self.steerable_pairs),
            "vlf_pairs_violated": sorted(list(p) for p in self.vlf_pairs_violated),
            "vlf_single_violated": sorted(self.vlf_single_violated),
            "regime": self.regime,
        }


def classify(cov: CovLike) -> StateClass:
    bipartite = frozenset(
        (i, j) for i, j in PAIRS
        if duan_simon(cov, i, j, "+").violated or duan_simon(cov, i, j, "-").violated
    )
    gains = vlf_optimal_gains(cov)
    vlf_pairs = frozenset((i, j) for i, j in PAIRS if vlf_pairwise(cov, i, j, gains).violated)
    singles = frozenset(p for p in MODES if vlf_single(cov, p).violated)
    tripartite = len(vlf_pairs) >= 2 or bool(singles)
    steerable = frozenset(
        (i, j) for i, j in itertools.permutations(MODES, 2) if reid_epr(cov, i, j).violated
    )
    return StateClass(
        bipartite_pairs=bipartite,
        tripartite=tripartite,
        t_state=tripartite and not bipartite,
        steerable_pairs=steerable,
        vlf_pairs_violated=vlf_pairs,
        vlf_single_violated=singles,
    )


def all_criteria(cov: CovLike) -> list[CriterionResult]:
    """Every criterion family over every index choice, in a fixed order."""
    out = []
    for i, j in PAIRS:
        out += [duan_simon(cov, i, j, "+"), duan_simon(cov, i, j, "-")]
    out += [reid_epr(cov, i, j) for i, j in itertools.permutations(MODES, 2)]
    out += [vlf_pairwise(cov, i, j) for i, j in PAIRS]
    out += [vlf_single(cov, p) for p in MODES]
    out += [steering3_one_from_two(cov, p) for p in MODES]
    out += [steering3_two_from_one(cov, p, s) for p in MODES for s in ("+", "-")]
    return out
