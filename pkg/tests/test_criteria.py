import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import mixed_states, pure_states
from tripartite_cv import criteria as C
from tripartite_cv.criteria import (
    BOUNDS,
    Criterion,
    CriterionResult,
    GainVector,
    classify,
    duan_simon,
    reid_epr,
    steering3_one_from_two,
    steering3_two_from_one,
    vlf_optimal_gains,
    vlf_pairwise,
    vlf_single,
)
from tripartite_cv.gaussian import CovarianceMatrix
from tripartite_cv.models import (
    AokiParams,
    AsymmetricParams,
    OpaParams,
    aoki_closed_forms,
    aoki_covariance,
    asymmetric_covariance,
    covariance,
    default_grid,
    grid,
    opa_covariance,
)

VACUUM = CovarianceMatrix.vacuum()
AOKI_R1 = aoki_covariance(AokiParams(1.0))
AOKI_R2 = aoki_covariance(AokiParams(2.0))
OPA_LN2 = opa_covariance(OpaParams(math.log(2)))
PERMS = list(itertools.permutations((1, 2, 3)))


def test_bounds():
    assert {c: c.bound for c in Criterion} == BOUNDS
    assert BOUNDS[Criterion.REID_PAIR] == BOUNDS[Criterion.STEER3_ONE] == 1
    assert all(BOUNDS[c] == 4 for c in Criterion if c not in (Criterion.REID_PAIR, Criterion.STEER3_ONE))


@pytest.mark.parametrize("value,violated", [(4.0, False), (4 - 1e-10, False), (4 - 2e-9, True), (5.0, False)])
def test_violation_slack(value, violated):
    assert CriterionResult(value, 4.0, Criterion.DS_MINUS, (1, 2)).violated is violated


def test_slack_sign():
    assert CriterionResult(3.0, 4.0, Criterion.DS_MINUS, (1, 2)).slack == 1.0


class TestDuanSimon:
    @pytest.mark.parametrize("sign", ["+", "-"])
    @pytest.mark.parametrize("pair", C.PAIRS)
    def test_vacuum_saturates(self, pair, sign):
        res = duan_simon(VACUUM, *pair, sign)
        assert res.value == 4 and not res.violated

    def test_aoki_r1(self):
        res = duan_simon(AOKI_R1, 1, 2, "-")
        assert res.value == pytest.approx(4 * math.cosh(1) - 8 / 3 * math.sinh(1), abs=1e-12)
        assert res.violated and res.label is Criterion.DS_MINUS

    def test_opa_ln2(self):
        res = duan_simon(OPA_LN2, 1, 2, "-")
        assert res.value == pytest.approx(3.25, abs=1e-12)
        assert res.violated

    def test_same_mode(self):
        with pytest.raises(ValueError):
            duan_simon(VACUUM, 2, 2)

    def test_bad_sign(self):
        with pytest.raises(ValueError):
            duan_simon(VACUUM, 1, 2, "x")


class TestReid:
    def test_vacuum(self):
        res = reid_epr(VACUUM, 1, 2)
        assert res.value == 1 and not res.violated

    def test_two_mode_squeezing(self):
        # kappa2 = 0 reduces to two-mode squeezing of modes 1 and 3, r = 2 kappa1 t
        cov = asymmetric_covariance(AsymmetricParams(1.0, 0.0, 0.5))
        res = reid_epr(cov, 1, 3)
        assert res.value == pytest.approx(1 / math.cosh(1) ** 2, abs=1e-12)
        assert res.value == pytest.approx(0.41997, abs=1e-5)
        assert res.violated

    def test_directional(self):
        cov = asymmetric_covariance(AsymmetricParams.from_zt(1.0, 1.0, 0.6))
        assert reid_epr(cov, 1, 2).value != pytest.approx(reid_epr(cov, 2, 1).value)
        assert reid_epr(cov, 1, 2).indices == (1, 2)

    @given(pure_states())
    def test_product_at_least_zero(self, cov):
        for i, j in itertools.permutations((1, 2, 3), 2):
            assert reid_epr(cov, i, j).value >= -1e-9

    def test_unphysical_denominator(self):
        m = np.eye(6)
        m[2, 2] = 0.0
        with pytest.raises(RuntimeError):
            reid_epr(m, 1, 2)


class TestGains:
    def test_vacuum_zero(self):
        assert vlf_optimal_gains(VACUUM) == (0, 0, 0)

    @pytest.mark.parametrize("kt", [0.2, 1.0, 1.8])
    def test_opa_equal(self, kt):
        g = vlf_optimal_gains(opa_covariance(OpaParams(kt)))
        assert g.g1 == pytest.approx(g.g2, abs=1e-12) and g.g2 == pytest.approx(g.g3, abs=1e-12)

    def test_formula(self):
        m = asymmetric_covariance(AsymmetricParams(1.0, 0.6, 0.8)).entries
        g = vlf_optimal_gains(m)
        assert g.g1 == pytest.approx(-(m[1, 3] + m[1, 5]) / m[1, 1], abs=1e-12)
        assert g.g2 == pytest.approx(-(m[3, 1] + m[3, 5]) / m[3, 3], abs=1e-12)
        assert g.g3 == pytest.approx(-(m[5, 1] + m[5, 3]) / m[5, 5], abs=1e-12)
        assert g.for_mode(3) == g.g3

    def test_aoki_r1_closed_form(self):
        assert vlf_pairwise(AOKI_R1, 1, 2).value == pytest.approx(aoki_closed_forms(1.0).v_ij, abs=1e-12)

    def test_scan_one_gain(self):
        best = vlf_pairwise(AOKI_R1, 1, 2).value
        scanned = [vlf_pairwise(AOKI_R1, 1, 2, (0, 0, g)).value for g in grid(-3, 3, 0.01)]
        assert min(scanned) >= best - 1e-12
        assert vlf_pairwise(AOKI_R1, 1, 2, (0, 0, 0)).value >= best

    @settings(max_examples=15)
    @given(mixed_states())
    def test_scan_gain_cube(self, cov):
        gains = vlf_optimal_gains(cov)
        axis = grid(-3, 3, 0.1)
        for i, j in C.PAIRS:
            best = vlf_pairwise(cov, i, j, gains).value
            # only the free mode's gain enters V_ij, so the cube scan reduces to its axis
            k = 6 - i - j
            for g in axis:
                trial = [0.0, 0.0, 0.0]
                trial[k - 1] = g
                assert vlf_pairwise(cov, i, j, trial).value >= best - 1e-9

    def test_other_gains_ignored(self):
        a = vlf_pairwise(AOKI_R1, 1, 2, (2.0, -1.0, 0.3)).value
        b = vlf_pairwise(AOKI_R1, 1, 2, (0.0, 0.0, 0.3)).value
        assert a == b


class TestVlf:
    def test_vacuum(self):
        assert vlf_pairwise(VACUUM, 1, 2, GainVector(0, 0, 0)).value == 4
        for p in (1, 2, 3):
            assert vlf_single(VACUUM, p).value == pytest.approx(4, abs=1e-15)

    def test_single_aoki_r1(self):
        res = vlf_single(AOKI_R1, 1)
        assert res.value == pytest.approx(4 * (math.cosh(1) - 2 * math.sqrt(2) / 3 * math.sinh(1)), abs=1e-12)
        assert res.violated

    def test_single_pivot_three_uses_modes_one_and_two(self):
        res = vlf_single(VACUUM, 3)
        assert res.indices == (3, 1, 2)

    def test_single_returns_to_bound(self):
        r = math.log(17 + 12 * math.sqrt(2))
        assert r == pytest.approx(3.52549, abs=1e-5)
        assert vlf_single(aoki_covariance(AokiParams(r)), 1).value == pytest.approx(4, abs=1e-10)
        assert vlf_single(aoki_covariance(AokiParams(r + 0.01)), 1).value > 4

    def test_pairwise_decreasing_for_large_r(self):
        values = [vlf_pairwise(aoki_covariance(AokiParams(r)), 1, 2).value for r in grid(1, 3, 0.01)]
        assert all(b < a for a, b in zip(values, values[1:]))
        assert values[-1] < 0.3

    def test_pairwise_indices_sorted(self):
        assert vlf_pairwise(AOKI_R1, 3, 1).indices == (1, 3)


class TestThreeModeSteering:
    def test_vacuum(self):
        for m in (1, 2, 3):
            assert steering3_one_from_two(VACUUM, m).value == pytest.approx(1, abs=1e-15)
            assert steering3_two_from_one(VACUUM, m).value == pytest.approx(4, abs=1e-15)

    def test_aoki_r1(self):
        for m in (1, 2, 3):
            one = steering3_one_from_two(AOKI_R1, m)
            pair = steering3_two_from_one(AOKI_R1, m)
            assert one.value == pytest.approx(9 / (5 + 4 * math.cosh(2)), abs=1e-12)
            assert pair.value == pytest.approx(36 / (5 + 4 * math.cosh(2)), abs=1e-12)
            assert one.violated and pair.violated

    def test_reports_signs(self):
        # X correlations positive: difference of the others is useless, sum is best;
        # Y anticorrelated the same way
        res = steering3_one_from_two(AOKI_R1, 1)
        assert res.sign == "++"
        assert steering3_two_from_one(AOKI_R1, 1).sign in ("+", "-")

    def test_explicit_sign(self):
        plus = steering3_two_from_one(AOKI_R1, 1, "+")
        minus = steering3_two_from_one(AOKI_R1, 1, "-")
        assert steering3_two_from_one(AOKI_R1, 1).value == min(plus.value, minus.value)

    def test_degenerate_branch_skipped(self):
        # modes 2 and 3 perfectly anticorrelated in X: X2 + X3 has zero variance
        m = np.eye(6)
        m[2, 4] = m[4, 2] = -1.0
        m[2, 2] = m[4, 4] = 1.0
        m += np.diag([0, 0, 1e-14, 0, 1e-14, 0])
        res = steering3_one_from_two(m, 1)
        assert math.isfinite(res.value)

    @pytest.mark.parametrize("ratio", [0.3, 0.6, 0.9, 0.99])
    def test_asymmetric_saturation(self, ratio):
        # modes 2 and 3 sit exactly on the bound; mode 1 is steered
        for t in grid(0.05, 3, 0.05):
            cov = asymmetric_covariance(AsymmetricParams(1.0, ratio, t))
            assert steering3_one_from_two(cov, 2).value == pytest.approx(1, abs=1e-10)
            assert steering3_one_from_two(cov, 3).value == pytest.approx(1, abs=1e-10)
            assert steering3_one_from_two(cov, 1).violated

    @pytest.mark.parametrize("kt", [0.0, 0.1, 0.5, 1.0, 1.5, 2.0])
    def test_opa_pair_quarter_matches_single(self, kt):
        cov = opa_covariance(OpaParams(kt))
        assert steering3_two_from_one(cov, 1).value / 4 == pytest.approx(
            steering3_one_from_two(cov, 1).value, abs=1e-12)


class TestEquivariance:
    @pytest.mark.parametrize("cov", [OPA_LN2, AOKI_R1, AOKI_R2], ids=["opa", "aoki1", "aoki2"])
    @pytest.mark.parametrize("perm", PERMS)
    def test_symmetric_states(self, cov, perm):
        base = [r.value for r in C.all_criteria(cov)]
        permuted = [r.value for r in C.all_criteria(cov.permuted(perm))]
        assert np.allclose(base, permuted, atol=1e-10)

    @given(pure_states(), st.sampled_from(PERMS))
    def test_relabelling(self, cov, perm):
        # a criterion on relabelled modes equals the criterion on the original labels
        # (mode k of the moved state is mode perm[k-1] of the original)
        moved = cov.permuted(perm)
        for i, j in itertools.permutations((1, 2, 3), 2):
            pi, pj = perm[i - 1], perm[j - 1]
            assert duan_simon(moved, i, j).value == pytest.approx(duan_simon(cov, pi, pj).value, abs=1e-9)
            assert reid_epr(moved, i, j).value == pytest.approx(reid_epr(cov, pi, pj).value, abs=1e-9)
        for i in (1, 2, 3):
            pi = perm[i - 1]
            assert vlf_single(moved, i).value == pytest.approx(vlf_single(cov, pi).value, abs=1e-9)
            assert steering3_one_from_two(moved, i).value == pytest.approx(
                steering3_one_from_two(cov, pi).value, abs=1e-9)


def test_every_criterion_saturates_on_vacuum():
    for res in C.all_criteria(VACUUM):
        assert res.value == pytest.approx(res.bound, abs=1e-12)
        assert not res.violated


class TestClassify:
    def test_vacuum(self):
        s = classify(VACUUM)
        assert s.regime == "separable"
        assert not s.bipartite_pairs and not s.tripartite and not s.steerable_pairs

    def test_aoki_r2_t_state(self):
        assert duan_simon(AOKI_R2, 1, 2).value == pytest.approx(5.3772, abs=1e-4)
        assert vlf_pairwise(AOKI_R2, 1, 2).value == pytest.approx(0.67300, abs=1e-5)
        s = classify(AOKI_R2)
        assert s.t_state and s.tripartite and not s.bipartite_pairs
        assert s.regime == "T-state"

    def test_aoki_r1_both(self):
        s = classify(AOKI_R1)
        assert s.tripartite and not s.t_state
        assert s.bipartite_pairs == frozenset(C.PAIRS)
        assert s.regime == "W-like"

    @given(mixed_states())
    def test_t_state_implies_no_bipartite(self, cov):
        s = classify(cov)
        if s.t_state:
            assert s.tripartite and not s.bipartite_pairs

    def test_as_dict(self):
        d = classify(AOKI_R2).as_dict()
        assert d["regime"] == "T-state" and d["bipartite_pairs"] == []
        assert d["vlf_pairs_violated"] == [[1, 2], [1, 3], [2, 3]]


class TestModelClaims:
    @pytest.mark.parametrize("name", ["opa", "aoki"])
    def test_symmetric_models_never_reid_steer(self, name):
        for p in default_grid(name):
            cov = covariance(p)
            assert not any(reid_epr(cov, i, j).violated for i, j in itertools.permutations((1, 2, 3), 2))

    def test_asymmetric_reid_directions(self):
        covs = [covariance(p) for p in default_grid("asym")]
        for steered, steerer in [(1, 3), (3, 1), (2, 1)]:
            assert any(reid_epr(c, steered, steerer).violated for c in covs)
        for steered, steerer in [(1, 2), (2, 3), (3, 2)]:
            assert not any(reid_epr(c, steered, steerer).violated for c in covs)

    def test_asymmetric_never_t_state_on_grid(self):
        regimes = {classify(covariance(p)).regime for p in default_grid("asym")}
        assert regimes == {"separable", "W-like"}

    def test_asymmetric_enters_t_state_later(self):
        # DS-(1,3) eventually climbs back above 4 while the single-condition test holds
        late = [classify(covariance(AsymmetricParams.from_zt(zt, 1.0, 0.6))).regime for zt in (3.0, 4.0, 5.0)]
        assert "T-state" in late
