import json
import warnings
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from k3tk.anticanonical import (
    CASE_PROFILES,
    AnticanonicalPairModel,
    ChargeWarning,
    NumericalProfile,
    PairError,
    ResolutionConfig,
    charge,
    classify_zero_surface,
    contract,
    cusp_family,
    dynkin_chain_config,
    is_hyperbolic,
    minimalization_outcomes,
    minus_one_classes,
    pair_from_json,
    pair_to_json,
    pullback_coefficients,
    relative_minimalize,
    resolution_from_json,
    riemann_roch_dim,
    twist,
    twisted_profile,
    validate_profile,
)


@pytest.mark.parametrize(
    "profile,flag",
    [(NumericalProfile(1, 3), False), (NumericalProfile(2, 2), False), (NumericalProfile(2, 0), True)],
)
def test_degree_two_sections(profile, flag):
    assert riemann_roch_dim(profile, reduced_connected=flag) == 3


def test_zero_intersection_needs_reduced_member():
    with pytest.raises(PairError):
        riemann_roch_dim(NumericalProfile(2, 0))


def test_plane_sections_match_monomial_count():
    # h⁰(O(d)) on P² against the Riemann-Roch count for L = dh
    for d in range(1, 6):
        assert riemann_roch_dim(NumericalProfile(d * d, 3 * d)) == (d + 1) * (d + 2) // 2


@pytest.mark.parametrize("case_id", sorted(CASE_PROFILES))
def test_case_profiles_validate_and_classify(case_id):
    p = CASE_PROFILES[case_id]
    assert validate_profile(p, l_sim_d=case_id in (2, 4)) == []
    assert classify_zero_surface(p).case_id == case_id


@pytest.mark.parametrize("bad", [NumericalProfile(1, 2), NumericalProfile(2, 6), NumericalProfile(2, 1)])
def test_invalid_profiles(bad):
    assert validate_profile(bad)
    with pytest.raises(PairError):
        classify_zero_surface(bad)


def test_wrong_self_intersection_rejected():
    with pytest.raises(PairError):
        classify_zero_surface(NumericalProfile(1, 3, 8))
    with pytest.raises(PairError):
        classify_zero_surface(NumericalProfile(2, 0, -3))


def test_strict_inequality_unless_equivalent():
    p = NumericalProfile(2, 2, 2)
    assert validate_profile(p)
    assert validate_profile(p, l_sim_d=True) == []


@given(st.integers(1, 12), st.integers(0, 14), st.integers(-6, 12))
def test_twist_preserves_parity(l2, ld, d2):
    p = NumericalProfile(l2, ld, d2)
    if ld > l2:
        with pytest.raises(PairError):
            twisted_profile(p)
        return
    q = twisted_profile(p)
    # (L-D)² and (L-D)·D follow from bilinearity
    assert q.l2 == l2 - 2 * ld + d2
    assert q.ld == ld - d2
    if (l2 - ld) % 2 == 0 and (d2 % 2 == 0):
        assert (q.l2 - q.ld) % 2 == 0


def _two_point_blowup(L):
    return AnticanonicalPairModel.blowup_of_plane(2, L)


def test_minimalize_line_on_two_point_blowup():
    pair = _two_point_blowup([1, 0, 0])
    final, contracted = relative_minimalize(pair)
    assert final.profile() == NumericalProfile(1, 3, 9)
    assert sorted(contracted) == [(0, 0, 1), (0, 1, 0)]
    assert classify_zero_surface(final.profile()).case_id == 1


def test_minimalize_conic_through_points_gives_quadric():
    pair = _two_point_blowup([2, -1, -1])
    assert minus_one_classes(pair) == [(1, -1, -1)]
    final, _ = relative_minimalize(pair)
    assert final.profile() == NumericalProfile(2, 4, 8)


@pytest.mark.parametrize("L", [[1, 0, 0], [2, -1, -1], [2, -1, 0], [3, -1, -1], [2, 0, 0]])
def test_minimalization_is_confluent(L):
    outcomes = minimalization_outcomes(_two_point_blowup(L))
    profiles = {final.profile() for final, _ in outcomes}
    assert len(profiles) == 1
    contracted = {frozenset(seq) for _, seq in outcomes}
    assert len(contracted) == 1


def test_minimalize_three_points_all_orders_agree():
    pair = AnticanonicalPairModel.blowup_of_plane(3, [1, 0, 0, 0])
    outcomes = minimalization_outcomes(pair)
    assert len(outcomes) == 6
    assert {f.profile() for f, _ in outcomes} == {NumericalProfile(1, 3, 9)}


def test_contract_rejects_non_exceptional():
    pair = _two_point_blowup([1, 0, 0])
    with pytest.raises(PairError):
        contract(pair, (1, 0, 0))


def test_twist_refused_when_not_effective():
    pair = AnticanonicalPairModel.blowup_of_plane(0, [1])
    with pytest.raises(PairError):
        twist(pair)
    quad = _two_point_blowup([3, -1, -1])  # L² = 7, L·D = 7
    assert twist(quad).L == (0, 0, 0)


def test_pair_json_round_trip(fixture_path):
    pair = pair_from_json(json.loads(fixture_path("bl2_pair.json").read_text()))
    again = pair_from_json(pair_to_json(pair))
    assert again == pair
    with pytest.raises(PairError):
        pair_from_json({"rank": 2, "L": [1, 0]})
    with pytest.raises(PairError):
        AnticanonicalPairModel([[1]], [3], [1], K=[3])


def test_pullback_on_t238_resolution(fixture_path):
    cfg = resolution_from_json(json.loads(fixture_path("t238_resolution.json").read_text()))
    res = pullback_coefficients(cfg)
    # independent exact solve
    g = sympy.Matrix(cfg.exceptional_gram)
    rhs = sympy.Matrix([-cfg.strict_multiplicity * c for c in cfg.strict_transform_incidence])
    oracle = [Fraction(int(x.p), int(x.q)) for x in g.LUsolve(rhs)]
    assert list(res.coefficients) == oracle
    assert res.check(cfg)
    assert res.coefficients == tuple(Fraction(x) for x in (1, 2, 3, 4, 5, 6, 7, 8, 4, 5))
    assert res.reciprocal == Fraction(1, 8)


def test_pullback_rejects_indefinite():
    with pytest.raises(PairError):
        pullback_coefficients(ResolutionConfig([[-2, 2], [2, -2]], [1, 0], 1))
    with pytest.raises(PairError):
        ResolutionConfig([[-2]], [1, 0], 1)


def test_dynkin_chain_shapes():
    g = dynkin_chain_config([8, 1, 1])
    assert sympy.Matrix(g).det() == 4  # D10
    assert sympy.Matrix(dynkin_chain_config([5, 2, 1])).det() == 1  # E8 as T_{2,3,5}


def test_cusp_families():
    five = cusp_family(5)
    assert all(c[1] == 3 for c in five)
    assert (min(c[2] for c in five), max(c[2] for c in five)) == (7, 16)
    six = cusp_family(6)
    assert (2, 4, 5) in six and (2, 3, 7) not in six
    assert all(is_hyperbolic(*c) and sum(c) <= 21 for c in five + six)
    assert not is_hyperbolic(2, 3, 6)
    assert classify_zero_surface(CASE_PROFILES[5]).cusp_range() == (7, 16)
    assert cusp_family(1) == []


def test_charge_and_warnings():
    assert charge(-1, 1) == 12
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        charge(0, 3, (2, 3, 7))
    with pytest.warns(ChargeWarning):
        charge(-20, 1)
    with pytest.warns(ChargeWarning):
        charge(-1, 1, (2, 10, 12))
    with pytest.raises(PairError):
        charge(0, 0)
