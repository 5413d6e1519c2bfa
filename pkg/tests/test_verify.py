"""Axiom checks, samplers and the verification suite."""

import json

import pytest

import oracles
from coopvals import (
    CheckStats,
    CoopvalsError,
    NotInClass,
    PreconditionNotMet,
    SamplerConfig,
    SamplerExhausted,
    SuiteReport,
    build_game,
    check_axiom,
    check_convex_coincidence,
    individual_worths,
    marginal_contributions,
    run_suite,
    run_suite_on_games,
    sample_games,
    subtract_allocation,
)


def test_axiom_efficiency_and_minimal_rights(g2, g6):
    assert check_axiom("Efficiency", "tau", g2).passed
    assert check_axiom("MinimalRights", "km", g6).passed
    assert check_axiom("MinimalRights", "tau", g2).passed


def test_axiom_proportionality(g6):
    with pytest.raises(PreconditionNotMet):
        check_axiom("RestrictedProportionality", "km", g6)
    shifted = subtract_allocation(g6, (1, 1, 2))
    assert check_axiom("RestrictedProportionality", "km", shifted).passed
    with pytest.raises(PreconditionNotMet):
        check_axiom("EgalitarianDivision", "cis", g6)
    zeroed = subtract_allocation(g6, individual_worths(g6))
    assert check_axiom("EgalitarianDivision", "cis", zeroed).passed


def test_axiom_covariance(g2, g6):
    probe = ("1/2", (1, 2, 3))
    assert check_axiom("Covariance", "tau", g2, probe=probe).passed
    assert check_axiom("Covariance", "chi", g6, probe=probe).passed
    # the equal split ignores additive shifts, so the probe must expose it
    bad = check_axiom("Covariance", "egal", g6, probe=(1, (1, 0, 0)))
    assert not bad.passed
    assert bad.witness.component == 0


def test_axiom_self_duality(g6):
    assert check_axiom("SelfDuality", "km", g6).passed
    assert not check_axiom("SelfDuality", "cis", g6).passed


def test_axiom_individual_rationality(g2):
    assert check_axiom("IndividualRationality", "tau", g2).passed
    skinny = build_game(3, {0b001: 1})
    with pytest.raises(PreconditionNotMet):
        check_axiom("IndividualRationality", "km", skinny)


def test_axiom_unknown_ids(g6):
    with pytest.raises(CoopvalsError):
        check_axiom("Symmetry", "tau", g6)
    with pytest.raises(CoopvalsError):
        check_axiom("Efficiency", "shapley", g6)


def test_convex_coincidence(g6, add123, u12):
    with pytest.raises(NotInClass):
        check_convex_coincidence(g6)
    assert check_convex_coincidence(add123).passed
    assert check_convex_coincidence(u12).passed


def test_sampler_config_validation():
    with pytest.raises(CoopvalsError):
        SamplerConfig(n_min=0)
    with pytest.raises(CoopvalsError):
        SamplerConfig(n_min=4, n_max=3)
    with pytest.raises(CoopvalsError):
        SamplerConfig(numerator_min=2, numerator_max=1)
    with pytest.raises(CoopvalsError):
        SamplerConfig(denominator_max=0)
    with pytest.raises(CoopvalsError):
        SamplerConfig(count=-1)
    with pytest.raises(CoopvalsError):
        SamplerConfig(retry_cap=0)
    with pytest.raises(CoopvalsError):
        SamplerConfig(class_filter="balanced-ish")


def test_sampler_is_deterministic():
    config = SamplerConfig(n_min=2, n_max=4, count=12, seed=99)
    a = sample_games(config)
    b = sample_games(config)
    assert [v.worths for v in a] == [v.worths for v in b]
    assert {v.n for v in a} <= {2, 3, 4}
    other = sample_games(SamplerConfig(n_min=2, n_max=4, count=12, seed=100))
    assert [v.worths for v in a] != [v.worths for v in other]


def test_sampler_filters_land_in_class():
    for v in sample_games(SamplerConfig(class_filter="zero-normalised", count=8, seed=1)):
        assert individual_worths(v) == (0,) * v.n
    for v in sample_games(SamplerConfig(class_filter="convex", count=8, seed=2)):
        assert oracles.is_convex(oracles.game_from_tugame(v))
    for v in sample_games(SamplerConfig(class_filter="essential", count=8, seed=3)):
        assert sum(individual_worths(v)) <= v.total <= sum(marginal_contributions(v))
    for v in sample_games(SamplerConfig(class_filter="M-lower", count=8, seed=4)):
        assert v.total >= sum(marginal_contributions(v))


def test_sampler_exhaustion():
    # constant worths at n = 2 can never satisfy the coalition-wise bound
    config = SamplerConfig(
        n_min=2,
        n_max=2,
        numerator_min=5,
        numerator_max=5,
        denominator_max=1,
        class_filter="semi-balanced",
        count=1,
        retry_cap=25,
    )
    with pytest.raises(SamplerExhausted):
        sample_games(config)


def test_check_stats_expected_negative_semantics():
    assert CheckStats("x", passed=5, failed=0, skipped=0).ok
    assert not CheckStats("x", passed=4, failed=1, skipped=0).ok
    neg = CheckStats("x", passed=5, failed=0, skipped=0, expected_negative=True)
    assert not neg.ok
    assert CheckStats("x", passed=4, failed=1, skipped=0, expected_negative=True).ok
    assert CheckStats("x", passed=0, failed=0, skipped=9, expected_negative=True).ok


def test_run_suite_end_to_end():
    report = run_suite(SamplerConfig(n_min=2, n_max=3, count=40, seed=7))
    assert isinstance(report, SuiteReport)
    assert report.ok
    assert report.game_count == 40
    by_id = {c.check_id: c for c in report.checks}
    fixture = by_id["bound_pair:IndividualWorths,EtaTrivial"]
    assert fixture.expected_negative and fixture.failed >= 1
    fixture = by_id["regular_lower:ConstantOne"]
    assert fixture.expected_negative and fixture.failed >= 1
    assert by_id["semi_balanced_order"].failed == 0
    assert by_id["eansc_dual_identity"].passed == 40
    assert by_id["axiom:Efficiency:km"].passed == 40


def test_suite_report_serialisation_is_stable():
    config = SamplerConfig(n_min=2, n_max=3, count=10, seed=5)
    a = json.dumps(run_suite(config).to_dict(), sort_keys=True)
    b = json.dumps(run_suite(config).to_dict(), sort_keys=True)
    assert a == b


def test_single_game_mode_omits_fixtures(g6):
    report = run_suite_on_games([g6], negative_fixtures=False)
    assert report.ok
    assert report.game_count == 1
    assert not any(c.expected_negative for c in report.checks)
    ids = {c.check_id for c in report.checks}
    assert "bound_pair:IndividualWorths,EtaTrivial" not in ids
    assert "covariance_functional:EtaTrivial" not in ids


def test_convex_batch_coincidence_all_pass():
    report = run_suite(SamplerConfig(class_filter="convex", count=15, seed=3))
    assert report.ok
    by_id = {c.check_id: c for c in report.checks}
    coincidence = by_id["convex_coincidence"]
    assert coincidence.passed == 15
    assert coincidence.failed == 0
