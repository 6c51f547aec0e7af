import pytest

import numpy as np

import sampler
from groebner import codimension, minimal_generators
from inverse_system import quotient_type
from polynomials import Ideal, parse_matrix
from sampler import (
    CODIM_MONOMIAL,
    MAXTRIES_EXHAUSTED,
    MINGENS_EXHAUSTED,
    TYPE_MISMATCH,
    VARIABLES_EXHAUSTED,
    AttemptOutcome,
    IdealSampler,
    generate_candidate,
    generate_via_inverse_system,
    instantiate_degseq,
    validate_ideal,
)
from sampler_config import default_sampler_config


def ideal(text, field):
    return Ideal(field, tuple(parse_matrix(text, field)))


class CountingAttempts:
    """Stands in for an attempt function, replaying the given outcomes"""

    def __init__(self, outcomes):
        self.outcomes = list(outcomes)
        self.calls = 0

    def __call__(self, cfg, rng):
        self.calls += 1
        return self.outcomes.pop(0)


def test_zero_sequence_draws_mn_degrees():
    cfg = default_sampler_config(mn=6, lowDeg=3, highDeg=5)
    rng = np.random.default_rng(1)
    for _ in range(50):
        degrees = instantiate_degseq(cfg, rng)
        assert len(degrees) == 6
        assert all(3 <= d <= 5 for d in degrees)


def test_explicit_sequence_is_used_as_is():
    cfg = default_sampler_config(degSeq=[2, 2, 3])

    assert instantiate_degseq(cfg, np.random.default_rng(0)) == [2, 2, 3]


def test_candidates_hit_the_target(gf3):
    cfg = default_sampler_config(mn=3, degSeq=[2, 2, 2])
    rng = np.random.default_rng(3)
    reasons = set()
    for _ in range(20):
        outcome = generate_candidate(cfg, rng)
        if outcome.ok:
            assert len(minimal_generators(outcome.ideal)) == 3
            assert codimension(outcome.ideal) == 3
        else:
            assert outcome.ideal.is_zero
            reasons.add(outcome.failure_reason)
    assert reasons <= {MINGENS_EXHAUSTED, VARIABLES_EXHAUSTED}


def test_too_many_forms_exhaust_mingens():
    cfg = default_sampler_config(mn=1, degSeq=[2, 2, 2])

    outcome = generate_candidate(cfg, np.random.default_rng(0))

    assert outcome.failure_reason == MINGENS_EXHAUSTED


def test_monomial_candidates_are_never_fixed_up():
    cfg = default_sampler_config(mn=3, degSeq=[2, 2, 2], numTerms=1)
    rng = np.random.default_rng(8)
    for _ in range(30):
        outcome = generate_candidate(cfg, rng)
        if outcome.ok:
            assert all(g.num_terms == 1 for g in outcome.ideal.generators)
        else:
            assert outcome.failure_reason in (MINGENS_EXHAUSTED, CODIM_MONOMIAL)


def test_inverse_system_of_one_form_is_gorenstein(gf3):
    cfg = default_sampler_config(mn=1, degSeq=[3], useN=True)
    rng = np.random.default_rng(4)
    for _ in range(10):
        outcome = generate_via_inverse_system(cfg, rng)
        assert outcome.ok
        assert codimension(outcome.ideal) == 3
        assert quotient_type(outcome.ideal) == 1


def test_inverse_system_type_mismatch_is_reported():
    cfg = default_sampler_config(mn=4, degSeq=[3], useN=True)

    outcome = generate_via_inverse_system(cfg, np.random.default_rng(0))

    assert outcome.failure_reason == TYPE_MISMATCH
    assert outcome.ideal.is_zero


def test_impossible_target_exhausts_tries():
    cfg = default_sampler_config(mn=1, degSeq=[2, 2, 2], maxTries=0)
    generator = IdealSampler(cfg, np.random.default_rng(0))

    outcome = generator.next_ideal()

    assert outcome.failure_reason == MAXTRIES_EXHAUSTED
    assert generator.num_tries == 0


def test_retries_consume_the_budget(gf3, monkeypatch):
    failure = AttemptOutcome(Ideal(gf3), MINGENS_EXHAUSTED)
    attempts = CountingAttempts([failure] * 4)
    monkeypatch.setattr(sampler, "generate_candidate", attempts)
    generator = IdealSampler(default_sampler_config(maxTries=3), np.random.default_rng(0))

    assert generator.next_ideal().failure_reason == MAXTRIES_EXHAUSTED
    assert attempts.calls == 4


def test_success_resets_the_budget(gf3, monkeypatch):
    failure = AttemptOutcome(Ideal(gf3), CODIM_MONOMIAL)
    success = AttemptOutcome(ideal("x^2,y^2,z^2", gf3))
    attempts = CountingAttempts([failure, failure, success])
    monkeypatch.setattr(sampler, "generate_candidate", attempts)
    generator = IdealSampler(default_sampler_config(maxTries=5), np.random.default_rng(0))

    assert generator.next_ideal().ok
    assert generator.num_tries == 0
    assert attempts.calls == 3


def test_variables_exhausted_is_returned_directly(gf3, monkeypatch):
    attempts = CountingAttempts([AttemptOutcome(Ideal(gf3), VARIABLES_EXHAUSTED)])
    monkeypatch.setattr(sampler, "generate_candidate", attempts)
    generator = IdealSampler(default_sampler_config(maxTries=5), np.random.default_rng(0))

    assert generator.next_ideal().failure_reason == VARIABLES_EXHAUSTED
    assert attempts.calls == 1


def test_type_mismatch_consumes_a_try(gf3, monkeypatch):
    attempts = CountingAttempts([AttemptOutcome(Ideal(gf3), TYPE_MISMATCH)] * 2)
    monkeypatch.setattr(sampler, "generate_via_inverse_system", attempts)
    cfg = default_sampler_config(useN=True, maxTries=1)
    generator = IdealSampler(cfg, np.random.default_rng(0))

    assert generator.next_ideal().failure_reason == MAXTRIES_EXHAUSTED
    assert attempts.calls == 2


def test_sampling_is_reproducible():
    cfg = default_sampler_config(mn=4, lowDeg=2, highDeg=3)

    def draw(seed):
        generator = IdealSampler(cfg, np.random.default_rng(seed))
        return [generator.next_ideal() for _ in range(5)]

    first, second = draw(12), draw(12)

    assert [o.ideal.to_text() for o in first] == [o.ideal.to_text() for o in second]
    assert [o.failure_reason for o in first] == [o.failure_reason for o in second]


@pytest.mark.parametrize(
    "text, overrides, valid, message",
    [
        ("x^2,y^2,z^2", {}, True, ""),
        ("x,y^2,z^2", {}, False, "degree below 2"),
        ("x^2,x*y", {}, False, "not codimension 3"),
        ("x^2,y^2,z^2", {"maxM": 2}, False, "exceed maxM"),
        ("x^2,x*y,y^2,x*z,y*z,z^2", {"maxN": 2}, False, "exceeds maxN"),
        ("x^2+y^2,y^2+z^2,z^2+x^2", {"numTerms": 2, "strictTerms": True}, False, "terms"),
        ("x^2+y^2,y^2+z^2,z^2+x^2", {"numTerms": 2}, True, ""),
        ("x^2,y^2,z^2", {"numTerms": 0, "strictTerms": True}, True, ""),
    ],
)
def test_validate_ideal(gf3, text, overrides, valid, message):
    validation = validate_ideal(ideal(text, gf3), default_sampler_config(**overrides))

    assert validation.is_valid == valid
    assert message in validation.message


def test_validate_zero_ideal(gf3):
    validation = validate_ideal(Ideal(gf3), default_sampler_config())

    assert not validation.is_valid
    assert validation.message == "zero ideal"
