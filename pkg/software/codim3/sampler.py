"""Random construction of homogeneous codimension 3 ideals.

Each attempt draws a degree sequence and random forms of those degrees, then either

- keeps the forms as generators, topping up until there are mn minimal generators and, if the ideal
  is not artinian, adding pure powers of a variable to the generators (useN = false); or
- reads the forms as dual forms and takes their annihilator, accepting it when the quotient has
  type mn (useN = true).

`IdealSampler` wraps attempts in the retry budget maxTries. Failures are values, not exceptions:
the zero ideal tagged with the reason.
"""

import logging
from typing import NamedTuple, Optional

from configuration import Validation, VALID
from fields import FieldSpec
from groebner import codimension, minimal_generators, quotient_presentation, socle_dimension
from inverse_system import annihilator_ideal, quotient_type
from polynomials import HomogeneousPolynomial, Ideal, Monomial, random_homogeneous
from sampler_config import ZERO_SEQUENCE

log = logging.getLogger(__name__)

MINGENS_EXHAUSTED = "mingens-exhausted"
CODIM_MONOMIAL = "codim-monomial"
VARIABLES_EXHAUSTED = "variables-exhausted"
MAXTRIES_EXHAUSTED = "maxtries-exhausted"
TYPE_MISMATCH = "type-mismatch"
VALIDATION_FAILED = "validation-failed"

# Random forms added while an attempt has too few minimal generators
TOP_UP_TRIES = 10


class AttemptOutcome(NamedTuple):
    """The ideal produced by an attempt; the zero ideal when failure_reason is set"""

    ideal: Ideal
    failure_reason: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.failure_reason is None


def _failure(field: FieldSpec, reason: str) -> AttemptOutcome:
    return AttemptOutcome(Ideal(field), reason)


def sampler_field(cfg) -> FieldSpec:
    return FieldSpec(cfg.fieldChar)


def instantiate_degseq(cfg, rng) -> list:
    """The generator degrees for one attempt

    The zero sequence draws mn degrees uniformly from [lowDeg, highDeg]; anything else is used as is.

    @exception ValueError if an explicit entry is below 1
    """
    if list(cfg.degSeq) == ZERO_SEQUENCE:
        return [int(d) for d in rng.integers(cfg.lowDeg, cfg.highDeg + 1, size=cfg.mn)]
    degrees = [int(d) for d in cfg.degSeq]
    if any(d < 1 for d in degrees):
        raise ValueError(f"Degree sequence {degrees} has an entry below 1")
    return degrees


def _power(variable: int, degree: int) -> Monomial:
    return Monomial(*(degree if k == variable else 0 for k in range(3)))


def _is_target(gens, mn: int) -> bool:
    return len(gens) == mn and codimension(Ideal(gens[0].field, tuple(gens))) == 3


def generate_candidate(cfg, rng) -> AttemptOutcome:
    """One attempt with the forms themselves as generators"""
    field = sampler_field(cfg)
    degrees = instantiate_degseq(cfg, rng)
    forms = [random_homogeneous(field, d, cfg.numTerms, rng) for d in degrees]
    gens = minimal_generators(Ideal(field, tuple(forms)))

    tries = 0
    while len(gens) < cfg.mn and tries < TOP_UP_TRIES:
        d = degrees[int(rng.integers(len(degrees)))]
        extra = random_homogeneous(field, d, cfg.numTerms, rng)
        gens = minimal_generators(Ideal(field, tuple(gens) + (extra,)))
        tries += 1
    if len(gens) != cfg.mn:
        log.debug(f"{len(gens)} minimal generators after {tries} top-ups, wanted {cfg.mn}")
        return _failure(field, MINGENS_EXHAUSTED)

    ideal = Ideal(field, tuple(gens))
    if codimension(ideal) == 3:
        return AttemptOutcome(ideal)
    if cfg.numTerms == 1:
        return _failure(field, CODIM_MONOMIAL)

    # g_i <- g_i + v^deg(g_i), cumulatively over i, starting afresh for each variable
    for variable in range(3):
        candidate = list(gens)
        for i, g in enumerate(candidate):
            candidate[i] = g + HomogeneousPolynomial.monomial(field, _power(variable, g.degree))
            trial = minimal_generators(Ideal(field, tuple(candidate)))
            if trial and _is_target(trial, cfg.mn):
                log.debug(f"fix-up succeeded on generator {i} with variable {'xyz'[variable]}")
                return AttemptOutcome(Ideal(field, tuple(trial)))
    return _failure(field, VARIABLES_EXHAUSTED)


def generate_via_inverse_system(cfg, rng) -> AttemptOutcome:
    """One attempt through the annihilator of random dual forms"""
    field = sampler_field(cfg)
    degrees = instantiate_degseq(cfg, rng)
    forms = [random_homogeneous(field, d, cfg.numTerms, rng) for d in degrees]
    ideal = annihilator_ideal(forms, field)
    n = quotient_type(ideal)
    if n != cfg.mn:
        log.debug(f"annihilator has type {n}, wanted {cfg.mn}")
        return _failure(field, TYPE_MISMATCH)
    return AttemptOutcome(ideal)


class IdealSampler:
    """Produces one ideal per call, retrying failed attempts up to maxTries times

    @param cfg  The sampling configuration (a ConfigSettings)
    @param rng  A numpy Generator; the sampler is deterministic given its state
    """

    def __init__(self, cfg, rng):
        self.cfg = cfg
        self.rng = rng
        self.num_tries = 0

    def attempt(self) -> AttemptOutcome:
        if self.cfg.useN:
            return generate_via_inverse_system(self.cfg, self.rng)
        return generate_candidate(self.cfg, self.rng)

    def next_ideal(self) -> AttemptOutcome:
        while True:
            outcome = self.attempt()
            if outcome.ok:
                self.num_tries = 0
                return outcome
            if outcome.failure_reason == VARIABLES_EXHAUSTED:
                return outcome
            if self.num_tries < self.cfg.maxTries:
                self.num_tries += 1
                log.debug(f"attempt failed ({outcome.failure_reason}), try {self.num_tries}")
                continue
            self.num_tries = 0
            return _failure(outcome.ideal.field, MAXTRIES_EXHAUSTED)


def validate_ideal(ideal: Ideal, cfg) -> Validation:
    """Decide whether an ideal is classified, judging its minimal generators

    The ideal must be nonzero of codimension 3, generated in degrees >= 2, with at most maxM
    generators and type at most maxN, and with strictTerms every generator must have exactly
    numTerms terms.
    """
    if ideal.is_zero:
        return Validation(is_valid=False, message="zero ideal")
    gens = minimal_generators(ideal)
    low = [g for g in gens if g.degree < 2]
    if low:
        return Validation(is_valid=False, message=f"generator {low[0]} has degree below 2")
    if cfg.strictTerms and cfg.numTerms > 0:
        wrong = [g for g in gens if g.num_terms != cfg.numTerms]
        if wrong:
            return Validation(
                is_valid=False, message=f"generator {wrong[0]} does not have {cfg.numTerms} terms"
            )
    if len(gens) > cfg.maxM:
        return Validation(is_valid=False, message=f"{len(gens)} generators exceed maxM {cfg.maxM}")
    trimmed = Ideal(ideal.field, tuple(gens))
    if codimension(trimmed) != 3:
        return Validation(is_valid=False, message="not codimension 3")
    n = socle_dimension(quotient_presentation(trimmed))
    if n > cfg.maxN:
        return Validation(is_valid=False, message=f"type {n} exceeds maxN {cfg.maxN}")
    return VALID
