"""Observable algebra: unit-sum checks, added noise, mixing, coarse-graining."""
from fractions import Fraction

import pytest

from gptgeom.gallery import load
from gptgeom.linalg import qvec, zero_vector
from gptgeom.observables import (
    InvalidPartitionError,
    Observable,
    ProbabilityOutOfRangeError,
    TooManyOutcomesError,
    WeightsNotNormalizedError,
    coarse_grain,
    dichotomic_extremal_observables,
    is_observable,
    mix_observables,
    noisy_observable,
)
from gptgeom.systems import GptValidationError, EffectSpace
from gptgeom.geometry import hull_reduce

F = Fraction


@pytest.fixture(scope="module")
def bit():
    return load("bit").gpt_system()


def random_effect(gen, sys):
    weights = [F(gen.randint(0, 4)) for _ in sys.effects.polytope.vertices]
    if sum(weights) == 0:
        weights[0] = F(1)
    total = sum(weights)
    acc = zero_vector(sys.dim)
    for w, v in zip(weights, sys.effects.polytope.vertices):
        acc = acc + v * (w / total)
    return acc


def test_two_outcome_measurement_is_observable(bit):
    assert is_observable([qvec(-1, 1), qvec(1, 0)], bit)


def test_unit_singleton_is_observable(bit):
    assert is_observable([bit.unit], bit)


def test_double_unit_is_not(bit):
    assert not is_observable([bit.unit, bit.unit], bit)


def test_subset_sum_cap(bit):
    outcomes = [zero_vector(2)] * 16 + [bit.unit]
    with pytest.raises(TooManyOutcomesError):
        is_observable(outcomes, bit)


def test_noisy_p1_appends_zero(bit):
    obs = Observable([qvec(-1, 1), qvec(1, 0)])
    noisy = noisy_observable(obs, 1)
    assert noisy.outcomes == obs.outcomes + (zero_vector(2),)


def test_noisy_half_splits_unit(bit):
    e = qvec(F(1, 2), F(1, 4))
    obs = Observable([e, bit.unit - e])
    noisy = noisy_observable(obs, F(1, 2))
    assert noisy.outcomes == (e * F(1, 2), (bit.unit - e) * F(1, 2), bit.unit * F(1, 2))
    assert noisy.total == bit.unit


def test_noisy_probability_range(bit):
    obs = Observable([bit.unit])
    for p in (0, F(3, 2), -1):
        with pytest.raises(ProbabilityOutOfRangeError):
            noisy_observable(obs, p)


def test_worked_three_outcome_mixture(bit, rng):
    # mixing a three-outcome observable with a padded two-outcome one at
    # weights 1/3 and 2/3, then merging the first two outcomes, must equal
    # the dichotomic observable built from the combined effect
    u = bit.unit
    for _ in range(20):
        e1 = random_effect(rng, bit)
        e2 = random_effect(rng, bit)
        f = random_effect(rng, bit)
        mixed = mix_observables([
            (Observable([e1, e2, u - e1 - e2]), F(1, 3)),
            (Observable([f, zero_vector(2), u - f]), F(2, 3)),
        ])
        g = (e1 + e2 + f * 2) * F(1, 3)
        assert mixed.outcomes == (
            (e1 + f * 2) * F(1, 3), e2 * F(1, 3), u - g
        )
        merged = coarse_grain(mixed, [[0, 1], [2]])
        assert merged.outcomes == (g, u - g)


def test_mix_single_is_identity(bit):
    obs = Observable([qvec(-1, 1), qvec(1, 0)])
    assert mix_observables([(obs, 1)]).outcomes == obs.outcomes


def test_equal_mix_of_halves(bit, rng):
    # measuring either of two padded dichotomic observables with equal
    # probability simulates the halved two-effect observable
    u = bit.unit
    e = random_effect(rng, bit)
    e2 = random_effect(rng, bit)
    mixed = mix_observables([
        (Observable([e, zero_vector(2), u - e]), F(1, 2)),
        (Observable([zero_vector(2), e2, u - e2]), F(1, 2)),
    ])
    assert mixed.outcomes == (e * F(1, 2), e2 * F(1, 2), u - (e + e2) * F(1, 2))


def test_mix_weight_validation(bit):
    obs = Observable([bit.unit])
    with pytest.raises(WeightsNotNormalizedError):
        mix_observables([(obs, F(1, 2)), (obs, F(1, 3))])
    with pytest.raises(WeightsNotNormalizedError):
        mix_observables([(obs, F(3, 2)), (obs, F(-1, 2))])


def test_coarse_grain_singletons_and_total(bit):
    obs = Observable([qvec(-1, 1), qvec(1, 0)])
    assert coarse_grain(obs, [[0], [1]]).outcomes == obs.outcomes
    assert coarse_grain(obs, [[0, 1]]).outcomes == (bit.unit,)


def test_coarse_grain_partition_validation(bit):
    obs = Observable([qvec(-1, 1), qvec(1, 0)])
    with pytest.raises(InvalidPartitionError):
        coarse_grain(obs, [[0], [0, 1]])
    with pytest.raises(InvalidPartitionError):
        coarse_grain(obs, [[0]])


def test_dichotomic_extremal_bit(bit):
    observables = dichotomic_extremal_observables(bit)
    tuples = {o.outcomes for o in observables}
    assert tuples == {
        (qvec(-1, 1), qvec(1, 0)),
        (qvec(1, 0), qvec(-1, 1)),
    }


def test_dichotomic_extremal_transformed_bit():
    sys = load("bit-transformed").gpt_system()
    observables = dichotomic_extremal_observables(sys)
    firsts = {o.outcomes[0] for o in observables}
    assert firsts == {qvec(F(1, 2), F(1, 2)), qvec(F(-1, 2), F(1, 2))}
    for o in observables:
        assert o.total == sys.unit


def test_degenerate_effect_space_fails_upstream():
    with pytest.raises(GptValidationError):
        EffectSpace(hull_reduce([qvec(0, 0), qvec(0, 1)]))
