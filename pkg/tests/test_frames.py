"""Frame-function machinery: exact recovery, rejection of bad samples,
and the observable-sum checks."""
from fractions import Fraction

import pytest

from gptgeom.frames import (
    FrameSamples,
    InconsistentSamplesError,
    MissingSampleError,
    NotAStateError,
    UnderDeterminedError,
    frame_check,
    recover_state,
)
from gptgeom.gallery import load
from gptgeom.linalg import qvec, zero_vector
from gptgeom.observables import Observable, dichotomic_extremal_observables
from gptgeom.systems import states_from_effects

F = Fraction


@pytest.fixture(scope="module")
def bit():
    return load("bit").gpt_system()


@pytest.fixture(scope="module")
def spekkens():
    return load("spekkens").gpt_system()


def test_recover_bit_state(bit):
    samples = FrameSamples([
        (qvec(1, 0), 0),
        (qvec(F(-1, 2), F(1, 2)), F(1, 2)),
        (qvec(F(1, 2), F(1, 2)), F(1, 2)),
    ])
    assert recover_state(samples, bit) == qvec(0, 1)


def test_perturbed_samples_rejected(bit):
    samples = FrameSamples([
        (qvec(1, 0), F(1, 7)),
        (qvec(F(-1, 2), F(1, 2)), F(1, 2)),
        (qvec(F(1, 2), F(1, 2)), F(1, 2)),
    ])
    with pytest.raises((InconsistentSamplesError, NotAStateError)):
        recover_state(samples, bit)


def test_spekkens_frame_function_beyond_states(spekkens):
    # sample the linear functional of a cube corner on all extremal effects:
    # it passes every frame-function requirement yet is no octahedron state
    corner = qvec(1, 1, 1, 1)
    samples = FrameSamples.from_state(spekkens, corner)
    recovered = recover_state(samples, spekkens)
    assert recovered == corner
    assert states_from_effects(spekkens.effects).contains(recovered)
    assert not spekkens.states.contains(recovered)


def test_not_a_state(bit):
    samples = FrameSamples([(qvec(1, 0), 1), (qvec(0, 1), 0)])
    with pytest.raises(NotAStateError):
        recover_state(samples, bit)


def test_underdetermined(bit):
    samples = FrameSamples([(qvec(1, 0), 0)])
    with pytest.raises(UnderDeterminedError):
        recover_state(samples, bit)


def test_value_range_enforced():
    with pytest.raises(ValueError):
        FrameSamples([(qvec(1, 0), F(3, 2))])


def test_frame_check_on_sampled_state(bit, rng):
    w = qvec(F(1, 3), 1)
    base = dichotomic_extremal_observables(bit)
    observables = list(base)
    for _ in range(20):
        picks = [rng.choice(base).outcomes[0] * F(1, 2) for _ in range(2)]
        rest = bit.unit - picks[0] - picks[1]
        observables.append(Observable([picks[0], picks[1], rest]))
    effects = {e for o in observables for e in o.outcomes}
    samples = FrameSamples([(e, e.dot(w)) for e in effects])
    assert frame_check(samples, observables)


def test_frame_check_detects_violation(bit):
    samples = FrameSamples([(bit.unit, F(1, 2)), (zero_vector(2), 0)])
    assert not frame_check(samples, [Observable([bit.unit])])
    good = FrameSamples([(bit.unit, 1), (zero_vector(2), 0)])
    assert frame_check(good, [Observable([bit.unit]),
                              Observable([bit.unit, zero_vector(2)])])


def test_frame_check_missing_sample(bit):
    samples = FrameSamples([(bit.unit, 1)])
    with pytest.raises(MissingSampleError):
        frame_check(samples, [Observable([qvec(1, 0), qvec(-1, 1)])])


def test_halving_identity_on_recovered_state(bit):
    # values of a recovered state halve when effects are halved
    w = recover_state(FrameSamples.from_state(bit, qvec(F(1, 4), 1)), bit)
    for e in bit.effects.polytope.vertices:
        assert (e * F(1, 2)).dot(w) == e.dot(w) / 2
