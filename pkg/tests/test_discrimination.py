import numpy as np
import pytest

from helstrom_gpt import (DiscriminationInstance, Effect, Observable, ValidationError,
                          binary_bound_form, distinguishable, helstrom_bound_lp,
                          success_probability)
from helstrom_gpt.models import classical_space, square_pure_observable, square_space
from helpers import random_instance, random_observable

TRIANGLE_VERTICES = [[0, 0], [1, 0], [0, 1]]


def test_effect_algebra():
    e = Effect([0.5, -0.25], 0.25)
    assert e([1.0, 1.0]) == pytest.approx(0.5)
    assert e.complement()([1.0, 1.0]) == pytest.approx(0.5)
    assert Effect.unit(2)([0.3, 0.9]) == 1.0
    assert Effect.zero(2)([0.3, 0.9]) == 0.0
    assert e.is_valid_on(square_space())
    assert not Effect([2.0, 0.0], 0.0).is_valid_on(square_space())


def test_observable_checks():
    obs = square_pure_observable()
    obs.check(square_space())
    assert obs.unit_residual() <= 1e-15
    bad = Observable([Effect([0.5, 0.0], 0.0), Effect([0.0, 0.0], 0.5)])
    with pytest.raises(ValidationError, match="unit effect"):
        bad.check(square_space())
    with pytest.raises(ValidationError):
        Observable([Effect([1.0], 0.0), Effect([1.0, 0.0], 0.0)])


def test_instance_validation():
    sq = square_space()
    with pytest.raises(ValidationError, match="priors"):
        DiscriminationInstance(sq, [[0.1, 0.1], [0.5, 0.5]], [0.5, 0.4])
    with pytest.raises(ValidationError, match="states"):
        DiscriminationInstance(sq, [[0.1, 0.1], [0.1, 0.1]], [0.5, 0.5])
    with pytest.raises(ValidationError):
        DiscriminationInstance(sq, [[0.1, 0.1], [1.5, 0.5]], [0.5, 0.5])


def test_trivial_observable_gives_first_prior(rng):
    inst = random_instance(rng, n=3)
    obs = Observable.trivial(3, inst.space.dimension, guess=0)
    assert success_probability(inst, obs) == pytest.approx(inst.priors[0], abs=1e-15)


def test_square_pure_observable_value():
    sq = square_space()
    inst = DiscriminationInstance(sq, sq.vertices, np.full(4, 0.25))
    assert success_probability(inst, square_pure_observable()) == pytest.approx(0.5, abs=1e-15)


@pytest.mark.parametrize("s1,s2,priors,value", [
    ((0.2, 0.5), (0.7, 0.5), (0.5, 0.5), 0.75),
    ((0.5, 0.1), (0.5, 0.9), (0.5, 0.5), 0.9),
    ((0.0, 0.0), (1.0, 1.0), (0.3, 0.7), 1.0),
])
def test_square_binary_values(s1, s2, priors, value):
    inst = DiscriminationInstance(square_space(), [s1, s2], priors)
    bound = helstrom_bound_lp(inst)
    assert bound.value == pytest.approx(value, abs=1e-9)
    assert binary_bound_form(inst) == pytest.approx(value, abs=1e-9)
    assert success_probability(inst, bound.observable) == pytest.approx(bound.value, abs=1e-9)


def test_square_pure_lp():
    sq = square_space()
    inst = DiscriminationInstance(sq, sq.vertices, np.full(4, 0.25))
    assert helstrom_bound_lp(inst).value == pytest.approx(0.5, abs=1e-9)


def test_classical_orthogonal():
    inst = DiscriminationInstance(classical_space(2), [[1, 0], [0, 1]], [0.5, 0.5])
    assert helstrom_bound_lp(inst).value == pytest.approx(1.0, abs=1e-12)


def test_lp_beats_random_observables(rng):
    for _ in range(40):
        inst = random_instance(rng)
        best = helstrom_bound_lp(inst).value
        for _ in range(5):
            obs = random_observable(rng, inst.space, inst.n)
            assert success_probability(inst, obs) <= best + 1e-9


def test_lp_invariant_under_relabelling(rng):
    for _ in range(20):
        inst = random_instance(rng)
        order = rng.permutation(inst.n)
        a = helstrom_bound_lp(inst).value
        b = helstrom_bound_lp(inst.permuted(order)).value
        assert a == pytest.approx(b, abs=1e-9)


def test_binary_form_matches_lp(rng):
    for _ in range(30):
        inst = random_instance(rng, n=2)
        assert binary_bound_form(inst) == pytest.approx(helstrom_bound_lp(inst).value, abs=1e-9)


def test_distinguishable_square_corners():
    ok, e = distinguishable(square_space(), (1, 0), (0, 1))
    assert ok
    assert e((1, 0)) == pytest.approx(1.0, abs=1e-12)
    assert e((0, 1)) == pytest.approx(0.0, abs=1e-12)
    assert e.is_valid_on(square_space())


def test_interior_not_distinguishable():
    ok, e = distinguishable(square_space(), (0.5, 0.5), (1, 1))
    assert not ok and e is None


def test_triangle_pure_states_distinguishable():
    from helstrom_gpt import ConvexStateSpace
    ok, _ = distinguishable(ConvexStateSpace(TRIANGLE_VERTICES), (1, 0), (0, 0))
    assert ok
