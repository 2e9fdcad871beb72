from dataclasses import replace

import numpy as np
import pytest

from helstrom_gpt import (DiscriminationInstance, NumericalError, ValidationError,
                          classical_binary_family, classical_map_oracle, classical_space,
                          helstrom_bound_lp,
                          quantum_binary_helstrom, square_binary,
                          square_pure_state_discrimination, validate)
from helstrom_gpt.discrimination import Effect
from helstrom_gpt.models import (classical_embed_quantum, is_classical, lp_cross_check,
                                 square_pure_observable, square_space)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_classical_space(d):
    space = classical_space(d)
    assert len(space) == d and space.dimension == d
    assert is_classical(space)
    assert not is_classical(square_space())


def test_classical_space_rejects_small():
    with pytest.raises(ValidationError):
        classical_space(1)


@pytest.mark.parametrize("s1,s2,priors,value", [
    ((1, 0), (0, 1), (0.5, 0.5), 1.0),
    ((0.7, 0.3), (0.2, 0.8), (0.4, 0.6), 0.76),
    ((0.5, 0.5), (0.6, 0.4), (0.5, 0.5), 0.55),
])
def test_classical_oracle_and_family(s1, s2, priors, value):
    inst = DiscriminationInstance(classical_space(2), [s1, s2], priors)
    assert classical_map_oracle(inst) == pytest.approx(value, abs=1e-15)
    res = classical_binary_family(s1, s2, *priors)
    assert res.success == pytest.approx(value, abs=1e-12)
    assert res.certified
    assert validate(res.family).passed
    assert lp_cross_check(res) <= 1e-8


def test_classical_family_conjugates_are_signed_parts():
    res = classical_binary_family((0.7, 0.3), (0.2, 0.8), 0.4, 0.6)
    # X = (0.16, -0.36): t1 carries the negative part, t2 the positive part
    assert res.family.conjugates == pytest.approx(np.array([[0, 1], [1, 0]]))


def test_classical_non_generic():
    res = classical_binary_family((0.5, 0.5), (0.6, 0.4), 0.9, 0.1)
    assert not res.generic
    assert res.success == pytest.approx(0.9)
    assert res.certified
    assert validate(res.family).passed


def test_classical_random_against_oracle(rng):
    for _ in range(60):
        d = int(rng.integers(2, 7))
        s1, s2 = rng.dirichlet(np.ones(d)), rng.dirichlet(np.ones(d))
        p1 = float(rng.uniform(0.05, 0.95))
        inst = DiscriminationInstance(classical_space(d), [s1, s2], [p1, 1 - p1])
        oracle = classical_map_oracle(inst)
        res = classical_binary_family(s1, s2, p1, 1 - p1)
        assert res.success == pytest.approx(oracle, abs=1e-9)
        assert res.certified
        q = quantum_binary_helstrom(classical_embed_quantum(s1), classical_embed_quantum(s2),
                                    p1, 1 - p1)
        assert q.success == pytest.approx(oracle, abs=1e-12)


def test_classical_state_validation():
    with pytest.raises(ValidationError):
        classical_binary_family((0.7, 0.4), (0.2, 0.8), 0.5, 0.5)
    with pytest.raises(ValidationError):
        classical_map_oracle(DiscriminationInstance(square_space(), [(0, 0), (1, 1)],
                                                    (0.5, 0.5)))


@pytest.mark.parametrize("s1,s2,value,axis", [
    ((0.2, 0.5), (0.7, 0.5), 0.75, 0),
    ((0.5, 0.1), (0.5, 0.9), 0.9, 1),
    ((0.0, 0.0), (1.0, 1.0), 1.0, 0),
])
def test_square_binary(s1, s2, value, axis):
    res = square_binary(s1, s2)
    assert res.success == pytest.approx(value, abs=1e-12)
    assert res.certified
    assert validate(res.family).passed
    # conjugates on opposite facets of the chosen axis
    assert sorted(res.family.conjugates[:, axis]) == pytest.approx([0.0, 1.0])
    assert lp_cross_check(res) <= 1e-8


def test_square_binary_diagonal_both_branches():
    # on the diagonal both facet pairs give the same value
    assert square_binary((0, 0), (1, 1)).success == pytest.approx(1.0)
    assert square_binary((0.2, 0.2), (0.6, 0.6)).success == pytest.approx(0.7)


def test_square_binary_requires_uniform():
    with pytest.raises(ValidationError, match="priors"):
        square_binary((0.2, 0.5), (0.7, 0.5), priors=(0.4, 0.6))


def test_square_pure():
    res = square_pure_state_discrimination()
    assert res.success == 0.5
    assert res.certified
    assert validate(res.family).passed
    assert lp_cross_check(res) <= 1e-9


def test_square_pure_observable_structure():
    obs = square_pure_observable()
    total = Effect(np.sum([e.linear for e in obs], axis=0), sum(e.offset for e in obs))
    for x in square_space().vertices:
        assert total(x) == pytest.approx(1.0)
    assert obs[0]((1, 1)) == 0.0
    assert obs[0]((0, 0)) == pytest.approx(0.5)


def test_lp_cross_check_detects_mismatch():
    res = replace(square_binary((0.2, 0.5), (0.7, 0.5)), success=0.7)
    with pytest.raises(NumericalError):
        lp_cross_check(res)


def test_classical_lp_random_multi(rng):
    for _ in range(30):
        d, n = int(rng.integers(2, 7)), int(rng.integers(2, 6))
        S = rng.dirichlet(np.ones(d), size=n)
        inst = DiscriminationInstance(classical_space(d), S, rng.dirichlet(np.ones(n)) * 0.9
                                      + 0.1 / n)
        assert helstrom_bound_lp(inst).value == pytest.approx(classical_map_oracle(inst),
                                                              abs=1e-8)
