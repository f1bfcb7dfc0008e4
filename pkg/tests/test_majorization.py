import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from fermitangle.errors import InvalidVector
from fermitangle.majorization import locc_transformable, majorizes
from fermitangle.schmidt import ProbabilityVector, entanglement_entropy

N_RANDOM = 1000


def random_prob(rng, d):
    # mixture of flat and spiky draws so both ends of the order are exercised
    w = rng.dirichlet(np.full(d, rng.choice([0.1, 1.0, 10.0])))
    return w / w.sum()


def doubly_stochastic(rng, d, terms=4):
    c = rng.dirichlet(np.ones(terms))
    return sum(ci * np.eye(d)[rng.permutation(d)] for ci in c)


def test_mixed_below_pure():
    rep = majorizes([0.5, 0.5], [1.0, 0.0])
    assert rep.majorized and rep.first_violating_k is None
    np.testing.assert_allclose(rep.partial_sums_x, [0.5, 1.0])
    np.testing.assert_allclose(rep.partial_sums_y, [1.0, 1.0])


def test_pure_not_below_mixed():
    rep = majorizes([1.0, 0.0], [0.5, 0.5])
    assert not rep.majorized
    assert rep.first_violating_k == 1
    assert not bool(rep)


def test_example_states_with_trailing_zeros():
    assert majorizes([0.5, 0.5, 0.0], [0.5, 0.5, 0.0]).majorized
    assert majorizes([0.5, 0.5, 0.0, 0.0], [0.5, 0.5]).majorized


def test_locc_examples():
    assert locc_transformable([0.5, 0.5], [0.5, 0.5])
    assert not locc_transformable([0.7, 0.3], [0.5, 0.5])
    assert locc_transformable(np.full(4, 0.25), [0.4, 0.3, 0.2, 0.1])
    assert locc_transformable(ProbabilityVector([0.5, 0.5]), ProbabilityVector([1.0]))


def test_uniform_below_everything(rng):
    for _ in range(100):
        assert locc_transformable(np.full(4, 0.25), random_prob(rng, 4))


def test_total_mismatch_within_tolerance_flags_last_k():
    rep = majorizes([0.5, 0.5], [0.5, 0.5 + 1e-10])
    assert not rep.majorized and rep.first_violating_k == 2


@pytest.mark.parametrize(
    "x, y",
    [([0.5, -0.1, 0.6], [1.0]), ([1.0], [0.5, 0.4]), ([], [1.0]), ([np.nan, 1.0], [1.0])],
)
def test_invalid_vectors(x, y):
    with pytest.raises(InvalidVector):
        majorizes(x, y)


def test_randomized_property_suite(rng):
    for _ in range(N_RANDOM):
        d = int(rng.integers(1, 10))
        x = random_prob(rng, d)
        y = random_prob(rng, int(rng.integers(1, 10)))
        # reflexivity
        assert majorizes(x, x).majorized
        # permutation invariance
        r = majorizes(x, y).majorized
        assert majorizes(rng.permutation(x), rng.permutation(y)).majorized == r
        # Schur concavity of entropy
        if r:
            assert entanglement_entropy(x) >= entanglement_entropy(y) - 1e-12
        # antisymmetry up to permutation
        if r and majorizes(y, x).majorized:
            a = np.sort(np.pad(x, (0, max(0, y.size - x.size))))
            b = np.sort(np.pad(y, (0, max(0, x.size - y.size))))
            np.testing.assert_allclose(a, b, atol=1e-12)


def test_doubly_stochastic_images_are_majorized(rng):
    for _ in range(N_RANDOM):
        d = int(rng.integers(2, 9))
        z = random_prob(rng, d)
        y = doubly_stochastic(rng, d) @ z
        x = doubly_stochastic(rng, d) @ y
        assert majorizes(y, z).majorized
        assert majorizes(x, y).majorized
        # transitivity
        assert majorizes(x, z).majorized


prob = arrays(np.float64, st.integers(1, 8), elements=st.floats(0.0, 1.0)).filter(lambda a: a.sum() > 1e-3)


@settings(max_examples=200)
@given(prob, prob, prob)
def test_transitivity_hypothesis(a, b, c):
    x, y, z = (v / v.sum() for v in (a, b, c))
    if majorizes(x, y).majorized and majorizes(y, z).majorized:
        assert majorizes(x, z).majorized


@settings(max_examples=200)
@given(prob)
def test_bracketed_by_uniform_and_pure(a):
    x = a / a.sum()
    pure = np.zeros(x.size)
    pure[0] = 1.0
    assert majorizes(x, pure).majorized
    assert majorizes(np.full(x.size, 1 / x.size), x).majorized


@settings(max_examples=100)
@given(prob)
def test_report_prefix_sums_are_cumulative(a):
    x = a / a.sum()
    rep = majorizes(x, x)
    np.testing.assert_allclose(rep.partial_sums_x, np.cumsum(np.sort(x)[::-1]))
    assert rep.partial_sums_x[-1] == pytest.approx(1.0, abs=1e-12)
