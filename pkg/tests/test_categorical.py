import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affect_engine.errors import DegenerateDistributionError, InvalidInputError
from affect_engine.inference import as_categorical, entropy, kl_divergence, normalize, softmax

finite = st.floats(min_value=-50, max_value=50, allow_nan=False)


@pytest.mark.parametrize(
    "weights, expected",
    [([2, 2], [0.5, 0.5]), ([1, 0, 0], [1, 0, 0]), ([1, 3], [0.25, 0.75])],
)
def test_normalize_examples(weights, expected):
    np.testing.assert_allclose(normalize(weights), expected, atol=1e-15)


@pytest.mark.parametrize("weights", [[0, 0], [1, -1], [], [np.nan, 1]])
def test_normalize_rejects_degenerate(weights):
    with pytest.raises(DegenerateDistributionError):
        normalize(weights)


def test_softmax_uniform_and_analytic():
    np.testing.assert_allclose(softmax([0, 0, 0], 1), [1 / 3] * 3, atol=1e-15)
    np.testing.assert_allclose(softmax([math.log(2), 0], 1), [2 / 3, 1 / 3], atol=1e-15)


def test_softmax_matches_high_precision_oracle():
    values = [-1.2, -0.4, -3.0]
    mpmath.mp.dps = 50
    exps = [mpmath.exp(mpmath.mpf(v)) for v in values]
    total = mpmath.fsum(exps)
    expected = [float(e / total) for e in exps]
    np.testing.assert_allclose(softmax(values, 1.0), expected, rtol=0, atol=1e-15)


def test_softmax_precision_scales_inputs():
    np.testing.assert_allclose(softmax([1.0, 2.0], 3.0), softmax([3.0, 6.0], 1.0), atol=1e-15)


def test_softmax_large_inputs_are_stable():
    out = softmax([1000.0, 1000.0, -1000.0])
    np.testing.assert_allclose(out, [0.5, 0.5, 0.0], atol=1e-15)


def test_softmax_rejects_nan():
    with pytest.raises(InvalidInputError):
        softmax([0.0, float("nan")])


@settings(max_examples=200)
@given(st.lists(finite, min_size=1, max_size=12), finite)
def test_softmax_normalized_and_shift_invariant(values, shift):
    a = softmax(values)
    b = softmax([v + shift for v in values])
    assert abs(a.sum() - 1) < 1e-12
    np.testing.assert_allclose(a, b, atol=1e-12)


def test_as_categorical_checks_sum():
    with pytest.raises(InvalidInputError):
        as_categorical([0.5, 0.6])
    assert as_categorical([0.25, 0.75]).dtype == float


def test_entropy_and_kl_basics():
    assert entropy([1.0, 0.0]) == 0.0
    assert entropy(np.full(8, 1 / 8)) == pytest.approx(math.log(8), abs=1e-12)
    assert kl_divergence([0.5, 0.5], [0.5, 0.5]) == pytest.approx(0.0, abs=1e-15)
    assert kl_divergence([1.0, 0.0], [0.5, 0.5]) == pytest.approx(math.log(2), abs=1e-15)
