import numpy as np
import pytest

from ridgegap.errors import DuplicatePoints, SingularDirections
from ridgegap.geometry import (
    BoxDomainSpec,
    DirectionPair,
    SampledDomain,
    forward_transform,
    inverse_transform,
    quantize_levels,
    sample_box,
)


class TestDirectionPair:
    def test_arrays_are_read_only(self):
        d = DirectionPair([1, 2], [3, 4])
        with pytest.raises(ValueError):
            d.a[0] = 5.0

    def test_determinant(self):
        assert DirectionPair([1, 1], [1, -1]).determinant() == pytest.approx(-2.0)
        assert not DirectionPair([1, 2], [2, 4]).is_independent()

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            DirectionPair([1, 0], [0, 1, 0])


class TestQuantize:
    def test_merges_within_tolerance(self):
        np.testing.assert_array_equal(quantize_levels([0.0, 1e-12, 1.0], 1e-9), [0, 0, 1])

    def test_ids_follow_value_order(self):
        np.testing.assert_array_equal(quantize_levels([3.0, -1.0, 3.0, 0.5], 1e-9), [2, 0, 2, 1])

    def test_chain_linkage(self):
        # gaps below tol chain together even when the ends are further apart
        np.testing.assert_array_equal(quantize_levels([0.0, 0.6, 1.2], 0.7), [0, 0, 0])


class TestSampledDomain:
    def test_levels_and_values(self, axes):
        dom = SampledDomain.from_points([[0, 0], [1, 0], [1, 1], [0, 1]], axes)
        np.testing.assert_array_equal(dom.a_level, [0, 1, 1, 0])
        np.testing.assert_array_equal(dom.b_level, [0, 0, 1, 1])
        np.testing.assert_allclose(dom.a_values, [0, 1])
        assert dom.n_a_levels == dom.n_b_levels == 2

    def test_duplicates_rejected(self, axes):
        with pytest.raises(DuplicatePoints):
            SampledDomain.from_points([[0, 0], [1, 1], [0, 0]], axes)

    def test_subset_relabels(self, axes):
        dom = SampledDomain.from_points([[0, 0], [1, 0], [2, 1]], axes)
        sub = dom.subset([0, 2])
        np.testing.assert_array_equal(sub.a_level, [0, 1])
        assert sub.n_b_levels == 2

    def test_three_dimensional(self):
        d = DirectionPair([1, 0, 0], [0, 1, 0])
        dom = SampledDomain.from_points([[0, 0, 0], [0, 0, 1]], d)
        assert dom.n_a_levels == 1 and dom.n_b_levels == 1


class TestTransforms:
    def test_inverse_example(self):
        d = DirectionPair([1, 1], [1, -1])
        np.testing.assert_allclose(inverse_transform((1.0, 1.0), d), [1.0, 0.0])

    def test_roundtrip(self, rng):
        d = DirectionPair(rng.normal(size=2), rng.normal(size=2))
        y = rng.normal(size=(20, 2))
        x = inverse_transform(y, d)
        np.testing.assert_allclose(np.stack([x @ d.a, x @ d.b], axis=1), y, atol=1e-10)
        np.testing.assert_allclose(forward_transform(x[0], d), y[0], atol=1e-10)

    def test_singular(self):
        with pytest.raises(SingularDirections):
            inverse_transform((1.0, 2.0), DirectionPair([1, 2], [-2, -4]))


class TestSampleBox:
    def test_rotated_corners(self):
        d = DirectionPair([1, 1], [1, -1])
        dom = sample_box(BoxDomainSpec(0, 1, 0, 1, d), 2)
        got = {tuple(np.round(p, 12)) for p in dom.points}
        assert got == {(0.0, 0.0), (0.5, -0.5), (0.5, 0.5), (1.0, 0.0)}

    def test_grid_layout(self, axes):
        dom = sample_box(BoxDomainSpec(0, 1, 0, 2, axes), 3)
        assert len(dom) == 9
        np.testing.assert_array_equal(dom.a_level, np.repeat(np.arange(3), 3))
        np.testing.assert_array_equal(dom.b_level, np.tile(np.arange(3), 3))
        np.testing.assert_allclose(dom.b_values, [0, 1, 2])

    def test_needs_two_samples(self, axes):
        with pytest.raises(ValueError):
            sample_box(BoxDomainSpec(0, 1, 0, 1, axes), 1)
