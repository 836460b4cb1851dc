import numpy as np
import pytest

from bicentral import ReverseTransform, WeightRelation, errors, reverse_matrix, validate


class TestWeightRelation:
    def test_valid_construction(self, ex51):
        assert ex51.shape == (2, 2)
        assert ex51.is_positive()
        assert ex51.a_labels == ("a1", "a2")

    def test_weights_are_read_only(self, ex51):
        with pytest.raises(ValueError):
            ex51.weights[0, 0] = 9.0

    @pytest.mark.parametrize(
        "a_labels,b_labels,weights",
        [
            (("a1", "a1"), ("b1",), [[1.0, 1.0]]),
            (("a1",), ("b1", "b1"), [[1.0], [1.0]]),
            (("a1", "a2"), ("b1",), [[1.0]]),
            ((), ("b1",), [[]]),
            (("a1",), ("b1",), [[-1.0]]),
            (("a1",), ("b1",), [[np.inf]]),
            (("a1",), ("b1",), [[np.nan]]),
        ],
    )
    def test_invalid_construction(self, a_labels, b_labels, weights):
        with pytest.raises(ValueError):
            WeightRelation(a_labels, b_labels, np.array(weights))

    def test_equality(self, ex51):
        same = WeightRelation(ex51.a_labels, ex51.b_labels, ex51.weights)
        other = WeightRelation(ex51.a_labels, ex51.b_labels, ex51.weights + 1.0)
        assert ex51 == same
        assert ex51 != other


class TestReverseTransform:
    def test_apply_reciprocal(self):
        assert ReverseTransform.reciprocal().apply(2.0) == 0.5

    def test_apply_identity(self):
        assert ReverseTransform.identity().apply(7.0) == 7.0

    def test_apply_power_half_is_square_root(self):
        assert ReverseTransform.power(0.5).apply(4.0) == 2.0

    def test_apply_scale(self):
        assert ReverseTransform.scale(2.5).apply(4.0) == 10.0

    def test_apply_table(self):
        t = ReverseTransform.from_table({2.0: 0.25})
        assert t.apply(2.0) == 0.25
        with pytest.raises(errors.TransformDomainError):
            t.apply(3.0)

    @pytest.mark.parametrize("x", [0.0, -1.0, np.inf, np.nan])
    def test_apply_outside_domain(self, x):
        with pytest.raises(errors.TransformDomainError):
            ReverseTransform.identity().apply(x)

    @pytest.mark.parametrize(
        "factory",
        [
            lambda: ReverseTransform.scale(0.0),
            lambda: ReverseTransform.scale(-2.0),
            lambda: ReverseTransform.power(0.0),
            lambda: ReverseTransform.from_table({}),
            lambda: ReverseTransform.from_table({0.0: 1.0}),
            lambda: ReverseTransform.from_table({1.0: -1.0}),
            lambda: ReverseTransform("something-else"),
        ],
    )
    def test_invalid_parameters(self, factory):
        with pytest.raises(ValueError):
            factory()

    def test_requires_all_positive(self):
        assert ReverseTransform.reciprocal().requires_all_positive()
        assert ReverseTransform.power(-2.0).requires_all_positive()
        assert not ReverseTransform.power(0.5).requires_all_positive()
        assert not ReverseTransform.identity().requires_all_positive()


class TestReverseMatrix:
    def test_reciprocal_on_worked_example(self, ex51):
        out = reverse_matrix(ex51, ReverseTransform.reciprocal())
        expected = np.array([[0.5, 0.5], [1.0 / 3.0, 1.0]])
        np.testing.assert_array_equal(out, expected)

    def test_identity_single_cell(self):
        rel = WeightRelation(("a1",), ("b1",), np.array([[5.0]]))
        np.testing.assert_array_equal(
            reverse_matrix(rel, ReverseTransform.identity()), [[5.0]]
        )

    def test_scale_transposes_then_scales(self):
        rel = WeightRelation(
            ("a1", "a2"), ("b1", "b2"), np.array([[1.0, 2.0], [3.0, 4.0]])
        )
        out = reverse_matrix(rel, ReverseTransform.scale(2.0))
        np.testing.assert_array_equal(out, [[2.0, 6.0], [4.0, 8.0]])

    def test_scale_equals_gamma_times_identity(self):
        rng = np.random.default_rng(7)
        rel = WeightRelation(
            tuple("abc"), tuple("xyzu"), rng.uniform(0.1, 5.0, (4, 3))
        )
        gamma = 3.7
        scaled = reverse_matrix(rel, ReverseTransform.scale(gamma))
        plain = reverse_matrix(rel, ReverseTransform.identity())
        np.testing.assert_array_equal(scaled, gamma * plain)

    def test_identity_is_transpose(self):
        rng = np.random.default_rng(8)
        weights = rng.uniform(0.0, 2.0, (5, 3))
        rel = WeightRelation(
            tuple(f"a{j}" for j in range(3)),
            tuple(f"b{i}" for i in range(5)),
            weights,
        )
        np.testing.assert_array_equal(
            reverse_matrix(rel, ReverseTransform.identity()), weights.T
        )

    @pytest.mark.parametrize(
        "transform",
        [
            ReverseTransform.identity(),
            ReverseTransform.reciprocal(),
            ReverseTransform.power(-1.5),
            ReverseTransform.power(2.0),
        ],
    )
    def test_zero_pattern_is_transposed(self, transform):
        rng = np.random.default_rng(9)
        weights = rng.uniform(0.5, 2.0, (4, 6)) * (rng.random((4, 6)) < 0.6)
        rel = WeightRelation(
            tuple(f"a{j}" for j in range(6)),
            tuple(f"b{i}" for i in range(4)),
            weights,
        )
        out = reverse_matrix(rel, transform)
        np.testing.assert_array_equal(out.T > 0, weights > 0)

    def test_table_missing_key_raises(self, ex51):
        transform = ReverseTransform.from_table({2.0: 1.0, 3.0: 2.0})
        with pytest.raises(errors.TransformDomainError):
            reverse_matrix(ex51, transform)


class TestValidate:
    def test_worked_example_is_ok(self, ex51):
        report = validate(ex51, ReverseTransform.reciprocal())
        assert report.ok
        assert report.all_positive
        assert report.products_irreducible

    def test_reciprocal_on_zero_entry_is_flagged(self):
        rel = WeightRelation(
            ("a1", "a2"), ("b1", "b2"), np.array([[1.0, 0.0], [0.0, 1.0]])
        )
        report = validate(rel, ReverseTransform.reciprocal())
        assert not report.ok
        assert not report.transform_applicable
        assert any("zero entry" in v for v in report.violations)

    def test_zero_row_makes_products_reducible(self):
        rel = WeightRelation(
            ("a1", "a2"), ("b1", "b2"), np.array([[1.0, 1.0], [0.0, 0.0]])
        )
        report = validate(rel, ReverseTransform.identity())
        assert not report.ok
        assert report.zero_rows == (1,)
        assert report.products_irreducible is False

    def test_sparse_but_connected_input_is_accepted(self):
        # Not all positive, yet both products are irreducible: ratings exist.
        rel = WeightRelation(
            ("a1", "a2"), ("b1", "b2"), np.array([[1.0, 2.0], [3.0, 0.0]])
        )
        report = validate(rel, ReverseTransform.identity())
        assert report.ok
        assert not report.all_positive
        assert report.products_irreducible

    def test_table_gap_reported(self, ex51):
        report = validate(ex51, ReverseTransform.from_table({2.0: 1.0}))
        assert not report.ok
        assert not report.transform_applicable
        assert report.products_irreducible is None
