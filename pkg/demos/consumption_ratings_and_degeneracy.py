#!/usr/bin/env python3
# # Consumption data, identity reverse weights, and a degenerate case
#
# Rows are products, columns are consumers, entries are amounts consumed.
# Here a large weight is good for both sides (popular product, active
# consumer), so the reverse weights equal the forward ones.

import numpy as np

from bicentral import (
    ReverseTransform,
    WeightRelation,
    compute_nebs,
    validate,
)

purchases = WeightRelation(
    a_labels=("alice", "bob", "carol"),
    b_labels=("coffee", "tea"),
    weights=np.array([[6.0, 1.0, 3.0], [2.0, 5.0, 4.0]]),
)

report = validate(purchases, ReverseTransform.identity())
print("input ok:", report.ok)

result = compute_nebs(purchases, ReverseTransform.identity())
print("consumer ratings:", np.round(result.a, 4))
print("product ratings :", np.round(result.b, 4))

# With the identity transform the two ratings are exactly the dominant
# right/left singular vectors of the weight matrix.

u, s, vt = np.linalg.svd(purchases.weights)
print("against SVD     :", np.round(np.abs(vt[0]), 4), np.round(np.abs(u[:, 0]), 4))

# ## When the ratings cannot separate anything
#
# If every row of the weight matrix is a permutation of the same values
# (a Latin square), both rating products end up with equal row sums and
# the solver can only return constant vectors. The result carries
# structured warnings instead of failing.

latin = WeightRelation(
    a_labels=("alice", "bob"),
    b_labels=("coffee", "tea"),
    weights=np.array([[1.0, 2.0], [2.0, 1.0]]),
)
degenerate = compute_nebs(latin, ReverseTransform.identity())
print("\nLatin-square ratings:", degenerate.a, degenerate.b)
for warning in degenerate.warnings:
    print(f"  warning {warning.code} (side {warning.side}): {warning.message}")
