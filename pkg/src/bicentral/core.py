"""Domain types for two-sided weight relations and reverse transforms.

A relation between item sets A and B is stored as a dense m×n matrix: rows
follow ``b_labels``, columns follow ``a_labels``, and a zero entry means the
pair is simply not related (weights of related pairs are strictly positive).
The reverse transform turns forward weights into reverse weights, which is
what couples the two rating vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Optional, Sequence

import numpy as np

from bicentral import errors
from bicentral.spectral import ConvergenceReport, FloatArray, is_irreducible


@dataclass(frozen=True, eq=False)
class WeightRelation:
    """Labeled nonnegative weight matrix between two item sets.

    a_labels: the n column items (set A).
    b_labels: the m row items (set B).
    weights: m×n matrix; weights[i, j] is the weight of pair
        (a_labels[j], b_labels[i]), or 0 when the pair is unrelated.
    """

    a_labels: tuple[str, ...]
    b_labels: tuple[str, ...]
    weights: FloatArray

    def __post_init__(self) -> None:
        a = tuple(str(x) for x in self.a_labels)
        b = tuple(str(x) for x in self.b_labels)
        w = np.array(self.weights, dtype=np.float64, copy=True)
        if len(a) < 1 or len(b) < 1:
            raise ValueError("both label lists must be nonempty")
        if len(set(a)) != len(a):
            raise ValueError("a_labels contain duplicates")
        if len(set(b)) != len(b):
            raise ValueError("b_labels contain duplicates")
        if w.ndim != 2 or w.shape != (len(b), len(a)):
            raise ValueError(
                f"weights shape {w.shape} does not match "
                f"{len(b)} row labels x {len(a)} column labels"
            )
        if not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite")
        if np.any(w < 0):
            raise ValueError("weights must be nonnegative")
        w.setflags(write=False)
        object.__setattr__(self, "a_labels", a)
        object.__setattr__(self, "b_labels", b)
        object.__setattr__(self, "weights", w)

    @property
    def shape(self) -> tuple[int, int]:
        """(m, n): number of b-items by number of a-items."""
        return self.weights.shape

    def is_positive(self) -> bool:
        return bool(self.weights.min() > 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightRelation):
            return NotImplemented
        return (
            self.a_labels == other.a_labels
            and self.b_labels == other.b_labels
            and np.array_equal(self.weights, other.weights)
        )


IDENTITY = "identity"
RECIPROCAL = "reciprocal"
SCALE = "scale"
POWER = "power"
TABLE = "table"

_KINDS = (IDENTITY, RECIPROCAL, SCALE, POWER, TABLE)


@dataclass(frozen=True)
class ReverseTransform:
    """Closed family of maps from forward weights to reverse weights.

    Use the classmethod constructors; the kinds are:

    * identity    — x, for data where large weights mean strong performance;
    * reciprocal  — 1/x, for data where large weights mean poor performance
                    (for example solving times);
    * scale       — gamma*x with gamma > 0;
    * power       — x**p with p != 0;
    * table       — explicit lookup over the observed weights.
    """

    kind: str
    gamma: Optional[float] = None
    exponent: Optional[float] = None
    table: Optional[Mapping[float, float]] = None

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown transform kind {self.kind!r}")
        if self.kind == SCALE:
            if self.gamma is None or not (self.gamma > 0) or not math.isfinite(self.gamma):
                raise ValueError("scale transform requires a positive finite gamma")
        if self.kind == POWER:
            if (
                self.exponent is None
                or self.exponent == 0
                or not math.isfinite(self.exponent)
            ):
                raise ValueError("power transform requires a nonzero finite exponent")
        if self.kind == TABLE:
            if not self.table:
                raise ValueError("table transform requires a nonempty mapping")
            frozen: dict[float, float] = {}
            for key, value in self.table.items():
                k, v = float(key), float(value)
                if not (k > 0 and math.isfinite(k)):
                    raise ValueError(f"table key {key!r} must be a positive real")
                if not (v > 0 and math.isfinite(v)):
                    raise ValueError(f"table value {value!r} must be a positive real")
                frozen[k] = v
            object.__setattr__(self, "table", MappingProxyType(frozen))

    @classmethod
    def identity(cls) -> "ReverseTransform":
        return cls(IDENTITY)

    @classmethod
    def reciprocal(cls) -> "ReverseTransform":
        return cls(RECIPROCAL)

    @classmethod
    def scale(cls, gamma: float) -> "ReverseTransform":
        return cls(SCALE, gamma=float(gamma))

    @classmethod
    def power(cls, exponent: float) -> "ReverseTransform":
        return cls(POWER, exponent=float(exponent))

    @classmethod
    def from_table(cls, mapping: Mapping[float, float]) -> "ReverseTransform":
        return cls(TABLE, table=mapping)

    def requires_all_positive(self) -> bool:
        """Whether the transform is only meaningful on fully positive data."""
        return self.kind == RECIPROCAL or (
            self.kind == POWER and self.exponent is not None and self.exponent < 0
        )

    def apply(self, x: float) -> float:
        """Evaluate the transform at a single positive weight.

        Raises:
            TransformDomainError: x is not a positive real, or a table
                transform has no entry for it.
        """
        x = float(x)
        if not (x > 0 and math.isfinite(x)):
            raise errors.TransformDomainError(
                f"reverse transforms are defined on positive reals, got {x!r}"
            )
        if self.kind == IDENTITY:
            return x
        if self.kind == RECIPROCAL:
            return 1.0 / x
        if self.kind == SCALE:
            return self.gamma * x
        if self.kind == POWER:
            return x ** self.exponent
        try:
            return self.table[x]
        except KeyError:
            raise errors.TransformDomainError(
                f"table transform has no entry for weight {x!r}"
            ) from None

    def describe(self) -> str:
        if self.kind == SCALE:
            return f"scale:{self.gamma:g}"
        if self.kind == POWER:
            return f"power:{self.exponent:g}"
        if self.kind == TABLE:
            return f"table({len(self.table)} entries)"
        return self.kind


def reverse_matrix(rel: WeightRelation, transform: ReverseTransform) -> FloatArray:
    """Reverse weight matrix: n×m, transposed pattern, transformed values.

    Entry (j, i) is transform(weights[i, j]) when the pair is related and 0
    otherwise, so the zero pattern of the result is exactly the transpose of
    the input's.

    Raises:
        TransformDomainError: a table transform misses some observed weight.
    """
    W = rel.weights
    if transform.kind == IDENTITY:
        return W.T.copy()
    if transform.kind == SCALE:
        return transform.gamma * W.T
    WT = W.T
    positive = WT > 0
    out = np.zeros_like(WT)
    if transform.kind == RECIPROCAL:
        np.divide(1.0, WT, out=out, where=positive)
        return out
    if transform.kind == POWER:
        np.power(WT, transform.exponent, out=out, where=positive)
        return out
    rows, cols = np.nonzero(positive)
    for j, i in zip(rows.tolist(), cols.tolist()):
        weight = float(WT[j, i])
        value = transform.table.get(weight)
        if value is None:
            raise errors.TransformDomainError(
                f"table transform has no entry for weight {weight!r} "
                f"at row {i}, column {j} of the weight matrix"
            )
        out[j, i] = value
    return out


@dataclass(frozen=True)
class ValidationReport:
    """Per-check outcome of :func:`validate`; ``ok`` iff no violations."""

    all_positive: bool
    transform_applicable: bool
    products_irreducible: Optional[bool]
    zero_rows: tuple[int, ...]
    zero_columns: tuple[int, ...]
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(rel: WeightRelation, transform: ReverseTransform) -> ValidationReport:
    """Check the relation/transform pair against the solver's hypotheses.

    Pure report, never raises. Checks, in order: positivity of the weight
    matrix, applicability of the transform (reciprocal and negative powers
    want fully positive data; tables must cover every observed weight),
    zero rows/columns, and strong connectivity of both rating products.
    """
    W = rel.weights
    violations: list[str] = []

    all_positive = bool(W.min() > 0)

    transform_applicable = True
    if transform.requires_all_positive() and not all_positive:
        transform_applicable = False
        i, j = map(int, next(zip(*np.nonzero(W == 0))))
        violations.append(
            f"{transform.kind} transform applied to zero entry at row {i} "
            f"({rel.b_labels[i]!r}), column {j} ({rel.a_labels[j]!r}); "
            "it requires every weight to be positive"
        )
    if transform.kind == TABLE:
        observed = {float(w) for w in W[W > 0]}
        missing = sorted(observed - set(transform.table))
        if missing:
            transform_applicable = False
            violations.append(
                f"table transform is missing {len(missing)} observed "
                f"weight(s), first {missing[0]!r}"
            )

    zero_rows = tuple(int(i) for i in np.flatnonzero(~W.any(axis=1)))
    zero_columns = tuple(int(j) for j in np.flatnonzero(~W.any(axis=0)))
    for i in zero_rows:
        violations.append(
            f"row {i} ({rel.b_labels[i]!r}) has no positive weights, which "
            "makes the rating products reducible"
        )
    for j in zero_columns:
        violations.append(
            f"column {j} ({rel.a_labels[j]!r}) has no positive weights, "
            "which makes the rating products reducible"
        )

    products_irreducible: Optional[bool] = None
    try:
        reverse = reverse_matrix(rel, transform)
    except errors.TransformDomainError:
        reverse = None
    if reverse is not None:
        products_irreducible = bool(
            is_irreducible(W @ reverse) and is_irreducible(reverse @ W)
        )
        if not products_irreducible:
            violations.append(
                "the products of the weight matrix with its reverse are not "
                "both irreducible, so unique positive ratings do not exist"
            )

    return ValidationReport(
        all_positive=all_positive,
        transform_applicable=transform_applicable,
        products_irreducible=products_irreducible,
        zero_rows=zero_rows,
        zero_columns=zero_columns,
        violations=tuple(violations),
    )


@dataclass(frozen=True)
class Diagnostic:
    """Structured warning attached to a result; never fatal."""

    code: str
    message: str
    side: str


@dataclass(frozen=True, eq=False)
class NecsResult:
    """Unit-norm positive rating vector of a single vertex set.

    ``eigenvalue`` is the dominant eigenvalue (A c = eigenvalue * c);
    its reciprocal is the proportionality coefficient in the linear rating
    equations c_i = coeff * sum_j A[i, j] c_j.
    """

    c: FloatArray
    eigenvalue: float
    convergence: ConvergenceReport

    def __post_init__(self) -> None:
        c = np.array(self.c, dtype=np.float64, copy=True)
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    @property
    def rating_coefficient(self) -> float:
        return 1.0 / self.eigenvalue


@dataclass(frozen=True, eq=False)
class NebsResult:
    """Coupled unit-norm positive rating pair for a two-sided relation.

    The vectors satisfy b = lambda_ * W a and a = mu * W' b at the solver's
    tolerance, with lambda_ = 1/||W a|| and mu = 1/||W' b||. ``rho`` is the
    shared dominant eigenvalue of the two rating products, and the coupling
    constants alpha = 1/lambda_, beta = 1/mu satisfy
    alpha * beta * lambda_ * mu = 1.
    """

    a: FloatArray
    b: FloatArray
    lambda_: float
    mu: float
    rho: float
    alpha: float
    beta: float
    convergence: ConvergenceReport
    warnings: tuple[Diagnostic, ...] = field(default=())

    def __post_init__(self) -> None:
        for name in ("a", "b"):
            vec = np.array(getattr(self, name), dtype=np.float64, copy=True)
            vec.setflags(write=False)
            object.__setattr__(self, name, vec)
