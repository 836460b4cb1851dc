"""Rating algorithms: one-sided centrality, coupled two-sided ratings,
average baselines, degeneracy detection, and reverse-weight design.

The two-sided solver alternates b <- normalize(W a), a <- normalize(W' b),
which is power iteration on the rating products observed through W without
ever forming them; a product engine that does form them explicitly is kept
for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from bicentral import errors
from bicentral.core import (
    Diagnostic,
    NebsResult,
    NecsResult,
    ReverseTransform,
    WeightRelation,
    reverse_matrix,
)
from bicentral.spectral import (
    ConvergenceReport,
    FloatArray,
    PowerSettings,
    _rate_estimate,
    has_equal_row_sums,
    is_irreducible,
    power_iterate,
)

#: Score gap at or below which two rating entries count as tied.
DEFAULT_TIE_TOL = 1e-9

#: Row-sum gap at or below which a rating product is flagged degenerate.
DEFAULT_DEGENERACY_TOL = 1e-9

CONSTANT_A_VECTOR = "CONSTANT_A_VECTOR"
CONSTANT_B_VECTOR = "CONSTANT_B_VECTOR"


@dataclass(frozen=True)
class RatingEntry:
    label: str
    score: float
    rank: int
    tied: bool


@dataclass(frozen=True)
class RatingTable:
    """Scores sorted descending with competition ranks and tie flags."""

    entries: tuple[RatingEntry, ...]

    def labels(self) -> tuple[str, ...]:
        return tuple(e.label for e in self.entries)

    def has_ties(self) -> bool:
        return any(e.tied for e in self.entries)


@dataclass(frozen=True, eq=False)
class BaselineAverages:
    """Per-item mean weights: a_bar averages each column over the b-items,
    b_bar averages each row over the a-items."""

    a_bar: FloatArray
    b_bar: FloatArray


@dataclass(frozen=True, eq=False)
class ReverseConstruction:
    """Output of :func:`construct_reverse_for_target`: the reverse matrix,
    the lookup transform realizing it, and the induced scalars."""

    reverse_weights: FloatArray
    transform: ReverseTransform
    lambda_: float
    mu: float


def compute_necs(
    adjacency: FloatArray,
    settings: PowerSettings | None = None,
) -> NecsResult:
    """Unit-norm positive rating vector of a strongly connected digraph.

    adjacency[i][j] is the weight of the edge from vertex j to vertex i, so
    each rating is proportional to the weighted sum of the ratings of the
    vertices pointing at it.

    Raises:
        NotIrreducible: the nonzero pattern is not strongly connected.
        NonPositiveEigenvalue: the matrix is zero.
        NoConvergence: iteration budget exhausted.
    """
    A = np.asarray(adjacency, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise errors.DimensionMismatch(f"adjacency must be square, got {A.shape}")
    if np.any(A < 0) or not np.all(np.isfinite(A)):
        raise ValueError("adjacency entries must be finite and nonnegative")
    if not A.any():
        raise errors.NonPositiveEigenvalue(
            "zero adjacency matrix has spectral radius 0"
        )
    if not is_irreducible(A):
        raise errors.NotIrreducible(
            "adjacency pattern is not strongly connected; ratings would not "
            "be unique"
        )
    c, eigenvalue, report = power_iterate(A, settings)
    if eigenvalue <= 0:
        raise errors.NonPositiveEigenvalue(
            f"dominant eigenvalue estimate {eigenvalue!r} is not positive"
        )
    return NecsResult(c=c, eigenvalue=eigenvalue, convergence=report)


def alternating_iterate(
    weights: FloatArray,
    reverse_weights: FloatArray,
    settings: PowerSettings | None = None,
) -> tuple[FloatArray, FloatArray, ConvergenceReport]:
    """Coupled fixed point of b = normalize(W a), a = normalize(W' b).

    One iteration is a full sweep (update a from b, then b from a); the
    recorded residual is the larger of the two normalized step differences.
    The optional initial vector seeds the a side.

    Raises:
        ZeroVector: a product collapsed to zero.
        NoConvergence: iteration budget exhausted.
    """
    if settings is None:
        settings = PowerSettings()
    W = np.asarray(weights, dtype=np.float64)
    Wp = np.asarray(reverse_weights, dtype=np.float64)
    if W.ndim != 2 or Wp.ndim != 2 or Wp.shape != (W.shape[1], W.shape[0]):
        raise errors.DimensionMismatch(
            f"reverse weights must be {W.shape[1]}x{W.shape[0]}, got {Wp.shape}"
        )

    def normalized(v: FloatArray) -> FloatArray:
        norm = np.linalg.norm(v)
        if norm == 0.0:
            raise errors.ZeroVector("rating update collapsed to the zero vector")
        return v / norm

    a = settings.start_vector(W.shape[1])
    b = normalized(W @ a)
    tol = settings.tolerance
    trace: list[float] = []
    for _ in range(settings.max_iterations):
        a_next = normalized(Wp @ b)
        b_next = normalized(W @ a_next)
        residual = max(
            float(np.linalg.norm(a_next - a)),
            float(np.linalg.norm(b_next - b)),
        )
        trace.append(residual)
        a, b = a_next, b_next
        if residual <= tol:
            report = ConvergenceReport(
                iterations=len(trace),
                final_residual=residual,
                tolerance=tol,
                residual_trace=tuple(trace),
                rate_estimate=_rate_estimate(trace),
            )
            return a, b, report
    raise errors.NoConvergence(len(trace), trace[-1])


def compute_nebs(
    rel: WeightRelation,
    transform: ReverseTransform,
    settings: PowerSettings | None = None,
    engine: str = "alternating",
) -> NebsResult:
    """Coupled unit-norm positive ratings for a two-sided weight relation.

    Solvable when the weight matrix is entrywise positive, or, failing that,
    when both rating products (W W' and W' W) are irreducible. The default
    engine alternates through W and W' without forming the products; pass
    ``engine="product"`` to power-iterate the explicitly formed products
    instead (slower, used for cross-checking).

    Raises:
        PreconditionFailed: neither positivity nor irreducible products, or
            the computed ratings are not strictly positive.
        TransformDomainError: the transform is undefined at some observed
            weight.
        NoConvergence: iteration budget exhausted.
    """
    if engine not in ("alternating", "product"):
        raise ValueError(f"unknown engine {engine!r}")
    if settings is None:
        settings = PowerSettings()

    W = rel.weights
    Wp = reverse_matrix(rel, transform)
    if not rel.is_positive():
        if not (is_irreducible(W @ Wp) and is_irreducible(Wp @ W)):
            raise errors.PreconditionFailed(
                "weight matrix is not positive and the rating products are "
                "not both irreducible; unique positive ratings do not exist"
            )

    if engine == "alternating":
        a, b, report = alternating_iterate(W, Wp, settings)
    else:
        # An explicit initial vector seeds the a side only; the b-side
        # product has a different dimension and starts from ones.
        b_settings = settings
        if settings.initial_vector is not None:
            b_settings = PowerSettings(
                tolerance=settings.tolerance,
                max_iterations=settings.max_iterations,
            )
        b, _, report_b = power_iterate(W @ Wp, b_settings)
        a, _, report_a = power_iterate(Wp @ W, settings)
        report = report_a if report_a.iterations >= report_b.iterations else report_b

    if not (np.all(a > 0) and np.all(b > 0)):
        raise errors.PreconditionFailed(
            "computed ratings are not strictly positive; the input violates "
            "the solver's hypotheses"
        )

    alpha = float(np.linalg.norm(W @ a))
    beta = float(np.linalg.norm(Wp @ b))
    return NebsResult(
        a=a,
        b=b,
        lambda_=1.0 / alpha,
        mu=1.0 / beta,
        rho=alpha * beta,
        alpha=alpha,
        beta=beta,
        convergence=report,
        warnings=detect_degeneracy(W, Wp),
    )


def baseline_averages(rel: WeightRelation) -> BaselineAverages:
    """Plain mean-weight baselines: a_bar[j] = mean over rows of column j,
    b_bar[i] = mean over columns of row i."""
    W = rel.weights
    return BaselineAverages(a_bar=W.mean(axis=0), b_bar=W.mean(axis=1))


def detect_degeneracy(
    weights: FloatArray,
    reverse_weights: FloatArray,
    tol: float = DEFAULT_DEGENERACY_TOL,
) -> tuple[Diagnostic, ...]:
    """Warn when a rating product has equal row sums.

    Equal row sums make the all-ones vector dominant, so the corresponding
    rating vector is constant and every item on that side ties.
    """
    W = np.asarray(weights, dtype=np.float64)
    Wp = np.asarray(reverse_weights, dtype=np.float64)
    found: list[Diagnostic] = []
    if has_equal_row_sums(W @ Wp, tol):
        found.append(
            Diagnostic(
                code=CONSTANT_B_VECTOR,
                message=(
                    "b-side rating product has equal row sums; all b-item "
                    "ratings coincide"
                ),
                side="b",
            )
        )
    if has_equal_row_sums(Wp @ W, tol):
        found.append(
            Diagnostic(
                code=CONSTANT_A_VECTOR,
                message=(
                    "a-side rating product has equal row sums; all a-item "
                    "ratings coincide"
                ),
                side="a",
            )
        )
    return tuple(found)


def construct_reverse_for_target(
    weights: FloatArray,
    a_target: FloatArray,
) -> ReverseConstruction:
    """Reverse weights that make ``a_target`` the exact a-side rating.

    For a positive weight matrix with pairwise distinct entries and any
    positive unit vector t, the constant-row reverse matrix with row j equal
    to t[j] / sum(W t) satisfies W' W t = t exactly, so solving the coupled
    system returns t itself. Because the entries of W are distinct, the map
    from observed weight to reverse weight is a well-defined lookup table,
    which is returned alongside the matrix.

    Raises:
        DistinctnessViolation: duplicate entries in the weight matrix.
        DimensionMismatch: target length does not match the column count.
        PreconditionFailed: nonpositive weights or target, or target not
            unit norm.
    """
    W = np.asarray(weights, dtype=np.float64)
    if W.ndim != 2:
        raise errors.DimensionMismatch(f"weights must be 2-D, got shape {W.shape}")
    m, n = W.shape
    if np.unique(W).size != W.size:
        raise errors.DistinctnessViolation(
            "weight matrix entries must be pairwise distinct for the "
            "observed-weight lookup to be a function"
        )
    if not (W.min() > 0):
        raise errors.PreconditionFailed("weight matrix must be entrywise positive")
    t = np.asarray(a_target, dtype=np.float64)
    if t.shape != (n,):
        raise errors.DimensionMismatch(
            f"target has shape {t.shape}, expected ({n},)"
        )
    if not np.all(t > 0):
        raise errors.PreconditionFailed("target vector must be entrywise positive")
    if abs(np.linalg.norm(t) - 1.0) > 1e-8:
        raise errors.PreconditionFailed("target vector must have Euclidean norm 1")

    image = W @ t
    scale = float(image.sum())
    row_values = t / scale
    reverse = np.repeat(row_values[:, None], m, axis=1)
    mapping = {
        float(W[i, j]): float(row_values[j]) for i in range(m) for j in range(n)
    }
    alpha = float(np.linalg.norm(image))
    return ReverseConstruction(
        reverse_weights=reverse,
        transform=ReverseTransform.from_table(mapping),
        lambda_=1.0 / alpha,
        mu=alpha,
    )


def rank(
    scores: FloatArray,
    labels: Sequence[str],
    tie_tol: float = DEFAULT_TIE_TOL,
) -> RatingTable:
    """Competition-ranked table of scores, highest first.

    Entries whose scores sit within ``tie_tol`` of a group's top score share
    that group's rank (the next distinct score skips the swallowed ranks),
    and tied groups keep their input order. The ``tied`` flag is pairwise:
    an entry is tied when any other entry's score is within ``tie_tol``.
    """
    values = np.asarray(scores, dtype=np.float64)
    if values.ndim != 1 or values.size != len(labels):
        raise errors.DimensionMismatch(
            f"{values.shape} scores against {len(labels)} labels"
        )
    if tie_tol < 0:
        raise ValueError("tie_tol must be nonnegative")

    order = sorted(range(values.size), key=lambda i: (-values[i], i))
    groups: list[list[int]] = []
    for idx in order:
        if groups and values[groups[-1][0]] - values[idx] <= tie_tol:
            groups[-1].append(idx)
        else:
            groups.append([idx])

    sorted_values = values[order]
    position_of = {idx: pos for pos, idx in enumerate(order)}
    entries: list[RatingEntry] = []
    assigned = 0
    for group in groups:
        group_rank = assigned + 1
        for idx in sorted(group):
            position = position_of[idx]
            tied = bool(
                (position > 0 and sorted_values[position - 1] - values[idx] <= tie_tol)
                or (
                    position + 1 < values.size
                    and values[idx] - sorted_values[position + 1] <= tie_tol
                )
            )
            entries.append(
                RatingEntry(
                    label=str(labels[idx]),
                    score=float(values[idx]),
                    rank=group_rank,
                    tied=tied,
                )
            )
        assigned += len(group)
    return RatingTable(entries=tuple(entries))
