"""Frames, diagram vectors, and the diagram Gramian.

A frame here is a finite spanning-capable family of unit vectors in R^n,
held either as an n x k float matrix of columns or, on the exact lane, as a
k x k rational Gram matrix with unit diagonal.  The diagram vector of a unit
vector packs the normalized square-differences and scaled pairwise products
of its coordinates; a subfamily is tight exactly when its diagram vectors
sum to zero, which turns tightness and scalability questions into linear
algebra on the diagram Gramian.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

import numpy as np

from . import numerics
from .errors import (
    BadDiagonal,
    DimensionTooSmall,
    EmptySubset,
    NotPSD,
    NotSpanning,
    NotUnitNorm,
    TooFewVectors,
    ValidationError,
)
from .numerics import FLOAT, RATIONAL, DenseMatrix, ScalarMode, float_mode, rational_mode

# Ingestion gate: decimal files cannot encode irrational coordinates exactly,
# so norms within this distance of 1 are accepted and renormalized.
UNIT_NORM_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class Frame:
    """Unit-norm frame candidate; construction validates, operations stay pure.

    Exactly one of ``vectors`` (float lane, n x k, columns are the vectors)
    and ``gram`` (rational lane, k x k fractions) is set.  ``gram_rank`` is
    the exact rank of the Gram matrix, recorded during PSD validation on the
    rational lane and left None on the float lane.
    """

    n: int
    k: int
    mode: ScalarMode
    vectors: Optional[np.ndarray] = None
    gram: Optional[tuple] = None
    labels: Optional[tuple] = None
    gram_rank: Optional[int] = None

    def digest(self) -> str:
        """Short content hash used to tie derived results back to this frame."""
        if self.mode.exact:
            body = [[str(x) for x in row] for row in self.gram]
        else:
            body = [[repr(float(x)) for x in row] for row in self.vectors]
        payload = {"n": self.n, "k": self.k, "mode": self.mode.kind, "body": body}
        blob = json.dumps(payload, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def _exact_psd_rank(a: list) -> int:
    """Rank of a symmetric rational matrix, raising NotPSD if indefinite.

    Symmetric elimination: a zero diagonal pivot forces its whole trailing
    row to vanish in a PSD matrix, a negative one is an immediate reject.
    """
    k = len(a)
    a = [row[:] for row in a]
    rk = 0
    for i in range(k):
        d = a[i][i]
        if d < 0:
            raise NotPSD("gram matrix has a negative pivot")
        if d == 0:
            if any(a[i][c] != 0 for c in range(i + 1, k)):
                raise NotPSD("gram matrix has a zero diagonal with nonzero row")
            continue
        rk += 1
        for r in range(i + 1, k):
            f = a[r][i] / d
            if f == 0:
                continue
            row_i = a[i]
            row_r = a[r]
            for c in range(i + 1, k):
                row_r[c] -= f * row_i[c]
    return rk


def frame_from_vectors(vectors: Sequence[Sequence[float]], tol: float = 1e-9,
                       labels: Optional[Sequence[str]] = None) -> Frame:
    """Build a float-lane Frame from k vectors of length n (one per row).

    Norms must lie within 1e-6 of 1; accepted vectors are renormalized to
    exact unit norm so downstream identities hold at working precision.
    """
    mat = np.array(vectors, dtype=float)
    if mat.ndim != 2:
        raise ValidationError("vectors must form a rectangular array")
    k, n = mat.shape
    if n < 2:
        raise DimensionTooSmall(f"ambient dimension {n} < 2")
    if k < n:
        raise TooFewVectors(f"{k} vectors cannot span R^{n}")
    if not np.all(np.isfinite(mat)):
        raise ValidationError("vector entries must be finite")
    norms = np.linalg.norm(mat, axis=1)
    bad = np.abs(norms - 1.0) > UNIT_NORM_TOL
    if np.any(bad):
        i = int(np.argmax(bad))
        raise NotUnitNorm(f"vector {i + 1} has norm {norms[i]:.9f}")
    cols = (mat / norms[:, None]).T.copy()
    cols.setflags(write=False)
    lab = _check_labels(labels, k)
    return Frame(n=n, k=k, mode=float_mode(tol), vectors=cols, labels=lab)


def frame_from_gram(gram: Sequence[Sequence], n: int,
                    labels: Optional[Sequence[str]] = None) -> Frame:
    """Build a rational-lane Frame from an exact k x k Gram matrix.

    Entries may be ints, fractions, or strings like "3/5"; floats are
    rejected because the exact lane must not inherit binary round-off.
    """
    mode = rational_mode()
    rows = [[mode.number(x) for x in row] for row in gram]
    k = len(rows)
    if k == 0 or any(len(row) != k for row in rows):
        raise ValidationError("gram matrix must be square and nonempty")
    if not isinstance(n, int) or n < 2:
        raise DimensionTooSmall(f"ambient dimension {n} < 2")
    if k < n:
        raise TooFewVectors(f"{k} vectors cannot span R^{n}")
    for i in range(k):
        if rows[i][i] != 1:
            raise BadDiagonal(f"gram diagonal entry {i + 1} is {rows[i][i]}, expected 1")
        for j in range(i + 1, k):
            if rows[i][j] != rows[j][i]:
                raise NotPSD("gram matrix must be symmetric")
    rk = _exact_psd_rank(rows)
    if rk > n:
        raise ValidationError(f"gram rank {rk} exceeds ambient dimension {n}")
    lab = _check_labels(labels, k)
    return Frame(n=n, k=k, mode=mode, gram=tuple(tuple(r) for r in rows),
                 labels=lab, gram_rank=rk)


def _check_labels(labels, k) -> Optional[tuple]:
    if labels is None:
        return None
    lab = tuple(str(x) for x in labels)
    if len(lab) != k:
        raise ValidationError(f"expected {k} labels, got {len(lab)}")
    return lab


def load_frame(raw: dict, tol: float = 1e-9) -> Frame:
    """Validate a parsed frame file (see the JSON schema in the README)."""
    if not isinstance(raw, dict):
        raise ValidationError("frame file must be a JSON object")
    if "dimension" not in raw:
        raise ValidationError('frame file is missing "dimension"')
    n = raw["dimension"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValidationError('"dimension" must be an integer')
    if n < 2:
        raise DimensionTooSmall(f"ambient dimension {n} < 2")
    kind = raw.get("mode")
    if kind not in (FLOAT, RATIONAL):
        raise ValidationError('"mode" must be "float" or "rational"')
    has_vectors = "vectors" in raw
    has_gram = "gram" in raw
    if has_vectors == has_gram:
        raise ValidationError('exactly one of "vectors"/"gram" must be present')
    labels = raw.get("labels")
    if kind == FLOAT:
        if not has_vectors:
            raise ValidationError('float mode requires "vectors"')
        vectors = raw["vectors"]
        if (not isinstance(vectors, list) or not vectors
                or not all(isinstance(v, list) and len(v) == n for v in vectors)):
            raise ValidationError(f'"vectors" must be a list of length-{n} lists')
        return frame_from_vectors(vectors, tol=tol, labels=labels)
    if not has_gram:
        raise ValidationError('rational mode requires "gram"')
    gram = raw["gram"]
    if not isinstance(gram, list) or not all(isinstance(row, list) for row in gram):
        raise ValidationError('"gram" must be a list of lists')
    return frame_from_gram(gram, n, labels=labels)


def frame_gram(frame: Frame) -> DenseMatrix:
    """Gram matrix of the frame vectors on the frame's scalar lane."""
    if frame.mode.exact:
        return DenseMatrix(frame.gram)
    g = frame.vectors.T @ frame.vectors
    return DenseMatrix.from_rows(g.tolist())


def diagram_vector(f: Sequence[float], n: int) -> np.ndarray:
    """Diagram vector of a unit vector f in R^n (float lane).

    Layout: all square-differences f(i)^2 - f(j)^2 for i < j in lexicographic
    order, then all products sqrt(2n) f(i) f(j) in the same order, the whole
    vector divided by sqrt(n - 1).  Length is n(n-1); unit vectors map to
    unit diagram vectors.
    """
    if n < 2:
        raise DimensionTooSmall(f"ambient dimension {n} < 2")
    vec = np.asarray(f, dtype=float)
    if vec.shape != (n,):
        raise ValidationError(f"expected a vector of length {n}")
    if abs(float(np.linalg.norm(vec)) - 1.0) > UNIT_NORM_TOL:
        raise NotUnitNorm("diagram vectors are defined for unit vectors")
    squares = []
    products = []
    scale = math.sqrt(2 * n)
    for i in range(n):
        for j in range(i + 1, n):
            squares.append(vec[i] * vec[i] - vec[j] * vec[j])
            products.append(scale * vec[i] * vec[j])
    return np.array(squares + products) / math.sqrt(n - 1)


@dataclass(frozen=True, eq=False)
class DiagramGramian:
    """k x k matrix of pairwise diagram-vector inner products."""

    matrix: object  # np.ndarray on the float lane, tuple of Fraction tuples otherwise
    mode: ScalarMode

    def entry(self, i: int, j: int):
        return self.matrix[i][j] if self.mode.exact else float(self.matrix[i, j])

    def as_dense(self) -> DenseMatrix:
        if self.mode.exact:
            return DenseMatrix(self.matrix)
        return DenseMatrix.from_rows(self.matrix.tolist())


def diagram_gramian(frame: Frame) -> DiagramGramian:
    """Diagram Gramian of the frame.

    Float lane: explicit diagram vectors, each unordered pair computed once
    and mirrored, so the result is symmetric by construction.  Rational lane:
    the closed form (n K(i,j)^2 - 1) / (n - 1) in the frame Gram entries K,
    which agrees with the explicit computation for unit vectors.
    """
    n, k = frame.n, frame.k
    if frame.mode.exact:
        den = Fraction(n - 1)
        rows = [[(n * frame.gram[i][j] ** 2 - 1) / den for j in range(k)] for i in range(k)]
        return DiagramGramian(tuple(tuple(r) for r in rows), frame.mode)
    diag = np.column_stack([diagram_vector(frame.vectors[:, i], n) for i in range(k)])
    out = np.empty((k, k))
    for i in range(k):
        for j in range(i, k):
            v = float(diag[:, i] @ diag[:, j])
            out[i, j] = v
            out[j, i] = v
    out.setflags(write=False)
    return DiagramGramian(out, frame.mode)


class TightnessResult(NamedTuple):
    tight: bool
    constant: Optional[object]  # n / |J| when tight, on the frame's lane


def _subset_indices(frame: Frame, subset) -> list:
    idx = sorted(set(int(i) for i in subset))
    if not idx:
        raise EmptySubset("subset must be nonempty")
    if idx[0] < 0 or idx[-1] >= frame.k:
        raise ValidationError("subset index out of range")
    return idx


def _spans(frame: Frame, idx: list) -> bool:
    if frame.mode.exact:
        sub = [[frame.gram[i][j] for j in idx] for i in idx]
        return numerics.rank(DenseMatrix.from_rows(sub), frame.mode) == frame.n
    sub = frame.vectors[:, idx]
    return numerics.rank(DenseMatrix.from_rows(sub.tolist()), frame.mode) == frame.n


def is_tight(frame: Frame, subset) -> TightnessResult:
    """Tightness test for an index subset J of the (unit-weight) frame.

    J is tight exactly when its diagram vectors cancel, i.e. the quadratic
    form 1_J^T G 1_J vanishes (G the diagram Gramian); a defensive spanning
    check guards degenerate float inputs.  The tight constant is n / |J|.
    """
    idx = _subset_indices(frame, subset)
    gram = diagram_gramian(frame)
    if frame.mode.exact:
        q = sum(gram.matrix[i][j] for i in idx for j in idx)
        tight = q == 0
    else:
        q = float(sum(gram.matrix[i, j] for i in idx for j in idx))
        tight = q <= frame.mode.tol * len(idx) ** 2
    if tight and not _spans(frame, idx):
        tight = False
    if not tight:
        return TightnessResult(False, None)
    constant = Fraction(frame.n, len(idx)) if frame.mode.exact else frame.n / len(idx)
    return TightnessResult(True, constant)


def _weights_on_lane(frame: Frame, weights) -> list:
    vals = list(getattr(weights, "weights", weights))
    if len(vals) != frame.k:
        raise ValidationError(f"expected {frame.k} weights, got {len(vals)}")
    return [frame.mode.number(x) for x in vals]


def weighted_operator_deviation(frame: Frame, weights):
    """Max-abs entry of (sum_i c(i) f_i f_i^T - I_n) on the frame's lane.

    On the rational lane the operator cannot be formed from vectors, so the
    equivalent Gram identity K C K = K is measured instead, together with a
    spanning requirement; the return value is then 0 or a positive fraction.
    """
    c = _weights_on_lane(frame, weights)
    if any(x < 0 for x in c):
        raise ValidationError("weights must be nonnegative")
    if frame.mode.exact:
        k = frame.k
        gram = frame.gram
        worst = Fraction(0)
        for i in range(k):
            for j in range(k):
                acc = sum(gram[i][t] * c[t] * gram[t][j] for t in range(k))
                dev = abs(acc - gram[i][j])
                if dev > worst:
                    worst = dev
        if worst == 0 and frame.gram_rank != frame.n:
            # identity on the span only; a non-spanning family is never Parseval
            worst = Fraction(1)
        return worst
    arr = np.asarray([float(x) for x in c])
    op = (frame.vectors * arr) @ frame.vectors.T
    return float(np.max(np.abs(op - np.eye(frame.n))))


def is_parseval(frame: Frame, weights) -> bool:
    """True when the weighted frame operator equals the identity (within tol)."""
    dev = weighted_operator_deviation(frame, weights)
    if frame.mode.exact:
        return dev == 0
    return dev <= frame.mode.tol


class FrameBounds(NamedTuple):
    lower: float
    upper: float
    approximate: bool  # True when computed by float fallback on the exact lane


def frame_bounds(frame: Frame) -> FrameBounds:
    """Optimal frame bounds: extreme eigenvalues of the frame operator FF^T."""
    if frame.mode.exact:
        if frame.gram_rank < frame.n:
            raise NotSpanning("frame vectors do not span the ambient space")
        gram = np.array([[float(x) for x in row] for row in frame.gram])
        evals = np.sort(np.linalg.eigvalsh(gram))[::-1]
        return FrameBounds(float(evals[frame.n - 1]), float(evals[0]), True)
    mat = DenseMatrix.from_rows(frame.vectors.tolist())
    if numerics.rank(mat, frame.mode) < frame.n:
        raise NotSpanning("frame vectors do not span the ambient space")
    evals = np.linalg.eigvalsh(frame.vectors @ frame.vectors.T)
    return FrameBounds(float(evals[0]), float(evals[-1]), False)


def subframe(frame: Frame, indices) -> Frame:
    """Frame on the selected (0-based) indices; it must still be a valid frame."""
    idx = _subset_indices(frame, indices)
    labels = None if frame.labels is None else [frame.labels[i] for i in idx]
    if frame.mode.exact:
        sub = [[frame.gram[i][j] for j in idx] for i in idx]
        return frame_from_gram(sub, frame.n, labels=labels)
    rows = [frame.vectors[:, i].tolist() for i in idx]
    return frame_from_vectors(rows, tol=frame.mode.tol, labels=labels)


def with_duplicated_vector(frame: Frame, index: int) -> Frame:
    """Append an exact copy of vector ``index`` (0-based) as a new last vector."""
    if not 0 <= index < frame.k:
        raise ValidationError("index out of range")
    if frame.mode.exact:
        k = frame.k
        rows = [list(row) + [row[index]] for row in frame.gram]
        rows.append([frame.gram[index][j] for j in range(k)] + [Fraction(1)])
        return frame_from_gram(rows, frame.n)
    rows = frame.vectors.T.tolist()
    rows.append(frame.vectors[:, index].tolist())
    return frame_from_vectors(rows, tol=frame.mode.tol)


def realize_vectors(frame: Frame, tol: float = 1e-9) -> Frame:
    """Float-lane realization of a rational-lane frame.

    Factors the Gram matrix numerically (symmetric eigendecomposition) into
    an n x k vector matrix; any spanning family with this Gram matrix is
    related to the result by an orthogonal change of basis, which no
    computation in this package can distinguish.
    """
    if not frame.mode.exact:
        return frame
    gram = np.array([[float(x) for x in row] for row in frame.gram])
    evals, evecs = np.linalg.eigh(gram)
    evals = np.clip(evals, 0.0, None)
    order = np.argsort(evals)[::-1][: frame.n]
    cols = (evecs[:, order] * np.sqrt(evals[order])).T  # n x k
    return frame_from_vectors(cols.T.tolist(), tol=tol, labels=frame.labels)


def promote_to_rational(frame: Frame) -> Frame:
    """Exact-lane promotion of a float frame whose entries are exactly rational.

    Works only when every vector is exactly unit norm after Fraction
    conversion (true for 0/1/-1 style inputs); anything else raises, since
    renormalization would introduce irrational Gram entries.
    """
    if frame.mode.exact:
        return frame
    cols = [[Fraction(float(x)) for x in frame.vectors[:, i]] for i in range(frame.k)]
    for i, col in enumerate(cols):
        if sum(x * x for x in col) != 1:
            raise NotUnitNorm(
                f"vector {i + 1} is not exactly unit norm; cannot promote to the exact lane")
    gram = [[sum(a * b for a, b in zip(cols[i], cols[j])) for j in range(frame.k)]
            for i in range(frame.k)]
    return frame_from_gram(gram, frame.n, labels=frame.labels)
