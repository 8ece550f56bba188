"""The scalability polytope.

A scaling of a unit-norm frame is a nonnegative weight vector c with
sum n that makes the reweighted frame Parseval.  Equivalently c solves the
linear system [reduced diagram-Gramian rows; all-ones row] x = [0; n] with
x >= 0, so the scalings form a polytope whose vertices are the minimal
scalings.  This module decides scalability, enumerates the vertex set (with
a brute-force oracle for cross-checking), certifies the binomial bound on
its size, decomposes arbitrary scalings over the vertices, and verifies the
resolution-of-identity property directly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

import numpy as np

from . import numerics
from ._backend import get_backend
from .errors import NotAScaling, TooLarge, ValidationError
from .frames import Frame, diagram_gramian, frame_gram, is_parseval
from .numerics import DenseMatrix, LinearProgram, ScalarMode

# Two accepted vertices closer than this (componentwise) are one vertex.
DEDUP_TOL = 1e-7

BRUTE_FORCE_MAX_K = 16


@dataclass(frozen=True, eq=False)
class ScalingVector:
    """Nonnegative weights summing to the ambient dimension.

    ``support`` lists the indices with weight above the positivity threshold
    (strictly positive on the exact lane); weights off the support may be
    tiny float residue and are stored as written.
    """

    weights: tuple
    support: tuple
    mode: ScalarMode

    def __len__(self) -> int:
        return len(self.weights)

    def restricted(self) -> tuple:
        return tuple(self.weights[i] for i in self.support)


def scaling_vector(weights: Sequence, mode: ScalarMode, n: int) -> ScalingVector:
    vals = [mode.number(x) for x in weights]
    if not vals:
        raise ValidationError("a scaling needs at least one weight")
    thresh = 0 if mode.exact else mode.tol
    floor = mode.zero if mode.exact else -mode.tol
    cleaned = []
    for i, v in enumerate(vals):
        if v < floor:
            raise ValidationError(f"weight {i + 1} is negative")
        cleaned.append(v if v > thresh else mode.zero)
    total = sum(cleaned, mode.zero)
    if mode.exact:
        if total != n:
            raise ValidationError(f"weights sum to {total}, expected {n}")
    elif abs(total - n) > mode.tol * len(cleaned):
        raise ValidationError(f"weights sum to {total!r}, expected {n}")
    support = tuple(i for i, v in enumerate(cleaned) if v > thresh)
    return ScalingVector(tuple(cleaned), support, mode)


@dataclass(frozen=True, eq=False)
class MinimalScalingSet:
    """Vertex set of the scaling polytope, canonically ordered."""

    vertices: tuple
    frame_digest: str

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i]

    def supports(self) -> tuple:
        return tuple(v.support for v in self.vertices)


def parse_weights(raw: dict, frame: Frame) -> list:
    """Weights from a parsed scaling file, coerced to the frame's lane.

    The file carries {"weights": [...]} where entries are numbers or "p/q"
    strings.  No scaling invariants are enforced here: callers feed the
    result to predicates that may legitimately fail it.
    """
    if not isinstance(raw, dict) or "weights" not in raw:
        raise ValidationError('scaling file must be a JSON object with "weights"')
    entries = raw["weights"]
    if not isinstance(entries, list) or len(entries) != frame.k:
        raise ValidationError(f"expected {frame.k} weights")
    out = []
    for x in entries:
        if isinstance(x, str):
            try:
                x = Fraction(x)
            except (ValueError, ZeroDivisionError):
                raise ValidationError(f"bad weight entry {x!r}") from None
        if isinstance(x, bool):
            raise ValidationError("weights must be numbers")
        out.append(frame.mode.number(Fraction(x) if isinstance(x, int) else x))
    return out


def weights_payload(weights, mode: ScalarMode) -> list:
    """JSON-ready weight list: floats stay floats, fractions become "p/q"."""
    if mode.exact:
        return [str(Fraction(w)) for w in weights]
    return [float(w) for w in weights]


def scaling_payload(sv: ScalingVector) -> dict:
    return {
        "support": [i + 1 for i in sv.support],
        "weights": weights_payload(sv.weights, sv.mode),
    }


def _system_parts(frame: Frame):
    """Diagram Gramian, stacked equality system, rhs, and rank of the Gramian."""
    gram = diagram_gramian(frame)
    pivots = numerics.pivot_columns(gram.as_dense(), frame.mode)
    r = len(pivots)
    k, n = frame.k, frame.n
    if frame.mode.exact:
        rows = [list(gram.matrix[i]) for i in pivots]
        rows.append([Fraction(1)] * k)
        rhs = tuple([Fraction(0)] * r + [Fraction(n)])
    else:
        rows = [gram.matrix[i].tolist() for i in pivots]
        rows.append([1.0] * k)
        rhs = tuple([0.0] * r + [float(n)])
    return gram, DenseMatrix.from_rows(rows), rhs, r


def build_scalability_system(frame: Frame):
    """Equality system whose nonnegative solutions are exactly the scalings.

    Returns (matrix, rhs): a maximal independent set of diagram-Gramian rows
    (chosen by pivot order, so deterministic) stacked over the all-ones row,
    with right-hand side (0, ..., 0, n).
    """
    _, system, rhs, _ = _system_parts(frame)
    return system, rhs


def _spans_fully(frame: Frame) -> bool:
    if frame.mode.exact:
        return frame.gram_rank == frame.n
    mat = DenseMatrix.from_rows(frame.vectors.tolist())
    return numerics.rank(mat, frame.mode) == frame.n


def is_scalable(frame: Frame) -> bool:
    """Feasibility of the scaling system with nonnegative variables."""
    if not _spans_fully(frame):
        return False
    _, system, rhs, _ = _system_parts(frame)
    prog = LinearProgram.build([frame.mode.zero] * frame.k, system.entries, rhs)
    return numerics.lp_solve(prog, frame.mode).status == numerics.OPTIMAL


def _bitmask(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def _finish(frame: Frame, found: list) -> MinimalScalingSet:
    """Deduplicate, wrap, and canonically order accepted vertices."""
    mode = frame.mode
    raw = []
    for support, weights in found:
        full = [mode.zero] * frame.k
        for i, w in zip(support, weights):
            full[i] = w
        raw.append(scaling_vector(full, mode, frame.n))
    raw.sort(key=lambda sv: (sv.support, sv.weights))
    kept = []
    for sv in raw:
        dup = False
        for prev in kept:
            if prev.support != sv.support:
                continue
            if mode.exact:
                dup = prev.weights == sv.weights
            else:
                dup = max(abs(a - b) for a, b in zip(prev.weights, sv.weights)) <= DEDUP_TOL
            if dup:
                break
        if not dup:
            kept.append(sv)
    return MinimalScalingSet(tuple(kept), frame.digest())


def _accept_exact(system: DenseMatrix, rhs, gram_rows, support, mode: ScalarMode):
    """Exact-lane vertex test on one support; returns the restricted solution
    or None.  Acceptance: the restricted system has a unique solution, it is
    strictly positive, and it kills every diagram-Gramian row."""
    cols = list(support)
    restricted = [[row[c] for c in cols] for row in system.entries]
    res = numerics.linear_solve(restricted, rhs, mode)
    if not (res.consistent and res.unique):
        return None
    x = res.solution
    if any(v <= 0 for v in x):
        return None
    for row in gram_rows:
        if sum(row[c] * v for c, v in zip(cols, x)) != 0:
            return None
    return x


def _candidate_sizes(frame: Frame, grank: int, cap: Optional[int]) -> range:
    top = min(grank + 1, frame.n * (frame.n + 1) // 2)
    if cap is not None:
        top = min(top, cap)
    return range(1, min(top, frame.k) + 1)


def _enumerate(frame: Frame, sizes, prune: bool) -> MinimalScalingSet:
    gram, system, rhs, _ = _system_parts(frame)
    mode = frame.mode
    found = []
    accepted_masks = []
    if not mode.exact:
        backend = get_backend()
        sys_arr = np.array(system.entries, dtype=float)
        rhs_arr = np.array(rhs, dtype=float)
        gram_arr = np.asarray(gram.matrix, dtype=float)
        res_tol = mode.tol * max(1.0, float(frame.n))
    for s in sizes:
        cands = []
        for comb in itertools.combinations(range(frame.k), s):
            if prune:
                mask = _bitmask(comb)
                if any(mask & am == am for am in accepted_masks):
                    continue
            cands.append(comb)
        if not cands:
            continue
        if mode.exact:
            for comb in cands:
                x = _accept_exact(system, rhs, gram.matrix, comb, mode)
                if x is not None:
                    found.append((comb, x))
                    accepted_masks.append(_bitmask(comb))
        else:
            sup = np.array(cands, dtype=np.int64)
            ok, sols = backend.solve_supports(sys_arr, rhs_arr, gram_arr, sup,
                                              mode.tol, res_tol)
            for t in np.nonzero(ok)[0]:
                comb = cands[int(t)]
                found.append((comb, tuple(float(v) for v in sols[int(t)])))
                accepted_masks.append(_bitmask(comb))
    return _finish(frame, found)


def enumerate_minimal_scalings(frame: Frame) -> MinimalScalingSet:
    """All vertices of the scaling polytope, empty when the frame is not scalable.

    Candidate supports run over sizes up to min(rank of the diagram Gramian
    plus one, n(n+1)/2); a support is a vertex exactly when the restricted
    system pins a unique, strictly positive solution that satisfies the full
    system.  Supersets of accepted supports are pruned: a vertex support
    cannot strictly contain another (both would be basic solutions of the
    same system, forcing equality).
    """
    if not is_scalable(frame):
        return MinimalScalingSet((), frame.digest())
    _, _, _, grank = _system_parts(frame)
    return _enumerate(frame, _candidate_sizes(frame, grank, None), prune=True)


def brute_force_minimal_scalings(frame: Frame) -> MinimalScalingSet:
    """Oracle enumerator: every one of the 2^k - 1 nonempty supports is tried
    with the same acceptance test and no pruning.  Guarded to k <= 16."""
    if frame.k > BRUTE_FORCE_MAX_K:
        raise TooLarge(f"brute force is capped at k <= {BRUTE_FORCE_MAX_K}")
    if not is_scalable(frame):
        return MinimalScalingSet((), frame.digest())
    return _enumerate(frame, range(1, frame.k + 1), prune=False)


class MboundReport(NamedTuple):
    bound: int
    size: int
    holds: bool
    equality: bool


def check_mbound(frame: Frame, scalings: MinimalScalingSet) -> MboundReport:
    """Binomial certificate |M| <= C(k, rank + 1) on the minimal-scaling count.

    Equality is reported because orthonormal bases attain it.
    """
    _, _, _, grank = _system_parts(frame)
    bound = math.comb(frame.k, min(grank + 1, frame.k))
    size = len(scalings)
    return MboundReport(bound, size, size <= bound, size == bound)


def coerce_weights(frame: Frame, weights) -> list:
    """Weight sequence (or ScalingVector) as a length-k list on the frame's lane."""
    vals = list(getattr(weights, "weights", weights))
    if len(vals) != frame.k:
        raise ValidationError(f"expected {frame.k} weights, got {len(vals)}")
    return [frame.mode.number(v) for v in vals]


def is_minimal_scaling(frame: Frame, weights) -> bool:
    """Support-size test |supp(c)| <= n(n+1)/2, valid only for actual scalings.

    The bound characterizes polytope vertices among scalings, so a weight
    vector that is not a scaling raises NotAScaling rather than answering.
    """
    vals = coerce_weights(frame, weights)
    if any(v < 0 for v in vals) or not is_parseval(frame, vals):
        raise NotAScaling("weights do not scale the frame to Parseval")
    thresh = 0 if frame.mode.exact else frame.mode.tol
    support = [i for i, v in enumerate(vals) if v > thresh]
    return len(support) <= frame.n * (frame.n + 1) // 2


def convex_decompose(frame: Frame, weights, scalings: MinimalScalingSet) -> tuple:
    """Coefficients alpha >= 0, sum 1, with sum_j alpha_j v_j = c.

    Any valid certificate is accepted; the LP picks one.  Infeasibility means
    c lies outside the polytope spanned by the given vertices, reported as
    NotAScaling.
    """
    vals = coerce_weights(frame, weights)
    if not scalings.vertices:
        raise NotAScaling("no minimal scalings to decompose over")
    mode = frame.mode
    m = len(scalings.vertices)
    rows = [[scalings[j].weights[i] for j in range(m)] for i in range(frame.k)]
    rows.append([mode.one] * m)
    rhs = list(vals) + [mode.one]
    prog = LinearProgram.build([mode.zero] * m, rows, rhs)
    res = numerics.lp_solve(prog, mode)
    if res.status != numerics.OPTIMAL:
        raise NotAScaling("weights are not a convex combination of the minimal scalings")
    return res.solution


def verify_john_decomposition(frame: Frame, weights) -> bool:
    """Direct check of the identity decomposition sum c(i) f_i f_i^T = I_n."""
    vals = coerce_weights(frame, weights)
    if any(v < 0 for v in vals):
        raise ValidationError("weights must be nonnegative")
    return is_parseval(frame, vals)
