"""Structure of scaled frames: factor posets, empty covers, orthogonal
partitions, affine-dependence diagnostics, prime scalings, and the
orthogonal decomposition of a scaling into tight blocks.

Index subsets of a scaled frame cF that are themselves tight form a poset
under inclusion (the factor poset); its minimal nonempty members (the empty
cover) generate the whole poset by disjoint unions, and they drive both the
prime-scaling test and the block decomposition of an arbitrary scaling.
The affine-dependence machinery relates four equivalent views of dependence
among the minimal scalings: an augmented-rank flag, a support-containment
scan, intersecting relative interiors of disjoint subfamilies, and equal
support unions of disjoint subfamilies.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

import numpy as np

from . import numerics
from ._backend import get_backend
from .errors import (
    CoverNotFound,
    NotAScaling,
    NotDisjoint,
    NotSpanning,
    TooLarge,
    ValidationError,
    WitnessSearchTooLarge,
)
from .frames import Frame, diagram_gramian, is_parseval
from .numerics import DenseMatrix, LinearProgram, ScalarMode, float_mode, rational_mode
from .scaling import MinimalScalingSet, ScalingVector, coerce_weights, convex_decompose

POSET_MAX_K = 20
WITNESS_MAX_VERTICES = 12
PRIME_SEARCH_MAX_K = 8
PRIME_SEARCH_MAX_VERTICES = 16


@dataclass(frozen=True, eq=False)
class FactorPoset:
    """Tight index subsets of a scaled frame, ordered by inclusion.

    ``members`` is a frozenset of frozensets of 0-based indices and always
    contains the empty set.  ``weights`` is None for unit weights.
    """

    members: frozenset
    frame_digest: str
    weights: Optional[tuple]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, subset) -> bool:
        return frozenset(subset) in self.members

    def sorted_members(self) -> list:
        return sorted((tuple(sorted(m)) for m in self.members), key=lambda t: (len(t), t))


@dataclass(frozen=True, eq=False)
class EmptyCover:
    """Minimal nonempty members of a factor poset (an antichain)."""

    members: frozenset
    frame_digest: str
    weights: Optional[tuple]

    def __len__(self) -> int:
        return len(self.members)

    def sorted_members(self) -> list:
        return sorted((tuple(sorted(m)) for m in self.members), key=lambda t: (len(t), t))


@dataclass(frozen=True, eq=False)
class OrthogonalPartition:
    """Partition of a set of scaling indices into non-splittable blocks."""

    blocks: tuple  # tuples of indices, each sorted, ordered by least element
    universe: tuple


class RelativeInteriorResult(NamedTuple):
    intersect: bool
    point: Optional[tuple]
    level: object  # the optimal margin t, None when infeasible


@dataclass(frozen=True, eq=False)
class AffineDependenceReport:
    """Agreement record for the four equivalent dependence conditions.

    When ``witnesses_skipped`` is False, ``dependent`` is True exactly when
    every witness field is populated.
    """

    dependent: bool
    condition2_witness: Optional[int]
    condition3_witness: Optional[tuple]  # (J1, J2, common point)
    condition4_witness: Optional[tuple]  # (J1, J2)
    witnesses_skipped: bool = False


class ScalingBlock(NamedTuple):
    support: tuple        # 0-based frame indices of the tight block
    constant: object      # lambda making the block Parseval after rescale
    coefficients: tuple   # (index into M, weight) pairs, positive entries only


class StrictScalingReport(NamedTuple):
    strict: bool
    ec: "EmptyCover"
    coefficients_all_positive: Optional[bool]


def _unit_weights(frame: Frame) -> list:
    return [frame.mode.one] * frame.k


def _support_of(frame: Frame, vals: list) -> list:
    thresh = 0 if frame.mode.exact else frame.mode.tol
    return [i for i, v in enumerate(vals) if v > thresh]


def _subset_forms_exact(gram: list) -> list:
    """Quadratic form of every subset mask of an m x m rational matrix."""
    m = len(gram)
    out = [Fraction(0)] * (1 << m)
    for mask in range(1, 1 << m):
        low = mask & -mask
        t = low.bit_length() - 1
        rest = mask ^ low
        acc = gram[t][t]
        r = rest
        while r:
            lo2 = r & -r
            acc += 2 * gram[t][lo2.bit_length() - 1]
            r ^= lo2
        out[mask] = out[rest] + acc
    return out


def factor_poset(frame: Frame, weights=None, cap: int = POSET_MAX_K) -> FactorPoset:
    """All tight index subsets of the scaled frame, plus the empty set.

    A subset J of supp(c) is tight exactly when the quadratic form
    c_J^T G c_J vanishes (G the diagram Gramian): the diagram vector of
    sqrt(c_i) f_i is c_i times that of f_i, so tightness of the scaled
    subfamily is linear in the diagram vectors and quadratic in c.  The
    scan runs over all 2^|supp(c)| subsets, hence the cap.
    """
    if frame.k > cap:
        raise TooLarge(f"factor poset enumeration is capped at k <= {cap}")
    unit = weights is None
    vals = _unit_weights(frame) if unit else coerce_weights(frame, weights)
    if any(v < 0 for v in vals):
        raise ValidationError("weights must be nonnegative")
    supp = _support_of(frame, vals)
    if not unit and _restrict_frame_rank(frame, supp) < frame.n:
        raise NotSpanning("scaled frame does not span the ambient space")
    gram = diagram_gramian(frame)
    m = len(supp)
    members = {frozenset()}
    if m:
        if frame.mode.exact:
            scaled = [[vals[supp[a]] * vals[supp[b]] * gram.matrix[supp[a]][supp[b]]
                       for b in range(m)] for a in range(m)]
            forms = _subset_forms_exact(scaled)
            tight = [q == 0 for q in forms]
        else:
            garr = np.asarray(gram.matrix, dtype=float)
            cvec = np.array([float(vals[i]) for i in supp])
            scaled = (garr[np.ix_(supp, supp)] * cvec[None, :]) * cvec[:, None]
            forms = get_backend().quadratic_form_scan(scaled)
            total = float(cvec.sum())
            thresh = frame.mode.tol * max(1.0, total * total)
            tight = np.abs(forms) <= thresh
        for mask in range(1, 1 << m):
            if tight[mask]:
                members.add(frozenset(supp[t] for t in range(m) if mask >> t & 1))
    wt = None if unit else tuple(vals)
    return FactorPoset(frozenset(members), frame.digest(), wt)


def _restrict_frame_rank(frame: Frame, indices: list) -> int:
    if not indices:
        return 0
    if frame.mode.exact:
        sub = [[frame.gram[i][j] for j in indices] for i in indices]
        return numerics.rank(DenseMatrix.from_rows(sub), frame.mode)
    sub = frame.vectors[:, indices]
    return numerics.rank(DenseMatrix.from_rows(sub.tolist()), frame.mode)


def empty_cover(poset: FactorPoset) -> EmptyCover:
    """Minimal nonempty members of the poset under inclusion."""
    nonempty = sorted((m for m in poset.members if m), key=lambda s: (len(s), sorted(s)))
    minimal = []
    for m in nonempty:
        if not any(prev < m for prev in minimal):
            minimal.append(m)
    return EmptyCover(frozenset(minimal), poset.frame_digest, poset.weights)


def reconstruct_poset(cover: EmptyCover) -> FactorPoset:
    """Closure of the empty cover under disjoint unions (plus the empty set).

    This must reproduce the original factor poset exactly; the equality is a
    theorem about tight subframes, exercised as a test, not assumed here.
    """
    members = {frozenset()}
    unions = {frozenset()}
    for m in sorted(cover.members, key=lambda s: (len(s), sorted(s))):
        new = set()
        for u in unions:
            if not (u & m):
                new.add(u | m)
        unions |= new
    members |= unions
    return FactorPoset(frozenset(members), cover.frame_digest, cover.weights)


def _as_vectors(scalings) -> list:
    vecs = list(scalings)
    if not vecs:
        raise ValidationError("at least one scaling vector is required")
    return vecs


def _vector_mode(vecs: list) -> ScalarMode:
    mode = getattr(vecs[0], "mode", None)
    if mode is not None:
        return mode
    flat = [x for v in vecs for x in getattr(v, "weights", v)]
    if all(isinstance(x, (int, Fraction)) and not isinstance(x, bool) for x in flat):
        return rational_mode()
    return float_mode()


def _weights_of(v) -> tuple:
    return tuple(getattr(v, "weights", v))


def smallest_orthogonal_partition(scalings, subset=None) -> OrthogonalPartition:
    """Finest partition of the given scalings into mutually orthogonal groups.

    Equal to the connected components of the graph with an edge whenever two
    scalings have positive inner product (they are nonnegative vectors, so
    the orthogonality test is one-sided).  Components are reported sorted by
    least index, which makes the output independent of input order.
    """
    vecs = _as_vectors(scalings)
    mode = _vector_mode(vecs)
    universe = sorted(set(range(len(vecs))) if subset is None else {int(i) for i in subset})
    if not universe:
        raise ValidationError("subset must be nonempty")
    if universe[0] < 0 or universe[-1] >= len(vecs):
        raise ValidationError("subset index out of range")
    thresh = 0 if mode.exact else mode.tol
    wts = {i: _weights_of(vecs[i]) for i in universe}

    def linked(i, j):
        return sum(a * b for a, b in zip(wts[i], wts[j])) > thresh

    blocks = []
    seen = set()
    for start in universe:
        if start in seen:
            continue
        comp = {start}
        frontier = [start]
        while frontier:
            cur = frontier.pop()
            for j in universe:
                if j not in comp and linked(cur, j):
                    comp.add(j)
                    frontier.append(j)
        seen |= comp
        blocks.append(tuple(sorted(comp)))
    blocks.sort(key=lambda b: b[0])
    return OrthogonalPartition(tuple(blocks), tuple(universe))


def relative_interiors_intersect(scalings, j1, j2) -> RelativeInteriorResult:
    """Whether conv{v_j : j in J1} and conv{v_j : j in J2} meet in their
    relative interiors, for disjoint index sets.

    Maximizes t subject to sum alpha_j v_j = sum beta_j v_j, both coefficient
    families summing to 1 with every coefficient >= t.  The interiors meet
    exactly when the optimum is positive (above tol on the float lane); the
    common point is returned.
    """
    vecs = _as_vectors(scalings)
    mode = _vector_mode(vecs)
    a_idx = sorted({int(i) for i in j1})
    b_idx = sorted({int(i) for i in j2})
    if not a_idx or not b_idx:
        raise ValidationError("index sets must be nonempty")
    if min(a_idx[0], b_idx[0]) < 0 or max(a_idx[-1], b_idx[-1]) >= len(vecs):
        raise ValidationError("index out of range")
    if set(a_idx) & set(b_idx):
        raise NotDisjoint("index sets must be disjoint")
    k = len(_weights_of(vecs[0]))
    na, nb = len(a_idx), len(b_idx)
    zero, one = mode.zero, mode.one
    nvars = na + nb + 1 + na + nb  # alphas, betas, t, slacks
    t_col = na + nb

    def row():
        return [zero] * nvars

    rows, rhs = [], []
    for l in range(k):
        r = row()
        for p, i in enumerate(a_idx):
            r[p] = _weights_of(vecs[i])[l]
        for p, i in enumerate(b_idx):
            r[na + p] = -_weights_of(vecs[i])[l]
        rows.append(r)
        rhs.append(zero)
    for block, offset in ((a_idx, 0), (b_idx, na)):
        r = row()
        for p in range(len(block)):
            r[offset + p] = one
        rows.append(r)
        rhs.append(one)
    for p in range(na + nb):
        r = row()
        r[p] = one
        r[t_col] = -one
        r[t_col + 1 + p] = -one
        rows.append(r)
        rhs.append(zero)
    obj = row()
    obj[t_col] = one
    res = numerics.lp_solve(LinearProgram.build(obj, rows, rhs), mode)
    if res.status != numerics.OPTIMAL:
        return RelativeInteriorResult(False, None, None)
    t = res.objective
    ok = t > 0 if mode.exact else t > mode.tol
    if not ok:
        return RelativeInteriorResult(False, None, t)
    point = [zero] * k
    for p, i in enumerate(a_idx):
        w = _weights_of(vecs[i])
        coef = res.solution[p]
        for l in range(k):
            point[l] += coef * w[l]
    return RelativeInteriorResult(True, tuple(point), t)


def _augmented_rank_dependent(vecs: list, mode: ScalarMode) -> bool:
    rows = [list(_weights_of(v)) + [mode.one] for v in vecs]
    return numerics.rank(DenseMatrix.from_rows(rows), mode) < len(vecs)


def _condition2_witness(vecs: list, mode: ScalarMode) -> Optional[int]:
    thresh = 0 if mode.exact else mode.tol
    supports = [frozenset(i for i, x in enumerate(_weights_of(v)) if x > thresh)
                for v in vecs]
    for i, s in enumerate(supports):
        rest = frozenset().union(*[supports[j] for j in range(len(vecs)) if j != i])
        if s <= rest:
            return i
    return None


def _condition4_witness(vecs: list, mode: ScalarMode) -> Optional[tuple]:
    thresh = 0 if mode.exact else mode.tol
    m = len(vecs)
    supp_mask = []
    for v in vecs:
        mk = 0
        for i, x in enumerate(_weights_of(v)):
            if x > thresh:
                mk |= 1 << i
        supp_mask.append(mk)
    by_union = {}
    for fam in range(1, 1 << m):
        u = 0
        for t in range(m):
            if fam >> t & 1:
                u |= supp_mask[t]
        for other in by_union.get(u, ()):
            if not (other & fam):
                j1 = tuple(t for t in range(m) if other >> t & 1)
                j2 = tuple(t for t in range(m) if fam >> t & 1)
                return (j1, j2)
        by_union.setdefault(u, []).append(fam)
    return None


def _condition3_witness(vecs: list, mode: ScalarMode) -> Optional[tuple]:
    """Witness from an affine-dependence relation: the sign split of any
    nonzero alpha with sum alpha_i v_i = 0 and sum alpha_i = 0 yields two
    disjoint families whose relative interiors share the rebalanced point;
    the LP then certifies the intersection independently."""
    m = len(vecs)
    k = len(_weights_of(vecs[0]))
    rows = [[_weights_of(v)[l] for v in vecs] for l in range(k)]
    rows.append([mode.one] * m)
    basis = numerics.nullspace_basis(DenseMatrix.from_rows(rows), mode)
    if not basis:
        return None
    thresh = 0 if mode.exact else mode.tol
    alpha = basis[0]
    pos = tuple(i for i, a in enumerate(alpha) if a > thresh)
    neg = tuple(i for i, a in enumerate(alpha) if a < -thresh)
    if not pos or not neg:
        return None
    res = relative_interiors_intersect(vecs, pos, neg)
    if not res.intersect:
        return None
    return (pos, neg, res.point)


def affine_dependence_report(scalings, witness_cap: int = WITNESS_MAX_VERTICES
                             ) -> AffineDependenceReport:
    """Affine dependence of a family of scalings, with cross-checking witnesses.

    The flag itself is the rank of the family augmented with a constant-1
    coordinate, computed for any size.  Witness searches are exponential in
    the family size, so beyond ``witness_cap`` they are skipped and the
    report says so instead of raising.
    """
    vecs = _as_vectors(scalings)
    mode = _vector_mode(vecs)
    dependent = _augmented_rank_dependent(vecs, mode)
    if len(vecs) > witness_cap:
        return AffineDependenceReport(dependent, None, None, None, witnesses_skipped=True)
    return AffineDependenceReport(
        dependent,
        _condition2_witness(vecs, mode),
        _condition3_witness(vecs, mode),
        _condition4_witness(vecs, mode),
    )


def witness_guard(scalings, witness_cap: int = WITNESS_MAX_VERTICES) -> None:
    """Raise WitnessSearchTooLarge when witness searches would be skipped."""
    if len(list(scalings)) > witness_cap:
        raise WitnessSearchTooLarge(
            f"witness search is capped at {witness_cap} scalings")


def is_prime_scaling(frame: Frame, weights, cap: int = POSET_MAX_K) -> bool:
    """A scaling is prime when the scaled frame has no proper tight subframe,
    i.e. the empty cover of its factor poset is exactly {supp(c)}."""
    vals = coerce_weights(frame, weights)
    if any(v < 0 for v in vals) or not is_parseval(frame, vals):
        raise NotAScaling("weights do not scale the frame to Parseval")
    cover = empty_cover(factor_poset(frame, vals, cap))
    supp = frozenset(_support_of(frame, vals))
    return cover.members == frozenset({supp})


def ec_pairwise_disjoint(cover: EmptyCover) -> bool:
    members = list(cover.members)
    for a, b in itertools.combinations(members, 2):
        if a & b:
            return False
    return True


def _disjoint_cover(target: frozenset, members: list) -> Optional[list]:
    """First exact cover of ``target`` by pairwise-disjoint members, exploring
    smallest members first with lexicographic tie-break."""
    ordered = sorted((tuple(sorted(m)) for m in members if frozenset(m) <= target),
                     key=lambda t: (len(t), t))
    sets = [frozenset(t) for t in ordered]

    def extend(remaining: frozenset, chosen: list):
        if not remaining:
            return chosen
        least = min(remaining)
        for s in sets:
            if least in s and s <= remaining:
                got = extend(remaining - s, chosen + [s])
                if got is not None:
                    return got
        return None

    return extend(target, [])


def orthogonal_decompose_scaling(frame: Frame, weights,
                                 scalings: MinimalScalingSet,
                                 cap: int = POSET_MAX_K) -> list:
    """Decompose supp(c) into disjoint tight blocks from the empty cover.

    Each block E_j carries the constant lambda_j = n / sum_{i in E_j} c(i)
    (the trace identity for tight frames) and a convex decomposition of the
    rescaled block over the minimal scalings supported inside E_j.  When the
    empty cover is pairwise disjoint the block structure is the unique one;
    otherwise the deterministic smallest-first cover is reported.
    """
    vals = coerce_weights(frame, weights)
    if any(v < 0 for v in vals) or not is_parseval(frame, vals):
        raise NotAScaling("weights do not scale the frame to Parseval")
    cover = empty_cover(factor_poset(frame, vals, cap))
    supp = frozenset(_support_of(frame, vals))
    parts = _disjoint_cover(supp, list(cover.members))
    if parts is None:
        raise CoverNotFound("support admits no disjoint cover by tight blocks")
    mode = frame.mode
    thresh = 0 if mode.exact else mode.tol
    blocks = []
    for part in sorted(parts, key=min):
        idx = tuple(sorted(part))
        total = sum((vals[i] for i in idx), mode.zero)
        lam = Fraction(frame.n) / total if mode.exact else frame.n / float(total)
        rescaled = [lam * vals[i] if i in part else mode.zero for i in range(frame.k)]
        inside = [j for j, v in enumerate(scalings) if set(v.support) <= part]
        if not inside:
            raise CoverNotFound("no minimal scaling is supported inside a tight block")
        sub = MinimalScalingSet(tuple(scalings[j] for j in inside), scalings.frame_digest)
        alpha = convex_decompose(frame, rescaled, sub)
        coeffs = tuple((inside[p], a) for p, a in enumerate(alpha) if a > thresh)
        blocks.append(ScalingBlock(idx, lam, coeffs))
    return blocks


def enumerate_orthogonal_decompositions(frame: Frame, weights,
                                        scalings: MinimalScalingSet,
                                        cap: int = PRIME_SEARCH_MAX_K) -> list:
    """Every disjoint cover of supp(c) by empty-cover members, as block lists.

    Exhaustive counterpart of orthogonal_decompose_scaling: the number of
    covers can grow like the number of perfect matchings, so the frame size
    is capped.  Covers are listed in smallest-first lexicographic DFS order;
    the first entry is the one the greedy decomposition reports.
    """
    if frame.k > cap:
        raise TooLarge(f"exhaustive decomposition search is capped at k <= {cap}")
    vals = coerce_weights(frame, weights)
    if any(v < 0 for v in vals) or not is_parseval(frame, vals):
        raise NotAScaling("weights do not scale the frame to Parseval")
    cover = empty_cover(factor_poset(frame, vals))
    supp = frozenset(_support_of(frame, vals))
    ordered = sorted((tuple(sorted(m)) for m in cover.members if frozenset(m) <= supp),
                     key=lambda t: (len(t), t))
    sets = [frozenset(t) for t in ordered]
    covers = []

    def extend(remaining: frozenset, chosen: list) -> None:
        if not remaining:
            covers.append(list(chosen))
            return
        least = min(remaining)
        for s in sets:
            if least in s and s <= remaining:
                extend(remaining - s, chosen + [s])

    extend(supp, [])
    mode = frame.mode
    thresh = 0 if mode.exact else mode.tol
    out = []
    for parts in covers:
        blocks = []
        for part in sorted(parts, key=min):
            idx = tuple(sorted(part))
            total = sum((vals[i] for i in idx), mode.zero)
            lam = Fraction(frame.n) / total if mode.exact else frame.n / float(total)
            rescaled = [lam * vals[i] if i in part else mode.zero
                        for i in range(frame.k)]
            inside = [j for j, v in enumerate(scalings) if set(v.support) <= part]
            if not inside:
                raise CoverNotFound("no minimal scaling is supported inside a tight block")
            sub = MinimalScalingSet(tuple(scalings[j] for j in inside),
                                    scalings.frame_digest)
            alpha = convex_decompose(frame, rescaled, sub)
            coeffs = tuple((inside[p], a) for p, a in enumerate(alpha) if a > thresh)
            blocks.append(ScalingBlock(idx, lam, coeffs))
        out.append(blocks)
    return out


def has_orthogonal_split_decomposition(frame: Frame, weights,
                                       scalings: MinimalScalingSet) -> bool:
    """Exhaustive check: does some convex decomposition of c over the minimal
    scalings split into two mutually orthogonal groups with positive mass?

    For every nonempty subset A of the vertices, B is the set of vertices
    orthogonal to all of A; an LP then maximizes the smaller of the two group
    masses over decompositions supported in A union B.  Exponential in |M|,
    hence the caps.
    """
    if frame.k > PRIME_SEARCH_MAX_K:
        raise TooLarge(f"exhaustive split search is capped at k <= {PRIME_SEARCH_MAX_K}")
    if len(scalings) > PRIME_SEARCH_MAX_VERTICES:
        raise TooLarge(
            f"exhaustive split search is capped at {PRIME_SEARCH_MAX_VERTICES} scalings")
    vals = coerce_weights(frame, weights)
    if any(v < 0 for v in vals) or not is_parseval(frame, vals):
        raise NotAScaling("weights do not scale the frame to Parseval")
    vecs = list(scalings)
    if not vecs:
        return False
    mode = frame.mode
    thresh = 0 if mode.exact else mode.tol
    m = len(vecs)
    ortho = [[sum(a * b for a, b in zip(_weights_of(vecs[i]), _weights_of(vecs[j])))
              <= thresh for j in range(m)] for i in range(m)]
    zero, one = mode.zero, mode.one
    for amask in range(1, 1 << m):
        a_idx = [t for t in range(m) if amask >> t & 1]
        b_idx = [t for t in range(m)
                 if not (amask >> t & 1) and all(ortho[t][s] for s in a_idx)]
        if not b_idx:
            continue
        cols = a_idx + b_idx
        nc = len(cols)
        nvars = nc + 1 + 2  # coefficients, t, two mass slacks
        rows, rhs = [], []
        for l in range(frame.k):
            r = [_weights_of(vecs[c])[l] for c in cols] + [zero, zero, zero]
            rows.append(r)
            rhs.append(vals[l])
        rows.append([one] * nc + [zero, zero, zero])
        rhs.append(one)
        r = [one if p < len(a_idx) else zero for p in range(nc)] + [-one, -one, zero]
        rows.append(r)
        rhs.append(zero)
        r = [zero if p < len(a_idx) else one for p in range(nc)] + [-one, zero, -one]
        rows.append(r)
        rhs.append(zero)
        obj = [zero] * nc + [one, zero, zero]
        res = numerics.lp_solve(LinearProgram.build(obj, rows, rhs), mode)
        if res.status != numerics.OPTIMAL:
            continue
        t = res.objective
        if (t > 0) if mode.exact else (t > mode.tol):
            return True
    return False


def strict_scaling_report(frame: Frame, weights,
                          scalings: MinimalScalingSet,
                          cap: int = POSET_MAX_K) -> StrictScalingReport:
    """Strictness of a scaling (full support) plus the empty cover of cF.

    When the minimal scalings are affinely independent and their supports
    cover every index, the convex decomposition of c is unique, and the
    report also says whether all its coefficients are positive.
    """
    vals = coerce_weights(frame, weights)
    if any(v < 0 for v in vals) or not is_parseval(frame, vals):
        raise NotAScaling("weights do not scale the frame to Parseval")
    supp = _support_of(frame, vals)
    strict = len(supp) == frame.k
    cover = empty_cover(factor_poset(frame, vals, cap))
    all_positive = None
    vecs = list(scalings)
    if vecs:
        mode = frame.mode
        thresh = 0 if mode.exact else mode.tol
        union = set()
        for v in vecs:
            union |= set(v.support)
        if union == set(range(frame.k)) and not _augmented_rank_dependent(vecs, mode):
            alpha = convex_decompose(frame, vals, scalings)
            all_positive = all(a > thresh for a in alpha)
    return StrictScalingReport(strict, cover, all_positive)


def affine_hull_member(vectors, target, mode: Optional[ScalarMode] = None) -> bool:
    """Whether target = sum alpha_i v_i with sum alpha_i = 1 (signs free)."""
    vecs = _as_vectors(vectors)
    if mode is None:
        mode = _vector_mode(vecs)
    tgt = _weights_of(target)
    k = len(tgt)
    if any(len(_weights_of(v)) != k for v in vecs):
        raise ValidationError("vectors must share the target's length")
    rows = [[mode.number(_weights_of(v)[l]) for v in vecs] for l in range(k)]
    rows.append([mode.one] * len(vecs))
    rhs = [mode.number(x) for x in tgt] + [mode.one]
    return numerics.linear_solve(rows, rhs, mode).consistent


def is_face_subset(scalings, subset) -> bool:
    """Supporting-hyperplane test: is {v_j : j in J} cut out by a face?

    Searches for h, b with <h, v_j> = b on J and <h, v_i> <= b - margin off
    J, maximizing the margin with h box-normalized to [-1, 1]; J spans a
    face exactly when the optimal margin is positive (above tol on floats).
    """
    vecs = _as_vectors(scalings)
    mode = _vector_mode(vecs)
    j_idx = sorted({int(i) for i in subset})
    if not j_idx:
        raise ValidationError("subset must be nonempty")
    if j_idx[0] < 0 or j_idx[-1] >= len(vecs):
        raise ValidationError("subset index out of range")
    if len(j_idx) == len(vecs):
        raise ValidationError("subset must be proper")
    out_idx = [i for i in range(len(vecs)) if i not in set(j_idx)]
    k = len(_weights_of(vecs[0]))
    zero, one = mode.zero, mode.one
    # variables: h (k, free), b (free), margin (>=0), slack per outside
    # vertex, then box slacks u_l, w_l for h_l <= 1 and -h_l <= 1
    nvars = k + 1 + 1 + len(out_idx) + 2 * k
    b_col = k
    m_col = k + 1
    s0 = k + 2
    u0 = s0 + len(out_idx)
    w0 = u0 + k
    nonneg = [False] * k + [False] + [True] * (nvars - k - 1)
    rows, rhs = [], []
    for j in j_idx:
        r = [zero] * nvars
        w = _weights_of(vecs[j])
        for l in range(k):
            r[l] = w[l]
        r[b_col] = -one
        rows.append(r)
        rhs.append(zero)
    for p, i in enumerate(out_idx):
        r = [zero] * nvars
        w = _weights_of(vecs[i])
        for l in range(k):
            r[l] = w[l]
        r[b_col] = -one
        r[m_col] = one
        r[s0 + p] = one
        rows.append(r)
        rhs.append(zero)
    for l in range(k):
        r = [zero] * nvars
        r[l] = one
        r[u0 + l] = one
        rows.append(r)
        rhs.append(one)
        r = [zero] * nvars
        r[l] = -one
        r[w0 + l] = one
        rows.append(r)
        rhs.append(one)
    obj = [zero] * nvars
    obj[m_col] = one
    res = numerics.lp_solve(LinearProgram.build(obj, rows, rhs, nonneg), mode)
    if res.status != numerics.OPTIMAL:
        return False
    margin = res.objective
    return (margin > 0) if mode.exact else (margin > mode.tol)


def poset_payload(poset: FactorPoset) -> dict:
    """JSON-ready poset listing, members 1-based, sorted by size then lex."""
    return {"members": [[i + 1 for i in m] for m in poset.sorted_members()]}


def ec_payload(cover: EmptyCover) -> dict:
    return {"members": [[i + 1 for i in m] for m in cover.sorted_members()]}


def partition_payload(part: OrthogonalPartition) -> dict:
    return {"blocks": [[i + 1 for i in b] for b in part.blocks]}


def poset_to_dot(poset: FactorPoset) -> str:
    """Hasse diagram of the poset as a DOT digraph (covering edges only)."""
    members = poset.sorted_members()
    names = {m: f"m{t}" for t, m in enumerate(members)}

    def label(m):
        return "{" + ",".join(str(i + 1) for i in m) + "}"

    sets = [frozenset(m) for m in members]
    edges = []
    for a_t, a in enumerate(sets):
        for b_t, b in enumerate(sets):
            if not a < b:
                continue
            if any(a < c < b for c in sets):
                continue
            edges.append((members[a_t], members[b_t]))
    lines = ["digraph factor_poset {", "  rankdir=BT;"]
    for m in members:
        lines.append(f'  {names[m]} [label="{label(m)}"];')
    for a, b in sorted(edges):
        lines.append(f"  {names[a]} -> {names[b]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
