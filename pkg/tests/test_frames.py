"""Frame ingestion, diagram vectors, the diagram Gramian, and tightness."""

import math
import random
from fractions import Fraction

import numpy as np
import pytest

from framescale import (
    BadDiagonal,
    DimensionTooSmall,
    NotPSD,
    NotSpanning,
    NotUnitNorm,
    TooFewVectors,
    ValidationError,
    diagram_gramian,
    diagram_vector,
    frame_bounds,
    frame_from_gram,
    frame_from_vectors,
    is_parseval,
    is_tight,
    load_frame,
    promote_to_rational,
    realize_vectors,
    subframe,
    weighted_operator_deviation,
    with_duplicated_vector,
)
from framescale.errors import EmptySubset
from framescale.frames import _exact_psd_rank

from conftest import SIXVEC_AXES, sixvec_gram


def _random_unit(rng, n):
    while True:
        v = [rng.gauss(0, 1) for _ in range(n)]
        norm = math.sqrt(sum(x * x for x in v))
        if norm > 1e-3:
            return [x / norm for x in v]


class TestFromVectors:
    def test_orthonormal_basis(self):
        f = frame_from_vectors([[1.0, 0.0], [0.0, 1.0]])
        assert (f.n, f.k) == (2, 2)
        assert not f.mode.exact

    def test_norm_gate(self):
        with pytest.raises(NotUnitNorm):
            frame_from_vectors([[0.9, 0.0], [0.0, 1.0]])

    def test_renormalizes_within_gate(self):
        eps = 1e-8
        f = frame_from_vectors([[1.0 + eps, 0.0], [0.0, 1.0]])
        assert np.linalg.norm(f.vectors[:, 0]) == pytest.approx(1.0, abs=1e-15)

    def test_dimension_floor(self):
        with pytest.raises(DimensionTooSmall):
            frame_from_vectors([[1.0], [1.0]])

    def test_needs_spanning_count(self):
        with pytest.raises(TooFewVectors):
            frame_from_vectors([[1.0, 0.0]])

    def test_vectors_read_only(self):
        f = frame_from_vectors([[1.0, 0.0], [0.0, 1.0]])
        with pytest.raises(ValueError):
            f.vectors[0, 0] = 2.0


class TestFromGram:
    def test_accepts_psd_unit_diagonal(self):
        f = frame_from_gram([[1, Fraction(1, 2)], [Fraction(1, 2), 1]], 2)
        assert f.mode.exact and f.gram_rank == 2

    def test_diagonal_must_be_one(self):
        with pytest.raises(BadDiagonal):
            frame_from_gram([[2, 0], [0, 1]], 2)

    def test_symmetry_required(self):
        with pytest.raises(NotPSD):
            frame_from_gram([[1, Fraction(1, 2)], [Fraction(1, 3), 1]], 2)

    def test_indefinite_rejected(self):
        with pytest.raises(NotPSD):
            frame_from_gram([[1, 2], [2, 1]], 2)

    def test_rank_above_dimension_rejected(self):
        eye = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        with pytest.raises(ValidationError):
            frame_from_gram(eye, 2)

    def test_float_entries_rejected(self):
        with pytest.raises(ValidationError):
            frame_from_gram([[1, 0.5], [0.5, 1]], 2)


class TestLoadFrame:
    def test_vector_file(self):
        f = load_frame({"dimension": 2, "mode": "float",
                        "vectors": [[1.0, 0.0], [0.0, 1.0]]})
        assert not f.mode.exact and f.k == 2

    def test_gram_file_with_strings(self):
        raw = {"dimension": 2, "mode": "rational",
               "gram": [["1", "-1/2"], ["-1/2", "1"]],
               "labels": ["a", "b"]}
        f = load_frame(raw)
        assert f.mode.exact and f.labels == ("a", "b")
        assert f.gram[0][1] == Fraction(-1, 2)

    @pytest.mark.parametrize("raw", [
        {"mode": "float", "vectors": [[1.0, 0.0], [0.0, 1.0]]},
        {"dimension": 2, "vectors": [[1.0, 0.0], [0.0, 1.0]]},
        {"dimension": 2, "mode": "complex", "vectors": [[1.0, 0.0], [0.0, 1.0]]},
        {"dimension": 2, "mode": "float"},
        {"dimension": 2, "mode": "float", "vectors": [[1, 0], [0, 1]],
         "gram": [[1, 0], [0, 1]]},
        {"dimension": 2, "mode": "float", "gram": [[1, 0], [0, 1]]},
        {"dimension": 2, "mode": "rational", "vectors": [[1, 0], [0, 1]]},
        {"dimension": "2", "mode": "float", "vectors": [[1.0, 0.0], [0.0, 1.0]]},
    ])
    def test_schema_violations(self, raw):
        with pytest.raises(ValidationError):
            load_frame(raw)

    def test_wrong_label_count(self):
        with pytest.raises(ValidationError):
            load_frame({"dimension": 2, "mode": "float",
                        "vectors": [[1.0, 0.0], [0.0, 1.0]], "labels": ["a"]})


class TestDiagramVector:
    def test_axis_vector_r2(self):
        assert diagram_vector([1.0, 0.0], 2).tolist() == [1.0, 0.0]

    def test_diagonal_vector_r2(self):
        s = 1 / math.sqrt(2)
        out = diagram_vector([s, s], 2)
        assert out == pytest.approx([0.0, 1.0])

    def test_axis_vector_r3(self):
        out = diagram_vector([0.0, 1.0, 0.0], 3)
        r = 1 / math.sqrt(2)
        assert out == pytest.approx([-r, 0.0, r, 0.0, 0.0, 0.0])

    def test_length_is_n_times_n_minus_one(self):
        rng = random.Random(5)
        for n in range(2, 7):
            f = _random_unit(rng, n)
            assert diagram_vector(f, n).shape == (n * (n - 1),)

    def test_unit_norm_preserved(self):
        rng = random.Random(11)
        for n in range(2, 7):
            for _ in range(20):
                f = _random_unit(rng, n)
                assert np.linalg.norm(diagram_vector(f, n)) == pytest.approx(
                    1.0, abs=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(ValidationError):
            diagram_vector([1.0, 0.0, 0.0], 2)


class TestDiagramGramian:
    def test_orthonormal_basis(self):
        f = frame_from_vectors([[1.0, 0.0], [0.0, 1.0]])
        g = diagram_gramian(f)
        assert g.entry(0, 0) == pytest.approx(1.0)
        assert g.entry(0, 1) == pytest.approx(-1.0)

    def test_cross_sign_pattern(self, cross_frame):
        g = diagram_gramian(cross_frame)
        axes = (0, 1, 0, 1)
        for i in range(4):
            for j in range(4):
                want = 1 if axes[i] == axes[j] else -1
                assert g.entry(i, j) == want

    def test_closed_form_matches_explicit_inner_products(self):
        """The rational-lane formula (n <f_i,f_j>^2 - 1)/(n - 1) must agree
        with explicit diagram-vector inner products; 200 random frames."""
        rng = random.Random(20260816)
        worst = 0.0
        for _ in range(200):
            n = rng.randint(2, 4)
            k = rng.randint(n, 8)
            vecs = [_random_unit(rng, n) for _ in range(k)]
            tilde = [diagram_vector(v, n) for v in vecs]
            for i in range(k):
                for j in range(k):
                    explicit = float(np.dot(tilde[i], tilde[j]))
                    dot = sum(a * b for a, b in zip(vecs[i], vecs[j]))
                    closed = (n * dot * dot - 1) / (n - 1)
                    worst = max(worst, abs(explicit - closed))
        assert worst <= 1e-10

    def test_lanes_agree_after_realization(self, sixvec):
        g_exact = diagram_gramian(sixvec)
        g_float = diagram_gramian(realize_vectors(sixvec))
        for i in range(sixvec.k):
            for j in range(sixvec.k):
                assert float(g_exact.entry(i, j)) == pytest.approx(
                    g_float.entry(i, j), abs=1e-9)

    def test_positive_semidefinite_float(self):
        rng = random.Random(3)
        for _ in range(20):
            n = rng.randint(2, 4)
            k = rng.randint(n, 7)
            f = frame_from_vectors([_random_unit(rng, n) for _ in range(k)])
            g = np.array([[diagram_gramian(f).entry(i, j) for j in range(k)]
                          for i in range(k)])
            assert np.linalg.eigvalsh(g).min() >= -1e-9

    def test_positive_semidefinite_exact(self, sixvec, corpus):
        for fr in [sixvec] + [c.frame for c in corpus[:8]]:
            g = diagram_gramian(fr)
            rows = [[g.entry(i, j) for j in range(fr.k)] for i in range(fr.k)]
            _exact_psd_rank(rows)  # raises NotPSD on a negative pivot


class TestIsTight:
    def test_orthonormal_basis(self, onb2):
        res = is_tight(onb2, [0, 1])
        assert res.tight and res.constant == 1

    def test_equiangular_triple(self, equiangular_triple):
        res = is_tight(equiangular_triple, [0, 1, 2])
        assert res.tight and res.constant == Fraction(2, 3)

    def test_repeated_vector_breaks_tightness(self):
        f = frame_from_vectors([[1.0, 0.0], [0.0, 1.0], [1.0, 0.0]])
        assert not is_tight(f, [0, 1, 2]).tight

    def test_subset_of_sixvec(self, sixvec):
        assert is_tight(sixvec, [0, 1]).tight
        assert not is_tight(sixvec, [0, 2]).tight  # two copies of one axis

    def test_empty_subset_rejected(self, onb2):
        with pytest.raises(EmptySubset):
            is_tight(onb2, [])

    def test_agrees_with_operator_multiple(self, corpus):
        """Tight iff the subset frame operator is a scalar multiple of I."""
        rng = random.Random(17)
        for item in rng.sample(corpus, 10):
            fr = realize_vectors(item.frame)
            for _ in range(10):
                size = rng.randint(1, fr.k)
                subset = sorted(rng.sample(range(fr.k), size))
                sub = fr.vectors[:, subset]
                op = sub @ sub.T
                lam = np.trace(op) / fr.n
                is_multiple = bool(
                    np.abs(op - lam * np.eye(fr.n)).max() <= 1e-9) and lam > 0
                assert is_tight(fr, subset).tight == is_multiple


class TestIsParseval:
    def test_orthonormal_basis(self, onb2):
        assert is_parseval(onb2, [1, 1])
        assert not is_parseval(onb2, [2, 2])

    def test_equiangular_triple(self, equiangular_triple):
        w = [Fraction(2, 3)] * 3
        assert is_parseval(equiangular_triple, w)

    def test_weight_count_checked(self, onb2):
        with pytest.raises(ValidationError):
            is_parseval(onb2, [1, 1, 1])

    def test_deviation_zero_on_exact_scaling(self, equiangular_triple):
        dev = weighted_operator_deviation(equiangular_triple,
                                          [Fraction(2, 3)] * 3)
        assert dev == 0

    def test_deviation_positive_off_scaling(self, onb2):
        assert weighted_operator_deviation(onb2, [2, 2]) > 0


class TestFrameBounds:
    def test_orthonormal_basis(self, onb2):
        lo, hi, _ = frame_bounds(onb2)
        assert (lo, hi) == pytest.approx((1.0, 1.0))

    def test_repeated_vector(self):
        f = frame_from_vectors([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
        lo, hi, _ = frame_bounds(f)
        assert (lo, hi) == pytest.approx((1.0, 2.0))

    def test_equiangular_triple(self, equiangular_triple):
        lo, hi, approx = frame_bounds(equiangular_triple)
        assert approx  # exact lane reports float spectrum
        assert (lo, hi) == pytest.approx((1.5, 1.5))

    def test_non_spanning_rejected(self):
        f = frame_from_gram([[1, 1], [1, 1]], 2)
        with pytest.raises(NotSpanning):
            frame_bounds(f)


class TestTransforms:
    def test_subframe_of_sixvec(self, sixvec):
        sub = subframe(sixvec, [0, 1])
        assert sub.k == 2 and sub.gram == ((1, 0), (0, 1))

    def test_duplicate_extends_gram(self, sixvec):
        bigger = with_duplicated_vector(sixvec, 0)
        assert bigger.k == 7
        assert [bigger.gram[6][j] for j in range(6)] == list(sixvec.gram[0])
        assert bigger.gram[6][6] == 1

    def test_duplicate_float_lane(self):
        f = frame_from_vectors([[1.0, 0.0], [0.0, 1.0]])
        bigger = with_duplicated_vector(f, 1)
        assert bigger.vectors[:, 2].tolist() == [0.0, 1.0]

    def test_realize_reproduces_gram(self, corpus):
        for item in corpus[:6]:
            fr = item.frame
            fl = realize_vectors(fr)
            got = fl.vectors.T @ fl.vectors
            want = np.array([[float(x) for x in row] for row in fr.gram])
            assert np.abs(got - want).max() <= 1e-9

    def test_promote_round_trip(self, sixvec_float, sixvec):
        promoted = promote_to_rational(sixvec_float)
        assert promoted.gram == sixvec.gram

    def test_promote_rejects_irrational_norms(self, skew_pair):
        with pytest.raises(NotUnitNorm):
            promote_to_rational(skew_pair)

    def test_digest_distinguishes_frames(self, sixvec, cross_frame, onb2):
        digests = {sixvec.digest(), cross_frame.digest(), onb2.digest()}
        assert len(digests) == 3
        assert sixvec.digest() == frame_from_gram(sixvec_gram(), 2).digest()


def test_sixvec_axis_pattern_matches_gram(sixvec):
    for i, a in enumerate(SIXVEC_AXES):
        for j, b in enumerate(SIXVEC_AXES):
            assert sixvec.gram[i][j] == (1 if a == b else 0)
