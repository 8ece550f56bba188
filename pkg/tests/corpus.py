"""Deterministic exact-rational frame corpus for the property suites.

Every frame is scalable by construction: the building blocks are tight
(rotated orthonormal bases, crosses pairing a basis with its negation, and
equiangular triples), and relative rotations between blocks are chosen so
that all inner products stay rational.  Bases rotate by Pythagorean angles;
triples sit on a 60-degree lattice and rotate relative to each other by
angles whose cosine is rational and whose sine is a rational multiple of
sqrt(3), which is exactly the condition keeping the mixed entries rational.

Twenty frames carry ``dup_index``: an index that every minimal scaling uses,
because the frame repeats some basis directions while that one appears only
where it is indispensable.  Appending a duplicate of such a vector doubles
the vertex count, and the doubling suite consumes exactly these.
"""

import random
from fractions import Fraction
from typing import NamedTuple, Optional

from framescale import Frame, frame_from_gram

F = Fraction

SEED = 20260816

PYTHAGOREAN = [
    (3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25), (20, 21, 29),
    (9, 40, 41), (12, 35, 37), (28, 45, 53), (11, 60, 61), (33, 56, 65),
    (48, 55, 73), (13, 84, 85), (36, 77, 85), (39, 80, 89),
]


class CorpusFrame(NamedTuple):
    name: str
    frame: Frame
    dup_index: Optional[int]


def _unit2(rng) -> tuple:
    a, b, c = rng.choice(PYTHAGOREAN)
    if rng.random() < 0.5:
        a, b = b, a
    return (F(rng.choice((1, -1)) * a, c), F(rng.choice((1, -1)) * b, c))


def _onb2(u) -> list:
    x, y = u
    return [(x, y), (-y, x)]


def _cross2(u) -> list:
    x, y = u
    return [(x, y), (-y, x), (-x, -y), (y, -x)]


def _gram(vectors) -> list:
    k, n = len(vectors), len(vectors[0])
    return [[sum(vectors[i][d] * vectors[j][d] for d in range(n)) for j in range(k)]
            for i in range(k)]


def _rot3(plane, u) -> list:
    x, y = u
    i, j = plane
    m = [[F(1 if r == c else 0) for c in range(3)] for r in range(3)]
    m[i][i] = x
    m[i][j] = -y
    m[j][i] = y
    m[j][j] = x
    return m


def _matmul3(a, b) -> list:
    return [[sum(a[r][t] * b[t][c] for t in range(3)) for c in range(3)]
            for r in range(3)]


def _onb3(rng) -> list:
    m = [[F(1 if r == c else 0) for c in range(3)] for r in range(3)]
    for plane in rng.sample(((0, 1), (0, 2), (1, 2)), 2):
        m = _matmul3(m, _rot3(plane, _unit2(rng)))
    return [tuple(m[r][c] for r in range(3)) for c in range(3)]


# --- equiangular triples ----------------------------------------------------
#
# A triple occupies angles psi, psi + 60, psi + 120.  Relative angles between
# triples are carried as pairs (p, q) with cos = p, sin = q * sqrt(3), so
# p^2 + 3 q^2 = 1; such pairs form a group under angle addition and keep
# every cos(psi + 60 m) rational.

_COS60 = {0: F(1), 1: F(1, 2), 2: F(-1, 2)}


def _cos_plus60(p, q, m):
    s = 0 if m == 0 else (1 if m > 0 else -1)
    return p * _COS60[abs(m)] - F(3, 2) * q * s


def _angle_param(rng) -> tuple:
    t = F(rng.randint(1, 9), rng.randint(10, 19)) * rng.choice((1, -1))
    den = 1 + 3 * t * t
    return ((1 - 3 * t * t) / den, 2 * t / den)


def _angle_diff(a, b) -> tuple:
    return (a[0] * b[0] + 3 * a[1] * b[1], a[1] * b[0] - a[0] * b[1])


def triple_union_gram(params, flips=()) -> list:
    """Gram of a union of equiangular triples at the given relative angles.

    ``params`` lists one (p, q) pair per triple; ``flips`` names (piece,
    position) vectors to negate, which walks the Gram through the sign
    classes of a triple without leaving tightness.
    """
    k = 3 * len(params)
    sign = [1] * k
    for piece, pos in flips:
        sign[3 * piece + pos] = -1
    g = [[F(0)] * k for _ in range(k)]
    for b, pb in enumerate(params):
        for d, pd in enumerate(params):
            p, q = _angle_diff(pb, pd)
            for i in range(3):
                for j in range(3):
                    r, c = 3 * b + i, 3 * d + j
                    g[r][c] = sign[r] * sign[c] * _cos_plus60(p, q, i - j)
    return g


BASE_TRIPLE = ((F(1), F(0)),)
TRIPLE_FLIPS = ((), ((0, 0),), ((0, 1),), ((0, 2),))


def dup_gram(gram, extra) -> list:
    idx = list(range(len(gram))) + list(extra)
    return [[gram[i][j] for j in idx] for i in idx]


def build_corpus() -> list:
    rng = random.Random(SEED)
    out = []

    def add(name, gram, n, dup=None):
        out.append(CorpusFrame(name, frame_from_gram(gram, n), dup))

    # plain bases; the binomial vertex-count bound is attained on these
    add("onb2", _gram(_onb2(_unit2(rng))), 2)
    add("onb3", _gram(_onb3(rng)), 3)

    # frames with a designated index present in every minimal support
    o2 = _onb2(_unit2(rng))
    add("pinned-2d-3", _gram([o2[0], o2[1], o2[0]]), 2, dup=1)
    add("pinned-2d-4", _gram([o2[0], o2[1], o2[0], o2[0]]), 2, dup=1)
    add("pinned-2d-5", _gram([o2[0], o2[1], o2[0], o2[0], o2[0]]), 2, dup=1)
    o3 = _onb3(rng)
    add("pinned-3d-4", _gram([o3[0], o3[1], o3[2], o3[0]]), 3, dup=1)
    add("pinned-3d-5a", _gram([o3[0], o3[1], o3[2], o3[0], o3[0]]), 3, dup=1)
    add("pinned-3d-5b", _gram([o3[0], o3[1], o3[2], o3[0], o3[1]]), 3, dup=2)
    add("pinned-3d-6", _gram([o3[0], o3[1], o3[2], o3[0], o3[1], o3[0]]), 3, dup=2)
    for s, fl in enumerate(TRIPLE_FLIPS):
        g = triple_union_gram(BASE_TRIPLE, fl)
        add(f"pinned-tri{s}-4", dup_gram(g, [0]), 2, dup=1)
        add(f"pinned-tri{s}-5a", dup_gram(g, [0, 0]), 2, dup=1)
        add(f"pinned-tri{s}-5b", dup_gram(g, [0, 1]), 2, dup=2)
    add("pinned-tri0-6", dup_gram(triple_union_gram(BASE_TRIPLE), [0, 0, 0]), 2, dup=1)

    # generic unions of tight blocks
    for i in range(5):
        add(f"u2x2-{i}", _gram(_onb2(_unit2(rng)) + _onb2(_unit2(rng))), 2)
    for i in range(4):
        add(f"u2x3-{i}",
            _gram(_onb2(_unit2(rng)) + _onb2(_unit2(rng)) + _onb2(_unit2(rng))), 2)
    for i in range(2):
        add(f"u2x4-{i}",
            _gram(_onb2(_unit2(rng)) + _onb2(_unit2(rng))
                  + _onb2(_unit2(rng)) + _onb2(_unit2(rng))), 2)
    add("cross", _gram(_cross2((F(1), F(0)))), 2)
    for i in range(2):
        add(f"cross-onb-{i}", _gram(_cross2(_unit2(rng)) + _onb2(_unit2(rng))), 2)
    for i in range(2):
        add(f"cross-cross-{i}", _gram(_cross2(_unit2(rng)) + _cross2(_unit2(rng))), 2)
    for i in range(4):
        add(f"tri2-{i}",
            triple_union_gram(((F(1), F(0)), _angle_param(rng))), 2)
    for i in range(2):
        add(f"tri3-{i}",
            triple_union_gram(((F(1), F(0)), _angle_param(rng), _angle_param(rng))), 2)
    for i in range(3):
        add(f"u3x2-{i}", _gram(_onb3(rng) + _onb3(rng)), 3)
    for i in range(3):
        add(f"u3x3-{i}", _gram(_onb3(rng) + _onb3(rng) + _onb3(rng)), 3)

    assert len(out) == 50
    return out
