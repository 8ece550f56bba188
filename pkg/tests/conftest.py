"""Shared fixtures: small named frames plus the session-wide rational corpus."""

import pytest
from fractions import Fraction
from mpmath import mp

from framescale import frame_from_gram, frame_from_vectors

from corpus import build_corpus

# six vectors, axis pattern e1,e2,e1,e2,e2,e1; nine tight pairs, one per
# (copy of e1) x (copy of e2) choice
SIXVEC_AXES = (0, 1, 0, 1, 1, 0)

# populated by test_acceptance.py; echoed after the run so the verdict for
# each criterion is visible regardless of capture settings
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

# unit ball contact configuration: an equiangular triple rotated 10 degrees
# together with its antipodes
CONTACT_DEGREES = (10, 120, 240, 190, 300, 60)


def sixvec_gram():
    return [[1 if a == b else 0 for b in SIXVEC_AXES] for a in SIXVEC_AXES]


def sixvec_expected_supports():
    e1 = [i for i, a in enumerate(SIXVEC_AXES) if a == 0]
    e2 = [i for i, a in enumerate(SIXVEC_AXES) if a == 1]
    return {frozenset((i, j)) for i in e1 for j in e2}


def contact_vectors():
    with mp.workdps(60):
        return [[float(mp.cospi(mp.mpf(d) / 180)), float(mp.sinpi(mp.mpf(d) / 180))]
                for d in CONTACT_DEGREES]


def contact_closed_form_weights():
    """The printed closed-form weights on the first three contact vectors."""
    with mp.workdps(60):
        c10 = mp.cospi(mp.mpf(1) / 18)
        s10 = mp.sinpi(mp.mpf(1) / 18)
        den = 3 * c10 ** 2 - s10 ** 2
        r = 2 * mp.sqrt(3) / 3
        c1 = 2 / den
        c2 = r * (mp.sqrt(3) * (c10 ** 2 - s10 ** 2) + 2 * c10 * s10) / den
        c3 = r * (mp.sqrt(3) * (c10 ** 2 - s10 ** 2) - 2 * c10 * s10) / den
        return [float(c1), float(c2), float(c3), 0.0, 0.0, 0.0]


@pytest.fixture(scope="session")
def sixvec():
    return frame_from_gram(sixvec_gram(), 2)


@pytest.fixture(scope="session")
def sixvec_float():
    vecs = [[1.0, 0.0] if a == 0 else [0.0, 1.0] for a in SIXVEC_AXES]
    return frame_from_vectors(vecs)


@pytest.fixture(scope="session")
def cross_frame():
    g = [[1, 0, -1, 0], [0, 1, 0, -1], [-1, 0, 1, 0], [0, -1, 0, 1]]
    return frame_from_gram(g, 2)


@pytest.fixture(scope="session")
def equiangular_triple():
    h = Fraction(-1, 2)
    return frame_from_gram([[1, h, h], [h, 1, h], [h, h, 1]], 2)


@pytest.fixture(scope="session")
def onb2():
    return frame_from_gram([[1, 0], [0, 1]], 2)


@pytest.fixture(scope="session")
def contact_frame():
    return frame_from_vectors(contact_vectors())


@pytest.fixture(scope="session")
def skew_pair():
    with mp.workdps(60):
        v = [float(mp.cospi(mp.mpf(1) / 9)), float(mp.sinpi(mp.mpf(1) / 9))]
    return frame_from_vectors([[1.0, 0.0], v])


@pytest.fixture(scope="session")
def corpus():
    return build_corpus()
