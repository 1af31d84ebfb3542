from fractions import Fraction

import pytest

from edcrg.constructions import gen_gray_clique, parse_construction
from edcrg.crg import Crg, EdgeColor as E, VertexColor as V


@pytest.fixture(scope="session")
def gq22():
    return parse_construction("triangular_complement(6)").build()


def white_pair():
    """Two black vertices joined by a white edge."""
    return Crg([V.BLACK, V.BLACK], {(0, 1): E.WHITE})


def k03_plus_white_apex():
    """K(0,3) plus a fourth black vertex joined to it by white edges."""
    return Crg([V.BLACK] * 4, {(0, 3): E.WHITE, (1, 3): E.WHITE, (2, 3): E.WHITE})


F = Fraction
