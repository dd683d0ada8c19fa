import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from dimerlab import fixtures  # noqa: E402

FIG = ["fig1i", "fig1ii", "fig1iii", "fig1iv"]
SOURCES = [fixtures.MAPS[k].source for k in FIG]
TARGETS = ["fig1i_Qp", "fig1ii_Qp", "fig1iii_Qp", "fig1iii_Qp_reduced", "fig1iv_Qp", "fig1iv_Qp_reduced"]
CANCELLATIVE = TARGETS + ["c3_hex", "non_example_unit"]


@pytest.fixture
def load():
    return fixtures.load


def product_path(q, word):
    """A path written in the right-to-left product notation: 'cab' means b, then a, then c."""
    names = word.split() if " " in word else list(word)
    return q.path(*reversed(names))
