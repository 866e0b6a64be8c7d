from __future__ import annotations

import pytest

from freeset import build_embedded
from freeset.generators import fan, goldner_harary, octahedron


def k4():
    """K4 with outer face (0,1,2) and center 3."""
    rot = [[1, 3, 2], [2, 3, 0], [0, 3, 1], [2, 0, 1]]
    return build_embedded(4, rot, outer_face_hint=[0, 1, 2])


@pytest.fixture(name="k4")
def k4_fixture():
    return k4()


@pytest.fixture(name="octa")
def octa_fixture():
    return octahedron()


@pytest.fixture(name="fan6")
def fan6_fixture():
    return fan(6)


@pytest.fixture(name="gh")
def gh_fixture():
    return goldner_harary()
