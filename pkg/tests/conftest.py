from __future__ import annotations

import pytest

from tetrasym.category import PRESETS, load_category
from tetrasym.rigidity import build_rigidity

GROUP_PRESETS = ("z2", "z3", "s3", "d4", "q8")
POINTED_PRESETS = ("z3_omega0", "z3_omega1", "z3_omega2")

_cats: dict = {}
_rigs: dict = {}


def cat_of(name):
    if name not in _cats:
        _cats[name] = load_category(name)
    return _cats[name]


def rig_of(name):
    if name not in _rigs:
        _rigs[name] = build_rigidity(cat_of(name))
    return _rigs[name]


@pytest.fixture(params=PRESETS)
def preset(request):
    return request.param


@pytest.fixture
def cat(preset):
    return cat_of(preset)


@pytest.fixture
def rig(preset):
    return rig_of(preset)
