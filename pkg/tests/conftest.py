from __future__ import annotations

import pytest

from ttw import gallery

_CACHE: dict[str, object] = {}


def build_cached(name: str):
    if name not in _CACHE:
        _CACHE[name] = gallery.build(name)
    return _CACHE[name]


@pytest.fixture(params=gallery.names())
def gallery_category(request):
    return request.param, build_cached(request.param)


@pytest.fixture
def b2():
    return build_cached("b2")


@pytest.fixture
def c3():
    return build_cached("c3")


@pytest.fixture
def q3():
    return build_cached("q3")


@pytest.fixture
def boolean2x2():
    return build_cached("boolean2x2")


@pytest.fixture
def m3():
    return build_cached("m3")


@pytest.fixture
def z2():
    return build_cached("z2")


def mor_by_label(mc, label):
    for m in mc.morphisms:
        if m.label == label:
            return m.mid
    raise KeyError(label)


def obj_by_label(mc, label):
    return mc.objects.index(label)


def subunit_by_domain(mc, subs, label):
    for s in subs:
        if mc.obj_label(s.domain) == label:
            return s
    raise KeyError(label)
