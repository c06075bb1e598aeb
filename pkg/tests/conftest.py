"""Shared helpers: cached catalog objects so expensive builds run once."""

from functools import lru_cache

import pytest

from ybe import assemble_R, build_GC_closed, classical_r


def _key(params: dict):
    return tuple(sorted(params.items()))


@lru_cache(maxsize=None)
def _cached_R(entry_id, key):
    return assemble_R(entry_id, dict(key))


@lru_cache(maxsize=None)
def _cached_GC(entry_id, key):
    return build_GC_closed(entry_id, dict(key))


@lru_cache(maxsize=None)
def _cached_classical(entry_id, key):
    return classical_r(entry_id, dict(key))


@pytest.fixture(scope="session")
def cached():
    class Cache:
        R = staticmethod(lambda e, p: _cached_R(e, _key(p)))
        GC = staticmethod(lambda e, p: _cached_GC(e, _key(p)))
        classical = staticmethod(lambda e, p: _cached_classical(e, _key(p)))
    return Cache
