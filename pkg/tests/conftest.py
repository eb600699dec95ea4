"""Shared fixtures: cached low-weight basis elements and generators."""

from __future__ import annotations

import pytest

from dskrv import dshuffle


@pytest.fixture(scope="session")
def basis_cache():
    """Memoized ds_basis results keyed by weight."""
    cache: dict[int, dshuffle.BasisResult] = {}

    def get(n: int) -> dshuffle.BasisResult:
        if n not in cache:
            cache[n] = dshuffle.ds_basis(n)
        return cache[n]

    return get


@pytest.fixture(scope="session")
def f3(basis_cache):
    return basis_cache(3).basis[0]


@pytest.fixture(scope="session")
def f5(basis_cache):
    return basis_cache(5).basis[0]
