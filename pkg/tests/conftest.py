"""Shared fixtures: the builtin catalog and structure files on disk."""

from __future__ import annotations

import pytest

from relfa.catalog import construct_catalog
from relfa.structio import save_structure


@pytest.fixture(scope="session")
def catalog():
    return construct_catalog()


@pytest.fixture()
def write_structure(tmp_path):
    """Save a structure under tmp_path and return the file path as a string."""

    def _write(obj, filename: str = "structure.json") -> str:
        path = tmp_path / filename
        save_structure(obj, str(path))
        return str(path)

    return _write
