"""
This module provides fixtures for doctests.

Note that this file will NOT be included when installed.
"""
import typing as t

import numpy as np
import pytest

import tlab_hardy


@pytest.fixture(autouse=True)
def add_namespace(doctest_namespace: dict[str, t.Any]) -> None:
    """
    For doctests that refer to the package or numpy by name
    """
    doctest_namespace["np"] = np
    doctest_namespace["tlab_hardy"] = tlab_hardy
