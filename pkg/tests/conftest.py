"""Pytest configuration helpers.

This conftest ensures the project root and the tests directory are on
`sys.path` so tests can import the `src` package and the shared `helpers`
module regardless of how pytest is invoked in different CI or IDE
environments.
"""
import os
import sys


ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
HERE = os.path.abspath(os.path.dirname(__file__))
for path in (ROOT, HERE):
    if path not in sys.path:
        sys.path.insert(0, path)


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: acceptance-size loops (deselect with -m 'not slow')")
