"""gmc: Generalized Minimum Manhattan Connections.

Import submodules directly, e.g. ``from src.solvers import get_solver``.
"""
