"""Eigenpair extraction from approximate invariant subspaces of PSD matrices.

Three extraction routes (Rayleigh-Ritz, SVD of the projected product, and the
Nystrom approximation) plus basis generators, a priori error bounds, and
randomized property suites. Everything is seeded and deterministic.
"""

from ._core import *  # noqa: F401,F403
