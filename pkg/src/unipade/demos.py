"""Ready-made construction problems used by the CLI demo and the test suite."""

from __future__ import annotations

import numpy as np

from .compacta import CompactSample, GridSpec, example_46_sets
from .poly import EXACT, Polynomial
from .rational import RationalFunction
from .universal import ConstructionProblem, IndexSetF

__all__ = ["disk_and_segment", "rational_fixture", "boundary_split_problem", "boundary_split_sets"]


def disk_and_segment(h_disk: float = 1 / 8, h_seg: float = 1 / 16, radius: float = 0.5,
                     seg=(2.0, 3.0)) -> tuple[CompactSample, CompactSample]:
    """Samples of the closed disk D(0, radius) and the real segment ``seg``
    on a common grid of step ``min(h_disk, h_seg)``."""
    h = min(h_disk, h_seg)
    grid = GridSpec(-radius, seg[1], -radius, radius, h)
    Z = grid.nodes()
    on_disk_lattice = (np.mod(np.round(Z.real / h), round(h_disk / h)) == 0) & \
                      (np.mod(np.round(Z.imag / h), round(h_disk / h)) == 0)
    L = CompactSample.from_mask(grid, (np.abs(Z) <= radius) & on_disk_lattice, "L")
    on_seg_lattice = np.mod(np.round(Z.real / h), round(h_seg / h)) == 0
    K = CompactSample.from_mask(grid, (Z.imag == 0) & (Z.real >= seg[0]) & (Z.real <= seg[1]) & on_seg_lattice, "K")
    return L, K


def rational_fixture(eps: float = 1e-3, s: int = 2, h_disk: float = 1 / 8,
                     h_seg: float = 1 / 16) -> ConstructionProblem:
    """g = 1/(z-4) on disk(0,1/2), h = 1/z on [2,3], all (p,q) allowed."""
    L, K = disk_and_segment(h_disk, h_seg)
    g = RationalFunction(Polynomial((1,), EXACT), Polynomial((-4, 1), EXACT))
    h = RationalFunction(Polynomial((1,), EXACT), Polynomial((0, 1), EXACT))
    return ConstructionProblem(L, K, g, h, IndexSetF(rule="all", horizon=160), s=s, eps=eps)


def boundary_split_sets(h: float = 1 / 8, n: int = 2):
    """L_n of the upper example and an outer block of K_1 below -3i/2.

    K keeps the points of K_1 with Im z <= -3/2 and |Re z| <= 3/8.  The full
    K_1 wraps around the lower half of L_n; fitting derivatives on L_n
    together with values on the part of K_1 near -i needs polynomial
    degrees whose dynamic range exceeds double precision.
    """
    grid = GridSpec(-2.0, 2.0, -2.0, 1.25, h)
    L, K1 = example_46_sets(grid, n)
    z = K1.points
    keep = (z.imag <= -1.5) & (np.abs(z.real) <= 0.375)
    return L, K1.with_points(z[keep], "K")


def boundary_split_problem(eps: float = 1e-3, s: int = 2, h: float = 1 / 8) -> ConstructionProblem:
    """g = 0 on L_2, polynomial target z^2 on the K_1 part, euclidean metric, q = 1."""
    L, K = boundary_split_sets(h)
    return ConstructionProblem(L, K, Polynomial((), EXACT), Polynomial((0, 0, 1), EXACT),
                               IndexSetF(rule="row:1", horizon=160), s=s, eps=eps, metric="euclidean")
