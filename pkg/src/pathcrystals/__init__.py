"""Exact combinatorics engine for affine path-model crystals.

Builds finite level-zero crystals from straight-line seeds, equips them with
degrees and full-lattice weights, constructs Demazure crystals and their
characters, and verifies that the crystal-side weight sums, the block
filtrations transported from the short subsystem, and the components of the
concatenated crystal all agree.
"""

from .rootdata import RootSystem, root_system

__all__ = ["RootSystem", "root_system"]
