"""Inclusion-exclusion Euler characteristics on projective space.

A Schubert cell of dimension k in P^n is a linear P^k minus a hyperplane.
Generic translates of m such cells meet in a linear P^K, K = sum k_i - (m-1) n,
minus m generic hyperplanes, whose Euler characteristic is elementary.  No
characteristic classes are involved, which makes this an independent check
of the whole CSM/SSM pipeline on the spaces A_n / P = P^n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .classes import Space, make_space
from .euler import chi_multi_intersection


@dataclass(frozen=True)
class ProjIntersectionSpec:
    n: int
    dims: tuple[int, ...]

    def __post_init__(self):
        if not self.dims:
            raise ValueError("dims must be nonempty")
        if any(not 0 <= k <= self.n for k in self.dims):
            raise ValueError(f"cell dimensions must lie in [0, {self.n}]")


def proj_cell_chi(spec: ProjIntersectionSpec | tuple[int, Sequence[int]]) -> int:
    """χ of m generic cells of P^n with the given dimensions.

    >>> proj_cell_chi(ProjIntersectionSpec(1, (1, 1, 1)))
    -1
    >>> proj_cell_chi(ProjIntersectionSpec(2, (2, 2, 2)))
    0
    """
    if not isinstance(spec, ProjIntersectionSpec):
        spec = ProjIntersectionSpec(spec[0], tuple(spec[1]))
    m = len(spec.dims)
    k = sum(spec.dims) - (m - 1) * spec.n
    if k < 0:
        return 0
    return sum((-1) ** s * comb(m, s) * max(k - s + 1, 0) for s in range(m + 1))


def projective_space(n: int) -> Space:
    """P^n as A_n / P with W_P generated by s_2, ..., s_n."""
    return make_space(f"A{n}", range(2, n + 1))


@dataclass
class CrossCheckReport:
    n: int
    checked: int = 0
    mismatches: list[tuple[tuple[str, ...], int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def proj_cross_check(n: int, max_cells: int = 4) -> CrossCheckReport:
    """Compare the oracle with the CSM pipeline on every multiset of <= max_cells cells."""
    space = projective_space(n)
    lengths = space.group.lengths
    report = CrossCheckReport(n)
    for m in range(1, max_cells + 1):
        for cells in itertools.combinations_with_replacement(space.basis, m):
            dims = tuple(lengths[c] for c in cells)
            expected = proj_cell_chi(ProjIntersectionSpec(n, dims))
            got = chi_multi_intersection(space, cells)
            report.checked += 1
            if got != expected:
                report.mismatches.append((tuple(space.word(c) for c in cells), got, expected))
    return report
