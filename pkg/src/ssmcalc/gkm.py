"""Torus-equivariant cohomology of G/B by localization at the fixed points W.

A class is a tuple of polynomials indexed by Weyl elements.  The Schubert
class sigma_w (cohomological degree 2*l(w)) is supported on the Bruhat
up-set of w; it is computed top-down from the point class at w0 with the
divided difference

    (d_i f)(v) = (f(v) - f(v s_i)) / (-v(alpha_i)).

Non-equivariant structure constants come from triangular expansion of
pointwise products in this basis, so no rational functions ever appear.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .poly import NotDivisible, RootPoly
from .weyl import ParabolicData, WeylGroup

log = logging.getLogger(__name__)


class GkmError(ArithmeticError):
    pass


class GkmRecursionFailure(GkmError):
    pass


class NotInSpan(GkmError):
    pass


class ParabolicClosureFailure(GkmError):
    pass


@dataclass(frozen=True)
class GkmClass:
    group: WeylGroup
    values: tuple[RootPoly, ...]

    @classmethod
    def from_map(cls, group: WeylGroup, values: Mapping[int, RootPoly]) -> GkmClass:
        zero = RootPoly.zero(group.rank)
        return cls(group, tuple(values.get(i, zero) for i in range(len(group))))

    @classmethod
    def constant(cls, group: WeylGroup, c=1) -> GkmClass:
        p = RootPoly.const(group.rank, c)
        return cls(group, (p,) * len(group))

    @property
    def support(self) -> list[int]:
        return [i for i, p in enumerate(self.values) if p]

    @property
    def degree(self) -> int | str | None:
        """Cohomological degree, ``"inhomogeneous"``, or None for zero."""
        degs = set()
        for p in self.values:
            if p:
                if not p.is_homogeneous():
                    return "inhomogeneous"
                degs.add(p.degree())
        if not degs:
            return None
        if len(degs) > 1:
            return "inhomogeneous"
        return 2 * degs.pop()

    def __add__(self, other: GkmClass) -> GkmClass:
        return GkmClass(self.group, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: GkmClass) -> GkmClass:
        return GkmClass(self.group, tuple(a - b for a, b in zip(self.values, other.values)))

    def __mul__(self, other: GkmClass | RootPoly | int | Fraction) -> GkmClass:
        if isinstance(other, GkmClass):
            return GkmClass(self.group, tuple(a * b for a, b in zip(self.values, other.values)))
        return GkmClass(self.group, tuple(other * a for a in self.values))

    __rmul__ = __mul__


class RootLabels:
    """Cache of the linear forms v(alpha_i) as RootPolys."""

    def __init__(self, group: WeylGroup):
        self.group = group
        self._cache: dict[tuple[int, int], RootPoly] = {}

    def __call__(self, v: int, i: int) -> RootPoly:
        key = (v, i)
        p = self._cache.get(key)
        if p is None:
            p = RootPoly.linear(self.group.simple_root_image(self.group[v], i))
            self._cache[key] = p
        return p


def divided_difference(c: GkmClass, i: int, labels: RootLabels | None = None) -> GkmClass:
    """Right divided difference d_i (1-indexed i)."""
    g = c.group
    labels = labels or RootLabels(g)
    k = i - 1
    zero = RootPoly.zero(g.rank)
    out = []
    for v in range(len(g)):
        diff = c.values[v] - c.values[g.rmul[v][k]]
        if not diff:
            out.append(zero)
            continue
        try:
            out.append(diff.exact_divide(-labels(v, k)))
        except NotDivisible as exc:
            raise GkmRecursionFailure("GKM recursion failure") from exc
    return GkmClass(g, tuple(out))


def gkm_validate(c: GkmClass) -> bool:
    """True iff c(w) - c(t_beta w) is divisible by beta for every edge."""
    g = c.group
    labels = RootLabels(g)
    for v in range(len(g)):
        for k, beta in enumerate(g.rs.positive_roots):
            # edge v -- t_beta v, equivalently v -- v s_gamma with v(gamma) = +/-beta
            t = g.reflection(beta)
            u = g.multiply(t, g[v]).id
            if u < v:
                continue
            diff = c.values[v] - c.values[u]
            if diff:
                try:
                    diff.exact_divide(RootPoly.linear(beta))
                except NotDivisible:
                    return False
    return True


class SchubertLocalizations:
    """Lazily computed equivariant Schubert classes sigma_w of G/B."""

    def __init__(self, group: WeylGroup):
        self.group = group
        self.labels = RootLabels(group)
        self._sigma: dict[int, GkmClass] = {}
        self._support: dict[int, list[int]] = {}
        top = RootPoly.const(group.rank, 1)
        for beta in group.rs.positive_roots:
            top = top * RootPoly.linear(beta)
        w0 = group.longest_element().id
        self._sigma[w0] = GkmClass.from_map(group, {w0: top})

    def ascent(self, w: int) -> int:
        """Smallest 1-indexed i with l(w s_i) > l(w)."""
        perm = self.group[w].root_action
        return next(i + 1 for i in range(self.group.rank) if perm[i] > 0)

    def __getitem__(self, w: int) -> GkmClass:
        s = self._sigma.get(w)
        if s is not None:
            return s
        chain = []
        x = w
        while x not in self._sigma:
            i = self.ascent(x)
            chain.append((x, i))
            x = self.group.rmul[x][i - 1]
        for x, i in reversed(chain):
            above = self._sigma[self.group.rmul[x][i - 1]]
            self._sigma[x] = divided_difference(above, i, self.labels)
        return self._sigma[w]

    def via(self, w: int, i: int) -> GkmClass:
        """sigma_w computed as d_i sigma_{w s_i} for a chosen ascent i."""
        ws = self.group.rmul[w][i - 1]
        if self.group.lengths[ws] < self.group.lengths[w]:
            raise ValueError(f"s{i} is not an ascent of {self.group[w]}")
        return divided_difference(self[ws], i, self.labels)

    def support(self, w: int) -> list[int]:
        sup = self._support.get(w)
        if sup is None:
            sup = self[w].support
            self._support[w] = sup
        return sup

    def diagonal(self, w: int) -> RootPoly:
        return self[w].values[w]

    def all(self) -> list[GkmClass]:
        return [self[w] for w in range(len(self.group))]


def schubert_localizations(group: WeylGroup) -> dict[int, GkmClass]:
    loc = SchubertLocalizations(group)
    return {w: loc[w] for w in range(len(group))}


def expand_basis(c: GkmClass | Mapping[int, RootPoly], loc: SchubertLocalizations,
                 *, max_length: int | None = None, verify: bool = True) -> dict[int, RootPoly]:
    """Coefficients kappa_w with c = sum_w kappa_w * sigma_w.

    Elimination runs in increasing length: the least point of the residual's
    support is a pivot because sigma_w vanishes below w.  With
    ``max_length`` set, coefficients on longer elements are not produced and
    the last level is read off without updating the residual; this is only
    valid for homogeneous c of degree ``2 * max_length``.
    """
    g = loc.group
    if isinstance(c, GkmClass):
        resid = {v: p for v, p in enumerate(c.values) if p}
    else:
        resid = {v: p for v, p in c.items() if p}
    lengths = g.lengths
    coeffs: dict[int, RootPoly] = {}
    while resid:
        w = min(resid)
        if max_length is not None and lengths[w] > max_length:
            break
        try:
            kappa = resid[w].exact_divide(loc.diagonal(w))
        except NotDivisible as exc:
            raise NotInSpan("not in span") from exc
        coeffs[w] = kappa
        if max_length is not None and lengths[w] == max_length:
            del resid[w]
            continue
        sigma = loc[w].values
        for v in loc.support(w):
            p = resid.get(v)
            q = sigma[v] * kappa
            new = q.__neg__() if p is None else p - q
            if new:
                resid[v] = new
            else:
                resid.pop(v, None)
    if verify and max_length is None and resid:
        raise NotInSpan("not in span")
    return coeffs


class MultTable:
    """Non-equivariant Schubert structure constants c_{uv}^w of G/P.

    Entries are computed on demand from the G/B localizations and memoized;
    ``build_all`` fills every pair.  For a proper parabolic, indices are
    restricted to W^P and every product is checked to stay in that span.
    """

    def __init__(self, loc: SchubertLocalizations, pd: ParabolicData):
        self.loc = loc
        self.group = loc.group
        self.pd = pd
        self.indices = tuple(pd.min_reps)
        self._allowed = frozenset(self.indices)
        self.constants: dict[tuple[int, int], dict[int, int]] = {}

    def product(self, u: int, v: int) -> dict[int, int]:
        key = (u, v) if u <= v else (v, u)
        row = self.constants.get(key)
        if row is None:
            row = self._compute(*key)
            self.constants[key] = row
        return row

    def _compute(self, u: int, v: int) -> dict[int, int]:
        g = self.group
        if u not in self._allowed or v not in self._allowed:
            raise KeyError(f"index outside the basis of this space: {u}, {v}")
        if u == 0:
            return {v: 1}
        if v == 0:
            return {u: 1}
        deg = g.lengths[u] + g.lengths[v]
        if deg > self.pd.dim_gp:
            return {}
        su, sv = self.loc[u].values, self.loc[v].values
        prod = {}
        for x in set(self.loc.support(u)) & set(self.loc.support(v)):
            p = su[x] * sv[x]
            if p:
                prod[x] = p
        coeffs = expand_basis(prod, self.loc, max_length=deg)
        out: dict[int, int] = {}
        for w, kappa in coeffs.items():
            if w not in self._allowed:
                raise ParabolicClosureFailure(
                    f"parabolic closure failure: sigma_{g[u]} * sigma_{g[v]} involves {g[w]}")
            if g.lengths[w] == deg:
                c = kappa.eval_zero()
                if c:
                    if not isinstance(c, int):
                        raise GkmError(f"non-integral structure constant {c}")
                    out[w] = c
        return out

    def build_all(self) -> dict[tuple[int, int], dict[int, int]]:
        for a, u in enumerate(self.indices):
            for v in self.indices[a:]:
                self.product(u, v)
        return self.constants

    def load(self, constants: Mapping[tuple[int, int], Mapping[int, int]]) -> None:
        for (u, v), row in constants.items():
            key = (u, v) if u <= v else (v, u)
            self.constants[key] = dict(row)


def multiplication_table(loc: SchubertLocalizations, pd: ParabolicData) -> MultTable:
    table = MultTable(loc, pd)
    table.build_all()
    return table


def chevalley_rule(group: WeylGroup, i: int, w: int) -> dict[int, int]:
    """sigma_{s_i} * sigma_w by the Chevalley formula (1-indexed i)."""
    rs = group.rs
    out: dict[int, int] = {}
    lw = group.lengths[w]
    for beta in rs.positive_roots:
        x = group.multiply(group[w], group.reflection(beta)).id
        if group.lengths[x] != lw + 1:
            continue
        c = rs.coroot_coefficient(beta, i - 1)
        if c:
            if c.denominator != 1:
                raise GkmError("non-integral Chevalley coefficient")
            out[x] = out.get(x, 0) + int(c)
    return {k: v for k, v in out.items() if v}


def chevalley_check(table: MultTable, indices: Iterable[int] | None = None) -> list[str]:
    """Compare every degree-2 row of ``table`` with the Chevalley rule.

    Returns a list of mismatch descriptions (empty when all agree).
    """
    g = table.group
    mismatches = []
    allowed = set(table.indices)
    for i in range(1, g.rank + 1):
        s = g.simple(i).id
        if s not in allowed:
            continue
        for w in (indices if indices is not None else table.indices):
            expected = chevalley_rule(g, i, w)
            if table.group.lengths[w] + 1 > table.pd.dim_gp:
                expected = {}
            got = table.product(s, w)
            if got != expected:
                mismatches.append(f"s{i} * {g[w]}: table {got} vs Chevalley {expected}")
    return mismatches
