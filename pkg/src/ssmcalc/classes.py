"""Cohomology classes of G/P in the Schubert basis; CSM and SSM classes of cells.

The basis element for ``w`` in W^P is the class of the opposite Schubert
variety X^w, of cohomological degree 2*l(w).  Fundamental weights map to the
divisor classes, omega_j -> sigma_{s_j}, so a root beta has the degree-2
class  sum_j <alpha_j^vee, beta> sigma_{s_j}.

CSM classes of Schubert cells in G/B come from the operators

    T_i = (1 + alpha_i) . d_i - Id,    c_SM(X(w s_i)) = T_i c_SM(X(w))  when w s_i > w,

starting from the point class.  G/P classes are pushforwards of these.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .gkm import MultTable, SchubertLocalizations
from .poly import Coeff, _norm
from .weyl import (ParabolicData, RootSystem, WeylElement, WeylError, WeylGroup,
                   build_root_system, format_word, parabolic_data)


class SpaceError(ValueError):
    pass


class Space:
    """The flag variety G/P together with its multiplication table.

    Spaces built through :func:`make_space` share the Weyl group and the
    localizations of their root system.
    """

    def __init__(self, rs: RootSystem, group: WeylGroup, loc: SchubertLocalizations,
                 parabolic: Iterable[int] = ()):
        self.rs = rs
        self.group = group
        self.loc = loc
        self.pd: ParabolicData = parabolic_data(group, parabolic)
        self.table = MultTable(loc, self.pd)
        self.basis: tuple[int, ...] = self.pd.min_reps
        self.dim = self.pd.dim_gp
        self.top = next(w for w in self.basis if group.lengths[w] == self.dim)
        self._csm: dict[int, CohClass] = {}
        self._ssm: dict[int, CohClass] = {}
        self._pd_dual: dict[int, int] = {}
        self._chern: CohClass | None = None
        self._chern_inv: CohClass | None = None

    @property
    def parabolic(self) -> tuple[int, ...]:
        return tuple(sorted(self.pd.subset))

    @property
    def is_full_flag(self) -> bool:
        return not self.pd.subset

    @property
    def full_flag(self) -> Space:
        if self.is_full_flag:
            return self
        return make_space(self.rs.label, (), _rs=self.rs)

    def describe(self) -> str:
        p = ",".join(map(str, self.parabolic))
        return f"{self.rs.label}/P{{{p}}}" if p else f"{self.rs.label}/B"

    def element(self, w: WeylElement | str | int) -> int:
        if isinstance(w, WeylElement):
            return w.id
        if isinstance(w, str):
            return self.group.parse(w).id
        return int(w)

    def cell(self, w: WeylElement | str | int) -> int:
        """Validated index of a cell: a minimal coset representative."""
        x = self.element(w)
        if not self.pd.is_min_rep(self.group[x]):
            raise SpaceError(f"not a minimal representative: {self.group[x]}")
        return x

    def word(self, w: int) -> str:
        return format_word(self.group[w].word)

    # -- basic classes ---------------------------------------------------
    def zero(self) -> CohClass:
        return CohClass(self, {})

    def one(self) -> CohClass:
        return CohClass(self, {0: 1})

    def schubert(self, w: int) -> CohClass:
        return CohClass(self, {self.cell(w): 1})

    def point(self) -> CohClass:
        return CohClass(self, {self.top: 1})

    def root_class(self, beta) -> CohClass:
        """Degree-2 class of a root (or any weight-lattice vector in root coordinates)."""
        r = self.rs.rank
        coeffs = {}
        for j in range(r):
            c = sum(self.rs.cartan[j][k] * beta[k] for k in range(r))
            if c:
                s = self.group.simple(j + 1).id
                if s not in self.table._allowed:
                    raise SpaceError("root class is not defined on this G/P")
                coeffs[s] = c
        return CohClass(self, coeffs)

    # -- Poincare duality ------------------------------------------------
    def expected_dual(self, u: int) -> int:
        w0 = self.group.longest_element()
        return self.pd.coset_min_rep(self.group.multiply(w0, self.group[u])).id

    def pd_dual_index(self, u: int) -> int:
        """The v with integral(sigma_u sigma_v) = 1; checked against the table."""
        v = self._pd_dual.get(u)
        if v is None:
            v = self.expected_dual(u)
            if self.table.product(u, v).get(self.top, 0) != 1:
                raise SpaceError(f"Poincare duality check failed at {self.word(u)}")
            self._pd_dual[u] = v
        return v

    def pairing_matrix(self) -> list[list[int]]:
        """integral(sigma_u sigma_v) over the basis, computed from the table."""
        n = len(self.basis)
        out = [[0] * n for _ in range(n)]
        for a, u in enumerate(self.basis):
            for b, v in enumerate(self.basis):
                if self.group.lengths[u] + self.group.lengths[v] == self.dim:
                    out[a][b] = self.table.product(u, v).get(self.top, 0)
        return out

    # -- CSM / SSM -------------------------------------------------------
    def csm_cell(self, w: int, word: Iterable[int] | None = None) -> CohClass:
        """c_SM of the Schubert cell X(w)°, in this space.

        On G/B the recursion follows ``word`` (a reduced word of w) when
        given; otherwise the canonical word, with memoization.
        """
        w = self.cell(w)
        if not self.is_full_flag:
            c = self._csm.get(w)
            if c is None:
                c = parabolic_pushforward(self.full_flag.csm_cell(w), self)
                self._csm[w] = c
            return c
        if word is not None:
            word = tuple(word)
            if self.group.from_word(word).id != w or len(word) != self.group.lengths[w]:
                raise WeylError(f"{format_word(word)} is not a reduced word for {self.word(w)}")
            c = self.point()
            for i in word:
                c = csm_operator(i, c)
            return c
        c = self._csm.get(w)
        if c is not None:
            return c
        if w == 0:
            c = self.point()
        else:
            i = self.group[w].word[-1]
            c = csm_operator(i, self.csm_cell(self.group.rmul[w][i - 1]))
        if not c.is_integral():
            raise SpaceError(f"non-integral CSM class for {self.word(w)}")
        self._csm[w] = c
        return c

    def total_chern(self) -> CohClass:
        if self._chern is None:
            self._chern = total_chern(self)
        return self._chern

    def total_chern_inverse(self) -> CohClass:
        if self._chern_inv is None:
            self._chern_inv = invert_class(self.total_chern())
        return self._chern_inv

    def ssm_cell(self, w: int) -> CohClass:
        w = self.cell(w)
        s = self._ssm.get(w)
        if s is None:
            s = self.csm_cell(w) * self.total_chern_inverse()
            self._ssm[w] = s
        return s

    def opposite_class_index(self, nu: int) -> int:
        """nu' with nu' W_P = w0 nu W_P; the opposite cell of nu is a translate of cell nu'."""
        return self.expected_dual(self.cell(nu))


@lru_cache(maxsize=None)
def _shared(label: str) -> tuple[RootSystem, WeylGroup, SchubertLocalizations]:
    rs = build_root_system(label)
    group = WeylGroup(rs)
    return rs, group, SchubertLocalizations(group)


_SPACES: dict[tuple, Space] = {}


def make_space(label: str, parabolic: Iterable[int] = (), *, _rs: RootSystem | None = None) -> Space:
    """Shared Space for a type label and the generators of W_P."""
    parabolic = tuple(sorted(set(int(i) for i in parabolic)))
    key = (label.strip().upper(), parabolic)
    sp = _SPACES.get(key)
    if sp is None:
        rs, group, loc = _shared(key[0])
        sp = Space(rs, group, loc, parabolic)
        _SPACES[key] = sp
    return sp


def space_from_group(group: WeylGroup, parabolic: Iterable[int] = ()) -> Space:
    """Unshared Space over an existing group (e.g. a custom Cartan matrix)."""
    return Space(group.rs, group, SchubertLocalizations(group), parabolic)


class CohClass:
    """Exact rational combination of Schubert classes of one space."""

    __slots__ = ("space", "coeffs")

    def __init__(self, space: Space, coeffs: Mapping[int, Coeff]):
        self.space = space
        self.coeffs = {w: _norm(c) for w, c in coeffs.items() if c}

    def _check(self, other: CohClass) -> None:
        if other.space is not self.space:
            raise SpaceError("space mismatch")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CohClass):
            return NotImplemented
        return self.space is other.space and self.coeffs == other.coeffs

    def __add__(self, other: CohClass) -> CohClass:
        self._check(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) + c
        return CohClass(self.space, out)

    def __sub__(self, other: CohClass) -> CohClass:
        return self + other.scale(-1)

    def __neg__(self) -> CohClass:
        return self.scale(-1)

    def scale(self, c: Coeff) -> CohClass:
        return CohClass(self.space, {w: v * c for w, v in self.coeffs.items()})

    def __mul__(self, other: CohClass | Coeff) -> CohClass:
        if not isinstance(other, CohClass):
            return self.scale(other)
        self._check(other)
        table = self.space.table
        out: dict[int, Coeff] = {}
        for u, a in self.coeffs.items():
            for v, b in other.coeffs.items():
                ab = a * b
                for w, c in table.product(u, v).items():
                    out[w] = out.get(w, 0) + ab * c
        return CohClass(self.space, out)

    __rmul__ = scale

    def integrate(self) -> Coeff:
        return self.coeffs.get(self.space.top, 0)

    def constant_term(self) -> Coeff:
        return self.coeffs.get(0, 0)

    def component(self, codim: int) -> CohClass:
        lengths = self.space.group.lengths
        return CohClass(self.space, {w: c for w, c in self.coeffs.items() if lengths[w] == codim})

    def lowest_component(self) -> CohClass:
        if not self.coeffs:
            return self
        lengths = self.space.group.lengths
        return self.component(min(lengths[w] for w in self.coeffs))

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs.values())

    def vector(self) -> list[Coeff]:
        return [self.coeffs.get(w, 0) for w in self.space.basis]

    def items(self) -> list[tuple[int, Coeff]]:
        """Nonzero terms in basis (length-lex) order."""
        return [(w, self.coeffs[w]) for w in self.space.basis if w in self.coeffs]

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*[{self.space.word(w)}]" for w, c in self.items())


def integrate(a: CohClass) -> Coeff:
    return a.integrate()


def divided_difference(i: int, a: CohClass) -> CohClass:
    """d_i on H*(G/B): sigma_w -> sigma_{w s_i} if w s_i < w, else 0."""
    sp = a.space
    if not sp.is_full_flag:
        raise SpaceError("G/B only")
    g = sp.group
    out = {}
    for w, c in a.coeffs.items():
        if g[w].root_action[i - 1] < 0:
            out[g.rmul[w][i - 1]] = c
    return CohClass(sp, out)


def csm_operator(i: int, a: CohClass) -> CohClass:
    """T_i(a) = (1 + alpha_i) * d_i(a) - a  on G/B."""
    sp = a.space
    d = divided_difference(i, a)
    alpha = sp.root_class(tuple(int(k == i - 1) for k in range(sp.rs.rank)))
    return d + alpha * d - a


def total_chern(space: Space) -> CohClass:
    """c(T(G/P)) = prod over positive roots outside the Levi of (1 + root class).

    The factors only make sense on G/B, so the product is taken there and the
    result restricted to W^P (it must lie in the pullback of H*(G/P)).
    """
    full = space.full_flag
    sub = space.pd.subset
    c = full.one()
    for beta in space.rs.positive_roots:
        if all(beta[k] == 0 or (k + 1) in sub for k in range(space.rs.rank)):
            continue
        c = c + full.root_class(beta) * c
    if space is full:
        return c
    allowed = set(space.basis)
    stray = [w for w in c.coeffs if w not in allowed]
    if stray:
        raise SpaceError("total Chern class does not descend to G/P")
    return CohClass(space, c.coeffs)


def invert_class(a: CohClass) -> CohClass:
    """Inverse via a truncated geometric series in the nilpotent part."""
    c0 = a.constant_term()
    if not c0:
        raise SpaceError("not invertible")
    inv0 = Fraction(1) / Fraction(c0)
    nil = (a - CohClass(a.space, {0: c0})).scale(-inv0)
    term = a.space.one()
    out = a.space.one()
    for _ in range(a.space.dim):
        term = term * nil
        if not term.coeffs:
            break
        out = out + term
    return out.scale(inv0)


def parabolic_pushforward(a: CohClass, target: Space) -> CohClass:
    """Pushforward along G/B -> G/P, computed on the cycle basis.

    sigma_u is Poincare dual to the Schubert variety X_{u*} with u* the dual
    index of u; it maps to X_{u*} in G/P when u* is in W^P and to 0 otherwise.
    """
    src = a.space
    if not src.is_full_flag:
        raise SpaceError("pushforward source must be G/B")
    if target.is_full_flag:
        return CohClass(target, a.coeffs) if target is src else CohClass(target, dict(a.coeffs))
    allowed = set(target.basis)
    out: dict[int, Coeff] = {}
    for u, c in a.coeffs.items():
        cycle = src.pd_dual_index(u)
        if cycle in allowed:
            w = target.pd_dual_index(cycle)
            out[w] = out.get(w, 0) + c
    return CohClass(target, out)


def csm_cell(space: Space, w) -> CohClass:
    return space.csm_cell(space.cell(w))


def ssm_cell(space: Space, w) -> CohClass:
    return space.ssm_cell(space.cell(w))


def opposite_class_index(space: Space, nu) -> int:
    return space.opposite_class_index(nu)
