"""Root systems, Weyl groups, Bruhat order and parabolic quotients.

Conventions used throughout the package:

* ``cartan[i][j] = <alpha_i^vee, alpha_j>``, so that
  ``s_i(alpha_j) = alpha_j - cartan[i][j] * alpha_i``.
* Roots are integer tuples in the simple-root basis.
* ``alpha_j = sum_i cartan[i][j] * omega_i`` (roots in fundamental weights).
* A Weyl element is identified by its signed permutation of the positive
  roots: entry ``k`` is ``+(m+1)`` or ``-(m+1)`` when ``w(beta_k) = +/- beta_m``.

Simple reflections are 1-indexed in words and in user-facing text ("s1s2")
and 0-indexed internally.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

Root = tuple[int, ...]
SignedPerm = tuple[int, ...]

DEFAULT_GROUP_BOUND = 50_000
BRUHAT_MATRIX_BOUND = 2_000

_WORD_RE = re.compile(r"s(\d+)")


class WeylError(ValueError):
    """Bad root-system input or misuse of group elements."""


# --------------------------------------------------------------------------
# Cartan matrices
# --------------------------------------------------------------------------

def _type_a(n: int) -> list[list[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def cartan_matrix(label: str) -> list[list[int]]:
    """Return the Cartan matrix for a Bourbaki label such as ``"B3"``.

    >>> cartan_matrix("B2")
    [[2, -1], [-2, 2]]
    >>> cartan_matrix("G2")
    [[2, -3], [-1, 2]]
    """
    m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", label)
    if not m:
        raise WeylError(f"unknown type: {label!r}")
    kind, n = m.group(1).upper(), int(m.group(2))
    if kind == "A" and n >= 1:
        return _type_a(n)
    if kind == "B" and n >= 2:
        a = _type_a(n)
        a[n - 1][n - 2] = -2  # alpha_n short
        return a
    if kind == "C" and n >= 2:
        a = _type_a(n)
        a[n - 2][n - 1] = -2  # alpha_n long
        return a
    if kind == "D" and n >= 4:
        a = _type_a(n)
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
        return a
    if kind == "E" and n in (6, 7, 8):
        # Bourbaki numbering: 1-3-4-5-6(-7-8) with 2 attached to 4
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            a[i][i] = 2
        edges = [(1, 3), (3, 4), (4, 5), (2, 4)] + [(k, k + 1) for k in range(5, n)]
        for i, j in edges:
            a[i - 1][j - 1] = a[j - 1][i - 1] = -1
        return a
    if kind == "F" and n == 4:
        a = _type_a(4)
        a[2][1] = -2  # alpha_1, alpha_2 long; alpha_3, alpha_4 short
        return a
    if kind == "G" and n == 2:
        return [[2, -3], [-1, 2]]  # alpha_1 short
    raise WeylError(f"unknown type: {label!r}")


def _det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    a = [list(map(Fraction, row)) for row in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return det


def invert_matrix(m: Sequence[Sequence[int | Fraction]]) -> list[list[Fraction]]:
    """Exact Gauss-Jordan inverse."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise WeylError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def _symmetrizer(a: Sequence[Sequence[int]]) -> list[Fraction]:
    """Root lengths squared d_i with a[i][j] * d_i == a[j][i] * d_j."""
    n = len(a)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if j == i or a[i][j] == 0:
                    continue
                dj = a[i][j] * d[i] / a[j][i]
                if d[j] is None:
                    d[j] = dj
                    queue.append(j)
                elif d[j] != dj:
                    raise WeylError("not finite type: Cartan matrix is not symmetrizable")
    # scale is irrelevant: only ratios of root lengths are ever used
    return [x * 2 for x in d]  # type: ignore[operator]


def _check_finite_type(a: Sequence[Sequence[int]]) -> list[Fraction]:
    n = len(a)
    if n == 0 or any(len(row) != n for row in a):
        raise WeylError("not finite type: Cartan matrix must be square and nonempty")
    for i in range(n):
        if a[i][i] != 2:
            raise WeylError("not finite type: diagonal entries must be 2")
        for j in range(n):
            if i != j and (a[i][j] > 0 or (a[i][j] == 0) != (a[j][i] == 0)):
                raise WeylError("not finite type: bad off-diagonal entries")
    d = _symmetrizer(a)
    sym = [[a[i][j] * d[i] / 2 for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        if _det([row[:k] for row in sym[:k]]) <= 0:
            raise WeylError("not finite type: symmetrized form is not positive definite")
    return d


# --------------------------------------------------------------------------
# Root systems
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RootSystem:
    label: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Root, ...]
    # row j gives alpha_j in the fundamental-weight basis (transpose of cartan)
    fundamental_weight_pairing: tuple[tuple[Fraction, ...], ...]
    root_lengths: tuple[Fraction, ...] = field(repr=False, default=())

    def reflect(self, i: int, beta: Sequence[int]) -> Root:
        """s_i(beta) for a 0-indexed simple reflection."""
        c = sum(self.cartan[i][j] * beta[j] for j in range(self.rank))
        out = list(beta)
        out[i] -= c
        return tuple(out)

    @cached_property
    def root_index(self) -> dict[Root, int]:
        return {r: k for k, r in enumerate(self.positive_roots)}

    @cached_property
    def omega_in_roots(self) -> tuple[tuple[Fraction, ...], ...]:
        """Row k: the fundamental weight omega_k in the simple-root basis."""
        inv = invert_matrix(self.cartan)
        return tuple(tuple(inv[j][k] for j in range(self.rank)) for k in range(self.rank))

    def inner(self, x: Sequence[int | Fraction], y: Sequence[int | Fraction]) -> Fraction:
        """W-invariant form on the root lattice."""
        r = self.rank
        return sum((Fraction(x[i]) * y[j] * self.cartan[i][j] * self.root_lengths[i] / 2
                    for i in range(r) for j in range(r)), Fraction(0))

    def coroot_coefficient(self, beta: Sequence[int], i: int) -> Fraction:
        """<omega_i, beta^vee>: coefficient of alpha_i^vee in beta^vee."""
        return Fraction(beta[i]) * self.root_lengths[i] / self.inner(beta, beta)

    def height(self, beta: Sequence[int]) -> int:
        return sum(beta)


def build_root_system(label_or_matrix: str | Sequence[Sequence[int]],
                      label: str | None = None) -> RootSystem:
    """Build a RootSystem from a type label or a finite-type Cartan matrix.

    >>> build_root_system("A2").positive_roots
    ((1, 0), (0, 1), (1, 1))
    """
    if isinstance(label_or_matrix, str):
        name = label_or_matrix.strip().upper()
        a = cartan_matrix(name)
    else:
        a = [list(map(int, row)) for row in label_or_matrix]
        name = label or "custom"
    d = _check_finite_type(a)
    n = len(a)
    cartan = tuple(tuple(row) for row in a)

    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        beta = queue.popleft()
        for i in range(n):
            c = sum(a[i][j] * beta[j] for j in range(n))
            gamma = list(beta)
            gamma[i] -= c
            gamma = tuple(gamma)
            if all(x >= 0 for x in gamma) and gamma not in seen:
                seen.add(gamma)
                queue.append(gamma)
    roots = tuple(sorted(seen, key=lambda r: (sum(r), [-x for x in r])))
    pairing = tuple(tuple(Fraction(a[i][j]) for i in range(n)) for j in range(n))
    return RootSystem(name, n, cartan, roots, pairing, tuple(d))


def parse_cartan_json(text: str) -> list[list[int]]:
    import json

    data = json.loads(text)
    if not (isinstance(data, list) and all(isinstance(r, list) for r in data)):
        raise WeylError("Cartan matrix must be a JSON array of integer arrays")
    return [[int(x) for x in row] for row in data]


# --------------------------------------------------------------------------
# Weyl groups
# --------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class WeylElement:
    id: int
    word: tuple[int, ...]  # 1-indexed simple reflections
    length: int
    root_action: SignedPerm
    group: WeylGroup = field(repr=False, compare=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.root_action == other.root_action and self.group.rs == other.group.rs

    def __hash__(self) -> int:
        return hash(self.root_action)

    def __mul__(self, other: WeylElement) -> WeylElement:
        return self.group.multiply(self, other)

    def __str__(self) -> str:
        return format_word(self.word)


def format_word(word: Iterable[int]) -> str:
    text = "".join(f"s{i}" for i in word)
    return text or "e"


def parse_word(text: str) -> tuple[int, ...]:
    """Parse ``"s1s2s1"`` (or ``"e"``/``""`` for the identity) into letters."""
    t = text.replace(" ", "").replace("*", "")
    if t in ("", "e", "1", "id"):
        return ()
    if not re.fullmatch(r"(s\d+)+", t):
        raise WeylError(f"cannot parse word {text!r}")
    return tuple(int(x) for x in _WORD_RE.findall(t))


def _compose(u: SignedPerm, v: SignedPerm) -> SignedPerm:
    """Signed permutation of u*v (apply v first)."""
    out = []
    for x in v:
        y = u[abs(x) - 1]
        out.append(y if x > 0 else -y)
    return tuple(out)


class WeylGroup:
    """The finite Weyl group of a root system, fully enumerated.

    Elements are listed by length and then by their lexicographically least
    reduced word; index 0 is the identity.
    """

    def __init__(self, rs: RootSystem, bound: int = DEFAULT_GROUP_BOUND):
        self.rs = rs
        self.rank = rs.rank
        idx = rs.root_index
        self.simple_perms: list[SignedPerm] = []
        for i in range(rs.rank):
            perm = []
            for beta in rs.positive_roots:
                gamma = rs.reflect(i, beta)
                if gamma in idx:
                    perm.append(idx[gamma] + 1)
                else:
                    perm.append(-(idx[tuple(-x for x in gamma)] + 1))
            self.simple_perms.append(tuple(perm))
        self._enumerate(bound)

    def _enumerate(self, bound: int) -> None:
        r = self.rank
        identity = tuple(range(1, len(self.rs.positive_roots) + 1))
        words: dict[SignedPerm, tuple[int, ...]] = {identity: ()}
        levels = [[identity]]
        total = 1
        while True:
            nxt: dict[SignedPerm, tuple[int, ...]] = {}
            for perm in levels[-1]:
                base = words[perm]
                for i in range(r):
                    # right multiplication by s_i raises length iff w(alpha_i) > 0
                    if perm[i] < 0:
                        continue
                    q = _compose(perm, self.simple_perms[i])
                    cand = base + (i + 1,)
                    if q not in nxt or cand < nxt[q]:
                        nxt[q] = cand
            if not nxt:
                break
            total += len(nxt)
            if total > bound:
                raise WeylError(f"group too large: more than {bound} elements")
            words.update(nxt)
            levels.append(sorted(nxt, key=lambda p: nxt[p]))
        self.elements: list[WeylElement] = []
        for length, level in enumerate(levels):
            for perm in level:
                self.elements.append(WeylElement(len(self.elements), words[perm], length, perm, self))
        self._index = {w.root_action: w.id for w in self.elements}
        n = len(self.elements)
        self.lengths = [w.length for w in self.elements]
        self.rmul = [[self._index[_compose(w.root_action, s)] for s in self.simple_perms]
                     for w in self.elements]
        self.lmul = [[self._index[_compose(s, w.root_action)] for s in self.simple_perms]
                     for w in self.elements]
        self.inverse_ids = [0] * n
        for w in self.elements:
            inv = [0] * len(w.root_action)
            for k, x in enumerate(w.root_action):
                inv[abs(x) - 1] = (k + 1) if x > 0 else -(k + 1)
            self.inverse_ids[w.id] = self._index[tuple(inv)]
        self._bruhat_down: list[int] | None = None

    # ------------------------------------------------------------------
    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i: int) -> WeylElement:
        return self.elements[i]

    @property
    def identity(self) -> WeylElement:
        return self.elements[0]

    def longest_element(self) -> WeylElement:
        return self.elements[-1]

    def _check(self, *ws: WeylElement) -> None:
        for w in ws:
            if w.group is not self and w.group.rs != self.rs:
                raise WeylError("group mismatch")

    def simple(self, i: int) -> WeylElement:
        """The simple reflection s_i (1-indexed)."""
        return self.elements[self.rmul[0][i - 1]]

    def from_word(self, word: Iterable[int]) -> WeylElement:
        w = 0
        for i in word:
            if not 1 <= i <= self.rank:
                raise WeylError(f"simple reflection s{i} out of range for rank {self.rank}")
            w = self.rmul[w][i - 1]
        return self.elements[w]

    def parse(self, text: str) -> WeylElement:
        return self.from_word(parse_word(text))

    def by_perm(self, perm: SignedPerm) -> WeylElement:
        return self.elements[self._index[perm]]

    def multiply(self, u: WeylElement, v: WeylElement) -> WeylElement:
        self._check(u, v)
        return self.elements[self._index[_compose(u.root_action, v.root_action)]]

    def inverse(self, w: WeylElement) -> WeylElement:
        self._check(w)
        return self.elements[self.inverse_ids[w.id]]

    def right_descents(self, w: WeylElement) -> list[int]:
        """1-indexed i with l(w s_i) < l(w)."""
        return [i + 1 for i in range(self.rank) if w.root_action[i] < 0]

    def act_on_root(self, w: WeylElement, beta: Sequence[int | Fraction]) -> tuple:
        """w(beta) for any vector in the simple-root basis (linear extension)."""
        images = [self.simple_root_image(w, j) for j in range(self.rank)]
        out = [0] * self.rank
        for j, c in enumerate(beta):
            if c:
                for k in range(self.rank):
                    out[k] += c * images[j][k]
        return tuple(out)

    def simple_root_image(self, w: WeylElement, j: int) -> Root:
        """w(alpha_j) for 0-indexed j, in simple-root coordinates."""
        x = w.root_action[j]
        beta = self.rs.positive_roots[abs(x) - 1]
        return beta if x > 0 else tuple(-c for c in beta)

    def reflection(self, beta: Root) -> WeylElement:
        """The reflection t_beta for a positive root beta."""
        return self.elements[self._reflections[beta]]

    @cached_property
    def _reflections(self) -> dict[Root, int]:
        out: dict[Root, int] = {}
        for u in self.elements:
            for i in range(self.rank):
                beta = self.simple_root_image(u, i)
                if any(c < 0 for c in beta):
                    beta = tuple(-c for c in beta)
                if beta not in out:
                    t = _compose(_compose(u.root_action, self.simple_perms[i]),
                                 self.elements[self.inverse_ids[u.id]].root_action)
                    out[beta] = self._index[t]
            if len(out) == len(self.rs.positive_roots):
                break
        return out

    # ------------------------------------------------------------------
    # Bruhat order
    # ------------------------------------------------------------------

    def _down_set(self, v: int) -> int:
        """Bitset of {u : u <= v}, via down(v) = down(vs) | down(vs)*s for a descent s."""
        if v == 0:
            return 1
        i = next(k for k in range(self.rank) if self.elements[v].root_action[k] < 0)
        vs = self.rmul[v][i]
        below = self._bruhat_down[vs] if self._bruhat_down is not None else self._down_set(vs)
        out = below
        x = below
        while x:
            low = x & -x
            u = low.bit_length() - 1
            out |= 1 << self.rmul[u][i]
            x ^= low
        return out

    def _ensure_bruhat(self) -> None:
        if self._bruhat_down is not None or len(self) > BRUHAT_MATRIX_BOUND:
            return
        down: list[int] = [0] * len(self)
        self._bruhat_down = down
        for w in self.elements:  # length order: descents already filled
            down[w.id] = self._down_set(w.id)

    def bruhat_leq(self, u: WeylElement, v: WeylElement) -> bool:
        self._check(u, v)
        return self.bruhat_leq_ids(u.id, v.id)

    def bruhat_leq_ids(self, u: int, v: int) -> bool:
        if self.lengths[u] > self.lengths[v]:
            return False
        self._ensure_bruhat()
        if self._bruhat_down is not None:
            return bool(self._bruhat_down[v] >> u & 1)
        return self._leq_recursive(u, v)

    def _leq_recursive(self, u: int, v: int) -> bool:
        # Z-property: for a right descent s of v, u <= v iff min(u, us) <= vs
        while True:
            if self.lengths[u] > self.lengths[v]:
                return False
            if v == 0:
                return u == 0
            i = next(k for k in range(self.rank) if self.elements[v].root_action[k] < 0)
            us = self.rmul[u][i]
            if self.lengths[us] < self.lengths[u]:
                u = us
            v = self.rmul[v][i]

    def up_set(self, u: int) -> list[int]:
        return [v for v in range(len(self)) if self.bruhat_leq_ids(u, v)]


def enumerate_weyl(rs: RootSystem, bound: int = DEFAULT_GROUP_BOUND) -> list[WeylElement]:
    return WeylGroup(rs, bound).elements


def subword_leq(group: WeylGroup, u: WeylElement, v: WeylElement) -> bool:
    """Bruhat order by the subword criterion (brute force, for cross-checks)."""
    word = v.word
    target = u.root_action
    n = len(word)
    for mask in range(1 << n):
        if bin(mask).count("1") != u.length:
            continue
        w = 0
        for k in range(n):
            if mask >> k & 1:
                w = group.rmul[w][word[k] - 1]
        if group.elements[w].root_action == target:
            return True
    return False


# --------------------------------------------------------------------------
# Parabolic data
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ParabolicData:
    subset: frozenset[int]  # 1-indexed generators of W_P
    wp_elements: tuple[int, ...]
    min_reps: tuple[int, ...]
    dim_gp: int
    group: WeylGroup = field(repr=False, compare=False)

    def coset_min_rep(self, w: WeylElement) -> WeylElement:
        g = self.group
        x = w.id
        changed = True
        while changed:
            changed = False
            for i in self.subset:
                if g.elements[x].root_action[i - 1] < 0:
                    x = g.rmul[x][i - 1]
                    changed = True
        return g.elements[x]

    def is_min_rep(self, w: WeylElement) -> bool:
        return all(w.root_action[i - 1] > 0 for i in self.subset)

    @property
    def is_full_flag(self) -> bool:
        return not self.subset


def parabolic_data(group: WeylGroup, subset: Iterable[int]) -> ParabolicData:
    """W_P, W^P and dim G/P for the parabolic generated by ``subset`` (1-indexed)."""
    sub = frozenset(int(i) for i in subset)
    for i in sub:
        if not 1 <= i <= group.rank:
            raise WeylError(f"parabolic index {i} out of range for rank {group.rank}")
    reps = []
    for w in group.elements:
        descents = {i + 1 for i in range(group.rank) if w.root_action[i] < 0}
        if not descents & sub:
            reps.append(w.id)
    # W_P: closure of generators
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for i in sub:
                y = group.rmul[x][i - 1]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    wp = sorted(seen)
    dim = max(group.lengths[x] for x in reps)
    return ParabolicData(sub, tuple(wp), tuple(reps), dim, group)
