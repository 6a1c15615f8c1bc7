"""Euler characteristics of generic intersections of Schubert cells.

For cells mu_1, ..., mu_n of G/P and generic translates,

    chi(X(mu_1)° ∩ g_2 X(mu_2)° ∩ ... ∩ g_n X(mu_n)°) = ∫ c(TX) * prod_i s_SM(X(mu_i)°),

and the SSM structure constants are the n = 3 case with the third cell
replaced by the opposite cell nu' of nu.  The sweeps below check the sign
(-1)^d chi >= 0 with d the expected dimension of the intersection.
"""

from __future__ import annotations

import itertools
import logging
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .classes import CohClass, Space
from .weyl import invert_matrix

log = logging.getLogger(__name__)


class EulerError(ArithmeticError):
    pass


class DimensionContradiction(EulerError):
    pass


def _as_int(x, what: str) -> int:
    if isinstance(x, Fraction):
        if x.denominator != 1:
            raise EulerError(f"non-integral {what}: {x}")
        return x.numerator
    return int(x)


# --------------------------------------------------------------------------
# Single computations
# --------------------------------------------------------------------------

def richardson_chi(space: Space, lam, nu) -> int:
    """χ(X(λ)° ∩ X^(ν)°) = ∫ c_SM(X(λ)°) s_SM(X^(ν)°)."""
    lam, nu = space.cell(lam), space.cell(nu)
    opp = space.opposite_class_index(nu)
    return _as_int((space.csm_cell(lam) * space.ssm_cell(opp)).integrate(), "Richardson χ")


def expected_dim(space: Space, cells: Sequence) -> int:
    if not cells:
        raise ValueError("need at least one cell")
    lengths = space.group.lengths
    return space.dim - sum(space.dim - lengths[space.cell(c)] for c in cells)


def chi_multi_intersection(space: Space, cells: Sequence) -> int:
    if not cells:
        raise ValueError("need at least one cell")
    prod = space.total_chern()
    for c in cells:
        prod = prod * space.ssm_cell(c)
    return _as_int(prod.integrate(), "Euler characteristic")


def signed_E(space: Space, lam, mu, nuprime) -> int:
    """(-1)^d χ for the generic triple intersection; 0 when d < 0."""
    cells = [lam, mu, nuprime]
    d = expected_dim(space, cells)
    chi = chi_multi_intersection(space, cells)
    if d < 0:
        if chi:
            raise DimensionContradiction(f"dimension contradiction: d={d}, χ={chi}")
        return 0
    return (-1) ** d * chi


class _SsmBasis:
    """Inverse of the SSM-basis matrix, for solving in that basis."""

    def __init__(self, space: Space):
        self.space = space
        rows = [space.ssm_cell(nu).vector() for nu in space.basis]
        self.inverse = invert_matrix(rows)

    def coordinates(self, a: CohClass) -> dict[int, Fraction]:
        vec = a.vector()
        n = len(vec)
        out = {}
        for k, nu in enumerate(self.space.basis):
            # a = sum_k x_k rows[k]  =>  x = vec * inverse
            out[nu] = sum((vec[j] * self.inverse[j][k] for j in range(n) if vec[j]), Fraction(0))
        return out


_SSM_BASES: dict[int, _SsmBasis] = {}


def ssm_basis(space: Space) -> _SsmBasis:
    b = _SSM_BASES.get(id(space))
    if b is None or b.space is not space:
        b = _SsmBasis(space)
        _SSM_BASES[id(space)] = b
    return b


def structure_constants(space: Space, lam, mu) -> dict[int, int]:
    """a^ν_{λ,μ} for all ν, computed two ways which must agree.

    (i) solve s_λ s_μ = Σ a^ν s_ν in the SSM basis;
    (ii) a^ν = ∫ s_λ s_μ c_SM(X^(ν)°), with the opposite cell as a translate of ν'.
    """
    lam, mu = space.cell(lam), space.cell(mu)
    prod = space.ssm_cell(lam) * space.ssm_cell(mu)
    solved = ssm_basis(space).coordinates(prod)
    out = {}
    for nu in space.basis:
        paired = (prod * space.csm_cell(space.opposite_class_index(nu))).integrate()
        if Fraction(paired) != solved[nu]:
            raise EulerError(f"structure constant routes disagree at ν={space.word(nu)}: "
                             f"{solved[nu]} vs {paired}")
        val = _as_int(paired, "structure constant")
        if val:
            out[nu] = val
    return out


# --------------------------------------------------------------------------
# Reports
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class TripleEntry:
    lam: int
    mu: int
    nuprime: int
    a: int
    d: int
    E: int
    status: str  # ok | violation | empty


@dataclass
class TripleReport:
    space: str
    words: dict[int, str]
    entries: list[TripleEntry] = field(default_factory=list)

    @property
    def violations(self) -> list[TripleEntry]:
        return [e for e in self.entries if e.status == "violation"]


@dataclass
class MatrixReport:
    space: str
    labels: list[str]
    matrix: list[list[int]]
    violations: list[tuple[str, str, int]]


@dataclass(frozen=True)
class TupleEntry:
    cells: tuple[int, ...]
    chi: int
    d: int
    signed: int
    status: str


@dataclass
class TupleReport:
    space: str
    n: int
    words: dict[int, str]
    entries: list[TupleEntry]
    sampled: bool = False

    @property
    def violations(self) -> list[TupleEntry]:
        return [e for e in self.entries if e.status == "violation"]


def verify_orthogonality(space: Space) -> MatrixReport:
    labels = [space.word(w) for w in space.basis]
    matrix, bad = [], []
    for lam in space.basis:
        row = []
        for nu in space.basis:
            x = richardson_chi(space, lam, nu)
            row.append(x)
            if x != int(lam == nu):
                bad.append((space.word(lam), space.word(nu), x))
        matrix.append(row)
    return MatrixReport(space.describe(), labels, matrix, bad)


# -- sweep machinery: plain dicts so workers need no Space ------------------

@dataclass
class _SweepData:
    basis: tuple[int, ...]
    lengths: tuple[int, ...]
    dim: int
    products: dict[tuple[int, int], dict[int, int]]
    dual: dict[int, int]
    chern: dict[int, Fraction]
    ssm: dict[int, dict[int, Fraction]]
    csm: dict[int, dict[int, int]]


def _sweep_data(space: Space) -> _SweepData:
    space.table.build_all()
    return _SweepData(
        basis=space.basis,
        lengths=tuple(space.group.lengths),
        dim=space.dim,
        products=space.table.constants,
        dual={u: space.pd_dual_index(u) for u in space.basis},
        chern=dict(space.total_chern().coeffs),
        ssm={w: dict(space.ssm_cell(w).coeffs) for w in space.basis},
        csm={w: dict(space.csm_cell(w).coeffs) for w in space.basis},
    )


def _cup(x: dict, y: dict, products: dict) -> dict:
    out: dict = {}
    for u, a in x.items():
        for v, b in y.items():
            row = products[(u, v) if u <= v else (v, u)]
            if row:
                ab = a * b
                for w, c in row.items():
                    out[w] = out.get(w, 0) + ab * c
    return {w: c for w, c in out.items() if c}


def _pair(x: dict, y: dict, dual: dict) -> Fraction:
    """∫ x*y via the duality sigma_u <-> sigma_{u*}."""
    return sum((c * y.get(dual[u], 0) for u, c in x.items()), Fraction(0))


_DATA: _SweepData | None = None


def _init_worker(data: _SweepData) -> None:
    global _DATA
    _DATA = data


def _triple_rows(lams: Sequence[int]) -> list[tuple]:
    data = _DATA
    assert data is not None
    rows = []
    for lam in lams:
        c_s = _cup(data.chern, data.ssm[lam], data.products)
        for mu in data.basis:
            ss = _cup(data.ssm[lam], data.ssm[mu], data.products)
            css = _cup(c_s, data.ssm[mu], data.products)
            for nup in data.basis:
                a = _pair(ss, data.csm[nup], data.dual)
                chi = _pair(css, data.ssm[nup], data.dual)
                d = data.dim - (3 * data.dim - data.lengths[lam] - data.lengths[mu] - data.lengths[nup])
                rows.append((lam, mu, nup, a, chi, d))
    return rows


def _run_chunks(func, chunks: list, data: _SweepData, jobs: int) -> list:
    if jobs <= 1 or len(chunks) <= 1:
        _init_worker(data)
        return [func(c) for c in chunks]
    with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(data,)) as ex:
        return list(ex.map(func, chunks))


def _chunked(seq: Sequence, parts: int) -> list[list]:
    parts = max(1, min(parts, len(seq)))
    return [list(seq[k::parts]) for k in range(parts)]


def default_jobs() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


def verify_positivity(space: Space, jobs: int = 1) -> TripleReport:
    """Exhaustive sweep over all (λ, μ, ν') in W^P."""
    data = _sweep_data(space)
    chunks = _chunked(space.basis, jobs * 4 if jobs > 1 else 1)
    results = _run_chunks(_triple_rows, chunks, data, jobs)
    rows = sorted(itertools.chain.from_iterable(results),
                  key=lambda r: (space.basis.index(r[0]), space.basis.index(r[1]), space.basis.index(r[2])))
    report = TripleReport(space.describe(), {w: space.word(w) for w in space.basis})
    for lam, mu, nup, a, chi, d in rows:
        a = _as_int(a, "structure constant")
        chi = _as_int(chi, "Euler characteristic")
        if d < 0:
            E = 0
            status = "violation" if (a or chi) else "empty"
        else:
            E = (-1) ** d * chi
            status = "violation" if (E < 0 or a != chi) else "ok"
        report.entries.append(TripleEntry(lam, mu, nup, a, d, E, status))
    return report


def _tuple_rows(tuples: Sequence[tuple[int, ...]]) -> list[tuple]:
    data = _DATA
    assert data is not None
    cache: dict[tuple[int, ...], dict] = {(): data.chern}
    rows = []
    for t in tuples:
        k = len(t) - 1
        while t[:k] not in cache:
            k -= 1
        for j in range(k, len(t) - 1):
            cache[t[:j + 1]] = _cup(cache[t[:j]], data.ssm[t[j]], data.products)
        last = cache[t[:-1]]
        chi = _pair(last, data.ssm[t[-1]], data.dual)
        d = data.dim - sum(data.dim - data.lengths[x] for x in t)
        rows.append((t, chi, d))
    return rows


def verify_nfold_sign(space: Space, n: int = 3, jobs: int = 1,
                      max_tuples: int | None = None, seed: int = 0) -> TupleReport:
    """(-1)^d χ >= 0 over all multisets of n cells (sampled above ``max_tuples``).

    The product is symmetric, so multisets cover every ordered tuple.  For
    n = 2 each value must also match the Richardson pattern: 1 exactly when
    λ is the opposite index of μ.
    """
    if n < 1:
        raise ValueError("n must be positive")
    data = _sweep_data(space)
    basis = space.basis
    if max_tuples is None:
        max_tuples = max(len(basis) ** 4, 1)
    tuples = list(itertools.combinations_with_replacement(basis, n))
    sampled = False
    if len(tuples) > max_tuples:
        rng = random.Random(seed)
        tuples = sorted(rng.sample(tuples, max_tuples))
        sampled = True
    chunks = _chunked(tuples, jobs * 4 if jobs > 1 else 1)
    # keep prefixes together so the product cache stays useful
    if jobs > 1:
        groups: dict[int, list] = {}
        for t in tuples:
            groups.setdefault(t[0], []).append(t)
        chunks = _chunked(list(groups.values()), jobs * 4)
        chunks = [list(itertools.chain.from_iterable(c)) for c in chunks]
    results = _run_chunks(_tuple_rows, chunks, data, jobs)
    rows = sorted(itertools.chain.from_iterable(results), key=lambda r: [basis.index(x) for x in r[0]])
    entries = []
    for t, chi, d in rows:
        chi = _as_int(chi, "Euler characteristic")
        signed = (-1) ** d * chi if d >= 0 else 0
        bad = signed < 0 or (d < 0 and chi != 0)
        if n == 2:
            expect = int(t[0] == space.opposite_class_index(t[1]))
            bad = bad or signed != expect
        if n >= 2:
            status = "violation" if bad else ("empty" if d < 0 else "ok")
        else:
            status = "violation" if chi != 1 else "ok"
        entries.append(TupleEntry(t, chi, d, signed, status))
    return TupleReport(space.describe(), n, {w: space.word(w) for w in basis}, entries, sampled)
