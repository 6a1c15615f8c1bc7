"""Exact sparse polynomials in the simple roots alpha_1, ..., alpha_r.

A polynomial maps exponent tuples to nonzero rationals.  Coefficients are
kept as ``int`` whenever they are integral and as ``Fraction`` otherwise, so
the common integral case stays on the fast path.  The zero polynomial has no
terms.

  alpha_1^2 * alpha_2 - 3   ->   {(2, 1): 1, (0, 0): -3}
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Exponent = tuple[int, ...]
Coeff = Union[int, Fraction]


class PolyError(ArithmeticError):
    pass


class NotDivisible(PolyError):
    pass


def _norm(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _div(a: Coeff, b: Coeff) -> Coeff:
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r == 0:
            return q
    return _norm(Fraction(a) / b)


def _grlex_key(e: Exponent) -> tuple[int, Exponent]:
    return (sum(e), e)


class RootPoly:
    """Immutable sparse polynomial over Q in ``rank`` indeterminates."""

    __slots__ = ("rank", "terms", "_hash")

    def __init__(self, rank: int, terms: Mapping[Exponent, Coeff] | None = None, *, _trusted=False):
        self.rank = rank
        if terms is None:
            self.terms: dict[Exponent, Coeff] = {}
        elif _trusted:
            self.terms = terms  # type: ignore[assignment]
        else:
            clean = {}
            for e, c in terms.items():
                if len(e) != rank:
                    raise PolyError(f"exponent {e} has wrong length for rank {rank}")
                c = _norm(c if isinstance(c, (int, Fraction)) else Fraction(c))
                if c:
                    clean[tuple(e)] = c
            self.terms = clean
        self._hash = None

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, rank: int) -> RootPoly:
        return cls(rank, {}, _trusted=True)

    @classmethod
    def const(cls, rank: int, c: Coeff) -> RootPoly:
        c = _norm(c)
        return cls(rank, {(0,) * rank: c} if c else {}, _trusted=True)

    @classmethod
    def var(cls, rank: int, i: int) -> RootPoly:
        """The simple root alpha_{i+1} (0-indexed i)."""
        e = [0] * rank
        e[i] = 1
        return cls(rank, {tuple(e): 1}, _trusted=True)

    @classmethod
    def linear(cls, coords: Sequence[Coeff]) -> RootPoly:
        """sum_i coords[i] * alpha_i."""
        r = len(coords)
        terms = {}
        for i, c in enumerate(coords):
            if c:
                e = [0] * r
                e[i] = 1
                terms[tuple(e)] = _norm(c)
        return cls(r, terms, _trusted=True)

    # -- basic queries ---------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RootPoly):
            return self.rank == other.rank and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == RootPoly.const(self.rank, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rank, frozenset(self.terms.items())))
        return self._hash

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def eval_zero(self) -> Coeff:
        """Constant term (all alpha_i set to 0)."""
        return self.terms.get((0,) * self.rank, 0)

    def _check(self, other: RootPoly) -> None:
        if self.rank != other.rank:
            raise PolyError(f"rank mismatch: {self.rank} vs {other.rank}")

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other: RootPoly | Coeff) -> RootPoly:
        if not isinstance(other, RootPoly):
            other = RootPoly.const(self.rank, other)
        self._check(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _norm(v)
            else:
                out.pop(e, None)
        return RootPoly(self.rank, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> RootPoly:
        return RootPoly(self.rank, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other: RootPoly | Coeff) -> RootPoly:
        if not isinstance(other, RootPoly):
            other = RootPoly.const(self.rank, other)
        self._check(other)
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) - c
            if v:
                out[e] = _norm(v)
            else:
                out.pop(e, None)
        return RootPoly(self.rank, out, _trusted=True)

    def __rsub__(self, other: Coeff) -> RootPoly:
        return RootPoly.const(self.rank, other) - self

    def scale(self, c: Coeff) -> RootPoly:
        c = _norm(c)
        if not c:
            return RootPoly.zero(self.rank)
        return RootPoly(self.rank, {e: _norm(v * c) for e, v in self.terms.items()}, _trusted=True)

    def __mul__(self, other: RootPoly | Coeff) -> RootPoly:
        if not isinstance(other, RootPoly):
            return self.scale(other)
        self._check(other)
        if not self.terms or not other.terms:
            return RootPoly.zero(self.rank)
        out: dict[Exponent, Coeff] = {}
        r = range(self.rank)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple([e1[k] + e2[k] for k in r])
                out[e] = out.get(e, 0) + c1 * c2
        return RootPoly(self.rank, {e: _norm(c) for e, c in out.items() if c}, _trusted=True)

    def __rmul__(self, other: Coeff) -> RootPoly:
        return self.scale(other)

    def __pow__(self, n: int) -> RootPoly:
        out = RootPoly.const(self.rank, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def truncate(self, bound: int) -> RootPoly:
        """Drop every term of degree greater than ``bound``."""
        return RootPoly(self.rank, {e: c for e, c in self.terms.items() if sum(e) <= bound},
                        _trusted=True)

    def homogeneous_part(self, deg: int) -> RootPoly:
        return RootPoly(self.rank, {e: c for e, c in self.terms.items() if sum(e) == deg},
                        _trusted=True)

    def exact_divide(self, q: RootPoly) -> RootPoly:
        """Return r with self == q * r, or raise NotDivisible.

        Multivariate division by a single divisor in graded-lex order.  If q
        divides p the remainder's leading term is always divisible by LT(q),
        so the first failure proves non-divisibility.
        """
        self._check(q)
        if not q.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return RootPoly.zero(self.rank)
        lead = max(q.terms, key=_grlex_key)
        lc = q.terms[lead]
        tail = [(e, c) for e, c in q.terms.items() if e != lead]
        if not tail:
            return self._divide_monomial(lead, lc)
        rem = dict(self.terms)
        heap = [(-sum(e), tuple(-x for x in e)) for e in rem]
        heapq.heapify(heap)
        quot: dict[Exponent, Coeff] = {}
        r = range(self.rank)
        while heap:
            _, neg = heapq.heappop(heap)
            e = tuple(-x for x in neg)
            c = rem.pop(e, 0)
            if not c:
                continue
            t = tuple([e[k] - lead[k] for k in r])
            if any(x < 0 for x in t):
                raise NotDivisible("not divisible")
            qc = _div(c, lc)
            quot[t] = qc
            for e2, c2 in tail:
                m = tuple([t[k] + e2[k] for k in r])
                old = rem.get(m)
                v = (old or 0) - qc * c2
                if v:
                    rem[m] = _norm(v)
                    if old is None:
                        heapq.heappush(heap, (-sum(m), tuple(-x for x in m)))
                else:
                    rem.pop(m, None)
        return RootPoly(self.rank, quot, _trusted=True)

    def _divide_monomial(self, lead: Exponent, lc: Coeff) -> RootPoly:
        out = {}
        for e, c in self.terms.items():
            t = tuple(a - b for a, b in zip(e, lead))
            if any(x < 0 for x in t):
                raise NotDivisible("not divisible")
            out[t] = _div(c, lc)
        return RootPoly(self.rank, out, _trusted=True)

    def substitute(self, images: Sequence[RootPoly]) -> RootPoly:
        """Ring homomorphism alpha_j -> images[j]."""
        out = RootPoly.zero(self.rank)
        powers: dict[tuple[int, int], RootPoly] = {}

        def power(j: int, k: int) -> RootPoly:
            key = (j, k)
            if key not in powers:
                powers[key] = images[j] ** k
            return powers[key]

        for e, c in self.terms.items():
            term = RootPoly.const(self.rank, c)
            for j, k in enumerate(e):
                if k:
                    term = term * power(j, k)
            out = out + term
        return out

    # -- presentation ----------------------------------------------------
    def sorted_terms(self) -> list[tuple[Exponent, Coeff]]:
        """Terms in graded-lex order (lowest first)."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]))

    def to_json(self) -> list:
        return [[list(e), fraction_text(c)] for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, rank: int, data: Iterable) -> RootPoly:
        return cls(rank, {tuple(e): parse_fraction(c) for e, c in data})

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in reversed(self.sorted_terms()):
            mono = "*".join(f"a{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def fraction_text(c: Coeff) -> str:
    """Integers bare, other rationals as "num/den"."""
    return str(Fraction(c))


def parse_fraction(text: str | int) -> Coeff:
    if isinstance(text, int):
        return text
    return _norm(Fraction(text))


def weyl_substitute(group, w, p: RootPoly) -> RootPoly:
    """Left W-action on polynomials: alpha_j -> w(alpha_j)."""
    images = [RootPoly.linear(group.simple_root_image(w, j)) for j in range(group.rank)]
    return p.substitute(images)


def exact_divide(p: RootPoly, q: RootPoly) -> RootPoly:
    return p.exact_divide(q)


def eval_zero(p: RootPoly) -> Coeff:
    return p.eval_zero()
