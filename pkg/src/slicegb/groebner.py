"""Buchberger's algorithm and the ideal-level operations built on it.

Everything here is deterministic: pair selection follows the normal
strategy (lowest lcm degree, ties by the ordering, then by index), and
division always rewrites the largest reducible term using the first
matching reducer in list order.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .orders import DegRevLex, Elim, TermOrder
from .poly import Polynomial
from .rings import (
    PowerProduct,
    Ring,
    pp_coprime,
    pp_degree,
    pp_div,
    pp_divides,
    pp_lcm,
    pp_mul,
    pp_one,
    pp_project,
    pp_support,
)


@dataclass(frozen=True)
class Ideal:
    ring: Ring
    generators: Tuple[Polynomial, ...]

    @classmethod
    def of(cls, ring: Ring, generators: Iterable[Polynomial]) -> "Ideal":
        gens = tuple(g for g in generators if g)
        for g in gens:
            if g.ring != ring:
                raise ValueError("generator from a different ring")
        return cls(ring, gens)

    @property
    def is_zero(self) -> bool:
        return not self.generators


@dataclass(frozen=True)
class GroebnerBasis:
    order: TermOrder
    elements: Tuple[Polynomial, ...]
    is_minimal: bool
    is_reduced: bool

    def leading_power_products(self) -> Tuple[PowerProduct, ...]:
        return tuple(g.leading_power_product(self.order) for g in self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class MonomialIdeal:
    """Minimal generators of a monomial ideal; an antichain under divisibility."""

    arity: int
    gens: Tuple[PowerProduct, ...]

    @classmethod
    def of(cls, arity: int, pps: Iterable[PowerProduct]) -> "MonomialIdeal":
        unique = sorted(set(pps))
        minimal = [t for t in unique if not any(s != t and pp_divides(s, t) for s in unique)]
        return cls(arity, tuple(sorted(minimal)))


# -- division --------------------------------------------------------


class _TopTerm:
    """Max-heap adapter: heapq pops the entry with the largest key."""

    __slots__ = ("key", "term")

    def __init__(self, key, term: PowerProduct):
        self.key = key
        self.term = term

    def __lt__(self, other: "_TopTerm") -> bool:
        return self.key > other.key


def normal_form(order: TermOrder, f: Polynomial, reducers: Sequence[Polynomial]) -> Polynomial:
    """Full remainder of ``f`` under division by ``reducers``.

    The pending terms sit in a max-heap with lazy deletion; rewriting
    only creates terms below the one being rewritten, so surviving pops
    come out in strictly decreasing order and the remainder never sees
    the same term twice.
    """
    red = []
    for g in reducers:
        if g:
            lc, lt = g.leading_term(order)
            red.append((lt, lc, g.terms))
    work = dict(f.terms)
    remainder: Dict[PowerProduct, object] = {}
    key = order.key
    heap = [_TopTerm(key(t), t) for t in work]
    heapq.heapify(heap)
    while heap:
        t = heapq.heappop(heap).term
        if t not in work:
            continue
        c = work.pop(t)
        quotient = None
        for lt, lc, gterms in red:
            q = pp_div(t, lt)
            if q is not None:
                quotient = (lt, lc, gterms, q)
                break
        if quotient is None:
            remainder[t] = c
            continue
        lt, lc, gterms, q = quotient
        factor = c / lc
        for s, cg in gterms.items():
            if s == lt:
                continue
            u = pp_mul(s, q)
            cur = work.get(u)
            if cur is None:
                value = -(factor * cg)
                if value:
                    work[u] = value
                    heapq.heappush(heap, _TopTerm(key(u), u))
            else:
                value = cur - factor * cg
                if value:
                    work[u] = value
                else:
                    del work[u]
    return Polynomial(f.ring, remainder)


def exact_divide(f: Polynomial, g: Polynomial, order: TermOrder = None) -> Polynomial:
    """The quotient f/g; raises when g does not divide f."""
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    if order is None:
        order = DegRevLex(f.ring.arity)
    lc, lt = g.leading_term(order)
    work = dict(f.terms)
    quotient: Dict[PowerProduct, object] = {}
    key = order.key
    heap = [_TopTerm(key(t), t) for t in work]
    heapq.heapify(heap)
    while heap:
        t = heapq.heappop(heap).term
        if t not in work:
            continue
        q = pp_div(t, lt)
        if q is None:
            raise ValueError("not an exact division")
        factor = work.pop(t) / lc
        quotient[q] = factor
        for s, cg in g.terms.items():
            if s == lt:
                continue
            u = pp_mul(s, q)
            cur = work.get(u)
            if cur is None:
                value = -(factor * cg)
                if value:
                    work[u] = value
                    heapq.heappush(heap, _TopTerm(key(u), u))
            else:
                value = cur - factor * cg
                if value:
                    work[u] = value
                else:
                    del work[u]
    return Polynomial(f.ring, quotient)


def spolynomial(order: TermOrder, f: Polynomial, g: Polynomial) -> Polynomial:
    cf, tf = f.leading_term(order)
    cg, tg = g.leading_term(order)
    l = pp_lcm(tf, tg)
    return f.mul_term(pp_div(l, tf), 1 / cf) - g.mul_term(pp_div(l, tg), 1 / cg)


def integer_normalize(f: Polynomial, order: TermOrder) -> Polynomial:
    """Scale a rational-coefficient polynomial to integer coefficients with
    content 1 and a positive leading coefficient."""
    if not f:
        return f
    den = 1
    for c in f.terms.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    num = 0
    for c in f.terms.values():
        num = math.gcd(num, abs(c.numerator * (den // c.denominator)))
    scale = Fraction(den, num)
    if f.leading_term(order)[0] < 0:
        scale = -scale
    return f.scale(scale)


def _store(f: Polynomial, order: TermOrder, normalize: bool) -> Polynomial:
    lc = f.leading_term(order)[0]
    if normalize and isinstance(lc, Fraction):
        return integer_normalize(f, order)
    return f.monic(order)


# -- fraction-free fast path -----------------------------------------
#
# Inside Buchberger the remainder of an S-polynomial is immediately
# rescaled to integer content 1, so any positive multiple of the true
# normal form serves.  Working with plain integers avoids the
# per-operation gcd that Fraction arithmetic performs; it applies only
# when the coefficients are rational and normalization is on.


def _strip_content(work: Dict[PowerProduct, int], remainder: Dict[PowerProduct, int]) -> None:
    g = 0
    for v in work.values():
        g = math.gcd(g, v)
        if g == 1:
            return
    for v in remainder.values():
        g = math.gcd(g, v)
        if g == 1:
            return
    if g > 1:
        for u in work:
            work[u] //= g
        for u in remainder:
            remainder[u] //= g


def _int_spair(order, fterms: Dict[PowerProduct, int], ft: PowerProduct,
               gterms: Dict[PowerProduct, int], gt: PowerProduct) -> Dict[PowerProduct, int]:
    """An integer multiple of the S-polynomial; the lcm terms cancel."""
    l = pp_lcm(ft, gt)
    qf, qg = pp_div(l, ft), pp_div(l, gt)
    fc, gc = fterms[ft], gterms[gt]
    d = math.gcd(fc, gc)
    a, b = gc // d, fc // d
    out: Dict[PowerProduct, int] = {pp_mul(s, qf): a * c for s, c in fterms.items()}
    for s, c in gterms.items():
        u = pp_mul(s, qg)
        cur = out.get(u)
        value = (cur - b * c) if cur is not None else -b * c
        if value:
            out[u] = value
        elif cur is not None:
            del out[u]
    return out


def _reduce_int(order: TermOrder, sterms: Dict[PowerProduct, int],
                red: Sequence[Tuple[PowerProduct, int, Dict[PowerProduct, int]]]
                ) -> Dict[PowerProduct, int]:
    """Pseudo-remainder by content-1 integer reducers: a positive integer
    multiple of the normal form.  Instead of dividing by a leading
    coefficient, the pending polynomial is scaled up by the smallest
    factor making the division exact; content is stripped periodically
    to keep the integers from compounding."""
    work = dict(sterms)
    remainder: Dict[PowerProduct, int] = {}
    key = order.key
    heap = [_TopTerm(key(t), t) for t in work]
    heapq.heapify(heap)
    steps = 0
    while heap:
        t = heapq.heappop(heap).term
        if t not in work:
            continue
        c = work.pop(t)
        quotient = None
        for lt, lc, gterms in red:
            q = pp_div(t, lt)
            if q is not None:
                quotient = (lt, lc, gterms, q)
                break
        if quotient is None:
            remainder[t] = c
            continue
        lt, lc, gterms, q = quotient
        d = math.gcd(c, lc)
        scale, factor = abs(lc // d), c // d
        if lc < 0:
            factor = -factor
        if scale != 1:
            for u in work:
                work[u] *= scale
            for u in remainder:
                remainder[u] *= scale
        for s, cg in gterms.items():
            if s == lt:
                continue
            u = pp_mul(s, q)
            cur = work.get(u)
            if cur is None:
                value = -factor * cg
                if value:
                    work[u] = value
                    heapq.heappush(heap, _TopTerm(key(u), u))
            else:
                value = cur - factor * cg
                if value:
                    work[u] = value
                else:
                    del work[u]
        steps += 1
        if steps % 64 == 0:
            _strip_content(work, remainder)
    return remainder


def _int_view(f: Polynomial) -> Optional[Dict[PowerProduct, int]]:
    # integer term dict of a content-normalized polynomial, or None when
    # a coefficient is not a plain rational
    out = {}
    for t, c in f.terms.items():
        if not isinstance(c, Fraction) or c.denominator != 1:
            return None
        out[t] = c.numerator
    return out


# -- Buchberger ------------------------------------------------------


def buchberger(order: TermOrder, generators: Sequence[Polynomial], normalize: bool = True) -> List[Polynomial]:
    """A Groebner basis containing the nonzero generators (rescaled).

    Pairs are pruned with the coprime-leading-term criterion and the
    chain criterion.  ``normalize`` scales intermediate elements to
    integer content 1 (rational coefficients only); it never changes the
    reduced basis obtained afterwards.
    """
    basis: List[Polynomial] = []
    for g in generators:
        if g:
            basis.append(_store(g, order, normalize))
    if not basis:
        raise ValueError("Groebner basis of the zero ideal is undefined; no nonzero generators")
    lts: List[PowerProduct] = [g.leading_power_product(order) for g in basis]
    ints: Optional[List[Dict[PowerProduct, int]]] = None
    if normalize:
        views = [_int_view(g) for g in basis]
        if all(v is not None for v in views):
            ints = views
    # each pair is ranked once at creation; the heap pops them in the
    # normal-strategy order (lcm degree, then the ordering, then index)
    pending: Set[Tuple[int, int]] = set()
    queue: List[tuple] = []

    def enqueue(i: int, j: int) -> None:
        l = pp_lcm(lts[i], lts[j])
        pending.add((i, j))
        heapq.heappush(queue, (pp_degree(l), order.key(l), i, j))

    for j in range(len(basis)):
        for i in range(j):
            enqueue(i, j)

    while queue:
        _, _, i, j = heapq.heappop(queue)
        pending.remove((i, j))
        ti, tj = lts[i], lts[j]
        if pp_coprime(ti, tj):
            continue
        l = pp_lcm(ti, tj)
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or not pp_divides(lts[k], l):
                continue
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a not in pending and b not in pending:
                skip = True
                break
        if skip:
            continue
        if ints is not None:
            red = [(lts[k], ints[k][lts[k]], ints[k]) for k in range(len(basis))]
            rem = _reduce_int(order, _int_spair(order, ints[i], ti, ints[j], tj), red)
            if not rem:
                continue
            h = Polynomial(basis[0].ring, {t: Fraction(v) for t, v in rem.items()})
        else:
            h = normal_form(order, spolynomial(order, basis[i], basis[j]), basis)
        if h:
            h = _store(h, order, normalize)
            basis.append(h)
            lts.append(h.leading_power_product(order))
            if ints is not None:
                ints.append(_int_view(h))
            for k in range(len(basis) - 1):
                enqueue(k, len(basis) - 1)
    return basis


def reduce_basis(order: TermOrder, polys: Sequence[Polynomial]) -> GroebnerBasis:
    """Minimalize and interreduce a Groebner basis.

    The result is the unique reduced basis: monic, pairwise interreduced,
    sorted by ascending leading term.
    """
    nonzero = [g for g in polys if g]
    ranked = sorted(nonzero, key=lambda g: order.key(g.leading_power_product(order)))
    kept: List[Polynomial] = []
    kept_lts: List[PowerProduct] = []
    for g in ranked:
        lt = g.leading_power_product(order)
        if any(pp_divides(s, lt) for s in kept_lts):
            continue
        kept.append(g)
        kept_lts.append(lt)
    # One pass suffices: leading terms are pairwise non-divisible, so
    # division never disturbs them, and the reduced basis is unique.
    reduced: List[Polynomial] = []
    for idx, g in enumerate(kept):
        others = kept[:idx] + kept[idx + 1:]
        reduced.append(normal_form(order, g, others).monic(order))
        kept[idx] = reduced[idx]
    return GroebnerBasis(order, tuple(reduced), is_minimal=True, is_reduced=True)


def groebner_basis(order: TermOrder, generators: Sequence[Polynomial], normalize: bool = True) -> GroebnerBasis:
    return reduce_basis(order, buchberger(order, generators, normalize))


def is_member(f: Polynomial, basis: GroebnerBasis) -> bool:
    return not normal_form(basis.order, f, basis.elements)


def check_minimal(order: TermOrder, polys: Sequence[Polynomial]) -> bool:
    """Structural check: monic with pairwise non-divisible leading terms."""
    lts = []
    for g in polys:
        lc, lt = g.leading_term(order)
        if lc != 1:
            return False
        lts.append(lt)
    return not any(i != j and pp_divides(lts[i], lts[j]) for i in range(len(lts)) for j in range(len(lts)))


def check_reduced(order: TermOrder, polys: Sequence[Polynomial]) -> bool:
    """Structural check: minimal, and no support term of one element is
    divisible by the leading term of another."""
    if not check_minimal(order, polys):
        return False
    lts = [g.leading_power_product(order) for g in polys]
    for i, g in enumerate(polys):
        for t in g.terms:
            for j, lt in enumerate(lts):
                if i != j and pp_divides(lt, t):
                    return False
    return True


# -- elimination, dimension, colon -----------------------------------


def eliminate(ideal: Ideal, drop: Sequence[int], normalize: bool = True) -> Ideal:
    """The ideal's intersection with the subring omitting the ``drop``
    variables, presented by its reduced basis there."""
    drop_set = sorted(set(drop))
    keep = [i for i in range(ideal.ring.arity) if i not in drop_set]
    sub = Ring(tuple(ideal.ring.names[i] for i in keep))
    if ideal.is_zero:
        return Ideal.of(sub, [])
    order = Elim(ideal.ring.arity, drop_set)
    basis = reduce_basis(order, buchberger(order, ideal.generators, normalize))
    survivors = []
    for g in basis:
        if all(all(t[i] == 0 for i in drop_set) for t in g.terms):
            survivors.append(Polynomial(sub, {pp_project(t, keep): c for t, c in g.terms.items()}))
    return Ideal.of(sub, survivors)


def _max_independent(supports: List[FrozenSet[int]], avail: FrozenSet[int], memo: Dict[FrozenSet[int], int]) -> int:
    live = [s for s in supports if s <= avail]
    if not live:
        return len(avail)
    cached = memo.get(avail)
    if cached is not None:
        return cached
    best = -1
    branch = min(live, key=len)
    for v in sorted(branch):
        best = max(best, _max_independent(live, avail - {v}, memo))
    memo[avail] = best
    return best


def monomial_dimension(m: MonomialIdeal) -> int:
    """Krull dimension of the quotient by a monomial ideal: the largest
    set of variables meeting no generator's support is independent."""
    if any(t == pp_one(m.arity) for t in m.gens):
        return -1
    supports = [frozenset(pp_support(t)) for t in m.gens]
    return _max_independent(supports, frozenset(range(m.arity)), {})


def dimension(ideal: Ideal, order: TermOrder = None) -> int:
    if ideal.is_zero:
        return ideal.ring.arity
    if order is None:
        order = DegRevLex(ideal.ring.arity)
    basis = reduce_basis(order, buchberger(order, ideal.generators))
    return monomial_dimension(MonomialIdeal.of(ideal.ring.arity, basis.leading_power_products()))


def intersect_principal(ideal: Ideal, f: Polynomial) -> Ideal:
    """Generators of the intersection with the principal ideal (f)."""
    if not f:
        return Ideal.of(ideal.ring, [])
    ring = ideal.ring
    tag = ring.fresh_name("t")
    big = Ring((tag,) + ring.names)
    lift = [g.embed_insert(0, tag) for g in ideal.generators]
    u = Polynomial.variable(big, tag)
    one = Polynomial.constant(big, 1)
    gens = [u * g for g in lift]
    gens.append((one - u) * f.embed_insert(0, tag))
    inner = Ideal.of(big, gens)
    return eliminate(inner, [0])


def colon_ideal(ideal: Ideal, f: Polynomial) -> Ideal:
    """The ideal of polynomials whose product with ``f`` lies in the ideal."""
    if not f:
        raise ValueError("colon by the zero polynomial")
    if ideal.is_zero:
        return Ideal.of(ideal.ring, [])
    meet = intersect_principal(ideal, f)
    return Ideal.of(ideal.ring, [exact_divide(g, f) for g in meet.generators])


def zero_divisor_witness(ideal: Ideal, f: Polynomial, order: TermOrder = None) -> Optional[Polynomial]:
    """A polynomial outside the ideal with product inside, or None when
    ``f`` is a non-zero-divisor on the quotient ring."""
    if order is None:
        order = DegRevLex(ideal.ring.arity)
    quotient = colon_ideal(ideal, f)
    if quotient.is_zero:
        return None
    basis = reduce_basis(order, buchberger(order, ideal.generators))
    for g in quotient.generators:
        if normal_form(order, g, basis.elements):
            return g
    return None
