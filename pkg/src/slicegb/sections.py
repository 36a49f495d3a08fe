"""Cutting ideals with hyperplanes and putting them back together.

A cut substitutes one variable (the pivot) by a combination of later
variables plus a constant.  When no leading term of a basis involves the
pivot, the substituted basis stays a basis on the slice; running this
across many parallel slices and interpolating along the pivot recovers
polynomials upstairs, one degree of freedom per slice.
"""

from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import (
    HypothesisViolation,
    LTDrift,
    MembershipFailed,
    NonGenericSlices,
    NonPrincipal,
    RetryLimitExceeded,
    ZeroDivisor,
)
from .groebner import (
    GroebnerBasis,
    Ideal,
    buchberger,
    check_minimal,
    check_reduced,
    eliminate,
    integer_normalize,
    is_member,
    reduce_basis,
    zero_divisor_witness,
)
from .orders import DegRevLex, PivotDegRev, TermOrder, order_by_name
from .parsing import ParseError, SourceSpan, parse_polynomial, parse_ring
from .poly import Polynomial, compose
from .rings import PowerProduct, Ring, pp_divides, pp_insert

# -- linear forms ----------------------------------------------------


@dataclass(frozen=True)
class LinearForm:
    """A cut ``x_i = sum c_j x_j + gamma`` where every tail variable
    comes after the pivot in the ring listing."""

    ring: Ring
    pivot: int
    tail: Tuple[Tuple[int, Fraction], ...]
    gamma: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if not 0 <= self.pivot < self.ring.arity:
            raise ValueError("pivot index out of range")
        for j, c in self.tail:
            if j >= self.ring.arity:
                raise ValueError("variable index out of range")
            if j <= self.pivot:
                raise ValueError("tail variables must come after the pivot")
            if not c:
                raise ValueError("zero tail coefficient")

    @classmethod
    def of(cls, ring: Ring, pivot: str, tail: Optional[Dict[str, Fraction]] = None,
           gamma=Fraction(0)) -> "LinearForm":
        pairs = tuple(sorted((ring.index(v), Fraction(c)) for v, c in (tail or {}).items()))
        return cls(ring, ring.index(pivot), pairs, Fraction(gamma))

    @classmethod
    def from_polynomial(cls, f: Polynomial) -> "LinearForm":
        """Read a cut off a degree-one polynomial; the earliest variable
        present becomes the pivot and everything else moves to the
        right-hand side."""
        if not f or f.total_degree() != 1:
            raise ValueError("a cut needs a polynomial of degree exactly 1")
        ring = f.ring
        coeffs = [Fraction(0)] * ring.arity
        gamma = Fraction(0)
        for t, c in f.terms.items():
            if sum(t) == 0:
                gamma = c
            else:
                coeffs[t.index(1)] = c
        pivot = next(i for i, c in enumerate(coeffs) if c)
        lead = coeffs[pivot]
        tail = tuple((j, -coeffs[j] / lead) for j in range(pivot + 1, ring.arity) if coeffs[j])
        return cls(ring, pivot, tail, -gamma / lead)

    @property
    def is_axis(self) -> bool:
        return not self.tail

    def replacement(self) -> Polynomial:
        """The right-hand side the pivot is replaced with."""
        n = self.ring.arity
        terms: Dict[PowerProduct, Fraction] = {
            tuple(1 if k == j else 0 for k in range(n)): c for j, c in self.tail
        }
        if self.gamma:
            terms[(0,) * n] = self.gamma
        return Polynomial(self.ring, terms)

    def as_polynomial(self) -> Polynomial:
        return Polynomial.variable(self.ring, self.ring.names[self.pivot]) - self.replacement()

    def apply(self, f: Polynomial) -> Polynomial:
        """Substitute the pivot and land in the ring without it."""
        return f.substitute(self.pivot, self.replacement()).project_drop(self.pivot)

    def sub_ring(self) -> Ring:
        return self.ring.drop(self.pivot)

    def compatible_with(self, order: TermOrder) -> bool:
        """Every tail variable must sit strictly below the pivot."""
        n = self.ring.arity
        unit = lambda i: tuple(1 if k == i else 0 for k in range(n))
        return all(order.compare(unit(j), unit(self.pivot)) < 0 for j, _ in self.tail)


@dataclass(frozen=True)
class HomLinearForm:
    """A homogeneous cut ``x_i = sum c_j x_j`` whose tail may use any
    other variable; fits the shift-and-project route below."""

    ring: Ring
    pivot: int
    coeffs: Tuple[Tuple[int, Fraction], ...]

    def __post_init__(self) -> None:
        if not 0 <= self.pivot < self.ring.arity:
            raise ValueError("pivot index out of range")
        for j, c in self.coeffs:
            if j == self.pivot:
                raise ValueError("tail must avoid the pivot")
            if not c:
                raise ValueError("zero tail coefficient")

    @classmethod
    def of(cls, ring: Ring, pivot: str,
           coeffs: Optional[Dict[str, Fraction]] = None) -> "HomLinearForm":
        pairs = tuple(sorted((ring.index(v), Fraction(c)) for v, c in (coeffs or {}).items()))
        return cls(ring, ring.index(pivot), pairs)

    @classmethod
    def from_polynomial(cls, f: Polynomial, pivot: str) -> "HomLinearForm":
        if not f or f.total_degree() != 1 or not f.is_homogeneous():
            raise ValueError("a homogeneous cut needs a linear form with no constant term")
        ring = f.ring
        i = ring.index(pivot)
        coeffs = [Fraction(0)] * ring.arity
        for t, c in f.terms.items():
            coeffs[t.index(1)] = c
        lead = coeffs[i]
        if not lead:
            raise ValueError(f"{pivot} does not occur in the cut")
        pairs = tuple((j, -coeffs[j] / lead) for j in range(ring.arity) if j != i and coeffs[j])
        return cls(ring, i, pairs)

    def replacement(self) -> Polynomial:
        n = self.ring.arity
        terms = {tuple(1 if k == j else 0 for k in range(n)): c for j, c in self.coeffs}
        return Polynomial(self.ring, terms)

    def shift(self, f: Polynomial) -> Polynomial:
        """Triangular coordinate change sending the pivot to pivot + tail."""
        pivot_var = Polynomial.variable(self.ring, self.ring.names[self.pivot])
        return f.substitute(self.pivot, pivot_var + self.replacement())

    def project(self, f: Polynomial) -> Polynomial:
        """Set the pivot to zero and drop it from the ring."""
        kept = {t: c for t, c in f.terms.items() if t[self.pivot] == 0}
        return Polynomial(self.ring, kept).project_drop(self.pivot)

    def apply(self, f: Polynomial) -> Polynomial:
        return f.substitute(self.pivot, self.replacement()).project_drop(self.pivot)


# -- slicing a known basis -------------------------------------------


@dataclass(frozen=True)
class SectionReport:
    form: LinearForm
    basis: GroebnerBasis
    nonzerodivisor: bool


def _pivot_blockers(order: TermOrder, polys: Sequence[Polynomial], pivot: int) -> List[Polynomial]:
    return [g for g in polys if g.leading_power_product(order)[pivot] != 0]


def section_basis(gb: GroebnerBasis, form: LinearForm) -> SectionReport:
    """Slice a monic basis along a cut.

    When no leading term involves the pivot, the substituted elements
    form a basis of the sliced ideal under the restricted ordering and
    the cut is a non-zero-divisor on the quotient.  Leading terms
    survive the substitution unchanged, so minimality carries over;
    reducedness is re-checked because a non-axis tail can introduce new
    lower terms.
    """
    order = gb.order
    if not form.compatible_with(order):
        raise ValueError("tail variables must be below the pivot in this ordering")
    for g in gb.elements:
        if g.leading_term(order)[0] != 1:
            raise ValueError("basis must be monic")
    blockers = _pivot_blockers(order, gb.elements, form.pivot)
    if blockers:
        name = form.ring.names[form.pivot]
        raise HypothesisViolation(
            f"{len(blockers)} leading term(s) involve {name}", offending=blockers
        )
    sub_order = order.restrict(form.pivot)
    images = sorted((form.apply(g) for g in gb.elements),
                    key=lambda g: sub_order.key(g.leading_power_product(sub_order)))
    sliced = GroebnerBasis(
        sub_order,
        tuple(images),
        is_minimal=check_minimal(sub_order, images),
        is_reduced=check_reduced(sub_order, images),
    )
    return SectionReport(form, sliced, nonzerodivisor=True)


def homogeneous_section_basis(ideal: Ideal, form: HomLinearForm, order: TermOrder) -> GroebnerBasis:
    """Reduced basis of the slice of a homogeneous ideal by any
    hyperplane through the origin, via shift, reduce, and project.

    Requires a degree-reverse ordering pivoted at the cut variable (the
    plain one qualifies when that variable is listed last).  For such an
    ordering a homogeneous reduced-basis element whose leading term
    involves the pivot is divisible by it outright, so projecting the
    shifted basis and dropping zeros yields the reduced basis downstairs.
    """
    pivot_last = form.pivot == ideal.ring.arity - 1 and isinstance(order, DegRevLex)
    pivoted = isinstance(order, PivotDegRev) and order.pivot == form.pivot
    if not (pivot_last or pivoted):
        raise ValueError("ordering must be degree-reverse pivoted at the cut variable")
    for g in ideal.generators:
        if not g.is_homogeneous():
            raise ValueError("generators must be homogeneous")
    shifted = [form.shift(g) for g in ideal.generators]
    basis = reduce_basis(order, buchberger(order, shifted))
    sub_order = order.restrict(form.pivot)
    images = [form.project(g) for g in basis]
    images = sorted((g for g in images if g),
                    key=lambda g: sub_order.key(g.leading_power_product(sub_order)))
    return GroebnerBasis(sub_order, tuple(images), is_minimal=True, is_reduced=True)


def verify_lifting(ideal: Ideal, candidate: Sequence[Polynomial], form: LinearForm,
                   order: TermOrder) -> GroebnerBasis:
    """Certify that a candidate set is a basis of the ideal upstairs
    from its behaviour on a single slice.

    Checks, in order: leading terms avoid the pivot; the sliced
    candidate covers every leading term of the sliced ideal; the cut is
    a non-zero-divisor modulo the ideal; the candidate lies inside the
    ideal.  Together these force the candidate to be a basis upstairs,
    without ever running a basis computation there when the candidate
    generates the ideal by construction.
    """
    if not form.compatible_with(order):
        raise ValueError("tail variables must be below the pivot in this ordering")
    cand = [g for g in candidate if g]
    if not cand:
        raise ValueError("empty candidate")
    for g in cand:
        if g.leading_term(order)[0] != 1:
            raise ValueError("candidate must be monic")
    blockers = _pivot_blockers(order, cand, form.pivot)
    if blockers:
        name = ideal.ring.names[form.pivot]
        raise HypothesisViolation(
            f"{len(blockers)} leading term(s) involve {name}", offending=blockers
        )
    sub_order = order.restrict(form.pivot)
    sliced_gens = [form.apply(g) for g in ideal.generators]
    downstairs = reduce_basis(sub_order, buchberger(sub_order, sliced_gens))
    cand_lts = [form.apply(g).leading_power_product(sub_order) for g in cand]
    for d in downstairs:
        lt = d.leading_power_product(sub_order)
        if not any(pp_divides(c, lt) for c in cand_lts):
            raise HypothesisViolation(
                "sliced candidate misses a leading term of the sliced ideal", offending=[d]
            )
    witness = zero_divisor_witness(ideal, form.as_polynomial(), order)
    if witness is not None:
        raise ZeroDivisor("the cut divides zero modulo the ideal", witness=witness)
    # Membership is free when each candidate element is a rescaled
    # generator; only oblique candidates pay for a basis upstairs.
    scaled_gens = [g.monic(order) for g in ideal.generators if g]
    strays = [g for g in cand if g not in scaled_gens]
    if strays:
        upstairs = reduce_basis(order, buchberger(order, ideal.generators))
        outside = [g for g in strays if not is_member(g, upstairs)]
        if outside:
            raise ValueError(f"{len(outside)} candidate element(s) lie outside the ideal")
    ordered = sorted(cand, key=lambda g: order.key(g.leading_power_product(order)))
    return GroebnerBasis(
        order,
        tuple(ordered),
        is_minimal=check_minimal(order, ordered),
        is_reduced=check_reduced(order, ordered),
    )


# -- interpolation across parallel slices ----------------------------


def lagrange_coefficients(points: Sequence[Tuple[Fraction, Fraction]]) -> List[Fraction]:
    """Coefficients, low degree first, of the unique polynomial of
    degree < len(points) through the given (x, y) pairs."""
    coeffs = [Fraction(0)] * len(points)
    for i, (xi, yi) in enumerate(points):
        # basis numerator prod_{j != i} (x - xj), built incrementally
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            shifted = [Fraction(0)] + basis
            basis = [a - xj * b for a, b in zip(shifted, basis + [Fraction(0)])]
            denom *= xi - xj
        scale = yi / denom
        for k, b in enumerate(basis):
            coeffs[k] += scale * b
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


@dataclass(frozen=True)
class SliceFamily:
    """Parallel cuts x_i = tail + gamma_k sharing one tail."""

    ring: Ring
    pivot: int
    tail: Tuple[Tuple[int, Fraction], ...]
    gammas: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(set(self.gammas)) != len(self.gammas):
            raise ValueError("slice constants must be distinct")
        for j, _ in self.tail:
            if j <= self.pivot:
                raise ValueError("tail variables must come after the pivot")

    @classmethod
    def of(cls, ring: Ring, pivot: str, gammas: Iterable,
           tail: Optional[Dict[str, Fraction]] = None) -> "SliceFamily":
        pairs = tuple(sorted((ring.index(v), Fraction(c)) for v, c in (tail or {}).items()))
        return cls(ring, ring.index(pivot), pairs, tuple(Fraction(g) for g in gammas))

    @property
    def is_axis(self) -> bool:
        return not self.tail

    def forms(self) -> List[LinearForm]:
        return [LinearForm(self.ring, self.pivot, self.tail, g) for g in self.gammas]

    def sub_ring(self) -> Ring:
        return self.ring.drop(self.pivot)


def common_lifting(family: SliceFamily, values: Sequence[Polynomial]) -> Polynomial:
    """The unique polynomial of pivot-degree < N restricting to the
    given value on each of the N slices.

    The shared tail is absorbed into a triangular change of coordinates,
    after which each slice pins the pivot to a constant and every
    coefficient of the lifting is a univariate interpolation along the
    pivot.  Each slice equation is re-verified on the result rather than
    assumed.
    """
    if len(values) != len(family.gammas):
        raise ValueError("one slice value per slice constant required")
    sub = family.sub_ring()
    for v in values:
        if v.ring != sub:
            raise ValueError("slice values must live in the ring without the pivot")
    ring = family.ring
    i = family.pivot
    pps = sorted(set(itertools.chain.from_iterable(v.terms for v in values)))
    terms: Dict[PowerProduct, Fraction] = {}
    for t in pps:
        points = [(g, v.terms.get(t, Fraction(0))) for g, v in zip(family.gammas, values)]
        for d, c in enumerate(lagrange_coefficients(points)):
            if c:
                terms[pp_insert(t, i, d)] = c
    lifted = Polynomial(ring, terms)
    if family.tail:
        # undo the coordinate change: the pivot goes back to pivot - tail
        pivot_var = Polynomial.variable(ring, ring.names[i])
        tail_poly = LinearForm(ring, i, family.tail).replacement()
        lifted = lifted.substitute(i, pivot_var - tail_poly)
    for form, v in zip(family.forms(), values):
        if form.apply(lifted) != v:
            raise AssertionError("lifting failed to restrict to a slice value; this is a bug")
    return lifted


class TrustMembership:
    """Skip membership checking; the result is flagged uncertified."""

    certified = False

    def accepts(self, g: Polynomial) -> bool:
        return True


class BasisMembership:
    """Check membership against a known basis of the target ideal."""

    certified = True

    def __init__(self, basis: GroebnerBasis):
        self.basis = basis

    def accepts(self, g: Polynomial) -> bool:
        return is_member(g, self.basis)


class MapMembership:
    """Accept polynomials that vanish under a substitution map, e.g. a
    parametrization of the variety being rebuilt."""

    certified = True

    def __init__(self, images: Sequence[Polynomial], target: Ring):
        self.images = list(images)
        self.target = target

    def accepts(self, g: Polynomial) -> bool:
        return not compose(g, self.images, self.target)


@dataclass(frozen=True)
class ReconstructionResult:
    basis: GroebnerBasis
    certified: bool


def reconstruct_basis(
    family: SliceFamily,
    slice_bases: Sequence[Sequence[Polynomial]],
    order: TermOrder,
    membership=None,
) -> ReconstructionResult:
    """Rebuild a basis upstairs from reduced bases of parallel slices.

    Slice bases are matched up by their shared leading terms, each group
    is lifted by interpolation, and every lifted element must keep its
    slice leading term upstairs; the optional membership check then
    certifies that the lift lands in the intended ideal.
    """
    if membership is None:
        membership = TrustMembership()
    if len(slice_bases) != len(family.gammas):
        raise ValueError("one slice basis per slice constant required")
    if not slice_bases or not all(slice_bases):
        raise ValueError("empty slice basis")
    sub_order = order.restrict(family.pivot)
    rows: List[List[Polynomial]] = []
    lt_rows = set()
    for base in slice_bases:
        row = sorted(base, key=lambda g: sub_order.key(g.leading_power_product(sub_order)))
        rows.append(row)
        lt_rows.add(tuple(g.leading_power_product(sub_order) for g in row))
    if len(lt_rows) != 1:
        raise NonGenericSlices("slice bases have different leading-term multisets")
    (shared_lts,) = lt_rows
    lifted: List[Polynomial] = []
    for j, lt in enumerate(shared_lts):
        g = common_lifting(family, [row[j] for row in rows])
        if g.leading_power_product(order) != pp_insert(lt, family.pivot, 0):
            raise LTDrift(
                f"lifted element {j} has a larger leading term than its slices; "
                "more slices or a different ordering needed"
            )
        lifted.append(g)
    rejected = [g for g in lifted if not membership.accepts(g)]
    if rejected:
        raise MembershipFailed(f"{len(rejected)} lifted element(s) failed the membership check")
    lifted.sort(key=lambda g: order.key(g.leading_power_product(order)))
    basis = GroebnerBasis(
        order,
        tuple(lifted),
        is_minimal=check_minimal(order, lifted),
        is_reduced=check_reduced(order, lifted),
    )
    return ReconstructionResult(basis, certified=membership.certified)


# -- implicitization -------------------------------------------------


def gamma_stream(offset: Optional[int] = None) -> Iterator[Fraction]:
    """Deterministic slice constants 2, -2, 3, -3, ...; the environment
    variable SLICEGB_SEED shifts the starting point."""
    if offset is None:
        offset = int(os.environ.get("SLICEGB_SEED", "0"))
    k = 2 + max(0, offset)
    while True:
        yield Fraction(k)
        yield Fraction(-k)
        k += 1


def graph_ideal(param_ring: Ring, coord_ring: Ring, images: Sequence[Polynomial]) -> Ideal:
    """The ideal (x_j - p_j) in the combined ring, parameters first."""
    if len(images) != coord_ring.arity:
        raise ValueError("one coordinate image per variable required")
    for img in images:
        if img.ring != param_ring:
            raise ValueError("coordinate images must live in the parameter ring")
    combined = param_ring.concat(coord_ring)
    pad = (0,) * coord_ring.arity
    gens = []
    for name, image in zip(coord_ring.names, images):
        embedded = Polynomial(combined, {t + pad: c for t, c in image.terms.items()})
        gens.append(Polynomial.variable(combined, name) - embedded)
    return Ideal.of(combined, gens)


def _eliminate_params(param_ring: Ring, keep: Ring, pairs, extra=()) -> Ideal:
    """Eliminate the parameters from (name - image) plus parameter-only
    constraints; the result lives in the kept ring."""
    combined = param_ring.concat(keep)
    pad = (0,) * keep.arity
    embed = lambda f: Polynomial(combined, {t + pad: c for t, c in f.terms.items()})
    gens = [Polynomial.variable(combined, name) - embed(image) for name, image in pairs]
    gens.extend(embed(e) for e in extra)
    return eliminate(Ideal.of(combined, gens), list(range(param_ring.arity)))


def _slice_curve_job(args):
    """Implicitize one plane slice; top level so worker processes can
    import it."""
    param_ring, sub_ring, sub_pairs, pivot_image, sub_order, gamma = args
    out = _eliminate_params(
        param_ring, sub_ring, sub_pairs,
        [pivot_image - Polynomial.constant(param_ring, gamma)],
    )
    good = len(out.generators) == 1 and not out.generators[0].is_constant()
    return out.generators[0].monic(sub_order) if good else None


def implicitize(
    param_ring: Ring,
    coord_ring: Ring,
    images: Sequence[Polynomial],
    mode: str = "eliminate",
    pivot: Optional[str] = None,
    order: Optional[TermOrder] = None,
    initial_slices: Optional[int] = None,
    max_doublings: int = 4,
    gamma_offset: Optional[int] = None,
    jobs: int = 1,
) -> Polynomial:
    """Implicit equation of a parametrized hypersurface, normalized to
    integer coefficients with content 1 and a positive leading one.

    ``eliminate`` mode performs one block elimination of the parameters.
    ``slice`` mode fixes a pivot coordinate to a stream of constants,
    implicitizes each plane slice separately, and rebuilds the equation
    by interpolation along the pivot; the slice count starts just above
    a Bezout-style degree bound and doubles whenever verification fails.
    The rebuilt equation is accepted only once it vanishes under the
    parametrization, which certifies it exactly.
    """
    if len(images) != coord_ring.arity:
        raise ValueError("one coordinate image per variable required")
    if coord_ring.arity != param_ring.arity + 1:
        raise ValueError("a hypersurface needs one more coordinate than parameters")
    for img in images:
        if img.ring != param_ring:
            raise ValueError("coordinate images must live in the parameter ring")
    if set(param_ring.names) & set(coord_ring.names):
        raise ValueError("parameter and coordinate names must differ")

    if mode == "eliminate":
        if order is None:
            order = DegRevLex(coord_ring.arity)
        out = _eliminate_params(param_ring, coord_ring, zip(coord_ring.names, images))
        if len(out.generators) != 1:
            raise NonPrincipal("the eliminated ideal is not principal")
        return integer_normalize(out.generators[0], order)

    if mode != "slice":
        raise ValueError(f"unknown mode {mode!r}")
    if pivot is None:
        raise ValueError("slice mode needs a pivot coordinate")
    i = coord_ring.index(pivot)
    if order is None:
        order = PivotDegRev(coord_ring.arity, i)
    pivot_image = images[i]
    if not pivot_image or pivot_image.is_constant():
        raise ValueError("the pivot coordinate image must be nonconstant")
    sub_ring = coord_ring.drop(i)
    sub_pairs = [(name, img) for name, img in zip(coord_ring.names, images) if name != pivot]
    sub_order = order.restrict(i)

    degrees = sorted((img.total_degree() for img in images if img and not img.is_constant()),
                     reverse=True)
    bound = 1
    for d in degrees[: param_ring.arity]:
        bound *= d
    n_slices = initial_slices if initial_slices else bound + 1

    curves: Dict[Fraction, Optional[Polynomial]] = {}
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs and jobs > 1 else None

    def warm(gammas: Sequence[Fraction]) -> None:
        fresh = [g for g in gammas if g not in curves]
        work = [(param_ring, sub_ring, sub_pairs, pivot_image, sub_order, g)
                for g in fresh]
        for g, curve in zip(fresh, pool.map(_slice_curve_job, work)):
            curves[g] = curve

    def slice_curve(gamma: Fraction) -> Optional[Polynomial]:
        if gamma not in curves:
            curves[gamma] = _slice_curve_job(
                (param_ring, sub_ring, sub_pairs, pivot_image, sub_order, gamma)
            )
        return curves[gamma]

    try:
        for _ in range(max_doublings + 1):
            stream = gamma_stream(gamma_offset)
            attempts = [next(stream) for _ in range(4 * n_slices + 16)]
            kept: List[Tuple[Fraction, Polynomial]] = []
            best_lt: Optional[PowerProduct] = None
            idx = 0
            while idx < len(attempts) and len(kept) < n_slices:
                # batch by worker count; results merge in stream order,
                # so the outcome is independent of the job count
                chunk = attempts[idx: idx + (jobs if pool else 1)]
                idx += len(chunk)
                if pool is not None:
                    warm(chunk)
                for gamma in chunk:
                    curve = slice_curve(gamma)
                    if curve is None:
                        continue  # degenerate slice, e.g. a lower-dimensional fiber
                    lt = curve.leading_power_product(sub_order)
                    if best_lt is None or sub_order.compare(lt, best_lt) > 0:
                        best_lt = lt
                        kept = []
                    if lt == best_lt:
                        kept.append((gamma, curve))
                    if len(kept) == n_slices:
                        break
            if len(kept) < n_slices:
                raise RetryLimitExceeded("too many degenerate slices")
            family = SliceFamily(coord_ring, i, (), tuple(g for g, _ in kept))
            surface = common_lifting(family, [c for _, c in kept])
            # Vanishing under the parametrization is a full certificate here:
            # any surplus factor would have to be constant on every slice yet
            # scale the shared monic leading coefficient, which pins it to 1.
            if not compose(surface, images, param_ring):
                return integer_normalize(surface, order)
            n_slices *= 2
    finally:
        if pool is not None:
            pool.shutdown()
    raise RetryLimitExceeded(
        "slice count doubled past its cap without a verified equation; "
        "try another pivot or ordering"
    )


# -- slice files -----------------------------------------------------


@dataclass
class SliceFile:
    family: SliceFamily
    order: TermOrder
    slice_bases: List[List[Polynomial]]


def parse_slice_json(data: dict) -> SliceFile:
    """Slice collection: {"ring": "QQ[x,y,z]", "order": "degrevlex",
    "pivot": "x", "tail": {"y": "1/2"}, "slices": [{"gamma": "2",
    "generators": ["y^2 -2"]}, ...]}.  Generators are read in the ring
    without the pivot; "tail" and "order" are optional."""
    if not isinstance(data, dict):
        raise ParseError("slice JSON must be an object", SourceSpan(0, 0), str(data)[:40])
    for field in ("ring", "pivot", "slices"):
        if field not in data:
            raise ParseError(f"slice JSON needs {field!r}", SourceSpan(0, 0), str(data)[:40])
    ring = parse_ring(data["ring"]) if isinstance(data["ring"], str) else Ring(tuple(data["ring"]))
    order = order_by_name(ring, data.get("order", "degrevlex"))
    tail = {str(v): Fraction(str(c)) for v, c in (data.get("tail") or {}).items()}
    entries = data["slices"]
    if not isinstance(entries, list) or not entries:
        raise ParseError("'slices' must be a non-empty list", SourceSpan(0, 0), str(entries)[:40])
    sub = SliceFamily.of(ring, str(data["pivot"]), [0], tail).sub_ring()
    gammas = []
    bases = []
    for entry in entries:
        if not isinstance(entry, dict) or "gamma" not in entry or "generators" not in entry:
            raise ParseError("each slice needs 'gamma' and 'generators'",
                             SourceSpan(0, 0), str(entry)[:40])
        gammas.append(Fraction(str(entry["gamma"])))
        bases.append([parse_polynomial(sub, s) for s in entry["generators"]])
    return SliceFile(SliceFamily.of(ring, str(data["pivot"]), gammas, tail), order, bases)


def load_slice_file(text: str) -> SliceFile:
    return parse_slice_json(json.loads(text))


# -- parametrization files -------------------------------------------


@dataclass
class MapFile:
    param_ring: Ring
    coord_ring: Ring
    images: List[Polynomial]
    pivot: Optional[str]
    order_name: Optional[str]


def parse_map_json(data: dict) -> MapFile:
    """Polynomial map: {"params": "QQ[s,t]", "coords": "QQ[x,y,z]",
    "images": ["s", "t", "s^2 +t^3"]}.  Ring fields also accept plain
    name lists; "pivot" and "order" are optional."""
    span = SourceSpan(0, 0)
    text = json.dumps(data) if isinstance(data, (dict, list)) else str(data)
    if not isinstance(data, dict):
        raise ParseError("map JSON must be an object", span, text[:40])
    for field in ("params", "coords", "images"):
        if field not in data:
            raise ParseError(f"map JSON needs {field!r}", span, text[:40])
    rings = []
    for field in ("params", "coords"):
        raw = data[field]
        rings.append(parse_ring(raw) if isinstance(raw, str) else Ring(tuple(raw)))
    param_ring, coord_ring = rings
    if set(param_ring.names) & set(coord_ring.names):
        raise ParseError("parameter and coordinate names overlap", span, text[:40])
    images = data["images"]
    if not isinstance(images, list) or len(images) != coord_ring.arity:
        raise ParseError(
            f"'images' must list one polynomial per coordinate "
            f"({coord_ring.arity} expected)", span, text[:40]
        )
    parsed = [parse_polynomial(param_ring, str(s)) for s in images]
    pivot = data.get("pivot")
    if pivot is not None:
        pivot = str(pivot)
        if pivot not in coord_ring.names:
            raise ParseError(f"pivot {pivot!r} is not a coordinate", span, text[:40])
    order_name = data.get("order")
    if order_name is not None:
        try:
            order_by_name(coord_ring, str(order_name))
        except ValueError as bad:
            raise ParseError(str(bad), span, text[:40]) from None
    return MapFile(param_ring, coord_ring, parsed, pivot, order_name)


def load_map_file(text: str) -> MapFile:
    return parse_map_json(json.loads(text))
