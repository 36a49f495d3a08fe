"""Recovering the parameters of a family from points on its fibers.

Fixing a point and letting the parameters vary turns each family
generator into a condition on the parameters alone; the conditions cut
out the locus of members whose fiber passes through the point.  This is
the algebra behind a Hough transform, kept exact: the locus is held as
an ideal over Q, solved outright when the family is linear in its
parameters, and intersected across several points by summing ideals.
The last step rebuilds a surface from curves recovered on parallel
slices, one interpolation per coefficient.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import Inconsistent, MembershipFailed, NotLinearInParams, Underdetermined
from .families import Family, parse_family_json, specialize_family
from .groebner import (
    Ideal,
    MonomialIdeal,
    dimension,
    eliminate,
    groebner_basis,
    monomial_dimension,
)
from .orders import DegRevLex, TermOrder
from .parsing import ParseError, SourceSpan, parse_polynomial
from .poly import Polynomial
from .rings import Ring, pp_degree, pp_one
from .sections import SliceFamily, reconstruct_basis

Point = Tuple[Fraction, ...]


@dataclass(frozen=True)
class HoughResult:
    """The parameter locus of one point: its ideal as a reduced basis,
    the dimension (-1 when the locus is empty), and the coordinates
    when the locus is a single rational point."""

    ideal: Ideal
    dimension: int
    empty: bool
    solution: Optional[Point]


@dataclass(frozen=True)
class DetectionResult:
    solution: Optional[Point]
    ideal: Ideal
    dimension: int
    inconsistent: bool


def _at_point(g: Polynomial, point: Point, params: Ring) -> Polynomial:
    """Evaluate the variable part of a split generator, leaving a
    polynomial in the parameters."""
    total = Polynomial.zero(params)
    for t, c in g.terms.items():
        scale = Fraction(1)
        for v, e in zip(point, t):
            if e:
                scale = scale * v ** e
        if scale:
            total = total + c.scale(scale)
    return total


def _rational_point(params: Ring, basis) -> Optional[Point]:
    # a single rational point shows up as the reduced basis
    # {a_1 - c_1, ..., a_m - c_m}
    if len(basis) != params.arity:
        return None
    unit = pp_one(params.arity)
    values: List[Optional[Fraction]] = [None] * params.arity
    for g in basis:
        c, t = g.leading_term(basis.order)
        if pp_degree(t) != 1 or set(g.terms) - {t, unit}:
            return None
        i = t.index(1)
        if values[i] is not None:
            return None
        values[i] = -g.terms.get(unit, Fraction(0)) / c
    return tuple(values)


def _parameter_locus(params: Ring, generators: Sequence[Polynomial]) -> HoughResult:
    order = DegRevLex(params.arity)
    gens = [g for g in generators if g]
    if not gens:
        # every condition vanished: the whole parameter space qualifies
        return HoughResult(Ideal(params, ()), params.arity, False, None)
    basis = groebner_basis(order, gens)
    ideal = Ideal(params, basis.elements)
    if len(basis) == 1 and basis.elements[0].is_constant():
        return HoughResult(ideal, -1, True, None)
    dim = monomial_dimension(
        MonomialIdeal.of(params.arity, basis.leading_power_products())
    )
    return HoughResult(ideal, dim, False, _rational_point(params, basis))


def _check_point(fam: Family, point) -> Point:
    p = tuple(Fraction(v) for v in point)
    if len(p) != fam.ring.arity:
        raise ValueError(
            f"point has {len(p)} coordinates but the family has "
            f"{fam.ring.arity} variables"
        )
    return p


def hough_ideal(fam: Family, point) -> HoughResult:
    """The locus of parameter choices whose fiber contains the point."""
    p = _check_point(fam, point)
    return _parameter_locus(fam.params, [_at_point(g, p, fam.params) for g in fam.generators])


def generic_hough_dimension(fam: Family) -> int:
    """Dimension of the parameter locus of a generic point on the swept
    set: the dimension of the incidence variety minus the dimension of
    its projection to the variable space.

    The projection closure is taken as a whole; on smaller components
    of it the actual locus can be larger.
    """
    combined = fam.combined_ideal()
    total = dimension(combined)
    image = eliminate(combined, range(fam.params.arity))
    return total - dimension(image)


# -- the linear case -------------------------------------------------


def _assert_linear(fam: Family) -> None:
    for k, g in enumerate(fam.generators):
        worst = max(c.total_degree() for c in g.terms.values())
        if worst > 1:
            raise NotLinearInParams(
                f"generator {k + 1} has degree {worst} in the parameters"
            )


def _linear_row(params: Ring, f: Polynomial) -> Tuple[List[Fraction], Fraction]:
    """Split c_1 a_1 + ... + c_m a_m + c_0 into ([c_1..c_m], -c_0)."""
    coeffs = [Fraction(0)] * params.arity
    rhs = Fraction(0)
    for t, c in f.terms.items():
        if pp_degree(t) == 0:
            rhs = -c
        else:
            coeffs[t.index(1)] = c
    return coeffs, rhs


def _solve_unique(rows, rhs, unknowns):
    """Reduced echelon over Q; (solution, False), (None, False) for a
    positive-dimensional solution set, (None, True) for none at all."""
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots: List[int] = []
    row = 0
    for col in range(unknowns):
        sel = next((r for r in range(row, len(a)) if a[r][col]), None)
        if sel is None:
            continue
        a[row], a[sel] = a[sel], a[row]
        inv = 1 / a[row][col]
        a[row] = [v * inv for v in a[row]]
        for r in range(len(a)):
            if r != row and a[r][col]:
                factor = a[r][col]
                a[r] = [v - factor * w for v, w in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
    for r in range(row, len(a)):
        if a[r][unknowns]:
            return None, True
    if len(pivots) < unknowns:
        return None, False
    x = [Fraction(0)] * unknowns
    for r, col in enumerate(pivots):
        x[col] = a[r][unknowns]
    return tuple(x), False


def solve_linear_hough(fam: Family, point) -> Point:
    """The unique member through the point, for a family linear in its
    parameters.  Raises Underdetermined or Inconsistent when the locus
    is a positive-dimensional set or empty."""
    _assert_linear(fam)
    p = _check_point(fam, point)
    rows, rhs = [], []
    for g in fam.generators:
        coeffs, b = _linear_row(fam.params, _at_point(g, p, fam.params))
        rows.append(coeffs)
        rhs.append(b)
    solution, inconsistent = _solve_unique(rows, rhs, fam.params.arity)
    if inconsistent:
        raise Inconsistent("no parameter choice puts the point on a fiber")
    if solution is None:
        raise Underdetermined(
            "the parameter locus of this point has positive dimension"
        )
    return solution


def detect(fam: Family, points) -> DetectionResult:
    """Combine the parameter loci of several points by summing their
    ideals.  A unique common member comes back as a point, checked
    against every input; otherwise the summed locus itself is returned,
    or flagged inconsistent when it is empty."""
    pts = [_check_point(fam, p) for p in points]
    conditions = [
        _at_point(g, p, fam.params) for p in pts for g in fam.generators
    ]
    locus = _parameter_locus(fam.params, conditions)
    if locus.empty:
        return DetectionResult(None, locus.ideal, -1, True)
    if locus.solution is not None:
        fiber = specialize_family(fam, locus.solution)
        for p in pts:
            for g in fiber.generators:
                if g.evaluate(p) != 0:
                    raise MembershipFailed(
                        f"detected parameters miss the input point {p}"
                    )
        return DetectionResult(locus.solution, locus.ideal, locus.dimension, False)
    return DetectionResult(None, locus.ideal, locus.dimension, False)


# -- surface reconstruction from sliced detections -------------------


def _match_curve(template: Family, curve: Polynomial) -> Tuple[List[List[Fraction]], List[Fraction]]:
    """Equations on the parameters forcing the template to equal the
    given curve coefficient by coefficient."""
    g = template.generators[0]
    rows, rhs = [], []
    for t in sorted(set(g.terms) | set(curve.terms)):
        c = g.terms.get(t, Polynomial.zero(template.params))
        coeffs, neg = _linear_row(template.params, c)
        rows.append(coeffs)
        rhs.append(curve.terms.get(t, Fraction(0)) + neg)
    return rows, rhs


def _slice_curve(template: Family, gamma: Fraction, data) -> Polynomial:
    if isinstance(data, Polynomial):
        if data.ring != template.ring:
            raise ValueError(f"slice at {gamma}: curve from a different ring")
        if data.is_zero():
            raise ValueError(f"slice at {gamma}: zero curve")
        rows, rhs = _match_curve(template, data)
        solution, inconsistent = _solve_unique(rows, rhs, template.params.arity)
        if inconsistent:
            raise Inconsistent(
                f"slice at {gamma}: the curve does not have the template shape"
            )
        if solution is None:
            raise Underdetermined(
                f"slice at {gamma}: several parameter choices give this curve"
            )
    else:
        found = detect(template, data)
        if found.inconsistent:
            raise Inconsistent(
                f"slice at {gamma}: no curve of the template shape passes "
                "through the data"
            )
        if found.solution is None:
            raise Underdetermined(
                f"slice at {gamma}: the data pins a positive-dimensional "
                "set of curves"
            )
        solution = found.solution
    fiber = specialize_family(template, solution)
    if len(fiber.generators) != 1:
        raise ValueError(
            f"slice at {gamma}: the detected parameters annihilate the template"
        )
    return fiber.generators[0]


def _surface_slice_job(args):
    """Detect one slice curve; top level so worker processes can
    import it."""
    template, gamma, data = args
    return _slice_curve(template, gamma, data)


def reconstruct_surface(
    template: Family,
    pivot: str,
    slices: Sequence[Tuple[Fraction, object]],
    order: TermOrder = None,
    membership=None,
    jobs: int = 1,
) -> Polynomial:
    """Rebuild a surface from its curves on parallel slices.

    The template describes the slice curves, linear in its parameters;
    the pivot is the new variable along which the slices stack, added
    after the template variables.  Each slice carries either the curve
    polynomial itself or a list of points to detect it from.  The
    per-coefficient interpolation is exact when the surface's pivot
    degree is below the number of slices, and every slice equation is
    re-verified on the result.
    """
    if len(template.generators) != 1:
        raise ValueError("surface reconstruction needs a single-generator template")
    _assert_linear(template)
    full = Ring(template.ring.names + (pivot,))
    data = [(Fraction(g), d) for g, d in slices]
    family = SliceFamily.of(full, pivot, [g for g, _ in data])
    if order is None:
        order = DegRevLex(full.arity)
    if jobs and jobs > 1:
        # per-slice detections are independent; exceptions propagate
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            found = list(pool.map(_surface_slice_job, [(template, g, d) for g, d in data]))
        curves = [[c] for c in found]
    else:
        curves = [[_slice_curve(template, gamma, d)] for gamma, d in data]
    result = reconstruct_basis(family, curves, order, membership)
    return result.basis.elements[0]


# -- detection files -------------------------------------------------


@dataclass
class DetectionFile:
    template: Family
    order_name: Optional[str]
    pivot: str
    slices: List[Tuple[Fraction, object]]


def parse_detection_json(data: dict) -> DetectionFile:
    """``{"template": {...}, "pivot": name, "slices": [{"gamma": "p/q",
    "points": [[...], ...]}, ...]}``; a slice may carry a ``"curve"``
    string instead of points."""
    span = SourceSpan(0, 0)
    text = json.dumps(data)
    for key in ("template", "pivot", "slices"):
        if key not in data:
            raise ParseError(f"missing {key!r}", span, text)
    ff = parse_family_json(data["template"])
    fam = ff.family
    pivot = str(data["pivot"])
    if pivot in fam.ring.names or pivot in fam.params.names:
        raise ParseError("pivot name collides with the template rings", span, text)
    slices: List[Tuple[Fraction, object]] = []
    seen = set()
    for entry in data["slices"]:
        if "gamma" not in entry:
            raise ParseError("slice without 'gamma'", span, text)
        try:
            gamma = Fraction(str(entry["gamma"]))
        except (ValueError, ZeroDivisionError):
            raise ParseError(
                f"bad slice constant {entry['gamma']!r}", span, text
            ) from None
        if gamma in seen:
            raise ParseError(f"duplicate slice constant {gamma}", span, text)
        seen.add(gamma)
        has_points = "points" in entry
        has_curve = "curve" in entry
        if has_points == has_curve:
            raise ParseError("each slice needs 'points' or 'curve'", span, text)
        if has_curve:
            slices.append((gamma, parse_polynomial(fam.ring, str(entry["curve"]))))
            continue
        points = []
        for raw in entry["points"]:
            if len(raw) != fam.ring.arity:
                raise ParseError(
                    f"point {raw} has the wrong number of coordinates", span, text
                )
            try:
                points.append(tuple(Fraction(str(v)) for v in raw))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad coordinate in {raw}", span, text) from None
        slices.append((gamma, points))
    return DetectionFile(fam, ff.order_name, pivot, slices)


def load_detection_file(text: str) -> DetectionFile:
    return parse_detection_json(json.loads(text))
