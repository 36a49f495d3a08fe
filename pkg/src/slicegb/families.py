"""Ideals whose coefficients depend on parameters.

A :class:`Family` stores generators as polynomials in the main variables
whose coefficients are themselves polynomials in a separate parameter
ring.  Treating those coefficients as a field of fractions, the ordinary
basis engine produces a single reduced basis valid for every parameter
point where no denominator vanishes; everything downstream (the common
denominator, the list of varying coefficients, the scheme those
coefficients trace out, specialization, sections) reads off that basis.

JSON and text descriptions of families are parsed here as well.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DenominatorVanishes, DependentParameters, HypothesisViolation
from .groebner import (
    GroebnerBasis,
    Ideal,
    buchberger,
    dimension,
    eliminate,
    exact_divide,
    integer_normalize,
    reduce_basis,
)
from .orders import DegRevLex, TermOrder, order_by_name
from .parsing import ParseError, SourceSpan, parse_polynomial, parse_ring
from .poly import Polynomial, PowerProduct
from .ratfunc import RationalFunction, polynomial_gcd
from .rings import Ring
from .sections import LinearForm, section_basis


def _is_scalar(c: RationalFunction) -> bool:
    return c.den.is_constant() and c.num.is_constant()


# -- the family type -------------------------------------------------


def split_parameters(f: Polynomial, params: Ring, variables: Ring) -> Polynomial:
    """Rewrite a polynomial from the combined ring (parameters listed
    first) as a polynomial in the main variables whose coefficients are
    parameter polynomials."""
    if f.ring != params.concat(variables):
        raise ValueError("expected a polynomial in the combined ring")
    m = params.arity
    grouped: Dict[PowerProduct, Dict[PowerProduct, object]] = {}
    for t, c in f.terms.items():
        grouped.setdefault(t[m:], {})[t[:m]] = c
    return Polynomial(
        variables, {t: Polynomial(params, d) for t, d in grouped.items()}
    )


def merge_parameters(f: Polynomial, params: Ring) -> Polynomial:
    """The inverse of :func:`split_parameters`."""
    combined = params.concat(f.ring)
    terms: Dict[PowerProduct, object] = {}
    for t, c in f.terms.items():
        for s, q in c.terms.items():
            terms[s + t] = q
    return Polynomial(combined, terms)


@dataclass(frozen=True)
class Family:
    """Generators over the main ring with parameter-polynomial coefficients."""

    params: Ring
    ring: Ring
    generators: Tuple[Polynomial, ...]

    def __post_init__(self):
        for g in self.generators:
            if g.ring != self.ring:
                raise ValueError("generator from a different ring")
            for c in g.terms.values():
                if not isinstance(c, Polynomial) or c.ring != self.params:
                    raise ValueError(
                        "generator coefficients must be parameter polynomials"
                    )

    @classmethod
    def of(cls, params: Ring, variables: Ring, combined: Sequence[Polynomial]) -> "Family":
        gens = tuple(
            split_parameters(g, params, variables) for g in combined if g
        )
        return cls(params, variables, gens)

    @classmethod
    def parse(cls, params: Ring, variables: Ring, texts: Sequence[str]) -> "Family":
        big = params.concat(variables)
        return cls.of(params, variables, [parse_polynomial(big, s) for s in texts])

    def combined_ideal(self) -> Ideal:
        """The generators, moved back into the combined ring."""
        return Ideal.of(
            self.params.concat(self.ring),
            [merge_parameters(g, self.params) for g in self.generators],
        )

    def over_field(self) -> List[Polynomial]:
        """Generators with coefficients promoted to rational functions."""
        return [
            g.map_coefficients(RationalFunction) for g in self.generators if g
        ]


# -- the universal basis and what it carries -------------------------


def family_basis(fam: Family, order: TermOrder = None) -> GroebnerBasis:
    """The reduced basis of the family over the fraction field of the
    parameters: one basis that specializes to the reduced basis of every
    fiber off the vanishing locus of :func:`basis_denominator`.

    Raises DependentParameters when the basis collapses to {1}, which
    happens exactly when the parameters satisfy a polynomial relation
    forced by the generators.
    """
    if order is None:
        order = DegRevLex(fam.ring.arity)
    gens = fam.over_field()
    if not gens:
        return GroebnerBasis(order, (), is_minimal=True, is_reduced=True)
    basis = reduce_basis(order, buchberger(order, gens))
    if len(basis) == 1 and basis.elements[0].is_constant():
        raise DependentParameters(
            "the basis collapses to {1}: parameters are dependent; "
            "parameters_independent produces a witness relation"
        )
    return basis


def basis_denominator(params: Ring, basis: GroebnerBasis) -> Polynomial:
    """Monic least common multiple of every coefficient denominator;
    its non-vanishing marks the parameter points where the universal
    basis specializes cleanly."""
    d = Polynomial.constant(params, 1)
    for g in basis:
        for c in g.terms.values():
            den = c.den
            if den.is_constant():
                continue
            g_ = polynomial_gcd(d, den)
            d = exact_divide(d * den, g_)
    return d.monic(DegRevLex(params.arity))


def nonconstant_coefficients(
    basis: GroebnerBasis, order: TermOrder = None
) -> List[RationalFunction]:
    """Every coefficient that is not a plain rational number, walking
    elements by ascending leading term and each support from the top
    down.  Repeats are kept; the list is what the fibers are classified
    by, not a set of values."""
    if order is None:
        order = basis.order
    out: List[RationalFunction] = []
    for g in basis:
        for t in g.support(order):
            c = g.terms[t]
            if not _is_scalar(c):
                out.append(c)
    return out


def specialize_polynomial(f: Polynomial, values: Sequence[Fraction]) -> Polynomial:
    """Evaluate the parametric coefficients of ``f`` at a point."""
    terms: Dict[PowerProduct, Fraction] = {}
    for t, c in f.terms.items():
        try:
            v = c.evaluate(values)
        except ZeroDivisionError:
            raise DenominatorVanishes(
                f"coefficient {c!r} has no value at {tuple(values)}"
            ) from None
        if v:
            terms[t] = v
    return Polynomial(f.ring, terms)


def specialize_basis(basis: GroebnerBasis, values: Sequence[Fraction]) -> GroebnerBasis:
    """The fiber basis at a parameter point.  Off the vanishing locus of
    the common denominator this is again reduced: specializing keeps
    every leading term (they are monic) and can only shrink supports."""
    return GroebnerBasis(
        basis.order,
        tuple(specialize_polynomial(g, values) for g in basis),
        is_minimal=basis.is_minimal,
        is_reduced=basis.is_reduced,
    )


def specialize_family(fam: Family, values: Sequence[Fraction]) -> Ideal:
    """The fiber ideal: generators with parameters evaluated at a point."""
    return Ideal.of(
        fam.ring, [specialize_polynomial(g, values) for g in fam.generators]
    )


# -- parameter independence ------------------------------------------


@dataclass(frozen=True)
class IndependenceReport:
    independent: bool
    witness: Optional[Polynomial]


def parameters_independent(fam: Family) -> IndependenceReport:
    """Whether the generators force no polynomial relation among the
    parameters alone.  When they do, the witness is the smallest element
    of the relation ideal's reduced basis, scaled to integer content."""
    m = fam.params.arity
    ideal = fam.combined_ideal()
    relations = eliminate(ideal, range(m, m + fam.ring.arity))
    if relations.is_zero:
        return IndependenceReport(True, None)
    order = DegRevLex(m)
    witness = integer_normalize(relations.generators[0], order)
    return IndependenceReport(False, witness)


# -- the scheme traced by the coefficients ---------------------------


@dataclass(frozen=True)
class SchemeDescription:
    ring: Ring
    ideal: Ideal
    dimension: int
    parametrization: Tuple[RationalFunction, ...]


def coefficient_scheme(
    params: Ring, values: Sequence[RationalFunction]
) -> SchemeDescription:
    """The closure of the image of the parameter space under the given
    rational functions, as an ideal in fresh coordinates y1..ys.

    Denominators are cleared with one tag variable inverting their least
    common multiple, so points where some denominator vanishes never
    leak into the image.
    """
    values = tuple(values)
    s = len(values)
    yring = Ring(tuple(f"y{j + 1}" for j in range(s)))
    if s == 0:
        return SchemeDescription(yring, Ideal.of(yring, []), 0, values)
    common = Polynomial.constant(params, 1)
    for v in values:
        if v.den.is_constant():
            continue
        g = polynomial_gcd(common, v.den)
        common = exact_divide(common * v.den, g)
    tagged = not common.is_constant()
    m = params.arity
    front = m + (1 if tagged else 0)
    names = params.names + (("u",) if tagged else ()) + yring.names
    big = Ring(names)

    def embed(f: Polynomial) -> Polynomial:
        return Polynomial(
            big,
            {t + (0,) * (big.arity - m): c for t, c in f.terms.items()},
        )

    gens = []
    for j, v in enumerate(values):
        y = Polynomial.variable(big, f"y{j + 1}")
        gens.append(y * embed(v.den) - embed(v.num))
    if tagged:
        u = Polynomial.variable(big, "u")
        gens.append(Polynomial.constant(big, 1) - u * embed(common))
    implicit = eliminate(Ideal.of(big, gens), range(front))
    return SchemeDescription(yring, implicit, dimension(implicit), values)


# -- hyperplane sections of families ---------------------------------


@dataclass(frozen=True)
class FamilySectionReport:
    family: Family
    basis: GroebnerBasis
    form: LinearForm
    independent: bool
    witness: Optional[Polynomial]


def _section_generator(g: Polynomial, form: LinearForm) -> Polynomial:
    # parameter coefficients survive substitution untouched, so the cut
    # can act on the promoted copy and the result demotes cleanly
    image = form.apply(g.map_coefficients(RationalFunction))
    return image.map_coefficients(lambda c: c.as_polynomial())


def family_section(
    fam: Family, basis: GroebnerBasis, form: LinearForm
) -> FamilySectionReport:
    """Cut every member of the family with the same hyperplane.

    When no basis leading term involves the cut variable, the sectioned
    basis is again a basis for every fiber at once and the parameters
    stay independent.  Otherwise HypothesisViolation reports the
    blocking elements, and carries a dependence witness when the cut
    actually entangles the parameters (which the theorem no longer
    forbids).
    """
    sectioned = Family(
        fam.params,
        form.sub_ring(),
        tuple(_section_generator(g, form) for g in fam.generators),
    )
    indep = parameters_independent(sectioned)
    try:
        report = section_basis(basis, form)
    except HypothesisViolation as failure:
        raise HypothesisViolation(
            str(failure),
            offending=failure.offending,
            dependence=indep.witness,
        ) from None
    return FamilySectionReport(
        family=sectioned,
        basis=report.basis,
        form=form,
        independent=indep.independent,
        witness=indep.witness,
    )


# -- file formats ----------------------------------------------------


@dataclass
class FamilyFile:
    family: Family
    order_name: Optional[str]


def parse_family_json(data: dict) -> FamilyFile:
    """``{"params": [...], "vars": [...], "generators": [...]}`` with an
    optional ``"order"`` name; generators use both variable sets."""
    span = SourceSpan(0, 0)
    text = json.dumps(data)
    for key in ("params", "vars", "generators"):
        if key not in data:
            raise ParseError(f"missing {key!r}", span, text)
    try:
        params = Ring(tuple(data["params"]))
        variables = Ring(tuple(data["vars"]))
    except (TypeError, ValueError) as bad:
        raise ParseError(f"bad ring description: {bad}", span, text) from None
    if set(params.names) & set(variables.names):
        raise ParseError("parameter and variable names overlap", span, text)
    fam = Family.parse(params, variables, [str(s) for s in data["generators"]])
    order_name = data.get("order")
    if order_name is not None:
        try:
            order_by_name(variables, order_name)
        except ValueError as bad:
            raise ParseError(str(bad), span, text) from None
    return FamilyFile(fam, order_name)


def parse_family_text(text: str) -> FamilyFile:
    """Two ring headers (parameters first), an optional ``order:`` line,
    then one generator per line.  Blank lines and ``#`` comments are
    skipped."""
    rings: List[Ring] = []
    order_name = None
    generators: List[str] = []
    for line in text.splitlines():
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if body.startswith("QQ["):
            if len(rings) == 2:
                raise ParseError(
                    "more than two ring headers", SourceSpan(0, 0), text
                )
            rings.append(parse_ring(body))
            continue
        if body.startswith("order:"):
            order_name = body[len("order:"):].strip()
            continue
        generators.append(body)
    if len(rings) != 2:
        raise ParseError(
            "expected a parameter ring header and a variable ring header",
            SourceSpan(0, 0),
            text,
        )
    if order_name is not None:
        try:
            order_by_name(rings[1], order_name)
        except ValueError as bad:
            raise ParseError(str(bad), SourceSpan(0, 0), text) from None
    fam = Family.parse(rings[0], rings[1], generators)
    return FamilyFile(fam, order_name)
