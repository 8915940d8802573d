"""
The Dunkl-type operator algebra acting exactly on polynomials.

Primitive operators are plain functions. `OperatorTag` trees describe composed operators
(``Y @ R - R @ Y``, ``commutator(Y, MUL_XR)``) so algebraic identities can be written down and applied.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

from radial_hermite.params import ModelParams
from radial_hermite.polynomials import AnyPoly, LaurentPoly, SparsePoly
from radial_hermite.utils import InvariantViolation, ParameterError, Rational, as_fraction


def _check_residue(i: int, m: int) -> None:
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise ParameterError(f"Projection modulus must be a positive integer, got {m!r}.")

    if isinstance(i, bool) or not isinstance(i, int) or not 0 <= i < m:
        raise ParameterError(f"Projection index must satisfy 0 <= i < m = {m}, got {i!r}.")


def project(p: AnyPoly, i: int, m: int) -> AnyPoly:
    """Applies Pi_i(m): keeps exactly the terms whose degree is congruent to i modulo m.

    Equivalent to the character average (1/m) sum_j omega_m^(-ij) p(omega_m^j x) over the rotation of order m.
    """
    _check_residue(i, m)

    return type(p)._from_clean({degree: coeff for degree, coeff in p.terms.items() if degree % m == i})


def reflect_Rr(p: AnyPoly, params: ModelParams) -> AnyPoly:
    """Applies R_r = sum_s (Pi_s(2r) - Pi_{r+s}(2r)); at r = 1 this is p(x) -> p(-x)."""
    two_r = 2 * params.r

    return type(p)._from_clean(
        {degree: coeff if degree % two_r < params.r else -coeff for degree, coeff in p.terms.items()}
    )


def deriv_dxr(p: AnyPoly, params: ModelParams) -> LaurentPoly:
    """Applies d/dx^r = (1 / (r x^(r-1))) d/dx, sending x^k to (k/r) x^(k-r)."""
    return LaurentPoly._from_clean(
        {degree - params.r: Fraction(degree, params.r) * coeff for degree, coeff in p.terms.items()}
    )


def multiply_xr(p: AnyPoly, params: ModelParams) -> AnyPoly:
    return p.shift(params.r)


def _dunkl_laurent(p: LaurentPoly, params: ModelParams) -> LaurentPoly:
    r, two_r = params.r, 2 * params.r
    difference = LaurentPoly.zero()

    for s in range(r):
        difference += project(p, r + s, two_r).scale(2 * params.nu + 1 + s - r)
        difference -= project(p, s, two_r).scale(s)

    return deriv_dxr(p, params) + difference.shift(-r).scale(Fraction(1, r))


def dunkl_Y(p: AnyPoly, params: ModelParams) -> SparsePoly:
    """Applies Y_nu = d/dx^r + (1/(r x^r)) sum_s [(2 nu + 1 + s - r) Pi_{r+s}(2r) - s Pi_s(2r)].

    The operator is evaluated on the Laurent representation and every negative degree must cancel, which gives
    Y_nu x^N = [N]_nu x^(N-r) and Y_nu x^s = 0 for s < r.
    """
    if isinstance(p, LaurentPoly) and p.has_negative_degrees():
        raise ParameterError("dunkl_Y acts on polynomials; got negative degrees.")

    result = _dunkl_laurent(p.to_laurent(), params)

    if result.has_negative_degrees():
        raise InvariantViolation(f"Negative degrees did not cancel in Y_nu applied to {p}: {result}.")

    return result.to_sparse()


def yang_dunkl(p: SparsePoly, nu: Rational) -> SparsePoly:
    """Applies the real-line Yang-Dunkl operator D_nu p = p' + (nu / x)(p(x) - p(-x))."""
    nu = as_fraction(nu, name="nu")
    mirrored = SparsePoly._from_clean({degree: coeff * (-1) ** degree for degree, coeff in p.terms.items()})

    # p(x) - p(-x) only has odd degrees, so the division by x is exact
    return p.derivative() + (p - mirrored).shift(-1).scale(nu)


class OperatorKind(Enum):
    IDENTITY = "identity"
    PROJECTION = "projection"
    REFLECTION_RR = "reflection_Rr"
    DERIV_DXR = "deriv_dxr"
    DUNKL_Y = "dunkl_Y"
    MUL_XR = "mul_xr"


class OperatorTag:
    """A finite expression tree over the primitive operators with exact rational scalars."""

    def __matmul__(self, other: "OperatorTag") -> "Composition":
        if not isinstance(other, OperatorTag):
            return NotImplemented

        left = self.factors if isinstance(self, Composition) else (self,)
        right = other.factors if isinstance(other, Composition) else (other,)

        return Composition(left + right)

    def __add__(self, other: "OperatorTag") -> "ScaledSum":
        if not isinstance(other, OperatorTag):
            return NotImplemented

        return ScaledSum(_sum_terms(self) + _sum_terms(other))

    def __sub__(self, other: "OperatorTag") -> "ScaledSum":
        if not isinstance(other, OperatorTag):
            return NotImplemented

        return self + (-other)

    def __neg__(self) -> "ScaledSum":
        return Fraction(-1) * self

    def __rmul__(self, c: Rational) -> "ScaledSum":
        if isinstance(c, bool) or not isinstance(c, (int, Fraction)):
            return NotImplemented

        return ScaledSum(tuple((Fraction(c) * coeff, tag) for coeff, tag in _sum_terms(self)))


@dataclass(frozen=True)
class Primitive(OperatorTag):
    kind: OperatorKind
    index: int = 0
    modulus: int = 1

    def __post_init__(self) -> None:
        if self.kind is OperatorKind.PROJECTION:
            _check_residue(self.index, self.modulus)


@dataclass(frozen=True)
class Composition(OperatorTag):
    """The product factors[0] @ factors[1] @ ...; the rightmost factor acts first."""

    factors: tuple[OperatorTag, ...]


@dataclass(frozen=True)
class ScaledSum(OperatorTag):
    terms: tuple[tuple[Fraction, OperatorTag], ...]


def _sum_terms(tag: OperatorTag) -> tuple[tuple[Fraction, OperatorTag], ...]:
    return tag.terms if isinstance(tag, ScaledSum) else ((Fraction(1), tag),)


IDENTITY = Primitive(OperatorKind.IDENTITY)
REFLECTION_RR = Primitive(OperatorKind.REFLECTION_RR)
DERIV_DXR = Primitive(OperatorKind.DERIV_DXR)
DUNKL_Y = Primitive(OperatorKind.DUNKL_Y)
MUL_XR = Primitive(OperatorKind.MUL_XR)


def projection(i: int, m: int) -> Primitive:
    return Primitive(OperatorKind.PROJECTION, index=i, modulus=m)


def commutator(a: OperatorTag, b: OperatorTag) -> ScaledSum:
    return a @ b - b @ a


def anticommutator(a: OperatorTag, b: OperatorTag) -> ScaledSum:
    return a @ b + b @ a


def _apply_primitive(tag: Primitive, p: LaurentPoly, params: ModelParams) -> LaurentPoly:
    if tag.kind is OperatorKind.IDENTITY:
        return p
    elif tag.kind is OperatorKind.PROJECTION:
        return project(p, tag.index, tag.modulus)
    elif tag.kind is OperatorKind.REFLECTION_RR:
        return reflect_Rr(p, params)
    elif tag.kind is OperatorKind.DERIV_DXR:
        return deriv_dxr(p, params)
    elif tag.kind is OperatorKind.DUNKL_Y:
        return _dunkl_laurent(p, params)
    elif tag.kind is OperatorKind.MUL_XR:
        return multiply_xr(p, params)

    raise ParameterError(f"Unknown operator kind {tag.kind}.")


def _apply(tag: OperatorTag, p: LaurentPoly, params: ModelParams) -> LaurentPoly:
    if isinstance(tag, Primitive):
        return _apply_primitive(tag, p, params)

    if isinstance(tag, Composition):
        for factor in reversed(tag.factors):
            p = _apply(factor, p, params)

        return p

    if isinstance(tag, ScaledSum):
        total = LaurentPoly.zero()

        for coeff, term in tag.terms:
            total += _apply(term, p, params).scale(coeff)

        return total

    raise ParameterError(f"Not an operator expression: {tag!r}.")


def apply_operator(tag: OperatorTag, p: AnyPoly, params: ModelParams) -> Union[SparsePoly, LaurentPoly]:
    """Evaluates an operator expression on p.

    :param tag: The operator expression.
    :param p: The input polynomial.
    :param params: Model parameters used by the primitives that depend on (r, nu).
    :return: A SparsePoly, or a LaurentPoly when negative degrees survive (e.g. a bare d/dx^r).
    """
    result = _apply(tag, p.to_laurent(), params)

    return result if result.has_negative_degrees() else result.to_sparse()
