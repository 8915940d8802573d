from fractions import Fraction
import random
import unittest
from unittest import TestCase
from unittest.mock import patch

from radial_hermite.operators import (
    DERIV_DXR,
    DUNKL_Y,
    IDENTITY,
    MUL_XR,
    REFLECTION_RR,
    Composition,
    OperatorKind,
    Primitive,
    ScaledSum,
    anticommutator,
    apply_operator,
    commutator,
    deriv_dxr,
    dunkl_Y,
    multiply_xr,
    project,
    projection,
    reflect_Rr,
    yang_dunkl,
)
from radial_hermite.params import ModelParams, degree_class, deformed_number, nu_s
from radial_hermite.polynomials import LaurentPoly, SparsePoly, radial_hermite
from radial_hermite.utils import InvariantViolation, ParameterError
from radial_hermite.verification import grading_operator, random_poly

GRID = [ModelParams(r=r, nu=nu) for r in (1, 3, 5) for nu in ("0", "1/2", "1", "7/3")]


def x(N: int) -> SparsePoly:
    return SparsePoly.monomial(N)


class ProjectionTests(TestCase):
    def test_examples(self) -> None:
        self.assertEqual(project(x(2), 0, 2), x(2))
        self.assertEqual(project(x(2), 1, 2), 0)
        self.assertEqual(project(x(8), 2, 6), x(8))

    def test_resolution_of_identity(self) -> None:
        rng = random.Random(1)

        for m in (1, 3, 6, 10):
            p = random_poly(rng, 30)
            pieces = [project(p, i, m) for i in range(m)]
            self.assertEqual(sum(pieces, SparsePoly.zero()), p)

            for i in range(m):
                for j in range(m):
                    self.assertEqual(project(pieces[j], i, m), pieces[i] if i == j else 0)

    def test_laurent_residues(self) -> None:
        p = LaurentPoly({-1: 1, -4: 2, 2: 3})
        self.assertEqual(project(p, 2, 3), LaurentPoly({-1: 1, -4: 2, 2: 3}))
        self.assertEqual(project(p, 1, 2), LaurentPoly({-1: 1}))

    def test_out_of_range(self) -> None:
        for i, m in [(-1, 2), (2, 2), (0, 0), (0, -3)]:
            with self.assertRaises(ParameterError):
                project(x(1), i, m)

        with self.assertRaises(ParameterError):
            projection(3, 3)


class ReflectionTests(TestCase):
    def test_examples(self) -> None:
        params = ModelParams(r=3, nu=1)
        self.assertEqual(reflect_Rr(x(2), params), x(2))
        self.assertEqual(reflect_Rr(x(4), params), -x(4))

    def test_real_line_parity(self) -> None:
        params = ModelParams(r=1, nu=0)
        p = SparsePoly({0: 1, 1: 2, 2: 3, 5: Fraction(1, 2)})
        self.assertEqual(reflect_Rr(p, params), SparsePoly({0: 1, 1: -2, 2: 3, 5: Fraction(-1, 2)}))

    def test_involution(self) -> None:
        rng = random.Random(2)

        for params in GRID:
            p = random_poly(rng, 30)
            self.assertEqual(reflect_Rr(reflect_Rr(p, params), params), p)


class DerivativeTests(TestCase):
    def test_monomials(self) -> None:
        params = ModelParams(r=3, nu=1)
        self.assertEqual(deriv_dxr(x(7), params), LaurentPoly({4: Fraction(7, 3)}))
        self.assertEqual(deriv_dxr(x(1), params), LaurentPoly({-2: Fraction(1, 3)}))
        self.assertEqual(deriv_dxr(SparsePoly.one(), params), 0)

    def test_real_line(self) -> None:
        p = SparsePoly({0: 4, 1: 1, 3: 2})
        self.assertEqual(deriv_dxr(p, ModelParams(r=1, nu=0)).to_sparse(), p.derivative())

    def test_multiply_xr(self) -> None:
        self.assertEqual(multiply_xr(x(2), ModelParams(r=5, nu=0)), x(7))


class DunklTests(TestCase):
    def test_ground_states(self) -> None:
        for params in GRID:
            for s in range(params.r):
                self.assertEqual(dunkl_Y(x(s), params), 0)

    def test_examples(self) -> None:
        params = ModelParams(r=3, nu=1)
        self.assertEqual(dunkl_Y(x(7), params), 2 * x(4))
        self.assertEqual(dunkl_Y(x(4), params), x(1).scale(Fraction(5, 3)))

    def test_monomial_action(self) -> None:
        for params in GRID:
            for N in range(params.r, 61):
                self.assertEqual(dunkl_Y(x(N), params), x(N - params.r).scale(deformed_number(params, N)))

    def test_on_hermite(self) -> None:
        for params in GRID:
            for N in range(41):
                expected = 0 if N < params.r else radial_hermite(params, N - params.r).scale(
                    2 * deformed_number(params, N)
                )
                self.assertEqual(dunkl_Y(radial_hermite(params, N), params), expected)

    def test_result_is_polynomial(self) -> None:
        rng = random.Random(4)
        params = ModelParams(r=5, nu=Fraction(7, 3))

        for _ in range(10):
            self.assertIsInstance(dunkl_Y(random_poly(rng, 30), params), SparsePoly)

    def test_rejects_negative_degrees(self) -> None:
        with self.assertRaises(ParameterError):
            dunkl_Y(LaurentPoly({-1: 1}), ModelParams(r=1, nu=0))

    def test_accepts_laurent_without_negative_degrees(self) -> None:
        params = ModelParams(r=3, nu=1)
        self.assertEqual(dunkl_Y(LaurentPoly({7: 1}), params), 2 * x(4))

    def test_no_polynomial_eigenfunctions(self) -> None:
        rng = random.Random(5)

        for params in GRID:
            for _ in range(10):
                p = random_poly(rng, 30, min_degree=params.r)
                image = dunkl_Y(p, params)
                self.assertEqual(image.degree, p.degree - params.r)

    def test_yang_dunkl_reduction(self) -> None:
        for nu in ("0", "1/2", "7/3"):
            params = ModelParams(r=1, nu=nu)

            for n in range(61):
                self.assertEqual(dunkl_Y(x(n), params), yang_dunkl(x(n), params.nu))

    def test_yang_dunkl(self) -> None:
        nu = Fraction(1, 2)
        self.assertEqual(yang_dunkl(x(3), nu), 4 * x(2))
        self.assertEqual(yang_dunkl(x(2), nu), 2 * x(1))
        self.assertEqual(yang_dunkl(SparsePoly.one(), nu), 0)


class OperatorTagTests(TestCase):
    def test_composition_flattens(self) -> None:
        tag = DUNKL_Y @ (REFLECTION_RR @ MUL_XR)
        self.assertIsInstance(tag, Composition)
        self.assertEqual(tag.factors, (DUNKL_Y, REFLECTION_RR, MUL_XR))

    def test_sum_and_scale(self) -> None:
        tag = 2 * DUNKL_Y - MUL_XR
        self.assertIsInstance(tag, ScaledSum)
        self.assertEqual(tag.terms, ((Fraction(2), DUNKL_Y), (Fraction(-1), MUL_XR)))

    def test_rightmost_factor_acts_first(self) -> None:
        params = ModelParams(r=3, nu=1)
        # Y (x^3 x) = [4] x; x^3 (Y x) = 0
        self.assertEqual(apply_operator(DUNKL_Y @ MUL_XR, x(1), params), x(1).scale(Fraction(5, 3)))
        self.assertEqual(apply_operator(MUL_XR @ DUNKL_Y, x(1), params), 0)

    def test_primitives_match_functions(self) -> None:
        params = ModelParams(r=3, nu=Fraction(1, 2))
        p = random_poly(random.Random(6), 20)
        self.assertEqual(apply_operator(IDENTITY, p, params), p)
        self.assertEqual(apply_operator(REFLECTION_RR, p, params), reflect_Rr(p, params))
        self.assertEqual(apply_operator(DUNKL_Y, p, params), dunkl_Y(p, params))
        self.assertEqual(apply_operator(MUL_XR, p, params), multiply_xr(p, params))
        self.assertEqual(apply_operator(projection(2, 6), p, params), project(p, 2, 6))

    def test_bare_derivative_stays_laurent(self) -> None:
        result = apply_operator(DERIV_DXR, x(1), ModelParams(r=3, nu=1))
        self.assertIsInstance(result, LaurentPoly)
        self.assertTrue(result.has_negative_degrees())

    def test_commutator_on_monomials(self) -> None:
        for params in GRID:
            bracket = commutator(DUNKL_Y, MUL_XR)
            grading = grading_operator(params)

            for N in range(61):
                expected = x(N).scale(deformed_number(params, N + params.r) - deformed_number(params, N))
                self.assertEqual(apply_operator(bracket, x(N), params), expected)
                self.assertEqual(apply_operator(grading, x(N), params), expected)

                decomposition = degree_class(params, N)
                twice_nu_s = 2 * nu_s(params, decomposition.s)
                self.assertEqual(expected, x(N).scale(1 + twice_nu_s if decomposition.is_even else 1 - twice_nu_s))

    def test_anticommutation_with_reflection(self) -> None:
        rng = random.Random(7)

        for params in GRID:
            p = random_poly(rng, 30)
            self.assertEqual(apply_operator(anticommutator(DUNKL_Y, REFLECTION_RR), p, params), 0)
            self.assertEqual(apply_operator(anticommutator(MUL_XR, REFLECTION_RR), p, params), 0)

    def test_graded_intertwining(self) -> None:
        for params in (ModelParams(r=3, nu=1), ModelParams(r=5, nu="7/3")):
            two_r = 2 * params.r

            for s in range(two_r):
                left = DUNKL_Y @ projection(s, two_r)
                right = projection((s + params.r) % two_r, two_r) @ DUNKL_Y

                for N in range(61):
                    self.assertEqual(apply_operator(left, x(N), params), apply_operator(right, x(N), params))

    def test_invalid_tag(self) -> None:
        with self.assertRaises(ParameterError):
            apply_operator(Primitive(OperatorKind.PROJECTION, index=4, modulus=2), x(1), ModelParams(r=1, nu=0))

    def test_not_an_operator(self) -> None:
        with self.assertRaises(TypeError):
            DUNKL_Y @ x(1)

        with self.assertRaises(TypeError):
            DUNKL_Y + 1


class DunklInvariantTests(TestCase):
    def test_negative_degrees_must_cancel(self) -> None:
        params = ModelParams(r=3, nu=1)

        with patch("radial_hermite.operators.deriv_dxr", return_value=LaurentPoly({-5: 1})):
            with self.assertRaises(InvariantViolation):
                dunkl_Y(x(7), params)


if __name__ == "__main__":
    unittest.main()
