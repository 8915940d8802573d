from fractions import Fraction
import math
import unittest
from unittest import TestCase

from radial_hermite.params import (
    DegreeParity,
    ModelParams,
    degree_class,
    deformed_factorial,
    deformed_number,
    nu_s,
    parse_rational,
    reflection_sign,
    vartheta,
)
from radial_hermite.utils import DomainError, ParameterError


class ParseRationalTests(TestCase):
    def test_fraction(self) -> None:
        self.assertEqual(parse_rational("7/3"), Fraction(7, 3))
        self.assertEqual(parse_rational("-1/3"), Fraction(-1, 3))
        self.assertEqual(parse_rational("4/6"), Fraction(2, 3))

    def test_integer(self) -> None:
        self.assertEqual(parse_rational("2"), Fraction(2))
        self.assertEqual(parse_rational(" 0 "), Fraction(0))
        self.assertEqual(parse_rational("+5"), Fraction(5))

    def test_rejects_malformed(self) -> None:
        for text in ["", "1.5", "1/", "/2", "a", "1/2/3", "1 / 2", "1e3"]:
            with self.assertRaises(ParameterError):
                parse_rational(text)

    def test_rejects_zero_denominator(self) -> None:
        with self.assertRaises(ParameterError):
            parse_rational("1/0")


class ModelParamsTests(TestCase):
    def test_valid(self) -> None:
        params = ModelParams(r=3, nu=Fraction(1))
        self.assertEqual(params.r, 3)
        self.assertEqual(params.nu, Fraction(1))
        self.assertIsInstance(params.nu, Fraction)

    def test_nu_from_int_and_string(self) -> None:
        self.assertEqual(ModelParams(r=1, nu=0).nu, Fraction(0))
        self.assertEqual(ModelParams(r=5, nu="1/2").nu, Fraction(1, 2))
        self.assertEqual(ModelParams(r=1, nu="-1/3").nu, Fraction(-1, 3))

    def test_even_r_rejected(self) -> None:
        for r in [0, 2, 4, -1, -3]:
            with self.assertRaises(ParameterError):
                ModelParams(r=r, nu=1)

    def test_non_integer_r_rejected(self) -> None:
        for r in [True, 3.0, "3"]:
            with self.assertRaises(ParameterError):
                ModelParams(r=r, nu=1)

    def test_nu_integrability(self) -> None:
        with self.assertRaises(DomainError):
            ModelParams(r=1, nu=Fraction(-1, 2))

        with self.assertRaises(DomainError):
            ModelParams(r=3, nu="-2/3")

        ModelParams(r=3, nu=Fraction(-49, 100))

    def test_nu_float_rejected(self) -> None:
        with self.assertRaises(ParameterError):
            ModelParams(r=1, nu=0.5)

    def test_operator_domain_flag(self) -> None:
        self.assertFalse(ModelParams(r=3, nu=1).operator_domain_ok)
        self.assertTrue(ModelParams(r=3, nu=2).operator_domain_ok)
        self.assertTrue(ModelParams(r=1, nu=Fraction(1, 10)).operator_domain_ok)
        self.assertFalse(ModelParams(r=1, nu=0).operator_domain_ok)

    def test_hashable_and_equal(self) -> None:
        self.assertEqual(ModelParams(r=3, nu="2/2"), ModelParams(r=3, nu=1))
        self.assertEqual(len({ModelParams(r=3, nu=1), ModelParams(r=3, nu=Fraction(1))}), 1)

    def test_str(self) -> None:
        self.assertEqual(str(ModelParams(r=5, nu="1/2")), "r=5, nu=1/2")


class DegreeClassTests(TestCase):
    def test_decomposition(self) -> None:
        params = ModelParams(r=3, nu=1)
        decomposition = degree_class(params, 10)
        self.assertEqual((decomposition.N, decomposition.n, decomposition.s), (10, 3, 1))
        self.assertEqual(decomposition.parity, DegreeParity.ODD)
        self.assertFalse(decomposition.is_even)

        decomposition = degree_class(params, 7)
        self.assertEqual((decomposition.n, decomposition.s), (2, 1))
        self.assertTrue(decomposition.is_even)

    def test_invariant(self) -> None:
        for r in [1, 3, 5]:
            params = ModelParams(r=r, nu=0)

            for N in range(50):
                decomposition = degree_class(params, N)
                self.assertEqual(decomposition.n * r + decomposition.s, N)
                self.assertTrue(0 <= decomposition.s < r)
                self.assertEqual(decomposition.is_even, (N // r) % 2 == 0)

    def test_negative_degree(self) -> None:
        with self.assertRaises(ParameterError):
            degree_class(ModelParams(r=1, nu=0), -1)

    def test_reflection_sign(self) -> None:
        params = ModelParams(r=3, nu=1)
        self.assertEqual([reflection_sign(params, N) for N in range(12)], [1, 1, 1, -1, -1, -1] * 2)


class DeformedNumberTests(TestCase):
    def test_nu_s(self) -> None:
        self.assertEqual(nu_s(ModelParams(r=1, nu=Fraction(3, 5)), 0), Fraction(3, 5))
        self.assertEqual(nu_s(ModelParams(r=3, nu=1), 0), 0)
        self.assertEqual(nu_s(ModelParams(r=3, nu=2), 1), Fraction(2, 3))

    def test_nu_s_out_of_range(self) -> None:
        params = ModelParams(r=3, nu=1)

        for s in [-1, 3, 7]:
            with self.assertRaises(ParameterError):
                nu_s(params, s)

    def test_nu_s_integrable(self) -> None:
        for r in [1, 3, 5, 7]:
            params = ModelParams(r=r, nu=Fraction(-49, 100))

            for s in range(r):
                self.assertGreater(nu_s(params, s) + Fraction(1, 2), 0)

    def test_vartheta(self) -> None:
        self.assertEqual(vartheta(ModelParams(r=3, nu=1), 6), 0)
        self.assertEqual(vartheta(ModelParams(r=3, nu=1), 4), Fraction(2, 3))

        params = ModelParams(r=1, nu=Fraction(7, 3))
        for n in range(1, 20, 2):
            self.assertEqual(vartheta(params, n), Fraction(14, 3))

    def test_deformed_number(self) -> None:
        self.assertEqual(deformed_number(ModelParams(r=5, nu=3), 0), 0)
        self.assertEqual(deformed_number(ModelParams(r=3, nu=2), 7), 2)
        self.assertEqual(deformed_number(ModelParams(r=3, nu=2), 10), Fraction(13, 3))

    def test_step(self) -> None:
        for r in [1, 3, 5]:
            for nu in ["0", "1/2", "7/3"]:
                params = ModelParams(r=r, nu=nu)

                for N in range(200):
                    decomposition = degree_class(params, N)
                    twice_nu_s = 2 * nu_s(params, decomposition.s)
                    expected = 1 + twice_nu_s if decomposition.is_even else 1 - twice_nu_s
                    self.assertEqual(deformed_number(params, N + r) - deformed_number(params, N), expected)

    def test_real_line(self) -> None:
        params = ModelParams(r=1, nu=Fraction(1, 2))

        for n in range(200):
            self.assertEqual(deformed_number(params, n), n + (1 if n % 2 else 0))

    def test_factorial(self) -> None:
        self.assertEqual(deformed_factorial(ModelParams(r=5, nu=1), 4), 1)
        self.assertEqual(deformed_factorial(ModelParams(r=3, nu=1), 6), 2)

        params = ModelParams(r=1, nu=0)
        for n in range(12):
            self.assertEqual(deformed_factorial(params, n), math.factorial(n))

    def test_factorial_telescoping(self) -> None:
        params = ModelParams(r=3, nu=Fraction(7, 3))

        for N in range(3, 40):
            self.assertEqual(
                deformed_factorial(params, N), deformed_factorial(params, N - 3) * deformed_number(params, N)
            )
            self.assertGreater(deformed_factorial(params, N), 0)


if __name__ == "__main__":
    unittest.main()
