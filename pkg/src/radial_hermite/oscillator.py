"""
Hermite functions on the radial lines, ladder operators and the bosonic / supersymmetric Hamiltonians.

A `WeightedFunction` stands for scale * e^(-x^(2r)/2) * poly(x). The Gaussian factor is never expanded: it is
conjugated through the operators, which turns Y_nu into (Y_nu - x^r) on the polynomial part. The unnormalized
operators A = sqrt(2) a, A^dagger = sqrt(2) a^dagger and S = sqrt(2) Q have rational coefficients and act
exactly; the normalized ones only change the float scale.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
import logging
import math
from typing import Literal, Optional, Union

import numpy as np

from radial_hermite.inner_product import inner_product, norm_sq
from radial_hermite.operators import (
    DUNKL_Y,
    MUL_XR,
    REFLECTION_RR,
    OperatorTag,
    apply_operator,
    commutator,
)
from radial_hermite.params import DegreeParity, ModelParams, degree_class, deformed_number
from radial_hermite.polynomials import SparsePoly, evaluate, radial_hermite
from radial_hermite.utils import (
    InvariantViolation,
    ParameterError,
    dumps_csv,
    dumps_json,
    resolve_thread_count,
    round_float,
)

logger = logging.getLogger(__name__)

SQRT_HALF = math.sqrt(0.5)

# Operators on polynomial parts of weighted functions
CONJUGATED_Y = DUNKL_Y - MUL_XR
LOWER_A = DUNKL_Y
RAISE_A_DAGGER = 2 * MUL_XR - DUNKL_Y
SUPERCHARGE_S = CONJUGATED_Y @ REFLECTION_RR + MUL_XR
BOSONIC_H0 = Fraction(1, 4) * (LOWER_A @ RAISE_A_DAGGER + RAISE_A_DAGGER @ LOWER_A)
SUSY_BY_SQUARE = Fraction(1, 2) * (SUPERCHARGE_S @ SUPERCHARGE_S)
SUSY_BY_COMMUTATOR = BOSONIC_H0 - Fraction(1, 2) * (commutator(CONJUGATED_Y, MUL_XR) @ REFLECTION_RR)

SusyRoute = Literal["square", "commutator"]


@dataclass(frozen=True)
class WeightedFunction:
    """The function scale * e^(-x^(2r)/2) * poly(x) on the radial lines."""

    params: ModelParams
    poly: SparsePoly
    scale: float = 1.0

    def float_terms(self) -> dict[int, float]:
        """Float view of the polynomial part including the scale."""
        return self.poly.float_terms(self.scale)

    def with_poly(self, poly: SparsePoly, factor: float = 1.0) -> "WeightedFunction":
        return WeightedFunction(params=self.params, poly=poly, scale=self.scale * factor)

    def __call__(self, z: complex) -> complex:
        """Evaluates the function at a complex point (or numpy array of points)."""
        points = np.asarray(z, dtype=complex)
        values = np.exp(-(points ** (2 * self.params.r)) / 2) * evaluate(self.poly, points, scale=self.scale)

        return complex(values) if np.ndim(values) == 0 else values


def _act(tag: OperatorTag, w: WeightedFunction, factor: float = 1.0) -> WeightedFunction:
    result = apply_operator(tag, w.poly, w.params)

    if not isinstance(result, SparsePoly):
        raise InvariantViolation(f"Operator left negative degrees on {w.poly}: {result}.")

    return w.with_poly(result, factor)


def hermite_function(params: ModelParams, N: int) -> WeightedFunction:
    """Returns h_N = zeta_N^(-1/2) e^(-x^(2r)/2) H_N, orthonormal under the ray pairing.

    zeta_N leaves the double range long before its inverse square root does, so the scale comes from log zeta_N.
    """
    scale = math.exp(-0.5 * norm_sq(params, N).log_abs())

    return WeightedFunction(params=params, poly=radial_hermite(params, N), scale=scale)


def weighted_inner_product(f: WeightedFunction, g: WeightedFunction) -> float:
    """Float pairing sum_j integral_R F(omega^j x) conj(G(omega^j x)) |x|^(2 nu) dx of two weighted functions."""
    if not f.scale or not g.scale:
        return 0.0

    log_scale = math.log(abs(f.scale)) + math.log(abs(g.scale))
    value = inner_product(f.poly, g.poly, f.params).to_float(log_scale=-log_scale)

    return value if (f.scale < 0) == (g.scale < 0) else -value


def lower_A(w: WeightedFunction) -> WeightedFunction:
    """A = sqrt(2) a, acting on the polynomial part as Y_nu: A e H_N = e 2 [N]_nu H_(N-r)."""
    return _act(LOWER_A, w)


def raise_Adag(w: WeightedFunction) -> WeightedFunction:
    """A^dagger = sqrt(2) a^dagger, acting on the polynomial part as 2 x^r - Y_nu: A^dagger e H_N = e H_(N+r)."""
    return _act(RAISE_A_DAGGER, w)


def lower_a(w: WeightedFunction) -> WeightedFunction:
    return _act(LOWER_A, w, SQRT_HALF)


def raise_a_dagger(w: WeightedFunction) -> WeightedFunction:
    return _act(RAISE_A_DAGGER, w, SQRT_HALF)


def apply_H0(w: WeightedFunction) -> WeightedFunction:
    """H_0 = (A A^dagger + A^dagger A) / 4; H_0 h_N = ([N]_nu + [N+r]_nu) / 2 h_N."""
    return _act(BOSONIC_H0, w)


def apply_S(w: WeightedFunction) -> WeightedFunction:
    """S = sqrt(2) Q, acting on the polynomial part as (Y_nu - x^r) R_r + x^r."""
    return _act(SUPERCHARGE_S, w)


def apply_Q(w: WeightedFunction) -> WeightedFunction:
    return _act(SUPERCHARGE_S, w, SQRT_HALF)


def apply_H_susy(w: WeightedFunction, route: SusyRoute = "square") -> WeightedFunction:
    """H = Q^2, either as S^2 / 2 ("square") or as H_0 - [Y_nu, x^r] R_r / 2 ("commutator")."""
    if route == "square":
        return _act(SUSY_BY_SQUARE, w)
    elif route == "commutator":
        return _act(SUSY_BY_COMMUTATOR, w)

    raise ParameterError(f'Unknown route "{route}".')


def eigenvalue(before: WeightedFunction, after: WeightedFunction) -> Fraction:
    """Returns lambda with after.poly == lambda * before.poly exactly, failing if there is none."""
    if before.poly.is_zero():
        raise InvariantViolation("The zero function has no eigenvalue.")

    value = after.poly.leading_coefficient / before.poly.leading_coefficient if after.poly else Fraction(0)

    if after.poly != before.poly.scale(value):
        raise InvariantViolation(f"{before.poly} is not an eigenvector: image {after.poly}.")

    return value


def h0_energy(params: ModelParams, N: int) -> Fraction:
    return (deformed_number(params, N) + deformed_number(params, N + params.r)) / 2


def susy_energy(params: ModelParams, N: int) -> int:
    """floor(N/r) on the even class and floor(N/r) + 1 on the odd class; always an even integer."""
    decomposition = degree_class(params, N)

    return decomposition.n if decomposition.is_even else decomposition.n + 1


def level_degeneracy(params: ModelParams, energy: int) -> int:
    """Number of h_N with H h_N = energy h_N: r at the ground level, 2r at every positive even level."""
    if energy < 0 or energy % 2:
        return 0

    return params.r if energy == 0 else 2 * params.r


@dataclass(frozen=True)
class SpectrumRow:
    N: int
    parity: DegreeParity
    deformed_number: Fraction
    e_h0: Fraction
    e_susy: int
    zeta: float
    degeneracy: int


def spectrum_row(params: ModelParams, N: int) -> SpectrumRow:
    """Computes one spectrum row by applying H_0 and H = Q^2 exactly to H_N."""
    h = hermite_function(params, N)
    e_h0 = eigenvalue(h, apply_H0(h))
    e_susy = eigenvalue(h, apply_H_susy(h))

    if e_susy.denominator != 1:
        raise InvariantViolation(f"Supersymmetric energy {e_susy} of N = {N} is not an integer.")

    return SpectrumRow(
        N=N,
        parity=degree_class(params, N).parity,
        deformed_number=deformed_number(params, N),
        e_h0=e_h0,
        e_susy=int(e_susy),
        zeta=norm_sq(params, N).to_float(),
        degeneracy=level_degeneracy(params, int(e_susy)),
    )


def spectrum_table(params: ModelParams, n_max: int, threads: Optional[int] = None) -> list[SpectrumRow]:
    """Rows N = 0..n_max of both spectra; rows are independent and may be filled in parallel."""
    workers = resolve_thread_count(threads)
    logger.debug("Computing %d spectrum rows for %s with %d worker(s)", n_max + 1, params, workers)

    if workers == 1:
        return [spectrum_row(params, N) for N in range(n_max + 1)]

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda N: spectrum_row(params, N), range(n_max + 1)))


SPECTRUM_COLUMNS = ["N", "class", "deformed_number", "E_H0", "E_SUSY", "zeta_float", "degeneracy"]


def _spectrum_cells(row: SpectrumRow) -> list:
    return [row.N, row.parity.value, str(row.deformed_number), str(row.e_h0), row.e_susy, row.zeta, row.degeneracy]


def export_spectrum_csv(rows: list[SpectrumRow]) -> str:
    return dumps_csv(SPECTRUM_COLUMNS, [_spectrum_cells(row) for row in rows])


def export_spectrum_json(params: ModelParams, rows: list[SpectrumRow]) -> str:
    records = []

    for row in rows:
        cells = _spectrum_cells(row)
        cells[5] = round_float(row.zeta)
        records.append(dict(zip(SPECTRUM_COLUMNS, cells)))

    return dumps_json({"r": params.r, "nu": str(params.nu), "rows": records})


def hermite_function_values(params: ModelParams, N: int, z: Union[complex, np.ndarray]) -> np.ndarray:
    """Evaluates h_N at complex points with the normalized recurrence:

        h_(M+r) = sqrt(2 / [M+r]_nu) x^r h_M - sqrt([M]_nu / [M+r]_nu) h_(M-r),

    started from the exact h_s, s = N mod r. The monomial expansion of H_N cancels badly once N is large and
    |z| > 1; the recurrence keeps every intermediate value of order one.

    :param params: Model parameters.
    :param N: Degree of the Hermite function.
    :param z: Complex points (scalar or numpy array).
    :return: An array of h_N values with the shape of z.
    """
    if N < 0:
        raise ParameterError(f"Degree must be nonnegative, got {N}.")

    points = np.asarray(z, dtype=complex)
    r = params.r
    start = hermite_function(params, N % r)
    previous, current = np.zeros_like(points), evaluate(start.poly, points, scale=start.scale)

    for M in range(N % r, N, r):
        following = math.sqrt(2 / deformed_number(params, M + r)) * points**r * current

        if M >= r:
            following -= math.sqrt(deformed_number(params, M) / deformed_number(params, M + r)) * previous

        previous, current = current, following

    return np.exp(-(points ** (2 * r)) / 2) * current


def sample_rays(
    params: ModelParams, N: int, t_min: float = -2.0, t_max: float = 2.0, count: int = 201
) -> list[tuple[int, float, float, float]]:
    """Samples h_N(omega_r^j t) on every ray j = 0..r-1 for count evenly spaced t in [t_min, t_max].

    :return: Rows (ray_index, t, re_h, im_h).
    """
    t = np.linspace(t_min, t_max, count)
    rows = []

    for j in range(params.r):
        values = hermite_function_values(params, N, np.exp(2j * np.pi * j / params.r) * t)
        rows.extend((j, float(ti), float(v.real), float(v.imag)) for ti, v in zip(t, values))

    return rows


def export_samples_csv(rows: list[tuple[int, float, float, float]]) -> str:
    return dumps_csv(["ray_index", "t", "re_h", "im_h"], rows)


def export_samples_json(params: ModelParams, N: int, rows: list[tuple[int, float, float, float]]) -> str:
    return dumps_json(
        {
            "N": N,
            "r": params.r,
            "nu": str(params.nu),
            "samples": [
                {"ray_index": j, "t": round_float(t), "re_h": round_float(re), "im_h": round_float(im)}
                for j, t, re, im in rows
            ],
        }
    )
