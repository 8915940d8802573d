"""
Named invariant checks over one parameter point or the whole parameter grid, and the errata report.

Every check is exact (Fraction / symbolic Gamma equality) unless its name says otherwise; random inputs come
from a `random.Random` seeded per check so that a run is reproducible from (params, n_max, seed).
"""

from dataclasses import dataclass
from fractions import Fraction
import logging
import math
import random
import time
from typing import Callable, Optional

import numpy as np

from radial_hermite.inner_product import gram_matrix, inner_product, norm_sq, printed_norm_sq
from radial_hermite.operators import (
    DUNKL_Y,
    IDENTITY,
    MUL_XR,
    REFLECTION_RR,
    OperatorTag,
    anticommutator,
    apply_operator,
    commutator,
    dunkl_Y,
    project,
    projection,
    reflect_Rr,
    yang_dunkl,
)
from radial_hermite.oscillator import (
    CONJUGATED_Y,
    LOWER_A,
    RAISE_A_DAGGER,
    SUPERCHARGE_S,
    SUSY_BY_COMMUTATOR,
    SUSY_BY_SQUARE,
    WeightedFunction,
    apply_H0,
    apply_H_susy,
    eigenvalue,
    h0_energy,
    hermite_function,
    lower_A,
    lower_a,
    raise_a_dagger,
    raise_Adag,
    susy_energy,
    weighted_inner_product,
)
from radial_hermite.params import (
    ModelParams,
    degree_class,
    deformed_factorial,
    deformed_number,
    nu_s,
    reflection_sign,
)
from radial_hermite.polynomials import X, SparsePoly, gen_hermite, laguerre, radial_hermite
from radial_hermite.utils import InvariantViolation, RadialHermiteError, dumps_csv, dumps_json

logger = logging.getLogger(__name__)

GRID_R = (1, 3, 5)
GRID_NU = ("0", "1/2", "1", "7/3")
DEFAULT_N_MAX = 40

MONOMIAL_BOUND = 60
DEFORMED_BOUND = 200
LAGUERRE_BOUND = 20
LAGUERRE_ALPHAS = (Fraction(-1, 3), Fraction(1, 2), Fraction(1), Fraction(7, 3))
RANDOM_DEGREE = 30
PAIRING_DEGREE = 20
ANTISYMMETRY_PAIRS = 50
PROJECTION_PAIRS = 10
ROTATION_POINTS = 20
FLOAT_TOLERANCE = 1e-12
GRAM_TOLERANCE = 1e-10


@dataclass(frozen=True)
class CheckContext:
    params: ModelParams
    n_max: int
    rng: random.Random
    threads: Optional[int] = None


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class _RegisteredCheck:
    name: str
    function: Callable[[CheckContext], Optional[str]]
    r1_only: bool


# Checks in registration order; each returns None on success or a one-line failure detail
_CHECKS: list[_RegisteredCheck] = []


def check(name: str, r1_only: bool = False) -> Callable:
    """Registers a check function under a name.

    :param name: The name printed by `verify`.
    :param r1_only: Whether the check only applies to the real-line case r = 1.
    """

    def register(function: Callable[[CheckContext], Optional[str]]) -> Callable[[CheckContext], Optional[str]]:
        _CHECKS.append(_RegisteredCheck(name=name, function=function, r1_only=r1_only))
        return function

    return register


def check_names(params: Optional[ModelParams] = None) -> list[str]:
    """Names of the registered checks, restricted to those that apply to params when given."""
    return [entry.name for entry in _CHECKS if params is None or not entry.r1_only or params.r == 1]


def random_poly(rng: random.Random, max_degree: int, min_degree: int = 0) -> SparsePoly:
    """A nonzero polynomial with small rational coefficients whose degree lies in [min_degree, max_degree]."""
    degree = rng.randint(min_degree, max_degree)
    terms = {d: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for d in range(degree) if rng.random() < 0.5}
    terms[degree] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))

    return SparsePoly(terms)


def _monomial(N: int) -> SparsePoly:
    return SparsePoly.monomial(N)


def _lowered(params: ModelParams, N: int) -> SparsePoly:
    """2 [N]_nu H_(N-r), or zero for N < r."""
    if N < params.r:
        return SparsePoly.zero()

    return radial_hermite(params, N - params.r).scale(2 * deformed_number(params, N))


def _float_mismatch(actual: WeightedFunction, expected: WeightedFunction) -> float:
    """Largest coefficient difference of the float views relative to the largest expected coefficient."""
    a, b = actual.float_terms(), expected.float_terms()
    scale = max((abs(v) for v in b.values()), default=1.0)

    return max((abs(a.get(d, 0.0) - b.get(d, 0.0)) for d in set(a) | set(b)), default=0.0) / scale


@check("deformed_number_step")
def _deformed_number_step(context: CheckContext) -> Optional[str]:
    params = context.params

    for N in range(DEFORMED_BOUND + 1):
        decomposition = degree_class(params, N)
        twice_nu_s = 2 * nu_s(params, decomposition.s)
        expected = 1 + twice_nu_s if decomposition.is_even else 1 - twice_nu_s

        if deformed_number(params, N + params.r) - deformed_number(params, N) != expected:
            return f"[N+r] - [N] != {expected} at N = {N}"

    return None


@check("deformed_factorial_telescoping")
def _deformed_factorial_telescoping(context: CheckContext) -> Optional[str]:
    params = context.params

    for N in range(params.r, context.n_max + 1):
        if deformed_factorial(params, N) != deformed_factorial(params, N - params.r) * deformed_number(params, N):
            return f"[N]! != [N-r]! [N] at N = {N}"

    return None


@check("r1_deformed_number", r1_only=True)
def _r1_deformed_number(context: CheckContext) -> Optional[str]:
    params = context.params

    for n in range(DEFORMED_BOUND + 1):
        if deformed_number(params, n) != n + (2 * params.nu if n % 2 else 0):
            return f"[n] != n + theta_n at n = {n}"

    return None


@check("hermite_methods")
def _hermite_methods(context: CheckContext) -> Optional[str]:
    nu = context.params.nu

    for n in range(context.n_max + 1):
        by_recurrence = gen_hermite(n, nu, method="recurrence")

        if by_recurrence != gen_hermite(n, nu, method="laguerre"):
            return f"recurrence and Laguerre forms of H_{n}^(nu) differ"

        if by_recurrence.leading_coefficient != 2**n or any((d - n) % 2 for d in by_recurrence.terms):
            return f"H_{n}^(nu) has the wrong leading coefficient or parity"

    return None


@check("radial_methods")
def _radial_methods(context: CheckContext) -> Optional[str]:
    for N in range(context.n_max + 1):
        if radial_hermite(context.params, N) != radial_hermite(context.params, N, method="closed_form"):
            return f"recurrence and closed form of H_{N} differ"

    return None


@check("leading_coefficient_and_support")
def _leading_coefficient_and_support(context: CheckContext) -> Optional[str]:
    r = context.params.r

    for N in range(context.n_max + 1):
        H = radial_hermite(context.params, N)

        if H.degree != N or H.leading_coefficient != 2 ** (N // r):
            return f"H_{N} has degree {H.degree} and leading coefficient {H.leading_coefficient}"

        if any((N - d) % (2 * r) for d in H.terms):
            return f"H_{N} has a degree outside N - 2rZ"

    return None


@check("rotation_symmetry")
def _rotation_symmetry(context: CheckContext) -> Optional[str]:
    """H_N(omega_r z) = omega_r^N H_N(z) at random complex points (float)."""
    r = context.params.r
    omega = np.exp(2j * np.pi / r)
    points = [complex(context.rng.uniform(-1.5, 1.5), context.rng.uniform(-1.5, 1.5)) for _ in range(ROTATION_POINTS)]

    for N in range(context.n_max + 1):
        # h_N instead of H_N keeps the float coefficients in range; e^(-z^(2r)/2) is invariant under z -> omega z
        h = hermite_function(context.params, N)
        terms = h.float_terms()

        for z in points:
            majorant = abs(np.exp(-(z ** (2 * r)) / 2)) * sum(abs(c) * abs(z) ** d for d, c in terms.items())
            deviation = abs(h(omega * z) - omega**N * h(z))

            if deviation > FLOAT_TOLERANCE * majorant:
                return f"H_{N}(omega z) - omega^N H_{N}(z) = {deviation:.3g} at z = {z}"

    return None


@check("laguerre_identities")
def _laguerre_identities(context: CheckContext) -> Optional[str]:
    for alpha in LAGUERRE_ALPHAS:
        for n in range(LAGUERRE_BOUND + 1):
            L = laguerre(n, alpha)
            previous = laguerre(n - 1, alpha) if n else SparsePoly.zero()
            raised = laguerre(n - 1, alpha + 1) if n else SparsePoly.zero()
            lowered = laguerre(n, alpha - 1)
            x_derivative = X * L.derivative()

            if x_derivative != L * n - previous * (n + alpha):
                return f"x L' = n L_n - (n + alpha) L_(n-1) fails at n = {n}, alpha = {alpha}"

            if lowered != L - previous:
                return f"L_n^(alpha-1) = L_n - L_(n-1) fails at n = {n}, alpha = {alpha}"

            if L.derivative() != -raised:
                return f"L' = -L_(n-1)^(alpha+1) fails at n = {n}, alpha = {alpha}"

            if x_derivative != lowered * (n + alpha) - L * alpha:
                return f"x L' = (n + alpha) L_n^(alpha-1) - alpha L_n fails at n = {n}, alpha = {alpha}"

    return None


@check("r1_hermite_reduction", r1_only=True)
def _r1_hermite_reduction(context: CheckContext) -> Optional[str]:
    for n in range(context.n_max + 1):
        if radial_hermite(context.params, n) != gen_hermite(n, context.params.nu):
            return f"H_{n}^(1,nu) != H_{n}^(nu)"

    return None


@check("projection_resolution")
def _projection_resolution(context: CheckContext) -> Optional[str]:
    r = context.params.r
    p = random_poly(context.rng, RANDOM_DEGREE)

    for m in (r, 2 * r):
        pieces = [project(p, i, m) for i in range(m)]

        if sum(pieces, SparsePoly.zero()) != p:
            return f"sum of Pi_i({m}) is not the identity"

        for i in range(m):
            for j in range(m):
                expected = pieces[i] if i == j else SparsePoly.zero()

                if project(pieces[j], i, m) != expected:
                    return f"Pi_{i}({m}) Pi_{j}({m}) != delta Pi_{i}({m})"

    return None


@check("reflection_involution")
def _reflection_involution(context: CheckContext) -> Optional[str]:
    params = context.params
    p = random_poly(context.rng, RANDOM_DEGREE)

    if reflect_Rr(reflect_Rr(p, params), params) != p:
        return "R_r R_r != identity"

    for N in range(context.n_max + 1):
        H = radial_hermite(params, N)

        if reflect_Rr(H, params) != H.scale(reflection_sign(params, N)):
            return f"R_r H_{N} != {reflection_sign(params, N)} H_{N}"

    return None


@check("dunkl_monomial_action")
def _dunkl_monomial_action(context: CheckContext) -> Optional[str]:
    params = context.params

    for N in range(MONOMIAL_BOUND + 1):
        expected = SparsePoly.zero() if N < params.r else _monomial(N - params.r).scale(deformed_number(params, N))

        if dunkl_Y(_monomial(N), params) != expected:
            return f"Y x^{N} != [N] x^(N-r)"

    return None


@check("dunkl_on_hermite")
def _dunkl_on_hermite(context: CheckContext) -> Optional[str]:
    for N in range(context.n_max + 1):
        if dunkl_Y(radial_hermite(context.params, N), context.params) != _lowered(context.params, N):
            return f"Y H_{N} != 2 [N] H_(N-r)"

    return None


@check("graded_intertwining")
def _graded_intertwining(context: CheckContext) -> Optional[str]:
    params = context.params
    two_r = 2 * params.r

    for s in range(two_r):
        left = DUNKL_Y @ projection(s, two_r)
        right = projection((s + params.r) % two_r, two_r) @ DUNKL_Y

        for N in range(MONOMIAL_BOUND + 1):
            if apply_operator(left, _monomial(N), params) != apply_operator(right, _monomial(N), params):
                return f"Y Pi_{s}(2r) != Pi_(r+{s})(2r) Y on x^{N}"

    return None


@check("reflection_anticommutation")
def _reflection_anticommutation(context: CheckContext) -> Optional[str]:
    params = context.params
    p = random_poly(context.rng, RANDOM_DEGREE)

    for label, tag in (("Y", DUNKL_Y), ("x^r", MUL_XR)):
        if apply_operator(anticommutator(tag, REFLECTION_RR), p, params) != 0:
            return f"{label} R_r + R_r {label} != 0"

    return None


def grading_operator(params: ModelParams) -> OperatorTag:
    """1 + (1/r) sum_s (2 nu + 2s + 1 - r)(Pi_s(2r) - Pi_(r+s)(2r)), the value of [Y_nu, x^r]."""
    r, two_r = params.r, 2 * params.r
    tag = IDENTITY

    for s in range(r):
        tag = tag + Fraction(2 * params.nu + 2 * s + 1 - r) / r * (projection(s, two_r) - projection(r + s, two_r))

    return tag


@check("dunkl_commutator")
def _dunkl_commutator(context: CheckContext) -> Optional[str]:
    params = context.params
    bracket, grading = commutator(DUNKL_Y, MUL_XR), grading_operator(params)

    for N in range(MONOMIAL_BOUND + 1):
        decomposition = degree_class(params, N)
        twice_nu_s = 2 * nu_s(params, decomposition.s)
        expected = _monomial(N).scale(1 + twice_nu_s if decomposition.is_even else 1 - twice_nu_s)

        if apply_operator(bracket, _monomial(N), params) != expected:
            return f"[Y, x^r] x^{N} != (1 +- 2 nu_s) x^{N}"

        if apply_operator(grading, _monomial(N), params) != expected:
            return f"grading operator disagrees with [Y, x^r] on x^{N}"

    return None


@check("no_polynomial_eigenfunctions")
def _no_polynomial_eigenfunctions(context: CheckContext) -> Optional[str]:
    params = context.params

    for _ in range(20):
        p = random_poly(context.rng, RANDOM_DEGREE, min_degree=params.r)
        image = dunkl_Y(p, params)

        if image.degree != p.degree - params.r:
            return f"deg Y p = {image.degree} for deg p = {p.degree}"

    return None


@check("r1_yang_dunkl", r1_only=True)
def _r1_yang_dunkl(context: CheckContext) -> Optional[str]:
    for n in range(MONOMIAL_BOUND + 1):
        if dunkl_Y(_monomial(n), context.params) != yang_dunkl(_monomial(n), context.params.nu):
            return f"Y_nu and the Yang-Dunkl operator differ on x^{n}"

    return None


@check("ladder_commutator")
def _ladder_commutator(context: CheckContext) -> Optional[str]:
    params = context.params
    bracket = commutator(LOWER_A, RAISE_A_DAGGER)

    for N in range(MONOMIAL_BOUND + 1):
        step = deformed_number(params, N + params.r) - deformed_number(params, N)

        if apply_operator(bracket, _monomial(N), params) != _monomial(N).scale(2 * step):
            return f"[A, A^dagger] x^{N} != 2([N+r] - [N]) x^{N}"

    return None


@check("ladder_exactness")
def _ladder_exactness(context: CheckContext) -> Optional[str]:
    params = context.params

    for N in range(context.n_max + 1):
        w = WeightedFunction(params=params, poly=radial_hermite(params, N))

        if lower_A(w).poly != _lowered(params, N):
            return f"A H_{N} != 2 [N] H_(N-r)"

        if raise_Adag(w).poly != radial_hermite(params, N + params.r):
            return f"A^dagger H_{N} != H_(N+r)"

    return None


@check("factorized_hamiltonian")
def _factorized_hamiltonian(context: CheckContext) -> Optional[str]:
    params = context.params

    for N in range(context.n_max + 1):
        H = radial_hermite(params, N)

        if apply_operator(RAISE_A_DAGGER @ LOWER_A, H, params) != H.scale(2 * deformed_number(params, N)):
            return f"A^dagger A H_{N} != 2 [N] H_{N}"

    return None


@check("normalized_ladders")
def _normalized_ladders(context: CheckContext) -> Optional[str]:
    """a h_N = sqrt([N]) h_(N-r) and a^dagger h_N = sqrt([N+r]) h_(N+r) in the float view."""
    params = context.params

    for N in range(context.n_max + 1):
        h = hermite_function(params, N)
        up = hermite_function(params, N + params.r)
        expected_up = up.with_poly(up.poly, math.sqrt(deformed_number(params, N + params.r)))

        if _float_mismatch(raise_a_dagger(h), expected_up) > FLOAT_TOLERANCE:
            return f"a^dagger h_{N} != sqrt([N+r]) h_(N+r)"

        if N >= params.r:
            down = hermite_function(params, N - params.r)
            expected_down = down.with_poly(down.poly, math.sqrt(deformed_number(params, N)))

            if _float_mismatch(lower_a(h), expected_down) > FLOAT_TOLERANCE:
                return f"a h_{N} != sqrt([N]) h_(N-r)"

    return None


@check("h0_spectrum")
def _h0_spectrum(context: CheckContext) -> Optional[str]:
    params = context.params

    for N in range(context.n_max + 1):
        h = hermite_function(params, N)
        value = eigenvalue(h, apply_H0(h))

        if value != h0_energy(params, N):
            return f"H_0 h_{N} = {value} h_{N}, expected {h0_energy(params, N)}"

        if params.r == 1 and value != N + params.nu + Fraction(1, 2):
            return f"H_0 h_{N} = {value} h_{N}, expected n + nu + 1/2"

    return None


@check("susy_two_routes")
def _susy_two_routes(context: CheckContext) -> Optional[str]:
    params = context.params
    inputs = [(f"x^{N}", _monomial(N)) for N in range(MONOMIAL_BOUND + 1)]
    inputs += [(f"H_{N}", radial_hermite(params, N)) for N in range(context.n_max + 1)]

    for label, p in inputs:
        if apply_operator(SUSY_BY_SQUARE, p, params) != apply_operator(SUSY_BY_COMMUTATOR, p, params):
            return f"S^2 / 2 and H_0 - [Y, x^r] R_r / 2 differ on {label}"

    return None


@check("susy_spectrum")
def _susy_spectrum(context: CheckContext) -> Optional[str]:
    params = context.params

    for N in range(context.n_max + 1):
        h = hermite_function(params, N)
        value = eigenvalue(h, apply_H_susy(h))

        if value != susy_energy(params, N) or value < 0 or value % 2:
            return f"H h_{N} = {value} h_{N}, expected {susy_energy(params, N)}"

        if params.r == 1 and value != N + N % 2:
            return f"H h_{N} = {value} h_{N}, expected n + (1 - (-1)^n) / 2"

    return None


@check("ground_states")
def _ground_states(context: CheckContext) -> Optional[str]:
    """S annihilates x^s exactly for s < r and no other monomial."""
    params = context.params

    for N in range(MONOMIAL_BOUND + 1):
        annihilated = apply_operator(SUPERCHARGE_S, _monomial(N), params) == 0

        if annihilated != (N < params.r):
            return f"S x^{N} {'=' if annihilated else '!='} 0"

    return None


@check("orthogonality")
def _orthogonality(context: CheckContext) -> Optional[str]:
    gram = gram_matrix(context.params, context.n_max, threads=context.threads)
    nonzero = gram.off_diagonal_nonzero()

    if nonzero:
        return f"{len(nonzero)} nonzero off-diagonal entries, first at {nonzero[0]}"

    off_diagonal = np.abs(gram.normalized_values())
    np.fill_diagonal(off_diagonal, 0.0)

    if off_diagonal.max() >= GRAM_TOLERANCE:
        return f"float off-diagonal {off_diagonal.max():.3g} relative to the diagonal"

    return None


@check("norm_closed_form")
def _norm_closed_form(context: CheckContext) -> Optional[str]:
    params = context.params

    for N in range(context.n_max + 1):
        H = radial_hermite(params, N)

        if inner_product(H, H, params) != norm_sq(params, N):
            return f"<H_{N}, H_{N}> != zeta_{N}"

        if N >= params.r and norm_sq(params, N) != norm_sq(params, N - params.r) * (2 * deformed_number(params, N)):
            return f"zeta_{N} != 2 [N] zeta_(N-r)"

    return None


@check("antisymmetry")
def _antisymmetry(context: CheckContext) -> Optional[str]:
    """<Y F, G> = -<F, Y G> for Gaussian-weighted F, G (Y acts as Y - x^r on polynomial parts)."""
    params = context.params

    for _ in range(ANTISYMMETRY_PAIRS):
        f, g = random_poly(context.rng, PAIRING_DEGREE), random_poly(context.rng, PAIRING_DEGREE)
        left = inner_product(apply_operator(CONJUGATED_Y, f, params), g, params)
        right = inner_product(f, apply_operator(CONJUGATED_Y, g, params), params)

        if left != -right:
            return f"<Y F, G> = {left} but <F, Y G> = {right}"

    return None


@check("projection_self_adjoint")
def _projection_self_adjoint(context: CheckContext) -> Optional[str]:
    params = context.params

    for _ in range(PROJECTION_PAIRS):
        f, g = random_poly(context.rng, PAIRING_DEGREE), random_poly(context.rng, PAIRING_DEGREE)

        for m in (params.r, 2 * params.r):
            for j in range(m):
                if inner_product(project(f, j, m), g, params) != inner_product(f, project(g, j, m), params):
                    return f"Pi_{j}({m}) is not self-adjoint"

    return None


def run_checks(
    params: ModelParams, n_max: int = DEFAULT_N_MAX, seed: int = 0, threads: Optional[int] = None
) -> list[CheckResult]:
    """Runs every check that applies to params.

    :param params: Model parameters.
    :param n_max: Largest degree N used by the checks over Hermite polynomials and functions.
    :param seed: Seed of the per-check random generators.
    :param threads: Worker cap for the Gram fill.
    :return: One CheckResult per applicable check, in registration order.
    """
    results = []
    names = set(check_names(params))

    for entry in _CHECKS:
        if entry.name not in names:
            continue

        context = CheckContext(params=params, n_max=n_max, rng=random.Random(f"{seed}:{entry.name}"), threads=threads)
        start = time.perf_counter()

        try:
            failure = entry.function(context)
        except (RadialHermiteError, InvariantViolation) as e:
            failure = f"{type(e).__name__}: {e}"

        logger.debug("Check %s for %s took %.3fs", entry.name, params, time.perf_counter() - start)
        results.append(CheckResult(name=entry.name, passed=failure is None, detail=failure or ""))

    return results


@dataclass(frozen=True)
class GridResult:
    params: ModelParams
    results: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)


def parameter_grid() -> list[ModelParams]:
    return [ModelParams(r=r, nu=nu) for r in GRID_R for nu in GRID_NU]


def run_grid(n_max: int = DEFAULT_N_MAX, seed: int = 0, threads: Optional[int] = None) -> list[GridResult]:
    """Runs run_checks for every (r, nu) in {1, 3, 5} x {0, 1/2, 1, 7/3}."""
    return [GridResult(params, run_checks(params, n_max, seed=seed, threads=threads)) for params in parameter_grid()]


def _check_rows(grid: list[GridResult]) -> list[tuple[int, str, str, str, str]]:
    return [
        (point.params.r, str(point.params.nu), result.name, "pass" if result.passed else "fail", result.detail)
        for point in grid
        for result in point.results
    ]


def export_checks_csv(grid: list[GridResult]) -> str:
    return dumps_csv(["r", "nu", "check", "status", "detail"], _check_rows(grid))


def export_checks_json(grid: list[GridResult]) -> str:
    return dumps_json(
        {
            "passed": all(point.passed for point in grid),
            "checks": [
                {"r": r, "nu": nu, "check": name, "status": status, "detail": detail}
                for r, nu, name, status, detail in _check_rows(grid)
            ],
        }
    )


@dataclass(frozen=True)
class Erratum:
    """A printed formula, its corrected form, and live evidence at an anchor parameter point."""

    label: str
    printed: str
    corrected: str
    evidence: str
    reproduced: bool


def _recurrence_erratum() -> Erratum:
    params = ModelParams(r=1, nu=0)
    H0, H1 = radial_hermite(params, 0), radial_hermite(params, 1)
    # Printed: 2 x^r H_N = H_(N+r) - 2 [N] H_(N-r), i.e. H_(N+r) = 2 x^r H_N + 2 [N] H_(N-r)
    printed = H1.shift(1) * 2 + H0 * (2 * deformed_number(params, 1))
    corrected = radial_hermite(params, 2)
    overlap = inner_product(printed, H0, params)

    return Erratum(
        label="three-term recurrence sign",
        printed=f"H_2 = {printed} at r=1, nu=0",
        corrected=f"H_(N+r) = 2x^r H_N - 2[N]_nu H_(N-r), H_2 = {corrected}",
        evidence=f"<printed H_2, H_0> = {overlap} ~ {overlap.to_float():.15g}, not orthogonal",
        reproduced=printed != corrected and not overlap.is_zero,
    )


def _raising_erratum() -> Erratum:
    params = ModelParams(r=3, nu=1)
    H3 = radial_hermite(params, 3)
    printed = apply_operator(DUNKL_Y + 2 * MUL_XR, H3, params)
    corrected = apply_operator(RAISE_A_DAGGER, H3, params)

    return Erratum(
        label="raising operator sign",
        printed=f"(Y + 2x^r) H_3 = {printed} at r=3, nu=1",
        corrected=f"(2x^r - Y) H_3 = {corrected} = H_6",
        evidence=f"H_6 = {radial_hermite(params, 6)}",
        reproduced=printed != radial_hermite(params, 6) and corrected == radial_hermite(params, 6),
    )


def _factorized_erratum() -> Erratum:
    params = ModelParams(r=3, nu=1)
    H6 = radial_hermite(params, 6)
    printed = apply_operator(DUNKL_Y @ DUNKL_Y + 2 * (MUL_XR @ DUNKL_Y), H6, params)
    corrected = apply_operator(2 * (MUL_XR @ DUNKL_Y) - DUNKL_Y @ DUNKL_Y, H6, params)
    expected = H6.scale(2 * deformed_number(params, 6))

    return Erratum(
        label="differential-difference equation sign",
        printed=f"(Y^2 + 2x^r Y) H_6 = {printed} at r=3, nu=1",
        corrected=f"(2x^r Y - Y^2) H_6 = {corrected} = 2[6]_nu H_6",
        evidence=f"2[6]_nu H_6 = {expected}",
        reproduced=printed != expected and corrected == expected,
    )


def _norm_erratum() -> Erratum:
    params = ModelParams(r=1, nu=0)
    printed = printed_norm_sq(params, 1)
    corrected = norm_sq(params, 1)
    H1 = radial_hermite(params, 1)
    gram = inner_product(H1, H1, params)

    return Erratum(
        label="closed-form norm",
        printed=f"zeta_1 = {printed:.15g} at r=1, nu=0",
        corrected=f"zeta_1 = {corrected} ~ {corrected.to_float():.15g}",
        evidence=f"<H_1, H_1> = {gram} ~ {gram.to_float():.15g}",
        reproduced=gram == corrected and not math.isclose(printed, gram.to_float(), rel_tol=1e-12),
    )


def _normalization_erratum() -> Erratum:
    params = ModelParams(r=1, nu=0)
    zeta = norm_sq(params, 0).to_float()
    # gamma_N = 2^[N/r] [N]_nu! / zeta_N; h_0 = gamma_0^(-1/2) e H_0 has squared norm zeta_0 / gamma_0
    gamma = float(deformed_factorial(params, 0)) / zeta
    printed = zeta / gamma
    h0 = hermite_function(params, 0)
    corrected = weighted_inner_product(h0, h0)

    return Erratum(
        label="Hermite function normalization",
        printed=f"<h_0, h_0> = {printed:.15g} with gamma_N^(-1/2) at r=1, nu=0",
        corrected=f"<h_0, h_0> = {corrected:.15g} with zeta_N^(-1/2)",
        evidence=f"zeta_0 = {zeta:.15g}, gamma_0 = {gamma:.15g}",
        reproduced=not math.isclose(printed, 1.0, rel_tol=1e-12) and math.isclose(corrected, 1.0, rel_tol=1e-12),
    )


def _spectrum_erratum() -> Erratum:
    params = ModelParams(r=3, nu=1)
    printed = 3 // params.r
    h3 = hermite_function(params, 3)
    computed = eigenvalue(h3, apply_H_susy(h3))

    return Erratum(
        label="supersymmetric spectrum",
        printed=f"H h_3 = [N/r] h_3 = {printed} h_3 at r=3, nu=1",
        corrected=f"H h_N = (floor(N/r) + (1 - (-1)^floor(N/r)) / 2) h_N = {susy_energy(params, 3)} h_3",
        evidence=f"S^2 / 2 applied to H_3 gives {computed} H_3",
        reproduced=computed != printed and computed == susy_energy(params, 3),
    )


def errata() -> list[Erratum]:
    """Recomputes every documented correction at its anchor parameters."""
    return [
        _recurrence_erratum(),
        _raising_erratum(),
        _factorized_erratum(),
        _norm_erratum(),
        _normalization_erratum(),
        _spectrum_erratum(),
    ]


ERRATA_COLUMNS = ["label", "printed", "corrected", "evidence", "reproduced"]


def export_errata_csv(items: list[Erratum]) -> str:
    return dumps_csv(
        ERRATA_COLUMNS,
        [(e.label, e.printed, e.corrected, e.evidence, str(e.reproduced).lower()) for e in items],
    )


def export_errata_json(items: list[Erratum]) -> str:
    return dumps_json(
        {
            "errata": [
                {
                    "label": e.label,
                    "printed": e.printed,
                    "corrected": e.corrected,
                    "evidence": e.evidence,
                    "reproduced": e.reproduced,
                }
                for e in items
            ]
        }
    )
