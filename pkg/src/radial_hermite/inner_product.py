"""
Moments of the weight |x|^(2 nu) e^(-x^(2r)), the ray inner product, Gram matrices and norms.

Every moment is a rational multiple of Gamma(beta) for some beta in (0, 1] (its class), after shifting the
argument with Gamma(z + 1) = z Gamma(z). Inner products are sums over such classes, so orthogonality can be
checked exactly with Fraction arithmetic.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
import logging
import math
from typing import Any, Mapping, Optional, Union

import numpy as np

from radial_hermite.params import ModelParams, degree_class, nu_s
from radial_hermite.polynomials import SparsePoly, radial_hermite
from radial_hermite.utils import (
    DomainError,
    InvariantViolation,
    ParameterError,
    Rational,
    as_fraction,
    dumps_csv,
    dumps_json,
    log_abs,
    resolve_thread_count,
    round_float,
    scaled_float,
)

logger = logging.getLogger(__name__)

# Lanczos approximation with g = 7 and nine coefficients; about 15 significant digits for x >= 1/2
LANCZOS_G = 7
LANCZOS_COEFFICIENTS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_value(x: float) -> float:
    """Computes Gamma(x) for x > 0 with the Lanczos approximation.

    Arguments below 1/2 are moved up with Gamma(x) = Gamma(x + 1) / x, so no reflection formula is needed.

    :param x: A positive real argument.
    :return: Gamma(x), with at least 12 significant digits on (0, 50].
    """
    x = float(x)

    if not x > 0:
        raise DomainError(f"gamma_value needs a positive argument, got {x}.")

    if x < 0.5:
        return gamma_value(x + 1) / x

    z = x - 1
    series = LANCZOS_COEFFICIENTS[0]

    for i, coefficient in enumerate(LANCZOS_COEFFICIENTS[1:], start=1):
        series += coefficient / (z + i)

    t = z + LANCZOS_G + 0.5

    return math.sqrt(2 * math.pi) * t ** (z + 0.5) * math.exp(-t) * series


@dataclass(frozen=True)
class SymbolicMoment:
    """The value coeff * Gamma(base) with base in (0, 1]; zero is stored with base 1."""

    coeff: Fraction
    base: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        coeff = as_fraction(self.coeff, name="coeff")
        base = as_fraction(self.base, name="base")

        if coeff == 0:
            base = Fraction(1)
        elif not 0 < base <= 1:
            raise InvariantViolation(f"Gamma class base must lie in (0, 1], got {base}.")

        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "base", base)

    @classmethod
    def gamma(cls, argument: Rational, coeff: Rational = 1) -> "SymbolicMoment":
        """Returns coeff * Gamma(argument), normalized so that the stored base lies in (0, 1].

        :param argument: A positive rational Gamma argument.
        :param coeff: Rational prefactor.
        """
        argument = as_fraction(argument, name="Gamma argument")
        coeff = as_fraction(coeff, name="coeff")

        if argument <= 0:
            raise DomainError(f"Gamma argument must be positive, got {argument}.")

        shift = math.ceil(argument) - 1
        base = argument - shift

        for i in range(shift):
            coeff *= base + i

        return cls(coeff=coeff, base=base)

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0

    def log_abs(self) -> float:
        """Returns log |coeff * Gamma(base)|, or -inf for the zero moment."""
        return log_abs(self.coeff) + math.log(gamma_value(self.base))

    def to_float(self, log_scale: float = 0.0) -> float:
        """Returns the value times exp(-log_scale) as a float; values past the double range saturate to +-inf."""
        return scaled_float(self.coeff, gamma_value(self.base), -log_scale)

    def __mul__(self, c: Rational) -> "SymbolicMoment":
        if isinstance(c, bool) or not isinstance(c, (int, Fraction)):
            return NotImplemented

        return SymbolicMoment(coeff=self.coeff * c, base=self.base)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return "0" if self.is_zero else f"{self.coeff}*Gamma({self.base})"


ZERO_MOMENT = SymbolicMoment(Fraction(0))


@dataclass(frozen=True)
class MomentSum:
    """A finite sum of Gamma classes: base -> rational coefficient, zeros dropped."""

    terms: Mapping[Fraction, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", {base: coeff for base, coeff in sorted(self.terms.items()) if coeff != 0})

    @classmethod
    def of(cls, *moments: SymbolicMoment) -> "MomentSum":
        terms: dict[Fraction, Fraction] = {}

        for moment in moments:
            if not moment.is_zero:
                terms[moment.base] = terms.get(moment.base, Fraction(0)) + moment.coeff

        return cls(terms)

    def __add__(self, other: Union["MomentSum", SymbolicMoment]) -> "MomentSum":
        if isinstance(other, SymbolicMoment):
            other = MomentSum.of(other)

        if not isinstance(other, MomentSum):
            return NotImplemented

        terms = dict(self.terms)

        for base, coeff in other.terms.items():
            terms[base] = terms.get(base, Fraction(0)) + coeff

        return MomentSum(terms)

    def __neg__(self) -> "MomentSum":
        return MomentSum({base: -coeff for base, coeff in self.terms.items()})

    def __sub__(self, other: Union["MomentSum", SymbolicMoment]) -> "MomentSum":
        if isinstance(other, SymbolicMoment):
            other = MomentSum.of(other)

        if not isinstance(other, MomentSum):
            return NotImplemented

        return self + (-other)

    def __mul__(self, c: Rational) -> "MomentSum":
        if isinstance(c, bool) or not isinstance(c, (int, Fraction)):
            return NotImplemented

        return MomentSum({base: coeff * c for base, coeff in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, SymbolicMoment):
            other = MomentSum.of(other)

        if not isinstance(other, MomentSum):
            return NotImplemented

        return dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def to_float(self, log_scale: float = 0.0) -> float:
        """Returns the sum times exp(-log_scale) as a float, see SymbolicMoment.to_float."""
        return math.fsum(scaled_float(coeff, gamma_value(base), -log_scale) for base, coeff in self.terms.items())

    def as_moment(self) -> SymbolicMoment:
        """Returns the single Gamma class of this sum (zero if empty); fails for sums over several classes."""
        if len(self.terms) > 1:
            raise InvariantViolation(f"Expected a single Gamma class, got {self}.")

        if not self.terms:
            return ZERO_MOMENT

        (base, coeff), = self.terms.items()

        return SymbolicMoment(coeff=coeff, base=base)

    def __str__(self) -> str:
        if not self.terms:
            return "0"

        return " + ".join(f"{coeff}*Gamma({base})" for base, coeff in self.terms.items())


@lru_cache(maxsize=None)
def moment(params: ModelParams, k: int) -> SymbolicMoment:
    """Returns M_k = integral over R of |x|^(2 nu) x^k e^(-x^(2r)) dx.

    Zero for odd k; (1/r) Gamma((2 nu + k + 1) / (2r)) for even k (substitute t = x^(2r)).
    """
    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
        raise DomainError(f"Moment order must be a nonnegative integer, got {k!r}.")

    if 2 * params.nu + k + 1 <= 0:
        raise DomainError(f"Moment M_{k} diverges for nu = {params.nu}.")

    if k % 2 == 1:
        return ZERO_MOMENT

    return SymbolicMoment.gamma((2 * params.nu + k + 1) / (2 * params.r), coeff=Fraction(1, params.r))


def inner_product(f: SparsePoly, g: SparsePoly, params: ModelParams) -> MomentSum:
    """The ray inner product sum_j integral_R f(omega^j x) conj(g(omega^j x)) |x|^(2 nu) e^(-x^(2r)) dx.

    Bilinear extension of <x^a, x^b> = r [a = b mod r] M_(a+b); coefficients are real so conjugation is trivial.
    """
    # Collect sum f_a g_b per total degree before touching the moments
    by_degree: dict[int, Fraction] = {}

    for a, coeff_a in f.terms.items():
        for b, coeff_b in g.terms.items():
            if (a - b) % params.r == 0 and (a + b) % 2 == 0:
                by_degree[a + b] = by_degree.get(a + b, Fraction(0)) + coeff_a * coeff_b

    return MomentSum.of(*(moment(params, k) * (params.r * c) for k, c in by_degree.items()))


def norm_sq(params: ModelParams, N: int) -> SymbolicMoment:
    """Returns zeta_N = <H_N, H_N> in closed form.

    With N = n r + s: zeta_N = 2^(2n) floor(n/2)! Gamma(floor((n+1)/2) + nu_s + 1/2), which equals
    2^n [N]_nu! Gamma(nu_s + 1/2) and satisfies zeta_N = 2 [N]_nu zeta_(N-r).
    """
    decomposition = degree_class(params, N)
    n = decomposition.n
    argument = (n + 1) // 2 + nu_s(params, decomposition.s) + Fraction(1, 2)

    return SymbolicMoment.gamma(argument, coeff=4**n * math.factorial(n // 2))


def printed_norm_sq(params: ModelParams, N: int) -> Optional[float]:
    """The uncorrected closed form 2^floor(N/r) Gamma(floor(N/2r) + 1) Gamma(floor((N+r)/2r) + (2nu+2+2s-r)/2r).

    Kept only to document the discrepancy with the Gram diagonal. Returns None where a Gamma argument is not
    positive.
    """
    decomposition = degree_class(params, N)
    r = params.r
    argument = (N + r) // (2 * r) + (2 * params.nu + 2 + 2 * decomposition.s - r) / (2 * r)

    if argument <= 0:
        return None

    return 2**decomposition.n * math.factorial(N // (2 * r)) * gamma_value(argument)


@dataclass(frozen=True)
class GramMatrix:
    """Entries (N, M) = <H_N, H_M> for 0 <= N, M <= n_max, symbolic with a float view."""

    params: ModelParams
    n_max: int
    entries: tuple[tuple[MomentSum, ...], ...]

    @property
    def values(self) -> np.ndarray:
        """Float view of the entries."""
        return np.array([[entry.to_float() for entry in row] for row in self.entries])

    def off_diagonal_nonzero(self) -> list[tuple[int, int]]:
        """The (N, M) pairs with N != M whose symbolic entry is not exactly zero."""
        return [
            (N, M)
            for N, row in enumerate(self.entries)
            for M, entry in enumerate(row)
            if N != M and not entry.is_zero
        ]

    def diagonal(self) -> list[SymbolicMoment]:
        return [self.entries[N][N].as_moment() for N in range(self.n_max + 1)]

    def normalized_values(self) -> np.ndarray:
        """Float view of <H_N, H_M> / sqrt(<H_N, H_N> <H_M, H_M>), finite even where the raw entries saturate."""
        log_norms = [moment.log_abs() for moment in self.diagonal()]

        return np.array(
            [
                [entry.to_float(log_scale=(log_norms[N] + log_norms[M]) / 2) for M, entry in enumerate(row)]
                for N, row in enumerate(self.entries)
            ]
        )


def gram_matrix(params: ModelParams, n_max: int, threads: Optional[int] = None) -> GramMatrix:
    """Builds the Gram matrix of H_0, ..., H_n_max.

    The upper triangle is filled by a thread pool (entries are independent and every write is to its own slot)
    and mirrored, since the pairing is symmetric for real coefficients.

    :param params: Model parameters.
    :param n_max: Largest degree.
    :param threads: Worker cap; None defers to RADIAL_HERMITE_THREADS.
    :return: The GramMatrix.
    """
    if n_max < 0:
        raise ParameterError(f"n_max must be nonnegative, got {n_max}.")

    polys = [radial_hermite(params, N) for N in range(n_max + 1)]
    pairs = [(N, M) for N in range(n_max + 1) for M in range(N, n_max + 1)]
    workers = resolve_thread_count(threads)
    logger.debug("Filling %d Gram entries for %s with %d worker(s)", len(pairs), params, workers)

    def fill(pair: tuple[int, int]) -> MomentSum:
        N, M = pair
        return inner_product(polys[N], polys[M], params)

    if workers == 1:
        values = [fill(pair) for pair in pairs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(fill, pairs))

    grid: list[list[Optional[MomentSum]]] = [[None] * (n_max + 1) for _ in range(n_max + 1)]

    for (N, M), value in zip(pairs, values):
        grid[N][M] = grid[M][N] = value

    return GramMatrix(params=params, n_max=n_max, entries=tuple(tuple(row) for row in grid))


def _entry_fields(entry: MomentSum) -> tuple[float, str, int, int]:
    moment_ = entry.as_moment()
    base = "0" if moment_.is_zero else str(moment_.base)

    return round_float(moment_.to_float()), base, moment_.coeff.numerator, moment_.coeff.denominator


def export_gram_csv(gram: GramMatrix) -> str:
    """CSV with header N,M,value_float,base,coeff_num,coeff_den (base 0 marks an exactly zero entry)."""
    rows = [
        (N, M, *_entry_fields(entry))
        for N, row in enumerate(gram.entries)
        for M, entry in enumerate(row)
    ]

    return dumps_csv(["N", "M", "value_float", "base", "coeff_num", "coeff_den"], rows)


def export_gram_json(gram: GramMatrix) -> str:
    entries = []

    for N, row in enumerate(gram.entries):
        for M, entry in enumerate(row):
            value, base, numerator, denominator = _entry_fields(entry)
            entries.append(
                {
                    "N": N,
                    "M": M,
                    "value_float": value,
                    "base": base,
                    "coeff_num": numerator,
                    "coeff_den": denominator,
                }
            )

    return dumps_json({"r": gram.params.r, "nu": str(gram.params.nu), "nmax": gram.n_max, "entries": entries})


@dataclass(frozen=True)
class NormRow:
    N: int
    zeta: SymbolicMoment
    gram_diagonal: MomentSum

    @property
    def relative_deviation(self) -> float:
        """|<H_N, H_N> - zeta_N| / zeta_N, taken from the exact difference so it stays finite for huge norms."""
        return abs((self.gram_diagonal - self.zeta).to_float(log_scale=self.zeta.log_abs()))


def norm_table(params: ModelParams, n_max: int) -> list[NormRow]:
    """Closed-form zeta_N next to the brute-force Gram diagonal <H_N, H_N> for N = 0..n_max."""
    rows = []

    for N in range(n_max + 1):
        H = radial_hermite(params, N)
        rows.append(NormRow(N=N, zeta=norm_sq(params, N), gram_diagonal=inner_product(H, H, params)))

    return rows


def _max_deviation(rows: list[NormRow]) -> float:
    return max((row.relative_deviation for row in rows), default=0.0)


def export_norms_csv(rows: list[NormRow]) -> str:
    """CSV N,zeta_float,zeta_symbolic,gram_float,rel_deviation plus a closing max_rel_deviation row."""
    table = [
        (row.N, row.zeta.to_float(), str(row.zeta), row.gram_diagonal.to_float(), row.relative_deviation)
        for row in rows
    ]
    table.append(("max_rel_deviation", "", "", "", _max_deviation(rows)))

    return dumps_csv(["N", "zeta_float", "zeta_symbolic", "gram_float", "rel_deviation"], table)


def export_norms_json(params: ModelParams, rows: list[NormRow]) -> str:
    return dumps_json(
        {
            "r": params.r,
            "nu": str(params.nu),
            "rows": [
                {
                    "N": row.N,
                    "zeta_float": round_float(row.zeta.to_float()),
                    "zeta_symbolic": str(row.zeta),
                    "gram_float": round_float(row.gram_diagonal.to_float()),
                    "rel_deviation": round_float(row.relative_deviation),
                }
                for row in rows
            ],
            "max_rel_deviation": round_float(_max_deviation(rows)),
        }
    )
