"""
Model parameters (r, nu) and the deformed-number combinatorics shared by every other module.

For N = n*r + s with 0 <= s < r, N is in the even class when n is even and in the odd class when n is odd.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
import re

from radial_hermite.utils import DomainError, ParameterError, as_fraction

RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)(?:/(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parses an exact rational from "p/q" or an integer literal "p".

    :param text: The string to parse, e.g. "7/3", "-1/3" or "2".
    :return: The parsed Fraction.
    """
    match = RATIONAL_PATTERN.match(text)

    if match is None:
        raise ParameterError(f'Expected a rational of the form "p/q" or "p", got "{text}".')

    numerator, denominator = match.group(1), match.group(2)

    if denominator is not None and int(denominator) == 0:
        raise ParameterError(f'Zero denominator in rational "{text}".')

    return Fraction(int(numerator), int(denominator) if denominator is not None else 1)


@dataclass(frozen=True)
class ModelParams:
    """The number of radial lines r (odd) and the weight exponent parameter nu (exact rational)."""

    r: int
    nu: Fraction

    def __post_init__(self) -> None:
        if isinstance(self.r, bool) or not isinstance(self.r, int):
            raise ParameterError(f"r must be an integer, got {self.r!r}.")

        if self.r < 1:
            raise ParameterError(f"r must be a positive odd integer, got {self.r}.")

        if self.r % 2 == 0:
            raise ParameterError(f"r must be odd, got {self.r}.")

        nu = parse_rational(self.nu) if isinstance(self.nu, str) else as_fraction(self.nu, name="nu")

        if nu <= Fraction(-1, 2):
            raise DomainError(f"nu must be greater than -1/2 for the weight to be integrable, got {nu}.")

        object.__setattr__(self, "nu", nu)

    @property
    def operator_domain_ok(self) -> bool:
        """Whether nu > (r - 1)/2, the range assumed for the operator statements."""
        return self.nu > Fraction(self.r - 1, 2)

    def __str__(self) -> str:
        return f"r={self.r}, nu={self.nu}"


class DegreeParity(Enum):
    EVEN = "even"
    ODD = "odd"


@dataclass(frozen=True)
class DegreeClass:
    """The decomposition N = n*r + s, 0 <= s < r, with the class parity of n."""

    N: int
    n: int
    s: int
    parity: DegreeParity

    @property
    def is_even(self) -> bool:
        return self.parity is DegreeParity.EVEN


def _check_degree(N: int) -> None:
    if isinstance(N, bool) or not isinstance(N, int) or N < 0:
        raise ParameterError(f"Degree N must be a nonnegative integer, got {N!r}.")


def degree_class(params: ModelParams, N: int) -> DegreeClass:
    """Splits N into (n, s) with N = n*r + s and records whether n is even or odd."""
    _check_degree(N)
    n, s = divmod(N, params.r)

    return DegreeClass(N=N, n=n, s=s, parity=DegreeParity.EVEN if n % 2 == 0 else DegreeParity.ODD)


def nu_s(params: ModelParams, s: int) -> Fraction:
    """Returns nu_s = (2*nu + 2*s + 1 - r) / (2*r), the generalized Hermite parameter of residue class s.

    :param params: Model parameters.
    :param s: Residue in 0..r-1.
    :return: nu_s as an exact Fraction.
    """
    if isinstance(s, bool) or not isinstance(s, int) or not 0 <= s < params.r:
        raise ParameterError(f"Residue s must satisfy 0 <= s < r = {params.r}, got {s!r}.")

    return (2 * params.nu + 2 * s + 1 - params.r) / (2 * params.r)


def vartheta(params: ModelParams, N: int) -> Fraction:
    """Returns 0 on the even class and 2*nu_s on the odd class."""
    decomposition = degree_class(params, N)

    return Fraction(0) if decomposition.is_even else 2 * nu_s(params, decomposition.s)


def deformed_number(params: ModelParams, N: int) -> Fraction:
    """Returns the deformed number [N]_nu = floor(N/r) + vartheta_N."""
    theta = vartheta(params, N)

    return N // params.r + theta


def deformed_factorial(params: ModelParams, N: int) -> Fraction:
    """Returns [N]_nu! = prod_{k=1..floor(N/r)} [k*r + s]_nu with s = N mod r (empty product is 1)."""
    decomposition = degree_class(params, N)
    result = Fraction(1)

    for k in range(1, decomposition.n + 1):
        result *= deformed_number(params, k * params.r + decomposition.s)

    return result


def reflection_sign(params: ModelParams, N: int) -> int:
    """Returns +1 on the even class and -1 on the odd class (the eigenvalue of R_r on degree N)."""
    return 1 if degree_class(params, N).is_even else -1

