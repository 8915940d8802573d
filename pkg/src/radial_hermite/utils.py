import csv
from fractions import Fraction
from io import StringIO
import json
from json import JSONEncoder
import math
import os
import sys
from typing import Any, Iterable, Optional, Sequence, Union

import numpy as np

PathLike = Union[str, os.PathLike]
Rational = Union[int, Fraction]

THREADS_ENV_VAR = "RADIAL_HERMITE_THREADS"
FLOAT_DIGITS = 15


class RadialHermiteError(ValueError):
    """Base class for every error raised by radial_hermite on bad input."""


class ParameterError(RadialHermiteError):
    """An argument lies outside the range an operation accepts (even r, residue out of range, bad rational)."""


class DomainError(RadialHermiteError):
    """A value lies outside the mathematical domain (non-integrable moment, Gamma at x <= 0, 1/x at 0)."""


class InvariantViolation(RuntimeError):
    """An identity that holds by construction failed. Always a bug."""


def as_fraction(value: Any, name: str = "value") -> Fraction:
    """Converts an int or Fraction to a Fraction, rejecting floats, bools and everything else.

    :param value: The value to convert.
    :param name: Name of the value used in the error message.
    :return: The value as an exact Fraction.
    """
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        raise ParameterError(f'{name} must be an exact rational (int or Fraction), got {value!r}.')

    return Fraction(value)


def format_float(value: float) -> str:
    """Formats a float with 15 significant digits, independent of locale."""
    return format(float(value), f".{FLOAT_DIGITS}g")


def round_float(value: float) -> Optional[float]:
    """Rounds a float to the value printed by format_float so that CSV and JSON carry identical data.

    Infinities and NaN become None (JSON null); CSV keeps "inf".
    """
    return float(format_float(value)) if math.isfinite(value) else None


def log_abs(value: Rational) -> float:
    """Returns log |value| of a nonzero rational without converting it to a float first."""
    value = Fraction(value)

    if value == 0:
        return -math.inf

    return math.log(abs(value.numerator)) - math.log(value.denominator)


def scaled_float(value: Rational, factor: float = 1.0, log_scale: float = 0.0) -> float:
    """Returns value * factor * exp(log_scale) as a float.

    The direct product is used while every piece fits in a double. Otherwise the magnitude is formed in log
    space, so a huge exact value times a tiny scale still comes out finite. Results past the double range
    saturate to +-inf.

    :param value: Exact rational value.
    :param factor: Float factor (e.g. a Gamma value or a normalization).
    :param log_scale: Additional factor given by its logarithm.
    :return: The float product.
    """
    value = Fraction(value)

    if value == 0 or factor == 0:
        return 0.0

    try:
        result = float(value) * factor * math.exp(log_scale)
    except OverflowError:
        result = math.inf

    if result != 0 and math.isfinite(result):
        return result

    exponent = log_abs(value) + math.log(abs(factor)) + log_scale

    try:
        magnitude = math.exp(exponent)
    except OverflowError:
        magnitude = math.inf

    return -magnitude if (value < 0) != (factor < 0) else magnitude


def resolve_thread_count(threads: Optional[int] = None) -> int:
    """Resolves the parallelism cap from an explicit value, the environment, or the serial default.

    :param threads: Explicit thread count (e.g. from --threads). Takes precedence over the environment.
    :return: A positive number of worker threads.
    """
    if threads is None:
        raw = os.environ.get(THREADS_ENV_VAR)

        if raw is None or raw.strip() == "":
            return 1

        try:
            threads = int(raw)
        except ValueError:
            raise ParameterError(f'{THREADS_ENV_VAR} must be a positive integer, got "{raw}".')

    if threads < 1:
        raise ParameterError(f"Thread count must be positive, got {threads}.")

    return threads


class ExactJSONEncoder(JSONEncoder):
    """Encodes Fractions as "p/q" strings and numpy scalars/arrays as plain JSON values."""

    def default(self, obj: Any) -> Any:
        if isinstance(obj, Fraction):
            return str(obj)
        elif isinstance(obj, np.integer):
            return int(obj)
        elif isinstance(obj, np.floating):
            return round_float(obj)
        elif isinstance(obj, np.ndarray):
            return obj.tolist()

        return super(ExactJSONEncoder, self).default(obj)


def dumps_json(obj: Any) -> str:
    """Serializes obj deterministically (two-space indent, insertion order, trailing newline)."""
    return json.dumps(obj, indent=2, cls=ExactJSONEncoder) + "\n"


def dumps_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Serializes a header and rows as CSV text with "\\n" line endings.

    Floats are written with format_float; everything else with str.
    """
    buffer = StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)

    for row in rows:
        writer.writerow([format_float(cell) if isinstance(cell, float) else str(cell) for cell in row])

    return buffer.getvalue()


def write_output(text: str, path: Optional[PathLike] = None) -> None:
    """Writes text to the given path, or to standard output when path is None."""
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(path, "w", newline="") as f:
            f.write(text)
