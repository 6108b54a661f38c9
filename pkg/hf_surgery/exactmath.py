"""
Exact Math - Rational arithmetic, negative continued fractions and exact
linear algebra over the integers.

Every quantity in the toolkit is an exact ``Fraction``; floating point never
enters a computation.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import List, Sequence, Tuple

from .errors import DegenerateFormError, InvalidInputError

logger = logging.getLogger(__name__)

Rational = Fraction
IntMatrix = Tuple[Tuple[int, ...], ...]


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip().replace("−", "-"))
        except ValueError as e:
            raise InvalidInputError(f"Not a rational number: {value!r}") from e
    raise InvalidInputError(f"Cannot convert {value!r} to a rational")


def format_rational(x: Fraction) -> str:
    """Serialize as "num/den", or "n" for integers."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def neg_cont_frac(x) -> List[int]:
    """Expand x < -1 as [c1, ..., ck] with every ci <= -2.

    c1 - 1/(c2 - 1/(... - 1/ck)) == x exactly.
    """
    x = as_rational(x)
    if x >= -1:
        raise InvalidInputError(
            f"Negative continued fraction requires x < -1, got {x}"
        )
    terms: List[int] = []
    while True:
        c = floor(x)
        terms.append(c)
        if x == c:
            return terms
        # c - x lies in (-1, 0), so the remainder is again < -1
        x = 1 / (c - x)


def eval_neg_cont_frac(terms: Sequence[int]) -> Fraction:
    """Evaluate c1 - 1/(c2 - 1/(... - 1/ck))."""
    if not terms:
        raise InvalidInputError("Empty continued fraction")
    value = Fraction(terms[-1])
    for c in reversed(terms[:-1]):
        value = c - 1 / value
    return value


def to_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    """Freeze a square integer matrix."""
    matrix = tuple(tuple(int(v) for v in row) for row in rows)
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise InvalidInputError("Matrix must be square")
    return matrix


def is_symmetric(matrix: IntMatrix) -> bool:
    n = len(matrix)
    return all(
        matrix[i][j] == matrix[j][i] for i in range(n) for j in range(i)
    )


def _pivots_without_exchange(matrix: IntMatrix) -> List[Fraction]:
    """Gaussian pivots with no row exchange; pivot k = minor_k / minor_{k-1}.

    Stops early (short list) at the first zero pivot.
    """
    n = len(matrix)
    rows = [
        {j: Fraction(v) for j, v in enumerate(row) if v} for row in matrix
    ]
    pivots: List[Fraction] = []
    for k in range(n):
        pivot = rows[k].get(k, Fraction(0))
        if pivot == 0:
            return pivots
        pivots.append(pivot)
        for i in range(k + 1, n):
            factor = rows[i].get(k)
            if not factor:
                continue
            factor = factor / pivot
            for j, v in rows[k].items():
                new = rows[i].get(j, Fraction(0)) - factor * v
                if new:
                    rows[i][j] = new
                else:
                    rows[i].pop(j, None)
    return pivots


def leading_minors(matrix: IntMatrix) -> List[int]:
    """Leading principal minors det(Q[:k, :k]) for k = 1..n (up to a zero)."""
    minors: List[int] = []
    running = Fraction(1)
    for pivot in _pivots_without_exchange(matrix):
        running *= pivot
        minors.append(int(running))
    return minors


def is_negative_definite(matrix: IntMatrix) -> bool:
    """Leading principal minors alternate in sign as (-1)^k."""
    minors = leading_minors(matrix)
    if len(minors) != len(matrix):
        return False
    return all(
        (m < 0) if k % 2 == 1 else (m > 0)
        for k, m in enumerate(minors, start=1)
    )


@dataclass(frozen=True)
class FormData:
    """An intersection form with its exact determinant and inverse."""

    form: IntMatrix
    determinant: int
    inverse: Tuple[Tuple[Fraction, ...], ...]
    adjugate: IntMatrix = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.form)

    def is_negative_definite(self) -> bool:
        return is_negative_definite(self.form)

    def solve(self, vector: Sequence[int]) -> Tuple[Fraction, ...]:
        """Return Q^{-1} v (v treated as a column)."""
        return tuple(
            sum((c * v for c, v in zip(row, vector) if v), Fraction(0))
            for row in self.inverse
        )

    def quadratic(self, vector: Sequence[int]) -> Fraction:
        """Return v Q^{-1} v^T exactly."""
        total = 0
        for i, vi in enumerate(vector):
            if not vi:
                continue
            row = self.adjugate[i]
            total += vi * sum(a * v for a, v in zip(row, vector) if v)
        return Fraction(total, self.determinant)


def form_data(matrix: Sequence[Sequence[int]]) -> FormData:
    """Exact determinant and inverse by Gauss-Jordan over Fractions.

    Rows are stored sparsely, so tree-shaped forms stay cheap.
    """
    q = to_matrix(matrix)
    if not is_symmetric(q):
        raise InvalidInputError("Intersection form must be symmetric")
    n = len(q)
    left = [{j: Fraction(v) for j, v in enumerate(row) if v} for row in q]
    right = [{i: Fraction(1)} for i in range(n)]
    sign = 1

    for k in range(n):
        pivot_row = next((r for r in range(k, n) if left[r].get(k)), None)
        if pivot_row is None:
            raise DegenerateFormError(
                f"Degenerate form: singular at column {k}; the boundary is "
                f"not a rational homology sphere"
            )
        if pivot_row != k:
            left[k], left[pivot_row] = left[pivot_row], left[k]
            right[k], right[pivot_row] = right[pivot_row], right[k]
            sign = -sign
        pivot = left[k][k]
        for i in range(n):
            if i == k:
                continue
            factor = left[i].get(k)
            if not factor:
                continue
            factor = factor / pivot
            for src, dst in ((left[k], left[i]), (right[k], right[i])):
                for j, v in src.items():
                    new = dst.get(j, Fraction(0)) - factor * v
                    if new:
                        dst[j] = new
                    else:
                        dst.pop(j, None)

    determinant = Fraction(sign)
    for k in range(n):
        determinant *= left[k][k]
    if determinant.denominator != 1:
        raise DegenerateFormError(f"Non-integral determinant {determinant}")
    det = int(determinant)

    inverse = tuple(
        tuple(right[i].get(j, Fraction(0)) / left[i][i] for j in range(n))
        for i in range(n)
    )
    adjugate = tuple(tuple(int(v * det) for v in row) for row in inverse)
    logger.debug(f"form_data: n={n}, det={det}")
    return FormData(form=q, determinant=det, inverse=inverse, adjugate=adjugate)
