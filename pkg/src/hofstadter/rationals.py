"""Exact rational arithmetic for magnetic flux values.

A reduced fraction p/q is the coordinate of everything downstream: each
spectrum, each set of gap labels and each image row is attached to one.
All arithmetic in this module is exact (Python integers and
``fractions.Fraction``); floats enter only as inputs to
:func:`best_approximant`, where they are converted to their exact binary
value before any comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "Q_MAX_CAP",
    "ReducedFraction",
    "DiophantinePair",
    "extended_gcd",
    "conjugate_pair",
    "farey_sequence",
    "best_approximant",
]

# Denominator bound: below this every intermediate product fits comfortably
# in 64 bits, which keeps the behaviour portable to fixed-width integers.
Q_MAX_CAP = 10**6


@dataclass(frozen=True)
class ReducedFraction:
    """A fraction p/q in lowest terms with q >= 1 and p >= 0."""

    p: int
    q: int

    def __post_init__(self):
        if self.q < 1:
            raise ValueError(f"denominator must be >= 1, got {self.q}")
        if self.p < 0:
            raise ValueError(f"numerator must be >= 0, got {self.p}")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"{self.p}/{self.q} is not in lowest terms")

    @property
    def value(self) -> float:
        return self.p / self.q

    def as_fraction(self) -> Fraction:
        return Fraction(self.p, self.q)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class DiophantinePair:
    """Integers (m, n) with p*m - q*n = 1 for the fraction they came from.

    The first member is canonical: 0 <= m < q for q >= 2, and m = 0 for
    q = 1.  The second member is then fixed by the equation.
    """

    m: int
    n: int


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclidean algorithm for non-negative integers.

    Returns (g, x, y) with g = gcd(a, b) and a*x + b*y = g.  The output is
    a deterministic function of the input (plain iterative algorithm, no
    normalisation step).
    """
    if a < 0 or b < 0:
        raise ValueError("extended_gcd requires non-negative arguments")
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    r0, r1 = a, b
    x0, x1 = 1, 0
    y0, y1 = 0, 1
    while r1:
        quot = r0 // r1
        r0, r1 = r1, r0 - quot * r1
        x0, x1 = x1, x0 - quot * x1
        y0, y1 = y1, y0 - quot * y1
    return r0, x0, y0


def conjugate_pair(f: ReducedFraction) -> DiophantinePair:
    """Solve p*m - q*n = 1 with the canonical representative 0 <= m < q.

    The equation only fixes m modulo q; pinning the representative makes
    every downstream label computation deterministic.
    """
    g, x, _ = extended_gcd(f.p, f.q)
    if g != 1:  # unreachable through ReducedFraction, kept as a guard
        raise ValueError(f"{f} has gcd {g}; p*m - q*n = 1 has no solution")
    m = x % f.q
    n = (f.p * m - 1) // f.q
    return DiophantinePair(m, n)


def farey_sequence(q_max: int) -> list[ReducedFraction]:
    """All reduced fractions in [0, 1] with denominator <= q_max, ascending.

    Uses the neighbour recurrence (if a/b < c/d are consecutive, the next
    term is (k*c - a)/(k*d - b) with k = (q_max + b) // d), so the list is
    produced already sorted and already reduced.
    """
    if not 1 <= q_max <= Q_MAX_CAP:
        raise ValueError(f"q_max must be in [1, {Q_MAX_CAP}], got {q_max}")
    seq = [ReducedFraction(0, 1)]
    a, b, c, d = 0, 1, 1, q_max
    while c <= q_max:
        k = (q_max + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
        seq.append(ReducedFraction(a, b))
    return seq


def best_approximant(x, q_max: int) -> ReducedFraction:
    """Closest fraction to x in [0, 1] with denominator at most q_max.

    Ties are broken towards the smaller denominator, then the smaller
    numerator.  ``x`` may be a float or a ``Fraction``; a float is treated
    as the exact dyadic rational it stores, every distance comparison is
    exact, and the walk down the continued-fraction tree means the cost is
    logarithmic in q_max.
    """
    if not 0 <= x <= 1:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if not 1 <= q_max <= Q_MAX_CAP:
        raise ValueError(f"q_max must be in [1, {Q_MAX_CAP}], got {q_max}")
    target = Fraction(x)
    if target.denominator <= q_max:
        return ReducedFraction(target.numerator, target.denominator)

    # Convergents of the continued fraction of the target, stopping just
    # before the denominator bound is exceeded.
    p0, q0, p1, q1 = 0, 1, 1, 0
    n, d = target.numerator, target.denominator
    while True:
        a = n // d
        if q0 + a * q1 > q_max:
            break
        p0, q0, p1, q1 = p1, q1, p0 + a * p1, q0 + a * q1
        n, d = d, n - a * d

    # The minimiser is the last convergent or the deepest semiconvergent
    # that still respects the bound; compare the two exactly.
    k = (q_max - q0) // q1
    candidates = [(p1, q1), (p0 + k * p1, q0 + k * q1)]
    best_p, best_q = min(
        candidates,
        key=lambda c: (abs(target - Fraction(c[0], c[1])), c[1], c[0]),
    )
    return ReducedFraction(best_p, best_q)
