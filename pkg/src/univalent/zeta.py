"""Riemann zeta on the real half-line ``p > 1``.

A direct partial sum followed by the Euler-Maclaurin tail::

    zeta(p) = sum_{n<N} n^-p + N^(1-p)/(p-1) + N^-p/2
              + sum_k B_2k/(2k)! * p(p+1)...(p+2k-2) * N^(-p-2k+1)
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import PLEQOne

_BERNOULLI_2K = [
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
    Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510),
    Fraction(43867, 798), Fraction(-174611, 330),
]
_N = 32
_TOL = 1e-17


def zeta(p: float) -> float:
    """``sum_{n>=1} n^-p`` to better than 1e-12 absolute for every ``p > 1``."""
    p = float(p)
    if not p > 1:
        raise PLEQOne(f"zeta needs p > 1, got {p!r}")
    head = math.fsum(n ** -p for n in range(1, _N))
    tail = [_N ** (1 - p) / (p - 1), 0.5 * _N ** -p]
    rising = p  # p (p+1) ... (p+2k-2)
    for k, b2k in enumerate(_BERNOULLI_2K, start=1):
        term = float(b2k) / math.factorial(2 * k) * rising * _N ** (-p - 2 * k + 1)
        tail.append(term)
        if abs(term) < _TOL:
            break
        rising *= (p + 2 * k - 1) * (p + 2 * k)
    return math.fsum([head] + tail)
