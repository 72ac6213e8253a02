"""Terminating hypergeometric sums and the discrete orthogonal polynomial families.

Everything here is a plain terminating sum evaluated by a forward recurrence on
the term ratio, so no factorials or gamma ratios are ever formed explicitly.
Half-integer parameters are always passed doubled (``two_j = 2j``) so domain
bounds are integer comparisons.
"""

from __future__ import annotations

import math


def pochhammer(a: float, n: int) -> float:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), computed as an iterated product."""
    if n < 0:
        raise ValueError(f"pochhammer order must be nonnegative, got {n}")
    out = 1.0
    for i in range(n):
        out *= a + i
    return out


def hyp2f1_term(m: int, n: int, c: float, z: float) -> float:
    """Terminating Gauss sum 2F1(-m, -n; c; z) = sum_{s<=min(m,n)} (-m)_s (-n)_s z^s / ((c)_s s!).

    Both numerator parameters are negative integers, so the series terminates at
    ``min(m, n)``.  The denominator parameter may be a negative integer as long
    as ``|c| >= min(m, n)`` (the Krawtchouk case); smaller ``|c|`` would divide
    by zero and is rejected.
    """
    if m < 0 or n < 0:
        raise ValueError("terminating indices must be nonnegative")
    smax = min(m, n)
    if c == int(c) and c <= 0 and -int(c) < smax:
        raise ValueError(
            f"denominator parameter c={c} vanishes inside the sum (need |c| >= {smax})"
        )
    total = 0.0
    term = 1.0
    for s in range(smax + 1):
        total += term
        if s < smax:
            # ratio of consecutive terms; the final term's successor is never formed
            term *= (s - m) * (s - n) * z / ((c + s) * (s + 1.0))
    return total


def hyp2f0_term(m: int, n: int, z: float) -> float:
    """Terminating 2F0(-m, -n; ; z) = sum_{s<=min(m,n)} (-m)_s (-n)_s z^s / s!."""
    if m < 0 or n < 0:
        raise ValueError("terminating indices must be nonnegative")
    smax = min(m, n)
    total = 0.0
    term = 1.0
    for s in range(smax + 1):
        total += term
        if s < smax:
            term *= (s - m) * (s - n) * z / (s + 1.0)
    return total


def meixner(x: int, y: int, p: float, k: float) -> float:
    """Meixner polynomial M(x, y; p) = 2F1(-x, -y; 2k; 1 - 1/p), symmetric in (x, y)."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0,1), got {p}")
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    return hyp2f1_term(x, y, 2.0 * k, 1.0 - 1.0 / p)


def krawtchouk(x: int, y: int, p: float, two_j: int) -> float:
    """Krawtchouk polynomial K(x, y; p) = 2F1(-x, -y; -2j; 1/p) on {0, ..., 2j}."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0,1), got {p}")
    if two_j < 1:
        raise ValueError(f"2j must be a positive integer, got {two_j}")
    if not (0 <= x <= two_j and 0 <= y <= two_j):
        raise ValueError(f"indices ({x},{y}) exceed the domain 0..{two_j}")
    return hyp2f1_term(x, y, -float(two_j), 1.0 / p)


def charlier(x: int, y: int, p: float) -> float:
    """Charlier polynomial C(x, y; p) = 2F0(-x, -y; ; -1/p), symmetric in (x, y)."""
    if p <= 0:
        raise ValueError(f"p must be positive, got {p}")
    return hyp2f0_term(x, y, -1.0 / p)


def laguerre_1f1(y: int, k: float, x: float) -> float:
    """Confluent sum 1F1(-y; 2k; x), the closed form of the Laguerre-type dual function."""
    if y < 0:
        raise ValueError("y must be nonnegative")
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    total = 0.0
    term = 1.0
    for s in range(y + 1):
        total += term
        if s < y:
            term *= (s - y) * x / ((2.0 * k + s) * (s + 1.0))
    return total


def meixner_gf_closed(x: int, t: float, p: float, k: float) -> float:
    """Closed generating-function value (1 - t/p)^x (1 - t)^(-2k-x) for |t| < 1."""
    if abs(t) >= 1.0:
        raise ValueError(f"|t| must be < 1, got {t}")
    if x < 0:
        raise ValueError("x must be nonnegative")
    return (1.0 - t / p) ** x * (1.0 - t) ** (-2.0 * k - x)


def meixner_gf_partial(x: int, t: float, p: float, k: float, n_terms: int) -> float:
    """Partial sum sum_{y=0}^{N} M(x, y; p) (2k)_y / y! * t^y of the Meixner generating function.

    Converges to :func:`meixner_gf_closed` as N grows, geometrically in |t| < 1.
    """
    if abs(t) >= 1.0:
        raise ValueError(f"|t| must be < 1, got {t}")
    if n_terms < 0:
        raise ValueError("truncation must be nonnegative")
    total = 0.0
    wt = 1.0  # (2k)_y t^y / y!
    for y in range(n_terms + 1):
        total += meixner(x, y, p, k) * wt
        wt *= (2.0 * k + y) * t / (y + 1.0)
    return total


def meixner_gf_tail_terms(tol: float, x: int, t: float, p: float, k: float) -> int:
    """Smallest truncation whose geometric tail envelope is below ``tol``.

    For y > x the Meixner factor is a fixed polynomial of degree x in y, so the
    summand is eventually dominated by a geometric envelope with ratio
    r = |t| * (1 + eps); the bound doubles N until term * r / (1 - r) < tol.
    """
    if not 0.0 < abs(t) < 1.0:
        return 1
    n = max(8, 2 * x)
    while n < 1_000_000:
        log_wt = (
            math.lgamma(2.0 * k + n) - math.lgamma(2.0 * k) - math.lgamma(n + 1.0)
            + n * math.log(abs(t))
        )
        log_term = math.log(max(abs(meixner(x, n, p, k)), 1e-300)) + log_wt
        # beyond n > x the term ratio tends to |t|; 0.5*(1+|t|) majorises it eventually
        r = 0.5 * (1.0 + abs(t))
        if log_term + math.log(r / (1.0 - r)) < math.log(tol):
            return n
        n *= 2
    raise RuntimeError("generating-function tail bound did not certify")
