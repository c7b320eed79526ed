"""Self-contained special-function and polynomial primitives.

Everything in this module is elementary: plain Python arithmetic for the
exact integer paths (polynomial coefficients, factorial families) and
numpy only for array-shaped evaluation of the spherical Bessel functions.
No special-function library is used; the error function and the Bessel
values are computed from scratch so the routines that build on them can
be cross-checked independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Exactness cap for coefficient growth in the polynomial helpers.  Above
#: this order the integer coefficients of the derivative family exceed what
#: is sensible to push through double precision downstream.
MAX_ORDER = 30

_SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class Polynomial:
    """Dense polynomial with coefficients in ascending powers.

    Coefficients may be Python ints (kept exact through arithmetic) or
    floats.  The zero polynomial is the empty coefficient tuple; trailing
    exact zeros are stripped so degrees are canonical.
    """

    coeffs: tuple = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple((j + 1) * c for j, c in enumerate(self.coeffs[1:])))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for j, c in enumerate(b):
            out[j] = out[j] + c
        return Polynomial(tuple(out))

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if not self.coeffs or not other.coeffs:
                return Polynomial(())
            out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return Polynomial(tuple(out))
        return Polynomial(tuple(c * other for c in self.coeffs))

    __rmul__ = __mul__


def poly_derivative(p: Polynomial, r: int) -> Polynomial:
    """Exact r-th derivative by repeated coefficient shift-and-scale."""
    if r < 0:
        raise ValueError("derivative order must be >= 0")
    for _ in range(r):
        p = p.derivative()
    return p


def one_minus_t2_pow(n: int) -> Polynomial:
    """(1 - t^2)^n expanded binomially, exact integer coefficients."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > MAX_ORDER:
        raise ValueError(f"n={n} exceeds exactness cap {MAX_ORDER}")
    coeffs = [0] * (2 * n + 1)
    for j in range(n + 1):
        coeffs[2 * j] = (-1) ** j * math.comb(n, j)
    return Polynomial(tuple(coeffs))


def hermite(n: int) -> Polynomial:
    """Physicists' Hermite polynomial H_n, built by the three-term recurrence.

    H_0 = 1, H_1 = 2x, H_{k+1} = 2x H_k - 2k H_{k-1}.  Coefficients are
    exact Python ints.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    prev = [1]
    if n == 0:
        return Polynomial(tuple(prev))
    cur = [0, 2]
    for k in range(1, n):
        nxt = [0] + [2 * c for c in cur]
        for j, c in enumerate(prev):
            nxt[j] -= 2 * k * c
        prev, cur = cur, nxt
    return Polynomial(tuple(cur))


def double_factorial(k: int) -> float:
    """k!! with the conventions (-1)!! = 0!! = 1, returned as a float."""
    if k < -1:
        raise ValueError("double factorial needs k >= -1")
    acc = 1
    while k > 1:
        acc *= k
        k -= 2
    return float(acc)


# ---------------------------------------------------------------------------
# error function

def _exp_neg_square(x: float) -> float:
    # exp(-x*x) with the squaring error compensated: split x*x into a
    # rounded head h and exact tail l, then exp(-h-l) ~ exp(-h)*(1-l).
    h = x * x
    c = 134217729.0 * x  # 2**27 + 1, Dekker split
    xh = c - (c - x)
    xl = x - xh
    l = ((xh * xh - h) + 2.0 * xh * xl) + xl * xl
    if h > 745.0:
        return 0.0
    return math.exp(-h) * (1.0 - l)


def _erf_series(x: float) -> float:
    # All-positive rearrangement of the Taylor series,
    # erf(x) = 2x e^{-x^2}/sqrt(pi) * sum_k (2x^2)^k / (2k+1)!!
    # Terms come from pow() and an exact integer double factorial rather
    # than a running product, so per-term error stays flat in k.
    h = x * x
    c = 134217729.0 * x
    xh = c - (c - x)
    xl = x - xh
    low = ((xh * xh - h) + 2.0 * xh * xl) + xl * xl
    y = 2.0 * h
    terms = []
    ksum = 0.0
    df = 1
    k = 0
    while True:
        t = math.pow(y, k) / df if k else 1.0
        terms.append(t)
        ksum += k * t
        if k > y / 2 and (t < 1e-18 or k > 200):
            break
        k += 1
        df *= 2 * k + 1
    s = math.fsum(terms)
    if y > 0.0:
        s += (ksum / y) * 2.0 * low  # first-order argument correction
    return (2.0 / _SQRT_PI) * x * math.exp(-h) * (1.0 - low) * s


def _erfc_cf(x: float) -> float:
    # Laplace continued fraction for erfc, evaluated backward at fixed depth.
    t = 0.0
    for k in range(80, 0, -1):
        t = (0.5 * k) / (x + t)
    return _exp_neg_square(x) / _SQRT_PI / (x + t)


def erf(x: float) -> float:
    """Error function, odd by construction, absolute error below 1e-15.

    Uses the positive-term Taylor rearrangement for |x| <= 3 and the
    continued-fraction complement beyond; |x| >= 6 saturates to +-1.
    """
    x = float(x)
    if x != x:
        return x
    ax = abs(x)
    if ax >= 6.0:
        r = 1.0
    elif ax <= 3.0:
        r = _erf_series(ax)
    else:
        r = 1.0 - _erfc_cf(ax)
    return -r if x < 0.0 else r


# ---------------------------------------------------------------------------
# spherical Bessel functions

def _j0(ax):
    safe = np.where(ax > 1e-8, ax, 1.0)
    r = np.sin(safe) / safe
    return np.where(ax > 1e-8, r, 1.0 - ax * ax / 6.0)


def _jn_series(n, ax):
    # Ascending series, adequate for ax < 0.5 where 14 terms reach 1e-16.
    y = ax * ax
    s = np.ones_like(ax)
    term = np.ones_like(ax)
    for k in range(1, 15):
        term = term * y * (-0.5 / (k * (2 * n + 2 * k + 1)))
        s = s + term
    return ax ** n / double_factorial(2 * n + 1) * s


def _jn_upward(n, ax):
    # Stable for ax >= n: forward three-term recurrence from j_0, j_1.
    jm = np.sin(ax) / ax
    jc = jm / ax - np.cos(ax) / ax
    for k in range(1, n):
        jm, jc = jc, (2 * k + 1) / ax * jc - jm
    return jc if n > 0 else jm


def _jn_miller(n, ax):
    # Downward recurrence started well above n, normalized with the sum
    # rule sum_k (2k+1) j_k^2 = 1.  In this branch x < n, which is left of
    # the first zero of j_n, so the target value is positive and the
    # relative error stays well conditioned.
    start = n + 50
    jp = np.zeros_like(ax)
    jc = np.full_like(ax, 1e-30)
    target = np.zeros_like(ax)
    norm = (2 * start + 1) * jc * jc
    for k in range(start, 0, -1):
        jm = (2 * k + 1) / ax * jc - jp
        jp, jc = jc, jm
        norm = norm + (2 * k - 1) * jc * jc
        if k - 1 == n:
            target = jc.copy()
        big = np.abs(jc) > 1e150
        if big.any():
            scale = np.where(big, 1e-150, 1.0)
            jc = jc * scale
            jp = jp * scale
            target = target * scale
            norm = norm * scale * scale
    return target / np.sqrt(norm)


def spherical_bessel_j(n: int, x):
    """Spherical Bessel function j_n(x) for scalar or array x.

    The evaluation strategy follows the argument: ascending series for
    |x| < 0.5, downward (Miller) recurrence for 0.5 <= |x| < n, upward
    recurrence for |x| >= n.  Odd orders pick up the sign of x, so the
    combination x^{m+1} j_n(x) used by the transform integrand is smooth
    through the origin.

    Args:
        n: order, 0 <= n.
        x: evaluation point(s).

    Returns:
        float for scalar input, ndarray for array input.
    """
    if n < 0:
        raise ValueError("order must be >= 0")
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    a = np.atleast_1d(arr)
    ax = np.abs(a)
    if n == 0:
        out = _j0(ax)
    else:
        out = np.empty_like(ax)
        small = ax < 0.5
        up = ax >= n
        down = ~small & ~up
        if small.any():
            out[small] = _jn_series(n, ax[small])
        if up.any():
            out[up] = _jn_upward(n, ax[up])
        if down.any():
            out[down] = _jn_miller(n, ax[down])
        if n % 2 == 1:
            out = np.where(a < 0.0, -out, out)
    if scalar:
        return float(out[0])
    return out
