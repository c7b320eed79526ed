"""Closed-form evaluation of the Gaussian-windowed Bessel transform family.

The target quantity is

    I(m, n, beta, q) = integral over the real line of
        exp(-beta^2 x^2 - i q x) * x^(m+1/2) * J_{n+1/2}(x) dx

for non-negative integers m, n, Gaussian width beta > 0 and transform
variable q.  Writing the half-integer Bessel factor through the spherical
Bessel function, x^(m+1/2) J_{n+1/2}(x) = sqrt(2/pi) x^(m+1) j_n(x), the
integrand is smooth on the whole line and the integral reduces, via the
finite-interval cosine representation of J_{n+1/2} and repeated
integration by parts, to elementary closed forms:

  * for m >= n, a finite sum of boundary terms built from the derivative
    weights of (1 - t^2)^n at t = +-1 and the exponential-derivative
    polynomials E_j;
  * for m < n, the same (shorter) boundary sum plus a residual integral
    of the Gaussian against the (m+n+1)-th derivative of (1 - t^2)^n,
    which expands into error-function and boundary terms.

The result always carries the phase i^-(m+n+1) times a real amplitude, so
the evaluation keeps the amplitude real throughout and applies the phase
at the very end.  All sign conventions here were pinned against direct
numerical quadrature of the defining integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .numerics import MAX_ORDER, Polynomial, erf

#: Lower cap on beta.  Below this the boundary powers and the E-polynomial
#: coefficients overflow double precision for allowed q, so the evaluator
#: refuses rather than returning infinities.
BETA_MIN = 1e-3

_SQRT_PI = math.sqrt(math.pi)


class EvaluationError(Exception):
    """Base class for everything this package can raise during evaluation."""


class ParameterError(EvaluationError, ValueError):
    """Invalid evaluation parameters."""


class OverflowGuardError(EvaluationError, ArithmeticError):
    """A partial result left double range; no finite answer is returned."""


@dataclass(frozen=True)
class EvalParams:
    """Validated parameter tuple for one transform evaluation.

    Immutable so parameter sets can be shared freely across comparison
    sweeps.
    """

    m: int
    n: int
    beta: float
    q: float

    def __post_init__(self):
        for name in ("m", "n"):
            v = getattr(self, name)
            if not isinstance(v, int):
                if isinstance(v, float) or not hasattr(v, "__index__"):
                    raise ParameterError(f"{name} must be an integer, got {v!r}")
                object.__setattr__(self, name, int(v))
                v = getattr(self, name)
            if v < 0:
                raise ParameterError(f"{name} must be >= 0, got {v}")
            if v > MAX_ORDER:
                raise ParameterError(f"{name}={v} exceeds the order cap {MAX_ORDER}")
        object.__setattr__(self, "beta", float(self.beta))
        object.__setattr__(self, "q", float(self.q))
        if not math.isfinite(self.beta) or self.beta <= 0.0:
            raise ParameterError(f"beta must be positive, got {self.beta}")
        if self.beta < BETA_MIN:
            raise ParameterError(
                f"beta={self.beta} below minimum {BETA_MIN} (overflow guard)"
            )
        if not math.isfinite(self.q):
            raise ParameterError(f"q must be finite, got {self.q}")


@dataclass(frozen=True)
class EndpointWeights:
    """Derivative values of (1 - t^2)^n at the interval endpoints.

    values_at_plus1[j] is the k-th derivative at t = +1 for k = n + j,
    k running from n to 2n; derivatives of order below n or above 2n
    vanish there.  All entries are exact integers.
    """

    n: int
    values_at_plus1: tuple
    values_at_minus1: tuple

    def at_plus1(self, k: int) -> int:
        if self.n <= k <= 2 * self.n:
            return self.values_at_plus1[k - self.n]
        return 0

    def at_minus1(self, k: int) -> int:
        if self.n <= k <= 2 * self.n:
            return self.values_at_minus1[k - self.n]
        return 0


def endpoint_weights(n: int) -> EndpointWeights:
    """Exact endpoint derivative values of (1 - t^2)^n.

    The k-th derivative at t = +1 equals
        (-1)^n * k! * n! * 2^(2n-k) / ((k-n)! * (2n-k)!)
    for n <= k <= 2n, and the value at t = -1 is (-1)^k times that.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > MAX_ORDER:
        raise ValueError(f"n={n} exceeds the order cap {MAX_ORDER}")
    sign = -1 if n % 2 else 1
    plus = []
    minus = []
    nf = math.factorial(n)
    for k in range(n, 2 * n + 1):
        v = sign * (math.factorial(k) * nf * 2 ** (2 * n - k)) // (
            math.factorial(k - n) * math.factorial(2 * n - k)
        )
        plus.append(v)
        minus.append(v if k % 2 == 0 else -v)
    return EndpointWeights(n, tuple(plus), tuple(minus))


def e_poly(j: int, params: EvalParams) -> Polynomial:
    """Polynomial E_j with d^j/dt^j exp(-(q-t)^2/4b^2) = E_j(t) * exp(...).

    Defined by E_0 = 1, E_1 = (q - t)/2b^2 and the three-term recursion
    E_j = ((q - t) E_{j-1} - (j - 1) E_{j-2}) / 2b^2, which follows from
    differentiating the defining relation with Leibniz' rule.
    """
    if j < 0:
        raise ValueError("derivative order must be >= 0")
    inv = 1.0 / (2.0 * params.beta * params.beta)
    e_prev = Polynomial((1.0,))
    if j == 0:
        return e_prev
    linear = Polynomial((params.q, -1.0))
    e_cur = Polynomial((params.q * inv, -inv))
    for k in range(2, j + 1):
        e_prev, e_cur = e_cur, (linear * e_cur - (k - 1) * e_prev) * inv
    return e_cur


def _e_values(count: int, params: EvalParams, t: float) -> list:
    # E_0(t) .. E_{count-1}(t) by the same recursion, evaluated in place.
    inv = 1.0 / (2.0 * params.beta * params.beta)
    lin = (params.q - t) * inv
    vals = [1.0]
    if count > 1:
        vals.append(lin)
    for k in range(2, count):
        vals.append(lin * vals[k - 1] - (k - 1) * inv * vals[k - 2])
    return vals[:count]


def _combined_exponentials(params: EvalParams):
    # exp(-(q-1)^2/4b^2) and exp(-(q+1)^2/4b^2).  Always formed from the
    # combined exponent, never as a product of a large and a tiny factor.
    s = 1.0 / (2.0 * params.beta)
    up = (params.q - 1.0) * s
    lo = (params.q + 1.0) * s
    return math.exp(-up * up), math.exp(-lo * lo)


def _boundary_power(v: float, p: int) -> float:
    # v^p * exp(-v^2) in log space so large |v| cannot overflow.
    if p == 0:
        return math.exp(-v * v)
    if v == 0.0:
        return 0.0
    a = p * math.log(abs(v)) - v * v
    if a < -745.0:
        return 0.0
    out = math.exp(a)
    if v < 0.0 and p % 2 == 1:
        return -out
    return out


def _moment_limits(params: EvalParams):
    # Substituting u = (t - q)/2b maps t in [-1, 1] to [L, U] below.
    inv = 1.0 / (2.0 * params.beta)
    return -(params.q + 1.0) * inv, (1.0 - params.q) * inv


def _half_line_total(p: int) -> float:
    # Integral of u^p exp(-u^2) over [0, inf) = Gamma((p+1)/2) / 2.
    return 0.5 * math.gamma(0.5 * (p + 1))


def _upper_tail(p: int, v: float) -> float:
    # Integral of u^p exp(-u^2) over [v, inf) for v^2 well above (p+1)/2,
    # via the continued fraction for the upper incomplete gamma (modified
    # Lentz).  Every intermediate stays on the scale of the result.
    pref = 0.5 * _boundary_power(v, p + 1)
    if pref == 0.0:
        return 0.0
    x = v * v
    a = 0.5 * (p + 1)
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 201):
        num = -i * (i - a)
        b += 2.0
        d = num * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + num / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-17:
            break
    return pref * h


def _lower_partial(p: int, v: float) -> float:
    """Integral of u^p exp(-u^2) over [0, v] for v >= 0.

    Near the origin this is the all-positive confluent series for the
    lower incomplete gamma; once v^2 clears (p+1)/2 by a margin, the
    complement against the half-line total is cheaper and bypasses the
    series' growing term count.
    """
    if v == 0.0:
        return 0.0
    x = v * v
    a = 0.5 * (p + 1)
    if x >= a + 8.0:
        return _half_line_total(p) - _upper_tail(p, v)
    terms = [_boundary_power(v, p + 1) / (p + 1)]
    total = terms[0]
    for j in range(1, 600):
        nxt = terms[-1] * (x / (a + j))
        terms.append(nxt)
        total += nxt
        if nxt < 1e-17 * total:
            break
    return math.fsum(terms)


def _power_moment_interval(p: int, lo: float, up: float) -> float:
    """Integral of u^p exp(-u^2) over [lo, up], lo <= up, assembled so no
    intermediate dwarfs the result.

    An interval containing the origin splits into two origin-anchored
    pieces that combine with matching signs (exactly cancelling for odd p
    on symmetric intervals).  An all-negative interval reflects onto the
    positive axis.  There, a far-tail interval differences two tail
    integrals of comparable size; anything else differences two lower
    partials, whose gap is the mass actually inside the interval.
    """
    if lo < 0.0 < up:
        right = _lower_partial(p, up)
        left = _lower_partial(p, -lo)
        return right + left if p % 2 == 0 else right - left
    sign = 1.0
    if up <= 0.0:
        lo, up = -up, -lo
        if p % 2 == 1:
            sign = -1.0
    if lo * lo >= 0.5 * (p + 1) + 2.0:
        return sign * (_upper_tail(p, lo) - _upper_tail(p, up))
    return sign * (_lower_partial(p, up) - _lower_partial(p, lo))


def gaussian_moment_even(s: int, params: EvalParams) -> float:
    """Integral of t^(2s) exp(-t^2) over [-(q+1)/2b, (1-q)/2b].

    The interval is the image of [-1, 1] under u = (t - q)/2b and always
    has width 1/b.  The textbook reduction (an erf difference carrying
    coefficient sqrt(pi) (2s-1)!!/2^(s+1), minus Gaussian boundary terms)
    is mathematically what this computes, but that assembly loses five
    digits to cancellation by s = 8 on unit-scale intervals, so the value
    is built instead from origin-anchored incomplete-gamma pieces.
    """
    if s < 0:
        raise ValueError("s must be >= 0")
    lo, up = _moment_limits(params)
    if lo == up:
        return 0.0
    out = _power_moment_interval(2 * s, lo, up)
    if not math.isfinite(out):
        raise OverflowGuardError(
            f"even moment s={s} overflowed for beta={params.beta}, q={params.q}"
        )
    return out


def gaussian_moment_odd(s: int, params: EvalParams) -> float:
    """Integral of t^(2s+1) exp(-t^2) over the same interval as the even case.

    Odd powers admit the elementary antiderivative (polynomial times
    Gaussian); the incomplete-gamma route reproduces it with the even
    case's cancellation control, and returns an exact zero when q = 0
    makes the interval symmetric.
    """
    if s < 0:
        raise ValueError("s must be >= 0")
    lo, up = _moment_limits(params)
    if lo == up:
        return 0.0
    out = _power_moment_interval(2 * s + 1, lo, up)
    if not math.isfinite(out):
        raise OverflowGuardError(
            f"odd moment s={s} overflowed for beta={params.beta}, q={params.q}"
        )
    return out


def _gaussian_power_moment(p: int, params: EvalParams) -> float:
    # Integral of u^p exp(-u^2) over the moment interval, p >= 0.
    if p % 2 == 0:
        return gaussian_moment_even(p // 2, params)
    return gaussian_moment_odd((p - 1) // 2, params)


#: Crossover for the two residual back ends: the positive-term series in t
#: is used while x = |q|/2b^2 stays below this, the u-substitution moment
#: expansion beyond it.  At the crossover the series still needs only a few
#: hundred terms and the expansion's binomial cancellation is already mild.
_SERIES_X_MAX = 80.0


def _even_weight_integrals(i_need: int, c: float) -> list:
    """A_i = integral of t^i exp(-c^2 t^2) over [-1, 1] for even i <= i_need.

    Returned as a list indexed by i // 2.  Integration by parts links
    A_i = ((i-1) A_{i-2} - 2 e^{-c^2}) / 2c^2; that direction contracts
    errors only while i < 2c^2, so the chain runs upward from the erf seed
    below the crossover and downward (all quantities positive, seeded with
    zero far above the last index wanted) beyond it.
    """
    i_need += i_need & 1
    tcc = 2.0 * c * c
    bnd = 2.0 * _exp_c2(c)
    out = [0.0] * (i_need // 2 + 1)
    out[0] = _SQRT_PI * erf(c) / c
    i_split = min(i_need, 2 * int(c * c))
    if i_split < 6:
        i_split = 0
    for i in range(2, i_split + 1, 2):
        out[i // 2] = ((i - 1) * out[i // 2 - 1] - bnd) / tcc
    if i_split < i_need:
        i_top = i_need + 48 + 2 * int(9.0 * c)
        a = 0.0
        i = i_top
        while i >= i_split + 4:
            a = (tcc * a + bnd) / (i - 1)
            i -= 2
            if i <= i_need:
                out[i // 2] = a
    return out


def _exp_c2(c: float) -> float:
    # exp(-c^2); c can be large enough that c*c alone would be fine but the
    # exponential underflows, which is the correct limit here.
    a = c * c
    if a > 745.0:
        return 0.0
    return math.exp(-a)


def _t_moments_series(p_max: int, beta: float, aq: float) -> list:
    """M_p = integral of t^p exp(-(aq-t)^2/4b^2) over [-1, 1], p = 0..p_max.

    Requires aq >= 0.  Expanding exp(aq t/2b^2) in its power series gives

        M_p = e^{-aq^2/4b^2} sum_j x^j/j! A_{p+j},  x = aq/2b^2,

    with only even p+j contributing.  Every term is non-negative, so the
    sum carries no cancellation at all; accuracy is set by the A_i chain.
    """
    c = 0.5 / beta
    x = 2.0 * c * c * aq
    w0 = _exp_c2(aq * c)
    if w0 == 0.0:
        return [0.0] * (p_max + 1)
    j_cap = int(x + 12.0 * math.sqrt(x + 1.0)) + 40
    i_need = p_max + j_cap + 1
    weights = _even_weight_integrals(i_need, c)
    moments = []
    for p in range(p_max + 1):
        j = p % 2
        w = w0 * x if j else w0
        terms = []
        while j <= j_cap:
            t = w * weights[(p + j) // 2]
            terms.append(t)
            if j > x and t < 1e-18 * terms[0]:
                break
            w *= x * x / ((j + 1.0) * (j + 2.0))
            j += 2
        moments.append(math.fsum(terms))
    return moments


def _t_moments_expansion(p_max: int, params: EvalParams) -> list:
    # Same moments through the u = (t - q)/2b substitution: each t-power
    # becomes a binomial combination of interval Gaussian moments.  Stable
    # once x = |q|/2b^2 is large, which is the only regime that uses it.
    two_beta = 2.0 * params.beta
    inner = [_gaussian_power_moment(s, params) for s in range(p_max + 1)]
    if not any(inner):
        return [0.0] * (p_max + 1)
    out = []
    for p in range(p_max + 1):
        terms = [
            math.comb(p, s) * params.q ** (p - s) * two_beta ** (s + 1) * inner[s]
            for s in range(p + 1)
        ]
        out.append(math.fsum(terms))
    return out


def residual_integral(params: EvalParams) -> float:
    """Integral over [-1, 1] of exp(-(q-t)^2/4b^2) * d^r/dt^r (1-t^2)^n.

    Here r = m + n + 1.  Expanding the derivative termwise,

        d^r/dt^r (1-t^2)^n =
            sum_{k=ceil(r/2)}^{n} (-1)^k C(n,k) (2k)!/(2k-r)! t^(2k-r),

    reduces everything to Gaussian t-moments over [-1, 1].  Those come
    from the cancellation-free series for moderate x = |q|/2b^2 and from
    the u = (t - q)/2b substitution into interval Gaussian moments beyond
    that; q < 0 maps onto q > 0 through t -> -t, which flips the result
    by (-1)^r.  For r odd and q = 0 the integrand is odd and the result
    vanishes through the odd moments.
    """
    m, n = params.m, params.n
    r = m + n + 1
    if r > 2 * n:
        return 0.0
    p_max = 2 * n - r
    aq = abs(params.q)
    if aq / (2.0 * params.beta * params.beta) <= _SERIES_X_MAX:
        moments = _t_moments_series(p_max, params.beta, aq)
        if params.q < 0.0:
            moments = [-v if p % 2 else v for p, v in enumerate(moments)]
    else:
        moments = _t_moments_expansion(p_max, params)
    terms = [
        (-1) ** k * math.comb(n, k) * math.perm(2 * k, r) * moments[2 * k - r]
        for k in range((r + 1) // 2, n + 1)
    ]
    if not all(math.isfinite(t) for t in terms):
        raise OverflowGuardError(
            f"residual integral overflowed for m={m}, n={n}, "
            f"beta={params.beta}, q={params.q}"
        )
    return math.fsum(terms)


def eval_closed(params: EvalParams) -> complex:
    """Closed-form value of the transform at the given parameters.

    The amplitude is assembled as a single compensated sum of boundary
    terms (and, for m < n, the residual integral), then the phase
    i^-(m+n+1) is applied.  The boundary terms pair the exact endpoint
    derivative weights with E_j evaluated at t = +-1 and the combined
    exponentials exp(-(q-+1)^2/4b^2), so no intermediate exponential of a
    large positive argument is ever formed.
    """
    m, n = params.m, params.n
    r = m + n + 1
    g_plus, g_minus = _combined_exponentials(params)
    weights = endpoint_weights(n)
    e_plus = _e_values(m + 1, params, 1.0)
    e_minus = _e_values(m + 1, params, -1.0)
    k_hi = 2 * n if m >= n else n + m
    terms = []
    for k in range(n, k_hi + 1):
        sign = -1.0 if k % 2 else 1.0
        j = m + n - k
        terms.append(sign * weights.at_plus1(k) * e_plus[j] * g_plus)
        terms.append(-sign * weights.at_minus1(k) * e_minus[j] * g_minus)
    if m < n:
        parity = -1.0 if r % 2 else 1.0
        terms.append(parity * residual_integral(params))
    if not all(math.isfinite(t) for t in terms):
        raise OverflowGuardError(
            f"amplitude overflowed for m={m}, n={n}, beta={params.beta}, q={params.q}"
        )
    pref = 1.0 / (params.beta * 2.0 ** (n + 0.5) * math.factorial(n))
    amp = pref * math.fsum(terms)
    if not math.isfinite(amp):
        raise OverflowGuardError(
            f"amplitude overflowed for m={m}, n={n}, beta={params.beta}, q={params.q}"
        )
    # i^-r keeps the value purely real or purely imaginary by construction
    quarter = r % 4
    if quarter == 0:
        return complex(amp, 0.0)
    if quarter == 1:
        return complex(0.0, -amp)
    if quarter == 2:
        return complex(-amp, 0.0)
    return complex(0.0, amp)
