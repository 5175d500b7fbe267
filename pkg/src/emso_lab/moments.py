"""First and second moments of the clique-pair counts X1(k), X2(k) in G(n,p), in log space.

X1(k) counts pairs (C, c) with C a maximal k-clique and c an outside vertex
with no neighbour in C; X2(k) counts pairs with C a dominating k-clique and c
an outside common neighbour of C.  With q = 1 - p,

    E X1 = C(n,k) (n-k) p^C(k,2) q^k (1-p^k)^(n-k-1)
    E X2 = C(n,k) (n-k) p^C(k,2) p^k (1-q^k)^(n-k-1)

Every function takes ln n rather than n, so n may be astronomically large.
When ln n is within rounding of the log of a modest integer, that integer is
used exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Iterable

import mpmath
import numpy as np

NEG_INF = -math.inf

P_CRITICAL = (3 - math.sqrt(5)) / 2
P_CRITICAL_DUAL = (math.sqrt(5) - 1) / 2


def _mp_p(p: float):
    """Extended-precision p, exact for the two critical values."""
    if p == P_CRITICAL:
        return (3 - mpmath.sqrt(5)) / 2
    if p == P_CRITICAL_DUAL:
        return (mpmath.sqrt(5) - 1) / 2
    return mpmath.mpf(p)


def threshold_gap(p: float) -> float:
    """2 ln(1/(1-p)) - ln(1/p); its sign separates the three regimes."""
    return -2 * math.log1p(-p) + math.log(p)


@dataclass(frozen=True)
class LogMoment:
    log_value: float
    log_n: float
    k: int
    p: float

    def value(self) -> float:
        if self.log_value > 709.0:
            raise OverflowError(f"exp({self.log_value}) does not fit in a float")
        return math.exp(self.log_value)


# ---------------------------------------------------------------- helpers

def _as_int(log_n: float) -> int | None:
    if log_n > 27.0:
        return None
    x = math.exp(log_n)
    r = round(x)
    if r >= 1 and abs(x - r) <= 1e-9 * r:
        return r
    return None


def _log_n_minus(log_n: float, c: int) -> float:
    """ln(n - c); -inf when n - c <= 0."""
    n = _as_int(log_n)
    if n is not None:
        return math.log(n - c) if n > c else NEG_INF
    frac = c * math.exp(-log_n)
    if frac >= 1:
        return NEG_INF
    return log_n + math.log1p(-frac)


def _log_falling(log_n: float, count: int, offset: int = 0) -> float:
    """ln[(n-offset)(n-offset-1)...(n-offset-count+1)]."""
    return float(_falling_prefix(log_n, offset, count)[count])


@lru_cache(maxsize=256)
def _falling_prefix(log_n: float, offset: int, count: int) -> np.ndarray:
    """Array whose entry j is ln[(n-offset)...(n-offset-j+1)], j = 0..count."""
    out = np.zeros(count + 1)
    if count == 0:
        return out
    n = _as_int(log_n)
    steps = offset + np.arange(count, dtype=np.float64)
    if n is not None:
        with np.errstate(divide="ignore"):
            terms = np.log(np.maximum(n - steps, 0.0))
    else:
        frac = steps * math.exp(-log_n)
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = np.where(frac < 1.0, log_n + np.log1p(-np.minimum(frac, 1.0)), -np.inf)
    out[1:] = np.cumsum(terms)
    # once a factor hits zero the product stays zero
    out[1:][np.isneginf(terms).cumsum() > 0] = -np.inf
    return out


def _log_binom_n(log_n: float, k: int, offset: int = 0) -> float:
    """ln C(n - offset, k)."""
    if k < 0:
        return NEG_INF
    return _log_falling(log_n, k, offset) - math.lgamma(k + 1)


def _log_comb(a: int, b: int) -> float:
    if b < 0 or b > a:
        return NEG_INF
    if a <= 500:
        return math.log(math.comb(a, b))
    return math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)


def _xlog(c: float, log_x: float) -> float:
    """c * ln x with the convention 0 * (-inf) = 0."""
    return 0.0 if c == 0 else c * log_x


def _log1m_exp(log_x: float) -> float:
    """ln(1 - e^log_x) for log_x <= 0."""
    if log_x == NEG_INF:
        return 0.0
    if log_x > -0.693:
        return math.log(-math.expm1(log_x))
    return math.log1p(-math.exp(log_x))


def _count_times_log1m(log_count: float, log_x: float) -> float:
    """count * ln(1 - x) with count = e^log_count, x = e^log_x in [0, 1].

    Written as -exp(ln count + ln(-ln(1 - x))) so that neither a huge count nor
    a tiny x is ever formed explicitly.
    """
    if log_count == NEG_INF or log_x == NEG_INF:
        return 0.0
    if log_x >= 0.0:
        return NEG_INF
    if log_x < -30.0:
        log_inner = log_x + math.log1p(0.5 * math.exp(log_x))  # -ln(1-x) = x + x^2/2 + ...
    else:
        log_inner = math.log(-_log1m_exp(log_x))
    e = log_count + log_inner
    return -math.exp(e) if e < 709.0 else NEG_INF


def _signed_count_times(log_n: float, c: int, log_x: float) -> float:
    """(n - c) * ln(1 - x) allowing n - c of either sign (exponent of a power)."""
    n = _as_int(log_n)
    if n is not None:
        m = n - c
        if m == 0:
            return 0.0
        val = _count_times_log1m(math.log(abs(m)), log_x)
        return val if m > 0 else (math.inf if val == NEG_INF else -val)
    return _count_times_log1m(_log_n_minus(log_n, c), log_x)


def _logs(p: float) -> tuple[float, float]:
    lp = math.log(p) if p > 0 else NEG_INF
    lq = math.log1p(-p) if p < 1 else NEG_INF
    return lp, lq


def _check_args(k: int, p: float) -> None:
    if k < 1:
        raise ValueError("k must be positive")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")


# ---------------------------------------------------------------- first moments

def log_E_X1(log_n: float, k: int, p: float) -> LogMoment:
    _check_args(k, p)
    lp, lq = _logs(p)
    val = (
        _log_binom_n(log_n, k)
        + _log_n_minus(log_n, k)
        + _xlog(math.comb(k, 2), lp)
        + _xlog(k, lq)
    )
    if val != NEG_INF:
        val += _signed_count_times(log_n, k + 1, _xlog(k, lp))
    return LogMoment(val, log_n, k, p)


def log_E_X2(log_n: float, k: int, p: float) -> LogMoment:
    _check_args(k, p)
    lp, lq = _logs(p)
    val = (
        _log_binom_n(log_n, k)
        + _log_n_minus(log_n, k)
        + _xlog(math.comb(k, 2) + k, lp)
    )
    if val != NEG_INF:
        val += _signed_count_times(log_n, k + 1, _xlog(k, lq))
    return LogMoment(val, log_n, k, p)


def exact_E_X1(n: int, k: int, p: Fraction) -> Fraction:
    p = Fraction(p)
    q = 1 - p
    if k > n - 1:
        return Fraction(0)
    return math.comb(n, k) * (n - k) * p ** math.comb(k, 2) * q ** k * (1 - p ** k) ** (n - k - 1)


def exact_E_X2(n: int, k: int, p: Fraction) -> Fraction:
    p = Fraction(p)
    q = 1 - p
    if k > n - 1:
        return Fraction(0)
    return math.comb(n, k) * (n - k) * p ** (math.comb(k, 2) + k) * (1 - q ** k) ** (n - k - 1)


# ---------------------------------------------------------------- second moment of X2

@dataclass(frozen=True)
class VarianceTerms:
    """Terms for two dominating k-cliques sharing ell vertices.

    B1..B4 split the pairs of witnesses c1, c2 by where they sit: B1 both
    inside the other clique, B2 one inside, B3 a shared witness, B4 two
    distinct outside witnesses.  F and G are the analogous X1 quantities.
    """
    ell: int
    beta_ell: float
    log_A_ell: float
    log_B1: float
    log_B2: float
    log_B3: float
    log_B4: float
    log_F_ell: float
    log_G_ell: float


def beta(k: int, ell: int, p: float) -> float:
    """P(a fixed outside vertex has a neighbour in each of two k-cliques sharing ell vertices)."""
    q = 1.0 - p
    return 1.0 - 2.0 * q ** k + q ** (2 * k - ell)


def _log_one_minus_beta(k: int, ell: int, p: float) -> float:
    """ln(2 q^k - q^(2k-ell)) = ln(1 - beta_ell)."""
    lq = _logs(p)[1]
    if lq == NEG_INF:
        return NEG_INF
    return k * lq + math.log(2.0 - math.exp((k - ell) * lq))


def _log_beta_power(log_n: float, c: int, k: int, ell: int, p: float) -> float:
    """(n - c) * ln beta_ell."""
    return _signed_count_times(log_n, c, _log_one_minus_beta(k, ell, p))


def _logsumexp(values: Iterable[float]) -> float:
    vals = [v for v in values if v != NEG_INF]
    if not vals:
        return NEG_INF
    top = max(vals)
    if top == math.inf:
        return math.inf
    return top + math.log(sum(math.exp(v - top) for v in vals))


def log_A(log_n: float, k: int, ell: int, p: float) -> float:
    """ln[C(k, ell) C(n-k, k-ell) p^(-C(ell,2))]."""
    lp = _logs(p)[0]
    j = k - ell
    log_binom = float(_falling_prefix(log_n, k, k)[j]) - math.lgamma(j + 1)
    return _log_comb(k, ell) + log_binom - _xlog(math.comb(ell, 2), lp)


def variance_terms(log_n: float, k: int, ell: int, p: float) -> VarianceTerms:
    if not 1 <= ell <= k - 1:
        raise ValueError("need 1 <= ell <= k - 1")
    _check_args(k, p)
    lp, lq = _logs(p)
    la = log_A(log_n, k, ell, p)
    c = 2 * k - ell  # n - c vertices lie outside both cliques
    lm = _log_n_minus(log_n, c)
    lm1 = _log_n_minus(log_n, c + 1)

    b1 = la + 2 * math.log(k - ell) + _xlog(2 * (k - ell), lp) + _log_beta_power(log_n, c, k, ell, p)
    b2 = la + math.log(2 * (k - ell)) + lm + _xlog(c, lp) + _log_beta_power(log_n, c + 1, k, ell, p)
    b3 = la + lm + _xlog(c, lp) + _log_beta_power(log_n, c + 1, k, ell, p)
    b4 = la + lm + lm1 + _xlog(2 * k, lp) + _log_beta_power(log_n, c + 2, k, ell, p)

    # X1 analogues: F counts shared outside witnesses, G the remaining pairs
    f_inner = _logsumexp([-_xlog(ell, lq), lm1])
    log_f = la + lm + f_inner
    g_inner = _logsumexp([
        lm + _logsumexp([math.log(k - ell + 1) - _xlog(ell, lp), lm1]),
        2 * math.log(k - ell) - _xlog(2 * ell, lp),
    ])
    return VarianceTerms(ell, beta(k, ell, p), la, b1, b2, b3, b4, log_f, g_inner + la)


def _signed_sum(terms: Iterable[tuple[int, float]]) -> float:
    terms = [(s, v) for s, v in terms if v != NEG_INF and s != 0]
    if not terms:
        return NEG_INF
    top = max(v for _, v in terms)
    total = sum(s * math.exp(v - top) for s, v in terms)
    if total <= 0:
        return NEG_INF
    return top + math.log(total)


def _log_ratio_disjoint(log_n: float, k: int, p: float) -> float:
    """ln of [C(n-k,k)(n-2k)^2 p^(2C(k,2)+2k) beta_0^(n-2k-2)] / (E X2)^2, computed directly."""
    n = _as_int(log_n)
    lq = _logs(p)[1]
    log_qk = _xlog(k, lq)
    if n is not None:
        a = math.comb(n - k, k) if n - k >= k else 0
        b = math.comb(n, k)
        if a == 0 or n - 2 * k <= 0:
            return NEG_INF
        ratio = math.log(a) - math.log(b) + 2 * (math.log(n - 2 * k) - math.log(n - k))
    else:
        x = math.exp(-log_n)
        ratio = sum(math.log1p(-k * x / (1 - i * x)) for i in range(k))
        ratio += 2 * math.log1p(-k * x / (1 - k * x))
    # beta_0 = (1 - q^k)^2: exponents 2(n-2k-2) - 2(n-k-1) = -2(k+1)
    ratio += -2 * (k + 1) * _log1m_exp(log_qk) if log_qk != 0.0 else math.inf
    return ratio


def log_variance_bound_X2(log_n: float, k: int, p: float) -> LogMoment:
    """ln of the assembled second-moment expression

        E X2 + C(n,k)(n-k)(n-k-1) p^(C(k,2)+2k) beta_k^(n-k-2)
             + [C(n,k) C(n-k,k) (n-2k)^2 p^(2C(k,2)+2k) beta_0^(n-2k-2) - (E X2)^2]
             + C(n,k) p^(2C(k,2)) sum_{ell=1}^{k-1} (B1 + B2 + B3 + B4).

    The bracketed difference may be negative; the sum is done with signs.
    Returns -inf if the total is not positive.
    """
    _check_args(k, p)
    if p == 0.0:
        return LogMoment(NEG_INF, log_n, k, p)
    lp, _ = _logs(p)
    e = log_E_X2(log_n, k, p).log_value
    lb = _log_binom_n(log_n, k)
    terms = [(1, e)]
    # two witnesses for the same clique; beta_k = 1 - q^k
    t1 = lb + _log_n_minus(log_n, k) + _log_n_minus(log_n, k + 1) + _xlog(math.comb(k, 2) + 2 * k, lp)
    if t1 != NEG_INF:
        t1 += _log_beta_power(log_n, k + 2, k, k, p)
    terms.append((1, t1))
    # disjoint cliques minus the square of the mean
    if e != NEG_INF:
        d = _log_ratio_disjoint(log_n, k, p)
        if d == NEG_INF:
            terms.append((-1, 2 * e))
        elif d == math.inf:
            terms.append((1, math.inf))
        else:
            em = math.expm1(d)
            if em != 0.0:
                terms.append((1 if em > 0 else -1, 2 * e + math.log(abs(em))))
    # overlapping cliques
    if k >= 2:
        pref = lb + _xlog(2 * math.comb(k, 2), lp)
        parts = []
        for ell in range(1, k):
            vt = variance_terms(log_n, k, ell, p)
            parts += [vt.log_B1, vt.log_B2, vt.log_B3, vt.log_B4]
        overlap = _logsumexp(parts)
        if overlap != NEG_INF:
            terms.append((1, pref + overlap))
    return LogMoment(_signed_sum(terms), log_n, k, p)


def chebyshev_ratio(log_n: float, k: int, p: float) -> float:
    """Bound on P(X2 = 0): variance bound over squared mean."""
    e = log_E_X2(log_n, k, p).log_value
    v = log_variance_bound_X2(log_n, k, p).log_value
    if e == NEG_INF:
        return math.inf
    d = v - 2 * e
    return math.exp(d) if d < 709 else math.inf


# ---------------------------------------------------------------- the exponent f(k) and k*

def f_critical(log_n: float, k: float, p: float) -> float:
    """k ln n - k ln k + k - (k^2 + k)/2 ln(1/p) - n (1-p)^k.

    The exponent of E X2(k) up to the ln n and Stirling terms.  At p = p_c,
    where ln(1/p) = 2 ln(1/(1-p)), this is k ln n - k ln k + k
    - (k^2 + k) ln(1/(1-p)) - n (1-p)^k.
    """
    lp, lq = math.log(p), math.log1p(-p)
    return k * log_n - k * math.log(k) + k + (k * k + k) / 2 * lp - _safe_exp(log_n + k * lq)


def f_critical_prime(log_n: float, k: float, p: float) -> float:
    lp, lq = math.log(p), math.log1p(-p)
    return log_n - math.log(k) + (k + 0.5) * lp - lq * _safe_exp(log_n + k * lq)


def f_subcritical(log_n: float, k: float, p: float) -> float:
    """k ln n - k ln k + k - (k^2/2) ln(1/p) + (k/2) ln(1/p) - n p^k - n (1-p)^k."""
    lp, lq = math.log(p), math.log1p(-p)
    return (k * log_n - k * math.log(k) + k + (k * k - k) / 2 * lp
            - _safe_exp(log_n + k * lp) - _safe_exp(log_n + k * lq))


def f_subcritical_prime(log_n: float, k: float, p: float) -> float:
    lp, lq = math.log(p), math.log1p(-p)
    return (log_n - math.log(k) + (k - 0.5) * lp
            - lp * _safe_exp(log_n + k * lp) - lq * _safe_exp(log_n + k * lq))


def _safe_exp(x: float) -> float:
    return math.exp(x) if x < 709.0 else math.inf


_VARIANTS = {
    "critical": (f_critical, f_critical_prime),
    "subcritical": (f_subcritical, f_subcritical_prime),
}


def k_star(log_n: float, p: float, variant: str = "critical", tol: float = 1e-10) -> float:
    """Root of f'(k) = 0 by bisection; f' is strictly decreasing in k > 0.

    Returns 1.0 when f' is already nonpositive at k = 1.
    """
    if not 0.0 < p < 1.0 or log_n <= 0:
        raise ValueError("need 0 < p < 1 and log_n > 0")
    _, fprime = _VARIANTS[variant]
    lo, hi = 1.0, 2.0
    if fprime(log_n, lo, p) <= 0:
        return lo
    while fprime(log_n, hi, p) > 0:
        lo, hi = hi, 2 * hi
    while hi - lo > tol * max(1.0, lo):
        mid = 0.5 * (lo + hi)
        if fprime(log_n, mid, p) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def best_k(log_n: float, p: float, variant: str = "critical") -> int:
    """Integer maximiser of f near k*, widening the window until the maximum is interior."""
    f, _ = _VARIANTS[variant]
    ks = k_star(log_n, p, variant)
    lo, hi = max(1, math.floor(ks) - 2), math.ceil(ks) + 2
    while True:
        vals = {k: f(log_n, k, p) for k in range(lo, hi + 1)}
        top = max(vals, key=lambda k: (vals[k], -k))
        if top == lo and lo > 1:
            lo = max(1, lo - 4)
        elif top == hi:
            hi += 4
        else:
            return top


def k_star_closed_form(log_n: float, p: float) -> float:
    """(ln n - ln ln n + ln ln(1/(1-p)) + ln ln n / ln n) / ln(1/(1-p)), dropping O(1/ln n)."""
    L = -math.log1p(-p)
    lln = math.log(log_n)
    return (log_n - lln + math.log(L) + lln / log_n) / L


# ---------------------------------------------------------------- critical sequences

_EXACT_K = 40


def critical_sequence(k: int, p: float, shift: float = 0.0) -> float:
    """ln floor(k (1/(1-p))^(k+shift)); exact for k <= 40, asymptotic above.

    Beyond k = 40 the dropped floor changes ln n by less than 1/n, below
    double precision for every p in (0, 1) with n > 2^52.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if shift not in (0, 0.5):
        raise ValueError("shift must be 0 or 1/2")
    if k <= _EXACT_K:
        with mpmath.workdps(60):
            q = 1 - _mp_p(p)
            n = mpmath.floor(k * (1 / q) ** (k + mpmath.mpf(shift)))
            if n < 1:
                return NEG_INF
            return float(mpmath.log(n))
    return math.log(k) - (k + shift) * math.log1p(-p)


@dataclass(frozen=True)
class OscillationRow:
    k: int
    log_n_full: float
    best_k_full: int
    log_EX2_full: float
    log_n_half: float
    argmax_half: int
    log_EX2_half: float
    chebyshev_full: float


def _max_log_E_X2(log_n: float, p: float, around: int) -> tuple[int, float]:
    lo, hi = max(1, around - 6), around + 6
    while True:
        vals = {k: log_E_X2(log_n, k, p).log_value for k in range(lo, hi + 1)}
        top = max(vals, key=lambda k: (vals[k], -k))
        if top == lo and lo > 1:
            lo = max(1, lo - 6)
        elif top == hi:
            hi += 6
        else:
            return top, vals[top]


def oscillation_report(k_range: Iterable[int], p: float) -> list[OscillationRow]:
    """Per k: ln E X2 at the best k on n = floor(k q^-k), and the maximum of
    ln E X2 over all k' on n = floor(k q^-(k+1/2))."""
    rows = []
    for k in k_range:
        ln0 = critical_sequence(k, p, 0)
        b0 = best_k(ln0, p)
        e0 = log_E_X2(ln0, b0, p).log_value
        ln1 = critical_sequence(k, p, 0.5)
        b1, e1 = _max_log_E_X2(ln1, p, best_k(ln1, p))
        rows.append(OscillationRow(k, ln0, b0, e0, ln1, b1, e1, chebyshev_ratio(ln0, b0, p)))
    return rows


# ---------------------------------------------------------------- W_a moments

def w_vertices(a: int) -> int:
    return a + (4 ** a - 1) // 3


def log_E_W(log_n: float, a: int, p: float) -> LogMoment:
    """ln E of the number of induced copies of W_a:
    C(n,s) s! / 24^((s-a-1)/4) p^(2s-a-2) (1-p)^(C(s,2)-2s+a+2)."""
    if a < 1:
        raise ValueError("a must be positive")
    s = w_vertices(a)
    lp, lq = _logs(p)
    val = (
        _log_binom_n(log_n, s)
        + math.lgamma(s + 1)
        - (s - a - 1) / 4 * math.log(24)
        + _xlog(2 * s - a - 2, lp)
        + _xlog(math.comb(s, 2) - 2 * s + a + 2, lq)
    )
    return LogMoment(val, log_n, a, p)


def log_E_Wtilde(log_n: float, a: int, p: float) -> LogMoment:
    """Adds the factor (1 - (1-p)^s)^(n-s): every outside vertex sees the copy."""
    base = log_E_W(log_n, a, p)
    if base.log_value == NEG_INF:
        return base
    s = w_vertices(a)
    lq = _logs(p)[1]
    return LogMoment(base.log_value + _signed_count_times(log_n, s, _xlog(s, lq)), log_n, a, p)


def lemma2_constant(p: float) -> float:
    """ln[24^(1/4) (1-p)^(5/2) / p^2]."""
    return 0.25 * math.log(24) + 2.5 * math.log1p(-p) - 2 * math.log(p)


def lemma2_k(log_n: float, p: float) -> float:
    """(2 / ln(1/(1-p))) (ln n - ln[24^(1/4)(1-p)^(5/2)/p^2])."""
    return 2.0 / -math.log1p(-p) * (log_n - lemma2_constant(p))


def witness_sequences(i: int, p: float) -> tuple[float, float]:
    """(ln n_i, ln m_i) with n_i = ceil(c (1/(1-p))^e), m_i = ceil(c (1/(1-p))^(2e)).

    Here e = (3i + 4^i - 1)/4 and c = exp(lemma2_constant(p)).  Computed in
    extended precision while the exponent is at most 400.
    """
    if i < 1:
        raise ValueError("i must be positive")
    e = Fraction(3 * i + 4 ** i - 1, 4)
    out = []
    for mult in (1, 2):
        ex = e * mult
        if ex <= 400:
            with mpmath.workdps(60):
                q = 1 - _mp_p(p)
                c = mpmath.e ** mpmath.mpf(lemma2_constant(p))
                val = mpmath.ceil(c * (1 / q) ** (mpmath.mpf(ex.numerator) / ex.denominator))
                out.append(float(mpmath.log(val)))
        else:
            out.append(lemma2_constant(p) - float(ex) * math.log1p(-p))
    return out[0], out[1]
