"""theta_p, rho, psi_rho and the entropy identity between them.

theta_p is the minimum over beta > 0 of

    (1 + beta + ... + beta^(p-1)) / beta^((p-1)/3)

and psi_rho is the truncated geometric law on {0, ..., p-1} with mean
(p-1)/3.  Setting the log-derivative of the objective to zero and
writing out the mean condition of psi_rho give the same integer
polynomial, sum_j (3j - (p-1)) x^j, so the minimiser and rho coincide and
entropy(psi_rho) == log(theta_p).

Roots are bracketed by bisection on dyadic rationals with exact sign
evaluation; mpmath only enters when rendering real values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .errors import InstanceError
from .exactdist import DEFAULT_DIGITS, Dist, entropy, mean, mix


@dataclass(frozen=True)
class ThetaResult:
    p: int
    beta_star: mpmath.mpf
    theta: mpmath.mpf
    digits: int
    bracket: tuple[Fraction, Fraction]


@dataclass(frozen=True)
class RhoResult:
    p: int
    rho: mpmath.mpf
    bracket: tuple[Fraction, Fraction]
    digits: int


@dataclass(frozen=True)
class PsiApprox:
    p: int
    rho: mpmath.mpf
    masses: tuple[mpmath.mpf, ...]
    mean: mpmath.mpf


def _horner(coeffs: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def sign_changes(coeffs: Sequence[int]) -> int:
    signs = [c > 0 for c in coeffs if c]
    return sum(a != b for a, b in zip(signs, signs[1:]))


def bisect_root(coeffs: Sequence[int], lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink ``[lo, hi]`` around the sign change of an integer polynomial.

    Returns a degenerate interval when a midpoint hits the root exactly.
    """
    f_lo, f_hi = _horner(coeffs, lo), _horner(coeffs, hi)
    if f_lo == 0:
        return lo, lo
    if f_hi == 0:
        return hi, hi
    if (f_lo > 0) == (f_hi > 0):
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    while hi - lo > width:
        mid = (lo + hi) / 2
        f_mid = _horner(coeffs, mid)
        if f_mid == 0:
            return mid, mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return lo, hi


def stationarity_poly(p: int) -> list[int]:
    """Coefficients (constant term first) of 3*x*S'(x) - (p-1)*S(x), S = 1 + x + ... + x^(p-1)."""
    coeffs = [3 * j - (p - 1) for j in range(p)]
    assert p < 2 or sign_changes(coeffs) == 1
    return coeffs


def mean_condition_poly(p: int) -> list[int]:
    """Coefficients of 3 * sum_j j x^j - (p-1) * sum_j x^j, i.e. mean(psi_x) == (p-1)/3 cleared of denominators."""
    numer = [j for j in range(p)]
    denom = [1] * p
    return [3 * a - (p - 1) * b for a, b in zip(numer, denom)]


def _mpf(q: Fraction) -> mpmath.mpf:
    return mpmath.mpf(q.numerator) / q.denominator


def _objective(p: int, beta) -> mpmath.mpf:
    return mpmath.fsum(beta ** j for j in range(p)) / beta ** (mpmath.mpf(p - 1) / 3)


def _check_digits(digits: int) -> None:
    if digits < 1:
        raise InstanceError("BAD_PRECISION", "digits must be >= 1")


def theta(p: int, digits: int = DEFAULT_DIGITS) -> ThetaResult:
    """Cap-set growth constant theta_p and its minimiser."""
    _check_digits(digits)
    if p < 1:
        raise InstanceError("BAD_P", f"p must be positive, got {p}")
    with mpmath.workdps(digits + 10):
        if p == 1:
            return ThetaResult(1, mpmath.mpf(1), mpmath.mpf(1), digits, (Fraction(1), Fraction(1)))
        # P(0) = -(p-1) < 0 and P(1) = p(p-1)/2 > 0.
        lo, hi = bisect_root(stationarity_poly(p), Fraction(0), Fraction(1), Fraction(1, 10 ** digits))
        beta = (_mpf(lo) + _mpf(hi)) / 2
        return ThetaResult(p, +beta, +_objective(p, beta), digits, (lo, hi))


def rho(p: int, digits: int = DEFAULT_DIGITS) -> RhoResult:
    """Ratio of the truncated geometric law on p symbols with mean (p-1)/3."""
    _check_digits(digits)
    if p < 2:
        raise InstanceError("BAD_P", "rho needs p >= 2 (for p = 1 psi is the point mass at 0)")
    lo, hi = bisect_root(mean_condition_poly(p), Fraction(0), Fraction(1), Fraction(1, 10 ** digits))
    with mpmath.workdps(digits + 10):
        return RhoResult(p, +(_mpf(lo) + _mpf(hi)) / 2, (lo, hi), digits)


def psi(p: int, digits: int = DEFAULT_DIGITS) -> PsiApprox:
    """Real-valued psi_rho, componentwise accurate to about 10**-digits."""
    r = rho(p, digits + 2)
    with mpmath.workdps(digits + 10):
        powers = [r.rho ** j for j in range(p)]
        total = mpmath.fsum(powers)
        masses = tuple(w / total for w in powers)
        return PsiApprox(p, r.rho, masses, mpmath.fsum(j * m for j, m in enumerate(masses)))


def geometric(p: int, ratio: Fraction) -> Dist:
    """Exact truncated geometric law ``ratio**j / sum`` on p symbols."""
    powers = [ratio ** j for j in range(p)]
    total = sum(powers)
    return Dist(p, tuple(w / total for w in powers))


def psi_rational(p: int, digits: int = DEFAULT_DIGITS) -> Dist:
    """Decreasing exact-rational stand-in for psi_rho with mean exactly (p-1)/3.

    Mixes the geometric laws at the two ends of a tight bracket around rho;
    the mean is monotone in the ratio so the two means straddle the target
    and one exact weight hits it.
    """
    if p < 2:
        raise InstanceError("BAD_P", "psi needs p >= 2")
    _check_digits(digits)
    # Two spare digits keep the mixture inside 10**-digits of psi_rho.
    lo, hi = bisect_root(mean_condition_poly(p), Fraction(0), Fraction(1), Fraction(1, 10 ** (digits + 2)))
    target = Fraction(p - 1, 3)
    g_lo = geometric(p, lo)
    if lo == hi:
        return g_lo
    g_hi = geometric(p, hi)
    m_lo, m_hi = mean(g_lo), mean(g_hi)
    assert m_lo < target < m_hi
    w_lo = (m_hi - target) / (m_hi - m_lo)
    return mix([(w_lo, g_lo), (1 - w_lo, g_hi)])


def lambda_prime(p: int, digits: int = DEFAULT_DIGITS) -> mpmath.mpf:
    """Entropy of psi_rho, the entropy maximum over laws on p symbols with mean (p-1)/3."""
    _check_digits(digits)
    if p == 1:
        return mpmath.mpf(0)
    approx = psi(p, digits + 2)
    with mpmath.workdps(digits + 10):
        return -mpmath.fsum(m * mpmath.log(m) for m in approx.masses)


def lambda_prime_rational(p: int, digits: int = DEFAULT_DIGITS) -> mpmath.mpf:
    """Entropy of :func:`psi_rational`; agrees with :func:`lambda_prime` to about 10**-digits."""
    if p == 1:
        return mpmath.mpf(0)
    return entropy(psi_rational(p, digits), digits)
