from fractions import Fraction

import mpmath
import pytest

from tricoupling.constants import (
    geometric,
    lambda_prime,
    lambda_prime_rational,
    mean_condition_poly,
    psi,
    psi_rational,
    rho,
    sign_changes,
    stationarity_poly,
    theta,
)
from tricoupling.errors import InstanceError
from tricoupling.exactdist import is_decreasing, mean


def objective(p, beta):
    return mpmath.fsum(beta ** j for j in range(p)) / beta ** (mpmath.mpf(p - 1) / 3)


def theta_by_calculus(p):
    """Minimise the objective by Newton on its numerical derivative."""
    with mpmath.workdps(30):
        beta = mpmath.findroot(lambda b: mpmath.diff(lambda x: objective(p, x), b), mpmath.mpf("0.6"))
        return beta, objective(p, beta)


class TestTheta:
    def test_p3_matches_published_bound(self):
        t = theta(3)
        assert 2.754 <= t.theta <= 2.756
        assert abs(t.theta - mpmath.mpf("2.75510461302363")) < 1e-12

    def test_p2_closed_form(self):
        t = theta(2)
        assert t.bracket == (Fraction(1, 2), Fraction(1, 2))
        assert abs(t.theta - mpmath.mpf(3) / 2 * mpmath.cbrt(2)) < 1e-12
        assert abs(float(t.theta) - 1.88988) < 1e-5

    def test_p1(self):
        t = theta(1)
        assert t.theta == 1

    @pytest.mark.parametrize("p", range(3, 11))
    def test_against_calculus(self, p):
        beta, value = theta_by_calculus(p)
        t = theta(p, 15)
        assert abs(t.beta_star - beta) < 1e-13
        assert abs(t.theta - value) < 1e-13

    @pytest.mark.parametrize("p", range(2, 11))
    def test_bracket_width_and_flatness(self, p):
        digits = 12
        t = theta(p, digits)
        lo, hi = t.bracket
        assert hi - lo <= Fraction(1, 10 ** digits)
        with mpmath.workdps(40):
            f_lo = objective(p, mpmath.mpf(lo.numerator) / lo.denominator)
            f_hi = objective(p, mpmath.mpf(hi.numerator) / hi.denominator)
            assert abs(f_lo - f_hi) / f_lo <= mpmath.mpf(10) ** -digits
        assert t.theta >= 1

    @pytest.mark.parametrize("p", range(2, 40))
    def test_single_sign_change(self, p):
        coeffs = stationarity_poly(p)
        assert sign_changes(coeffs) == 1
        nonzero = [c for c in coeffs if c]
        assert nonzero[0] < 0 < nonzero[-1]


class TestRho:
    def test_p2(self):
        r = rho(2)
        assert r.bracket == (Fraction(1, 2), Fraction(1, 2))

    def test_p3_closed_form(self):
        with mpmath.workdps(30):
            exact = (mpmath.sqrt(33) - 1) / 8
        assert abs(rho(3, 15).rho - exact) < 1e-15
        assert abs(float(rho(3).rho) - 0.593070) < 1e-6

    def test_p4_cubic(self):
        roots = mpmath.polyroots([2, 1, 0, -1])
        real = [r for r in roots if abs(mpmath.im(r)) < 1e-20 and mpmath.re(r) > 0]
        assert len(real) == 1
        assert abs(rho(4, 14).rho - mpmath.re(real[0])) < 1e-14

    def test_bad_p(self):
        with pytest.raises(InstanceError) as exc:
            rho(1)
        assert exc.value.code == "BAD_P"

    @pytest.mark.parametrize("p", range(2, 11))
    def test_overlaps_theta_bracket(self, p):
        t_lo, t_hi = theta(p).bracket
        r_lo, r_hi = rho(p).bracket
        assert max(t_lo, r_lo) <= min(t_hi, r_hi)

    @pytest.mark.parametrize("p", range(2, 11))
    def test_mean_condition(self, p):
        # Mean of the geometric law at the bracket ends straddles (p-1)/3.
        lo, hi = rho(p).bracket
        target = Fraction(p - 1, 3)
        assert mean(geometric(p, lo)) <= target <= mean(geometric(p, hi))

    def test_polynomials_agree(self):
        for p in range(1, 15):
            assert mean_condition_poly(p) == stationarity_poly(p)


class TestPsi:
    def test_p2(self):
        approx = psi(2)
        assert abs(approx.masses[0] - mpmath.mpf(2) / 3) < 1e-14
        assert abs(approx.masses[1] - mpmath.mpf(1) / 3) < 1e-14

    def test_p3_closed_form(self):
        with mpmath.workdps(30):
            r = (mpmath.sqrt(33) - 1) / 8
            total = 1 + r + r * r
            expected = [1 / total, r / total, r * r / total]
        approx = psi(3, 14)
        for got, want in zip(approx.masses, expected):
            assert abs(got - want) < 1e-14
        assert abs(float(approx.masses[0]) - 0.514191) < 1e-6
        assert abs(sum(approx.masses) - 1) < 1e-14
        assert abs(approx.mean - mpmath.mpf(2) / 3) < 1e-13

    def test_bad_p(self):
        with pytest.raises(InstanceError):
            psi(1)
        with pytest.raises(InstanceError):
            psi_rational(1)


class TestPsiRational:
    def test_p2_exact(self):
        assert psi_rational(2).mass == (Fraction(2, 3), Fraction(1, 3))

    @pytest.mark.parametrize("digits", [3, 8, 12])
    @pytest.mark.parametrize("p", range(2, 11))
    def test_properties(self, p, digits):
        d = psi_rational(p, digits)
        assert mean(d) == Fraction(p - 1, 3)
        assert is_decreasing(d)
        reference = psi(p, digits + 4).masses
        worst = max(abs(mpmath.mpf(m.numerator) / m.denominator - r) for m, r in zip(d.mass, reference))
        assert worst <= mpmath.mpf(10) ** -digits


class TestLambdaPrime:
    def test_p2(self):
        expected = mpmath.log(3) - mpmath.mpf(2) / 3 * mpmath.log(2)
        assert abs(lambda_prime(2) - expected) < 1e-12
        assert abs(lambda_prime(2) - mpmath.log(theta(2).theta)) < 1e-11

    def test_p3(self):
        assert abs(float(lambda_prime(3)) - 1.01346) < 1e-5

    def test_p1(self):
        assert lambda_prime(1) == 0

    @pytest.mark.parametrize("p", range(2, 11))
    def test_identity(self, p):
        digits = 15
        assert abs(lambda_prime(p, digits) - mpmath.log(theta(p, digits).theta)) <= mpmath.mpf(10) ** (1 - digits)

    @pytest.mark.parametrize("p", range(2, 9))
    def test_rational_stand_in(self, p):
        assert abs(lambda_prime_rational(p, 12) - lambda_prime(p, 12)) < 1e-10
