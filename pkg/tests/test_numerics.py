"""Quadrature, polynomial arithmetic, partial fractions."""

import math
import random

import numpy as np
import pytest

from shehu.errors import (
    ConfigError,
    DivergenceError,
    DomainError,
    ImproperImageError,
    QuadratureError,
)
from shehu.numerics import (
    Polynomial,
    QuadratureConfig,
    gamma,
    integrate_halfline,
    partial_fractions,
    snap_complex,
)

from oracles import brute_halfline


class TestIntegrateHalfline:
    def test_pure_exponential(self):
        got = integrate_halfline(lambda t: math.exp(-t), tail_rate=1.0)
        assert got == pytest.approx(1.0, rel=1e-12)

    def test_damped_oscillation(self):
        # int e^{-2t} sin(3t) = 3 / (4 + 9)
        got = integrate_halfline(lambda t: math.exp(-2 * t) * math.sin(3 * t), tail_rate=2.0)
        assert got == pytest.approx(3.0 / 13.0, rel=1e-12)

    def test_matches_independent_quadrature(self):
        f = lambda t: math.exp(-0.5 * t) * (1 + t) * math.cos(2 * t)
        got = integrate_halfline(f, tail_rate=0.5, amplitude=4.0)
        want = brute_halfline(f, 0.5)
        assert got == pytest.approx(want, rel=1e-9)

    def test_nonpositive_rate_rejected(self):
        with pytest.raises(DivergenceError):
            integrate_halfline(lambda t: 1.0, tail_rate=0.0)
        with pytest.raises(DivergenceError):
            integrate_halfline(lambda t: math.exp(t), tail_rate=-1.0)

    def test_env_var_overrides_rel_tol(self, monkeypatch):
        monkeypatch.setenv("SHEHU_QUAD_TOL", "1e-3")
        cfg = QuadratureConfig()
        assert cfg.rel_tol == 1e-3

    def test_env_var_validated(self, monkeypatch):
        monkeypatch.setenv("SHEHU_QUAD_TOL", "totally")
        with pytest.raises(ConfigError):
            QuadratureConfig()
        monkeypatch.setenv("SHEHU_QUAD_TOL", "5.0")
        with pytest.raises(ConfigError):
            QuadratureConfig()

    def test_hostile_integrand_reported(self):
        # rapidly oscillating with the wrong claimed tail rate: the error
        # budget check must fire rather than returning garbage silently
        with pytest.raises(QuadratureError):
            integrate_halfline(
                lambda t: math.sin(50.0 / (1e-9 + abs(1.0 - t))),
                tail_rate=1e-6,
                cfg=QuadratureConfig(max_subdivisions=3),
            )


class TestGamma:
    def test_integers(self):
        assert gamma(1.0) == 1.0
        assert gamma(2.0) == 1.0
        assert gamma(5.0) == 24.0

    def test_half(self):
        assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)

    def test_domain(self):
        with pytest.raises(DomainError):
            gamma(0.0)
        with pytest.raises(DomainError):
            gamma(-1.5)


class TestPolynomial:
    def test_trims_leading_zeros(self):
        p = Polynomial([1.0, 2.0, 0.0, 0.0])
        assert p.degree == 1

    def test_horner_matches_numpy(self):
        rng = random.Random(11)
        for _ in range(50):
            coeffs = [rng.choice((-2.0, -1.0, -0.5, 0.5, 1.0, 2.0)) for _ in range(rng.randrange(1, 6))]
            p = Polynomial(coeffs)
            x = rng.uniform(-3, 3)
            want = np.polynomial.polynomial.polyval(x, np.array(coeffs))
            assert p(x) == pytest.approx(want, rel=1e-13, abs=1e-13)

    def test_mul_matches_numpy(self):
        a = Polynomial([1.0, 2.0, 3.0])
        b = Polynomial([-1.0, 0.5])
        want = np.polynomial.polynomial.polymul([1.0, 2.0, 3.0], [-1.0, 0.5])
        assert list((a * b).coeffs) == list(want)

    def test_shift_is_evaluation_at_offset(self):
        rng = random.Random(13)
        for _ in range(50):
            coeffs = [rng.uniform(-2, 2) for _ in range(rng.randrange(1, 6))]
            c = rng.uniform(-2, 2)
            p = Polynomial(coeffs)
            q = p.shift(c)
            for x in (-1.0, 0.3, 2.0):
                assert q(x) == pytest.approx(p(x + c), rel=1e-10, abs=1e-10)

    def test_shift_exact_for_integer_data(self):
        # (p-2)^2 shifted by 2 must be exactly p^2
        p = Polynomial([4.0, -4.0, 1.0])
        assert p.shift(2.0) == Polynomial([0.0, 0.0, 1.0])

    def test_derivative(self):
        p = Polynomial([5.0, 0.0, 3.0])  # 5 + 3x^2
        assert p.derivative() == Polynomial([0.0, 6.0])


class TestSnap:
    def test_snaps_near_integers(self):
        z = snap_complex(complex(2.0 + 1e-12, -3.0 - 2e-13))
        assert z == complex(2.0, -3.0)

    def test_zero_snap(self):
        assert snap_complex(complex(1.0, 1e-11)) == complex(1.0, 0.0)

    def test_leaves_genuine_values(self):
        assert snap_complex(complex(0.5, 0.25)) == complex(0.5, 0.25)


def _rebuild(terms, x: complex) -> complex:
    total = 0.0 + 0.0j
    for term in terms:
        total += term.residue / (x - term.pole) ** term.order
    return total


class TestPartialFractions:
    def test_simple_real_poles(self):
        # 1 / ((p+1)(p+2)) = 1/(p+1) - 1/(p+2)
        num = Polynomial([1.0])
        den = Polynomial([2.0, 3.0, 1.0])
        terms = partial_fractions(num, den)
        got = {(t.pole, t.order): t.residue for t in terms}
        assert got[(-1.0 + 0j, 1)] == pytest.approx(1.0)
        assert got[(-2.0 + 0j, 1)] == pytest.approx(-1.0)

    def test_repeated_pole(self):
        # 1 / (p+1)^3
        num = Polynomial([1.0])
        den = Polynomial([1.0, 3.0, 3.0, 1.0])
        terms = partial_fractions(num, den)
        assert len(terms) == 1
        assert terms[0].order == 3
        assert terms[0].pole == -1.0 + 0j
        assert terms[0].residue == pytest.approx(1.0)

    def test_complex_pair(self):
        # 3 / (p^2 + 9): residues -i/2 at 3i, i/2 at -3i
        terms = partial_fractions(Polynomial([3.0]), Polynomial([9.0, 0.0, 1.0]))
        by_pole = {t.pole: t.residue for t in terms}
        assert by_pole[3j] == pytest.approx(-0.5j)
        assert by_pole[-3j] == pytest.approx(0.5j)

    def test_conjugate_symmetry_enforced(self):
        terms = partial_fractions(
            Polynomial([1.0, 1.0]), Polynomial([5.0, 2.0, 1.0])
        )
        poles = sorted((t.pole for t in terms), key=lambda z: (z.real, z.imag))
        assert poles == [complex(-1.0, -2.0), complex(-1.0, 2.0)]
        r_plus = next(t.residue for t in terms if t.pole.imag > 0)
        r_minus = next(t.residue for t in terms if t.pole.imag < 0)
        assert r_plus == pytest.approx(r_minus.conjugate())

    def test_improper_rejected(self):
        with pytest.raises(ImproperImageError):
            partial_fractions(Polynomial([1.0, 2.0, 1.0]), Polynomial([1.0, 1.0]))

    def test_near_coincident_poles_merge(self):
        # two roots 1e-12 apart are indistinguishable at double precision;
        # they must come back as one order-2 pole, not explode
        den = Polynomial([-1.0, 1.0]) * Polynomial([-(1.0 + 1e-12), 1.0])
        terms = partial_fractions(Polynomial([1.0]), den)
        assert len(terms) <= 2
        assert max(t.order for t in terms) == 2 or len(terms) == 2
        for x in (3.0 + 0.5j, -2.0 + 0j):
            assert _rebuild(terms, x) == pytest.approx(den(x) ** -1, rel=1e-6)

    def test_reconstruction_random(self):
        rng = random.Random(99)
        root_pool = [-3.0, -2.0, -1.0, -0.5, 1.0, 2.0]
        for _ in range(40):
            roots = rng.sample(root_pool, rng.randrange(2, 5))
            mults = [rng.randrange(1, 3) for _ in roots]
            den = Polynomial([1.0])
            for r, m in zip(roots, mults):
                for _ in range(m):
                    den = den * Polynomial([-r, 1.0])
            num_deg = rng.randrange(0, den.degree)
            num = Polynomial([rng.choice((-2.0, -1.0, 1.0, 2.0)) for _ in range(num_deg + 1)])
            terms = partial_fractions(num, den)
            for x in (0.31j + 0.7, -1.4 + 0.9j, 3.3 + 0.0j):
                want = num(x) / den(x)
                got = _rebuild(terms, x)
                assert got == pytest.approx(want, rel=1e-8, abs=1e-10)
