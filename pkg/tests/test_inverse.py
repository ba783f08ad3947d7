"""Inversion: symbolic residue route, Talbot contour, Gaver cross-check."""

import math

import pytest

from shehu import expr as ex
from shehu.errors import (
    ConfigError,
    DomainError,
    ImproperImageError,
    OutsideGrammarError,
)
from shehu.inverse import (
    InversionConfig,
    invert_numeric,
    invert_symbolic,
    roundtrip_check,
)
from shehu.numerics import Polynomial
from shehu.opcalc import RationalTransform, fractional_monomial_image, table_transform

from corpus import MEMBERS


def R(num, den=(1.0,)) -> RationalTransform:
    return RationalTransform(Polynomial(num), Polynomial(den))


class TestConfig:
    def test_defaults(self):
        cfg = InversionConfig()
        assert cfg.method == "talbot"
        assert cfg.node_count == 32

    def test_validation(self):
        with pytest.raises(ConfigError):
            InversionConfig(method="bogus")
        with pytest.raises(ConfigError):
            InversionConfig(method="talbot", node_count=4)
        with pytest.raises(ConfigError):
            InversionConfig(method="stehfest", node_count=13)
        with pytest.raises(ConfigError):
            InversionConfig(method="stehfest", node_count=20)
        with pytest.raises(ConfigError):
            InversionConfig(contour_scale=0.0)


class TestInvertSymbolic:
    def test_golden_cases(self):
        cases = [
            (R([1.0], [0.0, 1.0]), "1"),
            (R([1.0], [0.0, 0.0, 1.0]), "t"),
            (R([3.0], [9.0, 0.0, 1.0]), "sin(3*t)"),
            (R([1.0], [4.0, -4.0, 1.0]), "t*exp(2*t)"),
            (R([0.0, 1.0], [1.0, 0.0, 1.0]), "cos(t)"),
            (R([2.0], [5.0, 2.0, 1.0]), "exp(-t)*sin(2*t)"),
        ]
        for image, want in cases:
            assert ex.to_text(invert_symbolic(image)) == want

    def test_structural_identity_on_corpus(self):
        for m in MEMBERS:
            v = ex.parse(m.text)
            assert invert_symbolic(table_transform(v)) == v, m.text

    def test_improper_rejected(self):
        with pytest.raises(ImproperImageError):
            invert_symbolic(R([1.0, 1.0], [1.0, 1.0]))
        with pytest.raises(ImproperImageError):
            invert_symbolic(R([5.0]))

    def test_zero_image(self):
        assert invert_symbolic(RationalTransform.zero()) == ex.ZERO

    def test_fractional_power_rejected(self):
        with pytest.raises(OutsideGrammarError):
            invert_symbolic(fractional_monomial_image(0.5))

    def test_rational_power_image_accepted(self):
        # integer-exponent power images can cross back to rational form
        img = fractional_monomial_image(2.0)  # 2 p^-3, i.e. the image of t^2
        assert ex.to_text(invert_symbolic(img)) == "t^2"

    def test_type_errors(self):
        with pytest.raises(TypeError):
            invert_symbolic("3/(p^2+9)")


class TestInvertNumeric:
    def test_default_routing_is_exact_for_rational_images(self):
        # rational images go through the residue route, so even an
        # oscillatory inverse at large t comes back to full precision
        image = R([3.0], [9.0, 0.0, 1.0])
        for t in (0.01, 1.0, 10.0):
            got = invert_numeric(image, t)
            assert got == pytest.approx(math.sin(3 * t), rel=1e-12, abs=1e-12)

    def test_talbot_decaying_exponential(self):
        image = R([1.0], [1.0, 1.0])
        for t in (0.05, 0.3, 1.0, 4.0):
            got = invert_numeric(image, t, InversionConfig())
            assert got == pytest.approx(math.exp(-t), rel=1e-9)

    def test_talbot_oscillatory_with_shift(self):
        # poles on the imaginary axis force the sigma shift path; the
        # default node count is near the double-precision optimum, and the
        # contour only wraps the poles while t * |Im pole| stays moderate
        image = R([3.0], [9.0, 0.0, 1.0])
        for t in (0.1, 1.0, 5.0):
            got = invert_numeric(image, t, InversionConfig())
            assert got == pytest.approx(math.sin(3 * t), rel=1e-6, abs=1e-6)

    def test_talbot_growing_exponential(self):
        image = R([1.0], [-2.0, 1.0])
        for t in (0.5, 2.0, 10.0):
            got = invert_numeric(image, t, InversionConfig())
            assert got == pytest.approx(math.exp(2 * t), rel=1e-9)

    def test_stehfest_monotone(self):
        image = R([1.0], [1.0, 1.0])
        got = invert_numeric(image, 0.8, InversionConfig(method="stehfest", node_count=16))
        assert got == pytest.approx(math.exp(-0.8), rel=1e-6)

    def test_partial_fraction_method(self):
        image = R([3.0], [9.0, 0.0, 1.0])
        cfg = InversionConfig(method="partial_fractions")
        assert invert_numeric(image, 2.0, cfg) == pytest.approx(math.sin(6.0), rel=1e-12)

    def test_callable_image(self):
        got = invert_numeric(lambda p: 1.0 / (p + 1.0), 1.0)
        assert got == pytest.approx(math.exp(-1.0), rel=1e-9)

    def test_nonpositive_time_rejected(self):
        with pytest.raises(DomainError):
            invert_numeric(R([1.0], [1.0, 1.0]), 0.0)
        with pytest.raises(DomainError):
            invert_numeric(R([1.0], [1.0, 1.0]), -1.0)


class TestRoundtrip:
    def test_small_on_corpus_members(self):
        for text in ("exp(-t)", "t^2", "sin(3*t)", "t*exp(2*t)"):
            err = roundtrip_check(ex.parse(text))
            assert err < 1e-12, text

    def test_contour_route(self):
        for text in ("exp(-t)", "t^2", "sin(3*t)", "t*exp(2*t)"):
            err = roundtrip_check(ex.parse(text), config=InversionConfig())
            assert err < 1e-7, text

    def test_uses_given_times(self):
        err = roundtrip_check(ex.parse("exp(-t)"), times=(0.01, 10.0))
        assert err < 1e-12
