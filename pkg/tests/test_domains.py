"""Base coefficient domains: exact rationals and finite fields."""

import pytest
from hypothesis import given, strategies as st

from hyperell.domains import QQ, rational
from hyperell.errors import DivisionByZeroError
from hyperell.finitefields import ExtField, PrimeField, is_probable_prime


class TestRationals:
    def test_basic_arithmetic(self):
        a = rational(1, 2)
        b = rational(1, 3)
        assert QQ.to_str(QQ.add(a, b)) == "5/6"
        assert QQ.to_str(QQ.mul(a, b)) == "1/6"
        assert QQ.elements_equal(QQ.sub(a, a), QQ.zero)

    def test_inverse(self):
        a = rational(-3, 7)
        assert QQ.elements_equal(QQ.mul(a, QQ.inv(a)), QQ.one)
        with pytest.raises((DivisionByZeroError, ZeroDivisionError)):
            QQ.inv(QQ.zero)

    @given(st.integers(-10**9, 10**9), st.integers(1, 10**6),
           st.integers(-10**9, 10**9), st.integers(1, 10**6))
    def test_field_axioms(self, an, ad, bn, bd):
        a, b = rational(an, ad), rational(bn, bd)
        assert QQ.elements_equal(QQ.add(a, b), QQ.add(b, a))
        assert QQ.elements_equal(QQ.mul(a, b), QQ.mul(b, a))
        assert QQ.elements_equal(QQ.sub(QQ.add(a, b), b), a)


class TestPrimeField:
    def test_mod_7(self):
        F = PrimeField(7)
        assert F.add(F.from_int(5), F.from_int(4)) == F.from_int(2)
        x = F.from_int(3)
        assert F.mul(x, F.inv(x)) == F.one

    def test_every_nonzero_invertible(self):
        F = PrimeField(13)
        for n in range(1, 13):
            x = F.from_int(n)
            assert F.mul(x, F.inv(x)) == F.one


class TestExtField:
    def test_f9(self):
        F = ExtField.of_degree(3, 2)
        els = list(F.elements())
        assert len(els) == 9
        nonzero = [e for e in els if not F.is_zero(e)]
        # multiplicative group has order 8
        for e in nonzero:
            acc = F.one
            for _ in range(8):
                acc = F.mul(acc, e)
            assert acc == F.one

    def test_frobenius_fixes_base(self):
        # x^p = x for base-field elements viewed inside F_{p^3}
        F = ExtField.of_degree(5, 3)
        for n in range(5):
            e = F.from_base(n)
            p5 = F.one
            for _ in range(5):
                p5 = F.mul(p5, e)
            assert p5 == e


def test_probable_prime():
    assert is_probable_prime(2)
    assert is_probable_prime(31)
    assert not is_probable_prime(1)
    assert not is_probable_prime(561)  # Carmichael
