from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from iterroots.errors import ContextMismatch, NotAUnit
from iterroots.rings import (
    QQ,
    ZZ,
    SolveOutcome,
    Zmod,
    arith,
    characteristic,
    parse_ring,
    solve_scalar,
)

from oracles import brute_solve


class TestArith:
    def test_integer_add(self):
        assert arith("add", ZZ.element(2), ZZ.element(3)) == 5

    def test_rational_mul_reduces(self):
        out = arith("mul", QQ.element("1/2"), QQ.element("2/3"))
        assert out.value == Fraction(1, 3)

    def test_mod_add_wraps(self):
        assert arith("add", Zmod(4).element(3), Zmod(4).element(3)) == 2

    def test_neg(self):
        assert arith("neg", Zmod(5).element(2)) == 3

    def test_unknown_op(self):
        with pytest.raises(ValueError):
            arith("div", ZZ.element(1), ZZ.element(1))

    def test_operator_sugar(self):
        a = QQ.element("3/4")
        assert a + 1 == Fraction(7, 4)
        assert 2 * a == Fraction(3, 2)
        assert (a - a) == 0
        assert (-a).value == Fraction(-3, 4)
        assert a**2 == Fraction(9, 16)


class TestNormalForms:
    def test_rational_lowest_terms_positive_denominator(self):
        v = QQ.coerce("-4/8")
        assert v.numerator == -1 and v.denominator == 2

    def test_residues_reduced(self):
        assert Zmod(7).coerce(-3) == 4
        assert Zmod(7).coerce(23) == 2

    def test_integer_rejects_fraction(self):
        with pytest.raises(ValueError):
            ZZ.coerce(Fraction(1, 2))


class TestContextSeparation:
    def test_mixed_arithmetic_is_hard_error(self):
        with pytest.raises(ContextMismatch):
            ZZ.element(1) + QQ.element(1)
        with pytest.raises(ContextMismatch):
            Zmod(3).element(1) * Zmod(5).element(1)

    def test_coerce_rejects_foreign_element(self):
        with pytest.raises(ContextMismatch):
            QQ.coerce(ZZ.element(2))

    def test_cross_context_equality_is_false(self):
        assert not (ZZ.element(2) == QQ.element(2))

    def test_solve_scalar_checks_context(self):
        with pytest.raises(ContextMismatch):
            solve_scalar(ZZ, 2, QQ.element(4))


class TestCharacteristic:
    def test_values(self):
        assert characteristic(ZZ) == 0
        assert characteristic(QQ) == 0
        assert characteristic(Zmod(2)) == 2
        assert characteristic(Zmod(12)) == 12


class TestSolveScalar:
    def test_integer_exact_division(self):
        out = solve_scalar(ZZ, 2, ZZ.element(6))
        assert out.status == "unique" and out.solution == 3

    def test_integer_parity_obstruction(self):
        assert solve_scalar(ZZ, 2, ZZ.element(5)).status == "none"

    def test_mod4_many(self):
        out = solve_scalar(Zmod(4), 2, Zmod(4).element(2))
        assert out.status == "many"
        assert [e.value for e in out.solutions] == [1, 3]
        assert out.complete

    def test_rational_field_division(self):
        out = solve_scalar(QQ, 7, QQ.element(3))
        assert out.solution == Fraction(3, 7)

    def test_n_multiple_of_modulus(self):
        out = solve_scalar(Zmod(2), 2, Zmod(2).element(0))
        assert out.status == "many"
        assert [e.value for e in out.solutions] == [0, 1]
        assert solve_scalar(Zmod(2), 2, Zmod(2).element(1)).status == "none"

    def test_truncated_solution_set(self):
        out = solve_scalar(Zmod(16), 8, Zmod(16).element(0), limit=4)
        assert out.status == "many"
        assert not out.complete
        assert len(out.solutions) == 4

    def test_invalid_n(self):
        with pytest.raises(ValueError):
            solve_scalar(ZZ, 0, ZZ.element(1))

    @pytest.mark.parametrize("m", [2, 3, 4, 6, 8, 12])
    def test_brute_force_agreement(self, m):
        ring = Zmod(m)
        for n in range(1, 8):
            for y in range(m):
                expected = brute_solve(ring, n, y)
                got = solve_scalar(ring, n, ring.element(y))
                sols = sorted(e.value for e in got.solutions)
                assert sols == expected, (m, n, y)
                assert got.complete
                if len(expected) == 1:
                    assert got.status == "unique"
                elif not expected:
                    assert got.status == "none"
                else:
                    assert got.status == "many"

    @pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
    def test_prime_coprime_always_unique(self, p):
        ring = Zmod(p)
        for n in range(1, 12):
            if n % p == 0:
                continue
            for y in range(p):
                assert solve_scalar(ring, n, ring.element(y)).status == "unique"

    @given(st.integers(min_value=1, max_value=50),
           st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4))
    def test_rationals_never_obstructed(self, n, y):
        out = solve_scalar(QQ, n, QQ.element(y))
        assert out.status == "unique"
        assert out.solution.value * n == y


class TestRingAxioms:
    @settings(max_examples=60)
    @given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50),
           st.sampled_from(["Z", "Q", "Zmod:2", "Zmod:6", "Zmod:97"]))
    def test_commutative_associative_unital(self, x, y, z, ring_name):
        ring = parse_ring(ring_name)
        a, b, c = ring.element(x), ring.element(y), ring.element(z)
        one = ring.element(1)
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert one * a == a
        assert a * (b + c) == a * b + a * c


class TestParseRing:
    def test_selections(self):
        assert parse_ring("Z") is ZZ
        assert parse_ring("Q") is QQ
        assert parse_ring("Zmod:2") is Zmod(2)
        assert parse_ring("Zmod:97").modulus == 97

    def test_rejects_unknown(self):
        with pytest.raises(ValueError):
            parse_ring("R")
        with pytest.raises(ValueError):
            parse_ring("Zmod:1")

    def test_repr_and_str(self):
        assert str(QQ.element("2/4")) == "1/2"
        assert "Zmod:5" in repr(Zmod(5).element(9))


class TestInverses:
    def test_integer_units(self):
        assert ZZ.inv(-1) == -1
        with pytest.raises(NotAUnit):
            ZZ.inv(2)

    def test_mod_units(self):
        assert Zmod(10).inv(3) == 7
        with pytest.raises(NotAUnit):
            Zmod(10).inv(5)

    def test_rational_units(self):
        assert QQ.inv(Fraction(2, 3)) == Fraction(3, 2)
        with pytest.raises(NotAUnit):
            QQ.inv(Fraction(0))


class TestSolveOutcome:
    def test_solution_accessor_guard(self):
        with pytest.raises(ValueError):
            SolveOutcome.none().solution
        e = ZZ.element(3)
        assert SolveOutcome.unique(e).solution is e
