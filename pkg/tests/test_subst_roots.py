import random
from fractions import Fraction

import pytest

from iterroots.errors import (
    BranchingUnsupported,
    ContextMismatch,
    EnumerationBoundExceeded,
    NotInSubstitutionGroup,
)
from iterroots.rings import QQ, ZZ, Zmod
from iterroots.series import TruncSeries, geometric, preset
from iterroots.subst_roots import (
    branch_roots,
    iter_root,
    iter_root_substitution,
    mod2_square_root_classes,
    zroot_feasibility,
)

from oracles import naive_iterate, rand_series

GOLDEN_G = [0, 1, 4, 8, 12, 24, 36, 48, 60, 72, 120]
GOLDEN_ROOT_PREFIX = [1, 2, 0, 2, 0, -14, 96, -426, 1044]


class TestIterRoot:
    def test_identity_root(self):
        for ctx in (QQ, ZZ):
            out = iter_root(TruncSeries.x(ctx, 6), 3)
            assert out.is_unique
            assert out.root == TruncSeries.x(ctx, 6)

    def test_geometric_root_halves_ratio(self):
        g = geometric(QQ.element(1), 6)
        out = iter_root(g, 2)
        assert out.is_unique
        assert out.root == geometric(QQ.element("1/2"), 6)

    def test_geometric_root_divides_ratio(self):
        rng = random.Random(3)
        for n in (2, 3, 5):
            r = QQ.element(Fraction(rng.randint(-6, 6), rng.randint(1, 4)))
            out = iter_root(geometric(r, 8), n)
            assert out.root == geometric(QQ.element(r.value / n), 8)

    def test_golden_integer_table(self):
        g = TruncSeries(ZZ, GOLDEN_G)
        out = iter_root(g, 2)
        assert out.is_unique
        assert list(out.root.raw()[1:10]) == GOLDEN_ROOT_PREFIX

    def test_mod3_cube_obstruction(self):
        out = iter_root(TruncSeries(Zmod(3), [0, 1, 1]), 3)
        assert out.status == "no_solution"
        assert out.at_index == 2
        assert out.rhs == 1

    def test_sin_half_iterate(self):
        s = preset("sin", 15)
        out = iter_root(s, 2)
        assert out.is_unique
        assert out.root.iterate(2) == s

    def test_rejects_non_group_input(self):
        with pytest.raises(NotInSubstitutionGroup):
            iter_root(TruncSeries(QQ, [1, 1]), 2)

    def test_rejects_bad_order(self):
        with pytest.raises(ValueError):
            iter_root(TruncSeries.x(QQ, 3), 1)

    def test_many_without_branching(self):
        out = iter_root(TruncSeries.x(Zmod(2), 3), 2, branch=False)
        assert out.status == "branches"
        assert out.branches == ()
        assert out.complete is False

    def test_roots_verify_by_naive_oracle(self):
        rng = random.Random(101)
        for _ in range(25):
            g = rand_series(QQ, rng, 9)
            n = rng.choice([2, 3, 4, 5])
            out = iter_root(g, n)
            assert out.is_unique
            assert naive_iterate(QQ, out.root.raw(), n) == list(g.raw())


class TestPathAgreement:
    def test_on_golden_table(self):
        g = TruncSeries(ZZ, GOLDEN_G)
        assert iter_root(g, 2).root == iter_root_substitution(g, 2).root

    def test_on_geometric(self):
        g = geometric(QQ.element(1), 7)
        assert iter_root(g, 2).root == iter_root_substitution(g, 2).root

    def test_random_rationals(self):
        rng = random.Random(103)
        for i in range(60):
            g = rand_series(QQ, rng, 10)
            n = 2 + i % 4
            a = iter_root(g, n)
            b = iter_root_substitution(g, n)
            assert a.is_unique and b.is_unique
            assert a.root == b.root

    def test_random_integers_match_obstructions(self):
        rng = random.Random(107)
        for i in range(60):
            n = 2 + i % 3
            if i % 2:
                g = rand_series(ZZ, rng, 8)
            else:
                w = rand_series(ZZ, rng, 8, span=2)
                g = w.iterate(n)
            a = iter_root(g, n)
            b = iter_root_substitution(g, n)
            assert a.status == b.status
            if a.status == "no_solution":
                assert (a.at_index, a.rhs.value) == (b.at_index, b.rhs.value)
            else:
                assert a.root == b.root

    def test_random_modular_match_branch_sets(self):
        rng = random.Random(109)
        for i in range(40):
            mod = [2, 3, 4, 6][i % 4]
            ring = Zmod(mod)
            n = 2 + i % 3
            g = rand_series(ring, rng, 6)
            a = iter_root(g, n)
            b = iter_root_substitution(g, n)
            assert a.status == b.status
            if a.status == "no_solution":
                assert (a.at_index, a.rhs.value) == (b.at_index, b.rhs.value)
            elif a.status == "unique":
                assert a.root == b.root
            else:
                assert a.complete == b.complete
                assert [w.raw() for w in a.branches] == [w.raw() for w in b.branches]


class TestBranchRoots:
    def test_identity_square_roots_mod2_order3(self):
        out = branch_roots(TruncSeries.x(Zmod(2), 3), 2, 16)
        got = sorted(w.raw() for w in out.branches)
        # every group element at order 3 squares to x over Z/2Z
        assert got == [(0, 1, 0, 0), (0, 1, 0, 1), (0, 1, 1, 0), (0, 1, 1, 1)]
        assert out.complete
        assert geometric(Zmod(2).element(1), 3).raw() in got

    def test_unreachable_target_has_no_roots_mod2(self):
        # x + x^2 is not a square at order 3 (exhaustive check over all four
        # candidates agrees)
        ring = Zmod(2)
        g = TruncSeries(ring, [0, 1, 1], order=3)
        out = branch_roots(g, 2, 16)
        witnesses = [
            bits
            for bits in ((a, b) for a in (0, 1) for b in (0, 1))
            if naive_iterate(ring, [0, 1, *bits], 2) == list(g.raw())
        ]
        assert len(out.branches) == len(witnesses) == 0
        assert out.complete

    def test_invertible_order_gives_single_branch(self):
        out = branch_roots(TruncSeries.x(Zmod(2), 3), 3, 16)
        assert [w.raw() for w in out.branches] == [(0, 1, 0, 0)]
        assert out.complete

    def test_branches_match_exhaustive_enumeration(self):
        rng = random.Random(113)
        for mod in (2, 3, 4):
            ring = Zmod(mod)
            m = 4
            for _ in range(6):
                g = rand_series(ring, rng, m)
                out = branch_roots(g, 2, 4096)
                assert out.complete
                got = sorted(w.raw() for w in out.branches)
                want = []
                for code in range(mod ** (m - 1)):
                    bits, c = [], code
                    for _ in range(m - 1):
                        bits.append(c % mod)
                        c //= mod
                    cand = [0, 1, *bits]
                    if naive_iterate(ring, cand, 2) == list(g.raw()):
                        want.append(tuple(cand))
                assert got == sorted(want)

    def test_cap_truncates(self):
        out = branch_roots(TruncSeries.x(Zmod(2), 5), 2, 3)
        assert len(out.branches) == 3
        assert out.complete is False

    def test_requires_finite_ring(self):
        with pytest.raises(BranchingUnsupported):
            branch_roots(TruncSeries.x(QQ, 3), 2, 16)


class TestMultiplicity:
    def test_equal_over_rationals(self):
        rng = random.Random(127)
        for _ in range(20):
            mult = rng.randint(2, 5)
            coeffs = [0, 1] + [0] * (mult - 2)
            coeffs.append(rng.randint(1, 5))
            for _ in range(len(coeffs), 10):
                coeffs.append(rng.randint(-3, 3))
            g = TruncSeries(QQ, coeffs, order=9)
            n = rng.choice([2, 3, 4])
            root = iter_root(g, n).root
            assert root.multiplicity() == g.multiplicity()

    def test_at_most_over_finite_rings(self):
        rng = random.Random(131)
        for _ in range(10):
            ring = Zmod(rng.choice([2, 3, 4]))
            g = rand_series(ring, rng, 5)
            out = iter_root(g, 2)
            roots = (
                [out.root] if out.is_unique
                else list(out.branches) if out.status == "branches" else []
            )
            for w in roots:
                assert w.multiplicity() <= g.multiplicity()


class TestOddSymmetry:
    def test_odd_targets_have_odd_roots(self):
        rng = random.Random(137)
        for _ in range(10):
            coeffs = [0, 1]
            for k in range(2, 12):
                coeffs.append(0 if k % 2 == 0 else Fraction(rng.randint(-3, 3)))
            g = TruncSeries(QQ, coeffs, order=11)
            root = iter_root(g, 2).root
            assert all(root.raw()[k] == 0 for k in range(0, 12, 2))


class TestZrootFeasibility:
    def test_golden_sequence_feasible(self):
        ledger = zroot_feasibility(TruncSeries(ZZ, GOLDEN_G))
        assert ledger.overall
        assert ledger.all_divisible_by_four
        chosen = [s.chosen.value for s in ledger.steps]
        assert chosen[: len(GOLDEN_ROOT_PREFIX) - 1] == GOLDEN_ROOT_PREFIX[1:]

    def test_odd_coefficient_obstructs_immediately(self):
        ledger = zroot_feasibility(TruncSeries(ZZ, [0, 1, 1]))
        assert not ledger.overall
        assert ledger.steps[0].index == 2
        assert ledger.steps[0].rhs == 1
        assert not ledger.steps[0].solvable

    def test_worked_small_case(self):
        ledger = zroot_feasibility(TruncSeries(ZZ, [0, 1, 2, 2]))
        assert ledger.overall
        assert [(s.index, s.rhs.value, s.chosen.value) for s in ledger.steps] == [
            (2, 2, 1),
            (3, 0, 0),
        ]
        assert not ledger.all_divisible_by_four

    def test_matches_solver_outcome(self):
        rng = random.Random(139)
        for _ in range(30):
            g = rand_series(ZZ, rng, 7)
            ledger = zroot_feasibility(g)
            out = iter_root(g, 2)
            assert ledger.overall == out.is_unique
            if not ledger.overall:
                assert ledger.steps[-1].index == out.at_index

    def test_parity_choice_at_next_index(self):
        # extending a feasible prefix: exactly one parity of the next
        # coefficient keeps the recursion solvable
        rng = random.Random(149)
        for _ in range(10):
            w = rand_series(ZZ, rng, 6, span=2)
            g = w.iterate(2)
            assert zroot_feasibility(g).overall
            raw = list(g.raw())
            raw[-1] += 1
            flipped = TruncSeries(ZZ, raw)
            ledger = zroot_feasibility(flipped)
            assert not ledger.overall
            assert ledger.steps[-1].index == 6

    def test_multiples_of_four_always_feasible(self):
        rng = random.Random(151)
        for _ in range(15):
            coeffs = [0, 1] + [4 * rng.randint(-5, 5) for _ in range(8)]
            g = TruncSeries(ZZ, coeffs)
            ledger = zroot_feasibility(g)
            assert ledger.overall and ledger.all_divisible_by_four
            out = iter_root(g, 2)
            assert out.is_unique
            assert all(v % 2 == 0 for v in out.root.raw()[2:])

    def test_requires_integer_ring(self):
        with pytest.raises(ContextMismatch):
            zroot_feasibility(TruncSeries(QQ, [0, 1, 2]))


class TestMod2Classes:
    def test_order3_squares_collapse(self):
        table = mod2_square_root_classes(3)
        assert list(table) == [(0, 0)]
        assert table[(0, 0)] == ((0, 0), (0, 1), (1, 0), (1, 1))

    def test_order7_matches_brute_force(self):
        ring = Zmod(2)
        want: dict = {}
        for code in range(64):
            bits = tuple((code >> i) & 1 for i in range(6))
            sq = naive_iterate(ring, [0, 1, *bits], 2)
            want.setdefault(tuple(sq[2:]), []).append(bits)
        want = {k: tuple(sorted(v)) for k, v in sorted(want.items())}
        assert mod2_square_root_classes(7) == want

    def test_order7_feasible_classes_kill_low_degrees(self):
        for key in mod2_square_root_classes(7):
            assert key[0] == 0 and key[1] == 0  # g2 = g3 = 0

    def test_identity_has_multiple_square_roots(self):
        table = mod2_square_root_classes(7)
        assert len(table[(0,) * 6]) >= 2

    def test_bound(self):
        with pytest.raises(EnumerationBoundExceeded):
            mod2_square_root_classes(9, max_order=8)
