import itertools
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import D
from tricoupling.couple import (
    Coupling,
    couple,
    couple_induction_step,
    couple_lastcase,
    couple_uniform_pair,
    lemma31_gap,
    mix_couplings,
    verify_coupling,
)
from tricoupling.errors import InstanceError
from tricoupling.exactdist import mean, mix, pad, point_mass, uniform, v_dist
from tricoupling.generate import random_decreasing, random_valid_triple, repair_mean_sum


def ordering_pair_law(m, n):
    """Law of (#A below C, #B below C) over all label orderings of A^m B^n C.

    Exchangeable continuous draws make every arrangement of the labels
    equally likely, so counting arrangements is exact.
    """
    size = m + n + 1
    count = {}
    total = 0
    for c_pos in range(size):
        rest = [i for i in range(size) if i != c_pos]
        for a_pos in itertools.combinations(rest, m):
            x = sum(1 for i in a_pos if i < c_pos)
            y = c_pos - x
            count[(x, y)] = count.get((x, y), 0) + 1
            total += 1
    assert total == factorial(size) // (factorial(m) * factorial(n))
    return {k: Fraction(v, total) for k, v in count.items()}


def pair_marginals(pc):
    xs = [Fraction(0)] * (pc.m + 1)
    ys = [Fraction(0)] * (pc.n + 1)
    sums = [Fraction(0)] * (pc.m + pc.n + 1)
    for (x, y), w in pc.entries.items():
        xs[x] += w
        ys[y] += w
        sums[x + y] += w
    return xs, ys, sums


class TestUniformPair:
    def test_one_one(self):
        assert couple_uniform_pair(1, 1).entries == {
            (0, 0): Fraction(1, 3), (0, 1): Fraction(1, 6),
            (1, 0): Fraction(1, 6), (1, 1): Fraction(1, 3)}

    def test_y_constant(self):
        assert couple_uniform_pair(4, 0).entries == {(x, 0): Fraction(1, 5) for x in range(5)}

    def test_two_one(self):
        assert couple_uniform_pair(2, 1).entries == {
            (0, 0): Fraction(1, 4), (0, 1): Fraction(1, 12), (1, 0): Fraction(1, 6),
            (1, 1): Fraction(1, 6), (2, 0): Fraction(1, 12), (2, 1): Fraction(1, 4)}

    @pytest.mark.parametrize("m, n", list(itertools.product(range(5), repeat=2)))
    def test_matches_ordering_enumeration(self, m, n):
        assert couple_uniform_pair(m, n).entries == ordering_pair_law(m, n)

    @pytest.mark.parametrize("m, n", [(0, 0), (3, 7), (12, 5), (30, 30)])
    def test_uniform_marginals(self, m, n):
        xs, ys, sums = pair_marginals(couple_uniform_pair(m, n))
        assert xs == [Fraction(1, m + 1)] * (m + 1)
        assert ys == [Fraction(1, n + 1)] * (n + 1)
        assert sums == [Fraction(1, m + n + 1)] * (m + n + 1)


class TestLastCase:
    def test_hand_example(self):
        c = couple_lastcase(1, 0, 3)
        assert c.entries == {(0, 2, 0): Fraction(1, 3), (1, 1, 0): Fraction(1, 3),
                             (0, 0, 2): Fraction(1, 6), (1, 0, 1): Fraction(1, 6)}
        assert verify_coupling(c, pad(uniform(1), 3), uniform(2), v_dist(0, 2, 1)).ok

    def test_bad_params(self):
        with pytest.raises(InstanceError) as exc:
            couple_lastcase(1, 1, 2)
        assert exc.value.code == "BAD_PARAMS"
        with pytest.raises(InstanceError):
            couple_lastcase(0, 1, 5)

    @pytest.mark.parametrize("p", range(3, 9))
    def test_all_parameters(self, p):
        for i in range(1, p - 1):
            for j in range(0, p - 1 - i):
                c = couple_lastcase(i, j, p)
                assert verify_coupling(c, pad(uniform(i), p), uniform(p - 1),
                                       v_dist(j, p - 1, p - 1 - i)).ok

    def test_two_zero_four(self):
        c = couple_lastcase(2, 0, 4)
        assert verify_coupling(c, pad(uniform(2), 4), uniform(3), v_dist(0, 3, 1)).ok


class TestTailGap:
    def test_examples(self):
        d = D("2/3", "1/3")
        assert lemma31_gap(d, d, d, 0) == 0
        assert lemma31_gap(d, d, d, 1) == Fraction(1, 3)

    def test_bad_triple(self):
        with pytest.raises(InstanceError) as exc:
            lemma31_gap(uniform(2), uniform(2), uniform(2), 0)
        assert exc.value.code == "BAD_TRIPLE"

    @settings(max_examples=300, deadline=None)
    @given(st.integers(2, 8), st.randoms(use_true_random=False))
    def test_non_negative(self, p, rng):
        triple = random_valid_triple(p, rng)
        for perm in itertools.permutations(triple):
            assert all(lemma31_gap(*perm, t) >= 0 for t in range(p))


class TestInductionStep:
    def test_hand_example(self):
        half = D("1/2", "1/2", 0)
        c = couple_induction_step(uniform(2), half, half, 3)
        # Unique: the marginal equations on the plane a + b + c = 2 pin every cell.
        assert c.entries == {(0, 1, 1): Fraction(1, 3), (1, 0, 1): Fraction(1, 6),
                             (1, 1, 0): Fraction(1, 6), (2, 0, 0): Fraction(1, 3)}

    def test_base(self):
        d = point_mass(0)
        assert couple_induction_step(d, d, d, 1).entries == {(0, 0, 0): 1}

    def test_top_mass(self):
        with pytest.raises(InstanceError) as exc:
            couple_induction_step(uniform(2), uniform(2), point_mass(0, 3), 3)
        assert exc.value.code == "TOP_MASS"

    @settings(max_examples=100, deadline=None)
    @given(st.integers(3, 8), st.randoms(use_true_random=False))
    def test_random(self, p, rng):
        a, b, c = top_free_triple(p, rng)
        assert b.top == 0 and c.top == 0
        assert verify_coupling(couple_induction_step(a, b, c, p), a, b, c).ok


def top_free_triple(p, rng):
    """Decreasing triple with mean sum p - 1 and no top mass in slots 2 and 3."""
    a = random_decreasing(p, rng)
    b, c = (pad(random_decreasing(p - 1, rng), p) for _ in range(2))
    total = mean(a) + mean(b) + mean(c)
    if total < p - 1:
        anchors = (uniform(p - 1), pad(uniform(p - 2), p), pad(uniform(p - 2), p))
        anchor_total = Fraction(3 * p - 5, 2)
    else:
        anchors = (point_mass(0, p),) * 3
        anchor_total = Fraction(0)
    t = (p - 1 - total) / (anchor_total - total)
    return tuple(mix([(1 - t, d), (t, e)]) for d, e in zip((a, b, c), anchors))


def valid_triples(max_p=7):
    return st.tuples(st.integers(2, max_p), st.randoms(use_true_random=False)).map(
        lambda args: random_valid_triple(args[0], args[1]))


class TestCouple:
    def test_zero_and_two_uniforms(self):
        for p in range(1, 7):
            c = couple(point_mass(0, p), uniform(p - 1), uniform(p - 1))
            assert c.entries == {(0, k, p - 1 - k): Fraction(1, p) for k in range(p)}

    def test_two_point_triple(self):
        d = D("2/3", "1/3")
        assert couple(d, d, d).entries == {
            (1, 0, 0): Fraction(1, 3), (0, 1, 0): Fraction(1, 3), (0, 0, 1): Fraction(1, 3)}

    @pytest.mark.parametrize("triple", [
        (uniform(2), uniform(2), uniform(2)),
        (D("1/4", "1/2", "1/4"), point_mass(0, 3), point_mass(1, 3)),
        (uniform(1), uniform(2), uniform(2)),
    ])
    def test_bad_triple(self, triple):
        with pytest.raises(InstanceError) as exc:
            couple(*triple)
        assert exc.value.code == "BAD_TRIPLE"

    @settings(max_examples=150, deadline=None)
    @given(valid_triples())
    def test_sound(self, triple):
        c = couple(*triple)
        assert c.s == triple[0].p - 1
        assert verify_coupling(c, *triple).ok

    @settings(max_examples=60, deadline=None)
    @given(valid_triples(6))
    def test_permutation_equivariant(self, triple):
        base = couple(*triple)
        for perm in itertools.permutations(range(3)):
            moved = couple(*(triple[i] for i in perm))
            assert moved == base.permuted(perm)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 6), st.randoms(use_true_random=False))
    def test_equivariant_with_repeats(self, p, rng):
        a, b = random_decreasing(p, rng), random_decreasing(p, rng)
        for triple in (repair_mean_sum((a, b, b), Fraction(p - 1)),
                       repair_mean_sum((a, a, a), Fraction(p - 1))):
            base = couple(*triple)
            for perm in itertools.permutations(range(3)):
                assert couple(*(triple[i] for i in perm)) == base.permuted(perm)


class TestVerifyAndMix:
    def test_off_plane(self):
        d = D("2/3", "1/3")
        bad = Coupling(2, 1, {(1, 0, 0): Fraction(1, 3), (0, 1, 0): Fraction(1, 3), (1, 1, 0): Fraction(1, 3)})
        report = verify_coupling(bad, d, d, d)
        assert not report.support_on_plane and not report.ok

    def test_marginal_mismatch(self):
        d = D("2/3", "1/3")
        report = verify_coupling(couple(d, d, d), uniform(1), d, d)
        assert report.mass_total_ok and report.support_on_plane
        assert not report.marginal1 and report.marginal2 and report.marginal3

    def test_mix_identity_and_union(self):
        c = couple(point_mass(0, 3), uniform(2), uniform(2))
        assert mix_couplings([(1, c)]) == c
        c1 = Coupling(2, 1, {(1, 0, 0): Fraction(1)})
        c2 = Coupling(2, 1, {(0, 1, 0): Fraction(1)})
        assert mix_couplings([(Fraction(1, 2), c1), (Fraction(1, 2), c2)]).entries == {
            (1, 0, 0): Fraction(1, 2), (0, 1, 0): Fraction(1, 2)}

    def test_mix_errors(self):
        c = Coupling(2, 1, {(1, 0, 0): Fraction(1)})
        with pytest.raises(InstanceError) as exc:
            mix_couplings([(Fraction(1, 3), c), (Fraction(1, 3), c)])
        assert exc.value.code == "BAD_WEIGHTS"
        with pytest.raises(InstanceError) as exc:
            mix_couplings([(Fraction(1, 2), c), (Fraction(1, 2), Coupling(3, 1, {(1, 0, 0): Fraction(1)}))])
        assert exc.value.code == "MIXED_SHAPES"
