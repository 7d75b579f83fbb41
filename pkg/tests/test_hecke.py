"""Hecke-algebra arithmetic at evaluated spectral points: generator rules,
the intertwining recursion, the interval-sum basis, and the two routes to
m(x, w) (definition versus chain product) compared at random points."""

import random

import pytest

from wwl import DomainError, UnluckyPointError
from wwl.hecke import (MODULUS_DEFAULT, SpectralPoint, hecke_left_mul_gen,
                       hecke_mul, lambda_functional, m_direct, m_matrix,
                       m_product, mu, psi, sample_spectral_point)
from wwl.shellability import condition_B


def inv(a, p):
    return pow(a, p - 2, p)


@pytest.fixture()
def rng():
    return random.Random(20260809)


# -- spectral points -----------------------------------------------------------

def test_point_validation():
    p = MODULUS_DEFAULT
    with pytest.raises(DomainError):
        SpectralPoint(p, 1, (5,))
    with pytest.raises(DomainError):
        SpectralPoint(p, 0, (5,))
    with pytest.raises(DomainError):
        SpectralPoint(p, 7, (0,))
    pt = SpectralPoint(p, 7, (5,))
    assert pt.q * 7 % p == 1


def test_z_pow_negative_exponents():
    pt = SpectralPoint(MODULUS_DEFAULT, 7, (3, 5))
    assert pt.z_pow((1, 2)) == 3 * 25 % MODULUS_DEFAULT
    assert pt.z_pow((-1, 0)) * 3 % MODULUS_DEFAULT == 1


def test_sampling_avoids_unit_values(group_for, rng):
    G = group_for("B", 2)
    for _ in range(5):
        pt = sample_spectral_point(G.rs, rng)
        assert pt.u not in (0, 1)
        for alpha in G.rs.positive_roots:
            assert pt.z_pow(alpha) != 1


def test_sampling_exhaustion_raises(group_for, rng):
    # mod 3 every candidate hits z^(alpha1+alpha2) = 1
    G = group_for("A", 2)
    with pytest.raises(UnluckyPointError):
        sample_spectral_point(G.rs, rng, p=3)


def test_translate_by_simple_reflection(group_for, rng):
    G = group_for("A", 2)
    pt = sample_spectral_point(G.rs, rng)
    s1 = G.element_from_word((1,))
    moved = pt.translate(G, s1)
    for i in (1, 2):
        alpha = G.rs.simple_root(i)
        assert moved.z[i - 1] == pt.z_pow(s1.apply_root(alpha))


# -- generator rules -----------------------------------------------------------------

def test_left_mul_gen_rules(group_for, rng):
    G = group_for("A", 2)
    pt = sample_spectral_point(G.rs, rng)
    p, q = pt.p, pt.q
    e, s1 = G.identity, G.element_from_word((1,))
    assert hecke_left_mul_gen(G, 1, {e: 1}, pt) == {s1: 1}
    assert hecke_left_mul_gen(G, 1, {s1: 1}, pt) == \
        {s1: (q - 1) % p, e: q}
    s12 = G.element_from_word((1, 2))
    assert hecke_left_mul_gen(G, 1, {G.element_from_word((2,)): 1}, pt) == \
        {s12: 1}


def test_hecke_mul_unit_and_associativity(group_for, rng):
    G = group_for("A", 2)
    e = G.identity
    for _ in range(5):
        pt = sample_spectral_point(G.rs, rng)
        f = {G.element_from_word((1,)): 3, G.element_from_word((2, 1)): 5}
        assert hecke_mul(G, f, {e: 1}, pt) == f
        t1 = {G.element_from_word((1,)): 1}
        t2 = {G.element_from_word((2,)): 1}
        left = hecke_mul(G, hecke_mul(G, t1, t2, pt), t1, pt)
        right = hecke_mul(G, t1, hecke_mul(G, t2, t1, pt), pt)
        assert left == right


def test_longest_element_square_rank_one(group_for, rng):
    G = group_for("A", 1)
    pt = sample_spectral_point(G.rs, rng)
    p, q = pt.p, pt.q
    s1 = G.element_from_word((1,))
    got = hecke_mul(G, {s1: 1}, {s1: 1}, pt)
    assert got == {s1: (q - 1) % p, G.identity: q}


# -- intertwining elements --------------------------------------------------------------

def test_mu_identity(group_for, rng):
    G = group_for("A", 2)
    pt = sample_spectral_point(G.rs, rng)
    assert mu(G, G.identity, pt) == {G.identity: 1}


def test_mu_one_generator_formula(group_for, rng):
    G = group_for("A", 1)
    pt = sample_spectral_point(G.rs, rng)
    p = pt.p
    z = pt.z[0]
    got = mu(G, G.element_from_word((1,)), pt)
    coeff = (1 - pt.u) * z % p * inv((1 - z) % p, p) % p
    assert got == {G.element_from_word((1,)): pt.u, G.identity: coeff}


def test_mu_word_independent(group_for, rng):
    """Peeling either reduced word of the longest element gives the same
    result once the factor recursion is spelled out by hand."""
    G = group_for("A", 2)

    def mu_via_word(word, pt):
        if not word:
            return {G.identity: 1}
        letter = word[-1]
        s = G.simple_reflection(letter)
        z = pt.z[letter - 1]
        denom = (1 - z) % pt.p
        coeff = (1 - pt.u) * z % pt.p * inv(denom, pt.p) % pt.p
        factor = {s: pt.u}
        if coeff:
            factor[G.identity] = coeff
        rest = mu_via_word(word[:-1], pt.translate(G, s))
        return hecke_mul(G, factor, rest, pt)

    for _ in range(10):
        pt = sample_spectral_point(G.rs, rng)
        a = mu_via_word((1, 2, 1), pt)
        b = mu_via_word((2, 1, 2), pt)
        assert a == b
        assert a == mu(G, G.longest_element(), pt)


def test_mu_unlucky_denominator(group_for):
    G = group_for("A", 1)
    pt = SpectralPoint(MODULUS_DEFAULT, 7, (1,))  # z^alpha = 1
    with pytest.raises(UnluckyPointError):
        mu(G, G.element_from_word((1,)), pt)


# -- interval sums ------------------------------------------------------------------------

def test_psi_extremes(group_for):
    G = group_for("A", 2)
    w0 = G.longest_element()
    assert psi(G, w0) == {w0: 1}
    assert psi(G, G.identity) == {w: 1 for w in G.enumerate_group()}


def test_psi_support_of_generator(group_for):
    G = group_for("A", 2)
    s1 = G.element_from_word((1,))
    support = psi(G, s1)
    assert len(support) == 4
    assert set(support) == {s1, G.element_from_word((1, 2)),
                            G.element_from_word((2, 1)), G.longest_element()}


# -- transition coefficients ------------------------------------------------------------

def test_m_rank_one_hand_value(group_for, rng):
    G = group_for("A", 1)
    for _ in range(5):
        pt = sample_spectral_point(G.rs, rng)
        p = pt.p
        z = pt.z[0]
        expected = (1 - pt.u * z) % p * inv((1 - z) % p, p) % p
        assert m_direct(G, G.identity, G.element_from_word((1,)), pt) == \
            expected
        assert m_product(G, G.identity, G.element_from_word((1,)), (1,),
                         pt) == expected


def test_m_diagonal_and_triangularity(group_for, rng):
    G = group_for("A", 2)
    elements = G.enumerate_group()
    for _ in range(5):
        pt = sample_spectral_point(G.rs, rng)
        for x in elements:
            assert m_direct(G, x, x, pt) == 1
            for w in elements:
                if not G.bruhat_leq(x, w):
                    assert m_direct(G, x, w, pt) == 0


def test_m_matrix_matches_directs(group_for, rng):
    G = group_for("A", 2)
    elements = G.enumerate_group()
    for _ in range(2):
        pt = sample_spectral_point(G.rs, rng)
        matrix = m_matrix(G, pt)
        for x in elements:
            for w in elements:
                assert matrix[G.idx_of(x)][G.idx_of(w)] == \
                    m_direct(G, x, w, pt)


@pytest.mark.parametrize("type_letter,rank", [("A", 2), ("B", 2)])
def test_interval_sum_eigen_relation(group_for, rng, type_letter, rank):
    """For x s > x: psi(x) mu_z(s) scales psi(x) by (1 - u z^alpha) over
    (1 - z^alpha), and psi(x s) mu_z(s) - psi(x) is supported above x s."""
    G = group_for(type_letter, rank)
    for _ in range(5):
        pt = sample_spectral_point(G.rs, rng)
        p = pt.p
        for x in G.enumerate_group():
            for i in range(1, rank + 1):
                s = G.simple_reflection(i)
                xs = x * s
                if not G.length(xs) > G.length(x):
                    continue
                alpha = G.rs.simple_root(i)
                za = pt.z_pow(alpha)
                scale = (1 - pt.u * za) % p * inv((1 - za) % p, p) % p
                mus = mu(G, s, pt)
                lhs = hecke_mul(G, psi(G, x), mus, pt)
                want = {w: c * scale % p for w, c in psi(G, x).items()}
                assert lhs == want
                upper = hecke_mul(G, psi(G, xs), mus, pt)
                psi_x = psi(G, x)
                rem = {w: (upper.get(w, 0) - psi_x.get(w, 0)) % p
                       for w in set(upper) | set(psi_x)}
                for w, c in rem.items():
                    if c:
                        assert G.bruhat_leq(xs, w)


def test_product_theorem_b2(group_for, rng):
    G = group_for("B", 2)
    elements = G.enumerate_group()
    for _ in range(5):
        pt = sample_spectral_point(G.rs, rng)
        for x in elements:
            for w in elements:
                if not G.bruhat_leq(x, w):
                    continue
                has_b, word = condition_B(G, x, w)
                if has_b:
                    assert m_product(G, x, w, word, pt) == \
                        m_direct(G, x, w, pt)


def test_m_product_requires_condition(group_for, rng):
    G = group_for("B", 2)
    pt = sample_spectral_point(G.rs, rng)
    x = G.element_from_word((1,))
    w = G.element_from_word((1, 2, 1))
    from wwl import ConditionError
    with pytest.raises(ConditionError):
        m_product(G, x, w, (1, 2, 1), pt)


def test_a3_example_pair_at_points(group_for, rng):
    G = group_for("A", 3)
    x = G.element_from_word((2, 3))
    w = G.element_from_word((1, 2, 1, 3, 2, 1))
    for _ in range(5):
        pt = sample_spectral_point(G.rs, rng)
        assert m_direct(G, x, w, pt) == \
            m_product(G, x, w, (1, 2, 1, 3, 2, 1), pt)
