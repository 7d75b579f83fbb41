"""The coefficient recursion, the closed form, the transforms between the
atom and character expansions, and the product identity at the longest
element; expected values frozen from rank-1 hand expansions and recursion
oracles."""

import random
from fractions import Fraction

import pytest

from wwl import ConditionError, DomainError
from wwl.coeffs import (atom_coeffs, atom_from_char_coeffs,
                        casselman_shalika_check, char_coeffs,
                        closed_form_coeff, demazure_atom, demazure_character,
                        spherical_whittaker, tilde_coeffs, whittaker_function)
from wwl.groupalg import (GAElement, atom_op, demazure, mul_one_minus_v_exp,
                          one_minus_v_exp, specialize_v, t_op)


def rand_dominant(rs, rng, hi=3):
    return tuple(rng.randint(0, hi) for _ in range(rs.rank))


def apply_along(group, op, word, lam):
    f = GAElement.monomial(lam)
    for letter in reversed(word):
        f = op(group.rs, group.rs.simple_root(letter), f)
    return f


# -- Whittaker functions -----------------------------------------------------------

def test_whittaker_identity_element(group_for):
    G = group_for("A", 2)
    assert whittaker_function(G, G.identity, (2, 1)) == \
        GAElement.monomial((2, 1))


def test_whittaker_rank_one_value(group_for):
    G = group_for("A", 1)
    got = whittaker_function(G, G.element_from_word((1,)), (1,))
    assert got == GAElement({(-1,): (1, -1), (-3,): (0, -1)})


def test_whittaker_word_independent(group_for):
    G = group_for("A", 2)
    lam = (1, 1)
    assert apply_along(G, t_op, (1, 2, 1), lam) == \
        apply_along(G, t_op, (2, 1, 2), lam)


def test_whittaker_requires_dominant(group_for):
    G = group_for("A", 2)
    with pytest.raises(DomainError):
        whittaker_function(G, G.identity, (-1, 0))


def test_whittaker_specializes_to_atom(group_for):
    G = group_for("B", 2)
    rng = random.Random(3)
    for w in G.enumerate_group():
        lam = rand_dominant(G.rs, rng, hi=2)
        wf = specialize_v(whittaker_function(G, w, lam), 0)
        at = {mu: Fraction(p[0]) for mu, p in
              demazure_atom(G, w, lam).terms.items()}
        assert wf == at


# -- characters and atoms ------------------------------------------------------------

def test_character_and_atom_rank_one(group_for):
    G = group_for("A", 1)
    s1 = G.element_from_word((1,))
    assert demazure_character(G, G.identity, (1,)) == GAElement.monomial((1,))
    assert demazure_atom(G, G.identity, (1,)) == GAElement.monomial((1,))
    assert demazure_character(G, s1, (1,)) == \
        GAElement({(1,): (1,), (-1,): (1,)})
    assert demazure_atom(G, s1, (1,)) == GAElement.monomial((-1,))


def test_character_coefficients_nonnegative_integers(group_for):
    G = group_for("B", 2)
    rng = random.Random(4)
    for w in G.enumerate_group():
        lam = rand_dominant(G.rs, rng, hi=2)
        ch = demazure_character(G, w, lam)
        for poly in ch.terms.values():
            assert len(poly) == 1 and poly[0] > 0


def test_spherical_rank_one(group_for):
    G = group_for("A", 1)
    got = spherical_whittaker(G, G.element_from_word((1,)), (1,))
    assert got == GAElement({(1,): (1,), (-1,): (1, -1), (-3,): (0, -1)})


@pytest.mark.parametrize("type_letter,rank", [("A", 2), ("B", 2)])
def test_atom_sum_lemma(group_for, type_letter, rank):
    """The character is the sum of the atoms over the lower interval, and
    the atom is the alternating sum of the characters."""
    G = group_for(type_letter, rank)
    rng = random.Random(5)
    weights = [G.rs.rho()] + [rand_dominant(G.rs, rng) for _ in range(2)]
    for w in G.enumerate_group():
        for lam in weights:
            cells = G.interval(G.identity, w)
            total = GAElement.zero()
            for x in cells:
                total = total + demazure_atom(G, x, lam)
            assert total == demazure_character(G, w, lam)
            alt = GAElement.zero()
            lw = G.length(w)
            for x in cells:
                term = demazure_character(G, x, lam)
                alt = alt + (-term if (lw - G.length(x)) % 2 else term)
            assert alt == demazure_atom(G, w, lam)


@pytest.mark.parametrize("type_letter,rank", [("A", 2), ("B", 2)])
def test_left_multiplication_rules(group_for, type_letter, rank):
    """t_s on an atom: the two-case rule by whether s raises w; likewise
    its v -> 0 shadow for the atom operator."""
    G = group_for(type_letter, rank)
    rs = G.rs
    lam = rs.rho()
    for w in G.enumerate_group():
        aw = demazure_atom(G, w, lam)
        for i in range(1, rank + 1):
            alpha = rs.simple_root(i)
            s = G.simple_reflection(i)
            sw = s * w
            left_t = t_op(rs, alpha, aw)
            left_d = atom_op(rs, alpha, aw)
            if G.length(sw) > G.length(w):
                asw = demazure_atom(G, sw, lam)
                wc = rs.root_to_weight_coords(alpha)
                drop = GAElement.monomial(tuple(-c for c in wc), (0, 1))
                assert left_t == mul_one_minus_v_exp(rs, alpha, asw) - \
                    drop * aw
                assert left_d == asw
            else:
                assert left_t == -aw
                assert left_d == -aw


# -- the coefficient recursion --------------------------------------------------------

def test_atom_coeffs_identity(group_for):
    G = group_for("A", 2)
    table = atom_coeffs(G, G.identity)
    assert table.entries == {G.identity: GAElement.one(2)}


def test_atom_coeffs_rank_one_values(group_for):
    G = group_for("A", 1)
    s1 = G.element_from_word((1,))
    table = atom_coeffs(G, s1)
    assert table.entries[s1] == GAElement({(0,): (1,), (-2,): (0, -1)})
    assert table.entries[G.identity] == GAElement({(-2,): (0, -1)})


def test_atom_coeffs_rejects_non_reduced(group_for):
    G = group_for("A", 2)
    with pytest.raises(DomainError):
        atom_coeffs(G, G.identity, (1, 1))


@pytest.mark.parametrize("type_letter,rank", [("A", 3), ("B", 2)])
def test_atom_coeffs_word_independent(group_for, type_letter, rank):
    G = group_for(type_letter, rank)
    for w in G.enumerate_group():
        words = G.all_reduced_words(w)
        base = atom_coeffs(G, w, words[0])
        for word in words[1:]:
            assert atom_coeffs(G, w, word).entries == base.entries


def test_corollary_edge_coefficients(group_for):
    """c at the identity is the full deformed product applied to 1, and c
    at the anchor is the binomial product over its inversion set."""
    G = group_for("A", 2)
    rs = G.rs
    for w in G.enumerate_group():
        table = atom_coeffs(G, w)
        tw1 = GAElement.one(rs.rank)
        for letter in reversed(G.canonical_word(w)):
            tw1 = t_op(rs, rs.simple_root(letter), tw1)
        assert table.entries[G.identity] == tw1
        prod = GAElement.one(rs.rank)
        for alpha in G.inversion_set(w):
            prod = mul_one_minus_v_exp(rs, alpha, prod)
        assert table.entries[w] == prod


def test_operator_identity_small(group_for):
    G = group_for("A", 2)
    rng = random.Random(6)
    for lam in [(1, 1), rand_dominant(G.rs, rng)]:
        for w in G.enumerate_group():
            table = atom_coeffs(G, w)
            total = GAElement.zero()
            for x, c in table.entries.items():
                total = total + c * demazure_atom(G, x, lam)
            assert total == whittaker_function(G, w, lam)


# -- closed form ----------------------------------------------------------------------

def test_closed_form_at_anchor_is_product(group_for):
    G = group_for("A", 3)
    for w in G.enumerate_group():
        word = G.canonical_word(w)
        got = closed_form_coeff(G, w, word)
        prod = GAElement.one(3)
        for alpha in G.inversion_set(w):
            prod = mul_one_minus_v_exp(G.rs, alpha, prod)
        assert got == prod


def test_closed_form_rank_one_identity_entry(group_for):
    G = group_for("A", 1)
    got = closed_form_coeff(G, G.identity, (1,))
    assert got == GAElement({(-2,): (0, -1)})


def test_closed_form_spec_example(group_for):
    G = group_for("A", 3)
    x = G.element_from_word((2, 3))
    word = (1, 2, 1, 3, 2, 1)
    w = G.element_from_word(word)
    assert closed_form_coeff(G, x, word) == atom_coeffs(G, w).entries[x]


def test_closed_form_condition_error_carries_labels(group_for):
    G = group_for("B", 2)
    # x = s1 below w = s1 s2 s1: the single word fails all three flags
    x = G.element_from_word((1,))
    word = (1, 2, 1)
    with pytest.raises(ConditionError) as err:
        closed_form_coeff(G, x, word)
    assert err.value.lambda_set == (1, 3)
    assert err.value.chain_min is not None
    assert err.value.chain_max is not None


# -- transforms -----------------------------------------------------------------------

def test_char_coeffs_rank_one(group_for):
    G = group_for("A", 1)
    s1 = G.element_from_word((1,))
    table = char_coeffs(G, s1)
    assert table.entries[s1] == GAElement({(0,): (1,), (-2,): (0, -1)})
    assert table.entries[G.identity] == GAElement({(0,): (-1,)})


def test_char_atom_round_trip(group_for):
    G = group_for("A", 2)
    for w in G.enumerate_group():
        atoms = atom_coeffs(G, w)
        chars = char_coeffs(G, w)
        back = atom_from_char_coeffs(G, chars)
        assert back.entries == atoms.entries


def test_char_coeffs_expand_whittaker(group_for):
    G = group_for("A", 2)
    lam = (1, 1)
    for w in G.enumerate_group():
        table = char_coeffs(G, w)
        total = GAElement.zero()
        for x, c in table.entries.items():
            total = total + c * demazure_character(G, x, lam)
        assert total == whittaker_function(G, w, lam)


def test_tilde_coeffs_expand_spherical(group_for):
    G = group_for("A", 2)
    lam = (2, 1)
    for word in [(), (1,), (1, 2), (1, 2, 1)]:
        w = G.element_from_word(word)
        table = tilde_coeffs(G, w)
        total = GAElement.zero()
        for x, c in table.entries.items():
            total = total + c * demazure_character(G, x, lam)
        assert total == spherical_whittaker(G, w, lam)


# -- product identity at the longest element ------------------------------------------

def test_cs_rank_one_explicit(group_for):
    G = group_for("A", 1)
    lhs = spherical_whittaker(G, G.longest_element(), (1,))
    rhs = one_minus_v_exp(G.rs, (1,)) * GAElement({(1,): (1,), (-1,): (1,)})
    assert lhs == rhs
    assert casselman_shalika_check(G, (1,))


@pytest.mark.parametrize("type_letter,rank,lam", [
    ("A", 2, (1, 1)), ("B", 2, (1, 0)), ("B", 2, (1, 1)),
])
def test_cs_small_groups(group_for, type_letter, rank, lam):
    assert casselman_shalika_check(group_for(type_letter, rank), lam)


def test_zero_entries_recorded_not_asserted(group_for):
    G = group_for("A", 3)
    for w in G.enumerate_group():
        table = atom_coeffs(G, w)
        assert set(table.entries) == set(G.interval(G.identity, w))
        for x in table.zero_keys:
            assert x != G.identity and x != w
