"""Whittaker functions, Demazure characters and atoms, and the transition
coefficients between them.

Everything composes the operator calculus along reduced words.  The
operators all satisfy the braid relations, so any reduced word gives the
same answer; the canonical word of an element is used by default.

The central object is the table of coefficients c anchored at w, defined by
expanding the deformed operator product through atom operators:

    t_w e^lam  =  sum over x <= w of  c[w,x] * (atom_x e^lam).

It is built by left multiplication along a reduced word of w: growing from
the identity suffix by suffix, each step sw <- w distinguishes three cases
for x <= sw (x below the previous stage and raised by s; below and lowered
by s; not below the previous stage), mirroring the diamond recursion for
the coefficients.  The closed form evaluates, right to left over the word,
a product of binomial factors 1 - v e^(-beta_i) with deformed operators
t_beta inserted at the positions singled out by the chain condition; it
agrees with the recursion exactly on every pair satisfying the condition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConditionError, DomainError
from .groupalg import (GAElement, atom_op, demazure, mul_one_minus_v_exp,
                       t_op, weyl_act)
from .roots import Weight
from .shellability import (_greedy_chain_idx, beta_sequence, lambda_set)
from .weyl import WeylElement, WeylGroup


def _check_dominant(group: WeylGroup, lam: Weight) -> Weight:
    lam = tuple(lam)
    if len(lam) != group.rs.rank or not group.rs.is_dominant(lam):
        raise DomainError(f"weight {lam} is not dominant")
    return lam


def _apply_word(group: WeylGroup, op, word, f: GAElement) -> GAElement:
    """Operator composition along a word, rightmost letter acting first."""
    rs = group.rs
    for letter in reversed(word):
        f = op(rs, rs.simple_root(letter), f)
    return f


def whittaker_function(group: WeylGroup, w: WeylElement, lam: Weight) -> GAElement:
    """t_w e^lam: the Iwahori-level Whittaker sum for one group element."""
    lam = _check_dominant(group, lam)
    return _apply_word(group, t_op, group.canonical_word(w),
                       GAElement.monomial(lam))


def demazure_character(group: WeylGroup, w: WeylElement, lam: Weight) -> GAElement:
    lam = _check_dominant(group, lam)
    return _apply_word(group, demazure, group.canonical_word(w),
                       GAElement.monomial(lam))


def demazure_atom(group: WeylGroup, w: WeylElement, lam: Weight) -> GAElement:
    lam = _check_dominant(group, lam)
    return _apply_word(group, atom_op, group.canonical_word(w),
                       GAElement.monomial(lam))


def spherical_whittaker(group: WeylGroup, w: WeylElement, lam: Weight) -> GAElement:
    """Sum of the Whittaker functions over the lower interval of w."""
    lam = _check_dominant(group, lam)
    total = GAElement.zero()
    for x in group.interval(group.identity, w):
        total = total + whittaker_function(group, x, lam)
    return total


@dataclass
class CoefficientTable:
    """Transition coefficients anchored at one element; the key set is the
    full lower interval.  zero_keys records interior entries that came out
    identically zero (none are expected, but occurrences are data, not
    errors)."""

    anchor: WeylElement
    entries: dict[WeylElement, GAElement]
    zero_keys: list[WeylElement] = field(default_factory=list)


def atom_coeffs(group: WeylGroup, w: WeylElement, word=None) -> CoefficientTable:
    """Coefficient table for w via the three-case left-multiplication
    recursion along a reduced word (the canonical one by default)."""
    group.ensure_bruhat()
    if word is None:
        word = group.canonical_word(w)
    word = tuple(word)
    wi = group.word_to_idx(word)
    if group.idx_of(w) != wi:
        raise DomainError("word is not a word for w")
    if group.len_of_idx(wi) != len(word):
        raise DomainError("word is not reduced")

    rs = group.rs
    rank = rs.rank
    table: dict[int, GAElement] = {group.idx_of(group.identity): GAElement.one(rank)}
    cur = group.idx_of(group.identity)
    for pos in range(len(word) - 1, -1, -1):
        letter = word[pos]
        alpha = rs.simple_root(letter)
        s = group.simple_reflection(letter)
        new_idx = group.lmul_idx(letter, cur)
        new_mask = group.bruhat_mask(new_idx)
        new_table: dict[int, GAElement] = {}
        xi = 0
        mask = new_mask
        while mask:
            if mask & 1:
                sxi = group.lmul_idx(letter, xi)
                prev = table.get(xi)
                if prev is not None:
                    if group.len_of_idx(sxi) > group.len_of_idx(xi):
                        val = t_op(rs, alpha, prev)
                    else:
                        diff = table[sxi] - prev
                        val = mul_one_minus_v_exp(
                            rs, alpha, weyl_act(s, diff)) + t_op(rs, alpha, prev)
                else:
                    val = mul_one_minus_v_exp(rs, alpha, weyl_act(s, table[sxi]))
                new_table[xi] = val
            mask >>= 1
            xi += 1
        table = new_table
        cur = new_idx

    entries = {group.elem_of(xi): val for xi, val in table.items()}
    result = CoefficientTable(anchor=w, entries=entries)
    ident = group.identity
    assert entries[ident], "coefficient at the identity vanished"
    assert entries[w], "coefficient at the anchor vanished"
    for x, val in entries.items():
        if not val:
            result.zero_keys.append(x)
    return result


def closed_form_coeff(group: WeylGroup, x: WeylElement, word,
                      check: bool = True) -> GAElement:
    """Closed-form coefficient for (x, word).

    With check=True the word must satisfy the chain condition for x (in
    either the deletion-set form or the chain form); otherwise a
    ConditionError carrying the three labels is raised.  With check=False
    the formula is evaluated anyway, using the increasing-chain label; that
    is the variant whose failure off-condition is itself a tested fact."""
    group.ensure_bruhat()
    word = tuple(word)
    xi = group.idx_of(x)
    wi = group.word_to_idx(word)
    if not group.leq_idx(xi, wi):
        raise DomainError("x is not below the product of the word")
    lam = lambda_set(group, x, word)
    inc = _greedy_chain_idx(group, xi, word, pick_max=False)
    if check:
        dec = _greedy_chain_idx(group, xi, word, pick_max=True)
        rev = tuple(reversed(dec))
        if lam == rev:
            indices = lam
        elif inc == rev:
            indices = inc
        else:
            raise ConditionError(
                "chain condition fails for this pair and word",
                lambda_set=lam, chain_min=inc, chain_max=dec)
    else:
        indices = inc

    rs = group.rs
    betas = beta_sequence(group, word, indices)
    index_set = set(indices)
    acc = GAElement.one(rs.rank)
    for i in range(len(word), 0, -1):
        beta = betas[i - 1]
        if i in index_set:
            acc = t_op(rs, beta, acc)
        else:
            acc = mul_one_minus_v_exp(rs, beta, acc)
    return acc


def char_coeffs(group: WeylGroup, w: WeylElement, word=None) -> CoefficientTable:
    """Coefficients on Demazure characters: the alternating sums over
    Bruhat intervals of the atom coefficients."""
    ct = atom_coeffs(group, w, word)
    entries: dict[WeylElement, GAElement] = {}
    for x in ct.entries:
        lx = group.length(x)
        total = GAElement.zero()
        for y in group.interval(x, w):
            c = ct.entries[y]
            if (group.length(y) - lx) % 2:
                total = total - c
            else:
                total = total + c
        entries[x] = total
    return CoefficientTable(anchor=w, entries=entries)


def atom_from_char_coeffs(group: WeylGroup, table: CoefficientTable) -> CoefficientTable:
    """Inverse transform: plain interval sums of the character coefficients."""
    w = table.anchor
    entries: dict[WeylElement, GAElement] = {}
    for x in table.entries:
        total = GAElement.zero()
        for y in group.interval(x, w):
            total = total + table.entries[y]
        entries[x] = total
    return CoefficientTable(anchor=w, entries=entries)


def tilde_coeffs(group: WeylGroup, w: WeylElement) -> CoefficientTable:
    """Coefficients of the summed (spherical-type) function on Demazure
    characters: for each x, sum the character coefficients of every y in
    [x, w].  Needs one recursion per y below w."""
    group.ensure_bruhat()
    char_tables = {y: char_coeffs(group, y)
                   for y in group.interval(group.identity, w)}
    entries: dict[WeylElement, GAElement] = {}
    for x in group.interval(group.identity, w):
        total = GAElement.zero()
        for y in group.interval(x, w):
            total = total + char_tables[y].entries[x]
        entries[x] = total
    return CoefficientTable(anchor=w, entries=entries)


def casselman_shalika_check(group: WeylGroup, lam: Weight) -> bool:
    """Compare the summed Whittaker function at the longest element with
    the product side (the full positive-root binomial product times the
    character); both sides computed independently, compared exactly."""
    lam = _check_dominant(group, lam)
    w0 = group.longest_element()
    lhs = spherical_whittaker(group, w0, lam)
    rhs = demazure_character(group, w0, lam)
    for alpha in group.rs.positive_roots:
        rhs = mul_one_minus_v_exp(group.rs, alpha, rhs)
    return lhs == rhs
