"""Subword combinatorics of Bruhat intervals relative to a fixed reduced
word: deletion-position sets, good words, the root sets S(x,w), gamma- and
beta-sequences, and the two lexicographically extreme maximal chains.

Conventions.  Positions inside a word are 1-based.  For a reduced word
w = s_1...s_n and x <= w:

* lambda_set(x, word) collects the positions i whose single deletion leaves
  a product still >= x (the deleted word need not be reduced).
* A maximal chain of [x, w] deletes one position per step, every
  intermediate subword staying reduced; its label is the sequence of
  original positions deleted.  There is a unique chain with strictly
  increasing label (also the lexicographically least one) and a unique
  chain with strictly decreasing label (the lexicographically greatest);
  both are found greedily, and monotonicity of the result is asserted.
* The per-word conditions compare, all computed independently:
      (i)   lambda_set equals the reversed decreasing-chain label,
      (ii)  the increasing-chain label equals the reversed decreasing one,
      (iii) lambda_set equals the increasing-chain label.
  The pair-level conditions A and B ask for some reduced word of w
  satisfying (i), respectively (ii); searches run in lexicographic word
  order and stop at the first witness.
"""

from __future__ import annotations

from .errors import DomainError
from .roots import Coords
from .weyl import WeylElement, WeylGroup


def _checked_word_idx(group: WeylGroup, x: WeylElement, word) -> tuple[int, int]:
    group.ensure_bruhat()
    wi = group.word_to_idx(word)
    xi = group.idx_of(x)
    if not group.leq_idx(xi, wi):
        raise DomainError("x is not below the product of the word")
    return xi, wi


def lambda_set(group: WeylGroup, x: WeylElement, word) -> tuple[int, ...]:
    """Positions whose single deletion leaves an element >= x, ascending."""
    xi, _ = _checked_word_idx(group, x, word)
    dels = group.deleted_word_elements_idx(word)
    return tuple(i + 1 for i, d in enumerate(dels) if group.leq_idx(xi, d))


def is_good_word(group: WeylGroup, x: WeylElement, word) -> bool:
    """True when deleting the whole lambda_set from the word leaves exactly
    a word for x."""
    xi, wi = _checked_word_idx(group, x, word)
    lam = lambda_set(group, x, word)
    lam_set = set(lam)
    residual = [a for i, a in enumerate(word, start=1) if i not in lam_set]
    good = group.word_to_idx(residual) == xi
    if good:
        assert len(residual) == group.len_of_idx(xi)
        assert len(lam) == group.len_of_idx(wi) - group.len_of_idx(xi)
    return good


def s_set(group: WeylGroup, x: WeylElement, w: WeylElement) -> tuple[Coords, ...]:
    """{alpha in Phi+ : x <= w*s_alpha < w}, in positive-root order."""
    group.ensure_bruhat()
    xi, wi = group.idx_of(x), group.idx_of(w)
    if not group.leq_idx(xi, wi):
        raise DomainError("x is not below w")
    lw = group.len_of_idx(wi)
    out = []
    for alpha in group.rs.positive_roots:
        ws = group.idx_of(w * group.reflection(alpha))
        if group.len_of_idx(ws) < lw and group.leq_idx(xi, ws):
            out.append(alpha)
    return tuple(out)


def gamma_sequence(group: WeylGroup, word, lam) -> tuple[Coords, ...]:
    """For each position i in lam (ascending), the root obtained by pushing
    the simple root of letter i through the tail of the word:
    gamma_i = s_n ... s_(i+1) applied to alpha_i."""
    rs = group.rs
    n = len(word)
    lam_set = set(lam)
    if not lam_set <= set(range(1, n + 1)):
        raise DomainError("lambda positions out of range")
    gammas: dict[int, Coords] = {}
    tail = group.identity
    for i in range(n, 0, -1):
        if i in lam_set:
            gammas[i] = tail.apply_root(rs.simple_root(word[i - 1]))
        tail = tail * group.simple_reflection(word[i - 1])
    return tuple(gammas[i] for i in sorted(gammas))


def beta_sequence(group: WeylGroup, word, lam) -> tuple[Coords, ...]:
    """Length-n sequence where beta_i is the prefix s_1...s_(i-1), with every
    position of lam below i omitted, applied to alpha_i."""
    rs = group.rs
    n = len(word)
    lam_set = set(lam)
    if not lam_set <= set(range(1, n + 1)):
        raise DomainError("lambda positions out of range")
    betas = []
    prefix = group.identity
    for i in range(1, n + 1):
        betas.append(prefix.apply_root(rs.simple_root(word[i - 1])))
        if i not in lam_set:
            prefix = prefix * group.simple_reflection(word[i - 1])
    return tuple(betas)


def _greedy_chain_idx(group: WeylGroup, xi: int, word, pick_max: bool) -> tuple[int, ...]:
    """Label of the lexicographically extreme maximal chain from the word's
    product down to x: repeatedly delete the least (resp. greatest) original
    position whose deletion is a cover staying >= x."""
    cur = [(i + 1, a) for i, a in enumerate(word)]
    cur_idx = group.word_to_idx(word)
    label: list[int] = []
    while cur_idx != xi:
        m = len(cur)
        pre = [0] * (m + 1)
        for k in range(m):
            pre[k + 1] = group.rmul_idx(cur[k][1], pre[k])
        suf = [0] * (m + 1)
        for k in range(m - 1, -1, -1):
            suf[k] = group.lmul_idx(cur[k][1], suf[k + 1])
        target = group.len_of_idx(cur_idx) - 1
        order = range(m - 1, -1, -1) if pick_max else range(m)
        chosen = -1
        for k in order:
            di = group.idx_mul(pre[k], suf[k + 1])
            if group.len_of_idx(di) == target and group.leq_idx(xi, di):
                chosen = k
                chosen_idx = di
                break
        assert chosen >= 0, "no cover stays above x: chain invariant violated"
        label.append(cur[chosen][0])
        del cur[chosen]
        cur_idx = chosen_idx
    return tuple(label)


def lex_min_chain(group: WeylGroup, x: WeylElement, word) -> tuple[int, ...]:
    """Label of the unique maximal chain with increasing label."""
    xi, _ = _checked_word_idx(group, x, word)
    label = _greedy_chain_idx(group, xi, word, pick_max=False)
    assert all(a < b for a, b in zip(label, label[1:]))
    return label


def lex_max_chain(group: WeylGroup, x: WeylElement, word) -> tuple[int, ...]:
    """Label of the unique maximal chain with decreasing label."""
    xi, _ = _checked_word_idx(group, x, word)
    label = _greedy_chain_idx(group, xi, word, pick_max=True)
    assert all(a > b for a, b in zip(label, label[1:]))
    return label


def condition_per_word(group: WeylGroup, x: WeylElement, word) -> tuple[bool, bool, bool]:
    """The flags (i), (ii), (iii) for one reduced word, each evaluated from
    scratch; this function exists to test their equivalence, so no flag is
    derived from another."""
    xi, _ = _checked_word_idx(group, x, word)
    lam = lambda_set(group, x, word)
    inc = _greedy_chain_idx(group, xi, word, pick_max=False)
    dec = _greedy_chain_idx(group, xi, word, pick_max=True)
    rev = tuple(reversed(dec))
    return (lam == rev, inc == rev, lam == inc)


def _condition_witness(group: WeylGroup, x: WeylElement, w: WeylElement,
                       flag_index: int):
    group.ensure_bruhat()
    xi, wi = group.idx_of(x), group.idx_of(w)
    if not group.leq_idx(xi, wi):
        raise DomainError("x is not below w")
    for word in group.iter_reduced_words(w):
        if flag_index == 0:
            lam = lambda_set(group, x, word)
            dec = _greedy_chain_idx(group, xi, word, pick_max=True)
            hit = lam == tuple(reversed(dec))
        else:
            inc = _greedy_chain_idx(group, xi, word, pick_max=False)
            dec = _greedy_chain_idx(group, xi, word, pick_max=True)
            hit = inc == tuple(reversed(dec))
        if hit:
            return True, word
    return False, None


def condition_A(group: WeylGroup, x: WeylElement, w: WeylElement):
    """Does some reduced word of w satisfy flag (i)?  Returns the first
    witness in lexicographic order."""
    return _condition_witness(group, x, w, 0)


def condition_B(group: WeylGroup, x: WeylElement, w: WeylElement):
    """Does some reduced word of w satisfy flag (ii)?"""
    return _condition_witness(group, x, w, 1)


def deodhar_check(group: WeylGroup, x: WeylElement, w: WeylElement) -> bool:
    """#S(x,w) >= l(w) - l(x); expected to hold always, a False is a bug."""
    group.ensure_bruhat()
    xi, wi = group.idx_of(x), group.idx_of(w)
    if not group.leq_idx(xi, wi):
        raise DomainError("x is not below w")
    return len(s_set(group, x, w)) >= \
        group.len_of_idx(wi) - group.len_of_idx(xi)


# -- fast path for statistics sweeps ------------------------------------------

def lambda_positions_idx(group: WeylGroup, xi: int, dels) -> tuple[int, ...]:
    """lambda_set against precomputed single-deletion element indices."""
    return tuple(i + 1 for i, d in enumerate(dels) if group.leq_idx(xi, d))


def chain_realizes_idx(group: WeylGroup, xi: int, word, lam) -> bool:
    """Whether deleting the positions of lam in ascending order walks a
    maximal chain (every step reduced) ending exactly at x.  By uniqueness
    of the increasing-label chain this decides flag (iii) once
    len(lam) == l(w) - l(x); used by the statistics fast path only."""
    cur = list(word)
    ci = group.word_to_idx(cur)
    for t, pos in enumerate(lam):
        del cur[pos - 1 - t]
        ci = group.word_to_idx(cur)
        if group.len_of_idx(ci) != len(cur):
            return False
    return ci == xi
