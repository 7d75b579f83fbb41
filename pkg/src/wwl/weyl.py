"""Weyl group arithmetic: elements, words, length, Bruhat order, covers,
intervals and reduced-word enumeration.

An element is stored as its integer action matrix on the root lattice (plus
the matching action on the weight lattice, carried along so that neither
matrix ever needs to be inverted).  Equality and hashing go through the
matrices, so elements work as dictionary keys independently of any chosen
word.

For sweeps, a WeylGroup lazily builds an indexed layer: the full element
list in breadth-first order, generator multiplication tables, and the Bruhat
order as one bitmask per element.  The tables are built once and read-only
afterwards, so they can be shared freely across parallel workers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .roots import Coords, Matrix, RootSystem, Weight


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    rng = range(n)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in rng) for j in rng)
        for i in rng)


def _identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n))
                 for i in range(n))


@dataclass(frozen=True)
class WeylElement:
    """Group element as a pair of integer matrices: the action on root
    coordinates and the action on fundamental-weight coordinates."""

    root_action: Matrix
    weight_action: Matrix

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(_matmul(self.root_action, other.root_action),
                           _matmul(self.weight_action, other.weight_action))

    def apply_root(self, coords: Coords) -> Coords:
        m = self.root_action
        rng = range(len(coords))
        return tuple(sum(m[i][j] * coords[j] for j in rng) for i in rng)

    def apply_weight(self, lam: Weight) -> Weight:
        m = self.weight_action
        rng = range(len(lam))
        return tuple(sum(m[i][j] * lam[j] for j in rng) for i in rng)

    def __repr__(self):
        return f"WeylElement({self.root_action})"


class WeylGroup:
    """Weyl group of a RootSystem, with lazily built lookup tables."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        n = rs.rank
        self.identity = WeylElement(_identity_matrix(n), _identity_matrix(n))
        self._gens = tuple(
            WeylElement(rs.simple_root_matrices[i], rs.simple_weight_matrices[i])
            for i in range(n))
        self._len_memo: dict[Matrix, int] = {self.identity.root_action: 0}
        self._leq_memo: dict[tuple[Matrix, Matrix], bool] = {}
        self._refl_cache: dict[Coords, WeylElement] = {}
        # indexed layer, built on first full-group use
        self._elements: list[WeylElement] | None = None
        self._index: dict[Matrix, int] | None = None
        self._len: list[int] | None = None
        self._lmul: list[list[int]] | None = None
        self._rmul: list[list[int]] | None = None
        self._canon: list[tuple[int, ...]] | None = None
        self._bruhat: list[int] | None = None
        self._nwords: list[int] | None = None

    # -- element-level API --------------------------------------------------

    def order(self) -> int:
        return self.rs.group_order

    def simple_reflection(self, letter: int) -> WeylElement:
        if not 1 <= letter <= self.rs.rank:
            raise DomainError(f"generator index {letter} out of range")
        return self._gens[letter - 1]

    def element_from_word(self, letters) -> WeylElement:
        w = self.identity
        for letter in letters:
            w = w * self.simple_reflection(letter)
        return w

    def reflection(self, alpha: Coords) -> WeylElement:
        """Reflection s_alpha for an arbitrary positive root."""
        cached = self._refl_cache.get(alpha)
        if cached is not None:
            return cached
        rs = self.rs
        if not rs.is_positive_root(alpha):
            raise DomainError(f"{alpha} is not a positive root")
        n = rs.rank
        coro = rs.coroot_coords(alpha)
        wc = rs.root_to_weight_coords(alpha)
        root_cols = [rs.reflect_root(alpha, tuple(1 if j == i else 0
                                                  for j in range(n)))
                     for i in range(n)]
        root_m = tuple(tuple(root_cols[j][k] for j in range(n))
                       for k in range(n))
        weight_m = tuple(tuple((1 if k == j else 0) - coro[j] * wc[k]
                               for j in range(n))
                         for k in range(n))
        elem = WeylElement(root_m, weight_m)
        self._refl_cache[alpha] = elem
        return elem

    def length(self, w: WeylElement) -> int:
        cached = self._len_memo.get(w.root_action)
        if cached is not None:
            return cached
        if self._index is not None:
            idx = self._index.get(w.root_action)
            if idx is not None:
                return self._len[idx]
        count = 0
        for alpha in self.rs.positive_roots:
            image = w.apply_root(alpha)
            if not self.rs.is_positive_root(image):
                count += 1
        self._len_memo[w.root_action] = count
        return count

    def inversion_set(self, w: WeylElement) -> tuple[Coords, ...]:
        """Positive roots sent negative by w^-1 (the set usually written
        Phi_w), in positive-root order."""
        out = []
        for beta in self.rs.positive_roots:
            image = w.apply_root(beta)
            if not self.rs.is_positive_root(image):
                out.append(tuple(-c for c in image))
        return tuple(sorted(out, key=lambda c: (sum(c), c)))

    def left_descents(self, w: WeylElement) -> list[int]:
        lw = self.length(w)
        return [i for i in range(1, self.rs.rank + 1)
                if self.length(self._gens[i - 1] * w) < lw]

    def right_descents(self, w: WeylElement) -> list[int]:
        lw = self.length(w)
        return [i for i in range(1, self.rs.rank + 1)
                if self.length(w * self._gens[i - 1]) < lw]

    def canonical_word(self, w: WeylElement) -> tuple[int, ...]:
        """Lexicographically least reduced word (smallest left descent
        first); the canonical serialization of an element."""
        if self._index is not None:
            idx = self._index.get(w.root_action)
            if idx is not None:
                return self._canon[idx]
        word = []
        cur = w
        while True:
            descents = self.left_descents(cur)
            if not descents:
                break
            i = descents[0]
            word.append(i)
            cur = self._gens[i - 1] * cur
        return tuple(word)

    def is_reduced(self, letters) -> bool:
        return self.length(self.element_from_word(letters)) == len(letters)

    def inverse(self, w: WeylElement) -> WeylElement:
        return self.element_from_word(tuple(reversed(self.canonical_word(w))))

    def bruhat_leq(self, x: WeylElement, w: WeylElement) -> bool:
        if self._bruhat is not None:
            return self.leq_idx(self.idx_of(x), self.idx_of(w))
        return self._leq_rec(x, w)

    def _leq_rec(self, x: WeylElement, w: WeylElement) -> bool:
        lw = self.length(w)
        if lw == 0:
            return self.length(x) == 0
        if self.length(x) > lw:
            return False
        key = (x.root_action, w.root_action)
        cached = self._leq_memo.get(key)
        if cached is not None:
            return cached
        s = self._gens[self.left_descents(w)[0] - 1]
        sw = s * w
        sx = s * x
        if self.length(sx) < self.length(x):
            result = self._leq_rec(sx, sw)
        else:
            result = self._leq_rec(x, sw)
        self._leq_memo[key] = result
        return result

    def iter_reduced_words(self, w: WeylElement):
        """All reduced words of w, streamed in lexicographic order."""
        self.ensure_tables()
        yield from self._iter_words_idx(self.idx_of(w))

    def all_reduced_words(self, w: WeylElement) -> list[tuple[int, ...]]:
        return list(self.iter_reduced_words(w))

    def _iter_words_idx(self, wi: int):
        if self._len[wi] == 0:
            yield ()
            return
        lw = self._len[wi]
        for i in range(1, self.rs.rank + 1):
            wj = self._lmul[i - 1][wi]
            if self._len[wj] < lw:
                for rest in self._iter_words_idx(wj):
                    yield (i,) + rest

    def enumerate_group(self) -> list[WeylElement]:
        self.ensure_tables()
        return list(self._elements)

    def longest_element(self) -> WeylElement:
        self.ensure_tables()
        return self._elements[-1]

    def interval(self, x: WeylElement, w: WeylElement) -> list[WeylElement]:
        """All y with x <= y <= w, in table order (by length, then matrix)."""
        self.ensure_bruhat()
        xi, wi = self.idx_of(x), self.idx_of(w)
        if not self.leq_idx(xi, wi):
            raise DomainError("interval endpoints not comparable: x must be <= w")
        mask_w = self._bruhat[wi]
        return [self._elements[yi] for yi in range(len(self._elements))
                if (mask_w >> yi) & 1 and (self._bruhat[yi] >> xi) & 1]

    def covers_down(self, w: WeylElement) -> list[WeylElement]:
        """All y covered by w, i.e. y < w with l(y) = l(w) - 1."""
        self.ensure_tables()
        wi = self.idx_of(w)
        target = self._len[wi] - 1
        seen = sorted({di for di in self.deleted_word_elements_idx(self._canon[wi])
                       if self._len[di] == target})
        return [self._elements[di] for di in seen]

    # -- indexed layer --------------------------------------------------------

    def ensure_tables(self) -> None:
        if self._elements is not None:
            return
        n = self.rs.rank
        elements = [self.identity]
        index = {self.identity.root_action: 0}
        lengths = [0]
        frontier = [self.identity]
        while frontier:
            nxt = {}
            for w in frontier:
                for g in self._gens:
                    u = w * g
                    if u.root_action not in index and u.root_action not in nxt:
                        nxt[u.root_action] = u
            frontier = [nxt[k] for k in sorted(nxt)]
            level = lengths[-1] + 1
            for u in frontier:
                index[u.root_action] = len(elements)
                elements.append(u)
                lengths.append(level)
        assert len(elements) == self.rs.group_order
        self._elements = elements
        self._index = index
        self._len = lengths
        size = len(elements)
        self._rmul = [[index[(elements[k] * g).root_action]
                       for k in range(size)] for g in self._gens]
        self._lmul = [[index[(g * elements[k]).root_action]
                       for k in range(size)] for g in self._gens]
        canon: list[tuple[int, ...]] = [()] * size
        for k in range(1, size):  # ascending length: s_i * w already resolved
            lw = lengths[k]
            for i in range(n):
                j = self._lmul[i][k]
                if lengths[j] < lw:
                    canon[k] = (i + 1,) + canon[j]
                    break
        self._canon = canon

    def ensure_bruhat(self) -> None:
        if self._bruhat is not None:
            return
        self.ensure_tables()
        size = len(self._elements)
        lengths = self._len
        # per generator: the y with y < s*y, each bundled with bit(y)|bit(s*y)
        gen_pairs = []
        for i in range(self.rs.rank):
            lm = self._lmul[i]
            pairs = [(y, (1 << y) | (1 << lm[y])) for y in range(size)
                     if lengths[y] < lengths[lm[y]]]
            gen_pairs.append(pairs)
        masks = [0] * size
        masks[0] = 1
        for w in range(1, size):
            lw = lengths[w]
            for i in range(self.rs.rank):
                w1 = self._lmul[i][w]
                if lengths[w1] < lw:
                    break
            m1 = masks[w1]
            acc = 0
            for y, bits in gen_pairs[i]:
                if (m1 >> y) & 1:
                    acc |= bits
            masks[w] = acc
        self._bruhat = masks

    def idx_of(self, w: WeylElement) -> int:
        self.ensure_tables()
        idx = self._index.get(w.root_action)
        if idx is None:
            raise DomainError("element does not belong to this group")
        return idx

    def elem_of(self, idx: int) -> WeylElement:
        return self._elements[idx]

    def len_of_idx(self, idx: int) -> int:
        return self._len[idx]

    def canon_of_idx(self, idx: int) -> tuple[int, ...]:
        return self._canon[idx]

    def word_to_idx(self, letters) -> int:
        self.ensure_tables()
        cur = 0
        rmul = self._rmul
        for letter in letters:
            if not 1 <= letter <= self.rs.rank:
                raise DomainError(f"generator index {letter} out of range")
            cur = rmul[letter - 1][cur]
        return cur

    def idx_mul(self, a: int, b: int) -> int:
        cur = a
        rmul = self._rmul
        for letter in self._canon[b]:
            cur = rmul[letter - 1][cur]
        return cur

    def rmul_idx(self, letter: int, idx: int) -> int:
        return self._rmul[letter - 1][idx]

    def lmul_idx(self, letter: int, idx: int) -> int:
        return self._lmul[letter - 1][idx]

    def leq_idx(self, xi: int, wi: int) -> bool:
        self.ensure_bruhat()
        return bool((self._bruhat[wi] >> xi) & 1)

    def bruhat_mask(self, wi: int) -> int:
        self.ensure_bruhat()
        return self._bruhat[wi]

    def deleted_word_elements_idx(self, letters) -> list[int]:
        """Index of the product of `letters` with position i removed, for
        every i.  The input need not be reduced."""
        m = len(letters)
        pre = [0] * (m + 1)
        rmul, lmul = self._rmul, self._lmul
        for k, letter in enumerate(letters):
            pre[k + 1] = rmul[letter - 1][pre[k]]
        suf = [0] * (m + 1)
        for k in range(m - 1, -1, -1):
            suf[k] = lmul[letters[k] - 1][suf[k + 1]]
        return [self.idx_mul(pre[i], suf[i + 1]) for i in range(m)]

    def reduced_word_counts(self) -> list[int]:
        """Number of reduced words for every element, indexed like the
        element table."""
        if self._nwords is not None:
            return self._nwords
        self.ensure_tables()
        size = len(self._elements)
        counts = [0] * size
        counts[0] = 1
        for w in range(1, size):
            lw = self._len[w]
            counts[w] = sum(counts[self._lmul[i][w]]
                            for i in range(self.rs.rank)
                            if self._len[self._lmul[i][w]] < lw)
        self._nwords = counts
        return counts
