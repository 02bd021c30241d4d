"""Permutations of {1..m} stored in one-line notation, 0-based.

``w[k] == w(k+1) - 1``.  Composition is ``(v*w)(k) = v(w(k))``; simple
reflections ``s_j`` use the 1-based index ``j`` in ``1..m-1``.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations

Perm = tuple[int, ...]


def identity(m: int) -> Perm:
    return tuple(range(m))


def all_perms(m: int) -> list[Perm]:
    """All of S_m in lexicographic order of one-line notation."""
    return list(permutations(range(m)))


def compose(v: Perm, w: Perm) -> Perm:
    return tuple(v[k] for k in w)


def inverse(w: Perm) -> Perm:
    inv = [0] * len(w)
    for k, wk in enumerate(w):
        inv[wk] = k
    return tuple(inv)


def simple(j: int, m: int) -> Perm:
    if not 1 <= j < m:
        raise ValueError(f"s_{j} is not a simple reflection of S_{m}")
    w = list(range(m))
    w[j - 1], w[j] = w[j], w[j - 1]
    return tuple(w)


def times_simple(w: Perm, j: int) -> Perm:
    """``w * s_j``: swap positions j, j+1."""
    x = list(w)
    x[j - 1], x[j] = x[j], x[j - 1]
    return tuple(x)


def simple_times(j: int, w: Perm) -> Perm:
    """``s_j * w``: swap the values j-1, j (0-based)."""
    a, b = j - 1, j
    return tuple(b if x == a else a if x == b else x for x in w)


def length(w: Perm) -> int:
    n = len(w)
    return sum(1 for a in range(n) for b in range(a + 1, n) if w[a] > w[b])


def left_descents(w: Perm) -> list[int]:
    """Indices j with l(s_j w) < l(w), i.e. value j+1 sits left of value j."""
    inv = inverse(w)
    return [j for j in range(1, len(w)) if inv[j - 1] > inv[j]]


def from_word(word, m: int) -> Perm:
    w = identity(m)
    for j in reversed(word):
        w = simple_times(j, w)
    return w


@lru_cache(maxsize=None)
def canonical_reduced_word(w: Perm) -> tuple[int, ...]:
    """Lexicographically smallest reduced word: greedily strip the least left descent."""
    word = []
    while True:
        desc = left_descents(w)
        if not desc:
            return tuple(word)
        j = desc[0]
        word.append(j)
        w = simple_times(j, w)


def all_reduced_words(w: Perm) -> list[tuple[int, ...]]:
    out = []

    def rec(u, prefix):
        desc = left_descents(u)
        if not desc:
            out.append(tuple(prefix))
            return
        for j in desc:
            rec(simple_times(j, u), prefix + [j])

    rec(w, [])
    return out


def bruhat_le(u: Perm, w: Perm) -> bool:
    """Tableau criterion: sorted prefixes of u are dominated by those of w."""
    for k in range(1, len(u)):
        a = sorted(u[:k])
        b = sorted(w[:k])
        if any(x > y for x, y in zip(a, b)):
            return False
    return True


def act_on_sequence(w: Perm, nu: tuple) -> tuple:
    """Left action ``(w nu)_k = nu_{w^{-1}(k)}``."""
    if len(w) != len(nu):
        raise ValueError(f"permutation of length {len(w)} cannot act on a sequence of length {len(nu)}")
    inv = inverse(w)
    return tuple(nu[inv[k]] for k in range(len(nu)))


def to_one_based(w: Perm) -> list[int]:
    return [k + 1 for k in w]
