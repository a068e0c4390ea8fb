"""Free Lie algebra over Q on an integer alphabet, in the Lyndon-word basis.

A Lyndon word is strictly smaller than every proper rotation of itself; its
standard bracketing b(w) = [b(u), b(v)], where v is the lexicographically
least proper suffix of w, gives a basis of the free Lie algebra.

Brackets of basis monomials are rewritten through the tensor algebra: the
expansion of b(w) is w plus lexicographically larger words of the same
multidegree, so Lyndon coordinates of any Lie element are recovered by a
triangular elimination against the smallest word in its support.  All
coefficients stay integral (the leading coefficient of b(w) is 1).
"""

from __future__ import annotations

from itertools import product

Word = tuple[int, ...]

_EXPANSION_CACHE: dict[Word, dict[Word, int]] = {}
_BRACKET_CACHE: dict[tuple[Word, Word], dict[Word, int]] = {}


def is_lyndon(word: Word) -> bool:
    """True when word is strictly smaller than all of its proper rotations."""
    n = len(word)
    if n == 0:
        return False
    for k in range(1, n):
        if word >= word[k:] + word[:k]:
            return False
    return True


def lyndon_words(alphabet: int, length: int) -> list[Word]:
    """All Lyndon words of the given exact length over {0..alphabet-1}, sorted."""
    if alphabet < 1 or length < 1:
        raise ValueError("alphabet size and length must be >= 1")
    if length == 1:
        return [(a,) for a in range(alphabet)]
    return [w for w in product(range(alphabet), repeat=length) if is_lyndon(w)]


def standard_factorization(word: Word) -> tuple[Word, Word]:
    """Split a Lyndon word of length >= 2 as u,v with v the least proper suffix."""
    best = 1
    for k in range(2, len(word)):
        if word[k:] < word[best:]:
            best = k
    return word[:best], word[best:]


def tensor_expansion(word: Word) -> dict[Word, int]:
    """Expansion of the standard bracketing of a Lyndon word in the tensor algebra."""
    cached = _EXPANSION_CACHE.get(word)
    if cached is not None:
        return cached
    if len(word) == 1:
        out = {word: 1}
    else:
        u, v = standard_factorization(word)
        eu, ev = tensor_expansion(u), tensor_expansion(v)
        out = {}
        for w1, c1 in eu.items():
            for w2, c2 in ev.items():
                out[w1 + w2] = out.get(w1 + w2, 0) + c1 * c2
                out[w2 + w1] = out.get(w2 + w1, 0) - c1 * c2
        out = {w: c for w, c in out.items() if c}
    _EXPANSION_CACHE[word] = out
    return out


def lie_to_lyndon(tensor: dict[Word, int]) -> dict[Word, int]:
    """Lyndon coordinates of a Lie element given by its tensor-word expansion."""
    by_len: dict[int, dict[Word, int]] = {}
    for w, c in tensor.items():
        if c:
            by_len.setdefault(len(w), {})[w] = c
    out: dict[Word, int] = {}
    for _, work in sorted(by_len.items()):
        while work:
            wmin = min(work)
            if not is_lyndon(wmin):
                raise ValueError(f"not a Lie element: stray word {wmin}")
            c = work[wmin]
            out[wmin] = out.get(wmin, 0) + c
            for w2, c2 in tensor_expansion(wmin).items():
                s = work.get(w2, 0) - c * c2
                if s:
                    work[w2] = s
                else:
                    work.pop(w2, None)
    return {w: c for w, c in out.items() if c}


def monomial_bracket(w1: Word, w2: Word) -> dict[Word, int]:
    """Bracket of two standard bracketings, as Lyndon coordinates."""
    if w1 == w2:
        return {}
    key = (w1, w2)
    cached = _BRACKET_CACHE.get(key)
    if cached is not None:
        return cached
    e1, e2 = tensor_expansion(w1), tensor_expansion(w2)
    comm: dict[Word, int] = {}
    for a, ca in e1.items():
        for b, cb in e2.items():
            comm[a + b] = comm.get(a + b, 0) + ca * cb
            comm[b + a] = comm.get(b + a, 0) - ca * cb
    out = lie_to_lyndon(comm)
    _BRACKET_CACHE[key] = out
    return out
