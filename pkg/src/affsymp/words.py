"""Index words for tensor and exterior power bases.

Wedge words are strictly increasing index tuples in lexicographic order;
tensor words are arbitrary tuples in lexicographic order.  Ranking and
unranking are exact integer computations so bases never need materializing.
"""

from __future__ import annotations

from itertools import combinations, product
from math import comb
from typing import Iterator


def wedge_dim(dim: int, k: int) -> int:
    return comb(dim, k)


def tensor_dim(dim: int, k: int) -> int:
    return dim**k


def wedge_words(dim: int, k: int) -> Iterator[tuple[int, ...]]:
    return combinations(range(dim), k)


def tensor_words(dim: int, k: int) -> Iterator[tuple[int, ...]]:
    return product(range(dim), repeat=k)


def wedge_index(word: tuple[int, ...], dim: int) -> int:
    """Position of a strictly increasing word among C(dim, k) words."""
    k = len(word)
    index = 0
    prev = -1
    for pos, w in enumerate(word):
        for skipped in range(prev + 1, w):
            index += comb(dim - skipped - 1, k - pos - 1)
        prev = w
    return index


def wedge_word_at(index: int, dim: int, k: int) -> tuple[int, ...]:
    """Inverse of wedge_index."""
    word = []
    prev = -1
    remaining = index
    for pos in range(k):
        w = prev + 1
        while True:
            block = comb(dim - w - 1, k - pos - 1)
            if remaining < block:
                break
            remaining -= block
            w += 1
        word.append(w)
        prev = w
    return tuple(word)


def tensor_index(word: tuple[int, ...], dim: int) -> int:
    index = 0
    for w in word:
        index = index * dim + w
    return index


def tensor_word_at(index: int, dim: int, k: int) -> tuple[int, ...]:
    word = []
    for _ in range(k):
        index, rem = divmod(index, dim)
        word.append(rem)
    return tuple(reversed(word))


def sort_with_sign(word: tuple[int, ...]) -> tuple[tuple[int, ...] | None, int]:
    """Sort a word, tracking the permutation sign; (None, 0) on repeats."""
    items = list(word)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(items)):
        if items[i - 1] == items[i]:
            return None, 0
    return tuple(items), sign


def merge_with_sign(
    left: tuple[int, ...], right: tuple[int, ...]
) -> tuple[tuple[int, ...] | None, int]:
    """Merge two strictly increasing words, counting inversion parity;
    (None, 0) when they share a letter."""
    out = []
    sign = 1
    i = j = 0
    while i < len(left) and j < len(right):
        a, b = left[i], right[j]
        if a == b:
            return None, 0
        if a < b:
            out.append(a)
            i += 1
        else:
            out.append(b)
            j += 1
            if (len(left) - i) % 2:
                sign = -sign
    out.extend(left[i:])
    out.extend(right[j:])
    return tuple(out), sign
