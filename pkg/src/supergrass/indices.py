"""Multi-index helpers for odd coordinates.

A multi-index is a strictly increasing tuple of 1-based positions.  The
families used throughout: all subsets, even-length subsets (including the
empty one), odd-length subsets, and even-length subsets of length >= 2.
"""

from __future__ import annotations

from itertools import combinations


def subsets(q, lengths):
    out = []
    for r in lengths:
        out.extend(combinations(range(1, q + 1), r))
    return out


def all_subsets(q):
    return subsets(q, range(q + 1))


def even_subsets(q):
    """Even length including the empty index."""
    return subsets(q, range(0, q + 1, 2))


def odd_subsets(q):
    return subsets(q, range(1, q + 1, 2))


def even_subsets_pos(q):
    """Even length >= 2."""
    return subsets(q, range(2, q + 1, 2))


def merge_sign(*parts):
    """Concatenate disjoint multi-indices; return (sign, merged) or None if a
    position repeats.  sign is the signature of the sort permutation."""
    seq = [i for part in parts for i in part]
    if len(set(seq)) != len(seq):
        return None
    sign = 1
    a = list(seq)
    for i in range(len(a)):
        for j in range(len(a) - 1 - i):
            if a[j] > a[j + 1]:
                a[j], a[j + 1] = a[j + 1], a[j]
                sign = -sign
    return sign, tuple(a)
