"""Exact combinatorics over small ground sets of relay ids.

Relay sets are ascending tuples of 1-based integer ids. Enumeration order
everywhere is lexicographic on the ascending tuples; that single convention
fixes the row and column order of every array built on top of these
primitives. All arithmetic is exact (arbitrary precision integers).
"""

from __future__ import annotations

from itertools import combinations
from math import comb

RelaySet = tuple[int, ...]


def binomial(n: int, k: int) -> int:
    """Exact n-choose-k; zero when k is negative or exceeds n."""
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def ksubsets(h: int, k: int) -> list[RelaySet]:
    """All k-subsets of {1, ..., h} as ascending tuples, in lexicographic order."""
    if not 0 <= k <= h:
        raise ValueError(f"subset size {k} out of range for ground set [1..{h}]")
    return list(combinations(range(1, h + 1), k))


def subset_rank(h: int, members: RelaySet) -> int:
    """Lexicographic index (0-based) of an ascending k-subset of {1..h}."""
    k = len(members)
    rank = 0
    prev = 0
    for i, c in enumerate(members):
        # count subsets that branch off with a smaller element at slot i
        for skipped in range(prev + 1, c):
            rank += binomial(h - skipped, k - i - 1)
        prev = c
    return rank


def subset_unrank(h: int, k: int, rank: int) -> RelaySet:
    """Inverse of subset_rank: the k-subset of {1..h} at lexicographic position rank."""
    total = binomial(h, k)
    if not 0 <= rank < total:
        raise ValueError(f"rank {rank} out of range, {total} subsets of size {k}")
    members = []
    x = 1
    for i in range(k):
        while True:
            below = binomial(h - x, k - i - 1)
            if rank < below:
                members.append(x)
                x += 1
                break
            rank -= below
            x += 1
    return tuple(members)


def union(a: RelaySet, b: RelaySet) -> RelaySet:
    return tuple(sorted(set(a) | set(b)))


def difference(a: RelaySet, b: RelaySet) -> RelaySet:
    return tuple(sorted(set(a) - set(b)))


def intersection(a: RelaySet, b: RelaySet) -> RelaySet:
    return tuple(sorted(set(a) & set(b)))


def is_subset(a: RelaySet, b: RelaySet) -> bool:
    return set(a) <= set(b)


def common_relays(labels) -> RelaySet:
    """Fold of intersections over a non-empty sequence of relay sets."""
    it = iter(labels)
    out = set(next(it))
    for lab in it:
        out &= set(lab)
    return tuple(sorted(out))


def format_relays(members: RelaySet) -> str:
    """Dash-joined text form, e.g. (1, 2, 3) -> "1-2-3"."""
    return "-".join(str(m) for m in members)


def parse_relays(text: str) -> RelaySet:
    """Parse the dash-joined form back into an ascending tuple."""
    try:
        members = tuple(int(p) for p in text.split("-"))
    except ValueError:
        raise ValueError(f"bad relay set {text!r}") from None
    if any(m <= 0 for m in members) or list(members) != sorted(set(members)):
        raise ValueError(f"relay ids must be strictly ascending positive integers: {text!r}")
    return members
