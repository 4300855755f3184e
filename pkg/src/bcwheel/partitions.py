"""Partition combinatorics for the hyperoctahedral setting.

Partitions are tuples of weakly decreasing nonnegative ints, padded with
zeros to the ambient number of variables where a fixed length matters.
Orbits are taken under signed permutations (permute coordinates, flip
signs independently), so a monomial orbit sum is indexed by the partition
of absolute values of any of its exponent vectors.
"""
from __future__ import annotations

import itertools


def is_partition(seq) -> bool:
    prev = None
    for v in seq:
        if not isinstance(v, int) or v < 0:
            return False
        if prev is not None and v > prev:
            return False
        prev = v
    return True


def pad(lam, n: int) -> tuple[int, ...]:
    lam = tuple(lam)
    if len(lam) > n:
        if any(lam[n:]):
            raise ValueError(f"partition {lam} has more than {n} nonzero parts")
        return lam[:n]
    return lam + (0,) * (n - len(lam))


def weight(lam) -> int:
    return sum(lam)


def dominance_leq(mu, lam) -> bool:
    """Partial-sum order: every prefix sum of mu is at most that of lam.

    Weights need not agree; this is the containment order for the
    triangular expansion of orbit sums.
    """
    n = max(len(mu), len(lam))
    mu = pad(mu, n)
    lam = pad(lam, n)
    s_mu = 0
    s_lam = 0
    for a, b in zip(mu, lam):
        s_mu += a
        s_lam += b
        if s_mu > s_lam:
            return False
    return True


def partitions_in_box(n: int, max_part: int):
    """Yield all partitions with at most n parts, each at most max_part,
    padded to length n, in descending lexicographic order."""
    def rec(prefix, remaining, bound):
        if remaining == 0:
            yield prefix
            return
        for part in range(bound, -1, -1):
            yield from rec(prefix + (part,), remaining - 1, part)
    yield from rec((), n, max_part)


def lower_cone(lam, n: int) -> tuple[tuple[int, ...], ...]:
    """Partitions below lam in the partial-sum order, padded to n parts.

    Sorted by (weight, lexicographic) descending, which is a linear
    extension of the order; lam itself comes first.
    """
    lam = pad(lam, n)
    w = weight(lam)
    found = [
        mu
        for mu in partitions_in_box(n, lam[0] if lam else 0)
        if weight(mu) <= w and dominance_leq(mu, lam)
    ]
    found.sort(key=lambda mu: (weight(mu), mu), reverse=True)
    if found[0] != lam:
        raise AssertionError("cone must start at its top element")
    return tuple(found)


def orbit_exponents(mu, n: int) -> tuple[tuple[int, ...], ...]:
    """Distinct exponent vectors in the signed-permutation orbit of mu."""
    mu = pad(mu, n)
    out = set()
    for perm in set(itertools.permutations(mu)):
        choices = [(e, -e) if e else (0,) for e in perm]
        out.update(itertools.product(*choices))
    return tuple(sorted(out))


def orbit_size(mu, n: int) -> int:
    return len(orbit_exponents(mu, n))


def is_admissible(lam, n: int, k: int, r: int) -> bool:
    """True when every window of k+1 consecutive parts drops by at least r,
    i.e. lam_i - lam_{i+k} >= r for 1 <= i <= n-k."""
    lam = pad(lam, n)
    return all(lam[i] - lam[i + k] >= r for i in range(n - k))


def enumerate_admissible(n: int, k: int, r: int, max_part: int) -> tuple[tuple[int, ...], ...]:
    return tuple(
        lam for lam in partitions_in_box(n, max_part) if is_admissible(lam, n, k, r)
    )


def is_resonance_wide(lam, n: int, k: int, r: int) -> bool:
    """Gap condition making the specialized polynomial manifestly finite:
    every step of k+1 drops by more than 2*floor(n/(k+1))*(r-1)."""
    lam = pad(lam, n)
    bound = 2 * (n // (k + 1)) * (r - 1)
    return all(lam[i] - lam[i + k + 1] > bound for i in range(n - k - 1))


def wheel_sequences(k: int, r: int) -> tuple[tuple[int, ...], ...]:
    """Nonnegative k-tuples with sum at most r-1, the step patterns of the
    wheel substitutions."""
    out = []
    def rec(prefix, left):
        if len(prefix) == k:
            out.append(prefix)
            return
        for s in range(left + 1):
            rec(prefix + (s,), left - s)
    rec((), r - 1)
    return tuple(out)
