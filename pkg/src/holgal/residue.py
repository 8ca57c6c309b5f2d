"""Exact arithmetic mod p^e: p-adic valuations, geometric sums, unit orders.

Valuations come in two flavours: `padic_valuation` takes any big integer
(this is what test oracles feed), while `capped_valuation` works on residues
mod p^e and reports e for "at least e" (all a residue can tell you).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

INFINITY = math.inf  # valuation of 0; compares greater than every int

Valuation = int | float


@lru_cache(maxsize=None)
def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class GroupContext:
    """Ambient parameters for the cyclic group of order n = p^e."""

    p: int
    e: int
    n: int
    units: tuple[int, ...]  # residues coprime to p, sorted ascending

    @cached_property
    def unit_set(self) -> frozenset[int]:
        return frozenset(self.units)

    def __repr__(self) -> str:
        return f"GroupContext(p={self.p}, e={self.e})"


@lru_cache(maxsize=None)
def make_context(p: int, e: int) -> GroupContext:
    """Build the context for modulus p^e, validating p prime and e >= 1."""
    if not _is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if e < 1:
        raise ValueError(f"e must be >= 1, got {e}")
    n = p**e
    units = tuple(a for a in range(1, n) if a % p != 0)
    return GroupContext(p=p, e=e, n=n, units=units)


def padic_valuation(m: int, p: int) -> Valuation:
    """Exact exponent of p in m (arbitrary precision); INFINITY for m = 0."""
    if not _is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if m == 0:
        return INFINITY
    m = abs(m)
    v = 0
    while m % p == 0:
        v += 1
        m //= p
    return v


def capped_valuation(u: int, ctx: GroupContext) -> int:
    """Valuation of the residue u mod p^e, capped at e (e means "at least e")."""
    u %= ctx.n
    if u == 0:
        return ctx.e
    v = 0
    while u % ctx.p == 0:
        v += 1
        u //= ctx.p
    return v


def geometric_sum(a: int, k: int, ctx: GroupContext) -> int:
    """(1 + a + ... + a^(k-1)) mod p^e in O(log k) steps.

    Uses the doubling recurrences sum(2m) = sum(m) * (1 + a^m) and
    sum(m+1) = sum(m) + a^m, so a - 1 never needs to be inverted.
    """
    if math.gcd(a, ctx.p) != 1:
        raise ValueError(f"a = {a} is not coprime to p = {ctx.p}")
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    n = ctx.n
    a %= n
    total, apow = 0, 1  # invariant: total = sum(t), apow = a^t for the prefix t of k
    for bit in bin(k)[2:]:
        total = (total * (1 + apow)) % n
        apow = (apow * apow) % n
        if bit == "1":
            total = (total + apow) % n
            apow = (apow * a) % n
    return total


def geometric_sum_valuation(a: int, k: int, p: int) -> Valuation:
    """Closed-form valuation of the exact integer 1 + a + ... + a^(k-1).

    Requires a = 1 mod p.  For odd p this is v_p(k); for p = 2 an extra
    v_2((a+1)/2) appears when a = 3 mod 4 and k is even.
    """
    if not _is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if a % p != 1 % p:
        raise ValueError(f"a = {a} is not 1 mod {p}; closed form does not apply")
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if p != 2 or a % 4 == 1 or k % 2 == 1:
        return padic_valuation(k, p)
    return padic_valuation(k, 2) + padic_valuation((a + 1) // 2, 2)


def unit_order(a: int, ctx: GroupContext) -> int:
    """Multiplicative order of the unit a mod p^e."""
    a %= ctx.n
    if a not in ctx.unit_set:
        raise ValueError(f"a = {a} is not a unit mod {ctx.n}")
    x, t = a, 1
    while x != 1:
        x = (x * a) % ctx.n
        t += 1
    return t
