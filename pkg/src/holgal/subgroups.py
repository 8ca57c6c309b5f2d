"""Subgroup machinery over Hol(C_{p^e}).

Subgroups are canonical sorted tuples of (u, a) pairs inside one context.
Enumeration of the full subgroup lattice works bottom-up: seed with every
cyclic subgroup, then repeatedly attach a prime-order coset on top of a
normalized subgroup.  Every subgroup of the (solvable) holomorph sits above
a normal subgroup of prime index, so the sweep reaches everything.
"""

from __future__ import annotations

import os
import random
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Optional

from .holomorph import IDENTITY, HolElement, commute, element_order, inv, power, validate_element
from .residue import GroupContext

DEFAULT_MAX_ORDER = 512
MAX_ORDER_ENV = "HOLGAL_MAX_ORDER"


class CapacityError(RuntimeError):
    """|Hol| exceeds the configured enumeration bound."""


_max_order_override: Optional[int] = None


def set_max_order_override(value: Optional[int]) -> None:
    """Process-wide bound override, above the environment (used by CLI flags)."""
    global _max_order_override
    _max_order_override = value


def resolve_max_order(override: Optional[int] = None) -> int:
    """Enumeration bound: call argument > CLI override > HOLGAL_MAX_ORDER > 512."""
    if override is not None:
        return override
    if _max_order_override is not None:
        return _max_order_override
    env = os.environ.get(MAX_ORDER_ENV)
    if env:
        return int(env)
    return DEFAULT_MAX_ORDER


@dataclass(frozen=True)
class Subgroup:
    """A closed, sorted set of holomorph elements."""

    ctx: GroupContext
    elements: tuple[HolElement, ...]

    @cached_property
    def member_set(self) -> frozenset[HolElement]:
        return frozenset(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g: HolElement) -> bool:
        return g in self.member_set

    def __iter__(self):
        return iter(self.elements)

    def issubset(self, other: "Subgroup") -> bool:
        return self.member_set <= other.member_set


def _subgroup(ctx: GroupContext, members: Iterable[HolElement]) -> Subgroup:
    return Subgroup(ctx=ctx, elements=tuple(sorted(members)))


@lru_cache(maxsize=None)
def holomorph_group(ctx: GroupContext) -> Subgroup:
    """The full group Hol(C_{p^e}) of order n * |units|."""
    return _subgroup(ctx, ((u, a) for u in range(ctx.n) for a in ctx.units))


def trivial_subgroup(ctx: GroupContext) -> Subgroup:
    return Subgroup(ctx=ctx, elements=(IDENTITY,))


def closure(gens: Iterable[HolElement], ctx: GroupContext) -> Subgroup:
    """Least subgroup containing gens, by product saturation."""
    gens = sorted(set(gens))
    for g in gens:
        validate_element(g, ctx)
    n = ctx.n
    members = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = ((x[0] + g[0] * x[1]) % n, (x[1] * g[1]) % n)
            if y not in members:
                members.add(y)
                frontier.append(y)
    return _subgroup(ctx, members)


def _check_same_ctx(*groups: Subgroup) -> GroupContext:
    ctx = groups[0].ctx
    if any(g.ctx != ctx for g in groups):
        raise ValueError("subgroups live in different contexts")
    return ctx


def _prime_factors(m: int) -> tuple[int, ...]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return tuple(out)


@lru_cache(maxsize=None)
def _all_subgroup_sets(ctx: GroupContext) -> tuple[frozenset[HolElement], ...]:
    hol = holomorph_group(ctx).elements
    total = len(hol)
    n = ctx.n

    def fmul(g: HolElement, h: HolElement) -> HolElement:
        return (g[0] + h[0] * g[1]) % n, (g[1] * h[1]) % n

    inv_of = {g: inv(g, ctx) for g in hol}

    by_size: dict[int, set[frozenset[HolElement]]] = defaultdict(set)
    by_size[1].add(frozenset({IDENTITY}))
    for g in hol:
        cyc = {IDENTITY}
        x = g
        while x != IDENTITY:
            cyc.add(x)
            x = fmul(x, g)
        by_size[len(cyc)].add(frozenset(cyc))

    primes = _prime_factors(total)
    qth_power = {q: {g: power(g, q, ctx) for g in hol} for q in primes}
    for size in sorted(d for d in range(1, total + 1) if total % d == 0):
        for sub in list(by_size.get(size, ())):
            for q in primes:
                if (total // size) % q:
                    continue
                gq = qth_power[q]
                for g in hol:
                    if g in sub or gq[g] not in sub:
                        continue
                    gi = inv_of[g]
                    if any(fmul(fmul(g, s), gi) not in sub for s in sub):
                        continue
                    # g normalizes sub and has image of order exactly q in
                    # the quotient, so the union of q cosets is a subgroup.
                    bigger = set(sub)
                    x = g
                    for _ in range(1, q):
                        bigger.update(fmul(x, s) for s in sub)
                        x = fmul(x, g)
                    assert len(bigger) == size * q
                    by_size[size * q].add(frozenset(bigger))

    every = [s for bucket in by_size.values() for s in bucket]
    return tuple(sorted(every, key=lambda s: (len(s), sorted(s))))


@lru_cache(maxsize=None)
def _all_subgroups_cached(ctx: GroupContext) -> tuple[Subgroup, ...]:
    return tuple(_subgroup(ctx, s) for s in _all_subgroup_sets(ctx))


def all_subgroups(ctx: GroupContext, max_order: Optional[int] = None) -> tuple[Subgroup, ...]:
    """Every subgroup of Hol, each once, in canonical (order, elements) order."""
    bound = resolve_max_order(max_order)
    total = ctx.n * len(ctx.units)
    if total > bound:
        raise CapacityError(
            f"|Hol| = {total} for p={ctx.p}, e={ctx.e} exceeds the enumeration "
            f"bound {bound} (override with --max-order or {MAX_ORDER_ENV})"
        )
    return _all_subgroups_cached(ctx)


@lru_cache(maxsize=None)
def is_transitive(group: Subgroup) -> bool:
    """True iff the translation parts of the group cover all of Z/n."""
    return len({u for u, _ in group.elements}) == group.ctx.n


@lru_cache(maxsize=None)
def stabilizer(group: Subgroup) -> Subgroup:
    """Point stabilizer of 0: the elements with zero translation part."""
    return _subgroup(group.ctx, (g for g in group.elements if g[0] == 0))


def is_regular(group: Subgroup) -> bool:
    return is_transitive(group) and len(stabilizer(group)) == 1


@lru_cache(maxsize=None)
def translation_part(group: Subgroup) -> Subgroup:
    """Intersection with the translation subgroup: elements (u, 1)."""
    return _subgroup(group.ctx, (g for g in group.elements if g[1] == 1))


def _conjugate_set(group_elems: Iterable[HolElement], g: HolElement, ctx: GroupContext) -> frozenset[HolElement]:
    n = ctx.n
    u, a = g
    gi = inv(g, ctx)
    w, c = gi
    # g * s * g^-1 expanded once; cheaper than two mul calls per element
    return frozenset(
        ((u + v * a + w * (a * b % n)) % n, a * b * c % n) for v, b in group_elems
    )


@lru_cache(maxsize=None)
def core(big: Subgroup, sub: Subgroup) -> Subgroup:
    """Largest normal subgroup of big inside sub: meet of all conjugates."""
    ctx = _check_same_ctx(big, sub)
    if not sub.issubset(big):
        raise ValueError("core requires sub <= big")
    meet = set(sub.member_set)
    for g in big.elements:
        meet &= _conjugate_set(sub.elements, g, ctx)
        if len(meet) == 1:
            break
    return _subgroup(ctx, meet)


@lru_cache(maxsize=None)
def is_normal(big: Subgroup, sub: Subgroup) -> bool:
    ctx = _check_same_ctx(big, sub)
    if not sub.issubset(big):
        raise ValueError("is_normal requires sub <= big")
    members = sub.member_set
    return all(_conjugate_set(sub.elements, g, ctx) == members for g in big.elements)


@lru_cache(maxsize=None)
def _order_profile(group: Subgroup) -> tuple[int, ...]:
    return tuple(sorted(element_order(g, group.ctx) for g in group.elements))


@lru_cache(maxsize=None)
def are_conjugate(big: Subgroup, first: Subgroup, second: Subgroup) -> bool:
    """True iff some element of big conjugates first onto second."""
    ctx = _check_same_ctx(big, first, second)
    if not (first.issubset(big) and second.issubset(big)):
        raise ValueError("are_conjugate requires both subgroups inside big")
    if len(first) != len(second):
        return False
    if _order_profile(first) != _order_profile(second):
        return False
    target = second.member_set
    return any(_conjugate_set(first.elements, g, ctx) == target for g in big.elements)


@lru_cache(maxsize=None)
def center(group: Subgroup) -> Subgroup:
    ctx = group.ctx
    return _subgroup(
        ctx, (g for g in group.elements if all(commute(g, h, ctx) for h in group.elements))
    )


def centralizer(group: Subgroup, g: HolElement) -> Subgroup:
    ctx = group.ctx
    return _subgroup(ctx, (h for h in group.elements if commute(g, h, ctx)))


@lru_cache(maxsize=None)
def derived_subgroup(group: Subgroup) -> Subgroup:
    """Subgroup generated by all commutators (always inside the translations)."""
    ctx = group.ctx
    n = ctx.n
    shifts = {
        (u * (b - 1) - v * (a - 1)) % n
        for u, a in group.elements
        for v, b in group.elements
    }
    return closure([(w, 1) for w in shifts], ctx)


@lru_cache(maxsize=None)
def is_cyclic(group: Subgroup) -> bool:
    target = len(group)
    return any(element_order(g, group.ctx) == target for g in group.elements)


def hall_p_part(group: Subgroup) -> Subgroup:
    """Intersection with the unique Hall p-subgroup of Hol.

    For odd p that subgroup is {(u, a) : a = 1 mod p}; for p = 2 the whole
    holomorph is a 2-group, so the result is the group itself.
    """
    ctx = group.ctx
    if ctx.p == 2:
        return group
    return _subgroup(ctx, (g for g in group.elements if g[1] % ctx.p == 1))


# ---------------------------------------------------------------------------
# Abstract groups (Cayley tables) and isomorphism search


@dataclass(frozen=True)
class AbstractGroup:
    """Cayley table over 0..m-1 with identity 0 and a marked subgroup."""

    table: tuple[tuple[int, ...], ...]
    marked: frozenset[int] = frozenset({0})

    @property
    def size(self) -> int:
        return len(self.table)

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        orders = []
        for i in range(self.size):
            x, t = i, 1
            while x != 0:
                x = self.table[x][i]
                t += 1
            orders.append(t)
        return tuple(orders)

    @cached_property
    def center_set(self) -> frozenset[int]:
        m = self.size
        return frozenset(
            i for i in range(m) if all(self.table[i][j] == self.table[j][i] for j in range(m))
        )

    @cached_property
    def element_keys(self) -> tuple[tuple[int, bool, bool], ...]:
        """Per-element invariant (order, central, marked) used by iso search."""
        return tuple(
            (self.element_orders[i], i in self.center_set, i in self.marked)
            for i in range(self.size)
        )

    @cached_property
    def profile(self) -> tuple:
        """Isomorphism-invariant fingerprint of the (group, marked) pair."""
        return tuple(sorted(self.element_keys))

    def validate(self) -> None:
        """Check the table is a group law with identity 0 and closed marking."""
        m = self.size
        full = set(range(m))
        for i, row in enumerate(self.table):
            if len(row) != m:
                raise ValueError(f"row {i} has length {len(row)}, expected {m}")
            if set(row) != full:
                raise ValueError(f"row {i} is not a permutation")
        for j in range(m):
            if {self.table[i][j] for i in range(m)} != full:
                raise ValueError(f"column {j} is not a permutation")
            if self.table[0][j] != j or self.table[j][0] != j:
                raise ValueError("identity is not at index 0")
        if m <= 64:
            triples = ((i, j, k) for i in range(m) for j in range(m) for k in range(m))
        else:
            rng = random.Random(0)
            triples = ((rng.randrange(m), rng.randrange(m), rng.randrange(m)) for _ in range(512))
        for i, j, k in triples:
            if self.table[self.table[i][j]][k] != self.table[i][self.table[j][k]]:
                raise ValueError(f"associativity fails at {(i, j, k)}")
        for i in self.marked:
            for j in self.marked:
                if self.table[i][j] not in self.marked:
                    raise ValueError("marked subset is not closed")


@lru_cache(maxsize=None)
def _coset_structure(big: Subgroup, normal: Subgroup):
    """Reps (minimal per coset, ascending), element->coset map, Cayley table."""
    ctx = big.ctx
    n = ctx.n
    if not is_normal(big, normal):
        raise ValueError("quotient requires a normal subgroup")

    def fmul(g: HolElement, h: HolElement) -> HolElement:
        return (g[0] + h[0] * g[1]) % n, (g[1] * h[1]) % n

    to_coset: dict[HolElement, int] = {}
    reps: list[HolElement] = []
    for g in big.elements:  # ascending, so the first hit in a coset is its minimum
        if g in to_coset:
            continue
        idx = len(reps)
        reps.append(g)
        for c in normal.elements:
            to_coset[fmul(g, c)] = idx
    table = tuple(tuple(to_coset[fmul(a, b)] for b in reps) for a in reps)
    return tuple(reps), to_coset, table


def quotient(big: Subgroup, normal: Subgroup, marked_from: Optional[Subgroup] = None) -> AbstractGroup:
    """Quotient big/normal as a Cayley table; marked = image of marked_from."""
    if marked_from is None:
        marked_from = normal
    _check_same_ctx(big, normal, marked_from)
    if not normal.issubset(marked_from) or not marked_from.issubset(big):
        raise ValueError("marked subgroup must sit between the normal subgroup and big")
    _, to_coset, table = _coset_structure(big, normal)
    marked = frozenset(to_coset[h] for h in marked_from.elements)
    return AbstractGroup(table=table, marked=marked)


def quotient_cosets(big: Subgroup, normal: Subgroup) -> tuple[HolElement, ...]:
    """Coset representatives in table order (minimal element of each coset)."""
    reps, _, _ = _coset_structure(big, normal)
    return reps


def _generating_sequence(group: AbstractGroup) -> list[int]:
    """Greedy generators: highest order first, smallest index on ties."""
    m = group.size
    orders = group.element_orders
    span = {0}
    gens: list[int] = []
    while len(span) < m:
        best = max((i for i in range(m) if i not in span), key=lambda i: (orders[i], -i))
        gens.append(best)
        queue = [best]
        while queue:
            x = queue.pop()
            if x in span:
                continue
            span.add(x)
            for s in list(span):
                queue.append(group.table[x][s])
                queue.append(group.table[s][x])
    return gens


def find_isomorphism(first: AbstractGroup, second: AbstractGroup) -> Optional[tuple[int, ...]]:
    """An isomorphism first -> second carrying marked onto marked, or None.

    Backtracks over images of a greedy generating sequence; candidate images
    must share the (order, central, marked) key, and every partial map is
    propagated through the tables so conflicts surface early.
    """
    m = first.size
    if m != second.size:
        return None
    key_a, key_b = first.element_keys, second.element_keys
    if sorted(key_a) != sorted(key_b):
        return None
    buckets: dict[tuple, list[int]] = defaultdict(list)
    for j in range(m):
        buckets[key_b[j]].append(j)
    table_a, table_b = first.table, second.table
    gens = _generating_sequence(first)

    def extend(fmap: dict, rmap: dict, gen: int, img: int):
        fmap, rmap = dict(fmap), dict(rmap)
        queue = [(gen, img)]
        while queue:
            a, b = queue.pop()
            known = fmap.get(a)
            if known is not None:
                if known != b:
                    return None
                continue
            if b in rmap or key_a[a] != key_b[b]:
                return None
            fmap[a] = b
            rmap[b] = a
            for x, y in list(fmap.items()):
                queue.append((table_a[a][x], table_b[b][y]))
                queue.append((table_a[x][a], table_b[y][b]))
        return fmap, rmap

    def search(depth: int, fmap: dict, rmap: dict):
        if len(fmap) == m:
            return fmap
        gen = gens[depth]
        if gen in fmap:
            return search(depth + 1, fmap, rmap)
        for img in buckets[key_a[gen]]:
            if img in rmap:
                continue
            extended = extend(fmap, rmap, gen, img)
            if extended is None:
                continue
            found = search(depth + 1, *extended)
            if found is not None:
                return found
        return None

    fmap = search(0, {0: 0}, {0: 0})
    if fmap is None:
        return None
    return tuple(fmap[i] for i in range(m))
