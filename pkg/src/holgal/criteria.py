"""Closed-form predicates deciding embeddability from structural statistics.

No search happens here: every decision reads off sizes, normality and
element orders of the pair (G, H).  The oracle module answers the same
question by exhaustive search; the two are cross-validated in the test and
verify suites.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .holomorph import HolElement, element_order
from .residue import GroupContext, padic_valuation
from .subgroups import (
    Subgroup,
    all_subgroups,
    are_conjugate,
    center,
    centralizer,
    closure,
    core,
    derived_subgroup,
    is_cyclic,
    is_normal,
    is_transitive,
    quotient,
    stabilizer,
    translation_part,
)
from .oracle import admits_transitive_embedding

CASE_ADMITS = "ADMITS"
CASE_I = "CASE_I"
CASE_II = "CASE_II"
CASE_III = "CASE_III"
CASE_IV = "CASE_IV"
CASE_ODD_NOT_CONJUGATE = "ODD_NOT_CONJUGATE"

ALL_CASES = (CASE_ADMITS, CASE_I, CASE_II, CASE_III, CASE_IV, CASE_ODD_NOT_CONJUGATE)


@lru_cache(maxsize=None)
def has_full_order_element(group: Subgroup) -> bool:
    """True iff the subgroup contains an element of order n = p^e."""
    n = group.ctx.n
    return any(element_order(g, group.ctx) == n for g in group.elements)


def _check_pair(big: Subgroup, sub: Subgroup) -> GroupContext:
    ctx = big.ctx
    if sub.ctx != ctx:
        raise ValueError("pair lives in different contexts")
    if not sub.issubset(big):
        raise ValueError("H must be a subgroup of G")
    if not is_transitive(big):
        raise ValueError("G must be transitive")
    if len(sub) * ctx.n != len(big):
        raise ValueError(f"H must have index {ctx.n} in G")
    return ctx


def odd_predicate(big: Subgroup, sub: Subgroup) -> bool:
    """Embeddability for odd p: H must be conjugate to the stabilizer in G."""
    ctx = _check_pair(big, sub)
    if ctx.p == 2:
        raise ValueError("odd_predicate requires an odd prime")
    return are_conjugate(big, sub, stabilizer(big))


def even_predicate(big: Subgroup, sub: Subgroup) -> tuple[bool, str]:
    """Embeddability for p = 2, with the failure case that fired.

    Failure cases, keyed on |H meet translations| and checked in order:
      I    the meet has size >= 4
      II   size 2 and G has no element of order 2^e
      III  size 2 and H is not normal in G
      IV   size 1, H generated by an odd-shift point reflection, |G| = 2^(e+1),
           stabilizer = <(0, 1 + 2^(e-1))>, and the translation meet of G is
           large (>= 8, or = 4 with derived subgroup of size 4)
    """
    ctx = _check_pair(big, sub)
    if ctx.p != 2:
        raise ValueError("even_predicate requires p = 2")
    meet = len(translation_part(sub))
    if meet >= 4:
        return False, CASE_I
    if meet == 2:
        if not has_full_order_element(big):
            return False, CASE_II
        if not is_normal(big, sub):
            return False, CASE_III
        return True, CASE_ADMITS
    if _fires_case_iv(big, sub, ctx):
        return False, CASE_IV
    return True, CASE_ADMITS


def _fires_case_iv(big: Subgroup, sub: Subgroup, ctx: GroupContext) -> bool:
    n = ctx.n
    if len(sub) != 2:
        return False
    u, a = sub.elements[1]  # the non-identity element; identity sorts first
    if a != n - 1 or u % 2 == 0:
        return False
    if len(big) != 2 * n:
        return False
    half_unit = (1 + n // 2) % n
    if stabilizer(big).member_set != frozenset({(0, 1), (0, half_unit)}):
        return False
    big_meet = len(translation_part(big))
    if big_meet >= 8:
        return True
    return big_meet == 4 and len(derived_subgroup(big)) == 4


@dataclass(frozen=True)
class DichotomyDescriptor:
    """Shape of a transitive 2-group G: s, full-order flag, predicted branch."""

    s: int
    has_full_order: bool
    branch: str  # "a" (all pairs admit), "b" (a normal witness fails), "irrelevant"
    witness: Optional[Subgroup] = None


def dichotomy_case(big: Subgroup) -> DichotomyDescriptor:
    """Classify a transitive subgroup for p = 2 by (s, full-order element).

    Branch "a" predicts every index-2^e subgroup admits; branch "b" carries
    the witness <translation by 2^(e-s)> that must fail; regular groups
    (s = 0) are out of scope since their only index-2^e subgroup is trivial.
    """
    ctx = big.ctx
    if ctx.p != 2:
        raise ValueError("dichotomy_case requires p = 2")
    if not is_transitive(big):
        raise ValueError("dichotomy_case requires a transitive subgroup")
    s = len(big).bit_length() - 1 - ctx.e
    full = has_full_order_element(big)
    if s == 0:
        return DichotomyDescriptor(s=s, has_full_order=full, branch="irrelevant")
    if s == 1 and full:
        return DichotomyDescriptor(s=s, has_full_order=full, branch="a")
    witness = closure([(2 ** (ctx.e - s) % ctx.n, 1)], ctx)
    return DichotomyDescriptor(s=s, has_full_order=full, branch="b", witness=witness)


@dataclass(frozen=True)
class StructuralStats:
    """Structural measurements of one transitive 2-group, for the property suite."""

    center_order: int
    derived_order: int
    center_cyclic: bool
    central_half_translation: bool  # translation by n/2 lies in the center
    has_full_order: bool
    congruence_mod4: bool  # b - 1 = 2v mod 4 for every (v, b) in G
    stab_in_square_units: bool  # every stabilizer multiplier is 1 mod 4
    order4_central_witness: Optional[bool]  # (n/4, 1 + n/2) central; None if full order
    half_unit_centralizer: Optional[int]  # |C_G((0, 1 + n/2))| when that element is in G
    reflection_centralizers: tuple[tuple[HolElement, int], ...]


def structural_probes(big: Subgroup) -> StructuralStats:
    """Center, derived subgroup, centralizer sizes and congruence flags."""
    ctx = big.ctx
    if ctx.p != 2:
        raise ValueError("structural_probes requires p = 2")
    if not is_transitive(big):
        raise ValueError("structural_probes requires a transitive subgroup")
    n = ctx.n
    z = center(big)
    derived = derived_subgroup(big)
    full = has_full_order_element(big)
    half = n // 2
    half_unit = (1 + half) % n

    order4_witness = None
    if not full and ctx.e >= 2:
        order4_witness = (n // 4, half_unit) in z.member_set

    half_unit_centralizer = None
    if (0, half_unit) in big.member_set:
        half_unit_centralizer = len(centralizer(big, (0, half_unit)))

    reflections = tuple(
        (g, len(centralizer(big, g)))
        for g in big.elements
        if g[1] == n - 1 and g[0] % 2 == 1
    )

    return StructuralStats(
        center_order=len(z),
        derived_order=len(derived),
        center_cyclic=is_cyclic(z),
        central_half_translation=(half % n, 1) in z.member_set,
        has_full_order=full,
        congruence_mod4=all((b - 1 - 2 * v) % 4 == 0 for v, b in big.elements),
        stab_in_square_units=all(a % 4 == 1 for _, a in stabilizer(big).elements),
        order4_central_witness=order4_witness,
        half_unit_centralizer=half_unit_centralizer,
        reflection_centralizers=reflections,
    )


@dataclass(frozen=True)
class Verdict:
    """One classified (G, H) pair: statistics, both answers, fired case."""

    p: int
    e: int
    g_index: int
    h_index: int
    g_order: int
    h_order: int
    h_cap_n: int
    g_cap_n: int
    z_order: int
    derived_order: int
    s: int
    has_full_order_elem: bool
    h_normal: bool
    h_conj_stab: bool
    case: str
    oracle: Optional[bool]
    criteria: bool
    agree: Optional[bool]

    def record(self) -> dict:
        """Flat emission record (the JSON-lines / CSV row)."""
        return {
            "p": self.p,
            "e": self.e,
            "g_index": self.g_index,
            "h_index": self.h_index,
            "g_order": self.g_order,
            "h_order": self.h_order,
            "h_cap_n": self.h_cap_n,
            "g_cap_n": self.g_cap_n,
            "s": self.s,
            "has_full_order_elem": self.has_full_order_elem,
            "h_normal": self.h_normal,
            "h_conj_stab": self.h_conj_stab,
            "case": self.case,
            "oracle": self.oracle,
            "criteria": self.criteria,
            "agree": self.agree,
        }


RECORD_COLUMNS = (
    "p", "e", "g_index", "h_index", "g_order", "h_order", "h_cap_n", "g_cap_n",
    "s", "has_full_order_elem", "h_normal", "h_conj_stab", "case", "oracle",
    "criteria", "agree",
)


def classify_pair(
    ctx: GroupContext,
    g_index: int,
    big: Subgroup,
    h_index: int,
    sub: Subgroup,
    run_oracle: bool = True,
) -> Verdict:
    """Build the full verdict for one (G, H) pair."""
    if ctx.p == 2:
        crit, case = even_predicate(big, sub)
    else:
        crit = odd_predicate(big, sub)
        case = CASE_ADMITS if crit else CASE_ODD_NOT_CONJUGATE
    oracle_answer: Optional[bool] = None
    if run_oracle:
        nucleus = core(big, sub)
        pair = quotient(big, nucleus, sub)
        oracle_answer = admits_transitive_embedding(pair, ctx)
    return Verdict(
        p=ctx.p,
        e=ctx.e,
        g_index=g_index,
        h_index=h_index,
        g_order=len(big),
        h_order=len(sub),
        h_cap_n=len(translation_part(sub)),
        g_cap_n=len(translation_part(big)),
        z_order=len(center(big)),
        derived_order=len(derived_subgroup(big)),
        s=int(padic_valuation(len(big), ctx.p)) - ctx.e,
        has_full_order_elem=has_full_order_element(big),
        h_normal=is_normal(big, sub),
        h_conj_stab=are_conjugate(big, sub, stabilizer(big)),
        case=case,
        oracle=oracle_answer,
        criteria=crit,
        agree=None if oracle_answer is None else oracle_answer == crit,
    )


def transitive_pairs(
    ctx: GroupContext, max_order: Optional[int] = None
) -> list[tuple[int, Subgroup, int, Subgroup]]:
    """All (g_index, G, h_index, H) with G transitive and [G : H] = n."""
    subs = all_subgroups(ctx, max_order)
    out = []
    for gi, big in enumerate(subs):
        if not is_transitive(big):
            continue
        h_order = len(big) // ctx.n
        for hi, sub in enumerate(subs):
            if len(sub.elements) == h_order and sub.member_set <= big.member_set:
                out.append((gi, big, hi, sub))
    return out
