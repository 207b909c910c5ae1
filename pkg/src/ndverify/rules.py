"""The fourteen inference schemata, split into independent phases.

* :func:`syntax_check` matches formula shapes using only a node and its
  parents' formulae.
* :func:`assumption_check` confirms every discharged formula is present in
  the relevant parent's assumption set.
* :func:`compute_assumptions` produces the node's own assumption set.

Premises are unordered, so the syntax phase searches over assignments of
parent ids to schema roles (at most 3! of them).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .formula import And, Formula, Iff, Implies, Not, Or
from .proofgraph import ARITY, Rule

__all__ = [
    "AssumptionSet",
    "RoleAssignment",
    "ROLES",
    "syntax_candidates",
    "syntax_check",
    "assumption_check",
    "compute_assumptions",
    "discharges",
]

AssumptionSet = frozenset  # of NodeId, each naming an Assume node

ROLES: dict[Rule, tuple[str, ...]] = {
    Rule.ASSUME: (),
    Rule.AND_INTRO: ("left", "right"),
    Rule.AND_ELIM_LEFT: ("conjunction",),
    Rule.AND_ELIM_RIGHT: ("conjunction",),
    Rule.OR_INTRO_LEFT: ("premise",),
    Rule.OR_INTRO_RIGHT: ("premise",),
    Rule.OR_ELIM: ("disjunction", "left_case", "right_case"),
    Rule.IMP_INTRO: ("consequent",),
    Rule.IMP_ELIM: ("antecedent", "implication"),
    # For the negation rules the discharging parent may be either member of
    # the contradictory pair; see _negation_pair.
    Rule.NOT_INTRO: ("discharging", "contrary"),
    Rule.NOT_ELIM: ("discharging", "contrary"),
    Rule.IFF_INTRO: ("forward", "backward"),
    Rule.IFF_ELIM_LEFT: ("premise", "biconditional"),
    Rule.IFF_ELIM_RIGHT: ("premise", "biconditional"),
}


@dataclass(frozen=True)
class RoleAssignment:
    """Parent ids bound to schema roles plus the bound meta-variables."""

    rule: Rule
    roles: Mapping[str, int] = field(default_factory=dict)
    bindings: Mapping[str, Formula] = field(default_factory=dict)

    def __getitem__(self, role: str) -> int:
        return self.roles[role]


def _negation_pair(a: Formula, b: Formula) -> bool:
    return (isinstance(b, Not) and b.child == a) or (
        isinstance(a, Not) and a.child == b
    )


def _match(rule: Rule, c: Formula, f: tuple[Formula, ...]) -> dict[str, Formula] | None:
    """Bindings if parent formulae ``f`` (in role order) fit the schema."""
    if rule is Rule.ASSUME:
        return {"phi": c}
    if rule is Rule.AND_INTRO:
        if isinstance(c, And) and f[0] == c.left and f[1] == c.right:
            return {"phi": c.left, "psi": c.right}
    elif rule is Rule.AND_ELIM_LEFT:
        if isinstance(f[0], And) and f[0].left == c:
            return {"phi": f[0].left, "psi": f[0].right}
    elif rule is Rule.AND_ELIM_RIGHT:
        if isinstance(f[0], And) and f[0].right == c:
            return {"phi": f[0].left, "psi": f[0].right}
    elif rule is Rule.OR_INTRO_LEFT:
        if isinstance(c, Or) and c.right == f[0]:
            return {"phi": c.right, "psi": c.left}
    elif rule is Rule.OR_INTRO_RIGHT:
        if isinstance(c, Or) and c.left == f[0]:
            return {"phi": c.left, "psi": c.right}
    elif rule is Rule.OR_ELIM:
        if isinstance(f[0], Or) and f[1] == c and f[2] == c:
            return {"psi": f[0].left, "phi": f[0].right, "chi": c}
    elif rule is Rule.IMP_INTRO:
        if isinstance(c, Implies) and c.right == f[0]:
            return {"phi": c.left, "psi": c.right}
    elif rule is Rule.IMP_ELIM:
        if isinstance(f[1], Implies) and f[1].left == f[0] and f[1].right == c:
            return {"phi": f[0], "psi": c}
    elif rule is Rule.NOT_INTRO:
        if isinstance(c, Not) and _negation_pair(f[0], f[1]):
            return {"phi": c.child, "psi": f[0]}
    elif rule is Rule.NOT_ELIM:
        if _negation_pair(f[0], f[1]):
            return {"phi": c, "psi": f[0]}
    elif rule is Rule.IFF_INTRO:
        if isinstance(c, Iff) and f[0] == c.right and f[1] == c.left:
            return {"phi": c.left, "psi": c.right}
    elif rule is Rule.IFF_ELIM_LEFT:
        if isinstance(f[1], Iff) and f[1].left == f[0] and f[1].right == c:
            return {"phi": f[0], "psi": c}
    elif rule is Rule.IFF_ELIM_RIGHT:
        if isinstance(f[1], Iff) and f[1].right == f[0] and f[1].left == c:
            return {"phi": c, "psi": f[0]}
    return None


def syntax_candidates(
    rule: Rule, conclusion: Formula, parent_formulas: Mapping[int, Formula]
) -> list[RoleAssignment]:
    """Every role assignment under which the shapes match.

    Ordered lexicographically by the tuple of ids in role order, so the
    first entry is the lowest-id assignment.
    """
    if len(parent_formulas) != ARITY[rule]:
        return []
    names = ROLES[rule]
    out = []
    for perm in itertools.permutations(sorted(parent_formulas)):
        bindings = _match(rule, conclusion, tuple(parent_formulas[i] for i in perm))
        if bindings is not None:
            out.append(RoleAssignment(rule, dict(zip(names, perm)), bindings))
    return out


def syntax_check(
    rule: Rule, conclusion: Formula, parent_formulas: Mapping[int, Formula]
) -> RoleAssignment | None:
    candidates = syntax_candidates(rule, conclusion, parent_formulas)
    return candidates[0] if candidates else None


def discharges(rule: Rule, roles: RoleAssignment, conclusion: Formula) -> list[tuple[int, Formula]]:
    """(parent id, formula) pairs the schema discharges from that parent."""
    b = roles.bindings
    if rule is Rule.OR_ELIM:
        return [(roles["left_case"], b["psi"]), (roles["right_case"], b["phi"])]
    if rule is Rule.IMP_INTRO:
        return [(roles["consequent"], b["phi"])]
    if rule is Rule.NOT_INTRO:
        return [(roles["discharging"], b["phi"])]
    if rule is Rule.NOT_ELIM:
        return [(roles["discharging"], Not(b["phi"]))]
    if rule is Rule.IFF_INTRO:
        return [(roles["forward"], b["phi"]), (roles["backward"], b["psi"])]
    return []


def _present(
    aset: frozenset[int], target: Formula, assume_formula_of: Callable[[int], Formula]
) -> bool:
    return any(assume_formula_of(a) == target for a in aset)


def assumption_check(
    rule: Rule,
    roles: RoleAssignment,
    conclusion: Formula,
    parent_assumptions: Mapping[int, frozenset[int]],
    assume_formula_of: Callable[[int], Formula],
) -> bool:
    """True iff every formula the schema discharges is actually assumed."""
    return all(
        _present(parent_assumptions[p], target, assume_formula_of)
        for p, target in discharges(rule, roles, conclusion)
    )


def compute_assumptions(
    rule: Rule,
    roles: RoleAssignment,
    self_id: int,
    conclusion: Formula,
    parent_assumptions: Mapping[int, frozenset[int]],
    assume_formula_of: Callable[[int], Formula],
) -> frozenset[int]:
    if rule is Rule.ASSUME:
        return frozenset((self_id,))
    removed: dict[int, Formula] = {}
    for p, target in discharges(rule, roles, conclusion):
        removed[p] = target
    sets = []
    for p in roles.roles.values():
        aset = parent_assumptions[p]
        target = removed.get(p)
        if target is not None:
            # every id whose formula matches goes, not just one
            aset = frozenset(a for a in aset if assume_formula_of(a) != target)
        sets.append(aset)
    if len(sets) == 1:
        return sets[0]
    return frozenset().union(*sets)
