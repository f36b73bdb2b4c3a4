"""Embedded copies of M2 and M4 and their strength flags.

For a sub join semilattice T of S and p, q in T:

* semi-strong: L_T(p, q) empty implies L_S(p, q) empty;
* strict-strong: L_S(p, q) is contained in L_T(p, q);
* LU-strong: every z in L_S(p, q) lies below every upper bound in S of
  L_T(p, q).  When L_T(p, q) is empty this degenerates, so the pair is
  required to have no ambient lower bound at all (the semi-strong rule).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .errors import NotJoinClosed
from .order import JoinSemilattice, bits, is_join_closed, to_mask

# roles in report order, and the strict order between roles
TEMPLATES = {
    "M2": {
        "roles": ("a", "c", "b", "top"),
        "lt": {("a", "c"), ("a", "top"), ("c", "top"), ("b", "top")},
    },
    "M4": {
        "roles": ("v", "a", "c", "b", "top"),
        "lt": {
            ("v", "a"), ("v", "c"), ("v", "b"), ("v", "top"),
            ("a", "c"), ("a", "top"), ("c", "top"), ("b", "top"),
        },
    },
}


@dataclass(frozen=True)
class EmbeddedSub:
    members: frozenset
    template: str
    roles: dict = field(hash=False)
    semi_strong: bool
    strong_strict: bool
    strong_lu: bool

    def is_strong(self, strength: str) -> bool:
        if strength == "strict":
            return self.strong_strict
        if strength == "lu":
            return self.strong_lu
        raise ValueError(f"unknown strength {strength!r}")

    def role_names(self, S: JoinSemilattice) -> dict:
        return {r: S.names[self.roles[r]] for r in TEMPLATES[self.template]["roles"]}

    def render(self, S: JoinSemilattice) -> str:
        yn = lambda f: "Y" if f else "N"
        rn = self.role_names(S)
        members = ",".join(S.names_of(self.members))
        roles = " ".join(f"{r}={n}" for r, n in rn.items())
        return (
            f"{self.template} {{{members}}} roles[{roles}] "
            f"semi-strong={yn(self.semi_strong)} strict-strong={yn(self.strong_strict)} "
            f"lu-strong={yn(self.strong_lu)}"
        )

    def to_dict(self, S: JoinSemilattice) -> dict:
        return {
            "template": self.template,
            "members": S.names_of(self.members),
            "roles": self.role_names(S),
            "semi_strong": self.semi_strong,
            "strong_strict": self.strong_strict,
            "strong_lu": self.strong_lu,
        }


def _strength_flags(S: JoinSemilattice, tmask: int) -> tuple[bool, bool, bool]:
    semi = strict = lu = True
    members = list(bits(tmask))
    for i, p in enumerate(members):
        for q in members[i:]:
            ls = S.down[p] & S.down[q]
            lt = ls & tmask
            if not lt:
                if ls:
                    semi = strict = lu = False
                continue
            if ls & ~lt:
                strict = False
            if lu:
                ub = S.upper_mask(lt)
                if ls & ~S.lower_mask(ub):
                    lu = False
    return semi, strict, lu


def classify_strength(S: JoinSemilattice, T: Iterable[int]) -> tuple[bool, bool, bool]:
    """(semi_strong, strong_strict, strong_lu) for a sub join semilattice."""
    T = sorted(set(T))
    if not T or not is_join_closed(S, T):
        raise NotJoinClosed(f"{S.names_of(T)} is not closed under join")
    return _strength_flags(S, to_mask(T))


def match_template(S: JoinSemilattice, members: Iterable[int], template: str):
    """Least role map (in role order) realising ``template`` on ``members``."""
    tmpl = TEMPLATES[template]
    roles = tmpl["roles"]
    lt = tmpl["lt"]
    members = sorted(members)
    if len(members) != len(roles):
        return None
    for perm in itertools.permutations(members):
        ok = True
        for (r1, e1), (r2, e2) in itertools.permutations(zip(roles, perm), 2):
            if S.leq[e1][e2] != ((r1, r2) in lt):
                ok = False
                break
        if ok:
            return dict(zip(roles, perm))
    return None


def _incomparable_pairs(S, subset):
    return sum(1 for p, q in itertools.combinations(subset, 2) if S.incomparable(p, q))


def _find(S: JoinSemilattice, template: str) -> list[EmbeddedSub]:
    k = len(TEMPLATES[template]["roles"])
    hits = []
    for subset in itertools.combinations(range(S.n), k):
        # both templates have exactly two incomparable pairs
        if _incomparable_pairs(S, subset) != 2:
            continue
        if not is_join_closed(S, subset):
            continue
        roles = match_template(S, subset, template)
        if roles is None:
            continue
        semi, strict, lu = _strength_flags(S, to_mask(subset))
        hits.append(EmbeddedSub(frozenset(subset), template, roles, semi, strict, lu))
    return hits


def find_m2(S: JoinSemilattice) -> list[EmbeddedSub]:
    return _find(S, "M2")


def find_m4(S: JoinSemilattice) -> list[EmbeddedSub]:
    return _find(S, "M4")


def make_embedding(S: JoinSemilattice, template: str, roles: dict) -> EmbeddedSub:
    """EmbeddedSub from an explicit role map; the map must realise the template."""
    tmpl = TEMPLATES[template]
    members = [roles[r] for r in tmpl["roles"]]
    if len(set(members)) != len(members):
        raise ValueError(f"roles collapse: {roles}")
    if match_template(S, members, template) != dict(roles):
        raise ValueError(f"{S.names_of(members)} is not ordered like {template}")
    semi, strict, lu = classify_strength(S, members)
    return EmbeddedSub(frozenset(members), template, dict(roles), semi, strict, lu)
