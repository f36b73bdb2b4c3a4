"""O-modularity: decision procedure, witnesses and the modular-law cross-check.

A join semilattice S is o-modular when, for all a, b, c with c <= a,

    L(a, b v c)  is a subset of  L(U(L(a, b) + {c}))

where L and U are the lower- and upper-bound operators over all of S.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import InvalidWitness, NotALattice
from .order import JoinSemilattice, bits


@dataclass(frozen=True)
class OModWitness:
    """Failure of the defining inclusion, with ``c <= a``.

    ``x`` lies in L(a, b v c) and ``y`` is an upper bound of
    L(a, b) + {c} with ``x`` not below it.
    """

    a: int
    b: int
    c: int
    x: int
    y: int

    def named(self, S: JoinSemilattice) -> dict:
        return {k: S.names[getattr(self, k)] for k in "abcxy"}

    def render(self, S: JoinSemilattice) -> str:
        d = self.named(S)
        return "witness(def): " + " ".join(f"{k}={d[k]}" for k in "abcxy")


@dataclass(frozen=True)
class ProofLabeling:
    """The same five elements renamed so that ``a < c`` (a and c swapped)."""

    a: int
    b: int
    c: int
    x: int
    y: int

    def named(self, S: JoinSemilattice) -> dict:
        return {k: S.names[getattr(self, k)] for k in "abcxy"}

    def render(self, S: JoinSemilattice) -> str:
        d = self.named(S)
        return "witness(proof): " + " ".join(f"{k}={d[k]}" for k in "abcxy")

    def facts(self, S: JoinSemilattice) -> list[tuple[str, str, bool]]:
        """Conditions (i)-(vi) and the derived facts (vii)-(ix)."""
        a, b, c, x, y = self.a, self.b, self.c, self.x, self.y
        leq = S.leq
        ab = S.join[a][b]
        lbc = S.down[b] & S.down[c]
        return [
            ("(i)", "a < c", S.lt(a, c)),
            ("(ii)", "x <= c", leq[x][c]),
            ("(iii)", "x <= a v b", leq[x][ab]),
            ("(iv)", "every z <= b, z <= c has z <= y", lbc & ~S.down[y] == 0),
            ("(v)", "a <= y", leq[a][y]),
            ("(vi)", "x not<= y", not leq[x][y]),
            ("(vii)", "x not<= a", not leq[x][a]),
            ("(viii)", "a || b", S.incomparable(a, b)),
            ("(ix)", "b not<= c", not leq[b][c]),
        ]


def check_omodular(S: JoinSemilattice) -> Optional[OModWitness]:
    """Return None if S is o-modular, else the least failing witness.

    Triples (a, b, c) with c <= a are scanned in lexicographic index order;
    within the first failing triple the least x and then the least y are
    reported.
    """
    n = S.n
    down, up, join, leq = S.down, S.up, S.join, S.leq
    full = S.all_mask
    for a in range(n):
        for b in range(n):
            lab = down[a] & down[b]
            for c in range(n):
                if not leq[c][a]:
                    continue
                left = down[a] & down[join[b][c]]
                ub = up[c]
                for t in bits(lab):
                    ub &= up[t]
                right = full
                for u in bits(ub):
                    right &= down[u]
                missing = left & ~right
                if missing:
                    x = next(bits(missing))
                    y = next(u for u in bits(ub) if not leq[x][u])
                    return OModWitness(a, b, c, x, y)
    return None


def is_omodular(S: JoinSemilattice) -> bool:
    return check_omodular(S) is None


def verify_witness(S: JoinSemilattice, w: OModWitness) -> bool:
    """Check every witness condition directly from the order relation."""
    n = S.n
    vals = (w.a, w.b, w.c, w.x, w.y)
    if not all(isinstance(v, int) and 0 <= v < n for v in vals):
        return False
    a, b, c, x, y = vals
    leq = S.leq
    if not leq[c][a]:
        return False
    bc = S.join[b][c]
    if not (leq[x][a] and leq[x][bc]):
        return False
    if not leq[c][y]:
        return False
    if any(leq[z][a] and leq[z][b] and not leq[z][y] for z in range(n)):
        return False
    return not leq[x][y]


def to_proof_labels(w: OModWitness, S: Optional[JoinSemilattice] = None) -> ProofLabeling:
    """Swap a and c so the labeling reads ``a < c``.

    With ``S`` given, the proof conditions and derived facts are checked
    and InvalidWitness names the first one that fails.
    """
    if w.a == w.c:
        raise InvalidWitness("witness has a = c; the inclusion always holds then")
    pl = ProofLabeling(a=w.c, b=w.b, c=w.a, x=w.x, y=w.y)
    if S is not None:
        for fid, statement, ok in pl.facts(S):
            if not ok:
                raise InvalidWitness(f"proof fact {fid} fails: {statement}")
    return pl


def meet(S: JoinSemilattice, i: int, j: int) -> Optional[int]:
    """Greatest lower bound of i and j, or None when it does not exist."""
    lb = S.down[i] & S.down[j]
    for k in bits(lb):
        if S.down[k] & lb == lb:
            return k
    return None


def is_lattice(S: JoinSemilattice) -> bool:
    return all(meet(S, i, j) is not None for i in range(S.n) for j in range(i + 1, S.n))


def modular_law_check(S: JoinSemilattice) -> Optional[tuple[int, int, int]]:
    """First (a, b, c) with c <= a and a ^ (b v c) != (a ^ b) v c, else None."""
    n = S.n
    mt = [[meet(S, i, j) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if mt[i][j] is None:
                raise NotALattice(f"{S.names[i]} and {S.names[j]} have no greatest lower bound")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if not S.leq[c][a]:
                    continue
                if mt[a][S.join[b][c]] != S.join[mt[a][b]][c]:
                    return (a, b, c)
    return None
