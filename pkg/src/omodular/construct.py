"""From a non-o-modularity witness to an embedded M2 or M4.

Starting at a witness in proof labels (a < c, x <= c, x <= a v b, a <= y,
x not<= y, every common lower bound of b and c below y):

* T2 = {a, b, a v x, a v b} is always a copy of M2;
* if b and c have a common lower bound v, T4 = {v, a v v, x v a v v, b, a v b}
  is a semi-strong copy of M4;
* with w the join of all common lower bounds of b and x v a v v,
  T5 = {w, a v w, x v a v v, b, a v b} is an LU-strong copy of M4.

Every inequality the construction relies on is checked as it is used; a
failed check raises FactViolation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import FactViolation
from .omod import OModWitness, ProofLabeling, check_omodular, to_proof_labels, verify_witness
from .order import JoinSemilattice, bits, builtin, is_isomorphic, is_join_closed
from .substructure import EmbeddedSub, make_embedding, match_template


@dataclass(frozen=True)
class Fact:
    id: str
    statement: str
    ok: bool


class _Recorder:
    def __init__(self, facts=None):
        self.facts = [] if facts is None else facts

    def check(self, fid, statement, ok):
        self.facts.append(Fact(fid, statement, bool(ok)))
        if not ok:
            raise FactViolation(fid, statement)


@dataclass
class ConstructionTrace:
    witness: OModWitness
    labels: ProofLabeling
    t2: EmbeddedSub
    lbc: frozenset
    v: Optional[int] = None
    t4: Optional[EmbeddedSub] = None
    nset: Optional[frozenset] = None
    w: Optional[int] = None
    t5: Optional[EmbeddedSub] = None
    facts: list = field(default_factory=list)

    @property
    def branch(self) -> str:
        return "M2" if not self.lbc else "M4"

    @property
    def terminal(self) -> EmbeddedSub:
        return self.t2 if self.t5 is None else self.t5

    def all_pass(self) -> bool:
        return all(f.ok for f in self.facts)

    def to_dict(self, S: JoinSemilattice) -> dict:
        name = lambda i: None if i is None else S.names[i]
        sub = lambda t: None if t is None else t.to_dict(S)
        return {
            "witness": {"definition": self.witness.named(S), "proof": self.labels.named(S)},
            "branch": self.branch,
            "t2": sub(self.t2),
            "lbc": S.names_of(self.lbc),
            "v": name(self.v),
            "t4": sub(self.t4),
            "nset": None if self.nset is None else S.names_of(self.nset),
            "w": name(self.w),
            "t5": sub(self.t5),
            "facts": [
                {"id": f.id, "statement": f.statement, "ok": f.ok} for f in self.facts
            ],
        }

    def render(self, S: JoinSemilattice) -> str:
        out = [self.witness.render(S), self.labels.render(S)]
        iw = max(len(f.id) for f in self.facts)
        sw = max(len(f.statement) for f in self.facts)
        for f in self.facts:
            out.append(f"  {f.id:<{iw}}  {f.statement:<{sw}}  {'PASS' if f.ok else 'FAIL'}")
        out.append("T2: " + self.t2.render(S))
        out.append("L(b,c) = {" + ",".join(S.names_of(self.lbc)) + "}")
        if self.branch == "M2":
            out.append("branch M2: L(b,c) is empty, T2 is a semi-strong M2")
        else:
            out.append(f"v = {S.names[self.v]}")
            out.append("T4: " + self.t4.render(S))
            out.append("N = {" + ",".join(S.names_of(self.nset)) + f"}}, join N = {S.names[self.w]}")
            out.append("T5: " + self.t5.render(S))
            out.append("branch M4: T5 is an lu-strong M4")
        return "\n".join(out)


def _nm(S, i):
    return S.names[i]


def _check_template(S, rec, fid, members, template, roles):
    closed = is_join_closed(S, members)
    iso = closed and is_isomorphic(S.induced(members), builtin(template.lower())) is not None
    rec.check(
        fid,
        f"{{{','.join(S.names_of(members))}}} is a sub join semilattice isomorphic to {template}",
        iso and match_template(S, members, template) == roles,
    )


def _t2(S: JoinSemilattice, pl: ProofLabeling, rec: _Recorder) -> EmbeddedSub:
    a, b, x = pl.a, pl.b, pl.x
    ax = S.join[a][x]
    ab = S.join[a][b]
    n = lambda i: _nm(S, i)
    rec.check("T2.1", f"a < a v x  [{n(a)} < {n(ax)}]", S.lt(a, ax))
    rec.check("T2.2", f"a v x < a v b  [{n(ax)} < {n(ab)}]", S.lt(ax, ab))
    rec.check("T2.3", f"b < a v b  [{n(b)} < {n(ab)}]", S.lt(b, ab))
    rec.check("T2.4", f"a || b  [{n(a)} || {n(b)}]", S.incomparable(a, b))
    rec.check("T2.5", f"a v x || b  [{n(ax)} || {n(b)}]", S.incomparable(ax, b))
    roles = {"a": a, "c": ax, "b": b, "top": ab}
    _check_template(S, rec, "T2.6", [a, ax, b, ab], "M2", roles)
    return make_embedding(S, "M2", roles)


def _t4(S: JoinSemilattice, pl: ProofLabeling, v: int, rec: _Recorder) -> EmbeddedSub:
    a, b, c, x, y = pl.a, pl.b, pl.c, pl.x, pl.y
    leq = S.leq
    n = lambda i: _nm(S, i)
    rec.check("(x)", f"v <= b  [{n(v)} <= {n(b)}]", leq[v][b])
    rec.check("(xi)", f"v <= c  [{n(v)} <= {n(c)}]", leq[v][c])
    av = S.join[a][v]
    xav = S.join[x][av]
    ab = S.join[a][b]
    rec.check("(xii)", f"v < b  [{n(v)} < {n(b)}]", S.lt(v, b))
    rec.check("(xiii)", f"v <= y  [{n(v)} <= {n(y)}]", leq[v][y])
    rec.check("(xiv)", f"v < a v v  [{n(v)} < {n(av)}]", S.lt(v, av))
    rec.check("(xv)", f"a v v < x v a v v  [{n(av)} < {n(xav)}]", S.lt(av, xav))
    rec.check("(xvi)", f"x v a v v < a v b  [{n(xav)} < {n(ab)}]", S.lt(xav, ab))
    rec.check("(xvii)", f"a v v || b  [{n(av)} || {n(b)}]", S.incomparable(av, b))
    rec.check("(xviii)", f"x v a v v || b  [{n(xav)} || {n(b)}]", S.incomparable(xav, b))
    roles = {"v": v, "a": av, "c": xav, "b": b, "top": ab}
    _check_template(S, rec, "T4.1", [v, av, xav, b, ab], "M4", roles)
    t4 = make_embedding(S, "M4", roles)
    rec.check("T4.2", "T4 is semi-strong", t4.semi_strong)
    return t4


def _t5(S: JoinSemilattice, pl: ProofLabeling, v: int, rec: _Recorder, pre=True):
    a, b, c, x, y = pl.a, pl.b, pl.c, pl.x, pl.y
    leq = S.leq
    n = lambda i: _nm(S, i)
    if pre:
        rec.check("(x)", f"v <= b  [{n(v)} <= {n(b)}]", leq[v][b])
        rec.check("(xi)", f"v <= c  [{n(v)} <= {n(c)}]", leq[v][c])
    xav = S.join[x][S.join[a][v]]
    ab = S.join[a][b]
    nmask = S.down[b] & S.down[xav]
    w = S.join_mask(nmask)
    aw = S.join[a][w]
    rec.check("C1.1", f"join N <= b  [{n(w)} <= {n(b)}]", leq[w][b])
    rec.check("C1.2", f"join N <= x v a v v  [{n(w)} <= {n(xav)}]", leq[w][xav])
    rec.check("C1.3", f"join N <= c  [{n(w)} <= {n(c)}]", leq[w][c])
    rec.check("C1.4", f"join N <= y  [{n(w)} <= {n(y)}]", leq[w][y])
    rec.check("C1.5", f"join N < b  [{n(w)} < {n(b)}]", S.lt(w, b))
    rec.check("C1.6", f"join N < a v join N  [{n(w)} < {n(aw)}]", S.lt(w, aw))
    rec.check("C1.7", f"a v join N < x v a v v  [{n(aw)} < {n(xav)}]", S.lt(aw, xav))
    rec.check("C1.8", f"b || a v join N  [{n(b)} || {n(aw)}]", S.incomparable(b, aw))
    rec.check("C1.9", f"x v a v v < a v b  [{n(xav)} < {n(ab)}]", S.lt(xav, ab))
    rec.check("C1.10", f"x v a v v || b  [{n(xav)} || {n(b)}]", S.incomparable(xav, b))
    below = all(leq[z][w] for z in bits(nmask))
    rec.check("C1.11", "every z <= b, z <= x v a v v has z <= join N", below)
    roles = {"v": w, "a": aw, "c": xav, "b": b, "top": ab}
    _check_template(S, rec, "T5.1", [w, aw, xav, b, ab], "M4", roles)
    t5 = make_embedding(S, "M4", roles)
    rec.check("T5.2", "T5 is lu-strong", t5.strong_lu)
    return t5, frozenset(bits(nmask)), w


def build_t2(S: JoinSemilattice, pl: ProofLabeling) -> EmbeddedSub:
    return _t2(S, pl, _Recorder())


def build_t4(S: JoinSemilattice, pl: ProofLabeling, v: int) -> EmbeddedSub:
    return _t4(S, pl, v, _Recorder())


def build_t5(S: JoinSemilattice, pl: ProofLabeling, v: int) -> EmbeddedSub:
    return _t5(S, pl, v, _Recorder())[0]


def run_pipeline(S: JoinSemilattice) -> Optional[ConstructionTrace]:
    """None for an o-modular S, otherwise the full construction trace."""
    w = check_omodular(S)
    if w is None:
        return None
    rec = _Recorder()
    rec.check("W", "witness satisfies the defining conditions", verify_witness(S, w))
    pl = to_proof_labels(w)
    for fid, statement, ok in pl.facts(S):
        rec.check(fid, statement, ok)
    t2 = _t2(S, pl, rec)
    lbc = S.down[pl.b] & S.down[pl.c]
    rec.check("T2.7", "T2 is semi-strong exactly when L(b,c) is empty", t2.semi_strong == (not lbc))
    trace = ConstructionTrace(w, pl, t2, frozenset(bits(lbc)), facts=rec.facts)
    if not lbc:
        return trace
    v = next(bits(lbc))
    trace.v = v
    trace.t4 = _t4(S, pl, v, rec)
    trace.t5, trace.nset, trace.w = _t5(S, pl, v, rec, pre=False)
    return trace
