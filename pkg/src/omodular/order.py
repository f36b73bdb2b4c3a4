"""Finite posets and join semilattices.

Elements are addressed by index (declaration order) and carry a name.
Relations are kept as dense boolean tables plus per-element bitmasks:
``down[i]`` has bit ``j`` set iff ``j <= i`` and ``up[i]`` has bit ``j``
set iff ``i <= j``.  Sets of elements are exposed as ``frozenset`` of
indices; internally most routines work on bitmasks.
"""
from __future__ import annotations

import itertools
import math
import re
from typing import Iterable, Optional, Sequence

from .errors import (
    BadParameter,
    CycleDetected,
    DuplicateElement,
    EmptySet,
    EmptyStructure,
    IndexOutOfRange,
    NotAJoinSemilattice,
    NotJoinClosed,
    ParseError,
    SizeLimitExceeded,
    StructureError,
    UnknownBuiltin,
    UnknownElement,
)

MAX_CANONICAL_SIZE = 10

_NAME_RE = re.compile(r"^[^\s<#:]+$")


def bits(mask: int):
    """Yield set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def transitive_closure(n: int, pairs: Iterable[tuple[int, int]]) -> list[list[bool]]:
    """Reflexive-transitive closure of ``pairs`` as an n x n table."""
    up = [1 << i for i in range(n)]
    for lo, hi in pairs:
        up[lo] |= 1 << hi
    for k in range(n):
        bk = 1 << k
        for i in range(n):
            if up[i] & bk:
                up[i] |= up[k]
    return [[bool(up[i] >> j & 1) for j in range(n)] for i in range(n)]


def transitive_reduction(leq: Sequence[Sequence[bool]]) -> list[tuple[int, int]]:
    """Cover pairs ``(lower, upper)`` of a partial order, sorted."""
    n = len(leq)
    covers = []
    for i in range(n):
        for j in range(n):
            if i == j or not leq[i][j]:
                continue
            if not any(leq[i][k] and leq[k][j] for k in range(n) if k != i and k != j):
                covers.append((i, j))
    return covers


class Poset:
    """Immutable finite partial order over named elements."""

    def __init__(self, names: Sequence[str], leq: Sequence[Sequence[bool]]):
        names = tuple(names)
        n = len(names)
        if n == 0:
            raise EmptyStructure("structure has no elements")
        if len(set(names)) != n:
            dup = next(x for x in names if names.count(x) > 1)
            raise DuplicateElement(f"duplicate element {dup!r}")
        if len(leq) != n or any(len(row) != n for row in leq):
            raise StructureError("order table has wrong shape")
        self.names = names
        self.n = n
        self.leq = tuple(tuple(bool(v) for v in row) for row in leq)
        self.down = tuple(
            sum(1 << i for i in range(n) if self.leq[i][j]) for j in range(n)
        )
        self.up = tuple(
            sum(1 << j for j in range(n) if self.leq[i][j]) for i in range(n)
        )
        self._index = {name: i for i, name in enumerate(names)}
        self._check_order()

    def _check_order(self):
        n = self.n
        for i in range(n):
            if not self.leq[i][i]:
                raise StructureError(f"order is not reflexive at {self.names[i]!r}")
        for i in range(n):
            for j in range(i + 1, n):
                if self.leq[i][j] and self.leq[j][i]:
                    raise CycleDetected(
                        f"{self.names[i]!r} and {self.names[j]!r} lie on a cycle"
                    )
        for i in range(n):
            for j in bits(self.up[i]):
                if self.up[j] & ~self.up[i]:
                    raise StructureError("order is not transitive")

    @classmethod
    def from_covers(cls, names: Sequence[str], covers: Iterable[tuple[int, int]]):
        names = tuple(names)
        return cls(names, transitive_closure(len(names), covers))

    def __repr__(self):
        return f"{type(self).__name__}({' '.join(self.names)})"

    def __eq__(self, other):
        return type(self) is type(other) and self.names == other.names and self.leq == other.leq

    def __hash__(self):
        return hash((self.names, self.leq))

    def __len__(self):
        return self.n

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownElement(f"unknown element {name!r}") from None

    def lt(self, i: int, j: int) -> bool:
        return i != j and self.leq[i][j]

    def incomparable(self, i: int, j: int) -> bool:
        return not self.leq[i][j] and not self.leq[j][i]

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges as ``(lower, upper)`` index pairs, sorted."""
        out = []
        for i in range(self.n):
            above = self.up[i] & ~(1 << i)
            for j in bits(above):
                between = above & self.down[j] & ~(1 << j)
                if not between:
                    out.append((i, j))
        return out

    def names_of(self, indices: Iterable[int]) -> list[str]:
        return [self.names[i] for i in sorted(indices)]

    def _check_indices(self, indices):
        for i in indices:
            if not isinstance(i, int) or not 0 <= i < self.n:
                raise IndexOutOfRange(f"element index {i!r} out of range 0..{self.n - 1}")

    def lower_mask(self, ymask: int, xmask: Optional[int] = None) -> int:
        m = self.all_mask if xmask is None else xmask
        for y in bits(ymask):
            m &= self.down[y]
        return m

    def upper_mask(self, ymask: int, xmask: Optional[int] = None) -> int:
        m = self.all_mask if xmask is None else xmask
        for y in bits(ymask):
            m &= self.up[y]
        return m


class JoinSemilattice(Poset):
    """A poset in which every pair has a least upper bound.

    ``join[i][j]`` is precomputed at construction.
    """

    def __init__(self, names: Sequence[str], leq: Sequence[Sequence[bool]]):
        super().__init__(names, leq)
        n = self.n
        join = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                ub = self.up[i] & self.up[j]
                lub = next((k for k in bits(ub) if self.up[k] & ub == ub), None)
                if lub is None:
                    a, b = self.names[i], self.names[j]
                    why = "no upper bound" if not ub else "no least upper bound"
                    raise NotAJoinSemilattice(f"pair ({a}, {b}) has {why}", pair=(a, b))
                join[i][j] = join[j][i] = lub
        self.join = tuple(tuple(row) for row in join)
        self.top = next(k for k in range(n) if self.down[k] == self.all_mask)

    @classmethod
    def from_poset(cls, poset: Poset) -> "JoinSemilattice":
        return cls(poset.names, poset.leq)

    def join_mask(self, mask: int) -> int:
        it = bits(mask)
        acc = next(it)
        for i in it:
            acc = self.join[acc][i]
        return acc

    def bottom(self) -> Optional[int]:
        return next((k for k in range(self.n) if self.up[k] == self.all_mask), None)

    def induced(self, members: Iterable[int]) -> "JoinSemilattice":
        """Sub join semilattice on a join-closed subset, in index order."""
        idx = sorted(set(members))
        if not is_join_closed(self, idx):
            raise NotJoinClosed(f"{self.names_of(idx)} is not closed under join")
        return JoinSemilattice(
            [self.names[i] for i in idx],
            [[self.leq[i][j] for j in idx] for i in idx],
        )


# -- bound operators -------------------------------------------------------


def lower_bounds(P: Poset, X: Iterable[int], Y: Iterable[int]) -> frozenset:
    """Elements of X lying below every element of Y."""
    X, Y = list(X), list(Y)
    P._check_indices(X)
    P._check_indices(Y)
    return frozenset(bits(P.lower_mask(to_mask(Y), to_mask(X))))


def upper_bounds(P: Poset, X: Iterable[int], Y: Iterable[int]) -> frozenset:
    """Elements of X lying above every element of Y."""
    X, Y = list(X), list(Y)
    P._check_indices(X)
    P._check_indices(Y)
    return frozenset(bits(P.upper_mask(to_mask(Y), to_mask(X))))


def join_of_set(S: JoinSemilattice, Y: Iterable[int]) -> int:
    Y = sorted(set(Y))
    if not Y:
        raise EmptySet("join of the empty set is undefined here")
    S._check_indices(Y)
    return S.join_mask(to_mask(Y))


def is_join_closed(S: JoinSemilattice, T: Iterable[int]) -> bool:
    T = list(T)
    tm = to_mask(T)
    return all(tm >> S.join[t][u] & 1 for t in T for u in T)


# -- isomorphism -----------------------------------------------------------


def _heights(P: Poset) -> list[int]:
    order = sorted(range(P.n), key=lambda i: bin(P.down[i]).count("1"))
    h = [0] * P.n
    for i in order:
        below = P.down[i] & ~(1 << i)
        h[i] = max((h[j] + 1 for j in bits(below)), default=0)
    return h


def _depths(P: Poset) -> list[int]:
    order = sorted(range(P.n), key=lambda i: bin(P.up[i]).count("1"))
    d = [0] * P.n
    for i in order:
        above = P.up[i] & ~(1 << i)
        d[i] = max((d[j] + 1 for j in bits(above)), default=0)
    return d


def _element_invariants(P: Poset) -> list[tuple]:
    lower = [0] * P.n
    upper = [0] * P.n
    for lo, hi in P.covers():
        upper[lo] += 1
        lower[hi] += 1
    h = _heights(P)
    d = _depths(P)
    return [
        (
            bin(P.down[i]).count("1"),
            bin(P.up[i]).count("1"),
            lower[i],
            upper[i],
            h[i],
            d[i],
        )
        for i in range(P.n)
    ]


def is_isomorphic(P: Poset, Q: Poset) -> Optional[tuple[int, ...]]:
    """Order isomorphism P -> Q as a tuple ``f`` with ``f[i]`` the image of i.

    For join semilattices an order isomorphism preserves joins, so this
    doubles as a join-isomorphism test.  Returns None if none exists.
    """
    if P.n != Q.n:
        return None
    inv_p = _element_invariants(P)
    inv_q = _element_invariants(Q)
    if sorted(inv_p) != sorted(inv_q):
        return None
    n = P.n
    order = sorted(range(n), key=lambda i: (inv_p[i][0], i))
    cands = {i: [j for j in range(n) if inv_q[j] == inv_p[i]] for i in range(n)}
    f = [-1] * n
    used = [False] * n

    def extend(k):
        if k == n:
            return True
        i = order[k]
        for j in cands[i]:
            if used[j]:
                continue
            ok = True
            for kk in range(k):
                i2 = order[kk]
                j2 = f[i2]
                if P.leq[i][i2] != Q.leq[j][j2] or P.leq[i2][i] != Q.leq[j2][j]:
                    ok = False
                    break
            if ok:
                f[i] = j
                used[j] = True
                if extend(k + 1):
                    return True
                used[j] = False
        f[i] = -1
        return False

    return tuple(f) if extend(0) else None


# -- canonical form --------------------------------------------------------


def _refined_ranks(P: Poset) -> list[int]:
    """Iterated colour refinement; ranks are isomorphism-invariant."""
    n = P.n
    sig = _element_invariants(P)
    ranks = _rank(sig)
    while True:
        sig = [
            (
                ranks[i],
                tuple(sorted(ranks[j] for j in bits(P.down[i] & ~(1 << i)))),
                tuple(sorted(ranks[j] for j in bits(P.up[i] & ~(1 << i)))),
            )
            for i in range(n)
        ]
        new = _rank(sig)
        if len(set(new)) == len(set(ranks)):
            return new
        ranks = new


def _rank(sig):
    keys = sorted(set(sig))
    pos = {k: r for r, k in enumerate(keys)}
    return [pos[s] for s in sig]


def _multiset_perms(counts: list[int]):
    """Distinct sequences using group g exactly counts[g] times."""
    total = sum(counts)
    seq = []

    def rec():
        if len(seq) == total:
            yield tuple(seq)
            return
        for g, c in enumerate(counts):
            if c:
                counts[g] -= 1
                seq.append(g)
                yield from rec()
                seq.pop()
                counts[g] += 1

    yield from rec()


def _class_arrangements(P: Poset, members: list[int]):
    """Element orders of one colour class, up to swapping twins.

    Twins (incomparable elements with identical strict down- and up-sets)
    are exchanged by an automorphism, so their relative order never
    changes the resulting matrix.
    """
    groups: dict[tuple[int, int], list[int]] = {}
    for i in members:
        key = (P.down[i] & ~(1 << i), P.up[i] & ~(1 << i))
        groups.setdefault(key, []).append(i)
    glist = list(groups.values())
    for seq in _multiset_perms([len(g) for g in glist]):
        ptr = [0] * len(glist)
        out = []
        for g in seq:
            out.append(glist[g][ptr[g]])
            ptr[g] += 1
        yield out


def canonical_form(S: Poset, max_n: int = MAX_CANONICAL_SIZE) -> str:
    """Isomorphism-class key: a row-major 0/1 string of the order table.

    Elements are first sorted into refined invariant classes; the result is
    the lexicographically least string over all orderings that respect the
    class order.
    """
    if S.n > max_n:
        raise SizeLimitExceeded(f"canonical form limited to n <= {max_n}, got {S.n}")
    ranks = _refined_ranks(S)
    classes = [
        [i for i in range(S.n) if ranks[i] == r] for r in sorted(set(ranks))
    ]
    rows = [["1" if v else "0" for v in row] for row in S.leq]
    best = None
    for parts in itertools.product(*(list(_class_arrangements(S, c)) for c in classes)):
        perm = [i for part in parts for i in part]
        s = "".join(rows[i][j] for i in perm for j in perm)
        if best is None or s < best:
            best = s
    return best


def from_canonical(code: str, names: Optional[Sequence[str]] = None) -> JoinSemilattice:
    n = math.isqrt(len(code))
    if n == 0 or n * n != len(code) or set(code) - {"0", "1"}:
        raise ParseError(f"not a canonical order string: {code!r}")
    if names is None:
        names = [f"e{i}" for i in range(n)]
    leq = [[code[i * n + j] == "1" for j in range(n)] for i in range(n)]
    return JoinSemilattice(names, leq)


# -- builtins --------------------------------------------------------------

BUILTIN_NAMES = ("m2", "m4", "m3", "chain:k", "antichain-top:k")


def builtin(name: str) -> JoinSemilattice:
    """Named structures: m2, m4, m3, chain:k, antichain-top:k."""
    if name == "m2":
        names = ["a", "c", "top", "b"]
        covers = [("a", "c"), ("c", "top"), ("b", "top")]
    elif name == "m4":
        names = ["v", "a", "c", "top", "b"]
        covers = [("v", "a"), ("a", "c"), ("c", "top"), ("v", "b"), ("b", "top")]
    elif name == "m3":
        names = ["bot", "x", "y", "z", "top"]
        covers = [("bot", a) for a in "xyz"] + [(a, "top") for a in "xyz"]
    elif name.startswith("chain:") or name.startswith("antichain-top:"):
        kind, _, arg = name.partition(":")
        try:
            k = int(arg)
        except ValueError:
            raise BadParameter(f"bad size in {name!r}") from None
        if k < 1:
            raise BadParameter(f"size must be >= 1 in {name!r}")
        if kind == "chain":
            names = [f"c{i}" for i in range(k)]
            covers = [(names[i], names[i + 1]) for i in range(k - 1)]
        else:
            names = [f"a{i}" for i in range(1, k + 1)] + ["top"]
            covers = [(a, "top") for a in names[:-1]]
    else:
        raise UnknownBuiltin(f"unknown builtin {name!r} (known: {', '.join(BUILTIN_NAMES)})")
    pos = {x: i for i, x in enumerate(names)}
    return JoinSemilattice.from_poset(
        Poset.from_covers(names, [(pos[a], pos[b]) for a, b in covers])
    )


# -- text format -----------------------------------------------------------


def parse_structure(text: str) -> JoinSemilattice:
    """Parse the ``elements:`` / ``covers:`` text format."""
    names = None
    names_line = None
    covers = []
    in_covers = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, rest = line.partition(":")
        if sep and head.strip() in ("elements", "covers"):
            directive = head.strip()
            if directive == "elements":
                if names is not None:
                    raise ParseError("repeated 'elements:' directive", lineno)
                names = rest.split()
                names_line = lineno
                for x in names:
                    if not _NAME_RE.match(x):
                        raise ParseError(f"invalid element name {x!r}", lineno)
                seen = set()
                for x in names:
                    if x in seen:
                        raise DuplicateElement(f"duplicate element {x!r}", lineno)
                    seen.add(x)
                in_covers = False
            else:
                if names is None:
                    raise ParseError("'covers:' before 'elements:'", lineno)
                if in_covers:
                    raise ParseError("repeated 'covers:' directive", lineno)
                if rest.strip() not in ("", "(none)"):
                    raise ParseError("unexpected text after 'covers:'", lineno)
                in_covers = True
            continue
        if sep:
            raise ParseError(f"unknown directive {head.strip()!r}", lineno)
        if not in_covers:
            raise ParseError(f"unexpected line {line!r}", lineno)
        parts = [p.strip() for p in line.split("<")]
        if len(parts) != 2 or not all(parts):
            raise ParseError(f"cover line must read 'lower < upper': {line!r}", lineno)
        lo, hi = parts
        for x in (lo, hi):
            if x not in names:
                raise UnknownElement(f"cover names undeclared element {x!r}", lineno)
        covers.append((names.index(lo), names.index(hi)))
    if names is None:
        raise ParseError("missing 'elements:' directive")
    if not names:
        raise EmptyStructure("structure has no elements", names_line)
    leq = transitive_closure(len(names), covers)
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            if leq[i][j] and leq[j][i]:
                raise CycleDetected(f"covers form a cycle through {names[i]!r} and {names[j]!r}")
    for i in range(len(names)):
        if (i, i) in covers:
            raise CycleDetected(f"element {names[i]!r} is declared below itself")
    return JoinSemilattice(names, leq)


def format_structure(P: Poset, comment: Optional[str] = None) -> str:
    lines = []
    if comment:
        lines += [f"# {c}" for c in comment.splitlines()]
    lines.append("elements: " + " ".join(P.names))
    lines.append("covers:")
    lines += [f"{P.names[lo]} < {P.names[hi]}" for lo, hi in P.covers()]
    return "\n".join(lines) + "\n"


def load_structure(source: str) -> JoinSemilattice:
    """Read a structure file, or build a builtin when no such file exists."""
    import os

    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            return parse_structure(fh.read())
    try:
        return builtin(source)
    except (UnknownBuiltin, BadParameter):
        raise FileNotFoundError(source) from None


def to_dot(P: Poset, highlight: Iterable[int] = ()) -> str:
    """Hasse diagram in DOT, edges lower -> upper, drawn bottom to top."""
    marked = set(highlight)
    out = ["digraph hasse {", "  rankdir=BT;", "  node [shape=circle];"]
    for i, name in enumerate(P.names):
        style = ' [style=filled, fillcolor="#ffd27f", penwidth=2]' if i in marked else ""
        out.append(f'  "{name}"{style};')
    for lo, hi in P.covers():
        out.append(f'  "{P.names[lo]}" -> "{P.names[hi]}";')
    out.append("}")
    return "\n".join(out) + "\n"
