"""Independent brute-force oracles.

Nothing here uses the bitmask machinery, the canonical form or the
extension generator from the package; relations are rebuilt from plain
``leq`` tables and sets.
"""
import itertools

import numpy as np


def leq_table(S):
    return [list(row) for row in S.leq]


# -- o-modularity straight from the definition ------------------------------


def omodular_by_definition(leq):
    n = len(leq)
    E = range(n)

    def L(Y):
        return {x for x in E if all(leq[x][y] for y in Y)}

    def U(Y):
        return {x for x in E if all(leq[y][x] for y in Y)}

    def join(p, q):
        ub = U({p, q})
        return next(u for u in ub if all(leq[u][w] for w in ub))

    for a in E:
        for b in E:
            for c in E:
                if leq[c][a] and not L({a, join(b, c)}) <= L(U(L({a, b}) | {c})):
                    return False
    return True


def has_proof_quintuple(leq):
    """Search directly for a, b, c, x, y meeting the proof-side conditions."""
    n = len(leq)
    E = range(n)

    def join(p, q):
        ub = [u for u in E if leq[p][u] and leq[q][u]]
        return next(u for u in ub if all(leq[u][w] for w in ub))

    for a, b, c in itertools.product(E, repeat=3):
        if a == c or not leq[a][c]:
            continue
        lbc = [z for z in E if leq[z][b] and leq[z][c]]
        ab = join(a, b)
        for x in E:
            if not (leq[x][c] and leq[x][ab]):
                continue
            for y in E:
                if leq[a][y] and not leq[x][y] and all(leq[z][y] for z in lbc):
                    return True
    return False


# -- posets and join semilattices from natural labelings --------------------


def natural_posets(n):
    """All posets on 0..n-1 where i < j in the order implies i < j as ints.

    Element k picks its set of strict predecessors among 0..k-1; the set
    must be down-closed.  Every finite poset has such a labeling.
    """
    def rec(k, below):
        if k == n:
            yield [
                [i == j or i in below[j] for j in range(n)] for i in range(n)
            ]
            return
        for r in range(k + 1):
            for pred in itertools.combinations(range(k), r):
                ps = set(pred)
                if all(below[p] <= ps for p in ps):
                    yield from rec(k + 1, below + [ps])

    yield from rec(0, [])


def has_all_joins(leq):
    n = len(leq)
    for p in range(n):
        for q in range(p + 1, n):
            ub = [u for u in range(n) if leq[p][u] and leq[q][u]]
            if not any(all(leq[u][w] for w in ub) for u in ub):
                return False
    return True


def has_all_meets(leq):
    n = len(leq)
    for p in range(n):
        for q in range(p + 1, n):
            lb = [u for u in range(n) if leq[u][p] and leq[u][q]]
            if not any(all(leq[w][u] for w in lb) for u in lb):
                return False
    return True


def order_isomorphic(A, B):
    n = len(A)
    if n != len(B):
        return False
    for perm in itertools.permutations(range(n)):
        if all(A[i][j] == B[perm[i]][perm[j]] for i in range(n) for j in range(n)):
            return True
    return False


def jsl_classes_bruteforce(n):
    """Join semilattices on n elements up to isomorphism, pairwise-deduped."""
    reps = []
    for leq in natural_posets(n):
        if not has_all_joins(leq):
            continue
        if not any(order_isomorphic(leq, r) for r in reps):
            reps.append(leq)
    return reps


# -- lattices, counted independently ----------------------------------------


def _lexmin_code(leq, fixed_first, fixed_last):
    """Minimal row-major bit string over permutations of the interior."""
    n = len(leq)
    M = np.array(leq, dtype=np.uint8)
    interior = [i for i in range(n) if i not in (fixed_first, fixed_last)]
    perms = np.array(list(itertools.permutations(interior)), dtype=np.intp)
    full = np.concatenate(
        [
            np.full((len(perms), 1), fixed_first, dtype=np.intp),
            perms,
            np.full((len(perms), 1), fixed_last, dtype=np.intp),
        ],
        axis=1,
    )
    mats = M[full[:, :, None], full[:, None, :]].reshape(len(full), -1)
    packed = np.packbits(mats, axis=1)
    order = np.lexsort(packed.T[::-1])
    return packed[order[0]].tobytes()


def lattice_count(m):
    """Lattices with m elements up to isomorphism (m >= 2).

    Bottom is element 0 and top is element m-1; interior elements are
    naturally labeled and each sits above the bottom.
    """
    k = m - 2
    seen = set()

    def rec(j, below):
        if j == k + 1:
            n = m
            full = below + [set(range(m - 1))]
            leq = [[i == t or i in full[t] for t in range(n)] for i in range(n)]
            if has_all_joins(leq) and has_all_meets(leq):
                seen.add(_lexmin_code(leq, 0, m - 1))
            return
        for r in range(j):
            for pred in itertools.combinations(range(1, j), r):
                ps = {0, *pred}
                if all(below[p] <= ps for p in pred):
                    rec(j + 1, below + [ps])

    rec(1, [set()])
    return len(seen)


# -- substructure scans -----------------------------------------------------

M2_ORDER = {("a", "c"), ("a", "top"), ("c", "top"), ("b", "top")}
M4_ORDER = M2_ORDER | {("v", "a"), ("v", "c"), ("v", "b"), ("v", "top")}


def subset_scan(leq, size):
    """All join-closed subsets of ``size`` order-isomorphic to M2 or M4."""
    n = len(leq)
    roles, order = (("a", "c", "b", "top"), M2_ORDER) if size == 4 else (
        ("v", "a", "c", "b", "top"), M4_ORDER)

    def join(p, q):
        ub = [u for u in range(n) if leq[p][u] and leq[q][u]]
        return next(u for u in ub if all(leq[u][w] for w in ub))

    hits = []
    for sub in itertools.combinations(range(n), size):
        if any(join(p, q) not in sub for p in sub for q in sub):
            continue
        for perm in itertools.permutations(sub):
            r = dict(zip(roles, perm))
            if all(
                leq[r[p]][r[q]] == (p == q or (p, q) in order) for p in roles for q in roles
            ):
                hits.append(frozenset(sub))
                break
    return hits
