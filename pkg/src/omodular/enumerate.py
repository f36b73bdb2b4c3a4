"""Join semilattices up to isomorphism, and the census over them.

Removing a minimal non-top element from a finite join semilattice leaves a
join-closed subset, so every n-element structure arises from an
(n-1)-element one by adding a new minimal element m below a nonempty
up-set U.  The result is a join semilattice iff U meets every principal
filter in a set with a least element (that element is m v x).
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Iterator

from .construct import run_pipeline
from .errors import OModularError, SizeLimitExceeded
from .omod import check_omodular, verify_witness
from .order import JoinSemilattice, Poset, bits, canonical_form, format_structure, from_canonical
from .substructure import find_m2, find_m4

MAX_ENUM_SIZE = 8
STRENGTHS = ("strict", "lu")


def _extension_upsets(P: Poset) -> Iterator[int]:
    """Up-sets U under which a new minimal element keeps all joins."""
    n = P.n
    for U in range(1, 1 << n):
        if any(P.up[i] & ~U for i in bits(U)):
            continue
        ok = True
        for x in range(n):
            m = U & P.up[x]
            if not any(P.up[e] & m == m for e in bits(m)):
                ok = False
                break
        if ok:
            yield U


def extend(P: Poset, U: int, name: str = None) -> JoinSemilattice:
    n = P.n
    name = name or f"e{n}"
    leq = [list(row) + [False] for row in P.leq]
    leq.append([bool(U >> j & 1) for j in range(n)] + [True])
    return JoinSemilattice(list(P.names) + [name], leq)


def extensions(P: Poset) -> Iterator[JoinSemilattice]:
    for U in _extension_upsets(P):
        yield extend(P, U)


@lru_cache(maxsize=None)
def _level(n: int) -> tuple[str, ...]:
    if n == 1:
        return ("1",)
    found = set()
    for code in _level(n - 1):
        P = from_canonical(code)
        for U in _extension_upsets(P):
            found.add(canonical_form(extend(P, U)))
    return tuple(sorted(found))


def _check_size(n, max_n):
    if not 1 <= n <= max_n:
        raise SizeLimitExceeded(f"enumeration size must be in 1..{max_n}, got {n}")


def canonical_codes(n: int, max_n: int = MAX_ENUM_SIZE) -> tuple[str, ...]:
    _check_size(n, max_n)
    return _level(n)


def enum_jsls(n: int, max_n: int = MAX_ENUM_SIZE) -> Iterator[JoinSemilattice]:
    """One representative per isomorphism class, in canonical-string order."""
    for code in canonical_codes(n, max_n):
        yield from_canonical(code)


def random_jsl(n: int, rng) -> JoinSemilattice:
    """Grow a random n-element join semilattice by repeated extension."""
    S = JoinSemilattice(["e0"], [[True]])
    while S.n < n:
        S = extend(S, rng.choice(list(_extension_upsets(S))))
    return S


# -- census ----------------------------------------------------------------


def census_one(code: str) -> dict:
    """Every per-structure verdict the census tallies."""
    S = from_canonical(code)
    w = check_omodular(S)
    m2 = find_m2(S)
    m4 = find_m4(S)
    row = {
        "code": code,
        "non_omodular": w is not None,
        "witness_ok": w is not None and verify_witness(S, w),
        "m2_semi": any(e.semi_strong for e in m2),
        "m4_semi": any(e.semi_strong for e in m4),
        "m4_strict": any(e.strong_strict for e in m4),
        "m4_lu": any(e.strong_lu for e in m4),
        "pipeline_ok": True,
        "pipeline_error": None,
    }
    if w is not None:
        try:
            trace = run_pipeline(S)
            term = trace.terminal
            good = trace.all_pass() and (
                (trace.branch == "M2" and term.template == "M2" and term.semi_strong)
                or (trace.branch == "M4" and trace.t4.semi_strong and term.strong_lu)
            )
            row["pipeline_ok"] = good
        except OModularError as exc:
            row["pipeline_ok"] = False
            row["pipeline_error"] = str(exc)
    return row


def claim_violations(row: dict, strengths=STRENGTHS) -> list[str]:
    bad = []
    non = row["non_omodular"]
    for s in strengths:
        hyp = row["m2_semi"] or row[f"m4_{s}"]
        if hyp and not (non and row["witness_ok"]):
            bad.append(f"A:{s}")
    if non and not (row["m2_semi"] or row["m4_semi"]):
        bad.append("B")
    for s in strengths:
        if non != (row["m2_semi"] or row[f"m4_{s}"]):
            bad.append(f"C:{s}")
    if non and not row["pipeline_ok"]:
        bad.append("D")
    return bad


@dataclass
class EnumerationReport:
    n: int
    strength: str
    jsl_count: int = 0
    omodular_count: int = 0
    non_omodular_count: int = 0
    with_semi_strong_m2: int = 0
    with_semi_strong_m4: int = 0
    with_strict_strong_m4: int = 0
    with_lu_strong_m4: int = 0
    violations: list = field(default_factory=list)

    def add(self, row: dict, strengths) -> None:
        self.jsl_count += 1
        if row["non_omodular"]:
            self.non_omodular_count += 1
        else:
            self.omodular_count += 1
        self.with_semi_strong_m2 += row["m2_semi"]
        self.with_semi_strong_m4 += row["m4_semi"]
        self.with_strict_strong_m4 += row["m4_strict"]
        self.with_lu_strong_m4 += row["m4_lu"]
        self.violations.extend((c, row["code"]) for c in claim_violations(row, strengths))

    def claim(self, cid: str) -> list[str]:
        return [code for c, code in self.violations if c == cid]

    @property
    def blocking(self) -> list:
        """Violations that fail a run; strict-mode C entries are data only."""
        return [(c, code) for c, code in self.violations if c != "C:strict"]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["violations"] = [{"claim": c, "code": code} for c, code in self.violations]
        return d


def validate_theorems(
    n: int, strength: str = "lu", jobs: int = 1, max_n: int = MAX_ENUM_SIZE
) -> EnumerationReport:
    if strength not in ("strict", "lu", "both"):
        raise ValueError(f"unknown strength {strength!r}")
    strengths = STRENGTHS if strength == "both" else (strength,)
    codes = canonical_codes(n, max_n)
    if jobs > 1 and len(codes) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(census_one, codes, chunksize=max(1, len(codes) // (4 * jobs))))
    else:
        rows = [census_one(c) for c in codes]
    report = EnumerationReport(n=n, strength=strength)
    for row in rows:
        report.add(row, strengths)
    report.violations.sort(key=lambda v: (v[1], v[0]))
    return report


COLUMNS = (
    ("n", "n"),
    ("strength", "strength"),
    ("jsl_count", "classes"),
    ("omodular_count", "o-modular"),
    ("non_omodular_count", "non-o-mod"),
    ("with_semi_strong_m2", "ss-M2"),
    ("with_semi_strong_m4", "ss-M4"),
    ("with_strict_strong_m4", "strict-M4"),
    ("with_lu_strong_m4", "lu-M4"),
)


def render_table(reports: list[EnumerationReport]) -> str:
    header = [h for _, h in COLUMNS] + ["violations"]
    rows = [
        [str(getattr(r, k)) for k, _ in COLUMNS] + [str(len(r.violations))] for r in reports
    ]
    widths = [max(len(x) for x in col) for col in zip(header, *rows)]
    fmt = lambda cells: "  ".join(c.rjust(w) for c, w in zip(cells, widths))
    lines = [fmt(header)] + [fmt(r) for r in rows]
    for r in reports:
        for c, code in r.violations:
            lines.append(f"violation n={r.n} {c} {code}")
    return "\n".join(lines)


def dump_violations(report: EnumerationReport, directory: str) -> list[str]:
    """Write each violating structure as a re-checkable structure file."""
    os.makedirs(directory, exist_ok=True)
    paths = []
    for k, (claim, code) in enumerate(report.violations):
        S = from_canonical(code)
        safe = claim.replace(":", "-")
        path = os.path.join(directory, f"n{report.n}-{safe}-{k:03d}.txt")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(format_structure(S, comment=f"claim {claim}\ncanonical {code}"))
        paths.append(path)
    return paths
