"""Command-line interface.

Exit codes: 0 when the property holds / nothing found, 1 when it fails or
a witness is found, 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .construct import run_pipeline
from .enumerate import canonical_codes, dump_violations, render_table, validate_theorems
from .errors import OModularError, StructureError
from .omod import check_omodular, to_proof_labels
from .order import builtin, format_structure, load_structure, to_dot
from .substructure import find_m2, find_m4

EXIT_OK, EXIT_FOUND, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load(source):
    try:
        return load_structure(source)
    except FileNotFoundError:
        raise InputError(f"{source}: no such file or builtin") from None
    except StructureError as exc:
        raise InputError(f"{source}: {exc}") from None


def _emit_json(obj):
    print(json.dumps(obj, indent=2, sort_keys=False))


def cmd_check(args) -> int:
    S = _load(args.file)
    w = check_omodular(S)
    if args.json:
        out = {"omodular": w is None, "witness": None}
        if w is not None:
            out["witness"] = {
                "definition": w.named(S),
                "proof": to_proof_labels(w, S).named(S),
            }
        _emit_json(out)
    elif w is None:
        print("o-modular")
    else:
        print("not o-modular")
        print(w.render(S))
        print(to_proof_labels(w, S).render(S))
    return EXIT_OK if w is None else EXIT_FOUND


def cmd_forbidden(args) -> int:
    S = _load(args.file)
    hits = find_m2(S) + find_m4(S)
    met = any(e.template == "M2" and e.semi_strong for e in hits) or any(
        e.template == "M4" and e.is_strong(args.strength) for e in hits
    )
    if args.json:
        _emit_json({
            "strength": args.strength,
            "embeddings": [e.to_dict(S) for e in hits],
            "hypothesis_met": met,
        })
    else:
        for e in hits:
            print(e.render(S))
        if not hits:
            print("no M2 or M4 embeddings")
        verdict = "met" if met else "not met"
        print(
            f"forbidden-substructure hypothesis ({args.strength}): {verdict}"
            " (semi-strong M2 or strong M4)"
        )
    return EXIT_FOUND if met else EXIT_OK


def cmd_construct(args) -> int:
    S = _load(args.file)
    trace = run_pipeline(S)
    if args.json:
        _emit_json({"omodular": trace is None, "trace": None if trace is None else trace.to_dict(S)})
    elif trace is None:
        print("o-modular")
    else:
        print(trace.render(S))
    return EXIT_OK if trace is None else EXIT_FOUND


def cmd_enumerate(args) -> int:
    if args.n < 1:
        print("error: --n must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        if not args.validate:
            counts = {k: len(canonical_codes(k, args.max_n)) for k in range(1, args.n + 1)}
            if args.json:
                _emit_json({"counts": {str(k): v for k, v in counts.items()}})
            else:
                print("n  classes")
                for k, v in counts.items():
                    print(f"{k:>1}  {v:>7}")
            return EXIT_OK
        reports = [
            validate_theorems(k, args.strength, jobs=args.jobs, max_n=args.max_n)
            for k in range(1, args.n + 1)
        ]
    except OModularError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    failed = any(r.blocking for r in reports)
    dumped = []
    if args.dump_dir:
        for r in reports:
            if r.violations:
                dumped += dump_violations(r, args.dump_dir)
    if args.json:
        _emit_json({
            "reports": [r.to_dict() for r in reports],
            "ok": not failed,
            "dumped": dumped,
        })
    else:
        print(render_table(reports))
        for p in dumped:
            print(f"wrote {p}")
        print("census: " + ("FAIL" if failed else "ok"))
    return EXIT_FOUND if failed else EXIT_OK


def cmd_builtin(args) -> int:
    try:
        S = builtin(args.name)
    except OModularError as exc:
        raise InputError(str(exc)) from None
    text = format_structure(S)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_dot(args) -> int:
    S = _load(args.file)
    marked = []
    if args.highlight:
        for name in args.highlight.split(","):
            name = name.strip()
            if name not in S.names:
                raise InputError(f"--highlight: unknown element {name!r}")
            marked.append(S.index(name))
    sys.stdout.write(to_dot(S, marked))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="omodular",
        description="O-modularity of finite join semilattices.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    src_help = "structure file, or a builtin name (m2, m4, m3, chain:k, antichain-top:k)"

    c = sub.add_parser("check", help="decide o-modularity")
    c.add_argument("file", help=src_help)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    f = sub.add_parser("forbidden", help="list embedded M2/M4 copies")
    f.add_argument("file", help=src_help)
    f.add_argument("--strength", choices=("strict", "lu"), default="lu")
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=cmd_forbidden)

    k = sub.add_parser("construct", help="run the witness-to-substructure construction")
    k.add_argument("file", help=src_help)
    k.add_argument("--json", action="store_true")
    k.set_defaults(func=cmd_construct)

    e = sub.add_parser("enumerate", help="count join semilattices and run the census")
    e.add_argument("--n", type=int, required=True, help="largest size")
    e.add_argument("--validate", action="store_true")
    e.add_argument("--strength", choices=("strict", "lu", "both"), default="lu")
    e.add_argument("--jobs", type=int, default=1)
    e.add_argument("--max-n", type=int, default=8, help=argparse.SUPPRESS)
    e.add_argument(
        "--dump-dir",
        default="census-violations",
        help="directory for violating structures (empty string disables)",
    )
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_enumerate)

    b = sub.add_parser("builtin", help="print a builtin structure")
    b.add_argument("name")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_builtin)

    d = sub.add_parser("dot", help="Hasse diagram in DOT format")
    d.add_argument("file", help=src_help)
    d.add_argument("--highlight", help="comma-separated element names")
    d.set_defaults(func=cmd_dot)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
