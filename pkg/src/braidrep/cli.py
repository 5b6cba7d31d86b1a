"""Command line: ``braidrep build | analyze | certify``.

Exit codes: 0 success (lemma failures are findings), 2 usage or parameter
error, 3 input is not a representation.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import certify as cert
from . import friendship as fr
from . import io
from .field import QQ, QT, FieldError, parse_scalar
from .reduction import NoCandidateError, best_reduction
from .rep import (
    RepresentationError,
    build_burau,
    build_chi,
    build_tym_standard,
    corank,
    tensor,
)

EXIT_OK, EXIT_USAGE, EXIT_INVALID = 0, 2, 3
FAMILIES = ("burau", "burau-reduced", "tym", "chi")


class UsageError(Exception):
    pass


def _parse_specialize(text):
    m = re.fullmatch(r"\s*t\s*=\s*(.+)", text or "")
    if not m:
        raise UsageError(f"--specialize expects t=P, got {text!r}")
    try:
        return parse_scalar(m.group(1), QQ)
    except FieldError as exc:
        raise UsageError(str(exc)) from exc


def build_family(family: str, n: int, y_text=None, specialize=None):
    if n < 3:
        raise UsageError(f"--n must be >= 3, got {n}")
    at = _parse_specialize(specialize) if specialize is not None else None
    y = None
    if y_text is not None:
        try:
            y = parse_scalar(y_text, QT)
        except FieldError as exc:
            raise UsageError(f"--y: {exc}") from exc
        if not y:
            raise UsageError("--y must be nonzero")
    if family == "chi":
        if y is None:
            raise UsageError("--family chi needs --y")
        if at is not None:
            y = y(at)
            if not y:
                raise UsageError("--y vanishes at the specialization point")
        elif y.is_constant():
            y = y.constant_value()
        return build_chi(y, n)
    if family == "burau":
        rep = build_burau(n)
    elif family == "burau-reduced":
        rep = build_burau(n, reduced=True)
    elif family == "tym":
        rep = build_tym_standard(n)
    else:
        raise UsageError(f"unknown family {family!r}")
    if y is not None:
        rep = tensor(build_chi(y, n, QT), rep)
    if at is not None:
        if any(not g.specialize(at).is_invertible() for g in rep.generators):
            raise UsageError(f"generators are singular at t={at}")
        rep = rep.specialize(at)
    return rep


def cmd_build(args) -> int:
    try:
        rep = build_family(args.family, args.n, args.y, args.specialize)
    except (UsageError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RepresentationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_INVALID
    io.save_rep(rep, args.out)
    print(f"wrote {args.out}: n={rep.n} dimension={rep.r} field={rep.field}")
    return EXIT_OK


def _lemma_ids(text):
    if text is None:
        return None
    if text.strip() == "all":
        return list(fr.CATALOG)
    ids = [s.strip() for s in text.split(",") if s.strip()]
    for lid in ids:
        if fr.ALIASES.get(lid, lid) not in fr.CATALOG:
            raise UsageError(f"unknown lemma id {lid!r}; known: {', '.join(fr.CATALOG)}")
    return ids


def cmd_analyze(args) -> int:
    try:
        ids = _lemma_ids(args.lemmas)
        rep = io.load_rep(args.file)
    except (UsageError, io.RepFileError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RepresentationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = rep.verify()
    if not report.passed:
        print("not a representation:", file=sys.stderr)
        for c in report.failures():
            print(f"  {c}", file=sys.stderr)
        return EXIT_INVALID

    graph = fr.build_graph(rep)
    print(f"representation: n={rep.n} dimension={rep.r} field={rep.field}")
    print(f"relations: {report.summary()}")
    print(f"corank: {corank(rep)}")
    print(f"classification: {graph.classification}")
    print("f(k):  " + " ".join(f"{k}:{v}" for k, v in graph.f_of_k.items()))
    print("tf(k): " + " ".join(f"{k}:{v}" for k, v in graph.tf_of_k.items()))
    if graph.violations:
        print("graph invariant violations: " + "; ".join(graph.violations))

    if args.graph:
        with open(args.graph, "w") as fh:
            fh.write(io.graph_to_dot(graph))
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(io.dumps(io.graph_to_dict(graph)))

    if ids:
        print("lemmas:")
        for v in fr.check_all(rep, ids):
            line = f"  {v.lemma_id:<8} {v.status}"
            if v.applicable and not v.holds:
                line += f"  witness={json.dumps(v.witness, default=str)}"
            if not v.applicable:
                unmet = [k for k, ok in v.hypotheses.items() if not ok]
                line += f"  (unmet: {', '.join(unmet)})"
            print(line)

    if args.reduce:
        try:
            out = best_reduction(rep)
            print("reduction: " + out.summary())
        except NoCandidateError as exc:
            print(f"reduction: no candidate ({exc})")

    if args.chain:
        prof = cert.chain_profile(rep)
        print("chain dims: " + " ".join(str(d) for d in prof.dims))
        print(f"chain final: {prof.final_dim}")
        print("chain within k+3: " + " ".join("y" if b else "n" for b in prof.within_case_I))
        print("chain within k+5: " + " ".join("y" if b else "n" for b in prof.within_case_II))
    return EXIT_OK


def _parse_range(text):
    m = re.fullmatch(r"\s*(\d+)\s*\.\.\s*(\d+)\s*", text)
    if not m:
        raise UsageError(f"--range expects A..B, got {text!r}")
    a, b = int(m.group(1)), int(m.group(2))
    if a < 3 or b < a:
        raise UsageError(f"--range needs 3 <= A <= B, got {text!r}")
    return range(a, b + 1)


def cmd_certify(args) -> int:
    try:
        if args.range is not None:
            ns = _parse_range(args.range)
        else:
            if args.n < 3:
                raise UsageError(f"--n must be >= 3, got {args.n}")
            ns = [args.n]
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for n in ns:
        sys.stdout.write(cert.nonexistence_certificate(n).to_jsonl())
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="braidrep", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a representation and write a RepFile")
    b.add_argument("--family", required=True, choices=FAMILIES)
    b.add_argument("--n", required=True, type=int)
    b.add_argument("--y", help="scalar for chi, or a twist chi(y) for the other families")
    b.add_argument("--specialize", metavar="t=P")
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_build)

    a = sub.add_parser("analyze", help="verify a RepFile and report corank, graph and lemmas")
    a.add_argument("file")
    a.add_argument("--graph", metavar="OUT.dot")
    a.add_argument("--json", metavar="OUT.json")
    a.add_argument("--lemmas", metavar="all|ID,...")
    a.add_argument("--reduce", action="store_true")
    a.add_argument("--chain", action="store_true")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("certify", help="print arithmetic certificates as JSON lines")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--range", metavar="A..B")
    c.set_defaults(func=cmd_certify)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
