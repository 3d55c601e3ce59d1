"""Command-line front end: ``persist check|hessian|polarize|gallery|probe|corpus``.

Exit codes are 0 for persistent (or success), 1 for not persistent (or a
failed corpus expectation) and 2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from persist import __version__
from persist.document import ReportDocument
from persist.expr import HomogeneityError, ParseError, parse
from persist.gallery import GALLERY, GalleryError, named_form
from persist.hessian import hessian
from persist.persistence import (
    DegenerateInputError,
    ProbeOutcome,
    persistence_report,
    probe_definition,
)
from persist.polarize import full_polarization, partial_polarization

EXIT_PERSISTENT = 0
EXIT_NOT_PERSISTENT = 1
EXIT_ERROR = 2


class UsageError(Exception):
    pass


def _parse_form(text: str):
    return parse(text, homogeneous=True)


def run_check(text: str, trials: int | None = None, seed: int = 0) -> ReportDocument:
    """Parse, report and (optionally) probe one input."""
    t0 = time.perf_counter()
    f = _parse_form(text)
    report = persistence_report(f)
    probe = probe_definition(f, trials=trials, seed=seed) if trials else None
    ms = (time.perf_counter() - t0) * 1000
    return ReportDocument.from_report(text, report, ms, probe)


def _cert_line(name: str, cert, key: str) -> str:
    if not cert.present:
        return f"  {name:<14} absent"
    return f"  {name:<14} c = {cert.c}, {key} = {cert.form}"


def format_document(doc: ReportDocument) -> str:
    verdict = "persistent" if doc.persistent else "not persistent"
    lines = [
        f"input: {doc.input}",
        f"d = {doc.d}, n = {doc.n}, concise: {'yes' if doc.concise else 'no'}",
        f"verdict: {verdict}",
        f"Hess = {doc.hess}",
        "conditions:",
        _cert_line("(a)", doc.condition_a, "l"),
        _cert_line("(c)", doc.condition_c, "g"),
        _cert_line("(d)", doc.condition_d, "g"),
    ]
    if doc.G is not None:
        lines.append(f"G = {doc.G}")
    if doc.rank_lower_bound is not None:
        lines.append(f"rank lower bound: {doc.rank_lower_bound}")
    if doc.homaloidal:
        lines.append("homaloidal: yes")
    if doc.family:
        lines.append(f"family: {doc.family}")
    if doc.probe:
        lines.append(f"probe (seed {doc.seed}): {doc.probe}")
    lines.extend(f"note: {n}" for n in doc.notes)
    lines.append(f"time: {doc.ms:.1f} ms")
    return "\n".join(lines)


def cmd_check(args) -> int:
    doc = run_check(args.expr, args.trials, args.seed)
    print(doc.dumps() if args.json else format_document(doc))
    return EXIT_PERSISTENT if doc.persistent else EXIT_NOT_PERSISTENT


def cmd_hessian(args) -> int:
    f = _parse_form(args.expr)
    H = hessian(f)
    if args.json:
        print(json.dumps({"input": args.expr, "hessian": str(H)}))
    else:
        print(H)
    return 0


def cmd_polarize(args) -> int:
    f = _parse_form(args.expr)
    n = f.degree
    k = n if args.blocks is None else args.blocks
    if not 1 <= k <= n:
        raise UsageError(f"--blocks must lie in 1..{n}")
    T = full_polarization(f) if k == n else partial_polarization(f, k)
    if args.json:
        print(json.dumps({"input": args.expr, "blocks": [list(b) for b in T.blocks], "form": str(T)}))
    else:
        print(T)
    return 0


def cmd_gallery(args) -> int:
    if args.tag is None:
        for e in GALLERY.values():
            print(f"{e.tag:<10} {e.params:<12} {e.summary}")
        return 0
    f = named_form(args.tag, *args.params)
    if args.json:
        print(json.dumps({"tag": args.tag, "params": args.params, "form": str(f)}))
    else:
        print(f)
    return 0


def probe_to_json(text: str, out: ProbeOutcome) -> dict:
    w = out.witness
    return {
        "input": text,
        "verdict": out.verdict,
        "trials": out.trials,
        "seed": out.seed,
        "bound": out.bound,
        "witness": None if w is None else {
            "trial": w.trial,
            "directions": [list(u) for u in w.directions],
            "reason": w.reason,
            "terminal": str(w.terminal),
        },
    }


def cmd_probe(args) -> int:
    f = _parse_form(args.expr)
    out = probe_definition(f, trials=args.trials, seed=args.seed)
    if args.json:
        print(json.dumps(probe_to_json(args.expr, out)))
    else:
        print(f"verdict: {out.verdict} ({out.trials} trials, seed {out.seed}, bound {out.bound})")
        w = out.witness
        if w is not None:
            print(f"witness: trial {w.trial}, {w.reason}")
            for u in w.directions:
                print(f"  direction {list(u)}")
            print(f"  terminal: {w.terminal}")
    return EXIT_NOT_PERSISTENT if out.witnessed else EXIT_PERSISTENT


# corpus


@dataclass(frozen=True)
class CorpusLine:
    lineno: int
    expr: str
    expect: bool | None


_EXPECT = re.compile(r"\bexpect:(persistent|not)\b")


def read_corpus(text: str) -> list[CorpusLine]:
    """One expression per line; ``#`` starts a comment; ``expect:persistent|not`` is optional."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        expect = None
        m = _EXPECT.search(line)
        if m:
            expect = m.group(1) == "persistent"
            line = line[:m.start()] + line[m.end():]
        if "expect:" in line:
            raise UsageError(f"line {lineno}: malformed expectation")
        line = line.strip()
        if line:
            out.append(CorpusLine(lineno, line, expect))
    return out


def _corpus_job(item: tuple[str, int | None, int]) -> str:
    expr, trials, seed = item
    return run_check(expr, trials, seed).dumps()


def cmd_corpus(args) -> int:
    try:
        with open(args.spec) as fh:
            lines = read_corpus(fh.read())
    except OSError as e:
        raise UsageError(f"cannot read {args.spec}: {e.strerror}") from None
    for item in lines:
        try:
            _parse_form(item.expr)
        except (ParseError, HomogeneityError) as e:
            raise UsageError(f"line {item.lineno}: {e}") from None
    jobs = [(item.expr, args.trials, args.seed) for item in lines]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_corpus_job, jobs))
    else:
        results = [_corpus_job(j) for j in jobs]
    failed = 0
    for item, line in zip(lines, results):
        print(line)
        doc = ReportDocument.loads(line)
        if item.expect is not None and item.expect != doc.persistent:
            failed += 1
            want = "persistent" if item.expect else "not persistent"
            print(f"line {item.lineno}: expected {want}: {item.expr}", file=sys.stderr)
    return EXIT_NOT_PERSISTENT if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="persist", description="Exact persistence tests for homogeneous polynomials.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, expr=True):
        sp = sub.add_parser(name, help=help_)
        if expr:
            sp.add_argument("expr", help="polynomial in x0..x9, e.g. 'x0^3*x1'")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=fn)
        return sp

    sp = add("check", cmd_check, "decide persistence and print certificates")
    sp.add_argument("--trials", type=int, default=None, help="also run the probe with N trials")
    sp.add_argument("--seed", type=int, default=0)

    add("hessian", cmd_hessian, "print the Hessian determinant")

    sp = add("polarize", cmd_polarize, "print the (partial) polarization")
    sp.add_argument("--blocks", type=int, default=None, help="number of polarized slots (default: all)")

    sp = add("gallery", cmd_gallery, "print a named form; no tag lists them", expr=False)
    sp.add_argument("tag", nargs="?")
    sp.add_argument("params", nargs="*")

    sp = add("probe", cmd_probe, "sample the recursive definition along random derivative chains")
    sp.add_argument("--trials", type=int, default=8)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("corpus", cmd_corpus, "check every line of a corpus file", expr=False)
    sp.add_argument("--spec", required=True, metavar="FILE")
    sp.add_argument("--trials", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else 0
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e.render()}", file=sys.stderr)
    except (HomogeneityError, DegenerateInputError, GalleryError, UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
