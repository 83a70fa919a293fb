"""Command line front-end.

    bzigzag verify {algebra,tensor,tl,braid,soergel,ledger,all} [-n N]
    bzigzag eval FILE [-n N]
    bzigzag complex WORD [--minimize] [--decat] [-n N]

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .braid import Check, decat_matrix, format_word, parse_word, word_to_complex
from .checks import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    n: int = 3
    seed: int = 0
    json: bool = False
    verbose: int = 0
    jobs: int = 1
    max_word_len: int = 2
    timings: bool = False
    extra: dict = field(default_factory=dict)


class UsageError(Exception):
    pass


def _suite_job(args) -> list[Check]:
    name, n, seed, max_len = args
    return run_suite(name, n, seed, max_len)


def collect(suite: str, cfg: RunConfig) -> list[Check]:
    names = SUITES if suite == "all" else (suite,)
    jobs = [(s, cfg.n, cfg.seed, cfg.max_word_len) for s in names]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_suite_job, jobs))
    else:
        results = [_suite_job(j) for j in jobs]
    checks = [c for r in results for c in r]
    return sorted(checks, key=lambda c: c.name)


def cmd_verify(suite: str, cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    if suite not in SUITES + ("all",):
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    checks = collect(suite, cfg)
    failed = [c for c in checks if c.status == "fail"]
    counts = {s: sum(c.status == s for c in checks) for s in ("pass", "fail", "skip")}
    if cfg.json:
        rows = []
        for c in checks:
            row = c.to_json()
            if not cfg.timings:
                row.pop("seconds")
            rows.append(row)
        report = {"suite": suite, "n": cfg.n, "seed": cfg.seed, "ok": not failed,
                  "counts": counts, "failures": [c.name for c in failed], "checks": rows}
        out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        for c in checks:
            if c.status == "pass" and not cfg.verbose and suite != "algebra":
                continue
            tail = f" ({c.seconds:.2f}s)" if cfg.timings else ""
            out.write(f"{c.status.upper():4}  {c.name}: {c.detail}{tail}\n")
        out.write(f"{suite} n={cfg.n}: {counts['pass']} passed, {counts['fail']} failed, "
                  f"{counts['skip']} skipped\n")
    return EXIT_FAIL if failed else EXIT_OK


def _matrix_text(m) -> list[str]:
    rows, cols = m.nrows(), m.ncols()
    if rows == 0 or cols == 0:
        return [f"(empty {rows}x{cols} matrix)"]
    ent = [str(x) for x in m.entries()]
    if rows <= 40 and cols <= 40:
        w = max(len(x) for x in ent)
        return ["[" + " ".join(ent[r * cols + c].rjust(w) for c in range(cols)) + "]" for r in range(rows)]
    lines = [f"{rows}x{cols} matrix, nonzero entries (row, col, value):"]
    for k, x in enumerate(ent):
        if x != "0":
            lines.append(f"  {k // cols} {k % cols} {x}")
    return lines


def cmd_eval(path: str, cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    from .soergel import evaluate, parse_diagram_file, to_text
    from .soergel.diagram import DiagramTypeError
    from .soergel.parser import DiagramSyntaxError
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(str(exc)) from None
    try:
        term, _ = parse_diagram_file(text)
        f = evaluate(term, cfg.n)
    except (DiagramSyntaxError, DiagramTypeError, ValueError) as exc:
        raise UsageError(f"{path}: {exc}") from None
    if cfg.json:
        report = {"term": to_text(term), "domain": list(term.dom), "codomain": list(term.cod),
                  "degree": term.degree, "zero": f.is_zero(),
                  "domain_gdim": f.source.graded_dimension().to_json(),
                  "codomain_gdim": f.target.graded_dimension().to_json(), "map": f.to_json()}
        out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
        return EXIT_OK
    out.write(f"term:     {to_text(term)}\n")
    out.write(f"domain:   {list(term.dom)}  gdim {f.source.graded_dimension()}\n")
    out.write(f"codomain: {list(term.cod)}  gdim {f.target.graded_dimension()}\n")
    out.write(f"degree:   {term.degree}\n")
    out.write("zero map\n" if f.is_zero() else "nonzero map\n")
    for line in _matrix_text(f.matrix):
        out.write(line + "\n")
    return EXIT_OK


def cmd_complex(word_text: str, cfg: RunConfig, minimize: bool = False, decat: bool = False,
                out=None) -> int:
    out = out or sys.stdout
    try:
        word = parse_word(word_text, cfg.n)
    except (ValueError, IndexError) as exc:
        raise UsageError(str(exc)) from None
    C = word_to_complex(cfg.n, word, reduce=minimize)
    if minimize:
        from .komplex import minimize as _min
        C = _min(C, cfg.seed).complex
    M = decat_matrix(cfg.n, word) if decat else None
    if cfg.json:
        report = {"word": format_word(word), "n": cfg.n, "minimized": minimize,
                  "unit": C.is_unit(), "complex": C.to_json(),
                  "graded_dimensions": {str(i): g.to_json() for i, g in sorted(C.graded_dimensions().items())}}
        if M is not None:
            report["decat"] = M.to_json()
        out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
        return EXIT_OK
    out.write(f"word: {format_word(word) or '(empty)'}  n={cfg.n}\n")
    out.write(C.describe() + "\n")
    if C.is_unit():
        out.write("unit complex\n")
    for i, g in sorted(C.graded_dimensions().items()):
        out.write(f"degree {i}: {g}\n")
    if M is not None:
        out.write("decategorified matrix (columns: images of [P_1] .. [P_n]):\n")
        out.write(str(M) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", "--rank", type=int, default=3, help="rank n >= 2 (default 3)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized searches")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for suites")
    common.add_argument("--max-word-len", type=int, default=2,
                        help="longest word in the decategorified inverse check")
    common.add_argument("--timings", action="store_true", help="include per-check timings")
    common.add_argument("-v", "--verbose", action="count", default=0)
    p = argparse.ArgumentParser(prog="bzigzag", description="Type B zigzag algebra verifier")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", help="|".join(SUITES + ("all",)))
    e = sub.add_parser("eval", parents=[common], help="evaluate a diagram file")
    e.add_argument("file")
    c = sub.add_parser("complex", parents=[common], help="complex of a braid word")
    c.add_argument("word", help='e.g. "s1 S2"; upper case for inverses')
    c.add_argument("--minimize", action="store_true")
    c.add_argument("--decat", action="store_true")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(n=args.rank, seed=args.seed, json=args.json, verbose=args.verbose,
                    jobs=max(1, args.jobs), max_word_len=args.max_word_len, timings=args.timings)
    try:
        if cfg.n < 2:
            raise UsageError("rank must be at least 2")
        if args.command == "verify":
            return cmd_verify(args.suite, cfg)
        if args.command == "eval":
            return cmd_eval(args.file, cfg)
        return cmd_complex(args.word, cfg, args.minimize, args.decat)
    except UsageError as exc:
        print(f"bzigzag: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
