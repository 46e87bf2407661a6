"""``bv``: command-line front end.

Exit codes: 0 pass/periodic, 1 fail/aperiodic, 2 carry exhaustion while
coding, 3 horizon-limited verdict, 64 usage, 66 unreadable input,
70 resource limit.
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, Sequence

from . import analysis, blocks, coding, corpus
from .diagram import (ContractError, DiagramError, OrderedDiagram, from_recursion, telescope,
                      to_recursion, validate)
from .formats import FormatError, dump_diagram, dump_recursion, load_diagram, load_recursion
from .words import format_word

EX_USAGE, EX_NOINPUT, EX_SOFTWARE = 64, 66, 70


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


# --- DOT ---------------------------------------------------------------------------------

def export_dot(diagram: OrderedDiagram, depth: int) -> str:
    """Layered graph text: one rank per level, spacer vertices boxed, edges labelled by order."""
    if depth < 1:
        raise ContractError("depth must be at least 1")
    if not diagram.has_level(depth):
        raise ContractError(f"diagram has no level {depth}")
    lines = ["digraph bratteli {", "  rankdir=TB;", "  node [shape=circle];",
             "  { rank=source; v_0_1; }"]
    for n in range(1, depth + 1):
        K = diagram.K(n)
        names = " ".join(f"v_{n}_{j};" for j in range(1, K + 2))
        lines.append(f"  {{ rank=same; {names} }}")
        lines.append(f"  v_{n}_{K + 1} [shape=box];")
    for n in range(1, depth + 1):
        for j in range(1, diagram.K(n) + 2):
            for xi, s in enumerate(diagram.inputs(n, j), start=1):
                lines.append(f'  v_{n - 1}_{s} -> v_{n}_{j} [label="{xi}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- helpers -----------------------------------------------------------------------------

def _load(args) -> OrderedDiagram:
    if args.fixture:
        try:
            return corpus.fixture(args.fixture).diagram
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
    head = text.lstrip().split("\n", 1)[0].split("#", 1)[0].strip()
    try:
        if head == "bvrec 1":
            return from_recursion(load_recursion(text))
        return load_diagram(text)
    except DiagramError as exc:
        raise InputError(f"{args.file}: {exc}") from None


def _emit(out, pairs: Iterable[tuple[str, str]], records: bool) -> None:
    sep = "\t" if records else " "
    for key, value in pairs:
        out.write(f"{key}{sep}{value}\n")


def _parse_start(text: str):
    if text == "spacer":
        return ("spacer",)
    if text.startswith("min:"):
        try:
            n, j = (int(x) for x in text[4:].split(","))
        except ValueError:
            raise UsageError(f"bad --start {text!r}; expected min:<n>,<j> or spacer") from None
        return ("min", n, j)
    raise UsageError(f"bad --start {text!r}; expected min:<n>,<j> or spacer")


# --- subcommands -------------------------------------------------------------------------

def cmd_validate(args, out) -> int:
    report = validate(_load(args), args.horizon)
    _emit(out, report.records(), args.records)
    return 0 if report.ok else 1


def cmd_blocks(args, out) -> int:
    d = _load(args)
    h = blocks.basic_block(d, args.level, args.vertex, args.k)
    length = h.length - args.offset if args.length is None else args.length
    if length > args.max_len:
        raise analysis.ResourceLimitError(
            f"expansion of {length} symbols exceeds --max-len {args.max_len}")
    word = blocks.expand(h, args.offset, length)
    text = format_word(word, d.alphabet_size(args.k))
    if args.records:
        _emit(out, [("length", str(h.length)), ("block", text)], True)
    else:
        out.write(text + "\n")
    return 0


def cmd_coding(args, out) -> int:
    d = _load(args)
    start = _parse_start(args.start)
    if start[0] == "spacer":
        prefix = coding.spacer_prefix(d, max(args.k, 1))
    else:
        prefix = coding.minimal_prefix(d, start[1], start[2])
    result = coding.code_orbit(d, prefix, args.k, args.len)
    text = format_word(result.word, d.alphabet_size(args.k))
    if args.records:
        pairs = [("steps", str(result.steps)), ("reason", result.reason), ("word", text)]
        if result.overflow_depth is not None:
            pairs.append(("overflow_depth", str(result.overflow_depth)))
        _emit(out, pairs, True)
    else:
        out.write(text + "\n")
    return 2 if result.reason == "carry-overflow" else 0


def cmd_period(args, out) -> int:
    d = _load(args)
    v = analysis.k_coding_periodicity(d, args.k, args.horizon, args.prefix_len)
    _emit(out, v.records(), args.records)
    return v.exit_code


def cmd_semi(args, out) -> int:
    d = _load(args)
    cert = analysis.semi_k_periodic(d, args.level, args.k)
    size = d.alphabet_size(args.k)
    if cert:
        pairs = [("semi", "pass"), ("U", format_word(cert.U, size)), ("c", str(cert.c)),
                 ("t", ",".join(map(str, cert.t))), ("l", ",".join(map(str, cert.l)))]
    else:
        pairs = [("semi", "fail"), ("pair", f"{cert.pair[0]},{cert.pair[1]}"), ("reason", cert.reason)]
    _emit(out, pairs, args.records)
    return 0 if cert else 1


def cmd_ldc(args, out) -> int:
    rep = analysis.ldc(_load(args), args.level, args.k)
    _emit(out, rep.records(), args.records)
    return 0 if rep.passed else 1


def _sweep(d: OrderedDiagram, horizon: int, kmax: int, threads: int) -> list[tuple[int, int, str]]:
    last = horizon if d.is_stationary else min(horizon, d.explicit_depth - 1)
    jobs = [(n, k) for n in range(1, last + 1) for k in range(1, min(n, kmax) + 1)]

    def run(job):
        n, k = job
        try:
            return n, k, "pass" if analysis.ldc(d, n, k).passed else "fail"
        except analysis.ResourceLimitError:
            return n, k, "too-long"

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        return list(pool.map(run, jobs))


def cmd_verdict(args, out) -> int:
    d = _load(args)
    if args.sweep:
        rows = _sweep(d, args.horizon, args.kmax, args.threads)
        _emit(out, ((f"ldc.{n}.{k}", r) for n, k, r in rows), args.records)
        return 0 if all(r == "pass" for _, _, r in rows) else 1
    if args.odometer:
        v = analysis.odometer_verdict(d, args.horizon)
        _emit(out, v.records(), args.records)
        return v.exit_code
    v = analysis.k_coding_periodicity(d, args.k, args.horizon, args.prefix_len)
    _emit(out, v.records(), args.records)
    return v.exit_code


def cmd_telescope(args, out) -> int:
    d = _load(args)
    try:
        cuts = [int(x) for x in args.cuts.split(",")]
    except ValueError:
        raise UsageError(f"bad --cuts {args.cuts!r}") from None
    out.write(dump_diagram(telescope(d, cuts)))
    return 0


_GENERATORS = {
    "stationary": lambda seed, K: corpus.random_stationary(seed, K),
    "ldc": lambda seed, K: corpus.random_ldc_stationary(seed, K),
    "ldc-perturbed": lambda seed, K: corpus.random_ldc_stationary(seed, K, perturb=True),
    "rank-one": lambda seed, K: from_recursion(corpus.random_rank_one(seed, True)),
    "rank-one-aperiodic": lambda seed, K: from_recursion(corpus.random_rank_one(seed, False)),
}


def cmd_fixtures(args, out) -> int:
    if args.generate:
        if args.emit:
            raise UsageError("--emit and --generate are exclusive")
        d = _GENERATORS[args.generate](args.seed, args.K)
        out.write(dump_recursion(to_recursion(d)) if args.recursion else dump_diagram(d))
        return 0
    if not args.emit:
        for name in corpus.names():
            fx = corpus.fixture(name)
            _emit(out, [(name, fx.description)], args.records)
        return 0
    try:
        fx = corpus.fixture(args.emit)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    out.write(dump_recursion(to_recursion(fx.diagram)) if args.recursion else dump_diagram(fx.diagram))
    return 0


def cmd_dot(args, out) -> int:
    out.write(export_dot(_load(args), args.depth))
    return 0


# --- parser --------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--records", action="store_true", help="emit key<TAB>value lines")
    source = argparse.ArgumentParser(add_help=False)
    group = source.add_mutually_exclusive_group(required=True)
    group.add_argument("--fixture", metavar="NAME")
    group.add_argument("--file", metavar="PATH")

    p = _Parser(prog="bv", description="Periodicity of codings of ordered Bratteli-Vershik diagrams.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text, with_source=True):
        parents = [common, source] if with_source else [common]
        sp = sub.add_parser(name, parents=parents, help=help_text)
        sp.set_defaults(func=func)
        return sp

    sp = add("validate", cmd_validate, "check the standing conditions")
    sp.add_argument("--horizon", type=int, default=10)

    sp = add("blocks", cmd_blocks, "expand a basic block")
    sp.add_argument("--level", type=int, required=True)
    sp.add_argument("--vertex", type=int, required=True)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--offset", type=int, default=0)
    sp.add_argument("--length", type=int)
    sp.add_argument("--max-len", type=int, default=4096)

    sp = add("coding", cmd_coding, "k-coding of an orbit")
    sp.add_argument("--start", default="min:1,1", help="min:<n>,<j> or spacer")
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--len", type=int, required=True)

    for name, func, help_text in (("period", cmd_period, "is the k-coding periodic"),):
        sp = add(name, func, help_text)
        sp.add_argument("--k", type=int, default=1)
        sp.add_argument("--horizon", type=int, default=10)
        sp.add_argument("--prefix-len", type=int, default=10**4)

    for name, func, help_text in (("semi", cmd_semi, "semi k-periodicity of a level"),
                                  ("ldc", cmd_ldc, "local deficit condition at a level")):
        sp = add(name, func, help_text)
        sp.add_argument("--level", type=int, required=True)
        sp.add_argument("--k", type=int, default=1)

    sp = add("verdict", cmd_verdict, "periodicity or odometer verdicts")
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--horizon", type=int, default=10)
    sp.add_argument("--prefix-len", type=int, default=10**4)
    sp.add_argument("--odometer", action="store_true")
    sp.add_argument("--sweep", action="store_true", help="LDC over all (n, k) up to the horizon")
    sp.add_argument("--kmax", type=int, default=3)
    sp.add_argument("--threads", type=int, default=1)

    sp = add("telescope", cmd_telescope, "collapse levels between cuts")
    sp.add_argument("--cuts", required=True, help="comma-separated levels starting with 0")

    sp = add("fixtures", cmd_fixtures, "list or emit built-in fixtures", with_source=False)
    sp.add_argument("--emit", metavar="NAME")
    sp.add_argument("--recursion", action="store_true", help="emit the recursion form")
    sp.add_argument("--generate", choices=sorted(_GENERATORS), help="emit a seeded random diagram")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--K", type=int, default=2, help="non-spacer vertices per level")

    sp = add("dot", cmd_dot, "DOT text for the first levels")
    sp.add_argument("--depth", type=int, default=3)
    return p


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"bv: {exc}", file=sys.stderr)
        return EX_USAGE
    except (ContractError, FormatError) as exc:
        code = EX_NOINPUT if isinstance(exc, FormatError) else EX_USAGE
        print(f"bv: {exc}", file=sys.stderr)
        return code
    except InputError as exc:
        print(f"bv: {exc}", file=sys.stderr)
        return EX_NOINPUT
    except DiagramError as exc:
        print(f"bv: {exc}", file=sys.stderr)
        return EX_USAGE
    except analysis.ResourceLimitError as exc:
        print(f"bv: resource limit: {exc}", file=sys.stderr)
        print("bv: advisory: telescope the diagram or raise BV_MAX_BLOCK_LEN / --max-len", file=sys.stderr)
        return EX_SOFTWARE


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
