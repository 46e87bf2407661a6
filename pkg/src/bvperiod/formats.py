"""Line-oriented text formats for diagrams (``bv 1``) and recursion tables (``bvrec 1``)."""
from __future__ import annotations

from collections import defaultdict

from .diagram import DiagramError, LevelSpec, OrderedDiagram, RecursionTable
from .words import SPACER, Word


class FormatError(DiagramError):
    pass


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"line {lineno}: expected an integer, got {tok!r}") from None


def _levels_line(toks, lineno):
    if len(toks) == 2:
        return _int(toks[1], lineno), None
    if len(toks) == 4 and toks[2] == "stationary-from":
        return _int(toks[1], lineno), _int(toks[3], lineno)
    raise FormatError(f"line {lineno}: malformed levels line")


# --- diagram files -------------------------------------------------------------

def dump_diagram(diagram: OrderedDiagram) -> str:
    L = diagram.explicit_depth
    head = f"levels {L}"
    if diagram.stationary_from is not None:
        head += f" stationary-from {diagram.stationary_from}"
    out = ["bv 1", head]
    out.extend(f"level {n} K {diagram.levels[n - 1].K}" for n in range(1, L + 1))
    for n in range(1, L + 1):
        spec = diagram.levels[n - 1]
        prev_spacer = diagram.K(n - 1) + 1
        for j, srcs in enumerate(spec.inputs, start=1):
            if j == spec.K + 1 and srcs == (prev_spacer,):
                continue
            out.extend(f"edge {n} {j} {xi} {s}" for xi, s in enumerate(srcs, start=1))
    return "\n".join(out) + "\n"


def load_diagram(text: str) -> OrderedDiagram:
    lines = list(_lines(text))
    if not lines or lines[0][1] != ["bv", "1"]:
        raise FormatError("missing 'bv 1' header")
    L = stationary = None
    Ks: dict[int, int] = {}
    edges: dict[tuple[int, int], dict[int, int]] = defaultdict(dict)
    for lineno, toks in lines[1:]:
        key = toks[0]
        if key == "levels":
            L, stationary = _levels_line(toks, lineno)
        elif key == "level" and len(toks) == 4 and toks[2] == "K":
            Ks[_int(toks[1], lineno)] = _int(toks[3], lineno)
        elif key == "edge" and len(toks) == 5:
            n, j, xi, s = (_int(t, lineno) for t in toks[1:])
            if xi in edges[(n, j)]:
                raise FormatError(f"line {lineno}: duplicate order value {xi} into level {n} vertex {j}")
            edges[(n, j)][xi] = s
        else:
            raise FormatError(f"line {lineno}: unrecognized record {' '.join(toks)!r}")
    if L is None:
        raise FormatError("missing levels line")
    if L < 1:
        raise FormatError("empty diagram")
    levels = []
    for n in range(1, L + 1):
        if n not in Ks:
            raise FormatError(f"missing 'level {n} K' line")
        K = Ks[n]
        prev_spacer = (Ks.get(n - 1, 0) if n > 1 else 0) + 1
        inputs = []
        for j in range(1, K + 2):
            by_xi = edges.pop((n, j), {})
            if not by_xi and j == K + 1:
                inputs.append((prev_spacer,))
                continue
            if sorted(by_xi) != list(range(1, len(by_xi) + 1)):
                raise FormatError(
                    f"level {n} vertex {j}: order values {sorted(by_xi)} are not 1..{len(by_xi)}"
                )
            inputs.append(tuple(by_xi[xi] for xi in range(1, len(by_xi) + 1)))
        levels.append(LevelSpec(K, tuple(inputs)))
    if edges:
        (n, j), _ = next(iter(edges.items()))
        raise FormatError(f"edge into nonexistent vertex {j} at level {n}")
    return OrderedDiagram(tuple(levels), stationary)


# --- recursion files -----------------------------------------------------------

def dump_recursion(table: RecursionTable) -> str:
    head = f"levels {table.depth}"
    if table.stationary_from is not None:
        head += f" stationary-from {table.stationary_from}"
    out = ["bvrec 1", head]
    out.extend(f"seed {j} {','.join(map(str, w))}" for j, w in enumerate(table.seeds, start=1))
    for idx, level_rows in enumerate(table.rows):
        for j, row in enumerate(level_rows, start=1):
            body = " ".join(f"{g},{a}" for g, a in row)
            out.append(f"block {idx + 2} {j} : {body}")
    return "\n".join(out) + "\n"


def load_recursion(text: str) -> RecursionTable:
    lines = list(_lines(text))
    if not lines or lines[0][1] != ["bvrec", "1"]:
        raise FormatError("missing 'bvrec 1' header")
    depth = stationary = None
    seeds: dict[int, tuple[int, ...]] = {}
    blocks: dict[int, dict[int, tuple]] = defaultdict(dict)
    for lineno, toks in lines[1:]:
        key = toks[0]
        if key == "levels":
            depth, stationary = _levels_line(toks, lineno)
        elif key == "seed" and len(toks) == 3:
            word = Word.parse(toks[2] + ",")
            if SPACER in word:
                raise FormatError(f"line {lineno}: seed blocks may not contain the spacer")
            seeds[_int(toks[1], lineno)] = tuple(word)
        elif key == "block" and len(toks) >= 5 and toks[3] == ":":
            n, j = _int(toks[1], lineno), _int(toks[2], lineno)
            row = []
            for pair in toks[4:]:
                g, _, a = pair.partition(",")
                row.append((_int(g, lineno), _int(a, lineno)))
            blocks[n][j] = tuple(row)
        else:
            raise FormatError(f"line {lineno}: unrecognized record {' '.join(toks)!r}")
    if sorted(seeds) != list(range(1, len(seeds) + 1)):
        raise FormatError("seed indices must be 1..K_1")
    top = max(blocks) if blocks else 1
    if depth is None:
        depth = top
    rows = []
    for n in range(2, depth + 1):
        level = blocks.get(n, {})
        if sorted(level) != list(range(1, len(level) + 1)) or not level:
            raise FormatError(f"level {n}: block indices must be 1..K_{n}")
        rows.append(tuple(level[j] for j in range(1, len(level) + 1)))
    return RecursionTable(tuple(seeds[j] for j in range(1, len(seeds) + 1)), tuple(rows), stationary)
